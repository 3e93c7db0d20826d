use std::path::Path;
use std::process::{Command, Output};

fn tropcoord(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropcoord"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: impl AsRef<[u8]>) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn bottleneck_of_shifted_pair() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.bc", "1,2\n2,2\n");
    let b = write(dir.path(), "b.bc", "# shifted by one\n2,2\n3,2\n");
    let o = tropcoord(&["dist", "--metric", "bottleneck", "--a", &a, "--b", &b]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");

    let o = tropcoord(&["--json", "dist", "--metric", "wp", "--p", "1", "--a", &a, "--b", &b]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["distance"], 2.0);
}

#[test]
fn usage_errors_exit_1() {
    let o = tropcoord(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));

    let o = tropcoord(&["dist", "--metric", "wp", "--a", "x", "--b", "y"]);
    assert_eq!(o.status.code(), Some(1));
    let o = tropcoord(&["ph", "--image", "x.pgm", "--dir", "diagonal", "--dim", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn missing_file_exits_2() {
    let o = tropcoord(&["dist", "--metric", "bottleneck", "--a", "/no/such/a.bc", "--b", "/no/such/b.bc"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.bc", "1,2\nthree,4\n");
    let good = write(dir.path(), "good.bc", "1,2\n");
    let o = tropcoord(&["dist", "--metric", "w1", "--a", &bad, "--b", &good]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());

    let o = tropcoord(&["trop-eval", "--expr", "max(x1,"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn computation_errors_exit_3() {
    let o = tropcoord(&["trop-eval", "--expr", "max(x1, x2)", "--at", "x1=1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());
}

#[test]
fn trop_commands() {
    let o = tropcoord(&["trop-eval", "--expr", "min(x1, 2*x2)", "--at", "x1=5,x2=1"]);
    assert_eq!(stdout(&o), "2\n");
    let o = tropcoord(&["trop-normalize", "--expr", "max(x1, x2) - x1"]);
    assert_eq!(stdout(&o), "p = max(x1, x2)\nq = x1\n");
}

#[test]
fn featurize_with_specs() {
    let dir = tempfile::tempdir().unwrap();
    let bc = write(dir.path(), "a.bc", "1,2\n2,2\n");
    let specs = write(dir.path(), "specs.txt", "sigma 0 2 0\ne 28 1 1 0\nsumlen\n");
    let o = tropcoord(&["featurize", "--barcode", &bc, "--specs", &specs]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "4,4,4\n");
}

#[test]
fn ph_on_ring_image() {
    let dir = tempfile::tempdir().unwrap();
    let mut pgm = b"P5\n3 3\n255\n".to_vec();
    pgm.extend([255, 255, 255, 255, 0, 255, 255, 255, 255]);
    let img = write(dir.path(), "ring.pgm", pgm);
    let o = tropcoord(&["ph", "--image", &img, "--dir", "top", "--dim", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "# sweep=top dim=1 essential_death=3\n2,1\n");
    let o = tropcoord(&["ph", "--image", &img, "--dir", "left", "--dim", "0"]);
    assert_eq!(stdout(&o), "# sweep=left dim=0 essential_death=3\n0,3\n");

    let junk = write(dir.path(), "junk.pgm", "P2\n1 1\n255\n0\n");
    let o = tropcoord(&["ph", "--image", &junk, "--dir", "top", "--dim", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

fn idx(magic: u32, dims: &[u32], payload: &[u8]) -> Vec<u8> {
    let mut out = magic.to_be_bytes().to_vec();
    for d in dims {
        out.extend(d.to_be_bytes());
    }
    out.extend_from_slice(payload);
    out
}

#[test]
fn mnist_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    // Ten 4×4 images: even ones blank, odd ones full.
    let mut pixels = Vec::new();
    let mut labels = Vec::new();
    for i in 0..10u8 {
        pixels.extend([if i % 2 == 0 { 0 } else { 255 }; 16]);
        labels.push(i % 2);
    }
    let images = write(dir.path(), "img.idx", idx(2051, &[10, 4, 4], &pixels));
    let labels = write(dir.path(), "lbl.idx", idx(2049, &[10], &labels));
    let csv = dir.path().join("f.csv");
    let meta = dir.path().join("meta.json");
    let o = tropcoord(&[
        "mnist-features", "--images", &images, "--labels", &labels, "--count", "8",
        "--out", csv.to_str().unwrap(), "--meta", meta.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let table = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(table.lines().count(), 8);
    assert!(table.lines().all(|l| l.split(',').count() == 56));
    let m: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&meta).unwrap()).unwrap();
    assert_eq!(m["frame"], serde_json::json!([4, 4]));

    let o = tropcoord(&[
        "mnist-classify", "--features", csv.to_str().unwrap(), "--labels", &labels,
        "--folds", "2", "--k", "1", "--seed", "42",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("mean: 1\n"));

    let o = tropcoord(&["mnist-features", "--images", &labels, "--labels", &labels, "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = tropcoord(&[
        "mnist-classify", "--features", csv.to_str().unwrap(), "--labels", &labels, "--folds", "9",
    ]);
    assert_eq!(o.status.code(), Some(3));
}
