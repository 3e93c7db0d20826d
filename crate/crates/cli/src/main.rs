//! Command-line front end for the `tropcoord` library.
//!
//! Exit codes: 0 success, 1 usage error, 2 unreadable or malformed input,
//! 3 computation error. Results go to stdout only when the command
//! succeeds; diagnostics go to stderr.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tropcoord::coords::{featurize, parse_specs};
use tropcoord::metrics::{bottleneck, wasserstein};
use tropcoord::mnist::{
    cross_validate, featurize_dataset, read_idx_labels, FeatureMetadata, LabeledDataset, MnistError, PipelineConfig,
};
use tropcoord::persistence::{image_persistence, read_pgm, threshold};
use tropcoord::tropical::{parse_tropical, to_rational_normal_form, trop_eval, TropError};
use tropcoord::{format_decimal, Barcode, FeatureMatrix, MaxPlusForm, SweepDirection};

#[derive(Parser, Debug)]
#[command(name = "tropcoord", version = build_id(), about = "Tropical coordinates on persistence barcodes")]
struct Cli {
    /// Print machine-readable JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Upper bound on worker threads.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a min/max/plus expression at a point.
    TropEval {
        #[arg(long)]
        expr: String,
        /// Assignments such as `x1=3,x2=-1.5`.
        #[arg(long, value_parser = parse_point, default_value = "")]
        at: BTreeMap<String, f64>,
    },
    /// Rewrite an expression as a difference of two max-plus polynomials.
    TropNormalize {
        #[arg(long)]
        expr: String,
    },
    /// Evaluate the coordinates listed in a specs file on one barcode.
    Featurize {
        #[arg(long)]
        barcode: PathBuf,
        #[arg(long)]
        specs: PathBuf,
    },
    /// Distance between two barcodes.
    Dist {
        #[arg(long, value_enum)]
        metric: Metric,
        /// Order for `--metric wp`.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Persistence barcode of a sweep filtration of a thresholded PGM image.
    Ph {
        #[arg(long)]
        image: PathBuf,
        #[arg(long, value_parser = parse_dir)]
        dir: SweepDirection,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        dim: u8,
        #[arg(long, default_value_t = 100)]
        threshold: u8,
    },
    /// Export the 56 digit features of the first N MNIST images.
    MnistFeatures {
        #[arg(long)]
        images: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        meta: Option<PathBuf>,
        #[arg(long, default_value_t = 28, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(long, default_value_t = 100)]
        threshold: u8,
    },
    /// Cross-validated k-NN accuracy on an exported feature table.
    MnistClassify {
        #[arg(long)]
        features: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long, default_value_t = 5)]
        folds: usize,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Metric {
    Bottleneck,
    W1,
    W2,
    Wp,
}

fn build_id() -> &'static str {
    concat!(env!("CARGO_PKG_VERSION"), " (", env!("CARGO_PKG_NAME"), ")")
}

fn parse_point(text: &str) -> Result<BTreeMap<String, f64>, String> {
    let mut point = BTreeMap::new();
    for pair in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = pair
            .split_once('=')
            .ok_or_else(|| format!("expected name=value, got `{pair}`"))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| format!("`{}` is not a number", value.trim()))?;
        if !value.is_finite() {
            return Err(format!("`{name}` must be finite"));
        }
        point.insert(name.trim().to_string(), value);
    }
    Ok(point)
}

fn parse_dir(text: &str) -> Result<SweepDirection, String> {
    text.parse()
}

enum CliError {
    Usage(String),
    Input(String),
    Compute(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Compute(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Compute(m) => m,
        }
    }
}

impl From<MnistError> for CliError {
    fn from(e: MnistError) -> Self {
        match e {
            MnistError::InvalidK { .. }
            | MnistError::InvalidFolds { .. }
            | MnistError::EmptyTraining
            | MnistError::ColumnMismatch { .. } => CliError::Compute(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_barcode(path: &Path) -> Result<Barcode, CliError> {
    Barcode::parse(&read_text(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn expr_error(e: TropError) -> CliError {
    match e {
        TropError::Syntax { .. } | TropError::UnknownToken { .. } => CliError::Input(e.to_string()),
        _ => CliError::Compute(e.to_string()),
    }
}

fn terms(form: &MaxPlusForm) -> Vec<String> {
    form.terms().iter().map(ToString::to_string).collect()
}

fn run(cli: Cli) -> Result<String, CliError> {
    let json = cli.json;
    let mut out = String::new();
    match cli.command {
        Command::TropEval { expr, at } => {
            let e = parse_tropical(&expr).map_err(expr_error)?;
            let v = trop_eval(&e, &at).map_err(expr_error)?;
            if json {
                out = json!({ "value": v }).to_string();
            } else {
                out = format_decimal(v);
            }
        }
        Command::TropNormalize { expr } => {
            let e = parse_tropical(&expr).map_err(expr_error)?;
            let nf = to_rational_normal_form(&e).map_err(expr_error)?;
            if json {
                out = json!({
                    "numerator": terms(&nf.numerator),
                    "denominator": terms(&nf.denominator),
                })
                .to_string();
            } else {
                write!(out, "p = {}\nq = {}", nf.numerator, nf.denominator).unwrap();
            }
        }
        Command::Featurize { barcode, specs } => {
            let b = read_barcode(&barcode)?;
            let specs = parse_specs(&read_text(&specs)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", specs.display())))?;
            let values = featurize(&b, &specs);
            if json {
                out = json!({ "values": values }).to_string();
            } else {
                out = values.iter().map(|v| format_decimal(*v)).collect::<Vec<_>>().join(",");
            }
        }
        Command::Dist { metric, p, a, b } => {
            let order = match (metric, p) {
                (Metric::Bottleneck, _) => None,
                (Metric::W1, _) => Some(1.0),
                (Metric::W2, _) => Some(2.0),
                (Metric::Wp, Some(p)) if p.is_finite() && p >= 1.0 => Some(p),
                (Metric::Wp, Some(p)) => return Err(CliError::Usage(format!("--p must be a finite number >= 1, got {p}"))),
                (Metric::Wp, None) => return Err(CliError::Usage("--metric wp requires --p".into())),
            };
            let (a, b) = (read_barcode(&a)?, read_barcode(&b)?);
            let d = match order {
                None => bottleneck(&a, &b),
                Some(p) => wasserstein(p, &a, &b).map_err(|e| CliError::Compute(e.to_string()))?,
            };
            if json {
                out = json!({ "metric": format!("{metric:?}").to_lowercase(), "p": order, "distance": d }).to_string();
            } else {
                out = format_decimal(d);
            }
        }
        Command::Ph {
            image,
            dir,
            dim,
            threshold: t,
        } => {
            let bytes = std::fs::read(&image).map_err(|e| CliError::Input(format!("{}: {e}", image.display())))?;
            let img = read_pgm(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", image.display())))?;
            let ph = image_persistence(&threshold(&img, t), dir);
            let barcode = if dim == 0 { &ph.h0 } else { &ph.h1 };
            if json {
                out = json!({
                    "sweep": dir.name(),
                    "dim": dim,
                    "essential_death": ph.extent,
                    "intervals": barcode,
                })
                .to_string();
            } else {
                writeln!(out, "# sweep={dir} dim={dim} essential_death={}", format_decimal(ph.extent)).unwrap();
                out.push_str(barcode.to_text().trim_end());
            }
        }
        Command::MnistFeatures {
            images,
            labels,
            count,
            out: out_path,
            meta,
            m,
            threshold: t,
        } => {
            let ds = LabeledDataset::load(&images, &labels, Some(count))?;
            let cfg = PipelineConfig { m, threshold: t };
            let x = featurize_dataset(&ds, cfg);
            let frame = ds.images().first().map_or([0, 0], |i| [i.rows(), i.cols()]);
            let write = |path: &Path, text: &str| {
                std::fs::write(path, text).map_err(|e| CliError::Compute(format!("{}: {e}", path.display())))
            };
            write(&out_path, &x.to_csv())?;
            if let Some(meta) = &meta {
                write(meta, &FeatureMetadata::new(x.rows(), frame, cfg).to_json())?;
            }
            if json {
                out = json!({ "rows": x.rows(), "cols": x.cols(), "out": out_path }).to_string();
            } else {
                out = format!("wrote {} rows x {} columns to {}", x.rows(), x.cols(), out_path.display());
            }
        }
        Command::MnistClassify {
            features,
            labels,
            folds,
            k,
            seed,
        } => {
            let x = FeatureMatrix::parse_csv(&read_text(&features)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", features.display())))?;
            let y = read_idx_labels(&labels, Some(x.rows()))?;
            if y.len() < x.rows() {
                return Err(CliError::Input(format!(
                    "{} has {} labels for {} feature rows",
                    labels.display(),
                    y.len(),
                    x.rows()
                )));
            }
            let report = cross_validate(&x, &y, folds, k, seed)?;
            if json {
                out = serde_json::to_string(&report).expect("report serialises");
            } else {
                for (i, acc) in report.fold_accuracies.iter().enumerate() {
                    writeln!(out, "fold {}: {}", i + 1, format_decimal(*acc)).unwrap();
                }
                write!(out, "mean: {}", format_decimal(report.mean_accuracy)).unwrap();
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
