/// Locale-independent decimal rendering with at most 12 significant digits.
///
/// Integral values print without a fractional part, `-0` prints as `0`.
pub fn format_decimal(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let rounded: f64 = format!("{value:.11e}")
        .parse()
        .expect("scientific rendering of a finite f64 parses");
    format!("{rounded}")
}

/// Sum in ascending order so the result does not depend on input order.
pub(crate) fn canonical_sum(mut values: Vec<f64>) -> f64 {
    values.sort_by(f64::total_cmp);
    values.into_iter().sum()
}
