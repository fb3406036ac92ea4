//! Number formatting shared by the CSV writers.

/// Twelve significant digits in scientific notation.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Like [`sig12`] but renders a missing value as an empty field.
pub fn sig12_opt(x: Option<f64>) -> String {
    x.map(sig12).unwrap_or_default()
}

/// Parses a field produced by [`sig12`].
pub fn parse_field(field: &str) -> Option<f64> {
    field.trim().parse().ok()
}
