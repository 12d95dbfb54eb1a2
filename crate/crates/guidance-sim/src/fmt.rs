//! Numeric formatting shared by reports and CSV output.
//!
//! Every float that leaves the toolchain is rounded to six
//! significant digits so reports diff cleanly across platforms.

/// Rounds to six significant digits. Zero and non-finite values pass
/// through unchanged.
pub fn sig6(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    let magnitude = v.abs().log10().floor();
    let scale = 10f64.powf(5.0 - magnitude);
    (v * scale).round() / scale
}

/// Formats with six significant digits, shortest decimal form.
pub fn fmt_sig6(v: f64) -> String {
    format!("{}", sig6(v))
}
