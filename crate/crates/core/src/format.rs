//! Fixed-precision, locale-independent number formatting.

/// Significant digits used for reported numbers.
pub const SIG_DIGITS: usize = 9;

/// `x` rounded to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.max(1) - 1, x).parse().unwrap_or(x)
}

/// Shortest decimal string of `x` rounded to `digits` significant digits,
/// always with `.` as separator. Non-finite values print as `inf`, `-inf`,
/// `NaN`.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    let r = round_sig(x, digits);
    if r == 0.0 {
        // drop the sign of negative zero
        return "0".to_string();
    }
    if r.is_finite() && (r.abs() >= 1e16 || r.abs() < 1e-7) {
        let s = format!("{:e}", r);
        return s;
    }
    format!("{r}")
}

/// [`fmt_sig`] with the default precision.
pub fn fmt9(x: f64) -> String {
    fmt_sig(x, SIG_DIGITS)
}
