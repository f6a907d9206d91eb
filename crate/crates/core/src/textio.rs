//! Shared text formatting for CSV outputs.

use crate::scalar::Real;

/// Full-precision scientific notation (17 significant digits, enough to
/// round-trip any f64). All CSV files in this crate use this format.
pub fn csv_float<F: Real>(v: F) -> String {
    format!("{:.16e}", v.to_f64().expect("scalar convertible to f64"))
}
