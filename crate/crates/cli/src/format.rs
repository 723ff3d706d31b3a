//! Text formats shared by the subcommands.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;
use tandem_walks::exponent::{ExponentReport, Rationality};

pub const SCHEMA_VERSION: u64 = 1;

/// `num/den`, also for integers.
pub fn ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// A natural logarithm with 17 significant digits; `-inf` for a zero count.
pub fn log_value(x: f64) -> String {
    if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Finite floats as JSON numbers, everything else as `null`.
pub fn float(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// The exact integer when `alpha` is rational, ten decimals otherwise.
pub fn alpha(r: &ExponentReport) -> String {
    match r.rationality {
        Rationality::Rational(k) => k.to_string(),
        _ => format!("{:.10}", r.alpha),
    }
}

pub fn alpha_value(r: &ExponentReport) -> Value {
    match r.rationality {
        Rationality::Rational(k) => Value::from(k),
        _ => float(r.alpha),
    }
}

pub fn big(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are serializable");
    s.push('\n');
    s
}
