//! Float shims that work without `std`.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

const LN_2: f64 = core::f64::consts::LN_2;

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn ln_1p(x: f64) -> f64 {
    libm::log1p(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn acos(x: f64) -> f64 {
    libm::acos(x)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub(crate) fn powi(x: f64, n: i64) -> f64 {
    libm::pow(x, n as f64)
}

/// Natural logarithm of a big integer; `-inf` for zero.
pub(crate) fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 960 {
        return ln(x.to_f64().expect("finite below 2^960"));
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    ln(top) + shift as f64 * LN_2
}

/// `ln(num/den)` to full double precision, including when the ratio is
/// close to one (the difference is formed exactly before rounding).
pub(crate) fn ln_ratio(num: &BigUint, den: &BigUint) -> f64 {
    assert!(
        !num.is_zero() && !den.is_zero(),
        "logarithm of a zero ratio"
    );
    let (diff, negative) = if num >= den {
        (num - den, false)
    } else {
        (den - num, true)
    };
    // Within a factor of two: ln(1 + d) via log1p on a precise quotient.
    if &diff << 1u32 < *den {
        let q = ratio_f64(&diff, den);
        return ln_1p(if negative { -q } else { q });
    }
    let (q, exp2) = ratio_scaled(num, den);
    ln(q) + exp2 as f64 * LN_2
}

/// `a / b` as `q * 2^e` with `q` a double holding at least 64 correct bits.
fn ratio_scaled(a: &BigUint, b: &BigUint) -> (f64, i64) {
    let shift = b.bits() as i64 - a.bits() as i64 + 80;
    let q = if shift >= 0 {
        (a << shift as u64) / b
    } else {
        a / (b << (-shift) as u64)
    };
    (q.to_f64().expect("quotient has ~80 bits"), -shift)
}

fn ratio_f64(a: &BigUint, b: &BigUint) -> f64 {
    let (q, e) = ratio_scaled(a, b);
    libm::scalbn(q, e as i32)
}
