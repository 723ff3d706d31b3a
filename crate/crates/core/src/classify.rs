//! Tandem models whose critical exponent is rational.
//!
//! `alpha` is rational exactly when `gamma^2` is `1/4`, `1/2` or `3/4`. For a
//! fixed target `r = num/den`, the equation `B^2 den = (A+B)(B+C) num` fixes
//! `C` once `A` and `B` are chosen, so the search is quadratic in the bound.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::model::TandemModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `gamma^2 = 1/4`, `alpha = -4`.
    Quarter,
    /// `gamma^2 = 1/2`, `alpha = -5`.
    Half,
    /// `gamma^2 = 3/4`, `alpha = -7`.
    ThreeQuarter,
}

/// A parametric family of models sharing one rational exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
}

impl FamilySpec {
    pub const ALL: [FamilySpec; 3] = [
        FamilySpec {
            kind: FamilyKind::Quarter,
        },
        FamilySpec {
            kind: FamilyKind::Half,
        },
        FamilySpec {
            kind: FamilyKind::ThreeQuarter,
        },
    ];

    pub fn new(kind: FamilyKind) -> Self {
        Self { kind }
    }

    /// `(num, den)` of the target `gamma^2`.
    pub fn target(&self) -> (u64, u64) {
        match self.kind {
            FamilyKind::Quarter => (1, 4),
            FamilyKind::Half => (1, 2),
            FamilyKind::ThreeQuarter => (3, 4),
        }
    }

    pub fn target_rational(&self) -> BigRational {
        let (n, d) = self.target();
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    pub fn alpha(&self) -> i64 {
        match self.kind {
            FamilyKind::Quarter => -4,
            FamilyKind::Half => -5,
            FamilyKind::ThreeQuarter => -7,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            FamilyKind::Quarter => "quarter",
            FamilyKind::Half => "half",
            FamilyKind::ThreeQuarter => "three_quarter",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("A = {0} is outside the family domain: {1}")]
    Domain(u64, &'static str),
    #[error("family member for A = {0} is not a valid model")]
    InvalidModel(u64),
}

/// All `(A,B,C)` with entries in `1..=bound`, `gcd = 1` and
/// `B^2 / ((A+B)(B+C)) = r`, in lexicographic order. A triple and its
/// `A <-> C` swap are both listed.
pub fn search_triples(r: &BigRational, bound: u64) -> Vec<TandemModel> {
    let mut out = Vec::new();
    if !r.is_positive() || *r >= BigRational::one() || bound == 0 {
        return out;
    }
    let (num, den) = (r.numer(), r.denom());
    for a in 1..=bound {
        for b in 1..=bound {
            // (A+B)(B+C) = B^2 den / num
            let top = BigInt::from(b) * BigInt::from(b) * den;
            let (q, rem) = top.div_rem(num);
            if !rem.is_zero() {
                continue;
            }
            let (q, rem) = q.div_rem(&BigInt::from(a + b));
            if !rem.is_zero() {
                continue;
            }
            let c = q - BigInt::from(b);
            let Some(c) = c.to_u64().filter(|c| (1..=bound).contains(c)) else {
                continue;
            };
            if let Ok(m) = TandemModel::new(a, b, c) {
                out.push(m);
            }
        }
    }
    out.sort();
    out
}

/// The parametric witness of the given family at `A`:
///
/// * quarter: `(A, (A-1)A, (A-1)(3A-4))` for odd `A > 1`;
/// * half: `(A, (A-1)A, (A-1)(A-2))` for odd `A > 1`;
/// * three-quarter: `(A, (A-1)A, (A-1)(A-4)/3)` for `A = 6k+1`, `k > 0`.
pub fn family(spec: FamilySpec, a: u64) -> Result<TandemModel, FamilyError> {
    let (b, c) = match spec.kind {
        FamilyKind::Quarter | FamilyKind::Half => {
            if a <= 1 || a.is_multiple_of(2) {
                return Err(FamilyError::Domain(a, "A must be odd and greater than 1"));
            }
            let c = if spec.kind == FamilyKind::Quarter {
                (a - 1) * (3 * a - 4)
            } else {
                (a - 1) * (a - 2)
            };
            ((a - 1) * a, c)
        }
        FamilyKind::ThreeQuarter => {
            if a <= 1 || a % 6 != 1 {
                return Err(FamilyError::Domain(a, "A must be 6k+1 with k > 0"));
            }
            ((a - 1) * a, (a - 1) * (a - 4) / 3)
        }
    };
    TandemModel::new(a, b, c).map_err(|_| FamilyError::InvalidModel(a))
}
