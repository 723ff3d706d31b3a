//! Guessing linear recurrences with polynomial coefficients.
//!
//! For each order `r` and degree `d`, the unknown coefficients `c_{k,i}` of
//! `sum_k (sum_i c_{k,i} n^i) t_{n+k} = 0` form the kernel of an integer
//! matrix with one row per admissible `n`. The last ten terms never enter
//! the matrix and serve as a held-out check.
//!
//! A cell is first ranked modulo the prime `2^61 - 1`. Full column rank there
//! proves the rational kernel is trivial (a primitive integer kernel vector
//! cannot vanish modulo a prime). Otherwise the kernel is computed exactly by
//! fraction-free elimination and every candidate is verified on all terms.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::linalg;

/// Terms kept out of every solving window.
pub const HOLDOUT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GuessError {
    #[error("need at least {needed} terms, got {got}")]
    InsufficientTerms { needed: usize, got: usize },
    #[error("recurrence has no nonzero coefficient")]
    ZeroRecurrence,
}

/// `sum_{k=0}^{r} p_k(n) t_{n+k} = 0` with integer polynomial coefficients.
///
/// Stored primitive (coefficient content 1) with the leading coefficient of
/// `p_r` positive and `p_r` not identically zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Recurrence {
    /// `coefficients[k][i]` is the coefficient of `n^i` in `p_k`.
    coefficients: Vec<Vec<BigInt>>,
}

impl Recurrence {
    pub fn new(mut coefficients: Vec<Vec<BigInt>>) -> Result<Self, GuessError> {
        let nonzero = |p: &Vec<BigInt>| p.iter().any(|c| !c.is_zero());
        while coefficients.last().is_some_and(|p| !nonzero(p)) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            return Err(GuessError::ZeroRecurrence);
        }
        let degree = coefficients
            .iter()
            .filter_map(|p| p.iter().rposition(|c| !c.is_zero()))
            .max()
            .expect("some coefficient is nonzero");
        for p in coefficients.iter_mut() {
            p.resize(degree + 1, BigInt::zero());
        }
        let g = coefficients
            .iter()
            .flatten()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let lead = coefficients
            .last()
            .and_then(|p| p.iter().rev().find(|c| !c.is_zero()))
            .expect("p_r is nonzero");
        let g = if lead.is_negative() { -g } else { g };
        for c in coefficients.iter_mut().flatten() {
            *c /= &g;
        }
        Ok(Self { coefficients })
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn degree(&self) -> usize {
        self.coefficients[0].len() - 1
    }

    pub fn coefficients(&self) -> &[Vec<BigInt>] {
        &self.coefficients
    }

    /// `p_k(n)`.
    pub fn eval(&self, k: usize, n: usize) -> BigInt {
        let n = BigInt::from(n);
        self.coefficients[k]
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &n + c)
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.coefficients.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            f.write_str("(")?;
            let mut first = true;
            for (i, c) in p.iter().enumerate().rev() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    f.write_str(if c.is_negative() { " - " } else { " + " })?;
                } else if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
                let c = c.abs();
                match i {
                    0 => write!(f, "{c}")?,
                    _ if c.is_one() => write!(f, "n^{i}")?,
                    _ => write!(f, "{c}*n^{i}")?,
                }
            }
            if first {
                f.write_str("0")?;
            }
            write!(f, ")*t(n+{k})")?;
        }
        f.write_str(" = 0")
    }
}

/// True iff the recurrence holds at every `n` with `n + order < terms.len()`.
/// Returns false when there is no such `n`.
pub fn verify_recurrence(rec: &Recurrence, terms: &[BigRational]) -> bool {
    let r = rec.order();
    if terms.len() <= r {
        return false;
    }
    (0..terms.len() - r).all(|n| {
        let sum: BigRational = (0..=r)
            .map(|k| &terms[n + k] * BigRational::from_integer(rec.eval(k, n)))
            .sum();
        sum.is_zero()
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellStatus {
    /// Modular or exact rank shows the kernel is trivial.
    NoKernel,
    /// Kernel candidates exist but none holds on all terms.
    Rejected,
    /// Fewer equations than unknowns; not searched.
    Underdetermined,
    Found,
}

impl CellStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::NoKernel => "no_kernel",
            Self::Rejected => "rejected",
            Self::Underdetermined => "underdetermined",
            Self::Found => "found",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchedCell {
    pub order: usize,
    pub degree: usize,
    pub status: CellStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuessOutcome {
    pub recurrence: Option<Recurrence>,
    /// Every cell examined, in search order.
    pub searched: Vec<SearchedCell>,
}

/// `(r, d)` with `1 <= r <= max_order`, `d <= max_degree`, by increasing
/// `r + d` and then increasing `r`.
pub fn search_order(max_order: usize, max_degree: usize) -> Vec<(usize, usize)> {
    let mut cells: Vec<(usize, usize)> = (1..=max_order)
        .flat_map(|r| (0..=max_degree).map(move |d| (r, d)))
        .collect();
    cells.sort_by_key(|&(r, d)| (r + d, r));
    cells
}

fn rows_for(n_terms: usize, r: usize) -> usize {
    (n_terms - HOLDOUT).saturating_sub(r)
}

/// Row `n` of cell `(r, d)` modulo the prime: columns `k*(d+1) + i`.
fn modular_matrix(tmod: &[u64], r: usize, d: usize, rows: usize) -> Vec<Vec<u64>> {
    (0..rows)
        .map(|n| {
            let mut row = Vec::with_capacity((r + 1) * (d + 1));
            for k in 0..=r {
                let mut pw = tmod[n + k];
                for _ in 0..=d {
                    row.push(pw);
                    pw = linalg::mul_mod(pw, n as u64 % linalg::PRIME);
                }
            }
            row
        })
        .collect()
}

/// Integer rows: each row scaled by the lcm of its terms' denominators.
fn integer_matrix(terms: &[BigRational], r: usize, d: usize, rows: usize) -> Vec<Vec<BigInt>> {
    (0..rows)
        .map(|n| {
            let l = (0..=r).fold(BigInt::one(), |acc, k| acc.lcm(terms[n + k].denom()));
            let nn = BigInt::from(n);
            let mut row = Vec::with_capacity((r + 1) * (d + 1));
            for k in 0..=r {
                let t = &terms[n + k];
                let mut v = t.numer() * (&l / t.denom());
                for _ in 0..=d {
                    row.push(v.clone());
                    v *= &nn;
                }
            }
            row
        })
        .collect()
}

/// Modular screen of one cell: true when the kernel is provably trivial.
fn trivially_full_rank(tmod: &Option<Vec<u64>>, r: usize, d: usize, rows: usize) -> bool {
    let ncols = (r + 1) * (d + 1);
    match tmod {
        Some(t) => linalg::rank_mod_p(modular_matrix(t, r, d, rows), ncols) == ncols,
        None => false,
    }
}

fn screen(cells: &[(usize, usize)], tmod: &Option<Vec<u64>>, n_terms: usize) -> Vec<bool> {
    let f = |&(r, d): &(usize, usize)| {
        let rows = rows_for(n_terms, r);
        rows >= (r + 1) * (d + 1) && trivially_full_rank(tmod, r, d, rows)
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        cells.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    cells.iter().map(f).collect()
}

/// Searches cells in order and returns the first recurrence that holds on
/// every term, or a negative outcome listing the cells searched.
pub fn guess_recurrence(
    terms: &[BigRational],
    max_order: usize,
    max_degree: usize,
) -> Result<GuessOutcome, GuessError> {
    let needed = (max_order + 1) * (max_degree + 1) + HOLDOUT;
    if terms.len() < needed {
        return Err(GuessError::InsufficientTerms {
            needed,
            got: terms.len(),
        });
    }
    let tmod: Option<Vec<u64>> = terms.iter().map(linalg::rational_mod).collect();
    let cells = search_order(max_order, max_degree);
    let full_rank = screen(&cells, &tmod, terms.len());

    let mut searched = Vec::with_capacity(cells.len());
    for (&(r, d), &full) in cells.iter().zip(&full_rank) {
        let ncols = (r + 1) * (d + 1);
        let rows = rows_for(terms.len(), r);
        let status = if rows < ncols {
            CellStatus::Underdetermined
        } else if full {
            CellStatus::NoKernel
        } else {
            let basis = linalg::kernel_basis(integer_matrix(terms, r, d, rows), ncols);
            if basis.is_empty() {
                CellStatus::NoKernel
            } else {
                let found = basis.into_iter().find_map(|v| {
                    let polys = v.chunks(d + 1).map(<[BigInt]>::to_vec).collect();
                    Recurrence::new(polys)
                        .ok()
                        .filter(|rec| verify_recurrence(rec, terms))
                });
                if let Some(rec) = found {
                    searched.push(SearchedCell {
                        order: r,
                        degree: d,
                        status: CellStatus::Found,
                    });
                    return Ok(GuessOutcome {
                        recurrence: Some(rec),
                        searched,
                    });
                }
                CellStatus::Rejected
            }
        };
        searched.push(SearchedCell {
            order: r,
            degree: d,
            status,
        });
    }
    Ok(GuessOutcome {
        recurrence: None,
        searched,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_bigint::BigUint;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn q(v: BigUint) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    /// `2 (3m)! / (m! (m+1)! (m+2)!)`.
    fn tandem_111(count: usize) -> Vec<BigRational> {
        let fact = |n: usize| (1..=n).fold(BigUint::from(1u32), |acc, k| acc * k);
        (0..count)
            .map(|m| q(BigUint::from(2u32) * fact(3 * m) / (fact(m) * fact(m + 1) * fact(m + 2))))
            .collect()
    }

    fn expected_111() -> Recurrence {
        Recurrence::new(vec![
            vec![int(-6), int(-27), int(-27)],
            vec![int(6), int(5), int(1)],
        ])
        .unwrap()
    }

    #[test]
    fn search_order_is_by_total_then_order() {
        assert_eq!(
            search_order(2, 2),
            vec![(1, 0), (1, 1), (2, 0), (1, 2), (2, 1), (2, 2)]
        );
    }

    #[test]
    fn normalization() {
        let r = Recurrence::new(vec![vec![int(4), int(0)], vec![int(-2), int(0)], vec![]]).unwrap();
        assert_eq!(r.order(), 1);
        assert_eq!(r.degree(), 0);
        assert_eq!(r.coefficients(), &[vec![int(-2)], vec![int(1)]]);
        assert_eq!(
            Recurrence::new(vec![vec![int(0)], vec![]]),
            Err(GuessError::ZeroRecurrence)
        );
        assert_eq!(Recurrence::new(vec![]), Err(GuessError::ZeroRecurrence));
        assert_eq!(
            expected_111().to_string(),
            "(-27*n^2 - 27*n^1 - 6)*t(n+0) + (n^2 + 5*n^1 + 6)*t(n+1) = 0"
        );
    }

    #[test]
    fn tandem_111_recurrence() {
        let terms = tandem_111(130);
        let out = guess_recurrence(&terms[..30], 1, 2).unwrap();
        let rec = out.recurrence.unwrap();
        assert_eq!(rec, expected_111());
        assert_eq!(out.searched.last().unwrap().status, CellStatus::Found);
        assert!(verify_recurrence(&rec, &terms));
    }

    #[test]
    fn constant_sequence() {
        let ones = vec![BigRational::one(); 30];
        let rec = guess_recurrence(&ones, 2, 2).unwrap().recurrence.unwrap();
        assert_eq!(rec.coefficients(), &[vec![int(-1)], vec![int(1)]]);
    }

    #[test]
    fn corrupted_term_fails_verification() {
        let mut terms = tandem_111(121);
        assert!(verify_recurrence(&expected_111(), &terms));
        terms[77] += BigRational::one();
        assert!(!verify_recurrence(&expected_111(), &terms));
        assert!(!verify_recurrence(&expected_111(), &terms[..1]));
    }

    #[test]
    fn held_out_corruption_is_caught() {
        // The last term is never in a solving window; corrupting it must
        // turn the positive result into a negative one.
        let mut terms = tandem_111(30);
        terms[29] += BigRational::one();
        let out = guess_recurrence(&terms, 1, 2).unwrap();
        assert_eq!(out.recurrence, None);
        assert_eq!(out.searched.len(), 3);
        assert!(out
            .searched
            .iter()
            .any(|c| c.status == CellStatus::Rejected));
    }

    #[test]
    fn rational_terms() {
        // t_n = 1/(n+1): (n+2) t_{n+1} - (n+1) t_n = 0.
        let terms: Vec<BigRational> = (0..40)
            .map(|n| BigRational::new(int(1), int(n + 1)))
            .collect();
        let rec = guess_recurrence(&terms, 2, 2).unwrap().recurrence.unwrap();
        assert_eq!(
            rec.coefficients(),
            &[vec![int(-1), int(-1)], vec![int(2), int(1)]]
        );
    }

    #[test]
    fn random_sequences_give_nothing() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
        for _ in 0..20 {
            let terms: Vec<BigRational> = (0..100)
                .map(|_| {
                    BigRational::new(int(rng.gen_range(-1000..1000)), int(rng.gen_range(1..50)))
                })
                .collect();
            let out = guess_recurrence(&terms, 3, 3).unwrap();
            assert_eq!(out.recurrence, None);
            assert_eq!(out.searched.len(), 12);
        }
    }

    #[test]
    fn insufficient_terms() {
        let terms = tandem_111(20);
        assert!(guess_recurrence(&terms, 2, 2).is_ok());
        assert_eq!(
            guess_recurrence(&terms, 3, 3),
            Err(GuessError::InsufficientTerms {
                needed: 26,
                got: 20
            })
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn sound_and_shift_robust(
            // t_{n+1} = (a n + b) / (c n + e) t_n
            a in 1i64..4, b in 1i64..6, c in 1i64..4, e in 1i64..6, shift in 0usize..3,
        ) {
            let mut terms = vec![BigRational::one()];
            for n in 0..45i64 {
                let next = terms[n as usize].clone() * BigRational::new(int(a * n + b), int(c * n + e));
                terms.push(next);
            }
            let out = guess_recurrence(&terms, 2, 2).unwrap();
            let rec = out.recurrence.unwrap();
            prop_assert!(verify_recurrence(&rec, &terms));
            prop_assert_eq!(rec.order(), 1);
            let shifted = &terms[shift..];
            let rec = guess_recurrence(shifted, 2, 2).unwrap().recurrence.unwrap();
            prop_assert!(verify_recurrence(&rec, shifted));
        }
    }
}
