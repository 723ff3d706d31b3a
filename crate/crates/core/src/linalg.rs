//! Exact linear algebra for recurrence guessing: rank modulo a word-sized
//! prime and fraction-free (Bareiss) elimination over the integers.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The Mersenne prime `2^61 - 1`.
pub(crate) const PRIME: u64 = (1 << 61) - 1;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64) -> Option<u64> {
    (a != 0).then(|| pow_mod(a, PRIME - 2))
}

pub(crate) fn int_mod(x: &BigInt) -> u64 {
    let r = x.mod_floor(&BigInt::from(PRIME));
    r.iter_u64_digits().next().unwrap_or(0)
}

/// `x mod p`, or `None` when the denominator vanishes modulo `p`.
pub(crate) fn rational_mod(x: &BigRational) -> Option<u64> {
    let den = inv_mod(int_mod(x.denom()))?;
    Some(mul_mod(int_mod(x.numer()), den))
}

/// Rank of a dense matrix over `Z/pZ`. Rows are consumed.
pub(crate) fn rank_mod_p(mut rows: Vec<Vec<u64>>, ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col]).expect("pivot is nonzero");
        let (top, rest) = rows.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            let f = mul_mod(f, inv);
            for j in col..ncols {
                row[j] = add_mod(row[j], PRIME - mul_mod(f, prow[j]));
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// A basis of the rational kernel of an integer matrix, each vector scaled
/// to coprime integers with its last nonzero entry positive. Basis vectors
/// are indexed by free columns in increasing order.
pub(crate) fn kernel_basis(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (top, rest) = rows.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            for j in col + 1..ncols {
                let v = &prow[col] * &row[j] - &row[col] * &prow[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = prow[col].clone();
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);

    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![BigRational::zero(); ncols];
            x[f] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate().rev() {
                let mut s = BigRational::zero();
                for j in pc + 1..ncols {
                    if !rows[i][j].is_zero() && !x[j].is_zero() {
                        s += &x[j] * BigRational::from_integer(rows[i][j].clone());
                    }
                }
                x[pc] = -s / BigRational::from_integer(rows[i][pc].clone());
            }
            primitive(&x)
        })
        .collect()
}

/// Clears denominators and content; the last nonzero entry becomes positive.
pub(crate) fn primitive(x: &[BigRational]) -> Vec<BigInt> {
    let lcm = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut ints: Vec<BigInt> = x.iter().map(|v| (v * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() {
        for v in ints.iter_mut() {
            *v /= &g;
        }
    }
    if ints
        .iter()
        .rev()
        .find(|v| !v.is_zero())
        .is_some_and(|v| v.is_negative())
    {
        for v in ints.iter_mut() {
            *v = -&*v;
        }
    }
    ints
}
