//! Fixed-width little-endian unsigned integers stored as `u64` limb slices.
//!
//! The exact sweep keeps one level of the DP as a flat `Vec<u64>` with a
//! constant number of limbs per cell, which avoids a heap allocation per
//! cell. The width is chosen from an a-priori bound on the counts, so no
//! addition can overflow.

use alloc::vec::Vec;
use num_bigint::BigUint;

/// Limbs needed for every count of a walk with at most `len` steps drawn
/// from `n_steps` steps, i.e. for values below `n_steps^len`.
pub(crate) fn limbs_for(n_steps: usize, len: usize) -> usize {
    let per_step = usize::BITS - n_steps.max(2).leading_zeros(); // ceil(log2) + slack
    let bits = per_step as usize * len + 1;
    bits.div_ceil(64).max(1)
}

/// `dst += src`; both slices have the same width.
#[inline]
pub(crate) fn add_assign(dst: &mut [u64], src: &[u64]) {
    debug_assert_eq!(dst.len(), src.len());
    let mut carry = false;
    for (d, &s) in dst.iter_mut().zip(src) {
        let (v, c1) = d.overflowing_add(s);
        let (v, c2) = v.overflowing_add(carry as u64);
        *d = v;
        carry = c1 | c2;
    }
    debug_assert!(!carry, "limb width too small");
}

#[inline]
pub(crate) fn is_zero(x: &[u64]) -> bool {
    x.iter().all(|&l| l == 0)
}

pub(crate) fn to_biguint(x: &[u64]) -> BigUint {
    let digits: Vec<u32> = x
        .iter()
        .flat_map(|&l| [l as u32, (l >> 32) as u32])
        .collect();
    BigUint::new(digits)
}
