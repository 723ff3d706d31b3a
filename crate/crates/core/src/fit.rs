//! Estimating `mu` and `alpha` from counting data.
//!
//! For `e_{pm} ~ kappa mu^{pm} (pm)^alpha` and `u_m = ln e_{pm}`, the second
//! difference `u_{m+1} - 2u_m + u_{m-1}` equals `alpha ln((m+1)(m-1)/m^2)`
//! up to lower-order terms, cancelling `kappa` and `mu`. The ratio estimates
//! are then sharpened by Richardson extrapolation in `1/m`.
//!
//! Only the subsequence `e_{pm}` is read. For `p > 1` this assumes the
//! subsequence is asymptotically smooth, which is not guaranteed a priori.

use alloc::vec::Vec;

use crate::enumerate::CountSequence;
use crate::math;

pub const MAX_RICHARDSON_LEVEL: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    /// Deepest Richardson level tried (capped at 3).
    pub richardson: usize,
    /// Successive levels closer than this count as converged.
    pub stability: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            richardson: MAX_RICHARDSON_LEVEL,
            stability: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FitError {
    #[error("need at least 5 consecutive nonzero terms e_(pm), found {0}")]
    InsufficientData(usize),
    #[error("term e_{0} needed by the fit is zero")]
    ZeroTerm(usize),
    #[error("period must be positive")]
    ZeroPeriod,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub period: usize,
    /// First and last subsequence index `m` read.
    pub m_range: (usize, usize),
    /// `(m, alpha_hat_m)`.
    pub alpha_estimates: Vec<(usize, f64)>,
    /// Level `k` of the Richardson table; level 0 is `alpha_estimates`.
    pub richardson_levels: Vec<Vec<(usize, f64)>>,
    /// Level whose last entry became `alpha_final`.
    pub level_used: usize,
    pub alpha_final: f64,
    pub mu_final: f64,
    pub reference_alpha: Option<f64>,
    pub deviation: Option<f64>,
}

impl FitResult {
    pub fn with_reference(mut self, alpha: f64) -> Self {
        self.reference_alpha = Some(alpha);
        self.deviation = Some(self.alpha_final - alpha);
        self
    }
}

/// Index range `m0..=m1` of the trailing run of nonzero terms `e_{pm}`.
fn trailing_run(e: &CountSequence, p: usize) -> Result<(usize, usize), FitError> {
    if p == 0 {
        return Err(FitError::ZeroPeriod);
    }
    if e.is_empty() {
        return Err(FitError::InsufficientData(0));
    }
    let m1 = (e.len() - 1) / p;
    if !e.is_nonzero(p * m1) {
        return Err(FitError::ZeroTerm(p * m1));
    }
    let mut m0 = m1;
    while m0 > 0 && e.is_nonzero(p * (m0 - 1)) {
        m0 -= 1;
    }
    if m1 - m0 + 1 < 5 {
        return Err(FitError::InsufficientData(m1 - m0 + 1));
    }
    Ok((m0, m1))
}

/// `u_{m+1} - u_m`.
fn first_difference(e: &CountSequence, p: usize, m: usize) -> f64 {
    match e {
        CountSequence::Exact(v) => math::ln_ratio(&v[p * (m + 1)], &v[p * m]),
        CountSequence::LogFloat(v) => v[p * (m + 1)] - v[p * m],
    }
}

/// `u_{m+1} - 2 u_m + u_{m-1}`, formed exactly for exact input.
fn second_difference(e: &CountSequence, p: usize, m: usize) -> f64 {
    match e {
        CountSequence::Exact(v) => {
            let num = &v[p * (m + 1)] * &v[p * (m - 1)];
            let den = &v[p * m] * &v[p * m];
            math::ln_ratio(&num, &den)
        }
        CountSequence::LogFloat(_) => first_difference(e, p, m) - first_difference(e, p, m - 1),
    }
}

/// One Richardson step on a sequence indexed by `m`.
fn richardson_step(prev: &[(usize, f64)], k: usize) -> Vec<(usize, f64)> {
    prev.windows(2)
        .filter(|w| w[1].0 == w[0].0 + 1)
        .map(|w| {
            let (m, r) = w[1];
            let r_prev = w[0].1;
            let mf = m as f64;
            (m, (mf * r - (mf - k as f64) * r_prev) / k as f64)
        })
        .collect()
}

/// Builds levels `0..=max_level` (stopping early when a level is empty).
fn richardson_table(base: Vec<(usize, f64)>, max_level: usize) -> Vec<Vec<(usize, f64)>> {
    let mut levels = alloc::vec![base];
    for k in 1..=max_level.min(MAX_RICHARDSON_LEVEL) {
        let next = richardson_step(&levels[k - 1], k);
        if next.is_empty() {
            break;
        }
        levels.push(next);
    }
    levels
}

/// Picks the last stable level: stop once two successive levels agree to
/// `stability`, or step back when the gaps start growing.
fn stable_value(levels: &[Vec<(usize, f64)>], stability: f64) -> (usize, f64) {
    let last = |k: usize| levels[k].last().expect("levels are nonempty").1;
    let mut chosen = 0;
    let mut prev_gap = f64::INFINITY;
    for k in 1..levels.len() {
        let gap = math::abs(last(k) - last(k - 1));
        if !gap.is_finite() || gap > prev_gap {
            break;
        }
        chosen = k;
        if gap < stability {
            break;
        }
        prev_gap = gap;
    }
    (chosen, last(chosen))
}

/// Second-difference estimates of `alpha` with Richardson extrapolation, plus
/// the matching estimate of `mu`.
pub fn estimate_alpha(
    e: &CountSequence,
    p: usize,
    opts: &FitOptions,
) -> Result<FitResult, FitError> {
    let (m0, m1) = trailing_run(e, p)?;
    let estimates: Vec<(usize, f64)> = ((m0 + 1).max(2)..m1)
        .map(|m| {
            let mf = m as f64;
            (
                m,
                second_difference(e, p, m) / math::ln_1p(-1.0 / (mf * mf)),
            )
        })
        .collect();
    if estimates.is_empty() {
        return Err(FitError::InsufficientData(m1 - m0 + 1));
    }
    let levels = richardson_table(estimates.clone(), opts.richardson);
    let (level_used, alpha_final) = stable_value(&levels, opts.stability);
    let mu_final = estimate_mu_with(e, p, alpha_final, opts)?;
    Ok(FitResult {
        period: p,
        m_range: (m0, m1),
        alpha_estimates: estimates,
        richardson_levels: levels,
        level_used,
        alpha_final,
        mu_final,
        reference_alpha: None,
        deviation: None,
    })
}

/// `mu` from `ln mu = (u_{m+1} - u_m - alpha ln((m+1)/m)) / p`, refined by
/// Richardson extrapolation.
pub fn estimate_mu(e: &CountSequence, p: usize, alpha_hat: f64) -> Result<f64, FitError> {
    estimate_mu_with(e, p, alpha_hat, &FitOptions::default())
}

fn estimate_mu_with(
    e: &CountSequence,
    p: usize,
    alpha_hat: f64,
    opts: &FitOptions,
) -> Result<f64, FitError> {
    let (m0, m1) = trailing_run(e, p)?;
    let base: Vec<(usize, f64)> = (m0.max(1)..m1)
        .map(|m| {
            let step = math::ln_1p(1.0 / m as f64);
            (m, (first_difference(e, p, m) - alpha_hat * step) / p as f64)
        })
        .collect();
    let levels = richardson_table(base, opts.richardson);
    let (_, ln_mu) = stable_value(&levels, opts.stability * 1e-3);
    Ok(math::exp(ln_mu))
}
