//! Critical point, exponential growth and critical exponent of excursions.
//!
//! For a step set `S` that is not contained in a half-plane and has a step
//! in `N^2`, the step polynomial has a unique positive critical point
//! `(X, Y)`. With `mu = S(X,Y)` and
//! `gamma = S_xy / sqrt(S_xx S_yy)` evaluated there, the excursion exponent is
//! `alpha = -1 - pi / arccos(-gamma)`. An irrational `alpha` rules out a
//! D-finite excursion generating function.
//!
//! For the tandem steps `(A,0)`, `(-B,B)`, `(0,-C)` all of these have closed
//! forms, and `gamma^2 = B^2 / ((A+B)(B+C))` is an exact rational. The
//! arccosine of the square root of a rational `r` in `(0,1)` is a rational
//! multiple of `pi` only for `r` in `{1/4, 1/2, 3/4}`, which gives the
//! rationality test. Classification always uses the exact `gamma^2`.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use crate::math;
use crate::model::{StepSet, TandemModel};

const PI: f64 = core::f64::consts::PI;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExponentError {
    #[error("step set is contained in a half-plane or has no step in N^2")]
    PreconditionViolation,
    #[error("critical point solver did not converge in {iterations} iterations (gradient norm {gradient_norm:e})")]
    NonConvergence {
        iterations: usize,
        gradient_norm: f64,
    },
    #[error("degenerate Hessian at the critical point (S_xx = {sxx}, S_yy = {syy})")]
    DegenerateHessian { sxx: f64, syy: f64 },
    #[error("gamma = {0} lies outside (-1, 1)")]
    GammaOutOfDomain(f64),
    #[error("gamma^2 = {0} lies outside (0, 1)")]
    GammaSqOutOfRange(String),
}

/// Numerical tolerances used by the solver and its cross-checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Stop once the log-coordinate gradient norm is at most this.
    pub gradient: f64,
    /// Agreement between independent evaluation routes.
    pub agreement: f64,
    pub max_iterations: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            gradient: 1e-12,
            agreement: 1e-10,
            max_iterations: 200,
        }
    }
}

/// Value and partial derivatives of a step polynomial at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partials {
    pub s: f64,
    pub sx: f64,
    pub sy: f64,
    pub sxx: f64,
    pub sxy: f64,
    pub syy: f64,
}

/// Evaluates `S` and its first and second partials monomial by monomial.
pub fn partials(steps: &StepSet, x: f64, y: f64) -> Partials {
    let mut out = Partials {
        s: 0.0,
        sx: 0.0,
        sy: 0.0,
        sxx: 0.0,
        sxy: 0.0,
        syy: 0.0,
    };
    for &(i, j) in steps.steps() {
        let v = math::powi(x, i) * math::powi(y, j);
        let (fi, fj) = (i as f64, j as f64);
        out.s += v;
        out.sx += fi * v / x;
        out.sy += fj * v / y;
        out.sxx += fi * (fi - 1.0) * v / (x * x);
        out.sxy += fi * fj * v / (x * y);
        out.syy += fj * (fj - 1.0) * v / (y * y);
    }
    out
}

/// Closed-form critical point of the tandem step polynomial:
/// `X = (B^C C^B / A^(B+C))^(1/(AB+AC+BC))`,
/// `Y = (C^(A+B) / (A^B B^A))^(1/(AB+AC+BC))`.
pub fn closed_form_critical_point(m: &TandemModel) -> (f64, f64) {
    let [a, b, c] = m.lengths().map(|v| v as f64);
    let (la, lb, lc) = (math::ln(a), math::ln(b), math::ln(c));
    let denom = a * b + a * c + b * c;
    let x = math::exp((c * lb + b * lc - (b + c) * la) / denom);
    let y = math::exp(((a + b) * lc - b * la - a * lb) / denom);
    (x, y)
}

/// Closed-form exponential growth
/// `mu = C (A^B B^A / C^(A+B))^(C/(AB+AC+BC)) (1/A + 1/B + 1/C)`.
pub fn growth_constant(m: &TandemModel) -> f64 {
    let [a, b, c] = m.lengths().map(|v| v as f64);
    let (la, lb, lc) = (math::ln(a), math::ln(b), math::ln(c));
    let denom = a * b + a * c + b * c;
    c * math::exp(c * (b * la + a * lb - (a + b) * lc) / denom) * (1.0 / a + 1.0 / b + 1.0 / c)
}

/// Exact `gamma^2 = B^2 / ((A+B)(B+C))` in lowest terms.
pub fn gamma_exact_sq(m: &TandemModel) -> BigRational {
    let [a, b, c] = m.lengths().map(BigInt::from);
    BigRational::new(&b * &b, (&a + &b) * (&b + &c))
}

/// Result of [`solve_critical_point`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub x: f64,
    pub y: f64,
    pub iterations: usize,
    /// Euclidean norm of the gradient of `(u,v) -> S(e^u, e^v)`.
    pub gradient_norm: f64,
}

/// Minimizes `F(u,v) = S(e^u, e^v)`, which is strictly convex, by Newton's
/// method from `(0,0)`; the step is halved until the objective or the
/// gradient norm decreases.
pub fn solve_critical_point(
    steps: &StepSet,
    tol: &Tolerances,
) -> Result<CriticalPoint, ExponentError> {
    if !steps.not_in_half_plane() || !steps.has_nonnegative_step() {
        return Err(ExponentError::PreconditionViolation);
    }
    let eval = |u: f64, v: f64| {
        let mut f = 0.0;
        let mut g = [0.0; 2];
        let mut h = [0.0; 3];
        for &(i, j) in steps.steps() {
            let (fi, fj) = (i as f64, j as f64);
            let e = math::exp(fi * u + fj * v);
            f += e;
            g[0] += fi * e;
            g[1] += fj * e;
            h[0] += fi * fi * e;
            h[1] += fi * fj * e;
            h[2] += fj * fj * e;
        }
        (f, g, h)
    };
    let norm = |g: [f64; 2]| math::sqrt(g[0] * g[0] + g[1] * g[1]);

    let (mut u, mut v) = (0.0f64, 0.0f64);
    let (mut f, mut g, mut h) = eval(u, v);
    for iteration in 0..=tol.max_iterations {
        let gn = norm(g);
        if gn <= tol.gradient {
            return Ok(CriticalPoint {
                x: math::exp(u),
                y: math::exp(v),
                iterations: iteration,
                gradient_norm: gn,
            });
        }
        if iteration == tol.max_iterations {
            break;
        }
        let det = h[0] * h[2] - h[1] * h[1];
        let du = -(h[2] * g[0] - h[1] * g[1]) / det;
        let dv = -(h[0] * g[1] - h[1] * g[0]) / det;
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let (nu, nv) = (u + t * du, v + t * dv);
            let (nf, ng, nh) = eval(nu, nv);
            if nf < f || norm(ng) < gn {
                (u, v, f, g, h) = (nu, nv, nf, ng, nh);
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    Err(ExponentError::NonConvergence {
        iterations: tol.max_iterations,
        gradient_norm: norm(g),
    })
}

/// `gamma = S_xy / sqrt(S_xx S_yy)` at `(x, y)`.
pub fn gamma_general(steps: &StepSet, x: f64, y: f64) -> Result<f64, ExponentError> {
    let p = partials(steps, x, y);
    if p.sxx <= 0.0 || p.syy <= 0.0 {
        return Err(ExponentError::DegenerateHessian {
            sxx: p.sxx,
            syy: p.syy,
        });
    }
    Ok(p.sxy / math::sqrt(p.sxx * p.syy))
}

/// Second partials of the tandem step polynomial at its critical point,
/// using the simplified forms `S_xx = (A+B) B Y^B / X^(B+2)`,
/// `S_yy = (B+C) B Y^(B-2) / X^B` and `S_xy = -B^2 Y^(B-1) / X^(B+1)`.
pub fn tandem_hessian_at_critical(m: &TandemModel, x: f64, y: f64) -> (f64, f64, f64) {
    let [a, b, c] = m.lengths().map(|v| v as f64);
    let bi = m.b() as i64;
    let sxx = (a + b) * b * math::powi(y, bi) / math::powi(x, bi + 2);
    let syy = (b + c) * b * math::powi(y, bi - 2) / math::powi(x, bi);
    let sxy = -b * b * math::powi(y, bi - 1) / math::powi(x, bi + 1);
    (sxx, sxy, syy)
}

/// `alpha = -1 - pi / arccos(-gamma)`.
pub fn alpha_from_gamma(gamma: f64) -> Result<f64, ExponentError> {
    if !(gamma > -1.0 && gamma < 1.0) {
        return Err(ExponentError::GammaOutOfDomain(gamma));
    }
    Ok(-1.0 - PI / math::acos(-gamma))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rationality {
    /// `alpha` is this integer.
    Rational(i64),
    Irrational,
    /// `gamma^2` is not known to be rational, so the criterion does not apply.
    Unavailable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DFiniteness {
    NotDFiniteProven,
    KnownDFinite,
    Unknown,
}

impl Rationality {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Rational(_) => "rational",
            Self::Irrational => "irrational",
            Self::Unavailable => "unavailable",
        }
    }
}

impl DFiniteness {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::NotDFiniteProven => "not_dfinite_proven",
            Self::KnownDFinite => "known_dfinite",
            Self::Unknown => "unknown",
        }
    }
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact classification of `alpha` for `gamma = -sqrt(gamma_sq)`.
pub fn classify_rationality(gamma_sq: &BigRational) -> Result<Rationality, ExponentError> {
    if !gamma_sq.is_positive() || *gamma_sq >= BigRational::one() {
        return Err(ExponentError::GammaSqOutOfRange(format!("{gamma_sq}")));
    }
    Ok(if *gamma_sq == ratio(1, 4) {
        Rationality::Rational(-4)
    } else if *gamma_sq == ratio(1, 2) {
        Rationality::Rational(-5)
    } else if *gamma_sq == ratio(3, 4) {
        Rationality::Rational(-7)
    } else {
        Rationality::Irrational
    })
}

/// Everything known about the excursion asymptotics of one model.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentReport {
    pub model: Option<TandemModel>,
    pub steps: StepSet,
    pub x: f64,
    pub y: f64,
    pub mu: f64,
    /// Exact `gamma^2`, when known.
    pub gamma_sq: Option<BigRational>,
    pub gamma: f64,
    pub alpha: f64,
    /// `-1 - pi/arccos(sqrt(num/den))`, when `gamma^2` is known.
    pub alpha_closed_form: Option<String>,
    pub rationality: Rationality,
    pub dfiniteness: DFiniteness,
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // Numerator and denominator can exceed f64 range for huge models.
    let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
    let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        let shift = r.denom().bits().saturating_sub(60);
        let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
        let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
        n / d
    }
}

/// Report for a tandem model from the closed forms.
pub fn exponent_report(m: &TandemModel) -> Result<ExponentReport, ExponentError> {
    let (x, y) = closed_form_critical_point(m);
    let gamma_sq = gamma_exact_sq(m);
    let gamma = -math::sqrt(rational_to_f64(&gamma_sq));
    let rationality = classify_rationality(&gamma_sq)?;
    let alpha = match rationality {
        Rationality::Rational(k) => k as f64,
        _ => alpha_from_gamma(gamma)?,
    };
    let dfiniteness = match rationality {
        Rationality::Irrational => DFiniteness::NotDFiniteProven,
        _ if m.lengths() == [1, 1, 1] => DFiniteness::KnownDFinite,
        _ => DFiniteness::Unknown,
    };
    Ok(ExponentReport {
        model: Some(*m),
        steps: m.step_set(),
        x,
        y,
        mu: growth_constant(m),
        alpha_closed_form: Some(format!(
            "-1 - pi/arccos(sqrt({}/{}))",
            gamma_sq.numer(),
            gamma_sq.denom()
        )),
        gamma_sq: Some(gamma_sq),
        gamma,
        alpha,
        rationality,
        dfiniteness,
    })
}

/// Report for an arbitrary step set from the numerical solver. `gamma^2` is
/// not available exactly, so no rationality verdict is drawn.
pub fn exponent_report_general(
    steps: &StepSet,
    tol: &Tolerances,
) -> Result<ExponentReport, ExponentError> {
    let cp = solve_critical_point(steps, tol)?;
    let gamma = gamma_general(steps, cp.x, cp.y)?;
    let alpha = alpha_from_gamma(gamma)?;
    Ok(ExponentReport {
        model: None,
        steps: steps.clone(),
        x: cp.x,
        y: cp.y,
        mu: steps.evaluate(cp.x, cp.y),
        gamma_sq: None,
        gamma,
        alpha,
        alpha_closed_form: None,
        rationality: Rationality::Unavailable,
        dfiniteness: DFiniteness::Unknown,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn t(a: u64, b: u64, c: u64) -> TandemModel {
        TandemModel::new(a, b, c).unwrap()
    }

    fn coprime_triples(bound: u64) -> Vec<TandemModel> {
        let mut out = Vec::new();
        for a in 1..=bound {
            for b in 1..=bound {
                for c in 1..=bound {
                    if let Ok(m) = TandemModel::new(a, b, c) {
                        out.push(m);
                    }
                }
            }
        }
        out
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn closed_form_critical_points() {
        assert_eq!(closed_form_critical_point(&t(1, 1, 1)), (1.0, 1.0));
        let (x, y) = closed_form_critical_point(&t(2, 1, 1));
        assert!(close(x, 0.25f64.powf(0.2), 1e-14));
        assert!(close(y, 0.5f64.powf(0.2), 1e-14));
        for m in coprime_triples(10) {
            let (x, y) = closed_form_critical_point(&m);
            let p = partials(&m.step_set(), x, y);
            assert!(p.sx.abs() <= 1e-10 && p.sy.abs() <= 1e-10, "{m}: {p:?}");
            assert!(p.sxx > 0.0 && p.syy > 0.0);
        }
    }

    #[test]
    fn solver_matches_closed_forms() {
        let tol = Tolerances::default();
        let cp = solve_critical_point(&t(1, 1, 1).step_set(), &tol).unwrap();
        assert!(close(cp.x, 1.0, 1e-12) && close(cp.y, 1.0, 1e-12));
        for m in coprime_triples(10) {
            let cp = solve_critical_point(&m.step_set(), &tol).unwrap();
            let (x, y) = closed_form_critical_point(&m);
            assert!(close(cp.x, x, 1e-10) && close(cp.y, y, 1e-10), "{m}");
            assert!(cp.gradient_norm <= 1e-12);
            let mu = growth_constant(&m);
            assert!(((m.step_set().evaluate(cp.x, cp.y) - mu) / mu).abs() <= 1e-10);
        }
    }

    #[test]
    fn solver_rejects_half_plane_sets() {
        let s = StepSet::new(vec![(1, 0), (0, 1)]).unwrap();
        assert_eq!(
            solve_critical_point(&s, &Tolerances::default()),
            Err(ExponentError::PreconditionViolation)
        );
        let tight = Tolerances {
            max_iterations: 1,
            ..Tolerances::default()
        };
        assert!(matches!(
            solve_critical_point(&t(7, 3, 1).step_set(), &tight),
            Err(ExponentError::NonConvergence { .. })
        ));
    }

    #[test]
    fn growth_constants() {
        assert!(close(growth_constant(&t(1, 1, 1)), 3.0, 1e-15));
        let expected = 2.5 * 2f64.powf(0.2);
        assert!(close(growth_constant(&t(2, 1, 1)), expected, 1e-14));
        assert!(close(expected, 2.8717, 1e-4));
        for m in coprime_triples(10) {
            let mu = growth_constant(&m);
            assert!(mu <= 3.0 + 1e-12);
            let (x, y) = closed_form_critical_point(&m);
            let s = m.step_set();
            assert!(((s.evaluate(x, y) - mu) / mu).abs() <= 1e-10);
            // Local minimum probe.
            for f in [1.0 - 1e-3, 1.0 + 1e-3] {
                assert!(s.evaluate(x * f, y) >= s.evaluate(x, y));
                assert!(s.evaluate(x, y * f) >= s.evaluate(x, y));
            }
        }
    }

    #[test]
    fn gamma_sq_examples() {
        assert_eq!(gamma_exact_sq(&t(1, 1, 1)), ratio(1, 4));
        assert_eq!(gamma_exact_sq(&t(3, 2, 1)), ratio(4, 15));
        assert_eq!(gamma_exact_sq(&t(4, 4, 3)), ratio(2, 7));
    }

    #[test]
    fn gamma_general_agrees_with_closed_form() {
        let g = gamma_general(&t(1, 1, 1).step_set(), 1.0, 1.0).unwrap();
        assert!(close(g, -0.5, 1e-15));
        let m = t(2, 1, 1);
        let (x, y) = closed_form_critical_point(&m);
        let g = gamma_general(&m.step_set(), x, y).unwrap();
        assert!(close(g, -1.0 / 6f64.sqrt(), 1e-10));
        assert!(close(g, -0.40825, 1e-5));
        for m in coprime_triples(10) {
            let (x, y) = closed_form_critical_point(&m);
            let g = gamma_general(&m.step_set(), x, y).unwrap();
            let [a, b, c] = m.lengths().map(|v| v as f64);
            assert!(close(g, -b / ((a + b) * (b + c)).sqrt(), 1e-10), "{m}");
            // Simplified second derivatives as an independent route.
            let p = partials(&m.step_set(), x, y);
            let (sxx, sxy, syy) = tandem_hessian_at_critical(&m, x, y);
            assert!(((p.sxx - sxx) / sxx).abs() < 1e-10);
            assert!(((p.syy - syy) / syy).abs() < 1e-10);
            assert!(((p.sxy - sxy) / sxy).abs() < 1e-10);
            assert!(close(sxy / (sxx * syy).sqrt(), g, 1e-10));
        }
        let s = StepSet::new(vec![(1, 0), (0, 1)]).unwrap();
        assert!(matches!(
            gamma_general(&s, 1.0, 1.0),
            Err(ExponentError::DegenerateHessian { .. })
        ));
    }

    #[test]
    fn alpha_examples() {
        assert!(close(alpha_from_gamma(-0.5).unwrap(), -4.0, 1e-12));
        assert!(close(
            alpha_from_gamma(-1.0 / 6f64.sqrt()).unwrap(),
            -3.7312,
            1e-4
        ));
        assert!(close(
            alpha_from_gamma(-2.0 / 15f64.sqrt()).unwrap(),
            -4.05556,
            1e-5
        ));
        assert!(alpha_from_gamma(1.0).is_err());
        assert!(alpha_from_gamma(-1.5).is_err());
        assert!(alpha_from_gamma(f64::NAN).is_err());
    }

    #[test]
    fn rationality_examples() {
        assert_eq!(
            classify_rationality(&ratio(1, 4)),
            Ok(Rationality::Rational(-4))
        );
        assert_eq!(
            classify_rationality(&ratio(2, 4)),
            Ok(Rationality::Rational(-5))
        );
        assert_eq!(
            classify_rationality(&ratio(3, 4)),
            Ok(Rationality::Rational(-7))
        );
        assert_eq!(
            classify_rationality(&ratio(4, 15)),
            Ok(Rationality::Irrational)
        );
        assert!(classify_rationality(&ratio(0, 1)).is_err());
        assert!(classify_rationality(&ratio(1, 1)).is_err());
        assert!(classify_rationality(&ratio(-1, 3)).is_err());
        // The rational alphas are what the float formula gives as well.
        for (r, k) in [(0.25, -4.0), (0.5, -5.0), (0.75, -7.0)] {
            assert!(close(alpha_from_gamma(-f64::sqrt(r)).unwrap(), k, 1e-12));
        }
    }

    #[test]
    fn report_examples() {
        let r = exponent_report(&t(1, 1, 1)).unwrap();
        assert_eq!(r.alpha, -4.0);
        assert_eq!(r.rationality, Rationality::Rational(-4));
        assert_eq!(r.dfiniteness, DFiniteness::KnownDFinite);

        let r = exponent_report(&t(3, 3, 1)).unwrap();
        assert!(close(
            r.alpha,
            -1.0 - PI / (3.0f64 / 8.0).sqrt().acos(),
            1e-12
        ));
        assert!(close(r.alpha, -4.44572, 5e-6));
        assert_eq!(r.rationality, Rationality::Irrational);
        assert_eq!(r.dfiniteness, DFiniteness::NotDFiniteProven);
        assert_eq!(
            r.alpha_closed_form.as_deref(),
            Some("-1 - pi/arccos(sqrt(3/8))")
        );

        let r = exponent_report(&t(2, 6, 3)).unwrap();
        assert_eq!(r.gamma_sq, Some(ratio(1, 2)));
        assert_eq!(r.rationality, Rationality::Rational(-5));
        assert_eq!(r.alpha, -5.0);
        assert_eq!(r.dfiniteness, DFiniteness::Unknown);
    }

    #[test]
    fn swap_invariance_and_range() {
        for m in coprime_triples(10) {
            let r = exponent_report(&m).unwrap();
            let s = exponent_report(&m.swapped()).unwrap();
            assert_eq!(r.gamma_sq, s.gamma_sq);
            assert!(close(r.gamma, s.gamma, 1e-12) && close(r.alpha, s.alpha, 1e-12));
            assert!(r.gamma > -1.0 && r.gamma < 0.0);
            let angle = (-r.gamma).acos();
            assert!(angle > 0.0 && angle < PI / 2.0);
            assert!(r.alpha < -3.0);
            // Invariant: S_x = S_y = 0 and positive curvature.
            let p = partials(&r.steps, r.x, r.y);
            assert!(p.sx.abs() < 1e-10 && p.sy.abs() < 1e-10 && p.sxx > 0.0 && p.syy > 0.0);
            assert_eq!(
                r.rationality == Rationality::Irrational,
                ![ratio(1, 4), ratio(1, 2), ratio(3, 4)].contains(r.gamma_sq.as_ref().unwrap())
            );
        }
    }

    #[test]
    fn general_report_on_tandem_and_gessel() {
        let tol = Tolerances::default();
        let r = exponent_report_general(&t(3, 2, 1).step_set(), &tol).unwrap();
        let c = exponent_report(&t(3, 2, 1)).unwrap();
        assert!(close(r.alpha, c.alpha, 1e-9));
        assert!(close(r.mu, c.mu, 1e-10));
        assert_eq!(r.rationality, Rationality::Unavailable);
        // Gessel walks: excursions grow like 16^n n^(-7/3) at even lengths.
        let s = StepSet::new(vec![(1, 0), (-1, 0), (1, 1), (-1, -1)]).unwrap();
        let r = exponent_report_general(&s, &tol).unwrap();
        assert!(close(r.mu, 4.0, 1e-12));
        assert!(close(r.gamma, 0.5f64.sqrt(), 1e-12));
        assert!(close(r.alpha, -7.0 / 3.0, 1e-9));
    }
}
