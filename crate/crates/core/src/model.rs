//! Model parameterizations, step sets and the excursion period.
//!
//! A model is given either by its tandem step lengths `(A,B,C)` (steps
//! `(A,0)`, `(-B,B)`, `(0,-C)` in the quarter plane) or by its ballot votes
//! `(a,b,c)` (unit steps in the cone `Ax >= By >= Cz >= 0`). With
//! `M = lcm`, the two are related by `aA = bB = cC = M`. The tandem form is
//! canonical; the ballot form is derived on demand.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// A lattice point or step in `Z^2`.
pub type Point = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("model parameters {0:?} must all be positive")]
    NonPositive([u64; 3]),
    #[error("model parameters {params:?} have gcd {gcd}; they must be coprime")]
    NotCoprime { params: [u64; 3], gcd: u64 },
    #[error("parameters derived from {0:?} do not fit in 64 bits")]
    Overflow([u64; 3]),
    #[error("malformed model `{input}`: {reason}")]
    Parse { input: String, reason: &'static str },
    #[error("step set must not be empty")]
    EmptyStepSet,
    #[error("step ({0},{1}) is listed twice")]
    DuplicateStep(i64, i64),
}

fn gcd3(v: [u64; 3]) -> u64 {
    v[0].gcd(&v[1]).gcd(&v[2])
}

fn validate(v: [u64; 3]) -> Result<(), ModelError> {
    if v.contains(&0) {
        return Err(ModelError::NonPositive(v));
    }
    let gcd = gcd3(v);
    if gcd != 1 {
        return Err(ModelError::NotCoprime { params: v, gcd });
    }
    Ok(())
}

/// Returns `(lcm(v)/v[0], lcm(v)/v[1], lcm(v)/v[2])`, computed without overflow.
fn dual(v: [u64; 3]) -> Result<[u64; 3], ModelError> {
    let big: [BigUint; 3] = v.map(BigUint::from);
    let lcm = big[0].lcm(&big[1]).lcm(&big[2]);
    let mut out = [0u64; 3];
    for (slot, x) in out.iter_mut().zip(big.iter()) {
        *slot = (&lcm / x).to_u64().ok_or(ModelError::Overflow(v))?;
    }
    Ok(out)
}

/// Step lengths `(A,B,C)` of a large tandem walk model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TandemModel {
    lengths: [u64; 3],
}

/// Votes per round `(a,b,c)` of a generalized 3-ballot model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BallotModel {
    votes: [u64; 3],
}

impl TandemModel {
    /// Rejects non-positive entries and triples with a common factor.
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self, ModelError> {
        let lengths = [a, b, c];
        validate(lengths)?;
        // The ballot side must be representable too.
        dual(lengths)?;
        Ok(Self { lengths })
    }

    pub fn a(&self) -> u64 {
        self.lengths[0]
    }

    pub fn b(&self) -> u64 {
        self.lengths[1]
    }

    pub fn c(&self) -> u64 {
        self.lengths[2]
    }

    pub fn lengths(&self) -> [u64; 3] {
        self.lengths
    }

    /// `M = lcm(A,B,C)`; always equal to `a * A` for the ballot dual.
    pub fn lcm(&self) -> u128 {
        self.to_ballot().a() as u128 * self.a() as u128
    }

    /// The model `(C,B,A)`, whose excursions are equinumerous with ours.
    pub fn swapped(&self) -> Self {
        let [a, b, c] = self.lengths;
        Self { lengths: [c, b, a] }
    }

    pub fn to_ballot(&self) -> BallotModel {
        tandem_to_ballot(self)
    }

    pub fn step_set(&self) -> StepSet {
        tandem_step_set(self)
    }

    pub fn period(&self) -> u64 {
        period(self)
    }

    /// The three steps `(A,0)`, `(-B,B)`, `(0,-C)` in that order.
    pub fn steps(&self) -> [Point; 3] {
        let [a, b, c] = self.lengths.map(|v| v as i64);
        [(a, 0), (-b, b), (0, -c)]
    }
}

impl BallotModel {
    pub fn new(a: u64, b: u64, c: u64) -> Result<Self, ModelError> {
        let votes = [a, b, c];
        validate(votes)?;
        dual(votes)?;
        Ok(Self { votes })
    }

    pub fn a(&self) -> u64 {
        self.votes[0]
    }

    pub fn b(&self) -> u64 {
        self.votes[1]
    }

    pub fn c(&self) -> u64 {
        self.votes[2]
    }

    pub fn votes(&self) -> [u64; 3] {
        self.votes
    }

    pub fn to_tandem(&self) -> TandemModel {
        ballot_to_tandem(self)
    }

    /// Number of unit steps in one round, `a + b + c`.
    pub fn round_length(&self) -> u64 {
        self.votes.iter().sum()
    }
}

/// `(a,b,c) -> (M/a, M/b, M/c)` with `M = lcm(a,b,c)`.
pub fn ballot_to_tandem(m: &BallotModel) -> TandemModel {
    let lengths = dual(m.votes).expect("validated at construction");
    assert_eq!(gcd3(lengths), 1, "dual of a coprime triple is coprime");
    TandemModel { lengths }
}

/// Inverse of [`ballot_to_tandem`].
pub fn tandem_to_ballot(m: &TandemModel) -> BallotModel {
    let votes = dual(m.lengths).expect("validated at construction");
    assert_eq!(gcd3(votes), 1, "dual of a coprime triple is coprime");
    BallotModel { votes }
}

pub fn tandem_step_set(m: &TandemModel) -> StepSet {
    StepSet {
        steps: m.steps().to_vec(),
    }
}

/// Excursion period `a + b + c`.
pub fn period(m: &TandemModel) -> u64 {
    m.to_ballot().round_length()
}

fn parse_triple(input: &str, body: &str) -> Result<[u64; 3], ModelError> {
    let parse_err = |reason| ModelError::Parse {
        input: input.to_string(),
        reason,
    };
    let parts: Vec<&str> = body.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(parse_err("expected three comma-separated integers"));
    }
    let mut out = [0u64; 3];
    for (slot, p) in out.iter_mut().zip(parts) {
        *slot = p
            .parse()
            .map_err(|_| parse_err("entries must be positive integers"))?;
    }
    Ok(out)
}

/// `A,B,C`, or `ballot:a,b,c` which is converted to its tandem form.
impl FromStr for TandemModel {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.starts_with("ballot:") {
            return Ok(s.parse::<BallotModel>()?.to_tandem());
        }
        let [a, b, c] = parse_triple(s, s)?;
        TandemModel::new(a, b, c)
    }
}

/// `ballot:a,b,c` or a bare `a,b,c`.
impl FromStr for BallotModel {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let body = s.strip_prefix("ballot:").unwrap_or(s);
        let [a, b, c] = parse_triple(s, body)?;
        BallotModel::new(a, b, c)
    }
}

impl fmt::Display for TandemModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.lengths;
        write!(f, "{a},{b},{c}")
    }
}

impl fmt::Display for BallotModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.votes;
        write!(f, "ballot:{a},{b},{c}")
    }
}

/// A finite set of distinct unweighted steps in `Z^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepSet {
    steps: Vec<Point>,
}

impl StepSet {
    pub fn new(steps: Vec<Point>) -> Result<Self, ModelError> {
        if steps.is_empty() {
            return Err(ModelError::EmptyStepSet);
        }
        for (i, s) in steps.iter().enumerate() {
            if steps[..i].contains(s) {
                return Err(ModelError::DuplicateStep(s.0, s.1));
            }
        }
        Ok(Self { steps })
    }

    pub fn steps(&self) -> &[Point] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The step polynomial `S(x,y) = sum x^i y^j`.
    pub fn evaluate(&self, x: f64, y: f64) -> f64 {
        self.steps
            .iter()
            .map(|&(i, j)| crate::math::powi(x, i) * crate::math::powi(y, j))
            .sum()
    }

    /// True when no closed half-plane through the origin contains every
    /// step, i.e. the origin is interior to the convex hull of the steps.
    pub fn not_in_half_plane(&self) -> bool {
        let mut dirs: Vec<Point> = self
            .steps
            .iter()
            .copied()
            .filter(|&s| s != (0, 0))
            .collect();
        if dirs.len() < 3 {
            // Two directions always fit in a closed half-plane.
            return false;
        }
        dirs.sort_by(|&p, &q| angle_cmp(p, q));
        // Every cyclic gap between consecutive directions must be < pi.
        (0..dirs.len()).all(|k| {
            let p = dirs[k];
            let q = dirs[(k + 1) % dirs.len()];
            let cr = cross(p, q);
            cr > 0 || (cr == 0 && dot(p, q) > 0 && k + 1 < dirs.len())
        })
    }

    /// True when some step lies in the closed first quadrant.
    pub fn has_nonnegative_step(&self) -> bool {
        self.steps.iter().any(|&(i, j)| i >= 0 && j >= 0)
    }

    pub fn max_dx(&self) -> i64 {
        self.steps.iter().map(|s| s.0).max().unwrap_or(0)
    }

    pub fn max_dy(&self) -> i64 {
        self.steps.iter().map(|s| s.1).max().unwrap_or(0)
    }

    pub fn min_dx(&self) -> i64 {
        self.steps.iter().map(|s| s.0).min().unwrap_or(0)
    }

    pub fn min_dy(&self) -> i64 {
        self.steps.iter().map(|s| s.1).min().unwrap_or(0)
    }
}

fn cross(p: Point, q: Point) -> i128 {
    p.0 as i128 * q.1 as i128 - p.1 as i128 * q.0 as i128
}

fn dot(p: Point, q: Point) -> i128 {
    p.0 as i128 * q.0 as i128 + p.1 as i128 * q.1 as i128
}

/// Orders nonzero vectors by polar angle in `[0, 2pi)`.
fn angle_cmp(p: Point, q: Point) -> core::cmp::Ordering {
    let upper = |v: Point| v.1 > 0 || (v.1 == 0 && v.0 > 0);
    match (upper(p), upper(q)) {
        (true, false) => core::cmp::Ordering::Less,
        (false, true) => core::cmp::Ordering::Greater,
        _ => 0.cmp(&cross(p, q)),
    }
}
