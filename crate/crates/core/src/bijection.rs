//! The step-wise bijection between 3-ballot walks and large tandem
//! excursions, and the time-reversal/reflection swapping `A` and `C`.
//!
//! Walks store step letters only; points are recomputed when needed. A
//! ballot walk is written over `{X, Y, Z}` (unit steps along each axis) and
//! a tandem walk over `{R, D, U}` for `(A,0)`, `(-B,B)` and `(0,-C)`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::model::{BallotModel, Point, TandemModel};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BijectionError {
    #[error("step ({0},{1}) is not a step of the model")]
    MalformedStep(i64, i64),
    #[error("unknown step letter `{0}`")]
    UnknownLetter(char),
    #[error("walk leaves the allowed region after {0} steps")]
    LeavesRegion(usize),
    #[error("walk does not return to the origin")]
    NotAnExcursion,
    #[error("brute-force enumeration exceeded the cap of {0} walks")]
    CapExceeded(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BallotStep {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TandemStep {
    R,
    D,
    U,
}

impl BallotStep {
    pub const ALL: [BallotStep; 3] = [BallotStep::X, BallotStep::Y, BallotStep::Z];

    fn axis(self) -> usize {
        self as usize
    }

    fn letter(self) -> char {
        ['X', 'Y', 'Z'][self as usize]
    }
}

impl TandemStep {
    pub const ALL: [TandemStep; 3] = [TandemStep::R, TandemStep::D, TandemStep::U];

    pub fn vector(self, m: &TandemModel) -> Point {
        m.steps()[self as usize]
    }

    fn letter(self) -> char {
        ['R', 'D', 'U'][self as usize]
    }
}

/// A ballot walk from the origin whose prefixes all satisfy
/// `Ax >= By >= Cz >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk3 {
    model: BallotModel,
    steps: Vec<BallotStep>,
}

/// A walk from the origin confined to the quarter plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk2 {
    model: TandemModel,
    steps: Vec<TandemStep>,
}

fn in_cone(w: [u64; 3], p: [i64; 3]) -> bool {
    let [a, b, c] = w.map(|v| v as i128);
    let [x, y, z] = p.map(|v| v as i128);
    a * x >= b * y && b * y >= c * z && c * z >= 0
}

impl Walk3 {
    pub fn new(model: BallotModel, steps: Vec<BallotStep>) -> Result<Self, BijectionError> {
        let weights = model.to_tandem().lengths();
        let mut p = [0i64; 3];
        for (k, s) in steps.iter().enumerate() {
            p[s.axis()] += 1;
            if !in_cone(weights, p) {
                return Err(BijectionError::LeavesRegion(k + 1));
            }
        }
        Ok(Self { model, steps })
    }

    /// Parses a letter string over `{X, Y, Z}`.
    pub fn parse(model: BallotModel, letters: &str) -> Result<Self, BijectionError> {
        let steps = letters
            .trim()
            .chars()
            .map(|ch| match ch {
                'X' => Ok(BallotStep::X),
                'Y' => Ok(BallotStep::Y),
                'Z' => Ok(BallotStep::Z),
                other => Err(BijectionError::UnknownLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(model, steps)
    }

    pub fn model(&self) -> &BallotModel {
        &self.model
    }

    pub fn steps(&self) -> &[BallotStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn points(&self) -> Vec<[i64; 3]> {
        let mut p = [0i64; 3];
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(p);
        for s in &self.steps {
            p[s.axis()] += 1;
            out.push(p);
        }
        out
    }

    pub fn end(&self) -> [i64; 3] {
        *self.points().last().expect("origin is always present")
    }

    /// `Some(n)` when the walk ends at `(an, bn, cn)`.
    pub fn rounds(&self) -> Option<u64> {
        let end = self.end().map(|v| v as u64);
        let votes = self.model.votes();
        let n = end[0] / votes[0];
        (end == votes.map(|v| v * n)).then_some(n)
    }
}

impl Walk2 {
    pub fn new(model: TandemModel, steps: Vec<TandemStep>) -> Result<Self, BijectionError> {
        let (mut x, mut y) = (0i64, 0i64);
        for (k, s) in steps.iter().enumerate() {
            let (dx, dy) = s.vector(&model);
            x += dx;
            y += dy;
            if x < 0 || y < 0 {
                return Err(BijectionError::LeavesRegion(k + 1));
            }
        }
        Ok(Self { model, steps })
    }

    /// Builds a walk from raw step vectors, which must be model steps.
    pub fn from_vectors(model: TandemModel, vectors: &[Point]) -> Result<Self, BijectionError> {
        let table = model.steps();
        let steps = vectors
            .iter()
            .map(|v| {
                TandemStep::ALL
                    .into_iter()
                    .find(|s| table[*s as usize] == *v)
                    .ok_or(BijectionError::MalformedStep(v.0, v.1))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(model, steps)
    }

    /// Parses a letter string over `{R, D, U}`.
    pub fn parse(model: TandemModel, letters: &str) -> Result<Self, BijectionError> {
        let steps = letters
            .trim()
            .chars()
            .map(|ch| match ch {
                'R' => Ok(TandemStep::R),
                'D' => Ok(TandemStep::D),
                'U' => Ok(TandemStep::U),
                other => Err(BijectionError::UnknownLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(model, steps)
    }

    pub fn model(&self) -> &TandemModel {
        &self.model
    }

    pub fn steps(&self) -> &[TandemStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn points(&self) -> Vec<Point> {
        let (mut x, mut y) = (0i64, 0i64);
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push((x, y));
        for s in &self.steps {
            let (dx, dy) = s.vector(&self.model);
            x += dx;
            y += dy;
            out.push((x, y));
        }
        out
    }

    pub fn is_excursion(&self) -> bool {
        self.points().last() == Some(&(0, 0))
    }
}

impl fmt::Display for Walk3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.steps.iter().map(|s| s.letter()).collect();
        f.write_str(&s)
    }
}

impl fmt::Display for Walk2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.steps.iter().map(|s| s.letter()).collect();
        f.write_str(&s)
    }
}

/// `(x,y,z) -> (Ax - By, By - Cz)`.
pub fn phi(point: [i64; 3], m: &BallotModel) -> Point {
    let [a, b, c] = m.to_tandem().lengths().map(|v| v as i64);
    let [x, y, z] = point;
    (a * x - b * y, b * y - c * z)
}

/// Maps `X -> R`, `Y -> D`, `Z -> U` over the dual tandem model.
pub fn map_walk_3to2(w: &Walk3) -> Walk2 {
    let steps = w
        .steps
        .iter()
        .map(|s| match s {
            BallotStep::X => TandemStep::R,
            BallotStep::Y => TandemStep::D,
            BallotStep::Z => TandemStep::U,
        })
        .collect();
    Walk2::new(w.model.to_tandem(), steps).expect("image of a ballot walk stays in the quadrant")
}

/// Inverse of [`map_walk_3to2`].
pub fn map_walk_2to3(w: &Walk2) -> Walk3 {
    let steps = w
        .steps
        .iter()
        .map(|s| match s {
            TandemStep::R => BallotStep::X,
            TandemStep::D => BallotStep::Y,
            TandemStep::U => BallotStep::Z,
        })
        .collect();
    Walk3::new(w.model.to_ballot(), steps).expect("preimage of a quadrant walk stays in the cone")
}

/// Reads an excursion of `(A,B,C)` backwards and reflects it in `y = x`,
/// giving an excursion of `(C,B,A)` of the same length. `R` and `U` trade
/// places and `D` is kept.
pub fn reverse_reflect(w: &Walk2) -> Result<Walk2, BijectionError> {
    if !w.is_excursion() {
        return Err(BijectionError::NotAnExcursion);
    }
    let steps = w
        .steps
        .iter()
        .rev()
        .map(|s| match s {
            TandemStep::R => TandemStep::U,
            TandemStep::D => TandemStep::D,
            TandemStep::U => TandemStep::R,
        })
        .collect();
    Ok(Walk2::new(w.model.swapped(), steps).expect("reflected excursion stays in the quadrant"))
}

/// Brute-force depth-first walk generators, used as independent oracles
/// for the dynamic programs and the bijections.
pub mod oracle {
    use super::*;
    use crate::model::StepSet;

    /// Hard cap on generated walks for the enumerating oracles.
    pub const MAX_WALKS: usize = 10_000_000;

    /// Counts quarter-plane walks of exactly `len` steps from the origin,
    /// ending at `end` when given. Plain DFS with no pruning beyond the
    /// quadrant constraint.
    pub fn count_walks_dfs(steps: &StepSet, len: usize, end: Option<Point>) -> u64 {
        fn go(steps: &[Point], p: Point, left: usize, end: Option<Point>) -> u64 {
            if left == 0 {
                return match end {
                    Some(e) => (p == e) as u64,
                    None => 1,
                };
            }
            steps
                .iter()
                .map(|&(dx, dy)| (p.0 + dx, p.1 + dy))
                .filter(|q| q.0 >= 0 && q.1 >= 0)
                .map(|q| go(steps, q, left - 1, end))
                .sum()
        }
        go(steps.steps(), (0, 0), len, end)
    }

    /// All ballot walks from the origin to `(an, bn, cn)` for `n = rounds`.
    pub fn ballot_walks(
        m: &BallotModel,
        rounds: u64,
        cap: usize,
    ) -> Result<Vec<Walk3>, BijectionError> {
        let weights = m.to_tandem().lengths();
        let target = m.votes().map(|v| (v * rounds) as i64);
        let mut out = Vec::new();
        let mut path = Vec::new();
        fn go(
            weights: [u64; 3],
            target: [i64; 3],
            p: [i64; 3],
            path: &mut Vec<BallotStep>,
            out: &mut Vec<Vec<BallotStep>>,
            cap: usize,
        ) -> Result<(), BijectionError> {
            if p == target {
                if out.len() >= cap {
                    return Err(BijectionError::CapExceeded(cap));
                }
                out.push(path.clone());
                return Ok(());
            }
            for s in BallotStep::ALL {
                let mut q = p;
                q[s.axis()] += 1;
                if q[s.axis()] <= target[s.axis()] && in_cone(weights, q) {
                    path.push(s);
                    go(weights, target, q, path, out, cap)?;
                    path.pop();
                }
            }
            Ok(())
        }
        go(
            weights,
            target,
            [0; 3],
            &mut path,
            &mut out,
            cap.min(MAX_WALKS),
        )?;
        Ok(out
            .into_iter()
            .map(|steps| Walk3 { model: *m, steps })
            .collect())
    }

    /// All excursions of exactly `len` steps for the tandem model `m`.
    pub fn tandem_excursions(
        m: &TandemModel,
        len: usize,
        cap: usize,
    ) -> Result<Vec<Walk2>, BijectionError> {
        let vectors = m.steps();
        let (b, c) = (m.b() as i64, m.c() as i64);
        let mut out = Vec::new();
        let mut path = Vec::new();
        #[allow(clippy::too_many_arguments)]
        fn go(
            vectors: &[Point; 3],
            b: i64,
            c: i64,
            p: Point,
            left: usize,
            path: &mut Vec<TandemStep>,
            out: &mut Vec<Vec<TandemStep>>,
            cap: usize,
        ) -> Result<(), BijectionError> {
            if left == 0 {
                if p == (0, 0) {
                    if out.len() >= cap {
                        return Err(BijectionError::CapExceeded(cap));
                    }
                    out.push(path.clone());
                }
                return Ok(());
            }
            // Returning needs at least x/B diagonal and (x+y)/C down steps.
            let r = left as i64;
            if p.0 > r * b || p.0 + p.1 > r * c {
                return Ok(());
            }
            for s in TandemStep::ALL {
                let (dx, dy) = vectors[s as usize];
                let q = (p.0 + dx, p.1 + dy);
                if q.0 >= 0 && q.1 >= 0 {
                    path.push(s);
                    go(vectors, b, c, q, left - 1, path, out, cap)?;
                    path.pop();
                }
            }
            Ok(())
        }
        go(
            &vectors,
            b,
            c,
            (0, 0),
            len,
            &mut path,
            &mut out,
            cap.min(MAX_WALKS),
        )?;
        Ok(out
            .into_iter()
            .map(|steps| Walk2 { model: *m, steps })
            .collect())
    }

    /// Whether a quadrant walk of at most `depth` steps leads from `start`
    /// to the origin (forward breadth-first search).
    pub fn reaches_origin(steps: &StepSet, start: Point, depth: usize) -> bool {
        let mut frontier = alloc::collections::BTreeSet::new();
        frontier.insert(start);
        let mut seen = frontier.clone();
        for _ in 0..=depth {
            if frontier.contains(&(0, 0)) {
                return true;
            }
            let mut next = alloc::collections::BTreeSet::new();
            for p in &frontier {
                for &(dx, dy) in steps.steps() {
                    let q = (p.0 + dx, p.1 + dy);
                    if q.0 >= 0 && q.1 >= 0 && seen.insert(q) {
                        next.insert(q);
                    }
                }
            }
            frontier = next;
        }
        false
    }
}
