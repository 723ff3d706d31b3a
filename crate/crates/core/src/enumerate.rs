//! Dynamic-programming enumeration of quarter-plane walks.
//!
//! Counts are computed level by level: level `n+1` is pulled from level `n`
//! over a dense rectangle anchored at the origin. The rectangle grows by the
//! largest positive step, is clipped by how far the target can still be
//! reached in the remaining steps, and is then shrunk to the bounding box of
//! the nonzero cells. Cells that are unreachable for parity reasons are
//! stored as zeros.
//!
//! Exact mode stores each cell as a fixed number of `u64` limbs wide enough
//! for `|S|^n_max`. Log-float mode stores `f64` cells and rescales every
//! level by its maximum, carrying the accumulated log of the scale factors.
//! Within one level every cell is summed in the fixed step order, so both
//! modes give bit-identical results for any number of threads.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::limbs;
use crate::math;
use crate::model::{BallotModel, Point, StepSet};

/// Default bound on the estimated number of cells visited by one sweep.
pub const DEFAULT_CELL_LIMIT: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    LogFloat,
}

/// Counts indexed by walk length (or by rounds for ballot walks).
#[derive(Debug, Clone, PartialEq)]
pub enum CountSequence {
    Exact(Vec<BigUint>),
    /// Natural logarithms; `-inf` encodes a zero count.
    LogFloat(Vec<f64>),
}

impl CountSequence {
    pub fn len(&self) -> usize {
        match self {
            Self::Exact(v) => v.len(),
            Self::LogFloat(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn mode(&self) -> Mode {
        match self {
            Self::Exact(_) => Mode::Exact,
            Self::LogFloat(_) => Mode::LogFloat,
        }
    }

    pub fn is_nonzero(&self, n: usize) -> bool {
        match self {
            Self::Exact(v) => !v[n].is_zero(),
            Self::LogFloat(v) => v[n] != f64::NEG_INFINITY,
        }
    }

    /// `ln` of term `n` (`-inf` for zero).
    pub fn ln_term(&self, n: usize) -> f64 {
        match self {
            Self::Exact(v) => math::ln_big(&v[n]),
            Self::LogFloat(v) => v[n],
        }
    }

    pub fn as_exact(&self) -> Option<&[BigUint]> {
        match self {
            Self::Exact(v) => Some(v),
            Self::LogFloat(_) => None,
        }
    }

    pub fn as_log(&self) -> Option<&[f64]> {
        match self {
            Self::Exact(_) => None,
            Self::LogFloat(v) => Some(v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error("estimated {estimated} cells exceed the cell limit {limit}")]
    ResourceBudget { estimated: u128, limit: u64 },
    #[error("target ({0},{1}) lies outside the quarter plane")]
    TargetOutsideQuadrant(i64, i64),
    #[error("no nonzero term at positive length in range; period undefined")]
    UndefinedPeriod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub cell_limit: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self {
            cell_limit: DEFAULT_CELL_LIMIT,
        }
    }
}

/// Which count a sweep reports per level.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Excursions,
    Total,
    Endpoint(Point),
}

/// One level of the dense DP: cells `(x, y)` with `x < width`, `y < height`,
/// stored row-major in `x` with `stride` words per cell.
#[derive(Debug, Clone)]
pub struct QuadrantState<W> {
    level: usize,
    width: usize,
    height: usize,
    stride: usize,
    cells: Vec<W>,
}

impl<W: Copy + Default + Send + Sync> QuadrantState<W> {
    fn origin(stride: usize, one: &[W]) -> Self {
        Self {
            level: 0,
            width: 1,
            height: 1,
            stride,
            cells: one.to_vec(),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `(width, height)` of the stored rectangle.
    pub fn extent(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    fn cell(&self, x: usize, y: usize) -> &[W] {
        let i = (x * self.height + y) * self.stride;
        &self.cells[i..i + self.stride]
    }

    fn get(&self, p: Point) -> Option<&[W]> {
        let (x, y) = p;
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            return None;
        }
        Some(self.cell(x as usize, y as usize))
    }

    fn advance(
        &self,
        steps: &[Point],
        width: usize,
        height: usize,
        add: impl Fn(&mut [W], &[W]) + Sync,
    ) -> Self {
        let stride = self.stride;
        let mut cells = vec![W::default(); width * height * stride];
        let row_len = height * stride;
        let fill_row = |(x, row): (usize, &mut [W])| {
            for y in 0..height {
                let dst = &mut row[y * stride..(y + 1) * stride];
                for &(dx, dy) in steps {
                    if let Some(src) = self.get((x as i64 - dx, y as i64 - dy)) {
                        add(dst, src);
                    }
                }
            }
        };
        if row_len > 0 {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                cells.par_chunks_mut(row_len).enumerate().for_each(fill_row);
            }
            #[cfg(not(feature = "parallel"))]
            cells.chunks_mut(row_len).enumerate().for_each(fill_row);
        }
        Self {
            level: self.level + 1,
            width,
            height,
            stride,
            cells,
        }
    }

    /// Shrinks the rectangle to the bounding box of nonzero cells.
    fn shrink(&mut self, is_zero: impl Fn(&[W]) -> bool) {
        let mut max_x = None;
        let mut max_y = None;
        for x in 0..self.width {
            for y in 0..self.height {
                if !is_zero(self.cell(x, y)) {
                    max_x = Some(x);
                    max_y = Some(max_y.map_or(y, |m: usize| m.max(y)));
                }
            }
        }
        let (w, h) = match (max_x, max_y) {
            (Some(x), Some(y)) => (x + 1, y + 1),
            _ => (0, 0),
        };
        if (w, h) == (self.width, self.height) {
            return;
        }
        let mut cells = Vec::with_capacity(w * h * self.stride);
        for x in 0..w {
            for y in 0..h {
                cells.extend_from_slice(self.cell(x, y));
            }
        }
        self.width = w;
        self.height = h;
        self.cells = cells;
    }
}

/// Rectangle bounds for the level after `prev`, before shrinking.
struct Bounds {
    grow_x: usize,
    grow_y: usize,
    /// Per remaining step, how far x/y can still decrease towards the target.
    back: Option<(Point, usize, usize)>,
    n_max: usize,
}

impl Bounds {
    fn new(steps: &StepSet, n_max: usize, target: Target) -> Self {
        let back = match target {
            Target::Total => None,
            Target::Excursions => Some((0, 0)),
            Target::Endpoint(p) => Some(p),
        }
        .map(|p| {
            (
                p,
                (-steps.min_dx()).max(0) as usize,
                (-steps.min_dy()).max(0) as usize,
            )
        });
        Self {
            grow_x: steps.max_dx().max(0) as usize,
            grow_y: steps.max_dy().max(0) as usize,
            back,
            n_max,
        }
    }

    fn next(&self, level: usize, width: usize, height: usize) -> (usize, usize) {
        if width == 0 || height == 0 {
            return (0, 0);
        }
        let mut w = width + self.grow_x;
        let mut h = height + self.grow_y;
        if let Some(((tx, ty), dec_x, dec_y)) = self.back {
            let remaining = self.n_max - level;
            w = w.min(tx as usize + remaining * dec_x + 1);
            h = h.min(ty as usize + remaining * dec_y + 1);
        }
        (w, h)
    }

    /// Upper bound on the cells one sweep can touch.
    fn estimate(&self) -> u128 {
        let (mut w, mut h) = (1usize, 1usize);
        let mut total: u128 = 1;
        for level in 1..=self.n_max {
            (w, h) = self.next(level, w, h);
            total += w as u128 * h as u128;
        }
        total
    }
}

/// Runs the sweep, calling `report` on every level including level 0.
#[allow(clippy::too_many_arguments)]
fn sweep<W: Copy + Default + Send + Sync>(
    steps: &StepSet,
    n_max: usize,
    target: Target,
    opts: &EnumerateOptions,
    stride: usize,
    one: &[W],
    add: impl Fn(&mut [W], &[W]) + Sync,
    is_zero: impl Fn(&[W]) -> bool,
    mut post: impl FnMut(&mut QuadrantState<W>),
) -> Result<(), EnumerateError> {
    if let Target::Endpoint((x, y)) = target {
        if x < 0 || y < 0 {
            return Err(EnumerateError::TargetOutsideQuadrant(x, y));
        }
    }
    let bounds = Bounds::new(steps, n_max, target);
    let estimated = bounds.estimate();
    if estimated > opts.cell_limit as u128 {
        return Err(EnumerateError::ResourceBudget {
            estimated,
            limit: opts.cell_limit,
        });
    }
    let mut state = QuadrantState::origin(stride, one);
    post(&mut state);
    for level in 1..=n_max {
        let (w, h) = bounds.next(level, state.width, state.height);
        state = state.advance(steps.steps(), w, h, &add);
        state.shrink(&is_zero);
        post(&mut state);
    }
    Ok(())
}

fn read_target<W: Copy + Default + Send + Sync>(
    state: &QuadrantState<W>,
    target: Target,
) -> Option<&[W]> {
    match target {
        Target::Excursions => state.get((0, 0)),
        Target::Endpoint(p) => state.get(p),
        Target::Total => None,
    }
}

fn exact_sweep(
    steps: &StepSet,
    n_max: usize,
    target: Target,
    opts: &EnumerateOptions,
) -> Result<Vec<BigUint>, EnumerateError> {
    let width = limbs::limbs_for(steps.len(), n_max);
    let mut one = vec![0u64; width];
    one[0] = 1;
    let mut out = Vec::with_capacity(n_max + 1);
    sweep(
        steps,
        n_max,
        target,
        opts,
        width,
        &one,
        limbs::add_assign,
        limbs::is_zero,
        |state| {
            let value = match target {
                Target::Total => {
                    let mut acc = vec![0u64; width];
                    for cell in state.cells.chunks(width) {
                        limbs::add_assign(&mut acc, cell);
                    }
                    limbs::to_biguint(&acc)
                }
                _ => read_target(state, target).map_or_else(BigUint::zero, limbs::to_biguint),
            };
            out.push(value);
        },
    )?;
    Ok(out)
}

fn log_sweep(
    steps: &StepSet,
    n_max: usize,
    target: Target,
    opts: &EnumerateOptions,
) -> Result<Vec<f64>, EnumerateError> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut log_scale = 0.0f64;
    sweep(
        steps,
        n_max,
        target,
        opts,
        1,
        &[1.0f64],
        |d: &mut [f64], s: &[f64]| d[0] += s[0],
        |c: &[f64]| c[0] == 0.0,
        |state| {
            let peak = state.cells.iter().copied().fold(0.0f64, f64::max);
            if peak > 0.0 {
                for c in state.cells.iter_mut() {
                    *c /= peak;
                }
                log_scale += math::ln(peak);
            }
            let value = match target {
                Target::Total => state.cells.iter().sum::<f64>(),
                _ => read_target(state, target).map_or(0.0, |c| c[0]),
            };
            out.push(if value > 0.0 {
                math::ln(value) + log_scale
            } else {
                f64::NEG_INFINITY
            });
        },
    )?;
    Ok(out)
}

/// Counts for lengths `0..=n_max` of walks from the origin confined to the
/// quarter plane, reporting the quantity selected by `target`.
pub fn enumerate(
    steps: &StepSet,
    n_max: usize,
    mode: Mode,
    target: Target,
    opts: &EnumerateOptions,
) -> Result<CountSequence, EnumerateError> {
    Ok(match mode {
        Mode::Exact => CountSequence::Exact(exact_sweep(steps, n_max, target, opts)?),
        Mode::LogFloat => CountSequence::LogFloat(log_sweep(steps, n_max, target, opts)?),
    })
}

/// Number of quarter-plane excursions `e_n` for `n <= n_max`.
pub fn count_excursions(
    steps: &StepSet,
    n_max: usize,
    mode: Mode,
) -> Result<CountSequence, EnumerateError> {
    enumerate(
        steps,
        n_max,
        mode,
        Target::Excursions,
        &EnumerateOptions::default(),
    )
}

/// Number of quarter-plane walks `q_n` with any endpoint.
pub fn count_walks_total(
    steps: &StepSet,
    n_max: usize,
    mode: Mode,
) -> Result<CountSequence, EnumerateError> {
    enumerate(
        steps,
        n_max,
        mode,
        Target::Total,
        &EnumerateOptions::default(),
    )
}

/// Number of quarter-plane walks from the origin ending at `target`.
pub fn count_endpoint(
    steps: &StepSet,
    n_max: usize,
    target: Point,
    mode: Mode,
) -> Result<CountSequence, EnumerateError> {
    enumerate(
        steps,
        n_max,
        mode,
        Target::Endpoint(target),
        &EnumerateOptions::default(),
    )
}

/// Ballot walks by rounds: term `n` counts unit-step walks from the origin
/// to `(an, bn, cn)` inside `Ax >= By >= Cz >= 0`. This is a direct 3D DP,
/// independent of the quarter-plane engine.
pub fn count_ballot_3d(
    m: &BallotModel,
    n_rounds_max: usize,
    opts: &EnumerateOptions,
) -> Result<CountSequence, EnumerateError> {
    let [a, b, c] = m.votes();
    let [wa, wb, wc] = m.to_tandem().lengths().map(|v| v as u128);
    let round = m.round_length() as usize;
    let cap = [a, b, c].map(|v| v as u128 * n_rounds_max as u128);
    let in_cone = |p: [u128; 3]| {
        p[0] <= cap[0]
            && p[1] <= cap[1]
            && p[2] <= cap[2]
            && wa * p[0] >= wb * p[1]
            && wb * p[1] >= wc * p[2]
    };

    let mut out = vec![BigUint::one()];
    let mut level: BTreeMap<[u128; 3], BigUint> = BTreeMap::new();
    level.insert([0, 0, 0], BigUint::one());
    let mut visited: u128 = 1;
    for k in 1..=round * n_rounds_max {
        let mut next: BTreeMap<[u128; 3], BigUint> = BTreeMap::new();
        for (p, count) in &level {
            for axis in 0..3 {
                let mut q = *p;
                q[axis] += 1;
                if in_cone(q) {
                    *next.entry(q).or_insert_with(BigUint::zero) += count;
                }
            }
        }
        visited += next.len() as u128;
        if visited > opts.cell_limit as u128 {
            return Err(EnumerateError::ResourceBudget {
                estimated: visited,
                limit: opts.cell_limit,
            });
        }
        level = next;
        if k % round == 0 {
            let n = (k / round) as u128;
            let end = [a as u128 * n, b as u128 * n, c as u128 * n];
            out.push(level.get(&end).cloned().unwrap_or_else(BigUint::zero));
        }
    }
    Ok(CountSequence::Exact(out))
}

/// `gcd` of all positive indices with a nonzero term.
pub fn empirical_period(e: &CountSequence) -> Result<u64, EnumerateError> {
    let g = (1..e.len())
        .filter(|&n| e.is_nonzero(n))
        .fold(0u64, |g, n| g.gcd(&(n as u64)));
    if g == 0 {
        Err(EnumerateError::UndefinedPeriod)
    } else {
        Ok(g)
    }
}

/// A strictly positive start point together with the steps of a quadrant
/// walk leading from it to the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub start: Point,
    pub steps: Vec<Point>,
}

impl Witness {
    /// Replays the walk, checking it stays in the quarter plane and ends at
    /// the origin.
    pub fn is_valid(&self, steps: &StepSet) -> bool {
        let (mut x, mut y) = self.start;
        if x <= 0 || y <= 0 {
            return false;
        }
        for s in &self.steps {
            if !steps.steps().contains(s) {
                return false;
            }
            x += s.0;
            y += s.1;
            if x < 0 || y < 0 {
                return false;
            }
        }
        (x, y) == (0, 0)
    }
}

/// Backward breadth-first search from the origin with reversed steps.
/// Each level is explored in lexicographic point order and the first
/// strictly positive point discovered is returned.
pub fn reachable_from_infinity(steps: &StepSet, depth_bound: usize) -> Option<Witness> {
    // point -> (successor towards the origin, forward step taken)
    let mut parent: BTreeMap<Point, (Point, Point)> = BTreeMap::new();
    let mut seen: BTreeSet<Point> = BTreeSet::new();
    seen.insert((0, 0));
    let mut frontier = vec![(0i64, 0i64)];
    for _ in 0..depth_bound {
        let mut next = BTreeSet::new();
        for &p in &frontier {
            for &s in steps.steps() {
                let q = (p.0 - s.0, p.1 - s.1);
                if q.0 < 0 || q.1 < 0 || seen.contains(&q) {
                    continue;
                }
                parent.entry(q).or_insert((p, s));
                next.insert(q);
            }
        }
        if let Some(&start) = next.iter().find(|q| q.0 > 0 && q.1 > 0) {
            let mut walk = Vec::new();
            let mut at = start;
            while at != (0, 0) {
                let (succ, s) = parent[&at];
                walk.push(s);
                at = succ;
            }
            return Some(Witness { start, steps: walk });
        }
        if next.is_empty() {
            return None;
        }
        seen.extend(next.iter().copied());
        frontier = next.into_iter().collect();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::oracle;
    use crate::model::TandemModel;

    fn tandem(a: u64, b: u64, c: u64) -> StepSet {
        TandemModel::new(a, b, c).unwrap().step_set()
    }

    fn exact(seq: CountSequence) -> Vec<u64> {
        seq.as_exact()
            .unwrap()
            .iter()
            .map(|v| u64::try_from(v).unwrap())
            .collect()
    }

    #[test]
    fn tandem_excursions_match_dfs_oracle() {
        let s = tandem(1, 1, 1);
        let dp = exact(count_excursions(&s, 12, Mode::Exact).unwrap());
        let dfs: Vec<u64> = (0..=12)
            .map(|n| oracle::count_walks_dfs(&s, n, Some((0, 0))))
            .collect();
        assert_eq!(dp, dfs);
        assert_eq!(dp, [1, 0, 0, 1, 0, 0, 5, 0, 0, 42, 0, 0, 462]);
    }

    #[test]
    fn first_excursion_of_321_has_length_11() {
        let s = tandem(3, 2, 1);
        let dp = exact(count_excursions(&s, 11, Mode::Exact).unwrap());
        assert!(dp[1..11].iter().all(|&v| v == 0));
        assert_eq!(dp[11], oracle::count_walks_dfs(&s, 11, Some((0, 0))));
        assert!(dp[11] > 0);
    }

    #[test]
    fn empty_walk_counts_once() {
        for s in [tandem(1, 1, 1), tandem(2, 1, 1), tandem(4, 3, 1)] {
            for target in [Target::Excursions, Target::Total] {
                let e = enumerate(&s, 0, Mode::Exact, target, &Default::default()).unwrap();
                assert_eq!(exact(e), [1]);
            }
        }
    }

    #[test]
    fn totals_small_lengths() {
        let s = tandem(1, 1, 1);
        assert_eq!(
            exact(count_walks_total(&s, 3, Mode::Exact).unwrap()),
            [1, 1, 2, 4]
        );
        let s = tandem(2, 1, 1);
        assert_eq!(
            exact(count_walks_total(&s, 1, Mode::Exact).unwrap()),
            [1, 1]
        );
        for (a, b, c) in [(1, 1, 1), (2, 1, 1), (3, 2, 1), (2, 3, 4)] {
            let s = tandem(a, b, c);
            let dp = exact(count_walks_total(&s, 9, Mode::Exact).unwrap());
            for (n, &v) in dp.iter().enumerate() {
                assert_eq!(v, oracle::count_walks_dfs(&s, n, None));
                assert!(v <= 3u64.pow(n as u32));
            }
        }
    }

    #[test]
    fn endpoint_counts() {
        let s = tandem(1, 1, 1);
        let origin = count_endpoint(&s, 15, (0, 0), Mode::Exact).unwrap();
        assert_eq!(origin, count_excursions(&s, 15, Mode::Exact).unwrap());
        assert_eq!(
            exact(count_endpoint(&s, 1, (1, 0), Mode::Exact).unwrap()),
            [0, 1]
        );
        let s = tandem(3, 2, 1);
        assert_eq!(
            exact(count_endpoint(&s, 1, (3, 0), Mode::Exact).unwrap()),
            [0, 1]
        );
        for target in [(2, 1), (0, 3), (5, 0)] {
            let dp = exact(count_endpoint(&s, 10, target, Mode::Exact).unwrap());
            for (n, &v) in dp.iter().enumerate() {
                assert_eq!(v, oracle::count_walks_dfs(&s, n, Some(target)));
            }
        }
        assert_eq!(
            count_endpoint(&s, 3, (-1, 0), Mode::Exact),
            Err(EnumerateError::TargetOutsideQuadrant(-1, 0))
        );
    }

    #[test]
    fn general_step_set() {
        // Gessel steps, not of tandem shape.
        let s = StepSet::new(vec![(1, 0), (-1, 0), (1, 1), (-1, -1)]).unwrap();
        let dp = exact(count_excursions(&s, 10, Mode::Exact).unwrap());
        assert_eq!(dp, [1, 0, 2, 0, 11, 0, 85, 0, 782, 0, 8004]);
    }

    #[test]
    fn logfloat_matches_exact() {
        let s = tandem(1, 1, 1);
        let ex = count_excursions(&s, 300, Mode::Exact).unwrap();
        let lf = count_excursions(&s, 300, Mode::LogFloat).unwrap();
        for n in 0..=300 {
            let l = ex.ln_term(n);
            let f = lf.ln_term(n);
            if l.is_finite() {
                assert!(
                    (l - f).abs() <= 1e-9 * l.abs().max(1.0),
                    "n={n}: {l} vs {f}"
                );
            } else {
                assert_eq!(f, f64::NEG_INFINITY);
            }
        }
        let ex = count_walks_total(&s, 200, Mode::Exact).unwrap();
        let lf = count_walks_total(&s, 200, Mode::LogFloat).unwrap();
        for n in 0..=200 {
            let l = ex.ln_term(n);
            assert!((l - lf.ln_term(n)).abs() <= 1e-9 * l.abs().max(1.0));
        }
    }

    #[test]
    fn same_counts_for_any_thread_count() {
        let s = tandem(2, 3, 1);
        let run = |threads: usize, mode: Mode, target: Target| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| enumerate(&s, 90, mode, target, &EnumerateOptions::default()).unwrap())
        };
        for mode in [Mode::Exact, Mode::LogFloat] {
            for target in [Target::Excursions, Target::Total, Target::Endpoint((3, 2))] {
                let base = run(1, mode, target);
                for threads in [2, 3, 8] {
                    let other = run(threads, mode, target);
                    match (&base, &other) {
                        (CountSequence::LogFloat(a), CountSequence::LogFloat(b)) => {
                            assert!(a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits()));
                        }
                        _ => assert_eq!(base, other),
                    }
                }
            }
        }
    }

    #[test]
    fn resource_budget() {
        let s = tandem(1, 1, 1);
        let opts = EnumerateOptions { cell_limit: 1000 };
        let err = enumerate(&s, 100, Mode::Exact, Target::Total, &opts).unwrap_err();
        assert!(matches!(
            err,
            EnumerateError::ResourceBudget { limit: 1000, .. }
        ));
        let m = BallotModel::new(1, 1, 1).unwrap();
        assert!(matches!(
            count_ballot_3d(&m, 30, &EnumerateOptions { cell_limit: 100 }),
            Err(EnumerateError::ResourceBudget { .. })
        ));
    }

    #[test]
    fn ballot_3d_counts() {
        let m = BallotModel::new(1, 1, 1).unwrap();
        let got = exact(count_ballot_3d(&m, 4, &Default::default()).unwrap());
        assert_eq!(got, [1, 1, 5, 42, 462]);
        for n in 0..=2 {
            let brute = oracle::ballot_walks(&m, n, 1_000_000).unwrap().len() as u64;
            assert_eq!(got[n as usize], brute);
        }
        let m = BallotModel::new(2, 3, 6).unwrap();
        let got = exact(count_ballot_3d(&m, 1, &Default::default()).unwrap());
        let e = exact(count_excursions(&m.to_tandem().step_set(), 11, Mode::Exact).unwrap());
        assert_eq!(got, [1, e[11]]);
    }

    #[test]
    fn empirical_period_examples() {
        let e = count_excursions(&tandem(1, 1, 1), 12, Mode::Exact).unwrap();
        assert_eq!(empirical_period(&e), Ok(3));
        let e = count_excursions(&tandem(3, 2, 1), 22, Mode::Exact).unwrap();
        assert_eq!(empirical_period(&e), Ok(11));
        let e = count_excursions(&tandem(2, 2, 1), 16, Mode::LogFloat).unwrap();
        assert_eq!(empirical_period(&e), Ok(4));
        let e = count_excursions(&tandem(3, 2, 1), 10, Mode::Exact).unwrap();
        assert_eq!(empirical_period(&e), Err(EnumerateError::UndefinedPeriod));
    }

    #[test]
    fn reachability_witnesses() {
        let s = tandem(1, 1, 1);
        let w = reachable_from_infinity(&s, 3).expect("witness within depth 3");
        assert_eq!(w.start, (1, 1));
        assert_eq!(w.steps, [(-1, 1), (0, -1), (0, -1)]);
        assert!(w.is_valid(&s));
        assert_eq!(reachable_from_infinity(&s, 0), None);
        assert_eq!(reachable_from_infinity(&s, 2), None);

        // The explicit point (B, BC - B) for C >= 2 reaches the origin.
        for (a, b, c) in [(1, 1, 2), (2, 1, 3), (3, 2, 5), (1, 3, 2)] {
            let m = TandemModel::new(a, b, c).unwrap();
            let s = m.step_set();
            let (b, c) = (b as i64, c as i64);
            let start = (b, b * c - b);
            // One diagonal step to (0, BC), then B down steps.
            assert!(oracle::reaches_origin(&s, start, 64), "{m}");
            let w = reachable_from_infinity(&s, 64).unwrap();
            assert!(w.is_valid(&s));
        }

        // A step set that can never come back down.
        let s = StepSet::new(vec![(1, 0), (0, 1)]).unwrap();
        assert_eq!(reachable_from_infinity(&s, 10), None);
    }
}
