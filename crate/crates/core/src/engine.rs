//! Exact branch and bound over boxes of corridor offsets.
//!
//! The search state is a box E of 2k rational intervals, one (along, across)
//! offset pair per corridor. For a box the engine evaluates the scene: the
//! horizontal strip H intersected with every corridor's offset union and,
//! when the final slope range stops short of vertical, the terminal
//! butterfly. Three exact quantities drive the search:
//!
//! * g(u)    - largest connected component area at a single offset tuple u, a
//!             certified lower bound on the optimum when maximized;
//! * Gamma(E) - largest component area of the box's union scene;
//! * Pi(E)   - the queue priority: total area (default) or Gamma itself.
//!
//! Pi(E) >= Gamma(E) >= g(u) for every u in E, so the best-first loop of
//! Listing-style branch and bound yields certified two-sided bounds.

use crate::kernel::{ceil_scaled, rat, Point, PythagoreanAngle, Rational};
use crate::region::{clip_polygon_all, polygon_area, polygon_bbox, ConvexCell, Dsu, Rect};
use crate::scene::{butterfly_cells, hat_cells, tightened_cells, Interval, SplitCoord};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::time::{Duration, Instant};

/// A validated problem instance: strictly increasing acute corridor slopes
/// and a final slope range (min_final, max_final] above the last corridor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    slopes: Vec<PythagoreanAngle>,
    min_final: PythagoreanAngle,
    max_final: PythagoreanAngle,
}

/// Validation failures for [`ProblemSpec::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecError {
    NoCorridors,
    SlopeNotStrictlyAcute { index: usize },
    SlopesNotIncreasing { index: usize },
    FinalSlopeNotAboveLastCorridor,
    FinalSlopesOutOfOrder,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::NoCorridors => write!(f, "at least one corridor slope is required"),
            SpecError::SlopeNotStrictlyAcute { index } => {
                write!(f, "slope {} must be strictly between 0 and 90 degrees", index + 1)
            }
            SpecError::SlopesNotIncreasing { index } => {
                write!(f, "slope {} does not increase over its predecessor", index + 1)
            }
            SpecError::FinalSlopeNotAboveLastCorridor => {
                write!(f, "min_final_slope must exceed the last corridor slope")
            }
            SpecError::FinalSlopesOutOfOrder => {
                write!(f, "min_final_slope must not exceed max_final_slope")
            }
        }
    }
}

impl std::error::Error for SpecError {}

impl ProblemSpec {
    pub fn new(
        slopes: Vec<PythagoreanAngle>,
        min_final: PythagoreanAngle,
        max_final: PythagoreanAngle,
    ) -> Result<Self, SpecError> {
        if slopes.is_empty() {
            return Err(SpecError::NoCorridors);
        }
        for (i, s) in slopes.iter().enumerate() {
            if s.is_zero() || s.is_right() {
                return Err(SpecError::SlopeNotStrictlyAcute { index: i });
            }
            if i > 0 && slopes[i - 1] >= *s {
                return Err(SpecError::SlopesNotIncreasing { index: i });
            }
        }
        if min_final <= *slopes.last().unwrap() {
            return Err(SpecError::FinalSlopeNotAboveLastCorridor);
        }
        if min_final > max_final {
            return Err(SpecError::FinalSlopesOutOfOrder);
        }
        Ok(ProblemSpec { slopes, min_final, max_final })
    }

    pub fn slopes(&self) -> &[PythagoreanAngle] {
        &self.slopes
    }

    pub fn min_final(&self) -> &PythagoreanAngle {
        &self.min_final
    }

    pub fn max_final(&self) -> &PythagoreanAngle {
        &self.max_final
    }

    /// Number of corridors k.
    pub fn k(&self) -> usize {
        self.slopes.len()
    }
}

/// A search box: 2k intervals, the j-th corridor owning intervals 2j and
/// 2j+1 (0-based) for its along-leg and across-leg offsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoxE {
    intervals: Vec<Interval>,
}

impl BoxE {
    pub fn new(intervals: Vec<Interval>) -> Self {
        assert!(!intervals.is_empty() && intervals.len() % 2 == 0, "need 2k intervals");
        BoxE { intervals }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn corridor(&self, j: usize) -> (&Interval, &Interval) {
        (&self.intervals[2 * j], &self.intervals[2 * j + 1])
    }

    /// Exact midpoint offset tuple, one point per corridor.
    pub fn midpoints(&self) -> Vec<Point> {
        self.intervals
            .chunks(2)
            .map(|c| Point::new(c[0].midpoint(), c[1].midpoint()))
            .collect()
    }

    /// Product of the non-degenerate interval lengths (zero if every
    /// interval is a point). Used for coverage accounting in tests.
    pub fn volume(&self) -> Rational {
        let mut any = false;
        let mut v = Rational::one();
        for iv in &self.intervals {
            if !iv.is_degenerate() {
                any = true;
                v *= iv.length();
            }
        }
        if any {
            v
        } else {
            Rational::zero()
        }
    }
}

/// Priority assigned to queued boxes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PriorityMode {
    /// Total scene area: cheaper and the default.
    TotalArea,
    /// Largest connected component of the scene: tighter, slower.
    LargestComponent,
}

/// How the branching coordinate is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitRule {
    /// Maximize the area of the scene not shared by all offsets along the
    /// candidate coordinate (the difference-set score).
    DArea,
    /// Maximize interval length.
    LongestDim,
}

/// Stop criteria and reporting knobs. At least one stop criterion must be
/// set; the engine refuses configurations that could run forever.
#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub priority_mode: PriorityMode,
    pub split_rule: SplitRule,
    /// Stop once the certified upper bound is at or below this value.
    pub target_upper: Option<Rational>,
    pub max_iterations: Option<u64>,
    pub max_time: Option<Duration>,
    /// Stop once upper - lower is at or below this value.
    pub gap: Option<Rational>,
    /// Emit a report when the printed upper bound (ceiling at three
    /// decimals) has dropped by at least this much since the last report.
    pub report_granularity: Rational,
    /// Clamp reported upper bounds by the one-corridor closed form
    /// min_j(sec a_j + csc a_j), which bounds the optimum for any spec.
    /// Queue priorities are never clamped.
    pub closed_form_cap: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            priority_mode: PriorityMode::TotalArea,
            split_rule: SplitRule::DArea,
            target_upper: None,
            max_iterations: None,
            max_time: None,
            gap: None,
            report_granularity: rat(1, 100),
            closed_form_cap: true,
        }
    }
}

/// Why a run stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StopReason {
    TargetReached,
    GapReached,
    IterationLimit,
    TimeLimit,
    QueueExhausted,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StopReason::TargetReached => "target_upper",
            StopReason::GapReached => "gap",
            StopReason::IterationLimit => "max_iterations",
            StopReason::TimeLimit => "max_time",
            StopReason::QueueExhausted => "queue_exhausted",
        };
        write!(f, "{s}")
    }
}

/// One progress record: exact bounds valid at the end of `iteration`.
#[derive(Clone, Debug)]
pub struct Report {
    pub iteration: u64,
    pub upper: Rational,
    pub lower: Rational,
    pub elapsed: Duration,
}

/// The certified outcome of a run: lower <= optimum <= upper.
#[derive(Clone, Debug)]
pub struct BoundCertificate {
    pub spec: ProblemSpec,
    pub upper: Rational,
    pub lower: Rational,
    pub iterations: u64,
    pub config: EngineConfig,
    /// True when the queue ran dry, which pins upper = lower.
    pub exhausted: bool,
    pub stop: StopReason,
}

/// Queue element: boxes ordered by priority, ties first-in first-out.
#[derive(Clone, Debug)]
pub struct QueueEntry {
    pub boxe: BoxE,
    pub priority: Rational,
    pub sequence: u64,
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.priority == other.priority && self.sequence == other.sequence
    }
}

impl Eq for QueueEntry {}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.priority
            .cmp(&other.priority)
            .then_with(|| other.sequence.cmp(&self.sequence))
    }
}

/// Engine errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EngineError {
    NoStopCriterion,
    NonPositiveGranularity,
    SplitIndexOutOfRange { index: usize, dims: usize },
    DegenerateSplit { index: usize },
    FullyDegenerateBox,
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::NoStopCriterion => {
                write!(f, "no stop criterion set (target_upper, max_iterations, max_time, or gap)")
            }
            EngineError::NonPositiveGranularity => {
                write!(f, "report_granularity must be positive")
            }
            EngineError::SplitIndexOutOfRange { index, dims } => {
                write!(f, "split index {index} out of range 1..={dims}")
            }
            EngineError::DegenerateSplit { index } => {
                write!(f, "cannot split degenerate interval {index}")
            }
            EngineError::FullyDegenerateBox => {
                write!(f, "box has no splittable interval")
            }
        }
    }
}

impl std::error::Error for EngineError {}

/// Observer events for instrumented runs (coverage accounting in tests).
#[derive(Clone, Debug)]
pub enum EngineEvent {
    Popped(BoxE),
    Pushed(BoxE),
    Discarded(BoxE),
}

fn one() -> Rational {
    Rational::one()
}

/// Lemma-style observation intervals: offsets outside them cannot move the
/// corridor into the window [x1, x2] x [0, 1].
fn observation_intervals(angle: &PythagoreanAngle, x1: &Rational, x2: &Rational) -> (Interval, Interval) {
    let t = angle.trig_ratios();
    let i = Interval::new(x1 * &t.cos - one(), x2 * &t.cos + &t.sin);
    let j = Interval::new(-(x2 * &t.sin) - one(), -(x1 * &t.sin) + &t.cos);
    (i, j)
}

/// The initial search box guaranteed to contain a maximizing offset tuple.
///
/// With max_final = 90 deg the problem is translation invariant, so corridor
/// 1 is pinned to along-offset 0 with a derived across range; the remaining
/// corridors get observation intervals for the window every scene then
/// occupies. For max_final < 90 deg the butterfly itself bounds the window
/// and all corridors use observation intervals.
pub fn initial_box(spec: &ProblemSpec) -> BoxE {
    let mut intervals = Vec::with_capacity(2 * spec.k());
    if spec.max_final().is_right() {
        let t1 = spec.slopes()[0].trig_ratios();
        let sec1 = t1.sec.clone().unwrap();
        let tan1 = t1.tan.clone().unwrap();
        intervals.push(Interval::point(Rational::zero()));
        intervals.push(Interval::new(-tan1 - one(), sec1.clone()));
        let x1 = -(&sec1 + one()) / &t1.sin;
        let x2 = sec1;
        for angle in &spec.slopes()[1..] {
            let (i, j) = observation_intervals(angle, &x1, &x2);
            intervals.push(i);
            intervals.push(j);
        }
    } else {
        let tb = spec.max_final().trig_ratios();
        let x1 = -tb.tan.unwrap();
        let x2 = tb.sec.unwrap();
        for angle in spec.slopes() {
            let (i, j) = observation_intervals(angle, &x1, &x2);
            intervals.push(i);
            intervals.push(j);
        }
    }
    BoxE::new(intervals)
}

/// Rectangle certain to contain the scene of any box (or offset tuple)
/// whose first corridor stays inside (i1, j1).
fn scene_frame(spec: &ProblemSpec, i1: &Interval, j1: &Interval) -> Rect {
    let zero = Rational::zero();
    if spec.max_final().is_right() {
        let t = spec.slopes()[0].trig_ratios();
        let from_leg1 = (i1.lo() - &t.sin) / &t.cos;
        let from_leg2 = -((j1.hi() + one()) / &t.sin);
        let x_lo = from_leg1.min(from_leg2);
        let x_hi = (i1.hi() + one()) / &t.cos;
        Rect::new(x_lo, x_hi, zero, one())
    } else {
        let t = spec.max_final().trig_ratios();
        Rect::new(-t.tan.unwrap(), t.sec.unwrap(), zero, one())
    }
}

/// One product cell of an evaluated scene: its accumulated constraints
/// (excluding the frame) and exact clipped polygon.
struct EvalCell {
    constraints: Vec<crate::region::HalfPlane>,
    poly: Vec<Point>,
    bbox: Rect,
    area: Rational,
}

/// A fully evaluated scene: interior-disjoint cells and their total area.
pub(crate) struct SceneEval {
    cells: Vec<EvalCell>,
    total: Rational,
}

impl SceneEval {
    /// Largest connected component area and component count. Cells touching
    /// in even a single point are connected (closed-set components).
    pub(crate) fn largest_component(&self) -> (Rational, usize) {
        if self.cells.is_empty() {
            return (Rational::zero(), 0);
        }
        let n = self.cells.len();
        let mut dsu = Dsu::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if dsu.find(i) == dsu.find(j) {
                    continue;
                }
                let (a, b) = (&self.cells[i], &self.cells[j]);
                if rects_touch(&a.bbox, &b.bbox)
                    && !clip_polygon_all(&a.poly, &b.constraints).is_empty()
                {
                    dsu.union(i, j);
                }
            }
        }
        let mut sums: Vec<Rational> = vec![Rational::zero(); n];
        let mut used = vec![false; n];
        for i in 0..n {
            let r = dsu.find(i);
            sums[r] += &self.cells[i].area;
            used[r] = true;
        }
        let count = used.iter().filter(|&&u| u).count();
        (sums.into_iter().max().unwrap(), count)
    }
}

fn rects_touch(a: &Rect, b: &Rect) -> bool {
    !(a.x_hi < b.x_lo || b.x_hi < a.x_lo || a.y_hi < b.y_lo || b.y_hi < a.y_lo)
}

/// Enumerate the product of factor cells inside the frame, depth-first with
/// early pruning of empty intersections.
fn eval_cells(factors: &[Vec<ConvexCell>], frame: &Rect) -> SceneEval {
    let corners = frame.corners();
    let mut out = SceneEval { cells: Vec::new(), total: Rational::zero() };
    if corners.is_empty() {
        return out;
    }
    let mut acc: Vec<crate::region::HalfPlane> = Vec::new();
    dfs_product(factors, 0, &corners, &mut acc, &mut out);
    out
}

fn dfs_product(
    factors: &[Vec<ConvexCell>],
    depth: usize,
    poly: &[Point],
    acc: &mut Vec<crate::region::HalfPlane>,
    out: &mut SceneEval,
) {
    if depth == factors.len() {
        let area = polygon_area(poly);
        out.total += &area;
        out.cells.push(EvalCell {
            constraints: acc.clone(),
            bbox: polygon_bbox(poly),
            poly: poly.to_vec(),
            area,
        });
        return;
    }
    for cell in &factors[depth] {
        let clipped = clip_polygon_all(poly, &cell.constraints);
        if clipped.is_empty() {
            continue;
        }
        let mark = acc.len();
        acc.extend(cell.constraints.iter().cloned());
        dfs_product(factors, depth + 1, &clipped, acc, out);
        acc.truncate(mark);
    }
}

/// Factor cell lists for a box scene: one corridor union per corridor, plus
/// the butterfly when the final range stops short of vertical (at 90 deg
/// the butterfly covers the whole strip and is omitted).
fn box_factors(spec: &ProblemSpec, e: &BoxE) -> Vec<Vec<ConvexCell>> {
    let mut factors: Vec<Vec<ConvexCell>> = spec
        .slopes()
        .iter()
        .enumerate()
        .map(|(j, angle)| {
            let (i, jj) = e.corridor(j);
            hat_cells(angle, i, jj).to_vec()
        })
        .collect();
    if !spec.max_final().is_right() {
        factors.push(butterfly_cells(spec.min_final(), spec.max_final()));
    }
    factors
}

pub(crate) fn eval_box_scene(spec: &ProblemSpec, e: &BoxE) -> SceneEval {
    assert_eq!(e.intervals().len(), 2 * spec.k(), "box dimension mismatch");
    let (i1, j1) = e.corridor(0);
    let frame = scene_frame(spec, i1, j1);
    eval_cells(&box_factors(spec, e), &frame)
}

/// Largest component area of the scene at one offset tuple (one point per
/// corridor). This is the certified lower-bound functional.
pub fn g_eval(spec: &ProblemSpec, u: &[Point]) -> Rational {
    assert_eq!(u.len(), spec.k(), "need one offset point per corridor");
    let mut factors: Vec<Vec<ConvexCell>> = u
        .iter()
        .zip(spec.slopes())
        .map(|(p, angle)| {
            hat_cells(angle, &Interval::point(p.x.clone()), &Interval::point(p.y.clone())).to_vec()
        })
        .collect();
    if !spec.max_final().is_right() {
        factors.push(butterfly_cells(spec.min_final(), spec.max_final()));
    }
    let i1 = Interval::point(u[0].x.clone());
    let j1 = Interval::point(u[0].y.clone());
    let frame = scene_frame(spec, &i1, &j1);
    eval_cells(&factors, &frame).largest_component().0
}

/// Largest component area of the box's union scene: an upper bound on g
/// over every offset tuple in the box.
pub fn gamma_eval(spec: &ProblemSpec, e: &BoxE) -> Rational {
    eval_box_scene(spec, e).largest_component().0
}

/// Queue priority of a box under the given mode. Always >= gamma_eval.
pub fn pi_eval(spec: &ProblemSpec, e: &BoxE, mode: PriorityMode) -> Rational {
    let scene = eval_box_scene(spec, e);
    match mode {
        PriorityMode::TotalArea => scene.total,
        PriorityMode::LargestComponent => scene.largest_component().0,
    }
}

/// Pick the 1-based coordinate to split. Degenerate coordinates are never
/// eligible; a fully degenerate box is an error. Ties break to the lowest
/// index under both rules.
pub fn splitting_index(spec: &ProblemSpec, e: &BoxE, rule: SplitRule) -> Result<usize, EngineError> {
    let dims = e.intervals();
    let candidates: Vec<usize> = (0..dims.len()).filter(|&d| !dims[d].is_degenerate()).collect();
    if candidates.is_empty() {
        return Err(EngineError::FullyDegenerateBox);
    }
    match rule {
        SplitRule::LongestDim => {
            let mut best = candidates[0];
            for &d in &candidates[1..] {
                if dims[d].length() > dims[best].length() {
                    best = d;
                }
            }
            Ok(best + 1)
        }
        SplitRule::DArea => {
            let scene = eval_box_scene(spec, e);
            let mut best: Option<(Rational, usize)> = None;
            for &d in &candidates {
                let j = d / 2;
                let coord = if d % 2 == 0 { SplitCoord::First } else { SplitCoord::Second };
                let (iv, jv) = e.corridor(j);
                let tight = tightened_cells(&spec.slopes()[j], iv, jv, coord);
                // lambda(D_d cap S) = lambda(S) - lambda(S cap N_d): the
                // scene lies inside the corridor's union set, so removing
                // the all-offsets core leaves exactly the difference set.
                let mut core = Rational::zero();
                for cell in &scene.cells {
                    for n in &tight {
                        core += polygon_area(&clip_polygon_all(&cell.poly, &n.constraints));
                    }
                }
                let score = &scene.total - core;
                if best.as_ref().map_or(true, |(s, _)| score > *s) {
                    best = Some((score, d));
                }
            }
            Ok(best.unwrap().1 + 1)
        }
    }
}

/// Split a box at the exact midpoint of 1-based coordinate i.
pub fn split_box(e: &BoxE, i: usize) -> Result<(BoxE, BoxE), EngineError> {
    let dims = e.intervals();
    if i == 0 || i > dims.len() {
        return Err(EngineError::SplitIndexOutOfRange { index: i, dims: dims.len() });
    }
    if dims[i - 1].is_degenerate() {
        return Err(EngineError::DegenerateSplit { index: i });
    }
    let (lo_half, hi_half) = dims[i - 1].halves();
    let mut a = dims.to_vec();
    let mut b = dims.to_vec();
    a[i - 1] = lo_half;
    b[i - 1] = hi_half;
    Ok((BoxE::new(a), BoxE::new(b)))
}

/// The one-corridor closed form sec a + csc a, minimized over the spec's
/// corridors: a theorem-level upper bound on the optimum of any spec.
pub fn closed_form_cap(spec: &ProblemSpec) -> Rational {
    spec.slopes()
        .iter()
        .map(|a| {
            let t = a.trig_ratios();
            t.sec.unwrap() + t.csc.unwrap()
        })
        .min()
        .unwrap()
}

/// Run branch and bound, streaming progress reports to `on_report`.
pub fn run(
    spec: &ProblemSpec,
    config: &EngineConfig,
    on_report: impl FnMut(&Report),
) -> Result<BoundCertificate, EngineError> {
    run_with_events(spec, config, on_report, |_| {})
}

/// As [`run`], also streaming queue events. The event stream exists for
/// validation harnesses (e.g. checking that pushed + discarded boxes always
/// tile the popped box) and costs a few box clones per iteration.
pub fn run_with_events(
    spec: &ProblemSpec,
    config: &EngineConfig,
    mut on_report: impl FnMut(&Report),
    mut on_event: impl FnMut(&EngineEvent),
) -> Result<BoundCertificate, EngineError> {
    if config.target_upper.is_none()
        && config.max_iterations.is_none()
        && config.max_time.is_none()
        && config.gap.is_none()
    {
        return Err(EngineError::NoStopCriterion);
    }
    if config.report_granularity <= Rational::zero() {
        return Err(EngineError::NonPositiveGranularity);
    }
    let start = Instant::now();
    let cap = config.closed_form_cap.then(|| closed_form_cap(spec));

    // Seed lower bound: the known value 11/5 applies when the final slope
    // reaches vertical; otherwise start from zero.
    let mut best_lower = if spec.max_final().is_right() { rat(11, 5) } else { Rational::zero() };

    let init = initial_box(spec);
    let mut heap: BinaryHeap<QueueEntry> = BinaryHeap::new();
    let pi0 = pi_eval(spec, &init, config.priority_mode);
    heap.push(QueueEntry { boxe: init, priority: pi0, sequence: 0 });
    let mut next_sequence: u64 = 1;
    let mut iterations: u64 = 0;
    let mut last_printed: Option<BigInt> = None;
    // Report when the printed (ceil to thousandths) upper bound has dropped
    // by at least the granularity: prev - printed >= 1000 * granularity.
    let drop_threshold = &config.report_granularity * rat(1000, 1);

    loop {
        let Some(entry) = heap.pop() else {
            // Queue exhausted: every remaining offset tuple was certified
            // below best_lower, so the bounds meet.
            let report = Report {
                iteration: iterations,
                upper: best_lower.clone(),
                lower: best_lower.clone(),
                elapsed: start.elapsed(),
            };
            on_report(&report);
            return Ok(BoundCertificate {
                spec: spec.clone(),
                upper: best_lower.clone(),
                lower: best_lower,
                iterations,
                config: config.clone(),
                exhausted: true,
                stop: StopReason::QueueExhausted,
            });
        };
        iterations += 1;
        on_event(&EngineEvent::Popped(entry.boxe.clone()));

        // Priorities pop in non-increasing order, so the popped priority is
        // the current certified upper bound; the closed-form cap can only
        // tighten it and never feeds back into the queue.
        let mut best_upper = entry.priority.clone();
        if let Some(c) = &cap {
            if *c < best_upper {
                best_upper = c.clone();
            }
        }

        let glb = g_eval(spec, &entry.boxe.midpoints());
        if glb > best_lower {
            best_lower = glb;
        }

        let mut stop = None;
        if let Some(t) = &config.target_upper {
            if &best_upper <= t {
                stop = Some(StopReason::TargetReached);
            }
        }
        if stop.is_none() {
            if let Some(g) = &config.gap {
                if &best_upper - &best_lower <= *g {
                    stop = Some(StopReason::GapReached);
                }
            }
        }

        if stop.is_none() {
            match splitting_index(spec, &entry.boxe, config.split_rule) {
                Ok(i) => {
                    let (lo_child, hi_child) = split_box(&entry.boxe, i)?;
                    for child in [lo_child, hi_child] {
                        let pi = pi_eval(spec, &child, config.priority_mode);
                        if pi >= best_lower {
                            on_event(&EngineEvent::Pushed(child.clone()));
                            heap.push(QueueEntry { boxe: child, priority: pi, sequence: next_sequence });
                            next_sequence += 1;
                        } else {
                            on_event(&EngineEvent::Discarded(child.clone()));
                        }
                    }
                }
                // A point box cannot be split; it simply leaves the queue.
                Err(EngineError::FullyDegenerateBox) => {}
                Err(e) => return Err(e),
            }
        }

        let elapsed = start.elapsed();
        let printed = ceil_scaled(&best_upper, 3);
        let should_report = match &last_printed {
            None => true,
            Some(prev) => {
                Rational::from_integer(prev - &printed) >= drop_threshold
            }
        };
        let mut reported = false;
        if should_report {
            on_report(&Report {
                iteration: iterations,
                upper: best_upper.clone(),
                lower: best_lower.clone(),
                elapsed,
            });
            last_printed = Some(printed);
            reported = true;
        }

        if stop.is_none() {
            if let Some(m) = config.max_iterations {
                if iterations >= m {
                    stop = Some(StopReason::IterationLimit);
                }
            }
        }
        if stop.is_none() {
            if let Some(mt) = config.max_time {
                if elapsed >= mt {
                    stop = Some(StopReason::TimeLimit);
                }
            }
        }
        if let Some(reason) = stop {
            if !reported {
                on_report(&Report {
                    iteration: iterations,
                    upper: best_upper.clone(),
                    lower: best_lower.clone(),
                    elapsed: start.elapsed(),
                });
            }
            return Ok(BoundCertificate {
                spec: spec.clone(),
                upper: best_upper,
                lower: best_lower,
                iterations,
                config: config.clone(),
                exhausted: false,
                stop: reason,
            });
        }
    }
}
