//! Exact planar region algebra.
//!
//! A region is a finite union of closed convex cells, each an intersection of
//! rational half-planes. Boolean operations keep cells pairwise
//! interior-disjoint, so area is the plain sum of cell areas. Area and
//! component queries require a finite clip frame; unbounded regions support
//! only construction, boolean ops, transforms, and membership.
//!
//! All operations are exact. Set difference (and hence union) is
//! regularized: pieces of zero area are dropped, so results can differ from
//! pointwise set difference on measure-zero boundary sets; membership tests
//! in callers should avoid boundary points.

use crate::kernel::{Point, PythagoreanAngle, Rational};
use num_traits::{Signed, Zero};
use std::fmt::Write as _;

/// The closed half-plane a*x + b*y <= c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlane {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl HalfPlane {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        HalfPlane { a, b, c }
    }

    /// Half-plane a*x + b*y >= c, rewritten in <= form.
    pub fn ge(a: Rational, b: Rational, c: Rational) -> Self {
        HalfPlane { a: -a, b: -b, c: -c }
    }

    /// The closed complement a*x + b*y >= c.
    pub fn flipped(&self) -> Self {
        HalfPlane { a: -self.a.clone(), b: -self.b.clone(), c: -self.c.clone() }
    }

    pub fn contains(&self, p: &Point) -> bool {
        &self.a * &p.x + &self.b * &p.y <= self.c
    }

    /// Signed slack c - (a*x + b*y); non-negative inside.
    fn slack(&self, p: &Point) -> Rational {
        &self.c - (&self.a * &p.x + &self.b * &p.y)
    }
}

/// An axis-aligned rectangle; may be degenerate (a segment or point) or empty
/// (when a low bound exceeds the corresponding high bound).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rect {
    pub x_lo: Rational,
    pub x_hi: Rational,
    pub y_lo: Rational,
    pub y_hi: Rational,
}

impl Rect {
    pub fn new(x_lo: Rational, x_hi: Rational, y_lo: Rational, y_hi: Rational) -> Self {
        Rect { x_lo, x_hi, y_lo, y_hi }
    }

    pub fn is_empty(&self) -> bool {
        self.x_lo > self.x_hi || self.y_lo > self.y_hi
    }

    /// Counter-clockwise corner list; empty when the rect is empty.
    pub fn corners(&self) -> Vec<Point> {
        if self.is_empty() {
            return Vec::new();
        }
        vec![
            Point::new(self.x_lo.clone(), self.y_lo.clone()),
            Point::new(self.x_hi.clone(), self.y_lo.clone()),
            Point::new(self.x_hi.clone(), self.y_hi.clone()),
            Point::new(self.x_lo.clone(), self.y_hi.clone()),
        ]
    }

    pub fn intersection(&self, other: &Rect) -> Rect {
        Rect {
            x_lo: self.x_lo.clone().max(other.x_lo.clone()),
            x_hi: self.x_hi.clone().min(other.x_hi.clone()),
            y_lo: self.y_lo.clone().max(other.y_lo.clone()),
            y_hi: self.y_hi.clone().min(other.y_hi.clone()),
        }
    }

    pub fn hull(&self, other: &Rect) -> Rect {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        Rect {
            x_lo: self.x_lo.clone().min(other.x_lo.clone()),
            x_hi: self.x_hi.clone().max(other.x_hi.clone()),
            y_lo: self.y_lo.clone().min(other.y_lo.clone()),
            y_hi: self.y_hi.clone().max(other.y_hi.clone()),
        }
    }

    /// The four rect edges as half-plane constraints.
    pub fn constraints(&self) -> Vec<HalfPlane> {
        let one = Rational::from_integer(1.into());
        let zero = Rational::zero();
        vec![
            HalfPlane::new(-one.clone(), zero.clone(), -self.x_lo.clone()),
            HalfPlane::new(one.clone(), zero.clone(), self.x_hi.clone()),
            HalfPlane::new(zero.clone(), -one.clone(), -self.y_lo.clone()),
            HalfPlane::new(zero, one, self.y_hi.clone()),
        ]
    }
}

/// One closed convex cell: the intersection of its half-plane constraints.
#[derive(Clone, Debug)]
pub struct ConvexCell {
    pub constraints: Vec<HalfPlane>,
}

impl ConvexCell {
    pub fn new(constraints: Vec<HalfPlane>) -> Self {
        ConvexCell { constraints }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.constraints.iter().all(|h| h.contains(p))
    }

    fn intersect(&self, other: &ConvexCell) -> ConvexCell {
        let mut constraints = self.constraints.clone();
        constraints.extend(other.constraints.iter().cloned());
        let constraints = tighten(constraints);
        ConvexCell { constraints }
    }
}

/// Clip a convex polygon (counter-clockwise vertex list, possibly degenerate)
/// by a closed half-plane. Exact Sutherland-Hodgman step; preserves
/// orientation and keeps degenerate (point/segment) results.
pub(crate) fn clip_polygon(poly: &[Point], hp: &HalfPlane) -> Vec<Point> {
    if poly.is_empty() {
        return Vec::new();
    }
    let n = poly.len();
    let slacks: Vec<Rational> = poly.iter().map(|p| hp.slack(p)).collect();
    let mut out: Vec<Point> = Vec::with_capacity(n + 2);
    for i in 0..n {
        let j = (i + 1) % n;
        let cur_in = !slacks[i].is_negative();
        let nxt_in = !slacks[j].is_negative();
        if cur_in {
            out.push(poly[i].clone());
        }
        if cur_in != nxt_in {
            // t in (0,1); the denominator is nonzero because the signs differ.
            let t = &slacks[i] / (&slacks[i] - &slacks[j]);
            let x = &poly[i].x + &t * (&poly[j].x - &poly[i].x);
            let y = &poly[i].y + &t * (&poly[j].y - &poly[i].y);
            out.push(Point::new(x, y));
        }
    }
    dedup_polygon(out)
}

fn dedup_polygon(mut poly: Vec<Point>) -> Vec<Point> {
    poly.dedup();
    while poly.len() > 1 && poly.first() == poly.last() {
        poly.pop();
    }
    poly
}

/// Clip a polygon by a whole constraint list, stopping early when empty.
pub(crate) fn clip_polygon_all(poly: &[Point], constraints: &[HalfPlane]) -> Vec<Point> {
    let mut cur = poly.to_vec();
    for h in constraints {
        if cur.is_empty() {
            break;
        }
        cur = clip_polygon(&cur, h);
    }
    cur
}

/// Shoelace area of a convex polygon; zero for degenerate input.
pub(crate) fn polygon_area(poly: &[Point]) -> Rational {
    if poly.len() < 3 {
        return Rational::zero();
    }
    let mut twice = Rational::zero();
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        twice += &poly[i].x * &poly[j].y - &poly[j].x * &poly[i].y;
    }
    if twice.is_negative() {
        twice = -twice;
    }
    twice / Rational::from_integer(2.into())
}

/// Axis-aligned bounding box of a non-empty vertex list.
pub(crate) fn polygon_bbox(poly: &[Point]) -> Rect {
    let mut r = Rect::new(poly[0].x.clone(), poly[0].x.clone(), poly[0].y.clone(), poly[0].y.clone());
    for p in &poly[1..] {
        if p.x < r.x_lo {
            r.x_lo = p.x.clone();
        }
        if p.x > r.x_hi {
            r.x_hi = p.x.clone();
        }
        if p.y < r.y_lo {
            r.y_lo = p.y.clone();
        }
        if p.y > r.y_hi {
            r.y_hi = p.y.clone();
        }
    }
    r
}

fn rects_touch(a: &Rect, b: &Rect) -> bool {
    !(a.x_hi < b.x_lo || b.x_hi < a.x_lo || a.y_hi < b.y_lo || b.y_hi < a.y_lo)
}

/// Exact feasibility of a half-plane system by Fourier-Motzkin elimination.
/// Used for cells without a clip frame.
fn cell_is_feasible_unbounded(constraints: &[HalfPlane]) -> bool {
    // Split into y-upper (b > 0), y-lower (b < 0) and pure-x constraints.
    let mut uppers: Vec<&HalfPlane> = Vec::new();
    let mut lowers: Vec<&HalfPlane> = Vec::new();
    // Pure-x constraints as (A, C) meaning A*x <= C.
    let mut on_x: Vec<(Rational, Rational)> = Vec::new();
    for h in constraints {
        if h.b.is_zero() {
            on_x.push((h.a.clone(), h.c.clone()));
        } else if h.b.is_negative() {
            lowers.push(h);
        } else {
            uppers.push(h);
        }
    }
    // Eliminate y: every (lower, upper) pair induces an x constraint.
    for u in &uppers {
        for l in &lowers {
            // l: y >= (c_l - a_l x)/b_l (b_l < 0), u: y <= (c_u - a_u x)/b_u.
            // l(x) <= u(x) <=> (a_l b_u - a_u b_l) x <= c_l b_u - c_u b_l.
            let a = &l.a * &u.b - &u.a * &l.b;
            let c = &l.c * &u.b - &u.c * &l.b;
            on_x.push((a, c));
        }
    }
    // One-dimensional feasibility.
    let mut x_lo: Option<Rational> = None;
    let mut x_hi: Option<Rational> = None;
    for (a, c) in on_x {
        if a.is_zero() {
            if c.is_negative() {
                return false;
            }
        } else if a.is_negative() {
            let bound = c / a;
            x_lo = Some(match x_lo {
                Some(v) => v.max(bound),
                None => bound,
            });
        } else {
            let bound = c / a;
            x_hi = Some(match x_hi {
                Some(v) => v.min(bound),
                None => bound,
            });
        }
    }
    match (x_lo, x_hi) {
        (Some(lo), Some(hi)) => lo <= hi,
        _ => true,
    }
}

/// Strict feasibility: whether the OPEN system a*x + b*y < c has a
/// solution, i.e. whether the closed cell has an interior point. Same
/// elimination as [`cell_is_feasible_unbounded`] with strict comparisons.
fn open_cell_is_feasible(constraints: &[HalfPlane]) -> bool {
    let mut uppers: Vec<&HalfPlane> = Vec::new();
    let mut lowers: Vec<&HalfPlane> = Vec::new();
    let mut on_x: Vec<(Rational, Rational)> = Vec::new();
    for h in constraints {
        if h.b.is_zero() {
            on_x.push((h.a.clone(), h.c.clone()));
        } else if h.b.is_negative() {
            lowers.push(h);
        } else {
            uppers.push(h);
        }
    }
    for u in &uppers {
        for l in &lowers {
            let a = &l.a * &u.b - &u.a * &l.b;
            let c = &l.c * &u.b - &u.c * &l.b;
            on_x.push((a, c));
        }
    }
    let mut x_lo: Option<Rational> = None;
    let mut x_hi: Option<Rational> = None;
    for (a, c) in on_x {
        if a.is_zero() {
            // Need 0 < c strictly.
            if !c.is_positive() {
                return false;
            }
        } else if a.is_negative() {
            let bound = c / a;
            x_lo = Some(match x_lo {
                Some(v) => v.max(bound),
                None => bound,
            });
        } else {
            let bound = c / a;
            x_hi = Some(match x_hi {
                Some(v) => v.min(bound),
                None => bound,
            });
        }
    }
    match (x_lo, x_hi) {
        (Some(lo), Some(hi)) => lo < hi,
        _ => true,
    }
}

/// Whether the cell is full-dimensional (has an interior point). With a
/// frame the test is an exact clipped-polygon area; without one it is
/// strict Fourier-Motzkin. Cells are assumed to lie inside the frame.
fn cell_has_interior(cell: &ConvexCell, frame: Option<&Rect>) -> bool {
    match frame {
        Some(rect) => {
            let poly = clip_polygon_all(&rect.corners(), &cell.constraints);
            poly.len() >= 3 && polygon_area(&poly).is_positive()
        }
        None => open_cell_is_feasible(&cell.constraints),
    }
}

/// Rotation sense for [`Region::transform`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Ccw,
    Cw,
}

/// Errors from region queries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegionError {
    /// Area or component queries need a finite clip frame.
    Unbounded,
}

impl std::fmt::Display for RegionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegionError::Unbounded => write!(f, "region has no clip frame; apply clip() first"),
        }
    }
}

impl std::error::Error for RegionError {}

/// A finite union of closed convex cells, pairwise interior-disjoint.
///
/// `frame`, when present, is a rectangle containing every cell; it is the
/// seed polygon for exact clipping and marks the region as bounded.
#[derive(Clone, Debug)]
pub struct Region {
    cells: Vec<ConvexCell>,
    frame: Option<Rect>,
}

impl Region {
    pub fn from_cells(cells: Vec<ConvexCell>, frame: Option<Rect>) -> Self {
        Region { cells, frame }
    }

    pub fn empty() -> Self {
        Region { cells: Vec::new(), frame: None }
    }

    pub fn cells(&self) -> &[ConvexCell] {
        &self.cells
    }

    pub fn frame(&self) -> Option<&Rect> {
        self.frame.as_ref()
    }

    /// Whether a finite clip frame has been applied.
    pub fn is_bounded(&self) -> bool {
        self.frame.is_some()
    }

    /// Closed-set membership: inside any cell.
    pub fn contains(&self, p: &Point) -> bool {
        self.cells.iter().any(|c| c.contains(p))
    }

    /// Exact emptiness of the whole region.
    pub fn is_empty(&self) -> bool {
        match &self.frame {
            Some(rect) => self
                .cells
                .iter()
                .all(|c| clip_polygon_all(&rect.corners(), &c.constraints).is_empty()),
            None => self.cells.iter().all(|c| !cell_is_feasible_unbounded(&c.constraints)),
        }
    }

    /// Drop cells that are empty. Interior-disjointness of the remaining
    /// cells is an invariant maintained by every constructor and operation.
    pub fn canonicalize(&mut self) {
        match &self.frame {
            Some(rect) => {
                let corners = rect.corners();
                self.cells
                    .retain(|c| !clip_polygon_all(&corners, &c.constraints).is_empty());
            }
            None => self.cells.retain(|c| cell_is_feasible_unbounded(&c.constraints)),
        }
    }

    /// Intersection; the result frame is the tightest available rectangle.
    pub fn intersect(&self, other: &Region) -> Region {
        let frame = match (&self.frame, &other.frame) {
            (Some(a), Some(b)) => Some(a.intersection(b)),
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        };
        let mut cells = Vec::new();
        for a in &self.cells {
            for b in &other.cells {
                let cell = a.intersect(b);
                if cell_quick_nonempty(&cell, frame.as_ref()) {
                    cells.push(cell);
                }
            }
        }
        Region { cells, frame }
    }

    /// Union as self + (other \ self); keeps cells interior-disjoint.
    pub fn union(&self, other: &Region) -> Region {
        let frame = match (&self.frame, &other.frame) {
            (Some(a), Some(b)) => Some(a.hull(b)),
            _ => None,
        };
        let mut cells = self.cells.clone();
        cells.extend(subtract_cells(&other.cells, &self.cells, frame.as_ref()));
        Region { cells, frame }
    }

    /// Regularized set difference self \ other: the closures of the
    /// full-dimensional pieces of the pointwise difference.
    pub fn difference(&self, other: &Region) -> Region {
        let frame = self.frame.clone();
        let cells = subtract_cells(&self.cells, &other.cells, frame.as_ref());
        Region { cells, frame }
    }

    /// Restrict to a rectangle and remember it as the clip frame.
    pub fn clip(&self, rect: &Rect) -> Region {
        let frame = match &self.frame {
            Some(old) => old.intersection(rect),
            None => rect.clone(),
        };
        let extra = frame.constraints();
        let cells = self
            .cells
            .iter()
            .map(|c| {
                let mut constraints = c.constraints.clone();
                constraints.extend(extra.iter().cloned());
                ConvexCell { constraints: tighten(constraints) }
            })
            .collect();
        Region { cells, frame: Some(frame) }
    }

    /// Rigid motion: rotate about the origin, then translate. The frame maps
    /// to the bounding box of its transformed corners.
    pub fn transform(&self, angle: &PythagoreanAngle, sense: Sense, translation: &Point) -> Region {
        let (s, c) = match sense {
            Sense::Ccw => (angle.sin(), angle.cos()),
            Sense::Cw => (-angle.sin(), angle.cos()),
        };
        let cells = self
            .cells
            .iter()
            .map(|cell| ConvexCell {
                constraints: cell
                    .constraints
                    .iter()
                    .map(|h| {
                        // Normals rotate with the set; offsets shift by n'.t.
                        let a = &h.a * &c - &h.b * &s;
                        let b = &h.a * &s + &h.b * &c;
                        let off = &a * &translation.x + &b * &translation.y;
                        HalfPlane { a, b, c: &h.c + off }
                    })
                    .collect(),
            })
            .collect();
        let frame = self.frame.as_ref().map(|rect| {
            let moved: Vec<Point> = rect
                .corners()
                .iter()
                .map(|p| {
                    let x = &p.x * &c - &p.y * &s + &translation.x;
                    let y = &p.x * &s + &p.y * &c + &translation.y;
                    Point::new(x, y)
                })
                .collect();
            polygon_bbox(&moved)
        });
        Region { cells, frame }
    }

    /// Exact polygons of all non-empty cells (needs a frame).
    fn cell_polygons(&self) -> Result<Vec<(usize, Vec<Point>)>, RegionError> {
        let rect = self.frame.as_ref().ok_or(RegionError::Unbounded)?;
        let corners = rect.corners();
        let mut polys = Vec::new();
        for (i, cell) in self.cells.iter().enumerate() {
            let poly = clip_polygon_all(&corners, &cell.constraints);
            if !poly.is_empty() {
                polys.push((i, poly));
            }
        }
        Ok(polys)
    }

    /// Total area (cells are interior-disjoint, so the sum is exact).
    pub fn area(&self) -> Result<Rational, RegionError> {
        let polys = self.cell_polygons()?;
        Ok(polys.iter().map(|(_, p)| polygon_area(p)).sum())
    }

    /// Area of the largest connected component and the component count.
    /// Components are those of the closed set: cells sharing even a single
    /// boundary point are connected. Empty region yields (0, 0).
    pub fn largest_component_area(&self) -> Result<(Rational, usize), RegionError> {
        let polys = self.cell_polygons()?;
        if polys.is_empty() {
            return Ok((Rational::zero(), 0));
        }
        let boxes: Vec<Rect> = polys.iter().map(|(_, p)| polygon_bbox(p)).collect();
        let mut dsu = Dsu::new(polys.len());
        for i in 0..polys.len() {
            for j in (i + 1)..polys.len() {
                if dsu.find(i) == dsu.find(j) || !rects_touch(&boxes[i], &boxes[j]) {
                    continue;
                }
                let cell_j = &self.cells[polys[j].0];
                if !clip_polygon_all(&polys[i].1, &cell_j.constraints).is_empty() {
                    dsu.union(i, j);
                }
            }
        }
        let mut sums: Vec<Rational> = vec![Rational::zero(); polys.len()];
        let mut seen_root = vec![false; polys.len()];
        for (idx, (_, poly)) in polys.iter().enumerate() {
            let r = dsu.find(idx);
            sums[r] += polygon_area(poly);
            seen_root[r] = true;
        }
        let count = seen_root.iter().filter(|&&b| b).count();
        let best = sums.into_iter().max().unwrap_or_else(Rational::zero);
        Ok((best, count))
    }

    /// One line per non-empty cell: counter-clockwise vertices in the exact
    /// form "num/den,num/den", space separated. Needs a frame.
    pub fn export_vertices(&self) -> Result<String, RegionError> {
        let polys = self.cell_polygons()?;
        let mut out = String::new();
        for (_, poly) in polys {
            let mut first = true;
            for v in poly {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{}/{},{}/{}", v.x.numer(), v.x.denom(), v.y.numer(), v.y.denom());
            }
            out.push('\n');
        }
        Ok(out)
    }
}

/// Cheap exact emptiness filter used when building intersections.
fn cell_quick_nonempty(cell: &ConvexCell, frame: Option<&Rect>) -> bool {
    match frame {
        Some(rect) => !clip_polygon_all(&rect.corners(), &cell.constraints).is_empty(),
        None => cell_is_feasible_unbounded(&cell.constraints),
    }
}

/// minuend \ union(subtrahend cells), as interior-disjoint pieces.
/// Canonical form: scale so max(|a|, |b|) = 1. Trivially true degenerate
/// constraints (0*x + 0*y <= c with c >= 0) return None; infeasible ones
/// are kept so emptiness stays detectable.
fn canonical(h: HalfPlane) -> Option<HalfPlane> {
    let k = h.a.abs().max(h.b.abs());
    if k.is_zero() {
        return if h.c.is_negative() { Some(h) } else { None };
    }
    Some(HalfPlane { a: &h.a / &k, b: &h.b / &k, c: &h.c / &k })
}

/// Drop redundant constraints: canonicalize directions and keep only the
/// tightest bound per direction. Keeps cell descriptions from growing
/// unboundedly through chained boolean operations.
pub(crate) fn tighten(constraints: Vec<HalfPlane>) -> Vec<HalfPlane> {
    let mut out: Vec<HalfPlane> = Vec::new();
    for h in constraints {
        let Some(h) = canonical(h) else { continue };
        match out.iter_mut().find(|e| e.a == h.a && e.b == h.b) {
            Some(e) => {
                if h.c < e.c {
                    e.c = h.c;
                }
            }
            None => out.push(h),
        }
    }
    out
}

fn subtract_cells(minuend: &[ConvexCell], subtrahend: &[ConvexCell], frame: Option<&Rect>) -> Vec<ConvexCell> {
    let mut result = Vec::new();
    for a in minuend {
        let mut remainder = vec![a.clone()];
        for b in subtrahend {
            let mut next = Vec::new();
            for r in remainder {
                // A subtrahend cell whose overlap with r has no interior
                // leaves r whole (the difference is regularized); skipping
                // the split also keeps the piece count from exploding.
                let mut overlap = r.constraints.clone();
                overlap.extend(b.constraints.iter().cloned());
                if !cell_has_interior(&ConvexCell { constraints: tighten(overlap) }, frame) {
                    next.push(r);
                    continue;
                }
                // r \ b = union over t of (r and b's first t-1 constraints
                // and the closed complement of the t-th); pieces are
                // interior-disjoint by construction. Zero-area pieces are
                // dropped.
                for t in 0..b.constraints.len() {
                    let mut constraints = r.constraints.clone();
                    constraints.extend(b.constraints[..t].iter().cloned());
                    constraints.push(b.constraints[t].flipped());
                    let piece = ConvexCell { constraints: tighten(constraints) };
                    if cell_has_interior(&piece, frame) {
                        next.push(piece);
                    }
                }
            }
            remainder = next;
        }
        result.extend(remainder);
    }
    result
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let r = self.find(self.parent[i]);
            self.parent[i] = r;
        }
        self.parent[i]
    }

    pub(crate) fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            self.parent[ri] = rj;
        }
    }
}
