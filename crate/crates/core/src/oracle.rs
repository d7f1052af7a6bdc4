//! Independent cross-checks for the engine: a closed-form optimum for
//! one-corridor problems, pinned constant enclosures, and a brute-force
//! grid sampler for lower bounds. These deliberately avoid the engine's
//! region machinery where possible so the two routes stay independent.

use crate::engine::{g_eval, initial_box, ProblemSpec};
use crate::kernel::{rat, Point, PythagoreanAngle, Rational};
use num_traits::Zero;
use std::fmt;

/// A named two-sided rational enclosure lo <= value <= hi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantEnclosure {
    pub name: &'static str,
    pub lo: Rational,
    pub hi: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleError {
    /// The closed form sec + csc needs a strictly acute angle.
    NotStrictlyAcute,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NotStrictlyAcute => {
                write!(f, "closed form requires an angle strictly between 0 and 90 degrees")
            }
        }
    }
}

impl std::error::Error for OracleError {}

/// Exact optimum for a single corridor at angle a with vertical final
/// slope: sec a + csc a.
pub fn closed_form_single_angle(angle: &PythagoreanAngle) -> Result<Rational, OracleError> {
    if angle.is_zero() || angle.is_right() {
        return Err(OracleError::NotStrictlyAcute);
    }
    let t = angle.trig_ratios();
    Ok(t.sec.unwrap() + t.csc.unwrap())
}

/// Enclosure of the best known sofa area (the Gerver sofa), pinned to
/// rational endpoints: 2.21950 <= value <= 2.21960.
pub fn gerver_area() -> ConstantEnclosure {
    ConstantEnclosure { name: "gerver-area", lo: rat(4439, 2000), hi: rat(5549, 2500) }
}

/// The engine's seed lower bound 11/5, exact.
pub fn seed_lower_bound() -> ConstantEnclosure {
    ConstantEnclosure { name: "seed-lower-bound", lo: rat(11, 5), hi: rat(11, 5) }
}

/// Enclosure of 2*sqrt(2), the classical diagonal-strip upper bound.
pub fn diagonal_strip_area() -> ConstantEnclosure {
    ConstantEnclosure { name: "diagonal-strip-area", lo: rat(7071, 2500), hi: rat(5657, 2000) }
}

/// All pinned constants.
pub fn constants() -> Vec<ConstantEnclosure> {
    vec![gerver_area(), seed_lower_bound(), diagonal_strip_area()]
}

/// Brute-force lower bound: the best g value over a dyadic grid of offset
/// tuples in the initial box. Depth 0 samples only the box midpoint; depth
/// d >= 1 samples 2^d + 1 evenly spaced points per non-degenerate
/// coordinate, endpoints included. Grids nest, so the value is monotone
/// non-decreasing in depth, and every value is a certified lower bound.
pub fn grid_lower_bound(spec: &ProblemSpec, depth: u32) -> Rational {
    let e = initial_box(spec);
    let axes: Vec<Vec<Rational>> = e
        .intervals()
        .iter()
        .map(|iv| {
            if iv.is_degenerate() {
                vec![iv.lo().clone()]
            } else if depth == 0 {
                vec![iv.midpoint()]
            } else {
                let n = 1i64 << depth;
                (0..=n).map(|t| iv.lo() + rat(t, n) * iv.length()).collect()
            }
        })
        .collect();
    let k = axes.len() / 2;
    let mut idx = vec![0usize; axes.len()];
    let mut best = Rational::zero();
    loop {
        let u: Vec<Point> = (0..k)
            .map(|j| Point::new(axes[2 * j][idx[2 * j]].clone(), axes[2 * j + 1][idx[2 * j + 1]].clone()))
            .collect();
        let v = g_eval(spec, &u);
        if v > best {
            best = v;
        }
        let mut d = 0;
        loop {
            idx[d] += 1;
            if idx[d] < axes[d].len() {
                break;
            }
            idx[d] = 0;
            d += 1;
            if d == axes.len() {
                return best;
            }
        }
    }
}
