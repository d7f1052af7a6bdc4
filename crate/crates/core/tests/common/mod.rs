//! Shared helpers for the integration suites: a tiny deterministic RNG and
//! random problem specs drawn from a pool of Pythagorean angles.
//!
//! Every suite links its own copy of this module, so not every helper is
//! used by every binary.
#![allow(dead_code)]

use sofa_bnb::engine::{BoxE, ProblemSpec};
use sofa_bnb::kernel::{rat, PythagoreanAngle, Rational};
use sofa_bnb::scene::Interval;

/// Splitmix-style generator: fixed seeds make every "random" suite exactly
/// reproducible, which the determinism checks rely on.
pub struct Lcg(u64);

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg(seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(0xd1b54a32d192ed03))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let x = self.0;
        (x ^ (x >> 31)).wrapping_mul(0x94d049bb133111eb)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.below(len as u64) as usize
    }

    /// Rational in [-span, span] with a denominator that keeps sample points
    /// off the axis-parallel and corridor boundaries used by the suites.
    pub fn offset(&mut self, span: i64) -> Rational {
        let d = [7, 11, 13, 17, 19, 23][self.index(6)];
        let n = self.below((2 * span * d + 1) as u64) as i64 - span * d;
        rat(n, d)
    }
}

/// Acute Pythagorean angles in strictly increasing order, so slope chains
/// and final-slope windows can be drawn by index.
pub const TRIPLES: [(i64, i64, i64); 19] = [
    (13, 84, 85),
    (11, 60, 61),
    (9, 40, 41),
    (7, 24, 25),
    (5, 12, 13),
    (8, 15, 17),
    (33, 56, 65),
    (3, 4, 5),
    (20, 21, 29),
    (119, 120, 169),
    (21, 20, 29),
    (4, 3, 5),
    (56, 33, 65),
    (15, 8, 17),
    (12, 5, 13),
    (24, 7, 25),
    (40, 9, 41),
    (60, 11, 61),
    (84, 13, 85),
];

pub fn ang(a: i64, b: i64, c: i64) -> PythagoreanAngle {
    PythagoreanAngle::from_triple(a, b, c).unwrap()
}

pub fn pool(i: usize) -> PythagoreanAngle {
    let (a, b, c) = TRIPLES[i];
    ang(a, b, c)
}

/// Strictly increasing pool indices, uniformly among size-`n` subsets.
fn ascending_indices(rng: &mut Lcg, n: usize) -> Vec<usize> {
    let mut picked = Vec::with_capacity(n);
    while picked.len() < n {
        let i = rng.index(TRIPLES.len());
        if !picked.contains(&i) {
            picked.push(i);
        }
    }
    picked.sort_unstable();
    picked
}

/// One corridor, final slope anywhere up to vertical.
pub fn spec_k1_vertical(rng: &mut Lcg) -> ProblemSpec {
    let idx = ascending_indices(rng, 1);
    ProblemSpec::new(vec![pool(idx[0])], PythagoreanAngle::right(), PythagoreanAngle::right())
        .unwrap()
}

/// Two corridors, final slope anywhere up to vertical.
pub fn spec_k2_vertical(rng: &mut Lcg) -> ProblemSpec {
    let idx = ascending_indices(rng, 2);
    ProblemSpec::new(
        vec![pool(idx[0]), pool(idx[1])],
        PythagoreanAngle::right(),
        PythagoreanAngle::right(),
    )
    .unwrap()
}

/// Two corridors with a genuine butterfly window strictly below vertical.
/// These cost the most per evaluation, so the suites draw only a few.
pub fn spec_k2_butterfly(rng: &mut Lcg) -> ProblemSpec {
    let wide = rng.below(2) == 0;
    let idx = ascending_indices(rng, if wide { 4 } else { 3 });
    let (min_f, max_f) = if wide { (pool(idx[2]), pool(idx[3])) } else { (pool(idx[2]), pool(idx[2])) };
    ProblemSpec::new(vec![pool(idx[0]), pool(idx[1])], min_f, max_f).unwrap()
}

/// The randomized-spec schedule used by the cross-check suites: slot n of
/// `total` is one corridor for the first 60%, two corridors reaching
/// vertical for the next 36%, and a two-corridor butterfly for the rest.
pub fn scheduled_spec(n: usize, total: usize, rng: &mut Lcg) -> ProblemSpec {
    if 100 * n < 60 * total {
        spec_k1_vertical(rng)
    } else if 100 * n < 96 * total {
        spec_k2_vertical(rng)
    } else {
        spec_k2_butterfly(rng)
    }
}

/// A random descendant of the initial box: `splits` midpoint bisections
/// along random non-degenerate coordinates.
pub fn random_descendant(spec: &ProblemSpec, splits: usize, rng: &mut Lcg) -> BoxE {
    let mut boxe = sofa_bnb::engine::initial_box(spec);
    for _ in 0..splits {
        let live: Vec<usize> = (0..boxe.intervals().len())
            .filter(|&d| !boxe.intervals()[d].is_degenerate())
            .collect();
        if live.is_empty() {
            break;
        }
        let i = live[rng.index(live.len())] + 1;
        let (lo, hi) = sofa_bnb::engine::split_box(&boxe, i).unwrap();
        boxe = if rng.below(2) == 0 { lo } else { hi };
    }
    boxe
}

/// A random offset tuple inside the box, one point per corridor, sampled
/// coordinate-wise at generic interior fractions.
pub fn random_tuple_in(boxe: &BoxE, rng: &mut Lcg) -> Vec<sofa_bnb::kernel::Point> {
    let coords: Vec<Rational> = boxe
        .intervals()
        .iter()
        .map(|iv| sample_in(iv, rng))
        .collect();
    coords
        .chunks(2)
        .map(|c| sofa_bnb::kernel::Point::new(c[0].clone(), c[1].clone()))
        .collect()
}

fn sample_in(iv: &Interval, rng: &mut Lcg) -> Rational {
    if iv.is_degenerate() {
        return iv.lo().clone();
    }
    let d = [7, 11, 13, 17, 19, 23][rng.index(6)];
    let n = 1 + rng.below(d as u64 - 1) as i64;
    iv.lo() + rat(n, d) * iv.length()
}
