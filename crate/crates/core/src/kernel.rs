//! Exact arithmetic kernel: big rationals, points, and Pythagorean angles.
//!
//! Every geometric quantity in this crate is an exact rational. Angles are
//! restricted to those with rational sine and cosine, encoded by an integer
//! triple (a, b, c) with a^2 + b^2 = c^2, so that rotations stay inside the
//! rational field and no floating point ever enters a bound.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Exact rational scalar used throughout. Operations canonicalize eagerly
/// (num-rational reduces on construction and after every arithmetic op).
pub type Rational = num_rational::BigRational;

/// Rational from an integer numerator and denominator. Panics on d == 0.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A point in the plane with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Errors from kernel constructors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelError {
    /// The components do not satisfy a^2 + b^2 = c^2.
    NotPythagorean { a: i64, b: i64, c: i64 },
    /// Component out of range (negative entry, zero hypotenuse, or zero sine).
    InvalidComponent { a: i64, b: i64, c: i64, reason: &'static str },
}

impl fmt::Display for KernelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelError::NotPythagorean { a, b, c } => {
                write!(f, "({a}, {b}, {c}) is not a Pythagorean triple")
            }
            KernelError::InvalidComponent { a, b, c, reason } => {
                write!(f, "invalid angle triple ({a}, {b}, {c}): {reason}")
            }
        }
    }
}

impl std::error::Error for KernelError {}

/// An angle in (0, 90] degrees with rational sine and cosine, stored as a
/// canonical Pythagorean triple: sin = sin_num/denom, cos = cos_num/denom.
///
/// Invariants: denom > 0, sin_num > 0 for angles in (0, 90], cos_num >= 0,
/// sin_num^2 + cos_num^2 = denom^2, gcd(sin_num, cos_num, denom) = 1.
/// The zero angle (sin 0, cos 1) exists only via [`PythagoreanAngle::zero`]
/// as the start of coverage ranges; it is not a valid corridor angle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PythagoreanAngle {
    sin_num: i64,
    cos_num: i64,
    denom: i64,
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    use num_integer::Integer;
    a.gcd(&b).gcd(&c)
}

impl PythagoreanAngle {
    /// Build the angle with sin = a/c, cos = b/c from a Pythagorean triple.
    /// The triple is reduced to canonical form, e.g. (6, 8, 10) -> (3, 4, 5).
    /// Rejects non-triples, non-positive a or c, and negative b. The right
    /// angle is (1, 0, 1).
    pub fn from_triple(a: i64, b: i64, c: i64) -> Result<Self, KernelError> {
        if c <= 0 {
            return Err(KernelError::InvalidComponent { a, b, c, reason: "hypotenuse must be positive" });
        }
        if a <= 0 {
            return Err(KernelError::InvalidComponent { a, b, c, reason: "sine component must be positive" });
        }
        if b < 0 {
            return Err(KernelError::InvalidComponent { a, b, c, reason: "cosine component must be non-negative" });
        }
        let (ai, bi, ci) = (a as i128, b as i128, c as i128);
        if ai * ai + bi * bi != ci * ci {
            return Err(KernelError::NotPythagorean { a, b, c });
        }
        let g = gcd3(a, b, c);
        Ok(PythagoreanAngle { sin_num: a / g, cos_num: b / g, denom: c / g })
    }

    /// The zero angle (sin 0, cos 1). Marks the start of a coverage range in
    /// bound composition; rejected everywhere a corridor angle is expected.
    pub fn zero() -> Self {
        PythagoreanAngle { sin_num: 0, cos_num: 1, denom: 1 }
    }

    /// The right angle (sin 1, cos 0).
    pub fn right() -> Self {
        PythagoreanAngle { sin_num: 1, cos_num: 0, denom: 1 }
    }

    pub fn sin_num(&self) -> i64 {
        self.sin_num
    }

    pub fn cos_num(&self) -> i64 {
        self.cos_num
    }

    pub fn denom(&self) -> i64 {
        self.denom
    }

    /// The canonical triple (sin_num, cos_num, denom).
    pub fn triple(&self) -> (i64, i64, i64) {
        (self.sin_num, self.cos_num, self.denom)
    }

    pub fn is_zero(&self) -> bool {
        self.sin_num == 0
    }

    pub fn is_right(&self) -> bool {
        self.cos_num == 0
    }

    pub fn sin(&self) -> Rational {
        rat(self.sin_num, self.denom)
    }

    pub fn cos(&self) -> Rational {
        rat(self.cos_num, self.denom)
    }

    /// The complementary angle 90 deg - self.
    pub fn complement(&self) -> Self {
        PythagoreanAngle { sin_num: self.cos_num, cos_num: self.sin_num, denom: self.denom }
    }

    /// All ratios at once; tan and sec are None at 90 deg, csc is None at 0.
    pub fn trig_ratios(&self) -> TrigRatios {
        TrigRatios {
            sin: self.sin(),
            cos: self.cos(),
            tan: (self.cos_num != 0).then(|| rat(self.sin_num, self.cos_num)),
            sec: (self.cos_num != 0).then(|| rat(self.denom, self.cos_num)),
            csc: (self.sin_num != 0).then(|| rat(self.denom, self.sin_num)),
        }
    }

    /// Angle in degrees as a float, for display only.
    pub fn degrees_approx(&self) -> f64 {
        (self.sin_num as f64 / self.denom as f64).asin().to_degrees()
    }
}

impl PartialOrd for PythagoreanAngle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PythagoreanAngle {
    /// Orders by angle, i.e. by sine (all angles lie in [0, 90] degrees).
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.sin_num as i128 * other.denom as i128;
        let rhs = other.sin_num as i128 * self.denom as i128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for PythagoreanAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.sin_num, self.cos_num, self.denom)
    }
}

/// Exact trigonometric ratios of a [`PythagoreanAngle`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigRatios {
    pub sin: Rational,
    pub cos: Rational,
    pub tan: Option<Rational>,
    pub sec: Option<Rational>,
    pub csc: Option<Rational>,
}

/// Rotate a point counter-clockwise about the origin.
pub fn rotate_ccw(p: &Point, angle: &PythagoreanAngle) -> Point {
    let (s, c) = (angle.sin(), angle.cos());
    Point { x: &p.x * &c - &p.y * &s, y: &p.x * &s + &p.y * &c }
}

/// Rotate a point clockwise about the origin (inverse of [`rotate_ccw`]).
pub fn rotate_cw(p: &Point, angle: &PythagoreanAngle) -> Point {
    let (s, c) = (angle.sin(), angle.cos());
    Point { x: &p.x * &c + &p.y * &s, y: &p.y * &c - &p.x * &s }
}

/// Floor of x * 10^digits as a BigInt (for decimal display of lower bounds).
pub fn floor_scaled(x: &Rational, digits: u32) -> BigInt {
    let scaled = x * Rational::from_integer(BigInt::from(10u32.pow(digits)));
    scaled.floor().to_integer()
}

/// Ceiling of x * 10^digits as a BigInt (for decimal display of upper bounds).
pub fn ceil_scaled(x: &Rational, digits: u32) -> BigInt {
    let scaled = x * Rational::from_integer(BigInt::from(10u32.pow(digits)));
    scaled.ceil().to_integer()
}

/// Render a non-negative rational as a fixed-point decimal with `digits`
/// fractional digits, rounding up (for upper bounds) or down (for lower).
pub fn decimal_round(x: &Rational, digits: u32, round_up: bool) -> String {
    let scaled = if round_up { ceil_scaled(x, digits) } else { floor_scaled(x, digits) };
    debug_assert!(!scaled.is_negative(), "bounds displayed here are non-negative");
    let base = BigInt::from(10u32.pow(digits));
    let int_part = &scaled / &base;
    let frac_part = &scaled % &base;
    if digits == 0 {
        format!("{int_part}")
    } else {
        format!("{int_part}.{frac_part:0>width$}", width = digits as usize)
    }
}

/// Render a rational exactly as a decimal if its denominator divides a power
/// of ten (e.g. 1/100 -> "0.01"), else as "p/q". Used for settings echo.
pub fn decimal_exact(x: &Rational) -> String {
    let mut den = x.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", x.numer(), x.denom());
    }
    let digits = twos.max(fives);
    if digits == 0 {
        return format!("{}", x.numer());
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let scaled = (x.abs() * Rational::from_integer(BigInt::from(10u32).pow(digits))).to_integer();
    let base = BigInt::from(10u32).pow(digits);
    let int_part = &scaled / &base;
    let mut frac = format!("{:0>width$}", &scaled % &base, width = digits as usize);
    while frac.ends_with('0') {
        frac.pop();
    }
    format!("{sign}{int_part}.{frac}")
}
