//! Combines per-range upper bounds into global conclusions. Each piece
//! states "for every final slope in [beta_lo, beta_hi] the area is at most
//! bound" together with where that claim came from. Composing pieces into
//! an area bound or a rotation bound only succeeds when the provenance of
//! every piece is machine-checkable and the ranges chain without gaps.

use crate::engine::BoundCertificate;
use crate::kernel::{PythagoreanAngle, Rational};
use crate::oracle;
use num_traits::Zero;
use std::fmt;

/// Where a range bound came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Produced by a finished branch-and-bound run in this process.
    BnbCertificate,
    /// The elementary secant bound for small rotation angles.
    Secant,
    /// Stated without a checkable derivation. Composers reject these.
    Claimed,
}

impl Provenance {
    fn label(self) -> &'static str {
        match self {
            Provenance::BnbCertificate => "bnb_certificate",
            Provenance::Secant => "secant",
            Provenance::Claimed => "claimed",
        }
    }
}

/// An upper bound on the area of any shape that can traverse the hallway
/// while ending at a slope anywhere in [beta_lo, beta_hi].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeBound {
    beta_lo: PythagoreanAngle,
    beta_hi: PythagoreanAngle,
    bound: Rational,
    provenance: Provenance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComposeError {
    RangeOutOfOrder,
    NonPositiveBound,
    SecantUndefined,
    EmptyInput,
    /// Piece index (after sorting by range start) with unverified provenance.
    UnverifiedPiece(usize),
    /// The lowest range must start at an angle whose secant is below the
    /// target area, so the critical slope is certainly covered.
    FirstPieceStartsTooHigh,
    /// Coverage breaks after this angle.
    CoverageGap(PythagoreanAngle),
    DoesNotReachVertical,
    DoesNotStartAtZero,
    /// Piece index whose bound fails to be strictly below the reference
    /// area, so it excludes nothing.
    BoundNotBelowReference(usize),
}

impl fmt::Display for ComposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComposeError::RangeOutOfOrder => write!(f, "range start exceeds range end"),
            ComposeError::NonPositiveBound => write!(f, "bound must be positive"),
            ComposeError::SecantUndefined => {
                write!(f, "secant bound needs an angle strictly between 0 and 90 degrees")
            }
            ComposeError::EmptyInput => write!(f, "no pieces to compose"),
            ComposeError::UnverifiedPiece(i) => {
                write!(f, "piece {i} has unverified provenance and cannot be composed")
            }
            ComposeError::FirstPieceStartsTooHigh => {
                write!(f, "first piece starts above the critical slope")
            }
            ComposeError::CoverageGap(a) => write!(f, "coverage gap after angle {a}"),
            ComposeError::DoesNotReachVertical => write!(f, "pieces do not reach 90 degrees"),
            ComposeError::DoesNotStartAtZero => write!(f, "pieces do not start at 0 degrees"),
            ComposeError::BoundNotBelowReference(i) => {
                write!(f, "piece {i} does not push the bound below the reference area")
            }
        }
    }
}

impl std::error::Error for ComposeError {}

impl RangeBound {
    pub fn new(
        beta_lo: PythagoreanAngle,
        beta_hi: PythagoreanAngle,
        bound: Rational,
        provenance: Provenance,
    ) -> Result<Self, ComposeError> {
        if beta_lo > beta_hi {
            return Err(ComposeError::RangeOutOfOrder);
        }
        if bound <= Rational::zero() {
            return Err(ComposeError::NonPositiveBound);
        }
        Ok(RangeBound { beta_lo, beta_hi, bound, provenance })
    }

    /// The range certified by a finished engine run: the final-slope window
    /// of its problem, except that a run whose window is the single slope
    /// 90 degrees constrains every final slope from the last corridor angle
    /// up, because such a run never assumes anything about the final
    /// position at all.
    pub fn from_certificate(cert: &BoundCertificate) -> Self {
        let spec = &cert.spec;
        let (lo, hi) = if spec.min_final().is_right() {
            (spec.slopes().last().unwrap().clone(), PythagoreanAngle::right())
        } else {
            (spec.min_final().clone(), spec.max_final().clone())
        };
        RangeBound {
            beta_lo: lo,
            beta_hi: hi,
            bound: cert.upper.clone(),
            provenance: Provenance::BnbCertificate,
        }
    }

    pub fn beta_lo(&self) -> &PythagoreanAngle {
        &self.beta_lo
    }

    pub fn beta_hi(&self) -> &PythagoreanAngle {
        &self.beta_hi
    }

    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }
}

/// The secant bound: a shape that rotates by at most beta while crossing
/// the hallway fits in a strip of width 1 and is cut off at slope beta, so
/// its area is at most sec(beta). Because sec is increasing, one piece
/// covers every final slope in [0, beta].
pub fn sec_bound(beta: &PythagoreanAngle) -> Result<RangeBound, ComposeError> {
    if beta.is_zero() || beta.is_right() {
        return Err(ComposeError::SecantUndefined);
    }
    let sec = beta.trig_ratios().sec.unwrap();
    RangeBound::new(PythagoreanAngle::zero(), beta.clone(), sec, Provenance::Secant)
}

/// What a successful composition established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoremValue {
    /// Every admissible shape has area at most this.
    AreaBound(Rational),
    /// Every shape of sufficient area rotates by at least this angle.
    RotationBound(PythagoreanAngle),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremResult {
    pub value: TheoremValue,
    /// The pieces used, sorted by range start.
    pub pieces: Vec<RangeBound>,
}

fn sorted_verified(pieces: &[RangeBound]) -> Result<Vec<RangeBound>, ComposeError> {
    if pieces.is_empty() {
        return Err(ComposeError::EmptyInput);
    }
    let mut sorted = pieces.to_vec();
    sorted.sort_by(|a, b| a.beta_lo.cmp(&b.beta_lo));
    for (i, p) in sorted.iter().enumerate() {
        if p.provenance == Provenance::Claimed {
            return Err(ComposeError::UnverifiedPiece(i));
        }
    }
    Ok(sorted)
}

fn check_chain(sorted: &[RangeBound]) -> Result<PythagoreanAngle, ComposeError> {
    let mut cover = sorted[0].beta_hi.clone();
    for p in &sorted[1..] {
        if p.beta_lo > cover {
            return Err(ComposeError::CoverageGap(cover));
        }
        if p.beta_hi > cover {
            cover = p.beta_hi.clone();
        }
    }
    Ok(cover)
}

/// Composes range bounds into a global area bound. A shape of maximal area
/// must rotate to some final slope beta0 with sec(beta0) at least the
/// area, so the pieces only need to cover [beta0, 90]; it is enough that
/// the first piece starts at an angle whose secant is at most the best
/// known sofa area, and that coverage then chains up to 90 degrees. The
/// resulting bound is the worst piece bound.
pub fn compose_area_bound(pieces: &[RangeBound]) -> Result<TheoremResult, ComposeError> {
    let sorted = sorted_verified(pieces)?;
    let first = &sorted[0];
    if first.beta_lo.is_right() {
        return Err(ComposeError::FirstPieceStartsTooHigh);
    }
    if let Some(sec) = first.beta_lo.trig_ratios().sec {
        if sec > oracle::gerver_area().lo {
            return Err(ComposeError::FirstPieceStartsTooHigh);
        }
    }
    let cover = check_chain(&sorted)?;
    if !cover.is_right() {
        return Err(ComposeError::DoesNotReachVertical);
    }
    let value = sorted.iter().map(|p| p.bound.clone()).max().unwrap();
    Ok(TheoremResult { value: TheoremValue::AreaBound(value), pieces: sorted })
}

/// Composes range bounds into a rotation bound: if every final slope in
/// [0, theta] forces an area strictly below `reference_area`, then any
/// shape of at least that area must rotate past theta. The pieces must
/// start at 0, chain without gaps, and each bound must be strictly below
/// the reference.
pub fn compose_rotation_bound(
    pieces: &[RangeBound],
    reference_area: &Rational,
) -> Result<TheoremResult, ComposeError> {
    let sorted = sorted_verified(pieces)?;
    if !sorted[0].beta_lo.is_zero() {
        return Err(ComposeError::DoesNotStartAtZero);
    }
    for (i, p) in sorted.iter().enumerate() {
        if &p.bound >= reference_area {
            return Err(ComposeError::BoundNotBelowReference(i));
        }
    }
    let cover = check_chain(&sorted)?;
    Ok(TheoremResult { value: TheoremValue::RotationBound(cover), pieces: sorted })
}

/// Renders a composition as a plain-text ledger: one line per piece, then
/// the conclusion. All numbers are exact.
pub fn serialize_theorem(result: &TheoremResult) -> String {
    let mut out = String::new();
    for p in &result.pieces {
        out.push_str(&format!(
            "piece: from={} to={} bound={} provenance={}\n",
            p.beta_lo,
            p.beta_hi,
            p.bound,
            p.provenance.label()
        ));
    }
    match &result.value {
        TheoremValue::AreaBound(v) => out.push_str(&format!("conclusion: area_upper_bound={v}\n")),
        TheoremValue::RotationBound(a) => {
            out.push_str(&format!("conclusion: rotation_lower_bound={a}\n"))
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    fn ang(a: i64, b: i64, c: i64) -> PythagoreanAngle {
        PythagoreanAngle::from_triple(a, b, c).unwrap()
    }

    fn piece(lo: PythagoreanAngle, hi: PythagoreanAngle, bound: Rational) -> RangeBound {
        RangeBound::new(lo, hi, bound, Provenance::BnbCertificate).unwrap()
    }

    #[test]
    fn sec_bound_values() {
        let p = sec_bound(&ang(3, 4, 5)).unwrap();
        assert_eq!(p.bound(), &rat(5, 4));
        assert!(p.beta_lo().is_zero());
        assert_eq!(p.beta_hi(), &ang(3, 4, 5));
        assert_eq!(p.provenance(), Provenance::Secant);
        assert_eq!(sec_bound(&PythagoreanAngle::right()), Err(ComposeError::SecantUndefined));
        assert_eq!(sec_bound(&PythagoreanAngle::zero()), Err(ComposeError::SecantUndefined));
    }

    #[test]
    fn range_bound_validation() {
        assert_eq!(
            RangeBound::new(ang(4, 3, 5), ang(3, 4, 5), rat(2, 1), Provenance::Secant),
            Err(ComposeError::RangeOutOfOrder)
        );
        assert_eq!(
            RangeBound::new(ang(3, 4, 5), ang(4, 3, 5), rat(0, 1), Provenance::Secant),
            Err(ComposeError::NonPositiveBound)
        );
    }

    #[test]
    fn area_composition_takes_worst_bound() {
        // sec(56,33,65) = 65/33 < 4439/2000 holds, so the secant piece may
        // anchor the chain.
        let pieces = vec![
            piece(ang(56, 33, 65), ang(24, 7, 25), rat(221, 100)),
            sec_bound(&ang(56, 33, 65)).unwrap(),
            piece(ang(24, 7, 25), PythagoreanAngle::right(), rat(237, 100)),
        ];
        let r = compose_area_bound(&pieces).unwrap();
        assert_eq!(r.value, TheoremValue::AreaBound(rat(237, 100)));
        assert_eq!(r.pieces[0].provenance(), Provenance::Secant);
    }

    #[test]
    fn area_composition_rejects_gaps_and_claims() {
        let anchored = sec_bound(&ang(56, 33, 65)).unwrap();
        let top = piece(ang(24, 7, 25), PythagoreanAngle::right(), rat(237, 100));
        assert_eq!(
            compose_area_bound(&[anchored.clone(), top.clone()]),
            Err(ComposeError::CoverageGap(ang(56, 33, 65)))
        );
        let claimed = RangeBound::new(
            ang(56, 33, 65),
            ang(24, 7, 25),
            rat(221, 100),
            Provenance::Claimed,
        )
        .unwrap();
        assert_eq!(
            compose_area_bound(&[anchored.clone(), claimed, top.clone()]),
            Err(ComposeError::UnverifiedPiece(1))
        );
        let middle = piece(ang(56, 33, 65), ang(24, 7, 25), rat(221, 100));
        assert_eq!(
            compose_area_bound(&[anchored.clone(), middle.clone()]),
            Err(ComposeError::DoesNotReachVertical)
        );
        // Starting the chain above the critical slope is rejected: the
        // secant of (4,3,5) is 5/3 but a chain starting at (24,7,25) has
        // sec = 25/7 > 2.2195.
        let high = piece(ang(24, 7, 25), PythagoreanAngle::right(), rat(237, 100));
        assert_eq!(compose_area_bound(&[high]), Err(ComposeError::FirstPieceStartsTooHigh));
        assert_eq!(compose_area_bound(&[]), Err(ComposeError::EmptyInput));
    }

    #[test]
    fn rotation_composition() {
        let reference = rat(11, 5);
        let pieces = vec![
            piece(PythagoreanAngle::zero(), ang(33, 56, 65), rat(13, 6)),
            piece(ang(33, 56, 65), ang(84, 13, 85), rat(219, 100)),
        ];
        let r = compose_rotation_bound(&pieces, &reference).unwrap();
        assert_eq!(r.value, TheoremValue::RotationBound(ang(84, 13, 85)));

        // A piece whose bound reaches the reference area proves nothing.
        let weak = vec![
            piece(PythagoreanAngle::zero(), ang(33, 56, 65), rat(13, 6)),
            piece(ang(33, 56, 65), ang(84, 13, 85), rat(11, 5)),
        ];
        assert_eq!(
            compose_rotation_bound(&weak, &reference),
            Err(ComposeError::BoundNotBelowReference(1))
        );

        // Chains must start at zero.
        let late = vec![piece(ang(33, 56, 65), ang(84, 13, 85), rat(219, 100))];
        assert_eq!(
            compose_rotation_bound(&late, &reference),
            Err(ComposeError::DoesNotStartAtZero)
        );
    }

    #[test]
    fn theorem_serialization_is_exact() {
        let pieces = vec![
            sec_bound(&ang(56, 33, 65)).unwrap(),
            piece(ang(56, 33, 65), PythagoreanAngle::right(), rat(237, 100)),
        ];
        let r = compose_area_bound(&pieces).unwrap();
        let text = serialize_theorem(&r);
        assert_eq!(
            text,
            "piece: from=0 1 1 to=56 33 65 bound=65/33 provenance=secant\n\
             piece: from=56 33 65 to=1 0 1 bound=237/100 provenance=bnb_certificate\n\
             conclusion: area_upper_bound=237/100\n"
        );
    }
}
