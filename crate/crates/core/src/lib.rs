//! Rigorous bounds for the moving sofa problem.
//!
//! The largest shape that can be moved around a right-angled hallway of
//! unit width has an area somewhere between Gerver's construction
//! (about 2.2195) and the classical bound 2*sqrt(2). This crate narrows
//! the gap from above: it computes certified upper bounds by exact
//! rational branch and bound over corridor placements, entirely without
//! floating point, so every reported bound is a theorem about the
//! problem rather than an estimate.
//!
//! The pieces:
//!
//! - [`kernel`]: exact rational arithmetic, Pythagorean angles (angles
//!   with rational sine and cosine), and decimal rendering.
//! - [`region`]: an exact algebra of finite unions of convex polygons
//!   (intersect, union, difference, transform, area, components).
//! - [`scene`]: the geometric primitives of the search: horizontal
//!   strips, rotated corridors, hat-shaped unions of corridor
//!   placements, and butterfly sets constraining the final slope.
//! - [`engine`]: branch and bound over boxes of corridor offsets, with
//!   certified upper and lower bounds at every step.
//! - [`oracle`]: independent cross-checks (closed forms, pinned
//!   constants, brute-force grid bounds) used to validate the engine.
//! - [`composer`]: combines certified per-range bounds into global area
//!   and rotation theorems.
//! - [`profile`]: plain-text problem descriptions, including the bundled
//!   ones.
//! - [`session`]: the interactive and batch command-line front ends.

pub mod composer;
pub mod engine;
pub mod kernel;
pub mod oracle;
pub mod profile;
pub mod region;
pub mod scene;
pub mod session;
