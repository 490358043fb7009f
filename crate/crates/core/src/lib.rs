//! Smooth plane tropical curves, their parabolic locus, and numerical
//! certification that log-inflection points of patchworked complex curves
//! concentrate at the midpoints of bounded edges.

pub mod curve;
pub mod cxcurve;
pub mod error;
pub mod families;
pub mod lattice;
pub mod patchwork;
mod text;
pub mod troppoly;
pub mod verify;

pub use curve::{dual_curve, parabolic_locus, ParabolicLocus, TropicalCurve};
pub use cxcurve::{critical_points, ComplexLaurentPoly, CriticalSet, TorusPoint};
pub use error::{Error, Result};
pub use lattice::{LatticePoint, LatticePolygon, LatticeVector, Rational, RationalPoint};
pub use patchwork::{classify_twist, synthesize_signs, twist_set, PatchworkFamily, Twist, TwistSet};
pub use troppoly::{regular_subdivision, RegularSubdivision, TropicalNumber, TropicalPolynomial};
pub use verify::{verify_theorem, verify_twists, VerificationReport, VerifyOptions};
