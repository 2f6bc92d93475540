//! Exact certification of real rational maps of the projective line whose
//! periodic points are all real.
//!
//! The crate is organised bottom-up: [`exactpoly`] provides integer
//! polynomials, Sturm sequences and certified algebraic numbers; [`ratmap`]
//! iterates maps and classifies multipliers; [`invariants`] computes exact
//! preimages of finite unions of arcs; [`realcert`] turns these into
//! certificates; [`families`] generates the standard example maps.

pub mod budget;
pub mod error;
pub mod exactpoly;
pub mod families;
pub mod invariants;
pub mod ratmap;
pub mod realcert;

pub use budget::Budget;
pub use error::{Error, Result};
pub use exactpoly::{IntPoly, IsolatingInterval, RootKind};
pub use invariants::CircleSet;
pub use ratmap::{ProjPoint, RationalMap};

/// Exact rational scalar, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
