//! Exact univariate polynomial arithmetic over ℤ, real-root counting and
//! isolation, and comparisons of real algebraic numbers.

pub mod algebraic;
pub mod gcd;
pub mod interval;
pub mod intpoly;
pub mod isolate;
pub mod sturm;

pub use algebraic::{compare, compare_rational, image_cmp, image_equals, poly_value};
pub use gcd::{coprime_fast, is_squarefree, poly_gcd, squarefree_decomposition, squarefree_part};
pub use interval::RatInterval;
pub use intpoly::{parse_coefficients, parse_rational, poly_compose, IntPoly};
pub use isolate::{
    cauchy_bound, dyadic_between, isolate_real_roots, isolate_squarefree, refine_interval, simplest_between,
    IsolatingInterval, RootKind,
};
pub use sturm::{sturm_count, Bound, SturmSequence};
