//! Polynomials and localized rational functions in the `kappa` variables,
//! plus truncated graded-dimension series.

pub mod poly;
pub mod ratfn;
pub mod series;

pub use poly::{divided_difference, is_d_invariant, root_poly, Mono, Poly, PolyTerm};
pub use ratfn::{LinForm, RatFn};
pub use series::{gdim_free_block, Series};
