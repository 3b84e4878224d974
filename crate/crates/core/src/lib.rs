pub mod error;
pub mod fdmod;
pub mod field;
pub mod gdim;
pub mod ground;
pub mod hecke;
pub mod klr;
pub mod matrix;
pub mod polyring;
pub mod report;
pub mod scalar;
pub mod weyl;

pub use error::{Error, Result};
pub use field::{Field, ParamField, Rat};
pub use scalar::Qp;

/// Hecke-side scalars, `Q(p)`.
pub type Scalar = Qp;
/// KLR operators over `Q`.
pub type KlrOp = klr::KlrOperator<Rat>;
/// Finite-dimensional KLR modules over `Q`.
pub type KlrModule = fdmod::FDModule<Rat>;
/// Hecke modules over `Q(p)`.
pub type HeckeMod = hecke::HeckeModule<Qp>;
