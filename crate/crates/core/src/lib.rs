//! Exact cyclotomic expansions and colored Jones polynomials of double twist
//! knots.
//!
//! All values live in `Z[A, A^-1]` ([`LaurentPoly`]) with `𝔮 = A^2` and
//! `q = A^4`; [`LaurentFraction`] carries the intermediate sums that are only
//! integral after scaling by a factorial.

pub mod bailey;
pub mod cyclotomic;
pub mod error;
pub mod fraction;
pub mod laurent;
pub mod numeric;
pub mod qcalc;
pub mod render;
pub mod skein;

pub use cyclotomic::{CoeffTable, JonesResult, KnotSpec, Region, Route};
pub use error::{Error, Result};
pub use fraction::LaurentFraction;
pub use laurent::LaurentPoly;
pub use numeric::{eval_unit_root, HiComplex};
pub use qcalc::QSymbolCache;
pub use render::{render, render_latex, Variable};
