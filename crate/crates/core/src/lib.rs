//! Computational toolkit for the algebras `AC_p` of absolutely continuous
//! functions `f` on `[0, 1]` with `f(0) = 0` and `f' in L^p`, normed by
//! `|||f||| = ||f'||_p`, and for pointwise multipliers between them.
//!
//! Functions are piecewise sums of power-log terms `c t^a (1 - ln t)^b`
//! ([`funcspace`]), a class closed under products and derivatives whose
//! integrability at `0+` is decided exactly from the dominant term.
//! [`quadrature`] supplies numerical norms that cross-check those decisions,
//! [`algebra`] the Banach-algebra layer and [`multipliers`] the multiplier
//! tests.

pub mod algebra;
pub mod battery;
pub mod error;
pub mod fit;
pub mod funcspace;
pub mod multipliers;
pub mod quadrature;

pub(crate) mod serde_f64;

pub use error::{AlgebraError, FuncError, MultiplierError, ParseError, QuadError};
pub use funcspace::{parse, AsymptoticOrder, PiecewiseFunction};
pub use quadrature::Exponent;
