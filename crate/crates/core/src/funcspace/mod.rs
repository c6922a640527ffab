//! Piecewise power-log functions on `(0, 1]` and their exact calculus.

mod parse;
mod piecewise;
mod term;

use serde::{Deserialize, Serialize};

pub use parse::parse;
pub use piecewise::{AsymptoticOrder, BreakpointJump, ContinuityReport, LimitAtZero, PiecewiseFunction};
pub use term::{dominance_cmp, log_factor, PowLogTerm, TermSum, COEFF_TOL, EXPONENT_TOL};

use crate::quadrature::Exponent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Integrability {
    Convergent,
    Divergent,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LpClassification {
    pub verdict: Integrability,
    pub order: AsymptoticOrder,
}

impl LpClassification {
    pub fn is_convergent(&self) -> bool {
        self.verdict == Integrability::Convergent
    }
}

/// Whether `int_0 t^a (1 - ln t)^b dt` converges at `0+`.
pub fn power_log_integrable(a: f64, b: f64) -> bool {
    a > -1.0 + EXPONENT_TOL || ((a + 1.0).abs() <= EXPONENT_TOL && b < -1.0 - EXPONENT_TOL)
}

/// Decides `f in L^p` near `0+` from the dominant order of the first piece.
///
/// The remaining pieces live on intervals bounded away from zero, where every
/// term is bounded. For `p = inf` the verdict is boundedness of the dominant term.
pub fn classify_lp_at_zero(f: &PiecewiseFunction, p: Exponent) -> LpClassification {
    let order = f.dominant_order();
    let convergent = match order {
        AsymptoticOrder::Zero => true,
        AsymptoticOrder::PowLog { a, b, .. } => {
            if p.is_infinite() {
                order.is_bounded()
            } else {
                power_log_integrable(a * p.value(), b * p.value())
            }
        }
    };
    LpClassification {
        verdict: if convergent {
            Integrability::Convergent
        } else {
            Integrability::Divergent
        },
        order,
    }
}
