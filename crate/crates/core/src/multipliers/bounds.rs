use serde::Serialize;

use super::profile::iff_check_p_equals_r;
use super::{EngineConfig, ORDER_TOL};
use crate::battery;
use crate::error::MultiplierError;
use crate::funcspace::{AsymptoticOrder, PiecewiseFunction};
use crate::quadrature::{lp_norm_full, lp_norm_on, Exponent};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorNormBounds {
    pub lower: f64,
    pub upper: f64,
    /// `||m||_inf`
    pub sup_m: f64,
    /// Growth constant `A`: `int_eps^1 |m'|^p <= A eps^(-p/p')` for
    /// `1 < p < inf`, `sup_[eps, 1] |m'| <= A / eps` for `p = inf`, and
    /// `||m'||_1` for `p = 1`.
    pub growth_constant: f64,
    /// `B = A (p - 1) / (2^(1-p) - 4^(1-p))`, for `1 < p < inf`.
    pub hardy_constant: Option<f64>,
    /// Battery function realising the lower bound, if it beats `||m||_inf`.
    pub lower_witness: Option<&'static str>,
}

/// Sup of `eps^(p-1) int_eps^1 |m'|^p` (or of `eps sup_[eps,1] |m'|` when
/// `p = inf`) over `eps = 2^(-j/4)`, together with the analytic limit at 0.
fn growth_constant(m_prime: &PiecewiseFunction, p: Exponent, depth: usize) -> f64 {
    let pv = p.value();
    let mut best = 0.0f64;
    let mut acc = 0.0f64;
    let mut prev = 1.0f64;
    for j in 1..=4 * depth {
        let eps = 2f64.powf(-(j as f64) / 4.0);
        let piece = lp_norm_on(m_prime, p, eps, prev).value;
        prev = eps;
        let candidate = if p.is_infinite() {
            acc = acc.max(piece);
            eps * acc
        } else {
            acc += piece.powf(pv);
            acc * eps.powf(pv - 1.0)
        };
        best = best.max(candidate);
    }
    // for m' ~ c t^-1 the weighted quantity tends to a positive constant
    if let AsymptoticOrder::PowLog { coeff, a, b } = m_prime.dominant_order() {
        if (a + 1.0).abs() <= ORDER_TOL && b.abs() <= ORDER_TOL {
            let limit = if p.is_infinite() {
                coeff.abs()
            } else {
                coeff.abs().powf(pv) / (pv - 1.0)
            };
            best = best.max(limit);
        }
    }
    best
}

/// Bounds on the norm of `g -> mg` on `AC_p`. The upper bound follows the
/// constants of the Hardy-inequality argument; the lower bound is the best
/// ratio `|||mg||| / |||g|||` over the battery, and never below `||m||_inf`.
pub fn operator_norm_bounds_with(
    m: &PiecewiseFunction,
    p: Exponent,
    config: &EngineConfig,
) -> Result<OperatorNormBounds, MultiplierError> {
    if !iff_check_p_equals_r(m, p).pass {
        return Err(MultiplierError::NotMultiplier { p: p.value() });
    }
    let m_prime = m.derivative();
    let sup_m = lp_norm_full(m, Exponent::infinity()).value();
    let pv = p.value();
    let (growth, hardy, upper) = if p.is_one() {
        let a = lp_norm_full(&m_prime, p).value();
        (a, None, sup_m + a)
    } else if p.is_infinite() {
        let a = growth_constant(&m_prime, p, config.depth);
        (a, None, sup_m + 2.0 * a)
    } else {
        let a = growth_constant(&m_prime, p, config.depth);
        let b = a * (pv - 1.0) / (2f64.powf(1.0 - pv) - 4f64.powf(1.0 - pv));
        let inner = b * (pv / (pv - 1.0)).powf(pv) + a * 2f64.powf(pv / p.conjugate());
        (a, Some(b), sup_m + inner.powf(1.0 / pv))
    };

    let mut lower = sup_m;
    let mut lower_witness = None;
    for (name, g) in battery::members(p) {
        let ng = lp_norm_full(&g.derivative(), p).value();
        if ng == 0.0 {
            continue;
        }
        let ratio = lp_norm_full(&m.mul(&g).derivative(), p).value() / ng;
        if ratio > lower {
            lower = ratio;
            lower_witness = Some(name);
        }
    }
    Ok(OperatorNormBounds {
        lower,
        upper,
        sup_m,
        growth_constant: growth,
        hardy_constant: hardy,
        lower_witness,
    })
}

pub fn operator_norm_bounds(m: &PiecewiseFunction, p: Exponent) -> Result<OperatorNormBounds, MultiplierError> {
    operator_norm_bounds_with(m, p, &EngineConfig::default())
}
