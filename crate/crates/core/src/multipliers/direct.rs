use std::cmp::Ordering;

use serde::Serialize;

use super::profile::FIT_START;
use super::{EngineConfig, ORDER_TOL};
use crate::error::MultiplierError;
use crate::fit::{self, DyadicRates};
use crate::funcspace::{
    classify_lp_at_zero, dominance_cmp, power_log_integrable, AsymptoticOrder, PiecewiseFunction,
};
use crate::quadrature::{abs_pow_integral, Exponent, RunningIntegral};

/// Relative size below which equal-order leading coefficients count as cancelled.
const CANCEL_TOL: f64 = 1e-9;
/// Jump of `mg` at a breakpoint that still counts as continuous.
const JUMP_TOL: f64 = 1e-10;
/// Values of `(mg)'` this small relative to its two summands are treated as 0.
const NOISE_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DirectOutcome {
    Member,
    NotMember,
    NumericInconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectReport {
    pub outcome: DirectOutcome,
    /// The witness derivative `g'`, in expression syntax.
    pub witness: String,
    /// Leading order of `(mg)'`; `None` when the two leading terms cancel.
    pub product_order: Option<AsymptoticOrder>,
    pub cancellation: bool,
    pub limit_ok: bool,
    pub continuity_ok: bool,
    /// `Some(member)` when the asymptotic analysis is decisive.
    pub analytic: Option<bool>,
    /// `int |(mg)'|^p` over block `n` (block sup for `p = inf`).
    #[serde(serialize_with = "crate::serde_f64::serialize_vec")]
    pub block_masses: Vec<f64>,
    pub numeric: Option<DyadicRates>,
    pub numeric_outcome: DirectOutcome,
}

fn product(x: AsymptoticOrder, y: AsymptoticOrder) -> AsymptoticOrder {
    match (x, y) {
        (
            AsymptoticOrder::PowLog { coeff: c1, a: a1, b: b1 },
            AsymptoticOrder::PowLog { coeff: c2, a: a2, b: b2 },
        ) => AsymptoticOrder::PowLog {
            coeff: c1 * c2,
            a: a1 + a2,
            b: b1 + b2,
        },
        _ => AsymptoticOrder::Zero,
    }
}

/// Leading order of `int_0^t` of a function with the given integrable order.
fn antiderivative_order(o: AsymptoticOrder) -> AsymptoticOrder {
    match o {
        AsymptoticOrder::Zero => AsymptoticOrder::Zero,
        AsymptoticOrder::PowLog { coeff, a, b } => {
            if (a + 1.0).abs() <= ORDER_TOL {
                AsymptoticOrder::PowLog {
                    coeff: coeff / -(b + 1.0),
                    a: 0.0,
                    b: b + 1.0,
                }
            } else {
                AsymptoticOrder::PowLog {
                    coeff: coeff / (a + 1.0),
                    a: a + 1.0,
                    b,
                }
            }
        }
    }
}

/// Leading order of a sum of two orders, `None` on cancellation.
fn sum_order(x: AsymptoticOrder, y: AsymptoticOrder) -> Option<AsymptoticOrder> {
    match (x, y) {
        (AsymptoticOrder::Zero, o) | (o, AsymptoticOrder::Zero) => Some(o),
        (
            AsymptoticOrder::PowLog { coeff: c1, a: a1, b: b1 },
            AsymptoticOrder::PowLog { coeff: c2, a: a2, b: b2 },
        ) => {
            if (a1 - a2).abs() <= ORDER_TOL && (b1 - b2).abs() <= ORDER_TOL {
                let c = c1 + c2;
                if c.abs() <= CANCEL_TOL * c1.abs().max(c2.abs()) {
                    None
                } else {
                    Some(AsymptoticOrder::PowLog { coeff: c, a: a1, b: b1 })
                }
            } else if dominance_cmp((a1, b1), (a2, b2)) == Ordering::Less {
                Some(x)
            } else {
                Some(y)
            }
        }
    }
}

fn order_in_lp(o: AsymptoticOrder, p: Exponent) -> bool {
    match o {
        AsymptoticOrder::Zero => true,
        AsymptoticOrder::PowLog { a, b, .. } => {
            if p.is_infinite() {
                o.is_bounded()
            } else {
                power_log_integrable(a * p.value(), b * p.value())
            }
        }
    }
}

/// `g' = t^(-1/r) L^(-2/r)`: in `L^r`, but only by a logarithmic margin.
pub fn log_damped_witness(r: Exponent) -> PiecewiseFunction {
    PiecewiseFunction::term(1.0, -r.recip(), -2.0 * r.recip())
}

/// `g' = t^(-1/r) L^-beta` with `beta = b + 1/p`, where `c t^a L^b` is the
/// dominant order of `m`. For `a = -1/p + 1/r` this puts `|m g'|^p` exactly
/// at `t^-1 L^-1`, the largest non-integrable order, while `g'` stays in
/// `L^r` as long as `beta > 1/r`. `None` when that fails.
pub fn critical_witness(m: &PiecewiseFunction, p: Exponent, r: Exponent) -> Option<PiecewiseFunction> {
    let AsymptoticOrder::PowLog { b, .. } = m.dominant_order() else {
        return None;
    };
    let beta = b + p.recip();
    let in_lr = if r.is_infinite() {
        beta >= 0.0
    } else {
        beta * r.value() > 1.0 + ORDER_TOL
    };
    in_lr.then(|| PiecewiseFunction::term(1.0, -r.recip(), -beta))
}

/// Decides whether `mg in AC_p` for `g = int_0^t g'`. The leading orders of
/// `m' g` and `m g'` settle the question unless they cancel; the dyadic block
/// masses of the numerically evaluated `(mg)'` are reported as a cross-check
/// and decide alone in the cancelling case.
pub fn direct_check_with(
    m: &PiecewiseFunction,
    g_prime: &PiecewiseFunction,
    p: Exponent,
    r: Exponent,
    config: &EngineConfig,
) -> Result<DirectReport, MultiplierError> {
    if !classify_lp_at_zero(g_prime, r).is_convergent() {
        return Err(MultiplierError::WitnessNotInLr { r: r.value() });
    }
    let m_prime = m.derivative();
    let g_order = antiderivative_order(g_prime.dominant_order());
    let product_order = sum_order(
        product(m_prime.dominant_order(), g_order),
        product(m.dominant_order(), g_prime.dominant_order()),
    );
    let limit_ok = product(m.dominant_order(), g_order).limit().is_zero();

    let running = RunningIntegral::new(g_prime, false)?;
    let continuity_ok = m
        .continuity_report()
        .jumps
        .iter()
        .all(|j| (j.size() * running.at(j.at)).abs() <= JUMP_TOL);

    let h = |t: f64| {
        let (x, y) = (m_prime.value(t) * running.at(t), m.value(t) * g_prime.value(t));
        // exact cancellation leaves rounding noise only
        if (x + y).abs() <= NOISE_TOL * (x.abs() + y.abs()) {
            0.0
        } else {
            x + y
        }
    };
    let mut cuts: Vec<f64> = m.breakpoints().to_vec();
    cuts.extend_from_slice(g_prime.breakpoints());
    let block_masses: Vec<f64> = (1..=config.depth)
        .map(|n| {
            let hi = 2f64.powi(1 - n as i32);
            let lo = 0.5 * hi;
            if p.is_infinite() {
                (0..=64)
                    .map(|j| h(lo + (hi - lo) * j as f64 / 64.0).abs())
                    .fold(0.0, f64::max)
            } else {
                abs_pow_integral(h, p.value(), lo, hi, &cuts)
            }
        })
        .collect();
    let samples: Vec<(usize, f64)> = block_masses
        .iter()
        .enumerate()
        .map(|(i, &w)| (i + 1, w))
        .filter(|&(n, _)| n >= FIT_START.min(config.depth / 2).max(1))
        .collect();
    let numeric = fit::dyadic_rates(&samples);
    let numeric_outcome = numeric_outcome(numeric, p, &block_masses);

    let analytic = product_order.map(|o| order_in_lp(o, p));
    let outcome = if !limit_ok || !continuity_ok {
        DirectOutcome::NotMember
    } else {
        match analytic {
            Some(true) => DirectOutcome::Member,
            Some(false) => DirectOutcome::NotMember,
            None => numeric_outcome,
        }
    };
    Ok(DirectReport {
        outcome,
        witness: g_prime.to_string(),
        product_order,
        cancellation: product_order.is_none(),
        limit_ok,
        continuity_ok,
        analytic,
        block_masses,
        numeric,
        numeric_outcome,
    })
}

/// Reads membership off the fitted rates of the block masses `w_n`, which for
/// an integrand of order `t^A L^B` scale like `2^(-n (A + 1)) L_n^B`.
fn numeric_outcome(rates: Option<DyadicRates>, p: Exponent, masses: &[f64]) -> DirectOutcome {
    const FLAT: f64 = 0.05;
    let Some(DyadicRates { rate, log_power }) = rates else {
        return if masses.iter().all(|w| *w == 0.0) {
            DirectOutcome::Member
        } else {
            DirectOutcome::NumericInconclusive
        };
    };
    // block sups for p = inf, block masses otherwise
    let (member_below, not_member_above) = if p.is_infinite() { (0.1, 0.4) } else { (-1.5, -0.5) };
    if rate > FLAT || (rate >= -FLAT && log_power < member_below) {
        DirectOutcome::Member
    } else if rate < -FLAT || log_power > not_member_above {
        DirectOutcome::NotMember
    } else {
        DirectOutcome::NumericInconclusive
    }
}

pub fn direct_check(
    m: &PiecewiseFunction,
    g_prime: &PiecewiseFunction,
    p: Exponent,
    r: Exponent,
) -> Result<DirectReport, MultiplierError> {
    direct_check_with(m, g_prime, p, r, &EngineConfig::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::parse;

    fn exp(p: f64) -> Exponent {
        Exponent::new(p).unwrap()
    }

    #[test]
    fn smooth_data_is_member() {
        let rep = direct_check(&parse("t").unwrap(), &parse("1").unwrap(), exp(2.0), exp(4.0)).unwrap();
        assert_eq!(rep.outcome, DirectOutcome::Member);
        assert_eq!(rep.numeric_outcome, DirectOutcome::Member);
        // (t^2)' = 2t, block mass 4 int t^2
        let n1 = 4.0 * (1.0 - 0.125) / 3.0;
        assert!((rep.block_masses[0] - n1).abs() < 1e-12);
    }

    #[test]
    fn boundary_witness_for_quarter_power() {
        let m = parse("t^-0.25").unwrap();
        let g = log_damped_witness(exp(4.0));
        let rep = direct_check(&m, &g, exp(2.0), exp(4.0)).unwrap();
        assert_eq!(rep.outcome, DirectOutcome::NotMember);
        let Some(AsymptoticOrder::PowLog { coeff, a, b }) = rep.product_order else {
            panic!("{rep:?}");
        };
        // (1 - r'/v) t^(-1/2) L^(-1/2) with r' = 4/3, v = 4
        assert!((coeff - 2.0 / 3.0).abs() < 1e-12);
        assert!((a + 0.5).abs() < 1e-12 && (b + 0.5).abs() < 1e-12);
        // masses ~ C L_n^-1
        let fit = rep.numeric.unwrap();
        assert!(fit.rate.abs() < 0.01 && (fit.log_power + 1.0).abs() < 0.1, "{fit:?}");
    }

    #[test]
    fn rejects_witness_outside_lr() {
        let m = parse("t^-0.25").unwrap();
        let g = parse("t^-0.25").unwrap();
        assert!(direct_check(&m, &g, exp(2.0), exp(4.0)).is_err());
    }

    #[test]
    fn cancellation_falls_back_to_numerics() {
        // g = 2 t^(1/2), so mg = 2: the leading orders of (mg)' cancel and
        // the limit at 0 is not 0
        let m = parse("t^-0.5").unwrap();
        let g = parse("t^-0.5").unwrap();
        let rep = direct_check(&m, &g, exp(1.5), exp(1.8)).unwrap();
        assert!(rep.cancellation);
        assert!(!rep.limit_ok);
        assert_eq!(rep.outcome, DirectOutcome::NotMember);
    }
}
