use serde::Serialize;

use super::profile::{dyadic_profile, DyadicProfile};
use super::{EngineConfig, ORDER_TOL};
use crate::algebra::CONTINUITY_TOL;
use crate::error::MultiplierError;
use crate::fit::DyadicRates;
use crate::funcspace::{classify_lp_at_zero, AsymptoticOrder, PiecewiseFunction};
use crate::quadrature::Exponent;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SufficientCheck {
    pub pass: bool,
    /// `1/v = 1/p - 1/r`
    pub v: f64,
    pub in_lv: bool,
    pub continuous: bool,
    /// The summands `(2^(-n/r') ||P_n m'||_p)^p` behave like
    /// `2^(-n series_exponent) L_n^series_log_power`.
    #[serde(serialize_with = "crate::serde_f64::serialize")]
    pub series_exponent: f64,
    pub series_log_power: f64,
    pub series_converges: bool,
    #[serde(serialize_with = "crate::serde_f64::serialize_vec")]
    pub partial_sums: Vec<f64>,
    /// Rates fitted to the summands over the tail of the profile.
    pub empirical: Option<DyadicRates>,
    pub empirical_converges: Option<bool>,
    pub profile: DyadicProfile,
}

/// Series exponent and log power of `(2^(-n/r') ||P_n m'||_p)^p` read off the
/// dominant order `c t^a L^b` of `m'`: the block mass of `|m'|^p` scales like
/// `2^(-n (ap + 1)) L_n^(bp)`.
fn series_order(m_prime: &PiecewiseFunction, p: Exponent, r: Exponent) -> (f64, f64) {
    match m_prime.dominant_order() {
        AsymptoticOrder::Zero => (f64::INFINITY, 0.0),
        AsymptoticOrder::PowLog { a, b, .. } => {
            let pv = p.value();
            (pv * r.conj_recip() + a * pv + 1.0, b * pv)
        }
    }
}

pub fn sufficient_check_with(
    m: &PiecewiseFunction,
    p: Exponent,
    r: Exponent,
    config: &EngineConfig,
) -> Result<SufficientCheck, MultiplierError> {
    if !(r.value() > p.value() && p.value() > 1.0) {
        return Err(MultiplierError::ExponentOrder {
            p: p.value(),
            r: r.value(),
        });
    }
    let inv_v = p.recip() - r.recip();
    let v = 1.0 / inv_v;
    let in_lv = classify_lp_at_zero(m, Exponent::new(v)?).is_convergent();
    let continuous = m.continuity_report().is_continuous(CONTINUITY_TOL);
    let (gamma, big_b) = series_order(&m.derivative(), p, r);
    let series_converges = gamma > ORDER_TOL || (gamma >= -ORDER_TOL && big_b < -1.0 - ORDER_TOL);

    let profile = dyadic_profile(m, p, r, config.depth)?;
    let partial_sums = profile.partial_sums();
    let pv = p.value();
    let samples: Vec<(usize, f64)> = profile
        .weighted
        .iter()
        .enumerate()
        .map(|(i, w)| (i + 1, w.powf(pv)))
        .filter(|&(n, _)| n >= super::profile::FIT_START.min(config.depth / 2).max(1))
        .collect();
    let empirical = crate::fit::dyadic_rates(&samples);
    let empirical_converges = empirical.map(|e| e.rate > 0.01 || (e.rate >= -0.01 && e.log_power < -1.0));
    Ok(SufficientCheck {
        pass: in_lv && continuous && series_converges,
        v,
        in_lv,
        continuous,
        series_exponent: gamma,
        series_log_power: big_b,
        series_converges,
        partial_sums,
        empirical,
        empirical_converges,
        profile,
    })
}

pub fn sufficient_check(
    m: &PiecewiseFunction,
    p: Exponent,
    r: Exponent,
) -> Result<SufficientCheck, MultiplierError> {
    sufficient_check_with(m, p, r, &EngineConfig::default())
}
