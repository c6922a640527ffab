use serde::Serialize;

use super::{EngineConfig, ORDER_TOL};
use crate::algebra::CONTINUITY_TOL;
use crate::error::MultiplierError;
use crate::fit::{self, DyadicRates};
use crate::funcspace::{classify_lp_at_zero, AsymptoticOrder, PiecewiseFunction};
use crate::quadrature::{lp_norm_on, Exponent};

/// First block used when fitting rates of dyadic sequences.
pub const FIT_START: usize = 10;

/// `||m' chi_(2^-n, 2^-n+1]||_p` for `n = 1..=count`.
pub fn block_norms(m_prime: &PiecewiseFunction, p: Exponent, count: usize) -> Vec<f64> {
    (1..=count)
        .map(|n| {
            let hi = 2f64.powi(1 - n as i32);
            lp_norm_on(m_prime, p, 0.5 * hi, hi).value
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DyadicProfile {
    pub p: Exponent,
    pub r: Exponent,
    pub depth: usize,
    /// `||P_n m'||_p`, `n = 1..=depth`
    #[serde(serialize_with = "crate::serde_f64::serialize_vec")]
    pub block_norms: Vec<f64>,
    /// `2^(-n/r') ||P_n m'||_p`
    #[serde(serialize_with = "crate::serde_f64::serialize_vec")]
    pub weighted: Vec<f64>,
}

pub fn dyadic_profile(
    m: &PiecewiseFunction,
    p: Exponent,
    r: Exponent,
    depth: usize,
) -> Result<DyadicProfile, MultiplierError> {
    if depth == 0 {
        return Err(MultiplierError::Depth);
    }
    let block_norms = block_norms(&m.derivative(), p, depth);
    let weighted = block_norms
        .iter()
        .enumerate()
        .map(|(i, b)| 2f64.powf(-((i + 1) as f64) * r.conj_recip()) * b)
        .collect();
    Ok(DyadicProfile {
        p,
        r,
        depth,
        block_norms,
        weighted,
    })
}

impl DyadicProfile {
    /// Running sums of `weighted^p`; running maxima for `p = inf`.
    pub fn partial_sums(&self) -> Vec<f64> {
        let mut acc = 0.0f64;
        self.weighted
            .iter()
            .map(|w| {
                acc = if self.p.is_infinite() {
                    acc.max(*w)
                } else {
                    acc + w.powf(self.p.value())
                };
                acc
            })
            .collect()
    }

    /// Fitted rates of the weighted terms over `n >= FIT_START`.
    pub fn weighted_rates(&self) -> Option<DyadicRates> {
        let samples: Vec<(usize, f64)> = self
            .weighted
            .iter()
            .enumerate()
            .map(|(i, &w)| (i + 1, w))
            .filter(|&(n, _)| n >= FIT_START.min(self.depth / 2).max(1))
            .collect();
        fit::dyadic_rates(&samples)
    }

    /// Empirical decision on `sup_n 2^(-n/r') ||P_n m'||_p < inf`: the weighted
    /// terms are taken to be unbounded when their fitted geometric rate is
    /// negative, or flat with a positive log power.
    pub fn weighted_sup_finite(&self) -> bool {
        match self.weighted_rates() {
            None => true,
            Some(DyadicRates { rate, log_power }) => {
                !(rate < -SUP_RATE_TOL || (rate <= SUP_RATE_TOL && log_power > SUP_LOG_TOL))
            }
        }
    }
}

const SUP_RATE_TOL: f64 = 0.02;
const SUP_LOG_TOL: f64 = 0.1;

/// Growth of `G(eps) = ||m' chi_[eps, 1]||_p` as `eps -> 0`:
/// bounded, or `G ~ eps^-exponent L^log_power`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthOrder {
    pub bounded: bool,
    pub exponent: f64,
    pub log_power: f64,
}

pub fn growth_order(m_prime: &PiecewiseFunction, p: Exponent) -> GrowthOrder {
    let bounded = GrowthOrder {
        bounded: true,
        exponent: 0.0,
        log_power: 0.0,
    };
    if classify_lp_at_zero(m_prime, p).is_convergent() {
        return bounded;
    }
    let AsymptoticOrder::PowLog { a, b, .. } = m_prime.dominant_order() else {
        return bounded;
    };
    let (exponent, log_power) = if p.is_infinite() {
        (-a, b)
    } else {
        let k = a * p.value() + 1.0;
        if k < -ORDER_TOL {
            (-k / p.value(), b)
        } else {
            // int_eps t^-1 L^B ~ L^(B+1)/(B+1), or ln L when B = -1
            let big_b = b * p.value();
            (0.0, ((big_b + 1.0) / p.value()).max(0.0))
        }
    };
    GrowthOrder {
        bounded: false,
        exponent: exponent.max(0.0),
        log_power,
    }
}

impl GrowthOrder {
    /// Whether `G(eps) = O(eps^-target)`.
    pub fn within(&self, target: f64) -> bool {
        if self.bounded {
            return true;
        }
        if self.exponent < target - ORDER_TOL {
            return true;
        }
        if self.exponent > target + ORDER_TOL {
            return false;
        }
        // same power: a positive power tolerates non-positive log factors,
        // while at power zero any unbounded growth fails
        self.exponent > ORDER_TOL && self.log_power <= ORDER_TOL
    }

    /// Exponent `s` predicted for the log-log slope of `G`.
    pub fn slope(&self) -> f64 {
        if self.bounded {
            0.0
        } else {
            self.exponent
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthFit {
    /// Fitted `s` in `G(eps) ~ C eps^-s`.
    pub slope: f64,
    pub analytic_slope: f64,
    /// `(eps_min, eps_max)`
    pub window: (f64, f64),
}

/// Least-squares slope of `ln G(eps)` against `-ln eps` at `eps = 2^-j`.
pub fn growth_fit(m_prime: &PiecewiseFunction, p: Exponent, config: &EngineConfig) -> GrowthFit {
    let (jmin, jmax) = config.window;
    let blocks = block_norms(m_prime, p, jmax as usize);
    let mut acc = 0.0f64;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        acc = if p.is_infinite() {
            acc.max(*b)
        } else {
            acc + b.powf(p.value())
        };
        let j = (i + 1) as u32;
        let g = if p.is_infinite() { acc } else { acc.powf(p.recip()) };
        if j >= jmin && g > 0.0 && g.is_finite() {
            xs.push(j as f64 * std::f64::consts::LN_2);
            ys.push(g.ln());
        }
    }
    let slope = if xs.len() >= 2 { fit::linear(&xs, &ys).1 } else { 0.0 };
    GrowthFit {
        slope,
        analytic_slope: growth_order(m_prime, p).slope(),
        window: (2f64.powi(-(jmax as i32)), 2f64.powi(-(jmin as i32))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NecessaryCheck {
    pub pass: bool,
    pub continuous: bool,
    /// Only required when `r = p`.
    pub bounded: Option<bool>,
    pub growth_pass: bool,
    pub growth: GrowthOrder,
    /// `1/r'`
    pub target_exponent: f64,
    pub fit: GrowthFit,
}

/// The growth condition `||m' chi_[eps, 1]||_p = O(eps^(-1/r'))` together with
/// continuity on `(0, 1]`; for `r = p` the multiplier must also be bounded.
/// The analytic decision is authoritative, the fit is reported alongside.
pub fn necessary_check_with(
    m: &PiecewiseFunction,
    p: Exponent,
    r: Exponent,
    config: &EngineConfig,
) -> NecessaryCheck {
    let m_prime = m.derivative();
    let continuous = m.continuity_report().is_continuous(CONTINUITY_TOL);
    let bounded = (r == p).then(|| m.dominant_order().is_bounded());
    let growth = growth_order(&m_prime, p);
    let target = r.conj_recip();
    let growth_pass = growth.within(target);
    NecessaryCheck {
        pass: continuous && bounded.unwrap_or(true) && growth_pass,
        continuous,
        bounded,
        growth_pass,
        growth,
        target_exponent: target,
        fit: growth_fit(&m_prime, p, config),
    }
}

pub fn necessary_check(m: &PiecewiseFunction, p: Exponent, r: Exponent) -> NecessaryCheck {
    necessary_check_with(m, p, r, &EngineConfig::default())
}

/// The exact criterion for multipliers of `AC_p` into itself. For `p = 1` the
/// growth condition reduces to `m' in L^1`.
pub fn iff_check_p_equals_r(m: &PiecewiseFunction, p: Exponent) -> NecessaryCheck {
    necessary_check(m, p, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::parse;

    fn exp(p: f64) -> Exponent {
        Exponent::new(p).unwrap()
    }

    #[test]
    fn power_profile_weighted_terms_are_constant() {
        let m = parse("t^-0.25").unwrap();
        let prof = dyadic_profile(&m, exp(2.0), exp(4.0), 40).unwrap();
        // block integral of (1/16) t^-5/2 in closed form
        let c = ((1.0 - 2f64.powf(-1.5)) / 24.0).sqrt();
        for (i, w) in prof.weighted.iter().enumerate() {
            assert!((w - c).abs() < 1e-12 * c, "n = {}: {w}", i + 1);
        }
        assert!((c - 0.16412).abs() < 1e-5);
        assert!(prof.weighted_sup_finite());
    }

    #[test]
    fn linear_profile() {
        let prof = dyadic_profile(&parse("t").unwrap(), exp(2.0), exp(4.0), 20).unwrap();
        for (i, b) in prof.block_norms.iter().enumerate() {
            let n = (i + 1) as i32;
            assert!((b - 2f64.powi(-n).sqrt()).abs() < 1e-14);
        }
        let zero = dyadic_profile(&parse("0").unwrap(), exp(2.0), exp(4.0), 10).unwrap();
        assert!(zero.weighted.iter().all(|w| *w == 0.0));
        assert!(dyadic_profile(&parse("t").unwrap(), exp(2.0), exp(4.0), 0).is_err());
    }

    #[test]
    fn growth_of_singular_power() {
        let m = parse("t^-0.25").unwrap();
        let nec = necessary_check(&m, exp(2.0), exp(4.0));
        assert!(nec.pass);
        assert!((nec.growth.exponent - 0.75).abs() < 1e-12);
        assert!((nec.fit.slope - 0.75).abs() < 0.02, "{:?}", nec.fit);
        let eq = iff_check_p_equals_r(&m, exp(2.0));
        assert_eq!(eq.bounded, Some(false));
        assert!(!eq.pass);
    }

    #[test]
    fn iff_examples() {
        for p in [1.0, 2.0, f64::INFINITY] {
            assert!(iff_check_p_equals_r(&parse("t").unwrap(), exp(p)).pass);
        }
        assert!(iff_check_p_equals_r(&parse("L^-1").unwrap(), exp(1.0)).pass);
        assert!(!iff_check_p_equals_r(&parse("t^-0.1").unwrap(), exp(2.0)).pass);
        // m' = t^-1/2 / 2: not in L^2, G grows like sqrt(ln), which is O(eps^-1/2)
        assert!(iff_check_p_equals_r(&parse("t^0.5").unwrap(), exp(2.0)).pass);
        // m' = t^-1 L^-3/2 / 2 is integrable
        assert!(iff_check_p_equals_r(&parse("L^-0.5").unwrap(), exp(1.0)).pass);
        assert!(!iff_check_p_equals_r(&parse("piece [0, 0.5]: t; [0.5, 1]: 1").unwrap(), exp(1.0)).pass);
    }
}
