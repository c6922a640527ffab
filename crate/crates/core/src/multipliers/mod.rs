//! Deciding whether pointwise multiplication `g -> mg` maps `AC_r` into `AC_p`.
//!
//! The dominant-order analysis of `m` and `m'` is authoritative throughout;
//! dyadic profiles, fitted slopes and partial sums are attached as evidence.

mod bounds;
mod direct;
mod profile;
mod sufficient;

use serde::Serialize;

pub use bounds::{operator_norm_bounds, operator_norm_bounds_with, OperatorNormBounds};
pub use direct::{
    critical_witness, direct_check, direct_check_with, log_damped_witness, DirectOutcome, DirectReport,
};
pub use profile::{
    block_norms, dyadic_profile, growth_fit, growth_order, iff_check_p_equals_r, necessary_check,
    necessary_check_with, DyadicProfile, GrowthFit, GrowthOrder, NecessaryCheck, FIT_START,
};
pub use sufficient::{sufficient_check, sufficient_check_with, SufficientCheck};

use crate::error::MultiplierError;
use crate::funcspace::{AsymptoticOrder, PiecewiseFunction};
use crate::quadrature::Exponent;

/// Tolerance when comparing exponents derived from parsed decimals.
pub const ORDER_TOL: f64 = 1e-9;
pub const DEFAULT_DEPTH: usize = 40;
pub const DEFAULT_WINDOW: (u32, u32) = (5, 40);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EngineConfig {
    /// Number of dyadic blocks in profiles.
    pub depth: usize,
    /// Growth fit uses `eps = 2^-j` for `window.0 <= j <= window.1`.
    pub window: (u32, u32),
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            depth: DEFAULT_DEPTH,
            window: DEFAULT_WINDOW,
        }
    }
}

impl EngineConfig {
    pub fn validate(&self) -> Result<(), MultiplierError> {
        if self.depth == 0 || self.window.0 == 0 || self.window.0 >= self.window.1 {
            return Err(MultiplierError::Depth);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Multiplier,
    NotMultiplier,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Route {
    #[serde(rename = "ThmIff_r_eq_p")]
    EqualExponents,
    #[serde(rename = "Thm4_r_lt_p")]
    SmallerDomain,
    #[serde(rename = "Thm5_necessary_failed")]
    NecessaryFailed,
    #[serde(rename = "Thm6_sufficient_passed")]
    SufficientPassed,
    DirectCounterexample,
    Undetermined,
    ZeroMap,
}

impl Route {
    pub fn label(&self) -> &'static str {
        match self {
            Route::EqualExponents => "ThmIff_r_eq_p",
            Route::SmallerDomain => "Thm4_r_lt_p",
            Route::NecessaryFailed => "Thm5_necessary_failed",
            Route::SufficientPassed => "Thm6_sufficient_passed",
            Route::DirectCounterexample => "DirectCounterexample",
            Route::Undetermined => "Undetermined",
            Route::ZeroMap => "ZeroMap",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Condition {
    pub name: String,
    pub pass: bool,
    #[serde(serialize_with = "crate::serde_f64::option::serialize")]
    pub analytic: Option<f64>,
    #[serde(serialize_with = "crate::serde_f64::option::serialize")]
    pub empirical: Option<f64>,
}

impl Condition {
    fn new(name: impl Into<String>, pass: bool, analytic: Option<f64>, empirical: Option<f64>) -> Self {
        Self {
            name: name.into(),
            pass,
            analytic,
            empirical,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evidence {
    pub m_order: AsymptoticOrder,
    pub m_prime_order: AsymptoticOrder,
    pub necessary: Option<NecessaryCheck>,
    pub sufficient: Option<SufficientCheck>,
    pub direct: Vec<DirectReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MultiplierVerdict {
    pub verdict: Verdict,
    pub route: Route,
    pub p: Exponent,
    pub r: Exponent,
    pub conditions: Vec<Condition>,
    pub evidence: Evidence,
}

fn necessary_conditions(nec: &NecessaryCheck, out: &mut Vec<Condition>) {
    out.push(Condition::new("continuous_on_(0,1]", nec.continuous, None, None));
    if let Some(b) = nec.bounded {
        out.push(Condition::new("bounded", b, None, None));
    }
    out.push(Condition::new(
        "growth_O(eps^(-1/r'))",
        nec.growth_pass,
        Some(nec.fit.analytic_slope),
        Some(nec.fit.slope),
    ));
}

/// The witnesses tried before giving up on `r > p`: the log-damped witness,
/// then the critical witness tuned to the dominant order of `m`.
pub fn counterexample_witnesses(m: &PiecewiseFunction, p: Exponent, r: Exponent) -> Vec<PiecewiseFunction> {
    let first = log_damped_witness(r);
    let mut out = vec![first.clone()];
    if let Some(w) = critical_witness(m, p, r) {
        if w != first {
            out.push(w);
        }
    }
    out
}

pub fn verdict_with(
    m: &PiecewiseFunction,
    p: Exponent,
    r: Exponent,
    config: &EngineConfig,
) -> Result<MultiplierVerdict, MultiplierError> {
    config.validate()?;
    let mut evidence = Evidence {
        m_order: m.dominant_order(),
        m_prime_order: m.derivative().dominant_order(),
        necessary: None,
        sufficient: None,
        direct: Vec::new(),
    };
    let mut conditions = Vec::new();
    let done = |verdict, route, conditions, evidence| {
        Ok(MultiplierVerdict {
            verdict,
            route,
            p,
            r,
            conditions,
            evidence,
        })
    };

    // only the zero map sends AC_r into a strictly smaller AC_p
    if r.value() < p.value() {
        let zero = m.is_zero();
        conditions.push(Condition::new("m_identically_zero", zero, None, None));
        let v = if zero { Verdict::Multiplier } else { Verdict::NotMultiplier };
        return done(v, Route::SmallerDomain, conditions, evidence);
    }

    if r == p {
        let nec = necessary_check_with(m, p, r, config);
        necessary_conditions(&nec, &mut conditions);
        let v = if nec.pass { Verdict::Multiplier } else { Verdict::NotMultiplier };
        evidence.necessary = Some(nec);
        return done(v, Route::EqualExponents, conditions, evidence);
    }

    if m.is_zero() && p.is_one() {
        conditions.push(Condition::new("m_identically_zero", true, None, None));
        return done(Verdict::Multiplier, Route::ZeroMap, conditions, evidence);
    }

    let nec = necessary_check_with(m, p, r, config);
    necessary_conditions(&nec, &mut conditions);
    let nec_pass = nec.pass;
    evidence.necessary = Some(nec);
    if !nec_pass {
        return done(Verdict::NotMultiplier, Route::NecessaryFailed, conditions, evidence);
    }

    if p.value() > 1.0 {
        let suf = sufficient_check_with(m, p, r, config)?;
        conditions.push(Condition::new("m_in_L^v", suf.in_lv, Some(suf.v), None));
        conditions.push(Condition::new(
            "weighted_series_converges",
            suf.series_converges,
            Some(suf.series_exponent),
            suf.empirical.map(|e| e.rate),
        ));
        let pass = suf.pass;
        evidence.sufficient = Some(suf);
        if pass {
            return done(Verdict::Multiplier, Route::SufficientPassed, conditions, evidence);
        }
    }

    for g_prime in counterexample_witnesses(m, p, r) {
        let rep = direct_check_with(m, &g_prime, p, r, config)?;
        let not_member = rep.outcome == DirectOutcome::NotMember;
        conditions.push(Condition::new(
            format!("witness_image_in_AC_p[{}]", rep.witness),
            !not_member,
            rep.analytic.map(|b| if b { 1.0 } else { 0.0 }),
            rep.numeric.map(|n| n.rate),
        ));
        evidence.direct.push(rep);
        if not_member {
            return done(Verdict::NotMultiplier, Route::DirectCounterexample, conditions, evidence);
        }
    }
    done(Verdict::Inconclusive, Route::Undetermined, conditions, evidence)
}

pub fn verdict(m: &PiecewiseFunction, p: Exponent, r: Exponent) -> Result<MultiplierVerdict, MultiplierError> {
    verdict_with(m, p, r, &EngineConfig::default())
}
