//! The Banach algebra `AC_p`: membership, the norm `|||f||| = ||f'||_p`, the
//! pointwise bound on `|g(t)|`, submultiplicativity, the ramp approximate
//! identity `e_alpha` and the obstruction to one in `AC_inf`.

use serde::Serialize;

use crate::error::AlgebraError;
use crate::funcspace::{classify_lp_at_zero, PiecewiseFunction};
use crate::quadrature::{lp_norm_below, lp_norm_full, Exponent};

/// Jumps at breakpoints up to this size count as continuous.
pub const CONTINUITY_TOL: f64 = 1e-10;
/// Additive slack for the pointwise bound `|g(t)| <= |||g||| t^(1/p')`.
pub const EQ1_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    pub is_member: bool,
    pub limit_at_zero_ok: bool,
    pub continuity_ok: bool,
    pub derivative_in_lp: bool,
    /// `||f'||_p`, infinite when `f'` is not in `L^p`.
    #[serde(serialize_with = "crate::serde_f64::serialize")]
    pub norm: f64,
}

/// Membership in `AC_p`. Within the power-log class every piece is absolutely
/// continuous on intervals away from zero, so continuity on `[0, 1]` with
/// `f(0) = 0` plus `f' in L^p` (hence `L^1`) is exactly the criterion.
pub fn membership(f: &PiecewiseFunction, p: Exponent) -> MembershipReport {
    let limit_at_zero_ok = f.limit_at_zero().is_zero();
    let continuity_ok = f.continuity_report().is_continuous(CONTINUITY_TOL);
    let d = f.derivative();
    let derivative_in_lp = classify_lp_at_zero(&d, p).is_convergent();
    let norm = if derivative_in_lp {
        lp_norm_full(&d, p).value()
    } else {
        f64::INFINITY
    };
    MembershipReport {
        is_member: limit_at_zero_ok && continuity_ok && derivative_in_lp,
        limit_at_zero_ok,
        continuity_ok,
        derivative_in_lp,
        norm,
    }
}

/// Membership of `f(t) = int_0^t f'` given only `f'`. The antiderivative
/// exists, is continuous and vanishes at zero exactly when `f' in L^1`.
pub fn membership_from_derivative(f_prime: &PiecewiseFunction, p: Exponent) -> MembershipReport {
    let in_l1 = classify_lp_at_zero(f_prime, Exponent::one()).is_convergent();
    let derivative_in_lp = classify_lp_at_zero(f_prime, p).is_convergent();
    let norm = if derivative_in_lp {
        lp_norm_full(f_prime, p).value()
    } else {
        f64::INFINITY
    };
    MembershipReport {
        is_member: in_l1 && derivative_in_lp,
        limit_at_zero_ok: in_l1,
        continuity_ok: in_l1,
        derivative_in_lp,
        norm,
    }
}

pub fn banach_norm(f: &PiecewiseFunction, p: Exponent) -> Result<f64, AlgebraError> {
    let report = membership(f, p);
    if !report.is_member {
        return Err(AlgebraError::NotMember { p: p.value() });
    }
    Ok(report.norm)
}

fn eq1_rhs(norm: f64, p: Exponent, t: f64) -> f64 {
    if p.is_one() {
        norm
    } else if p.is_infinite() {
        norm * t
    } else {
        norm * t.powf(p.conj_recip())
    }
}

/// Checks `|g(t)| <= |||g||| t^(1/p')` at `t = 2^-j`, `j = 0..samples`.
pub fn eq1_check(g: &PiecewiseFunction, p: Exponent, samples: usize) -> Result<bool, AlgebraError> {
    let norm = banach_norm(g, p)?;
    Ok((0..samples).all(|j| {
        let t = 2f64.powi(-(j as i32));
        g.value(t).abs() <= eq1_rhs(norm, p, t) + EQ1_SLACK
    }))
}

/// Returns `(|||fg|||, 2 |||f||| |||g|||)`.
pub fn product_norm_check(
    f: &PiecewiseFunction,
    g: &PiecewiseFunction,
    p: Exponent,
) -> Result<(f64, f64), AlgebraError> {
    let nf = banach_norm(f, p)?;
    let ng = banach_norm(g, p)?;
    let lhs = lp_norm_full(&f.mul(g).derivative(), p).value();
    Ok((lhs, 2.0 * nf * ng))
}

pub fn approximate_identity(alpha: f64) -> Result<PiecewiseFunction, AlgebraError> {
    Ok(PiecewiseFunction::ramp(alpha)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AidReport {
    pub alpha: f64,
    /// `|||e_alpha g - g|||`
    pub defect: f64,
    /// `(p^(-1/p) + 1) ||g' chi_[0, alpha]||_p`
    pub bound: f64,
}

pub fn aid_defect(g: &PiecewiseFunction, p: Exponent, alpha: f64) -> Result<AidReport, AlgebraError> {
    if p.is_infinite() {
        return Err(AlgebraError::InfiniteExponent);
    }
    banach_norm(g, p)?;
    let e = approximate_identity(alpha)?;
    let g_prime = g.derivative();
    // (e - 1) g' + e' g
    let h = e
        .sub(&PiecewiseFunction::constant(1.0))
        .mul(&g_prime)
        .add(&e.derivative().mul(g));
    let defect = lp_norm_full(&h, p).value();
    let head = lp_norm_below(&g_prime, p, alpha).value();
    let pv = p.value();
    Ok(AidReport {
        alpha,
        defect,
        bound: (pv.powf(-1.0 / pv) + 1.0) * head,
    })
}

/// `||t g' + g - 1||_inf = |||t g - t|||` in `AC_inf`; never below 1.
pub fn no_aid_witness(g: &PiecewiseFunction) -> Result<f64, AlgebraError> {
    let p = Exponent::infinity();
    banach_norm(g, p)?;
    let t = PiecewiseFunction::term(1.0, 1.0, 0.0);
    let h = t
        .mul(&g.derivative())
        .add(g)
        .sub(&PiecewiseFunction::constant(1.0));
    Ok(lp_norm_full(&h, p).value())
}

/// `f in AC_r => f in AC_p`, evaluated for one function.
pub fn inclusion_check(f: &PiecewiseFunction, r: Exponent, p: Exponent) -> bool {
    !membership(f, r).is_member || membership(f, p).is_member
}
