//! Closed forms for `int_0^t s^a (1 - ln s)^b ds`.

use crate::funcspace::{log_factor, EXPONENT_TOL};

/// Continued fraction `h` with `Gamma(s, x) = e^-x x^s h`, valid for any real
/// `s` and `x > 0` (modified Lentz). Returns `None` if it fails to settle.
fn upper_gamma_cf(s: f64, x: f64) -> Option<f64> {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0 - s;
    let mut c = 1.0 / TINY;
    let mut d = if b.abs() < TINY { 1.0 / TINY } else { 1.0 / b };
    let mut h = d;
    for i in 1..20_000 {
        let i = i as f64;
        let an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-15 {
            return Some(h);
        }
    }
    None
}

/// `int_0^t s^a L(s)^b ds` for an integrable pair `(a, b)`.
///
/// With `u = 1 - ln s` the integral becomes `e^(a+1) (a+1)^-(b+1) Gamma(b+1, (a+1) L(t))`,
/// which simplifies to `t^(a+1) L^(b+1) h` where `h` is the Legendre continued fraction.
pub fn power_log_integral(a: f64, b: f64, t: f64) -> f64 {
    let big_l = log_factor(t);
    let k = a + 1.0;
    if k.abs() <= EXPONENT_TOL {
        debug_assert!(b < -1.0);
        return big_l.powf(b + 1.0) / (-(b + 1.0));
    }
    debug_assert!(k > 0.0);
    if b == 0.0 {
        return t.powf(k) / k;
    }
    match upper_gamma_cf(b + 1.0, k * big_l) {
        Some(h) => t.powf(k) * big_l.powf(b + 1.0) * h,
        // leading order of the same expansion
        None => t.powf(k) * big_l.powf(b) / k,
    }
}
