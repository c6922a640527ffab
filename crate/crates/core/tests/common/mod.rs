//! Helpers shared by the integration tests: a seeded generator of random
//! power-log functions and a brute-force dyadic oracle that evaluates the
//! terms directly, without going through the library's quadrature.

#![allow(dead_code)]

use acp_core::funcspace::{PowLogTerm, TermSum};
use acp_core::PiecewiseFunction;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x5eed_ac00;

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

#[derive(Debug, Clone)]
pub struct RandomFunction {
    /// `(coeff, a, b)` for each term of `sum c t^a (1 - ln t)^b`.
    pub terms: Vec<(f64, f64, f64)>,
    pub p: f64,
}

impl RandomFunction {
    pub fn function(&self) -> PiecewiseFunction {
        PiecewiseFunction::single(TermSum::from_terms(
            self.terms.iter().map(|&(c, a, b)| PowLogTerm::new(c, a, b)).collect(),
        ))
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(c, a, b)| c * t.powf(a) * (1.0 - t.ln()).powf(b))
            .sum()
    }
}

/// One to three terms; the leading exponent keeps `|a p + 1| >= 0.3` so the
/// dyadic masses of `|f|^p` grow or decay at a visible geometric rate, and
/// further exponents sit at least 0.25 above the previous one.
pub fn random_function(rng: &mut ChaCha8Rng) -> RandomFunction {
    let p = [1.0, 1.5, 2.0, 3.0][rng.gen_range(0..4)];
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let mut a = (sign * rng.gen_range(0.3..1.5) - 1.0) / p;
    let k = rng.gen_range(1..=3);
    let mut terms = Vec::with_capacity(k);
    for _ in 0..k {
        let c = rng.gen_range(0.5..2.0) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let b = rng.gen_range(-1.0..1.0);
        terms.push((c, a, b));
        a += rng.gen_range(0.25..1.25);
    }
    RandomFunction { terms, p }
}

/// `int |f|^p` over `(2^-n, 2^-n+1]` for `n = 1..=count`, by composite Simpson
/// in the block coordinate `t = 2^-n (1 + s)`.
pub fn brute_block_masses(f: &dyn Fn(f64) -> f64, p: f64, count: usize) -> Vec<f64> {
    const PANELS: usize = 400;
    (1..=count)
        .map(|n| {
            let lo = 2f64.powi(-(n as i32));
            let h = 1.0 / PANELS as f64;
            let g = |s: f64| f(lo * (1.0 + s)).abs().powf(p);
            let mut acc = g(0.0) + g(1.0);
            for i in 1..PANELS {
                acc += g(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
            }
            lo * acc * h / 3.0
        })
        .collect()
}

/// Least-squares slope of `ln w_n` against `n` over `from..=to` (1-based).
pub fn log_slope(masses: &[f64], from: usize, to: usize) -> f64 {
    let pts: Vec<(f64, f64)> = (from..=to).map(|n| (n as f64, masses[n - 1].ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Oracle verdict from 40 brute-force block masses: geometric decay with
/// stabilised partial sums means convergent, anything else divergent.
pub fn brute_convergent(f: &dyn Fn(f64) -> f64, p: f64) -> bool {
    let masses = brute_block_masses(f, p, 40);
    let slope = log_slope(&masses, 20, 40);
    let total: f64 = masses.iter().sum();
    slope < 0.0 && masses[39] < 1e-2 * total
}
