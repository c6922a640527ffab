use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// Exponents closer than this are treated as equal when merging terms.
pub const EXPONENT_TOL: f64 = 1e-12;
/// Merged coefficients smaller than this in magnitude are dropped.
pub const COEFF_TOL: f64 = 1e-14;

/// `L(t) = 1 - ln t`, which is `>= 1` on `(0, 1]`.
#[inline]
pub fn log_factor(t: f64) -> f64 {
    1.0 - t.ln()
}

/// One power-log atom `coeff * t^a * (1 - ln t)^b` on `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowLogTerm {
    pub coeff: f64,
    pub a: f64,
    pub b: f64,
}

impl PowLogTerm {
    pub const fn new(coeff: f64, a: f64, b: f64) -> Self {
        Self { coeff, a, b }
    }

    pub const fn constant(c: f64) -> Self {
        Self::new(c, 0.0, 0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let mut v = self.coeff;
        if self.a != 0.0 {
            v *= t.powf(self.a);
        }
        if self.b != 0.0 {
            v *= log_factor(t).powf(self.b);
        }
        v
    }

    /// `d/dt [c t^a L^b] = c a t^(a-1) L^b - c b t^(a-1) L^(b-1)`.
    pub fn derivative(&self) -> [PowLogTerm; 2] {
        [
            PowLogTerm::new(self.coeff * self.a, self.a - 1.0, self.b),
            PowLogTerm::new(-self.coeff * self.b, self.a - 1.0, self.b - 1.0),
        ]
    }

    pub fn mul(&self, other: &PowLogTerm) -> PowLogTerm {
        PowLogTerm::new(self.coeff * other.coeff, self.a + other.a, self.b + other.b)
    }

    pub fn same_exponents(&self, other: &PowLogTerm) -> bool {
        (self.a - other.a).abs() <= EXPONENT_TOL && (self.b - other.b).abs() <= EXPONENT_TOL
    }
}

/// Ordering by dominance at `0+`: smaller `a` first, then larger `b`.
pub fn dominance_cmp(x: (f64, f64), y: (f64, f64)) -> Ordering {
    if (x.0 - y.0).abs() > EXPONENT_TOL {
        x.0.total_cmp(&y.0)
    } else if (x.1 - y.1).abs() > EXPONENT_TOL {
        y.1.total_cmp(&x.1)
    } else {
        Ordering::Equal
    }
}

/// A finite normalized sum of power-log terms.
///
/// Normalized means: no two terms share an `(a, b)` pair, no coefficient is
/// below [`COEFF_TOL`], and terms are sorted dominant-first as `t -> 0+`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TermSum {
    terms: Vec<PowLogTerm>,
}

impl TermSum {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::from_terms(vec![PowLogTerm::constant(c)])
    }

    pub fn from_terms(terms: Vec<PowLogTerm>) -> Self {
        let mut s = Self { terms };
        s.normalize();
        s
    }

    pub fn terms(&self) -> &[PowLogTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The dominant term as `t -> 0+`, if any.
    pub fn leading(&self) -> Option<&PowLogTerm> {
        self.terms.first()
    }

    fn normalize(&mut self) {
        let mut terms = std::mem::take(&mut self.terms);
        terms.retain(|t| t.coeff != 0.0);
        terms.sort_by(|x, y| dominance_cmp((x.a, x.b), (y.a, y.b)));
        let mut merged: Vec<PowLogTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.same_exponents(&t) => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff.abs() >= COEFF_TOL);
        self.terms = merged;
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|term| term.eval(t)).sum()
    }

    pub fn derivative(&self) -> TermSum {
        TermSum::from_terms(self.terms.iter().flat_map(|t| t.derivative()).collect())
    }

    pub fn add(&self, other: &TermSum) -> TermSum {
        TermSum::from_terms(self.terms.iter().chain(other.terms.iter()).copied().collect())
    }

    pub fn scale(&self, c: f64) -> TermSum {
        TermSum::from_terms(
            self.terms
                .iter()
                .map(|t| PowLogTerm::new(t.coeff * c, t.a, t.b))
                .collect(),
        )
    }

    pub fn mul(&self, other: &TermSum) -> TermSum {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for x in &self.terms {
            for y in &other.terms {
                out.push(x.mul(y));
            }
        }
        TermSum::from_terms(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_merges_and_sorts() {
        let s = TermSum::from_terms(vec![
            PowLogTerm::new(5.0, 1.0, 0.0),
            PowLogTerm::new(1.0, -0.25, 0.0),
            PowLogTerm::new(2.0, -0.5, 0.0),
            PowLogTerm::new(-2.0, -0.5 + 1e-13, 0.0),
        ]);
        assert_eq!(
            s.terms(),
            &[PowLogTerm::new(1.0, -0.25, 0.0), PowLogTerm::new(5.0, 1.0, 0.0)]
        );
    }

    #[test]
    fn larger_log_exponent_dominates_at_equal_power() {
        let s = TermSum::from_terms(vec![
            PowLogTerm::new(1.0, -1.0, -3.0),
            PowLogTerm::new(1.0, -1.0, -2.0),
        ]);
        assert_eq!(s.leading(), Some(&PowLogTerm::new(1.0, -1.0, -2.0)));
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let s = TermSum::from_terms(vec![PowLogTerm::new(1.0, 0.5, 1.0)]);
        let d = s.derivative();
        assert_eq!(
            d.terms(),
            &[PowLogTerm::new(0.5, -0.5, 1.0), PowLogTerm::new(-1.0, -0.5, 0.0)]
        );
        for t in [0.1, 0.5, 0.9] {
            let h = 1e-6 * t;
            let fd = (s.eval(t + h) - s.eval(t - h)) / (2.0 * h);
            let exact = d.eval(t);
            assert!(((fd - exact) / exact).abs() < 1e-6, "t={t}: {fd} vs {exact}");
        }
    }

    #[test]
    fn constant_differentiates_to_zero() {
        assert!(TermSum::constant(3.0).derivative().is_zero());
    }

    #[test]
    fn eval_at_inverse_e() {
        let s = TermSum::from_terms(vec![PowLogTerm::new(1.0, -1.0, -2.0)]);
        let t = (-1.0f64).exp();
        let expected = std::f64::consts::E / 4.0;
        assert!((s.eval(t) - expected).abs() < 1e-12);
    }
}
