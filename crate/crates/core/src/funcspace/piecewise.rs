use serde::{Deserialize, Serialize};

use super::term::{PowLogTerm, TermSum, EXPONENT_TOL};
use crate::error::FuncError;

/// Breakpoints closer than this are identified when refining partitions.
const BREAKPOINT_TOL: f64 = 1e-14;

/// Dominant behaviour `coeff * t^a * (1 - ln t)^b` of a function as `t -> 0+`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum AsymptoticOrder {
    /// The function vanishes identically near zero.
    Zero,
    PowLog { coeff: f64, a: f64, b: f64 },
}

impl AsymptoticOrder {
    pub fn from_term(t: &PowLogTerm) -> Self {
        AsymptoticOrder::PowLog {
            coeff: t.coeff,
            a: t.a,
            b: t.b,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, AsymptoticOrder::Zero)
    }

    /// Order of `|f|^p` for finite `p`.
    pub fn abs_pow(&self, p: f64) -> Self {
        match *self {
            AsymptoticOrder::Zero => AsymptoticOrder::Zero,
            AsymptoticOrder::PowLog { coeff, a, b } => AsymptoticOrder::PowLog {
                coeff: coeff.abs().powf(p),
                a: a * p,
                b: b * p,
            },
        }
    }

    /// Whether the dominant term stays bounded as `t -> 0+`.
    pub fn is_bounded(&self) -> bool {
        match *self {
            AsymptoticOrder::Zero => true,
            AsymptoticOrder::PowLog { a, b, .. } => {
                a > EXPONENT_TOL || (a.abs() <= EXPONENT_TOL && b <= EXPONENT_TOL)
            }
        }
    }

    pub fn limit(&self) -> LimitAtZero {
        match *self {
            AsymptoticOrder::Zero => LimitAtZero::Finite(0.0),
            AsymptoticOrder::PowLog { coeff, a, b } => {
                if a > EXPONENT_TOL || (a.abs() <= EXPONENT_TOL && b < -EXPONENT_TOL) {
                    LimitAtZero::Finite(0.0)
                } else if a.abs() <= EXPONENT_TOL && b.abs() <= EXPONENT_TOL {
                    LimitAtZero::Finite(coeff)
                } else if coeff > 0.0 {
                    LimitAtZero::PosInfinity
                } else {
                    LimitAtZero::NegInfinity
                }
            }
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            AsymptoticOrder::Zero => 0.0,
            AsymptoticOrder::PowLog { coeff, a, b } => PowLogTerm::new(coeff, a, b).eval(t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum LimitAtZero {
    Finite(f64),
    PosInfinity,
    NegInfinity,
}

impl LimitAtZero {
    pub fn is_zero(&self) -> bool {
        matches!(self, LimitAtZero::Finite(v) if *v == 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BreakpointJump {
    pub at: f64,
    pub left: f64,
    pub right: f64,
}

impl BreakpointJump {
    pub fn size(&self) -> f64 {
        (self.left - self.right).abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContinuityReport {
    pub jumps: Vec<BreakpointJump>,
}

impl ContinuityReport {
    pub fn max_jump(&self) -> f64 {
        self.jumps.iter().map(BreakpointJump::size).fold(0.0, f64::max)
    }

    pub fn is_continuous(&self, tol: f64) -> bool {
        self.max_jump() <= tol
    }
}

/// A function on `(0, 1]` given by one [`TermSum`] per half-open piece
/// `(x_{i-1}, x_i]` of a partition `0 = x_0 < x_1 < ... < x_k = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseFunction {
    breakpoints: Vec<f64>,
    pieces: Vec<TermSum>,
    limit_at_zero: LimitAtZero,
}

impl PiecewiseFunction {
    pub fn new(breakpoints: Vec<f64>, pieces: Vec<TermSum>) -> Result<Self, FuncError> {
        if breakpoints.len() < 2 || pieces.len() + 1 != breakpoints.len() {
            return Err(FuncError::PieceCount {
                breakpoints: breakpoints.len(),
                pieces: pieces.len(),
            });
        }
        if breakpoints[0] != 0.0 || *breakpoints.last().unwrap() != 1.0 {
            return Err(FuncError::Breakpoints(
                "partition must start at 0 and end at 1".into(),
            ));
        }
        if let Some(w) = breakpoints.windows(2).find(|w| !(w[0] < w[1])) {
            return Err(FuncError::Breakpoints(format!(
                "breakpoints not strictly increasing at {} -> {}",
                w[0], w[1]
            )));
        }
        let limit_at_zero = Self::order_of(&pieces[0]).limit();
        Ok(Self {
            breakpoints,
            pieces,
            limit_at_zero,
        })
    }

    /// Single piece over all of `(0, 1]`.
    pub fn single(sum: TermSum) -> Self {
        Self::new(vec![0.0, 1.0], vec![sum]).expect("trivial partition is valid")
    }

    pub fn zero() -> Self {
        Self::single(TermSum::zero())
    }

    pub fn constant(c: f64) -> Self {
        Self::single(TermSum::constant(c))
    }

    pub fn term(coeff: f64, a: f64, b: f64) -> Self {
        Self::single(TermSum::from_terms(vec![PowLogTerm::new(coeff, a, b)]))
    }

    /// The ramp `e_alpha(t) = min(t / alpha, 1)`.
    pub fn ramp(alpha: f64) -> Result<Self, FuncError> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(FuncError::Parameter(format!(
                "ramp parameter must lie in (0, 1], got {alpha}"
            )));
        }
        let slope = TermSum::from_terms(vec![PowLogTerm::new(1.0 / alpha, 1.0, 0.0)]);
        if alpha == 1.0 {
            return Ok(Self::single(slope));
        }
        Self::new(vec![0.0, alpha, 1.0], vec![slope, TermSum::constant(1.0)])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[TermSum] {
        &self.pieces
    }

    /// Iterator over `(lo, hi, sum)` for each piece.
    pub fn segments(&self) -> impl Iterator<Item = (f64, f64, &TermSum)> {
        self.breakpoints
            .windows(2)
            .zip(self.pieces.iter())
            .map(|(w, s)| (w[0], w[1], s))
    }

    pub fn limit_at_zero(&self) -> LimitAtZero {
        self.limit_at_zero
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.iter().all(TermSum::is_zero)
    }

    fn piece_index(&self, t: f64) -> usize {
        // first i with t <= x_{i+1}
        let idx = self.breakpoints[1..].partition_point(|&x| x < t);
        idx.min(self.pieces.len() - 1)
    }

    pub fn evaluate(&self, t: f64) -> Result<f64, FuncError> {
        if !(t > 0.0 && t <= 1.0) {
            return Err(FuncError::OutOfDomain(t));
        }
        Ok(self.value(t))
    }

    /// Unchecked evaluation; `t` is assumed to lie in `(0, 1]`.
    pub fn value(&self, t: f64) -> f64 {
        self.pieces[self.piece_index(t)].eval(t)
    }

    fn order_of(sum: &TermSum) -> AsymptoticOrder {
        sum.leading()
            .map(AsymptoticOrder::from_term)
            .unwrap_or(AsymptoticOrder::Zero)
    }

    pub fn dominant_order(&self) -> AsymptoticOrder {
        Self::order_of(&self.pieces[0])
    }

    pub fn continuity_report(&self) -> ContinuityReport {
        let jumps = (1..self.pieces.len())
            .map(|i| {
                let at = self.breakpoints[i];
                BreakpointJump {
                    at,
                    left: self.pieces[i - 1].eval(at),
                    right: self.pieces[i].eval(at),
                }
            })
            .collect();
        ContinuityReport { jumps }
    }

    pub fn map_pieces(&self, f: impl Fn(&TermSum) -> TermSum) -> Self {
        Self::new(self.breakpoints.clone(), self.pieces.iter().map(f).collect())
            .expect("partition unchanged")
    }

    /// Derivative on piece interiors; breakpoints are kept.
    pub fn derivative(&self) -> Self {
        self.map_pieces(TermSum::derivative)
    }

    pub fn scale(&self, c: f64) -> Self {
        self.map_pieces(|s| s.scale(c))
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&TermSum, &TermSum) -> TermSum) -> Self {
        let mut merged: Vec<f64> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .copied()
            .collect();
        merged.sort_by(f64::total_cmp);
        let mut breakpoints: Vec<f64> = Vec::with_capacity(merged.len());
        for x in merged {
            match breakpoints.last() {
                Some(&last) if x - last <= BREAKPOINT_TOL => {}
                _ => breakpoints.push(x),
            }
        }
        *breakpoints.last_mut().unwrap() = 1.0;
        let pieces = breakpoints
            .windows(2)
            .map(|w| {
                let mid = 0.5 * (w[0] + w[1]);
                op(
                    &self.pieces[self.piece_index(mid)],
                    &other.pieces[other.piece_index(mid)],
                )
            })
            .collect();
        Self::new(breakpoints, pieces).expect("refined partition is valid")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, TermSum::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |x, y| x.add(&y.scale(-1.0)))
    }

    /// Pointwise product on the common refinement of both partitions.
    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, TermSum::mul)
    }
}
