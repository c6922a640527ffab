use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::QuadError;

/// A Lebesgue exponent in `[1, inf]` together with its conjugate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent {
    value: f64,
    conjugate: f64,
}

impl Exponent {
    pub fn new(value: f64) -> Result<Self, QuadError> {
        if value.is_nan() || value < 1.0 {
            return Err(QuadError::InvalidExponent(value));
        }
        let conjugate = if value == 1.0 {
            f64::INFINITY
        } else if value.is_infinite() {
            1.0
        } else {
            value / (value - 1.0)
        };
        Ok(Self { value, conjugate })
    }

    pub fn one() -> Self {
        Self::new(1.0).unwrap()
    }

    pub fn infinity() -> Self {
        Self::new(f64::INFINITY).unwrap()
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn conjugate(&self) -> f64 {
        self.conjugate
    }

    /// `1/p`, zero for `p = inf`.
    pub fn recip(&self) -> f64 {
        1.0 / self.value
    }

    /// `1/p'`, zero for `p = 1`.
    pub fn conj_recip(&self) -> f64 {
        1.0 / self.conjugate
    }

    pub fn is_one(&self) -> bool {
        self.value == 1.0
    }

    pub fn is_infinite(&self) -> bool {
        self.value.is_infinite()
    }

    pub fn conjugate_exponent(&self) -> Exponent {
        Exponent::new(self.conjugate).unwrap()
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.value)
        }
    }
}

impl FromStr for Exponent {
    type Err = QuadError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Self::infinity());
        }
        let v: f64 = s.parse().map_err(|_| QuadError::InvalidExponent(f64::NAN))?;
        Self::new(v)
    }
}

impl Serialize for Exponent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::serde_f64::serialize(&self.value, s)
    }
}
