//! A fixed, versioned list of named functions shared by the property suites,
//! the operator-norm lower bound and the CLI reproductions.

use crate::funcspace::{parse, PiecewiseFunction};
use crate::quadrature::Exponent;

/// Bumped whenever an entry is added, removed or changed.
pub const BATTERY_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatteryEntry {
    pub name: &'static str,
    pub expr: &'static str,
}

const fn entry(name: &'static str, expr: &'static str) -> BatteryEntry {
    BatteryEntry { name, expr }
}

pub const BATTERY: &[BatteryEntry] = &[
    entry("identity", "t"),
    entry("square", "t^2"),
    entry("ramp_quarter", "ealpha(0.25)"),
    entry("ramp_half", "ealpha(0.5)"),
    entry("sqrt", "t^0.5"),
    entry("pow_0.75", "t^0.75"),
    entry("pow_0.6", "t^0.6"),
    entry("pow_1.25", "t^1.25"),
    entry("sqrt_over_log", "t^0.5*L^-1"),
    entry("pow_0.75_log_half", "t^0.75*L^0.5"),
    entry("pow_1.5_over_log", "t^1.5*L^-1"),
    entry("square_over_sqrt_log", "t^2*L^-0.5"),
    entry("neg_t_log_sq", "-t*L^2"),
    entry("inv_log", "L^-1"),
    entry("inv_log_sq", "L^-2"),
    entry("cubic", "2*t - 3*t^2 + t^3"),
    entry("sqrt_plus_linear", "t^0.5 + 2*t"),
    entry("kinked", "piece [0, 0.5]: t; [0.5, 1]: 0.25 + t^2"),
    entry("hat", "piece [0, 0.5]: 2*t; [0.5, 1]: 2 - 2*t"),
    entry("zero", "0"),
    entry("one", "1"),
    entry("one_plus_t", "1 + t"),
    entry("pow_-0.1_over_log", "t^-0.1*L^-1"),
    entry("pow_-0.15", "t^-0.15"),
    entry("pow_-0.25", "t^-0.25"),
];

impl BatteryEntry {
    pub fn function(&self) -> PiecewiseFunction {
        parse(self.expr).expect("battery expressions parse")
    }
}

/// All entries with their parsed functions.
pub fn battery() -> Vec<(&'static str, PiecewiseFunction)> {
    BATTERY.iter().map(|e| (e.name, e.function())).collect()
}

/// Entries that belong to `AC_p`.
pub fn members(p: Exponent) -> Vec<(&'static str, PiecewiseFunction)> {
    battery()
        .into_iter()
        .filter(|(_, f)| crate::algebra::membership(f, p).is_member)
        .collect()
}
