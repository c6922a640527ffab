//! Small least-squares helpers used for empirical growth and decay rates.

use serde::{Deserialize, Serialize};

/// Ordinary least squares `y ~ c0 + c1 x`; returns `(c0, c1)`.
pub fn linear(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    (my - slope * mx, slope)
}

/// Rates of a dyadic sequence `w_n ~ C 2^(-rate n) L_n^log_power`, with
/// `L_n = 1 + (n - 1/2) ln 2` the log factor at the block's geometric midpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DyadicRates {
    /// Geometric decay rate per block, in powers of two (positive = decaying).
    pub rate: f64,
    pub log_power: f64,
}

pub fn block_log_factor(n: usize) -> f64 {
    1.0 + (n as f64 - 0.5) * std::f64::consts::LN_2
}

/// Fits `ln w_n = c0 - rate ln2 n + log_power ln L_n` over the given
/// `(n, w_n)` pairs. Zero entries are skipped; `None` if fewer than four
/// positive values remain.
pub fn dyadic_rates(samples: &[(usize, f64)]) -> Option<DyadicRates> {
    let pts: Vec<(f64, f64, f64)> = samples
        .iter()
        .filter(|(_, w)| *w > 0.0 && w.is_finite())
        .map(|&(n, w)| (n as f64, block_log_factor(n).ln(), w.ln()))
        .collect();
    if pts.len() < 4 {
        return None;
    }
    // normal equations for [1, n, ln L]
    let mut ata = [[0.0f64; 3]; 3];
    let mut aty = [0.0f64; 3];
    for &(n, ll, y) in &pts {
        let row = [1.0, n, ll];
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
            aty[i] += row[i] * y;
        }
    }
    let c = solve3(ata, aty)?;
    Some(DyadicRates {
        rate: -c[1] / std::f64::consts::LN_2,
        log_power: c[2],
    })
}

fn solve3(mut a: [[f64; 3]; 3], mut b: [f64; 3]) -> Option<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..3 {
            let f = a[row][col] / a[col][col];
            for k in col..3 {
                a[row][k] -= f * a[col][k];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = [0.0; 3];
    for i in (0..3).rev() {
        let mut s = b[i];
        for k in i + 1..3 {
            s -= a[i][k] * x[k];
        }
        x[i] = s / a[i][i];
    }
    Some(x)
}

/// Median of a slice (copied and sorted).
pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        return f64::NAN;
    }
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}
