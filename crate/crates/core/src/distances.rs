//! Baseline distances on the empirical distribution of the literal columns.

use serde::Serialize;

use crate::dataset::{BinaryDataset, Pattern};

/// Observed cells (fully specified bit patterns) with per-group counts.
#[derive(Debug, Clone)]
pub struct CellHistogram {
    cells: Vec<Pattern>,
    n_mu: u64,
    n_nu: u64,
}

impl CellHistogram {
    pub fn new(data: &BinaryDataset) -> Self {
        CellHistogram {
            cells: data.aggregate(),
            n_mu: data.n_mu() as u64,
            n_nu: data.n_nu() as u64,
        }
    }

    pub fn cells(&self) -> &[Pattern] {
        &self.cells
    }

    pub fn totals(&self) -> (u64, u64) {
        (self.n_mu, self.n_nu)
    }

    /// `|count_mu·N₂ − count_nu·N₁|` per cell, the mass difference scaled by
    /// `N₁·N₂`.
    fn scaled_differences(&self) -> impl Iterator<Item = u128> + '_ {
        self.cells.iter().map(move |c| {
            let a = c.mu as i128 * self.n_nu as i128;
            let b = c.nu as i128 * self.n_mu as i128;
            (a - b).unsigned_abs()
        })
    }

    fn scale(&self) -> f64 {
        self.n_mu as f64 * self.n_nu as f64
    }
}

/// Half the ℓ1 distance between the two cell distributions.
pub fn total_variation(data: &BinaryDataset) -> f64 {
    let h = CellHistogram::new(data);
    let sum: u128 = h.scaled_differences().sum();
    sum as f64 / (2.0 * h.scale())
}

/// Largest absolute mass difference over single cells.
pub fn linf_base(data: &BinaryDataset) -> f64 {
    let h = CellHistogram::new(data);
    h.scaled_differences().max().unwrap_or(0) as f64 / h.scale()
}

/// MMD with the overlap kernel `k(x, y) = #{j : x_j = y_j} / d`, biased
/// (V-statistic) estimator. Returns the root, not the square.
///
/// The kernel is a mean over coordinates of `x_j y_j + (1 − x_j)(1 − y_j)`,
/// so every kernel mean factors through the per-feature marginals `p_j`,
/// `q_j` and `MMD² = (2/d) Σ_j (p_j − q_j)²`.
pub fn mmd_overlap(data: &BinaryDataset) -> f64 {
    let d = data.n_features();
    if d == 0 {
        return 0.0;
    }
    let (n_mu, n_nu) = (data.n_mu() as i128, data.n_nu() as i128);
    let mut ones = vec![(0i128, 0i128); d];
    for p in data.aggregate() {
        for (j, o) in ones.iter_mut().enumerate() {
            if p.bit(j) {
                o.0 += p.mu as i128;
                o.1 += p.nu as i128;
            }
        }
    }
    // Σ_j (c_j·N₂ − c'_j·N₁)², exact
    let sum: i128 = ones
        .iter()
        .map(|&(a, b)| {
            let diff = a * n_nu - b * n_mu;
            diff * diff
        })
        .sum();
    let scale = (n_mu * n_nu) as f64;
    let mmd2 = 2.0 * (sum as f64) / (scale * scale) / d as f64;
    mmd2.max(0.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Baselines {
    pub total_variation: f64,
    pub linf: f64,
    pub mmd: f64,
}

pub fn baselines(data: &BinaryDataset) -> Baselines {
    Baselines {
        total_variation: total_variation(data),
        linf: linf_base(data),
        mmd: mmd_overlap(data),
    }
}
