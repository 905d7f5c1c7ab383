//! Finite-sample deviation bound and the subsampling convergence harness.

use std::io::Write;
use std::time::Instant;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dataset::{BinaryDataset, Group};
use crate::error::{MsdError, Result};
use crate::solver::{solve, SolverConfig};

/// Deviation `ε` such that, with probability at least `1 − 2δ`, the
/// population discrepancy exceeds the empirical one by at most `ε`:
///
/// `ε = 4·√((2|P| + ln(2/δ)) / (2N))`, `N = min(N₁, N₂)`.
///
/// `ln` is the natural logarithm.
pub fn theorem1_epsilon(n_protected: usize, n_min: usize, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(MsdError::DeltaOutOfRange(delta));
    }
    if n_min == 0 {
        return Err(MsdError::InvalidConfig("n_min must be at least 1".into()));
    }
    let num = 2.0 * n_protected as f64 + (2.0 / delta).ln();
    Ok(4.0 * (num / (2.0 * n_min as f64)).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorBound {
    pub n_protected: usize,
    pub delta: f64,
    pub n_min: usize,
    pub epsilon: f64,
}

impl ErrorBound {
    pub fn new(n_protected: usize, n_min: usize, delta: f64) -> Result<Self> {
        Ok(ErrorBound {
            n_protected,
            delta,
            n_min,
            epsilon: theorem1_epsilon(n_protected, n_min, delta)?,
        })
    }

    pub fn for_dataset(data: &BinaryDataset, delta: f64) -> Result<Self> {
        ErrorBound::new(data.n_features(), data.n_mu().min(data.n_nu()), delta)
    }
}

/// `points` sizes spaced geometrically from `start` to `full`, rounded to
/// integers. The last size is always `full`.
pub fn geometric_ladder(start: usize, full: usize, points: usize) -> Result<Vec<usize>> {
    if points < 2 || start == 0 || start >= full {
        return Err(MsdError::InvalidConfig(format!(
            "cannot build a {points}-point ladder from {start} to {full}"
        )));
    }
    let ratio = (full as f64 / start as f64).powf(1.0 / (points - 1) as f64);
    let mut sizes: Vec<usize> = (0..points)
        .map(|i| (start as f64 * ratio.powi(i as i32)).round() as usize)
        .collect();
    sizes[points - 1] = full;
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MsdError::InvalidConfig(format!(
            "ladder from {start} to {full} with {points} points is not strictly increasing"
        )));
    }
    Ok(sizes)
}

/// Draws `size` rows without replacement, splitting them between the groups
/// in proportion to their sizes (each group keeps at least one row).
pub fn subsample(data: &BinaryDataset, size: usize, seed: u64) -> Result<BinaryDataset> {
    let total = data.n_rows();
    if size > total {
        return Err(MsdError::LadderTooLarge {
            size,
            available: total,
        });
    }
    if size < 2 {
        return Err(MsdError::InvalidConfig(
            "subsample needs at least 2 rows".into(),
        ));
    }
    let n_mu = data.n_mu();
    let k_mu = ((size as f64 * n_mu as f64 / total as f64).round() as usize)
        .clamp(1, n_mu)
        .clamp(size.saturating_sub(data.n_nu()), size - 1);
    let k_nu = size - k_mu;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let by_group =
        |g: Group| -> Vec<usize> { (0..total).filter(|&r| data.group(r) == g).collect() };
    let mu_rows = by_group(Group::Mu);
    let nu_rows = by_group(Group::Nu);
    let mut picked: Vec<usize> = index::sample(&mut rng, mu_rows.len(), k_mu)
        .into_iter()
        .map(|i| mu_rows[i])
        .collect();
    picked.extend(
        index::sample(&mut rng, nu_rows.len(), k_nu)
            .into_iter()
            .map(|i| nu_rows[i]),
    );
    picked.sort_unstable();
    data.subset(&picked)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderPoint {
    pub size: usize,
    pub seed: u64,
    pub value: f64,
    /// `value` divided by the full-data estimate; `None` if that is zero.
    pub relative_value: Option<f64>,
    pub elapsed: f64,
    pub proven_optimal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceLadder {
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub full_value: f64,
    /// Ordered by size, then seed.
    pub points: Vec<LadderPoint>,
}

/// Row of the plot-ready ladder CSV.
#[derive(Debug, Serialize)]
struct CsvRow<'a> {
    dataset: &'a str,
    method: &'a str,
    size: usize,
    seed: u64,
    value: f64,
    relative_value: Option<f64>,
    elapsed: f64,
    proven_optimal: bool,
}

impl ConvergenceLadder {
    pub fn write_csv<W: Write>(&self, dataset: &str, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for p in &self.points {
            w.serialize(CsvRow {
                dataset,
                method: "msd",
                size: p.size,
                seed: p.seed,
                value: p.value,
                relative_value: p.relative_value,
                elapsed: p.elapsed,
                proven_optimal: p.proven_optimal,
            })?;
        }
        w.flush().map_err(|e| MsdError::io("<csv>", e))?;
        Ok(())
    }

    pub fn at_size(&self, size: usize) -> impl Iterator<Item = &LadderPoint> {
        self.points.iter().filter(move |p| p.size == size)
    }
}

/// Solves every `(size, seed)` subsample of the ladder. Relative values are
/// taken against the estimate on the whole dataset.
pub fn convergence_run(
    data: &BinaryDataset,
    cfg: &SolverConfig,
    seeds: &[u64],
    ladder: &[usize],
) -> Result<ConvergenceLadder> {
    if let Some(&max) = ladder.iter().max() {
        if max > data.n_rows() {
            return Err(MsdError::LadderTooLarge {
                size: max,
                available: data.n_rows(),
            });
        }
    }
    let full = solve(data, cfg)?;
    let full_value = full.msd;
    let mut points = Vec::with_capacity(ladder.len() * seeds.len());
    for &size in ladder {
        for &seed in seeds {
            let start = Instant::now();
            let (value, proven_optimal) = if size == data.n_rows() {
                (full_value, full.proven_optimal)
            } else {
                let sub = subsample(data, size, mix_seed(seed, size))?;
                let mut c = cfg.clone();
                c.min_support = c.min_support.min(sub.n_rows() as u64);
                let r = solve(&sub, &c)?;
                (r.msd, r.proven_optimal)
            };
            points.push(LadderPoint {
                size,
                seed,
                value,
                relative_value: (full_value > 0.0).then(|| value / full_value),
                elapsed: start.elapsed().as_secs_f64(),
                proven_optimal,
            });
        }
    }
    Ok(ConvergenceLadder {
        sizes: ladder.to_vec(),
        seeds: seeds.to_vec(),
        full_value,
        points,
    })
}

fn mix_seed(seed: u64, size: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ size as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn epsilon_values() {
        assert!((theorem1_epsilon(4, 200, 0.05).unwrap() - 0.68378).abs() < 1e-5);
        assert!((theorem1_epsilon(14, 13837, 0.05).unwrap() - 0.13536).abs() < 1e-5);
    }

    #[test]
    fn epsilon_rejects_bad_delta() {
        for d in [0.0, 1.0, -0.1, 2.0, f64::NAN] {
            assert!(theorem1_epsilon(3, 10, d).is_err());
        }
        assert!(theorem1_epsilon(3, 0, 0.1).is_err());
    }

    #[test]
    fn ladder_shape() {
        let l = geometric_ladder(1000, 16000, 5).unwrap();
        assert_eq!(l, vec![1000, 2000, 4000, 8000, 16000]);
        assert!(geometric_ladder(1000, 1000, 5).is_err());
        assert!(geometric_ladder(1000, 1003, 5).is_err());
    }

    #[test]
    fn subsample_keeps_proportions() {
        let mu: Vec<[u8; 1]> = (0..300).map(|i| [(i % 2) as u8]).collect();
        let nu: Vec<[u8; 1]> = (0..100).map(|i| [(i % 3 == 0) as u8]).collect();
        let d = BinaryDataset::from_groups(&mu, &nu).unwrap();
        for size in [2, 7, 40, 101, 399, 400] {
            let s = subsample(&d, size, 3).unwrap();
            assert_eq!(s.n_rows(), size);
            let expect = size as f64 * 0.75;
            assert!((s.n_mu() as f64 - expect).abs() <= 1.0, "{size}");
        }
        assert_eq!(subsample(&d, 50, 9).unwrap(), subsample(&d, 50, 9).unwrap());
        assert!(subsample(&d, 401, 0).is_err());
    }

    #[test]
    fn identical_data_converges_to_zero() {
        // Every row carries the same pattern, so any subsample of the two
        // groups is again a pair of identical multisets.
        let rows: Vec<[u8; 3]> = vec![[1, 0, 1]; 1200];
        let d = BinaryDataset::from_groups(&rows, &rows).unwrap();
        let ladder = geometric_ladder(100, 2400, 5).unwrap();
        let cfg = SolverConfig::default();
        let r = convergence_run(&d, &cfg, &[0, 1], &ladder).unwrap();
        assert_eq!(r.points.len(), 10);
        assert!(r
            .points
            .iter()
            .all(|p| p.value == 0.0 && p.relative_value.is_none()));
    }

    proptest! {
        #[test]
        fn epsilon_monotone(p in 0usize..200, n in 1usize..1_000_000, delta in 0.001f64..0.99) {
            let e = theorem1_epsilon(p, n, delta).unwrap();
            prop_assert!(theorem1_epsilon(p, n + 1, delta).unwrap() < e);
            prop_assert!(theorem1_epsilon(p + 1, n, delta).unwrap() > e);
            prop_assert!(theorem1_epsilon(p, n, (delta + 1.0) / 2.0).unwrap() < e);
            let halved = theorem1_epsilon(p, 2 * n, delta).unwrap();
            prop_assert!((halved - e / 2f64.sqrt()).abs() <= 1e-12 * e);
        }
    }
}
