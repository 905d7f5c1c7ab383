//! Maximum subgroup distribution distance by brute-force enumeration.
//!
//! Every term is visited in lexicographic order over `(feature, state)` with
//! the states ordered absent, `x_j`, `x̄_j`. Both samples are restricted to the
//! rows the term selects and a pluggable distance is evaluated on the pair.
//! Terms covering fewer than `min_support` rows, or no rows of one sample, are
//! skipped.

use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use serde::Serialize;

use crate::dataset::{BinaryDataset, Group};
use crate::distances::{mmd_overlap, total_variation};
use crate::error::{MsdError, Result};
use crate::solver::{solve, SolverConfig};
use crate::term::{Literal, Term};

/// The subgroup a distance is evaluated on.
pub struct Restriction<'a> {
    parent: &'a BinaryDataset,
    term: &'a Term,
    rows: &'a [usize],
    support_mu: u64,
    support_nu: u64,
}

impl<'a> Restriction<'a> {
    pub fn parent(&self) -> &BinaryDataset {
        self.parent
    }

    pub fn term(&self) -> &Term {
        self.term
    }

    pub fn rows(&self) -> &[usize] {
        self.rows
    }

    pub fn support_mu(&self) -> u64 {
        self.support_mu
    }

    pub fn support_nu(&self) -> u64 {
        self.support_nu
    }

    /// Selected rows as a dataset over all literal columns of the parent.
    pub fn dataset(&self) -> Result<BinaryDataset> {
        self.parent.subset(self.rows)
    }
}

/// A distance between the two samples restricted to a subgroup.
pub trait SubgroupDistance: Sync {
    fn name(&self) -> &str;
    fn evaluate(&self, subgroup: &Restriction<'_>) -> Result<f64>;
}

pub struct TotalVariation;

impl SubgroupDistance for TotalVariation {
    fn name(&self) -> &str {
        "tv"
    }

    fn evaluate(&self, s: &Restriction<'_>) -> Result<f64> {
        Ok(total_variation(&s.dataset()?))
    }
}

pub struct MmdOverlap;

impl SubgroupDistance for MmdOverlap {
    fn name(&self) -> &str {
        "mmd"
    }

    fn evaluate(&self, s: &Restriction<'_>) -> Result<f64> {
        Ok(mmd_overlap(&s.dataset()?))
    }
}

/// Maximum subgroup discrepancy between the restricted samples.
pub struct RestrictedMsd {
    pub config: SolverConfig,
}

impl SubgroupDistance for RestrictedMsd {
    fn name(&self) -> &str {
        "msd"
    }

    fn evaluate(&self, s: &Restriction<'_>) -> Result<f64> {
        let d = s.dataset()?;
        let mut cfg = self.config.clone();
        cfg.min_support = cfg.min_support.min(d.n_rows() as u64);
        Ok(solve(&d, &cfg)?.msd)
    }
}

/// `|μ̂(S) − ν̂(S)|` measured against the unrestricted sample sizes.
pub struct MassDifference;

impl SubgroupDistance for MassDifference {
    fn name(&self) -> &str {
        "mass"
    }

    fn evaluate(&self, s: &Restriction<'_>) -> Result<f64> {
        let n_mu = s.parent.n_mu() as i64;
        let n_nu = s.parent.n_nu() as i64;
        let num = s.support_mu as i64 * n_nu - s.support_nu as i64 * n_mu;
        Ok(num.abs() as f64 / (n_mu * n_nu) as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceKind {
    TotalVariation,
    Mmd,
    Msd,
    Mass,
}

impl FromStr for DistanceKind {
    type Err = MsdError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "tv" | "total_variation" => Ok(DistanceKind::TotalVariation),
            "mmd" => Ok(DistanceKind::Mmd),
            "msd" => Ok(DistanceKind::Msd),
            "mass" => Ok(DistanceKind::Mass),
            _ => Err(MsdError::UnknownDistance(s.to_string())),
        }
    }
}

impl DistanceKind {
    /// The plug-in; `inner` configures the solver behind [`DistanceKind::Msd`].
    pub fn build(self, inner: &SolverConfig) -> Box<dyn SubgroupDistance> {
        match self {
            DistanceKind::TotalVariation => Box::new(TotalVariation),
            DistanceKind::Mmd => Box::new(MmdOverlap),
            DistanceKind::Msd => Box::new(RestrictedMsd {
                config: inner.clone(),
            }),
            DistanceKind::Mass => Box::new(MassDifference),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MsddConfig {
    pub min_support: u64,
    pub time_limit: Option<Duration>,
}

impl Default for MsddConfig {
    fn default() -> Self {
        MsddConfig {
            min_support: crate::solver::DEFAULT_MIN_SUPPORT,
            time_limit: Some(crate::solver::DEFAULT_TIME_LIMIT),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MsddResult {
    /// `None` when every visited term was skipped.
    pub best_term: Option<Term>,
    pub best_distance: f64,
    /// Terms on which the distance was evaluated.
    pub subgroups_considered: u64,
    pub subgroups_skipped_small: u64,
    pub subgroups_skipped_one_sided: u64,
    pub completed: bool,
    pub elapsed: Duration,
}

impl MsddResult {
    /// All visited terms, evaluated or skipped.
    pub fn visited(&self) -> u64 {
        self.subgroups_considered + self.subgroups_skipped_small + self.subgroups_skipped_one_sided
    }
}

pub fn msdd_enumerate(
    data: &BinaryDataset,
    distance: &dyn SubgroupDistance,
    cfg: &MsddConfig,
) -> Result<MsddResult> {
    msdd_enumerate_with(data, distance, cfg, |_, _| {})
}

/// Like [`msdd_enumerate`], calling `on_improve` every time the incumbent
/// changes.
pub fn msdd_enumerate_with(
    data: &BinaryDataset,
    distance: &dyn SubgroupDistance,
    cfg: &MsddConfig,
    mut on_improve: impl FnMut(f64, &Term),
) -> Result<MsddResult> {
    if cfg.min_support == 0 {
        return Err(MsdError::InvalidConfig(
            "min_support must be at least 1".into(),
        ));
    }
    let start = Instant::now();
    let mut e = Enumerator {
        data,
        distance,
        min_support: cfg.min_support,
        deadline: cfg.time_limit.map(|t| start + t),
        path: Vec::new(),
        best: None,
        considered: 0,
        small: 0,
        one_sided: 0,
        stopped: false,
        on_improve: &mut on_improve,
    };
    let rows: Vec<usize> = (0..data.n_rows()).collect();
    e.walk(0, &rows)?;
    let (best_term, best_distance) = match e.best {
        Some((d, t)) => (Some(t), d),
        None => (None, 0.0),
    };
    Ok(MsddResult {
        best_term,
        best_distance,
        subgroups_considered: e.considered,
        subgroups_skipped_small: e.small,
        subgroups_skipped_one_sided: e.one_sided,
        completed: !e.stopped,
        elapsed: start.elapsed(),
    })
}

struct Enumerator<'a, F: FnMut(f64, &Term)> {
    data: &'a BinaryDataset,
    distance: &'a dyn SubgroupDistance,
    min_support: u64,
    deadline: Option<Instant>,
    path: Vec<Literal>,
    best: Option<(f64, Term)>,
    considered: u64,
    small: u64,
    one_sided: u64,
    stopped: bool,
    on_improve: &'a mut F,
}

impl<F: FnMut(f64, &Term)> Enumerator<'_, F> {
    fn walk(&mut self, feature: usize, rows: &[usize]) -> Result<()> {
        if self.stopped {
            return Ok(());
        }
        if feature == self.data.n_features() {
            return self.leaf(rows);
        }
        self.walk(feature + 1, rows)?;
        for lit in [Literal::positive(feature), Literal::negative(feature)] {
            let sub: Vec<usize> = rows
                .iter()
                .copied()
                .filter(|&r| lit.polarity.accepts(self.data.bit(r, feature)))
                .collect();
            self.path.push(lit);
            let res = self.walk(feature + 1, &sub);
            self.path.pop();
            res?;
        }
        Ok(())
    }

    fn leaf(&mut self, rows: &[usize]) -> Result<()> {
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                self.stopped = true;
                return Ok(());
            }
        }
        if (rows.len() as u64) < self.min_support {
            self.small += 1;
            return Ok(());
        }
        let mu = rows
            .iter()
            .filter(|&&r| self.data.group(r) == Group::Mu)
            .count() as u64;
        let nu = rows.len() as u64 - mu;
        if mu == 0 || nu == 0 {
            self.one_sided += 1;
            return Ok(());
        }
        self.considered += 1;
        let term = Term::from_sorted_unchecked(self.path.clone());
        let value = self.distance.evaluate(&Restriction {
            parent: self.data,
            term: &term,
            rows,
            support_mu: mu,
            support_nu: nu,
        })?;
        let better = match &self.best {
            None => true,
            Some((bd, bt)) => value > *bd || (value == *bd && term < *bt),
        };
        if better {
            (self.on_improve)(value, &term);
            self.best = Some((value, term));
        }
        Ok(())
    }
}

/// `3^n`, the number of terms over `n` binary literal columns.
pub fn count_terms(n_features: usize) -> BigUint {
    BigUint::from(3u32).pow(n_features as u32)
}
