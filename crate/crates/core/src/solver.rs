//! Exact maximization of the subgroup discrepancy `|μ̂(S) − ν̂(S)|` over all
//! conjunctions `S` with at least `min_support` covered samples.
//!
//! [`solve`] is a depth-first branch-and-bound over the features in a fixed
//! order; every node fixes one more literal (`x_j` or `x̄_j`) and skipping a
//! feature corresponds to moving on to a later one. For any extension `S′` of
//! `S`, `|μ̂(S′) − ν̂(S′)| ≤ max(μ̂(S), ν̂(S))`, which is the pruning bound;
//! support shrinks along the same extensions, so under-supported nodes are cut
//! with their subtrees. [`enumerate_exact`] visits all `3^n` terms and is the
//! brute-force reference.
//!
//! All objective values are kept as integers over the common denominator
//! `N₁·N₂`, so comparisons and tie-breaks are exact.

use std::sync::atomic::{AtomicBool, AtomicI64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dataset::{BinaryDataset, Pattern};
use crate::error::{MsdError, Result};
use crate::term::{Literal, Polarity, Term};

/// Default minimum number of covered samples for a feasible subgroup.
pub const DEFAULT_MIN_SUPPORT: u64 = 10;
/// Default wall-clock budget per solve.
pub const DEFAULT_TIME_LIMIT: Duration = Duration::from_secs(600);

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub min_support: u64,
    /// `None` runs to completion.
    pub time_limit: Option<Duration>,
    /// Worker threads for [`solve`]; 1 searches sequentially.
    pub threads: usize,
    /// Disables the discrepancy bound (support pruning always applies).
    pub pruning: bool,
    /// [`enumerate_exact`] refuses datasets with more features than this.
    pub max_enumeration_features: usize,
    /// [`enumerate_exact`] also refuses when `3^n × distinct rows` exceeds
    /// this many term evaluations.
    pub max_enumeration_work: u128,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            min_support: DEFAULT_MIN_SUPPORT,
            time_limit: Some(DEFAULT_TIME_LIMIT),
            threads: 1,
            pruning: true,
            max_enumeration_features: 20,
            max_enumeration_work: 10_000_000_000,
        }
    }
}

impl SolverConfig {
    pub fn with_min_support(mut self, min_support: u64) -> Self {
        self.min_support = min_support;
        self
    }

    pub fn with_time_limit(mut self, limit: Option<Duration>) -> Self {
        self.time_limit = limit;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_pruning(mut self, pruning: bool) -> Self {
        self.pruning = pruning;
        self
    }

    fn validate(&self, data: &BinaryDataset) -> Result<()> {
        if self.min_support == 0 {
            return Err(MsdError::InvalidConfig(
                "min_support must be at least 1".into(),
            ));
        }
        if self.threads == 0 {
            return Err(MsdError::InvalidConfig("threads must be at least 1".into()));
        }
        let total = data.n_rows() as u64;
        if total == 0 {
            return Err(MsdError::InvalidDataset("empty dataset".into()));
        }
        if self.min_support > total {
            return Err(MsdError::Infeasible {
                min_support: self.min_support,
                total,
            });
        }
        (data.n_mu() as i64)
            .checked_mul(data.n_nu() as i64)
            .ok_or_else(|| MsdError::InvalidDataset("group sizes too large".into()))?;
        Ok(())
    }
}

/// An exact rational `numerator / (n_mu · n_nu)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactValue {
    pub numerator: i64,
    pub n_mu: u64,
    pub n_nu: u64,
}

impl ExactValue {
    pub fn denominator(&self) -> i64 {
        (self.n_mu * self.n_nu) as i64
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator as f64 / self.denominator() as f64
    }

    pub fn abs(self) -> Self {
        ExactValue {
            numerator: self.numerator.abs(),
            ..self
        }
    }

    /// `μ̂(S) − ν̂(S)` for `S` covering `mu` and `nu` samples.
    pub fn signed(mu: u64, nu: u64, n_mu: u64, n_nu: u64) -> Self {
        ExactValue {
            numerator: mu as i64 * n_nu as i64 - nu as i64 * n_mu as i64,
            n_mu,
            n_nu,
        }
    }
}

impl std::fmt::Display for ExactValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator())
    }
}

/// Which difference of subgroup masses is maximized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// `|μ̂(S) − ν̂(S)|`
    Absolute,
    /// `μ̂(S) − ν̂(S)`
    MuOverNu,
    /// `ν̂(S) − μ̂(S)`
    NuOverMu,
}

impl Objective {
    #[inline]
    fn value(self, diff: i64) -> i64 {
        match self {
            Objective::Absolute => diff.abs(),
            Objective::MuOverNu => diff,
            Objective::NuOverMu => -diff,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MsdResult {
    pub best_term: Term,
    /// `μ̂(S) − ν̂(S)` of the best term.
    pub signed_discrepancy: f64,
    /// `|signed_discrepancy|`.
    pub msd: f64,
    pub exact: ExactValue,
    pub support_mu: u64,
    pub support_nu: u64,
    pub proven_optimal: bool,
    pub nodes_explored: u64,
    pub nodes_pruned: u64,
    pub elapsed: Duration,
}

impl MsdResult {
    fn from_best(
        term: Term,
        (mu, nu): (u64, u64),
        data: &BinaryDataset,
        stats: (u64, u64, bool, Duration),
    ) -> Self {
        let exact = ExactValue::signed(mu, nu, data.n_mu() as u64, data.n_nu() as u64);
        let signed = exact.to_f64();
        MsdResult {
            best_term: term,
            signed_discrepancy: signed,
            msd: signed.abs(),
            exact,
            support_mu: mu,
            support_nu: nu,
            proven_optimal: stats.2,
            nodes_explored: stats.0,
            nodes_pruned: stats.1,
            elapsed: stats.3,
        }
    }

    pub fn support(&self) -> u64 {
        self.support_mu + self.support_nu
    }

    /// Exact objective value under `objective`.
    pub fn objective_value(&self, objective: Objective) -> ExactValue {
        ExactValue {
            numerator: objective.value(self.exact.numerator),
            ..self.exact
        }
    }
}

/// Maximum subgroup discrepancy with a certificate of global optimality.
///
/// If the time limit expires first, the best term found so far is returned
/// with `proven_optimal = false`.
pub fn solve(data: &BinaryDataset, cfg: &SolverConfig) -> Result<MsdResult> {
    solve_objective(data, cfg, Objective::Absolute)
}

/// Branch-and-bound for any of the three objectives.
pub fn solve_objective(
    data: &BinaryDataset,
    cfg: &SolverConfig,
    objective: Objective,
) -> Result<MsdResult> {
    cfg.validate(data)?;
    let start = Instant::now();
    let search = Search::new(data, cfg, objective, start);
    let root: Vec<u32> = (0..search.n_patterns() as u32).collect();
    let totals = (data.n_mu() as u64, data.n_nu() as u64);

    let mut root_worker = Worker::new(data.n_mu() as u64, data.n_nu() as u64);
    root_worker.explored = 1;
    let workers = if cfg.threads <= 1 || search.order.is_empty() {
        search.expand(&mut root_worker, &root, totals, 0);
        vec![root_worker]
    } else {
        let tasks: Vec<(usize, Polarity)> = (0..search.order.len())
            .flat_map(|p| [(p, Polarity::Positive), (p, Polarity::Negative)])
            .collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| MsdError::InvalidConfig(format!("thread pool: {e}")))?;
        let mut done: Vec<Worker> = pool.install(|| {
            tasks
                .par_iter()
                .map(|&(pos, pol)| {
                    let mut w = Worker::new(data.n_mu() as u64, data.n_nu() as u64);
                    let j = search.order[pos];
                    let counts = search.counts(&search.filter(&root, j, pol));
                    search.visit(
                        &mut w,
                        Literal {
                            feature: j,
                            polarity: pol,
                        },
                        &root,
                        counts,
                        pos,
                    );
                    w
                })
                .collect()
        });
        done.push(root_worker);
        done
    };

    let mut explored = 0;
    let mut pruned = 0;
    let mut best: Option<Worker> = None;
    for w in workers {
        explored += w.explored;
        pruned += w.pruned;
        best = match best {
            None => Some(w),
            Some(b) => {
                let better = w.best_value > b.best_value
                    || (w.best_value == b.best_value && w.best_term < b.best_term);
                Some(if better { w } else { b })
            }
        };
    }
    let best = best.expect("at least one worker");
    let stopped = search.stop.load(Ordering::Relaxed);
    Ok(MsdResult::from_best(
        best.best_term,
        best.best_counts,
        data,
        (explored, pruned, !stopped, start.elapsed()),
    ))
}

struct Search {
    /// Distinct rows, `words` words each.
    bits: Vec<u64>,
    words: usize,
    mu: Vec<u64>,
    nu: Vec<u64>,
    n_mu: i64,
    n_nu: i64,
    min_support: u64,
    order: Vec<usize>,
    objective: Objective,
    pruning: bool,
    deadline: Option<Instant>,
    shared_best: AtomicI64,
    stop: AtomicBool,
}

struct Worker {
    best_value: i64,
    best_term: Term,
    best_counts: (u64, u64),
    explored: u64,
    pruned: u64,
    ticks: u64,
    path: Vec<Literal>,
}

impl Worker {
    fn new(n_mu: u64, n_nu: u64) -> Self {
        // The empty term covers everything and has discrepancy 0.
        Worker {
            best_value: 0,
            best_term: Term::empty(),
            best_counts: (n_mu, n_nu),
            explored: 0,
            pruned: 0,
            ticks: 0,
            path: Vec::new(),
        }
    }
}

const CLOCK_CHECK_INTERVAL: u64 = 1024;

impl Search {
    fn new(data: &BinaryDataset, cfg: &SolverConfig, objective: Objective, start: Instant) -> Self {
        let patterns: Vec<Pattern> = data.aggregate();
        let words = patterns.first().map_or(1, |p| p.words.len());
        let n_mu = data.n_mu() as i64;
        let n_nu = data.n_nu() as i64;

        // Strongest single literals first.
        let mut keyed: Vec<(i64, usize)> = (0..data.n_features())
            .map(|j| {
                let (mut pm, mut pn) = (0i64, 0i64);
                for p in patterns.iter().filter(|p| p.bit(j)) {
                    pm += p.mu as i64;
                    pn += p.nu as i64;
                }
                let pos = pm * n_nu - pn * n_mu;
                let neg = (n_mu - pm) * n_nu - (n_nu - pn) * n_mu;
                (objective.value(pos).max(objective.value(neg)), j)
            })
            .collect();
        keyed.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        Search {
            bits: patterns
                .iter()
                .flat_map(|p| p.words.iter().copied())
                .collect(),
            words,
            mu: patterns.iter().map(|p| p.mu).collect(),
            nu: patterns.iter().map(|p| p.nu).collect(),
            n_mu,
            n_nu,
            min_support: cfg.min_support,
            order: keyed.into_iter().map(|(_, j)| j).collect(),
            objective,
            pruning: cfg.pruning,
            deadline: cfg.time_limit.map(|t| start + t),
            shared_best: AtomicI64::new(0),
            stop: AtomicBool::new(false),
        }
    }

    fn n_patterns(&self) -> usize {
        self.mu.len()
    }

    #[inline]
    fn bit(&self, row: u32, j: usize) -> bool {
        (self.bits[row as usize * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    /// Upper bound on the objective of every extension of a term covering
    /// `mu`/`nu` samples.
    #[inline]
    fn bound(&self, mu: i64, nu: i64) -> i64 {
        let a = mu * self.n_nu;
        let b = nu * self.n_mu;
        match self.objective {
            Objective::Absolute => a.max(b),
            Objective::MuOverNu => a,
            Objective::NuOverMu => b,
        }
    }

    fn filter(&self, rows: &[u32], j: usize, pol: Polarity) -> Vec<u32> {
        rows.iter()
            .copied()
            .filter(|&r| pol.accepts(self.bit(r, j)))
            .collect()
    }

    fn counts(&self, rows: &[u32]) -> (u64, u64) {
        rows.iter().fold((0, 0), |(m, n), &r| {
            (m + self.mu[r as usize], n + self.nu[r as usize])
        })
    }

    fn out_of_time(&self, w: &mut Worker) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        w.ticks += 1;
        if w.ticks % CLOCK_CHECK_INTERVAL == 1 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.stop.store(true, Ordering::Relaxed);
                    return true;
                }
            }
        }
        false
    }

    /// Explores all extensions of the current path, which covers `rows`
    /// (`mu`/`nu` samples), using features at search positions `start..`.
    fn expand(&self, w: &mut Worker, rows: &[u32], (mu, nu): (u64, u64), start: usize) {
        for pos in start..self.order.len() {
            let j = self.order[pos];
            let (mut pm, mut pn) = (0, 0);
            for &r in rows {
                if self.bit(r, j) {
                    pm += self.mu[r as usize];
                    pn += self.nu[r as usize];
                }
            }
            if self.out_of_time(w) {
                return;
            }
            self.visit(w, Literal::positive(j), rows, (pm, pn), pos);
            if self.out_of_time(w) {
                return;
            }
            self.visit(w, Literal::negative(j), rows, (mu - pm, nu - pn), pos);
        }
    }

    /// Evaluates the current path extended by `lit`; `parent` holds the rows
    /// of the path without it.
    fn visit(
        &self,
        w: &mut Worker,
        lit: Literal,
        parent: &[u32],
        (mu, nu): (u64, u64),
        pos: usize,
    ) {
        w.explored += 1;
        if mu + nu < self.min_support {
            w.pruned += 1;
            return;
        }
        w.path.push(lit);
        let diff = mu as i64 * self.n_nu - nu as i64 * self.n_mu;
        let value = self.objective.value(diff);
        if value >= w.best_value {
            let mut lits = w.path.clone();
            lits.sort();
            let term = Term::from_sorted_unchecked(lits);
            if value > w.best_value || term < w.best_term {
                w.best_value = value;
                w.best_term = term;
                w.best_counts = (mu, nu);
                self.shared_best.fetch_max(value, Ordering::Relaxed);
            }
        }
        if pos + 1 < self.order.len() {
            let bound = self.bound(mu as i64, nu as i64);
            let global = self.shared_best.load(Ordering::Relaxed);
            let prune = self.pruning
                && (bound < w.best_value.max(global)
                    || (bound == w.best_value && w.path.len() + 1 > w.best_term.len()));
            if prune {
                w.pruned += 1;
            } else {
                let rows = self.filter(parent, lit.feature, lit.polarity);
                self.expand(w, &rows, (mu, nu), pos + 1);
            }
        }
        w.path.pop();
    }
}

/// Number of terms over `n` features, `3^n`, if it fits in `u128`.
fn term_space(n: usize) -> Option<u128> {
    3u128.checked_pow(n as u32)
}

/// Exhaustive reference: evaluates every one of the `3^n` terms.
pub fn enumerate_exact(data: &BinaryDataset, cfg: &SolverConfig) -> Result<MsdResult> {
    enumerate_exact_objective(data, cfg, Objective::Absolute)
}

pub fn enumerate_exact_objective(
    data: &BinaryDataset,
    cfg: &SolverConfig,
    objective: Objective,
) -> Result<MsdResult> {
    cfg.validate(data)?;
    let n = data.n_features();
    if n > cfg.max_enumeration_features || n > 64 {
        return Err(MsdError::EnumerationTooLarge {
            n_features: n,
            reason: format!("limit is {} features", cfg.max_enumeration_features.min(64)),
        });
    }
    let patterns = data.aggregate();
    let work = term_space(n).and_then(|t| t.checked_mul(patterns.len() as u128));
    match work {
        Some(w) if w <= cfg.max_enumeration_work => {}
        _ => {
            return Err(MsdError::EnumerationTooLarge {
                n_features: n,
                reason: format!(
                    "3^{n} terms × {} distinct rows exceeds the work budget of {}",
                    patterns.len(),
                    cfg.max_enumeration_work
                ),
            })
        }
    }
    let rows: Vec<(u64, u64, u64)> = patterns.iter().map(|p| (p.words[0], p.mu, p.nu)).collect();
    let (n_mu, n_nu) = (data.n_mu() as i64, data.n_nu() as i64);
    let start = Instant::now();
    let deadline = cfg.time_limit.map(|t| start + t);

    // state[j]: 0 = feature absent, 1 = x_j, 2 = x̄_j
    let mut state = vec![0u8; n];
    let mut best: Option<(i64, Term, (u64, u64))> = None;
    let mut visited = 0u64;
    let mut infeasible = 0u64;
    let mut completed = true;
    loop {
        visited += 1;
        let (mut mask, mut want) = (0u64, 0u64);
        for (j, &s) in state.iter().enumerate() {
            if s != 0 {
                mask |= 1 << j;
                if s == 1 {
                    want |= 1 << j;
                }
            }
        }
        let (mut mu, mut nu) = (0u64, 0u64);
        for &(bits, m, v) in &rows {
            if bits & mask == want {
                mu += m;
                nu += v;
            }
        }
        if mu + nu < cfg.min_support {
            infeasible += 1;
        } else {
            let value = objective.value(mu as i64 * n_nu - nu as i64 * n_mu);
            let replace = match &best {
                None => true,
                Some((bv, bt, _)) => value > *bv || (value == *bv && term_from_state(&state) < *bt),
            };
            if replace {
                best = Some((value, term_from_state(&state), (mu, nu)));
            }
        }

        // odometer
        let mut j = 0;
        while j < n && state[j] == 2 {
            state[j] = 0;
            j += 1;
        }
        if j == n {
            break;
        }
        state[j] += 1;
        if visited.is_multiple_of(CLOCK_CHECK_INTERVAL) {
            if let Some(d) = deadline {
                if Instant::now() >= d {
                    completed = false;
                    break;
                }
            }
        }
    }
    let (_, term, counts) = best.expect("empty term is feasible");
    Ok(MsdResult::from_best(
        term,
        counts,
        data,
        (visited, infeasible, completed, start.elapsed()),
    ))
}

fn term_from_state(state: &[u8]) -> Term {
    Term::from_sorted_unchecked(
        state
            .iter()
            .enumerate()
            .filter_map(|(j, &s)| match s {
                1 => Some(Literal::positive(j)),
                2 => Some(Literal::negative(j)),
                _ => None,
            })
            .collect(),
    )
}

/// Balanced 0-1 losses of the best single-term classifiers in both label
/// directions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationLosses {
    /// `1 − max_S (μ̂(S) − ν̂(S))`
    pub l1: ExactValue,
    /// `1 − max_S (ν̂(S) − μ̂(S))`
    pub l2: ExactValue,
    pub term_l1: Term,
    pub term_l2: Term,
    pub proven_optimal: bool,
}

impl ClassificationLosses {
    /// `1 − min(L1, L2)`, exactly.
    pub fn msd(&self) -> ExactValue {
        let den = self.l1.denominator();
        ExactValue {
            numerator: den - self.l1.numerator.min(self.l2.numerator),
            ..self.l1
        }
    }
}

/// Solves both label directions separately; `1 − min(L1, L2)` equals the
/// maximum subgroup discrepancy.
pub fn classification_losses(
    data: &BinaryDataset,
    cfg: &SolverConfig,
) -> Result<ClassificationLosses> {
    let a = solve_objective(data, cfg, Objective::MuOverNu)?;
    let b = solve_objective(data, cfg, Objective::NuOverMu)?;
    let loss = |r: &MsdResult, o: Objective| {
        let v = r.objective_value(o);
        ExactValue {
            numerator: v.denominator() - v.numerator,
            ..v
        }
    };
    Ok(ClassificationLosses {
        l1: loss(&a, Objective::MuOverNu),
        l2: loss(&b, Objective::NuOverMu),
        term_l1: a.best_term,
        term_l2: b.best_term,
        proven_optimal: a.proven_optimal && b.proven_optimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> BinaryDataset {
        BinaryDataset::from_groups(
            &[[1u8, 1], [1, 1], [1, 1], [0, 0]],
            &[[1, 1], [0, 0], [0, 0], [0, 0]],
        )
        .unwrap()
    }

    fn cfg(min_support: u64) -> SolverConfig {
        SolverConfig::default().with_min_support(min_support)
    }

    #[test]
    fn toy_example_value_and_tie_break() {
        // 9 terms by hand: {f0+}, {f1+}, {f0+,f1+} give +0.5; {f0-}, {f1-},
        // {f0-,f1-} give -0.5; the rest give 0.
        let r = solve(&toy(), &cfg(1)).unwrap();
        assert_eq!(r.msd, 0.5);
        assert_eq!(r.signed_discrepancy, 0.5);
        assert_eq!(r.best_term, Term::new([Literal::positive(0)]).unwrap());
        assert_eq!((r.support_mu, r.support_nu), (3, 1));
        assert!(r.proven_optimal);

        let e = enumerate_exact(&toy(), &cfg(1)).unwrap();
        assert_eq!(e.exact, r.exact);
        assert_eq!(e.best_term, r.best_term);
        assert_eq!(e.nodes_explored, 9);
    }

    #[test]
    fn identical_samples_give_empty_term() {
        let rows = [[1u8, 0, 1], [0, 1, 1], [1, 1, 0]];
        let d = BinaryDataset::from_groups(&rows, &rows).unwrap();
        let r = solve(&d, &cfg(1)).unwrap();
        assert_eq!(r.msd, 0.0);
        assert!(r.best_term.is_empty());
    }

    #[test]
    fn full_min_support_forces_empty_term() {
        let r = solve(&toy(), &cfg(8)).unwrap();
        assert!(r.best_term.is_empty());
        assert_eq!(r.msd, 0.0);
        let e = enumerate_exact(&toy(), &cfg(8)).unwrap();
        assert!(e.best_term.is_empty());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            solve(&toy(), &cfg(9)),
            Err(MsdError::Infeasible {
                min_support: 9,
                total: 8
            })
        ));
        assert!(matches!(
            solve(&toy(), &cfg(0)),
            Err(MsdError::InvalidConfig(_))
        ));
        let mut c = cfg(1);
        c.max_enumeration_features = 1;
        assert!(matches!(
            enumerate_exact(&toy(), &c),
            Err(MsdError::EnumerationTooLarge { .. })
        ));
    }

    #[test]
    fn classification_losses_on_toy() {
        let l = classification_losses(&toy(), &cfg(1)).unwrap();
        assert_eq!(l.l1.to_f64(), 0.5);
        assert_eq!(l.l2.to_f64(), 0.5);
        assert_eq!(l.msd().to_f64(), 0.5);
    }

    #[test]
    fn classification_losses_identical() {
        let rows = [[1u8, 0], [0, 1]];
        let d = BinaryDataset::from_groups(&rows, &rows).unwrap();
        let l = classification_losses(&d, &cfg(1)).unwrap();
        assert_eq!(l.l1.to_f64(), 1.0);
        assert_eq!(l.l2.to_f64(), 1.0);
        assert_eq!(l.msd().numerator, 0);
    }

    #[test]
    fn one_sided_losses() {
        // ν sits on f0 = 1 where μ has little mass.
        let d = BinaryDataset::from_groups(
            &[[0u8, 1], [0, 0], [0, 1], [1, 0]],
            &[[1, 1], [1, 0], [1, 1], [1, 0]],
        )
        .unwrap();
        let l = classification_losses(&d, &cfg(1)).unwrap();
        // By enumeration: max(μ−ν) = 0.75 at {f0−}, max(ν−μ) = 0.75 at {f0+}.
        let e1 = enumerate_exact_objective(&d, &cfg(1), Objective::MuOverNu).unwrap();
        let e2 = enumerate_exact_objective(&d, &cfg(1), Objective::NuOverMu).unwrap();
        assert_eq!(
            l.l1.numerator,
            l.l1.denominator() - e1.objective_value(Objective::MuOverNu).numerator
        );
        assert_eq!(
            l.l2.numerator,
            l.l2.denominator() - e2.objective_value(Objective::NuOverMu).numerator
        );

        // μ uniform over four cells, ν entirely on (1,1):
        // max(μ−ν) = 0.5 at {f0−}, max(ν−μ) = 0.75 at {f0+, f1+}
        let skewed = BinaryDataset::from_groups(
            &[[0u8, 0], [0, 1], [1, 0], [1, 1]],
            &[[1, 1], [1, 1], [1, 1], [1, 1]],
        )
        .unwrap();
        let l = classification_losses(&skewed, &cfg(1)).unwrap();
        assert_eq!(l.l1.to_f64(), 0.5);
        assert_eq!(l.l2.to_f64(), 0.25);
        assert!(l.l2.numerator < l.l1.numerator);
        assert_eq!(l.msd(), solve(&skewed, &cfg(1)).unwrap().exact.abs());
    }

    #[test]
    fn label_swap_negates_signed() {
        let r = solve(&toy(), &cfg(1)).unwrap();
        let s = solve(&toy().swap_groups(), &cfg(1)).unwrap();
        assert_eq!(r.msd, s.msd);
        assert_eq!(r.exact.numerator, -s.exact.numerator);
    }

    #[test]
    fn zero_features() {
        let d = BinaryDataset::from_groups::<[u8; 0]>(&[[]], &[[]]).unwrap();
        let r = solve(&d, &cfg(1)).unwrap();
        assert!(r.best_term.is_empty());
        assert_eq!(r.nodes_explored, 1);
        let e = enumerate_exact(&d, &cfg(1)).unwrap();
        assert_eq!(e.nodes_explored, 1);
    }

    #[test]
    fn tiny_time_limit_flags_incumbent() {
        let rows: Vec<Vec<u8>> = (0..4096u32)
            .map(|i| (0..12).map(|b| ((i >> b) & 1) as u8).collect())
            .collect();
        let d = BinaryDataset::from_groups(&rows, &rows).unwrap();
        let c = cfg(1).with_time_limit(Some(Duration::ZERO));
        let r = solve(&d, &c).unwrap();
        assert!(!r.proven_optimal);
        assert!(r.best_term.is_empty());
    }
}
