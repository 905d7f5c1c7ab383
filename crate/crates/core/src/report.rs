//! The audit pipeline and its report.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::ErrorBound;
use crate::dataset::BinaryDataset;
use crate::distances::{linf_base, mmd_overlap, total_variation};
use crate::error::Result;
use crate::solver::{solve, MsdResult, SolverConfig};
use crate::term::Term;

/// Bumped whenever a field of [`AuditReport`] changes meaning or name.
pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BaselineSelection {
    pub tv: bool,
    pub linf: bool,
    pub mmd: bool,
}

impl BaselineSelection {
    pub fn all() -> Self {
        BaselineSelection {
            tv: true,
            linf: true,
            mmd: true,
        }
    }

    pub fn any(&self) -> bool {
        self.tv || self.linf || self.mmd
    }
}

#[derive(Debug, Clone)]
pub struct AuditOptions {
    pub solver: SolverConfig,
    pub delta: f64,
    pub baselines: BaselineSelection,
    /// Adds wall-clock time to the JSON, which makes reruns differ.
    pub include_timing: bool,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            solver: SolverConfig::default(),
            delta: 0.05,
            baselines: BaselineSelection::default(),
            include_timing: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetSummary {
    pub rows: usize,
    pub n_mu: usize,
    pub n_nu: usize,
    /// Raw group labels, `[mu, nu]`.
    pub group_values: [String; 2],
    pub n_literals: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubgroupSummary {
    pub description: String,
    pub term: Term,
    pub support_mu: u64,
    pub support_nu: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselineValues {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_variation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linf: Option<f64>,
    /// MMD (not squared), overlap kernel.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mmd: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolverStats {
    pub min_support: u64,
    pub nodes_explored: u64,
    pub nodes_pruned: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_seconds: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub report_version: u32,
    pub dataset: DatasetSummary,
    pub msd: f64,
    pub signed_discrepancy: f64,
    /// Group label whose sample has more mass in the subgroup, or `None`.
    pub over_represented: Option<String>,
    pub subgroup: SubgroupSummary,
    pub bound: ErrorBound,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baselines: Option<BaselineValues>,
    pub solver: SolverStats,
    pub proven_optimal: bool,
}

/// Solves, bounds and optionally computes baselines for `data`.
pub fn audit(data: &BinaryDataset, opts: &AuditOptions) -> Result<AuditReport> {
    let result = solve(data, &opts.solver)?;
    let bound = ErrorBound::for_dataset(data, opts.delta)?;
    let baselines = opts.baselines.any().then(|| BaselineValues {
        total_variation: opts.baselines.tv.then(|| total_variation(data)),
        linf: opts.baselines.linf.then(|| linf_base(data)),
        mmd: opts.baselines.mmd.then(|| mmd_overlap(data)),
    });
    Ok(build_report(data, &result, bound, baselines, opts))
}

fn build_report(
    data: &BinaryDataset,
    r: &MsdResult,
    bound: ErrorBound,
    baselines: Option<BaselineValues>,
    opts: &AuditOptions,
) -> AuditReport {
    let names = data.group_names();
    let over_represented = match r.exact.numerator.signum() {
        1 => Some(names[0].clone()),
        -1 => Some(names[1].clone()),
        _ => None,
    };
    AuditReport {
        report_version: REPORT_VERSION,
        dataset: DatasetSummary {
            rows: data.n_rows(),
            n_mu: data.n_mu(),
            n_nu: data.n_nu(),
            group_values: names.clone(),
            n_literals: data.n_features(),
        },
        msd: r.msd,
        signed_discrepancy: r.signed_discrepancy,
        over_represented,
        subgroup: SubgroupSummary {
            description: data.describe(&r.best_term),
            term: r.best_term.clone(),
            support_mu: r.support_mu,
            support_nu: r.support_nu,
        },
        bound,
        baselines,
        solver: SolverStats {
            min_support: opts.solver.min_support,
            nodes_explored: r.nodes_explored,
            nodes_pruned: r.nodes_pruned,
            elapsed_seconds: opts.include_timing.then_some(r.elapsed.as_secs_f64()),
        },
        proven_optimal: r.proven_optimal,
    }
}

impl AuditReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let d = &self.dataset;
        let _ = writeln!(
            s,
            "samples: {} ({} = {}, {} = {}), literal columns: {}",
            d.rows, d.group_values[0], d.n_mu, d.group_values[1], d.n_nu, d.n_literals
        );
        let status = if self.proven_optimal {
            "proven optimal"
        } else {
            "time limit reached, best found"
        };
        let _ = writeln!(s, "MSD: {:.6} ({status})", self.msd);
        let _ = writeln!(s, "subgroup: {}", self.subgroup.description);
        let _ = writeln!(
            s,
            "  support: {} {} / {} {}",
            self.subgroup.support_mu,
            d.group_values[0],
            self.subgroup.support_nu,
            d.group_values[1]
        );
        match &self.over_represented {
            Some(g) => {
                let _ = writeln!(s, "  over-represented in: {g}");
            }
            None => {
                let _ = writeln!(s, "  no subgroup differs");
            }
        }
        let _ = writeln!(
            s,
            "bound: population MSD <= {:.6} + {:.6} with probability >= {}",
            self.msd,
            self.bound.epsilon,
            1.0 - 2.0 * self.bound.delta
        );
        if let Some(b) = &self.baselines {
            if let Some(v) = b.total_variation {
                let _ = writeln!(s, "TV: {v:.6}");
            }
            if let Some(v) = b.linf {
                let _ = writeln!(s, "l-inf: {v:.6}");
            }
            if let Some(v) = b.mmd {
                let _ = writeln!(s, "MMD (overlap kernel): {v:.6}");
            }
        }
        let _ = writeln!(
            s,
            "solver: {} nodes explored, {} pruned",
            self.solver.nodes_explored, self.solver.nodes_pruned
        );
        s
    }
}
