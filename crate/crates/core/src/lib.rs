//! Maximum Subgroup Discrepancy (MSD) between two samples.
//!
//! MSD is the largest difference, over all conjunctions of protected-attribute
//! literals, between the share of each sample that falls into the subgroup
//! the conjunction describes. It is computed exactly, with the maximizing
//! subgroup as a readable witness, and its sampling error is controlled by a
//! bound linear in the number of literal columns.
//!
//! ```
//! use msd::{solve, BinaryDataset, SolverConfig};
//!
//! let data = BinaryDataset::from_groups(
//!     &[[1u8, 1], [1, 1], [1, 1], [0, 0]],
//!     &[[1, 1], [0, 0], [0, 0], [0, 0]],
//! )?;
//! let result = solve(&data, &SolverConfig::default().with_min_support(1))?;
//! assert_eq!(result.msd, 0.5);
//! assert_eq!(data.describe(&result.best_term), "f0 = 1");
//! # Ok::<(), msd::MsdError>(())
//! ```
//!
//! Modules:
//! - [`dataset`]: CSV loading, equal-width binning and one-hot encoding.
//! - [`solver`]: exact branch-and-bound, brute-force enumeration and the
//!   classification-loss view.
//! - [`mio`]: LP-format export of the equivalent mixed-integer model.
//! - [`distances`]: total variation, ℓ∞ over cells, MMD with the overlap kernel.
//! - [`msdd`]: enumeration of subgroup-restricted distances.
//! - [`bounds`]: the finite-sample bound and subsampling ladders.
//! - [`synth`]: populations with a planted subgroup and known ground truth.
//! - [`report`]: the audit pipeline.

pub mod bounds;
pub mod dataset;
pub mod distances;
pub mod error;
pub mod mio;
pub mod msdd;
pub mod report;
pub mod solver;
pub mod synth;
pub mod term;

pub use bounds::{convergence_run, geometric_ladder, theorem1_epsilon, ErrorBound};
pub use dataset::{
    fit_encoding, load_csv, BinaryDataset, ColumnKind, EncodingSchema, Group, RawTable,
};
pub use distances::{linf_base, mmd_overlap, total_variation};
pub use error::{MsdError, Result};
pub use mio::{export_mio, MioOptions};
pub use msdd::{count_terms, msdd_enumerate, DistanceKind, MsddConfig, MsddResult};
pub use report::{audit, AuditOptions, AuditReport};
pub use solver::{
    classification_losses, enumerate_exact, solve, ExactValue, MsdResult, Objective, SolverConfig,
};
pub use synth::{plant, sample, Population, PopulationSpec};
pub use term::{Literal, Polarity, Term};
