//! Branch-and-bound against brute force on a toy dataset, and the two
//! one-sided classification losses that sum up to the discrepancy.
//!
//! ```text
//! cargo run --example exact_solver
//! ```

use msd::{classification_losses, enumerate_exact, solve, BinaryDataset, SolverConfig};

fn main() -> msd::Result<()> {
    let data = BinaryDataset::from_groups(
        &[[1u8, 1], [1, 1], [1, 1], [0, 0]],
        &[[1, 1], [0, 0], [0, 0], [0, 0]],
    )?;
    let cfg = SolverConfig::default().with_min_support(1);

    let bb = solve(&data, &cfg)?;
    let brute = enumerate_exact(&data, &cfg)?;
    println!(
        "branch and bound: {} = {} on {} ({} nodes, {} pruned)",
        bb.msd,
        bb.exact.abs(),
        data.describe(&bb.best_term),
        bb.nodes_explored,
        bb.nodes_pruned
    );
    println!(
        "enumeration:      {} on {} ({} terms)",
        brute.msd,
        data.describe(&brute.best_term),
        brute.nodes_explored
    );
    assert_eq!(bb.exact, brute.exact);
    assert_eq!(bb.best_term, brute.best_term);

    let losses = classification_losses(&data, &cfg)?;
    println!(
        "L1 = {} (classifier {}), L2 = {} (classifier {}), 1 - min = {}",
        losses.l1.to_f64(),
        data.describe(&losses.term_l1),
        losses.l2.to_f64(),
        data.describe(&losses.term_l2),
        losses.msd().to_f64()
    );

    let strict = solve(&data, &SolverConfig::default().with_min_support(8))?;
    println!(
        "with min_support = all rows: {} on {}",
        strict.msd,
        data.describe(&strict.best_term)
    );
    Ok(())
}
