//! Exact solve on 20 binary features and 10^5 samples per group, where the
//! term space (3^20 ≈ 3.5·10^9) is far beyond brute force.
//!
//! ```text
//! cargo run --release --example solver_scale
//! ```

use std::time::Instant;

use msd::{count_terms, enumerate_exact, plant, sample, solve, Literal, SolverConfig, Term};

fn main() -> msd::Result<()> {
    let planted = Term::new([
        Literal::positive(2),
        Literal::negative(7),
        Literal::positive(11),
        Literal::positive(16),
    ])?;
    let pop = plant(20, planted, 0.15, 0.5, 0)?;
    let t = Instant::now();
    let data = sample(&pop, 100_000, 100_000, 1)?;
    println!("sampled {} rows in {:.2?}", data.n_rows(), t.elapsed());

    let cfg = SolverConfig::default();
    let r = solve(&data, &cfg)?;
    println!("term space: {} terms", count_terms(data.n_features()));
    println!(
        "msd = {:.5} (true {:.5}) on {}",
        r.msd,
        pop.true_msd(),
        data.describe(&r.best_term)
    );
    println!(
        "proven optimal: {}, {} nodes explored, {} pruned, {:.2?}",
        r.proven_optimal, r.nodes_explored, r.nodes_pruned, r.elapsed
    );
    match enumerate_exact(&data, &cfg) {
        Ok(_) => println!("enumeration finished"),
        Err(e) => println!("enumeration: {e}"),
    }
    Ok(())
}
