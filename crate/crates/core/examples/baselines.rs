//! The discrepancy next to total variation, the largest single-cell gap and
//! the overlap-kernel MMD. Full-cell distances react to every coordinate
//! while the subgroup discrepancy looks for one describable region.
//!
//! ```text
//! cargo run --example baselines
//! ```

use msd::distances::baselines;
use msd::{plant, sample, solve, Literal, SolverConfig, Term};

fn main() -> msd::Result<()> {
    println!(
        "{:>6} {:>8} {:>8} {:>8} {:>8}",
        "n", "msd", "tv", "linf", "mmd"
    );
    for n in [4, 8, 12, 16] {
        let planted = Term::new([Literal::positive(0), Literal::positive(1)])?;
        let pop = plant(n, planted, 0.2, 0.5, 0)?;
        let data = sample(&pop, 5_000, 5_000, 7)?;
        let r = solve(&data, &SolverConfig::default())?;
        let b = baselines(&data);
        println!(
            "{n:>6} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            r.msd, b.total_variation, b.linf, b.mmd
        );
    }
    println!("(true discrepancy 0.1 for every n)");
    Ok(())
}
