//! Plants a four-literal subgroup among ten features and checks how often
//! the solver recovers it exactly from 10^4 samples per group.
//!
//! ```text
//! cargo run --release --example synthetic_recovery
//! ```

use msd::{sample, solve, Population, PopulationSpec, SolverConfig};

fn main() -> msd::Result<()> {
    let pop = Population::from_spec(PopulationSpec::default_benchmark())?;
    println!(
        "population: true msd {} on {} (checked over all terms: {})",
        pop.true_msd(),
        pop.true_argmax(),
        pop.verified_by_enumeration()
    );
    let mut recovered = 0;
    let mut err = 0.0;
    for seed in 0..5 {
        let data = sample(&pop, 10_000, 10_000, seed)?;
        let r = solve(&data, &SolverConfig::default())?;
        let hit = &r.best_term == pop.planted();
        recovered += hit as usize;
        err += (r.msd - pop.true_msd()).abs();
        println!(
            "seed {seed}: {:.4} on {}{}",
            r.msd,
            data.describe(&r.best_term),
            if hit { "" } else { "  (not the planted term)" }
        );
    }
    println!("recovered {recovered}/5, mean abs error {:.4}", err / 5.0);
    Ok(())
}
