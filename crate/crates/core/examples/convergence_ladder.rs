//! Solves subsamples along a geometric ladder and prints the plot-ready CSV.
//!
//! ```text
//! cargo run --release --example convergence_ladder
//! ```

use msd::{
    convergence_run, geometric_ladder, sample, theorem1_epsilon, Population, PopulationSpec,
    SolverConfig,
};

fn main() -> msd::Result<()> {
    let pop = Population::from_spec(PopulationSpec::default_benchmark())?;
    let data = sample(&pop, 10_000, 10_000, 0)?;
    let ladder = geometric_ladder(1000, data.n_rows(), 5)?;
    let run = convergence_run(&data, &SolverConfig::default(), &[0, 1, 2, 3, 4], &ladder)?;

    run.write_csv("synth", std::io::stdout())?;
    println!();
    for &size in &run.sizes {
        let vals: Vec<f64> = run.at_size(size).map(|p| p.value).collect();
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        let eps = theorem1_epsilon(data.n_features(), size / 2, 0.05)?;
        println!(
            "size {size:>6}: mean {mean:.4}, |mean - truth| {:.4}, epsilon {eps:.4}",
            (mean - pop.true_msd()).abs()
        );
    }
    Ok(())
}
