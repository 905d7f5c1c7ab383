//! Brute-force subgroup distribution distances with different plug-ins.
//!
//! ```text
//! cargo run --example msdd_enumeration
//! ```

use msd::msdd::{msdd_enumerate_with, MassDifference, TotalVariation};
use msd::{
    count_terms, msdd_enumerate, plant, sample, solve, BinaryDataset, DistanceKind, Literal,
    MsddConfig, SolverConfig, Term,
};

fn main() -> msd::Result<()> {
    let small = BinaryDataset::from_groups(&[[1u8, 0], [1, 1]], &[[1, 0], [1, 0]])?;
    let cfg = MsddConfig {
        min_support: 1,
        time_limit: None,
    };
    let r = msdd_enumerate(&small, &TotalVariation, &cfg)?;
    println!(
        "tv on 2 features: best {} on {:?}; {} evaluated, {} too small, {} one-sided",
        r.best_distance,
        r.best_term.as_ref().map(|t| small.describe(t)),
        r.subgroups_considered,
        r.subgroups_skipped_small,
        r.subgroups_skipped_one_sided
    );

    let pop = plant(
        6,
        Term::new([Literal::positive(1), Literal::negative(4)])?,
        0.3,
        0.6,
        0,
    )?;
    let data = sample(&pop, 1_000, 1_000, 3)?;
    let cfg = MsddConfig {
        min_support: 10,
        time_limit: None,
    };
    println!(
        "{} terms over {} features",
        count_terms(6),
        data.n_features()
    );
    for kind in ["tv", "mmd", "mass"] {
        let d = kind
            .parse::<DistanceKind>()?
            .build(&SolverConfig::default());
        let r = msdd_enumerate(&data, d.as_ref(), &cfg)?;
        println!(
            "{kind:>5}: {:.4} on {} in {:.2?}",
            r.best_distance,
            r.best_term.map_or("-".into(), |t| data.describe(&t)),
            r.elapsed
        );
    }

    // The mass-difference plug-in recovers the discrepancy itself.
    let mut improvements = 0;
    let r = msdd_enumerate_with(&data, &MassDifference, &cfg, |_, _| improvements += 1)?;
    let exact = solve(&data, &SolverConfig::default().with_min_support(10))?;
    println!(
        "mass: {:.4} after {improvements} improvements, solver {:.4}",
        r.best_distance, exact.msd
    );
    Ok(())
}
