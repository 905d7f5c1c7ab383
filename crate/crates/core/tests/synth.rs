mod common;

use common::all_terms;
use msd::{
    plant, sample, solve, Group, Literal, Polarity, Population, PopulationSpec, SolverConfig, Term,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn term_mask(term: &Term) -> (u64, u64) {
    term.literals().iter().fold((0, 0), |(m, v), l| {
        let bit = 1u64 << l.feature;
        (
            m | bit,
            if l.polarity == Polarity::Positive {
                v | bit
            } else {
                v
            },
        )
    })
}

/// `max_S |μ(S) − ν(S)|` over all terms, summing exact cell probabilities.
fn enumerate_population(pop: &Population) -> (BigRational, Term) {
    let n = pop.n();
    let cells = 1u64 << n;
    let diff: Vec<BigRational> = (0..cells)
        .map(|c| {
            pop.cell_probability_exact(Group::Mu, c) - pop.cell_probability_exact(Group::Nu, c)
        })
        .collect();
    let mut best = (BigRational::zero(), Term::empty());
    for t in all_terms(n) {
        let (mask, value) = term_mask(&t);
        let v: BigRational = (0..cells)
            .filter(|c| c & mask == value)
            .map(|c| &diff[c as usize])
            .sum::<BigRational>()
            .abs();
        if v > best.0 || (v == best.0 && t < best.1) {
            best = (v, t);
        }
    }
    best
}

#[test]
fn benchmark_population() {
    let pop = Population::from_spec(PopulationSpec::default_benchmark()).unwrap();
    assert!(pop.verified_by_enumeration());
    assert!((pop.true_msd() - 0.075).abs() < 1e-15);
    assert_eq!(pop.true_argmax(), pop.planted());
    for g in [Group::Mu, Group::Nu] {
        let total: BigRational = (0..1024).map(|c| pop.cell_probability_exact(g, c)).sum();
        assert_eq!(total, BigRational::from_integer(BigInt::from(1)));
    }
    // Independent brute force over the 1024 cells in floating point.
    let mut best = 0.0f64;
    let p: Vec<f64> = (0..1024u64)
        .map(|c| pop.cell_probability(Group::Mu, c) - pop.cell_probability(Group::Nu, c))
        .collect();
    for t in all_terms(10) {
        let (mask, value) = term_mask(&t);
        let v: f64 = (0..1024u64)
            .filter(|c| c & mask == value)
            .map(|c| p[c as usize])
            .sum();
        best = best.max(v.abs());
    }
    assert!((best - 0.075).abs() < 1e-12);
}

#[test]
fn single_row_sample() {
    let pop = Population::from_spec(PopulationSpec::default_benchmark()).unwrap();
    let d = sample(&pop, 1, 5, 0).unwrap();
    assert_eq!((d.n_mu(), d.n_nu()), (1, 5));
}

#[test]
fn empirical_subgroup_mass() {
    let pop = Population::from_spec(PopulationSpec::default_benchmark()).unwrap();
    let d = sample(&pop, 50_000, 50_000, 11).unwrap();
    let (a, b) = d.support(pop.planted());
    let (pm, pn) = (a as f64 / 50_000.0, b as f64 / 50_000.0);
    // 5 standard deviations
    assert!((pm - 0.15).abs() < 5.0 * (0.15f64 * 0.85 / 5e4).sqrt());
    assert!((pn - 0.075).abs() < 5.0 * (0.075f64 * 0.925 / 5e4).sqrt());
}

#[test]
fn error_shrinks_along_ladder() {
    let pop = Population::from_spec(PopulationSpec::default_benchmark()).unwrap();
    let sizes = [1_000, 2_000, 4_000, 8_000, 16_000, 32_000];
    let errors: Vec<f64> = sizes
        .iter()
        .map(|&n| {
            (0..5u64)
                .map(|seed| {
                    let d = sample(&pop, n, n, 1000 + seed).unwrap();
                    (solve(&d, &SolverConfig::default()).unwrap().msd - pop.true_msd()).abs()
                })
                .sum::<f64>()
                / 5.0
        })
        .collect();
    let steps = errors.windows(2).filter(|w| w[1] <= w[0]).count();
    println!("mean errors along the ladder: {errors:?}");
    assert!(
        steps >= 4,
        "only {steps} of 5 steps non-increasing: {errors:?}"
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closed_form_matches_enumeration(
        n in 1usize..=5,
        lits in prop::collection::vec((0usize..5, any::<bool>()), 1..=5),
        m in 0.05f64..0.95,
        gamma in 0.0f64..=1.0,
    ) {
        let mut seen = std::collections::BTreeMap::new();
        for (f, pos) in lits {
            seen.entry(f % n).or_insert(pos);
        }
        let planted = Term::new(seen.into_iter().map(|(f, pos)| {
            if pos { Literal::positive(f) } else { Literal::negative(f) }
        })).unwrap();
        let pop = plant(n, planted, m, gamma, 0).unwrap();
        let (v, t) = enumerate_population(&pop);
        prop_assert_eq!(&v, pop.true_msd_exact());
        prop_assert_eq!(&t, pop.true_argmax());
    }
}
