mod common;

use common::{brute_force_lp, dataset_strategy, parse_lp};
use msd::mio::render_mio;
use msd::{export_mio, solve, BinaryDataset, MioOptions, SolverConfig};
use num_rational::Ratio;
use proptest::prelude::*;

fn toy() -> BinaryDataset {
    BinaryDataset::from_groups(
        &[[1u8, 1], [1, 1], [1, 1], [0, 0]],
        &[[1, 1], [0, 0], [0, 0], [0, 0]],
    )
    .unwrap()
}

fn scaled_optimum(data: &BinaryDataset, cfg: &SolverConfig, negated: bool) -> Ratio<i64> {
    let (text, _) = render_mio(
        data,
        cfg,
        MioOptions {
            negated_literals: negated,
        },
    )
    .unwrap();
    brute_force_lp(&parse_lp(&text))
        .expect("model has a feasible point")
        .0
}

#[test]
fn toy_model_optimum_is_one_half() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("toy.lp");
    let cfg = SolverConfig::default().with_min_support(1);
    let stats = export_mio(&toy(), &cfg, &path, MioOptions::default()).unwrap();
    let lp = parse_lp(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(lp.rows.len(), stats.constraints);
    assert_eq!(lp.binaries, ["b", "z_0", "z_1"]);
    let (o, point) = brute_force_lp(&lp).unwrap();
    assert_eq!(o, Ratio::new(1, 2));
    // o is only bounded through the scaled rows: o <= (rhs - rest) / (N1·N2)
    assert_eq!(point["z_0"] + point["z_1"], 1);
}

#[test]
fn min_support_row_cuts_small_terms() {
    // With every row required, only the empty term is feasible.
    let cfg = SolverConfig::default().with_min_support(8);
    assert_eq!(scaled_optimum(&toy(), &cfg, false), Ratio::from_integer(0));
}

#[test]
fn verbatim_model_misses_negative_literals() {
    // The only perfect separator is f0 = 1 AND f1 = 0.
    let d = BinaryDataset::from_groups(&[[1u8, 0], [1, 0]], &[[1, 1], [0, 0]]).unwrap();
    let cfg = SolverConfig::default().with_min_support(1);
    let r = solve(&d, &cfg).unwrap();
    assert_eq!(r.msd, 1.0);
    assert_eq!(d.describe(&r.best_term), "f0 = 1 AND f1 = 0");
    assert_eq!(scaled_optimum(&d, &cfg, true), Ratio::from_integer(1));
    assert_eq!(scaled_optimum(&d, &cfg, false), Ratio::new(1, 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn negated_model_reproduces_solver(d in dataset_strategy(3, 10), ms in 1u64..4) {
        let ms = ms.min(d.n_rows() as u64);
        let cfg = SolverConfig::default().with_min_support(ms);
        let r = solve(&d, &cfg).unwrap();
        let o = scaled_optimum(&d, &cfg, true);
        prop_assert_eq!(o, Ratio::new(r.exact.numerator.abs(), r.exact.denominator()));
    }

    #[test]
    fn verbatim_model_is_a_relaxation_from_below(d in dataset_strategy(3, 10)) {
        let cfg = SolverConfig::default().with_min_support(1);
        let r = solve(&d, &cfg).unwrap();
        let o = scaled_optimum(&d, &cfg, false);
        prop_assert!(o <= Ratio::new(r.exact.numerator.abs(), r.exact.denominator()));
    }
}
