//! Synthetic populations over `{0,1}^n` with a planted discrepant subgroup.
//!
//! `μ` spreads mass `m` uniformly over the cells of the planted subgroup and
//! `1 − m` uniformly over the rest. `ν` equals `μ` except that the subgroup's
//! cells lose a fraction `γ` of their mass, which is handed to the outside
//! cells in proportion to their `μ` mass. The planted term then has
//! discrepancy `γ·m`, and for `n ≤ 12` the construction double-checks that
//! this is the maximum over all `3^n` terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dataset::{BinaryDataset, Group};
use crate::error::{MsdError, Result};
use crate::term::{Literal, Polarity, Term};

/// Largest `n` for which the true maximum is verified by enumeration.
pub const MAX_VERIFIED_FEATURES: usize = 12;
const MAX_FEATURES: usize = 63;

/// Serializable description of a population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PopulationSpec {
    pub n: usize,
    pub planted: Term,
    pub subgroup_mass: f64,
    pub gamma: f64,
    pub seed: u64,
}

impl PopulationSpec {
    /// `n = 10`, planted `f0 ∧ f1 ∧ f2 ∧ f3`, `m = 0.15`, `γ = 0.5`; true
    /// discrepancy 0.075.
    pub fn default_benchmark() -> Self {
        PopulationSpec {
            n: 10,
            planted: Term::new((0..4).map(Literal::positive)).unwrap(),
            subgroup_mass: 0.15,
            gamma: 0.5,
            seed: 0,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone)]
pub struct Population {
    spec: PopulationSpec,
    /// `(inside, outside)` per-cell probabilities.
    mu_levels: (BigRational, BigRational),
    nu_levels: (BigRational, BigRational),
    true_msd_exact: BigRational,
    true_msd: f64,
    true_argmax: Term,
    verified: bool,
    /// bits fixed by the planted term: (mask, value)
    planted_mask: u64,
    planted_value: u64,
}

fn ratio(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn pow2(e: usize) -> BigInt {
    BigInt::one() << e
}

/// Builds the population and its ground truth.
pub fn plant(
    n: usize,
    planted: Term,
    subgroup_mass: f64,
    gamma: f64,
    seed: u64,
) -> Result<Population> {
    Population::from_spec(PopulationSpec {
        n,
        planted,
        subgroup_mass,
        gamma,
        seed,
    })
}

impl Population {
    pub fn from_spec(spec: PopulationSpec) -> Result<Self> {
        let n = spec.n;
        let k = spec.planted.len();
        if n == 0 || n > MAX_FEATURES {
            return Err(MsdError::InvalidPopulation(format!(
                "n must be in 1..={MAX_FEATURES}, got {n}"
            )));
        }
        if k == 0 {
            return Err(MsdError::InvalidPopulation(
                "planted term needs at least one literal".into(),
            ));
        }
        if spec.planted.max_feature().is_some_and(|j| j >= n) {
            return Err(MsdError::InvalidPopulation(format!(
                "planted term uses a feature outside 0..{n}"
            )));
        }
        if !(spec.subgroup_mass > 0.0 && spec.subgroup_mass < 1.0) {
            return Err(MsdError::InvalidPopulation(format!(
                "subgroup mass must lie in (0, 1), got {}",
                spec.subgroup_mass
            )));
        }
        if !(0.0..=1.0).contains(&spec.gamma) {
            return Err(MsdError::InvalidPopulation(format!(
                "gamma must lie in [0, 1], got {}",
                spec.gamma
            )));
        }

        let m = ratio(spec.subgroup_mass);
        let gamma = ratio(spec.gamma);
        let one = BigRational::one();
        let inside = BigRational::from_integer(pow2(n - k));
        let outside = BigRational::from_integer(pow2(n) - pow2(n - k));
        let mu_levels = (&m / &inside, (&one - &m) / &outside);
        let nu_levels = (
            (&one - &gamma) * &m / &inside,
            (&one - &m + &gamma * &m) / &outside,
        );
        debug_assert!(
            &inside * &mu_levels.0 + &outside * &mu_levels.1 == one
                && &inside * &nu_levels.0 + &outside * &nu_levels.1 == one
        );

        let closed_form = &gamma * &m;
        let (true_msd_exact, true_argmax, verified) = if n <= MAX_VERIFIED_FEATURES {
            let (value, argmax) = enumerate_truth(n, &spec.planted, &closed_form);
            (value, argmax, true)
        } else {
            (
                closed_form.clone(),
                closed_form_argmax(&spec.planted, &closed_form),
                false,
            )
        };
        if true_msd_exact != closed_form {
            return Err(MsdError::InvalidPopulation(format!(
                "enumerated maximum {true_msd_exact} differs from gamma*m = {closed_form}"
            )));
        }

        let (mut planted_mask, mut planted_value) = (0u64, 0u64);
        for l in spec.planted.literals() {
            planted_mask |= 1 << l.feature;
            if l.polarity == Polarity::Positive {
                planted_value |= 1 << l.feature;
            }
        }
        Ok(Population {
            true_msd: true_msd_exact.to_f64().unwrap_or(f64::NAN),
            spec,
            mu_levels,
            nu_levels,
            true_msd_exact,
            true_argmax,
            verified,
            planted_mask,
            planted_value,
        })
    }

    pub fn spec(&self) -> &PopulationSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn planted(&self) -> &Term {
        &self.spec.planted
    }

    pub fn true_msd(&self) -> f64 {
        self.true_msd
    }

    pub fn true_msd_exact(&self) -> &BigRational {
        &self.true_msd_exact
    }

    pub fn true_argmax(&self) -> &Term {
        &self.true_argmax
    }

    /// Whether the ground truth came from enumerating all terms.
    pub fn verified_by_enumeration(&self) -> bool {
        self.verified
    }

    /// Whether cell (bit `j` = feature `j`) lies in the planted subgroup.
    pub fn in_subgroup(&self, cell: u64) -> bool {
        cell & self.planted_mask == self.planted_value
    }

    pub fn cell_probability_exact(&self, group: Group, cell: u64) -> BigRational {
        let levels = match group {
            Group::Mu => &self.mu_levels,
            Group::Nu => &self.nu_levels,
        };
        if self.in_subgroup(cell) {
            levels.0.clone()
        } else {
            levels.1.clone()
        }
    }

    pub fn cell_probability(&self, group: Group, cell: u64) -> f64 {
        self.cell_probability_exact(group, cell)
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// Probability that a draw from `group` falls in the planted subgroup.
    pub fn subgroup_probability(&self, group: Group) -> f64 {
        let m = self.spec.subgroup_mass;
        match group {
            Group::Mu => m,
            Group::Nu => (1.0 - self.spec.gamma) * m,
        }
    }
}

/// Maximum of `γm·|a/g − b/(C−g)|` over all terms, where `a`/`b` count the
/// inside/outside cells a term covers; ties go to the smaller term.
fn enumerate_truth(n: usize, planted: &Term, scale: &BigRational) -> (BigRational, Term) {
    if scale.is_zero() {
        return (BigRational::zero(), Term::empty());
    }
    let k = planted.len();
    let g: i128 = 1 << (n - k);
    let out: i128 = (1i128 << n) - g;
    let mut state = vec![0u8; n];
    let mut best: (i128, Term) = (0, Term::empty());
    loop {
        let mut fixed = 0usize;
        let mut union = k;
        let mut conflict = false;
        for (j, &s) in state.iter().enumerate() {
            if s == 0 {
                continue;
            }
            fixed += 1;
            let pol = if s == 1 {
                Polarity::Positive
            } else {
                Polarity::Negative
            };
            match planted.polarity_of(j) {
                Some(p) if p != pol => conflict = true,
                Some(_) => {}
                None => union += 1,
            }
        }
        let covered: i128 = 1 << (n - fixed);
        let a: i128 = if conflict { 0 } else { 1 << (n - union) };
        let b = covered - a;
        let value = (a * out - b * g).abs();
        if value >= best.0 {
            let term = Term::from_sorted_unchecked(
                state
                    .iter()
                    .enumerate()
                    .filter_map(|(j, &s)| match s {
                        1 => Some(Literal::positive(j)),
                        2 => Some(Literal::negative(j)),
                        _ => None,
                    })
                    .collect(),
            );
            if value > best.0 || term < best.1 {
                best = (value, term);
            }
        }
        let mut j = 0;
        while j < n && state[j] == 2 {
            state[j] = 0;
            j += 1;
        }
        if j == n {
            break;
        }
        state[j] += 1;
    }
    let value = scale * BigRational::new(BigInt::from(best.0), BigInt::from(g * out));
    (value, best.1)
}

/// For a single planted literal its negation ties with it; otherwise the
/// planted term is the unique maximizer.
fn closed_form_argmax(planted: &Term, scale: &BigRational) -> Term {
    if scale.is_zero() {
        return Term::empty();
    }
    if let [l] = planted.literals() {
        let flipped = Term::new([Literal {
            feature: l.feature,
            polarity: l.polarity.flip(),
        }])
        .expect("single literal");
        return planted.clone().min(flipped);
    }
    planted.clone()
}

/// Draws `n_mu` cells from `μ` and `n_nu` from `ν`, i.i.d.
pub fn sample(pop: &Population, n_mu: usize, n_nu: usize, seed: u64) -> Result<BinaryDataset> {
    if n_mu == 0 || n_nu == 0 {
        return Err(MsdError::InvalidConfig(
            "each group needs at least one sample".into(),
        ));
    }
    let n = pop.n();
    let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |group: Group| -> u64 {
        let inside = rng.gen::<f64>() < pop.subgroup_probability(group);
        loop {
            let cell = rng.gen::<u64>() & full;
            if inside {
                return (cell & !pop.planted_mask) | pop.planted_value;
            }
            if !pop.in_subgroup(cell) {
                return cell;
            }
        }
    };
    let mut rows = Vec::with_capacity(n_mu + n_nu);
    for (count, group) in [(n_mu, Group::Mu), (n_nu, Group::Nu)] {
        for _ in 0..count {
            let cell = draw(group);
            let bits: Vec<bool> = (0..n).map(|j| (cell >> j) & 1 == 1).collect();
            rows.push((bits, group));
        }
    }
    BinaryDataset::from_rows(n, rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_population() {
        let pop = plant(3, Term::new([Literal::positive(0)]).unwrap(), 0.5, 0.4, 0).unwrap();
        assert!((pop.true_msd() - 0.2).abs() < 1e-15);
        assert_eq!(
            pop.true_argmax(),
            &Term::new([Literal::positive(0)]).unwrap()
        );
        assert!(pop.verified_by_enumeration());
    }

    #[test]
    fn gamma_zero_means_equal_distributions() {
        let pop = plant(4, Term::new([Literal::positive(1)]).unwrap(), 0.3, 0.0, 0).unwrap();
        assert_eq!(pop.true_msd(), 0.0);
        assert!(pop.true_argmax().is_empty());
    }

    #[test]
    fn probabilities_sum_to_one_exactly() {
        let pop = Population::from_spec(PopulationSpec::default_benchmark()).unwrap();
        for g in [Group::Mu, Group::Nu] {
            let total: BigRational = (0..1u64 << 10)
                .map(|c| pop.cell_probability_exact(g, c))
                .sum();
            assert_eq!(total, BigRational::one());
        }
    }

    #[test]
    fn invalid_specs() {
        let t = Term::new([Literal::positive(5)]).unwrap();
        assert!(plant(3, t, 0.5, 0.5, 0).is_err());
        let t = Term::new([Literal::positive(0)]).unwrap();
        assert!(plant(3, t.clone(), 1.0, 0.5, 0).is_err());
        assert!(plant(3, t.clone(), 0.5, 1.5, 0).is_err());
        assert!(plant(3, Term::empty(), 0.5, 0.5, 0).is_err());
        let bad = r#"{"n":3,"planted":[{"feature":0,"polarity":"positive"},{"feature":0,"polarity":"negative"}],"subgroup_mass":0.5,"gamma":0.5,"seed":0}"#;
        assert!(PopulationSpec::from_json(bad).is_err());
    }

    #[test]
    fn closed_form_argmax_agrees_with_enumeration() {
        for (n, lits) in [
            (3, vec![Literal::negative(1)]),
            (5, vec![Literal::positive(0), Literal::negative(3)]),
            (6, vec![Literal::negative(2)]),
        ] {
            let t = Term::new(lits).unwrap();
            let pop = plant(n, t.clone(), 0.2, 0.7, 0).unwrap();
            let scale = ratio(0.2) * ratio(0.7);
            assert_eq!(pop.true_argmax(), &closed_form_argmax(&t, &scale));
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let pop = Population::from_spec(PopulationSpec::default_benchmark()).unwrap();
        let a = sample(&pop, 50, 60, 7).unwrap();
        let b = sample(&pop, 50, 60, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!((a.n_mu(), a.n_nu()), (50, 60));
        let one = sample(&pop, 1, 5, 0).unwrap();
        assert_eq!(one.n_mu(), 1);
    }

    #[test]
    fn spec_json_roundtrip() {
        let s = PopulationSpec::default_benchmark();
        assert_eq!(PopulationSpec::from_json(&s.to_json().unwrap()).unwrap(), s);
    }
}
