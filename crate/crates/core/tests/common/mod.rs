#![allow(dead_code)]

use std::collections::HashMap;

use msd::{BinaryDataset, Group, Literal, Polarity, Term};
use num_rational::Ratio;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rows drawn from per-group Bernoulli profiles, with some rows copied from a
/// small pool so that duplicates and shared cells are common.
pub fn random_dataset(rng: &mut ChaCha8Rng, max_features: usize, max_rows: usize) -> BinaryDataset {
    let n = rng.gen_range(1..=max_features);
    let total = rng.gen_range(2..=max_rows);
    let n_mu = rng.gen_range(1..total);
    let profile = |rng: &mut ChaCha8Rng| -> Vec<f64> { (0..n).map(|_| rng.gen()).collect() };
    let (p_mu, p_nu) = (profile(rng), profile(rng));
    let pool: Vec<Vec<bool>> = (0..4)
        .map(|_| (0..n).map(|_| rng.gen_bool(0.5)).collect())
        .collect();
    let rows: Vec<(Vec<bool>, Group)> = (0..total)
        .map(|i| {
            let (g, p) = if i < n_mu {
                (Group::Mu, &p_mu)
            } else {
                (Group::Nu, &p_nu)
            };
            let row = if rng.gen_bool(0.3) {
                pool[rng.gen_range(0..pool.len())].clone()
            } else {
                p.iter().map(|&q| rng.gen_bool(q)).collect()
            };
            (row, g)
        })
        .collect();
    BinaryDataset::from_rows(n, rows).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Datasets with up to `max_features` columns and `2..=max_rows` rows, both
/// groups non-empty.
pub fn dataset_strategy(
    max_features: usize,
    max_rows: usize,
) -> impl Strategy<Value = BinaryDataset> {
    (1..=max_features).prop_flat_map(move |n| {
        prop::collection::vec(
            (prop::collection::vec(any::<bool>(), n), any::<bool>()),
            2..=max_rows,
        )
        .prop_map(move |mut rows| {
            rows[0].1 = true;
            rows[1].1 = false;
            let rows = rows
                .into_iter()
                .map(|(r, mu)| (r, if mu { Group::Mu } else { Group::Nu }));
            BinaryDataset::from_rows(n, rows).unwrap()
        })
    })
}

/// Every term over `n` features, in no particular order.
pub fn all_terms(n: usize) -> Vec<Term> {
    let mut out = vec![Vec::new()];
    for j in 0..n {
        let mut next = Vec::with_capacity(out.len() * 3);
        for lits in out {
            next.push(lits.clone());
            for pol in [Polarity::Positive, Polarity::Negative] {
                let mut l: Vec<Literal> = lits.clone();
                l.push(Literal {
                    feature: j,
                    polarity: pol,
                });
                next.push(l);
            }
        }
        out = next;
    }
    out.into_iter().map(|l| Term::new(l).unwrap()).collect()
}

/// `|μ̂(S) − ν̂(S)|` as an exact fraction.
pub fn discrepancy(data: &BinaryDataset, term: &Term) -> Ratio<i64> {
    let (a, b) = data.support(term);
    let v = Ratio::new(a as i64, data.n_mu() as i64) - Ratio::new(b as i64, data.n_nu() as i64);
    if v < Ratio::from_integer(0) {
        -v
    } else {
        v
    }
}

/// A parsed LP model: maximize `objective` subject to rows, bounds ignored
/// except for binaries (all other variables are continuous).
#[derive(Debug)]
pub struct Lp {
    pub objective: Vec<(i64, String)>,
    pub rows: Vec<Row>,
    pub binaries: Vec<String>,
    pub free: Vec<String>,
    pub bounded: HashMap<String, (i64, i64)>,
}

#[derive(Debug, Clone)]
pub struct Row {
    pub name: String,
    pub terms: Vec<(i64, String)>,
    pub sense: String,
    pub rhs: i64,
}

fn parse_terms(tokens: &[&str]) -> Vec<(i64, String)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let sign = match tokens[i] {
            "+" => 1,
            "-" => -1,
            t => panic!("expected sign, got {t}"),
        };
        i += 1;
        let (coef, var) = match tokens[i].parse::<i64>() {
            Ok(c) => {
                i += 1;
                (c, tokens[i])
            }
            Err(_) => (1, tokens[i]),
        };
        i += 1;
        out.push((sign * coef, var.to_string()));
    }
    out
}

pub fn parse_lp(text: &str) -> Lp {
    let mut section = "";
    let mut statements: Vec<(String, String)> = Vec::new();
    for raw in text.lines() {
        let line = raw.split('\\').next().unwrap().trim_end();
        if line.trim().is_empty() {
            continue;
        }
        if let s @ ("Maximize" | "Subject To" | "Bounds" | "Binary" | "End") = line.trim() {
            section = s;
            continue;
        }
        let continuation = line.starts_with("   ") && !statements.is_empty();
        if continuation && statements.last().unwrap().0 == section {
            statements.last_mut().unwrap().1.push(' ');
            statements.last_mut().unwrap().1.push_str(line.trim());
        } else {
            statements.push((section.to_string(), line.trim().to_string()));
        }
    }
    let mut lp = Lp {
        objective: Vec::new(),
        rows: Vec::new(),
        binaries: Vec::new(),
        free: Vec::new(),
        bounded: HashMap::new(),
    };
    for (section, stmt) in statements {
        match section.as_str() {
            "Maximize" => {
                let (_, body) = stmt.split_once(':').unwrap();
                let toks: Vec<&str> = body.split_whitespace().collect();
                let toks = if toks[0] == "+" || toks[0] == "-" {
                    toks
                } else {
                    std::iter::once("+").chain(toks).collect()
                };
                lp.objective = parse_terms(&toks);
            }
            "Subject To" => {
                let (name, body) = stmt.split_once(':').unwrap();
                let toks: Vec<&str> = body.split_whitespace().collect();
                let n = toks.len();
                lp.rows.push(Row {
                    name: name.trim().to_string(),
                    terms: parse_terms(&toks[..n - 2]),
                    sense: toks[n - 2].to_string(),
                    rhs: toks[n - 1].parse().unwrap(),
                });
            }
            "Bounds" => {
                let toks: Vec<&str> = stmt.split_whitespace().collect();
                match toks.as_slice() {
                    [v, "free"] => lp.free.push(v.to_string()),
                    [lo, "<=", v, "<=", hi] => {
                        lp.bounded
                            .insert(v.to_string(), (lo.parse().unwrap(), hi.parse().unwrap()));
                    }
                    other => panic!("unexpected bound {other:?}"),
                }
            }
            "Binary" => lp
                .binaries
                .extend(stmt.split_whitespace().map(String::from)),
            other => panic!("statement outside a section: {other} {stmt}"),
        }
    }
    lp
}

/// Best objective over all binary assignments. Each assignment must force
/// every bounded continuous variable to a single value through the rows
/// that mention only it; the free objective variable then takes the largest
/// value its rows allow.
pub fn brute_force_lp(lp: &Lp) -> Option<(Ratio<i64>, HashMap<String, i64>)> {
    assert_eq!(lp.objective.len(), 1, "objective must be a single variable");
    let obj = lp.objective[0].1.clone();
    assert!(lp.binaries.len() <= 16, "too many binaries to enumerate");
    let mut best: Option<(Ratio<i64>, HashMap<String, i64>)> = None;
    for mask in 0u32..(1 << lp.binaries.len()) {
        let mut val: HashMap<String, i64> = lp
            .binaries
            .iter()
            .enumerate()
            .map(|(k, v)| (v.clone(), ((mask >> k) & 1) as i64))
            .collect();
        // Interval of each bounded continuous variable.
        let mut range: HashMap<&str, (Ratio<i64>, Ratio<i64>)> = lp
            .bounded
            .iter()
            .map(|(v, &(lo, hi))| (v.as_str(), (Ratio::from(lo), Ratio::from(hi))))
            .collect();
        for row in &lp.rows {
            let unknown: Vec<&(i64, String)> = row
                .terms
                .iter()
                .filter(|(_, v)| !val.contains_key(v))
                .collect();
            if unknown.len() != 1 || unknown[0].1 == obj {
                continue;
            }
            let (c, v) = unknown[0];
            let rest: i64 = row
                .terms
                .iter()
                .filter(|(_, w)| w != v)
                .map(|(k, w)| k * val[w])
                .sum();
            let bound = Ratio::new(row.rhs - rest, *c);
            let r = range
                .get_mut(v.as_str())
                .expect("row over an unbounded variable");
            let upper = (row.sense == "<=") == (*c > 0);
            if upper {
                r.1 = r.1.min(bound);
            } else {
                r.0 = r.0.max(bound);
            }
        }
        if range.values().any(|(lo, hi)| lo > hi) {
            continue;
        }
        for (v, (lo, hi)) in &range {
            assert_eq!(lo, hi, "{v} is not forced by the binaries");
            assert!(lo.is_integer());
            val.insert(v.to_string(), lo.to_integer());
        }
        let mut o_max: Option<Ratio<i64>> = None;
        let mut feasible = true;
        for row in &lp.rows {
            let oc: i64 = row
                .terms
                .iter()
                .filter(|(_, v)| *v == obj)
                .map(|(c, _)| c)
                .sum();
            let rest: i64 = row
                .terms
                .iter()
                .filter(|(_, v)| *v != obj)
                .map(|(k, w)| k * val[w])
                .sum();
            if oc == 0 {
                let ok = match row.sense.as_str() {
                    "<=" => rest <= row.rhs,
                    ">=" => rest >= row.rhs,
                    _ => rest == row.rhs,
                };
                feasible &= ok;
            } else {
                assert!(
                    oc > 0 && row.sense == "<=",
                    "objective must be bounded above"
                );
                let b = Ratio::new(row.rhs - rest, oc);
                o_max = Some(o_max.map_or(b, |m| m.min(b)));
            }
        }
        if !feasible {
            continue;
        }
        let o = o_max.expect("objective unbounded");
        if best.as_ref().is_none_or(|(b, _)| o > *b) {
            best = Some((o, val));
        }
    }
    best
}
