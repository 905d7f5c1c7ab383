//! Export of the single-term mixed-integer model in CPLEX LP text format.
//!
//! Variables: the objective `o`, the absolute-value switch `b`, one binary
//! `z_j` per literal column and one continuous `yhat_i ∈ [0, 1]` per sample.
//! The two absolute-value rows are multiplied through by `N₁·N₂` so every
//! coefficient is an integer; the feasible set and optimum are unchanged.
//!
//! | row          | meaning                                                   |
//! |--------------|-----------------------------------------------------------|
//! | `c_abs1`     | `o ≤ mean⁺(ŷ) − mean⁻(ŷ) + 2b`                            |
//! | `c_abs2`     | `o ≤ mean⁻(ŷ) − mean⁺(ŷ) + 2(1 − b)`                      |
//! | `c_pos_i_j`  | `ŷ_i ≤ 1 − (z_j − x_ij·z_j)`                              |
//! | `c_neg_i`    | `ŷ_i ≥ 1 − Σ_j (z_j − x_ij·z_j)`                          |
//! | `c_minsize`  | `Σ_i ŷ_i ≥ min_support`                                   |

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use crate::dataset::{BinaryDataset, Group};
use crate::error::{MsdError, Result};
use crate::solver::SolverConfig;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MioOptions {
    /// Adds a column `1 − x_j` for every literal column so the model also
    /// ranges over negative literals. Off by default, which reproduces the
    /// model exactly as formulated over the given literal columns.
    pub negated_literals: bool,
}

/// Size of an exported model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MioStats {
    pub variables: usize,
    pub binary_variables: usize,
    pub constraints: usize,
}

const TERMS_PER_LINE: usize = 8;

/// Writes the model for `data` to `path`.
pub fn export_mio(
    data: &BinaryDataset,
    cfg: &SolverConfig,
    path: impl AsRef<Path>,
    opts: MioOptions,
) -> Result<MioStats> {
    let path = path.as_ref();
    let (text, stats) = render_mio(data, cfg, opts)?;
    let mut f = std::fs::File::create(path).map_err(|e| MsdError::io(path, e))?;
    f.write_all(text.as_bytes())
        .map_err(|e| MsdError::io(path, e))?;
    Ok(stats)
}

/// The model as LP text.
pub fn render_mio(
    data: &BinaryDataset,
    cfg: &SolverConfig,
    opts: MioOptions,
) -> Result<(String, MioStats)> {
    if cfg.min_support == 0 {
        return Err(MsdError::InvalidConfig(
            "min_support must be at least 1".into(),
        ));
    }
    if cfg.min_support > data.n_rows() as u64 {
        return Err(MsdError::Infeasible {
            min_support: cfg.min_support,
            total: data.n_rows() as u64,
        });
    }
    let n = data.n_features();
    let cols = if opts.negated_literals { 2 * n } else { n };
    // value of literal column `c` for row `i`
    let x = |i: usize, c: usize| -> bool {
        if c < n {
            data.bit(i, c)
        } else {
            !data.bit(i, c - n)
        }
    };
    let z = |c: usize| -> String {
        if c < n {
            format!("z_{c}")
        } else {
            format!("zn_{}", c - n)
        }
    };
    let n_rows = data.n_rows();
    let n_mu = data.n_mu() as i64;
    let n_nu = data.n_nu() as i64;
    let scale = n_mu * n_nu;

    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, "\\ single-term maximum subgroup discrepancy model");
    let _ = writeln!(
        w,
        "\\ mu samples: {n_mu}, nu samples: {n_nu}, literal columns: {cols}, min_support: {}",
        cfg.min_support
    );
    let _ = writeln!(w, "\\ c_abs1/c_abs2 are scaled by {scale} = |I+|*|I-|");
    let _ = writeln!(w, "Maximize");
    let _ = writeln!(w, " obj: o");
    let _ = writeln!(w, "Subject To");

    let mut constraints = 0;
    // c_abs1: N1N2 o - N2 Σ+ yhat + N1 Σ- yhat - 2 N1N2 b <= 0
    // c_abs2: N1N2 o + N2 Σ+ yhat - N1 Σ- yhat + 2 N1N2 b <= 2 N1N2
    for (name, sign, rhs) in [("c_abs1", 1i64, 0i64), ("c_abs2", -1, 2 * scale)] {
        let mut terms = vec![(scale, "o".to_string())];
        for i in 0..n_rows {
            let coef = match data.group(i) {
                Group::Mu => -sign * n_nu,
                Group::Nu => sign * n_mu,
            };
            terms.push((coef, format!("yhat_{i}")));
        }
        terms.push((-sign * 2 * scale, "b".to_string()));
        write_row(w, name, &terms, "<=", rhs);
        constraints += 1;
    }
    for i in 0..n_rows {
        for c in 0..cols {
            let mut terms = vec![(1, format!("yhat_{i}"))];
            if !x(i, c) {
                terms.push((1, z(c)));
            }
            write_row(w, &format!("c_pos_{i}_{c}"), &terms, "<=", 1);
            constraints += 1;
        }
    }
    for i in 0..n_rows {
        let mut terms = vec![(1, format!("yhat_{i}"))];
        terms.extend((0..cols).filter(|&c| !x(i, c)).map(|c| (1, z(c))));
        write_row(w, &format!("c_neg_{i}"), &terms, ">=", 1);
        constraints += 1;
    }
    let terms: Vec<(i64, String)> = (0..n_rows).map(|i| (1, format!("yhat_{i}"))).collect();
    write_row(w, "c_minsize", &terms, ">=", cfg.min_support as i64);
    constraints += 1;

    let _ = writeln!(w, "Bounds");
    let _ = writeln!(w, " o free");
    for i in 0..n_rows {
        let _ = writeln!(w, " 0 <= yhat_{i} <= 1");
    }
    let _ = writeln!(w, "Binary");
    let mut line = String::from(" b");
    for c in 0..cols {
        line.push(' ');
        line.push_str(&z(c));
        if (c + 1) % TERMS_PER_LINE == 0 {
            let _ = writeln!(w, "{line}");
            line.clear();
        }
    }
    if !line.is_empty() {
        let _ = writeln!(w, "{line}");
    }
    let _ = writeln!(w, "End");

    Ok((
        out,
        MioStats {
            variables: 2 + cols + n_rows,
            binary_variables: 1 + cols,
            constraints,
        },
    ))
}

fn write_row(w: &mut String, name: &str, terms: &[(i64, String)], sense: &str, rhs: i64) {
    let _ = write!(w, " {name}:");
    for (k, (coef, var)) in terms.iter().enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            let _ = write!(w, "\n   ");
        }
        let sign = if *coef < 0 { '-' } else { '+' };
        let mag = coef.abs();
        if mag == 1 {
            let _ = write!(w, " {sign} {var}");
        } else {
            let _ = write!(w, " {sign} {mag} {var}");
        }
    }
    let _ = writeln!(w, " {sense} {rhs}");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> BinaryDataset {
        BinaryDataset::from_groups(
            &[[1u8, 1], [1, 1], [1, 1], [0, 0]],
            &[[1, 1], [0, 0], [0, 0], [0, 0]],
        )
        .unwrap()
    }

    #[test]
    fn toy_counts() {
        let cfg = SolverConfig::default().with_min_support(1);
        let (text, stats) = render_mio(&toy(), &cfg, MioOptions::default()).unwrap();
        assert_eq!(stats.variables, 1 + 1 + 2 + 8);
        assert_eq!(stats.constraints, 8 * 2 + 8 + 1 + 2);
        assert!(text.contains(" c_minsize:"));
        assert!(text.contains(">= 1\n"));
        assert!(text.contains("c_pos_3_1: + yhat_3 + z_1 <= 1"));
        assert!(text.contains("c_pos_0_1: + yhat_0 <= 1"));
        assert!(text.contains("c_neg_7: + yhat_7 + z_0 + z_1 >= 1"));
        assert!(text.starts_with("\\ single-term"));
        assert!(text.trim_end().ends_with("End"));
    }

    #[test]
    fn negated_columns_double_literals() {
        let cfg = SolverConfig::default().with_min_support(2);
        let (_, stats) = render_mio(
            &toy(),
            &cfg,
            MioOptions {
                negated_literals: true,
            },
        )
        .unwrap();
        assert_eq!(stats.variables, 2 + 4 + 8);
        assert_eq!(stats.constraints, 8 * 4 + 8 + 1 + 2);
    }

    #[test]
    fn infeasible_min_support() {
        let cfg = SolverConfig::default().with_min_support(100);
        assert!(render_mio(&toy(), &cfg, MioOptions::default()).is_err());
    }
}
