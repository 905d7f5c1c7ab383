//! Writes the mixed-integer model of a toy dataset in LP format.
//!
//! ```text
//! cargo run --example export_mio [out.lp]
//! ```

use msd::mio::render_mio;
use msd::{export_mio, BinaryDataset, MioOptions, SolverConfig};

fn main() -> msd::Result<()> {
    let data = BinaryDataset::from_groups(
        &[[1u8, 1], [1, 1], [1, 1], [0, 0]],
        &[[1, 1], [0, 0], [0, 0], [0, 0]],
    )?;
    let cfg = SolverConfig::default().with_min_support(1);
    match std::env::args().nth(1) {
        Some(path) => {
            let stats = export_mio(&data, &cfg, &path, MioOptions::default())?;
            println!("wrote {path}: {stats:?}");
        }
        None => {
            let (text, stats) = render_mio(&data, &cfg, MioOptions::default())?;
            print!("{text}");
            eprintln!("{stats:?}");
        }
    }
    let (_, with_negations) = render_mio(
        &data,
        &cfg,
        MioOptions {
            negated_literals: true,
        },
    )?;
    eprintln!("with negated literal columns: {with_negations:?}");
    Ok(())
}
