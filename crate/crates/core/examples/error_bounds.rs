//! How many samples the deviation bound asks for.
//!
//! ```text
//! cargo run --example error_bounds
//! ```

use msd::theorem1_epsilon;

fn main() -> msd::Result<()> {
    let delta = 0.05;
    println!(
        "epsilon at delta = {delta}, confidence {}",
        1.0 - 2.0 * delta
    );
    print!("{:>8}", "N \\ |P|");
    let ps = [4, 10, 14, 20, 50];
    for p in ps {
        print!("{p:>9}");
    }
    println!();
    for n in [200, 1_000, 10_000, 13_837, 100_000, 1_000_000] {
        print!("{n:>8}");
        for p in ps {
            print!("{:>9.4}", theorem1_epsilon(p, n, delta)?);
        }
        println!();
    }

    // Smallest N with epsilon below a target, per |P|.
    for target in [0.1, 0.05] {
        for p in [10, 20] {
            let need = 16.0 * (2.0 * p as f64 + (2.0 / delta).ln()) / (2.0 * target * target);
            let n = need.ceil() as usize;
            assert!(theorem1_epsilon(p, n, delta)? <= target);
            println!("|P| = {p}: N >= {n} for epsilon <= {target}");
        }
    }
    Ok(())
}
