//! Audits a small mixed-type table: a continuous age column is binned, a
//! categorical race column is one-hot encoded, and the most discrepant
//! conjunction is reported in terms of the original columns.
//!
//! ```text
//! cargo run --example audit_csv
//! ```

use std::collections::HashMap;

use msd::dataset::read_csv;
use msd::report::BaselineSelection;
use msd::{audit, fit_encoding, AuditOptions, ColumnKind, SolverConfig};

fn table() -> String {
    let mut csv = String::from("age,race,smoker,cohort\n");
    for i in 0..400u32 {
        let age = 18 + (i * 7) % 63;
        let race = ["Blue", "Green", "Red"][(i % 3) as usize];
        let smoker = (i % 4 == 0) as u8;
        // Young Blue individuals are scarce in the "survey" cohort.
        let young_blue = race == "Blue" && age < 30;
        let cohort = if young_blue && i % 5 != 0 {
            "census"
        } else if i % 2 == 0 {
            "survey"
        } else {
            "census"
        };
        csv.push_str(&format!("{age},{race},{smoker},{cohort}\n"));
    }
    csv
}

fn main() -> msd::Result<()> {
    let protected: Vec<String> = ["age", "race", "smoker"].map(String::from).into();
    let kinds = HashMap::from([
        ("age".to_string(), ColumnKind::Continuous),
        ("race".to_string(), ColumnKind::Categorical),
        ("smoker".to_string(), ColumnKind::Binary),
    ]);
    let raw = read_csv(table().as_bytes(), "cohort", &protected, &kinds)?;
    let schema = fit_encoding(&raw)?;
    let data = schema.encode(&raw)?.dataset;

    let opts = AuditOptions {
        solver: SolverConfig::default().with_min_support(10),
        baselines: BaselineSelection::all(),
        ..Default::default()
    };
    let report = audit(&data, &opts)?;
    print!("{}", report.render_text());

    let parsed = data.parse_description(&report.subgroup.description)?;
    assert_eq!(parsed, report.subgroup.term);
    println!("\n{}", report.to_json()?);
    Ok(())
}
