//! Runs theorem checkers over a generated family and tabulates the results.
//!
//! `cargo run --release --example theorem_sweep -- zn:2..30 [T3.4,T4.4]`

use std::collections::BTreeMap;

use zariski::verifier::{sweep, Family, SweepOptions, TheoremId};

fn main() -> zariski::Result<()> {
    let mut args = std::env::args().skip(1);
    let family: Family = args.next().unwrap_or_else(|| "zn:2..30".into()).parse()?;
    let theorems = match args.next() {
        Some(list) => list
            .split(',')
            .map(str::parse)
            .collect::<zariski::Result<Vec<TheoremId>>>()?,
        None => TheoremId::ALL.to_vec(),
    };
    let mut table: BTreeMap<TheoremId, [usize; 3]> = BTreeMap::new();
    let mut first: BTreeMap<TheoremId, String> = BTreeMap::new();
    let summary = sweep(
        &family,
        &SweepOptions {
            theorems,
            ..SweepOptions::default()
        },
        &mut |r| {
            let row = table.entry(r.theorem).or_default();
            row[0] += usize::from(r.applicable);
            row[1] += usize::from(r.is_counterexample());
            row[2] += usize::from(r.skipped.is_some());
            if r.is_counterexample() {
                first
                    .entry(r.theorem)
                    .or_insert_with(|| r.repro.clone().unwrap_or_default());
            }
        },
        None,
    )?;
    println!(
        "{:8} {:>10} {:>8} {:>8}",
        "theorem", "applicable", "failed", "skipped"
    );
    for (t, [a, f, s]) in &table {
        println!("{t:8} {a:>10} {f:>8} {s:>8}");
    }
    for (t, repro) in &first {
        println!("first {t} counterexample: {repro}");
    }
    println!(
        "{}",
        serde_json::to_string(&summary).expect("summary serializes")
    );
    Ok(())
}
