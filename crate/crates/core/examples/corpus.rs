//! Replay the bundled golden corpus and classify a seeded random corpus.
use std::collections::BTreeMap;

use lcagroups::classify::characteristically_simple;
use lcagroups::corpus::{generated_corpus, replay_golden};
use lcagroups::monolith::trial_rng;

fn main() -> lcagroups::error::Result<()> {
    let report = replay_golden()?;
    println!("golden: {} entries, {} mismatches", report.total, report.mismatches.len());

    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    for e in generated_corpus(&mut trial_rng(5, 0), 300, 3) {
        let key = match characteristically_simple(&e) {
            Ok(v) => match (&v.canonical, v.failed_condition) {
                (Some(c), _) => c.family().to_string(),
                (None, Some(n)) => format!("fails condition {n}"),
                _ => unreachable!(),
            },
            Err(_) => "trivial".to_string(),
        };
        *tally.entry(key).or_default() += 1;
    }
    for (k, n) in tally {
        println!("{k:24} {n}");
    }
    Ok(())
}
