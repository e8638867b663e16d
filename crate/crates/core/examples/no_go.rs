//! Certificate that finitely many rational matrices leave a proper
//! submodule of Q^n invariant, with a spot check on random words.
use lcagroups::monolith::{check_words, rational_no_go, trial_rng};
use lcagroups::padic::parse_rational;

fn main() -> lcagroups::error::Result<()> {
    let rows = [["1/2", "3"], ["0", "5/3"]];
    let m: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()).collect::<Result<_, _>>()?;
    let cert = rational_no_go(&[m])?;
    println!("{}", cert.to_json());
    println!("word violation: {:?}", check_words(&cert, 500, 6, &mut trial_rng(0, 0)));
    Ok(())
}
