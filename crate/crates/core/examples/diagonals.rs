//! Distinct invariant diagonals {(a, l a)} in Q_p x Q_p.
use lcagroups::monolith::diagonal_minimals;
use lcagroups::padic::{parse_rational, PAdic};

fn main() -> lcagroups::error::Result<()> {
    let lambdas = ["1", "3", "1/2", "-5", "7/3"]
        .iter()
        .map(|s| PAdic::from_rational(2, &parse_rational(s)?, 16))
        .collect::<Result<Vec<_>, _>>()?;
    println!("{}", diagonal_minimals(2, &lambdas, 3, 16)?.to_json());
    Ok(())
}
