//! Decide characteristic simplicity for a few terms and print the verdicts.
use lcagroups::classify::characteristically_simple;
use lcagroups::terms::parse_expr;

fn main() -> lcagroups::error::Result<()> {
    let terms = [
        "prod(C(5), w) + sum(C(5), w)",
        "R + prod(R, 2)",
        "lp(Qp(3), w) + Qp(3)",
        "prod(Qhat, 2)",
        "Z",
        "Q + Qp(2)",
        "Qp(2) + Qp(3)",
    ];
    for t in terms {
        let v = characteristically_simple(&parse_expr(t)?)?;
        println!("{t:32} {v}");
        println!("{:32} {}", "", v.to_json());
    }
    Ok(())
}
