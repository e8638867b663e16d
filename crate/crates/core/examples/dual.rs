//! Pontryagin duals by rule rewriting, and the involution check.
use lcagroups::duality::{check_involution, dual};
use lcagroups::terms::parse_expr;

fn main() -> lcagroups::error::Result<()> {
    for t in ["R + T", "prod(T, w)", "sum(Z, w) + C(6)", "Zp(5)", "lp(Qp(2), w)", "prod(Qhat, 3)"] {
        let e = parse_expr(t)?;
        println!("{t:20} dual: {:20} involution: {}", dual(&e)?.to_string(), check_involution(&e)?);
    }
    Ok(())
}
