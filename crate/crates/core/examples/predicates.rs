//! The structural predicate vector of a term.
use lcagroups::predicates::{nondense_primes, predicate_vector};
use lcagroups::terms::parse_expr;

fn main() -> lcagroups::error::Result<()> {
    for t in ["Zp(3) + C(3)", "Q + Qp(2)", "prod(Qhat, w)", "T + Prufer(2)"] {
        let e = parse_expr(t)?;
        let pv = predicate_vector(&e)?;
        println!("{t}");
        println!("  {}", serde_json::to_string(&pv).expect("serializable"));
        println!("  nondense primes: {:?}", nondense_primes(&e)?);
    }
    Ok(())
}
