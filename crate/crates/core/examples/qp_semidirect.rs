//! Floor of the Z_p-module generated by p^k a for |k| <= K.
use lcagroups::monolith::qp_semidirect_monolith;
use lcagroups::padic::parse_padic;

fn main() -> lcagroups::error::Result<()> {
    let a = parse_padic("3^2 * 7 (mod 3^20)")?;
    for k in [0, 1, 4] {
        println!("{}", qp_semidirect_monolith(k, &a)?.to_json());
    }
    Ok(())
}
