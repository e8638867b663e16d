//! Normal closures in the finite window AGL1(q)^k x| C_k.
use lcagroups::monolith::{wreath_monolith_window, DEFAULT_BUDGET};

fn main() -> lcagroups::error::Result<()> {
    let report = wreath_monolith_window(4, 3, 20, 1, DEFAULT_BUDGET)?;
    println!("{}", report.to_json());
    Ok(())
}
