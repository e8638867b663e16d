//! Shifts of a random nonzero series span a truncation window of F_p((t)).
use lcagroups::monolith::laurent_ideal_density;

fn main() -> lcagroups::error::Result<()> {
    for p in [2, 3, 5] {
        println!("{}", laurent_ideal_density(p, 16, 50, 9)?.to_json());
    }
    Ok(())
}
