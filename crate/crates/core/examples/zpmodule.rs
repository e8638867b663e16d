//! Triangular bases, purity and completion to a basis for Z_p-submodules.
use lcagroups::zpmodule::{complete_to_summand, elementary_valuations, is_pure, triangular_basis, ZpMatrix};

fn main() -> lcagroups::error::Result<()> {
    let pure = ZpMatrix::from_i64(3, 16, 3, &[vec![3, 1, 4], vec![1, 5, 9]])?;
    println!("triangular basis: {}", triangular_basis(&pure)?.to_json());
    println!("completion:       {}", complete_to_summand(&pure)?.to_json());

    let impure = ZpMatrix::from_i64(3, 16, 3, &[vec![3, 6, 0], vec![0, 1, 1]])?;
    println!("elementary valuations {:?}, pure: {}", elementary_valuations(&impure), is_pure(&impure)?);
    match complete_to_summand(&impure) {
        Ok(b) => println!("unexpected completion {}", b.to_json()),
        Err(e) => println!("completion refused: {e}"),
    }
    Ok(())
}
