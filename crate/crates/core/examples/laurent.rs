//! Truncated Laurent series over F_p and the shift action.
use lcagroups::laurent::{parse_laurent, shift_action, LaurentElt};

fn main() -> lcagroups::error::Result<()> {
    let a = parse_laurent("t^-1 + 1 + 2*t^3 + O(t^12) (p=3)")?;
    let b = LaurentElt::from_terms(3, &[(0, 1), (1, 1)], 12)?;
    println!("a = {a}");
    println!("b = {b}");
    println!("a * b = {}", a.mul(&b)?);
    println!("1 / b = {}", b.inv()?);
    println!("t^4 a = {}", shift_action(4, &a));
    Ok(())
}
