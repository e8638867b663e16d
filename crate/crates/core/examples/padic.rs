//! p-adic arithmetic at fixed relative precision, fractional parts, and the
//! adelic character evaluated at a rational.
use std::collections::BTreeMap;

use lcagroups::padic::{adele_character, adele_phase, parse_padic, parse_rational, Adele, PAdic};

fn main() -> lcagroups::error::Result<()> {
    let a = PAdic::from_rational(5, &parse_rational("7/50")?, 12)?;
    let b = parse_padic("5^-1 * 3 (mod 5^8)")?;
    println!("a = {a}");
    println!("b = {b}");
    println!("a + b = {}", a.add(&b)?);
    println!("a * b = {}", a.mul(&b)?);
    println!("a / b = {}", a.div(&b)?);
    println!("{{a}}_5 = {}", a.frac_part()?);

    let mut parts = BTreeMap::new();
    parts.insert(2, PAdic::from_rational(2, &parse_rational("3/4")?, 32)?);
    parts.insert(3, PAdic::from_rational(3, &parse_rational("1/9")?, 32)?);
    let adele = Adele::new(parse_rational("1/7")?, parts, parse_rational("0")?)?;
    for r in ["1/2", "1/3", "5/6", "2/7"] {
        let r = parse_rational(r)?;
        println!("phase at {r}: {}  value {}", adele_phase(&adele, &r)?, adele_character(&adele, &r)?);
    }
    let principal = Adele::diagonal(&parse_rational("5/12")?, 32)?;
    println!("principal adele at 1/5: {}", adele_character(&principal, &parse_rational("1/5")?)?);
    Ok(())
}
