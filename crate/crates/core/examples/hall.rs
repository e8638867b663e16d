//! Orbit spans under the cyclic shift and a diagonal prime scaling.
use lcagroups::monolith::{hall_span_dimension, hall_trials};
use lcagroups::padic::parse_rational;

fn main() -> lcagroups::error::Result<()> {
    let v: Vec<_> = ["1", "-2", "1/3"].iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?;
    println!("distinct primes: span {}", hall_span_dimension(&[2, 3, 5], &v)?);
    let ones: Vec<_> = ["1", "1", "1"].iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?;
    println!("repeated primes, constant vector: span {}", hall_span_dimension(&[2, 2, 2], &ones)?);
    println!("{}", hall_trials(&[2, 3, 5, 7], 25, 9, 4)?.to_json());
    Ok(())
}
