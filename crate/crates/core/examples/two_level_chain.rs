//! Walks down from a single-level `X_MINUS` state, adds a level-1 edge set and
//! climbs back up until the state is `X_MINUS` again.
//!
//!     cargo run --example two_level_chain -- K7^4

use symhyper::nonlocality::build_two_level_family;
use symhyper::{classify, CardinalityVector};

fn main() -> symhyper::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "K7^4".into());
    let start: CardinalityVector = text.parse()?;
    println!("{start}  {}", classify(&start));
    for k in build_two_level_family(&start)? {
        println!("{k}  {}", classify(&k));
    }
    Ok(())
}
