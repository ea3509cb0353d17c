//! Enumerates the stable states on each number of qubits.
//!
//!     cargo run --release --example count_stable -- 14

use symhyper::classify::{enumerate_stable, predicted_x_plus_count};
use symhyper::StabilizerClass;

fn main() -> symhyper::Result<()> {
    let max_n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    println!("{:>3} {:>8} {:>8} {:>8} {:>10}", "n", "X_PLUS", "X_MINUS", "Y_PLUS", "2^⌊n/2⌋-1");
    for n in 2..=max_n {
        let counts: Vec<usize> = StabilizerClass::STABLE
            .iter()
            .map(|&c| enumerate_stable(n, c).map(|v| v.len()))
            .collect::<Result<_, _>>()?;
        println!(
            "{n:>3} {:>8} {:>8} {:>8} {:>10}",
            counts[0],
            counts[1],
            counts[2],
            predicted_x_plus_count(n)
        );
    }
    for k in enumerate_stable(8, StabilizerClass::XPlus)? {
        print!("{k} ");
    }
    println!();
    Ok(())
}
