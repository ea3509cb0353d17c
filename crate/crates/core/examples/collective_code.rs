//! A one-qubit code protecting against collective `X`, `Y`, `Z` errors, built on
//! a stable symmetric state.
//!
//!     cargo run --release --example collective_code -- K6^3

use symhyper::qec::{build_code, corrupted_one_logical, knill_laflamme, knill_laflamme_check, lemma9_checks};
use symhyper::CardinalityVector;

fn main() -> symhyper::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "K6^3".into());
    let k: CardinalityVector = text.parse()?;
    let code = build_code(&k)?;
    let kl = knill_laflamme(&code)?;
    println!("{k} ({}), errors I, X, Y, Z on every qubit", code.class());
    for row in &kl.alpha {
        let cells: Vec<String> = row.iter().map(|z| format!("{:>5.1}{:+.1}i", z.re, z.im)).collect();
        println!("  [{}]", cells.join("  "));
    }
    println!("residual {:.1e}, hermitian {}", kl.max_residual, kl.hermitian);
    println!("{:?}", lemma9_checks(&code)?);

    let bad = code.with_one_logical(corrupted_one_logical(&code, 1)?)?;
    println!("with a corrupted |1_L>: correctable = {}", knill_laflamme_check(&bad));
    Ok(())
}
