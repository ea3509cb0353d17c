//! Cardinalities, hyperedge indicators and sign vectors, and the Pascal matrix
//! that maps between them.
//!
//!     cargo run --example sign_vectors -- K6^1,3

use symhyper::pascal::pascal_matrix;
use symhyper::sym_core::{e_from_g, g_from_e, indicator_from_cardinalities, sign_vector};
use symhyper::CardinalityVector;

fn main() -> symhyper::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "K6^1,3".into());
    let k: CardinalityVector = text.parse()?;
    let n = k.n();

    let a = pascal_matrix(n)?;
    println!("Pascal matrix mod 2, n = {n}:");
    for i in 0..=n {
        let row: String = (0..=n).map(|j| if a.get(i, j) == 1 { '1' } else { '.' }).collect();
        println!("  {row}");
    }

    let g = indicator_from_cardinalities(&k);
    let e = e_from_g(&g);
    println!("{k}");
    println!("  g = {:?}", g.to_vec());
    println!("  e = {:?}", e.to_vec());
    println!("  f = {:?}", sign_vector(&k).entries());
    assert_eq!(g_from_e(&e)?, g);
    Ok(())
}
