//! Brute-force search over all local Pauli operators, checked against the
//! predicted class word.
//!
//!     cargo run --release --example stabilizer_search -- K4^3

use symhyper::statevec::{build_state, build_symmetric_state, search_local_pauli_stabilizers, Hypergraph};
use symhyper::{classify, CardinalityVector, PauliWord};

fn main() -> symhyper::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "K4^3".into());
    let k: CardinalityVector = text.parse()?;
    let psi = build_symmetric_state(&k)?;
    let found = search_local_pauli_stabilizers(&psi)?;
    let predicted = PauliWord::for_class(classify(&k), k.n());
    println!("{k}: predicted {predicted:?}");
    for w in &found {
        println!("  found {w}");
    }

    // A non-symmetric hypergraph for contrast: one triangle on four vertices.
    let mut g = Hypergraph::new(4)?;
    g.add_edge(&[1, 2, 3])?;
    let found = search_local_pauli_stabilizers(&build_state(&g)?)?;
    println!("triangle on 4 vertices: {} local Pauli stabilizers", found.len());
    Ok(())
}
