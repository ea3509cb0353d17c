//! Classifies symmetric hypergraph states and prints their local Pauli stabilizer.
//!
//!     cargo run --example classify_states -- K3^2 K6^3 K4^2,3

use symhyper::classify::{classify_recursive, Palindrome, check_palindrome};
use symhyper::{classify, CardinalityVector, PauliWord};

fn main() -> symhyper::Result<()> {
    let mut states: Vec<String> = std::env::args().skip(1).collect();
    if states.is_empty() {
        states = ["K3^2", "K4^2", "K6^3", "K7^2", "K5^2,4", "K6^1,3", "K5^3"].map(String::from).to_vec();
    }
    for text in states {
        let k: CardinalityVector = text.parse()?;
        let class = classify(&k);
        assert_eq!(class, classify_recursive(&k));
        let held: Vec<String> = Palindrome::ALL
            .iter()
            .filter(|&&p| check_palindrome(&k, p))
            .map(|p| format!("{p:?}"))
            .collect();
        let word = PauliWord::for_class(class, k.n()).map_or("-".to_string(), |w| w.to_string());
        println!("{:<10} {:<8} {:<14} palindromes {:?}", k.to_string(), class.tag(), word, held);
    }
    Ok(())
}
