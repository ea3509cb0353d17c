//! Mermin operator built from the stabilizer of an `X_MINUS` state: quantum
//! value against the best classical assignment.
//!
//!     cargo run --release --example mermin_violation

use symhyper::nonlocality::{classical_max, MerminSystem, SearchBudget};
use symhyper::CardinalityVector;

fn main() -> symhyper::Result<()> {
    let states: Vec<String> = match std::env::args().skip(1).collect::<Vec<_>>() {
        v if v.is_empty() => ["K3^2", "K7^2", "K5^3,4", "K7^4"].map(String::from).to_vec(),
        v => v,
    };
    for text in states {
        let k: CardinalityVector = text.parse()?;
        let report = classical_max(&k, SearchBudget::default())?;
        println!(
            "{:<8} V = {:>2}  quantum {:>5.2}  classical {:>3} ({})  violation: {}",
            k.to_string(),
            report.variables,
            report.quantum,
            report.classical_max,
            if report.exhaustive { "exhaustive" } else { "hill climbing" },
            report.violation
        );
        if !report.violation {
            let sys = MerminSystem::new(&k)?;
            let neg: Vec<Vec<usize>> = report
                .witness
                .c
                .iter()
                .filter(|s| s.value < 0)
                .map(|s| s.subset.clone())
                .collect();
            println!("  witness x = {:?}, c = -1 on {neg:?} ({} subsets)", report.witness.x, sys.subsets().len());
        }
    }
    Ok(())
}
