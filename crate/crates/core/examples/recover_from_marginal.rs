//! Traces out `k` qubits, then recovers the full state from the first column
//! of the reduced matrix.
//!
//!     cargo run --example recover_from_marginal -- K9^4,7 3

use symhyper::recovery::{first_column_exact, reconstruct, trace_mixture, CoefficientVariant};
use symhyper::CardinalityVector;

fn main() -> symhyper::Result<()> {
    let mut args = std::env::args().skip(1);
    let k: CardinalityVector = args.next().unwrap_or_else(|| "K9^4,7".into()).parse()?;
    let traced: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);

    let mix = trace_mixture(&k, traced)?;
    println!("tracing {traced} qubits of {k}:");
    for t in &mix.terms {
        let sign = if t.sign_flag < 0 { "-" } else { " " };
        println!("  {:>5}  {sign}{}", t.weight.to_string(), t.state);
    }
    let exact = first_column_exact(&mix);
    println!("first column {:?}", exact.iter().map(|r| r.to_string()).collect::<Vec<_>>());

    let column: Vec<f64> = exact.iter().map(|r| *r.numer() as f64 / *r.denom() as f64).collect();
    for variant in CoefficientVariant::ALL {
        match reconstruct(&column, k.n(), traced, variant) {
            Ok(f) => println!("{variant:?}: {}", f.to_cardinalities()?),
            Err(e) => println!("{variant:?}: {e}"),
        }
    }
    Ok(())
}
