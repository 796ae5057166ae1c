//! Exact classical dimension bounds by exhaustive enumeration.
//!
//! For each witness and each classical dimension d, every deterministic
//! strategy (a label per preparation, a ±1 answer per label and measurement)
//! is enumerated and the exact maximum printed, together with one strategy
//! that reaches it.
//!
//! Run: `cargo run --release -p dimwit --example classical_bounds`

use dimwit::classical::{classical_bound, classical_expectations, enumeration_count};
use dimwit::witness::{algebraic_max, catalog, evaluate};

fn main() {
    for name in ["i3", "i4"] {
        let (witness, _) = catalog(name).expect("catalog witness");
        println!(
            "{} ({} preparations x {} measurements, algebraic max {})",
            name.to_uppercase(),
            witness.preparations(),
            witness.measurements(),
            algebraic_max(&witness)
        );
        for d in 1..=witness.preparations() {
            let count = enumeration_count(d, witness.preparations(), witness.measurements());
            let (value, strategy) = classical_bound(&witness, d).expect("within guard limit");

            // the returned strategy re-evaluates to exactly the bound
            let table = classical_expectations(
                &strategy,
                witness.preparations(),
                witness.measurements(),
            )
            .unwrap();
            assert_eq!(evaluate(&witness, &table).unwrap(), value);

            println!(
                "  d={d}: bound {value}  ({count} strategies; labels {:?})",
                strategy.prep_labels()
            );
        }
        println!();
    }

    println!("The bit bounds (d=2) are what qubit experiments must beat; the");
    println!("d=N bounds equal the algebraic maximum, so no witness value can");
    println!("distinguish dimensions at or above the number of preparations.");
}
