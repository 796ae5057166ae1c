//! The seven built-in experiment configurations.
//!
//! Each configuration carries its optimal preparations and measurements and
//! a closed-form target value; recomputing the witness from the stored
//! states and observables reproduces the target to machine precision.
//!
//! Run: `cargo run -p dimwit --example catalog_optima`

use dimwit::settings::{experiment, experiment_ids};
use dimwit::witness::{evaluate, Model};

fn main() {
    println!("{:<12} {:>7} {:>9} {:>14} {:>12}", "experiment", "system", "witness", "value", "gap");
    println!("{}", "-".repeat(60));
    for id in experiment_ids() {
        let spec = experiment(id).unwrap();
        let recomputed = spec.recomputed_value().unwrap();
        let gap = (recomputed - spec.expected_value).abs();
        let system = match (spec.model, spec.d) {
            (Model::Classical, 2) => "bit",
            (Model::Classical, 3) => "trit",
            (Model::Classical, 4) => "quart",
            (Model::Quantum, 2) => "qubit",
            (Model::Quantum, 3) => "qutrit",
            (Model::Quantum, 4) => "ququart",
            _ => "?",
        };
        println!(
            "{:<12} {:>7} {:>9} {:>14.10} {:>12.1e}",
            spec.id, system, spec.witness_name, recomputed, gap
        );
        assert!(gap < 1e-9);
    }

    println!();
    println!("Expectation table of i4-bb84 (the cryptographic states):");
    let spec = experiment("i4-bb84").unwrap();
    let witness = spec.witness().unwrap();
    let table = spec.theoretical_expectations();
    for x in 0..witness.preparations() {
        let row: Vec<String> = (0..witness.measurements())
            .map(|y| format!("{:+.4}", table.entry(x, y)))
            .collect();
        println!("  E_{},y = [{}]", x + 1, row.join(", "));
    }
    let value = evaluate(&witness, &table).unwrap();
    println!("  I4 = {value:.10} = sqrt(2) + 2 + sqrt(5)");
}
