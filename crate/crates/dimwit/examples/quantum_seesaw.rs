//! Quantum bounds by multi-restart see-saw optimization.
//!
//! Alternating exact updates — states to top eigenvectors, observables to
//! eigenvalue signs — climb monotonically to a stationary point; the best of
//! 64 seeded restarts reproduces every published quantum bound to better
//! than 1e-6.
//!
//! Run: `cargo run --release -p dimwit --example quantum_seesaw`

use dimwit::quantum::{optimize, SeesawConfig};
use dimwit::witness::catalog;

fn main() {
    let sqrt2 = 2.0_f64.sqrt();
    let targets = [
        ("i3", 2usize, 1.0 + 2.0 * sqrt2, "qubit"),
        ("i3", 3, 5.0, "qutrit (algebraic max)"),
        ("i4", 2, 6.0, "qubit"),
        ("i4", 3, 2.0 + (13.0 + 16.0 * sqrt2).sqrt(), "qutrit"),
        ("i4", 4, 9.0, "ququart (algebraic max)"),
    ];

    let cfg = SeesawConfig { restarts: 64, seed: 42, ..Default::default() };
    println!(
        "see-saw: {} restarts, convergence tolerance {:.0e}, seed {}\n",
        cfg.restarts, cfg.conv_tol, cfg.seed
    );

    for (name, d, expected, label) in targets {
        let (witness, _) = catalog(name).unwrap();
        let start = std::time::Instant::now();
        let result = optimize(&witness, d, &cfg).unwrap();
        let elapsed = start.elapsed();

        let hits = result
            .per_restart_values
            .iter()
            .filter(|v| **v > result.best_value - 1e-9)
            .count();
        let sweeps: u32 = result.iterations_used.iter().sum();

        println!("{} at d={d} ({label}):", name.to_uppercase());
        println!("  best value {:.10}", result.best_value);
        println!("  closed form {expected:.10}  (gap {:.1e})", (result.best_value - expected).abs());
        println!(
            "  {hits}/{} restarts reached it, {sweeps} sweeps total, {elapsed:.1?}\n",
            cfg.restarts
        );
        assert!((result.best_value - expected).abs() < 1e-6);
    }

    println!("Each value is a certified lower bound; matching the published");
    println!("closed forms confirms the optimizer finds the global optimum.");
}
