//! Half-wave-plate angles for each prepared state.
//!
//! The optical source encodes a four-mode state through three plate
//! rotations: mode amplitudes are products of sines and cosines of the
//! doubled angles, so every real-amplitude state has a canonical angle
//! triple. This prints the plate settings for each catalog preparation and
//! verifies the round trip.
//!
//! Run: `cargo run -p dimwit --example hwp_preparation`

use dimwit::settings::{angles_for, experiment, experiment_ids, hwp_state};

fn degrees(rad: f64) -> f64 {
    rad.to_degrees()
}

fn main() {
    for id in experiment_ids() {
        let spec = experiment(id).unwrap();
        let strategy = spec.as_quantum().unwrap();
        println!("{id} (dimension {}):", spec.d);
        for (i, state) in strategy.states().iter().enumerate() {
            let angles = angles_for(state).expect("catalog states have real amplitudes");
            let back = hwp_state(&angles);

            // the reconstruction agrees with the zero-padded state
            for (k, amp) in back.amplitudes().iter().enumerate() {
                let target = state.amplitudes().get(k).map(|a| a.re).unwrap_or(0.0);
                assert!((amp.re - target).abs() < 1e-9);
            }

            let amps: Vec<String> =
                state.amplitudes().iter().map(|a| format!("{:+.4}", a.re)).collect();
            println!(
                "  psi_{}: theta = ({:7.3}, {:7.3}, {:7.3}) deg  ->  [{}]",
                i + 1,
                degrees(angles.theta1),
                degrees(angles.theta2),
                degrees(angles.theta3),
                amps.join(", ")
            );
        }
        println!();
    }
    println!("theta_1 splits the two spatial arms; theta_2 and theta_3 set the");
    println!("polarization inside each arm. Unused arms default to angle 0.");
}
