//! Render the full experiment report: one simulated run per catalog
//! experiment, drawn as horizontal bars with error bars against the dashed
//! bound lines, plus a companion CSV.
//!
//! Run: `cargo run -p dimwit --example report_chart`

use dimwit::report::{render_csv, render_svg, ReportRow};
use dimwit::settings::{experiment, experiment_ids};
use dimwit::simulate::{run_experiment, RunConfig};

fn main() {
    let mut groups: Vec<(String, Vec<ReportRow>)> = Vec::new();
    for id in experiment_ids() {
        let spec = experiment(id).unwrap();
        let est = run_experiment(id, &RunConfig { seed: 31, ..Default::default() }).unwrap();
        println!(
            "{id:<12} {:>9.5} +- {:.5}  (theory {:.5})",
            est.value, est.sigma, spec.expected_value
        );
        let row = ReportRow {
            label: spec.id.clone(),
            value: est.value,
            sigma: est.sigma,
            theory: spec.expected_value,
        };
        match groups.iter_mut().find(|(name, _)| *name == spec.witness_name) {
            Some((_, rows)) => rows.push(row),
            None => groups.push((spec.witness_name.clone(), vec![row])),
        }
    }

    let svg = render_svg(&groups).unwrap();
    let csv = render_csv(&groups);

    let dir = std::env::temp_dir();
    let svg_path = dir.join("dimwit-report.svg");
    let csv_path = dir.join("dimwit-report.csv");
    std::fs::write(&svg_path, &svg).unwrap();
    std::fs::write(&csv_path, &csv).unwrap();

    println!("\nwrote {}", svg_path.display());
    println!("wrote {}", csv_path.display());
    println!("\n{csv}");
}
