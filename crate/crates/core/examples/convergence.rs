//! Running win rates of both strategies with Wilson bands, written as a CSV
//! trace and an SVG plot.
//!
//!     cargo run --release --example convergence -- [OUT_DIR]

use std::fs::File;
use std::path::PathBuf;

use montyhall::montecarlo::{run_strategies, BatchOptions, Strategy};
use montyhall::stats::{write_trace_csv, CheckpointRule};
use montyhall::svg::{render_convergence, PlotOptions, Reference};
use montyhall::{analytic, ProblemConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map_or_else(std::env::temp_dir, PathBuf::from);
    let config = ProblemConfig::informed(3, 1, 1, 0).validate()?;
    let options = BatchOptions {
        trace: Some(CheckpointRule::PowersOfTwo),
        ..BatchOptions::default()
    };
    let outputs = run_strategies(&config, &Strategy::BOTH, 1_000_000, 42, &options)?;
    let traces: Vec<_> = outputs.iter().filter_map(|o| o.trace.clone()).collect();

    for t in &traces {
        for c in t.checkpoints.iter().step_by(4) {
            println!(
                "{:>6} {:>8} {:.5} [{:.5}, {:.5}]",
                t.strategy, c.trial_count, c.win_rate, c.ci_low, c.ci_high
            );
        }
    }

    let exact = analytic::probabilities(&config);
    let csv_path = dir.join("classic_trace.csv");
    write_trace_csv(&traces, File::create(&csv_path)?)?;
    let svg = render_convergence(
        &traces,
        &[
            Reference {
                label: "stay".into(),
                value: exact.stay,
            },
            Reference {
                label: "switch".into(),
                value: exact.switch,
            },
        ],
        &PlotOptions::default(),
    );
    let svg_path = dir.join("classic_trace.svg");
    std::fs::write(&svg_path, svg)?;
    println!("wrote {} and {}", csv_path.display(), svg_path.display());
    Ok(())
}
