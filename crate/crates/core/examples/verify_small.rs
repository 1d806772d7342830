//! Exhaustive check of every valid configuration up to a door limit.
//!
//!     cargo run --release --example verify_small -- 8

use montyhall::verify::verify_all;

fn main() {
    let max_doors = std::env::args()
        .nth(1)
        .map_or(6, |a| a.parse().expect("door limit"));
    let report = verify_all(max_doors).expect("tractable");
    match &report.counterexample {
        None => println!(
            "all {} configs passed ({} informed, {} random)",
            report.cases.len(),
            report.informed_configs,
            report.random_configs
        ),
        Some(c) => {
            println!(
                "counterexample {}: {} expected {} found {}",
                c.config, c.check, c.expected, c.found
            );
            std::process::exit(1);
        }
    }
}
