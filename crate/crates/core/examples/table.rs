//! Simulated vs theoretical win rates for N=100, m=37, k=3, r=2.
//!
//!     cargo run --release --example table -- [TRIALS] [SEED]

use montyhall::montecarlo::{run_strategies, BatchOptions, Strategy};
use montyhall::{compare, HostModel, ProblemConfig};

fn main() {
    let mut args = std::env::args().skip(1);
    let trials: u64 = args
        .next()
        .map_or(1_000_000, |a| a.parse().expect("trial count"));
    let seed: u64 = args.next().map_or(2024, |a| a.parse().expect("seed"));

    let mut summaries = Vec::new();
    for host in HostModel::ALL {
        let config = ProblemConfig::new(100, 37, 3, 2, host).validate().unwrap();
        let outputs = run_strategies(
            &config,
            &Strategy::BOTH,
            trials,
            seed,
            &BatchOptions::default(),
        )
        .expect("simulation");
        let s = &outputs[0].summary;
        println!(
            "{host}: {} accepted, {} rejected (acceptance {:.5})",
            s.accepted_trials,
            s.rejected_trials,
            s.acceptance_rate()
        );
        summaries.extend(outputs.into_iter().map(|o| o.summary));
    }
    println!();
    print!("{}", compare(&summaries).unwrap().render());
}
