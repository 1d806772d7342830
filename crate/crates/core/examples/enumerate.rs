//! Brute-force enumeration of every prize placement and host choice, checked
//! against the closed forms.
//!
//!     cargo run --example enumerate -- 6 2 2 1

use montyhall::{analytic, oracle, HostModel, ProblemConfig};

fn main() {
    let args: Vec<u32> = std::env::args()
        .skip(1)
        .map(|a| a.parse().expect("integer argument"))
        .collect();
    let (n, m, k, r) = match args[..] {
        [n, m, k, r] => (n, m, k, r),
        [] => (5, 2, 1, 0),
        _ => panic!("usage: enumerate [DOORS PRIZES OPENED REVEALED]"),
    };
    for host in HostModel::ALL {
        let config = match ProblemConfig::new(n, m, k, r, host).validate() {
            Ok(c) => c,
            Err(e) => {
                println!("{host}: {e}");
                continue;
            }
        };
        let worlds = oracle::enumerate(&config).expect("tractable instance");
        let brute = oracle::outcome_from(&worlds).unwrap();
        let closed = analytic::probabilities(&config);
        println!("{config}");
        println!(
            "  weights: total {} event {} stay {} switch {}",
            worlds.total_weight,
            worlds.event_weight,
            worlds.stay_win_weight,
            worlds.switch_win_weight
        );
        println!(
            "  enumeration  stay {:>8} switch {:>8}",
            brute.stay.to_string(),
            brute.switch.to_string()
        );
        println!(
            "  closed form  stay {:>8} switch {:>8}",
            closed.stay.to_string(),
            closed.switch.to_string()
        );
        assert_eq!(brute, closed);
    }
}
