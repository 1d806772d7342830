//! Exact stay/switch probabilities for the three-door game and a 100-door,
//! 37-prize variant, under both host models.
//!
//!     cargo run --example classic

use montyhall::{analytic, HostModel, ProblemConfig};

fn main() {
    for (n, m, k, r) in [(3, 1, 1, 0), (100, 37, 3, 2)] {
        println!("N={n} doors, m={m} prizes, host opens k={k} showing r={r}");
        for host in HostModel::ALL {
            let config = ProblemConfig::new(n, m, k, r, host)
                .validate()
                .expect("valid configuration");
            let o = analytic::probabilities(&config);
            println!(
                "  {host:<8} stay {:>10} = {}   switch {:>10} = {}",
                o.stay.to_string(),
                o.stay.to_decimal(5),
                o.switch.to_string(),
                o.switch.to_decimal(5)
            );
            if host == HostModel::Random {
                let l = analytic::random_host_likelihoods(&config).unwrap();
                let bayes = analytic::posterior_stay_from_bayes(&config).unwrap();
                println!(
                    "           P(E|prize) = {}, P(E|empty) = {}, P(E) = {}, Bayes posterior = {}",
                    l.given_prize, l.given_no_prize, l.marginal, bayes
                );
            }
        }
    }
}
