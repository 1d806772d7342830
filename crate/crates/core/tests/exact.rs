//! Exact identities between the closed forms, the Bayes quotient, and the
//! brute-force enumeration.

use montyhall::analytic::{self, prior_prize};
use montyhall::oracle::{self, enumerate_from_door};
use montyhall::verify::valid_configs;
use montyhall::{ExactProb, HostModel, ProblemConfig};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

fn int(v: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[test]
fn oracle_matches_closed_forms_up_to_eight_doors() {
    let mut checked = 0;
    for config in valid_configs(8) {
        let brute = oracle::oracle_probabilities(&config).unwrap();
        let closed = analytic::probabilities(&config);
        assert_eq!(brute, closed, "{config}");
        checked += 1;
    }
    assert!(checked > 500, "only {checked} configs");
}

#[test]
fn enumerated_event_probability_matches_marginal() {
    for config in valid_configs(8).filter(|c| c.host == HostModel::Random) {
        let e = oracle::enumerate(&config).unwrap();
        let l = analytic::random_host_likelihoods(&config).unwrap();
        assert_eq!(e.event_probability(), l.marginal, "{config}");
    }
}

#[test]
fn contestant_door_does_not_matter() {
    for config in valid_configs(5) {
        let at_zero = oracle::outcome_from(&oracle::enumerate(&config).unwrap()).unwrap();
        for door in 1..config.doors {
            let e = enumerate_from_door(&config, door).unwrap();
            assert_eq!(
                oracle::outcome_from(&e).unwrap(),
                at_zero,
                "{config} door {door}"
            );
        }
    }
}

#[test]
fn bayes_quotient_equals_simplified_form() {
    for config in valid_configs(40).filter(|c| c.host == HostModel::Random) {
        let bayes = analytic::posterior_stay_from_bayes(&config).unwrap();
        let simple = ExactProb::new(
            config.prizes - config.revealed,
            config.doors - config.opened,
        );
        assert_eq!(bayes, simple, "{config}");
    }
}

#[test]
fn expectation_is_conserved() {
    for config in valid_configs(40) {
        let o = analytic::probabilities(&config);
        let (n, m, k, r) = (config.doors, config.prizes, config.opened, config.revealed);
        match config.host {
            HostModel::Informed => {
                let total =
                    prior_prize(&config).ratio() + int(r) + int(n - k - 1) * o.switch.ratio();
                assert_eq!(total, int(m), "{config}");
            }
            HostModel::Random => {
                assert_eq!(o.stay, o.switch, "{config}");
                assert_eq!(int(n - k) * o.stay.ratio() + int(r), int(m), "{config}");
            }
        }
        assert!(
            o.stay.is_probability() && o.switch.is_probability(),
            "{config}"
        );
    }
}

#[test]
fn marginals_over_revealed_sum_to_one() {
    for n in 3..=40u32 {
        for m in 1..n {
            for k in 0..n - 1 {
                let total = (0..=k)
                    .filter_map(|r| ProblemConfig::random(n, m, k, r).validate().ok())
                    .map(|c| {
                        analytic::random_host_likelihoods(&c)
                            .unwrap()
                            .marginal
                            .ratio()
                            .clone()
                    })
                    .fold(BigRational::from_integer(0.into()), |a, b| a + b);
                assert!(total.is_one(), "N={n} m={m} k={k}: {total}");
            }
        }
    }
}

#[test]
fn likelihood_marginal_is_prior_weighted() {
    for config in valid_configs(20).filter(|c| c.host == HostModel::Random) {
        let l = analytic::random_host_likelihoods(&config).unwrap();
        let prior = prior_prize(&config);
        let expected = &(&l.given_prize * &prior) + &(&l.given_no_prize * &prior.complement());
        assert_eq!(l.marginal, expected);
        for p in [&l.given_prize, &l.given_no_prize, &l.marginal] {
            assert!(p.is_probability());
        }
    }
}

#[test]
fn classic_switch_doubles_stay() {
    let o =
        analytic::informed_probabilities(&ProblemConfig::informed(3, 1, 1, 0).validate().unwrap())
            .unwrap();
    assert_eq!(o.switch, &o.stay + &o.stay);
}
