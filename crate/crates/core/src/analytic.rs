//! Closed-form win probabilities for both host models, in exact rationals.
//!
//! The random-host stay probability is available twice: the simplified
//! `(m - r) / (N - k)` and the raw Bayes quotient over the hypergeometric
//! likelihoods. They must agree exactly for every valid configuration.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::probcore::{binom, ExactProb, HostModel, StrategyOutcome, ValidConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("operation requires a {expected} host, config has a {found} host")]
pub struct HostMismatch {
    pub expected: HostModel,
    pub found: HostModel,
}

fn require(config: &ValidConfig, expected: HostModel) -> Result<(), HostMismatch> {
    if config.host == expected {
        Ok(())
    } else {
        Err(HostMismatch {
            expected,
            found: config.host,
        })
    }
}

/// Likelihood of the host's reveal under each hypothesis about the contestant's door.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LikelihoodPair {
    /// P(E | contestant's door holds a prize)
    pub given_prize: ExactProb,
    /// P(E | contestant's door is empty)
    pub given_no_prize: ExactProb,
    /// P(E) with prior m/N on the contestant's door
    pub marginal: ExactProb,
}

/// Prior probability that the contestant's first pick holds a prize: `m / N`.
pub fn prior_prize(config: &ValidConfig) -> ExactProb {
    ExactProb::new(config.prizes, config.doors)
}

/// Informed host: stay keeps `m / N`; switch wins with
/// `(m(N - 1) - rN) / (N(N - k - 1))`.
pub fn informed_probabilities(config: &ValidConfig) -> Result<StrategyOutcome, HostMismatch> {
    require(config, HostModel::Informed)?;
    let n = BigInt::from(config.doors);
    let m = BigInt::from(config.prizes);
    let r = BigInt::from(config.revealed);
    let targets = BigInt::from(config.switch_targets());
    let switch = ExactProb::new(&m * (&n - 1) - &r * &n, &n * targets);
    Ok(StrategyOutcome {
        stay: prior_prize(config),
        switch,
        config: config.config(),
    })
}

/// Hypergeometric likelihoods of "k opened doors show exactly r prizes" when
/// the host opens a uniformly random k-subset of the other N - 1 doors.
pub fn random_host_likelihoods(config: &ValidConfig) -> Result<LikelihoodPair, HostMismatch> {
    require(config, HostModel::Random)?;
    let n = u64::from(config.doors);
    let m = u64::from(config.prizes);
    let k = i64::from(config.opened);
    let r = i64::from(config.revealed);
    let subsets = binom(n - 1, k);
    let given_prize =
        ExactProb::from_biguint(binom(m - 1, r) * binom(n - m, k - r), subsets.clone());
    let given_no_prize = ExactProb::from_biguint(binom(m, r) * binom(n - m - 1, k - r), subsets);
    let prior = prior_prize(config);
    let marginal = &(&given_prize * &prior) + &(&given_no_prize * &prior.complement());
    Ok(LikelihoodPair {
        given_prize,
        given_no_prize,
        marginal,
    })
}

/// Random host: staying and switching both win with `(m - r) / (N - k)`.
pub fn random_probabilities(config: &ValidConfig) -> Result<StrategyOutcome, HostMismatch> {
    require(config, HostModel::Random)?;
    let p = ExactProb::new(
        config.prizes - config.revealed,
        config.doors - config.opened,
    );
    Ok(StrategyOutcome {
        stay: p.clone(),
        switch: p,
        config: config.config(),
    })
}

/// P(contestant's door holds a prize | E) from the unsimplified Bayes quotient.
pub fn posterior_stay_from_bayes(config: &ValidConfig) -> Result<ExactProb, HostMismatch> {
    let lik = random_host_likelihoods(config)?;
    let joint = &lik.given_prize * &prior_prize(config);
    Ok(ExactProb::from_ratio(joint.ratio() / lik.marginal.ratio()))
}

/// Dispatches on the host model.
pub fn probabilities(config: &ValidConfig) -> StrategyOutcome {
    match config.host {
        HostModel::Informed => informed_probabilities(config),
        HostModel::Random => random_probabilities(config),
    }
    .expect("host matches by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probcore::ProblemConfig;

    fn valid(c: ProblemConfig) -> ValidConfig {
        c.validate().unwrap()
    }

    #[test]
    fn informed_examples() {
        let o = informed_probabilities(&valid(ProblemConfig::informed(3, 1, 1, 0))).unwrap();
        assert_eq!(
            (o.stay, o.switch),
            (ExactProb::new(1, 3), ExactProb::new(2, 3))
        );
        let o = informed_probabilities(&valid(ProblemConfig::informed(100, 37, 3, 2))).unwrap();
        assert_eq!(o.stay, ExactProb::new(37, 100));
        assert_eq!(o.switch, ExactProb::new(3463, 9600));
        assert_eq!(o.switch.to_decimal(5), "0.36073");
        let o = informed_probabilities(&valid(ProblemConfig::informed(5, 2, 1, 0))).unwrap();
        assert_eq!(
            (o.stay, o.switch),
            (ExactProb::new(2, 5), ExactProb::new(8, 15))
        );
        for (n, m) in [(4, 1), (7, 3), (10, 9)] {
            let o = informed_probabilities(&valid(ProblemConfig::informed(n, m, 0, 0))).unwrap();
            assert_eq!(o.stay, ExactProb::new(m, n));
            assert_eq!(o.switch, ExactProb::new(m, n));
        }
    }

    #[test]
    fn random_examples() {
        let o = random_probabilities(&valid(ProblemConfig::random(3, 1, 1, 0))).unwrap();
        assert_eq!(
            (o.stay, o.switch),
            (ExactProb::new(1, 2), ExactProb::new(1, 2))
        );
        let o = random_probabilities(&valid(ProblemConfig::random(100, 37, 3, 2))).unwrap();
        assert_eq!(o.stay, ExactProb::new(35, 97));
        assert_eq!(o.stay.to_decimal(5), "0.36082");
        let o = random_probabilities(&valid(ProblemConfig::random(5, 2, 2, 2))).unwrap();
        assert_eq!((o.stay, o.switch), (ExactProb::zero(), ExactProb::zero()));
    }

    #[test]
    fn likelihood_examples() {
        let l = random_host_likelihoods(&valid(ProblemConfig::random(3, 1, 1, 0))).unwrap();
        assert_eq!(l.given_prize, ExactProb::one());
        assert_eq!(l.given_no_prize, ExactProb::new(1, 2));
        assert_eq!(l.marginal, ExactProb::new(2, 3));

        let l = random_host_likelihoods(&valid(ProblemConfig::random(3, 1, 1, 1))).unwrap();
        assert_eq!(l.given_prize, ExactProb::zero());
        assert_eq!(l.given_no_prize, ExactProb::new(1, 2));
        assert_eq!(l.marginal, ExactProb::new(1, 3));

        let l = random_host_likelihoods(&valid(ProblemConfig::random(100, 37, 3, 2))).unwrap();
        for p in [&l.given_prize, &l.given_no_prize] {
            assert!(*p > ExactProb::zero() && *p < ExactProb::one());
        }
        assert!(l.marginal > ExactProb::zero());
    }

    #[test]
    fn bayes_quotient_examples() {
        for (c, expected) in [
            (ProblemConfig::random(3, 1, 1, 0), ExactProb::new(1, 2)),
            (ProblemConfig::random(100, 37, 3, 2), ExactProb::new(35, 97)),
            (ProblemConfig::random(7, 3, 2, 1), ExactProb::new(2, 5)),
        ] {
            assert_eq!(
                posterior_stay_from_bayes(&valid(c)).unwrap(),
                expected,
                "{c}"
            );
        }
    }

    #[test]
    fn host_mismatch_is_reported() {
        let informed = valid(ProblemConfig::informed(3, 1, 1, 0));
        let random = valid(ProblemConfig::random(3, 1, 1, 0));
        assert!(random_probabilities(&informed).is_err());
        assert!(random_host_likelihoods(&informed).is_err());
        assert_eq!(
            informed_probabilities(&random).unwrap_err(),
            HostMismatch {
                expected: HostModel::Informed,
                found: HostModel::Random
            }
        );
    }

    #[test]
    fn many_doors_single_prize() {
        for n in 3..=60u32 {
            let o =
                informed_probabilities(&valid(ProblemConfig::informed(n, 1, n - 2, 0))).unwrap();
            assert_eq!(o.switch, ExactProb::new(n - 1, n));
        }
    }
}
