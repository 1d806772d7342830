//! Exhaustive cross-check of the closed forms against enumeration.
//!
//! For every valid configuration up to a door limit, both host models:
//! oracle and analytic probabilities must match exactly, expectation must be
//! conserved, and for the random host the enumerated P(E) and the Bayes
//! quotient must match their analytic counterparts.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::analytic;
use crate::oracle::{self, OracleError};
use crate::probcore::{ExactProb, HostModel, ProblemConfig, ValidConfig};

/// Every configuration with `3 <= doors <= max_doors` that passes validation,
/// ordered by (doors, prizes, opened, revealed, host).
pub fn valid_configs(max_doors: u32) -> impl Iterator<Item = ValidConfig> {
    (3..=max_doors).flat_map(|n| {
        (1..n).flat_map(move |m| {
            (0..n.saturating_sub(1)).flat_map(move |k| {
                (0..=k).flat_map(move |r| {
                    HostModel::ALL.into_iter().filter_map(move |host| {
                        ProblemConfig::new(n, m, k, r, host).validate().ok()
                    })
                })
            })
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub config: ProblemConfig,
    pub oracle_stay: ExactProb,
    pub oracle_switch: ExactProb,
    pub analytic_stay: ExactProb,
    pub analytic_switch: ExactProb,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub config: ProblemConfig,
    pub check: &'static str,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_doors: u32,
    pub informed_configs: usize,
    pub random_configs: usize,
    pub cases: Vec<CaseResult>,
    pub counterexample: Option<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn mismatch(
    config: &ValidConfig,
    check: &'static str,
    expected: impl ToString,
    found: impl ToString,
) -> Counterexample {
    Counterexample {
        config: config.config(),
        check,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

fn int(v: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Runs every check on one configuration; returns the case or the first failure.
pub fn check_config(
    config: &ValidConfig,
) -> Result<Result<CaseResult, Counterexample>, OracleError> {
    let enumeration = oracle::enumerate(config)?;
    let brute = oracle::outcome_from(&enumeration)?;
    let closed = analytic::probabilities(config);

    if brute.stay != closed.stay {
        return Ok(Err(mismatch(
            config,
            "stay: oracle vs closed form",
            &closed.stay,
            &brute.stay,
        )));
    }
    if brute.switch != closed.switch {
        return Ok(Err(mismatch(
            config,
            "switch: oracle vs closed form",
            &closed.switch,
            &brute.switch,
        )));
    }

    let (n, m, k, r) = (config.doors, config.prizes, config.opened, config.revealed);
    match config.host {
        HostModel::Informed => {
            // m/N + r + (N - k - 1) * switch = m
            let total = analytic::prior_prize(config).ratio()
                + int(r)
                + int(n - k - 1) * closed.switch.ratio();
            if total != int(m) {
                return Ok(Err(mismatch(
                    config,
                    "informed expectation conservation",
                    m,
                    total,
                )));
            }
        }
        HostModel::Random => {
            // (N - k) * stay + r = m
            let total = int(n - k) * closed.stay.ratio() + int(r);
            if total != int(m) {
                return Ok(Err(mismatch(
                    config,
                    "random expectation conservation",
                    m,
                    total,
                )));
            }
            let likelihoods = analytic::random_host_likelihoods(config).expect("random host");
            let event = enumeration.event_probability();
            if event != likelihoods.marginal {
                return Ok(Err(mismatch(
                    config,
                    "P(E): oracle vs likelihoods",
                    &likelihoods.marginal,
                    &event,
                )));
            }
            let bayes = analytic::posterior_stay_from_bayes(config).expect("random host");
            if bayes != closed.stay {
                return Ok(Err(mismatch(
                    config,
                    "Bayes quotient vs (m-r)/(N-k)",
                    &closed.stay,
                    &bayes,
                )));
            }
        }
    }
    Ok(Ok(CaseResult {
        config: config.config(),
        oracle_stay: brute.stay,
        oracle_switch: brute.switch,
        analytic_stay: closed.stay,
        analytic_switch: closed.switch,
    }))
}

/// Checks every valid configuration with at most `max_doors` doors, stopping
/// at the first counterexample.
pub fn verify_all(max_doors: u32) -> Result<VerifyReport, OracleError> {
    let mut report = VerifyReport {
        max_doors,
        informed_configs: 0,
        random_configs: 0,
        cases: Vec::new(),
        counterexample: None,
    };
    for config in valid_configs(max_doors) {
        match check_config(&config)? {
            Ok(case) => {
                match config.host {
                    HostModel::Informed => report.informed_configs += 1,
                    HostModel::Random => report.random_configs += 1,
                }
                report.cases.push(case);
            }
            Err(counterexample) => {
                report.counterexample = Some(counterexample);
                break;
            }
        }
    }
    Ok(report)
}
