//! The generalized Monty Hall game: N doors hide m prizes, the contestant
//! picks one, the host opens k of the others showing r prizes, and the
//! contestant either stays or switches to one of the N - k - 1 doors left.
//!
//! Two host models are covered. An *informed* host always manages to show
//! exactly r prizes; a *random* host opens k doors at random and we condition
//! on it happening to show r prizes.
//!
//! - [`analytic`]: closed-form probabilities in exact rationals
//! - [`oracle`]: brute-force enumeration of every world on small instances
//! - [`montecarlo`]: seeded, thread-count-independent simulation
//! - [`stats`]: Wilson intervals, convergence traces, comparison reports
//! - [`verify`]: exhaustive oracle vs closed-form cross-check
//! - [`cli`]: the `montyhall` command-line surface

pub mod analytic;
pub mod cli;
pub mod montecarlo;
pub mod oracle;
pub mod probcore;
pub mod stats;
pub mod svg;
pub mod verify;

pub use analytic::{
    informed_probabilities, posterior_stay_from_bayes, random_host_likelihoods,
    random_probabilities, LikelihoodPair,
};
pub use montecarlo::{
    run_batch, run_strategies, BatchOptions, BatchOutput, RunSummary, Strategy, TrialRecord,
};
pub use oracle::{enumerate, oracle_probabilities, WorldEnumeration};
pub use probcore::{
    binom, ConfigError, ExactProb, HostModel, ProblemConfig, ReasonCode, StrategyOutcome,
    ValidConfig,
};
pub use stats::{
    compare, make_trace, wilson_interval, CheckpointRule, ComparisonReport, ConvergenceTrace,
};
