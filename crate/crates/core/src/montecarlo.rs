//! Seeded Monte Carlo simulation of the full game.
//!
//! Every trial draws from its own random stream, derived from the master seed
//! and the trial index alone: a ChaCha8 generator is keyed once with
//! `ChaCha8Rng::seed_from_u64(master_seed)` and trial `i` reads stream `i`
//! from word position 0. Results therefore do not depend on how trials are
//! split across threads.
//!
//! Each simulated world resolves both counterfactuals (stay and switch), so
//! runs of the two strategies under one seed see identical worlds.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::probcore::{HostModel, ProblemConfig, ValidConfig};
use crate::stats::{make_trace, CheckpointRule, ConvergenceTrace, Z_95};

/// Consecutive rejected worlds after which a random-host trial gives up.
pub const REJECTION_LIMIT: u64 = 1_000_000;

/// Trials per unit of parallel work. Fixed so chunking never depends on thread count.
const CHUNK: u64 = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Stay,
    Switch,
}

impl Strategy {
    pub const BOTH: [Strategy; 2] = [Strategy::Stay, Strategy::Switch];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Stay => "stay",
            Strategy::Switch => "switch",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "stay" => Ok(Strategy::Stay),
            "switch" => Ok(Strategy::Switch),
            other => Err(format!("unknown strategy `{other}` (expected stay|switch)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("REJECTION_LIMIT: {config} trial {trial_index} rejected {REJECTION_LIMIT} consecutive worlds")]
    RejectionLimit {
        config: ProblemConfig,
        trial_index: u64,
    },
    #[error("trial count must be at least 1")]
    NoTrials,
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// One resolved game: whether each strategy won, and how many worlds were
/// discarded before this one was accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Game {
    pub stay_won: bool,
    pub switch_won: bool,
    pub rejections: u64,
}

impl Game {
    pub fn won(&self, strategy: Strategy) -> bool {
        match strategy {
            Strategy::Stay => self.stay_won,
            Strategy::Switch => self.switch_won,
        }
    }

    pub fn record(&self, trial_index: u64, strategy: Strategy) -> TrialRecord {
        TrialRecord {
            trial_index,
            won: self.won(strategy),
            rejections_before_accept: self.rejections,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub won: bool,
    pub rejections_before_accept: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunSummary {
    pub config: ProblemConfig,
    pub strategy: Strategy,
    pub requested_trials: u64,
    pub accepted_trials: u64,
    pub rejected_trials: u64,
    pub wins: u64,
    pub master_seed: u64,
}

impl RunSummary {
    pub fn win_rate(&self) -> f64 {
        self.wins as f64 / self.accepted_trials as f64
    }

    /// Fraction of sampled worlds consistent with the reveal.
    pub fn acceptance_rate(&self) -> f64 {
        self.accepted_trials as f64 / (self.accepted_trials + self.rejected_trials) as f64
    }
}

/// Per-trial random streams for one master seed.
#[derive(Debug, Clone)]
pub struct TrialStreams {
    base: ChaCha8Rng,
}

impl TrialStreams {
    pub fn new(master_seed: u64) -> Self {
        TrialStreams {
            base: ChaCha8Rng::seed_from_u64(master_seed),
        }
    }

    pub fn stream(&self, trial_index: u64) -> ChaCha8Rng {
        let mut rng = self.base.clone();
        rng.set_stream(trial_index);
        rng.set_word_pos(0);
        rng
    }
}

/// Reusable per-worker buffers so the hot loop does not allocate.
#[derive(Debug, Clone)]
struct Table {
    prize: Vec<bool>,
    opened: Vec<bool>,
    pool: Vec<usize>,
    aux: Vec<usize>,
}

/// Moves a uniformly random `amount`-subset of `pool` to its front.
fn partial_shuffle<R: Rng + ?Sized>(rng: &mut R, pool: &mut [usize], amount: usize) {
    for i in 0..amount {
        let j = rng.random_range(i..pool.len());
        pool.swap(i, j);
    }
}

impl Table {
    fn new(doors: usize) -> Self {
        Table {
            prize: vec![false; doors],
            opened: vec![false; doors],
            pool: Vec::with_capacity(doors),
            aux: Vec::with_capacity(doors),
        }
    }

    fn place_prizes<R: Rng + ?Sized>(&mut self, rng: &mut R, prizes: usize) {
        let n = self.prize.len();
        self.prize.fill(false);
        self.opened.fill(false);
        self.pool.clear();
        self.pool.extend(0..n);
        partial_shuffle(rng, &mut self.pool, prizes);
        for &door in &self.pool[..prizes] {
            self.prize[door] = true;
        }
    }

    /// Uniform switch among unopened doors other than door 0, then scores both strategies.
    fn resolve<R: Rng + ?Sized>(&mut self, rng: &mut R, rejections: u64) -> Game {
        self.pool.clear();
        self.pool
            .extend((1..self.prize.len()).filter(|&d| !self.opened[d]));
        let target = self.pool[rng.random_range(0..self.pool.len())];
        Game {
            stay_won: self.prize[0],
            switch_won: self.prize[target],
            rejections,
        }
    }

    fn play_informed<R: Rng + ?Sized>(&mut self, config: &ValidConfig, rng: &mut R) -> Game {
        let k = config.opened as usize;
        let r = config.revealed as usize;
        self.place_prizes(rng, config.prizes as usize);

        // host: r of the other prize doors and k - r of the other empty doors
        self.pool.clear();
        self.aux.clear();
        for d in 1..self.prize.len() {
            if self.prize[d] {
                self.pool.push(d);
            } else {
                self.aux.push(d);
            }
        }
        partial_shuffle(rng, &mut self.pool, r);
        partial_shuffle(rng, &mut self.aux, k - r);
        for &d in self.pool[..r].iter().chain(&self.aux[..k - r]) {
            self.opened[d] = true;
        }
        self.resolve(rng, 0)
    }

    fn play_random<R: Rng + ?Sized>(
        &mut self,
        config: &ValidConfig,
        rng: &mut R,
        trial_index: u64,
    ) -> Result<Game, SimError> {
        let k = config.opened as usize;
        let r = config.revealed as usize;
        let mut rejections = 0u64;
        loop {
            self.place_prizes(rng, config.prizes as usize);
            self.aux.clear();
            self.aux.extend(1..self.prize.len());
            partial_shuffle(rng, &mut self.aux, k);
            let mut shown = 0;
            for &d in &self.aux[..k] {
                self.opened[d] = true;
                shown += usize::from(self.prize[d]);
            }
            if shown == r {
                return Ok(self.resolve(rng, rejections));
            }
            rejections += 1;
            if rejections >= REJECTION_LIMIT {
                return Err(SimError::RejectionLimit {
                    config: config.config(),
                    trial_index,
                });
            }
        }
    }

    fn play<R: Rng + ?Sized>(
        &mut self,
        config: &ValidConfig,
        rng: &mut R,
        trial_index: u64,
    ) -> Result<Game, SimError> {
        match config.host {
            HostModel::Informed => Ok(self.play_informed(config, rng)),
            HostModel::Random => self.play_random(config, rng, trial_index),
        }
    }
}

/// Plays one informed-host game. Panics if `config` is not an informed-host config.
pub fn simulate_trial_informed<R: Rng + ?Sized>(config: &ValidConfig, rng: &mut R) -> Game {
    assert_eq!(config.host, HostModel::Informed);
    Table::new(config.doors as usize).play_informed(config, rng)
}

/// Plays one random-host game, resampling whole worlds until the host shows
/// exactly `r` prizes. Panics if `config` is not a random-host config.
pub fn simulate_trial_random<R: Rng + ?Sized>(
    config: &ValidConfig,
    rng: &mut R,
) -> Result<Game, SimError> {
    assert_eq!(config.host, HostModel::Random);
    Table::new(config.doors as usize).play_random(config, rng, 0)
}

#[derive(Debug, Clone)]
pub struct BatchOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Build a convergence trace with this checkpoint rule.
    pub trace: Option<CheckpointRule>,
    /// z-score for trace confidence intervals.
    pub z: f64,
}

impl Default for BatchOptions {
    fn default() -> Self {
        BatchOptions {
            threads: None,
            trace: None,
            z: Z_95,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BatchOutput {
    pub summary: RunSummary,
    pub trace: Option<ConvergenceTrace>,
}

struct Chunk {
    rejected: u64,
    stay_wins: u64,
    switch_wins: u64,
    games: Vec<Game>,
}

fn run_chunk(
    config: &ValidConfig,
    streams: &TrialStreams,
    start: u64,
    end: u64,
    keep_games: bool,
) -> Result<Chunk, SimError> {
    let mut table = Table::new(config.doors as usize);
    let mut chunk = Chunk {
        rejected: 0,
        stay_wins: 0,
        switch_wins: 0,
        games: Vec::new(),
    };
    if keep_games {
        chunk.games.reserve((end - start) as usize);
    }
    for i in start..end {
        let mut rng = streams.stream(i);
        let game = table.play(config, &mut rng, i)?;
        chunk.rejected += game.rejections;
        chunk.stay_wins += u64::from(game.stay_won);
        chunk.switch_wins += u64::from(game.switch_won);
        if keep_games {
            chunk.games.push(game);
        }
    }
    Ok(chunk)
}

/// Runs `trials` accepted games and summarises each requested strategy over
/// the same worlds. Output order follows `strategies`.
pub fn run_strategies(
    config: &ValidConfig,
    strategies: &[Strategy],
    trials: u64,
    master_seed: u64,
    options: &BatchOptions,
) -> Result<Vec<BatchOutput>, SimError> {
    if trials == 0 {
        return Err(SimError::NoTrials);
    }
    let streams = TrialStreams::new(master_seed);
    let keep_games = options.trace.is_some();
    let chunks = trials.div_ceil(CHUNK);
    let work = || {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = c * CHUNK;
                run_chunk(
                    config,
                    &streams,
                    start,
                    (start + CHUNK).min(trials),
                    keep_games,
                )
            })
            .collect::<Vec<_>>()
    };
    let results = match options.threads {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| SimError::ThreadPool(e.to_string()))?
            .install(work),
        None => work(),
    };
    // first failing chunk in trial order, independent of scheduling
    let results = results.into_iter().collect::<Result<Vec<_>, _>>()?;

    let rejected: u64 = results.iter().map(|c| c.rejected).sum();
    let stay_wins: u64 = results.iter().map(|c| c.stay_wins).sum();
    let switch_wins: u64 = results.iter().map(|c| c.switch_wins).sum();

    strategies
        .iter()
        .map(|&strategy| {
            let wins = match strategy {
                Strategy::Stay => stay_wins,
                Strategy::Switch => switch_wins,
            };
            let summary = RunSummary {
                config: config.config(),
                strategy,
                requested_trials: trials,
                accepted_trials: trials,
                rejected_trials: rejected,
                wins,
                master_seed,
            };
            let trace = options.trace.as_ref().map(|rule| {
                let records = results
                    .iter()
                    .flat_map(|c| c.games.iter())
                    .enumerate()
                    .map(|(i, g)| g.record(i as u64, strategy));
                make_trace(records, rule, strategy, config.host, options.z)
                    .expect("at least one trial was run")
            });
            Ok(BatchOutput { summary, trace })
        })
        .collect()
}

/// Runs `trials` accepted games for a single strategy.
pub fn run_batch(
    config: &ValidConfig,
    strategy: Strategy,
    trials: u64,
    master_seed: u64,
    options: &BatchOptions,
) -> Result<BatchOutput, SimError> {
    let mut out = run_strategies(config, &[strategy], trials, master_seed, options)?;
    Ok(out.remove(0))
}
