//! Brute-force ground truth: walk every prize placement and every host
//! choice on small instances and count wins exactly.
//!
//! Worlds are enumerated as bitmasks over the doors. For the random host every
//! (placement, k-subset) pair is one equally likely world. For the informed host
//! each placement carries the same total mass `M`, split evenly over the
//! subsets the host may legally open for that placement; `M` is the lcm of the
//! per-placement subset counts so every weight stays an integer.

use std::collections::BTreeMap;
use std::ops::Add;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::probcore::{binom, ExactProb, HostModel, ProblemConfig, StrategyOutcome, ValidConfig};

/// Largest number of (placement, host subset) worlds `enumerate` will walk.
pub const MAX_WORLDS: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("TRACTABILITY_EXCEEDED: {config} needs {worlds} worlds (limit {MAX_WORLDS})")]
    TractabilityExceeded {
        config: ProblemConfig,
        worlds: BigUint,
    },
    #[error("EVENT_IMPOSSIBLE: no enumerated world of {0} is consistent with the reveal")]
    EventImpossible(ProblemConfig),
    #[error("contestant door {door} out of range for {doors} doors")]
    DoorOutOfRange { door: u32, doors: u32 },
}

/// Exact integer win weights accumulated over every enumerated world.
///
/// Switch weight is scaled by the number of switch targets: a world
/// contributes the count of winning targets, so the switch probability is
/// `switch_win_weight / (event_weight * (N - k - 1))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WorldEnumeration {
    pub config: ProblemConfig,
    pub total_weight: BigUint,
    pub event_weight: BigUint,
    pub stay_win_weight: BigUint,
    pub switch_win_weight: BigUint,
}

impl WorldEnumeration {
    /// P(E) as seen by the enumeration.
    pub fn event_probability(&self) -> ExactProb {
        ExactProb::from_biguint(self.event_weight.clone(), self.total_weight.clone())
    }
}

impl Add for WorldEnumeration {
    type Output = WorldEnumeration;

    /// Component-wise sum of two partial enumerations of the same config.
    fn add(self, rhs: WorldEnumeration) -> WorldEnumeration {
        assert_eq!(
            self.config, rhs.config,
            "cannot merge enumerations of different configs"
        );
        WorldEnumeration {
            config: self.config,
            total_weight: self.total_weight + rhs.total_weight,
            event_weight: self.event_weight + rhs.event_weight,
            stay_win_weight: self.stay_win_weight + rhs.stay_win_weight,
            switch_win_weight: self.switch_win_weight + rhs.switch_win_weight,
        }
    }
}

/// Iterates all `size`-subsets of `0..n` as bitmasks (Gosper's hack).
#[derive(Debug, Clone)]
pub struct Subsets {
    limit: u64,
    next: Option<u64>,
}

impl Subsets {
    pub fn new(n: u32, size: u32) -> Self {
        assert!(n < 64, "bitmask subsets support at most 63 elements");
        let next = (size <= n).then(|| (1u64 << size) - 1);
        Subsets {
            limit: 1u64 << n,
            next,
        }
    }
}

impl Iterator for Subsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let current = self.next?;
        self.next = if current == 0 {
            None
        } else {
            let low = current & current.wrapping_neg();
            let ripple = current + low;
            let succ = (((ripple ^ current) >> 2) / low) | ripple;
            (succ < self.limit).then_some(succ)
        };
        Some(current)
    }
}

/// Maps a subset of the `n - 1` doors other than `skip` (indexed densely)
/// back to door indices.
fn spread_around(mask: u64, skip: u32) -> u64 {
    let low = (1u64 << skip) - 1;
    (mask & low) | ((mask & !low) << 1)
}

#[derive(Debug, Default, Clone, Copy)]
struct GroupSums {
    placements: u64,
    stay: u64,
    switch: u64,
}

#[derive(Debug, Default)]
struct Tally {
    // random host: raw world counts
    total: u64,
    event: u64,
    stay: u64,
    switch: u64,
    // informed host: placement sums keyed by the number of legal host subsets
    by_choices: BTreeMap<u64, GroupSums>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.total += other.total;
        self.event += other.event;
        self.stay += other.stay;
        self.switch += other.switch;
        for (choices, g) in other.by_choices {
            let e = self.by_choices.entry(choices).or_default();
            e.placements += g.placements;
            e.stay += g.stay;
            e.switch += g.switch;
        }
        self
    }
}

fn world_count(config: &ProblemConfig) -> BigUint {
    binom(u64::from(config.doors), i64::from(config.prizes))
        * binom(u64::from(config.doors) - 1, i64::from(config.opened))
}

/// Enumerates every world with the contestant fixed at door 0.
pub fn enumerate(config: &ValidConfig) -> Result<WorldEnumeration, OracleError> {
    enumerate_from_door(config, 0)
}

/// Enumerates every world with the contestant's first pick at `door`.
pub fn enumerate_from_door(
    config: &ValidConfig,
    door: u32,
) -> Result<WorldEnumeration, OracleError> {
    let cfg = config.config();
    if door >= cfg.doors {
        return Err(OracleError::DoorOutOfRange {
            door,
            doors: cfg.doors,
        });
    }
    let worlds = world_count(&cfg);
    if cfg.doors > 63 || worlds > BigUint::from(MAX_WORLDS) {
        return Err(OracleError::TractabilityExceeded {
            config: cfg,
            worlds,
        });
    }

    let n = cfg.doors;
    let k = cfg.opened;
    let r = cfg.revealed;
    let contestant = 1u64 << door;
    let all = (1u64 << n) - 1;

    let tally = Subsets::new(n, cfg.prizes)
        .par_bridge()
        .fold(Tally::default, |mut t, placement| {
            let contestant_wins = u64::from(placement & contestant != 0);
            let mut legal = 0u64;
            let mut stay = 0u64;
            let mut switch = 0u64;
            for dense in Subsets::new(n - 1, k) {
                let opened = spread_around(dense, door);
                t.total += 1;
                if (opened & placement).count_ones() != r {
                    continue;
                }
                let remaining = all & !opened & !contestant;
                legal += 1;
                stay += contestant_wins;
                switch += u64::from((remaining & placement).count_ones());
            }
            match cfg.host {
                HostModel::Random => {
                    t.event += legal;
                    t.stay += stay;
                    t.switch += switch;
                }
                HostModel::Informed if legal > 0 => {
                    let g = t.by_choices.entry(legal).or_default();
                    g.placements += 1;
                    g.stay += contestant_wins;
                    g.switch += switch;
                }
                // a placement the informed host cannot serve; validation rules these out
                HostModel::Informed => {}
            }
            t
        })
        .reduce(Tally::default, Tally::merge);

    let enumeration = match cfg.host {
        HostModel::Random => WorldEnumeration {
            config: cfg,
            total_weight: tally.total.into(),
            event_weight: tally.event.into(),
            stay_win_weight: tally.stay.into(),
            switch_win_weight: tally.switch.into(),
        },
        HostModel::Informed => {
            let mass = tally
                .by_choices
                .keys()
                .fold(1u64, |acc, &choices| acc.lcm(&choices));
            let mass = BigUint::from(mass);
            let mut e = WorldEnumeration {
                config: cfg,
                total_weight: BigUint::zero(),
                event_weight: BigUint::zero(),
                stay_win_weight: BigUint::zero(),
                switch_win_weight: BigUint::zero(),
            };
            for (choices, g) in &tally.by_choices {
                let per_subset = &mass / choices;
                e.total_weight += &mass * g.placements;
                e.stay_win_weight += &mass * g.stay;
                e.switch_win_weight += &per_subset * g.switch;
            }
            e.event_weight = e.total_weight.clone();
            e
        }
    };
    Ok(enumeration)
}

/// Conditional win probabilities P(win | E) read off the enumeration.
pub fn oracle_probabilities(config: &ValidConfig) -> Result<StrategyOutcome, OracleError> {
    outcome_from(&enumerate(config)?)
}

/// Converts accumulated weights into exact conditional probabilities.
pub fn outcome_from(e: &WorldEnumeration) -> Result<StrategyOutcome, OracleError> {
    if e.event_weight.is_zero() {
        return Err(OracleError::EventImpossible(e.config));
    }
    let targets = e.config.doors - e.config.opened - 1;
    Ok(StrategyOutcome {
        stay: ExactProb::from_biguint(e.stay_win_weight.clone(), e.event_weight.clone()),
        switch: ExactProb::from_biguint(
            e.switch_win_weight.clone(),
            &e.event_weight * BigUint::from(targets),
        ),
        config: e.config,
    })
}

/// Number of worlds `enumerate` would visit, or `None` when it exceeds `u64`.
pub fn worlds_for(config: &ProblemConfig) -> Option<u64> {
    world_count(config).to_u64()
}
