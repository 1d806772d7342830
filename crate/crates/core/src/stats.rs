//! Confidence intervals, convergence traces, and theory-vs-simulation reports.

use std::io::Write;

use serde::Serialize;
use thiserror::Error;

use crate::analytic;
use crate::montecarlo::{RunSummary, Strategy, TrialRecord};
use crate::probcore::{ExactProb, HostModel, ProblemConfig};

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.96;

/// Exact header of the convergence trace CSV.
pub const TRACE_CSV_HEADER: &str = "trial_count,win_rate,ci_low,ci_high,strategy,host";

/// Decimal places used by comparison reports.
pub const REPORT_PRECISION: usize = 5;

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("no trial records to build a trace from")]
    EmptyRecords,
    #[error("CONFIG_MISMATCH: {config} has no analytic counterpart ({reason})")]
    ConfigMismatch {
        config: ProblemConfig,
        reason: String,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Wilson score interval for `wins` successes out of `trials`.
///
/// The result always lies in `[0, 1]` and contains `wins / trials`.
pub fn wilson_interval(wins: u64, trials: u64, z: f64) -> (f64, f64) {
    assert!(trials > 0 && wins <= trials && z > 0.0);
    let n = trials as f64;
    let p = wins as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let low = if wins == 0 {
        0.0
    } else {
        (centre - half).clamp(0.0, p)
    };
    let high = if wins == trials {
        1.0
    } else {
        (centre + half).clamp(p, 1.0)
    };
    (low, high)
}

/// When a running trace records a checkpoint. The last trial is always recorded.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum CheckpointRule {
    /// 1, 2, 4, 8, ...
    #[default]
    PowersOfTwo,
    /// Every `n`-th trial.
    Every(u64),
    /// An explicit list of trial counts.
    At(Vec<u64>),
}

impl CheckpointRule {
    pub fn includes(&self, trial_count: u64) -> bool {
        match self {
            CheckpointRule::PowersOfTwo => trial_count.is_power_of_two(),
            CheckpointRule::Every(n) => *n > 0 && trial_count.is_multiple_of(*n),
            CheckpointRule::At(counts) => counts.contains(&trial_count),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Checkpoint {
    pub trial_count: u64,
    pub wins: u64,
    pub win_rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTrace {
    pub strategy: Strategy,
    pub host: HostModel,
    pub checkpoints: Vec<Checkpoint>,
}

impl ConvergenceTrace {
    pub fn last(&self) -> &Checkpoint {
        self.checkpoints.last().expect("traces are never empty")
    }
}

/// Folds an ordered record stream into running win rates with Wilson intervals.
pub fn make_trace<I>(
    records: I,
    rule: &CheckpointRule,
    strategy: Strategy,
    host: HostModel,
    z: f64,
) -> Result<ConvergenceTrace, StatsError>
where
    I: IntoIterator<Item = TrialRecord>,
{
    let checkpoint = |trial_count: u64, wins: u64| {
        let (ci_low, ci_high) = wilson_interval(wins, trial_count, z);
        Checkpoint {
            trial_count,
            wins,
            win_rate: wins as f64 / trial_count as f64,
            ci_low,
            ci_high,
        }
    };
    let mut checkpoints = Vec::new();
    let mut seen = 0u64;
    let mut wins = 0u64;
    for record in records {
        seen += 1;
        wins += u64::from(record.won);
        if rule.includes(seen) {
            checkpoints.push(checkpoint(seen, wins));
        }
    }
    if seen == 0 {
        return Err(StatsError::EmptyRecords);
    }
    if checkpoints.last().map(|c| c.trial_count) != Some(seen) {
        checkpoints.push(checkpoint(seen, wins));
    }
    Ok(ConvergenceTrace {
        strategy,
        host,
        checkpoints,
    })
}

/// `%g`-style rendering with `digits` significant digits, trailing zeros trimmed.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 {
            "0".to_string()
        } else {
            x.to_string()
        };
    }
    let digits = digits.max(1);
    let exponent = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = exponent.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes traces as CSV under [`TRACE_CSV_HEADER`], one row per checkpoint.
pub fn write_trace_csv<W: Write>(traces: &[ConvergenceTrace], out: W) -> Result<(), StatsError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(TRACE_CSV_HEADER.split(','))?;
    for trace in traces {
        for c in &trace.checkpoints {
            w.write_record([
                c.trial_count.to_string(),
                format_significant(c.win_rate, 6),
                format_significant(c.ci_low, 6),
                format_significant(c.ci_high, 6),
                trace.strategy.to_string(),
                trace.host.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub host: HostModel,
    pub strategy: Strategy,
    pub theoretical: ExactProb,
    pub simulated: f64,
    pub difference: f64,
}

impl ComparisonRow {
    pub fn label(&self) -> String {
        let host = match self.host {
            HostModel::Informed => "Informed",
            HostModel::Random => "Random",
        };
        let strategy = match self.strategy {
            Strategy::Stay => "Stay",
            Strategy::Switch => "Switch",
        };
        format!("{host} host, {strategy}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub precision: usize,
    pub rows: Vec<ComparisonRow>,
}

impl ComparisonReport {
    /// Plain-text table with theoretical, simulated, and difference columns.
    pub fn render(&self) -> String {
        let p = self.precision;
        let mut out = format!(
            "{:<24}{:>13}{:>13}{:>13}\n",
            "", "Theoretical", "Simulated", "Difference"
        );
        for row in &self.rows {
            out.push_str(&format!(
                "{:<24}{:>13}{:>13.p$}{:>13.p$}\n",
                row.label(),
                row.theoretical.to_decimal(p),
                row.simulated,
                row.difference,
            ));
        }
        out
    }
}

/// Pairs each simulated win rate with its exact analytic value.
pub fn compare(summaries: &[RunSummary]) -> Result<ComparisonReport, StatsError> {
    let rows = summaries
        .iter()
        .map(|s| {
            let valid = s
                .config
                .validate()
                .map_err(|e| StatsError::ConfigMismatch {
                    config: s.config,
                    reason: e.to_string(),
                })?;
            let outcome = analytic::probabilities(&valid);
            let theoretical = match s.strategy {
                Strategy::Stay => outcome.stay,
                Strategy::Switch => outcome.switch,
            };
            let simulated = s.win_rate();
            Ok(ComparisonRow {
                host: s.config.host,
                strategy: s.strategy,
                difference: (theoretical.to_f64() - simulated).abs(),
                theoretical,
                simulated,
            })
        })
        .collect::<Result<Vec<_>, StatsError>>()?;
    Ok(ComparisonReport {
        precision: REPORT_PRECISION,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::montecarlo::Strategy;
    use proptest::prelude::*;

    fn records(wins: &[bool]) -> Vec<TrialRecord> {
        wins.iter()
            .enumerate()
            .map(|(i, &won)| TrialRecord {
                trial_index: i as u64,
                won,
                rejections_before_accept: 0,
            })
            .collect()
    }

    #[test]
    fn wilson_reference_values() {
        // reference values from an independent evaluation of the score formula
        let (lo, hi) = wilson_interval(50, 100, 1.96);
        assert!((lo - 0.403_829_828_590_147_16).abs() < 1e-12);
        assert!((hi - 0.596_170_171_409_852_8).abs() < 1e-12);
        let (lo, hi) = wilson_interval(3, 8, 1.96);
        assert!((lo - 0.136_841_759_461_521_05).abs() < 1e-12);
        assert!((hi - 0.694_262_145_416_198_1).abs() < 1e-12);
        let (lo, hi) = wilson_interval(0, 1, 1.96);
        assert_eq!(lo, 0.0);
        assert!((hi - 1.96f64.powi(2) / (1.0 + 1.96f64.powi(2))).abs() < 1e-12);
        let (lo, hi) = wilson_interval(10, 10, 1.96);
        assert_eq!(hi, 1.0);
        assert!((lo - 0.722_459_831_233_383_4).abs() < 1e-12);
    }

    #[test]
    fn trace_powers_of_two() {
        let mut wins = vec![false; 8];
        wins[0] = true;
        wins[1] = true;
        let t = make_trace(
            records(&wins),
            &CheckpointRule::PowersOfTwo,
            Strategy::Stay,
            HostModel::Informed,
            Z_95,
        )
        .unwrap();
        let got: Vec<(u64, f64)> = t
            .checkpoints
            .iter()
            .map(|c| (c.trial_count, c.win_rate))
            .collect();
        assert_eq!(got, vec![(1, 1.0), (2, 1.0), (4, 0.5), (8, 0.25)]);
    }

    #[test]
    fn trace_appends_final_count() {
        let t = make_trace(
            records(&[true; 11]),
            &CheckpointRule::PowersOfTwo,
            Strategy::Switch,
            HostModel::Random,
            Z_95,
        )
        .unwrap();
        let counts: Vec<u64> = t.checkpoints.iter().map(|c| c.trial_count).collect();
        assert_eq!(counts, vec![1, 2, 4, 8, 11]);
        assert!(t
            .checkpoints
            .iter()
            .all(|c| c.win_rate == 1.0 && c.ci_high == 1.0));
        let t = make_trace(
            records(&[true; 10]),
            &CheckpointRule::Every(5),
            Strategy::Switch,
            HostModel::Random,
            Z_95,
        )
        .unwrap();
        assert_eq!(t.checkpoints.len(), 2);
    }

    #[test]
    fn empty_trace_is_rejected() {
        let r = make_trace(
            Vec::new(),
            &CheckpointRule::PowersOfTwo,
            Strategy::Stay,
            HostModel::Informed,
            Z_95,
        );
        assert!(matches!(r, Err(StatsError::EmptyRecords)));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(0.666_666_67, 6), "0.666667");
        assert_eq!(format_significant(0.5, 6), "0.5");
        assert_eq!(format_significant(1.0, 6), "1");
        assert_eq!(format_significant(0.0, 6), "0");
        assert_eq!(format_significant(0.000_012_345_678, 6), "1.23457e-05");
        assert_eq!(format_significant(1_048_576.0, 6), "1.04858e+06");
        assert_eq!(format_significant(0.369_824_9, 6), "0.369825");
    }

    #[test]
    fn csv_header_and_rows() {
        let t = make_trace(
            records(&[true, false, false]),
            &CheckpointRule::PowersOfTwo,
            Strategy::Stay,
            HostModel::Informed,
            Z_95,
        )
        .unwrap();
        let mut buf = Vec::new();
        write_trace_csv(&[t], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], TRACE_CSV_HEADER);
        assert_eq!(lines.len(), 4);
        assert!(lines[3].starts_with("3,0.333333,"));
        assert!(lines[3].ends_with(",stay,informed"));
    }

    #[test]
    fn compare_hundred_door_configuration() {
        let summary = |host, strategy| RunSummary {
            config: ProblemConfig::new(100, 37, 3, 2, host),
            strategy,
            requested_trials: 100,
            accepted_trials: 100,
            rejected_trials: 0,
            wins: 36,
            master_seed: 0,
        };
        let report = compare(&[
            summary(HostModel::Informed, Strategy::Stay),
            summary(HostModel::Informed, Strategy::Switch),
            summary(HostModel::Random, Strategy::Stay),
            summary(HostModel::Random, Strategy::Switch),
        ])
        .unwrap();
        let theory: Vec<String> = report
            .rows
            .iter()
            .map(|r| r.theoretical.to_decimal(5))
            .collect();
        assert_eq!(theory, ["0.37000", "0.36073", "0.36082", "0.36082"]);
        assert!((report.rows[0].difference - 0.01).abs() < 1e-12);
        assert!(report.render().contains("Informed host, Stay"));
        assert!(compare(&[]).unwrap().rows.is_empty());
    }

    #[test]
    fn compare_rejects_invalid_config() {
        let s = RunSummary {
            config: ProblemConfig::informed(3, 1, 2, 0),
            strategy: Strategy::Stay,
            requested_trials: 1,
            accepted_trials: 1,
            rejected_trials: 0,
            wins: 0,
            master_seed: 0,
        };
        assert!(matches!(
            compare(&[s]),
            Err(StatsError::ConfigMismatch { .. })
        ));
    }

    proptest! {
        #[test]
        fn wilson_contains_estimate(trials in 1u64..1_000_000, frac in 0.0f64..=1.0, z in 0.1f64..4.0) {
            let wins = ((trials as f64) * frac).floor() as u64;
            let (lo, hi) = wilson_interval(wins, trials, z);
            let p = wins as f64 / trials as f64;
            prop_assert!(0.0 <= lo && lo <= p && p <= hi && hi <= 1.0);
        }

        #[test]
        fn trace_is_monotone_and_bounded(wins in proptest::collection::vec(any::<bool>(), 1..500)) {
            let t = make_trace(records(&wins), &CheckpointRule::PowersOfTwo, Strategy::Stay, HostModel::Random, Z_95).unwrap();
            prop_assert!(t.checkpoints.windows(2).all(|w| w[0].trial_count < w[1].trial_count));
            prop_assert_eq!(t.last().trial_count, wins.len() as u64);
            prop_assert_eq!(t.last().wins, wins.iter().filter(|&&w| w).count() as u64);
            for c in &t.checkpoints {
                prop_assert!(0.0 <= c.ci_low && c.ci_low <= c.win_rate && c.win_rate <= c.ci_high && c.ci_high <= 1.0);
            }
        }
    }
}
