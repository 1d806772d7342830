//! Domain types shared by every other module: game parameters and their
//! validation, exact probabilities, and binomial coefficients.

use std::fmt;
use std::ops::{Add, Deref, Mul, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

/// How the host chooses which doors to open.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HostModel {
    /// Knows every prize location and always opens `k` doors showing exactly `r` prizes.
    Informed,
    /// Opens `k` uniformly random doors; showing exactly `r` prizes is a conditioning event.
    Random,
}

impl HostModel {
    pub const ALL: [HostModel; 2] = [HostModel::Informed, HostModel::Random];

    pub fn as_str(self) -> &'static str {
        match self {
            HostModel::Informed => "informed",
            HostModel::Random => "random",
        }
    }
}

impl fmt::Display for HostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for HostModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "informed" => Ok(HostModel::Informed),
            "random" => Ok(HostModel::Random),
            other => Err(format!(
                "unknown host model `{other}` (expected informed|random)"
            )),
        }
    }
}

/// Raw game parameters: `doors` (N), `prizes` (m), `opened` (k), `revealed` (r).
///
/// Nothing about a `ProblemConfig` is guaranteed until it has been through
/// [`ProblemConfig::validate`], which yields a [`ValidConfig`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProblemConfig {
    pub doors: u32,
    pub prizes: u32,
    pub opened: u32,
    pub revealed: u32,
    pub host: HostModel,
}

/// Machine-readable reason a configuration was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReasonCode {
    /// `prizes` outside `1..=doors-1`.
    PrizeCountRange,
    /// `revealed > opened`.
    RevealedExceedsOpened,
    /// No unopened door other than the contestant's would remain.
    NoSwitchTarget,
    /// The informed host cannot always show exactly `revealed` prizes.
    InformedInfeasible,
    /// Under the random host the conditioning event has probability zero.
    EventImpossible,
}

impl ReasonCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ReasonCode::PrizeCountRange => "PRIZE_COUNT_RANGE",
            ReasonCode::RevealedExceedsOpened => "REVEALED_EXCEEDS_OPENED",
            ReasonCode::NoSwitchTarget => "NO_SWITCH_TARGET",
            ReasonCode::InformedInfeasible => "INFORMED_INFEASIBLE",
            ReasonCode::EventImpossible => "EVENT_IMPOSSIBLE",
        }
    }
}

impl fmt::Display for ReasonCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{code}: {detail}")]
pub struct ConfigError {
    pub code: ReasonCode,
    pub detail: String,
}

impl ConfigError {
    fn new(code: ReasonCode, detail: impl Into<String>) -> Self {
        ConfigError {
            code,
            detail: detail.into(),
        }
    }
}

impl ProblemConfig {
    pub fn new(doors: u32, prizes: u32, opened: u32, revealed: u32, host: HostModel) -> Self {
        ProblemConfig {
            doors,
            prizes,
            opened,
            revealed,
            host,
        }
    }

    pub fn informed(doors: u32, prizes: u32, opened: u32, revealed: u32) -> Self {
        Self::new(doors, prizes, opened, revealed, HostModel::Informed)
    }

    pub fn random(doors: u32, prizes: u32, opened: u32, revealed: u32) -> Self {
        Self::new(doors, prizes, opened, revealed, HostModel::Random)
    }

    pub fn with_host(self, host: HostModel) -> Self {
        ProblemConfig { host, ..self }
    }

    /// Checks every parameter constraint; the first violated one is reported.
    ///
    /// Order of checks: prize range, `r <= k`, a switch target exists, then the
    /// host-specific feasibility rule.
    pub fn validate(self) -> Result<ValidConfig, ConfigError> {
        let ProblemConfig {
            doors: n,
            prizes: m,
            opened: k,
            revealed: r,
            host,
        } = self;
        if m < 1 || m >= n {
            return Err(ConfigError::new(
                ReasonCode::PrizeCountRange,
                format!("need 1 <= prizes <= doors - 1, got prizes={m}, doors={n}"),
            ));
        }
        if r > k {
            return Err(ConfigError::new(
                ReasonCode::RevealedExceedsOpened,
                format!("revealed={r} exceeds opened={k}"),
            ));
        }
        if u64::from(k) + 1 >= u64::from(n) {
            return Err(ConfigError::new(
                ReasonCode::NoSwitchTarget,
                format!("opening {k} of {n} doors leaves no door to switch to"),
            ));
        }
        match host {
            HostModel::Informed => {
                if r + 1 > m {
                    return Err(ConfigError::new(
                        ReasonCode::InformedInfeasible,
                        format!("revealed={r} prizes impossible when the contestant may hold one of {m}"),
                    ));
                }
                if k - r > n - m - 1 {
                    return Err(ConfigError::new(
                        ReasonCode::InformedInfeasible,
                        format!(
                            "{} empty doors needed but only {} guaranteed",
                            k - r,
                            n - m - 1
                        ),
                    ));
                }
            }
            HostModel::Random => {
                let (n, m, k, r) = (u64::from(n), u64::from(m), i64::from(k), i64::from(r));
                let with_prize = binom(m - 1, r) * binom(n - m, k - r);
                let without_prize = binom(m, r) * binom(n - m - 1, k - r);
                if (with_prize + without_prize).is_zero() {
                    return Err(ConfigError::new(
                        ReasonCode::EventImpossible,
                        "the host can never reveal exactly that many prizes",
                    ));
                }
            }
        }
        Ok(ValidConfig(self))
    }
}

impl fmt::Display for ProblemConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(N={}, m={}, k={}, r={}, {})",
            self.doors, self.prizes, self.opened, self.revealed, self.host
        )
    }
}

/// A [`ProblemConfig`] that passed validation. Only [`ProblemConfig::validate`] builds one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ValidConfig(ProblemConfig);

impl ValidConfig {
    pub fn config(&self) -> ProblemConfig {
        self.0
    }

    /// Doors a switching contestant can move to: `N - k - 1`.
    pub fn switch_targets(&self) -> u32 {
        self.0.doors - self.0.opened - 1
    }
}

impl Deref for ValidConfig {
    type Target = ProblemConfig;

    fn deref(&self) -> &ProblemConfig {
        &self.0
    }
}

impl fmt::Display for ValidConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Binomial coefficient `C(n, j)`, zero outside `0 <= j <= n`.
pub fn binom(n: u64, j: i64) -> BigUint {
    if j < 0 || j as u64 > n {
        return BigUint::zero();
    }
    let j = (j as u64).min(n - j as u64);
    let mut acc = BigUint::one();
    for i in 0..j {
        // acc * (n - i) is always divisible by (i + 1) here.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// An exact rational probability, kept in lowest terms with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactProb(BigRational);

impl ExactProb {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        ExactProb(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_ratio(ratio: BigRational) -> Self {
        ExactProb(ratio)
    }

    /// `numer / denom` for unsigned big integers; `denom` must be non-zero.
    pub fn from_biguint(numer: BigUint, denom: BigUint) -> Self {
        ExactProb::new(BigInt::from(numer), BigInt::from(denom))
    }

    pub fn zero() -> Self {
        ExactProb(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactProb(BigRational::one())
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_probability(&self) -> bool {
        !self.0.is_negative() && self.0 <= BigRational::one()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Fixed-point decimal rendering, rounded half away from zero, computed
    /// from the exact value (no floating point involved).
    pub fn to_decimal(&self, places: usize) -> String {
        let scale = BigInt::from(10u32).pow(places as u32);
        let numer: BigInt = self.0.numer().abs() * &scale * 2 + self.0.denom();
        let scaled = numer.div_floor(&(self.0.denom() * 2));
        let (int_part, frac_part) = scaled.div_rem(&scale);
        let sign = if self.0.is_negative() && !scaled.is_zero() {
            "-"
        } else {
            ""
        };
        if places == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part:0>places$}")
        }
    }

    /// `1 - self`.
    pub fn complement(&self) -> Self {
        ExactProb(BigRational::one() - &self.0)
    }
}

impl fmt::Display for ExactProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl Serialize for ExactProb {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'a> Add<&'a ExactProb> for &'a ExactProb {
    type Output = ExactProb;
    fn add(self, rhs: &'a ExactProb) -> ExactProb {
        ExactProb(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a ExactProb> for &'a ExactProb {
    type Output = ExactProb;
    fn sub(self, rhs: &'a ExactProb) -> ExactProb {
        ExactProb(&self.0 - &rhs.0)
    }
}

impl<'a> Mul<&'a ExactProb> for &'a ExactProb {
    type Output = ExactProb;
    fn mul(self, rhs: &'a ExactProb) -> ExactProb {
        ExactProb(&self.0 * &rhs.0)
    }
}

/// Paired stay/switch win probabilities for one configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrategyOutcome {
    pub stay: ExactProb,
    pub switch: ExactProb,
    pub config: ProblemConfig,
}
