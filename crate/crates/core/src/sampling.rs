//! Monte Carlo check that small-support profiles sampled from an exact
//! equilibrium nearly well support its payoffs.
//!
//! Each trial draws `kappa(delta)` pure strategies with replacement from
//! each equilibrium strategy and tests whether the empirical profile well
//! supports `(v* - delta, u* - delta)`. The Hoeffding and union-bound
//! quantities are reported next to the empirical rate as diagnostics only.
//!
//! Randomness comes from ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded with
//! `seed_from_u64(seed)`; trial `t` uses stream `t`, so trials are
//! independent of each other and of evaluation order.

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, MixedStrategy, StrategyProfile};
use crate::kappa::kappa;
use crate::rational::{format_rational, to_f64, Rational};
use crate::ws::{strategy_from_multiset, Multiset};

pub const RNG_NAME: &str = "ChaCha20 (seed_from_u64(seed), stream = trial index)";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub delta: Rational,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleOutcome {
    pub kappa: u64,
    pub trials: u64,
    pub successes: u64,
    pub first_success: Option<StrategyProfile>,
    pub empirical_failure_rate: Rational,
    /// `kappa * exp(-2 delta^2 kappa)`.
    pub per_side_bound: f64,
    /// `2 delta^2 ln(1/delta)`.
    pub union_bound: f64,
    /// Samples whose support left the equilibrium support (expected 0).
    pub support_violations: u64,
    /// Samples that were not `kappa`-uniform with support at most `kappa` (expected 0).
    pub uniformity_violations: u64,
}

/// Draws `k` indices i.i.d. from `base` and returns their counts.
///
/// Sampling is exact: weights are put over a common denominator `D` and an
/// integer is drawn uniformly from `[0, D)`.
pub fn sample_multiset<R: Rng + ?Sized>(base: &MixedStrategy, k: u64, rng: &mut R) -> Multiset {
    let denom = base
        .weights()
        .iter()
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let mut cumulative = Vec::with_capacity(base.len());
    let mut acc = BigInt::zero();
    for w in base.weights() {
        acc += (w * Rational::from_integer(denom.clone())).to_integer();
        cumulative.push(acc.clone());
    }
    let mut counts = vec![0u64; base.len()];
    for _ in 0..k {
        let draw = rng.gen_bigint_range(&BigInt::zero(), &denom);
        // First index whose cumulative mass exceeds the draw; zero-weight
        // entries never satisfy this strictly.
        let i = cumulative.partition_point(|c| *c <= draw);
        counts[i] += 1;
    }
    Multiset::new(counts)
}

/// The empirical distribution of `k` draws from `base`.
pub fn sample_k_uniform<R: Rng + ?Sized>(base: &MixedStrategy, k: u64, rng: &mut R) -> Result<MixedStrategy> {
    strategy_from_multiset(&sample_multiset(base, k, rng))
}

/// `exp(-2 delta^2 k)`.
pub fn hoeffding_tail(delta: &Rational, k: u64) -> f64 {
    let exponent = Rational::from_integer(BigInt::from(2) * BigInt::from(k)) * delta * delta;
    (-to_f64(&exponent)).exp()
}

/// `2 delta^2 ln(1/delta)`.
pub fn union_bound_value(delta: f64) -> f64 {
    2.0 * delta * delta * (1.0 / delta).ln()
}

/// `k * exp(-2 delta^2 k)`.
pub fn per_side_bound(delta: &Rational, k: u64) -> f64 {
    k as f64 * hoeffding_tail(delta, k)
}

fn rng_for_trial(seed: u64, trial: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn demonstrate_existence(
    game: &BimatrixGame,
    ne: &StrategyProfile,
    config: &SampleConfig,
) -> Result<SampleOutcome> {
    if config.trials == 0 {
        return Err(Error::OutOfRange("trials must be at least 1".into()));
    }
    if !game.is_normalized() {
        return Err(Error::OutOfRange(
            "payoffs must lie in [0, 1]; normalize the game first".into(),
        ));
    }
    let k = kappa(&config.delta)?;
    let report = game.wsne_epsilon(ne)?;
    if report.epsilon_ne.is_positive() {
        return Err(Error::NotExactEquilibrium(format_rational(&report.epsilon_ne)));
    }
    let v = &report.row_payoff - &config.delta;
    let u = &report.col_payoff - &config.delta;
    let row_support = ne.row.support();
    let col_support = ne.col.support();

    let mut successes = 0;
    let mut first_success = None;
    let mut support_violations = 0;
    let mut uniformity_violations = 0;
    for trial in 0..config.trials {
        let mut rng = rng_for_trial(config.seed, trial);
        let x = sample_k_uniform(&ne.row, k, &mut rng)?;
        let y = sample_k_uniform(&ne.col, k, &mut rng)?;
        for (s, base_support) in [(&x, &row_support), (&y, &col_support)] {
            let support = s.support();
            if !support.iter().all(|i| base_support.contains(i)) {
                support_violations += 1;
            }
            if !s.is_k_uniform(k) || support.len() as u64 > k {
                uniformity_violations += 1;
            }
        }
        let profile = StrategyProfile::new(x, y);
        if game.well_supports(&profile, &v, &u)? {
            successes += 1;
            first_success.get_or_insert(profile);
        }
    }

    let trials = config.trials;
    Ok(SampleOutcome {
        kappa: k,
        trials,
        successes,
        first_success,
        empirical_failure_rate: Rational::new(
            BigInt::from(trials - successes),
            BigInt::from(trials),
        ),
        per_side_bound: per_side_bound(&config.delta, k),
        union_bound: union_bound_value(to_f64(&config.delta)),
        support_violations,
        uniformity_violations,
    })
}
