//! Bimatrix games, mixed strategies and exact equilibrium verification.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

pub type Matrix = Vec<Vec<Rational>>;

/// A two-player game with `n` pure strategies per player.
///
/// `row[i][j]` is the row player's payoff and `col[i][j]` the column
/// player's payoff when row plays `i` and column plays `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimatrixGame {
    row: Matrix,
    col: Matrix,
}

impl BimatrixGame {
    pub fn new(row: Matrix, col: Matrix) -> Result<Self> {
        let n = row.len();
        if n == 0 || row.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        if col.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: col.len(),
            });
        }
        if let Some(bad) = col.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        Ok(Self { row, col })
    }

    /// Symmetric game `(R, R^T)`.
    pub fn symmetric(row: Matrix) -> Result<Self> {
        let n = row.len();
        if n == 0 || row.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        let col = transpose(&row);
        Ok(Self { row, col })
    }

    pub fn n(&self) -> usize {
        self.row.len()
    }

    pub fn row_matrix(&self) -> &Matrix {
        &self.row
    }

    pub fn col_matrix(&self) -> &Matrix {
        &self.col
    }

    /// True iff `C == R^T` entrywise.
    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| self.col[i][j] == self.row[j][i]))
    }

    fn check_profile(&self, profile: &StrategyProfile) -> Result<()> {
        for s in [&profile.row, &profile.col] {
            if s.len() != self.n() {
                return Err(Error::DimensionMismatch {
                    expected: self.n(),
                    got: s.len(),
                });
            }
        }
        Ok(())
    }

    /// `(x^T R y, x^T C y)`.
    pub fn payoffs(&self, profile: &StrategyProfile) -> Result<(Rational, Rational)> {
        let (row_values, col_values) = self.pure_response_values(profile)?;
        Ok((
            dot(profile.row.weights(), &row_values),
            dot(profile.col.weights(), &col_values),
        ))
    }

    /// `row_values[i] = R_i. y` and `col_values[j] = x^T C_.j`.
    pub fn pure_response_values(
        &self,
        profile: &StrategyProfile,
    ) -> Result<(Vec<Rational>, Vec<Rational>)> {
        self.check_profile(profile)?;
        Ok((
            row_responses(&self.row, profile.col.weights()),
            col_responses(&self.col, profile.row.weights()),
        ))
    }

    /// Computes both the well-supported and the plain Nash regret of a profile.
    pub fn wsne_epsilon(&self, profile: &StrategyProfile) -> Result<RegretReport> {
        let (row_values, col_values) = self.pure_response_values(profile)?;
        let row_payoff = dot(profile.row.weights(), &row_values);
        let col_payoff = dot(profile.col.weights(), &col_values);

        let row_best = max_of(&row_values);
        let col_best = max_of(&col_values);
        let row_worst_supported = min_over(&row_values, &profile.row.support());
        let col_worst_supported = min_over(&col_values, &profile.col.support());

        let row_wsne_regret = &row_best - row_worst_supported;
        let col_wsne_regret = &col_best - col_worst_supported;
        let epsilon_wsne = row_wsne_regret.clone().max(col_wsne_regret.clone());
        let epsilon_ne = (&row_best - &row_payoff).max(&col_best - &col_payoff);

        Ok(RegretReport {
            row_payoff,
            col_payoff,
            row_wsne_regret,
            col_wsne_regret,
            epsilon_wsne,
            epsilon_ne,
        })
    }

    /// Affinely maps all payoffs into `[0, 1]` with one shared shift and scale.
    pub fn normalize(&self) -> Normalized {
        let entries = || self.row.iter().chain(self.col.iter()).flatten();
        let min = entries().min().cloned().unwrap_or_else(Rational::zero);
        let max = entries().max().cloned().unwrap_or_else(Rational::zero);
        let scale = if max == min { Rational::one() } else { &max - &min };
        let map = |m: &Matrix| -> Matrix {
            m.iter()
                .map(|r| r.iter().map(|v| (v - &min) / &scale).collect())
                .collect()
        };
        Normalized {
            game: Self {
                row: map(&self.row),
                col: map(&self.col),
            },
            shift: min,
            scale,
        }
    }

    pub fn is_normalized(&self) -> bool {
        let zero = Rational::zero();
        let one = Rational::one();
        self.row
            .iter()
            .chain(self.col.iter())
            .flatten()
            .all(|v| *v >= zero && *v <= one)
    }

    /// True iff every pure response to `x` earns the column player at most `u`
    /// and every pure response to `y` earns the row player at most `v`.
    pub fn prevents_exceeding(
        &self,
        profile: &StrategyProfile,
        v: &Rational,
        u: &Rational,
    ) -> Result<bool> {
        let (row_values, col_values) = self.pure_response_values(profile)?;
        Ok(row_values.iter().all(|r| r <= v) && col_values.iter().all(|c| c <= u))
    }

    /// True iff every supported pure strategy of `x` earns at least `v`
    /// against `y`, and every supported pure strategy of `y` earns at least
    /// `u` against `x`.
    pub fn well_supports(
        &self,
        profile: &StrategyProfile,
        v: &Rational,
        u: &Rational,
    ) -> Result<bool> {
        let (row_values, col_values) = self.pure_response_values(profile)?;
        Ok(profile.row.support().into_iter().all(|i| row_values[i] >= *v)
            && profile.col.support().into_iter().all(|j| col_values[j] >= *u))
    }
}

/// Output of [`BimatrixGame::normalize`]: `game = (original - shift) / scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub game: BimatrixGame,
    pub shift: Rational,
    pub scale: Rational,
}

impl Normalized {
    /// Converts a regret measured in normalized units back to original units.
    pub fn to_original_units(&self, regret: &Rational) -> Rational {
        regret * &self.scale
    }
}

/// A probability vector over pure strategies.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MixedStrategy {
    weights: Vec<Rational>,
}

impl MixedStrategy {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidStrategy("no pure strategies".into()));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::InvalidStrategy(format!(
                "negative weight {}",
                format_rational(w)
            )));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidStrategy(format!(
                "weights sum to {}, not 1",
                format_rational(&total)
            )));
        }
        Ok(Self { weights })
    }

    /// The point mass on pure strategy `index` (0-based).
    pub fn pure(n: usize, index: usize) -> Self {
        assert!(index < n, "pure strategy {index} out of range for n = {n}");
        let mut weights = vec![Rational::zero(); n];
        weights[index] = Rational::one();
        Self { weights }
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0);
        let w = Rational::new(1.into(), (n as i64).into());
        Self {
            weights: vec![w; n],
        }
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Indices with positive weight, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.is_positive())
            .map(|(i, _)| i)
            .collect()
    }

    /// True iff every weight is a multiple of `1/k`.
    pub fn is_k_uniform(&self, k: u64) -> bool {
        let k = Rational::from_integer(k.into());
        self.weights.iter().all(|w| (w * &k).is_integer())
    }
}

impl fmt::Display for MixedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(format_rational).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrategyProfile {
    pub row: MixedStrategy,
    pub col: MixedStrategy,
}

impl StrategyProfile {
    pub fn new(row: MixedStrategy, col: MixedStrategy) -> Self {
        Self { row, col }
    }

    pub fn symmetric(x: MixedStrategy) -> Self {
        Self {
            row: x.clone(),
            col: x,
        }
    }

    pub fn swapped(&self) -> Self {
        Self {
            row: self.col.clone(),
            col: self.row.clone(),
        }
    }
}

/// Regrets of a profile: the equilibrium-quality certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegretReport {
    pub row_payoff: Rational,
    pub col_payoff: Rational,
    pub row_wsne_regret: Rational,
    pub col_wsne_regret: Rational,
    pub epsilon_wsne: Rational,
    pub epsilon_ne: Rational,
}

impl RegretReport {
    pub fn is_wsne(&self, epsilon: &Rational) -> bool {
        self.epsilon_wsne <= *epsilon
    }
}

pub fn transpose(m: &Matrix) -> Matrix {
    let n = m.len();
    (0..n).map(|j| (0..n).map(|i| m[i][j].clone()).collect()).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(w, _)| !w.is_zero())
        .map(|(w, v)| w * v)
        .sum()
}

fn row_responses(row: &Matrix, y: &[Rational]) -> Vec<Rational> {
    row.iter().map(|r| dot(y, r)).collect()
}

fn col_responses(col: &Matrix, x: &[Rational]) -> Vec<Rational> {
    let n = col.len();
    (0..n)
        .map(|j| {
            x.iter()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .map(|(i, w)| w * &col[i][j])
                .sum()
        })
        .collect()
}

fn max_of(values: &[Rational]) -> Rational {
    values.iter().max().cloned().expect("non-empty")
}

fn min_over(values: &[Rational], indices: &[usize]) -> Rational {
    indices
        .iter()
        .map(|&i| &values[i])
        .min()
        .cloned()
        .expect("support is non-empty")
}
