//! Exact Nash equilibria of small games by support enumeration.
//!
//! For every pair of equal-size supports the indifference conditions plus
//! normalization form a square linear system, solved here by exact Gaussian
//! elimination. Singular systems are skipped, so degenerate games with
//! continua of equilibria yield only the isolated points found this way
//! (always including every pure equilibrium).

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, Matrix, MixedStrategy, StrategyProfile};
use crate::rational::Rational;

pub const DEFAULT_MAX_N: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeRecord {
    pub profile: StrategyProfile,
    pub v: Rational,
    pub u: Rational,
    pub symmetric: bool,
}

pub fn support_enumeration_ne(game: &BimatrixGame, max_n: usize) -> Result<Vec<NeRecord>> {
    let n = game.n();
    if n > max_n || n >= 32 {
        return Err(Error::OracleGuard { n, max_n });
    }
    let mut records: Vec<NeRecord> = Vec::new();
    for size in 1..=n {
        let supports = subsets_of_size(n, size);
        for rows in &supports {
            for cols in &supports {
                let Some(record) = solve_support_pair(game, rows, cols)? else {
                    continue;
                };
                if !records.iter().any(|r| r.profile == record.profile) {
                    records.push(record);
                }
            }
        }
    }
    Ok(records)
}

/// Equilibria whose row and column strategies coincide.
pub fn symmetric_ne(game: &BimatrixGame, max_n: usize) -> Result<Vec<NeRecord>> {
    if !game.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(support_enumeration_ne(game, max_n)?
        .into_iter()
        .filter(|r| r.symmetric)
        .collect())
}

fn solve_support_pair(
    game: &BimatrixGame,
    rows: &[usize],
    cols: &[usize],
) -> Result<Option<NeRecord>> {
    let n = game.n();
    // y on `cols` makes every row in `rows` earn the same v.
    let row_m = game.row_matrix();
    let Some((y, _)) = indifference(rows.len(), |a, b| row_m[rows[a]][cols[b]].clone()) else {
        return Ok(None);
    };
    // x on `rows` makes every column in `cols` earn the same u.
    let col_m = game.col_matrix();
    let Some((x, _)) = indifference(cols.len(), |a, b| col_m[rows[b]][cols[a]].clone()) else {
        return Ok(None);
    };
    if x.iter().chain(&y).any(Signed::is_negative) {
        return Ok(None);
    }
    let x = MixedStrategy::new(scatter(n, rows, x))?;
    let y = MixedStrategy::new(scatter(n, cols, y))?;
    let profile = StrategyProfile::new(x, y);
    let report = game.wsne_epsilon(&profile)?;
    if !report.epsilon_ne.is_zero() {
        return Ok(None);
    }
    Ok(Some(NeRecord {
        symmetric: profile.row == profile.col,
        v: report.row_payoff,
        u: report.col_payoff,
        profile,
    }))
}

/// Solves `sum_b a(r, b) w_b = value` for every `r < s` together with
/// `sum_b w_b = 1`. Returns `(w, value)`, or `None` when singular.
fn indifference(s: usize, a: impl Fn(usize, usize) -> Rational) -> Option<(Vec<Rational>, Rational)> {
    // Unknowns: w_0..w_{s-1}, value.
    let mut system: Matrix = (0..s)
        .map(|r| {
            let mut row: Vec<Rational> = (0..s).map(|b| a(r, b)).collect();
            row.push(-Rational::one());
            row.push(Rational::zero());
            row
        })
        .collect();
    let mut norm = vec![Rational::one(); s];
    norm.push(Rational::zero());
    norm.push(Rational::one());
    system.push(norm);
    let mut solution = gaussian_solve(system)?;
    let value = solution.pop()?;
    Some((solution, value))
}

/// Exact solve of a square augmented system; `None` if singular.
fn gaussian_solve(mut m: Matrix) -> Option<Vec<Rational>> {
    let size = m.len();
    for col in 0..size {
        let pivot = (col..size).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for v in m[col].iter_mut() {
            *v /= &p;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v -= &factor * pv;
            }
        }
    }
    Some(m.into_iter().map(|row| row[size].clone()).collect())
}

fn scatter(n: usize, indices: &[usize], values: Vec<Rational>) -> Vec<Rational> {
    let mut full = vec![Rational::zero(); n];
    for (&i, v) in indices.iter().zip(values) {
        full[i] = v;
    }
    full
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
        .collect()
}
