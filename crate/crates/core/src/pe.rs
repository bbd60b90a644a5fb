//! Profiles that prevent exceeding a payoff pair.
//!
//! A profile `(x, y)` prevents exceeding `(v, u)` when no pure response to
//! `y` pays the row player more than `v` and no pure response to `x` pays the
//! column player more than `u`. That property is linear in `(x, y)`, so it is
//! decided by one feasibility solve.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, MixedStrategy, StrategyProfile};
use crate::lp::{solve_feasible, LinearSystem, Relation};
use crate::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeParams {
    pub v: Rational,
    pub u: Rational,
}

impl PeParams {
    pub fn new(v: Rational, u: Rational) -> Result<Self> {
        for (name, value) in [("v", &v), ("u", &u)] {
            if *value < Rational::zero() || *value > Rational::one() {
                return Err(Error::OutOfRange(format!(
                    "{name} = {} is outside [0, 1]",
                    format_rational(value)
                )));
            }
        }
        Ok(Self { v, u })
    }
}

/// Variables are `x_1..x_n` followed by `y_1..y_n`. Constraint order: the
/// two simplex equalities, then `R_i. y <= v` for each `i`, then
/// `x^T C_.j <= u` for each `j`.
pub fn build_pe(game: &BimatrixGame, params: &PeParams) -> LinearSystem {
    let n = game.n();
    let zero = Rational::zero;
    let mut system = LinearSystem::new(2 * n);

    let mut sum_x = vec![zero(); 2 * n];
    sum_x[..n].fill(Rational::one());
    system.push(sum_x, Relation::Eq, Rational::one());
    let mut sum_y = vec![zero(); 2 * n];
    sum_y[n..].fill(Rational::one());
    system.push(sum_y, Relation::Eq, Rational::one());

    for i in 0..n {
        let mut coeffs = vec![zero(); 2 * n];
        coeffs[n..].clone_from_slice(&game.row_matrix()[i]);
        system.push(coeffs, Relation::Le, params.v.clone());
    }
    for j in 0..n {
        let mut coeffs = vec![zero(); 2 * n];
        for (i, c) in coeffs[..n].iter_mut().enumerate() {
            *c = game.col_matrix()[i][j].clone();
        }
        system.push(coeffs, Relation::Le, params.u.clone());
    }
    system
}

/// Solves `PE(v, u)`; any returned profile is re-verified to prevent
/// exceeding `(v, u)`.
pub fn solve_pe(game: &BimatrixGame, params: &PeParams) -> Result<Option<StrategyProfile>> {
    let n = game.n();
    let Some(point) = solve_feasible(&build_pe(game, params))? else {
        return Ok(None);
    };
    let (x, y) = point.split_at(n);
    let profile = StrategyProfile::new(
        MixedStrategy::new(x.to_vec())?,
        MixedStrategy::new(y.to_vec())?,
    );
    if !game.prevents_exceeding(&profile, &params.v, &params.u)? {
        return Err(Error::GuaranteeViolated(
            "PE solution does not prevent exceeding".into(),
        ));
    }
    Ok(Some(profile))
}

/// One-sided system for symmetric games: `sum x = 1`, `x >= 0` and
/// `R_j. x <= u` for every `j`.
pub fn build_symmetric_pe(game: &BimatrixGame, u: &Rational) -> LinearSystem {
    let n = game.n();
    let mut system = LinearSystem::new(n);
    system.push(vec![Rational::one(); n], Relation::Eq, Rational::one());
    for row in game.row_matrix() {
        system.push(row.clone(), Relation::Le, u.clone());
    }
    system
}

/// Finds `x` such that `(x, x)` prevents exceeding `(u, u)` in a symmetric
/// game. `None` means no symmetric strategy prevents exceeding `u`.
pub fn symmetric_pe(game: &BimatrixGame, u: &Rational) -> Result<Option<MixedStrategy>> {
    if !game.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let Some(point) = solve_feasible(&build_symmetric_pe(game, u))? else {
        return Ok(None);
    };
    let x = MixedStrategy::new(point)?;
    let profile = StrategyProfile::symmetric(x.clone());
    if !game.prevents_exceeding(&profile, u, u)? {
        return Err(Error::GuaranteeViolated(
            "symmetric PE solution does not prevent exceeding".into(),
        ));
    }
    Ok(Some(x))
}
