//! Two-phase computation of a `(1/2 + delta)`-well-supported equilibrium in
//! a symmetric game with payoffs in `[0, 1]`.
//!
//! Phase one looks for `x` with `(x, x)` preventing exceeding `(1/2, 1/2)`,
//! which is already a 1/2-WSNE. If none exists the symmetric equilibrium
//! pays more than 1/2, and an exhaustive search over pairs of
//! `kappa(delta)`-uniform strategies finds a profile that well supports
//! `(1/2 - delta, 1/2 - delta)`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, RegretReport, StrategyProfile};
use crate::pe::symmetric_pe;
use crate::rational::{format_rational, half, Rational};
use crate::ws::{search_ws, Multiset, SearchOptions, WsParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Path {
    /// Found by the prevent-exceeding feasibility system.
    Pe,
    /// Found by the well-support multiset search.
    Ws,
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Path::Pe => "PE",
            Path::Ws => "WS",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub profile: StrategyProfile,
    pub path: Path,
    pub certificate: RegretReport,
    /// Zero on the PE path.
    pub pairs_examined: u64,
    pub delta: Rational,
    pub kappa: u64,
    /// Multisets behind a WS-path profile.
    pub multisets: Option<(Multiset, Multiset)>,
    pub warnings: Vec<String>,
}

impl Solution {
    /// The WSNE bound this solution is certified against.
    pub fn guarantee(&self) -> Rational {
        match self.path {
            Path::Pe => half(),
            Path::Ws => half() + &self.delta,
        }
    }
}

/// Runs both phases on a normalized symmetric game.
pub fn half_wsne(game: &BimatrixGame, delta: &Rational, options: &SearchOptions) -> Result<Solution> {
    if !game.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if !game.is_normalized() {
        return Err(Error::OutOfRange(
            "payoffs must lie in [0, 1]; normalize the game first".into(),
        ));
    }
    let ws_params = WsParams::new(half(), half(), delta.clone())?;
    let mut warnings = Vec::new();
    if *delta >= half() {
        warnings.push(format!(
            "delta = {} makes the guarantee 1/2 + delta >= 1 vacuous",
            format_rational(delta)
        ));
    }

    let solution = if let Some(x) = symmetric_pe(game, &half())? {
        let profile = StrategyProfile::symmetric(x);
        Solution {
            certificate: game.wsne_epsilon(&profile)?,
            profile,
            path: Path::Pe,
            pairs_examined: 0,
            delta: delta.clone(),
            kappa: ws_params.kappa,
            multisets: None,
            warnings,
        }
    } else {
        let search = search_ws(game, &ws_params, options)?;
        let Some(hit) = search.hit else {
            return Err(Error::GuaranteeViolated(format!(
                "PE(1/2, 1/2) is infeasible and all {} multiset pairs failed the WS check",
                search.stats.total_pairs
            )));
        };
        Solution {
            certificate: game.wsne_epsilon(&hit.profile)?,
            profile: hit.profile,
            path: Path::Ws,
            pairs_examined: search.stats.pairs_examined,
            delta: delta.clone(),
            kappa: ws_params.kappa,
            multisets: Some((hit.row_multiset, hit.col_multiset)),
            warnings,
        }
    };

    let bound = solution.guarantee();
    let eps = &solution.certificate.epsilon_wsne;
    if *eps > bound || *eps < Rational::zero() || *eps > Rational::one() {
        return Err(Error::GuaranteeViolated(format!(
            "{} path returned epsilon_wsne = {} above {}",
            solution.path,
            format_rational(eps),
            format_rational(&bound)
        )));
    }
    Ok(solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::MixedStrategy;
    use crate::rational::{int, ratio};

    fn rps() -> BimatrixGame {
        BimatrixGame::symmetric(vec![
            vec![half(), int(0), int(1)],
            vec![int(1), half(), int(0)],
            vec![int(0), int(1), half()],
        ])
        .unwrap()
    }

    #[test]
    fn rps_takes_pe_path() {
        let s = half_wsne(&rps(), &ratio(1, 10), &SearchOptions::default()).unwrap();
        assert_eq!(s.path, Path::Pe);
        assert_eq!(s.profile, StrategyProfile::symmetric(MixedStrategy::uniform(3)));
        assert_eq!(s.certificate.epsilon_wsne, int(0));
        assert_eq!(s.pairs_examined, 0);
        assert_eq!(s.kappa, 461);
        assert!(s.warnings.is_empty());
    }

    #[test]
    fn all_ones_takes_ws_path() {
        let g = BimatrixGame::symmetric(vec![vec![int(1); 3]; 3]).unwrap();
        let s = half_wsne(&g, &ratio(1, 2), &SearchOptions::default()).unwrap();
        assert_eq!(s.path, Path::Ws);
        assert_eq!(s.pairs_examined, 1);
        assert_eq!(s.certificate.epsilon_wsne, int(0));
        assert_eq!(s.warnings.len(), 1);
    }

    #[test]
    fn high_diagonal_takes_ws_path() {
        let g = BimatrixGame::symmetric(vec![
            vec![ratio(9, 10), ratio(6, 10)],
            vec![ratio(6, 10), ratio(9, 10)],
        ])
        .unwrap();
        let s = half_wsne(&g, &ratio(2, 5), &SearchOptions::default()).unwrap();
        assert_eq!(s.path, Path::Ws);
        assert_eq!(s.kappa, 12);
        assert!(s.certificate.epsilon_wsne <= ratio(9, 10));
        // Lexicographically first pair: I = J = (0, 12), i.e. both play e2.
        assert_eq!(s.pairs_examined, 1);
        assert_eq!(s.profile, StrategyProfile::symmetric(MixedStrategy::pure(2, 1)));
    }

    #[test]
    fn rejects_bad_inputs() {
        let r = vec![vec![int(1), int(1)], vec![int(0), int(0)]];
        let g = BimatrixGame::new(r.clone(), r).unwrap();
        let opts = SearchOptions::default();
        assert_eq!(half_wsne(&g, &half(), &opts), Err(Error::NotSymmetric));
        let g = BimatrixGame::symmetric(vec![vec![int(2)]]).unwrap();
        assert!(matches!(half_wsne(&g, &half(), &opts), Err(Error::OutOfRange(_))));
        assert!(matches!(
            half_wsne(&rps(), &int(0), &opts),
            Err(Error::InvalidDelta(_))
        ));
    }

    #[test]
    fn budget_abort_is_distinct() {
        let g = BimatrixGame::symmetric(vec![vec![int(1); 3]; 3]).unwrap();
        let opts = SearchOptions { jobs: 1, budget: 10 };
        assert!(matches!(
            half_wsne(&g, &ratio(1, 10), &opts),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
