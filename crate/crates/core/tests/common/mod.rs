//! Test fixtures and independent oracles shared by the integration suites.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use wsne_core::game::Matrix;
use wsne_core::rational::{half, int, ratio};
use wsne_core::{BimatrixGame, LinearSystem, MixedStrategy, Rational, Relation, StrategyProfile};

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn rps() -> BimatrixGame {
    BimatrixGame::symmetric(vec![
        vec![half(), int(0), int(1)],
        vec![int(1), half(), int(0)],
        vec![int(0), int(1), half()],
    ])
    .unwrap()
}

pub fn coordination() -> BimatrixGame {
    BimatrixGame::symmetric(vec![vec![int(1), int(0)], vec![int(0), int(1)]]).unwrap()
}

pub fn constant(n: usize, value: i64) -> BimatrixGame {
    BimatrixGame::symmetric(vec![vec![int(value); n]; n]).unwrap()
}

pub fn high_diagonal() -> BimatrixGame {
    BimatrixGame::symmetric(vec![
        vec![ratio(9, 10), ratio(6, 10)],
        vec![ratio(6, 10), ratio(9, 10)],
    ])
    .unwrap()
}

/// Entries `k / denom` with `k` uniform in `lo..=hi`.
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, denom: i64, lo: i64, hi: i64) -> Matrix {
    (0..n)
        .map(|_| (0..n).map(|_| ratio(rng.gen_range(lo..=hi), denom)).collect())
        .collect()
}

pub fn random_game<R: Rng>(rng: &mut R, n: usize, denom: i64, symmetric: bool) -> BimatrixGame {
    let row = random_matrix(rng, n, denom, 0, denom);
    if symmetric {
        BimatrixGame::symmetric(row).unwrap()
    } else {
        let col = random_matrix(rng, n, denom, 0, denom);
        BimatrixGame::new(row, col).unwrap()
    }
}

/// Random strategy; roughly half the draws have a sparse support.
pub fn random_strategy<R: Rng>(rng: &mut R, n: usize) -> MixedStrategy {
    let sparse = rng.gen_bool(0.5);
    let mut w: Vec<i64> = (0..n)
        .map(|_| {
            if sparse && rng.gen_bool(0.5) {
                0
            } else {
                rng.gen_range(0..=6)
            }
        })
        .collect();
    if w.iter().all(|&x| x == 0) {
        let i = rng.gen_range(0..n);
        w[i] = 1;
    }
    let total: i64 = w.iter().sum();
    MixedStrategy::new(w.into_iter().map(|x| ratio(x, total)).collect()).unwrap()
}

pub fn random_profile<R: Rng>(rng: &mut R, n: usize) -> StrategyProfile {
    StrategyProfile::new(random_strategy(rng, n), random_strategy(rng, n))
}

/// Threshold `k/20` in `[0, 1]`.
pub fn random_threshold<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(0..=20), 20)
}

/// Small random system: up to 3 variables and 4 constraints, small integer
/// coefficients, all three relations.
pub fn random_system<R: Rng>(rng: &mut R) -> LinearSystem {
    let vars = rng.gen_range(1..=3);
    let mut system = LinearSystem::new(vars);
    for _ in 0..rng.gen_range(0..=4) {
        let coeffs = (0..vars).map(|_| int(rng.gen_range(-3..=3))).collect();
        let relation = match rng.gen_range(0..3) {
            0 => Relation::Le,
            1 => Relation::Eq,
            _ => Relation::Ge,
        };
        system.push(coeffs, relation, ratio(rng.gen_range(-4..=6), rng.gen_range(1..=2)));
    }
    system
}

/// Feasibility by vertex enumeration. A nonempty polyhedron inside the
/// nonnegative orthant always has a vertex, which is the unique solution of
/// some `num_vars` of its tight constraints (bounds `x_i = 0` included).
pub fn brute_force_feasible(system: &LinearSystem) -> bool {
    let n = system.num_vars;
    let mut hyperplanes: Vec<(Vec<Rational>, Rational)> = system
        .constraints
        .iter()
        .map(|c| (c.coeffs.clone(), c.rhs.clone()))
        .collect();
    for i in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[i] = Rational::one();
        hyperplanes.push((e, Rational::zero()));
    }
    let m = hyperplanes.len();
    let mut chosen = Vec::with_capacity(n);
    subsets(m, n, 0, &mut chosen, &mut |idx| {
        let rows: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&k| {
                let mut r = hyperplanes[k].0.clone();
                r.push(hyperplanes[k].1.clone());
                r
            })
            .collect();
        match solve_square(rows) {
            Some(point) => system.is_satisfied_by(&point),
            None => false,
        }
    })
}

fn subsets(
    m: usize,
    size: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if chosen.len() == size {
        return visit(chosen);
    }
    for k in start..m {
        chosen.push(k);
        if subsets(m, size, k + 1, chosen, visit) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Gauss-Jordan on an augmented square system; `None` if singular.
pub fn solve_square(mut m: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let n = m.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        let pivot = m[col][col].clone();
        for v in &mut m[col] {
            *v /= &pivot;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (v, pv) in m[r].iter_mut().zip(pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Denominator of every weight divides `k`.
pub fn denominators_divide(s: &MixedStrategy, k: u64) -> bool {
    let k = BigInt::from(k);
    s.weights().iter().all(|w| (&k % w.denom()).is_zero() && !w.is_negative())
}
