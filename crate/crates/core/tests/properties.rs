mod common;

use num_traits::{One, Zero};
use proptest::prelude::*;

use common::*;
use wsne_core::oracle::{support_enumeration_ne, symmetric_ne, DEFAULT_MAX_N};
use wsne_core::rational::{half, int, ratio};
use wsne_core::sampling::{per_side_bound, union_bound_value};
use wsne_core::ws::{strategy_from_multiset, SearchOptions};
use wsne_core::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn prevents_exceeding_bounds_wsne(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let g = random_game(&mut r, n, 10, false);
        let p = random_profile(&mut r, n);
        let (v, u) = (random_threshold(&mut r), random_threshold(&mut r));
        if g.prevents_exceeding(&p, &v, &u).unwrap() {
            let eps = g.wsne_epsilon(&p).unwrap().epsilon_wsne;
            prop_assert!(eps <= v.clone().max(u.clone()));
        }
    }

    #[test]
    fn well_supports_bounds_wsne(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let g = random_game(&mut r, n, 10, false);
        let p = random_profile(&mut r, n);
        let (v, u) = (random_threshold(&mut r), random_threshold(&mut r));
        if g.well_supports(&p, &v, &u).unwrap() {
            let eps = g.wsne_epsilon(&p).unwrap().epsilon_wsne;
            prop_assert!(eps <= int(1) - v.min(u));
        }
    }

    #[test]
    fn regret_ordering(seed in any::<u64>(), n in 1usize..6) {
        let mut r = rng(seed);
        let g = random_game(&mut r, n, 12, false);
        let rep = g.wsne_epsilon(&random_profile(&mut r, n)).unwrap();
        prop_assert!(Rational::zero() <= rep.epsilon_ne);
        prop_assert!(rep.epsilon_ne <= rep.epsilon_wsne);
        prop_assert!(rep.epsilon_wsne <= Rational::one());
        prop_assert_eq!(rep.epsilon_wsne.clone(), rep.row_wsne_regret.clone().max(rep.col_wsne_regret.clone()));
    }

    #[test]
    fn symmetric_swap(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let g = random_game(&mut r, n, 8, true);
        let p = random_profile(&mut r, n);
        let a = g.wsne_epsilon(&p).unwrap();
        let b = g.wsne_epsilon(&p.swapped()).unwrap();
        prop_assert_eq!(a.row_wsne_regret, b.col_wsne_regret);
        prop_assert_eq!(a.col_wsne_regret, b.row_wsne_regret);
        prop_assert_eq!(a.epsilon_wsne, b.epsilon_wsne);
        prop_assert_eq!(a.row_payoff, b.col_payoff);
    }

    #[test]
    fn normalization_invariance(seed in any::<u64>(), n in 1usize..5, shift in -5i64..5, scale in 1i64..7) {
        let mut r = rng(seed);
        let base = random_game(&mut r, n, 6, false);
        let map = |m: &Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
            m.iter().map(|row| row.iter().map(|v| v * int(scale) + int(shift)).collect()).collect()
        };
        let g = BimatrixGame::new(map(base.row_matrix()), map(base.col_matrix())).unwrap();
        let norm = g.normalize();
        prop_assert!(norm.game.is_normalized());
        let p = random_profile(&mut r, n);
        let argmax = |game: &BimatrixGame| {
            let (rv, _) = game.pure_response_values(&p).unwrap();
            let best = rv.iter().max().unwrap().clone();
            (0..n).filter(|&i| rv[i] == best).collect::<Vec<_>>()
        };
        prop_assert_eq!(argmax(&g), argmax(&norm.game));
        let eps = g.wsne_epsilon(&p).unwrap().epsilon_wsne;
        let eps_norm = norm.game.wsne_epsilon(&p).unwrap().epsilon_wsne;
        prop_assert_eq!(eps_norm.clone(), &eps / &norm.scale);
        prop_assert_eq!(norm.to_original_units(&eps_norm), eps);
    }

    #[test]
    fn linear_solver_sound_and_complete(seed in any::<u64>()) {
        let sys = random_system(&mut rng(seed));
        let got = solve_feasible(&sys).unwrap();
        if let Some(point) = &got {
            prop_assert!(sys.is_satisfied_by(point));
        }
        prop_assert_eq!(got.is_some(), brute_force_feasible(&sys));
    }

    #[test]
    fn pe_solutions_verify(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let g = random_game(&mut r, n, 10, false);
        let params = PeParams::new(random_threshold(&mut r), random_threshold(&mut r)).unwrap();
        let sys = build_pe(&g, &params);
        prop_assert_eq!(sys.num_vars, 2 * n);
        prop_assert_eq!(sys.constraints.len(), 2 + 2 * n);
        if let Some(p) = solve_pe(&g, &params).unwrap() {
            prop_assert!(g.prevents_exceeding(&p, &params.v, &params.u).unwrap());
            let eps = g.wsne_epsilon(&p).unwrap().epsilon_wsne;
            prop_assert!(eps <= params.v.clone().max(params.u.clone()));
        }
    }

    #[test]
    fn symmetric_pe_consistent_with_two_sided(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let g = random_game(&mut r, n, 10, true);
        let u = random_threshold(&mut r);
        let one_sided = symmetric_pe(&g, &u).unwrap();
        let two_sided = solve_pe(&g, &PeParams::new(u.clone(), u.clone()).unwrap()).unwrap();
        prop_assert_eq!(one_sided.is_some(), two_sided.is_some());
        if let Some(p) = two_sided {
            // The column strategy alone solves the one-sided system.
            let (rv, _) = g.pure_response_values(&p).unwrap();
            prop_assert!(rv.iter().all(|v| *v <= u));
        }
    }

    #[test]
    fn check_ws_implies_well_support(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let g = random_game(&mut r, n, 10, false);
        let params = WsParams::new(random_threshold(&mut r), random_threshold(&mut r), ratio(1, 2)).unwrap();
        let a = random_multiset(&mut r, n, params.kappa);
        let b = random_multiset(&mut r, n, params.kappa);
        if let Some(p) = check_ws(&g, &params, &a, &b).unwrap() {
            prop_assert!(g.well_supports(&p, &params.row_threshold(), &params.col_threshold()).unwrap());
            prop_assert!(denominators_divide(&p.row, params.kappa));
            prop_assert!(denominators_divide(&p.col, params.kappa));
            prop_assert_eq!(p.row.support(), a.support());
            let eps = g.wsne_epsilon(&p).unwrap().epsilon_wsne;
            prop_assert!(eps <= int(1) - params.row_threshold().min(params.col_threshold()));
        }
    }

    #[test]
    fn parse_render_roundtrip(seed in any::<u64>(), n in 1usize..6, symmetric in any::<bool>()) {
        let g = random_game(&mut rng(seed), n, 7, symmetric);
        let text = wsne_core::io::render_game(&g);
        prop_assert_eq!(wsne_core::io::parse_game(&text).unwrap(), g);
    }
}

fn random_multiset<R: rand::Rng>(r: &mut R, n: usize, k: u64) -> Multiset {
    let mut counts = vec![0u64; n];
    for _ in 0..k {
        counts[r.gen_range(0..n)] += 1;
    }
    Multiset::new(counts)
}

#[test]
fn symmetric_ne_identity() {
    // (x, x) with R_i. x <= x^T R x for all i has zero WSNE regret.
    for seed in 0..100 {
        let mut r = rng(seed);
        let n = 1 + (seed as usize % 3);
        let g = random_game(&mut r, n, 10, true);
        for rec in symmetric_ne(&g, DEFAULT_MAX_N).unwrap() {
            let x = &rec.profile.row;
            let (rv, cv) = g.pure_response_values(&rec.profile).unwrap();
            assert_eq!(rv, cv, "x^T R^T_.j must equal R_j. x");
            assert!(rv.iter().all(|v| *v <= rec.v));
            let rep = g.wsne_epsilon(&StrategyProfile::symmetric(x.clone())).unwrap();
            assert!(rep.epsilon_wsne.is_zero());
        }
    }
}

#[test]
fn oracle_records_are_exact_and_symmetric_games_have_one() {
    for seed in 0..150 {
        let mut r = rng(1000 + seed);
        let n = 1 + (seed as usize % 4);
        let g = random_game(&mut r, n, 10, seed % 2 == 0);
        let all = support_enumeration_ne(&g, DEFAULT_MAX_N).unwrap();
        assert!(!all.is_empty(), "seed {seed}");
        for rec in &all {
            let rep = g.wsne_epsilon(&rec.profile).unwrap();
            assert!(rep.epsilon_ne.is_zero());
            assert_eq!((rep.row_payoff, rep.col_payoff), (rec.v.clone(), rec.u.clone()));
        }
        if g.is_symmetric() {
            assert!(!symmetric_ne(&g, DEFAULT_MAX_N).unwrap().is_empty(), "seed {seed}");
        }
    }
}

#[test]
fn pe_complete_on_oracle_equilibria() {
    for seed in 0..80 {
        let mut r = rng(2000 + seed);
        let n = 1 + (seed as usize % 3);
        let g = random_game(&mut r, n, 10, seed % 3 == 0);
        for rec in support_enumeration_ne(&g, DEFAULT_MAX_N).unwrap() {
            let slack = ratio((seed % 3) as i64, 20);
            let v = (&rec.v + &slack).min(int(1));
            let u = (&rec.u + &slack).min(int(1));
            let p = PeParams::new(v, u).unwrap();
            assert!(solve_pe(&g, &p).unwrap().is_some(), "seed {seed}");
        }
    }
}

#[test]
fn ws_search_finds_oracle_value_at_desk_scale() {
    for seed in 0..25 {
        let mut r = rng(3000 + seed);
        let n = 1 + (seed as usize % 3);
        let g = random_game(&mut r, n, 10, true);
        for rec in symmetric_ne(&g, DEFAULT_MAX_N).unwrap() {
            let params = WsParams::new(rec.v.clone(), rec.v.clone(), half()).unwrap();
            let found = search_ws(&g, &params, &SearchOptions::default()).unwrap();
            let hit = found.hit.expect("a solution exists");
            assert!(denominators_divide(&hit.profile.row, 6));
            assert_eq!(strategy_from_multiset(&hit.row_multiset).unwrap(), hit.profile.row);
        }
    }
}

#[test]
fn half_wsne_guarantee_and_path_choice() {
    let opts = SearchOptions::default();
    for seed in 0..60 {
        let mut r = rng(4000 + seed);
        let n = 1 + (seed as usize % 3);
        let g = random_game(&mut r, n, 10, true);
        let delta = half();
        let s = half_wsne(&g, &delta, &opts).unwrap();
        assert!(s.certificate.epsilon_wsne <= half() + &delta);
        if s.path == Path::Pe {
            assert!(s.certificate.epsilon_wsne <= half());
        }
        assert_eq!(s, half_wsne(&g, &delta, &opts).unwrap());
        let low_value = symmetric_ne(&g, DEFAULT_MAX_N)
            .unwrap()
            .iter()
            .any(|rec| rec.v <= half());
        if low_value {
            assert_eq!(s.path, Path::Pe, "seed {seed}");
        }
    }
}

#[test]
fn sampling_bounds() {
    for i in 1..100 {
        let delta = i as f64 / 100.0;
        assert!(union_bound_value(delta) < 0.5, "delta = {delta}");
    }
    // Past delta ~ 0.85 the support size rounds up to 1, below the peak of
    // k * exp(-2 delta^2 k), and the per-side bound is no longer dominated.
    for i in 1..=84 {
        let d = ratio(i, 100);
        let k = kappa(&d).unwrap();
        let ub = union_bound_value(i as f64 / 100.0);
        assert!(per_side_bound(&d, k) <= ub * (1.0 + 1e-12), "delta = {i}/100");
    }
}
