use std::fmt::Write as _;
use std::path::Path;

use num_traits::{One, Zero};

use wsne_core::algorithm::half_wsne;
use wsne_core::io::{generate_game, parse_game, parse_profile, render_game};
use wsne_core::oracle::{support_enumeration_ne, symmetric_ne};
use wsne_core::rational::{format_decimal, format_rational, Rational};
use wsne_core::sampling::{demonstrate_existence, SampleConfig, RNG_NAME};
use wsne_core::ws::{search_ws, SearchOptions, WsParams};
use wsne_core::{
    kappa, solve_pe, symmetric_pe, BimatrixGame, Error, MixedStrategy, Normalized, PeParams,
    RegretReport, StrategyProfile,
};

use crate::Command;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_GUARANTEE: u8 = 4;

/// Result lines go to `out`; diagnostics go to stderr.
pub fn run(command: Command, decimal: bool, out: &mut String) -> u8 {
    let mut w = Writer { out, decimal };
    match execute(command, &mut w) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                Error::GuaranteeViolated(_) => EXIT_GUARANTEE,
                _ => EXIT_USAGE,
            }
        }
    }
}

struct Writer<'a> {
    out: &'a mut String,
    decimal: bool,
}

impl Writer<'_> {
    fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.out, "{key}={value}");
    }

    fn number(&mut self, key: &str, value: &Rational) {
        if self.decimal {
            let approx = format_decimal(value, 6);
            let _ = writeln!(self.out, "{key}={} (~{approx})", format_rational(value));
        } else {
            self.line(key, format_rational(value));
        }
    }

    fn strategy(&mut self, key: &str, s: &MixedStrategy) {
        if self.decimal {
            let approx: Vec<String> = s.weights().iter().map(|w| format_decimal(w, 6)).collect();
            let _ = writeln!(self.out, "{key}={s} (~{})", approx.join(" "));
        } else {
            self.line(key, s);
        }
    }

    fn profile(&mut self, p: &StrategyProfile) {
        self.strategy("row", &p.row);
        self.strategy("col", &p.col);
    }

    fn report(&mut self, r: &RegretReport) {
        self.number("row_payoff", &r.row_payoff);
        self.number("col_payoff", &r.col_payoff);
        self.number("row_wsne_regret", &r.row_wsne_regret);
        self.number("col_wsne_regret", &r.col_wsne_regret);
        self.number("epsilon_wsne", &r.epsilon_wsne);
        self.number("epsilon_ne", &r.epsilon_ne);
    }

    fn normalization(&mut self, norm: &Normalized) {
        self.number("shift", &norm.shift);
        self.number("scale", &norm.scale);
    }

    fn real(&mut self, key: &str, value: f64) {
        self.line(key, format!("{value:.12e}"));
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        column: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn load_game(path: &Path) -> Result<BimatrixGame, Error> {
    parse_game(&read(path)?).map_err(|e| with_path(e, path))
}

/// Games already inside `[0, 1]` are used as given; anything else is
/// rescaled affinely onto `[0, 1]`.
fn prepare(game: BimatrixGame) -> Normalized {
    if game.is_normalized() {
        Normalized {
            game,
            shift: Rational::zero(),
            scale: Rational::one(),
        }
    } else {
        game.normalize()
    }
}

fn with_path(e: Error, path: &Path) -> Error {
    match e {
        Error::Parse {
            line,
            column,
            message,
        } => Error::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    }
}

fn execute(command: Command, w: &mut Writer<'_>) -> Result<u8, Error> {
    match command {
        Command::Kappa { delta } => {
            let _ = writeln!(w.out, "{}", kappa(&delta)?);
            Ok(EXIT_OK)
        }

        Command::Solve {
            game,
            delta,
            jobs,
            budget,
        } => {
            let norm = prepare(load_game(&game)?);
            let solution = half_wsne(&norm.game, &delta, &SearchOptions { jobs, budget })?;
            for warning in &solution.warnings {
                eprintln!("warning: {warning}");
            }
            w.line("path", solution.path);
            w.number("delta", &solution.delta);
            w.line("kappa", solution.kappa);
            w.normalization(&norm);
            w.profile(&solution.profile);
            if let Some((row_ms, col_ms)) = &solution.multisets {
                w.line("row_multiset", row_ms);
                w.line("col_multiset", col_ms);
            }
            w.report(&solution.certificate);
            w.number("guarantee", &solution.guarantee());
            w.number(
                "epsilon_wsne_original_units",
                &norm.to_original_units(&solution.certificate.epsilon_wsne),
            );
            w.line("pairs_examined", solution.pairs_examined);
            Ok(EXIT_OK)
        }

        Command::Verify {
            game,
            profile,
            epsilon,
        } => {
            let g = load_game(&game)?;
            let p = parse_profile(&read(&profile)?).map_err(|e| with_path(e, &profile))?;
            let report = g.wsne_epsilon(&p)?;
            w.report(&report);
            w.number("epsilon", &epsilon);
            let ok = report.is_wsne(&epsilon);
            w.line("wsne", ok);
            Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
        }

        Command::Pe {
            game,
            u,
            two_sided,
            v,
        } => {
            let norm = prepare(load_game(&game)?);
            let g = &norm.game;
            w.normalization(&norm);
            let profile = match v.filter(|_| two_sided) {
                Some(v) => solve_pe(g, &PeParams::new(v, u)?)?,
                None => {
                    PeParams::new(u.clone(), u.clone())?;
                    symmetric_pe(g, &u)?.map(StrategyProfile::symmetric)
                }
            };
            match profile {
                Some(p) => {
                    w.line("feasible", true);
                    w.profile(&p);
                    w.report(&g.wsne_epsilon(&p)?);
                    Ok(EXIT_OK)
                }
                None => {
                    w.line("feasible", false);
                    Ok(EXIT_NEGATIVE)
                }
            }
        }

        Command::WsSearch {
            game,
            v,
            u,
            delta,
            jobs,
            budget,
        } => {
            let norm = prepare(load_game(&game)?);
            let params = WsParams::new(v, u, delta)?;
            let search = search_ws(&norm.game, &params, &SearchOptions { jobs, budget })?;
            w.line("kappa", params.kappa);
            w.normalization(&norm);
            w.line("found", search.hit.is_some());
            let code = match &search.hit {
                Some(hit) => {
                    w.line("row_multiset", &hit.row_multiset);
                    w.line("col_multiset", &hit.col_multiset);
                    w.profile(&hit.profile);
                    w.report(&norm.game.wsne_epsilon(&hit.profile)?);
                    EXIT_OK
                }
                None => EXIT_NEGATIVE,
            };
            w.line("pairs_examined", search.stats.pairs_examined);
            w.line("total_pairs", search.stats.total_pairs);
            Ok(code)
        }

        Command::Sample {
            game,
            delta,
            trials,
            seed,
            max_n,
        } => {
            let norm = prepare(load_game(&game)?);
            let g = &norm.game;
            let records = if g.is_symmetric() {
                symmetric_ne(g, max_n)?
            } else {
                support_enumeration_ne(g, max_n)?
            };
            let ne = records
                .first()
                .ok_or_else(|| Error::GuaranteeViolated("oracle found no equilibrium".into()))?;
            let config = SampleConfig {
                delta,
                trials,
                seed,
            };
            let outcome = demonstrate_existence(g, &ne.profile, &config)?;
            w.line("rng", RNG_NAME);
            w.line("seed", seed);
            w.normalization(&norm);
            w.strategy("ne_row", &ne.profile.row);
            w.strategy("ne_col", &ne.profile.col);
            w.number("v_star", &ne.v);
            w.number("u_star", &ne.u);
            w.line("kappa", outcome.kappa);
            w.line("trials", outcome.trials);
            w.line("successes", outcome.successes);
            w.number("empirical_failure_rate", &outcome.empirical_failure_rate);
            w.real("per_side_bound", outcome.per_side_bound);
            w.real("union_bound", outcome.union_bound);
            w.real("two_sided_bound", 2.0 * outcome.union_bound);
            w.line("support_violations", outcome.support_violations);
            w.line("uniformity_violations", outcome.uniformity_violations);
            if let Some(p) = &outcome.first_success {
                w.strategy("first_success_row", &p.row);
                w.strategy("first_success_col", &p.col);
            }
            Ok(if outcome.successes > 0 {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }

        Command::Oracle { game, max_n } => {
            let g = load_game(&game)?;
            let records = support_enumeration_ne(&g, max_n)?;
            w.line("count", records.len());
            for (i, rec) in records.iter().enumerate() {
                w.strategy(&format!("ne[{i}].row"), &rec.profile.row);
                w.strategy(&format!("ne[{i}].col"), &rec.profile.col);
                w.number(&format!("ne[{i}].v"), &rec.v);
                w.number(&format!("ne[{i}].u"), &rec.u);
                w.line(&format!("ne[{i}].symmetric"), rec.symmetric);
            }
            Ok(EXIT_OK)
        }

        Command::Gen {
            kind,
            n,
            seed,
            symmetric,
        } => {
            let g = generate_game(kind, n, seed, symmetric)?;
            w.out.push_str(&render_game(&g));
            Ok(EXIT_OK)
        }
    }
}
