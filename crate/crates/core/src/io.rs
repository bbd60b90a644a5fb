//! Text formats for games and profiles, plus seeded game generators.
//!
//! Game file:
//!
//! ```text
//! # comment lines start with '#'
//! symmetric 2        # or: bimatrix 2
//! 1 0
//! 0 1
//! ```
//!
//! `symmetric n` is followed by the `n` rows of `R` (and `C = R^T`);
//! `bimatrix n` by `n` rows of `R` then `n` rows of `C`. Entries are `p/q`
//! or finite decimals. A profile file holds two such rows: the row
//! player's strategy, then the column player's.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, Matrix, MixedStrategy, StrategyProfile};
use crate::rational::{format_rational, parse_rational, Rational};

const MAX_LITERAL_LEN: usize = 4096;

struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

/// Non-blank, non-comment lines with 1-based line and column positions.
/// A `#` also ends a line early.
fn content_lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(idx, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (pos, ch) in body.char_indices().chain([(body.len(), ' ')]) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(pos),
                    (true, Some(s)) => {
                        tokens.push((s + 1, &body[s..pos]));
                        start = None;
                    }
                    _ => {}
                }
            }
            (!tokens.is_empty()).then_some(Line {
                number: idx + 1,
                tokens,
            })
        })
        .collect()
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_row(line: &Line<'_>, n: usize) -> Result<Vec<Rational>> {
    if line.tokens.len() != n {
        let column = line.tokens.get(n).map_or(1, |t| t.0);
        return Err(parse_error(
            line.number,
            column,
            format!("expected {n} entries, found {}", line.tokens.len()),
        ));
    }
    line.tokens
        .iter()
        .map(|&(column, tok)| {
            if tok.len() > MAX_LITERAL_LEN {
                return Err(parse_error(line.number, column, "numeric literal too long"));
            }
            parse_rational(tok).map_err(|m| parse_error(line.number, column, m))
        })
        .collect()
}

fn parse_rows<'a>(
    lines: &mut impl Iterator<Item = &'a Line<'a>>,
    n: usize,
    what: &str,
    last_line: usize,
) -> Result<Matrix> {
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let line = lines.next().ok_or_else(|| {
            parse_error(
                last_line + 1,
                1,
                format!("expected {n} rows for {what}, found {r}"),
            )
        })?;
        rows.push(parse_row(line, n)?);
    }
    Ok(rows)
}

pub fn parse_game(text: &str) -> Result<BimatrixGame> {
    let lines = content_lines(text);
    let last_line = text.lines().count();
    let mut iter = lines.iter();
    let header = iter
        .next()
        .ok_or_else(|| parse_error(1, 1, "missing header 'symmetric n' or 'bimatrix n'"))?;
    let (kind_col, kind) = header.tokens[0];
    let symmetric = match kind {
        "symmetric" => true,
        "bimatrix" => false,
        other => {
            return Err(parse_error(
                header.number,
                kind_col,
                format!("unknown game kind '{other}'"),
            ))
        }
    };
    let &(n_col, n_tok) = header
        .tokens
        .get(1)
        .ok_or_else(|| parse_error(header.number, kind_col, "missing dimension"))?;
    let n: usize = n_tok
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| parse_error(header.number, n_col, format!("invalid dimension '{n_tok}'")))?;
    if let Some(&(col, _)) = header.tokens.get(2) {
        return Err(parse_error(header.number, col, "unexpected token after dimension"));
    }

    let row = parse_rows(&mut iter, n, "R", last_line)?;
    let game = if symmetric {
        BimatrixGame::symmetric(row)?
    } else {
        let col = parse_rows(&mut iter, n, "C", last_line)?;
        BimatrixGame::new(row, col)?
    };
    if let Some(extra) = iter.next() {
        return Err(parse_error(
            extra.number,
            extra.tokens[0].0,
            "unexpected content after the payoff rows",
        ));
    }
    Ok(game)
}

fn render_matrix(out: &mut String, m: &Matrix) {
    for row in m {
        let entries: Vec<String> = row.iter().map(format_rational).collect();
        out.push_str(&entries.join(" "));
        out.push('\n');
    }
}

/// Canonical text; symmetric games use the compact `symmetric` header.
pub fn render_game(game: &BimatrixGame) -> String {
    let mut out = String::new();
    if game.is_symmetric() {
        out.push_str(&format!("symmetric {}\n", game.n()));
        render_matrix(&mut out, game.row_matrix());
    } else {
        out.push_str(&format!("bimatrix {}\n", game.n()));
        render_matrix(&mut out, game.row_matrix());
        render_matrix(&mut out, game.col_matrix());
    }
    out
}

pub fn parse_profile(text: &str) -> Result<StrategyProfile> {
    let lines = content_lines(text);
    if lines.len() != 2 {
        let line = lines.get(2).map_or(text.lines().count() + 1, |l| l.number);
        return Err(parse_error(
            line,
            1,
            format!("expected 2 strategy lines, found {}", lines.len()),
        ));
    }
    let n = lines[0].tokens.len();
    let mut strategies = Vec::with_capacity(2);
    for line in &lines {
        let weights = parse_row(line, n)?;
        let s = MixedStrategy::new(weights)
            .map_err(|e| parse_error(line.number, 1, e.to_string()))?;
        strategies.push(s);
    }
    let col = strategies.pop().expect("two lines");
    let row = strategies.pop().expect("two lines");
    Ok(StrategyProfile::new(row, col))
}

pub fn render_profile(profile: &StrategyProfile) -> String {
    format!("{}\n{}\n", profile.row, profile.col)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GameKind {
    /// Entries `k/1000` with `k` uniform in `0..=1000`.
    Uniform,
    /// Entries uniform in `{0, 1}`.
    WinLose,
}

impl FromStr for GameKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "uniform" => Ok(GameKind::Uniform),
            "win-lose" => Ok(GameKind::WinLose),
            other => Err(format!("unknown game kind '{other}' (expected uniform or win-lose)")),
        }
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GameKind::Uniform => "uniform",
            GameKind::WinLose => "win-lose",
        })
    }
}

/// Seeded random game (ChaCha20, `seed_from_u64`). With `symmetric`, `C` is
/// `R^T`; otherwise `C` is drawn after `R` from the same stream.
pub fn generate_game(kind: GameKind, n: usize, seed: u64, symmetric: bool) -> Result<BimatrixGame> {
    if n == 0 {
        return Err(Error::NotSquare);
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha20Rng| -> Rational {
        match kind {
            GameKind::Uniform => Rational::new(BigInt::from(rng.gen_range(0..=1000u32)), BigInt::from(1000)),
            GameKind::WinLose => Rational::from_integer(BigInt::from(rng.gen_range(0..=1u32))),
        }
    };
    let matrix = |rng: &mut ChaCha20Rng| -> Matrix {
        (0..n).map(|_| (0..n).map(|_| draw(rng)).collect()).collect()
    };
    let row = matrix(&mut rng);
    if symmetric {
        BimatrixGame::symmetric(row)
    } else {
        let col = matrix(&mut rng);
        BimatrixGame::new(row, col)
    }
}
