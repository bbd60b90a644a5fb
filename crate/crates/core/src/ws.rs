//! Small-support strategy profiles that well support a payoff pair.
//!
//! Strategies here are `k`-uniform: every weight is a multiple of `1/k`, so
//! a strategy is fully described by a multiset of `k` pure strategies. Once
//! both multisets are fixed the well-support system has no free variables,
//! and deciding it reduces to evaluating its inequalities.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::game::{BimatrixGame, MixedStrategy, StrategyProfile};
use crate::kappa::kappa;
use crate::rational::{format_rational, Rational};

/// Default cap on the number of `(I, J)` pairs a search may cover.
pub const DEFAULT_PAIR_BUDGET: u64 = 100_000_000;

/// Counts of each pure strategy; `counts.iter().sum()` is the multiset size.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset {
    pub counts: Vec<u64>,
}

impl Multiset {
    pub fn new(counts: Vec<u64>) -> Self {
        Self { counts }
    }

    /// `k` copies of pure strategy `index`.
    pub fn repeated(n: usize, index: usize, k: u64) -> Self {
        let mut counts = vec![0; n];
        counts[index] = k;
        Self { counts }
    }

    pub fn size(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.counts.len()).filter(|&i| self.counts[i] > 0).collect()
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The k-uniform strategy `x_i = counts_i / k`.
pub fn strategy_from_multiset(ms: &Multiset) -> Result<MixedStrategy> {
    let k = ms.size();
    if k == 0 {
        return Err(Error::EmptyMultiset);
    }
    let k = BigInt::from(k);
    MixedStrategy::new(
        ms.counts
            .iter()
            .map(|&c| Rational::new(BigInt::from(c), k.clone()))
            .collect(),
    )
}

/// Thresholds `(v, u)`, slack `delta`, and the derived multiset size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WsParams {
    pub v: Rational,
    pub u: Rational,
    pub delta: Rational,
    pub kappa: u64,
}

impl WsParams {
    pub fn new(v: Rational, u: Rational, delta: Rational) -> Result<Self> {
        let kappa = kappa(&delta)?;
        Ok(Self { v, u, delta, kappa })
    }

    pub fn row_threshold(&self) -> Rational {
        &self.v - &self.delta
    }

    pub fn col_threshold(&self) -> Rational {
        &self.u - &self.delta
    }
}

/// Decides `WS(v, u, I, J, delta)`: with `x` and `y` fixed by the
/// multisets, every `i in I` must earn at least `v - delta` against `y`
/// and every `j in J` at least `u - delta` against `x`.
pub fn check_ws(
    game: &BimatrixGame,
    params: &WsParams,
    row_ms: &Multiset,
    col_ms: &Multiset,
) -> Result<Option<StrategyProfile>> {
    for ms in [row_ms, col_ms] {
        if ms.counts.len() != game.n() {
            return Err(Error::DimensionMismatch {
                expected: game.n(),
                got: ms.counts.len(),
            });
        }
        if ms.size() != params.kappa {
            return Err(Error::MultisetSize {
                expected: params.kappa,
                got: ms.size(),
            });
        }
    }
    let profile = StrategyProfile::new(
        strategy_from_multiset(row_ms)?,
        strategy_from_multiset(col_ms)?,
    );
    let ok = game.well_supports(&profile, &params.row_threshold(), &params.col_threshold())?;
    Ok(ok.then_some(profile))
}

/// `C(n + k - 1, k)`, the number of size-`k` multisets over `n` elements.
pub fn multiset_count(n: usize, k: u64) -> BigUint {
    if n == 0 {
        return if k == 0 { BigUint::one() } else { BigUint::zero() };
    }
    let mut acc = BigUint::one();
    let mut num = BigUint::from(n as u64 - 1);
    for i in 1..=k {
        num += 1u32;
        acc = acc * &num / BigUint::from(i);
    }
    acc
}

fn count_u128(n: usize, k: u64) -> u128 {
    multiset_count(n, k).to_u128().unwrap_or(u128::MAX)
}

/// The multiset at position `index` in lexicographic order of count vectors.
pub fn unrank_multiset(n: usize, k: u64, mut index: u128) -> Option<Multiset> {
    if n == 0 || index >= count_u128(n, k) {
        return None;
    }
    let mut counts = vec![0u64; n];
    let mut remaining = k;
    for (p, slot) in counts.iter_mut().enumerate().take(n - 1) {
        let rest = n - p - 1;
        let mut c = 0;
        loop {
            let block = count_u128(rest, remaining - c);
            if index < block {
                break;
            }
            index -= block;
            c += 1;
        }
        *slot = c;
        remaining -= c;
    }
    counts[n - 1] = remaining;
    Some(Multiset { counts })
}

/// Advances `counts` to its lexicographic successor; `false` at the end.
fn next_counts(counts: &mut [u64]) -> bool {
    let n = counts.len();
    if n < 2 {
        return false;
    }
    let mut tail = counts[n - 1];
    for i in (0..n - 1).rev() {
        if tail >= 1 {
            counts[i] += 1;
            for c in &mut counts[i + 1..n - 1] {
                *c = 0;
            }
            counts[n - 1] = tail - 1;
            return true;
        }
        tail += counts[i];
    }
    false
}

/// Lexicographic stream of all size-`k` multisets over `n` elements.
#[derive(Clone, Debug)]
pub struct MultisetIter {
    next: Option<Vec<u64>>,
}

impl Iterator for MultisetIter {
    type Item = Multiset;

    fn next(&mut self) -> Option<Multiset> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_counts(&mut succ) {
            self.next = Some(succ);
        }
        Some(Multiset { counts: current })
    }
}

pub fn enumerate_multisets(n: usize, k: u64) -> MultisetIter {
    enumerate_multisets_from(n, k, 0)
}

/// Resumes the stream at position `start`.
pub fn enumerate_multisets_from(n: usize, k: u64, start: u128) -> MultisetIter {
    MultisetIter {
        next: unrank_multiset(n, k, start).map(|m| m.counts),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub jobs: usize,
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            jobs: 1,
            budget: DEFAULT_PAIR_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchStats {
    pub kappa: u64,
    /// Number of multisets of size `kappa`.
    pub multisets: u64,
    pub total_pairs: u64,
    /// Lexicographic position of the hit plus one, or `total_pairs`.
    pub pairs_examined: u64,
    pub exhausted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WsHit {
    pub profile: StrategyProfile,
    pub row_multiset: Multiset,
    pub col_multiset: Multiset,
    pub pair_index: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WsSearch {
    pub hit: Option<WsHit>,
    pub stats: SearchStats,
}

/// Exhaustive search over ordered pairs `(I, J)` of size-`kappa` multisets,
/// `I` outer and `J` inner, both in lexicographic order. Returns the first
/// pair that passes [`check_ws`].
///
/// Workers scan contiguous blocks of the pair range; the hit with the
/// smallest global index wins, so the result does not depend on `jobs`.
pub fn search_ws(
    game: &BimatrixGame,
    params: &WsParams,
    options: &SearchOptions,
) -> Result<WsSearch> {
    let n = game.n();
    let k = params.kappa;
    let count = multiset_count(n, k);
    let space = &count * &count;
    if space > BigUint::from(options.budget) {
        return Err(Error::BudgetExceeded {
            space: space.to_string(),
            budget: options.budget,
        });
    }
    let multisets = count.to_u64().expect("bounded by budget");
    let total = multisets * multisets;
    let kernel = Kernel::try_integer(game, params).ok_or_else(|| {
        Error::OutOfRange("payoff denominators too large for the integer search kernel".into())
    })?;

    let jobs = options.jobs.max(1) as u64;
    let block = total.div_ceil(jobs).max(1);
    let best = AtomicU64::new(u64::MAX);
    std::thread::scope(|scope| {
        for w in 0..jobs {
            let start = w * block;
            let end = (start + block).min(total);
            if start >= end {
                continue;
            }
            let (kernel, best) = (&kernel, &best);
            scope.spawn(move || {
                if let Some(t) = kernel.scan(n, k, multisets, start, end, best) {
                    best.fetch_min(t, Ordering::SeqCst);
                }
            });
        }
    });

    let best = best.into_inner();
    let mut stats = SearchStats {
        kappa: k,
        multisets,
        total_pairs: total,
        pairs_examined: total,
        exhausted: true,
    };
    if best == u64::MAX {
        return Ok(WsSearch { hit: None, stats });
    }
    let row_multiset = unrank_multiset(n, k, (best / multisets) as u128).expect("in range");
    let col_multiset = unrank_multiset(n, k, (best % multisets) as u128).expect("in range");
    let profile = check_ws(game, params, &row_multiset, &col_multiset)?.ok_or_else(|| {
        Error::GuaranteeViolated(format!(
            "search kernel accepted I = {row_multiset}, J = {col_multiset} but WS check rejects it"
        ))
    })?;
    stats.pairs_examined = best + 1;
    stats.exhausted = false;
    Ok(WsSearch {
        hit: Some(WsHit {
            profile,
            row_multiset,
            col_multiset,
            pair_index: best,
        }),
        stats,
    })
}

/// Integer form of the WS inequalities. With `D` a common denominator of
/// the payoffs and thresholds, `R_i. y >= v - delta` becomes
/// `sum_j (D R_ij) l_j >= D (v - delta) kappa`, and likewise for columns.
struct Kernel {
    row: Vec<Vec<i128>>,
    col: Vec<Vec<i128>>,
    row_threshold: i128,
    col_threshold: i128,
}

impl Kernel {
    fn try_integer(game: &BimatrixGame, params: &WsParams) -> Option<Self> {
        let row_t = params.row_threshold();
        let col_t = params.col_threshold();
        let entries = game.row_matrix().iter().chain(game.col_matrix()).flatten();
        let denom = entries
            .chain([&row_t, &col_t])
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let scale = Rational::from_integer(denom);
        let kappa = BigInt::from(params.kappa);
        let to_i128 = |v: &Rational| (v * &scale).to_integer().to_i128();
        let convert = |m: &Vec<Vec<Rational>>| -> Option<Vec<Vec<i128>>> {
            m.iter()
                .map(|r| r.iter().map(to_i128).collect::<Option<Vec<_>>>())
                .collect()
        };
        let row = convert(game.row_matrix())?;
        let col = convert(game.col_matrix())?;
        // Every accumulated sum is at most max|entry| * kappa.
        let max_abs = row.iter().chain(&col).flatten().map(|v| v.unsigned_abs()).max()?;
        BigInt::from(max_abs)
            .checked_mul(&kappa)
            .and_then(|b| b.to_i128())?;
        let row_threshold = ((&row_t * &scale).to_integer() * &kappa).to_i128()?;
        let col_threshold = ((&col_t * &scale).to_integer() * &kappa).to_i128()?;
        Some(Self {
            row,
            col,
            row_threshold,
            col_threshold,
        })
    }

    /// Scans pair indices `[start, end)`; stops early once a lower index is
    /// known to succeed elsewhere.
    fn scan(
        &self,
        n: usize,
        k: u64,
        multisets: u64,
        start: u64,
        end: u64,
        best: &AtomicU64,
    ) -> Option<u64> {
        let mut t = start;
        let mut row_ms = unrank_multiset(n, k, (start / multisets) as u128)?.counts;
        let mut col_ms = unrank_multiset(n, k, (start % multisets) as u128)?.counts;
        let mut good_cols = vec![false; n];
        let mut row_support: Vec<usize> = Vec::with_capacity(n);
        let mut fresh_row = true;
        while t < end {
            if t & 0x3ff == 0 && best.load(Ordering::Relaxed) < t {
                return None;
            }
            if fresh_row {
                row_support.clear();
                row_support.extend((0..n).filter(|&i| row_ms[i] > 0));
                for (j, good) in good_cols.iter_mut().enumerate() {
                    let value: i128 = row_support
                        .iter()
                        .map(|&i| self.col[i][j] * row_ms[i] as i128)
                        .sum();
                    *good = value >= self.col_threshold;
                }
                fresh_row = false;
            }
            if self.accepts(&row_support, &good_cols, &col_ms) {
                return Some(t);
            }
            t += 1;
            if !next_counts(&mut col_ms) {
                col_ms.iter_mut().for_each(|c| *c = 0);
                col_ms[n - 1] = k;
                next_counts(&mut row_ms);
                fresh_row = true;
            }
        }
        None
    }

    fn accepts(&self, row_support: &[usize], good_cols: &[bool], col_ms: &[u64]) -> bool {
        if col_ms.iter().zip(good_cols).any(|(&l, &good)| l > 0 && !good) {
            return false;
        }
        row_support.iter().all(|&i| {
            let value: i128 = self.row[i]
                .iter()
                .zip(col_ms)
                .filter(|(_, &l)| l > 0)
                .map(|(r, &l)| r * l as i128)
                .sum();
            value >= self.row_threshold
        })
    }
}

impl fmt::Display for WsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "v={} u={} delta={} kappa={}",
            format_rational(&self.v),
            format_rational(&self.u),
            format_rational(&self.delta),
            self.kappa
        )
    }
}
