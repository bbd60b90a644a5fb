//! Exact computation and verification of well-supported Nash equilibria in
//! symmetric bimatrix games.
//!
//! All arithmetic on payoffs and strategies is exact ([`rational::Rational`]).
//! The entry point is [`algorithm::half_wsne`], which returns a profile
//! certified to be a `(1/2 + delta)`-well-supported equilibrium.

pub mod algorithm;
pub mod error;
pub mod game;
pub mod io;
pub mod kappa;
pub mod lp;
pub mod oracle;
pub mod pe;
pub mod rational;
pub mod sampling;
pub mod ws;

pub use algorithm::{half_wsne, Path, Solution};
pub use error::{Error, Result};
pub use game::{BimatrixGame, MixedStrategy, Normalized, RegretReport, StrategyProfile};
pub use kappa::kappa;
pub use lp::{solve_feasible, LinearSystem, Relation};
pub use oracle::{support_enumeration_ne, symmetric_ne, NeRecord};
pub use pe::{build_pe, solve_pe, symmetric_pe, PeParams};
pub use rational::Rational;
pub use ws::{check_ws, enumerate_multisets, search_ws, Multiset, SearchOptions, WsParams};
