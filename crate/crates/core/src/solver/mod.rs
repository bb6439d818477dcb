//! Exact solving of the cops-and-robber games: winners for a fixed budget,
//! cop numbers, monotonicity gaps and replayable strategy certificates.

mod certificate;
mod invisible;
mod visible;

pub use certificate::{
    fingerprint, verify_certificate, Certificate, CertificateError, PositionalEntry, Strategy,
    Verification,
};
pub use invisible::solve_invisible;
pub use visible::solve_visible;

use thiserror::Error;

use crate::arena::{ArenaError, CopBudget, GameVariant};
use crate::digraph::Digraph;

/// Default cap on arena transitions examined by a single solve call.
pub const DEFAULT_STATE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("state budget of {limit} transitions exceeded")]
    BudgetExceeded { limit: u64 },
    #[error(transparent)]
    Arena(#[from] ArenaError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    /// Restrict the cops to robber-monotone strategies.
    pub monotone: bool,
    /// Maximum number of arena transitions before giving up.
    pub state_budget: u64,
}

impl SolveOptions {
    pub fn plain() -> Self {
        SolveOptions {
            monotone: false,
            state_budget: DEFAULT_STATE_BUDGET,
        }
    }

    pub fn monotone() -> Self {
        SolveOptions {
            monotone: true,
            state_budget: DEFAULT_STATE_BUDGET,
        }
    }

    pub fn with_monotone(self, monotone: bool) -> Self {
        SolveOptions { monotone, ..self }
    }

    pub fn with_budget(self, state_budget: u64) -> Self {
        SolveOptions {
            state_budget,
            ..self
        }
    }
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self::plain()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Winner {
    Cops,
    Robber,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub winner: Winner,
    /// Present exactly when the cops win.
    pub certificate: Option<Certificate>,
    pub states_explored: u64,
}

impl Outcome {
    pub fn cops_win(&self) -> bool {
        self.winner == Winner::Cops
    }
}

pub(crate) struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub(crate) fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub(crate) fn spend(&mut self, amount: u64) -> Result<(), SolveError> {
        self.used += amount;
        if self.used > self.limit {
            return Err(SolveError::BudgetExceeded { limit: self.limit });
        }
        Ok(())
    }
}

/// Decides the game with `k` cops in any supported variant.
pub fn solve(
    d: &Digraph,
    k: usize,
    variant: GameVariant,
    opts: SolveOptions,
) -> Result<Outcome, SolveError> {
    let k = CopBudget::new(k, d)?;
    if variant.is_visible() {
        solve_visible(d, k, variant.confinement(), opts)
    } else {
        solve_invisible(d, k, variant.agility(), opts)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CopNumber {
    pub value: usize,
    pub certificate: Certificate,
    /// States explored over all budgets tried.
    pub states_explored: u64,
}

/// Smallest `k` with a cop win, searched upward from `from`.
fn cop_number_from(
    d: &Digraph,
    variant: GameVariant,
    opts: SolveOptions,
    from: usize,
) -> Result<(CopNumber, Option<Outcome>), SolveError> {
    let mut explored = 0;
    let mut first_failure = None;
    for k in from..=d.vertex_count() {
        let outcome = solve(d, k, variant, opts)?;
        explored += outcome.states_explored;
        match outcome.certificate {
            Some(certificate) => {
                return Ok((
                    CopNumber {
                        value: k,
                        certificate,
                        states_explored: explored,
                    },
                    first_failure,
                ))
            }
            None => {
                if k == from {
                    first_failure = Some(outcome);
                }
            }
        }
    }
    unreachable!("cops occupying every vertex always win")
}

/// The least number of cops with a winning (optionally monotone) strategy.
pub fn cop_number(
    d: &Digraph,
    variant: GameVariant,
    opts: SolveOptions,
) -> Result<CopNumber, SolveError> {
    cop_number_from(d, variant, opts, 0).map(|(c, _)| c)
}

/// The monotone solver's failure at the plain cop number, kept as evidence
/// that a positive gap is real.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneFailure {
    pub k: usize,
    pub states_explored: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GapSummary {
    pub cop_number: usize,
    pub monotone_cop_number: usize,
    pub gap: usize,
    /// `monotone / plain`; 1.0 when both are zero (the empty digraph).
    pub ratio: f64,
    pub certificate: Certificate,
    pub monotone_certificate: Certificate,
    /// Set when `gap > 0`.
    pub attestation: Option<MonotoneFailure>,
}

/// Plain and monotone cop numbers with their difference and ratio.
pub fn gap(
    d: &Digraph,
    variant: GameVariant,
    opts: SolveOptions,
) -> Result<GapSummary, SolveError> {
    let plain = cop_number(d, variant, opts.with_monotone(false))?;
    // A monotone win is a win, so nothing below the plain value can succeed.
    let (mono, failure) = cop_number_from(d, variant, opts.with_monotone(true), plain.value)?;
    let gap = mono.value - plain.value;
    let ratio = if plain.value == 0 {
        1.0
    } else {
        mono.value as f64 / plain.value as f64
    };
    Ok(GapSummary {
        cop_number: plain.value,
        monotone_cop_number: mono.value,
        gap,
        ratio,
        certificate: plain.certificate,
        monotone_certificate: mono.certificate,
        attestation: failure.map(|o| MonotoneFailure {
            k: plain.value,
            states_explored: o.states_explored,
        }),
    })
}
