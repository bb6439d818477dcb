//! Serializable cop strategies and their independent replay.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::arena::{
    contaminate, is_monotone_transition, robber_options, robber_space, GameVariant,
};
use crate::digraph::{Digraph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("certificate was issued for graph {expected}, not {found}")]
    FingerprintMismatch { expected: String, found: String },
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

/// One entry of a positional strategy: with cops on `cops` and the robber on
/// `robber`, the cops move to `next`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionalEntry {
    pub cops: Vec<usize>,
    pub robber: usize,
    pub next: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "body", rename_all = "lowercase")]
pub enum Strategy {
    /// Visible games: a move for every position reachable under the strategy.
    Positional(Vec<PositionalEntry>),
    /// Invisible games: the cop placements `C₁, …, C_m` in order.
    Sequence(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub variant: GameVariant,
    pub k: usize,
    pub monotone: bool,
    pub graph_sha256_of_edge_list: String,
    pub version: String,
    #[serde(flatten)]
    pub strategy: Strategy,
}

/// Hex SHA-256 of the canonical edge-list serialization.
pub fn fingerprint(d: &Digraph) -> String {
    let digest = Sha256::digest(d.to_edge_list().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl Certificate {
    pub fn new(
        d: &Digraph,
        variant: GameVariant,
        k: usize,
        monotone: bool,
        strategy: Strategy,
    ) -> Self {
        Certificate {
            variant,
            k,
            monotone,
            graph_sha256_of_edge_list: fingerprint(d),
            version: concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION")).to_string(),
            strategy,
        }
    }

    /// Pretty JSON followed by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CertificateError> {
        serde_json::from_str(text).map_err(|e| CertificateError::Malformed(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    Valid,
    /// The strategy fails; the reason names the first violating transition.
    Invalid(String),
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verification::Valid)
    }
}

fn vertex_set(ids: &[usize], n: usize, what: &str) -> Result<VertexSet, CertificateError> {
    let mut s = VertexSet::EMPTY;
    for &v in ids {
        if v >= n {
            return Err(CertificateError::Malformed(format!(
                "{what}: vertex {v} out of range"
            )));
        }
        if s.contains(v) {
            return Err(CertificateError::Malformed(format!(
                "{what}: vertex {v} repeated"
            )));
        }
        s.insert(v);
    }
    Ok(s)
}

/// Replays `cert` on `d` without using any solver state.
pub fn verify_certificate(
    d: &Digraph,
    cert: &Certificate,
) -> Result<Verification, CertificateError> {
    let found = fingerprint(d);
    if found != cert.graph_sha256_of_edge_list {
        return Err(CertificateError::FingerprintMismatch {
            expected: cert.graph_sha256_of_edge_list.clone(),
            found,
        });
    }
    let n = d.vertex_count();
    if cert.k > n {
        return Err(CertificateError::Malformed(format!(
            "budget {} exceeds {n} vertices",
            cert.k
        )));
    }
    match (&cert.strategy, cert.variant.is_visible()) {
        (Strategy::Positional(entries), true) => verify_positional(d, cert, entries),
        (Strategy::Sequence(moves), false) => verify_sequence(d, cert, moves),
        (_, visible) => Err(CertificateError::Malformed(format!(
            "strategy kind does not fit the {} variant ({} expected)",
            cert.variant,
            if visible { "positional" } else { "sequence" }
        ))),
    }
}

fn verify_sequence(
    d: &Digraph,
    cert: &Certificate,
    moves: &[Vec<usize>],
) -> Result<Verification, CertificateError> {
    let n = d.vertex_count();
    let mut cops = VertexSet::EMPTY;
    let mut contaminated = d.vertices();
    for (step, ids) in moves.iter().enumerate() {
        let next = vertex_set(ids, n, &format!("move {}", step + 1))?;
        if next.len() > cert.k {
            return Ok(Verification::Invalid(format!(
                "move {} places {} cops, budget is {}",
                step + 1,
                next.len(),
                cert.k
            )));
        }
        let after = contaminate(d, cops, next, contaminated, cert.variant.agility());
        if cert.monotone && !is_monotone_transition(contaminated, after) {
            return Ok(Verification::Invalid(format!(
                "move {} ({} -> {}) recontaminates {}",
                step + 1,
                cops,
                next,
                after - contaminated
            )));
        }
        cops = next;
        contaminated = after;
    }
    if contaminated.is_empty() {
        Ok(Verification::Valid)
    } else {
        Ok(Verification::Invalid(format!(
            "after {} moves the vertices {} are still contaminated",
            moves.len(),
            contaminated
        )))
    }
}

fn verify_positional(
    d: &Digraph,
    cert: &Certificate,
    entries: &[PositionalEntry],
) -> Result<Verification, CertificateError> {
    let n = d.vertex_count();
    let mut table: HashMap<(VertexSet, usize), VertexSet> = HashMap::new();
    for e in entries {
        let cops = vertex_set(&e.cops, n, "entry cops")?;
        let next = vertex_set(&e.next, n, "entry next")?;
        if e.robber >= n || cops.contains(e.robber) {
            return Err(CertificateError::Malformed(format!(
                "entry with cops {cops} has invalid robber {}",
                e.robber
            )));
        }
        if table.insert((cops, e.robber), next).is_some() {
            return Err(CertificateError::Malformed(format!(
                "duplicate entry for cops {cops}, robber {}",
                e.robber
            )));
        }
    }

    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        Open,
        Done,
    }
    let mut marks: HashMap<(VertexSet, usize), Mark> = HashMap::new();
    let confinement = cert.variant.confinement();

    // Depth-first over every play consistent with the strategy. A position
    // met again while still open means the robber can cycle forever; with no
    // such cycle every play ends in capture within the number of positions.
    for start in 0..n {
        let root = (VertexSet::EMPTY, start);
        if marks.contains_key(&root) {
            continue;
        }
        let mut stack: Vec<((VertexSet, usize), Vec<usize>, VertexSet)> = Vec::new();
        let expand = |pos: (VertexSet, usize)| -> Result<(Vec<usize>, VertexSet), String> {
            let (cops, robber) = pos;
            let next = *table
                .get(&pos)
                .ok_or_else(|| format!("no move for cops {cops}, robber {robber}"))?;
            if next.len() > cert.k {
                return Err(format!(
                    "cops {cops}, robber {robber}: move to {next} exceeds budget {}",
                    cert.k
                ));
            }
            let landing = robber_options(d, cops, next, robber, confinement);
            if cert.monotone {
                let space = robber_space(d, cops, robber);
                if let Some(r2) = landing
                    .iter()
                    .find(|&r2| !is_monotone_transition(space, robber_space(d, next, r2)))
                {
                    return Err(format!(
                        "cops {cops} -> {next}: robber escaping {robber} -> {r2} enlarges the robber territory"
                    ));
                }
            }
            Ok((landing.to_vec(), next))
        };
        match expand(root) {
            Ok((succ, next)) => {
                marks.insert(root, Mark::Open);
                stack.push((root, succ, next));
            }
            Err(reason) => return Ok(Verification::Invalid(reason)),
        }
        while let Some((pos, succ, next)) = stack.last_mut() {
            let Some(r2) = succ.pop() else {
                marks.insert(*pos, Mark::Done);
                stack.pop();
                continue;
            };
            let child = (*next, r2);
            match marks.get(&child) {
                Some(Mark::Done) => continue,
                Some(Mark::Open) => {
                    return Ok(Verification::Invalid(format!(
                        "robber returns to cops {}, robber {} and evades forever",
                        child.0, child.1
                    )))
                }
                None => {}
            }
            match expand(child) {
                Ok((s, nx)) => {
                    marks.insert(child, Mark::Open);
                    stack.push((child, s, nx));
                }
                Err(reason) => return Ok(Verification::Invalid(reason)),
            }
        }
    }
    Ok(Verification::Valid)
}
