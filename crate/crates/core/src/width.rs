//! Width measures read off monotone cop numbers, plus an exact tree-width
//! oracle for undirected graphs that shares no code with the game engine.

use serde::Serialize;
use thiserror::Error;

use crate::arena::GameVariant;
use crate::digraph::{Digraph, UndirectedGraph, VertexSet};
use crate::solver::{cop_number, Certificate, SolveError, SolveOptions};

/// Largest graph accepted by [`treewidth_exact`].
pub const TREEWIDTH_MAX_VERTICES: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WidthError {
    #[error("tree-width oracle limited to {TREEWIDTH_MAX_VERTICES} vertices, got {n}")]
    TooLarge { n: usize },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WidthMeasure {
    DagWidth,
    KellyWidth,
    /// Directed path-width via the invisible fast robber (extension).
    Dpw,
}

impl WidthMeasure {
    pub fn variant(self) -> GameVariant {
        match self {
            WidthMeasure::DagWidth => GameVariant::VISIBLE,
            WidthMeasure::KellyWidth => GameVariant::INERT,
            WidthMeasure::Dpw => GameVariant::INVISIBLE_FAST,
        }
    }

    /// Added to the monotone cop number to obtain the width value.
    pub fn offset(self) -> i64 {
        match self {
            WidthMeasure::DagWidth | WidthMeasure::KellyWidth => 0,
            WidthMeasure::Dpw => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WidthMeasure::DagWidth => "dagwidth",
            WidthMeasure::KellyWidth => "kellywidth",
            WidthMeasure::Dpw => "dpw",
        }
    }
}

impl std::str::FromStr for WidthMeasure {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dagwidth" => Ok(WidthMeasure::DagWidth),
            "kellywidth" => Ok(WidthMeasure::KellyWidth),
            "dpw" => Ok(WidthMeasure::Dpw),
            other => Err(format!("unknown width measure `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WidthReport {
    pub measure: WidthMeasure,
    pub value: i64,
    pub variant: GameVariant,
    pub monotone: bool,
    pub offset: i64,
    /// Monotone cop number the value is derived from.
    pub cop_number: usize,
    /// Unrestricted cop number, when a comparison was requested.
    pub plain_cop_number: Option<usize>,
    #[serde(skip)]
    pub certificate: Certificate,
}

/// Computes `measure` as the monotone cop number plus its offset; with
/// `compare_plain` the unrestricted cop number is reported alongside.
pub fn width(
    d: &Digraph,
    measure: WidthMeasure,
    opts: SolveOptions,
    compare_plain: bool,
) -> Result<WidthReport, WidthError> {
    let variant = measure.variant();
    let mono = cop_number(d, variant, opts.with_monotone(true))?;
    let plain = if compare_plain {
        Some(cop_number(d, variant, opts.with_monotone(false))?.value)
    } else {
        None
    };
    Ok(WidthReport {
        measure,
        value: mono.value as i64 + measure.offset(),
        variant,
        monotone: true,
        offset: measure.offset(),
        cop_number: mono.value,
        plain_cop_number: plain,
        certificate: mono.certificate,
    })
}

pub fn dag_width(d: &Digraph, opts: SolveOptions) -> Result<WidthReport, WidthError> {
    width(d, WidthMeasure::DagWidth, opts, false)
}

/// Raw inert-robber monotone cop number; no `-1` normalization is applied.
pub fn kelly_width(d: &Digraph, opts: SolveOptions) -> Result<WidthReport, WidthError> {
    width(d, WidthMeasure::KellyWidth, opts, false)
}

pub fn directed_path_width(d: &Digraph, opts: SolveOptions) -> Result<WidthReport, WidthError> {
    width(d, WidthMeasure::Dpw, opts, false)
}

/// Exact tree-width by dynamic programming over elimination orderings.
///
/// `TW(S) = min_{v ∈ S} max(TW(S ∖ v), |Q(S ∖ v, v)|)` where `Q(S, v)` is the
/// set of vertices outside `S ∪ {v}` adjacent to the component of `v` in
/// `G[S ∪ {v}]`: exactly the neighbours `v` has when it is eliminated after
/// all of `S`. The empty graph is given width 0.
pub fn treewidth_exact(g: &UndirectedGraph) -> Result<usize, WidthError> {
    let n = g.vertex_count();
    if n > TREEWIDTH_MAX_VERTICES {
        return Err(WidthError::TooLarge { n });
    }
    let all = VertexSet::full(n);
    let mut tw = vec![usize::MAX; 1 << n];
    tw[0] = 0;
    for mask in 1usize..1 << n {
        let set = VertexSet::from_bits(mask as u64);
        let mut best = usize::MAX;
        for v in set.iter() {
            let rest = set.without(v);
            let prev = tw[rest.bits() as usize];
            if prev >= best {
                continue;
            }
            let q = eliminated_degree(g, rest, v, all);
            best = best.min(prev.max(q));
        }
        tw[mask] = best;
    }
    Ok(tw[all.bits() as usize])
}

fn eliminated_degree(
    g: &UndirectedGraph,
    eliminated: VertexSet,
    v: usize,
    all: VertexSet,
) -> usize {
    let mut component = VertexSet::singleton(v);
    let mut frontier = component;
    let mut boundary = VertexSet::EMPTY;
    while !frontier.is_empty() {
        let mut next = VertexSet::EMPTY;
        for u in frontier.iter() {
            next = next | g.neighbours(u);
        }
        boundary = boundary | (next - eliminated - component);
        frontier = (next & eliminated) - component;
        component = component | frontier;
    }
    (boundary & all).without(v).len()
}
