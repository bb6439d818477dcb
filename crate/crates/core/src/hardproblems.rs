//! Exact exponential-time solvers for Hamiltonicity, feedback vertex and arc
//! sets and the minimum equivalent subgraph, with explicit size limits.

use serde::Serialize;
use thiserror::Error;

use crate::arena::GameVariant;
use crate::digraph::{Digraph, VertexSet};
use crate::solver::{cop_number, SolveOptions};

pub const HAMILTONIAN_MAX_VERTICES: usize = 18;
pub const FVS_MAX_VERTICES: usize = 14;
pub const FAS_MAX_VERTICES: usize = 9;
pub const FAS_MAX_ARCS: usize = 20;
pub const MES_MAX_VERTICES: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProblemError {
    #[error("{problem}: instance too large ({detail})")]
    SizeLimit { problem: Problem, detail: String },
    #[error("input digraph is not acyclic")]
    NotAcyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    HamiltonianCycle,
    FeedbackVertexSet,
    FeedbackArcSet,
    MinimumEquivalentSubgraph,
}

impl std::fmt::Display for Problem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Problem::HamiltonianCycle => "hamiltonian cycle",
            Problem::FeedbackVertexSet => "feedback vertex set",
            Problem::FeedbackArcSet => "feedback arc set",
            Problem::MinimumEquivalentSubgraph => "minimum equivalent subgraph",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum Witness {
    None,
    Vertices(Vec<usize>),
    Arcs(Vec<(usize, usize)>),
    /// Vertex sequence; the closing arc back to the first vertex is implied.
    Cycle(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProblemSolution {
    pub problem: Problem,
    pub witness: Witness,
    /// Cycle length for Hamiltonicity (0 if none), otherwise witness size.
    pub objective: usize,
    /// True only when the search was exhaustive.
    pub optimal: bool,
}

fn too_large(problem: Problem, detail: String) -> ProblemError {
    ProblemError::SizeLimit { problem, detail }
}

fn adjacency(d: &Digraph) -> Vec<u64> {
    (0..d.vertex_count())
        .map(|v| d.out_neighbours(v).bits())
        .collect()
}

/// Acyclicity of the subgraph induced by `alive`, by repeatedly peeling sinks.
fn acyclic_on(out: &[u64], mut alive: u64) -> bool {
    while alive != 0 {
        let mut sinks = 0u64;
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if out[v] & alive == 0 {
                sinks |= 1 << v;
            }
        }
        if sinks == 0 {
            return false;
        }
        alive &= !sinks;
    }
    true
}

/// Calls `f` on every `size`-subset of `0..len` as an ascending index slice,
/// in lexicographic order, until `f` returns true.
fn find_combination(len: usize, size: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if size > len {
        return false;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let mut i = size;
        while i > 0 && idx[i - 1] == len - size + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        i -= 1;
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Held–Karp style subset dynamic programming over (visited set, endpoint),
/// with paths rooted at vertex 0.
pub fn hamiltonian_cycle(d: &Digraph) -> Result<ProblemSolution, ProblemError> {
    let n = d.vertex_count();
    if n > HAMILTONIAN_MAX_VERTICES {
        return Err(too_large(
            Problem::HamiltonianCycle,
            format!("n = {n} > {HAMILTONIAN_MAX_VERTICES}"),
        ));
    }
    let none = ProblemSolution {
        problem: Problem::HamiltonianCycle,
        witness: Witness::None,
        objective: 0,
        optimal: true,
    };
    if n < 2 {
        return Ok(none);
    }
    let out = adjacency(d);
    let full = (1usize << n) - 1;
    // ends[mask]: endpoints of paths from 0 visiting exactly `mask`
    let mut ends = vec![0u32; 1 << n];
    ends[1] = 1;
    for mask in (1..=full).step_by(2) {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        let mut rest = e;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut succ = out[v] & !(mask as u64);
            while succ != 0 {
                let w = succ.trailing_zeros() as usize;
                succ &= succ - 1;
                ends[mask | 1 << w] |= 1 << w;
            }
        }
    }
    let closing = (0..n).find(|&v| ends[full] >> v & 1 == 1 && out[v] & 1 == 1);
    let Some(mut last) = closing else {
        return Ok(none);
    };
    let mut cycle = vec![last];
    let mut mask = full;
    while mask != 1 {
        let prev_mask = mask & !(1 << last);
        let prev = (0..n)
            .find(|&u| ends[prev_mask] >> u & 1 == 1 && out[u] >> last & 1 == 1)
            .expect("dp predecessor exists");
        cycle.push(prev);
        mask = prev_mask;
        last = prev;
    }
    cycle.reverse();
    Ok(ProblemSolution {
        problem: Problem::HamiltonianCycle,
        witness: Witness::Cycle(cycle),
        objective: n,
        optimal: true,
    })
}

/// Smallest vertex set whose removal leaves an acyclic digraph, by subset
/// search in order of increasing cardinality.
pub fn min_feedback_vertex_set(d: &Digraph) -> Result<ProblemSolution, ProblemError> {
    let n = d.vertex_count();
    if n > FVS_MAX_VERTICES {
        return Err(too_large(
            Problem::FeedbackVertexSet,
            format!("n = {n} > {FVS_MAX_VERTICES}"),
        ));
    }
    let out = adjacency(d);
    let all = d.vertices().bits();
    for size in 0..=n {
        let mut found = None;
        find_combination(n, size, |idx| {
            let removed: u64 = idx.iter().map(|&v| 1u64 << v).sum();
            if acyclic_on(&out, all & !removed) {
                found = Some(idx.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(set) = found {
            return Ok(ProblemSolution {
                problem: Problem::FeedbackVertexSet,
                objective: set.len(),
                witness: Witness::Vertices(set),
                optimal: true,
            });
        }
    }
    unreachable!("removing every vertex leaves an acyclic digraph")
}

fn check_fas_limits(d: &Digraph) -> Result<(), ProblemError> {
    let (n, m) = (d.vertex_count(), d.arc_count());
    if n > FAS_MAX_VERTICES && m > FAS_MAX_ARCS {
        return Err(too_large(
            Problem::FeedbackArcSet,
            format!("n = {n} > {FAS_MAX_VERTICES} and m = {m} > {FAS_MAX_ARCS}"),
        ));
    }
    Ok(())
}

/// Smallest arc set whose deletion leaves an acyclic digraph, by subset
/// search in order of increasing size. Arcs joining different strong
/// components lie on no cycle and are never candidates.
pub fn min_feedback_arc_set(d: &Digraph) -> Result<ProblemSolution, ProblemError> {
    check_fas_limits(d)?;
    let out = adjacency(d);
    let all = d.vertices().bits();
    let classes = d.scc();
    let candidates: Vec<(usize, usize)> = d
        .arcs()
        .filter(|&(u, v)| classes.iter().any(|c| c.contains(u) && c.contains(v)))
        .collect();
    for size in 0..=candidates.len() {
        let mut found = None;
        let mut work = out.clone();
        find_combination(candidates.len(), size, |idx| {
            work.copy_from_slice(&out);
            for &i in idx {
                let (u, v) = candidates[i];
                work[u] &= !(1 << v);
            }
            if acyclic_on(&work, all) {
                found = Some(idx.iter().map(|&i| candidates[i]).collect::<Vec<_>>());
                true
            } else {
                false
            }
        });
        if let Some(arcs) = found {
            return Ok(ProblemSolution {
                problem: Problem::FeedbackArcSet,
                objective: arcs.len(),
                witness: Witness::Arcs(arcs),
                optimal: true,
            });
        }
    }
    unreachable!("deleting every arc inside strong components leaves an acyclic digraph")
}

/// Minimum feedback arc set as the fewest backward arcs over all `n!`
/// vertex orderings (Heap's algorithm).
pub fn min_feedback_arc_set_by_ordering(d: &Digraph) -> Result<ProblemSolution, ProblemError> {
    let n = d.vertex_count();
    if n > FAS_MAX_VERTICES {
        return Err(too_large(
            Problem::FeedbackArcSet,
            format!("ordering oracle: n = {n} > {FAS_MAX_VERTICES}"),
        ));
    }
    let out = adjacency(d);
    let backward = |order: &[usize]| -> usize {
        let mut earlier = 0u64;
        let mut count = 0;
        for &v in order {
            count += (out[v] & earlier).count_ones() as usize;
            earlier |= 1 << v;
        }
        count
    };
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = (backward(&order), order.clone());
    let mut c = vec![0usize; n];
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            let cost = backward(&order);
            if cost < best.0 {
                best = (cost, order.clone());
            }
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    let (cost, order) = best;
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let arcs: Vec<(usize, usize)> = d.arcs().filter(|&(u, v)| pos[v] < pos[u]).collect();
    debug_assert_eq!(arcs.len(), cost);
    Ok(ProblemSolution {
        problem: Problem::FeedbackArcSet,
        objective: cost,
        witness: Witness::Arcs(arcs),
        optimal: true,
    })
}

fn closure_rows(n: usize, out: &[u64]) -> Vec<u64> {
    (0..n)
        .map(|u| {
            let mut seen = 1u64 << u;
            let mut frontier = seen;
            while frontier != 0 {
                let mut next = 0;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= out[v];
                }
                frontier = next & !seen;
                seen |= frontier;
            }
            seen
        })
        .collect()
}

/// Fewest arcs of `d` whose reachability relation equals that of `d`, by
/// subset search in order of increasing size.
pub fn min_equivalent_subgraph(d: &Digraph) -> Result<ProblemSolution, ProblemError> {
    let n = d.vertex_count();
    if n > MES_MAX_VERTICES {
        return Err(too_large(
            Problem::MinimumEquivalentSubgraph,
            format!("n = {n} > {MES_MAX_VERTICES}"),
        ));
    }
    let target = closure_rows(n, &adjacency(d));
    let arcs: Vec<(usize, usize)> = d.arcs().collect();
    // every vertex reaching (reached by) another keeps an out-arc (in-arc)
    let with_out = (0..n).filter(|&u| target[u] != 1 << u).count();
    let with_in = (0..n)
        .filter(|&v| (0..n).any(|u| u != v && target[u] >> v & 1 == 1))
        .count();
    let lower = with_out.max(with_in);
    let mut out = vec![0u64; n];
    for size in lower..=arcs.len() {
        let mut found = None;
        find_combination(arcs.len(), size, |idx| {
            out.iter_mut().for_each(|r| *r = 0);
            for &i in idx {
                let (u, v) = arcs[i];
                out[u] |= 1 << v;
            }
            if closure_rows(n, &out) == target {
                found = Some(idx.iter().map(|&i| arcs[i]).collect::<Vec<_>>());
                true
            } else {
                false
            }
        });
        if let Some(kept) = found {
            return Ok(ProblemSolution {
                problem: Problem::MinimumEquivalentSubgraph,
                objective: kept.len(),
                witness: Witness::Arcs(kept),
                optimal: true,
            });
        }
    }
    unreachable!("the full arc set is equivalent to itself")
}

/// Arcs `(u, v)` of an acyclic digraph with no other `u → v` path.
pub fn transitive_reduction_dag(d: &Digraph) -> Result<Vec<(usize, usize)>, ProblemError> {
    if !d.is_acyclic() {
        return Err(ProblemError::NotAcyclic);
    }
    Ok(d.arcs()
        .filter(|&(u, v)| {
            let detour = d.out_neighbours(u).without(v);
            !d.reach(detour, VertexSet::EMPTY).contains(v)
        })
        .collect())
}

/// One instance joined with its problem objectives and monotone cop numbers.
/// `None` marks a value that could not be computed; `status` says why.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HardRow {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub hamiltonian: Option<bool>,
    pub fvs: Option<usize>,
    pub fas: Option<usize>,
    pub mes: Option<usize>,
    pub visible_mon_copnum: Option<usize>,
    pub inert_mon_copnum: Option<usize>,
    pub status: String,
}

pub const HARD_CSV_HEADER: &str =
    "instance,n,m,hamiltonian,fvs,fas,mes,visible_mon_copnum,inert_mon_copnum,status";

impl HardRow {
    pub fn to_csv(&self) -> String {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            crate::lab::csv_field(&self.instance),
            self.n,
            self.m,
            opt(&self.hamiltonian),
            opt(&self.fvs),
            opt(&self.fas),
            opt(&self.mes),
            opt(&self.visible_mon_copnum),
            opt(&self.inert_mon_copnum),
            crate::lab::csv_field(&self.status)
        )
    }
}

/// Joins the exact problem objectives with the visible and inert monotone
/// cop numbers, one row per instance.
pub fn width_annotated_report(instances: &[(String, Digraph)], opts: SolveOptions) -> Vec<HardRow> {
    instances
        .iter()
        .map(|(name, d)| {
            let mut errors = Vec::new();
            let mut keep = |label: &str, r: Result<usize, String>| match r {
                Ok(v) => Some(v),
                Err(e) => {
                    errors.push(format!("{label}: {e}"));
                    None
                }
            };
            let ham = keep(
                "hamiltonian",
                hamiltonian_cycle(d)
                    .map(|s| s.objective)
                    .map_err(|e| e.to_string()),
            );
            let fvs = keep(
                "fvs",
                min_feedback_vertex_set(d)
                    .map(|s| s.objective)
                    .map_err(|e| e.to_string()),
            );
            let fas = keep(
                "fas",
                min_feedback_arc_set(d)
                    .map(|s| s.objective)
                    .map_err(|e| e.to_string()),
            );
            let mes = keep(
                "mes",
                min_equivalent_subgraph(d)
                    .map(|s| s.objective)
                    .map_err(|e| e.to_string()),
            );
            let mono = opts.with_monotone(true);
            let vis = keep(
                "visible",
                cop_number(d, GameVariant::VISIBLE, mono)
                    .map(|c| c.value)
                    .map_err(|e| e.to_string()),
            );
            let inert = keep(
                "inert",
                cop_number(d, GameVariant::INERT, mono)
                    .map(|c| c.value)
                    .map_err(|e| e.to_string()),
            );
            HardRow {
                instance: name.clone(),
                n: d.vertex_count(),
                m: d.arc_count(),
                hamiltonian: ham.map(|len| len > 0),
                fvs,
                fas,
                mes,
                visible_mon_copnum: vis,
                inert_mon_copnum: inert,
                status: if errors.is_empty() {
                    "ok".into()
                } else {
                    errors.join("; ")
                },
            }
        })
        .collect()
}
