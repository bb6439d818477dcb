//! Backward induction on the explicit arena of the visible game.
//!
//! Cop positions are pairs `(C, r)`. A cop move `C'` leads to a robber node
//! identified by `(C', F)` where `F` is the set of landing vertices; the
//! robber node is lost for the robber once every `(C', r')` with `r' ∈ F` is
//! won by the cops. An empty `F` is a capture.

use std::collections::HashMap;

use super::{
    Budget, Certificate, Outcome, PositionalEntry, SolveError, SolveOptions, Strategy, Winner,
};
use crate::arena::{cop_moves, robber_options, robber_space, Confinement, CopBudget, GameVariant};
use crate::digraph::{Digraph, VertexSet};

const UNWON: u32 = u32::MAX;
const CAPTURE: u32 = u32::MAX;

struct Arena {
    n: usize,
    moves: Vec<VertexSet>,
    /// `(move index of C, robber)` per cop position.
    positions: Vec<(u32, u32)>,
    /// Dense id of `(C, r)` at `C_index * n + r`.
    position_id: Vec<u32>,
    /// Cop edges `(C' index, robber node)` of position `p` live at
    /// `edges[edge_start[p]..edge_start[p + 1]]`.
    edge_start: Vec<usize>,
    edges: Vec<(u32, u32)>,
    /// Robber nodes each position is a successor of.
    containing_nodes: Vec<Vec<u32>>,
    /// Positions with a cop edge into each robber node.
    node_preds: Vec<Vec<u32>>,
    node_size: Vec<u32>,
}

impl Arena {
    fn build(
        d: &Digraph,
        k: CopBudget,
        confinement: Confinement,
        monotone: bool,
        budget: &mut Budget,
    ) -> Result<Arena, SolveError> {
        let n = d.vertex_count();
        let moves = cop_moves(d, k);
        let mut position_id = vec![UNWON; moves.len() * n];
        let mut positions = Vec::new();
        for (ci, &c) in moves.iter().enumerate() {
            for r in (d.vertices() - c).iter() {
                position_id[ci * n + r] = positions.len() as u32;
                positions.push((ci as u32, r as u32));
            }
        }
        budget.spend(positions.len() as u64)?;

        let mut arena = Arena {
            n,
            moves,
            position_id,
            edge_start: Vec::with_capacity(positions.len() + 1),
            edges: Vec::new(),
            containing_nodes: vec![Vec::new(); positions.len()],
            node_preds: Vec::new(),
            node_size: Vec::new(),
            positions,
        };
        let mut node_ids: HashMap<(u32, VertexSet), u32> = HashMap::new();

        for p in 0..arena.positions.len() {
            arena.edge_start.push(arena.edges.len());
            let (ci, r) = arena.positions[p];
            let cops = arena.moves[ci as usize];
            let r = r as usize;
            let space = if monotone {
                robber_space(d, cops, r)
            } else {
                VertexSet::EMPTY
            };
            budget.spend(arena.moves.len() as u64)?;
            for (ni, &next) in arena.moves.iter().enumerate() {
                // Standing still only hands the robber a free move.
                if next == cops {
                    continue;
                }
                let landing = robber_options(d, cops, next, r, confinement);
                if monotone
                    && landing
                        .iter()
                        .any(|r2| !robber_space(d, next, r2).is_subset(space))
                {
                    continue;
                }
                if landing.is_empty() {
                    arena.edges.push((ni as u32, CAPTURE));
                    continue;
                }
                let node = match node_ids.get(&(ni as u32, landing)) {
                    Some(&id) => id,
                    None => {
                        let id = arena.node_size.len() as u32;
                        node_ids.insert((ni as u32, landing), id);
                        arena.node_size.push(landing.len() as u32);
                        arena.node_preds.push(Vec::new());
                        budget.spend(landing.len() as u64)?;
                        for r2 in landing.iter() {
                            let q = arena.position_id[ni * arena.n + r2];
                            arena.containing_nodes[q as usize].push(id);
                        }
                        id
                    }
                };
                arena.node_preds[node as usize].push(p as u32);
                arena.edges.push((ni as u32, node));
            }
        }
        arena.edge_start.push(arena.edges.len());
        Ok(arena)
    }

    /// Attractor ranks: a position has rank `i + 1` when its best move leads
    /// to a robber node all of whose successors have rank at most `i`.
    /// Captures count as rank 0.
    fn ranks(&self) -> (Vec<u32>, Vec<u32>) {
        let mut pos_rank = vec![UNWON; self.positions.len()];
        let mut node_rank = vec![UNWON; self.node_size.len()];
        let mut remaining = self.node_size.clone();
        let mut frontier: Vec<u32> = Vec::new();
        for (p, rank) in pos_rank.iter_mut().enumerate() {
            let edges = &self.edges[self.edge_start[p]..self.edge_start[p + 1]];
            if edges.iter().any(|&(_, node)| node == CAPTURE) {
                *rank = 1;
                frontier.push(p as u32);
            }
        }
        let mut level = 1;
        while !frontier.is_empty() {
            let mut won_nodes = Vec::new();
            for &p in &frontier {
                for &node in &self.containing_nodes[p as usize] {
                    let left = &mut remaining[node as usize];
                    *left -= 1;
                    if *left == 0 {
                        node_rank[node as usize] = level;
                        won_nodes.push(node);
                    }
                }
            }
            let mut next = Vec::new();
            for node in won_nodes {
                for &p in &self.node_preds[node as usize] {
                    if pos_rank[p as usize] == UNWON {
                        pos_rank[p as usize] = level + 1;
                        next.push(p);
                    }
                }
            }
            frontier = next;
            level += 1;
        }
        (pos_rank, node_rank)
    }

    /// Fastest-capture move, ties broken by the lexicographically smallest
    /// cop set (moves are stored in that order).
    fn best_move(&self, p: usize, node_rank: &[u32]) -> Option<u32> {
        let mut best: Option<(u32, u32)> = None;
        for &(ni, node) in &self.edges[self.edge_start[p]..self.edge_start[p + 1]] {
            let rank = if node == CAPTURE {
                0
            } else {
                node_rank[node as usize]
            };
            if rank == UNWON {
                continue;
            }
            if best.is_none_or(|(r, _)| rank < r) {
                best = Some((rank, ni));
            }
        }
        best.map(|(_, ni)| ni)
    }

    fn position(&self, ci: u32, r: usize) -> usize {
        self.position_id[ci as usize * self.n + r] as usize
    }
}

/// Solves the visible fast-robber game with `k` cops.
pub fn solve_visible(
    d: &Digraph,
    k: CopBudget,
    confinement: Confinement,
    opts: SolveOptions,
) -> Result<Outcome, SolveError> {
    let mut budget = Budget::new(opts.state_budget);
    let arena = Arena::build(d, k, confinement, opts.monotone, &mut budget)?;
    let (pos_rank, node_rank) = arena.ranks();
    let states_explored = (arena.positions.len() + arena.node_size.len()) as u64;

    // cop_moves lists the empty placement first
    let initial: Vec<usize> = (0..arena.n).map(|r| arena.position(0, r)).collect();
    if initial.iter().any(|&p| pos_rank[p] == UNWON) {
        return Ok(Outcome {
            winner: Winner::Robber,
            certificate: None,
            states_explored,
        });
    }

    let mut chosen: HashMap<usize, u32> = HashMap::new();
    let mut stack = initial;
    while let Some(p) = stack.pop() {
        if chosen.contains_key(&p) {
            continue;
        }
        let ni = arena
            .best_move(p, &node_rank)
            .expect("won position has a winning move");
        chosen.insert(p, ni);
        let (ci, r) = arena.positions[p];
        let landing = robber_options(
            d,
            arena.moves[ci as usize],
            arena.moves[ni as usize],
            r as usize,
            confinement,
        );
        for r2 in landing.iter() {
            stack.push(arena.position(ni, r2));
        }
    }

    let mut entries: Vec<PositionalEntry> = chosen
        .into_iter()
        .map(|(p, ni)| {
            let (ci, r) = arena.positions[p];
            PositionalEntry {
                cops: arena.moves[ci as usize].to_vec(),
                robber: r as usize,
                next: arena.moves[ni as usize].to_vec(),
            }
        })
        .collect();
    entries.sort_by(|a, b| a.cops.cmp(&b.cops).then(a.robber.cmp(&b.robber)));

    let variant = match confinement {
        Confinement::Reachability => GameVariant::VISIBLE,
        Confinement::StrongComponent => GameVariant::VISIBLE_SCC,
    };
    let certificate = Certificate::new(
        d,
        variant,
        k.get(),
        opts.monotone,
        Strategy::Positional(entries),
    );
    Ok(Outcome {
        winner: Winner::Cops,
        certificate: Some(certificate),
        states_explored,
    })
}
