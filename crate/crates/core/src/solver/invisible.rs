//! The invisible games are one-player searches over contamination states:
//! the cops win iff some move sequence from `(∅, V)` clears every vertex.

use std::collections::hash_map::{Entry, HashMap};

use super::{Budget, Certificate, Outcome, SolveError, SolveOptions, Strategy, Winner};
use crate::arena::{contaminate, cop_moves, Agility, CopBudget, GameVariant};
use crate::digraph::{Digraph, VertexSet};

/// Breadth-first search over `(C, R)` states. The first clearing sequence
/// found is a shortest one; among those, moves are tried in lexicographic
/// order so the certificate is deterministic.
pub fn solve_invisible(
    d: &Digraph,
    k: CopBudget,
    agility: Agility,
    opts: SolveOptions,
) -> Result<Outcome, SolveError> {
    let variant = match agility {
        Agility::Lazy => GameVariant::INERT,
        Agility::Fast => GameVariant::INVISIBLE_FAST,
    };
    let won = |seq: Vec<Vec<usize>>, explored: u64| Outcome {
        winner: Winner::Cops,
        certificate: Some(Certificate::new(
            d,
            variant,
            k.get(),
            opts.monotone,
            Strategy::Sequence(seq),
        )),
        states_explored: explored,
    };

    let start = (VertexSet::EMPTY, d.vertices());
    if start.1.is_empty() {
        return Ok(won(Vec::new(), 1));
    }

    let moves = cop_moves(d, k);
    let mut budget = Budget::new(opts.state_budget);
    let mut states = vec![start];
    // (parent state, move index) that first reached each state
    let mut parent: Vec<(u32, u32)> = vec![(u32::MAX, u32::MAX)];
    let mut seen: HashMap<(VertexSet, VertexSet), u32> = HashMap::from([(start, 0)]);

    let mut i = 0;
    while i < states.len() {
        let (cops, contaminated) = states[i];
        budget.spend(moves.len() as u64)?;
        for (mi, &next) in moves.iter().enumerate() {
            // C' = C never changes the state.
            if next == cops {
                continue;
            }
            let after = contaminate(d, cops, next, contaminated, agility);
            if opts.monotone && !after.is_subset(contaminated) {
                continue;
            }
            if after.is_empty() {
                let mut seq = vec![next.to_vec()];
                let mut at = i;
                while parent[at].0 != u32::MAX {
                    let (p, m) = parent[at];
                    seq.push(moves[m as usize].to_vec());
                    at = p as usize;
                }
                seq.reverse();
                return Ok(won(seq, states.len() as u64));
            }
            let key = (next, after);
            if let Entry::Vacant(slot) = seen.entry(key) {
                slot.insert(states.len() as u32);
                states.push(key);
                parent.push((i as u32, mi as u32));
            }
        }
        i += 1;
    }
    Ok(Outcome {
        winner: Winner::Robber,
        certificate: None,
        states_explored: states.len() as u64,
    })
}
