//! Naive reference implementations used as oracles. They share no code with
//! the library beyond reading a digraph's arc list.
#![allow(dead_code)]

use copsearch::hardproblems::{ProblemSolution, Witness};
use copsearch::Digraph;

/// Adjacency matrix with plain `u32` vertex masks.
pub struct Naive {
    pub n: usize,
    pub adj: Vec<Vec<bool>>,
}

impl Naive {
    pub fn new(d: &Digraph) -> Self {
        let n = d.vertex_count();
        let mut adj = vec![vec![false; n]; n];
        for (u, v) in d.arcs() {
            adj[u][v] = true;
        }
        Naive { n, adj }
    }

    /// Vertices reachable from `sources ∖ forbidden` inside `D − forbidden`.
    pub fn reach(&self, sources: u32, forbidden: u32) -> u32 {
        let mut seen = 0u32;
        let mut stack: Vec<usize> = (0..self.n)
            .filter(|&v| sources >> v & 1 == 1 && forbidden >> v & 1 == 0)
            .collect();
        while let Some(v) = stack.pop() {
            if seen >> v & 1 == 1 {
                continue;
            }
            seen |= 1 << v;
            for w in 0..self.n {
                if self.adj[v][w] && forbidden >> w & 1 == 0 && seen >> w & 1 == 0 {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Three-colour DFS cycle detection.
    pub fn has_cycle(&self) -> bool {
        fn visit(g: &Naive, v: usize, colour: &mut [u8]) -> bool {
            colour[v] = 1;
            for w in 0..g.n {
                if g.adj[v][w] && (colour[w] == 1 || (colour[w] == 0 && visit(g, w, colour))) {
                    return true;
                }
            }
            colour[v] = 2;
            false
        }
        let mut colour = vec![0u8; self.n];
        (0..self.n).any(|v| colour[v] == 0 && visit(self, v, &mut colour))
    }

    fn cop_sets(&self, k: usize) -> Vec<u32> {
        (0..1u32 << self.n)
            .filter(|c| c.count_ones() as usize <= k)
            .collect()
    }

    /// Visible fast robber, decided by iterating the cop-win set to a fixpoint
    /// one round at a time.
    pub fn visible_cops_win(&self, k: usize, monotone: bool) -> bool {
        let n = self.n;
        if n == 0 {
            return true;
        }
        let moves = self.cop_sets(k);
        let mut won = vec![vec![false; n]; 1 << n];
        loop {
            let mut changed = false;
            for &c in &moves {
                for r in 0..n {
                    if c >> r & 1 == 1 || won[c as usize][r] {
                        continue;
                    }
                    let space = self.reach(1 << r, c);
                    let wins = moves.iter().any(|&next| {
                        let options = self.reach(1 << r, c & next) & !next;
                        (0..n).filter(|&t| options >> t & 1 == 1).all(|t| {
                            won[next as usize][t]
                                && (!monotone || self.reach(1 << t, next) & !space == 0)
                        })
                    });
                    if wins {
                        won[c as usize][r] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        (0..n).all(|r| won[0][r])
    }

    /// Invisible robber over contamination sets, lazy or fast, by the same
    /// round-based fixpoint.
    pub fn invisible_cops_win(&self, k: usize, lazy: bool, monotone: bool) -> bool {
        let n = self.n;
        let full = (1u32 << n) - 1;
        let moves = self.cop_sets(k);
        let idx = |c: u32, r: u32| ((c as usize) << n) | r as usize;
        let mut won = vec![false; 1 << (2 * n)];
        for &c in &moves {
            won[idx(c, 0)] = true;
        }
        loop {
            let mut changed = false;
            for &c in &moves {
                for r in 0..=full {
                    if r & c != 0 || won[idx(c, r)] {
                        continue;
                    }
                    let wins = moves.iter().any(|&next| {
                        let stay = c & next;
                        let spread = if lazy {
                            r | self.reach(r & next, stay)
                        } else {
                            self.reach(r, stay)
                        };
                        let r2 = spread & !next;
                        won[idx(next, r2)] && (!monotone || r2 & !r == 0)
                    });
                    if wins {
                        won[idx(c, r)] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        won[idx(0, full)]
    }

    /// Least `k` for which `wins(k)` holds.
    pub fn least(&self, wins: impl Fn(usize) -> bool) -> usize {
        (0..=self.n).find(|&k| wins(k)).expect("n cops always win")
    }

    /// Hamiltonicity by trying every cyclic order starting at vertex 0.
    pub fn hamiltonian(&self) -> bool {
        if self.n < 2 {
            return false;
        }
        let mut rest: Vec<usize> = (1..self.n).collect();
        let mut found = false;
        permute(&mut rest, 0, &mut |p| {
            let mut prev = 0;
            for &v in p {
                if !self.adj[prev][v] {
                    return;
                }
                prev = v;
            }
            if self.adj[prev][0] {
                found = true;
            }
        });
        found
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut out = vec![];
        for u in 0..self.n {
            for v in 0..self.n {
                if self.adj[u][v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn without_arcs(&self, removed: &[(usize, usize)]) -> Naive {
        let mut adj = self.adj.clone();
        for &(u, v) in removed {
            adj[u][v] = false;
        }
        Naive { n: self.n, adj }
    }

    pub fn without_vertices(&self, removed: &[usize]) -> Naive {
        let mut adj = self.adj.clone();
        for &v in removed {
            adj[v].iter_mut().for_each(|a| *a = false);
            adj.iter_mut().for_each(|row| row[v] = false);
        }
        Naive { n: self.n, adj }
    }

    pub fn closure(&self) -> Vec<u32> {
        (0..self.n).map(|v| self.reach(1 << v, 0)).collect()
    }
}

/// Calls `f` on every permutation of `items`.
pub fn permute(items: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        f(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, f);
        items.swap(start, i);
    }
}

/// Tree-width of an undirected graph as the best elimination ordering, tried
/// exhaustively.
pub fn treewidth_brute(n: usize, edges: &[(usize, usize)]) -> usize {
    if n == 0 {
        return 0;
    }
    let mut best = usize::MAX;
    let mut order: Vec<usize> = (0..n).collect();
    permute(&mut order, 0, &mut |order| {
        let mut adj = vec![vec![false; n]; n];
        for &(u, v) in edges {
            adj[u][v] = true;
            adj[v][u] = true;
        }
        let mut gone = vec![false; n];
        let mut width = 0;
        for &v in order {
            let nb: Vec<usize> = (0..n)
                .filter(|&w| !gone[w] && w != v && adj[v][w])
                .collect();
            width = width.max(nb.len());
            for &a in &nb {
                for &b in &nb {
                    if a != b {
                        adj[a][b] = true;
                    }
                }
            }
            gone[v] = true;
        }
        best = best.min(width);
    });
    best
}

/// All undirected edge sets on `n` labelled vertices, as edge lists.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0..1u64 << pairs.len()).map(move |mask| {
        pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect()
    })
}

pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Lexicographically least relabelled edge list, as an isomorphism key.
pub fn canonical(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let mut e: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (p[u], p[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
    });
    best.unwrap()
}

/// Directed cycle `0 → 1 → … → n-1 → 0`.
pub fn cycle(n: usize) -> Digraph {
    let arcs: Vec<(usize, usize)> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Digraph::from_arcs(n, &arcs).unwrap()
}

/// Panics unless `sol` is a valid witness for its problem on `d`.
pub fn check_witness(d: &Digraph, sol: &ProblemSolution) {
    let g = Naive::new(d);
    match &sol.witness {
        Witness::None => assert_eq!(sol.objective, 0),
        Witness::Cycle(order) => {
            assert_eq!(order.len(), d.vertex_count());
            let mut seen = vec![false; d.vertex_count()];
            for (i, &v) in order.iter().enumerate() {
                assert!(!seen[v]);
                seen[v] = true;
                assert!(g.adj[v][order[(i + 1) % order.len()]]);
            }
        }
        Witness::Vertices(vs) => {
            assert_eq!(vs.len(), sol.objective);
            assert!(!g.without_vertices(vs).has_cycle());
        }
        Witness::Arcs(arcs) => {
            assert_eq!(arcs.len(), sol.objective);
            assert!(arcs.iter().all(|&(u, v)| g.adj[u][v]));
        }
    }
}
