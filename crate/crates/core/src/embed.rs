//! Backtracking search for induced copies of a small signed graph inside a
//! host, either with exact signs or up to switching.
//!
//! Pattern vertices are placed in breadth-first order. Once a placed vertex
//! has an earlier neighbour, its switching sign is forced by that neighbour,
//! so sign consistency is checked as soon as each edge closes.

use serde::{Deserialize, Serialize};

use crate::graph::SignedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignMode {
    /// Signs must agree edge by edge.
    Exact,
    /// Signs must agree after switching the copy.
    UpToSwitching,
}

/// An induced copy of a pattern in a host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    /// `map[p]` is the host vertex playing pattern vertex `p`.
    pub map: Vec<usize>,
    /// Per pattern vertex `±1`; the host sign of `{map[p], map[q]}` equals
    /// `switch[p] * switch[q]` times the pattern sign.
    pub switch: Vec<i8>,
}

impl Embedding {
    /// Host vertices whose switching sign is negative.
    pub fn host_switch_set(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .map
            .iter()
            .zip(&self.switch)
            .filter(|(_, &s)| s < 0)
            .map(|(&h, _)| h)
            .collect();
        out.sort_unstable();
        out
    }

    /// Replays the embedding against both graphs.
    pub fn verify(&self, host: &SignedGraph, pattern: &SignedGraph, mode: SignMode) -> bool {
        let k = pattern.order();
        if self.map.len() != k || self.switch.len() != k {
            return false;
        }
        let mut seen = vec![false; host.order()];
        for &h in &self.map {
            if h >= host.order() || std::mem::replace(&mut seen[h], true) {
                return false;
            }
        }
        if mode == SignMode::Exact && self.switch.iter().any(|&s| s != 1) {
            return false;
        }
        (0..k).all(|p| {
            (0..k).all(|q| {
                p == q
                    || host.entry(self.map[p], self.map[q])
                        == self.switch[p] * self.switch[q] * pattern.entry(p, q)
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Embedding),
    NotFound,
    BudgetExhausted,
}

impl SearchOutcome {
    pub fn found(self) -> Option<Embedding> {
        match self {
            SearchOutcome::Found(e) => Some(e),
            _ => None,
        }
    }
}

pub(crate) struct Search<'a> {
    host: &'a SignedGraph,
    pattern: &'a SignedGraph,
    mode: SignMode,
    /// Bijective search: host and pattern have equal order and per-vertex
    /// invariants must match exactly.
    spanning: bool,
    budget: Option<u64>,
    host_inv: Vec<(usize, usize)>,
    pat_inv: Vec<(usize, usize)>,
    order: Vec<usize>,
    anchor: Vec<Option<usize>>,
}

/// Degree and number of unbalanced triangles through each vertex; both are
/// invariant under switching and isomorphism.
fn vertex_invariants(g: &SignedGraph, with_triangles: bool) -> Vec<(usize, usize)> {
    g.vertices()
        .map(|u| {
            let nb = g.neighbors(u);
            let mut negative = 0;
            if with_triangles {
                for (i, &a) in nb.iter().enumerate() {
                    for &b in &nb[i + 1..] {
                        let e = g.entry(a, b);
                        if e != 0 && g.entry(u, a) * g.entry(u, b) * e < 0 {
                            negative += 1;
                        }
                    }
                }
            }
            (nb.len(), negative)
        })
        .collect()
}

impl<'a> Search<'a> {
    pub(crate) fn new(
        host: &'a SignedGraph,
        pattern: &'a SignedGraph,
        mode: SignMode,
        spanning: bool,
        budget: Option<u64>,
    ) -> Self {
        let (order, anchor) = placement_order(pattern);
        Search {
            host,
            pattern,
            mode,
            spanning,
            budget,
            host_inv: vertex_invariants(host, spanning),
            pat_inv: vertex_invariants(pattern, spanning),
            order,
            anchor,
        }
    }

    pub(crate) fn run(&self) -> SearchOutcome {
        let k = self.pattern.order();
        if k == 0 {
            return SearchOutcome::Found(Embedding {
                map: vec![],
                switch: vec![],
            });
        }
        if k > self.host.order() || (self.spanning && k != self.host.order()) {
            return SearchOutcome::NotFound;
        }
        let mut state = State {
            map: vec![usize::MAX; k],
            switch: vec![1; k],
            used: vec![false; self.host.order()],
            nodes: 0,
            exhausted: false,
        };
        if self.extend(0, &mut state) {
            SearchOutcome::Found(Embedding {
                map: state.map,
                switch: state.switch,
            })
        } else if state.exhausted {
            SearchOutcome::BudgetExhausted
        } else {
            SearchOutcome::NotFound
        }
    }

    fn compatible(&self, p: usize, h: usize) -> bool {
        let (pd, pt) = self.pat_inv[p];
        let (hd, ht) = self.host_inv[h];
        if self.spanning {
            pd == hd && pt == ht
        } else {
            hd >= pd
        }
    }

    fn extend(&self, depth: usize, st: &mut State) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let candidates: Vec<usize> = match self.anchor[depth] {
            Some(a) => self.host.neighbors(st.map[a]).to_vec(),
            None => self.host.vertices().collect(),
        };
        for h in candidates {
            if st.used[h] || !self.compatible(p, h) {
                continue;
            }
            st.nodes += 1;
            if let Some(b) = self.budget {
                if st.nodes > b {
                    st.exhausted = true;
                    return false;
                }
            }
            let s = match (self.mode, self.anchor[depth]) {
                (SignMode::UpToSwitching, Some(a)) => {
                    st.switch[a] * self.host.entry(st.map[a], h) * self.pattern.entry(a, p)
                }
                _ => 1,
            };
            let ok = self.order[..depth].iter().all(|&q| {
                let pe = self.pattern.entry(q, p);
                let he = self.host.entry(st.map[q], h);
                he == st.switch[q] * s * pe
            });
            if !ok {
                continue;
            }
            st.map[p] = h;
            st.switch[p] = s;
            st.used[h] = true;
            if self.extend(depth + 1, st) {
                return true;
            }
            st.used[h] = false;
            st.map[p] = usize::MAX;
            st.switch[p] = 1;
            if st.exhausted {
                return false;
            }
        }
        false
    }
}

struct State {
    map: Vec<usize>,
    switch: Vec<i8>,
    used: Vec<bool>,
    nodes: u64,
    exhausted: bool,
}

/// Breadth-first placement order over components (largest first, each rooted
/// at a maximum-degree vertex) and, per position, the earliest placed
/// neighbour.
fn placement_order(g: &SignedGraph) -> (Vec<usize>, Vec<Option<usize>>) {
    let mut comps = g.components();
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut order = Vec::with_capacity(g.order());
    let mut placed = vec![false; g.order()];
    for comp in comps {
        let root = *comp.iter().max_by_key(|&&v| (g.degree(v), std::cmp::Reverse(v))).unwrap();
        let start = order.len();
        order.push(root);
        placed[root] = true;
        let mut head = start;
        while head < order.len() {
            let u = order[head];
            head += 1;
            let mut next: Vec<usize> = g.neighbors(u).iter().copied().filter(|&v| !placed[v]).collect();
            next.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
            for v in next {
                placed[v] = true;
                order.push(v);
            }
        }
    }
    let mut position = vec![0; g.order()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let anchor = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&u| position[u] < i)
                .min_by_key(|&u| position[u])
        })
        .collect();
    (order, anchor)
}

/// Looks for an induced copy of `pattern` in `host`.
pub fn find_induced_copy(
    host: &SignedGraph,
    pattern: &SignedGraph,
    mode: SignMode,
    budget: Option<u64>,
) -> SearchOutcome {
    Search::new(host, pattern, mode, false, budget).run()
}
