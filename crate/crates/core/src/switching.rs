//! Switching equivalence and pattern-freeness.

use serde::{Deserialize, Serialize};

use crate::embed::{SearchOutcome, SignMode, Search};
use crate::error::{Error, Result};
use crate::graph::{complete_minus, ktilde_minus, ktilde_zero, star_plus, Sign, SignedGraph, SwitchingMap};

/// Isomorphism `G -> H` together with a switching set on `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchingEquivalenceWitness {
    /// `isomorphism[x]` is the vertex of `H` matched with vertex `x` of `G`.
    pub isomorphism: Vec<usize>,
    pub switch_set: SwitchingMap,
}

impl SwitchingEquivalenceWitness {
    /// Checks that switching `h` on `switch_set` and pulling back along the
    /// isomorphism reproduces `g` exactly.
    pub fn verify(&self, g: &SignedGraph, h: &SignedGraph) -> bool {
        if g.order() != h.order() || self.isomorphism.len() != g.order() {
            return false;
        }
        let mut hit = vec![false; h.order()];
        for &v in &self.isomorphism {
            if v >= h.order() || std::mem::replace(&mut hit[v], true) {
                return false;
            }
        }
        let Ok(switched) = h.switch(&self.switch_set) else {
            return false;
        };
        g.vertices().all(|x| {
            g.vertices()
                .all(|y| g.entry(x, y) == switched.entry(self.isomorphism[x], self.isomorphism[y]))
        })
    }

    /// Witness for `H ~ G` from a witness for `G ~ H`.
    pub fn inverse(&self) -> SwitchingEquivalenceWitness {
        let mut inv = vec![0; self.isomorphism.len()];
        for (x, &y) in self.isomorphism.iter().enumerate() {
            inv[y] = x;
        }
        SwitchingEquivalenceWitness {
            switch_set: SwitchingMap::new(self.switch_set.vertices().iter().map(|&y| inv[y])),
            isomorphism: inv,
        }
    }

    /// Given `self: G ~ H` and `next: H ~ K`, a witness for `G ~ K`.
    pub fn then(&self, next: &SwitchingEquivalenceWitness) -> SwitchingEquivalenceWitness {
        let isomorphism: Vec<usize> = self.isomorphism.iter().map(|&y| next.isomorphism[y]).collect();
        let moved = SwitchingMap::new(self.switch_set.vertices().iter().map(|&y| next.isomorphism[y]));
        SwitchingEquivalenceWitness {
            isomorphism,
            switch_set: moved.compose(&next.switch_set),
        }
    }
}

/// Sign of the fundamental cycle closed by each non-tree edge of a
/// breadth-first spanning forest (roots at the smallest vertex of each
/// component). Entries are `(u, v, sign)` with `u < v`.
pub fn fundamental_cycle_signs(g: &SignedGraph) -> Vec<(usize, usize, Sign)> {
    let (parent, potential) = spanning_potential(g);
    g.edges()
        .filter(|&(u, v, _)| parent[u] != Some(v) && parent[v] != Some(u))
        .map(|(u, v, s)| {
            let value = s.value() * potential[u] * potential[v];
            (u, v, Sign::from_value(value).unwrap())
        })
        .collect()
}

/// Breadth-first forest; `potential[v]` is the product of tree-edge signs on
/// the root path to `v`.
fn spanning_potential(g: &SignedGraph) -> (Vec<Option<usize>>, Vec<i8>) {
    let n = g.order();
    let mut parent = vec![None; n];
    let mut potential = vec![0i8; n];
    for root in 0..n {
        if potential[root] != 0 {
            continue;
        }
        potential[root] = 1;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if potential[v] == 0 {
                    potential[v] = potential[u] * g.entry(u, v);
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
    }
    (parent, potential)
}

/// Fast path for two signings of the same underlying graph: returns `U` with
/// `switch(g, U) == h`, or `None` when the signings are not switching
/// equivalent (or the underlying graphs differ). Runs in `O(V + E)` after the
/// dense comparison of underlying graphs.
pub fn switching_between(g: &SignedGraph, h: &SignedGraph) -> Option<SwitchingMap> {
    if !g.same_underlying(h) {
        return None;
    }
    let cycles_g = fundamental_cycle_signs(g);
    let cycles_h = fundamental_cycle_signs(h);
    if cycles_g != cycles_h {
        return None;
    }
    let (_, pg) = spanning_potential(g);
    let (_, ph) = spanning_potential(h);
    Some(SwitchingMap::new(g.vertices().filter(|&v| pg[v] != ph[v])))
}

/// Full switching equivalence: an isomorphism of underlying graphs followed
/// by a switching. Returns a replayable witness.
pub fn switching_equivalent(g: &SignedGraph, h: &SignedGraph) -> Option<SwitchingEquivalenceWitness> {
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return None;
    }
    let mut dg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = h.vertices().map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return None;
    }
    if let Some(u) = switching_between(g, h) {
        return Some(SwitchingEquivalenceWitness {
            isomorphism: g.vertices().collect(),
            switch_set: u,
        });
    }
    match Search::new(h, g, SignMode::UpToSwitching, true, None).run() {
        SearchOutcome::Found(e) => Some(SwitchingEquivalenceWitness {
            switch_set: SwitchingMap::new(e.host_switch_set()),
            isomorphism: e.map,
        }),
        _ => None,
    }
}

/// A named list of forbidden patterns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternFamily {
    pub name: String,
    patterns: Vec<SignedGraph>,
}

impl PatternFamily {
    pub fn new(name: impl Into<String>, patterns: Vec<SignedGraph>) -> Result<Self> {
        if patterns.iter().any(|p| p.order() == 0) {
            return Err(Error::EmptyVertexSet);
        }
        Ok(PatternFamily {
            name: name.into(),
            patterns,
        })
    }

    pub fn patterns(&self) -> &[SignedGraph] {
        &self.patterns
    }

    /// `{K~_{2m}^{(0)}, K~_{2m}^{(-)}}`.
    pub fn ktilde(m: usize) -> Self {
        PatternFamily {
            name: format!("ktilde_{}", 2 * m),
            patterns: vec![ktilde_zero(m), ktilde_minus(m)],
        }
    }

    /// `{K~_{2t}^{(0)}, K~_{2t}^{(-)}, (K_{t+1}, -), (K_{1,t}, +)}`.
    pub fn bounded_eigenvalue(t: usize) -> Self {
        PatternFamily {
            name: format!("forbidden_t{t}"),
            patterns: vec![ktilde_zero(t), ktilde_minus(t), complete_minus(t + 1), star_plus(t)],
        }
    }

    /// `{(K_3, -), (K_{1,2}, +)}`.
    pub fn sqrt2_obstructions() -> Self {
        PatternFamily {
            name: "sqrt2".into(),
            patterns: vec![complete_minus(3), star_plus(2)],
        }
    }
}

/// Where a pattern was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternWitness {
    pub pattern_index: usize,
    /// Sorted host vertex set inducing the copy.
    pub vertices: Vec<usize>,
    /// `mapping[p]` is the host vertex for pattern vertex `p`.
    pub mapping: Vec<usize>,
    /// Host vertices to switch so the copy matches the pattern exactly.
    pub switch_set: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCheck {
    pub free: bool,
    pub witness: Option<PatternWitness>,
}

/// `true` iff no induced subgraph of `g` is switching equivalent to a member
/// of `family`; otherwise the first offending copy.
pub fn is_pattern_free(g: &SignedGraph, family: &PatternFamily) -> PatternCheck {
    for (index, pattern) in family.patterns.iter().enumerate() {
        if let SearchOutcome::Found(e) = Search::new(g, pattern, SignMode::UpToSwitching, false, None).run() {
            let mut vertices = e.map.clone();
            vertices.sort_unstable();
            return PatternCheck {
                free: false,
                witness: Some(PatternWitness {
                    pattern_index: index,
                    vertices,
                    switch_set: e.host_switch_set(),
                    mapping: e.map,
                }),
            };
        }
    }
    PatternCheck {
        free: true,
        witness: None,
    }
}
