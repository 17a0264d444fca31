//! Signed graph data model.
//!
//! Vertices are dense `0..order` integers. Graphs are immutable values: every
//! transformation returns a new graph, so witnesses can always be replayed
//! against the unmodified inputs.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Sign of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_value(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A simple graph whose edges carry a [`Sign`].
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct SignedGraph {
    order: usize,
    // row-major 0/+1/-1 adjacency
    adj: Vec<i8>,
    neighbors: Vec<Vec<usize>>,
}

/// Wire form: `{"vertices": n, "edges": [[u, v, "+"|"-"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, Sign)>,
}

impl TryFrom<GraphJson> for SignedGraph {
    type Error = Error;
    fn try_from(g: GraphJson) -> Result<Self> {
        SignedGraph::new(g.vertices, &g.edges)
    }
}

impl From<SignedGraph> for GraphJson {
    fn from(g: SignedGraph) -> Self {
        GraphJson {
            vertices: g.order,
            edges: g.edges().collect(),
        }
    }
}

impl fmt::Debug for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedGraph({}; ", self.order)?;
        let mut first = true;
        for (u, v, s) in self.edges() {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{u}{s}{v}")?;
        }
        f.write_str(")")
    }
}

impl SignedGraph {
    /// Builds a graph from an explicit edge list, rejecting self-loops,
    /// duplicate pairs and out-of-range endpoints.
    pub fn new(order: usize, edges: &[(usize, usize, Sign)]) -> Result<Self> {
        let mut adj = vec![0i8; order * order];
        for &(u, v, s) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(Error::VertexOutOfRange { vertex: w, order });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if adj[u * order + v] != 0 {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u * order + v] = s.value();
            adj[v * order + u] = s.value();
        }
        Ok(Self::from_adjacency(order, adj))
    }

    /// Graph with `order` vertices and no edges.
    pub fn empty(order: usize) -> Self {
        Self::from_adjacency(order, vec![0; order * order])
    }

    pub(crate) fn from_adjacency(order: usize, adj: Vec<i8>) -> Self {
        debug_assert_eq!(adj.len(), order * order);
        let neighbors = (0..order)
            .map(|u| (0..order).filter(|&v| adj[u * order + v] != 0).collect())
            .collect();
        SignedGraph {
            order,
            adj,
            neighbors,
        }
    }

    /// Builds a graph from a symmetric `0/±1` matrix given row by row.
    pub fn from_matrix(rows: &[Vec<i8>]) -> Result<Self> {
        let n = rows.len();
        let mut edges = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if row[i] != 0 {
                return Err(Error::SelfLoop(i));
            }
            for j in 0..n {
                if rows[j][i] != row[j] {
                    return Err(Error::NotSymmetric(i, j));
                }
                if j > i && row[j] != 0 {
                    let s = Sign::from_value(row[j]).ok_or_else(|| {
                        invalid("adjacency entry", "0, 1 or -1", row[j])
                    })?;
                    edges.push((i, j, s));
                }
            }
        }
        Self::new(n, &edges)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Adjacency entry: `+1`, `-1` or `0`.
    #[inline]
    pub fn entry(&self, u: usize, v: usize) -> i8 {
        self.adj[u * self.order + v]
    }

    #[inline]
    pub fn sign(&self, u: usize, v: usize) -> Option<Sign> {
        Sign::from_value(self.entry(u, v))
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.entry(u, v) != 0
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors[u].len()
    }

    /// Edges as `(u, v, sign)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Sign)> + '_ {
        (0..self.order).flat_map(move |u| {
            self.neighbors[u]
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v, Sign::from_value(self.entry(u, v)).unwrap()))
        })
    }

    /// Dense `0/±1` adjacency rows.
    pub fn adjacency_rows(&self) -> Vec<Vec<i8>> {
        self.adj.chunks(self.order.max(1)).take(self.order).map(<[i8]>::to_vec).collect()
    }

    pub fn positive_degree(&self, u: usize) -> usize {
        self.neighbors[u].iter().filter(|&&v| self.entry(u, v) > 0).count()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order,
            })
        }
    }

    /// Switching with respect to `set`: flips the sign of every edge with
    /// exactly one endpoint in `set`.
    pub fn switch(&self, set: &SwitchingMap) -> Result<SignedGraph> {
        let flip = set.indicator(self.order)?;
        let n = self.order;
        let mut adj = self.adj.clone();
        for u in 0..n {
            for &v in &self.neighbors[u] {
                if flip[u] != flip[v] {
                    adj[u * n + v] = -adj[u * n + v];
                }
            }
        }
        Ok(SignedGraph {
            order: n,
            adj,
            neighbors: self.neighbors.clone(),
        })
    }

    /// Induced subgraph on `vertices`. Vertex `i` of the result is
    /// `vertices[i]`, so callers control the relabelling by the order of the
    /// slice.
    pub fn induced(&self, vertices: &[usize]) -> Result<SignedGraph> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut seen = vec![false; self.order];
        for &v in vertices {
            self.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::RepeatedVertex(v));
            }
        }
        let k = vertices.len();
        let mut adj = vec![0i8; k * k];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                adj[i * k + j] = self.entry(u, v);
            }
        }
        Ok(SignedGraph::from_adjacency(k, adj))
    }

    /// Same underlying graph with every sign negated.
    pub fn negated(&self) -> SignedGraph {
        SignedGraph::from_adjacency(self.order, self.adj.iter().map(|&a| -a).collect())
    }

    /// Underlying unsigned graph equality.
    pub fn same_underlying(&self, other: &SignedGraph) -> bool {
        self.order == other.order
            && self
                .adj
                .iter()
                .zip(&other.adj)
                .all(|(a, b)| (*a != 0) == (*b != 0))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.order];
        let mut out = Vec::new();
        for start in 0..self.order {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut head = 0;
            while head < members.len() {
                let u = members[head];
                head += 1;
                for &v in &self.neighbors[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = id;
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order > 0 && self.components().len() == 1
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &SignedGraph) -> SignedGraph {
        let off = self.order;
        let mut edges: Vec<_> = self.edges().collect();
        edges.extend(other.edges().map(|(u, v, s)| (u + off, v + off, s)));
        SignedGraph::new(off + other.order, &edges).expect("union of valid graphs")
    }

    /// Returns a copy with extra edges added.
    pub fn with_edges(&self, extra: &[(usize, usize, Sign)]) -> Result<SignedGraph> {
        let mut edges: Vec<_> = self.edges().collect();
        edges.extend_from_slice(extra);
        SignedGraph::new(self.order, &edges)
    }

    /// Applies a vertex relabelling `perm` (old id `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<SignedGraph> {
        if perm.len() != self.order {
            return Err(Error::DimensionMismatch(format!(
                "permutation of length {} for graph of order {}",
                perm.len(),
                self.order
            )));
        }
        let edges: Vec<_> = self.edges().map(|(u, v, s)| (perm[u], perm[v], s)).collect();
        SignedGraph::new(self.order, &edges)
    }
}

/// A switching set `U`, stored sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SwitchingMap {
    flipped: Vec<usize>,
}

impl SwitchingMap {
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = vertices.into_iter().collect();
        SwitchingMap {
            flipped: set.into_iter().collect(),
        }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.flipped
    }

    pub fn is_empty(&self) -> bool {
        self.flipped.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.flipped.binary_search(&v).is_ok()
    }

    /// `+1/-1` per vertex (`-1` on the flipped set).
    pub fn signs(&self, order: usize) -> Result<Vec<i8>> {
        Ok(self
            .indicator(order)?
            .into_iter()
            .map(|f| if f { -1 } else { 1 })
            .collect())
    }

    fn indicator(&self, order: usize) -> Result<Vec<bool>> {
        let mut flip = vec![false; order];
        for &v in &self.flipped {
            if v >= order {
                return Err(Error::VertexOutOfRange { vertex: v, order });
            }
            flip[v] = true;
        }
        Ok(flip)
    }

    /// Symmetric difference: switching by `self` then by `other`.
    pub fn compose(&self, other: &SwitchingMap) -> SwitchingMap {
        let a: BTreeSet<_> = self.flipped.iter().copied().collect();
        let b: BTreeSet<_> = other.flipped.iter().copied().collect();
        SwitchingMap::new(a.symmetric_difference(&b).copied())
    }
}

/// Named generators for the graphs that appear throughout the theory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StandardFamily {
    /// `(K_t, +)`
    CompletePlus,
    /// `(K_t, -)`
    CompleteMinus,
    /// `(K_{1,t}, +)`, center `0`
    StarPlus,
    /// `K~_{2t}^{(0)}`: apex `0`, positive clique on `1..=2t`, apex positive to `1..=t`
    KtildeZero,
    /// `K~_{2t}^{(-)}`: as `KtildeZero`, plus apex negative to `t+1..=2t`
    KtildeMinus,
}

/// Builds a member of a standard family. For the complete families `t` is
/// the number of vertices.
pub fn standard_family(kind: StandardFamily, t: usize) -> Result<SignedGraph> {
    if t == 0 {
        return Err(invalid("t", "at least 1", t));
    }
    let mut edges = Vec::new();
    let graph = match kind {
        StandardFamily::CompletePlus | StandardFamily::CompleteMinus => {
            let s = if kind == StandardFamily::CompletePlus {
                Sign::Plus
            } else {
                Sign::Minus
            };
            for u in 0..t {
                for v in u + 1..t {
                    edges.push((u, v, s));
                }
            }
            SignedGraph::new(t, &edges)
        }
        StandardFamily::StarPlus => {
            edges.extend((1..=t).map(|v| (0, v, Sign::Plus)));
            SignedGraph::new(t + 1, &edges)
        }
        StandardFamily::KtildeZero | StandardFamily::KtildeMinus => {
            for u in 1..=2 * t {
                for v in u + 1..=2 * t {
                    edges.push((u, v, Sign::Plus));
                }
            }
            edges.extend((1..=t).map(|v| (0, v, Sign::Plus)));
            if kind == StandardFamily::KtildeMinus {
                edges.extend((t + 1..=2 * t).map(|v| (0, v, Sign::Minus)));
            }
            SignedGraph::new(2 * t + 1, &edges)
        }
    }?;
    Ok(graph)
}

pub fn complete_plus(n: usize) -> SignedGraph {
    standard_family(StandardFamily::CompletePlus, n).expect("n >= 1")
}

pub fn complete_minus(n: usize) -> SignedGraph {
    standard_family(StandardFamily::CompleteMinus, n).expect("n >= 1")
}

pub fn star_plus(t: usize) -> SignedGraph {
    standard_family(StandardFamily::StarPlus, t).expect("t >= 1")
}

pub fn ktilde_zero(t: usize) -> SignedGraph {
    standard_family(StandardFamily::KtildeZero, t).expect("t >= 1")
}

pub fn ktilde_minus(t: usize) -> SignedGraph {
    standard_family(StandardFamily::KtildeMinus, t).expect("t >= 1")
}
