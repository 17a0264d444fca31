//! Positive cliques, their m-neighbourhoods and quasi-positive-cliques.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{SignedGraph, SwitchingMap};

/// A vertex set inducing `(K_k, +)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PositiveClique {
    pub vertices: Vec<usize>,
    pub maximal: bool,
}

impl PositiveClique {
    /// Validates that `vertices` is a positive clique of `g` and records
    /// whether it is maximal.
    pub fn new(g: &SignedGraph, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut vertices: Vec<usize> = vertices.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        for &v in &vertices {
            g.check_vertex(v)?;
        }
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                if g.entry(u, v) != 1 {
                    return Err(Error::NotPositiveClique(vertices));
                }
            }
        }
        let maximal = !g
            .vertices()
            .any(|x| vertices.binary_search(&x).is_err() && vertices.iter().all(|&v| g.entry(x, v) == 1));
        Ok(PositiveClique { vertices, maximal })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Maximal positive cliques with at least `n_min` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueCatalog {
    pub host: SignedGraph,
    pub n_min: usize,
    pub cliques: Vec<PositiveClique>,
}

/// Bron–Kerbosch with Tomita pivoting on the positive graph. Cliques come out
/// sorted lexicographically.
pub fn maximal_positive_cliques(g: &SignedGraph, n_min: usize) -> Result<CliqueCatalog> {
    if n_min == 0 {
        return Err(invalid("n_min", "at least 1", n_min));
    }
    let n = g.order();
    let adj: Vec<FixedBitSet> = g
        .vertices()
        .map(|u| {
            let mut b = FixedBitSet::with_capacity(n);
            for &v in g.neighbors(u) {
                if g.entry(u, v) > 0 {
                    b.insert(v);
                }
            }
            b
        })
        .collect();
    let mut found = Vec::new();
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x = FixedBitSet::with_capacity(n);
    let mut r = Vec::new();
    bron_kerbosch(&adj, &mut r, p, x, n_min, &mut found);
    let mut cliques: Vec<PositiveClique> = found
        .into_iter()
        .map(|mut vertices: Vec<usize>| {
            vertices.sort_unstable();
            PositiveClique {
                vertices,
                maximal: true,
            }
        })
        .collect();
    cliques.sort();
    Ok(CliqueCatalog {
        host: g.clone(),
        n_min,
        cliques,
    })
}

fn bron_kerbosch(
    adj: &[FixedBitSet],
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    n_min: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_clear() {
        if x.is_clear() && r.len() >= n_min {
            out.push(r.clone());
        }
        return;
    }
    if r.len() + p.count_ones(..) < n_min {
        return;
    }
    // pivot maximising |P ∩ N(u)| over P ∪ X
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| p.intersection(&adj[u]).count())
        .unwrap();
    let mut candidates = p.clone();
    candidates.difference_with(&adj[pivot]);
    for v in candidates.ones().collect::<Vec<_>>() {
        r.push(v);
        let mut np = p.clone();
        np.intersect_with(&adj[v]);
        let mut nx = x.clone();
        nx.intersect_with(&adj[v]);
        bron_kerbosch(adj, r, np, nx, n_min, out);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

/// The m-positive and m-negative neighbourhoods of a positive clique.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NeighborhoodSplit {
    pub m: usize,
    /// Vertices with at least `m` positive neighbours in the clique.
    pub plus: Vec<usize>,
    /// Vertices with at least `m` negative neighbours in the clique.
    pub minus: Vec<usize>,
    /// Everything else (the unnamed third case of the trichotomy).
    pub rest: Vec<usize>,
    /// `plus ∩ minus`; empty whenever the host is K-tilde switching-free.
    pub overlap: Vec<usize>,
}

impl NeighborhoodSplit {
    pub fn is_disjoint(&self) -> bool {
        self.overlap.is_empty()
    }

    /// `N_(m)(V(C)) = plus ∪ minus`, sorted.
    pub fn union(&self) -> Vec<usize> {
        let mut u: Vec<usize> = self.plus.iter().chain(&self.minus).copied().collect();
        u.sort_unstable();
        u.dedup();
        u
    }
}

fn check_clique(g: &SignedGraph, c: &PositiveClique) -> Result<()> {
    PositiveClique::new(g, c.vertices.iter().copied()).map(|_| ())
}

fn counts_in(g: &SignedGraph, c: &PositiveClique, x: usize) -> (usize, usize, usize) {
    let (mut pos, mut neg, mut others) = (0, 0, 0);
    for &v in &c.vertices {
        if v == x {
            continue;
        }
        others += 1;
        match g.entry(x, v) {
            1 => pos += 1,
            -1 => neg += 1,
            _ => {}
        }
    }
    (pos, neg, others - pos - neg)
}

pub fn m_neighborhoods(g: &SignedGraph, c: &PositiveClique, m: usize) -> Result<NeighborhoodSplit> {
    if m == 0 {
        return Err(invalid("m", "at least 1", m));
    }
    check_clique(g, c)?;
    let mut split = NeighborhoodSplit {
        m,
        plus: vec![],
        minus: vec![],
        rest: vec![],
        overlap: vec![],
    };
    for x in g.vertices() {
        let (pos, neg, _) = counts_in(g, c, x);
        let (p, q) = (pos >= m, neg >= m);
        if p {
            split.plus.push(x);
        }
        if q {
            split.minus.push(x);
        }
        if p && q {
            split.overlap.push(x);
        }
        if !p && !q {
            split.rest.push(x);
        }
    }
    Ok(split)
}

/// Which branch of the trichotomy a vertex falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrichotomyCase {
    /// In the m-positive neighbourhood with few negative and non-neighbours.
    Positive,
    /// In the m-negative neighbourhood with few positive and non-neighbours.
    Negative,
    /// Few positive and few negative neighbours.
    Sparse,
    Violation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexTrichotomy {
    pub vertex: usize,
    pub positive: usize,
    pub negative: usize,
    pub non_adjacent: usize,
    pub case: TrichotomyCase,
    /// For violations: a vertex set inducing a copy of `K~_{2m}^{(0)}` or
    /// `K~_{2m}^{(-)}` up to switching.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrichotomyReport {
    pub m: usize,
    pub vertices: Vec<VertexTrichotomy>,
}

impl TrichotomyReport {
    pub fn violations(&self) -> impl Iterator<Item = &VertexTrichotomy> {
        self.vertices.iter().filter(|v| v.case == TrichotomyCase::Violation)
    }
}

/// Classifies every vertex against a clique with at least `3m - 2`
/// vertices. In a K-tilde switching-free host there are no violations.
pub fn trichotomy_check(g: &SignedGraph, c: &PositiveClique, m: usize) -> Result<TrichotomyReport> {
    if m == 0 {
        return Err(invalid("m", "at least 1", m));
    }
    check_clique(g, c)?;
    let required = 3 * m - 2;
    if c.len() < required {
        return Err(Error::CliqueTooSmall {
            size: c.len(),
            required,
        });
    }
    let vertices = g
        .vertices()
        .map(|x| {
            let (pos, neg, non) = counts_in(g, c, x);
            let few = |k: usize| k < m;
            let case = if pos >= m && few(neg) && few(non) {
                TrichotomyCase::Positive
            } else if neg >= m && few(pos) && few(non) {
                TrichotomyCase::Negative
            } else if few(pos) && few(neg) {
                TrichotomyCase::Sparse
            } else {
                TrichotomyCase::Violation
            };
            let witness = (case == TrichotomyCase::Violation).then(|| ktilde_witness(g, c, x, m));
            VertexTrichotomy {
                vertex: x,
                positive: pos,
                negative: neg,
                non_adjacent: non,
                case,
                witness,
            }
        })
        .collect();
    Ok(TrichotomyReport { m, vertices })
}

/// Apex `x` plus `m` clique vertices from each of two of its three
/// adjacency classes (at least two classes have `m` members).
fn ktilde_witness(g: &SignedGraph, c: &PositiveClique, x: usize, m: usize) -> Vec<usize> {
    let mut classes: [Vec<usize>; 3] = Default::default();
    for &v in c.vertices.iter().filter(|&&v| v != x) {
        let idx = match g.entry(x, v) {
            1 => 0,
            -1 => 1,
            _ => 2,
        };
        classes[idx].push(v);
    }
    let mut out = vec![x];
    for class in classes.iter().filter(|cl| cl.len() >= m).take(2) {
        out.extend_from_slice(&class[..m]);
    }
    out.sort_unstable();
    out
}

/// Counts behind [`clique_relation`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationEvidence {
    /// `|V(C') ∩ N⁺_(m)(V(C))|`
    pub in_plus: usize,
    /// `|V(C') ∩ N⁻_(m)(V(C))|`
    pub in_minus: usize,
    /// Largest number of neighbours in `C` over the remaining vertices of `C'`.
    pub max_other_neighbors: usize,
    pub same_neighborhood: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "relation", rename_all = "snake_case")]
pub enum CliqueRelation {
    Separated(RelationEvidence),
    SameNeighborhood(RelationEvidence),
}

/// Decides which alternative of the two-clique dichotomy holds. Both cliques
/// need at least `2(m² + m)` vertices. If neither alternative holds the host
/// was not K-tilde switching-free and a [`Error::CliqueRelationViolated`] is raised.
pub fn clique_relation(
    g: &SignedGraph,
    c: &PositiveClique,
    c2: &PositiveClique,
    m: usize,
) -> Result<CliqueRelation> {
    if m == 0 {
        return Err(invalid("m", "at least 1", m));
    }
    let required = 2 * (m * m + m);
    for k in [c, c2] {
        if k.len() < required {
            return Err(Error::CliqueTooSmall {
                size: k.len(),
                required,
            });
        }
    }
    let s1 = m_neighborhoods(g, c, m)?;
    let s2 = m_neighborhoods(g, c2, m)?;
    let in_set = |set: &[usize], v: usize| set.binary_search(&v).is_ok();
    let mut ev = RelationEvidence {
        in_plus: 0,
        in_minus: 0,
        max_other_neighbors: 0,
        same_neighborhood: s1.union() == s2.union(),
    };
    for &v in &c2.vertices {
        let p = in_set(&s1.plus, v);
        let q = in_set(&s1.minus, v);
        ev.in_plus += usize::from(p);
        ev.in_minus += usize::from(q);
        if !p && !q {
            let (pos, neg, _) = counts_in(g, c, v);
            ev.max_other_neighbors = ev.max_other_neighbors.max(pos + neg);
        }
    }
    let separated = ev.in_plus < m && ev.in_minus < m && ev.max_other_neighbors <= 2 * m - 2;
    match (separated, ev.same_neighborhood) {
        (true, false) => Ok(CliqueRelation::Separated(ev)),
        (false, true) => Ok(CliqueRelation::SameNeighborhood(ev)),
        _ => Err(Error::CliqueRelationViolated(format!(
            "in_plus={}, in_minus={}, max_other_neighbors={}, same_neighborhood={}",
            ev.in_plus, ev.in_minus, ev.max_other_neighbors, ev.same_neighborhood
        ))),
    }
}

/// Induced subgraph on `N⁺ ∪ N⁻` switched on the `N⁻` side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPositiveClique {
    /// Host vertices, sorted; vertex `i` of `graph` is `vertices[i]`.
    pub vertices: Vec<usize>,
    /// Host vertices that were switched (the minus side).
    pub switch_set: Vec<usize>,
    pub graph: SignedGraph,
}

pub fn quasi_positive_clique(g: &SignedGraph, c: &PositiveClique, m: usize) -> Result<QuasiPositiveClique> {
    let split = m_neighborhoods(g, c, m)?;
    qpc_from_split(g, &split, c)
}

pub(crate) fn qpc_from_split(
    g: &SignedGraph,
    split: &NeighborhoodSplit,
    c: &PositiveClique,
) -> Result<QuasiPositiveClique> {
    if let Some(&vertex) = split.overlap.first() {
        return Err(Error::NeighborhoodOverlap {
            vertex,
            witness: ktilde_witness(g, c, vertex, split.m),
        });
    }
    let vertices = split.union();
    let induced = g.induced(&vertices)?;
    let local = SwitchingMap::new(
        vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| split.minus.binary_search(v).is_ok())
            .map(|(i, _)| i),
    );
    Ok(QuasiPositiveClique {
        graph: induced.switch(&local)?,
        switch_set: split.minus.clone(),
        vertices,
    })
}

/// Smallest `t` such that the positive graph is a `t`-plex.
pub fn plex_degree(g: &SignedGraph) -> usize {
    g.vertices()
        .map(|v| g.order() - 1 - g.positive_degree(v))
        .max()
        .map_or(1, |worst| worst + 1)
}

/// Cliques grouped by their neighbourhood `N_(m)(V(C))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodClass {
    pub neighborhood: Vec<usize>,
    /// Lexicographically smallest member clique.
    pub representative: PositiveClique,
    pub split: NeighborhoodSplit,
    pub members: Vec<PositiveClique>,
}

/// Groups a catalog by neighbourhood, in order of first appearance.
/// `pick` chooses the representative among the (sorted) members.
pub fn neighborhood_classes(
    g: &SignedGraph,
    catalog: &CliqueCatalog,
    m: usize,
    pick: impl Fn(&[PositiveClique]) -> usize,
) -> Result<Vec<NeighborhoodClass>> {
    let mut groups: BTreeMap<Vec<usize>, (usize, Vec<(PositiveClique, NeighborhoodSplit)>)> = BTreeMap::new();
    for (i, c) in catalog.cliques.iter().enumerate() {
        let split = m_neighborhoods(g, c, m)?;
        if let Some(&vertex) = split.overlap.first() {
            return Err(Error::NeighborhoodOverlap {
                vertex,
                witness: ktilde_witness(g, c, vertex, m),
            });
        }
        groups.entry(split.union()).or_insert_with(|| (i, vec![])).1.push((c.clone(), split));
    }
    let mut classes: Vec<(usize, NeighborhoodClass)> = groups
        .into_iter()
        .map(|(neighborhood, (first, mut members))| {
            members.sort_by(|a, b| a.0.cmp(&b.0));
            let cliques: Vec<PositiveClique> = members.iter().map(|(c, _)| c.clone()).collect();
            let chosen = pick(&cliques).min(cliques.len() - 1);
            let (representative, split) = members.swap_remove(chosen);
            (
                first,
                NeighborhoodClass {
                    neighborhood,
                    representative,
                    split,
                    members: cliques,
                },
            )
        })
        .collect();
    classes.sort_by_key(|(first, _)| *first);
    Ok(classes.into_iter().map(|(_, c)| c).collect())
}
