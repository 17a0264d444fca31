//! Hoffman signed graphs: special matrices, switching, fat-vertex expansion
//! and the Hoffman graph associated with a signed graph.

use serde::{Deserialize, Serialize};

use crate::cliques::{maximal_positive_cliques, neighborhood_classes, NeighborhoodSplit, PositiveClique};
use crate::embed::{find_induced_copy, SearchOutcome, SignMode};
use crate::error::{invalid, Error, Result};
use crate::graph::{Sign, SignedGraph, SwitchingMap};
use crate::intmat::IntMatrix;
use crate::spectra::{eigenvalues, smallest_eigenvalue, Spectrum, SymmetricMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "s")]
    Slim,
    #[serde(rename = "f")]
    Fat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HoffmanJson", into = "HoffmanJson")]
pub struct HoffmanSignedGraph {
    graph: SignedGraph,
    labels: Vec<Label>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HoffmanJson {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, Sign)>,
    pub labels: Vec<Label>,
}

impl TryFrom<HoffmanJson> for HoffmanSignedGraph {
    type Error = Error;

    fn try_from(j: HoffmanJson) -> Result<Self> {
        HoffmanSignedGraph::new(SignedGraph::new(j.vertices, &j.edges)?, j.labels)
    }
}

impl From<HoffmanSignedGraph> for HoffmanJson {
    fn from(h: HoffmanSignedGraph) -> Self {
        HoffmanJson {
            vertices: h.graph.order(),
            edges: h.graph.edges().collect(),
            labels: h.labels,
        }
    }
}

impl HoffmanSignedGraph {
    pub fn new(graph: SignedGraph, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != graph.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} vertices",
                labels.len(),
                graph.order()
            )));
        }
        for v in graph.vertices() {
            if labels[v] != Label::Fat {
                continue;
            }
            if graph.degree(v) == 0 {
                return Err(Error::InvalidHoffman(format!("fat vertex {v} has no neighbours")));
            }
            if let Some(&u) = graph.neighbors(v).iter().find(|&&u| labels[u] == Label::Fat) {
                return Err(Error::InvalidHoffman(format!("fat vertices {v} and {u} are adjacent")));
            }
        }
        Ok(HoffmanSignedGraph { graph, labels })
    }

    /// Slim vertices `0..slim.order()` followed by one fat vertex per entry of
    /// `fats`, each listing its slim neighbours with signs.
    pub fn attach(slim: &SignedGraph, fats: &[Vec<(usize, Sign)>]) -> Result<Self> {
        let s = slim.order();
        let mut edges: Vec<(usize, usize, Sign)> = slim.edges().collect();
        for (j, nb) in fats.iter().enumerate() {
            for &(x, sign) in nb {
                slim.check_vertex(x)?;
                edges.push((x, s + j, sign));
            }
        }
        let mut labels = vec![Label::Slim; s];
        labels.resize(s + fats.len(), Label::Fat);
        Self::new(SignedGraph::new(s + fats.len(), &edges)?, labels)
    }

    /// A signed graph with every vertex slim.
    pub fn slim_only(g: &SignedGraph) -> Self {
        HoffmanSignedGraph {
            graph: g.clone(),
            labels: vec![Label::Slim; g.order()],
        }
    }

    pub fn graph(&self) -> &SignedGraph {
        &self.graph
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn is_fat(&self, v: usize) -> bool {
        self.labels[v] == Label::Fat
    }

    pub fn slim_vertices(&self) -> Vec<usize> {
        self.graph.vertices().filter(|&v| !self.is_fat(v)).collect()
    }

    pub fn fat_vertices(&self) -> Vec<usize> {
        self.graph.vertices().filter(|&v| self.is_fat(v)).collect()
    }

    /// Fat neighbours of `x` with the sign of the connecting edge.
    pub fn fat_neighbors(&self, x: usize) -> Vec<(usize, i8)> {
        self.graph
            .neighbors(x)
            .iter()
            .filter(|&&f| self.is_fat(f))
            .map(|&f| (f, self.graph.entry(x, f)))
            .collect()
    }

    /// Every slim vertex has a fat neighbour.
    pub fn is_fat_graph(&self) -> bool {
        self.slim_vertices().iter().all(|&x| !self.fat_neighbors(x).is_empty())
    }

    /// Induced signed graph on the slim vertices, in increasing order.
    pub fn slim_graph(&self) -> SignedGraph {
        let slim = self.slim_vertices();
        if slim.is_empty() {
            return SignedGraph::empty(0);
        }
        self.graph.induced(&slim).expect("slim vertices are valid")
    }

    /// Induced Hoffman subgraph on `vertices` (result vertex `i` is
    /// `vertices[i]`); every retained fat vertex needs a retained neighbour.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let graph = self.graph.induced(vertices)?;
        let labels = vertices.iter().map(|&v| self.labels[v]).collect();
        Self::new(graph, labels)
    }

    /// Induced Hoffman subgraph on the given slim vertices together with
    /// every fat vertex adjacent to at least one of them.
    pub fn induced_on_slim(&self, slim: &[usize]) -> Result<Self> {
        let mut vertices = slim.to_vec();
        for &x in slim {
            if self.is_fat(x) {
                return Err(Error::NotSlim(x));
            }
        }
        for f in self.fat_vertices() {
            if slim.iter().any(|&x| self.graph.adjacent(x, f)) {
                vertices.push(f);
            }
        }
        self.induced(&vertices)
    }

    pub fn lambda_min(&self) -> f64 {
        let spec = hoffman_eigenvalues(self);
        if spec.eigenvalues.is_empty() {
            0.0
        } else {
            spec.min()
        }
    }
}

/// `S = A_s - C Cᵀ` over the slim vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialMatrix {
    /// Row `i` belongs to host vertex `slim[i]`.
    pub slim: Vec<usize>,
    pub matrix: IntMatrix,
}

impl SpecialMatrix {
    pub fn to_symmetric(&self) -> SymmetricMatrix {
        self.matrix.to_symmetric().expect("special matrices are symmetric")
    }
}

pub fn special_matrix(h: &HoffmanSignedGraph) -> SpecialMatrix {
    let slim = h.slim_vertices();
    let fats: Vec<Vec<(usize, i8)>> = slim.iter().map(|&x| h.fat_neighbors(x)).collect();
    let matrix = IntMatrix::from_fn(slim.len(), slim.len(), |i, j| {
        let a = if i == j { 0 } else { i64::from(h.graph.entry(slim[i], slim[j])) };
        a - common_fat_product(&fats[i], &fats[j])
    });
    SpecialMatrix { slim, matrix }
}

/// `Σ_F C_xF C_yF` for two sorted fat-neighbour lists.
fn common_fat_product(a: &[(usize, i8)], b: &[(usize, i8)]) -> i64 {
    let (mut i, mut j, mut total) = (0, 0, 0i64);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                total += i64::from(a[i].1 * b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
    total
}

/// `n^f(x, y)`: common fat neighbours with equal signs minus those with
/// unequal signs. For `x == y` this is the number of fat neighbours.
pub fn fat_correction(h: &HoffmanSignedGraph, x: usize, y: usize) -> Result<i64> {
    for v in [x, y] {
        h.graph.check_vertex(v)?;
        if h.is_fat(v) {
            return Err(Error::NotSlim(v));
        }
    }
    Ok(common_fat_product(&h.fat_neighbors(x), &h.fat_neighbors(y)))
}

pub fn hoffman_eigenvalues(h: &HoffmanSignedGraph) -> Spectrum {
    eigenvalues(&special_matrix(h).to_symmetric())
}

/// Switches the underlying signed graph; labels are kept.
pub fn hoffman_switch(h: &HoffmanSignedGraph, u: &SwitchingMap) -> Result<HoffmanSignedGraph> {
    Ok(HoffmanSignedGraph {
        graph: h.graph.switch(u)?,
        labels: h.labels.clone(),
    })
}

/// `G(h, n)`: slim vertices keep their relative order at the front, then each
/// fat vertex (in increasing order) becomes a block of `n` vertices forming a
/// positive clique, joined to every former neighbour with the original sign.
pub fn expand(h: &HoffmanSignedGraph, n: usize) -> Result<SignedGraph> {
    if n == 0 {
        return Err(invalid("n", "at least 1", n));
    }
    let slim = h.slim_vertices();
    let fats = h.fat_vertices();
    let mut index = vec![0; h.order()];
    for (i, &x) in slim.iter().enumerate() {
        index[x] = i;
    }
    for (j, &f) in fats.iter().enumerate() {
        index[f] = j;
    }
    let total = slim.len() + n * fats.len();
    let mut adj = vec![0i8; total * total];
    let mut put = |a: usize, b: usize, s: i8| {
        adj[a * total + b] = s;
        adj[b * total + a] = s;
    };
    for (u, v, s) in h.graph.edges() {
        match (h.is_fat(u), h.is_fat(v)) {
            (false, false) => put(index[u], index[v], s.value()),
            (false, true) | (true, false) => {
                let (x, f) = if h.is_fat(v) { (u, v) } else { (v, u) };
                let base = slim.len() + index[f] * n;
                for k in 0..n {
                    put(index[x], base + k, s.value());
                }
            }
            (true, true) => unreachable!("fat vertices are never adjacent"),
        }
    }
    for j in 0..fats.len() {
        let base = slim.len() + j * n;
        for a in 0..n {
            for b in a + 1..n {
                put(base + a, base + b, 1);
            }
        }
    }
    Ok(SignedGraph::from_adjacency(total, adj))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTable {
    /// `λ_min(h)`, the limit of the table.
    pub target: f64,
    /// `(n, λ_min(G(h, n)))`.
    pub rows: Vec<(usize, f64)>,
}

pub fn convergence_probe(h: &HoffmanSignedGraph, n_values: &[usize]) -> Result<ConvergenceTable> {
    if n_values.is_empty() {
        return Err(invalid("n_values", "nonempty", "[]"));
    }
    let rows = n_values
        .iter()
        .map(|&n| Ok((n, smallest_eigenvalue(&expand(h, n)?))))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTable {
        target: h.lambda_min(),
        rows,
    })
}

/// Where a fat vertex of an associated Hoffman graph came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FatSource {
    pub fat_vertex: usize,
    pub clique: PositiveClique,
    pub split: NeighborhoodSplit,
    /// All maximal cliques sharing this neighbourhood.
    pub class_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociatedHoffmanGraph {
    /// Slim vertices are the vertices of the input graph, in order; fat
    /// vertices follow.
    pub host: HoffmanSignedGraph,
    pub fat_sources: Vec<FatSource>,
    pub m: usize,
    pub n: usize,
    pub warnings: Vec<String>,
}

/// Clique size from which the neighbourhood lemmas are guaranteed.
pub fn clique_threshold(m: usize) -> usize {
    2 * (m * m + m)
}

/// One fat vertex per distinct `N_(m)(V(C))` over maximal positive cliques
/// with at least `n` vertices, representing each class by its
/// lexicographically smallest clique.
pub fn associated_hoffman_graph(g: &SignedGraph, m: usize, n: usize) -> Result<AssociatedHoffmanGraph> {
    associated_hoffman_graph_with(g, m, n, |_| 0)
}

/// As [`associated_hoffman_graph`], with `pick` choosing the representative
/// from the sorted clique class.
pub fn associated_hoffman_graph_with(
    g: &SignedGraph,
    m: usize,
    n: usize,
    pick: impl Fn(&[PositiveClique]) -> usize,
) -> Result<AssociatedHoffmanGraph> {
    if m == 0 {
        return Err(invalid("m", "at least 1", m));
    }
    if n == 0 {
        return Err(invalid("n", "at least 1", n));
    }
    let mut warnings = Vec::new();
    if n < clique_threshold(m) {
        warnings.push(format!(
            "exploration mode: n = {n} is below 2(m^2+m) = {}",
            clique_threshold(m)
        ));
    }
    let catalog = maximal_positive_cliques(g, n)?;
    let classes = neighborhood_classes(g, &catalog, m, pick)?;
    let s = g.order();
    let mut fats = Vec::new();
    let mut fat_sources = Vec::new();
    for class in classes {
        if class.neighborhood.is_empty() {
            warnings.push(format!(
                "clique {:?} has an empty {m}-neighbourhood and gets no fat vertex",
                class.representative.vertices
            ));
            continue;
        }
        let mut nb: Vec<(usize, Sign)> = class.split.plus.iter().map(|&x| (x, Sign::Plus)).collect();
        nb.extend(class.split.minus.iter().map(|&x| (x, Sign::Minus)));
        fats.push(nb);
        fat_sources.push(FatSource {
            fat_vertex: s + fat_sources.len(),
            clique: class.representative,
            split: class.split,
            class_size: class.members.len(),
        });
    }
    Ok(AssociatedHoffmanGraph {
        host: HoffmanSignedGraph::attach(g, &fats)?,
        fat_sources,
        m,
        n,
        warnings,
    })
}

/// Number of fat neighbours of each slim vertex.
pub fn fat_count_per_vertex(a: &AssociatedHoffmanGraph) -> Vec<usize> {
    a.host.slim_vertices().iter().map(|&x| a.host.fat_neighbors(x).len()).collect()
}

/// Looks for an induced copy of `G(h, p)` inside `g` with exact signs.
pub fn find_expansion_copy(
    g: &SignedGraph,
    h: &HoffmanSignedGraph,
    p: usize,
    budget: Option<u64>,
) -> Result<SearchOutcome> {
    let pattern = expand(h, p)?;
    Ok(find_induced_copy(g, &pattern, SignMode::Exact, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_plus, star_plus, Sign::*};
    use crate::switching::switching_equivalent;

    fn one_slim(fats: &[Sign]) -> HoffmanSignedGraph {
        let nb: Vec<Vec<(usize, Sign)>> = fats.iter().map(|&s| vec![(0, s)]).collect();
        HoffmanSignedGraph::attach(&SignedGraph::empty(1), &nb).unwrap()
    }

    #[test]
    fn validation() {
        let g = SignedGraph::new(2, &[(0, 1, Plus)]).unwrap();
        assert!(matches!(
            HoffmanSignedGraph::new(g.clone(), vec![Label::Fat, Label::Fat]),
            Err(Error::InvalidHoffman(_))
        ));
        assert!(matches!(
            HoffmanSignedGraph::new(SignedGraph::empty(2), vec![Label::Slim, Label::Fat]),
            Err(Error::InvalidHoffman(_))
        ));
        assert!(HoffmanSignedGraph::new(g.clone(), vec![Label::Slim]).is_err());
        assert!(HoffmanSignedGraph::new(g, vec![Label::Slim, Label::Fat]).is_ok());
    }

    #[test]
    fn special_matrix_examples() {
        assert_eq!(special_matrix(&one_slim(&[Plus, Plus])).matrix.to_rows(), vec![vec![-2]]);
        let slim = complete_plus(2);
        let h = HoffmanSignedGraph::attach(&slim, &[vec![(0, Plus), (1, Plus)]]).unwrap();
        assert_eq!(special_matrix(&h).matrix.to_rows(), vec![vec![-1, 0], vec![0, -1]]);
        let k3 = HoffmanSignedGraph::slim_only(&complete_plus(3));
        assert_eq!(
            special_matrix(&k3).matrix.to_rows(),
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
        );
    }

    #[test]
    fn eigenvalue_examples() {
        assert!((one_slim(&[Plus, Plus]).lambda_min() + 2.0).abs() < 1e-12);
        assert!((one_slim(&[Plus, Plus, Plus]).lambda_min() + 3.0).abs() < 1e-12);
    }

    #[test]
    fn fat_correction_examples() {
        let slim = SignedGraph::empty(2);
        let h = HoffmanSignedGraph::attach(&slim, &[vec![(0, Plus), (1, Plus)], vec![(0, Plus), (1, Plus)]]).unwrap();
        assert_eq!(fat_correction(&h, 0, 1).unwrap(), 2);
        assert_eq!(fat_correction(&h, 0, 0).unwrap(), 2);
        let h = HoffmanSignedGraph::attach(&slim, &[vec![(0, Plus), (1, Minus)]]).unwrap();
        assert_eq!(fat_correction(&h, 0, 1).unwrap(), -1);
        let h = HoffmanSignedGraph::attach(&slim, &[vec![(0, Plus)], vec![(1, Plus)]]).unwrap();
        assert_eq!(fat_correction(&h, 0, 1).unwrap(), 0);
        assert_eq!(fat_correction(&h, 0, 2), Err(Error::NotSlim(2)));
    }

    #[test]
    fn switching_one_slim_vertex_negates_its_row() {
        let slim = SignedGraph::new(3, &[(0, 1, Plus), (1, 2, Minus)]).unwrap();
        let h = HoffmanSignedGraph::attach(&slim, &[vec![(0, Plus), (2, Minus)], vec![(1, Plus), (2, Plus)]]).unwrap();
        let s = special_matrix(&h).matrix;
        let t = special_matrix(&hoffman_switch(&h, &SwitchingMap::new([2])).unwrap()).matrix;
        for i in 0..3 {
            for j in 0..3 {
                let flip = if (i == 2) != (j == 2) { -1 } else { 1 };
                assert_eq!(t.get(i, j), flip * s.get(i, j));
            }
        }
        assert_eq!(hoffman_switch(&h, &SwitchingMap::identity()).unwrap(), h);
    }

    #[test]
    fn expansion_examples() {
        let h = one_slim(&[Plus]);
        assert_eq!(expand(&h, 3).unwrap(), complete_plus(4));
        let h0 = one_slim(&[Plus, Plus]);
        assert_eq!(expand(&h0, 1).unwrap(), star_plus(2));
        assert!(expand(&h0, 0).is_err());
    }

    #[test]
    fn convergence_examples() {
        let slim = HoffmanSignedGraph::slim_only(&complete_plus(3));
        let t = convergence_probe(&slim, &[1, 5]).unwrap();
        assert!(t.rows.iter().all(|&(_, l)| (l - t.target).abs() < 1e-12));
        let h0 = one_slim(&[Plus, Plus]);
        let t = convergence_probe(&h0, &[1, 10, 100]).unwrap();
        assert!(t.rows.windows(2).all(|w| w[1].1 < w[0].1));
        assert!(t.rows.iter().all(|&(_, l)| l >= -2.0 - 1e-9));
        assert!(convergence_probe(&h0, &[]).is_err());
    }

    #[test]
    fn associated_examples() {
        let a = associated_hoffman_graph(&complete_plus(5), 2, 4).unwrap();
        assert_eq!(a.host.fat_vertices(), vec![5]);
        assert_eq!(a.host.slim_graph(), complete_plus(5));
        assert_eq!(special_matrix(&a.host).matrix, IntMatrix::identity(5).scaled(-1));
        assert_eq!(fat_count_per_vertex(&a), vec![1; 5]);
        assert!(!a.warnings.is_empty());

        let two = complete_plus(5).disjoint_union(&complete_plus(5));
        assert_eq!(associated_hoffman_graph(&two, 2, 4).unwrap().fat_sources.len(), 2);

        let sw = complete_plus(5).switch(&SwitchingMap::new([0, 1])).unwrap();
        assert!(associated_hoffman_graph(&sw, 2, 4).unwrap().fat_sources.is_empty());
        // the largest positive clique left after switching is {2, 3, 4}
        let a = associated_hoffman_graph(&sw, 2, 3).unwrap();
        assert_eq!(a.host.fat_neighbors(0), vec![(5, -1)]);
        assert_eq!(a.host.fat_neighbors(3), vec![(5, 1)]);
        assert_eq!(special_matrix(&a.host).matrix, IntMatrix::identity(5).scaled(-1));
    }

    #[test]
    fn shared_vertex_counts() {
        let edges: Vec<_> = (0..5)
            .flat_map(|a| (a + 1..5).map(move |b| (a, b, Plus)))
            .chain((4..9).flat_map(|a| (a + 1..9).map(move |b| (a, b, Plus))))
            .collect();
        let g = SignedGraph::new(9, &edges).unwrap();
        let a = associated_hoffman_graph(&g, 2, 4).unwrap();
        assert_eq!(fat_count_per_vertex(&a), vec![1, 1, 1, 1, 2, 1, 1, 1, 1]);
        let iso = SignedGraph::empty(1);
        let with_isolated = g.disjoint_union(&iso);
        assert_eq!(fat_count_per_vertex(&associated_hoffman_graph(&with_isolated, 2, 4).unwrap())[9], 0);
    }

    #[test]
    fn expansion_copy_found_in_own_expansion() {
        let h = one_slim(&[Plus, Minus]);
        let big = expand(&h, 4).unwrap();
        let e = find_expansion_copy(&big, &h, 2, None).unwrap().found().unwrap();
        assert!(e.verify(&big, &expand(&h, 2).unwrap(), SignMode::Exact));
        let q = big.induced(&{
            let mut v = e.map.clone();
            v.sort_unstable();
            v
        });
        assert!(switching_equivalent(&q.unwrap(), &expand(&h, 2).unwrap()).is_some());
    }

    #[test]
    fn json_round_trip() {
        let h = one_slim(&[Plus, Minus]);
        let s = serde_json::to_string(&h).unwrap();
        assert!(s.contains("\"labels\":[\"s\",\"f\",\"f\"]"));
        assert_eq!(serde_json::from_str::<HoffmanSignedGraph>(&s).unwrap(), h);
        let bad = r#"{"vertices":2,"edges":[[0,1,"+"]],"labels":["f","f"]}"#;
        assert!(serde_json::from_str::<HoffmanSignedGraph>(bad).is_err());
    }
}
