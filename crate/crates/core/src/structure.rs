//! Decomposition of signed graphs into quasi-positive-cliques, its
//! verifier, and the small catalogs behind the structure results: the
//! forbidden special matrices for `-2`, the families used to bound the
//! smallest eigenvalue, and the classifier for graphs above `-√2`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cliques::{m_neighborhoods, plex_degree, PositiveClique};
use crate::error::{invalid, Error, Result};
use crate::graph::{Sign, SignedGraph, StandardFamily, SwitchingMap};
use crate::hoffman::{associated_hoffman_graph, special_matrix, HoffmanSignedGraph};
use crate::intmat::IntMatrix;
use crate::spectra::eigenvalues;
use crate::switching::switching_equivalent;

/// User-supplied constants: named κ values and Ramsey numbers keyed `"m,s,t"`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KappaConfig {
    #[serde(default)]
    pub kappa: BTreeMap<String, u64>,
    #[serde(default)]
    pub ramsey: BTreeMap<String, u64>,
}

impl KappaConfig {
    pub fn ramsey(&self, m: u64, s: u64, t: u64) -> Option<u64> {
        self.ramsey.get(&format!("{m},{s},{t}")).copied()
    }

    pub fn validate(&self) -> Result<()> {
        for key in self.ramsey.keys() {
            let parts: Vec<&str> = key.split(',').collect();
            if parts.len() != 3 || parts.iter().any(|p| p.trim().parse::<u64>().is_err()) {
                return Err(invalid("ramsey key", "of the form \"m,s,t\"", key));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionParams {
    pub m: usize,
    pub n: usize,
    /// Eigenvalue bound used when checking the output.
    pub lambda: Option<f64>,
    /// Bound on the residual valency, if one should be checked.
    pub valency_bound: Option<usize>,
    pub kappa: Option<KappaConfig>,
}

impl DecompositionParams {
    pub fn new(m: usize, n: usize) -> Self {
        DecompositionParams {
            m,
            n,
            lambda: None,
            valency_bound: None,
            kappa: None,
        }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(invalid("m", "at least 2", self.m));
        }
        if self.n == 0 {
            return Err(invalid("n", "at least 1", self.n));
        }
        if let Some(l) = self.lambda {
            if !(l <= -1.0) {
                return Err(invalid("lambda", "at most -1", l));
            }
        }
        if let Some(k) = &self.kappa {
            k.validate()?;
        }
        Ok(())
    }
}

/// One induced subgraph `N_i` on `N_(m)(V(C_i))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub clique: Vec<usize>,
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    /// `plus ∪ minus`, sorted; vertex `i` of `graph` is `vertices[i]`.
    pub vertices: Vec<usize>,
    pub graph: SignedGraph,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub pieces: Vec<Piece>,
    /// Same vertex set as the input, minus every edge inside a piece.
    pub residual: SignedGraph,
    pub params: DecompositionParams,
    pub warnings: Vec<String>,
}

pub fn decompose(g: &SignedGraph, params: &DecompositionParams) -> Result<Decomposition> {
    params.validate()?;
    let assoc = associated_hoffman_graph(g, params.m, params.n)?;
    let pieces: Vec<Piece> = assoc
        .fat_sources
        .iter()
        .map(|src| {
            let vertices = src.split.union();
            Ok(Piece {
                clique: src.clique.vertices.clone(),
                plus: src.split.plus.clone(),
                minus: src.split.minus.clone(),
                graph: g.induced(&vertices)?,
                vertices,
            })
        })
        .collect::<Result<_>>()?;
    let residual = residual_graph(g, pieces.iter().map(|p| p.vertices.as_slice()));
    Ok(Decomposition {
        pieces,
        residual,
        params: params.clone(),
        warnings: assoc.warnings,
    })
}

fn residual_graph<'a>(g: &SignedGraph, pieces: impl Iterator<Item = &'a [usize]>) -> SignedGraph {
    let n = g.order();
    let mut covered = vec![false; n * n];
    for vs in pieces {
        for &u in vs {
            for &v in vs {
                if u < n && v < n {
                    covered[u * n + v] = true;
                }
            }
        }
    }
    let kept: Vec<(usize, usize, Sign)> = g.edges().filter(|&(u, v, _)| !covered[u * n + v]).collect();
    SignedGraph::new(n, &kept).expect("subset of a valid edge list")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub value: usize,
    pub bound: i64,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub pieces: usize,
    pub membership: Vec<usize>,
    pub max_membership: usize,
    /// Vertices lying in no piece.
    pub coverage_gaps: Vec<usize>,
    pub plex_degrees: Vec<usize>,
    pub max_pairwise_intersection: usize,
    pub residual_max_valency: usize,
    pub bounds_checked: Vec<BoundCheck>,
    /// Pieces or residual that do not match a recomputation from the input.
    pub integrity_issues: Vec<String>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.integrity_issues.is_empty() && self.bounds_checked.iter().all(|b| b.satisfied)
    }
}

/// Recomputes every statistic from the raw pieces and checks them against
/// the bounds implied by `params.lambda`. Problems are reported, not raised.
pub fn verify_decomposition(g: &SignedGraph, d: &Decomposition) -> DecompositionReport {
    let n = g.order();
    let m = d.params.m;
    let mut issues = Vec::new();
    for (i, p) in d.pieces.iter().enumerate() {
        issues.extend(piece_issues(g, p, m, d.params.n).into_iter().map(|e| format!("piece {i}: {e}")));
    }
    let in_range: Vec<Vec<usize>> = d
        .pieces
        .iter()
        .map(|p| p.vertices.iter().copied().filter(|&v| v < n).collect())
        .collect();
    if d.residual != residual_graph(g, in_range.iter().map(Vec::as_slice)) {
        issues.push("residual does not equal the input minus the piece edges".into());
    }

    let mut membership = vec![0; n];
    for vs in &in_range {
        for &v in vs {
            membership[v] += 1;
        }
    }
    let max_membership = membership.iter().copied().max().unwrap_or(0);
    let coverage_gaps = (0..n).filter(|&v| membership[v] == 0).collect();
    let plex_degrees = d.pieces.iter().map(piece_plex_degree).collect::<Vec<_>>();
    let mut max_pairwise_intersection = 0;
    for (i, a) in in_range.iter().enumerate() {
        for b in &in_range[i + 1..] {
            let common = a.iter().filter(|v| b.binary_search(v).is_ok()).count();
            max_pairwise_intersection = max_pairwise_intersection.max(common);
        }
    }
    let residual_max_valency = d.residual.vertices().map(|v| d.residual.degree(v)).max().unwrap_or(0);

    let mut bounds_checked = Vec::new();
    let mut check = |name: &str, value: usize, bound: i64| {
        bounds_checked.push(BoundCheck {
            name: name.into(),
            value,
            bound,
            satisfied: (value as i64) <= bound,
        })
    };
    if let Some(lambda) = d.params.lambda {
        let fl = (-lambda).floor() as i64;
        check("max_membership", max_membership, fl);
        check(
            "plex_degree",
            plex_degrees.iter().copied().max().unwrap_or(0),
            (lambda * lambda + 2.0 * lambda + 2.0).floor() as i64,
        );
        check("pairwise_intersection", max_pairwise_intersection, 4 * fl - 4);
    }
    if let Some(bound) = d.params.valency_bound {
        check("residual_valency", residual_max_valency, bound as i64);
    }
    DecompositionReport {
        pieces: d.pieces.len(),
        membership,
        max_membership,
        coverage_gaps,
        plex_degrees,
        max_pairwise_intersection,
        residual_max_valency,
        bounds_checked,
        integrity_issues: issues,
    }
}

fn piece_issues(g: &SignedGraph, p: &Piece, m: usize, n: usize) -> Vec<String> {
    let mut out = Vec::new();
    let clique = match PositiveClique::new(g, p.clique.iter().copied()) {
        Ok(c) => c,
        Err(e) => return vec![format!("recorded clique is invalid: {e}")],
    };
    if !clique.maximal || clique.len() < n {
        out.push(format!("clique of size {} is not a maximal positive clique with at least {n} vertices", clique.len()));
    }
    match m_neighborhoods(g, &clique, m) {
        Ok(split) => {
            if split.plus != p.plus || split.minus != p.minus || split.union() != p.vertices {
                out.push("vertex sets differ from the recomputed neighbourhood".into());
            }
        }
        Err(e) => out.push(e.to_string()),
    }
    match g.induced(&p.vertices) {
        Ok(h) if h == p.graph => {}
        Ok(_) => out.push("graph is not the induced subgraph on its vertices".into()),
        Err(e) => out.push(e.to_string()),
    }
    out
}

/// Plex degree of the piece switched on its minus side.
fn piece_plex_degree(p: &Piece) -> usize {
    let local = SwitchingMap::new(
        p.vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| p.minus.binary_search(v).is_ok())
            .map(|(i, _)| i),
    );
    match p.graph.switch(&local) {
        Ok(q) => plex_degree(&q),
        Err(_) => usize::MAX,
    }
}

/// `-t(t-1)(t-2)κ/2 - 2tκ + κ + t - 1`.
pub fn lower_bound_from_kappa(t: u64, kappa: u64) -> Result<f64> {
    if t < 2 {
        return Err(invalid("t", "at least 2", t));
    }
    if kappa == 0 {
        return Err(invalid("kappa", "at least 1", kappa));
    }
    let (t, k) = (t as f64, kappa as f64);
    Ok(-t * (t - 1.0) * (t - 2.0) * k / 2.0 - 2.0 * t * k + k + t - 1.0)
}

/// Largest slim count enumerated by [`sigma_families`].
pub const SIGMA_SLIM_LIMIT: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaFamilies {
    pub lambda: f64,
    /// One slim vertex positively adjacent to `⌊-λ⌋ + 1` fat vertices.
    pub h0: HoffmanSignedGraph,
    /// One fat vertex positive to `⌊(λ+1)²⌋ + 2` slim vertices, one of which
    /// is non-positively adjacent to all others; up to isomorphism.
    pub f1: Vec<HoffmanSignedGraph>,
    /// Two fat vertices positive to all `⌊-λ⌋` slim vertices; up to
    /// isomorphism.
    pub f2: Vec<HoffmanSignedGraph>,
}

pub fn sigma_families(lambda: f64) -> Result<SigmaFamilies> {
    if !(lambda < -1.0) {
        return Err(invalid("lambda", "below -1", lambda));
    }
    let fl = (-lambda).floor() as usize;
    let h0 = HoffmanSignedGraph::attach(&SignedGraph::empty(1), &vec![vec![(0, Sign::Plus)]; fl + 1])?;

    let f1_slim = ((lambda + 1.0) * (lambda + 1.0)).floor() as usize + 2;
    for (name, k) in [("f1 slim vertices", f1_slim), ("f2 slim vertices", fl)] {
        if k > SIGMA_SLIM_LIMIT {
            return Err(Error::SearchTooLarge(format!("{name}: {k} > {SIGMA_SLIM_LIMIT}")));
        }
    }
    let all = |k: usize, fats: usize| -> Vec<Vec<(usize, Sign)>> { vec![(0..k).map(|x| (x, Sign::Plus)).collect(); fats] };
    let f1 = slim_graphs_up_to_isomorphism(f1_slim, |a, k| (1..k).all(|y| a[y] <= 0))
        .into_iter()
        .map(|g| HoffmanSignedGraph::attach(&g, &all(f1_slim, 1)))
        .collect::<Result<Vec<_>>>()?;
    let f2 = slim_graphs_up_to_isomorphism(fl, |_, _| true)
        .into_iter()
        .map(|g| HoffmanSignedGraph::attach(&g, &all(fl, 2)))
        .collect::<Result<Vec<_>>>()?;

    for h in std::iter::once(&h0).chain(&f1).chain(&f2) {
        let l = h.lambda_min();
        if !(l < lambda) {
            return Err(Error::Internal(format!("family member with smallest eigenvalue {l} >= {lambda}")));
        }
    }
    Ok(SigmaFamilies { lambda, h0, f1, f2 })
}

/// All signed graphs on `k` vertices, up to isomorphism, such that
/// `row0_ok(row of vertex 0, k)` holds for the labelled representative
/// being enumerated.
fn slim_graphs_up_to_isomorphism(k: usize, row0_ok: impl Fn(&[i8], usize) -> bool) -> Vec<SignedGraph> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let perms = permutations(k);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let total = 3usize.pow(pairs.len() as u32);
    for code in 0..total {
        let mut adj = vec![0i8; k * k];
        let mut c = code;
        for &(i, j) in &pairs {
            let v = (c % 3) as i8 - 1;
            c /= 3;
            adj[i * k + j] = v;
            adj[j * k + i] = v;
        }
        if k > 0 && !row0_ok(&adj[..k], k) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| pairs.iter().map(|&(i, j)| adj[p[i] * k + p[j]]).collect::<Vec<i8>>())
            .min()
            .unwrap_or_default();
        if seen.insert(canon) {
            let rows: Vec<Vec<i8>> = (0..k).map(|i| adj[i * k..(i + 1) * k].to_vec()).collect();
            out.push(SignedGraph::from_matrix(&rows).expect("valid adjacency"));
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogSource {
    /// `(-3)` and the 2×2 family with a slim vertex of fat degree 2.
    ParameterizedFamily,
    /// Every slim vertex has exactly one fat neighbour.
    FixedList,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub matrix: IntMatrix,
    pub source: CatalogSource,
    pub lambda_min: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForbiddenCatalog {
    pub entries: Vec<CatalogEntry>,
}

/// Special matrices of the minimal forbidden fat Hoffman signed graphs for
/// the bound `-2`.
pub fn catalog_f_minus2() -> ForbiddenCatalog {
    let mut raw: Vec<(Vec<Vec<i64>>, CatalogSource)> = vec![(vec![vec![-3]], CatalogSource::ParameterizedFamily)];
    for a1 in [-1i64, -2] {
        for mag in 1..=(1 - a1) {
            for a2 in [mag, -mag] {
                raw.push((vec![vec![-2, a2], vec![a2, a1]], CatalogSource::ParameterizedFamily));
            }
        }
    }
    let listed: [Vec<Vec<i64>>; 7] = [
        vec![vec![-1, 2], vec![2, -1]],
        vec![vec![-1, -2], vec![-2, -1]],
        vec![vec![-1, -1, 1], vec![-1, -1, 1], vec![1, 1, -1]],
        vec![vec![-1, -1, -1], vec![-1, -1, -1], vec![-1, -1, -1]],
        vec![vec![-1, 1, 1], vec![1, -1, 0], vec![1, 0, -1]],
        vec![vec![-1, -1, 1], vec![-1, -1, 0], vec![1, 0, -1]],
        vec![vec![-1, -1, -1], vec![-1, -1, 0], vec![-1, 0, -1]],
    ];
    raw.extend(listed.into_iter().map(|m| (m, CatalogSource::FixedList)));
    let entries = raw
        .into_iter()
        .map(|(rows, source)| {
            let matrix = IntMatrix::from_rows(&rows, rows.len()).expect("square");
            let lambda_min = eigenvalues(&matrix.to_symmetric().expect("symmetric")).min();
            CatalogEntry {
                matrix,
                source,
                lambda_min,
            }
        })
        .collect();
    ForbiddenCatalog { entries }
}

/// Canonical form of a small integer matrix under simultaneous permutation
/// and `±1` diagonal conjugation.
fn signed_canonical(m: &IntMatrix) -> Vec<i64> {
    let k = m.rows();
    let mut best: Option<Vec<i64>> = None;
    for p in permutations(k) {
        for mask in 0..(1u32 << k) {
            let s = |i: usize| if mask >> i & 1 == 1 { -1 } else { 1 };
            let code: Vec<i64> = (0..k)
                .flat_map(|i| (0..k).map(move |j| (i, j)))
                .map(|(i, j)| s(i) * s(j) * m.get(p[i], p[j]))
                .collect();
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
    }
    best.unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenWitness {
    pub slim: Vec<usize>,
    pub fat: Vec<usize>,
    pub catalog_index: usize,
}

fn subsets_up_to(items: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &x in items {
        let grown: Vec<Vec<usize>> = out
            .iter()
            .filter(|s| s.len() < max)
            .map(|s| {
                let mut t = s.clone();
                t.push(x);
                t
            })
            .collect();
        out.extend(grown);
    }
    out.retain(|s| !s.is_empty());
    out.sort_by_key(|s| s.len());
    out
}

/// Searches induced fat subgraphs with at most 3 slim and 4 fat vertices
/// whose special matrix matches a catalog entry.
pub fn contains_minimal_forbidden(h: &HoffmanSignedGraph) -> Result<Option<ForbiddenWitness>> {
    if !h.is_fat_graph() {
        return Err(Error::InvalidHoffman("every slim vertex needs a fat neighbour".into()));
    }
    let catalog: Vec<Vec<i64>> = catalog_f_minus2().entries.iter().map(|e| signed_canonical(&e.matrix)).collect();
    for slim in subsets_up_to(&h.slim_vertices(), 3) {
        let mut near: Vec<usize> = slim.iter().flat_map(|&x| h.fat_neighbors(x)).map(|(f, _)| f).collect();
        near.sort_unstable();
        near.dedup();
        for fat in subsets_up_to(&near, 4) {
            if !slim.iter().all(|&x| fat.iter().any(|&f| h.graph().adjacent(x, f))) {
                continue;
            }
            let mut vs = slim.clone();
            vs.extend(&fat);
            let sub = h.induced(&vs)?;
            let code = signed_canonical(&special_matrix(&sub).matrix);
            if let Some(catalog_index) = catalog.iter().position(|c| *c == code) {
                return Ok(Some(ForbiddenWitness {
                    slim,
                    fat,
                    catalog_index,
                }));
            }
        }
    }
    Ok(None)
}

/// A fat Hoffman graph with special matrix `s` and the fewest fat vertices
/// (at most `max_fat`), preferring one that is minimal forbidden for `-2`.
pub fn realize_special_matrix(s: &IntMatrix, max_fat: usize) -> Option<HoffmanSignedGraph> {
    let k = s.rows();
    let columns: Vec<Vec<i8>> = (1..3usize.pow(k as u32))
        .map(|mut c| {
            (0..k)
                .map(|_| {
                    let v = (c % 3) as i8 - 1;
                    c /= 3;
                    v
                })
                .collect()
        })
        .filter(|col: &Vec<i8>| col.iter().any(|&v| v != 0))
        .collect();
    for f in 1..=max_fat {
        let mut first = None;
        let mut pick = vec![0usize; f];
        loop {
            if let Some(h) = realization(s, &columns, &pick) {
                if is_minimal_forbidden(&h) {
                    return Some(h);
                }
                first.get_or_insert(h);
            }
            // next nondecreasing index tuple
            let mut i = f;
            while i > 0 && pick[i - 1] == columns.len() - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            pick[i - 1] += 1;
            let v = pick[i - 1];
            for p in &mut pick[i..] {
                *p = v;
            }
        }
        if first.is_some() {
            return first;
        }
    }
    None
}

fn realization(s: &IntMatrix, columns: &[Vec<i8>], pick: &[usize]) -> Option<HoffmanSignedGraph> {
    let k = s.rows();
    let cct = |x: usize, y: usize| -> i64 { pick.iter().map(|&c| i64::from(columns[c][x] * columns[c][y])).sum() };
    let mut rows = vec![vec![0i8; k]; k];
    for x in 0..k {
        if cct(x, x) == 0 || s.get(x, x) != -cct(x, x) {
            return None;
        }
        for y in 0..k {
            if x != y {
                let a = s.get(x, y) + cct(x, y);
                if !(-1..=1).contains(&a) {
                    return None;
                }
                rows[x][y] = a as i8;
            }
        }
    }
    let slim = SignedGraph::from_matrix(&rows).ok()?;
    let fats: Vec<Vec<(usize, Sign)>> = pick
        .iter()
        .map(|&c| {
            (0..k)
                .filter_map(|x| Sign::from_value(columns[c][x]).map(|s| (x, s)))
                .collect()
        })
        .collect();
    HoffmanSignedGraph::attach(&slim, &fats).ok()
}

/// `λ_min(h) < -2` while every proper induced fat Hoffman subgraph with at
/// least one slim vertex has `λ_min >= -2` (within `1e-9`).
pub fn is_minimal_forbidden(h: &HoffmanSignedGraph) -> bool {
    const BOUND: f64 = -2.0;
    if !(h.lambda_min() < BOUND - 1e-9) || !h.is_fat_graph() {
        return false;
    }
    let n = h.order();
    (1u64..(1 << n) - 1).all(|mask| {
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let Ok(sub) = h.induced(&vs) else {
            return true;
        };
        if sub.slim_vertices().is_empty() || !sub.is_fat_graph() {
            return true;
        }
        sub.lambda_min() >= BOUND - 1e-9
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum SmallClassification {
    /// Switching on `switch_set` turns the graph into a positive clique.
    PositiveCliqueClass { switch_set: Vec<usize> },
    /// `vertices` induce a copy of `pattern` up to switching; switching the
    /// induced subgraph on `switch_set` (local indices) and relabelling by
    /// `isomorphism` gives the pattern exactly.
    ContainsSqrt2Obstruction {
        pattern: StandardFamily,
        vertices: Vec<usize>,
        isomorphism: Vec<usize>,
        switch_set: Vec<usize>,
    },
}

/// Either a switching onto a positive clique or an induced `(K_3, -)` /
/// `(K_{1,2}, +)` up to switching.
pub fn classify_small(g: &SignedGraph) -> Result<SmallClassification> {
    if g.order() == 0 {
        return Err(Error::EmptyVertexSet);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.order();
    // potential along a breadth-first tree from vertex 0
    let mut pot = vec![0i8; n];
    pot[0] = 1;
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if pot[v] == 0 {
                pot[v] = pot[u] * g.entry(u, v);
                queue.push_back(v);
            }
        }
    }
    // U and its complement give the same switching; report the smaller
    let mut switch_set: Vec<usize> = (0..n).filter(|&v| pot[v] < 0).collect();
    if 2 * switch_set.len() > n {
        switch_set = (0..n).filter(|&v| pot[v] > 0).collect();
    }
    let complete = g.edge_count() == n * (n - 1) / 2;
    if complete && g.edges().all(|(u, v, s)| s.value() * pot[u] * pot[v] == 1) {
        return Ok(SmallClassification::PositiveCliqueClass { switch_set });
    }
    let (pattern, vertices) = if !complete {
        (StandardFamily::StarPlus, induced_path(g))
    } else {
        (StandardFamily::CompleteMinus, unbalanced_triangle(g))
    };
    let target = crate::graph::standard_family(pattern, if pattern == StandardFamily::StarPlus { 2 } else { 3 })?;
    let sub = g.induced(&vertices)?;
    let w = switching_equivalent(&target, &sub)
        .ok_or_else(|| Error::Internal("obstruction failed to replay".into()))?;
    Ok(SmallClassification::ContainsSqrt2Obstruction {
        pattern,
        vertices,
        isomorphism: w.isomorphism,
        switch_set: w.switch_set.vertices().to_vec(),
    })
}

/// `u - w - v` with `u`, `v` non-adjacent, in a connected non-complete graph.
fn induced_path(g: &SignedGraph) -> Vec<usize> {
    for w in g.vertices() {
        let nb = g.neighbors(w);
        for (i, &u) in nb.iter().enumerate() {
            for &v in &nb[i + 1..] {
                if !g.adjacent(u, v) {
                    let mut out = vec![u, w, v];
                    out.sort_unstable();
                    return out;
                }
            }
        }
    }
    unreachable!("a connected graph whose neighbourhoods are cliques is complete")
}

/// First triangle with negative sign product; one exists in every
/// unbalanced complete graph.
fn unbalanced_triangle(g: &SignedGraph) -> Vec<usize> {
    let n = g.order();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if triangle_sign(g, &[a, b, c]) < 0 {
                    return vec![a, b, c];
                }
            }
        }
    }
    unreachable!("an unbalanced complete graph has an unbalanced triangle")
}

fn triangle_sign(g: &SignedGraph, t: &[usize]) -> i8 {
    g.entry(t[0], t[1]) * g.entry(t[1], t[2]) * g.entry(t[0], t[2])
}
