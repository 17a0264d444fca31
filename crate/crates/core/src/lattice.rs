//! Representations of Hoffman signed graphs, their lattices, and integer
//! Gram factorisations (integrability certificates).

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::SignedGraph;
use crate::hoffman::{fat_correction, special_matrix, HoffmanSignedGraph};
use crate::intmat::IntMatrix;
use crate::spectra::{cholesky_psd, eigenvalues, smallest_eigenvalue, SymmetricMatrix};

/// Tolerance for snapping floating Gram entries to integers.
pub const SNAP_TOL: f64 = 1e-6;
/// Pivot tolerance handed to the PSD Cholesky factorisation.
pub const PSD_TOL: f64 = 1e-9;

/// Vectors for every vertex of a Hoffman graph, indexed by host vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Representation {
    pub norm: usize,
    pub vectors: Vec<Vec<f64>>,
}

/// Vectors for the slim vertices only, orthogonal to every fat vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReducedRepresentation {
    pub norm: usize,
    /// Host vertex of each vector.
    pub slim: Vec<usize>,
    pub vectors: Vec<Vec<f64>>,
    /// `n^f(x, y)` over the slim vertices.
    pub fat_corrections: IntMatrix,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gram_of(vectors: &[Vec<f64>]) -> SymmetricMatrix {
    SymmetricMatrix::from_fn(vectors.len(), |i, j| dot(&vectors[i], &vectors[j])).expect("gram is symmetric")
}

fn max_deviation(a: &SymmetricMatrix, b: &IntMatrix) -> f64 {
    let n = a.order();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max((a.get(i, j) - b.get(i, j) as f64).abs());
        }
    }
    worst
}

/// Gram matrix a norm-`m` representation must have: `m` on slim diagonal
/// entries, `1` on fat ones, edge signs off the diagonal.
pub fn representation_table(h: &HoffmanSignedGraph, m: usize) -> IntMatrix {
    let g = h.graph();
    IntMatrix::from_fn(h.order(), h.order(), |i, j| match (i == j, h.is_fat(i)) {
        (true, true) => 1,
        (true, false) => m as i64,
        _ => i64::from(g.entry(i, j)),
    })
}

/// `S(h) + mI`, the Gram matrix of a reduced representation.
pub fn reduced_table(h: &HoffmanSignedGraph, m: usize) -> IntMatrix {
    let s = special_matrix(h).matrix;
    IntMatrix::from_fn(s.rows(), s.cols(), |i, j| s.get(i, j) + if i == j { m as i64 } else { 0 })
}

impl Representation {
    pub fn gram(&self) -> SymmetricMatrix {
        gram_of(&self.vectors)
    }

    /// Largest deviation of the Gram matrix from [`representation_table`].
    pub fn table_deviation(&self, h: &HoffmanSignedGraph) -> f64 {
        max_deviation(&self.gram(), &representation_table(h, self.norm))
    }
}

impl ReducedRepresentation {
    pub fn gram(&self) -> SymmetricMatrix {
        gram_of(&self.vectors)
    }

    /// Largest deviation of the Gram matrix from `S(h) + mI`.
    pub fn table_deviation(&self, h: &HoffmanSignedGraph) -> f64 {
        max_deviation(&self.gram(), &reduced_table(h, self.norm))
    }
}

/// Fat vertex `F` maps to the unit vector `e_F`; slim vertex `x` maps to the
/// row of a Cholesky factor `L` of `S + mI` followed by `Σ σ(x, F) e_F`.
pub fn build_representation(h: &HoffmanSignedGraph, m: usize) -> Result<Representation> {
    if m == 0 {
        return Err(invalid("m", "at least 1", m));
    }
    let lambda_min = h.lambda_min();
    let refuse = || Error::NoRepresentation {
        norm: m as i64,
        lambda_min,
    };
    if lambda_min < -(m as f64) - PSD_TOL {
        return Err(refuse());
    }
    let shifted = reduced_table(h, m).to_symmetric()?;
    let chol = cholesky_psd(&shifted, PSD_TOL).map_err(|e| match e {
        Error::NotPositiveSemidefinite { .. } => refuse(),
        other => other,
    })?;
    let l = chol.factor();
    let slim = h.slim_vertices();
    let fats = h.fat_vertices();
    let dim = slim.len() + fats.len();
    let mut fat_pos = vec![usize::MAX; h.order()];
    for (j, &f) in fats.iter().enumerate() {
        fat_pos[f] = slim.len() + j;
    }
    let mut vectors = vec![vec![0.0; dim]; h.order()];
    for (i, &x) in slim.iter().enumerate() {
        vectors[x][..slim.len()].copy_from_slice(&l[i]);
        for (f, s) in h.fat_neighbors(x) {
            vectors[x][fat_pos[f]] = f64::from(s);
        }
    }
    for &f in &fats {
        vectors[f][fat_pos[f]] = 1.0;
    }
    Ok(Representation { norm: m, vectors })
}

/// `ψ(x) = φ(x) - Σ_F (φ(x), φ(F)) φ(F)`.
pub fn reduce_representation(phi: &Representation, h: &HoffmanSignedGraph) -> Result<ReducedRepresentation> {
    if phi.vectors.len() != h.order() {
        return Err(Error::DimensionMismatch(format!(
            "{} vectors for {} vertices",
            phi.vectors.len(),
            h.order()
        )));
    }
    let slim = h.slim_vertices();
    let fats = h.fat_vertices();
    let vectors = slim
        .iter()
        .map(|&x| {
            let mut v = phi.vectors[x].clone();
            for &f in &fats {
                let c = dot(&phi.vectors[x], &phi.vectors[f]);
                for (a, b) in v.iter_mut().zip(&phi.vectors[f]) {
                    *a -= c * b;
                }
            }
            v
        })
        .collect();
    let fat_corrections = IntMatrix::from_fn(slim.len(), slim.len(), |i, j| {
        fat_correction(h, slim[i], slim[j]).expect("slim vertices")
    });
    Ok(ReducedRepresentation {
        norm: phi.norm,
        slim,
        vectors,
        fat_corrections,
    })
}

/// Deviation of the Gram matrix of `(ψ(x))_x ⊕ (φ(F))_F` from
/// `Gram(ψ) ⊕ I`, i.e. how far the reduced vectors are from being
/// orthogonal to the fat unit vectors.
pub fn block_decomposition_deviation(
    phi: &Representation,
    psi: &ReducedRepresentation,
    h: &HoffmanSignedGraph,
) -> f64 {
    let fats = h.fat_vertices();
    let mut all: Vec<Vec<f64>> = psi.vectors.clone();
    all.extend(fats.iter().map(|&f| phi.vectors[f].clone()));
    let gram = gram_of(&all);
    let reduced = reduced_table(h, psi.norm);
    let s = psi.vectors.len();
    let expected = IntMatrix::from_fn(all.len(), all.len(), |i, j| match (i < s, j < s) {
        (true, true) => reduced.get(i, j),
        (false, false) => i64::from(i == j),
        _ => 0,
    });
    max_deviation(&gram, &expected)
}

/// Generators of a lattice and their integer Gram matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeDescription {
    pub generators: Vec<Vec<f64>>,
    pub gram: IntMatrix,
}

impl LatticeDescription {
    /// A lattice given only through its Gram matrix.
    pub fn from_gram(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::DimensionMismatch("Gram matrix must be square and symmetric".into()));
        }
        Ok(LatticeDescription {
            generators: vec![],
            gram,
        })
    }
}

/// The lattice spanned by a (reduced) representation of norm `m`.
pub fn lattice_from_hoffman(h: &HoffmanSignedGraph, m: usize, reduced: bool) -> Result<LatticeDescription> {
    let phi = build_representation(h, m)?;
    let generators = if reduced {
        reduce_representation(&phi, h)?.vectors
    } else {
        phi.vectors
    };
    let gram = IntMatrix::snap(&gram_of(&generators), SNAP_TOL)?;
    Ok(LatticeDescription { generators, gram })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalNorm {
    pub value: i64,
    /// Coefficients of a vector attaining `value`.
    pub witness: Vec<i64>,
    /// `false` means the answer is only the minimum over the search box.
    pub certified: bool,
}

const BOX_LIMIT: u128 = 50_000_000;

/// Minimum of `cᵀ G c` over integer `c ∈ [-radius, radius]^d` with
/// `cᵀ G c > 0` (zero-norm combinations are the zero lattice vector).
pub fn lattice_minimal_norm(lattice: &LatticeDescription, radius: usize) -> Result<MinimalNorm> {
    let g = &lattice.gram;
    let d = g.rows();
    if radius == 0 {
        return Err(invalid("radius", "at least 1", radius));
    }
    let spec = eigenvalues(&g.to_symmetric()?);
    let low = if d == 0 { 0.0 } else { spec.min() };
    if low < -PSD_TOL {
        return Err(Error::IndefiniteGram(low));
    }
    let side = 2 * radius as u128 + 1;
    if side.checked_pow(d as u32).is_none_or(|count| count > BOX_LIMIT) {
        return Err(Error::SearchTooLarge(format!("{side}^{d} coefficient vectors")));
    }
    let r = radius as i64;
    let mut c = vec![-r; d];
    let mut best: Option<(i64, Vec<i64>)> = None;
    'outer: loop {
        let mut norm = 0;
        for i in 0..d {
            if c[i] == 0 {
                continue;
            }
            for j in 0..d {
                norm += c[i] * g.get(i, j) * c[j];
            }
        }
        if norm > 0 && best.as_ref().is_none_or(|(b, _)| norm < *b) {
            best = Some((norm, c.clone()));
        }
        for i in 0..d {
            if c[i] < r {
                c[i] += 1;
                continue 'outer;
            }
            c[i] = -r;
        }
        break;
    }
    let (value, witness) = best.ok_or(Error::ZeroLattice)?;
    let certified = low > PSD_TOL
        && inverse_diagonal(g)
            .iter()
            .all(|&inv| (value as f64 * inv).sqrt().floor() as usize <= radius);
    Ok(MinimalNorm {
        value,
        witness,
        certified,
    })
}

/// Diagonal of `G⁻¹` by Gauss–Jordan elimination; `G` positive definite.
fn inverse_diagonal(g: &IntMatrix) -> Vec<f64> {
    let n = g.rows();
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut row: Vec<f64> = (0..n).map(|j| g.get(i, j) as f64).collect();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).max_by(|&x, &y| a[x][k].abs().total_cmp(&a[y][k].abs())).unwrap();
        a.swap(k, p);
        let pivot = a[k][k];
        for v in a[k].iter_mut() {
            *v /= pivot;
        }
        for i in 0..n {
            if i != k {
                let f = a[i][k];
                if f != 0.0 {
                    for j in 0..2 * n {
                        a[i][j] -= f * a[k][j];
                    }
                }
            }
        }
    }
    (0..n).map(|i| a[i][n + i]).collect()
}

/// Result of a bounded search for `N` with `NᵀN = target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FactorOutcome {
    Found { n: IntMatrix },
    /// The whole search space with at most `max_dim` rows was covered.
    Impossible { max_dim: usize },
    /// The node budget ran out first.
    Undecided { nodes: u64 },
}

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Depth-first search for an integer matrix `N` with at most `max_dim` rows
/// and `NᵀN = target`, choosing one column per vertex.
///
/// Coordinates not yet used by earlier columns are interchangeable and
/// sign-symmetric, so new coordinates are filled with positive,
/// nonincreasing values. Used coordinates whose entries agree on every
/// earlier column are likewise interchangeable and get nonincreasing values.
pub fn integer_gram_factor(target: &IntMatrix, max_dim: usize, budget: u64) -> Result<FactorOutcome> {
    if !target.is_symmetric() {
        return Err(Error::DimensionMismatch("target must be square and symmetric".into()));
    }
    let n = target.rows();
    if let Some(i) = (0..n).find(|&i| target.get(i, i) < 0) {
        return Err(Error::NotPositiveSemidefinite {
            index: i,
            pivot: target.get(i, i) as f64,
        });
    }
    let order = search_order(target);
    let permuted = target.principal(&order);
    let mut s = FactorSearch {
        target: &permuted,
        max_dim,
        budget,
        nodes: 0,
        exhausted: false,
        vecs: Vec::with_capacity(n),
        used: 0,
    };
    if s.place(0) {
        let mut out = IntMatrix::zeros(s.used, n);
        for (k, &v) in order.iter().enumerate() {
            for c in 0..s.used {
                out.set(c, v, s.vecs[k][c]);
            }
        }
        Ok(FactorOutcome::Found { n: out })
    } else if s.exhausted {
        Ok(FactorOutcome::Undecided { nodes: s.nodes })
    } else {
        Ok(FactorOutcome::Impossible { max_dim })
    }
}

/// Breadth-first over the support graph of `target`, so each column after
/// the first in a component is constrained by an earlier neighbour.
fn search_order(target: &IntMatrix) -> Vec<usize> {
    let n = target.rows();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let weight = |v: usize| (0..n).filter(|&u| u != v && target.get(u, v) != 0).count();
    let mut roots: Vec<usize> = (0..n).collect();
    roots.sort_by_key(|&v| std::cmp::Reverse(weight(v)));
    for root in roots {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let u = order[head];
            head += 1;
            for v in 0..n {
                if !seen[v] && target.get(u, v) != 0 {
                    seen[v] = true;
                    order.push(v);
                }
            }
        }
    }
    order
}

struct FactorSearch<'a> {
    target: &'a IntMatrix,
    max_dim: usize,
    budget: u64,
    nodes: u64,
    exhausted: bool,
    /// Column vectors placed so far, each of length `max_dim`.
    vecs: Vec<Vec<i64>>,
    used: usize,
}

struct Candidates {
    out: Vec<Vec<i64>>,
}

impl FactorSearch<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
        }
        !self.exhausted
    }

    fn place(&mut self, i: usize) -> bool {
        if i == self.target.rows() {
            return true;
        }
        let candidates = self.candidates(i);
        if self.exhausted {
            return false;
        }
        let used_before = self.used;
        for v in candidates.out {
            if !self.tick() {
                return false;
            }
            self.used = used_before.max(v.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1));
            self.vecs.push(v);
            if self.place(i + 1) {
                return true;
            }
            self.vecs.pop();
            self.used = used_before;
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn candidates(&mut self, i: usize) -> Candidates {
        let used = self.used;
        // prev_same[c]: the latest earlier coordinate with the same column
        // over the vectors placed so far
        let prev_same: Vec<Option<usize>> = (0..used)
            .map(|c| (0..c).rev().find(|&d| self.vecs.iter().all(|v| v[c] == v[d])))
            .collect();
        let mut tail = vec![vec![0i64; used + 1]; i];
        for (j, v) in self.vecs.iter().enumerate() {
            for c in (0..used).rev() {
                tail[j][c] = tail[j][c + 1] + v[c] * v[c];
            }
        }
        let need: Vec<i64> = (0..i).map(|j| self.target.get(i, j)).collect();
        let mut ctx = CandidateCtx {
            used,
            prev_same,
            tail,
            x: vec![0; self.max_dim],
            out: Vec::new(),
        };
        let norm = self.target.get(i, i);
        self.walk(&mut ctx, 0, norm, need);
        Candidates { out: ctx.out }
    }

    fn walk(&mut self, ctx: &mut CandidateCtx, c: usize, rest: i64, need: Vec<i64>) {
        if self.exhausted {
            return;
        }
        if c == ctx.used {
            if need.iter().all(|&d| d == 0) {
                self.fresh(ctx, ctx.used, rest, rest);
            }
            return;
        }
        if !self.tick() {
            return;
        }
        let bound = isqrt(rest);
        let upper = match ctx.prev_same[c] {
            Some(d) => bound.min(ctx.x[d]),
            None => bound,
        };
        let mut x = upper;
        while x >= -bound {
            let r = rest - x * x;
            let next: Vec<i64> = need.iter().enumerate().map(|(j, &d)| d - x * self.vecs[j][c]).collect();
            let feasible = next
                .iter()
                .enumerate()
                .all(|(j, &d)| (d as i128) * (d as i128) <= (r as i128) * (ctx.tail[j][c + 1] as i128));
            if feasible {
                ctx.x[c] = x;
                self.walk(ctx, c + 1, r, next);
                if self.exhausted {
                    ctx.x[c] = 0;
                    return;
                }
            }
            x -= 1;
        }
        ctx.x[c] = 0;
    }

    /// Writes `rest` as a nonincreasing sum of positive squares into the
    /// coordinates from `c` on.
    fn fresh(&mut self, ctx: &mut CandidateCtx, c: usize, rest: i64, cap: i64) {
        if rest == 0 {
            ctx.out.push(ctx.x.clone());
            return;
        }
        if c == self.max_dim {
            return;
        }
        let top = isqrt(rest).min(isqrt(cap));
        for x in (1..=top).rev() {
            ctx.x[c] = x;
            self.fresh(ctx, c + 1, rest - x * x, x * x);
        }
        ctx.x[c] = 0;
    }
}

struct CandidateCtx {
    used: usize,
    prev_same: Vec<Option<usize>>,
    tail: Vec<Vec<i64>>,
    x: Vec<i64>,
    out: Vec<Vec<i64>>,
}

fn isqrt(v: i64) -> i64 {
    if v <= 0 {
        return 0;
    }
    let mut r = (v as f64).sqrt() as i64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// `max(0, ⌈-λ_min⌉)`, with a small slack so that integral eigenvalues
/// computed as e.g. `-2.0000000000001` still give 2.
pub fn integrality_shift(lambda_min: f64) -> u64 {
    (-lambda_min - 1e-9).ceil().max(0.0) as u64
}

/// `s (A + kI) = NᵀN` with `k = ⌈-λ_min⌉`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CertificateJson", into = "CertificateJson")]
pub struct IntegrabilityCertificate {
    pub s: u64,
    pub shift: u64,
    pub n: IntMatrix,
    pub target: IntMatrix,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateJson {
    pub s: u64,
    pub shift: u64,
    pub rows: usize,
    pub columns: usize,
    pub n: Vec<Vec<i64>>,
    pub target: Vec<Vec<i64>>,
}

impl TryFrom<CertificateJson> for IntegrabilityCertificate {
    type Error = Error;

    fn try_from(j: CertificateJson) -> Result<Self> {
        if j.n.len() != j.rows {
            return Err(Error::DimensionMismatch(format!("{} rows listed, {} declared", j.n.len(), j.rows)));
        }
        Ok(IntegrabilityCertificate {
            s: j.s,
            shift: j.shift,
            n: IntMatrix::from_rows(&j.n, j.columns)?,
            target: IntMatrix::from_rows(&j.target, j.columns)?,
        })
    }
}

impl From<IntegrabilityCertificate> for CertificateJson {
    fn from(c: IntegrabilityCertificate) -> Self {
        CertificateJson {
            s: c.s,
            shift: c.shift,
            rows: c.n.rows(),
            columns: c.n.cols(),
            n: c.n.to_rows(),
            target: c.target.to_rows(),
        }
    }
}

/// `s (A + kI)` for the given shift.
pub fn integrability_target(g: &SignedGraph, s: u64, shift: u64) -> IntMatrix {
    IntMatrix::from_fn(g.order(), g.order(), |i, j| {
        let a = if i == j { shift as i64 } else { i64::from(g.entry(i, j)) };
        s as i64 * a
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum IntegrabilityOutcome {
    Found { certificate: IntegrabilityCertificate },
    /// No certificate with at most `max_dim` rows exists.
    Impossible { max_dim: usize },
    Undecided { nodes: u64 },
}

pub fn integrability_search(g: &SignedGraph, s: u64, max_dim: usize, budget: u64) -> Result<IntegrabilityOutcome> {
    if s == 0 {
        return Err(invalid("s", "at least 1", s));
    }
    let shift = integrality_shift(smallest_eigenvalue(g));
    let target = integrability_target(g, s, shift);
    Ok(match integer_gram_factor(&target, max_dim, budget)? {
        FactorOutcome::Found { n } => IntegrabilityOutcome::Found {
            certificate: IntegrabilityCertificate { s, shift, n, target },
        },
        FactorOutcome::Impossible { max_dim } => IntegrabilityOutcome::Impossible { max_dim },
        FactorOutcome::Undecided { nodes } => IntegrabilityOutcome::Undecided { nodes },
    })
}

/// Exact check of `NᵀN = s(A + kI)` with `k` recomputed from the spectrum of
/// `g`. Shape mismatches are errors; wrong values give `false`.
pub fn verify_certificate(cert: &IntegrabilityCertificate, g: &SignedGraph) -> Result<bool> {
    let n = g.order();
    if cert.n.cols() != n || cert.target.rows() != n || cert.target.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "certificate has {} columns and a {}x{} target for a graph on {n} vertices",
            cert.n.cols(),
            cert.target.rows(),
            cert.target.cols()
        )));
    }
    if cert.s == 0 {
        return Ok(false);
    }
    let shift = integrality_shift(smallest_eigenvalue(g));
    let target = integrability_target(g, cert.s, shift);
    Ok(cert.shift == shift && cert.target == target && cert.n.gram_of_columns() == target)
}

/// `s · Gram` of a norm-`m` representation of `h`, over all vertices.
pub fn hoffman_full_target(h: &HoffmanSignedGraph, m: usize, s: u64) -> IntMatrix {
    representation_table(h, m).scaled(s as i64)
}

/// `s (S(h) + mI)` over the slim vertices.
pub fn hoffman_reduced_target(h: &HoffmanSignedGraph, m: usize, s: u64) -> IntMatrix {
    reduced_table(h, m).scaled(s as i64)
}

/// Turns a factor of the reduced target into a factor of the full target:
/// each fat vertex gets a block of `s` ones in fresh coordinates and each
/// slim column adds its signed fat blocks.
pub fn lift_reduced_factor(h: &HoffmanSignedGraph, s: u64, reduced: &IntMatrix) -> Result<IntMatrix> {
    let slim = h.slim_vertices();
    let fats = h.fat_vertices();
    if reduced.cols() != slim.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} columns for {} slim vertices",
            reduced.cols(),
            slim.len()
        )));
    }
    let s = s as usize;
    let base = reduced.rows();
    let mut out = IntMatrix::zeros(base + s * fats.len(), h.order());
    let mut block = vec![usize::MAX; h.order()];
    for (j, &f) in fats.iter().enumerate() {
        block[f] = base + j * s;
        for r in 0..s {
            out.set(base + j * s + r, f, 1);
        }
    }
    for (i, &x) in slim.iter().enumerate() {
        for r in 0..base {
            out.set(r, x, reduced.get(r, i));
        }
        for (f, sign) in h.fat_neighbors(x) {
            for r in 0..s {
                out.set(block[f] + r, x, i64::from(sign));
            }
        }
    }
    Ok(out)
}

/// Projects a factor of the full target onto the orthogonal complement of
/// the fat columns: slim column `x` becomes `N_x - Σ_F σ(x, F) N_F`.
pub fn project_full_factor(h: &HoffmanSignedGraph, full: &IntMatrix) -> Result<IntMatrix> {
    if full.cols() != h.order() {
        return Err(Error::DimensionMismatch(format!(
            "{} columns for {} vertices",
            full.cols(),
            h.order()
        )));
    }
    let slim = h.slim_vertices();
    let mut out = IntMatrix::zeros(full.rows(), slim.len());
    for (i, &x) in slim.iter().enumerate() {
        for r in 0..full.rows() {
            let mut v = full.get(r, x);
            for (f, sign) in h.fat_neighbors(x) {
                v -= i64::from(sign) * full.get(r, f);
            }
            out.set(r, i, v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_minus, complete_plus, Sign, Sign::*};

    fn one_slim(fats: &[Sign]) -> HoffmanSignedGraph {
        let nb: Vec<Vec<(usize, Sign)>> = fats.iter().map(|&s| vec![(0, s)]).collect();
        HoffmanSignedGraph::attach(&SignedGraph::empty(1), &nb).unwrap()
    }

    fn unbalanced_square() -> SignedGraph {
        SignedGraph::new(4, &[(0, 1, Plus), (1, 2, Plus), (2, 3, Plus), (0, 3, Minus)]).unwrap()
    }

    #[test]
    fn representation_examples() {
        let h = one_slim(&[Plus]);
        let phi = build_representation(&h, 2).unwrap();
        assert!((dot(&phi.vectors[0], &phi.vectors[0]) - 2.0).abs() < 1e-12);
        assert!((dot(&phi.vectors[0], &phi.vectors[1]) - 1.0).abs() < 1e-12);
        let psi = reduce_representation(&phi, &h).unwrap();
        assert!((psi.gram().get(0, 0) - 1.0).abs() < 1e-12);

        let k3 = HoffmanSignedGraph::slim_only(&complete_plus(3));
        let phi = build_representation(&k3, 1).unwrap();
        assert!(phi.table_deviation(&k3) < 1e-12);
        assert_eq!(phi.vectors[0], phi.vectors[1]);
        assert_eq!(reduce_representation(&phi, &k3).unwrap().vectors, phi.vectors);
    }

    #[test]
    fn boundary_norm_is_accepted() {
        let h = one_slim(&[Plus, Plus]);
        let phi = build_representation(&h, 2).unwrap();
        assert!(phi.table_deviation(&h) < 1e-8);
        assert!(matches!(build_representation(&h, 1), Err(Error::NoRepresentation { norm: 1, .. })));
        let neg = HoffmanSignedGraph::slim_only(&complete_minus(3));
        assert!(build_representation(&neg, 2).is_ok());
    }

    #[test]
    fn lattice_examples() {
        let k3 = HoffmanSignedGraph::slim_only(&complete_plus(3));
        assert_eq!(lattice_from_hoffman(&k3, 1, false).unwrap().gram, IntMatrix::from_fn(3, 3, |_, _| 1));
        let h = one_slim(&[Plus]);
        assert_eq!(lattice_from_hoffman(&h, 2, false).unwrap().gram.to_rows(), vec![vec![2, 1], vec![1, 1]]);
        assert_eq!(lattice_from_hoffman(&h, 2, true).unwrap().gram.to_rows(), vec![vec![1]]);
    }

    #[test]
    fn minimal_norm_examples() {
        let z2 = LatticeDescription::from_gram(IntMatrix::identity(2)).unwrap();
        let r = lattice_minimal_norm(&z2, 1).unwrap();
        assert_eq!((r.value, r.certified), (1, true));

        let a2 = LatticeDescription::from_gram(IntMatrix::from_rows(&[vec![2, -1], vec![-1, 2]], 2).unwrap()).unwrap();
        let r = lattice_minimal_norm(&a2, 3).unwrap();
        assert_eq!((r.value, r.certified), (2, true));

        let j3 = LatticeDescription::from_gram(IntMatrix::from_fn(3, 3, |_, _| 1)).unwrap();
        let r = lattice_minimal_norm(&j3, 2).unwrap();
        assert_eq!((r.value, r.certified), (1, false));

        let bad = LatticeDescription::from_gram(IntMatrix::from_rows(&[vec![1, 2], vec![2, 1]], 2).unwrap()).unwrap();
        assert!(matches!(lattice_minimal_norm(&bad, 1), Err(Error::IndefiniteGram(_))));
        let zero = LatticeDescription::from_gram(IntMatrix::zeros(2, 2)).unwrap();
        assert_eq!(lattice_minimal_norm(&zero, 1), Err(Error::ZeroLattice));
    }

    #[test]
    fn clique_certificates_are_a_row_of_ones() {
        for n in 2..=5 {
            let g = complete_plus(n);
            let IntegrabilityOutcome::Found { certificate } = integrability_search(&g, 1, 2 * n, DEFAULT_BUDGET).unwrap()
            else {
                panic!("no certificate for K_{n}");
            };
            assert_eq!(certificate.shift, 1);
            assert_eq!(certificate.n.to_rows(), vec![vec![1; n]]);
            assert!(verify_certificate(&certificate, &g).unwrap());
        }
    }

    #[test]
    fn unbalanced_square_needs_shift_two() {
        let g = unbalanced_square();
        let IntegrabilityOutcome::Found { certificate } = integrability_search(&g, 1, 8, DEFAULT_BUDGET).unwrap() else {
            panic!("no certificate");
        };
        assert_eq!(certificate.shift, 2);
        assert!(verify_certificate(&certificate, &g).unwrap());

        let mut tampered = certificate.clone();
        let v = tampered.n.get(0, 0);
        tampered.n.set(0, 0, v + 1);
        assert!(!verify_certificate(&tampered, &g).unwrap());
        assert!(!verify_certificate(&certificate, &complete_plus(4)).unwrap());
        assert!(verify_certificate(&certificate, &complete_plus(3)).is_err());
    }

    #[test]
    fn impossible_only_when_exhaustive() {
        // K3 needs norm-1 columns with pairwise product 1: a single row
        let t = integrability_target(&complete_plus(3), 1, 1);
        assert!(matches!(integer_gram_factor(&t, 1, DEFAULT_BUDGET).unwrap(), FactorOutcome::Found { .. }));
        // negative triangle at shift 2 needs three vectors of norm 2 with
        // pairwise product -1, which fits in 3 coordinates but not 2
        let t = integrability_target(&complete_minus(3), 1, 2);
        assert_eq!(integer_gram_factor(&t, 2, DEFAULT_BUDGET).unwrap(), FactorOutcome::Impossible { max_dim: 2 });
        assert!(matches!(integer_gram_factor(&t, 3, DEFAULT_BUDGET).unwrap(), FactorOutcome::Found { .. }));
        let big = integrability_target(&complete_minus(6), 1, 5);
        assert!(matches!(integer_gram_factor(&big, 12, 3).unwrap(), FactorOutcome::Undecided { .. }));
    }

    #[test]
    fn certificate_json() {
        let g = complete_plus(2);
        let IntegrabilityOutcome::Found { certificate } = integrability_search(&g, 1, 4, DEFAULT_BUDGET).unwrap() else {
            panic!();
        };
        let s = serde_json::to_string(&certificate).unwrap();
        assert_eq!(s, r#"{"s":1,"shift":1,"rows":1,"columns":2,"n":[[1,1]],"target":[[1,1],[1,1]]}"#);
        assert_eq!(serde_json::from_str::<IntegrabilityCertificate>(&s).unwrap(), certificate);
    }

    #[test]
    fn lift_and_project() {
        let slim = SignedGraph::new(2, &[(0, 1, Minus)]).unwrap();
        let h = HoffmanSignedGraph::attach(&slim, &[vec![(0, Plus), (1, Minus)]]).unwrap();
        let m = 2;
        let reduced = hoffman_reduced_target(&h, m, 1);
        let FactorOutcome::Found { n } = integer_gram_factor(&reduced, 4, DEFAULT_BUDGET).unwrap() else {
            panic!();
        };
        let full = lift_reduced_factor(&h, 1, &n).unwrap();
        assert_eq!(full.gram_of_columns(), hoffman_full_target(&h, m, 1));
        assert_eq!(project_full_factor(&h, &full).unwrap().gram_of_columns(), reduced);
    }
}
