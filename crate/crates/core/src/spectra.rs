//! Dense symmetric eigenvalues and positive-semidefinite Cholesky.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SignedGraph;

/// Dense symmetric matrix, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetricMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    /// Validates symmetry (exact) and finiteness.
    pub fn new(order: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for order {order}",
                entries.len()
            )));
        }
        for i in 0..order {
            for j in 0..order {
                let a = entries[i * order + j];
                if !a.is_finite() {
                    return Err(Error::NonFinite(i, j));
                }
                if j > i && a != entries[j * order + i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        Ok(SymmetricMatrix { order, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("row {i} has {} entries", r.len())));
        }
        Self::new(n, rows.concat())
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i.min(j), i.max(j)));
            }
        }
        Self::new(order, entries)
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| if i == j { 1.0 } else { 0.0 }).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.order.max(1)).take(self.order).map(<[f64]>::to_vec).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, a| m.max(a.abs()))
    }

    /// `self + shift * I`
    pub fn shifted(&self, shift: f64) -> Self {
        let mut out = self.clone();
        for i in 0..self.order {
            out.entries[i * self.order + i] += shift;
        }
        out
    }

    /// Conjugation by a `±1` diagonal: entry `(i, j)` times `d[i] * d[j]`.
    pub fn sign_conjugate(&self, d: &[i8]) -> Self {
        let n = self.order;
        let entries = (0..n * n)
            .map(|k| self.entries[k] * f64::from(d[k / n] * d[k % n]))
            .collect();
        SymmetricMatrix { order: n, entries }
    }
}

/// Eigenvalues in nondecreasing order, with the absolute accuracy bound the
/// solver guarantees.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub tolerance: f64,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(f64::NAN)
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }
}

pub fn adjacency_matrix(g: &SignedGraph) -> SymmetricMatrix {
    SymmetricMatrix::from_fn(g.order(), |i, j| f64::from(g.entry(i, j))).expect("adjacency is symmetric")
}

const MAX_SWEEPS: usize = 100;

/// All eigenvalues by cyclic Jacobi rotations, stopping once the
/// off-diagonal Frobenius norm drops below `1e-12 * ||M||_F`.
pub fn eigenvalues(m: &SymmetricMatrix) -> Spectrum {
    let n = m.order;
    let scale = m.frobenius_norm();
    let target = 1e-12 * scale;
    let mut a = m.entries.clone();
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += a[i * n + j] * a[i * n + j];
            }
        }
        (2.0 * s).sqrt()
    };
    let mut residual = off(&a);
    let mut sweeps = 0;
    while residual > target && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let np = arp - s * (arq + tau * arp);
                    let nq = arq + s * (arp - tau * arq);
                    a[r * n + p] = np;
                    a[p * n + r] = np;
                    a[r * n + q] = nq;
                    a[q * n + r] = nq;
                }
            }
        }
        residual = off(&a);
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigenvalues.sort_by(|x, y| x.total_cmp(y));
    Spectrum {
        eigenvalues,
        tolerance: residual.max(f64::EPSILON * scale),
    }
}

pub fn graph_spectrum(g: &SignedGraph) -> Spectrum {
    eigenvalues(&adjacency_matrix(g))
}

pub fn smallest_eigenvalue(g: &SignedGraph) -> f64 {
    if g.order() == 0 {
        return 0.0;
    }
    graph_spectrum(g).min()
}

/// Pivoted Cholesky factor of a PSD matrix: `M[perm[i]][perm[j]] = (L Lᵀ)[i][j]`
/// with `lower` lower triangular. Columns past `rank` are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct PsdCholesky {
    pub order: usize,
    pub perm: Vec<usize>,
    /// Row-major, lower triangular in pivot order.
    pub lower: Vec<f64>,
    pub rank: usize,
}

impl PsdCholesky {
    /// Square factor `F` in the original ordering with `M = F Fᵀ`
    /// (row `perm[i]` of `F` is row `i` of `L`).
    pub fn factor(&self) -> Vec<Vec<f64>> {
        let n = self.order;
        let mut f = vec![vec![0.0; n]; n];
        for i in 0..n {
            f[self.perm[i]].copy_from_slice(&self.lower[i * n..(i + 1) * n]);
        }
        f
    }

    /// Max-norm of `F Fᵀ - M`.
    pub fn residual(&self, m: &SymmetricMatrix) -> f64 {
        let f = self.factor();
        let n = self.order;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = f[i].iter().zip(&f[j]).map(|(a, b)| a * b).sum();
                worst = worst.max((dot - m.get(i, j)).abs());
            }
        }
        worst
    }
}

/// Cholesky with diagonal pivoting. Pivots in `[-tol, tol]` end the
/// factorisation (remaining columns zero) provided the trailing block is
/// negligible; a pivot below `-tol` means the matrix is not PSD.
pub fn cholesky_psd(m: &SymmetricMatrix, tol: f64) -> Result<PsdCholesky> {
    let n = m.order;
    let mut a = m.entries.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut rank = n;
    for k in 0..n {
        let (piv, &best) = (k..n)
            .map(|i| (i, &a[i * n + i]))
            .max_by(|x, y| x.1.total_cmp(y.1).then(y.0.cmp(&x.0)))
            .unwrap();
        if best <= tol {
            let lowest = (k..n).map(|i| (i, a[i * n + i])).min_by(|x, y| x.1.total_cmp(&y.1)).unwrap();
            if lowest.1 < -tol {
                return Err(Error::NotPositiveSemidefinite {
                    index: perm[lowest.0],
                    pivot: lowest.1,
                });
            }
            // a PSD trailing block with ~0 diagonal must be ~0 everywhere
            let slack = tol.sqrt().max(tol);
            for i in k..n {
                for j in k..i {
                    if a[i * n + j].abs() > slack {
                        return Err(Error::NotPositiveSemidefinite {
                            index: perm[i],
                            pivot: a[i * n + i],
                        });
                    }
                }
            }
            for i in k..n {
                for j in k..=i {
                    a[i * n + j] = 0.0;
                }
            }
            rank = k;
            break;
        }
        if piv != k {
            swap_symmetric(&mut a, n, k, piv);
            perm.swap(k, piv);
        }
        let d = a[k * n + k].sqrt();
        a[k * n + k] = d;
        for i in k + 1..n {
            a[i * n + k] /= d;
        }
        // trailing block kept fully symmetric so pivot swaps stay valid
        for i in k + 1..n {
            let lik = a[i * n + k];
            for j in k + 1..=i {
                let v = a[i * n + j] - lik * a[j * n + k];
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
    }
    // keep only the lower triangle
    for i in 0..n {
        for j in i + 1..n {
            a[i * n + j] = 0.0;
        }
    }
    Ok(PsdCholesky {
        order: n,
        perm,
        lower: a,
        rank,
    })
}

// Swaps rows/columns k and p of the lower triangle (columns < k already hold L).
fn swap_symmetric(a: &mut [f64], n: usize, k: usize, p: usize) {
    for j in 0..n {
        a.swap(k * n + j, p * n + j);
    }
    for i in 0..n {
        a.swap(i * n + k, i * n + p);
    }
}
