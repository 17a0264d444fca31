//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the algorithms under test beyond reading graph entries.

#![allow(dead_code)]

use sigraph::hoffman::HoffmanSignedGraph;
use sigraph::SignedGraph;

pub fn dense(g: &SignedGraph) -> Vec<Vec<f64>> {
    (0..g.order())
        .map(|i| (0..g.order()).map(|j| f64::from(g.entry(i, j))).collect())
        .collect()
}

/// Number of eigenvalues below `x`, by Sylvester's law of inertia on the
/// pivots of `M - xI`. Exact zero pivots are nudged off zero.
pub fn count_below(m: &[Vec<f64>], x: f64) -> usize {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= x;
    }
    let mut negative = 0;
    for k in 0..n {
        let mut p = a[k][k];
        if p.abs() < 1e-300 {
            p = 1e-300;
        }
        if p < 0.0 {
            negative += 1;
        }
        for i in k + 1..n {
            let f = a[i][k] / p;
            if f == 0.0 {
                continue;
            }
            for j in k + 1..n {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    negative
}

/// Smallest eigenvalue by bisection on the inertia count.
pub fn min_eigenvalue(m: &[Vec<f64>]) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let radius = m
        .iter()
        .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        + 1.0;
    let (mut lo, mut hi) = (-radius, radius);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if count_below(m, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-14 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Root of `f` in `[lo, hi]` by bisection; `f(lo)` and `f(hi)` differ in sign.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) < 0.0, "no sign change");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) == (flo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `A` switched by the diagonal `D` with `d[v] = -1` on `set`.
pub fn switched_dense(g: &SignedGraph, set: &[usize]) -> Vec<Vec<f64>> {
    let d: Vec<f64> = (0..g.order()).map(|v| if set.contains(&v) { -1.0 } else { 1.0 }).collect();
    let a = dense(g);
    (0..g.order())
        .map(|i| (0..g.order()).map(|j| d[i] * a[i][j] * d[j]).collect())
        .collect()
}

/// All `2^n` switchings of `g`; `true` if one equals `h` entrywise.
pub fn switching_class_contains(g: &SignedGraph, h: &SignedGraph) -> bool {
    let n = g.order();
    if n != h.order() {
        return false;
    }
    (0u32..1 << n).any(|mask| {
        let d = |v: usize| if mask >> v & 1 == 1 { -1 } else { 1 };
        (0..n).all(|i| (0..n).all(|j| d(i) * g.entry(i, j) * d(j) == h.entry(i, j)))
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `g` and `h` switching isomorphic, by trying every relabelling and every
/// switching.
pub fn switching_isomorphic(g: &SignedGraph, h: &SignedGraph) -> bool {
    if g.order() != h.order() {
        return false;
    }
    permutations(g.order()).into_iter().any(|p| {
        let relabelled = g.relabel(&p).expect("permutation");
        switching_class_contains(&relabelled, h)
    })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Some induced subgraph of `g` is switching isomorphic to `pattern`.
pub fn contains_switched_copy(g: &SignedGraph, pattern: &SignedGraph) -> bool {
    let k = pattern.order();
    if k > g.order() {
        return false;
    }
    let perms = permutations(k);
    subsets(g.order(), k).into_iter().any(|vs| {
        let sub = g.induced(&vs).expect("subset");
        if sub.edge_count() != pattern.edge_count() {
            return false;
        }
        perms.iter().any(|p| switching_class_contains(&sub.relabel(p).expect("permutation"), pattern))
    })
}

/// Maximal positive cliques by checking every vertex subset.
pub fn brute_maximal_positive_cliques(g: &SignedGraph) -> Vec<Vec<usize>> {
    let n = g.order();
    let positive = |mask: u32| {
        (0..n).all(|i| mask >> i & 1 == 0 || (i + 1..n).all(|j| mask >> j & 1 == 0 || g.entry(i, j) == 1))
    };
    let mut out: Vec<Vec<usize>> = (1u32..1 << n)
        .filter(|&mask| positive(mask) && (0..n).all(|v| mask >> v & 1 == 1 || !positive(mask | 1 << v)))
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

/// `S = A_slim - C Cᵀ`, where `C` holds the slim-to-fat signs.
pub fn special_matrix(h: &HoffmanSignedGraph) -> Vec<Vec<f64>> {
    let g = h.graph();
    let slim = h.slim_vertices();
    let fat = h.fat_vertices();
    slim.iter()
        .map(|&x| {
            slim.iter()
                .map(|&y| {
                    let a = if x == y { 0 } else { i64::from(g.entry(x, y)) };
                    let c: i64 = fat.iter().map(|&f| i64::from(g.entry(x, f) * g.entry(y, f))).sum();
                    (a - c) as f64
                })
                .collect()
        })
        .collect()
}

/// Inner products a norm-`m` representation of `h` must have.
pub fn representation_table(h: &HoffmanSignedGraph, m: usize) -> Vec<Vec<f64>> {
    let g = h.graph();
    (0..h.order())
        .map(|i| {
            (0..h.order())
                .map(|j| {
                    if i != j {
                        f64::from(g.entry(i, j))
                    } else if h.is_fat(i) {
                        1.0
                    } else {
                        m as f64
                    }
                })
                .collect()
        })
        .collect()
}

pub fn gram(vectors: &[Vec<f64>]) -> Vec<Vec<f64>> {
    vectors
        .iter()
        .map(|a| vectors.iter().map(|b| a.iter().zip(b).map(|(x, y)| x * y).sum()).collect())
        .collect()
}

pub fn max_gap(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .flat_map(|(r, s)| r.iter().zip(s).map(|(x, y)| (x - y).abs()))
        .fold(0.0, f64::max)
}

/// `Nᵀ N` over the integers.
pub fn column_gram(n: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = n.first().map_or(0, Vec::len);
    (0..cols)
        .map(|i| (0..cols).map(|j| n.iter().map(|row| row[i] * row[j]).sum()).collect())
        .collect()
}
