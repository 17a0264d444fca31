//! Seeded generators for property suites and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Sign, SignedGraph, SwitchingMap};
use crate::hoffman::HoffmanSignedGraph;
use crate::switching::{is_pattern_free, PatternFamily};

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_sign(rng: &mut impl Rng, p_negative: f64) -> Sign {
    if rng.gen_bool(p_negative) {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

/// Each pair is an edge with probability `p_edge`, negative with probability
/// `p_negative`.
pub fn signed_graph(rng: &mut impl Rng, order: usize, p_edge: f64, p_negative: f64) -> SignedGraph {
    let mut edges = Vec::new();
    for u in 0..order {
        for v in u + 1..order {
            if rng.gen_bool(p_edge) {
                edges.push((u, v, random_sign(rng, p_negative)));
            }
        }
    }
    SignedGraph::new(order, &edges).expect("generated edges are valid")
}

/// Connected variant: a random spanning tree plus random extra edges.
pub fn connected_signed_graph(rng: &mut impl Rng, order: usize, p_edge: f64, p_negative: f64) -> SignedGraph {
    let mut edges = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for v in 1..order {
        let u = rng.gen_range(0..v);
        seen.insert((u, v));
        edges.push((u, v, random_sign(rng, p_negative)));
    }
    for u in 0..order {
        for v in u + 1..order {
            if !seen.contains(&(u, v)) && rng.gen_bool(p_edge) {
                edges.push((u, v, random_sign(rng, p_negative)));
            }
        }
    }
    SignedGraph::new(order, &edges).expect("generated edges are valid")
}

/// Each vertex joins with probability 1/2.
pub fn switching_set(rng: &mut impl Rng, order: usize) -> SwitchingMap {
    SwitchingMap::new((0..order).filter(|_| rng.gen_bool(0.5)))
}

/// A uniformly random relabelling `old -> perm[old]`.
pub fn permutation(rng: &mut impl Rng, order: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..order).collect();
    p.shuffle(rng);
    p
}

/// Random Hoffman graph with `1..=max_slim` slim and `0..=max_fat` fat
/// vertices; every fat vertex gets at least one slim neighbour.
pub fn hoffman_graph(rng: &mut impl Rng, max_slim: usize, max_fat: usize) -> HoffmanSignedGraph {
    let s = rng.gen_range(1..=max_slim);
    let f = rng.gen_range(0..=max_fat);
    let slim = signed_graph(rng, s, 0.5, 0.5);
    let fats: Vec<Vec<(usize, Sign)>> = (0..f)
        .map(|_| {
            let anchor = rng.gen_range(0..s);
            let mut nb = Vec::new();
            for x in 0..s {
                if x == anchor || rng.gen_bool(0.4) {
                    nb.push((x, random_sign(rng, 0.5)));
                }
            }
            nb
        })
        .collect();
    HoffmanSignedGraph::attach(&slim, &fats).expect("generated Hoffman graph is valid")
}

/// A positive clique switched on a random set; returns the set too.
pub fn switched_clique(rng: &mut impl Rng, order: usize) -> (SignedGraph, SwitchingMap) {
    let u = switching_set(rng, order);
    let g = crate::graph::complete_plus(order).switch(&u).expect("set is in range");
    (g, u)
}

/// A positive clique on `clique` vertices plus `extra` vertices with random
/// signed edges, rejection-sampled until it is K-tilde switching-free for
/// `m`. Gives up after `attempts` tries.
pub fn ktilde_free_with_clique(
    rng: &mut impl Rng,
    m: usize,
    clique: usize,
    extra: usize,
    attempts: usize,
) -> Option<SignedGraph> {
    let family = PatternFamily::ktilde(m);
    let order = clique + extra;
    for _ in 0..attempts {
        let mut edges = Vec::new();
        for u in 0..clique {
            for v in u + 1..clique {
                edges.push((u, v, Sign::Plus));
            }
        }
        for v in clique..order {
            for u in 0..v {
                if rng.gen_bool(0.35) {
                    edges.push((u, v, random_sign(rng, 0.5)));
                }
            }
        }
        let g = SignedGraph::new(order, &edges).expect("generated edges are valid");
        if is_pattern_free(&g, &family).free {
            return Some(g);
        }
    }
    None
}
