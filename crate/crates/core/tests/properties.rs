mod common;

use proptest::prelude::*;
use sigraph::cliques::maximal_positive_cliques;
use sigraph::hoffman::{associated_hoffman_graph_with, expand, hoffman_switch, special_matrix};
use sigraph::lattice::{
    hoffman_full_target, hoffman_reduced_target, integer_gram_factor, integrality_shift, lift_reduced_factor,
    project_full_factor,
};
use sigraph::spectra::{adjacency_matrix, cholesky_psd, graph_spectrum, smallest_eigenvalue};
use sigraph::switching::{is_pattern_free, switching_between, switching_equivalent};
use sigraph::{FactorOutcome, HoffmanSignedGraph, IntMatrix, PatternFamily, Sign, SignedGraph, SwitchingMap, SymmetricMatrix};

fn build(n: usize, cells: &[u8]) -> SignedGraph {
    let mut edges = Vec::new();
    let mut k = 0;
    for u in 0..n {
        for v in u + 1..n {
            match cells[k] {
                1 => edges.push((u, v, Sign::Plus)),
                2 => edges.push((u, v, Sign::Minus)),
                _ => {}
            }
            k += 1;
        }
    }
    SignedGraph::new(n, &edges).unwrap()
}

fn graph(min: usize, max: usize) -> impl Strategy<Value = SignedGraph> {
    (min..=max).prop_flat_map(|n| prop::collection::vec(0u8..3, n * (n.max(1) - 1) / 2).prop_map(move |c| build(n, &c)))
}

fn with_subset(min: usize, max: usize) -> impl Strategy<Value = (SignedGraph, Vec<usize>)> {
    graph(min, max).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(any::<bool>(), n))
            .prop_map(|(g, mask)| (g, mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()))
    })
}

fn with_permutation(min: usize, max: usize) -> impl Strategy<Value = (SignedGraph, Vec<usize>, Vec<usize>)> {
    with_subset(min, max).prop_flat_map(|(g, u)| {
        let n = g.order();
        (Just(g), Just(u), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn hoffman(max_slim: usize, max_fat: usize) -> impl Strategy<Value = HoffmanSignedGraph> {
    (graph(1, max_slim), 0..=max_fat).prop_flat_map(|(slim, f)| {
        let s = slim.order();
        (Just(slim), prop::collection::vec(prop::collection::vec(0u8..3, s), f)).prop_map(|(slim, fats)| {
            let fats: Vec<Vec<(usize, Sign)>> = fats
                .iter()
                .map(|cells| {
                    let mut nb: Vec<_> = cells
                        .iter()
                        .enumerate()
                        .filter_map(|(x, &c)| match c {
                            1 => Some((x, Sign::Plus)),
                            2 => Some((x, Sign::Minus)),
                            _ => None,
                        })
                        .collect();
                    if nb.is_empty() {
                        nb.push((0, Sign::Plus));
                    }
                    nb
                })
                .collect();
            HoffmanSignedGraph::attach(&slim, &fats).unwrap()
        })
    })
}

fn spectra_close(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-9)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn switching_is_an_involution_preserving_spectrum((g, u) in with_subset(1, 10)) {
        let u = SwitchingMap::new(u);
        let h = g.switch(&u).unwrap();
        prop_assert_eq!(h.switch(&u).unwrap(), g.clone());
        prop_assert!(g.same_underlying(&h));
        prop_assert!(spectra_close(&graph_spectrum(&g).eigenvalues, &graph_spectrum(&h).eigenvalues));
    }

    #[test]
    fn spectrum_trace_identities(g in graph(1, 10)) {
        let spec = graph_spectrum(&g);
        let sum: f64 = spec.eigenvalues.iter().sum();
        let squares: f64 = spec.eigenvalues.iter().map(|x| x * x).sum();
        prop_assert!(sum.abs() <= 1e-9);
        prop_assert!((squares - 2.0 * g.edge_count() as f64).abs() <= 1e-8);
        prop_assert!((smallest_eigenvalue(&g) - common::min_eigenvalue(&common::dense(&g))).abs() <= 1e-9);
    }

    #[test]
    fn switching_equivalence_is_an_equivalence((g, u, p) in with_permutation(1, 7), (v, q) in (any::<u8>(), any::<u16>())) {
        let w = switching_equivalent(&g, &g).unwrap();
        prop_assert!(w.verify(&g, &g));

        let h = g.relabel(&p).unwrap().switch(&SwitchingMap::new(u)).unwrap();
        let gh = switching_equivalent(&g, &h).unwrap();
        prop_assert!(gh.verify(&g, &h));
        prop_assert!(gh.inverse().verify(&h, &g));

        // a second step, derived deterministically from the drawn integers
        let n = g.order();
        let mut q: Vec<usize> = (0..n).map(|i| (i + q as usize) % n).collect();
        if v % 2 == 0 {
            q.reverse();
        }
        let k = h.relabel(&q).unwrap().switch(&SwitchingMap::new((0..n).filter(|i| v >> (i % 8) & 1 == 1))).unwrap();
        let hk = switching_equivalent(&h, &k).unwrap();
        prop_assert!(gh.then(&hk).verify(&g, &k));
    }

    #[test]
    fn fast_path_agrees_with_enumeration(g in graph(1, 7), flips in prop::collection::vec(any::<bool>(), 21)) {
        let edges: Vec<_> = g
            .edges()
            .zip(flips.iter().cycle())
            .map(|((u, v, s), &f)| (u, v, if f { Sign::Minus } else { s }))
            .collect();
        let h = SignedGraph::new(g.order(), &edges).unwrap();
        let fast = switching_between(&g, &h);
        prop_assert_eq!(fast.is_some(), common::switching_class_contains(&g, &h));
        if let Some(u) = fast {
            prop_assert_eq!(g.switch(&u).unwrap(), h);
        }
    }

    #[test]
    fn pattern_search_matches_brute_force(g in graph(1, 7)) {
        let family = PatternFamily::ktilde(2);
        let check = is_pattern_free(&g, &family);
        let brute = family.patterns().iter().any(|p| common::contains_switched_copy(&g, p));
        prop_assert_eq!(check.free, !brute);
        if let Some(w) = check.witness {
            let sub = g.induced(&w.vertices).unwrap();
            prop_assert!(common::switching_isomorphic(&sub, &family.patterns()[w.pattern_index]));
        }
    }

    #[test]
    fn pattern_freeness_is_hereditary((g, keep) in with_subset(1, 9)) {
        let family = PatternFamily::sqrt2_obstructions();
        if is_pattern_free(&g, &family).free && !keep.is_empty() {
            prop_assert!(is_pattern_free(&g.induced(&keep).unwrap(), &family).free);
        }
    }

    #[test]
    fn maximal_cliques_match_subsets(g in graph(1, 11)) {
        let lib: Vec<Vec<usize>> = maximal_positive_cliques(&g, 1).unwrap().cliques.into_iter().map(|c| c.vertices).collect();
        prop_assert_eq!(lib, common::brute_maximal_positive_cliques(&g));
    }

    #[test]
    fn special_matrix_matches_definition(h in hoffman(6, 4)) {
        let lib = special_matrix(&h).matrix.to_rows();
        let oracle = common::special_matrix(&h);
        for (a, b) in lib.iter().zip(&oracle) {
            for (x, y) in a.iter().zip(b) {
                prop_assert_eq!(*x as f64, *y);
            }
        }
        let trace: i64 = (0..lib.len()).map(|i| lib[i][i]).sum();
        let fat_edges: usize = h.slim_vertices().iter().map(|&x| h.fat_neighbors(x).len()).sum();
        prop_assert_eq!(trace, -(fat_edges as i64));
        prop_assert!((h.lambda_min() - common::min_eigenvalue(&oracle)).abs() <= 1e-9);
    }

    #[test]
    fn hoffman_switching_conjugates_special_matrix(h in hoffman(6, 3), mask in prop::collection::vec(any::<bool>(), 9)) {
        let u = SwitchingMap::new((0..h.order()).filter(|&v| mask[v]));
        let switched = hoffman_switch(&h, &u).unwrap();
        let s = special_matrix(&h);
        let t = special_matrix(&switched);
        let d = |x: usize| if u.contains(x) { -1 } else { 1 };
        for (i, &x) in s.slim.iter().enumerate() {
            for (j, &y) in s.slim.iter().enumerate() {
                prop_assert_eq!(t.matrix.get(i, j), d(x) * s.matrix.get(i, j) * d(y));
            }
        }
        prop_assert!((h.lambda_min() - switched.lambda_min()).abs() <= 1e-9);
    }

    #[test]
    fn induced_hoffman_subgraphs_do_not_lower_lambda(h in hoffman(7, 3), mask in prop::collection::vec(any::<bool>(), 7)) {
        let keep: Vec<usize> = h.slim_vertices().into_iter().filter(|&x| mask[x]).collect();
        if !keep.is_empty() {
            let sub = h.induced_on_slim(&keep).unwrap();
            prop_assert!(sub.lambda_min() >= h.lambda_min() - 1e-9);
        }
    }

    #[test]
    fn expansion_is_bounded_below(h in hoffman(4, 3), n in 1usize..8) {
        let g = expand(&h, n).unwrap();
        let slim = h.slim_vertices();
        prop_assert_eq!(g.order(), slim.len() + n * h.fat_vertices().len());
        prop_assert_eq!(g.induced(&(0..slim.len()).collect::<Vec<_>>()).unwrap(), h.slim_graph());
        prop_assert!(smallest_eigenvalue(&g) >= h.lambda_min() - 1e-9);
    }

    #[test]
    fn cholesky_reproduces_gram(rows in 1usize..5, cols in 1usize..6, cells in prop::collection::vec(-2i64..=2, 30)) {
        let b: Vec<Vec<i64>> = (0..rows).map(|i| cells[i * cols..(i + 1) * cols].to_vec()).collect();
        let gram = common::column_gram(&b);
        let m = SymmetricMatrix::from_rows(
            &gram.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect::<Vec<_>>(),
        )
        .unwrap();
        let chol = cholesky_psd(&m, 1e-9).unwrap();
        prop_assert!(chol.rank <= rows);
        prop_assert!(chol.residual(&m) <= 1e-8);
    }

    #[test]
    fn lifted_factors_project_back(h in hoffman(4, 3)) {
        let m = integrality_shift(h.lambda_min()).max(1) as usize;
        let reduced = hoffman_reduced_target(&h, m, 1);
        if let FactorOutcome::Found { n } = integer_gram_factor(&reduced, 2 * reduced.rows(), 200_000).unwrap() {
            let full = lift_reduced_factor(&h, 1, &n).unwrap();
            prop_assert_eq!(full.gram_of_columns(), hoffman_full_target(&h, m, 1));
            // projection keeps every row; the fat blocks come back as zeros
            let back = project_full_factor(&h, &full).unwrap();
            prop_assert_eq!(back.gram_of_columns(), reduced);
            let rows = back.to_rows();
            prop_assert_eq!(&rows[..n.rows()], &n.to_rows()[..]);
            prop_assert!(rows[n.rows()..].iter().all(|r| r.iter().all(|&v| v == 0)));
        }
    }

    #[test]
    fn associated_graph_is_independent_of_representatives(
        k in 4usize..7,
        extra in 1usize..4,
        cells in prop::collection::vec(0u8..3, 40),
    ) {
        // two positive k-cliques sharing k-1 vertices, plus a sparse fringe
        let n = k + 1 + extra;
        let mut edges = Vec::new();
        for u in 0..=k {
            for v in u + 1..=k {
                if (u, v) != (0, k) {
                    edges.push((u, v, Sign::Plus));
                }
            }
        }
        let mut c = cells.iter().cycle();
        for v in k + 1..n {
            for u in 0..v {
                match c.next().unwrap() {
                    1 if u > k => edges.push((u, v, Sign::Plus)),
                    2 => edges.push((u, v, Sign::Minus)),
                    _ => {}
                }
            }
        }
        let g = SignedGraph::new(n, &edges).unwrap();
        let m = 1;
        let threshold = sigraph::hoffman::clique_threshold(m);
        let first = associated_hoffman_graph_with(&g, m, threshold, |_| 0);
        let last = associated_hoffman_graph_with(&g, m, threshold, |c| c.len() - 1);
        match (first, last) {
            (Ok(first), Ok(last)) => {
                prop_assert!(first.warnings.is_empty());
                prop_assert_eq!(first.host.slim_graph(), g.clone());
                prop_assert_eq!(special_matrix(&first.host), special_matrix(&last.host));
            }
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            (a, b) => prop_assert!(false, "representatives disagree: {:?} / {:?}", a.is_ok(), b.is_ok()),
        }
    }
}

#[test]
fn adjacency_matrix_is_the_signed_adjacency() {
    let g = SignedGraph::new(3, &[(0, 1, Sign::Plus), (1, 2, Sign::Minus)]).unwrap();
    assert_eq!(adjacency_matrix(&g).rows(), common::dense(&g));
    let unit = IntMatrix::identity(2);
    assert_eq!(unit.gram_of_columns(), unit);
}
