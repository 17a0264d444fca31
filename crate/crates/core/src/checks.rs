//! Seeded property suites. Every assertion is recorded with enough detail
//! to replay a failing case.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cliques::{maximal_positive_cliques, trichotomy_check, PositiveClique, TrichotomyCase};
use crate::error::{Error, Result};
use crate::graph::{ktilde_minus, Sign, SignedGraph};
use crate::hoffman::{expand, hoffman_switch, HoffmanSignedGraph};
use crate::lattice::{block_decomposition_deviation, build_representation, integrality_shift, reduce_representation};
use crate::random;
use crate::spectra::{graph_spectrum, smallest_eigenvalue};
use crate::structure::catalog_f_minus2;

pub const DEFAULT_SEED: u64 = 0x5167_7261_7068;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Switching,
    Interlacing,
    Hoffman,
    Trichotomy,
    Catalog,
    Convergence,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Switching,
        Suite::Interlacing,
        Suite::Hoffman,
        Suite::Trichotomy,
        Suite::Catalog,
        Suite::Convergence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Switching => "switching",
            Suite::Interlacing => "interlacing",
            Suite::Hoffman => "hoffman",
            Suite::Trichotomy => "trichotomy",
            Suite::Catalog => "catalog",
            Suite::Convergence => "convergence",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| crate::error::invalid("suite", "a known suite name", s))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub assertions: Vec<Assertion>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

struct Recorder(Vec<Assertion>);

impl Recorder {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: Value) {
        self.0.push(Assertion {
            name: name.into(),
            passed,
            detail,
        });
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<SuiteReport> {
    let mut rec = Recorder(Vec::new());
    let mut rng = random::rng(seed);
    match suite {
        Suite::Switching => switching(&mut rng, &mut rec),
        Suite::Interlacing => interlacing(&mut rng, &mut rec),
        Suite::Hoffman => hoffman(&mut rng, &mut rec)?,
        Suite::Trichotomy => trichotomy(&mut rng, &mut rec)?,
        Suite::Catalog => catalog(&mut rec),
        Suite::Convergence => convergence(&mut rec)?,
    }
    let failed = rec.0.iter().filter(|a| !a.passed).count();
    Ok(SuiteReport {
        suite,
        seed,
        passed: rec.0.len() - failed,
        failed,
        assertions: rec.0,
    })
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn switching(rng: &mut random::SuiteRng, rec: &mut Recorder) {
    for i in 0..200 {
        let n = rng.gen_range(1..=12);
        let g = random::signed_graph(rng, n, 0.5, 0.5);
        let u = random::switching_set(rng, n);
        let h = g.switch(&u).expect("in range");
        let gap = max_gap(&graph_spectrum(&g).eigenvalues, &graph_spectrum(&h).eigenvalues);
        let involution = h.switch(&u).expect("in range") == g;
        rec.check(
            format!("switching_{i}"),
            gap <= 1e-9 && involution && g.same_underlying(&h),
            json!({ "graph": g, "switch_set": u, "max_gap": gap }),
        );
    }
}

fn interlacing(rng: &mut random::SuiteRng, rec: &mut Recorder) {
    for i in 0..200 {
        let n = rng.gen_range(2..=12);
        let g = random::signed_graph(rng, n, 0.5, 0.5);
        let k = rng.gen_range(1..=n);
        let mut subset = random::permutation(rng, n);
        subset.truncate(k);
        subset.sort_unstable();
        let whole = smallest_eigenvalue(&g);
        let part = smallest_eigenvalue(&g.induced(&subset).expect("valid subset"));
        rec.check(
            format!("interlacing_{i}"),
            part >= whole - 1e-9,
            json!({ "graph": g, "subset": subset, "lambda_min": whole, "induced_lambda_min": part }),
        );
    }
}

fn hoffman(rng: &mut random::SuiteRng, rec: &mut Recorder) -> Result<()> {
    for i in 0..100 {
        let h = random::hoffman_graph(rng, 8, 4);
        let detail = |extra: Value| json!({ "hoffman": h, "check": extra });
        let lambda = h.lambda_min();

        let u = random::switching_set(rng, h.order());
        let switched = hoffman_switch(&h, &u)?;
        let gap = max_gap(
            &crate::hoffman::hoffman_eigenvalues(&h).eigenvalues,
            &crate::hoffman::hoffman_eigenvalues(&switched).eigenvalues,
        );
        rec.check(format!("hoffman_switch_{i}"), gap <= 1e-9, detail(json!({ "switch_set": u, "gap": gap })));

        let slim = h.slim_vertices();
        let mut keep = slim.clone();
        keep.retain(|_| rng.gen_bool(0.6));
        if !keep.is_empty() {
            let sub = h.induced_on_slim(&keep)?;
            let l = sub.lambda_min();
            rec.check(
                format!("hoffman_induced_{i}"),
                l >= lambda - 1e-9,
                detail(json!({ "slim": keep, "sub_lambda_min": l, "lambda_min": lambda })),
            );
        }

        let m = integrality_shift(lambda).max(1) as usize;
        let phi = build_representation(&h, m)?;
        let psi = reduce_representation(&phi, &h)?;
        let full = phi.table_deviation(&h);
        let reduced = psi.table_deviation(&h);
        let block = block_decomposition_deviation(&phi, &psi, &h);
        rec.check(
            format!("representation_{i}"),
            full <= 1e-8 && reduced <= 1e-8 && block <= 1e-8,
            detail(json!({ "m": m, "full": full, "reduced": reduced, "block": block })),
        );
        if m > 1 && lambda < -((m - 1) as f64) {
            let refused = matches!(build_representation(&h, m - 1), Err(Error::NoRepresentation { .. }));
            rec.check(format!("representation_refused_{i}"), refused, detail(json!({ "m": m - 1 })));
        }
    }
    Ok(())
}

fn trichotomy(rng: &mut random::SuiteRng, rec: &mut Recorder) -> Result<()> {
    let m = 2;
    let mut produced = 0;
    let mut attempt = 0;
    while produced < 50 && attempt < 500 {
        attempt += 1;
        let clique = rng.gen_range(4..=6);
        let extra = rng.gen_range(1..=4);
        let Some(g) = random::ktilde_free_with_clique(rng, m, clique, extra, 50) else {
            continue;
        };
        produced += 1;
        let catalog = maximal_positive_cliques(&g, 3 * m - 2)?;
        for c in &catalog.cliques {
            let r = trichotomy_check(&g, c, m)?;
            let bad: Vec<usize> = r.violations().map(|v| v.vertex).collect();
            rec.check(
                format!("trichotomy_{produced}_{:?}", c.vertices),
                bad.is_empty(),
                json!({ "graph": g, "clique": c.vertices, "violations": bad }),
            );
        }
    }
    rec.check("trichotomy_corpus_size", produced == 50, json!({ "graphs": produced }));
    let k = ktilde_minus(m);
    let c = PositiveClique::new(&k, 1..=2 * m)?;
    let r = trichotomy_check(&k, &c, m)?;
    let bad: Vec<usize> = r.violations().map(|v| v.vertex).collect();
    rec.check(
        "trichotomy_ktilde_minus",
        bad == [0] && r.vertices[0].case == TrichotomyCase::Violation,
        json!({ "violations": bad }),
    );
    Ok(())
}

fn catalog(rec: &mut Recorder) {
    let bound = -1.0 - 2f64.sqrt() + 1e-9;
    for (i, e) in catalog_f_minus2().entries.iter().enumerate() {
        rec.check(
            format!("catalog_{i}"),
            e.lambda_min <= bound,
            json!({ "matrix": e.matrix.to_rows(), "lambda_min": e.lambda_min }),
        );
    }
}

/// Six Hoffman graphs for the expansion bound and its limit.
pub fn convergence_battery() -> Vec<(&'static str, HoffmanSignedGraph)> {
    use Sign::*;
    let one = SignedGraph::empty(1);
    let two_pos = SignedGraph::new(2, &[(0, 1, Plus)]).unwrap();
    let two_neg = SignedGraph::new(2, &[(0, 1, Minus)]).unwrap();
    let path = SignedGraph::new(3, &[(0, 1, Plus), (1, 2, Minus)]).unwrap();
    let build = |slim: &SignedGraph, fats: &[Vec<(usize, Sign)>]| HoffmanSignedGraph::attach(slim, fats).unwrap();
    vec![
        ("h0_two_fat", build(&one, &[vec![(0, Plus)], vec![(0, Plus)]])),
        ("h0_three_fat", build(&one, &[vec![(0, Plus)], vec![(0, Plus)], vec![(0, Plus)]])),
        ("h0_mixed_signs", build(&one, &[vec![(0, Plus)], vec![(0, Minus)], vec![(0, Plus)]])),
        ("shared_fat_positive_edge", build(&two_pos, &[vec![(0, Plus), (1, Plus)], vec![(0, Plus)]])),
        ("shared_fat_negative_edge", build(&two_neg, &[vec![(0, Plus), (1, Minus)], vec![(1, Minus)]])),
        (
            "mixed_path",
            build(&path, &[vec![(0, Plus), (1, Plus)], vec![(1, Minus), (2, Plus)], vec![(2, Plus)]]),
        ),
    ]
}

fn convergence(rec: &mut Recorder) -> Result<()> {
    for (name, h) in convergence_battery() {
        let target = h.lambda_min();
        for n in 1..=50 {
            let l = smallest_eigenvalue(&expand(&h, n)?);
            rec.check(
                format!("{name}_lower_bound_n{n}"),
                l >= target - 1e-9,
                json!({ "hoffman": h, "n": n, "lambda_min": l, "target": target }),
            );
        }
        let l = smallest_eigenvalue(&expand(&h, 200)?);
        rec.check(
            format!("{name}_limit_n200"),
            (l - target).abs() <= 0.05,
            json!({ "hoffman": h, "n": 200, "lambda_min": l, "target": target }),
        );
    }
    Ok(())
}
