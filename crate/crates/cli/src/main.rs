//! `sigraph`: JSON analysis reports for signed graphs and Hoffman signed graphs.
//!
//! Exit codes: 0 success, 1 a check or verification failed, 2 bad input.

mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sigraph::checks::{run_suite, Suite, DEFAULT_SEED};
use sigraph::cliques::{m_neighborhoods, maximal_positive_cliques};
use sigraph::hoffman::{
    associated_hoffman_graph, clique_threshold, convergence_probe, hoffman_eigenvalues, special_matrix,
};
use sigraph::lattice::{integrability_search, verify_certificate, DEFAULT_BUDGET};
use sigraph::spectra::graph_spectrum;
use sigraph::structure::{
    catalog_f_minus2, classify_small, contains_minimal_forbidden, decompose, verify_decomposition,
};
use sigraph::switching::is_pattern_free;
use sigraph::{
    DecompositionParams, HoffmanSignedGraph, IntegrabilityCertificate, IntegrabilityOutcome, KappaConfig,
    PatternFamily, SignedGraph,
};

use report::{sig12, sig12_all, Report};

#[derive(Parser)]
#[command(name = "sigraph", version, about = "Signed graphs with a fixed smallest eigenvalue")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full spectrum and smallest eigenvalue of a signed graph.
    Spectrum { graph: PathBuf },
    /// Maximal positive cliques, optionally with their m-neighbourhoods.
    Cliques {
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        min_size: usize,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Special matrix and eigenvalues of a Hoffman signed graph.
    Hoffman {
        hoffman: PathBuf,
        /// Expansion sizes to probe, comma separated.
        #[arg(long, value_delimiter = ',')]
        probe: Vec<usize>,
    },
    /// Associated Hoffman graph of the maximal positive cliques with at least n vertices.
    Associated {
        graph: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Allow n below 2(m²+m).
        #[arg(long)]
        force: bool,
    },
    /// Quasi-positive-clique decomposition with its verification report.
    Decompose {
        graph: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<f64>,
        #[arg(long)]
        kappa_file: Option<PathBuf>,
        /// Skip the K-tilde precondition and allow n below 2(m²+m).
        #[arg(long)]
        force: bool,
    },
    /// Search for an s-integrability certificate.
    Integrable {
        graph: PathBuf,
        #[arg(long)]
        s: u64,
        /// Most rows a certificate may have (default: twice the order).
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Also write the certificate here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate against a graph with exact integer arithmetic.
    Verify { graph: PathBuf, cert: PathBuf },
    /// Switching onto a positive clique, or an induced obstruction.
    Classify { graph: PathBuf },
    /// The forbidden special matrices for -2.
    Catalog,
    /// Run a seeded property suite.
    Checks {
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report).expect("reports serialize");
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Report> {
    match command {
        Command::Spectrum { graph } => spectrum(&graph),
        Command::Cliques { graph, min_size, m } => cliques(&graph, min_size, m),
        Command::Hoffman { hoffman, probe } => hoffman_cmd(&hoffman, &probe),
        Command::Associated { graph, m, n, force } => associated(&graph, m, n, force),
        Command::Decompose {
            graph,
            m,
            n,
            lambda,
            kappa_file,
            force,
        } => decompose_cmd(&graph, m, n, lambda, kappa_file.as_deref(), force),
        Command::Integrable {
            graph,
            s,
            max_dim,
            budget,
            out,
        } => integrable(&graph, s, max_dim, budget, out.as_deref()),
        Command::Verify { graph, cert } => verify(&graph, &cert),
        Command::Classify { graph } => classify(&graph),
        Command::Catalog => catalog(),
        Command::Checks { suite, seed } => checks(suite, seed),
    }
}

fn spectrum(path: &Path) -> Result<Report> {
    let mut r = Report::new("spectrum");
    let g: SignedGraph = r.load(path, "graph")?;
    let spec = graph_spectrum(&g);
    r.results = json!({
        "order": g.order(),
        "eigenvalues": sig12_all(&spec.eigenvalues),
        "lambda_min": if g.order() == 0 { Value::Null } else { json!(sig12(spec.min())) },
    });
    Ok(r)
}

fn cliques(path: &Path, min_size: usize, m: Option<usize>) -> Result<Report> {
    let mut r = Report::new("cliques");
    let g: SignedGraph = r.load(path, "graph")?;
    r.parameters = json!({ "min_size": min_size, "m": m });
    let catalog = maximal_positive_cliques(&g, min_size)?;
    let splits = match m {
        Some(m) => {
            let splits = catalog
                .cliques
                .iter()
                .map(|c| m_neighborhoods(&g, c, m))
                .collect::<sigraph::Result<Vec<_>>>()?;
            for (c, s) in catalog.cliques.iter().zip(&splits) {
                if !s.overlap.is_empty() {
                    r.warnings.push(format!(
                        "clique {:?}: vertices {:?} lie in both m-neighbourhoods",
                        c.vertices, s.overlap
                    ));
                }
            }
            json!(splits)
        }
        None => Value::Null,
    };
    eprintln!("{} maximal positive cliques", catalog.cliques.len());
    r.results = json!({ "catalog": catalog, "neighborhoods": splits });
    Ok(r)
}

fn hoffman_cmd(path: &Path, probe: &[usize]) -> Result<Report> {
    let mut r = Report::new("hoffman");
    let h: HoffmanSignedGraph = r.load(path, "Hoffman graph")?;
    r.parameters = json!({ "probe": probe });
    let s = special_matrix(&h);
    let spec = hoffman_eigenvalues(&h);
    let forbidden = if h.is_fat_graph() && !h.slim_vertices().is_empty() {
        json!(contains_minimal_forbidden(&h)?)
    } else {
        r.warnings.push("not a fat Hoffman graph; forbidden-matrix search skipped".into());
        Value::Null
    };
    let table = if probe.is_empty() {
        Value::Null
    } else {
        let t = convergence_probe(&h, probe)?;
        let rows: Vec<Value> = t.rows.iter().map(|&(n, l)| json!({ "n": n, "lambda_min": sig12(l) })).collect();
        json!({ "target": sig12(t.target), "rows": rows })
    };
    r.results = json!({
        "slim": s.slim,
        "special_matrix": s.matrix.to_rows(),
        "eigenvalues": sig12_all(&spec.eigenvalues),
        "lambda_min": if spec.eigenvalues.is_empty() { Value::Null } else { json!(sig12(spec.min())) },
        "fat": h.is_fat_graph(),
        "forbidden_witness": forbidden,
        "expansion_probe": table,
    });
    Ok(r)
}

/// Refuses `n` below the clique threshold unless forced; a forced run
/// records the warning.
fn threshold_gate(r: &mut Report, m: usize, n: usize, force: bool) -> Result<()> {
    let threshold = clique_threshold(m);
    if n < threshold {
        if !force {
            bail!("n = {n} is below 2(m²+m) = {threshold}; pass --force to run in exploration mode");
        }
        r.warnings.push(format!("exploration mode: n = {n} is below 2(m²+m) = {threshold}"));
    }
    Ok(())
}

fn associated(path: &Path, m: usize, n: usize, force: bool) -> Result<Report> {
    let mut r = Report::new("associated");
    let g: SignedGraph = r.load(path, "graph")?;
    r.parameters = json!({ "m": m, "n": n, "force": force });
    threshold_gate(&mut r, m, n, force)?;
    let a = associated_hoffman_graph(&g, m, n)?;
    for w in &a.warnings {
        if !r.warnings.contains(w) && !w.starts_with("exploration mode") {
            r.warnings.push(w.clone());
        }
    }
    let s = special_matrix(&a.host);
    r.results = json!({
        "hoffman": a.host,
        "fat_sources": a.fat_sources,
        "special_matrix": s.matrix.to_rows(),
        "lambda_min": sig12(a.host.lambda_min()),
    });
    Ok(r)
}

fn decompose_cmd(
    path: &Path,
    m: usize,
    n: usize,
    lambda: Option<f64>,
    kappa_file: Option<&Path>,
    force: bool,
) -> Result<Report> {
    let mut r = Report::new("decompose");
    let g: SignedGraph = r.load(path, "graph")?;
    let mut params = DecompositionParams::new(m, n);
    params.lambda = lambda;
    if let Some(k) = kappa_file {
        params.kappa = Some(r.load::<KappaConfig>(k, "kappa config")?);
    }
    params.validate()?;
    r.parameters = json!({ "m": m, "n": n, "lambda": lambda, "kappa": params.kappa, "force": force });

    if force {
        r.warnings.push("K-tilde precondition not checked (--force)".into());
    } else {
        let family = PatternFamily::ktilde(m);
        let check = is_pattern_free(&g, &family);
        if let Some(w) = check.witness {
            eprintln!("precondition failed: induced K-tilde on {:?}", w.vertices);
            r.passed = false;
            r.results = json!({
                "precondition": "failed",
                "pattern": family.name,
                "witness": w,
            });
            return Ok(r);
        }
    }
    threshold_gate(&mut r, m, n, force)?;

    let d = decompose(&g, &params)?;
    let report = verify_decomposition(&g, &d);
    for w in &d.warnings {
        if !w.starts_with("exploration mode") {
            r.warnings.push(w.clone());
        }
    }
    if !report.coverage_gaps.is_empty() {
        r.warnings.push(format!("vertices {:?} lie in no piece", report.coverage_gaps));
    }
    eprintln!("{:<32} {:>6} {:>6}", "check", "value", "bound");
    for b in &report.bounds_checked {
        eprintln!("{:<32} {:>6} {:>6} {}", b.name, b.value, b.bound, if b.satisfied { "ok" } else { "FAIL" });
    }
    r.passed = report.passed();
    r.results = json!({ "precondition": if force { "skipped" } else { "passed" }, "decomposition": d, "report": report });
    Ok(r)
}

fn integrable(path: &Path, s: u64, max_dim: Option<usize>, budget: u64, out: Option<&Path>) -> Result<Report> {
    let mut r = Report::new("integrable");
    let g: SignedGraph = r.load(path, "graph")?;
    let max_dim = max_dim.unwrap_or(2 * g.order());
    r.parameters = json!({ "s": s, "max_dim": max_dim, "budget": budget });
    let outcome = integrability_search(&g, s, max_dim, budget)?;
    r.results = match &outcome {
        IntegrabilityOutcome::Found { certificate } => {
            if let Some(out) = out {
                let text = serde_json::to_string_pretty(certificate)?;
                std::fs::write(out, text + "\n").with_context(|| format!("writing {}", out.display()))?;
            }
            eprintln!("certificate with {} rows", certificate.n.rows());
            json!({ "status": "found", "certificate": certificate })
        }
        IntegrabilityOutcome::Impossible { max_dim } => {
            r.passed = false;
            json!({ "status": "impossible", "max_dim": max_dim })
        }
        IntegrabilityOutcome::Undecided { nodes } => {
            r.passed = false;
            json!({ "status": "undecided", "nodes": nodes })
        }
    };
    Ok(r)
}

fn verify(graph: &Path, cert: &Path) -> Result<Report> {
    let mut r = Report::new("verify");
    let g: SignedGraph = r.load(graph, "graph")?;
    let c: IntegrabilityCertificate = r.load(cert, "certificate")?;
    let ok = verify_certificate(&c, &g)?;
    r.passed = ok;
    r.results = json!({ "valid": ok, "s": c.s, "shift": c.shift, "rows": c.n.rows() });
    Ok(r)
}

fn classify(path: &Path) -> Result<Report> {
    let mut r = Report::new("classify");
    let g: SignedGraph = r.load(path, "graph")?;
    r.results = json!(classify_small(&g)?);
    Ok(r)
}

fn catalog() -> Result<Report> {
    let mut r = Report::new("catalog");
    let bound = -1.0 - 2f64.sqrt() + 1e-9;
    let entries: Vec<Value> = catalog_f_minus2()
        .entries
        .iter()
        .map(|e| {
            json!({
                "matrix": e.matrix.to_rows(),
                "source": e.source,
                "lambda_min": sig12(e.lambda_min),
                "below_bound": e.lambda_min <= bound,
            })
        })
        .collect();
    r.passed = entries.iter().all(|e| e["below_bound"] == json!(true));
    r.results = json!({ "bound": sig12(-1.0 - 2f64.sqrt()), "entries": entries });
    Ok(r)
}

fn checks(suite: Suite, seed: u64) -> Result<Report> {
    let mut r = Report::new("checks");
    r.seed = Some(seed);
    r.parameters = json!({ "suite": suite });
    let s = run_suite(suite, seed)?;
    eprintln!("{suite}: {} passed, {} failed", s.passed, s.failed);
    for a in s.assertions.iter().filter(|a| !a.passed) {
        eprintln!("  FAIL {}", a.name);
    }
    r.passed = s.ok();
    r.results = json!(s);
    Ok(r)
}
