//! `ratiocert`: build the graph families, certify ratio bounds and enumerate
//! maximum independent sets from the command line.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ratiocert::certificate::{Certificate, ErrorKind, Status};
use ratiocert::certifier::{certify_family, p33_core_evidence, ratio_bound, CertifyOptions, Family, SeedStrategy};
use ratiocert::constructions::{
    build_kneser, build_line_graph_complete, build_p33, build_p33_m, build_q_kneser, build_w1k, build_witt,
    round_robin_one_factorization,
};
use ratiocert::graph::{check_homomorphism, endomorphism_search, integer_spectrum, EndoMode, Graph, GraphError};
use serde_json::json;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const DEFAULT_ENDO_BUDGET: u64 = 100_000_000;

#[derive(Parser)]
#[command(name = "ratiocert", version, about = "Exact ratio-bound certificates and maximum independent sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the graph (text format) and its incidence matrix (CSV) to a directory.
    Build {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Integer spectrum and ratio bound of a regular graph file.
    Spectrum { graph: PathBuf },
    /// Run the full certification pipeline.
    Certify {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Write the certificate JSON here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Record stage timings in the certificate (makes it run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Print the maximum independent sets only.
    Enumerate {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Combinatorial evidence behind the core argument.
    CoreEvidence {
        target: EvidenceTarget,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Endomorphism search on a graph file.
    Endo {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = EndoArg::All)]
        mode: EndoArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    P33,
    Witt,
    QKneser,
    Kneser,
    LineComplete,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvidenceTarget {
    P33,
}

#[derive(Clone, Copy, ValueEnum)]
enum EndoArg {
    /// Count every endomorphism.
    All,
    /// Stop at the first proper endomorphism.
    Proper,
}

#[derive(Args)]
struct FamilyArgs {
    family: FamilyName,
    /// Field size (q-kneser).
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// Ambient dimension or ground set size (q-kneser, kneser).
    #[arg(long, default_value_t = 5)]
    v: usize,
    /// Subspace dimension or subset size (q-kneser, kneser).
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Points of the complete graph (line-complete).
    #[arg(long, default_value_t = 6)]
    n: usize,
}

impl FamilyArgs {
    fn family(&self) -> Result<Family, Failure> {
        let family = self.unchecked();
        family.validate().map_err(|e| {
            let flags = match family {
                Family::QKneser { .. } => "--q/--v/--k",
                Family::Kneser { .. } => "--v/--k",
                _ => "--n",
            };
            Failure::Usage(format!("{flags}: {e}"))
        })?;
        Ok(family)
    }

    fn unchecked(&self) -> Family {
        match self.family {
            FamilyName::P33 => Family::P33,
            FamilyName::Witt => Family::Witt,
            FamilyName::QKneser => Family::QKneser {
                q: self.q,
                v: self.v,
                k: self.k,
            },
            FamilyName::Kneser => Family::Kneser { v: self.v, k: self.k },
            FamilyName::LineComplete => Family::LineComplete { n: self.n },
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Seed family: `singletons` or `pairs:A<class>`.
    #[arg(long)]
    seeds: Option<SeedStrategy>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Largest rank(C) the sweep accepts.
    #[arg(long, default_value_t = ratiocert::certifier::DEFAULT_RANK_CAP)]
    rank_cap: usize,
}

enum Failure {
    Usage(String),
    Failed(String),
    Budget(String),
}

type CmdResult = Result<ExitCode, Failure>;

fn budget_override() -> Result<Option<u64>, Failure> {
    match std::env::var("RATIOCERT_BUDGET") {
        Ok(text) => text
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("RATIOCERT_BUDGET: expected a node count, got {text:?}"))),
        Err(_) => Ok(None),
    }
}

fn graph_failure(e: GraphError) -> Failure {
    match e {
        GraphError::BudgetExceeded(_) => Failure::Budget(e.to_string()),
        other => Failure::Failed(other.to_string()),
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Graph::from_text(&text).map_err(|e| Failure::Failed(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Failed(format!("{}: {e}", path.display())))
}

fn build(family: Family, out: &Path) -> CmdResult {
    fs::create_dir_all(out).map_err(|e| Failure::Failed(format!("{}: {e}", out.display())))?;
    let fail = |e: ratiocert::constructions::ConstructionError| Failure::Failed(e.to_string());
    let (graph, matrix) = match family {
        Family::P33 => {
            let p = build_p33().map_err(fail)?;
            let m = build_p33_m(&p.partitions);
            (p.graph, Some(("M.csv", m)))
        }
        Family::Witt => {
            let w = build_witt().map_err(fail)?;
            (w.graph, Some(("M.csv", w.m)))
        }
        Family::QKneser { q, v, k } => {
            let (g, _) = build_q_kneser(q, v, k).map_err(fail)?;
            (g, Some(("W.csv", build_w1k(q, v, k).map_err(fail)?)))
        }
        Family::Kneser { v, k } => {
            let kn = build_kneser(v, k).map_err(fail)?;
            (kn.graph, Some(("star.csv", kn.star)))
        }
        Family::LineComplete { n } => (build_line_graph_complete(n).map_err(fail)?, None),
    };
    write_file(&out.join("graph.txt"), &graph.to_text())?;
    println!("{}: {} vertices, {} edges -> {}", family, graph.vertex_count(), graph.edge_count(), out.join("graph.txt").display());
    if let Some((name, m)) = matrix {
        write_file(&out.join(name), &m.to_csv())?;
        println!("{}x{} matrix -> {}", m.rows(), m.cols(), out.join(name).display());
    }
    Ok(ExitCode::SUCCESS)
}

fn spectrum(path: &Path) -> CmdResult {
    let g = read_graph(path)?;
    let k = g.valency().map_err(graph_failure)?;
    let s = integer_spectrum(&g).map_err(graph_failure)?;
    println!("vertices {}  valency {k}", g.vertex_count());
    println!("{:>10}  {:>12}", "eigenvalue", "multiplicity");
    for (l, m) in &s.pairs {
        println!("{l:>10}  {m:>12}");
    }
    match ratio_bound(g.vertex_count(), k as i64, s.least) {
        Ok(r) => println!("ratio bound {}", r.bound),
        Err(e) => println!("ratio bound unavailable: {e}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn certify_options(run: &RunArgs, timings: bool) -> Result<CertifyOptions, Failure> {
    if run.jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    let mut opts = CertifyOptions {
        jobs: run.jobs,
        seeds: run.seeds,
        rank_cap: run.rank_cap,
        timings,
        ..Default::default()
    };
    if let Some(b) = budget_override()? {
        opts.budget = b;
    }
    Ok(opts)
}

fn exit_for(cert: &Certificate) -> ExitCode {
    match (&cert.error, cert.status) {
        (Some(e), _) if e.kind == ErrorKind::Budget => ExitCode::from(EXIT_BUDGET),
        (_, Status::Certified) => ExitCode::SUCCESS,
        _ => ExitCode::from(EXIT_FAILED),
    }
}

fn print_summary(cert: &Certificate) {
    println!("family      {}", cert.family);
    for (k, v) in &cert.parameters {
        println!("  {k:<9} {v}");
    }
    if let Some(r) = &cert.ratio {
        println!(
            "ratio bound {} (v={}, k={}, tau={}){}",
            r.bound,
            r.v,
            r.valency,
            r.least_eigenvalue,
            if r.tight { ", tight" } else { "" }
        );
    }
    if let Some(e) = &cert.enumeration {
        println!(
            "enumeration {} seeds, {} candidates, rank(C) in {}..={}",
            e.seeds_tried, e.candidates_tested, e.rank_c_min, e.rank_c_max
        );
    }
    println!("maximum sets {}", cert.max_independent_sets.len());
    for c in &cert.identity_checks {
        let mark = if c.passed { "pass" } else { "FAIL" };
        if c.detail.is_empty() {
            println!("  [{mark}] {}", c.name);
        } else {
            println!("  [{mark}] {}: {}", c.name, c.detail);
        }
    }
    for n in &cert.notes {
        println!("note: {n}");
    }
    if let Some(e) = &cert.error {
        println!("error ({:?}): {}", e.kind, e.message);
    }
    println!("status      {:?}", cert.status);
}

fn certify(family: Family, run: &RunArgs, json: Option<&Path>, timings: bool) -> CmdResult {
    let opts = certify_options(run, timings)?;
    let cert = certify_family(family, &opts);
    print_summary(&cert);
    if let Some(path) = json {
        write_file(path, &cert.to_json())?;
    }
    Ok(exit_for(&cert))
}

fn enumerate(family: Family, run: &RunArgs) -> CmdResult {
    let opts = certify_options(run, false)?;
    let cert = certify_family(family, &opts);
    for set in &cert.max_independent_sets {
        println!("{}", set.join(" "));
    }
    if cert.status != Status::Certified {
        for c in cert.failed_checks() {
            eprintln!("failed check: {}", c.name);
        }
        if let Some(e) = &cert.error {
            eprintln!("error: {}", e.message);
        }
    }
    Ok(exit_for(&cert))
}

fn core_evidence(json_path: Option<&Path>) -> CmdResult {
    let budget = budget_override()?.unwrap_or(DEFAULT_ENDO_BUDGET);
    let p = build_p33().map_err(|e| Failure::Failed(e.to_string()))?;
    let report = p33_core_evidence(&p).map_err(|e| Failure::Failed(e.to_string()))?;
    println!("pairwise intersection sizes {:?}", report.size_counts);
    println!("  pattern 70/10/20: {}", report.pattern_matches);
    println!("  size 10 exactly on edges of L(K_9): {}", report.matches_line_graph);
    println!("quadruple intersection {:?}", report.quadruple);
    println!("fan of S_12 by third point: sizes {:?}, partition {}", report.fan_sizes, report.fan_partitions_s12);

    let lk5 = build_line_graph_complete(5).map_err(|e| Failure::Failed(e.to_string()))?;
    let endo = endomorphism_search(&lk5, EndoMode::EnumerateAll, budget).map_err(graph_failure)?;
    let endo_ok = endo.automorphisms == 120 && endo.proper_endomorphisms == 0;
    println!(
        "L(K_5): {} automorphisms, {} proper endomorphisms",
        endo.automorphisms, endo.proper_endomorphisms
    );

    let mut round_robin = Vec::new();
    for m in 2..=5usize {
        let n = 2 * m;
        let f = round_robin_one_factorization(n).map_err(|e| Failure::Failed(e.to_string()))?;
        let g = build_line_graph_complete(n).map_err(|e| Failure::Failed(e.to_string()))?;
        let map: Vec<usize> = f.colour.iter().map(|c| c - 1).collect();
        let ok = check_homomorphism(&g, &Graph::complete(n - 1), &map);
        println!("round robin L(K_{n}) -> K_{}: {}", n - 1, if ok { "homomorphism" } else { "FAILED" });
        round_robin.push(json!({ "n": n, "homomorphism": ok }));
    }
    let rr_ok = round_robin.iter().all(|r| r["homomorphism"] == true);
    if let Some(path) = json_path {
        let doc = json!({
            "p33": report,
            "line_graph_k5_endomorphisms": {
                "automorphisms": endo.automorphisms,
                "proper_endomorphisms": endo.proper_endomorphisms,
                "nodes": endo.nodes,
            },
            "round_robin": round_robin,
        });
        let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
        text.push('\n');
        write_file(path, &text)?;
    }
    let ok = report.consistent() && endo_ok && rr_ok;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAILED) })
}

fn endo(path: &Path, mode: EndoArg) -> CmdResult {
    let g = read_graph(path)?;
    let budget = budget_override()?.unwrap_or(DEFAULT_ENDO_BUDGET);
    let mode = match mode {
        EndoArg::All => EndoMode::EnumerateAll,
        EndoArg::Proper => EndoMode::FindProper,
    };
    let r = endomorphism_search(&g, mode, budget).map_err(graph_failure)?;
    println!("automorphisms {}", r.automorphisms);
    println!("proper endomorphisms {}", r.proper_endomorphisms);
    if let Some(w) = &r.proper_witness {
        let images: Vec<String> = w.iter().map(|&v| g.label(v).to_string()).collect();
        println!("witness {}", images.join(" "));
    }
    println!("core {}", r.is_core());
    println!("search nodes {}", r.nodes);
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Build { family, out } => family.family().and_then(|f| build(f, out)),
        Command::Spectrum { graph } => spectrum(graph),
        Command::Certify {
            family,
            run,
            json,
            timings,
        } => family.family().and_then(|f| certify(f, run, json.as_deref(), *timings)),
        Command::Enumerate { family, run } => family.family().and_then(|f| enumerate(f, run)),
        Command::CoreEvidence { target: EvidenceTarget::P33, json } => core_evidence(json.as_deref()),
        Command::Endo { graph, mode } => endo(graph, *mode),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAILED)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_BUDGET)
        }
    }
}
