use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value as Json};

use xlab_core::enumerate::{cached_search, SearchCache};
use xlab_core::families::{closed_form_rho, FamilySpec};
use xlab_core::refine::coarsest_equitable_partition;
use xlab_core::report::{run_all, AcceptanceOptions};
use xlab_core::spectral::{perron_vector, quotient_report, spectral_radius, DEFAULT_TOL};
use xlab_core::theta::contains_theta;
use xlab_core::verifiers::{
    check_eq4, check_lemma21, check_lemma25, check_lemma26, check_lemma27, decompose_at, default_beta,
    edge_rotation, eq1_identity,
};
use xlab_core::Graph;

#[derive(Parser)]
#[command(name = "xlab", version, about = "Spectral extremal graph experiments for theta-free graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a family member and print its graph6.
    Construct(GraphArgs),
    /// Spectral radius with its Perron certificate.
    Rho(RhoArgs),
    /// theta(1,p,q)-freeness of one graph or of graph6 lines on stdin.
    Free(FreeArgs),
    /// Exhaustive max-rho search over theta-free graphs of size m.
    Search(SearchArgs),
    /// Run one lemma or equation check.
    Verify(VerifyArgs),
    /// Neighbourhood decomposition around the Perron argmax.
    Decompose(GraphArgs),
    /// Run every acceptance criterion and write a summary.
    ReportAll(ReportArgs),
}

#[derive(Args, Clone)]
struct GraphArgs {
    /// Family member such as `S-,n=48,k=2` or `G4,r=45,t=1`.
    #[arg(long, conflicts_with = "graph6")]
    family: Option<String>,
    #[arg(long)]
    graph6: Option<String>,
    /// Output file; stdout when absent or `-`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RhoArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct FreeArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, default_value = "3,3")]
    theta: String,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, conflicts_with = "m_range")]
    m: Option<usize>,
    /// `lo:hi:step`, inclusive.
    #[arg(long)]
    m_range: Option<String>,
    #[arg(long, default_value = "3,3")]
    theta: String,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, env = "XLAB_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long, conflicts_with = "eq", value_parser = ["2.1", "2.3", "2.5", "2.6", "2.7"])]
    lemma: Option<String>,
    #[arg(long, value_parser = ["1", "4"])]
    eq: Option<String>,
    #[arg(long, conflicts_with = "m_range")]
    m: Option<usize>,
    #[arg(long)]
    m_range: Option<String>,
}

#[derive(Args)]
struct ReportArgs {
    /// Largest size for the enumeration-backed criteria.
    #[arg(long, default_value_t = 8)]
    m: usize,
    #[arg(long, default_value_t = 4)]
    jobs: usize,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Input problems map to exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Usage(msg.into()).into())
}

enum Verdict {
    Pass,
    Fail,
}

fn write_json(out: &Option<PathBuf>, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) if path.as_os_str() != "-" => {
            std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
        }
        _ => {
            let mut stdout = io::stdout().lock();
            writeln!(stdout, "{text}")?;
            Ok(())
        }
    }
}

fn parse_pair(text: &str) -> Result<(usize, usize)> {
    let parsed = text
        .split_once(',')
        .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)));
    match parsed {
        Some(pair) => Ok(pair),
        None => usage(format!("--theta expects `p,q`, got `{text}`")),
    }
}

fn parse_range(text: &str) -> Result<Vec<usize>> {
    let parts: Vec<&str> = text.split(':').collect();
    let nums: Option<Vec<usize>> = parts.iter().map(|p| p.trim().parse().ok()).collect();
    match nums.as_deref() {
        Some([lo, hi, step]) if *step > 0 && lo <= hi => Ok((*lo..=*hi).step_by(*step).collect()),
        Some([lo, hi]) if lo <= hi => Ok((*lo..=*hi).collect()),
        _ => usage(format!("--m-range expects `lo:hi:step` with lo <= hi and step >= 1, got `{text}`")),
    }
}

fn sizes(m: Option<usize>, range: &Option<String>) -> Result<Vec<usize>> {
    match (m, range) {
        (Some(m), _) => Ok(vec![m]),
        (None, Some(r)) => parse_range(r),
        (None, None) => usage("give --m or --m-range"),
    }
}

fn load_graph(args: &GraphArgs) -> Result<(Graph, Option<FamilySpec>)> {
    match (&args.family, &args.graph6) {
        (Some(f), _) => {
            let spec: FamilySpec = f.parse().map_err(|e| Usage(format!("--family: {e}")))?;
            let g = spec.build().map_err(|e| Usage(format!("--family: {e}")))?;
            Ok((g, Some(spec)))
        }
        (None, Some(text)) => {
            let g = Graph::from_graph6(text).map_err(|e| Usage(format!("--graph6: {e}")))?;
            Ok((g, None))
        }
        (None, None) => usage("give --family or --graph6"),
    }
}

fn construct(args: &GraphArgs) -> Result<Verdict> {
    let (g, spec) = load_graph(args)?;
    write_json(
        &args.out,
        &json!({
            "family": spec.map(|s| s.to_string()),
            "n": g.order(),
            "m": g.size(),
            "graph6": g.to_graph6(),
            "edges": g.edges(),
        }),
    )?;
    Ok(Verdict::Pass)
}

fn rho(args: &RhoArgs) -> Result<Verdict> {
    if !(args.tol > 0.0) {
        return usage(format!("--tol must be positive, got {}", args.tol));
    }
    let (g, spec) = load_graph(&args.graph)?;
    let cert = spectral_radius(&g, args.tol).map_err(|e| Usage(e.to_string()))?;
    let closed = spec.and_then(|s| closed_form_rho(&s).ok());
    write_json(
        &args.graph.out,
        &json!({
            "family": spec.map(|s| s.to_string()),
            "graph6": g.to_graph6(),
            "n": g.order(),
            "m": g.size(),
            "rho": cert.rho,
            "argmax": cert.argmax(),
            "residual": cert.residual,
            "iterations": cert.iterations,
            "converged": cert.converged,
            "closed_form": closed,
        }),
    )?;
    Ok(Verdict::Pass)
}

fn free_record(g: &Graph, p: usize, q: usize) -> Result<Json> {
    let w = contains_theta(g, p, q).map_err(|e| Usage(e.to_string()))?;
    Ok(json!({ "graph6": g.to_graph6(), "free": w.is_none(), "witness": w }))
}

fn free(args: &FreeArgs) -> Result<Verdict> {
    let (p, q) = parse_pair(&args.theta)?;
    let records = if args.graph.family.is_some() || args.graph.graph6.is_some() {
        let (g, _) = load_graph(&args.graph)?;
        vec![free_record(&g, p, q)?]
    } else {
        let mut out = Vec::new();
        for (i, line) in io::stdin().lock().lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let g = Graph::from_graph6(line.trim()).map_err(|e| Usage(format!("stdin line {}: {e}", i + 1)))?;
            out.push(free_record(&g, p, q)?);
        }
        out
    };
    write_json(&args.graph.out, &records)?;
    Ok(Verdict::Pass)
}

fn search(args: &SearchArgs) -> Result<Verdict> {
    let pattern = parse_pair(&args.theta)?;
    if args.jobs == 0 {
        return usage("--jobs must be at least 1");
    }
    let cache = args.cache_dir.as_ref().map(SearchCache::new);
    let mut reports = Vec::new();
    for m in sizes(args.m, &args.m_range)? {
        let r = cached_search(cache.as_ref(), m, pattern, args.jobs).map_err(|e| Usage(e.to_string()))?;
        log::info!("m={m}: {} classes, {} survivors", r.total, r.survivors);
        reports.push(r);
    }
    if reports.len() == 1 {
        write_json(&args.out, &reports[0])?;
    } else {
        write_json(&args.out, &reports)?;
    }
    Ok(Verdict::Pass)
}

fn verify(args: &VerifyArgs) -> Result<Verdict> {
    let mut records: Vec<Json> = Vec::new();
    let mut failed = false;
    let mut push = |value: Json, bad: bool| {
        failed |= bad;
        records.push(value);
    };
    match (args.lemma.as_deref(), args.eq.as_deref()) {
        (Some("2.6"), _) => {
            for m in sizes(args.m, &args.m_range)? {
                let c = check_lemma26(m).map_err(|e| Usage(e.to_string()))?;
                push(json!({ "m": m, "check": to_json(&c) }), c.failed());
            }
        }
        (Some(lemma), _) => {
            let (g, spec) = load_graph(&args.graph)?;
            match lemma {
                "2.1" => {
                    let cert = perron_vector(&g).map_err(|e| Usage(e.to_string()))?;
                    for u in 0..g.order() {
                        for v in 0..g.order() {
                            if u == v || cert.perron[u] < cert.perron[v] || edge_rotation(&g, u, v)?.is_noop() {
                                continue;
                            }
                            let c = check_lemma21(&g, u, v)?;
                            push(json!({ "u": u, "v": v, "check": to_json(&c) }), c.failed());
                        }
                    }
                }
                "2.3" => {
                    let partition = spec
                        .and_then(|s| s.partition())
                        .unwrap_or_else(|| coarsest_equitable_partition(&g));
                    let r = quotient_report(&g, &partition).map_err(|e| Usage(e.to_string()))?;
                    push(to_json(&r), !r.passed());
                }
                "2.5" => {
                    let c = check_lemma25(&g).map_err(|e| Usage(e.to_string()))?;
                    push(to_json(&c), c.failed());
                }
                "2.7" => {
                    let d = decompose_at(&g, None).map_err(|e| Usage(e.to_string()))?;
                    for v in d.n2.iter() {
                        let beta = default_beta(&g, v)?;
                        if !(beta > 0.0 && beta < 1.0) {
                            continue;
                        }
                        let c = check_lemma27(&g, v, beta)?;
                        push(json!({ "v": v, "beta": beta, "check": to_json(&c) }), c.failed());
                    }
                }
                _ => unreachable!("restricted by clap"),
            }
        }
        (None, Some(eq)) => {
            let (g, _) = load_graph(&args.graph)?;
            if eq == "1" {
                let c = eq1_identity(&g, None).map_err(|e| Usage(e.to_string()))?;
                push(to_json(&c), !c.holds);
            } else {
                let c = check_eq4(&g).map_err(|e| Usage(e.to_string()))?;
                push(to_json(&c), c.failed());
            }
        }
        (None, None) => return usage("give --lemma or --eq"),
    }
    write_json(&args.graph.out, &records)?;
    Ok(if failed { Verdict::Fail } else { Verdict::Pass })
}

fn to_json(value: &impl Serialize) -> Json {
    serde_json::to_value(value).unwrap_or(Json::Null)
}

fn decompose(args: &GraphArgs) -> Result<Verdict> {
    let (g, _) = load_graph(args)?;
    let d = decompose_at(&g, None).map_err(|e| Usage(e.to_string()))?;
    write_json(&args.out, &d)?;
    Ok(Verdict::Pass)
}

fn report_all(args: &ReportArgs) -> Result<Verdict> {
    if args.m > xlab_core::enumerate::ENUMERATION_BUDGET {
        return usage(format!("--m above the enumeration budget {}", xlab_core::enumerate::ENUMERATION_BUDGET));
    }
    if args.jobs == 0 {
        return usage("--jobs must be at least 1");
    }
    let opts = AcceptanceOptions {
        m_max: args.m,
        seed: args.seed,
        jobs: args.jobs,
    };
    let (summary, reports) = run_all(&opts);
    for c in &summary.criteria {
        eprintln!("{}", c.line());
    }
    write_json(&args.out, &json!({ "summary": summary, "search_reports": reports }))?;
    Ok(if summary.passed { Verdict::Pass } else { Verdict::Fail })
}

fn run(cli: &Cli) -> Result<Verdict> {
    match &cli.command {
        Command::Construct(a) => construct(a),
        Command::Rho(a) => rho(a),
        Command::Free(a) => free(a),
        Command::Search(a) => search(a),
        Command::Verify(a) => verify(a),
        Command::Decompose(a) => decompose(a),
        Command::ReportAll(a) => report_all(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
