//! One binary, several entry points into the library: density queries,
//! ratio certificates, family scans, the optimizer, the inequality chain,
//! a one-shot verification suite, and generators for input files.
//!
//! Exit codes: 0 success, 1 failed verification or internal inconsistency,
//! 2 bad input, 3 a computed verdict of "violated", 4 budget exceeded.

mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use stepgraphon::density::{mono_density, Method, DEFAULT_TERM_BUDGET};
use stepgraphon::commonness::{eps_scan, ratio_certificate, RatioCertificate};
use stepgraphon::neighborhood::tree_apex_chain;
use stepgraphon::optimize::{minimize_ratio, probe_open_range, OptimizerConfig};
use stepgraphon::{Error, Graph, Rat, Result, Scalar, StepGraphon};

#[derive(Parser)]
#[command(
    name = "stepgraphon",
    version,
    about = "Densities, certificates, and counterexample search on step graphons"
)]
struct Cli {
    /// Worker threads (0 = library default). Also via STEPGRAPHON_THREADS.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    F64,
    Exact,
}

#[derive(Args)]
struct BackendOpt {
    /// Scalar backend: fast floats or exact rationals.
    #[arg(long, value_enum, default_value = "f64")]
    backend: BackendArg,
}

#[derive(Subcommand)]
enum Command {
    /// Homomorphism and monochromatic density of a graph in a graphon.
    Density {
        /// Edge-list file ("n m" header, one "u v" pair per line).
        #[arg(long)]
        graph: PathBuf,
        /// Graphon JSON file ({"weights": [...], "values": [[...]]}).
        #[arg(long)]
        graphon: PathBuf,
        #[command(flatten)]
        backend: BackendOpt,
        /// Evaluation strategy.
        #[arg(long, default_value = "auto")]
        method: Method,
        /// Term budget for brute-force evaluation.
        #[arg(long, default_value_t = DEFAULT_TERM_BUDGET)]
        budget: u128,
    },
    /// Book-to-star ratio certificate against the 2^-(k+1) threshold.
    Ratio {
        #[arg(long)]
        graphon: PathBuf,
        #[arg(short, long)]
        k: u32,
        #[command(flatten)]
        backend: BackendOpt,
    },
    /// Walk the counterexample family over a list of eps values.
    Scan {
        /// Comma-separated eps values; fractions like 1/20 are accepted.
        #[arg(long, value_delimiter = ',', required = true)]
        eps_list: Vec<String>,
        #[arg(long)]
        kmax: u32,
        #[command(flatten)]
        backend: BackendOpt,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a graphon that pushes the ratio under the threshold.
    Optimize {
        /// Optimizer configuration JSON; missing fields take defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        blocks: Option<usize>,
        #[arg(long)]
        restarts: Option<u32>,
        #[arg(long)]
        iters: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the best graphon found as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the search across a range of k and report each verdict.
    Probe {
        #[arg(long)]
        k_lo: u32,
        #[arg(long)]
        k_hi: u32,
        #[arg(long)]
        blocks: Option<usize>,
        #[arg(long)]
        restarts: Option<u32>,
        #[arg(long)]
        iters: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The two-step inequality chain for one tree, one k, one graphon.
    Bounds {
        /// Edge-list file holding a tree.
        #[arg(long)]
        tree: PathBuf,
        #[arg(short, long)]
        k: u32,
        #[arg(long)]
        graphon: PathBuf,
        #[command(flatten)]
        backend: BackendOpt,
        #[arg(long, default_value_t = DEFAULT_TERM_BUDGET)]
        budget: u128,
    },
    /// Run the full verification checklist and print the table.
    Verify,
    /// Write graph or graphon input files.
    Gen {
        #[command(subcommand)]
        what: GenWhat,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    Star,
    Book,
    Path,
    Tree,
    Apex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphonKind {
    Family,
    Constant,
    Random,
    RandomRational,
}

#[derive(Subcommand)]
enum GenWhat {
    /// Star, book, path, random tree, or the apex of a base graph.
    Graph {
        #[arg(long, value_enum)]
        kind: GraphKind,
        /// Leaf/page/apex count for star, book, and apex.
        #[arg(short, long)]
        k: Option<usize>,
        /// Vertex count for path and tree.
        #[arg(short, long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Base graph file for the apex construction.
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Family member, constant, or random step graphon.
    Graphon {
        #[arg(long, value_enum)]
        kind: GraphonKind,
        /// Family parameter, e.g. 1/20 or 0.05.
        #[arg(long)]
        eps: Option<String>,
        /// Constant value, e.g. 1/2.
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        blocks: Option<usize>,
        /// Grid denominator for random-rational.
        #[arg(long, default_value_t = 16)]
        denom: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        backend: BackendOpt,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = if cli.threads > 0 {
        cli.threads
    } else {
        std::env::var("STEPGRAPHON_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(0)
    };
    if threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 4,
        Error::InconsistentWithLemma(_) => 1,
        _ => 2,
    }
}

fn dispatch(command: Command) -> Result<u8> {
    match command {
        Command::Density {
            graph,
            graphon,
            backend,
            method,
            budget,
        } => match backend.backend {
            BackendArg::F64 => cmd_density::<f64>(&graph, &graphon, method, budget),
            BackendArg::Exact => cmd_density::<Rat>(&graph, &graphon, method, budget),
        },
        Command::Ratio { graphon, k, backend } => match backend.backend {
            BackendArg::F64 => cmd_ratio::<f64>(&graphon, k),
            BackendArg::Exact => cmd_ratio::<Rat>(&graphon, k),
        },
        Command::Scan {
            eps_list,
            kmax,
            backend,
            out,
        } => match backend.backend {
            BackendArg::F64 => cmd_scan::<f64>(&eps_list, kmax, out.as_deref()),
            BackendArg::Exact => cmd_scan::<Rat>(&eps_list, kmax, out.as_deref()),
        },
        Command::Optimize {
            config,
            k,
            blocks,
            restarts,
            iters,
            seed,
            out,
        } => cmd_optimize(config.as_deref(), k, blocks, restarts, iters, seed, out.as_deref()),
        Command::Probe {
            k_lo,
            k_hi,
            blocks,
            restarts,
            iters,
            seed,
        } => cmd_probe(k_lo, k_hi, blocks, restarts, iters, seed),
        Command::Bounds {
            tree,
            k,
            graphon,
            backend,
            budget,
        } => match backend.backend {
            BackendArg::F64 => cmd_bounds::<f64>(&tree, k, &graphon, budget),
            BackendArg::Exact => cmd_bounds::<Rat>(&tree, k, &graphon, budget),
        },
        Command::Verify => cmd_verify(),
        Command::Gen { what } => cmd_gen(what),
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

fn write_text(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).map_err(|e| Error::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

fn read_graph(path: &Path) -> Result<Graph> {
    Graph::from_edge_list(&read_text(path)?)
}

fn read_graphon<T: Scalar>(path: &Path) -> Result<StepGraphon<T>> {
    StepGraphon::from_json_str(&read_text(path)?)
}

fn cmd_density<T: Scalar>(
    graph: &Path,
    graphon: &Path,
    method: Method,
    budget: u128,
) -> Result<u8> {
    let g = read_graph(graph)?;
    let w = read_graphon::<T>(graphon)?;
    let report = mono_density(&g, &w, method, budget)?;
    let json = serde_json::json!({
        "backend": report.backend.to_string(),
        "method": method.to_string(),
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "t_w": report.t_w.to_json(),
        "t_comp": report.t_comp.to_json(),
        "mono": report.mono.to_json(),
    });
    println!("{}", serde_json::to_string_pretty(&json).expect("serializable"));
    Ok(0)
}

fn certificate_json<T: Scalar>(cert: &RatioCertificate<T>) -> serde_json::Value {
    serde_json::json!({
        "backend": cert.backend.to_string(),
        "k": cert.k,
        "m_tk": cert.m_tk.to_json(),
        "m_sk": cert.m_sk.to_json(),
        "ratio": cert.ratio.to_json(),
        "threshold": cert.threshold.to_json(),
        "holds": cert.holds,
    })
}

fn cmd_ratio<T: Scalar>(graphon: &Path, k: u32) -> Result<u8> {
    let w = read_graphon::<T>(graphon)?;
    let cert = ratio_certificate(k, &w);
    println!(
        "{}",
        serde_json::to_string_pretty(&certificate_json(&cert)).expect("serializable")
    );
    Ok(if cert.holds { 0 } else { 3 })
}

fn cmd_scan<T: Scalar>(eps_list: &[String], kmax: u32, out: Option<&Path>) -> Result<u8> {
    let eps: Vec<T> = eps_list
        .iter()
        .map(|s| T::parse(s).map_err(|e| Error::parse(1, format!("eps {s:?}: {e}"))))
        .collect::<Result<_>>()?;
    let table = eps_scan(&eps, kmax)?;
    let csv = table.to_csv();
    match out {
        Some(path) => {
            write_text(path, &csv)?;
            for (eps, first) in &table.first_violation {
                match first {
                    Some(k) => println!("eps {}: first violation at k = {k}", eps.to_f64()),
                    None => println!("eps {}: no violation up to k = {kmax}", eps.to_f64()),
                }
            }
            println!("wrote {}", path.display());
        }
        None => print!("{csv}"),
    }
    let any_violation = table.first_violation.iter().any(|(_, f)| f.is_some());
    Ok(if any_violation { 3 } else { 0 })
}

fn cmd_optimize(
    config_path: Option<&Path>,
    k: Option<u32>,
    blocks: Option<usize>,
    restarts: Option<u32>,
    iters: Option<u32>,
    seed: Option<u64>,
    out: Option<&Path>,
) -> Result<u8> {
    let mut config: OptimizerConfig = match config_path {
        Some(path) => serde_json::from_str(&read_text(path)?).map_err(|e| Error::ConfigInvalid {
            reason: e.to_string(),
        })?,
        None => OptimizerConfig::default(),
    };
    if let Some(k) = k {
        config.k = k;
    }
    if let Some(blocks) = blocks {
        config.blocks = blocks;
    }
    if let Some(restarts) = restarts {
        config.restarts = restarts;
    }
    if let Some(iters) = iters {
        config.max_iters = iters;
    }
    if let Some(seed) = seed {
        config.seed = seed;
    }
    validate_search(config.blocks, config.restarts)?;
    let result = minimize_ratio(&config)?;
    println!(
        "k = {}, blocks = {}, restarts = {}, iterations <= {}",
        config.k, config.blocks, config.restarts, config.max_iters
    );
    println!("best ratio   = {}", result.best_ratio);
    println!("threshold    = {}", result.threshold);
    println!(
        "float verdict: {}",
        if result.violation_found { "violated" } else { "holds" }
    );
    println!("winning restart: {}", result.winning_restart);
    println!("evaluations: {}", result.evaluations);
    let mut confirmed = false;
    match &result.exact_recheck {
        Some(recheck) => {
            let cert = &recheck.certificate;
            println!("exact recheck (denominator {}):", config.round_denom);
            println!("  ratio     = {}", cert.ratio);
            println!("  threshold = {}", cert.threshold);
            if cert.holds {
                println!("  verdict: holds (rounding absorbed the violation)");
            } else {
                println!("  verdict: violated, exactly confirmed");
                confirmed = true;
            }
        }
        None => println!("no candidate violation to recheck"),
    }
    if let Some(path) = out {
        write_text(path, &result.best.to_json_string())?;
        println!("wrote {}", path.display());
    }
    Ok(if confirmed { 3 } else { 0 })
}

fn cmd_probe(
    k_lo: u32,
    k_hi: u32,
    blocks: Option<usize>,
    restarts: Option<u32>,
    iters: Option<u32>,
    seed: Option<u64>,
) -> Result<u8> {
    if k_lo > k_hi {
        return Err(Error::ConfigInvalid {
            reason: format!("empty range {k_lo}..={k_hi}"),
        });
    }
    let mut base = OptimizerConfig::default();
    if let Some(blocks) = blocks {
        base.blocks = blocks;
    }
    if let Some(restarts) = restarts {
        base.restarts = restarts;
    }
    if let Some(iters) = iters {
        base.max_iters = iters;
    }
    if let Some(seed) = seed {
        base.seed = seed;
    }
    validate_search(base.blocks, base.restarts)?;
    let rows = probe_open_range(k_lo, k_hi, &base)?;
    println!("k   best_ratio             threshold              verdict");
    let mut any = false;
    for row in &rows {
        let verdict = if row.exact_confirmed {
            any = true;
            "violated (exact)"
        } else if row.violation_found {
            "violated (float only)"
        } else {
            "holds"
        };
        println!(
            "{:<3} {:<22} {:<22} {verdict}",
            row.k, row.best_ratio, row.threshold
        );
    }
    Ok(if any { 3 } else { 0 })
}

fn cmd_bounds<T: Scalar>(tree: &Path, k: u32, graphon: &Path, budget: u128) -> Result<u8> {
    let g = read_graph(tree)?;
    let w = read_graphon::<T>(graphon)?;
    let report = tree_apex_chain(&g, k, &w, budget)?;
    println!(
        "tree: {} vertices, {} edges; k = {}; backend = {}",
        g.vertex_count(),
        g.edge_count(),
        k,
        T::BACKEND
    );
    println!("ratio lower bound = {}", report.lower);
    println!("profile integral  = {}", report.integral);
    println!("apex density      = {}", report.apex_mono);
    println!("target            = {}", report.target);
    println!(
        "chain holds: {}",
        if report.chain_holds() { "yes" } else { "no" }
    );
    println!(
        "target met: {}",
        if report.meets_target() { "yes" } else { "no" }
    );
    if report.chain_holds() {
        Ok(0)
    } else {
        // both chain steps are proved inequalities; failing is an engine bug
        eprintln!("error: proved inequality chain failed; this is a defect");
        Ok(1)
    }
}

fn cmd_verify() -> Result<u8> {
    let report = verify::run();
    print!("{}", report.render());
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn cmd_gen(what: GenWhat) -> Result<u8> {
    match what {
        GenWhat::Graph {
            kind,
            k,
            n,
            seed,
            base,
            out,
        } => {
            let need_k = || {
                k.ok_or_else(|| Error::ConfigInvalid {
                    reason: "this kind needs --k".to_string(),
                })
            };
            let need_n = || {
                n.ok_or_else(|| Error::ConfigInvalid {
                    reason: "this kind needs --n".to_string(),
                })
            };
            let g = match kind {
                GraphKind::Star => Graph::star(need_k()?),
                GraphKind::Book => Graph::book(need_k()?),
                GraphKind::Path => Graph::path(need_n()?)?,
                GraphKind::Tree => Graph::random_tree(need_n()?, seed)?,
                GraphKind::Apex => {
                    let base = base.ok_or_else(|| Error::ConfigInvalid {
                        reason: "apex needs --base".to_string(),
                    })?;
                    read_graph(&base)?.apex(need_k()?)
                }
            };
            write_text(&out, &g.to_edge_list())?;
            println!("wrote {}", out.display());
        }
        GenWhat::Graphon {
            kind,
            eps,
            p,
            blocks,
            denom,
            seed,
            backend,
            out,
        } => {
            let content = match (kind, backend.backend) {
                (GraphonKind::Family, BackendArg::F64) => {
                    let eps = parse_arg::<f64>("eps", eps)?;
                    StepGraphon::w_epsilon(eps)?.to_json_string()
                }
                (GraphonKind::Family, BackendArg::Exact) => {
                    let eps = parse_arg::<Rat>("eps", eps)?;
                    StepGraphon::w_epsilon(eps)?.to_json_string()
                }
                (GraphonKind::Constant, BackendArg::F64) => {
                    let p = parse_arg::<f64>("p", p)?;
                    StepGraphon::constant(p)?.to_json_string()
                }
                (GraphonKind::Constant, BackendArg::Exact) => {
                    let p = parse_arg::<Rat>("p", p)?;
                    StepGraphon::constant(p)?.to_json_string()
                }
                (GraphonKind::Random, BackendArg::F64) => {
                    let m = blocks.ok_or_else(|| Error::ConfigInvalid {
                        reason: "random needs --blocks".to_string(),
                    })?;
                    StepGraphon::random(m, seed)?.to_json_string()
                }
                (GraphonKind::Random, BackendArg::Exact) => {
                    return Err(Error::ConfigInvalid {
                        reason: "random is float-only; use random-rational".to_string(),
                    })
                }
                (GraphonKind::RandomRational, _) => {
                    let m = blocks.ok_or_else(|| Error::ConfigInvalid {
                        reason: "random-rational needs --blocks".to_string(),
                    })?;
                    StepGraphon::random_rational(m, denom, seed)?.to_json_string()
                }
            };
            write_text(&out, &content)?;
            println!("wrote {}", out.display());
        }
    }
    Ok(0)
}

fn validate_search(blocks: usize, restarts: u32) -> Result<()> {
    if blocks == 0 || restarts == 0 {
        return Err(Error::ConfigInvalid {
            reason: "blocks and restarts must be at least 1".to_string(),
        });
    }
    Ok(())
}

fn parse_arg<T: Scalar>(name: &str, value: Option<String>) -> Result<T> {
    let raw = value.ok_or_else(|| Error::ConfigInvalid {
        reason: format!("this kind needs --{name}"),
    })?;
    T::parse(&raw).map_err(|e| Error::ConfigInvalid {
        reason: format!("--{name} {raw:?}: {e}"),
    })
}
