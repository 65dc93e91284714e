use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use tfik::catalog;
use tfik::enumeration::{enumerate, DegreeProfile, EnumOptions, Regime};
use tfik::graph6;
use tfik::moves::{family_closure_with_budget, MoveSet};
use tfik::planarity::is_planar;
use tfik::prover::{
    check_certificate, eliminate, positive_certificate, standard_families, verify_theorem, Certificate, RuleSet,
    TheoremOptions,
};
use tfik::reduction::{pair_ledger, reduce_pair};
use tfik::{canonicalize, SimpleGraph};

#[derive(Parser)]
#[command(name = "tfik", version, about = "Triangle-free intrinsically knotted graphs with 22 edges")]
struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate connected graphs with a fixed edge count as graph6 lines.
    Enumerate {
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = 3)]
        min_degree: usize,
        #[arg(long)]
        triangle_free: bool,
        /// Also emit disconnected graphs.
        #[arg(long)]
        disconnected: bool,
        #[arg(long, value_enum, default_value_t = Profile::Any)]
        profile: Profile,
        #[arg(long)]
        max_order: Option<usize>,
        /// Stop after this many search nodes; exit status is then nonzero.
        #[arg(long)]
        node_budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Try to eliminate each graph of a graph6 file; one JSON line per graph.
    Prove {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Rules::All)]
        rules: Rules,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run both regimes and check the classification; prints a JSON report.
    Theorem {
        #[arg(long, value_enum, default_value_t = Rules::All)]
        rules: Rules,
        #[arg(long)]
        node_budget: Option<u64>,
        /// JSON lines with one certificate record per candidate.
        #[arg(long)]
        certificates: Option<PathBuf>,
        /// Survivors as graph6 lines.
        #[arg(long)]
        survivors: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Close a graph under triangle-Y (and optionally Y-triangle) moves.
    Family {
        /// `named:<catalog name>` or a graph6 string.
        #[arg(long)]
        seed: String,
        #[arg(long, value_enum, default_value_t = Moves::Both)]
        moves: Moves,
        #[arg(long)]
        budget: Option<usize>,
        /// Members as graph6 lines.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Move sequences from the seed, as JSON.
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
    /// Print a named graph as graph6 followed by a JSON descriptor.
    Catalog { name: String },
    /// Delete a vertex pair and reduce to minimum degree 3.
    Reduce {
        #[arg(long)]
        graph: String,
        /// Two vertices, `a,b`.
        #[arg(long)]
        pair: String,
        /// Print the edge bookkeeping and planarity as JSON.
        #[arg(long)]
        ledger: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Profile {
    Any,
    #[value(name = "maxdeg6plus")]
    MaxDeg6Plus,
    #[value(name = "two-deg5")]
    TwoDeg5,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rules {
    PlanarReduction,
    All,
}

impl From<Rules> for RuleSet {
    fn from(r: Rules) -> Self {
        match r {
            Rules::PlanarReduction => RuleSet::PLANAR_REDUCTION_ONLY,
            Rules::All => RuleSet::ALL,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Moves {
    Ty,
    Both,
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn check_parent(path: Option<&PathBuf>) -> Result<()> {
    if let Some(p) = path {
        let dir = p.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
        if !dir.is_dir() {
            bail!("output directory {} does not exist", dir.display());
        }
    }
    Ok(())
}

fn parse_graph(s: &str) -> Result<SimpleGraph> {
    if let Some(name) = s.strip_prefix("named:") {
        return Ok(catalog::build(name)?.graph);
    }
    graph6::decode(s.trim().as_bytes()).with_context(|| format!("bad graph6 {s:?}"))
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s.split_once(',').context("pair must be `a,b`")?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn cmd_enumerate(
    regime: Regime,
    node_budget: Option<u64>,
    out: Option<PathBuf>,
) -> Result<bool> {
    check_parent(out.as_ref())?;
    let e = enumerate(&regime, EnumOptions { node_budget });
    let mut w = output(out.as_deref())?;
    for (_, g) in &e.graphs {
        w.write_all(&graph6::encode(g))?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    eprintln!("{} graphs", e.len());
    if e.truncated {
        eprintln!("truncated: node budget exhausted, output is incomplete");
    }
    Ok(!e.truncated)
}

fn cmd_prove(input: &Path, rules: RuleSet, out: Option<PathBuf>) -> Result<bool> {
    check_parent(out.as_ref())?;
    let file = File::open(input).with_context(|| format!("cannot open {}", input.display()))?;
    let graphs = graph6::read_all(BufReader::new(file))?;
    let families = standard_families();
    let results: Vec<_> = {
        use rayon::prelude::*;
        graphs
            .par_iter()
            .map(|g| {
                let certificate = eliminate(g, rules);
                let positive = match certificate {
                    Certificate::Survivor => positive_certificate(g, &families),
                    _ => None,
                };
                let replays = check_certificate(g, &certificate, &families).is_ok()
                    && positive.as_ref().is_none_or(|p| check_certificate(g, p, &families).is_ok());
                (g, certificate, positive, replays)
            })
            .collect()
    };
    let mut w = output(out.as_deref())?;
    let mut ok = true;
    let mut survivors = 0;
    for (g, certificate, positive, replays) in &results {
        ok &= replays;
        survivors += usize::from(*certificate == Certificate::Survivor);
        let rec = json!({
            "graph6": graph6::encode_string(g),
            "canonical": canonicalize(g),
            "order": g.order(),
            "edges": g.edge_count(),
            "certificate": certificate,
            "positive": positive,
            "replays": replays,
        });
        serde_json::to_writer(&mut w, &rec)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    eprintln!("{} graphs, {} survivors", results.len(), survivors);
    Ok(ok)
}

fn cmd_theorem(
    rules: RuleSet,
    node_budget: Option<u64>,
    certificates: Option<PathBuf>,
    survivors: Option<PathBuf>,
    out: Option<PathBuf>,
) -> Result<bool> {
    for p in [&certificates, &survivors, &out] {
        check_parent(p.as_ref())?;
    }
    let mut sink = certificates.as_deref().map(|p| output(Some(p))).transpose()?;
    let report = verify_theorem(
        TheoremOptions { rules, node_budget },
        sink.as_mut().map(|w| w as &mut dyn Write),
    )?;
    if let Some(mut w) = sink {
        w.flush()?;
    }
    if let Some(p) = survivors {
        let mut w = output(Some(&p))?;
        for s in report.regime_a.survivors.iter().chain(&report.regime_b.survivors) {
            writeln!(w, "{}", s.graph6)?;
        }
        w.flush()?;
    }
    let mut w = output(out.as_deref())?;
    serde_json::to_writer_pretty(&mut w, &report)?;
    w.write_all(b"\n")?;
    w.flush()?;
    for c in &report.checks {
        eprintln!("{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
    }
    eprintln!(
        "regime A: {} candidates, {} survivors; regime B: {} candidates, {} survivors",
        report.regime_a.candidates,
        report.regime_a.survivors.len(),
        report.regime_b.candidates,
        report.regime_b.survivors.len()
    );
    Ok(report.holds)
}

fn cmd_family(
    seed: &str,
    moves: Moves,
    budget: Option<usize>,
    out: Option<PathBuf>,
    provenance: Option<PathBuf>,
) -> Result<bool> {
    check_parent(out.as_ref())?;
    check_parent(provenance.as_ref())?;
    let g = parse_graph(seed)?;
    let name = seed.strip_prefix("named:").unwrap_or(seed);
    let moves = match moves {
        Moves::Ty => MoveSet::TRIANGLE_Y,
        Moves::Both => MoveSet::BOTH,
    };
    let fam = family_closure_with_budget(name, &g, moves, budget);
    if let Some(p) = out {
        let mut w = output(Some(&p))?;
        fam.write_graph6(&mut w)?;
        w.flush()?;
    }
    if let Some(p) = provenance {
        let mut w = output(Some(&p))?;
        serde_json::to_writer_pretty(&mut w, &fam.provenance_json())?;
        w.write_all(b"\n")?;
        w.flush()?;
    }
    println!("{}", fam.len());
    eprintln!("{} triangle-free", fam.triangle_free_members().len());
    if fam.truncated {
        eprintln!("truncated: closure budget exhausted");
    }
    Ok(!fam.truncated)
}

fn cmd_catalog(name: &str) -> Result<bool> {
    let g = catalog::build(name)?;
    let d = g.descriptor();
    println!("{}", d.graph6);
    println!("{}", serde_json::to_string(&d)?);
    Ok(true)
}

fn cmd_reduce(graph: &str, pair: &str, ledger: bool) -> Result<bool> {
    let g = parse_graph(graph)?;
    let (a, b) = parse_pair(pair)?;
    let r = reduce_pair(&g, a, b)?;
    println!("{}", graph6::encode_string(&r));
    if ledger {
        let l = pair_ledger(&g, a, b)?;
        let rec = json!({
            "ledger": l,
            "holds": l.holds(),
            "actual": l.actual,
            "planar": is_planar(&r),
        });
        println!("{}", serde_json::to_string(&rec)?);
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Enumerate {
            edges,
            min_degree,
            triangle_free,
            disconnected,
            profile,
            max_order,
            node_budget,
            out,
        } => {
            let profile = match profile {
                Profile::Any => DegreeProfile::Any,
                Profile::MaxDeg6Plus => DegreeProfile::MaxDegAtLeast6,
                Profile::TwoDeg5 => DegreeProfile::MaxDeg5WithAtLeastTwoDeg5,
            };
            let regime = Regime {
                edge_count: edges,
                min_degree,
                triangle_free,
                connected: !disconnected,
                profile,
                max_order,
            };
            cmd_enumerate(regime, node_budget, out)
        }
        Command::Prove { input, rules, out } => cmd_prove(&input, rules.into(), out),
        Command::Theorem {
            rules,
            node_budget,
            certificates,
            survivors,
            out,
        } => cmd_theorem(rules.into(), node_budget, certificates, survivors, out),
        Command::Family {
            seed,
            moves,
            budget,
            out,
            provenance,
        } => cmd_family(&seed, moves, budget, out, provenance),
        Command::Catalog { name } => cmd_catalog(&name),
        Command::Reduce { graph, pair, ledger } => cmd_reduce(&graph, &pair, ledger),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
