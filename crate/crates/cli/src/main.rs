mod input;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sdiam_core::characterize::classify;
use sdiam_core::steiner::{
    average_steiner_distance, eccentricity_profile_with, k_subsets, steiner_diameter, steiner_distance_with,
};
use sdiam_core::verify::{audit_stream, random_graphs, AuditConfig, AuditSummary, Interpretations, KPolicy};
use sdiam_core::{Engine, Error, Graph, KOffset, Reading, Result, SteinerConfig};

use input::{parse_k, parse_random, GraphSource, KSpec, RandomSpec};

/// Seed used when `--seed` is absent.
const DEFAULT_SEED: u64 = 0x5d1a_2016;

#[derive(Parser, Debug)]
#[command(name = "sdiam", version, about = "Steiner distances and Steiner k-diameter characterizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Steiner distance of a terminal set, the k-eccentricity profile, or μ_k.
    Compute(ComputeArgs),
    /// Predict sdiam_k for k in {n, n-1, n-2, n-3} from structure alone.
    Classify(ClassifyArgs),
    /// Audit the classifiers against exact values over a graph6 stream.
    Audit(AuditArgs),
    /// Time both Steiner engines across a sweep of k.
    Profile(ProfileArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Records,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InterpArg {
    Literal,
    Amended,
    Both,
}

#[derive(Args, Debug, Clone)]
struct EngineArgs {
    #[arg(long, default_value = "auto", value_parser = parse_engine)]
    engine: Engine,
    /// AUTO uses the complement search when n - |S| is at most this.
    #[arg(long, default_value_t = SteinerConfig::default().dp_threshold)]
    dp_threshold: usize,
    #[arg(long, default_value_t = SteinerConfig::default().complement_cap)]
    complement_cap: usize,
    #[arg(long, default_value_t = SteinerConfig::default().terminal_cap)]
    terminal_cap: usize,
}

impl EngineArgs {
    fn config(&self) -> SteinerConfig {
        SteinerConfig {
            engine: self.engine,
            dp_threshold: self.dp_threshold,
            complement_cap: self.complement_cap,
            terminal_cap: self.terminal_cap,
        }
    }
}

fn parse_engine(s: &str) -> std::result::Result<Engine, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args, Debug, Clone)]
struct InterpArgs {
    #[arg(long, value_enum, default_value = "both")]
    interpretation: InterpArg,
    /// Amended reading: let components of order < 3 pass vacuously.
    #[arg(long)]
    no_vacuous_repair: bool,
    /// Amended reading: keep the printed quantifier on the common 2-cut bullet.
    #[arg(long)]
    no_symbol_repair: bool,
    /// Amended reading: keep x in the edge condition of the y bullet.
    #[arg(long)]
    no_symmetry_repair: bool,
}

impl InterpArgs {
    fn interpretations(&self) -> Interpretations {
        let amended = Reading {
            vacuous: !self.no_vacuous_repair,
            symbol: !self.no_symbol_repair,
            symmetry: !self.no_symmetry_repair,
        };
        Interpretations {
            literal: self.interpretation != InterpArg::Amended,
            amended: (self.interpretation != InterpArg::Literal).then_some(amended),
        }
    }

    fn readings(&self) -> Vec<(&'static str, Reading)> {
        let i = self.interpretations();
        let mut out = Vec::new();
        if i.literal {
            out.push(("literal", Reading::LITERAL));
        }
        if let Some(r) = i.amended {
            out.push(("amended", r));
        }
        out
    }
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Set size: an integer or n-d.
    #[arg(long, default_value = "n-3", value_parser = parse_k)]
    k: KSpec,
    /// Comma-separated terminal set; prints d(S) only.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    terminals: Option<Vec<usize>>,
    /// Print the average Steiner k-distance instead of the profile.
    #[arg(long, conflicts_with = "terminals")]
    average: bool,
    #[command(flatten)]
    engine: EngineArgs,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long, default_value = "n-3", value_parser = parse_k)]
    k: KSpec,
    #[command(flatten)]
    interp: InterpArgs,
    /// Also compute the exact value; exit 1 on any mismatch.
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    engine: EngineArgs,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Audit G(n, p) samples instead: n=..,p=..,count=..[,seed=..]
    #[arg(long, value_parser = parse_random, conflicts_with_all = ["g6", "input", "edges"])]
    random: Option<RandomSpec>,
    /// n, n-1, n-2, n-3 or all.
    #[arg(long, default_value = "all", value_parser = parse_policy)]
    k: KPolicy,
    #[command(flatten)]
    interp: InterpArgs,
    #[command(flatten)]
    engine: EngineArgs,
    /// Seed for --random when it gives none.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Treat every mismatch as hard.
    #[arg(long)]
    strict: bool,
    /// Skip the per-graph contract checks.
    #[arg(long)]
    no_contracts: bool,
    /// Fail unless per-n graph counts match the known connected-graph counts.
    #[arg(long)]
    expect_exhaustive: bool,
    /// Emit only records with a wrong prediction.
    #[arg(long)]
    mismatches_only: bool,
    /// Include wall time in the summary.
    #[arg(long)]
    timing: bool,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "records")]
    format: Format,
}

fn parse_policy(s: &str) -> std::result::Result<KPolicy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args, Debug)]
struct ProfileArgs {
    #[command(flatten)]
    source: GraphSource,
    /// One k (integer or n-d); all of 2..=n when absent.
    #[arg(long, value_parser = parse_k)]
    k: Option<KSpec>,
    /// Restrict to one engine.
    #[arg(long, value_parser = parse_engine)]
    engine: Option<Engine>,
    #[arg(long, default_value_t = 3)]
    repeat: usize,
    /// Time at most this many k-sets (lexicographically first).
    #[arg(long, default_value_t = 1000)]
    limit: usize,
    #[arg(long, default_value_t = SteinerConfig::default().dp_threshold)]
    dp_threshold: usize,
    #[arg(long, default_value_t = SteinerConfig::default().complement_cap)]
    complement_cap: usize,
    #[arg(long, default_value_t = SteinerConfig::default().terminal_cap)]
    terminal_cap: usize,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Classify(a) => classify_cmd(a),
        Command::Audit(a) => audit(a),
        Command::Profile(a) => profile(a),
    };
    match run {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("sdiam: {e}");
            ExitCode::from(2)
        }
    }
}

fn list(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn edge_list(e: &[(usize, usize)]) -> String {
    e.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" ")
}

fn compute(a: ComputeArgs) -> Result<bool> {
    let cfg = a.engine.config();
    let mut out = io::stdout().lock();
    for (label, g) in a.source.graphs()? {
        let n = g.order();
        if let Some(terms) = &a.terminals {
            let s = g.vertex_set(terms)?;
            let r = steiner_distance_with(&g, s, &cfg)?;
            match a.format {
                Format::Records => writeln!(
                    out,
                    "{}",
                    json!({"type": "distance", "graph": label, "n": n, "terminals": terms,
                           "distance": r.distance, "steiner_points": r.steiner_points,
                           "witness_edges": r.witness_edges})
                )?,
                Format::Human => {
                    writeln!(out, "{}", r.distance)?;
                    if r.distance.is_finite() {
                        writeln!(out, "steiner points  {}", list(&r.steiner_points))?;
                        writeln!(out, "tree            {}", edge_list(&r.witness_edges))?;
                    }
                }
            }
            continue;
        }
        let k = a.k.resolve(n)?;
        if a.average {
            let mu = average_steiner_distance(&g, k)?;
            let value = *mu.numer() as f64 / *mu.denom() as f64;
            match a.format {
                Format::Records => writeln!(
                    out,
                    "{}",
                    json!({"type": "average", "graph": label, "n": n, "k": k,
                           "mu": mu.to_string(), "value": value})
                )?,
                Format::Human => writeln!(out, "mu_{k} = {mu} ({value:.6})")?,
            }
            continue;
        }
        let p = eccentricity_profile_with(&g, k, &cfg)?;
        let s = g.vertex_set(&p.diameter_witness)?;
        let tree = steiner_distance_with(&g, s, &cfg)?;
        match a.format {
            Format::Records => writeln!(
                out,
                "{}",
                json!({"type": "profile", "graph": label, "n": n, "m": g.size(), "k": k,
                       "radius": p.radius, "diameter": p.diameter, "center": p.center,
                       "eccentricities": p.per_vertex, "witness": p.diameter_witness,
                       "witness_edges": tree.witness_edges})
            )?,
            Format::Human => {
                writeln!(out, "graph           {label}  (n = {n}, m = {})", g.size())?;
                writeln!(out, "k               {k}")?;
                writeln!(out, "radius          {}", p.radius)?;
                writeln!(out, "diameter        {}", p.diameter)?;
                writeln!(out, "center          {}", list(&p.center))?;
                writeln!(out, "eccentricities  {}", list(&p.per_vertex))?;
                writeln!(out, "witness set     {}", list(&p.diameter_witness))?;
                writeln!(out, "witness tree    {}", edge_list(&tree.witness_edges))?;
            }
        }
    }
    Ok(true)
}

fn classify_cmd(a: ClassifyArgs) -> Result<bool> {
    let cfg = a.engine.config();
    let mut out = io::stdout().lock();
    let mut all_match = true;
    for (label, g) in a.source.graphs()? {
        let n = g.order();
        let k = a.k.resolve(n)?;
        let off = KOffset::from_offset(n - k)
            .ok_or_else(|| Error::Config(format!("classify supports k in n..=n-3, got k = {k} with n = {n}")))?;
        let oracle = if a.check { Some(steiner_diameter(&g, k, &cfg)?.0) } else { None };
        for (name, reading) in a.interp.readings() {
            let o = classify(&g, off, reading)?;
            let matches = oracle.map(|v| v == o.predicted);
            if matches == Some(false) {
                all_match = false;
            }
            let chain: Vec<&str> = o.rule_chain.iter().map(|r| r.as_str()).collect();
            match a.format {
                Format::Records => {
                    let mut rec = json!({"type": "classification", "graph": label, "n": n, "k": k,
                                         "interpretation": name, "predicted": o.predicted,
                                         "rule_chain": chain});
                    if let Some(w) = &o.witness {
                        rec["witness"] = serde_json::to_value(w).expect("witness serializes");
                    }
                    if let (Some(v), Some(m)) = (oracle, matches) {
                        rec["oracle"] = json!(v);
                        rec["match"] = json!(m);
                    }
                    writeln!(out, "{rec}")?;
                }
                Format::Human => {
                    let mut line = format!(
                        "{label}  k={k} ({})  {name:<8} predicted {}  rules {}",
                        off.label(),
                        o.predicted,
                        chain.join(" > ")
                    );
                    if let (Some(v), Some(m)) = (oracle, matches) {
                        line.push_str(&format!("  oracle {v}  match={m}"));
                    }
                    writeln!(out, "{line}")?;
                }
            }
        }
    }
    Ok(all_match)
}

fn audit(a: AuditArgs) -> Result<bool> {
    let mut cfg = AuditConfig {
        policy: a.k,
        interpretations: a.interp.interpretations(),
        steiner: a.engine.config(),
        contracts: !a.no_contracts,
        strict: a.strict,
        workers: a.workers,
        expect_exhaustive: a.expect_exhaustive,
        seed: None,
        timing: a.timing,
        mismatches_only: a.mismatches_only,
    };
    let sink: Box<dyn Write> = match (&a.output, a.format) {
        (Some(p), _) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        )),
        (None, Format::Human) => Box::new(io::sink()),
        (None, Format::Records) => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let summary = if let Some(spec) = &a.random {
        let seed = spec.seed.or(a.seed).unwrap_or(DEFAULT_SEED);
        cfg.seed = Some(seed);
        let lines = random_graphs(spec.n, spec.p, spec.count, seed)?;
        audit_stream(lines.join("\n").as_bytes(), &cfg, sink)?
    } else if a.source.g6.is_some() || a.source.edges.is_some() {
        let (_, g) = a.source.single()?;
        let line = sdiam_core::to_graph6(&g)?;
        audit_stream(line.as_bytes(), &cfg, sink)?
    } else {
        audit_stream(a.source.reader()?, &cfg, sink)?
    };
    if a.format == Format::Human {
        print_summary(&summary)?;
    }
    Ok(!summary.failed())
}

fn print_summary(s: &AuditSummary) -> Result<()> {
    let mut out = io::stdout().lock();
    let tally = |t: Option<sdiam_core::verify::Tally>| t.map_or("-".to_string(), |t| format!("{}/{}", t.mismatches, t.matches + t.mismatches));
    writeln!(out, "{:>3} {:>7} {:>5} {:>4} {:>12} {:>12}", "n", "graphs", "k", "", "literal", "amended")?;
    for nt in &s.per_n {
        if nt.by_k.is_empty() {
            writeln!(out, "{:>3} {:>7}", nt.n, nt.graphs)?;
        }
        for kt in &nt.by_k {
            writeln!(
                out,
                "{:>3} {:>7} {:>5} {:>4} {:>12} {:>12}",
                nt.n,
                nt.graphs,
                kt.offset,
                kt.k,
                tally(kt.literal),
                tally(kt.amended)
            )?;
        }
    }
    writeln!(out, "graphs {}  skipped {}  records {}", s.graphs, s.skipped, s.records)?;
    writeln!(out, "contracts checked {}  failed {}", s.contracts_checked, s.contract_failures)?;
    writeln!(out, "mismatches hard {}  soft {}", s.hard_mismatches, s.soft_mismatches)?;
    if let Some(ms) = s.wall_time_ms {
        writeln!(out, "wall time {ms} ms")?;
    }
    Ok(())
}

fn profile(a: ProfileArgs) -> Result<bool> {
    let base = SteinerConfig {
        engine: Engine::Auto,
        dp_threshold: a.dp_threshold,
        complement_cap: a.complement_cap,
        terminal_cap: a.terminal_cap,
    };
    let engines: Vec<Engine> = match a.engine {
        Some(Engine::Auto) | None => vec![Engine::Complement, Engine::TerminalDp],
        Some(e) => vec![e],
    };
    let repeat = a.repeat.max(1);
    let mut out = io::stdout().lock();
    if a.format == Format::Human {
        writeln!(
            out,
            "{:>3} {:>3} {:<12} {:>6} {:>12} {:>6} {:<12} {}",
            "n", "k", "engine", "sets", "mean_ms", "max_d", "auto", "status"
        )?;
    }
    let mut agree = true;
    for (label, g) in a.source.graphs()? {
        let n = g.order();
        let ks: Vec<usize> = match a.k {
            Some(k) => vec![k.resolve(n)?],
            None => (2..=n).collect(),
        };
        for k in ks {
            let sets: Vec<_> = k_subsets(n, k).take(a.limit).collect();
            let mut reference: Option<Vec<String>> = None;
            for &engine in &engines {
                let cfg = SteinerConfig { engine, ..base };
                let row = time_engine(&g, &sets, &cfg, repeat);
                let (status, mean_ms, max_d) = match &row {
                    Ok((values, ms)) => {
                        let ok = reference.as_ref().map_or(true, |r| r == values);
                        agree &= ok;
                        reference.get_or_insert_with(|| values.clone());
                        let max_d = values.iter().filter_map(|v| v.parse::<usize>().ok()).max();
                        (if ok { "ok".to_string() } else { "disagree".to_string() }, Some(*ms), max_d)
                    }
                    Err(Error::ResourceGuard(msg)) => (format!("guard: {msg}"), None, None),
                    Err(e) => return Err(e.clone()),
                };
                let auto = base.resolve(n, k);
                match a.format {
                    Format::Records => writeln!(
                        out,
                        "{}",
                        json!({"type": "timing", "graph": label, "n": n, "k": k, "engine": engine.to_string(),
                               "sets": sets.len(), "mean_ms": mean_ms, "max_distance": max_d,
                               "auto": auto.to_string(), "status": status})
                    )?,
                    Format::Human => writeln!(
                        out,
                        "{:>3} {:>3} {:<12} {:>6} {:>12} {:>6} {:<12} {}",
                        n,
                        k,
                        engine.to_string(),
                        sets.len(),
                        mean_ms.map_or("-".into(), |m| format!("{m:.3}")),
                        max_d.map_or("-".into(), |d| d.to_string()),
                        auto.to_string(),
                        status
                    )?,
                }
            }
        }
    }
    Ok(agree)
}

/// Distances (as strings, so "inf" compares) and mean milliseconds per pass.
fn time_engine(
    g: &Graph,
    sets: &[sdiam_core::VertexSet],
    cfg: &SteinerConfig,
    repeat: usize,
) -> Result<(Vec<String>, f64)> {
    let mut values = Vec::new();
    let start = Instant::now();
    for pass in 0..repeat {
        for &s in sets {
            let d = steiner_distance_with(g, s, cfg)?.distance;
            if pass == 0 {
                values.push(d.to_string());
            }
        }
    }
    let ms = start.elapsed().as_secs_f64() * 1000.0 / repeat as f64;
    Ok((values, ms))
}
