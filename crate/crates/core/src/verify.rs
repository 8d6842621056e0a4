//! Audit harness: runs the structural classifiers against exact Steiner
//! diameters over a stream of graph6 lines and writes a line-delimited JSON
//! report (one object per line, summary last).

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characterize::{
    classify, lemma1_tree, lemma2_cut_count, prop1_connectivity, Interpretation, KOffset, Reading, Rule,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::graph6::{parse_graph6, to_graph6, MAX_GRAPH6_ORDER};
use crate::steiner::{steiner_diameter, steiner_distance_with, SteinerConfig, SteinerResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Rejection attempts per emitted sample in [`random_graphs`].
pub const RANDOM_RETRY_CAP: usize = 1000;

/// Number of connected graphs on `n` unlabelled vertices, `n ≤ 8`.
pub const CONNECTED_GRAPH_COUNTS: [u64; 9] = [0, 1, 1, 2, 6, 21, 112, 853, 11117];

const CHUNK: usize = 256;

/// Which `k = n - d` values to audit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum KPolicy {
    N,
    #[serde(rename = "N_MINUS_1")]
    NMinus1,
    #[serde(rename = "N_MINUS_2")]
    NMinus2,
    #[serde(rename = "N_MINUS_3")]
    NMinus3,
    All,
}

impl KPolicy {
    pub fn offsets(self) -> &'static [KOffset] {
        match self {
            KPolicy::N => &[KOffset::N],
            KPolicy::NMinus1 => &[KOffset::NMinus1],
            KPolicy::NMinus2 => &[KOffset::NMinus2],
            KPolicy::NMinus3 => &[KOffset::NMinus3],
            KPolicy::All => &KOffset::ALL,
        }
    }
}

impl FromStr for KPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace(' ', "").as_str() {
            "n" => Ok(KPolicy::N),
            "n-1" => Ok(KPolicy::NMinus1),
            "n-2" => Ok(KPolicy::NMinus2),
            "n-3" => Ok(KPolicy::NMinus3),
            "all" => Ok(KPolicy::All),
            other => Err(Error::Config(format!(
                "unknown k policy {other:?} (expected n, n-1, n-2, n-3 or all)"
            ))),
        }
    }
}

impl fmt::Display for KPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KPolicy::N => "n",
            KPolicy::NMinus1 => "n-1",
            KPolicy::NMinus2 => "n-2",
            KPolicy::NMinus3 => "n-3",
            KPolicy::All => "all",
        })
    }
}

/// Which readings of the `k = n - 3` conditions to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interpretations {
    pub literal: bool,
    /// The repaired reading, possibly with individual repairs switched off.
    pub amended: Option<Reading>,
}

impl Interpretations {
    pub const BOTH: Interpretations = Interpretations {
        literal: true,
        amended: Some(Reading::AMENDED),
    };

    fn readings(&self) -> Vec<(Interpretation, Reading)> {
        let mut out = Vec::new();
        if self.literal {
            out.push((Interpretation::Literal, Reading::LITERAL));
        }
        if let Some(r) = self.amended {
            out.push((Interpretation::Amended, r));
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct AuditConfig {
    pub policy: KPolicy,
    pub interpretations: Interpretations,
    pub steiner: SteinerConfig,
    /// Also check the tree, cut-count and connectivity rules and the
    /// `k - 1 ≤ sdiam_k ≤ n - 1` bounds on every graph.
    pub contracts: bool,
    /// Every mismatch counts as hard, not only the clean classes.
    pub strict: bool,
    /// `0` lets the pool pick.
    pub workers: usize,
    /// Abort unless the per-n graph counts equal [`CONNECTED_GRAPH_COUNTS`].
    pub expect_exhaustive: bool,
    /// Echoed in the summary; set by callers that generated the input.
    pub seed: Option<u64>,
    /// Adds wall time to the summary, which makes it nondeterministic.
    pub timing: bool,
    /// Write only records with at least one wrong prediction; totals still
    /// cover everything.
    pub mismatches_only: bool,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            policy: KPolicy::All,
            interpretations: Interpretations::BOTH,
            steiner: SteinerConfig::default(),
            contracts: true,
            strict: false,
            workers: 0,
            expect_exhaustive: false,
            seed: None,
            timing: false,
            mismatches_only: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub predicted: usize,
    #[serde(rename = "match")]
    pub matches: bool,
    /// Present only when the prediction is wrong.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule_chain: Option<Vec<Rule>>,
}

/// Lexicographically smallest k-set attaining the oracle value, with a
/// Steiner tree for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub set: Vec<usize>,
    pub tree: SteinerResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRecord {
    pub sequence_index: u64,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub offset: String,
    pub oracle: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub literal: Option<Prediction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amended: Option<Prediction>,
    /// Whether a mismatch here is asserted: a clean class, or any class
    /// under `strict`.
    pub hard: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl AuditRecord {
    pub fn is_mismatch(&self) -> bool {
        [&self.literal, &self.amended].into_iter().flatten().any(|p| !p.matches)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkipRecord {
    pub sequence_index: u64,
    pub graph6: String,
    pub reason: String,
}

/// A failed contract check on one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractRecord {
    pub sequence_index: u64,
    pub graph6: String,
    pub contract: String,
    pub param: usize,
    pub k: usize,
    pub oracle: usize,
    pub predicted: bool,
    pub observed: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub matches: u64,
    pub mismatches: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KTotals {
    pub offset: String,
    pub k: usize,
    pub records: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub literal: Option<Tally>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amended: Option<Tally>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NTotals {
    pub n: usize,
    pub graphs: u64,
    pub skipped: u64,
    pub by_k: Vec<KTotals>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub policy: KPolicy,
    pub interpretations: Interpretations,
    pub steiner: SteinerConfig,
    pub contracts: bool,
    pub strict: bool,
    #[serde(default)]
    pub mismatches_only: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub schema_version: u32,
    pub config: ConfigEcho,
    pub graphs: u64,
    pub skipped: u64,
    pub records: u64,
    pub per_n: Vec<NTotals>,
    pub contracts_checked: u64,
    pub contract_failures: u64,
    pub hard_mismatches: u64,
    pub soft_mismatches: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl AuditSummary {
    /// Exit status 1 is due.
    pub fn failed(&self) -> bool {
        self.hard_mismatches > 0 || self.contract_failures > 0
    }

    pub fn tally(&self, n: usize, off: KOffset, interp: Interpretation) -> Option<Tally> {
        let nt = self.per_n.iter().find(|t| t.n == n)?;
        let kt = nt.by_k.iter().find(|t| t.offset == off.label())?;
        match interp {
            Interpretation::Literal => kt.literal,
            Interpretation::Amended => kt.amended,
        }
    }
}

/// One line of the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ReportLine {
    Record(AuditRecord),
    Skip(SkipRecord),
    Contract(ContractRecord),
    Summary(AuditSummary),
}

impl ReportLine {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report lines serialize")
    }
}

struct GraphOutcome {
    n: usize,
    connected: bool,
    contracts_checked: u64,
    lines: Vec<ReportLine>,
}

/// Whether a mismatch on this record belongs to a class the harness treats
/// as established: everything with `k ≥ n - 2`, and at `k = n - 3` the
/// `n - 4` and `n - 1` values in either direction.
fn hard_class(off: KOffset, n: usize, oracle: usize, chains: &[&[Rule]]) -> bool {
    match off {
        KOffset::N | KOffset::NMinus1 | KOffset::NMinus2 => true,
        KOffset::NMinus3 => {
            oracle + 4 == n
                || oracle + 1 == n
                || chains
                    .iter()
                    .any(|c| c.contains(&Rule::Prop2KappaGe4) || c.contains(&Rule::Lemma2Cuts))
        }
    }
}

struct Oracle<'a> {
    g: &'a Graph,
    cfg: &'a SteinerConfig,
    cache: BTreeMap<usize, (usize, VertexSet)>,
}

impl Oracle<'_> {
    fn sdiam(&mut self, k: usize) -> Result<(usize, VertexSet)> {
        if let Some(&v) = self.cache.get(&k) {
            return Ok(v);
        }
        let v = steiner_diameter(self.g, k, self.cfg)?;
        self.cache.insert(k, v);
        Ok(v)
    }
}

fn audit_graph(index: u64, line: &str, cfg: &AuditConfig) -> Result<GraphOutcome> {
    let g = parse_graph6(line)?;
    let n = g.order();
    let graph6 = to_graph6(&g)?;
    if !g.is_connected() {
        return Ok(GraphOutcome {
            n,
            connected: false,
            contracts_checked: 0,
            lines: vec![ReportLine::Skip(SkipRecord {
                sequence_index: index,
                graph6,
                reason: "disconnected".into(),
            })],
        });
    }
    let mut oracle = Oracle {
        g: &g,
        cfg: &cfg.steiner,
        cache: BTreeMap::new(),
    };
    let mut lines = Vec::new();
    let readings = cfg.interpretations.readings();

    for &off in cfg.policy.offsets() {
        if n < off.min_order() {
            continue;
        }
        let k = n - off.offset();
        let (value, set) = oracle.sdiam(k)?;
        let mut preds: Vec<(Interpretation, Prediction, Vec<Rule>)> = Vec::new();
        for &(interp, reading) in &readings {
            let out = classify(&g, off, reading)?;
            let matches = out.predicted == value;
            preds.push((
                interp,
                Prediction {
                    predicted: out.predicted,
                    matches,
                    rule_chain: (!matches).then(|| out.rule_chain.clone()),
                },
                out.rule_chain,
            ));
        }
        let chains: Vec<&[Rule]> = preds.iter().map(|p| p.2.as_slice()).collect();
        let hard = cfg.strict || hard_class(off, n, value, &chains);
        let any_miss = preds.iter().any(|p| !p.1.matches);
        let witness = if any_miss {
            Some(Witness {
                set: set.to_vec(),
                tree: steiner_distance_with(&g, set, &cfg.steiner)?,
            })
        } else {
            None
        };
        let mut rec = AuditRecord {
            sequence_index: index,
            graph6: graph6.clone(),
            n,
            m: g.size(),
            k,
            offset: off.label().into(),
            oracle: value,
            literal: None,
            amended: None,
            hard,
            witness,
        };
        for (interp, p, _) in preds {
            match interp {
                Interpretation::Literal => rec.literal = Some(p),
                Interpretation::Amended => rec.amended = Some(p),
            }
        }
        lines.push(ReportLine::Record(rec));
    }

    let mut checked = 0;
    if cfg.contracts {
        let mut check = |contract: &str, param: usize, k: usize, predicted: bool, observed: bool, value: usize| {
            checked += 1;
            if predicted != observed {
                lines.push(ReportLine::Contract(ContractRecord {
                    sequence_index: index,
                    graph6: graph6.clone(),
                    contract: contract.into(),
                    param,
                    k,
                    oracle: value,
                    predicted,
                    observed,
                }));
            }
        };
        for j in 1..=3usize {
            if j + 2 > n {
                break;
            }
            // sdiam_{n-j} = n - 1  iff  at least j cut vertices
            let (v, _) = oracle.sdiam(n - j)?;
            check("LEMMA2_CUT_COUNT", j, n - j, lemma2_cut_count(&g, j)?, v == n - 1, v);
            // κ ≥ j  iff  sdiam_{n-j+1} = n - j
            let (v, _) = oracle.sdiam(n - j + 1)?;
            check("PROP1_CONNECTIVITY", j, n - j + 1, prop1_connectivity(&g, j)?, v == n - j, v);
        }
        if g.is_tree() {
            for k in 2..=n {
                let (v, _) = oracle.sdiam(k)?;
                check("LEMMA1_TREE", k, k, lemma1_tree(&g, k)?, v == n - 1, v);
            }
        }
        let computed: Vec<(usize, usize)> = oracle.cache.iter().map(|(&k, &(v, _))| (k, v)).collect();
        for (k, v) in computed {
            check("SDIAM_BOUNDS", k, k, true, k - 1 <= v && v < n, v);
        }
    }

    Ok(GraphOutcome {
        n,
        connected: true,
        contracts_checked: checked,
        lines,
    })
}

#[derive(Default)]
struct Accumulator {
    graphs: u64,
    skipped: u64,
    records: u64,
    per_n: BTreeMap<usize, (u64, u64, BTreeMap<usize, KTotals>)>,
    contracts_checked: u64,
    contract_failures: u64,
    hard: u64,
    soft: u64,
}

impl Accumulator {
    fn add(&mut self, out: &GraphOutcome, strict: bool) {
        let entry = self.per_n.entry(out.n).or_default();
        if out.connected {
            self.graphs += 1;
            entry.0 += 1;
        } else {
            self.skipped += 1;
            entry.1 += 1;
        }
        self.contracts_checked += out.contracts_checked;
        for line in &out.lines {
            match line {
                ReportLine::Record(r) => {
                    self.records += 1;
                    let off = KOffset::ALL.iter().position(|o| o.label() == r.offset).unwrap_or(0);
                    let kt = entry.2.entry(off).or_insert_with(|| KTotals {
                        offset: r.offset.clone(),
                        k: r.k,
                        records: 0,
                        literal: None,
                        amended: None,
                    });
                    kt.records += 1;
                    for (slot, p) in [(&mut kt.literal, &r.literal), (&mut kt.amended, &r.amended)] {
                        if let Some(p) = p {
                            let t = slot.get_or_insert_with(Tally::default);
                            if p.matches {
                                t.matches += 1;
                            } else {
                                t.mismatches += 1;
                            }
                        }
                    }
                    if r.is_mismatch() {
                        if r.hard || strict {
                            self.hard += 1;
                        } else {
                            self.soft += 1;
                        }
                    }
                }
                ReportLine::Contract(_) => self.contract_failures += 1,
                _ => {}
            }
        }
    }

    fn finish(self, cfg: &AuditConfig) -> AuditSummary {
        AuditSummary {
            schema_version: SCHEMA_VERSION,
            config: ConfigEcho {
                policy: cfg.policy,
                interpretations: cfg.interpretations,
                steiner: cfg.steiner,
                contracts: cfg.contracts,
                strict: cfg.strict,
                mismatches_only: cfg.mismatches_only,
                seed: cfg.seed,
            },
            graphs: self.graphs,
            skipped: self.skipped,
            records: self.records,
            per_n: self
                .per_n
                .into_iter()
                .map(|(n, (graphs, skipped, by_k))| NTotals {
                    n,
                    graphs,
                    skipped,
                    by_k: by_k.into_values().collect(),
                })
                .collect(),
            contracts_checked: self.contracts_checked,
            contract_failures: self.contract_failures,
            hard_mismatches: self.hard,
            soft_mismatches: self.soft,
            wall_time_ms: None,
        }
    }
}

fn check_exhaustive(summary: &AuditSummary) -> Result<()> {
    for t in &summary.per_n {
        let want = CONNECTED_GRAPH_COUNTS.get(t.n).copied();
        if want != Some(t.graphs) || t.skipped > 0 {
            return Err(Error::Config(format!(
                "n = {}: {} connected graphs read, expected {}",
                t.n,
                t.graphs,
                want.map_or("no known count".into(), |w| w.to_string())
            )));
        }
    }
    Ok(())
}

/// Audits every graph6 line of `input` and writes the report to `out`.
///
/// Lines are processed in chunks on a pool of `cfg.workers` threads and
/// reassembled in input order, so the report does not depend on the worker
/// count. A line that fails to parse aborts the run.
pub fn audit_stream<R: BufRead, W: Write>(input: R, cfg: &AuditConfig, mut out: W) -> Result<AuditSummary> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    let mut acc = Accumulator::default();
    let mut lines = input.lines().enumerate();
    let mut index = 0u64;
    loop {
        let mut chunk: Vec<(u64, usize, String)> = Vec::with_capacity(CHUNK);
        for (lineno, line) in lines.by_ref() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            chunk.push((index, lineno, line));
            index += 1;
            if chunk.len() == CHUNK {
                break;
            }
        }
        if chunk.is_empty() {
            break;
        }
        let results: Vec<Result<GraphOutcome>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|(i, lineno, line)| {
                    audit_graph(*i, line, cfg).map_err(|e| match e {
                        Error::Graph6(msg) => Error::Graph6(format!("line {}: {msg}", lineno + 1)),
                        other => other,
                    })
                })
                .collect()
        });
        for r in results {
            let outcome = r?;
            for line in &outcome.lines {
                if cfg.mismatches_only && matches!(line, ReportLine::Record(r) if !r.is_mismatch()) {
                    continue;
                }
                writeln!(out, "{}", line.to_json())?;
            }
            acc.add(&outcome, cfg.strict);
        }
    }
    let mut summary = acc.finish(cfg);
    if cfg.expect_exhaustive {
        check_exhaustive(&summary)?;
    }
    if cfg.timing {
        summary.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    writeln!(out, "{}", ReportLine::Summary(summary.clone()).to_json())?;
    out.flush()?;
    Ok(summary)
}

/// Runs [`audit_stream`] over in-memory lines and returns the parsed report.
pub fn audit_lines(lines: &[String], cfg: &AuditConfig) -> Result<(Vec<ReportLine>, AuditSummary)> {
    let mut buf = Vec::new();
    let summary = audit_stream(lines.join("\n").as_bytes(), cfg, &mut buf)?;
    let text = String::from_utf8(buf).expect("report is utf-8");
    let report = text
        .lines()
        .map(|l| serde_json::from_str(l).map_err(|e| Error::Record(e.to_string())))
        .collect::<Result<_>>()?;
    Ok((report, summary))
}

/// `count` connected samples of G(n, p) with `p = num / den`, as graph6
/// lines.
///
/// The generator is ChaCha8 seeded with `seed`; each pair `i < j` is visited
/// column by column and becomes an edge when a uniform draw from `0..den` is
/// below `num`. Disconnected samples are redrawn, at most
/// [`RANDOM_RETRY_CAP`] times per emitted graph.
pub fn random_graphs(n: usize, p: (u64, u64), count: usize, seed: u64) -> Result<Vec<String>> {
    let (num, den) = p;
    if den == 0 || num > den {
        return Err(Error::Config(format!("edge probability {num}/{den} outside [0, 1]")));
    }
    if n == 0 || n > MAX_GRAPH6_ORDER {
        return Err(Error::Config(format!("order {n} outside 1..={MAX_GRAPH6_ORDER}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut found = None;
        for _ in 0..RANDOM_RETRY_CAP {
            let mut g = Graph::empty(n)?;
            for j in 1..n {
                for i in 0..j {
                    if rng.gen_range(0..den) < num {
                        g.add_edge(i, j)?;
                    }
                }
            }
            if g.is_connected() {
                found = Some(g);
                break;
            }
        }
        let g = found.ok_or_else(|| {
            Error::ResourceGuard(format!(
                "no connected G({n}, {num}/{den}) sample in {RANDOM_RETRY_CAP} attempts"
            ))
        })?;
        out.push(to_graph6(&g)?);
    }
    Ok(out)
}

/// Recomputes the oracle for `record` and checks it against every stored
/// value: the full `sdiam_k`, the witness set and its tree, the match flags
/// and the `k - 1 ≤ sdiam_k ≤ n - 1` bounds.
pub fn recheck(record: &AuditRecord) -> Result<bool> {
    let g = parse_graph6(&record.graph6)?;
    let n = g.order();
    if n != record.n || g.size() != record.m {
        return Ok(false);
    }
    if record.k < 2 || record.k > n || record.offset != KOffset::from_offset(n - record.k).map_or("", |o| o.label()) {
        return Ok(false);
    }
    if record.oracle + 1 < record.k || record.oracle >= n {
        return Ok(false);
    }
    let cfg = SteinerConfig::default();
    let (value, _) = steiner_diameter(&g, record.k, &cfg)?;
    if value != record.oracle {
        return Ok(false);
    }
    for p in [&record.literal, &record.amended].into_iter().flatten() {
        if p.matches != (p.predicted == record.oracle) || p.matches == p.rule_chain.is_some() {
            return Ok(false);
        }
    }
    match &record.witness {
        None => Ok(!record.is_mismatch()),
        Some(w) => {
            let Ok(s) = g.vertex_set(&w.set) else {
                return Ok(false);
            };
            if s.len() != record.k || s.to_vec() != w.set {
                return Ok(false);
            }
            let d = steiner_distance_with(&g, s, &cfg)?.distance;
            Ok(d.finite() == Some(record.oracle)
                && w.tree.distance == d
                && w.tree.verify(&g, s))
        }
    }
}

/// Parses one report line into an [`AuditRecord`].
pub fn parse_record(line: &str) -> Result<AuditRecord> {
    match serde_json::from_str::<ReportLine>(line) {
        Ok(ReportLine::Record(r)) => Ok(r),
        Ok(_) => Err(Error::Record("not an audit record".into())),
        Err(e) => Err(Error::Record(e.to_string())),
    }
}
