use std::fs;
use std::io::{self, BufRead, BufReader};
use std::path::PathBuf;

use clap::Args;
use sdiam_core::edge_list::parse_edge_list;
use sdiam_core::{parse_graph6, Error, Graph, Result};

/// Graph input. At most one source; standard input (graph6) otherwise.
#[derive(Args, Debug, Clone)]
#[group(multiple = false)]
pub struct GraphSource {
    /// Inline graph6 string.
    #[arg(long, value_name = "GRAPH6")]
    pub g6: Option<String>,
    /// File of graph6 lines ("-" for standard input).
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Edge-list file: header "n m", then one "u v" per line.
    #[arg(long, value_name = "FILE")]
    pub edges: Option<PathBuf>,
}

impl GraphSource {
    /// Every graph in the source, paired with a label for reports.
    pub fn graphs(&self) -> Result<Vec<(String, Graph)>> {
        if let Some(line) = &self.g6 {
            return Ok(vec![(line.trim().to_string(), parse_graph6(line)?)]);
        }
        if let Some(path) = &self.edges {
            let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            return Ok(vec![(path.display().to_string(), parse_edge_list(&text)?)]);
        }
        let reader = self.reader()?;
        let mut out = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let g = parse_graph6(&line).map_err(|e| Error::Graph6(format!("line {}: {e}", i + 1)))?;
            out.push((line.trim().to_string(), g));
        }
        if out.is_empty() {
            return Err(Error::Config("no graph in input".into()));
        }
        Ok(out)
    }

    /// Exactly one graph.
    pub fn single(&self) -> Result<(String, Graph)> {
        let mut all = self.graphs()?;
        if all.len() != 1 {
            return Err(Error::Config(format!("expected one graph, found {}", all.len())));
        }
        Ok(all.remove(0))
    }

    /// Line reader over `--input` or standard input.
    pub fn reader(&self) -> Result<Box<dyn BufRead>> {
        match &self.input {
            Some(p) if p.as_os_str() != "-" => {
                let f = fs::File::open(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                Ok(Box::new(BufReader::new(f)))
            }
            _ => Ok(Box::new(BufReader::new(io::stdin()))),
        }
    }
}

/// `k` as given on the command line: absolute, or relative to `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KSpec {
    Abs(usize),
    Rel(usize),
}

impl KSpec {
    pub fn resolve(self, n: usize) -> Result<usize> {
        let k = match self {
            KSpec::Abs(k) => k,
            KSpec::Rel(d) => n.checked_sub(d).ok_or(Error::KOutOfRange { k: 0, lo: 2, hi: n })?,
        };
        if k < 2 || k > n {
            return Err(Error::KOutOfRange { k, lo: 2, hi: n });
        }
        Ok(k)
    }
}

pub fn parse_k(s: &str) -> std::result::Result<KSpec, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t == "n" {
        return Ok(KSpec::Rel(0));
    }
    if let Some(d) = t.strip_prefix("n-") {
        return d.parse().map(KSpec::Rel).map_err(|_| format!("bad k {s:?}"));
    }
    t.parse().map(KSpec::Abs).map_err(|_| format!("bad k {s:?} (integer or n-d)"))
}

/// A probability as a fraction: "1/2", "0.4", "1" or "0".
pub fn parse_probability(s: &str) -> Result<(u64, u64)> {
    let bad = || Error::Config(format!("bad probability {s:?}"));
    let (num, den) = if let Some((a, b)) = s.split_once('/') {
        (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
    } else if let Some((int, frac)) = s.split_once('.') {
        if frac.len() > 9 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        (int * den + frac, den)
    } else {
        (s.trim().parse().map_err(|_| bad())?, 1)
    };
    if den == 0 || num > den {
        return Err(bad());
    }
    Ok((num, den))
}

/// `n=..,p=..,count=..[,seed=..]`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomSpec {
    pub n: usize,
    pub p: (u64, u64),
    pub count: usize,
    pub seed: Option<u64>,
}

pub fn parse_random(s: &str) -> std::result::Result<RandomSpec, String> {
    let (mut n, mut p, mut count, mut seed) = (None, None, None, None);
    for part in s.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(|| format!("expected key=value, got {part:?}"))?;
        let value = value.trim();
        match key.trim() {
            "n" => n = Some(value.parse().map_err(|_| format!("bad n {value:?}"))?),
            "p" => p = Some(parse_probability(value).map_err(|e| e.to_string())?),
            "count" => count = Some(value.parse().map_err(|_| format!("bad count {value:?}"))?),
            "seed" => seed = Some(value.parse().map_err(|_| format!("bad seed {value:?}"))?),
            other => return Err(format!("unknown key {other:?}")),
        }
    }
    Ok(RandomSpec {
        n: n.ok_or("missing n")?,
        p: p.ok_or("missing p")?,
        count: count.ok_or("missing count")?,
        seed,
    })
}
