//! Batch experiments: attack many hosts and collect one CSV row per run.
//!
//! Configuration is a flat `key=value` file, with later assignments
//! overriding earlier ones:
//!
//! ```text
//! family=block
//! sizes=10,15,20
//! seeds=0..5
//! max_block=6
//! dict=builtin:clique6
//! epsilon=1/100
//! ```

use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::attack::{coverage_fraction, Dict};
use crate::catalog::SURVEY_MOTIFS;
use crate::dictfile;
use crate::dictionary::{atomic_dictionary, cactus_dictionary, clique_dictionary, five_motif_dictionary, tree_dictionary, DictConfig, Dictionary};
use crate::edgelist;
use crate::embed::{default_epsilon, EmbedConfig, DEFAULT_BUDGET};
use crate::error::{Result, VnxError};
use crate::generate::{generate, Family, GenSpec};
use crate::graph::{parse_weight, CapGraph, Weight};
use crate::iso::is_isomorphic;
use crate::motif::Motif;
use crate::oracle::{HonestOracle, Oracle, Phase};
use crate::par::{self, Exec};

pub const CSV_HEADER: &str = "host,n,m,dict,requests_total,req_motif,req_rep,req_expand,req_term,recovered,coverage,ms";

pub const BUILTIN_DICTS: &[&str] = &["tree", "cactus", "clique6", "five", "survey"];

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub family: Option<Family>,
    pub sizes: Vec<usize>,
    pub seeds: Vec<u64>,
    pub max_block: Option<usize>,
    pub host_files: Vec<PathBuf>,
    /// `builtin:<name>` or a dictionary file.
    pub dict: String,
    pub epsilon: Weight,
    pub budget: u64,
    /// Runs per row; the row reports the fastest.
    pub repetitions: usize,
    pub out: Option<PathBuf>,
    pub exec: Exec,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            family: None,
            sizes: Vec::new(),
            seeds: vec![0],
            max_block: None,
            host_files: Vec::new(),
            dict: "builtin:tree".into(),
            epsilon: default_epsilon(),
            budget: DEFAULT_BUDGET,
            repetitions: 1,
            out: None,
            exec: Exec::default(),
        }
    }
}

fn list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    let bad = || VnxError::Parse { line: 0, msg: format!("{key}: cannot read {value:?}") };
    let mut out = Vec::new();
    for part in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u64 = a.parse().map_err(|_| bad())?;
            let b: u64 = b.parse().map_err(|_| bad())?;
            for x in a..b {
                out.push(x.to_string().parse().map_err(|_| bad())?);
            }
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

impl ExperimentConfig {
    /// Sets one key. Lists accept comma-separated items and `a..b` ranges.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        let bad = |msg: String| VnxError::Parse { line: 0, msg: format!("{key}: {msg}") };
        match key.trim() {
            "family" => self.family = Some(value.parse()?),
            "sizes" => self.sizes = list(key, value)?,
            "seeds" => self.seeds = list(key, value)?,
            "max_block" => self.max_block = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "host_files" | "hosts" => self.host_files = value.split(',').map(str::trim).filter(|s| !s.is_empty()).map(PathBuf::from).collect(),
            "dict" => self.dict = value.to_string(),
            "epsilon" => self.epsilon = parse_weight(value).map_err(bad)?,
            "budget" => self.budget = value.parse().map_err(|e| bad(format!("{e}")))?,
            "repetitions" => self.repetitions = value.parse().map_err(|e| bad(format!("{e}")))?,
            "out" => self.out = Some(PathBuf::from(value)),
            "exec" => {
                self.exec = match value {
                    "parallel" => Exec::Parallel,
                    "sequential" => Exec::Sequential,
                    _ => return Err(bad(format!("expected parallel or sequential, got {value:?}"))),
                }
            }
            other => return Err(VnxError::Parse { line: 0, msg: format!("unknown key {other:?}") }),
        }
        Ok(())
    }

    /// Applies every `key=value` line of `text`; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| VnxError::Parse { line: i + 1, msg: format!("expected key=value, got {line:?}") })?;
            self.set(k, v).map_err(|e| match e {
                VnxError::Parse { msg, .. } => VnxError::Parse { line: i + 1, msg },
                other => other,
            })?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(VnxError::InvalidGraph(format!("experiment config: {m}")));
        if self.epsilon <= Weight::from_integer(0) {
            return bad("epsilon must be positive");
        }
        if self.family.is_none() && self.host_files.is_empty() {
            return bad("needs a family or host files");
        }
        if self.family.is_some() && (self.sizes.is_empty() || self.seeds.is_empty()) {
            return bad("a family needs sizes and seeds");
        }
        if self.repetitions == 0 {
            return bad("repetitions must be at least 1");
        }
        Ok(())
    }

    pub fn embed_config(&self) -> EmbedConfig {
        EmbedConfig { epsilon: self.epsilon, budget: self.budget }
    }
}

/// Resolves `builtin:<name>` or reads a dictionary file. Returns the id
/// used in result rows as well.
pub fn load_dictionary(spec: &str, cfg: &DictConfig) -> Result<(String, Dictionary)> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        let d = match name {
            "tree" => tree_dictionary(),
            "cactus" => cactus_dictionary(),
            "five" => five_motif_dictionary(),
            "survey" => survey_dictionary(cfg)?,
            _ => match name.strip_prefix("clique").and_then(|k| k.parse::<usize>().ok()) {
                Some(k) if k >= 3 => clique_dictionary(k),
                _ => return Err(VnxError::InvalidGraph(format!("unknown builtin dictionary {name:?}"))),
            },
        };
        return Ok((name.to_string(), d));
    }
    let path = Path::new(spec);
    let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| spec.to_string());
    Ok((id, dictfile::read(path)?))
}

/// Atomic words of the twelve survey motifs.
pub fn survey_dictionary(cfg: &DictConfig) -> Result<Dictionary> {
    let motifs: Vec<Motif> = SURVEY_MOTIFS.iter().map(|m| Motif::named(m).expect("catalog motif")).collect();
    atomic_dictionary(&motifs, cfg)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub host: String,
    pub n: usize,
    pub m: usize,
    pub dict: String,
    pub requests_total: usize,
    pub req_motif: usize,
    pub req_rep: usize,
    pub req_expand: usize,
    pub req_term: usize,
    pub recovered: bool,
    pub coverage: f64,
    pub ms: u128,
    /// Why the run ended early, if it did. Not part of the CSV.
    pub error: Option<String>,
}

impl ResultRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{:.4},{}",
            self.host,
            self.n,
            self.m,
            self.dict,
            self.requests_total,
            self.req_motif,
            self.req_rep,
            self.req_expand,
            self.req_term,
            self.recovered,
            self.coverage,
            self.ms
        )
    }
}

pub fn to_csv(rows: &[ResultRow]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for r in rows {
        out += &r.to_csv();
        out.push('\n');
    }
    out
}

/// The CSV with the timing column removed, for comparing runs.
pub fn strip_timing(csv: &str) -> String {
    csv.lines().map(|l| l.rsplit_once(',').map_or(l, |(head, _)| head)).collect::<Vec<_>>().join("\n")
}

/// A host to attack: its id and graph.
pub type HostJob = (String, CapGraph);

pub fn hosts(cfg: &ExperimentConfig) -> Result<Vec<HostJob>> {
    let mut out = Vec::new();
    for path in &cfg.host_files {
        out.push((path.display().to_string(), edgelist::read(path)?));
    }
    if let Some(family) = cfg.family {
        for &n in &cfg.sizes {
            for &seed in &cfg.seeds {
                let mut spec = GenSpec::new(family, n, seed);
                if let Some(k) = cfg.max_block {
                    spec = spec.with_max_block(k);
                }
                out.push((spec.label(), generate(&spec)?));
            }
        }
    }
    Ok(out)
}

/// Attacks one host. Errors inside the run are recorded in the row.
pub fn run_row(id: &str, host: &CapGraph, dict_id: &str, d: &Dictionary, cfg: &EmbedConfig) -> ResultRow {
    let mut row = ResultRow {
        host: id.to_string(),
        n: host.node_count(),
        m: host.edge_count(),
        dict: dict_id.to_string(),
        requests_total: 0,
        req_motif: 0,
        req_rep: 0,
        req_expand: 0,
        req_term: 0,
        recovered: false,
        coverage: 0.0,
        ms: 0,
        error: None,
    };
    let mut oracle = match HonestOracle::with_config(host.clone(), *cfg) {
        Ok(o) => o,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    let start = Instant::now();
    let mut last = CapGraph::new(1);
    let result = Dict::new(&mut oracle, d).observe(|h| last = h.clone()).run();
    row.ms = start.elapsed().as_millis();
    let log = oracle.log();
    row.requests_total = log.len();
    row.req_motif = log.count(Phase::MotifSearch);
    row.req_rep = log.count(Phase::Repetition);
    row.req_expand = log.count(Phase::EdgeExpansion);
    row.req_term = log.count(Phase::Termination);
    let found = match result {
        Ok(outcome) => outcome.h_prime,
        Err(e) => {
            row.error = Some(e.to_string());
            last
        }
    };
    row.recovered = row.error.is_none() && is_isomorphic(&found, host);
    row.coverage = if row.recovered {
        1.0
    } else {
        coverage_fraction(&found, host, cfg).unwrap_or_else(|e| {
            row.error.get_or_insert(e.to_string());
            0.0
        })
    };
    row
}

/// One row per host, computed concurrently and returned in input order.
pub fn run_bench(cfg: &ExperimentConfig) -> Result<Vec<ResultRow>> {
    cfg.validate()?;
    let embed = cfg.embed_config();
    let dict_cfg = DictConfig { embed, exec: cfg.exec, ..DictConfig::default() };
    let (dict_id, d) = load_dictionary(&cfg.dict, &dict_cfg)?;
    let jobs = hosts(cfg)?;
    Ok(par::map(cfg.exec, &jobs, |(id, host)| {
        let mut best = run_row(id, host, &dict_id, &d, &embed);
        for _ in 1..cfg.repetitions {
            best.ms = best.ms.min(run_row(id, host, &dict_id, &d, &embed).ms);
        }
        best
    }))
}
