use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use vnx_core::attack::Dict;
use vnx_core::dictionary::{build_dictionary, check_robustness, DictConfig, Robustness};
use vnx_core::embed::{find_embedding_with, EmbedConfig, DEFAULT_BUDGET};
use vnx_core::experiment::{self, ExperimentConfig};
use vnx_core::generate::{generate, Family, GenSpec};
use vnx_core::graph::parse_weight;
use vnx_core::iso::is_isomorphic;
use vnx_core::motif::{classify, dissect, extract_motifs, Motif, MotifSet};
use vnx_core::{dictfile, dot, edgelist, CapGraph, HonestOracle, Oracle, Weight};

#[derive(Parser)]
#[command(name = "vnx", version, about = "Topology extraction through a virtual network embedding oracle")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether GUEST embeds into HOST.
    Oracle(OracleArgs),
    /// Print dissection statistics for edge-list files.
    Analyze(AnalyzeArgs),
    /// Build, check or summarise dictionaries.
    #[command(subcommand)]
    Dict(DictCommand),
    /// Run the dictionary attack against one host.
    Attack(AttackArgs),
    /// Run a batch of attacks and write a CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct OracleArgs {
    guest: PathBuf,
    host: PathBuf,
    #[arg(long, default_value = "1/100")]
    epsilon: String,
    /// Print the node map and the path of every guest link.
    #[arg(long)]
    witness: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Write every motif of each file as an edge list into DIR.
    #[arg(long, value_name = "DIR")]
    emit_motifs: Option<PathBuf>,
    /// Write each file's categories as DOT into DIR.
    #[arg(long, value_name = "DIR")]
    emit_dot: Option<PathBuf>,
}

#[derive(Subcommand)]
enum DictCommand {
    /// Build a dictionary from motif names or from the motifs of a host.
    Build {
        /// Comma-separated catalog names, e.g. `Y,D,K4`.
        #[arg(long, conflicts_with = "from_host")]
        motifs: Option<String>,
        #[arg(long, value_name = "FILE")]
        from_host: Option<PathBuf>,
        /// Largest word, in nodes; defaults to the largest motif.
        #[arg(long)]
        max_word_nodes: Option<usize>,
        #[arg(long, default_value = "1/100")]
        epsilon: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify the edges and robustness of a dictionary.
    Check {
        dict: String,
        /// Largest composed sequence tried, in nodes.
        #[arg(long, default_value_t = 8)]
        compose_bound: usize,
        #[arg(long, default_value = "1/100")]
        epsilon: String,
    },
    /// Print the cost table and Δ.
    Stats { dict: String },
    /// Write a dictionary, e.g. a builtin one, in the file format.
    Export {
        dict: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct AttackArgs {
    /// Host edge list. Without it a host is generated from --family.
    #[arg(long, required_unless_present = "family")]
    host: Option<PathBuf>,
    #[arg(long, conflicts_with = "host")]
    family: Option<Family>,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long)]
    max_block: Option<usize>,
    /// Seed of the generated host.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Dictionary file or `builtin:<name>`.
    #[arg(long, default_value = "builtin:tree")]
    dict: String,
    #[arg(long, default_value = "1/100")]
    epsilon: String,
    /// Also compare the result with the host by isomorphism.
    #[arg(long)]
    confirm_isomorphic: bool,
    /// Directory for discovered.dot, discovered.edges and requests.csv.
    /// Without it the DOT goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// key=value configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    sizes: Option<String>,
    #[arg(long)]
    seeds: Option<String>,
    #[arg(long)]
    max_block: Option<String>,
    #[arg(long)]
    hosts: Option<String>,
    #[arg(long)]
    dict: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    budget: Option<String>,
    #[arg(long)]
    repetitions: Option<String>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_parser = ["parallel", "sequential"])]
    exec: Option<String>,
    /// Any further key=value override.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn budget() -> Result<u64> {
    match std::env::var("VNX_BUDGET") {
        Ok(v) => v.trim().parse().with_context(|| format!("VNX_BUDGET={v:?} is not a number")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn embed_config(epsilon: &str) -> Result<EmbedConfig> {
    let epsilon: Weight = parse_weight(epsilon).map_err(anyhow::Error::msg)?;
    if epsilon <= Weight::from_integer(0) {
        bail!("epsilon must be positive");
    }
    Ok(EmbedConfig { epsilon, budget: budget()? })
}

fn read_graph(path: &Path) -> Result<CapGraph> {
    edgelist::read(path).with_context(|| format!("reading {}", path.display()))
}

fn oracle(a: OracleArgs) -> Result<ExitCode> {
    let cfg = embed_config(&a.epsilon)?;
    let guest = read_graph(&a.guest)?;
    let host = read_graph(&a.host)?;
    host.validate_host()?;
    let found = find_embedding_with(&guest, &host, &cfg)?;
    let Some(w) = found else {
        println!("no");
        return Ok(ExitCode::from(1));
    };
    println!("yes");
    if a.witness {
        for (u, h) in w.node_map.iter().enumerate() {
            println!("node {u} -> {h}");
        }
        for ((u, v), path) in &w.edge_map {
            let p: Vec<String> = path.iter().map(|x| x.to_string()).collect();
            println!("edge {u} {v} -> {}", p.join(" "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn analyze(a: AnalyzeArgs) -> Result<ExitCode> {
    println!("file,n,tree_fringe,degree2,largest_motif,other");
    for dir in [&a.emit_motifs, &a.emit_dot].into_iter().flatten() {
        fs::create_dir_all(dir)?;
    }
    for file in &a.files {
        let g = read_graph(file)?;
        let s = dissect(&g);
        println!("{},{},{},{},{},{}", file.display(), s.n, s.tree_fringe, s.degree2_in_motifs, s.largest_motif_nodes, s.other);
        let stem = file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "graph".into());
        if let Some(dir) = &a.emit_motifs {
            for (i, m) in extract_motifs(&g).motifs.iter().enumerate() {
                let name = m.name.replace(',', "_");
                fs::write(dir.join(format!("{stem}-{i}-{name}.edges")), edgelist::format(&m.graph))?;
            }
        }
        if let Some(dir) = &a.emit_dot {
            fs::write(dir.join(format!("{stem}.dot")), dot::emit_dot(&g, Some(&classify(&g))))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn dict_config(epsilon: &str) -> Result<DictConfig> {
    Ok(DictConfig { embed: embed_config(epsilon)?, ..DictConfig::default() })
}

fn dict(c: DictCommand) -> Result<ExitCode> {
    match c {
        DictCommand::Build { motifs, from_host, max_word_nodes, epsilon, out } => {
            let cfg = dict_config(&epsilon)?;
            let mut set = MotifSet::default();
            set.insert(Motif::chain());
            if let Some(names) = motifs {
                for name in names.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let m = Motif::named(name).with_context(|| format!("unknown motif {name:?}"))?;
                    set.insert(m);
                }
            } else if let Some(path) = from_host {
                set.union(&extract_motifs(&read_graph(&path)?));
            } else {
                bail!("give --motifs or --from-host");
            }
            let largest = set.motifs.iter().map(|m| m.graph.node_count()).max().unwrap_or(2);
            let d = build_dictionary(&set, max_word_nodes.unwrap_or(largest), &cfg)?;
            let text = dictfile::format(&d);
            match out {
                Some(p) => fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{text}"),
            }
            eprintln!("{} words, {} edges", d.len(), d.edges().len());
            Ok(ExitCode::SUCCESS)
        }
        DictCommand::Check { dict, compose_bound, epsilon } => {
            let cfg = dict_config(&epsilon)?;
            let (_, d) = experiment::load_dictionary(&dict, &cfg)?;
            let problems = d.verify(&cfg.embed)?;
            for p in &problems {
                println!("edge problem: {p}");
            }
            let robust = check_robustness(&d, compose_bound, &cfg)?;
            if let Robustness::Counterexample { word, sequence } = &robust {
                let names: Vec<String> = sequence.iter().map(|&i| d.words[i].name()).collect();
                println!("not robust: word {word} ({}) embeds into {}", d.words[*word].name(), names.join(" "));
            }
            if problems.is_empty() && robust == Robustness::Ok {
                println!("ok");
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        DictCommand::Export { dict, out } => {
            let (_, d) = experiment::load_dictionary(&dict, &DictConfig::default())?;
            let text = dictfile::format(&d);
            match out {
                Some(p) => fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        DictCommand::Stats { dict } => {
            let (id, d) = experiment::load_dictionary(&dict, &DictConfig::default())?;
            println!("word,name,nodes,out_degree,cost");
            for (i, (w, c)) in d.words.iter().zip(d.costs()).enumerate() {
                println!("{i},{},{},{},{c}", w.name(), w.node_count(), d.out_degree(i));
            }
            println!("# {id}: delta = {}", d.delta());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn attack(a: AttackArgs) -> Result<ExitCode> {
    let cfg = embed_config(&a.epsilon)?;
    let host = match (&a.host, a.family) {
        (Some(path), _) => read_graph(path)?,
        (None, Some(family)) => {
            let mut spec = GenSpec::new(family, a.n, a.seed);
            if let Some(k) = a.max_block {
                spec = spec.with_max_block(k);
            }
            generate(&spec)?
        }
        (None, None) => bail!("give --host or --family"),
    };
    let (_, d) = experiment::load_dictionary(&a.dict, &DictConfig { embed: cfg, ..DictConfig::default() })?;
    let mut oracle = HonestOracle::with_config(host.clone(), cfg)?;
    let outcome = Dict::new(&mut oracle, &d).run()?;
    let log = oracle.log();
    let h = &outcome.h_prime;
    let dot_text = dot::emit_dot(h, None);
    match &a.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join("discovered.dot"), &dot_text)?;
            fs::write(dir.join("discovered.edges"), edgelist::format(h))?;
            fs::write(dir.join("requests.csv"), log.to_csv())?;
        }
        None => print!("{dot_text}"),
    }
    eprintln!("discovered n={} m={} with {} requests", h.node_count(), h.edge_count(), log.len());
    let mut ok = !outcome.stalled;
    if a.confirm_isomorphic {
        let iso = is_isomorphic(h, &host);
        eprintln!("isomorphic to host: {iso}");
        ok &= iso;
    }
    if !ok {
        eprintln!("coverage stall: the host is not fully described by the dictionary");
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn bench(a: BenchArgs) -> Result<ExitCode> {
    let mut cfg = ExperimentConfig { budget: budget()?, ..ExperimentConfig::default() };
    if let Some(path) = &a.config {
        cfg.apply_text(&fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)?;
    }
    let flags = [
        ("family", &a.family),
        ("sizes", &a.sizes),
        ("seeds", &a.seeds),
        ("max_block", &a.max_block),
        ("host_files", &a.hosts),
        ("dict", &a.dict),
        ("epsilon", &a.epsilon),
        ("budget", &a.budget),
        ("repetitions", &a.repetitions),
        ("out", &a.out),
        ("exec", &a.exec),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            cfg.set(k, v)?;
        }
    }
    for kv in &a.set {
        let (k, v) = kv.split_once('=').with_context(|| format!("--set expects KEY=VALUE, got {kv:?}"))?;
        cfg.set(k, v)?;
    }
    let rows = experiment::run_bench(&cfg)?;
    let csv = experiment::to_csv(&rows);
    match &cfg.out {
        Some(p) => fs::write(p, &csv).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{csv}"),
    }
    for r in rows.iter().filter(|r| r.error.is_some()) {
        eprintln!("{}: {}", r.host, r.error.as_deref().unwrap_or_default());
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Oracle(a) => oracle(a),
        Command::Analyze(a) => analyze(a),
        Command::Dict(c) => dict(c),
        Command::Attack(a) => attack(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(3)
        }
    }
}
