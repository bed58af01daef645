//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL
//! line; the process fails if any criterion does.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vnx_core::attack::{run_dict, Dict};
use vnx_core::catalog;
use vnx_core::dictionary::*;
use vnx_core::enumerate::{connected_graphs_up_to, graphs_up_to};
use vnx_core::experiment::{run_bench, strip_timing, to_csv, ExperimentConfig};
use vnx_core::generate::{clique, generate, Family, GenSpec};
use vnx_core::graph::edge_key;
use vnx_core::iso::is_isomorphic;
use vnx_core::motif::{dissect, insert_node, Motif};
use vnx_core::*;

type Outcome = std::result::Result<String, String>;

fn check(ok: bool, pass: String, fail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(pass)
    } else {
        Err(fail())
    }
}

fn eps() -> Weight {
    default_epsilon()
}

fn poset() -> Outcome {
    let gs = connected_graphs_up_to(5);
    let n = gs.len();
    let mut rel = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            rel[a][b] = is_embeddable(&gs[a], &gs[b], eps()).map_err(|e| e.to_string())?;
        }
    }
    let reflexive = (0..n).filter(|&a| rel[a][a]).count();
    let mut chains = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if rel[a][b] && rel[b][c] {
                    chains.push((a, b, c));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let sample: Vec<_> = (0..1000).map(|_| *chains.choose(&mut rng).expect("some chains")).collect();
    let transitive_violations = sample.iter().filter(|&&(a, _, c)| !rel[a][c]).count();
    let mut mutual = 0;
    let mut anti_violations = 0;
    for a in 0..n {
        for b in a + 1..n {
            if rel[a][b] && rel[b][a] {
                mutual += 1;
                if !is_isomorphic(&gs[a], &gs[b]) {
                    anti_violations += 1;
                }
            }
        }
    }
    check(
        reflexive == n && transitive_violations == 0 && anti_violations == 0,
        format!("{n} graphs: reflexive {reflexive}/{n}, 1000 sampled chains transitive, {mutual} distinct mutual pairs"),
        || format!("reflexive {reflexive}/{n}, transitivity violations {transitive_violations}, antisymmetry violations {anti_violations}"),
    )
}

/// Exhaustive reference embedder: every node map, then every simple path
/// per guest link, pruning only on exceeded capacities.
fn brute_force(guest: &CapGraph, host: &CapGraph, eps: Weight) -> bool {
    let hn = host.node_count();
    let edges: Vec<Edge> = guest.edges().collect();
    let mut paths: BTreeMap<(NodeId, NodeId), Vec<Vec<NodeId>>> = BTreeMap::new();
    for a in 0..hn {
        for b in 0..hn {
            paths.insert((a, b), simple_paths(host, a, b));
        }
    }
    let mut map = Vec::new();
    let mut load = vec![Weight::from_integer(0); hn];
    place(guest, host, eps, &edges, &paths, &mut map, &mut load)
}

fn place(
    guest: &CapGraph,
    host: &CapGraph,
    eps: Weight,
    edges: &[Edge],
    paths: &BTreeMap<(NodeId, NodeId), Vec<Vec<NodeId>>>,
    map: &mut Vec<NodeId>,
    load: &mut Vec<Weight>,
) -> bool {
    let u = map.len();
    if u == guest.node_count() {
        let mut used = BTreeMap::new();
        return route(guest, host, eps, edges, paths, map, 0, load, &mut used);
    }
    for h in host.nodes() {
        load[h] += guest.node(u).demand;
        if load[h] <= host.node(h).cap {
            map.push(h);
            if place(guest, host, eps, edges, paths, map, load) {
                return true;
            }
            map.pop();
        }
        load[h] -= guest.node(u).demand;
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn route(
    guest: &CapGraph,
    host: &CapGraph,
    eps: Weight,
    edges: &[Edge],
    paths: &BTreeMap<(NodeId, NodeId), Vec<Vec<NodeId>>>,
    map: &[NodeId],
    i: usize,
    load: &mut Vec<Weight>,
    used: &mut BTreeMap<Edge, Weight>,
) -> bool {
    let Some(&(u, v)) = edges.get(i) else { return true };
    let demand = guest.edge(u, v).expect("guest edge").demand;
    for p in &paths[&(map[u], map[v])] {
        let relays = if p.len() > 2 { &p[1..p.len() - 1] } else { &[][..] };
        let links: Vec<Edge> = p.windows(2).map(|w| edge_key(w[0], w[1])).collect();
        for &x in relays {
            load[x] += eps;
        }
        for &l in &links {
            *used.entry(l).or_default() += demand;
        }
        let fits = relays.iter().all(|&x| load[x] <= host.node(x).cap) && links.iter().all(|&(a, b)| used[&(a, b)] <= host.edge(a, b).expect("host edge").cap);
        if fits && route(guest, host, eps, edges, paths, map, i + 1, load, used) {
            return true;
        }
        for &x in relays {
            load[x] -= eps;
        }
        for &l in &links {
            *used.get_mut(&l).expect("counted") -= demand;
        }
    }
    false
}

fn simple_paths(host: &CapGraph, a: NodeId, b: NodeId) -> Vec<Vec<NodeId>> {
    fn go(host: &CapGraph, b: NodeId, cur: &mut Vec<NodeId>, out: &mut Vec<Vec<NodeId>>) {
        let x = *cur.last().expect("non-empty");
        if x == b {
            out.push(cur.clone());
            return;
        }
        for y in host.neighbors(x).collect::<Vec<_>>() {
            if !cur.contains(&y) {
                cur.push(y);
                go(host, b, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(host, b, &mut vec![a], &mut out);
    out
}

fn oracle_vs_brute_force() -> Outcome {
    let guests = graphs_up_to(4);
    let hosts = connected_graphs_up_to(6);
    let mut pairs = 0;
    let mut disagreements = Vec::new();
    for h in &hosts {
        for g in &guests {
            pairs += 1;
            let fast = is_embeddable(g, h, eps()).map_err(|e| e.to_string())?;
            if fast != brute_force(g, h, eps()) {
                disagreements.push(format!("{g:?} into {h:?}"));
            }
        }
    }
    check(disagreements.is_empty(), format!("{pairs} guest/host pairs, 0 disagreements"), || {
        format!("{} disagreements, first {}", disagreements.len(), disagreements[0])
    })
}

fn saturation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut cases = 0;
    let mut failures = Vec::new();
    for name in ["Y", "D", "K4", "B", "K5"] {
        let m = catalog::by_name(name).expect("catalog motif");
        let mut pendant = m.clone();
        let p = pendant.add_node();
        pendant.add_edge(0, p).expect("fresh node");
        for _ in 0..20 {
            let mut g = m.clone();
            for _ in 0..rng.gen_range(1..=6) {
                let edges: Vec<Edge> = g.edges().collect();
                g = insert_node(&g, edges[rng.gen_range(0..edges.len())]).expect("existing edge");
            }
            cases += 1;
            let fits = is_embeddable(&m, &g, eps()).map_err(|e| e.to_string())?;
            let saturated = !is_embeddable(&pendant, &g, eps()).map_err(|e| e.to_string())?;
            if !(fits && saturated) {
                failures.push(format!("{name} expanded to {g:?}"));
            }
        }
    }
    check(failures.is_empty(), format!("{cases}/{cases} expansions saturated"), || format!("{} failures, first {}", failures.len(), failures[0]))
}

struct Scaling {
    runs: usize,
    recovered: usize,
    per_n: BTreeMap<usize, Vec<f64>>,
}

fn sweep(family: Family, d: &Dictionary, sizes: &[usize], seeds: std::ops::Range<u64>, max_block: Option<usize>) -> std::result::Result<(Scaling, Vec<(String, usize, usize)>), String> {
    let mut s = Scaling { runs: 0, recovered: 0, per_n: BTreeMap::new() };
    let mut raw = Vec::new();
    let mut misses = Vec::new();
    for &n in sizes {
        for seed in seeds.clone() {
            let mut spec = GenSpec::new(family, n, seed);
            if let Some(k) = max_block {
                spec = spec.with_max_block(k);
            }
            let host = generate(&spec).map_err(|e| e.to_string())?;
            let mut oracle = HonestOracle::new(host.clone(), eps()).map_err(|e| e.to_string())?;
            let (found, log) = run_dict(&mut oracle, d).map_err(|e| format!("{}: {e}", spec.label()))?;
            s.runs += 1;
            if is_isomorphic(&found, &host) {
                s.recovered += 1;
            } else {
                misses.push(spec.label());
            }
            s.per_n.entry(n).or_default().push(log.len() as f64 / n as f64);
            raw.push((spec.label(), log.len(), host.edge_count()));
        }
    }
    if !misses.is_empty() {
        return Err(format!("not recovered: {}", misses.join(", ")));
    }
    Ok((s, raw))
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn linear_recovery(family: Family, d: &Dictionary) -> Outcome {
    let sizes = [5, 10, 15, 20, 25, 30];
    let mut s = Scaling { runs: 0, recovered: 0, per_n: BTreeMap::new() };
    // 50 hosts: eight or nine per size
    let mut seed = 0;
    for i in 0..50 {
        let (part, _) = sweep(family, d, &[sizes[i % sizes.len()]], seed..seed + 1, None)?;
        seed += 1;
        s.runs += part.runs;
        s.recovered += part.recovered;
        for (n, v) in part.per_n {
            s.per_n.entry(n).or_default().extend(v);
        }
    }
    let at10 = mean(&s.per_n[&10]);
    let at30 = mean(&s.per_n[&30]);
    let worst = s.per_n.values().flatten().cloned().fold(0.0, f64::max);
    check(
        s.recovered == s.runs && at30 <= 1.5 * at10,
        format!("{}/{} recovered; requests/n {at10:.2} at n=10, {at30:.2} at n=30, max {worst:.2}", s.recovered, s.runs),
        || format!("{}/{} recovered; requests/n {at10:.2} at n=10 vs {at30:.2} at n=30", s.recovered, s.runs),
    )
}

fn block_recovery() -> Outcome {
    let seeds = 0..5;
    let (s, raw) = sweep(Family::Block, &clique_dictionary(6), &[10, 15, 20, 25], seeds.clone(), Some(6))?;
    // c fitted per seed as the smallest constant with requests <= c*m over all sizes
    let mut fits: Vec<f64> = seeds
        .map(|seed| {
            let tag = format!("-s{seed}");
            raw.iter().filter(|(label, _, _)| label.ends_with(&tag)).map(|&(_, r, m)| r as f64 / m as f64).fold(0.0, f64::max)
        })
        .collect();
    fits.sort_by(f64::total_cmp);
    let c = fits[fits.len() / 2];
    let (lo, hi) = (fits[0], fits[fits.len() - 1]);
    check(
        s.recovered == s.runs && lo >= 0.8 * c && hi <= 1.2 * c,
        format!("{}/{} recovered; requests <= c*m with c = {c:.2}, per-seed fits in [{lo:.2}, {hi:.2}]", s.recovered, s.runs),
        || format!("{}/{} recovered; per-seed fits [{lo:.2}, {hi:.2}] around c = {c:.2}", s.recovered, s.runs),
    )
}

fn dictionary_metrics() -> Outcome {
    let cactus = cactus_dictionary().delta();
    let mut deltas = Vec::new();
    let mut cost_ok = true;
    for k in 3..=8 {
        let d = clique_dictionary(k);
        for i in 0..d.len() {
            cost_ok &= d.cost(i).map_err(|e| e.to_string())? < 3 * (i + 2);
        }
        deltas.push(d.delta());
    }
    let bounded = deltas.iter().all(|&x| x <= Weight::from_integer(1));
    let shown: Vec<String> = deltas.iter().map(|x| x.to_string()).collect();
    check(
        cactus == Weight::new(1, 2) && bounded && cost_ok,
        format!("delta(C->Y) = {cactus}; clique delta for K3..K8: {}", shown.join(" ")),
        || format!("delta(C->Y) = {cactus}; clique deltas {} cost bound held: {cost_ok}", shown.join(" ")),
    )
}

fn five_motif_trace() -> Outcome {
    let d = five_motif_dictionary();
    let host = five_motif_host();
    let mut oracle = HonestOracle::new(host, eps()).map_err(|e| e.to_string())?;
    let mut attack = Dict::new(&mut oracle, &d);
    let seq = attack.find_motif_sequence(0, &[], &[]).map_err(|e| e.to_string())?;
    let names: Vec<String> = seq.iter().map(|&w| d.words[w].name()).collect();
    let want = ["Y", "C", "C", "B", "D", "Y", "D", "D"];
    check(names == want, format!("first sequence {}", names.join(" ")), || format!("first sequence {} instead of {}", names.join(" "), want.join(" ")))
}

fn robustness() -> Outcome {
    let cfg = DictConfig::default();
    // brute force: a word M and a word N with C·M·C not into C·N·C but into C·N·N·C
    let mut words = Vec::new();
    for name in ["Y", "D", "K4", "B"] {
        words.extend(atomic_words(&Motif::named(name).expect("catalog motif")));
    }
    let mut pair = None;
    'search: for m in &words {
        for n in &words {
            let nn = Word::compose(&[n.parts[0].clone(), n.parts[0].clone()]);
            if !dict_edge_test(m, n, &cfg.embed).map_err(|e| e.to_string())? && dict_edge_test(m, &nn, &cfg.embed).map_err(|e| e.to_string())? {
                pair = Some((m.clone(), n.clone(), nn));
                break 'search;
            }
        }
    }
    let (m, n, nn) = pair.ok_or("no pair found")?;
    let bound = nn.node_count();
    let without = Dictionary::from_words(vec![Word::chain(), n.clone(), m.clone()], &cfg).map_err(|e| e.to_string())?;
    let flagged = check_robustness(&without, bound, &cfg).map_err(|e| e.to_string())?;
    let with = Dictionary::from_words(vec![Word::chain(), n.clone(), m.clone(), nn.clone()], &cfg).map_err(|e| e.to_string())?;
    let fixed = check_robustness(&with, bound, &cfg).map_err(|e| e.to_string())?;
    let caught = matches!(&flagged, Robustness::Counterexample { word: 2, sequence } if sequence == &vec![1, 1]);
    check(
        caught && fixed == Robustness::Ok,
        format!("{} into {}·{} flagged; robust once {} is a word", m.name(), n.name(), n.name(), nn.name()),
        || format!("without {}: {flagged:?}; with it: {fixed:?}", nn.name()),
    )
}

fn dissection() -> Outcome {
    let mut corpus: Vec<(String, CapGraph)> = Vec::new();
    for family in [Family::Tree, Family::Cactus, Family::Block, Family::Isp] {
        for seed in 0..5 {
            let spec = GenSpec::new(family, 40, seed);
            let g = generate(&spec).map_err(|e| e.to_string())?;
            // through the text format, as a user-supplied file would be
            let g = edgelist::parse(&edgelist::format(&g)).map_err(|e| e.to_string())?;
            corpus.push((spec.label(), g));
        }
    }
    corpus.push(("K6".into(), clique(6)));
    let broken: Vec<&String> = corpus
        .iter()
        .filter(|(_, g)| {
            let s = dissect(g);
            s.tree_fringe + s.degree2_in_motifs + s.largest_motif_nodes + s.other != s.n
        })
        .map(|(id, _)| id)
        .collect();
    let isp = generate(&GenSpec::new(Family::Isp, 300, 7)).map_err(|e| e.to_string())?;
    let s = dissect(&isp);
    let quick = (s.tree_fringe + s.degree2_in_motifs) as f64 / s.n as f64;
    check(
        broken.is_empty() && quick > 0.5,
        format!("{} topologies partitioned; ISP-like n={}: fringe {} + degree-2 {} = {:.0}%, largest motif {}", corpus.len(), s.n, s.tree_fringe, s.degree2_in_motifs, 100.0 * quick, s.largest_motif_nodes),
        || format!("partition broken for {broken:?}; ISP-like quick share {:.0}%", 100.0 * quick),
    )
}

fn determinism() -> Outcome {
    let cfg = ExperimentConfig::from_text("family=cactus\nsizes=8,12\nseeds=0..3\ndict=builtin:cactus\n").map_err(|e| e.to_string())?;
    let a = strip_timing(&to_csv(&run_bench(&cfg).map_err(|e| e.to_string())?));
    let b = strip_timing(&to_csv(&run_bench(&cfg).map_err(|e| e.to_string())?));
    let logs: Vec<String> = (0..2)
        .map(|_| {
            let host = generate(&GenSpec::new(Family::Block, 15, 4).with_max_block(5)).expect("generator");
            let mut o = HonestOracle::new(host, eps()).expect("valid host");
            run_dict(&mut o, &clique_dictionary(5)).expect("attack").1.to_csv()
        })
        .collect();
    check(a == b && logs[0] == logs[1], format!("CSV ({} rows) and request log ({} requests) identical across runs", a.lines().count() - 1, logs[0].lines().count() - 1), || {
        "outputs differ between runs".into()
    })
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("poset", Box::new(poset)),
        ("oracle vs brute force", Box::new(oracle_vs_brute_force)),
        ("saturation", Box::new(saturation)),
        ("tree recovery", Box::new(|| linear_recovery(Family::Tree, &tree_dictionary()))),
        ("cactus recovery", Box::new(|| linear_recovery(Family::Cactus, &cactus_dictionary()))),
        ("block graph recovery", Box::new(block_recovery)),
        ("dictionary metrics", Box::new(dictionary_metrics)),
        ("five-motif trace", Box::new(five_motif_trace)),
        ("robustness counterexample", Box::new(robustness)),
        ("dissection", Box::new(dissection)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} ({secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
