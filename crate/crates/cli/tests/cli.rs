use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn vnx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vnx")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const TRIANGLE: &str = "0 1\n1 2\n2 0\n";
const SQUARE: &str = "0 1\n1 2\n2 3\n3 0\n";
const PATH3: &str = "a b\nb c\n";

#[test]
fn oracle_answers_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let tri = write(dir.path(), "tri.edges", TRIANGLE);
    let sq = write(dir.path(), "sq.edges", SQUARE);
    let p3 = write(dir.path(), "p3.edges", PATH3);

    let yes = vnx(&["oracle", &tri, &sq]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(stdout(&yes), "yes\n");

    let no = vnx(&["oracle", &sq, &tri]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(stdout(&no), "no\n");

    let w = vnx(&["oracle", &p3, &tri, "--witness", "--epsilon", "1"]);
    assert_eq!(w.status.code(), Some(0));
    let out = stdout(&w);
    assert_eq!(out.lines().filter(|l| l.starts_with("node ")).count(), 3);
    assert_eq!(out.lines().filter(|l| l.starts_with("edge ")).count(), 2);
}

#[test]
fn oracle_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.edges", "0 0\n");
    let tri = write(dir.path(), "tri.edges", TRIANGLE);
    let o = vnx(&["oracle", &bad, &tri]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("self-loop"));
    assert_eq!(vnx(&["oracle", &tri, &tri, "--epsilon", "0"]).status.code(), Some(3));
}

#[test]
fn analyze_prints_dissection_and_motifs() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "tp.edges", "0 1\n1 2\n2 0\n2 3\n");
    let motifs = dir.path().join("motifs");
    let dots = dir.path().join("dots");
    let o = vnx(&["analyze", &g, "--emit-motifs", motifs.to_str().unwrap(), "--emit-dot", dots.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("file,n,tree_fringe,degree2,largest_motif,other"));
    assert!(lines.next().unwrap().ends_with("tp.edges,4,1,0,3,0"));
    assert_eq!(fs::read_dir(&motifs).unwrap().count(), 2);
    let dot = fs::read_to_string(dots.join("tp.dot")).unwrap();
    assert!(dot.contains("3 [category=\"tree_fringe\""));
}

#[test]
fn dict_export_stats_and_check() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("cactus.dict");
    let f = file.to_str().unwrap();
    assert_eq!(vnx(&["dict", "export", "builtin:cactus", "--out", f]).status.code(), Some(0));
    let stats = stdout(&vnx(&["dict", "stats", f]));
    assert!(stats.contains("1,Y,3,0,1"));
    assert!(stats.contains("delta = 1/2"));
    let check = vnx(&["dict", "check", f]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(stdout(&check), "ok\n");
}

#[test]
fn dict_build_from_motifs_and_host() {
    let dir = tempfile::tempdir().unwrap();
    let out = stdout(&vnx(&["dict", "build", "--motifs", "Y,D"]));
    assert!(out.starts_with("[word 0] nodes=2 edges=0-1 in=0 out=1\n"));
    assert!(out.contains("[dag]\n"));
    let host = write(dir.path(), "h.edges", "0 1\n1 2\n2 0\n2 3\n3 4\n4 2\n");
    let from_host = stdout(&vnx(&["dict", "build", "--from-host", &host]));
    assert_eq!(from_host.matches("[word").count(), 2);
    assert_ne!(vnx(&["dict", "build", "--motifs", "nonsense"]).status.code(), Some(0));
}

#[test]
fn attack_recovers_and_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let host = write(dir.path(), "cactus.edges", "0 1\n1 2\n2 0\n2 3\n3 4\n4 5\n5 3\n0 6\n");
    let out = dir.path().join("run");
    let o = vnx(&["attack", "--host", &host, "--dict", "builtin:cactus", "--confirm-isomorphic", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(out.join("requests.csv")).unwrap();
    assert!(csv.starts_with("idx,phase,guest_nodes,guest_edges,reply\n"));
    assert!(csv.lines().last().unwrap().contains(",termination,"));
    let edges = fs::read_to_string(out.join("discovered.edges")).unwrap();
    assert_eq!(edges.lines().filter(|l| !l.starts_with("node ")).count(), 8);
    assert!(fs::read_to_string(out.join("discovered.dot")).unwrap().starts_with("graph H {"));
}

#[test]
fn attack_reports_mismatch() {
    // chains alone reach every node, so only the isomorphism check notices
    let args = ["attack", "--family", "cactus", "--n", "8", "--seed", "1", "--dict", "builtin:tree"];
    assert_eq!(vnx(&args).status.code(), Some(0));
    let o = vnx(&[&args[..], &["--confirm-isomorphic"]].concat());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("graph H {"));
}

#[test]
fn bench_csv_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "exp.cfg", "family=tree\nsizes=5,6\nseeds=0..2\n");
    let out = dir.path().join("rows.csv");
    let o = vnx(&["bench", "--config", &cfg, "--sizes", "7", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "host,n,m,dict,requests_total,req_motif,req_rep,req_expand,req_term,recovered,coverage,ms");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("tree-n7-s0,7,6,tree,"));
    assert!(lines.iter().skip(1).all(|l| l.contains(",true,1.0000,")));
}

#[test]
fn bench_budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_vnx"))
        .args(["bench", "--family", "clique", "--sizes", "6", "--dict", "builtin:clique6"])
        .env("VNX_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().nth(1).unwrap().contains(",false,"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}
