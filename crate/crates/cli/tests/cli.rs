use std::fs;
use std::path::Path;

use mnl_core::extremal::ExRecord;
use mnl_core::graph::OrderedGraph;
use mnl_core::pattern::Pattern01;
use mnl_core::sequence::Sequence;
use serde_json::Value;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn mnl(cache: &Path, args: &[&str]) -> Output {
    let cache = cache.to_str().unwrap();
    let mut argv = vec!["mnl", "--cache", cache];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = mnl_cli::run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn json_lines(s: &str) -> Vec<Value> {
    s.lines().map(|l| serde_json::from_str(l).expect(l)).collect()
}

#[test]
fn ex_from_pattern_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.txt");
    fs::write(&p, "11\n").unwrap();
    let cache = dir.path().join("cache.jsonl");
    let o = mnl(&cache, &["ex", "--pattern", p.to_str().unwrap(), "--n", "5"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let rec: ExRecord = serde_json::from_str(o.stdout.trim()).unwrap();
    assert_eq!(rec.value, 5);
    assert!(rec.exact);
}

#[test]
fn json_record_keeps_schema_order() {
    let dir = tempfile::tempdir().unwrap();
    let o = mnl(&dir.path().join("c"), &["ex", "--pattern", "11", "--n", "3"]);
    let line = o.stdout.trim();
    let order = ["\"key\"", "\"kind\"", "\"n\"", "\"value\"", "\"exact\"", "\"nodes_explored\"", "\"elapsed_ms\""];
    let pos: Vec<usize> = order.iter().map(|f| line.find(f).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{line}");
}

#[test]
fn bounds_matrix_k2() {
    let dir = tempfile::tempdir().unwrap();
    let o = mnl(&dir.path().join("c"), &["--format", "tsv", "bounds", "matrix", "--k", "2"]);
    assert_eq!(o.stdout.trim(), "579");
    let o = mnl(&dir.path().join("c"), &["bounds", "matrix", "--k", "2"]);
    let v: Value = serde_json::from_str(o.stdout.trim()).unwrap();
    assert_eq!(v["bound"], 579);
}

#[test]
fn bounds_seq_and_og() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");
    let o = mnl(&c, &["--format", "tsv", "bounds", "seq", "--k", "2"]);
    assert_eq!(o.stdout.trim(), "60", "{}", o.stderr);
    let o = mnl(&c, &["--format", "tsv", "bounds", "og", "--k", "2"]);
    assert_eq!(o.stdout.trim(), "13959");
    let o = mnl(&c, &["bounds", "seq", "--k", "5"]);
    assert_eq!(o.code, 1);
    let o = mnl(&c, &["--format", "tsv", "bounds", "seq", "--k", "5", "--cap", "1"]);
    assert_eq!(o.stdout.trim(), "10");
}

#[test]
fn known_prints_seven_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let o = mnl(&dir.path().join("c"), &["known"]);
    let lines = json_lines(&o.stdout);
    assert_eq!(lines.len(), 7);
    let pats: Vec<Pattern01> = lines
        .into_iter()
        .map(|v| serde_json::from_value(v).unwrap())
        .collect();
    assert!(pats.iter().all(|p| p.num_rows() == 2));
    assert!(pats.contains(&"1010;0101".parse().unwrap()));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");
    let o = mnl(&c, &["frobnicate"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("Usage"));
    assert!(o.stdout.is_empty());
    let o = mnl(&c, &["ex", "--pattern", "11", "--n", "3", "--bogus"]);
    assert_eq!(o.code, 1);
    let o = mnl(&c, &["ex", "--pattern", "12", "--n", "3"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.starts_with("error:"));
    let o = mnl(&c, &["enum", "matrix", "--k", "5"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("--allow-large-k"));
    let o = mnl(&c, &["--help"]);
    assert_eq!(o.code, 0);
}

#[test]
fn require_exact_exits_two_on_exhausted_budget() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");
    let args = ["--budget", "5", "--require-exact", "ex", "--pattern", "11;11", "--n", "6"];
    let o = mnl(&c, &args);
    assert_eq!(o.code, 2);
    let rec: ExRecord = serde_json::from_str(o.stdout.trim()).unwrap();
    assert!(!rec.exact);
    // Without the flag the inexact value is still reported successfully.
    let o = mnl(&c, &args[3..].iter().copied().chain(["--budget", "5"]).collect::<Vec<_>>());
    assert_eq!(o.code, 0);
}

#[test]
fn warm_cache_returns_same_value_marked_cache() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");
    let args = ["-v", "ex", "--pattern", "101;011", "--n", "4"];
    let first = mnl(&c, &args);
    let second = mnl(&c, &args);
    let a: Value = serde_json::from_str(first.stdout.trim()).unwrap();
    let b: Value = serde_json::from_str(second.stdout.trim()).unwrap();
    assert_eq!(a["source"], "computed");
    assert_eq!(b["source"], "cache");
    assert_eq!(a["value"], b["value"]);
    assert!(second.stderr.contains("source=cache"));
    // A symmetric image shares the cache entry.
    let o = mnl(&c, &["-v", "ex", "--pattern", "110;101", "--n", "4"]);
    let v: Value = serde_json::from_str(o.stdout.trim()).unwrap();
    assert_eq!(v["source"], "cache");
    assert_eq!(v["value"], a["value"]);
}

#[test]
fn corrupt_cache_line_is_skipped_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");
    fs::write(&c, "garbage\n").unwrap();
    let o = mnl(&c, &["ex", "--pattern", "11", "--n", "4"]);
    assert_eq!(o.code, 0);
    assert!(o.stderr.contains("corrupt cache line 1"));
    assert_eq!(json_lines(&o.stdout)[0]["value"], 4);
}

#[test]
fn compact_rewrites_cache() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");
    mnl(&c, &["--budget", "3", "ex", "--pattern", "11;11", "--n", "5"]);
    mnl(&c, &["ex", "--pattern", "11;11", "--n", "5"]);
    assert_eq!(fs::read_to_string(&c).unwrap().lines().count(), 2);
    let o = mnl(&c, &["compact"]);
    assert_eq!(json_lines(&o.stdout)[0]["records"], 1);
    let text = fs::read_to_string(&c).unwrap();
    let rec: ExRecord = serde_json::from_str(text.trim()).unwrap();
    assert_eq!((rec.value, rec.exact), (12, true));
}

#[test]
fn seq_and_graph_extremal_values() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");
    let o = mnl(&c, &["seq-ex", "--pattern", "abab", "--n", "4"]);
    assert_eq!(json_lines(&o.stdout)[0]["value"], 7);
    let o = mnl(&c, &["og-ex", "--pattern", "2:1-2", "--n", "5"]);
    assert_eq!(json_lines(&o.stdout)[0]["value"], 0);
    let o = mnl(&c, &["og-ex", "--pattern", "3:1-2,2-3", "--n", "4", "--exhaustive"]);
    let exh = json_lines(&o.stdout)[0]["value"].clone();
    let o = mnl(&c, &["--no-cache", "og-ex", "--pattern", "3:1-2,2-3", "--n", "4"]);
    assert_eq!(json_lines(&o.stdout)[0]["value"], exh);
}

#[test]
fn graph_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    fs::write(&g, "n=4\n1 3\n2 4\n").unwrap();
    let o = mnl(&dir.path().join("c"), &["contains", "og", "--host", g.to_str().unwrap(), "--pattern", "2:1-2"]);
    assert_eq!(json_lines(&o.stdout)[0]["contains"], true);
}

#[test]
fn contains_modes() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");
    let o = mnl(&c, &["--format", "tsv", "contains", "matrix", "--host", "1010;0101", "--pattern", "11"]);
    assert_eq!(o.stdout.trim(), "true");
    let o = mnl(&c, &["--format", "tsv", "contains", "seq", "--host", "abcab", "--pattern", "abab"]);
    assert_eq!(o.stdout.trim(), "true");
    let o = mnl(&c, &["--format", "tsv", "contains", "seq", "--host", "abcba", "--pattern", "abab"]);
    assert_eq!(o.stdout.trim(), "false");
}

/// Every object printed re-parses to the value the library produces.
#[test]
fn printed_objects_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");

    let o = mnl(&c, &["transform", "split-column", "--pattern", "101;011", "--row", "2", "--col", "2"]);
    let p: Pattern01 = serde_json::from_str(o.stdout.trim()).unwrap();
    assert_eq!(p, "1001;0111".parse().unwrap());
    let o = mnl(&c, &["--format", "tsv", "transform", "zero-line", "--pattern", "11", "--axis", "row", "--index", "0"]);
    let p: Pattern01 = o.stdout.trim().parse().unwrap();
    assert_eq!(p, "00;11".parse().unwrap());

    let o = mnl(&c, &["transform", "insert-repeat", "--pattern", "aba", "--symbol", "a", "--gap", "2"]);
    let s: String = serde_json::from_str(o.stdout.trim()).unwrap();
    assert_eq!(Sequence::parse(&s).unwrap(), Sequence::parse("abaa").unwrap());

    let o = mnl(&c, &["transform", "split-vertex", "--graph", "3:1-3,2-3", "--left", "1", "--neighbor", "3"]);
    let g: OrderedGraph = serde_json::from_str(o.stdout.trim()).unwrap();
    assert_eq!(g, "4:1-4,2-4,3-4".parse().unwrap());
    let o = mnl(&c, &["--format", "tsv", "transform", "isolated", "--graph", "2:1-2", "--position", "1"]);
    let g: OrderedGraph = o.stdout.trim().parse().unwrap();
    assert_eq!(g, "3:1-3".parse().unwrap());

    let o = mnl(&c, &["reduce", "leftmost", "--pattern", "1010;0101"]);
    let p: Pattern01 = serde_json::from_str(o.stdout.trim()).unwrap();
    assert_eq!(p, "0010;0001".parse().unwrap());
    let o = mnl(&c, &["reduce", "scan", "--pattern", "1010;0101"]);
    let v = &json_lines(&o.stdout)[0];
    assert_eq!(v["sequence"], "abab");
    let o = mnl(&c, &["reduce", "og-bipartite", "--graph", "4:1-3,1-4,2-3,2-4", "--part-u", "1,2"]);
    let g: OrderedGraph = serde_json::from_str(o.stdout.trim()).unwrap();
    assert_eq!(g, "4:1-4,2-4".parse().unwrap());
    let o = mnl(&c, &["--format", "tsv", "reduce", "og-smallest", "--graph", "3:1-2,1-3,2-3"]);
    let g: OrderedGraph = o.stdout.trim().parse().unwrap();
    assert_eq!(g.num_vertices(), 3);

    let o = mnl(&c, &["--format", "tsv", "go-family", "--pattern", "101;011"]);
    for line in o.stdout.lines() {
        let g: OrderedGraph = line.parse().unwrap();
        assert_eq!(g.compact(), line);
    }

    let o = mnl(&c, &["--format", "tsv", "enum", "seq", "--k", "2"]);
    for line in o.stdout.lines() {
        assert_eq!(Sequence::parse(line).unwrap().to_string(), line);
    }
}

#[test]
fn invalid_transformation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = mnl(&dir.path().join("c"), &["transform", "split-column", "--pattern", "101;011", "--row", "1", "--col", "2"]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.is_empty());
}

#[test]
fn enum_matrix_reports_parse_and_match_library() {
    let dir = tempfile::tempdir().unwrap();
    let o = mnl(&dir.path().join("c"), &["enum", "matrix", "--k", "2"]);
    let reports = json_lines(&o.stdout);
    let known = reports.iter().filter(|r| r["verdict"] == "known-mnl").count();
    assert_eq!(known, 7);
    for r in &reports {
        let p: Pattern01 = serde_json::from_value(r["pattern"].clone()).unwrap();
        let again = serde_json::to_value(mnl_core::mnl::structural_filter(&p)).unwrap();
        assert_eq!(&again, r);
    }
}

#[test]
fn enum_og_and_growth() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("c");
    let o = mnl(&c, &["enum", "og", "--k", "2", "--col-max", "2"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    for r in json_lines(&o.stdout) {
        assert_ne!(r["verdict"], "rejected");
        assert!(r["pattern"]["parts"]["part_u"].as_array().unwrap().len() == 2);
    }
    let o = mnl(&c, &["enum", "matrix", "--k", "2", "--col-max", "2", "--growth", "4"]);
    for r in json_lines(&o.stdout) {
        assert!(r["growth"]["classification"].is_string());
    }
    let o = mnl(&c, &["classify", "--pattern", "11;11", "--n-max", "4"]);
    let r = &json_lines(&o.stdout)[0];
    assert_eq!(r["values"], serde_json::json!([[1, 1], [2, 3], [3, 6], [4, 9]]));
    assert_eq!(r["classification"], "inconclusive");
}
