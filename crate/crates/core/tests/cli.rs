use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::Parser;
use sqcat::cli::{run, Command, Outcome};
use sqcat::constructions::{Shape, ShapeCat, ShapeKind, Staircase};
use sqcat::double::{Square, SquaresCat};
use sqcat::dot::{export_dot, DotObject};
use sqcat::examples::finset_squares;

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("sqcat-{}-{name}", std::process::id()))
}

fn sqcat(args: &[&str]) -> Outcome {
    let cmd = Command::try_parse_from(std::iter::once("sqcat").chain(args.iter().copied())).unwrap();
    run(&cmd)
}

#[test]
fn validate_interchange_file() {
    let out = sqcat(&["validate", &data("finset2.json")]);
    assert_eq!(out.code, 0, "{}", out.report);
}

#[test]
fn dangling_reference_names_the_field() {
    let text = std::fs::read_to_string(data("finset2.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["hmor"][1]["src"] = "nowhere".into();
    let path = scratch("dangling.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = sqcat(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.report.contains("hmor[1].src"), "{}", out.report);
}

#[test]
fn unknown_key_is_malformed() {
    let text = std::fs::read_to_string(data("finset2.json")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    doc["colour"] = "blue".into();
    let path = scratch("unknown.json");
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = sqcat(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.report.contains("colour"), "{}", out.report);
}

#[test]
fn usage_errors_exit_two() {
    assert!(Command::try_parse_from(["sqcat", "frobnicate"]).is_err());
    assert_eq!(sqcat(&["k0", "--builder", "finset:99"]).code, 2);
    assert_eq!(sqcat(&["k0"]).code, 2);
}

#[test]
fn k0_of_finite_sets() {
    let out = sqcat(&["k0", "--builder", "finset:2"]);
    assert_eq!(out.code, 0);
    assert!(out.report.contains("free rank 1, torsion none, [2] = 2·[1]"), "{}", out.report);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["k0", "--builder", "finset:2"][..],
        &["segal", "--builder", "finset:2", "--levels", "3"],
        &["dot", "--builder", "finset:1"],
        &["weq", "--builder", "intervals:1:2"],
    ] {
        assert_eq!(sqcat(args), sqcat(args));
    }
}

#[test]
fn graph_pushouts_fail_comparison() {
    let out = sqcat(&["compare", "--builder", "graph:3:2", "--mode", "proto"]);
    assert_eq!(out.code, 1);
    assert!(out.report.contains("no span completion"), "{}", out.report);
}

#[test]
fn validate_writes_readable_interchange() {
    let path = scratch("out.json");
    let out = sqcat(&["validate", "--builder", "finset:2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), std::fs::read_to_string(data("finset2.json")).unwrap());
}

/// Parsed DOT: node labels and `(src, dst, label, style)` edges.
#[derive(Debug, Default)]
struct Dot {
    nodes: Vec<(String, String)>,
    edges: Vec<(String, String, String, String)>,
    clusters: Vec<(String, String, Vec<String>)>,
}

fn quoted(s: &str) -> Option<(String, &str)> {
    let s = s.strip_prefix('"')?;
    let mut out = String::new();
    let mut chars = s.char_indices();
    while let Some((i, c)) = chars.next() {
        match c {
            '\\' => out.push(chars.next()?.1),
            '"' => return Some((out, &s[i + 1..])),
            _ => out.push(c),
        }
    }
    None
}

fn ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Accepts exactly the subset of the DOT grammar the exporter emits.
fn parse_dot(text: &str) -> Result<Dot, String> {
    let mut lines = text.lines();
    if lines.next() != Some("digraph squares {") || lines.next() != Some("  node [shape=plaintext];") {
        return Err("bad header".into());
    }
    let mut dot = Dot::default();
    let mut closed = false;
    for line in lines {
        if closed {
            return Err(format!("content after closing brace: {line}"));
        }
        if line == "}" {
            closed = true;
            continue;
        }
        let body = line.strip_prefix("  ").ok_or(format!("bad indent: {line}"))?;
        if let Some(rest) = body.strip_prefix("subgraph ") {
            let (name, rest) = rest.split_once(" { label=").ok_or(format!("bad cluster: {line}"))?;
            let (label, rest) = quoted(rest).ok_or(format!("bad cluster label: {line}"))?;
            let members = rest.strip_prefix(';').and_then(|r| r.strip_suffix(" }")).ok_or(format!("bad cluster: {line}"))?;
            let members: Vec<String> = members
                .split_whitespace()
                .map(|m| m.strip_suffix(';').filter(|m| ident(m)).map(String::from).ok_or(format!("bad member: {m}")))
                .collect::<Result<_, _>>()?;
            if !ident(name) {
                return Err(format!("bad cluster name: {name}"));
            }
            dot.clusters.push((name.to_string(), label, members));
        } else if let Some((lhs, rest)) = body.split_once(" -> ") {
            let (rhs, attrs) = rest.split_once(" [label=").ok_or(format!("bad edge: {line}"))?;
            let (label, attrs) = quoted(attrs).ok_or(format!("bad edge label: {line}"))?;
            let style = attrs.strip_prefix(", style=").and_then(|a| a.strip_suffix("];")).ok_or(format!("bad edge: {line}"))?;
            if !ident(lhs) || !ident(rhs) || !matches!(style, "solid" | "dashed") {
                return Err(format!("bad edge: {line}"));
            }
            dot.edges.push((lhs.into(), rhs.into(), label, style.into()));
        } else {
            let (id, rest) = body.split_once(" [label=").ok_or(format!("unrecognised line: {line}"))?;
            let (label, rest) = quoted(rest).ok_or(format!("bad node label: {line}"))?;
            if !ident(id) || rest != "];" {
                return Err(format!("bad node: {line}"));
            }
            dot.nodes.push((id.into(), label));
        }
    }
    if !closed {
        return Err("missing closing brace".into());
    }
    let ids: BTreeSet<&String> = dot.nodes.iter().map(|(n, _)| n).collect();
    if ids.len() != dot.nodes.len() {
        return Err("duplicate node".into());
    }
    let used = dot.edges.iter().flat_map(|(a, b, _, _)| [a, b]).chain(dot.clusters.iter().flat_map(|c| &c.2));
    for n in used {
        if !ids.contains(n) {
            return Err(format!("undeclared node {n}"));
        }
    }
    Ok(dot)
}

fn two_staircase(d: &SquaresCat) -> Staircase {
    let level = ShapeCat::build(d, Shape::new(ShapeKind::Staircase, 2), None);
    let x = level
        .diagrams
        .iter()
        .find(|x| x.objs.iter().filter(|&&o| o != d.o()).count() == 3)
        .unwrap();
    Staircase::from_diagram(&level.shape, x)
}

#[test]
fn dot_export_parses() {
    let path = scratch("all.dot");
    let out = sqcat(&["dot", "--builder", "finset:2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    let dot = parse_dot(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let (d, _) = finset_squares(2);
    assert_eq!(dot.clusters.len(), d.squares().len());
    for (i, (name, label, _)) in dot.clusters.iter().enumerate() {
        assert_eq!(name, &format!("cluster_sq_{i}"));
        assert_eq!(label, &format!("sq_{i}"));
    }
    assert!(dot.edges.iter().all(|(a, b, _, _)| a != b));
}

#[test]
fn staircase_dot_shape() {
    let (d, _) = finset_squares(2);
    let dot = parse_dot(&export_dot(&d, DotObject::Staircase(&two_staircase(&d)))).unwrap();
    assert_eq!(dot.nodes.len(), 6);
    let zero = d.object_name(d.o());
    assert_eq!(dot.nodes.iter().filter(|(_, l)| l == zero).count(), 3);
    assert_eq!(dot.edges.iter().filter(|e| e.3 == "solid").count(), 3);
    assert_eq!(dot.edges.iter().filter(|e| e.3 == "dashed").count(), 3);
    assert_eq!(dot.clusters.len(), 1);
    assert_eq!(dot.clusters[0].2.len(), 4);
}

#[test]
fn identity_square_collapses() {
    let d = SquaresCat::point();
    let s: &Square = &d.squares()[0];
    let dot = parse_dot(&export_dot(&d, DotObject::Square(s))).unwrap();
    assert_eq!(dot.nodes.len(), 1);
    assert!(dot.edges.is_empty());
}

#[test]
fn dot_checker_rejects_garbage() {
    assert!(parse_dot("digraph squares {\n  node [shape=plaintext];\n  a -> b [label=\"x\", style=solid];\n}\n").is_err());
    assert!(parse_dot("graph {}\n").is_err());
}
