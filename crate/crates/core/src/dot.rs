//! Graphviz export.

use std::fmt::Write;

use crate::network::{Fault, SwitchingNetwork};
use crate::treediag::DecisionTree;

/// One DOT node per tree node (`q<k>` for queries, `l<k>` for leaves, `k` in
/// preorder) and edges labeled `0` or `1`.
pub fn tree_to_dot(tree: &DecisionTree) -> String {
    fn walk(node: &DecisionTree, next: &mut usize, out: &mut String) -> String {
        let id = *next;
        *next += 1;
        match node {
            DecisionTree::Leaf(f) => {
                let name = format!("l{id}");
                writeln!(out, "  {name} [shape=box, label=\"{f}\"];").unwrap();
                name
            }
            DecisionTree::Query { input, zero, one } => {
                let name = format!("q{id}");
                writeln!(out, "  {name} [shape=ellipse, label=\"{input}\"];").unwrap();
                let z = walk(zero, next, out);
                let o = walk(one, next, out);
                writeln!(out, "  {name} -> {z} [label=\"0\"];").unwrap();
                writeln!(out, "  {name} -> {o} [label=\"1\"];").unwrap();
                name
            }
        }
    }
    let mut out = String::from("digraph tree {\n");
    walk(tree, &mut 0, &mut out);
    out.push_str("}\n");
    out
}

/// Undirected DOT graph; poles are drawn as double circles and faulted
/// edges show their constant.
pub fn network_to_dot(net: &SwitchingNetwork, fault: Option<&Fault>) -> String {
    let (a, b) = net.poles();
    let mut out = String::from("graph network {\n");
    for &n in net.nodes() {
        let shape = if n == a || n == b { "doublecircle" } else { "circle" };
        writeln!(out, "  n{n} [shape={shape}, label=\"{n}\"];").unwrap();
    }
    for e in net.edges() {
        let label = match fault.and_then(|f| f.get(e.id)) {
            Some(c) => format!("{}", c as u8),
            None => e.label.to_string(),
        };
        writeln!(out, "  n{} -- n{} [label=\"{label}\", id=\"e{}\"];", e.u, e.v, e.id).unwrap();
    }
    out.push_str("}\n");
    out
}
