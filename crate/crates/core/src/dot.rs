//! Graphviz output of Hasse diagrams. Nodes appear in index order and
//! edges in lexicographic order, so output is byte-stable.

use std::fmt::Write as _;

use crate::order::Poset;
use crate::quantale::FiniteQuantale;

/// Anything with labelled elements and cover pairs.
pub trait HasseDiagram {
    fn node_labels(&self) -> Vec<String>;
    /// `(lower, upper)` cover pairs.
    fn covers(&self) -> Vec<(usize, usize)>;
}

impl HasseDiagram for FiniteQuantale {
    fn node_labels(&self) -> Vec<String> {
        self.labels().to_vec()
    }

    fn covers(&self) -> Vec<(usize, usize)> {
        self.hasse()
    }
}

impl HasseDiagram for Poset {
    fn node_labels(&self) -> Vec<String> {
        self.names().to_vec()
    }

    fn covers(&self) -> Vec<(usize, usize)> {
        self.hasse()
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A `digraph` with one node per element and one edge per cover, drawn
/// bottom to top.
pub fn emit_dot<H: HasseDiagram + ?Sized>(name: &str, lattice: &H) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(name));
    out.push_str("  rankdir=BT;\n  node [shape=box];\n");
    for (i, label) in lattice.node_labels().iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(label));
    }
    let mut edges = lattice.covers();
    edges.sort_unstable();
    for (x, y) in edges {
        let _ = writeln!(out, "  n{x} -> n{y};");
    }
    out.push_str("}\n");
    out
}
