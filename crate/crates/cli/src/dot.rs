//! Graphviz export.

use std::fmt::Write as _;

use dynlog_core::Automaton;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// One `digraph`: nodes in declaration order, one edge per labelled
/// transition ordered by input and then by pair.
pub fn to_dot(a: &Automaton, name: &str) -> String {
    let mut out = format!("digraph {} {{\n  rankdir=LR;\n", quote(name));
    for s in a.states().names() {
        let _ = writeln!(out, "  {};", quote(s));
    }
    for (x, s, t) in a.triples() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(a.states().name(s)),
            quote(a.states().name(t)),
            quote(&a.inputs()[x])
        );
    }
    out.push_str("}\n");
    out
}
