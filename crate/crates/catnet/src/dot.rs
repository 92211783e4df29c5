//! Graphviz output for nets and processes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use catnet_core::canon::CanonicalProcess;
use catnet_core::{CatalystNet, Marking, SpeciesId};

const RESERVED: [&str; 6] = ["node", "edge", "graph", "digraph", "subgraph", "strict"];

/// `name` as a DOT identifier, quoted when it collides with a keyword.
fn id(name: &str) -> String {
    if RESERVED.iter().any(|k| k.eq_ignore_ascii_case(name)) {
        format!("\"{name}\"")
    } else {
        name.to_string()
    }
}

fn attrs(label: Option<String>, red: bool) -> String {
    let mut parts = Vec::new();
    if let Some(l) = label {
        parts.push(format!("label=\"{l}\""));
    }
    if red {
        parts.push("color=red".to_string());
    }
    if parts.is_empty() {
        String::new()
    } else {
        format!(" [{}]", parts.join(", "))
    }
}

/// The net as a bipartite graph: species are circles, transitions boxes,
/// arcs carry their multiplicity when it exceeds one, and catalysts with
/// their arcs are drawn in red.
pub fn net_dot(name: &str, cnet: &CatalystNet) -> String {
    let net = cnet.net();
    let mut out = format!("digraph {} {{\n", id(name));
    for s in &net.species {
        let red = if cnet.is_catalyst(s.id) { ", color=red" } else { "" };
        let _ = writeln!(out, "  {} [shape=circle{red}];", id(&s.name));
    }
    for t in &net.transitions {
        let _ = writeln!(out, "  {} [shape=box];", id(&t.name));
    }
    let label = |n: u64| (n > 1).then(|| n.to_string());
    for t in &net.transitions {
        for (s, n) in t.src.iter() {
            let sname = net.species_name(s).unwrap_or("?");
            let _ = writeln!(out, "  {} -> {}{};", id(sname), id(&t.name), attrs(label(n), cnet.is_catalyst(s)));
        }
        for (s, n) in t.tgt.iter() {
            let sname = net.species_name(s).unwrap_or("?");
            let _ = writeln!(out, "  {} -> {}{};", id(&t.name), id(sname), attrs(label(n), cnet.is_catalyst(s)));
        }
    }
    out.push_str("}\n");
    out
}

/// The process as a DAG of firings.
///
/// Firings are nodes `f0, f1, ...` ranked by canonical layer; `dom` and
/// `cod` stand for the boundary. Tokens are traced through the process,
/// each firing taking the most recently produced tokens of a species, and
/// every hand-over becomes an edge labelled by its species.
pub fn process_dot(cnet: &CatalystNet, p: &CanonicalProcess) -> String {
    let net = cnet.net();
    let mut out = String::from("digraph process {\n  rankdir=LR;\n");
    out.push_str("  dom [shape=plaintext];\n  cod [shape=plaintext];\n");
    let mut pools: BTreeMap<SpeciesId, Vec<String>> = BTreeMap::new();
    let mut edges: BTreeMap<(String, String, SpeciesId), u64> = BTreeMap::new();
    let give = |pools: &mut BTreeMap<SpeciesId, Vec<String>>, m: &Marking, from: &str| {
        for (s, n) in m.iter() {
            pools.entry(s).or_default().extend(std::iter::repeat_n(from.to_string(), n as usize));
        }
    };
    give(&mut pools, p.dom(), "dom");
    let mut k = 0;
    let mut ranks = Vec::new();
    for layer in p.layers() {
        let mut rank = Vec::new();
        let mut fired = Vec::new();
        for (t, n) in layer {
            for _ in 0..*n {
                let node = format!("f{k}");
                k += 1;
                let tr = net.transition(*t).expect("process of this net");
                let _ = writeln!(out, "  {node} [shape=box, label=\"{}\"];", tr.name);
                for (s, c) in tr.src.iter() {
                    let pool = pools.get_mut(&s).expect("process is executable");
                    for _ in 0..c {
                        let from = pool.pop().expect("process is executable");
                        *edges.entry((from, node.clone(), s)).or_default() += 1;
                    }
                }
                rank.push(node.clone());
                fired.push((node, &tr.tgt));
            }
        }
        for (node, tgt) in fired {
            give(&mut pools, tgt, &node);
        }
        ranks.push(rank);
    }
    for (s, pool) in &pools {
        for from in pool {
            *edges.entry((from.clone(), "cod".to_string(), *s)).or_default() += 1;
        }
    }
    for rank in ranks {
        let _ = writeln!(out, "  {{ rank=same; {}; }}", rank.join("; "));
    }
    for ((from, to, s), n) in edges {
        let sname = net.species_name(s).unwrap_or("?");
        let label = if n == 1 { sname.to_string() } else { format!("{n} {sname}") };
        let _ = writeln!(out, "  {from} -> {to}{};", attrs(Some(label), cnet.is_catalyst(s)));
    }
    out.push_str("}\n");
    out
}
