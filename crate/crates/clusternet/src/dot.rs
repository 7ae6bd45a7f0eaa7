//! DOT emission for cluster graphs.

use crate::model::GraphFile;

/// Human-readable reaction: consumed side, arrow, produced side, in
/// species names with counts.
pub fn render_reaction(d: &[i64], species: &[String]) -> String {
    let side = |sign: i128| -> String {
        let mut terms = Vec::new();
        for (i, &v) in d.iter().enumerate() {
            let units = v as i128 * sign;
            if units <= 0 {
                continue;
            }
            if units == 1 {
                terms.push(species[i].clone());
            } else {
                terms.push(format!("{} {}", units, species[i]));
            }
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    };
    format!("{} → {}", side(-1), side(1))
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The graph in DOT: one node per cluster labeled by its representative
/// expression, one edge per arc labeled by its reaction.
pub fn graph_to_dot(file: &GraphFile) -> String {
    let mut out = String::from("digraph clusters {\n  rankdir=LR;\n  node [shape=box];\n");
    for (i, node) in file.nodes.iter().enumerate() {
        let mark = if file.initial.contains(&i) {
            ", peripheries=2"
        } else {
            ""
        };
        out.push_str(&format!(
            "  n{} [label=\"{}\"{}];\n",
            i,
            escape(&node.expression),
            mark
        ));
    }
    for arc in &file.arcs {
        out.push_str(&format!(
            "  n{} -> n{} [label=\"{}\"];\n",
            arc.from,
            arc.to,
            escape(&arc.reaction)
        ));
    }
    out.push_str("}\n");
    out
}
