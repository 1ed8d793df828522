//! Graphviz export.

use std::fmt::Write;

use voltlift::Multigraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph listing vertices then edges in id order, with an optional
/// label per edge.
pub fn export_dot(g: &Multigraph, labels: Option<&[String]>) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        writeln!(out, "  {};", quote(g.vertex_name(v))).unwrap();
    }
    for e in g.edges() {
        let (a, b) = (quote(g.vertex_name(g.src(e))), quote(g.vertex_name(g.dst(e))));
        match labels {
            Some(l) => writeln!(out, "  {a} -> {b} [label={}];", quote(&l[e])).unwrap(),
            None => writeln!(out, "  {a} -> {b};").unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph() {
        assert_eq!(export_dot(&Multigraph::new(), None), "digraph G {\n}\n");
    }

    #[test]
    fn edges_and_labels() {
        let g = Multigraph::from_names(&["a", "b"], &[("x", "a", "b")]).unwrap();
        assert!(export_dot(&g, None).contains("  \"a\" -> \"b\";\n"));
        let l = Multigraph::from_names(&["v"], &[("x", "v", "v")]).unwrap();
        assert_eq!(export_dot(&l, Some(&["1".to_string()])), "digraph G {\n  \"v\";\n  \"v\" -> \"v\" [label=\"1\"];\n}\n");
    }

    #[test]
    fn names_are_escaped() {
        let g = Multigraph::from_names(&["a\"b"], &[] as &[(&str, &str, &str)]).unwrap();
        assert_eq!(export_dot(&g, None), "digraph G {\n  \"a\\\"b\";\n}\n");
    }
}
