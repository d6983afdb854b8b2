//! JSON and DOT renderings.

use hyperdual_core::structure::IntersectionGraph;
use hyperdual_core::verify::{hex, Failure, VerificationReport};
use hyperdual_core::{CountSummary, FlagStructure, GenusPolynomial};
use serde_json::{json, Map, Value};

fn pairs(m: &[usize]) -> Value {
    let list: Vec<[usize; 2]> = (0..m.len()).filter(|&x| x < m[x]).map(|x| [x, m[x]]).collect();
    json!(list)
}

pub fn flags_json(fs: &FlagStructure) -> Value {
    let labels = match fs.labels() {
        Some(labels) => {
            let flags: Vec<Value> = labels
                .flags()
                .iter()
                .map(|l| json!({"edge": labels.names()[l.edge], "index": l.index, "end": l.end.as_str()}))
                .collect();
            json!({"edges": labels.names(), "flags": flags})
        }
        None => json!({}),
    };
    json!({
        "flags": fs.flag_count(),
        "alpha": pairs(fs.alpha()),
        "beta": pairs(fs.beta()),
        "gamma": pairs(fs.gamma()),
        "isolated": fs.isolated(),
        "labels": labels,
    })
}

/// `{"0":2,"2":2}`, exponents ascending.
pub fn poly_json(p: &GenusPolynomial) -> String {
    let body: Vec<String> = p.terms().map(|(e, c)| format!("\"{e}\":{c}")).collect();
    format!("{{{}}}", body.join(","))
}

pub fn counts_json(c: &CountSummary) -> Value {
    json!({
        "v": c.v, "e": c.e, "f": c.f, "d": c.d, "k": c.k,
        "chi": c.chi, "epsilon": c.epsilon, "orientable": c.orientable,
    })
}

pub fn counts_text(c: &CountSummary) -> String {
    format!(
        "v={} e={} f={} d={} k={} chi={} epsilon={} orientable={}",
        c.v,
        c.e,
        c.f,
        c.d,
        c.k,
        c.chi,
        c.epsilon,
        if c.orientable { "yes" } else { "no" }
    )
}

fn sorted_graph(g: &IntersectionGraph) -> (Vec<&str>, Vec<(&str, &str)>) {
    let mut names: Vec<&str> = g.names().iter().map(String::as_str).collect();
    names.sort_unstable();
    let mut edges: Vec<(&str, &str)> = g
        .edges()
        .map(|(a, b)| {
            let (a, b) = (g.names()[a].as_str(), g.names()[b].as_str());
            if a <= b { (a, b) } else { (b, a) }
        })
        .collect();
    edges.sort_unstable();
    (names, edges)
}

/// `graph I { a; b; a -- b; }` with vertices and edges sorted.
pub fn igraph_dot(g: &IntersectionGraph) -> String {
    let (names, edges) = sorted_graph(g);
    let mut out = String::from("graph I {");
    for n in names {
        out.push_str(&format!(" {n};"));
    }
    for (a, b) in edges {
        out.push_str(&format!(" {a} -- {b};"));
    }
    out.push_str(" }");
    out
}

pub fn igraph_json(g: &IntersectionGraph) -> Value {
    let (names, edges) = sorted_graph(g);
    let edges: Vec<[&str; 2]> = edges.into_iter().map(|(a, b)| [a, b]).collect();
    json!({"vertices": names, "edges": edges, "bipartite": g.is_bipartite()})
}

pub fn igraph_text(g: &IntersectionGraph) -> String {
    let (names, edges) = sorted_graph(g);
    let mut out = format!("vertices: {}\n", names.join(" "));
    for (a, b) in edges {
        out.push_str(&format!("{a} -- {b}\n"));
    }
    out.push_str(&format!("bipartite={}", if g.is_bipartite() { "yes" } else { "no" }));
    out
}

pub fn failure_json(f: &Failure) -> Value {
    let mut m = Map::new();
    m.insert("suite".into(), json!(f.suite));
    m.insert("check".into(), json!(f.check));
    m.insert("instance".into(), json!(hex(&f.canonical_form)));
    m.insert("witness".into(), json!(f.witness));
    m.insert("expected".into(), json!(f.expected));
    m.insert("actual".into(), json!(f.actual));
    Value::Object(m)
}

/// `{"suite": ..., "instances": ..., "failures": [...]}`.
pub fn report_json(r: &VerificationReport) -> Value {
    let failures: Vec<Value> = r.failures.iter().map(failure_json).collect();
    json!({"suite": r.suite, "instances": r.instances, "failures": failures})
}
