//! Small worked structures and compact constructors for single-character
//! labels, shared by tests, the self test and documentation.

use crate::domain::PreferenceDomain;
use crate::ground::GroundSet;
use crate::matgraph::MatLabeledGraph;
use crate::vine::RegularVine;

fn chars(s: &str) -> Vec<String> {
    s.chars().map(|c| c.to_string()).collect()
}

/// Graph from edges written as `("ab", label)`. Vertices are the letters
/// that occur.
pub fn graph(edges: &[(&str, u32)]) -> MatLabeledGraph {
    let mut vs: Vec<String> = edges.iter().flat_map(|(e, _)| chars(e)).collect();
    vs.sort();
    vs.dedup();
    let g = GroundSet::new(vs).expect("distinct labels");
    let edges: Vec<(String, String, u32)> = edges
        .iter()
        .map(|(e, l)| {
            let c = chars(e);
            (c[0].clone(), c[1].clone(), *l)
        })
        .collect();
    MatLabeledGraph::new(g, edges).expect("well formed edges")
}

/// Vine from nodes written as strings such as `"abc"`.
pub fn vine(nodes: &[&str]) -> RegularVine {
    let mut labels: Vec<String> = nodes.iter().flat_map(|s| chars(s)).collect();
    labels.sort();
    labels.dedup();
    let g = GroundSet::new(labels).expect("distinct labels");
    let sets: Vec<Vec<String>> = nodes.iter().map(|s| chars(s)).collect();
    RegularVine::from_labels(g, &sets).expect("well formed nodes")
}

/// Domain from preferences written best first, such as `"bcad"`.
pub fn domain(prefs: &[&str]) -> PreferenceDomain {
    let mut labels = chars(prefs[0]);
    labels.sort();
    let g = GroundSet::new(labels).expect("distinct labels");
    let ps: Vec<Vec<String>> = prefs.iter().map(|p| chars(p)).collect();
    PreferenceDomain::new(g, &ps).expect("well formed preferences")
}

pub fn intro_graph() -> MatLabeledGraph {
    graph(&[("ab", 1), ("ac", 2), ("ad", 3), ("bc", 1), ("bd", 1), ("cd", 2)])
}

pub fn intro_vine() -> RegularVine {
    vine(&["a", "b", "c", "d", "ab", "bc", "bd", "abc", "bcd", "abcd"])
}

pub fn intro_domain() -> PreferenceDomain {
    domain(&["abcd", "bacd", "bcad", "cbad", "bcda", "cbda", "bdca", "dbca"])
}

pub fn five_graph() -> MatLabeledGraph {
    graph(&[
        ("ab", 1),
        ("ac", 2),
        ("ad", 3),
        ("ae", 4),
        ("bc", 1),
        ("bd", 2),
        ("be", 3),
        ("cd", 1),
        ("ce", 1),
        ("de", 2),
    ])
}

pub fn five_vine() -> RegularVine {
    vine(&[
        "a", "b", "c", "d", "e", "ab", "bc", "cd", "ce", "abc", "bcd", "cde", "abcd", "bcde",
        "abcde",
    ])
}

pub fn five_domain() -> PreferenceDomain {
    domain(&[
        "abcde", "bacde", "bcade", "cbade", "bcdae", "cbdae", "cdbae", "dcbae", "bcdea", "cbdea",
        "cdbea", "dcbea", "cdeba", "dceba", "cedba", "ecdba",
    ])
}

/// The four-element D-vine domain, single-peaked on `abcd`.
pub fn d41() -> PreferenceDomain {
    domain(&["abcd", "bacd", "bcad", "cbad", "bcda", "cbda", "cdba", "dcba"])
}

/// The four-element C-vine domain, not single-peaked.
pub fn d42() -> PreferenceDomain {
    domain(&["acbd", "cabd", "bacd", "abcd", "badc", "abdc", "adbc", "dabc"])
}
