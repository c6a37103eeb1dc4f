//! JSON, text and DOT formats for every structure kind.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::domain::PreferenceDomain;
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::lattice::{BinaryMatrix, BoundedLattice};
use crate::matgraph::MatLabeledGraph;
use crate::vine::RegularVine;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    MatGraph,
    Vine,
    Domain,
    Lattice,
    Matrix,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::MatGraph => "matgraph",
            Kind::Vine => "vine",
            Kind::Domain => "domain",
            Kind::Lattice => "lattice",
            Kind::Matrix => "matrix",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Kind> {
        Ok(match s {
            "matgraph" | "graph" => Kind::MatGraph,
            "vine" => Kind::Vine,
            "domain" => Kind::Domain,
            "lattice" => Kind::Lattice,
            "matrix" => Kind::Matrix,
            _ => return Err(Error::Argument(format!("unknown kind {s:?}"))),
        })
    }
}

/// Any structure the tools read or write.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    MatGraph(MatLabeledGraph),
    Vine(RegularVine),
    Domain(PreferenceDomain),
    Lattice(BoundedLattice),
    Matrix(BinaryMatrix),
}

impl Structure {
    pub fn kind(&self) -> Kind {
        match self {
            Structure::MatGraph(_) => Kind::MatGraph,
            Structure::Vine(_) => Kind::Vine,
            Structure::Domain(_) => Kind::Domain,
            Structure::Lattice(_) => Kind::Lattice,
            Structure::Matrix(_) => Kind::Matrix,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        match self {
            Structure::MatGraph(g) => g.vertices(),
            Structure::Vine(v) => v.ground(),
            Structure::Domain(d) => d.alternatives(),
            Structure::Lattice(l) => l.ground(),
            Structure::Matrix(m) => m.rows(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    u: String,
    v: String,
    label: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Document {
    Matgraph {
        vertices: Vec<String>,
        edges: Vec<EdgeDoc>,
    },
    Vine {
        ground: Vec<String>,
        nodes: Vec<Vec<String>>,
    },
    Domain {
        alternatives: Vec<String>,
        preferences: Vec<Vec<String>>,
    },
    Lattice {
        ground: Vec<String>,
        elements: Vec<Vec<String>>,
    },
    Matrix {
        rows: Vec<String>,
        columns: Vec<String>,
    },
}

fn to_document(s: &Structure) -> Document {
    match s {
        Structure::MatGraph(g) => Document::Matgraph {
            vertices: g.vertices().labels().to_vec(),
            edges: g
                .edges()
                .map(|(i, j, label)| EdgeDoc {
                    u: g.vertices().label(i).into(),
                    v: g.vertices().label(j).into(),
                    label,
                })
                .collect(),
        },
        Structure::Vine(v) => Document::Vine {
            ground: v.ground().labels().to_vec(),
            nodes: v.node_labels(),
        },
        Structure::Domain(d) => Document::Domain {
            alternatives: d.alternatives().labels().to_vec(),
            preferences: d.preference_labels(),
        },
        Structure::Lattice(l) => Document::Lattice {
            ground: l.ground().labels().to_vec(),
            elements: l.element_labels(),
        },
        Structure::Matrix(m) => Document::Matrix {
            rows: m.rows().labels().to_vec(),
            columns: m.column_strings(),
        },
    }
}

fn from_document(d: Document) -> Result<Structure> {
    Ok(match d {
        Document::Matgraph { vertices, edges } => {
            let g = GroundSet::new(vertices)?;
            Structure::MatGraph(MatLabeledGraph::new(
                g,
                edges.into_iter().map(|e| (e.u, e.v, e.label)),
            )?)
        }
        Document::Vine { ground, nodes } => {
            Structure::Vine(RegularVine::from_labels(GroundSet::new(ground)?, &nodes)?)
        }
        Document::Domain {
            alternatives,
            preferences,
        } => Structure::Domain(PreferenceDomain::new(GroundSet::new(alternatives)?, &preferences)?),
        Document::Lattice { ground, elements } => {
            Structure::Lattice(BoundedLattice::from_labels(GroundSet::new(ground)?, &elements)?)
        }
        Document::Matrix { rows, columns } => {
            let g = GroundSet::new(rows.clone())?;
            let mut masks = Vec::with_capacity(columns.len());
            for c in &columns {
                if c.len() != rows.len() {
                    return Err(Error::Malformed(format!("column {c:?} has the wrong length")));
                }
                let mut m = 0u64;
                for (r, ch) in c.chars().enumerate() {
                    match ch {
                        '0' => {}
                        '1' => m |= 1 << g.index_of(&rows[r]).unwrap(),
                        _ => return Err(Error::Malformed(format!("column {c:?}: {ch:?}"))),
                    }
                }
                masks.push(m);
            }
            Structure::Matrix(BinaryMatrix::new(g, masks)?)
        }
    })
}

/// Parses a JSON document, or a plain 0/1 matrix.
pub fn parse(text: &str) -> Result<Structure> {
    let t = text.trim_start();
    if t.starts_with('{') {
        let doc: Document =
            serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        from_document(doc)
    } else if !t.is_empty() && t.chars().all(|c| matches!(c, '0' | '1' | '\n' | '\r' | ' ' | '\t')) {
        Ok(Structure::Matrix(BinaryMatrix::parse_text(text)?))
    } else {
        Err(Error::Malformed("expected a JSON document or a 0/1 matrix".into()))
    }
}

pub fn to_json(s: &Structure) -> String {
    let mut out = serde_json::to_string_pretty(&to_document(s)).expect("documents serialize");
    out.push('\n');
    out
}

pub fn to_text(s: &Structure) -> String {
    let mut out = String::new();
    match s {
        Structure::MatGraph(g) => {
            for (i, j, l) in g.edges() {
                let _ = writeln!(out, "{} {} {l}", g.vertices().label(i), g.vertices().label(j));
            }
        }
        Structure::Vine(v) => {
            for k in 1..=v.n() {
                let row: Vec<String> = v.rank(k).map(|m| v.ground().show(m)).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        }
        Structure::Domain(d) => out = d.table(),
        Structure::Lattice(l) => {
            let row: Vec<String> = l.elements().iter().map(|&m| l.ground().show(m)).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        Structure::Matrix(m) => out = m.to_text(),
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT rendering of a graph or of the Hasse diagram of a vine or lattice.
pub fn to_dot(s: &Structure) -> Result<String> {
    let mut out = String::new();
    match s {
        Structure::MatGraph(g) => {
            out.push_str("graph matgraph {\n");
            for l in g.vertices().labels() {
                let _ = writeln!(out, "  {};", quote(l));
            }
            for (i, j, l) in g.edges() {
                let _ = writeln!(
                    out,
                    "  {} -- {} [label=\"{l}\"];",
                    quote(g.vertices().label(i)),
                    quote(g.vertices().label(j))
                );
            }
        }
        Structure::Vine(v) => {
            out.push_str("digraph vine {\n  rankdir=BT;\n");
            for &m in v.nodes() {
                let _ = writeln!(out, "  {};", quote(&v.ground().show(m)));
            }
            for &m in v.nodes() {
                for c in v.covered_by(m) {
                    let _ = writeln!(out, "  {} -> {};", quote(&v.ground().show(c)), quote(&v.ground().show(m)));
                }
            }
        }
        Structure::Lattice(l) => {
            out.push_str("digraph lattice {\n  rankdir=BT;\n");
            for &m in l.elements() {
                let _ = writeln!(out, "  {};", quote(&l.ground().show(m)));
            }
            for &m in l.elements() {
                for c in l.lower_covers(m) {
                    let _ = writeln!(out, "  {} -> {};", quote(&l.ground().show(c)), quote(&l.ground().show(m)));
                }
            }
        }
        _ => {
            return Err(Error::Argument(format!("no DOT rendering for {}", s.kind())));
        }
    }
    out.push_str("}\n");
    Ok(out)
}
