//! Catalog of isomorphism classes with every derived representation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::correspond::{vine_to_domain, vine_to_graph};
use crate::domain::{bottom_alternatives, first_rank_distribution, is_bspd, richness_direct};
use crate::error::{Error, Result};
use crate::lattice::{automorphism_group_order, is_extremal_lattice, lattice_to_matrix, vine_to_lattice};
use crate::vine::{chain_counts_from_atoms, is_c_vine, is_d_vine, richness_via_vine};

use super::class_representatives;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEdge {
    pub u: String,
    pub v: String,
    pub label: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub n: usize,
    pub index: usize,
    pub nodes: Vec<String>,
    pub automorphisms: usize,
    pub d_vine: bool,
    pub c_vine: bool,
    pub bspd_axis: Option<Vec<String>>,
    pub richness: usize,
    pub first_rank: BTreeMap<String, u64>,
    pub bottoms: Vec<String>,
    pub edges: Vec<CatalogEdge>,
    pub preferences: Vec<String>,
    pub matrix: Vec<String>,
    pub lattice_size: usize,
}

/// One entry per class on `n` elements, in canonical-form order.
pub fn build_catalog(n: usize) -> Result<Vec<CatalogEntry>> {
    let classes = class_representatives(n)?;
    classes
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let v = &c.representative;
            let g = vine_to_graph(v)?;
            let d = vine_to_domain(v)?;
            let l = vine_to_lattice(v)?;
            let ext = is_extremal_lattice(&l, n)?;
            if !ext.extremal {
                return Err(Error::Internal(format!("class {} gives a non-extremal lattice", k + 1)));
            }
            let richness = richness_via_vine(v)?;
            let first_rank = chain_counts_from_atoms(v)?;
            if richness != richness_direct(&d) || first_rank != first_rank_distribution(&d) {
                return Err(Error::Internal(format!("class {}: vine and domain statistics differ", k + 1)));
            }
            let ground = v.ground();
            Ok(CatalogEntry {
                n,
                index: k + 1,
                nodes: v.nodes().iter().map(|&m| ground.show(m)).collect(),
                automorphisms: automorphism_group_order(v)?,
                d_vine: is_d_vine(v)?,
                c_vine: is_c_vine(v)?,
                bspd_axis: is_bspd(&d),
                richness,
                first_rank,
                bottoms: bottom_alternatives(&d).into_iter().collect(),
                edges: g
                    .edges()
                    .map(|(i, j, label)| CatalogEdge {
                        u: ground.label(i).to_string(),
                        v: ground.label(j).to_string(),
                        label,
                    })
                    .collect(),
                preferences: d.preferences().iter().map(|p| d.show(p)).collect(),
                matrix: lattice_to_matrix(&l).to_text().lines().map(str::to_string).collect(),
                lattice_size: l.len(),
            })
        })
        .collect()
}

/// One JSON object per line.
pub fn render_jsonl(entries: &[CatalogEntry]) -> String {
    let mut s = String::new();
    for e in entries {
        s.push_str(&serde_json::to_string(e).expect("catalog entries serialize"));
        s.push('\n');
    }
    s
}

/// Human readable report.
pub fn render_report(entries: &[CatalogEntry]) -> String {
    let mut s = String::new();
    let n = entries.first().map_or(0, |e| e.n);
    let _ = writeln!(s, "regular vines on {n} elements: {} classes", entries.len());
    for e in entries {
        let _ = writeln!(s);
        let _ = writeln!(s, "class {}  |Aut| = {}", e.index, e.automorphisms);
        let _ = writeln!(s, "  nodes: {}", e.nodes.join(" "));
        let kinds = match (e.d_vine, e.c_vine) {
            (true, true) => "D-vine, C-vine",
            (true, false) => "D-vine",
            (false, true) => "C-vine",
            (false, false) => "-",
        };
        let _ = writeln!(s, "  type: {kinds}");
        let edges: Vec<String> = e.edges.iter().map(|x| format!("{}{}={}", x.u, x.v, x.label)).collect();
        let _ = writeln!(s, "  labels: {}", edges.join(" "));
        let _ = writeln!(s, "  domain: {}", e.preferences.join(" "));
        let fr: Vec<String> = e.first_rank.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        let _ = writeln!(s, "  first ranks: {}", fr.join(" "));
        let _ = writeln!(s, "  richness: {}", e.richness);
        let _ = writeln!(s, "  bottoms: {}", e.bottoms.join(" "));
        match &e.bspd_axis {
            Some(a) => {
                let _ = writeln!(s, "  single-peaked axis: {}", a.join(""));
            }
            None => {
                let _ = writeln!(s, "  single-peaked axis: none");
            }
        }
        let _ = writeln!(s, "  lattice size: {}", e.lattice_size);
        let _ = writeln!(s, "  matrix:");
        for row in &e.matrix {
            let _ = writeln!(s, "    {row}");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_sizes() {
        let sizes: Vec<usize> = (3..=6).map(|n| build_catalog(n).unwrap().len()).collect();
        assert_eq!(sizes, [1, 2, 6, 40]);
    }

    #[test]
    fn catalog_for_three_elements() {
        let c = build_catalog(3).unwrap();
        assert_eq!(c[0].nodes, ["a", "b", "c", "ab", "ac", "abc"]);
        assert!(c[0].d_vine && c[0].c_vine);
        assert_eq!(c[0].preferences.len(), 4);
        assert_eq!(render_jsonl(&c), render_jsonl(&build_catalog(3).unwrap()));
    }
}
