//! The six explicit maps between MAT-labeled graphs, regular vines and
//! maximal ASPDs.

use std::collections::BTreeMap;

use crate::domain::{topmost_raw, DomainSpecies, Preference, PreferenceDomain};
use crate::error::{Error, Result};
use crate::ground::{sort_masks, Mask};
use crate::matgraph::{peo_indices, MatGraphSpecies, MatLabeledGraph};
use crate::species::Species;
use crate::vine::{chains_raw, join_raw, validate_vine, RegularVine, VineSpecies};

fn require_graph(g: &MatLabeledGraph) -> Result<()> {
    MatGraphSpecies::validate(g).into_result()
}

fn require_domain(d: &PreferenceDomain) -> Result<()> {
    DomainSpecies::validate(d).into_result()
}

/// Singletons together with, for each edge `e`, the clique formed by `e` and
/// the vertices joined to both ends by edges labelled below `label(e)`.
pub fn graph_to_vine(g: &MatLabeledGraph) -> Result<RegularVine> {
    require_graph(g)?;
    let n = g.n();
    let mut nodes: Vec<Mask> = (0..n).map(|i| 1 << i).collect();
    for (i, j, l) in g.edges() {
        let mut c: Mask = 1 << i | 1 << j;
        for w in 0..n {
            if w == i || w == j {
                continue;
            }
            if g.label_at(i, w).unwrap() < l && g.label_at(j, w).unwrap() < l {
                c |= 1 << w;
            }
        }
        nodes.push(c);
    }
    sort_masks(&mut nodes);
    let v = RegularVine::from_sorted(g.vertices().clone(), nodes);
    check_output::<VineSpecies>(&v)?;
    Ok(v)
}

/// `label(a, b)` is one less than the size of the smallest node holding both.
pub fn vine_to_graph(v: &RegularVine) -> Result<MatLabeledGraph> {
    validate_vine(v).into_result()?;
    let n = v.n();
    let mut labels = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            labels.insert((i, j), join_raw(v, i, j).count_ones() - 1);
        }
    }
    let g = MatLabeledGraph::from_indexed(v.ground().clone(), labels);
    check_output::<MatGraphSpecies>(&g)?;
    Ok(g)
}

/// The domain of all MAT-perfect elimination orderings, read front to back.
pub fn graph_to_domain(g: &MatLabeledGraph) -> Result<PreferenceDomain> {
    require_graph(g)?;
    let prefs: Vec<Preference> = peo_indices(g)
        .into_iter()
        .map(|o| o.into_iter().map(|i| i as u8).collect())
        .collect();
    let d = PreferenceDomain::from_indexed(g.vertices().clone(), prefs);
    check_output::<DomainSpecies>(&d)?;
    Ok(d)
}

/// Each edge is labelled with the topmost position at which its endpoints
/// are adjacent in some preference.
pub fn domain_to_graph(d: &PreferenceDomain) -> Result<MatLabeledGraph> {
    require_domain(d)?;
    let n = d.n();
    let mut labels = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let l = topmost_raw(d, i as u8, j as u8).ok_or_else(|| {
                Error::Internal("two alternatives are never adjacent in a maximal domain".into())
            })?;
            labels.insert((i, j), l as u32);
        }
    }
    let g = MatLabeledGraph::from_indexed(d.alternatives().clone(), labels);
    check_output::<MatGraphSpecies>(&g)?;
    Ok(g)
}

/// One preference per maximal chain: the element added at step `k` is ranked
/// `k`-th.
pub fn vine_to_domain(v: &RegularVine) -> Result<PreferenceDomain> {
    validate_vine(v).into_result()?;
    let prefs = chains_raw(v)
        .into_iter()
        .map(|c| {
            let mut prev = 0;
            c.into_iter()
                .map(|m| {
                    let x = (m & !prev).trailing_zeros() as u8;
                    prev = m;
                    x
                })
                .collect()
        })
        .collect();
    let d = PreferenceDomain::from_indexed(v.ground().clone(), prefs);
    check_output::<DomainSpecies>(&d)?;
    Ok(d)
}

/// All prefixes of all preferences.
pub fn domain_to_vine(d: &PreferenceDomain) -> Result<RegularVine> {
    require_domain(d)?;
    let mut nodes: Vec<Mask> = Vec::new();
    for p in d.preferences() {
        let mut m = 0;
        for &x in p {
            m |= 1 << x;
            nodes.push(m);
        }
    }
    sort_masks(&mut nodes);
    nodes.dedup();
    let v = RegularVine::from_sorted(d.alternatives().clone(), nodes);
    check_output::<VineSpecies>(&v)?;
    Ok(v)
}

fn check_output<S: Species>(s: &S::Structure) -> Result<()> {
    let r = S::validate(s);
    match r.first() {
        None => Ok(()),
        Some(v) => Err(Error::Internal(format!("{} map produced an invalid structure: {v}", S::KIND))),
    }
}
