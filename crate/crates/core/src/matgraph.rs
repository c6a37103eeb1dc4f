//! MAT-labeled graphs: edge labelings satisfying the cycle and triangle
//! conditions, MAT-simplicial vertices and MAT-perfect elimination orderings.

use std::collections::BTreeMap;

use crate::error::{Error, Result, ValidationReport};
use crate::ground::{bits, GroundSet, Mask, Relabeling};
use crate::species::{common_ground, Species, SplitPair};

/// A simple graph with positive integer edge labels. Edges are keyed by
/// vertex indices `(i, j)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatLabeledGraph {
    vertices: GroundSet,
    labels: BTreeMap<(usize, usize), u32>,
}

fn key(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

impl MatLabeledGraph {
    pub fn new<I, S>(vertices: GroundSet, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S, u32)>,
        S: AsRef<str>,
    {
        let mut labels = BTreeMap::new();
        for (u, v, l) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            let i = vertices
                .index_of(u)
                .ok_or_else(|| Error::Malformed(format!("unknown vertex {u:?}")))?;
            let j = vertices
                .index_of(v)
                .ok_or_else(|| Error::Malformed(format!("unknown vertex {v:?}")))?;
            if i == j {
                return Err(Error::Malformed(format!("self loop at {u:?}")));
            }
            if l == 0 {
                return Err(Error::Malformed(format!("non-positive label on {u}{v}")));
            }
            if labels.insert(key(i, j), l).is_some() {
                return Err(Error::Malformed(format!("duplicate edge {u}{v}")));
            }
        }
        Ok(MatLabeledGraph { vertices, labels })
    }

    /// Builds from index-keyed labels; used internally where the keys are
    /// known to be well formed.
    pub(crate) fn from_indexed(vertices: GroundSet, labels: BTreeMap<(usize, usize), u32>) -> Self {
        debug_assert!(labels.keys().all(|&(i, j)| i < j && j < vertices.len()));
        MatLabeledGraph { vertices, labels }
    }

    pub fn vertices(&self) -> &GroundSet {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn label_at(&self, i: usize, j: usize) -> Option<u32> {
        self.labels.get(&key(i, j)).copied()
    }

    pub fn label(&self, u: &str, v: &str) -> Option<u32> {
        let i = self.vertices.index_of(u)?;
        let j = self.vertices.index_of(v)?;
        self.label_at(i, j)
    }

    /// Edges as `(i, j, label)` sorted by `(i, j)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.labels.iter().map(|(&(i, j), &l)| (i, j, l))
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.labels.len() == n * n.saturating_sub(1) / 2
    }

    pub fn max_label(&self) -> u32 {
        self.labels.values().copied().max().unwrap_or(0)
    }

    /// Edges carrying label `k`.
    pub fn level_set(&self, k: u32) -> Vec<(usize, usize)> {
        self.edges().filter(|e| e.2 == k).map(|e| (e.0, e.1)).collect()
    }

    /// Induced subgraph on `mask`.
    pub fn induced(&self, mask: Mask) -> MatLabeledGraph {
        let idx: Vec<usize> = bits(mask).collect();
        let mut pos = vec![usize::MAX; self.n()];
        for (p, &i) in idx.iter().enumerate() {
            pos[i] = p;
        }
        let labels = self
            .edges()
            .filter(|&(i, j, _)| mask >> i & 1 == 1 && mask >> j & 1 == 1)
            .map(|(i, j, l)| ((pos[i], pos[j]), l))
            .collect();
        MatLabeledGraph {
            vertices: self.vertices.restrict(mask),
            labels,
        }
    }

    fn edge_name(&self, i: usize, j: usize) -> String {
        format!("{}{}", self.vertices.label(i), self.vertices.label(j))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Checks the cycle and triangle conditions level by level.
///
/// Cycle condition at level `k`: the edges of label `k` form a forest and no
/// further edge of label at most `k` joins two vertices of one of its trees.
/// Triangle condition: each edge of label `k` lies in exactly `k - 1`
/// triangles whose other two edges have labels below `k`.
pub fn validate_mat_labeling(g: &MatLabeledGraph) -> ValidationReport {
    let mut report = ValidationReport::ok();
    let n = g.n();
    let mut levels: Vec<u32> = g.labels.values().copied().collect();
    levels.sort_unstable();
    levels.dedup();
    for &k in &levels {
        let level = g.level_set(k);
        let mut uf = UnionFind::new(n);
        for &(i, j) in &level {
            if !uf.union(i, j) {
                report.push(
                    "matgraph.cycle",
                    format!("label-{k} edges close a cycle at {}", g.edge_name(i, j)),
                );
            }
        }
        for (i, j, l) in g.edges() {
            if l < k && uf.find(i) == uf.find(j) {
                report.push(
                    "matgraph.cycle",
                    format!(
                        "edge {} (label {l}) closes a cycle with label-{k} edges",
                        g.edge_name(i, j)
                    ),
                );
            }
        }
        for &(i, j) in &level {
            let t = (0..n)
                .filter(|&w| w != i && w != j)
                .filter(|&w| matches!((g.label_at(i, w), g.label_at(j, w)), (Some(a), Some(b)) if a < k && b < k))
                .count();
            if t != (k - 1) as usize {
                report.push(
                    "matgraph.triangle",
                    format!(
                        "edge {} with label {k} lies in {t} lower triangles, expected {}",
                        g.edge_name(i, j),
                        k - 1
                    ),
                );
            }
        }
    }
    report
}

/// MAT-simplicial test for vertex `a` inside the subgraph induced by `within`.
fn simplicial_in(g: &MatLabeledGraph, a: usize, within: Mask) -> bool {
    let nbrs: Vec<usize> = bits(within & !(1 << a))
        .filter(|&b| g.label_at(a, b).is_some())
        .collect();
    let deg = nbrs.len();
    let mut seen = vec![false; deg + 1];
    for &b in &nbrs {
        let l = g.label_at(a, b).expect("neighbour") as usize;
        if l == 0 || l > deg || seen[l] {
            return false;
        }
        seen[l] = true;
    }
    for (x, &b) in nbrs.iter().enumerate() {
        for &c in &nbrs[x + 1..] {
            match g.label_at(b, c) {
                None => return false,
                Some(l) => {
                    let m = g.label_at(a, b).unwrap().max(g.label_at(a, c).unwrap());
                    if l >= m {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Vertices satisfying the three MAT-simplicial conditions.
pub fn mat_simplicial_vertices(g: &MatLabeledGraph) -> Result<Vec<String>> {
    validate_mat_labeling(g).into_result()?;
    let full = g.vertices.full();
    Ok((0..g.n())
        .filter(|&a| simplicial_in(g, a, full))
        .map(|a| g.vertices.label(a).to_string())
        .collect())
}

/// Whether `ord` lists every vertex once and each vertex is MAT-simplicial in
/// the subgraph induced by itself and its predecessors. Works on arbitrary
/// labelings.
pub fn is_mat_peo<S: AsRef<str>>(g: &MatLabeledGraph, ord: &[S]) -> Result<bool> {
    let idx: Vec<usize> = ord
        .iter()
        .map(|l| g.vertices.require(l.as_ref()))
        .collect::<Result<_>>()?;
    let mut seen: Mask = 0;
    for &i in &idx {
        if seen >> i & 1 == 1 {
            return Err(Error::Argument("ordering repeats a vertex".into()));
        }
        seen |= 1 << i;
    }
    if idx.len() != g.n() {
        return Err(Error::Argument("ordering is not a permutation".into()));
    }
    Ok(is_peo_indices(g, &idx))
}

pub(crate) fn is_peo_indices(g: &MatLabeledGraph, idx: &[usize]) -> bool {
    let mut prefix: Mask = 0;
    for &i in idx {
        prefix |= 1 << i;
        if !simplicial_in(g, i, prefix) {
            return false;
        }
    }
    true
}

/// All MAT-perfect elimination orderings as index sequences, sorted.
pub(crate) fn peo_indices(g: &MatLabeledGraph) -> Vec<Vec<usize>> {
    // Build from the back: the last vertex must be simplicial in the whole
    // graph, the one before it in the rest, and so on.
    fn rec(g: &MatLabeledGraph, remaining: Mask, suffix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(suffix.iter().rev().copied().collect());
            return;
        }
        for a in bits(remaining) {
            if simplicial_in(g, a, remaining) {
                suffix.push(a);
                rec(g, remaining & !(1 << a), suffix, out);
                suffix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(g, g.vertices.full(), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All MAT-PEOs of a valid complete MAT-labeled graph, as label sequences.
pub fn enumerate_mat_peos(g: &MatLabeledGraph) -> Result<Vec<Vec<String>>> {
    require_complete_valid(g)?;
    Ok(peo_indices(g)
        .into_iter()
        .map(|o| o.into_iter().map(|i| g.vertices.label(i).to_string()).collect())
        .collect())
}

fn require_complete_valid(g: &MatLabeledGraph) -> Result<()> {
    if !g.is_complete() {
        return Err(Error::Argument("graph is not complete".into()));
    }
    validate_mat_labeling(g).into_result()
}

/// The two MAT-simplicial vertices of a valid complete graph on at least two
/// vertices: the endpoints of the unique edge with the largest label.
fn split_vertices(g: &MatLabeledGraph) -> Result<(usize, usize)> {
    let top = g.max_label();
    let level = g.level_set(top);
    match level.as_slice() {
        [(i, j)] => Ok((*i, *j)),
        _ => Err(Error::Internal("largest label is not on a single edge".into())),
    }
}

/// Returns `(G1, G2, G')`: the restrictions to `A \ {a1}`, `A \ {a2}` and
/// `A \ {a1, a2}` where `a1 < a2` are the MAT-simplicial vertices.
pub fn split_graph(
    g: &MatLabeledGraph,
) -> Result<(MatLabeledGraph, MatLabeledGraph, MatLabeledGraph)> {
    if g.n() < 2 {
        return Err(Error::Argument("split needs at least two vertices".into()));
    }
    require_complete_valid(g)?;
    let (a1, a2) = split_vertices(g)?;
    let full = g.vertices.full();
    Ok((
        g.induced(full & !(1 << a1)),
        g.induced(full & !(1 << a2)),
        g.induced(full & !(1 << a1) & !(1 << a2)),
    ))
}

/// Merges complete graphs on `A \ {a1}` and `A \ {a2}` whose restrictions to
/// `A \ {a1, a2}` agree and are MAT-labeled; the new edge gets `|A| - 1`.
pub fn merge_graphs(g1: &MatLabeledGraph, g2: &MatLabeledGraph) -> Result<Option<MatLabeledGraph>> {
    let (ground, x, y) = common_ground(&g1.vertices, &g2.vertices)?;
    if !g1.is_complete() || !g2.is_complete() {
        return Err(Error::Argument("merge needs complete graphs".into()));
    }
    let xi = ground.index_of(&x).unwrap();
    let yi = ground.index_of(&y).unwrap();
    let map1: Vec<usize> = g1.vertices.labels().iter().map(|l| ground.index_of(l).unwrap()).collect();
    let map2: Vec<usize> = g2.vertices.labels().iter().map(|l| ground.index_of(l).unwrap()).collect();
    let mut labels = BTreeMap::new();
    for (i, j, l) in g1.edges() {
        labels.insert(key(map1[i], map1[j]), l);
    }
    for (i, j, l) in g2.edges() {
        let k = key(map2[i], map2[j]);
        match labels.get(&k) {
            Some(&old) if old != l => return Ok(None),
            _ => {
                labels.insert(k, l);
            }
        }
    }
    let shared = ground.full() & !(1 << xi) & !(1 << yi);
    let merged = MatLabeledGraph::from_indexed(ground, labels);
    if !validate_mat_labeling(&merged.induced(shared)).is_valid() {
        return Ok(None);
    }
    let mut merged = merged;
    let n = merged.n() as u32;
    merged.labels.insert(key(xi, yi), n - 1);
    Ok(Some(merged))
}

pub fn relabel_graph(g: &MatLabeledGraph, h: &Relabeling) -> Result<MatLabeledGraph> {
    let (vertices, map) = h.apply(&g.vertices)?;
    let labels = g.edges().map(|(i, j, l)| (key(map[i], map[j]), l)).collect();
    Ok(MatLabeledGraph { vertices, labels })
}

/// Species of complete MAT-labeled graphs.
pub struct MatGraphSpecies;

impl Species for MatGraphSpecies {
    type Structure = MatLabeledGraph;
    const KIND: &'static str = "matgraph";

    fn ground(s: &MatLabeledGraph) -> &GroundSet {
        &s.vertices
    }

    fn trivial(ground: GroundSet) -> Result<MatLabeledGraph> {
        if ground.len() > 1 {
            return Err(Error::Argument("trivial structure needs at most one element".into()));
        }
        Ok(MatLabeledGraph::from_indexed(ground, BTreeMap::new()))
    }

    fn validate(s: &MatLabeledGraph) -> ValidationReport {
        let mut r = validate_mat_labeling(s);
        if !s.is_complete() {
            r.push("matgraph.complete", "graph is not complete");
        }
        r
    }

    fn split(s: &MatLabeledGraph) -> Result<SplitPair<MatLabeledGraph>> {
        let (a1, a2) = split_vertices(s)?;
        let full = s.vertices.full();
        Ok(SplitPair {
            left: s.induced(full & !(1 << a1)),
            right: s.induced(full & !(1 << a2)),
            removed: (s.vertices.label(a1).into(), s.vertices.label(a2).into()),
        })
    }

    fn merge(l: &MatLabeledGraph, r: &MatLabeledGraph) -> Result<Option<MatLabeledGraph>> {
        merge_graphs(l, r)
    }

    fn relabel(s: &MatLabeledGraph, h: &Relabeling) -> Result<MatLabeledGraph> {
        relabel_graph(s, h)
    }
}
