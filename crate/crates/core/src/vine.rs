//! Regular vines realised as families of subsets of the ground set.

use std::collections::BTreeMap;

use crate::error::{Error, Result, ValidationReport};
use crate::ground::{bits, remap, sort_masks, GroundSet, Mask, Relabeling};
use crate::species::{common_ground, Species, SplitPair};

/// Nodes are kept sorted by cardinality then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegularVine {
    ground: GroundSet,
    nodes: Vec<Mask>,
}

impl RegularVine {
    /// Rejects empty nodes, nodes outside the ground set and duplicates. The
    /// vine axioms are checked separately by [`validate_vine`].
    pub fn new(ground: GroundSet, mut nodes: Vec<Mask>) -> Result<Self> {
        let full = ground.full();
        for &m in &nodes {
            if m == 0 {
                return Err(Error::Malformed("empty node".into()));
            }
            if m & !full != 0 {
                return Err(Error::Malformed("node outside the ground set".into()));
            }
        }
        sort_masks(&mut nodes);
        if nodes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Malformed("duplicate node".into()));
        }
        Ok(RegularVine { ground, nodes })
    }

    pub fn from_labels<S: AsRef<str>>(ground: GroundSet, nodes: &[Vec<S>]) -> Result<Self> {
        let masks = nodes
            .iter()
            .map(|n| ground.mask_of_labels(n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, masks)
    }

    pub(crate) fn from_sorted(ground: GroundSet, nodes: Vec<Mask>) -> Self {
        RegularVine { ground, nodes }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn nodes(&self) -> &[Mask] {
        &self.nodes
    }

    pub fn contains(&self, m: Mask) -> bool {
        self.nodes.iter().any(|&x| x == m)
    }

    /// Nodes of cardinality `i`.
    pub fn rank(&self, i: usize) -> impl Iterator<Item = Mask> + '_ {
        self.nodes.iter().copied().filter(move |m| m.count_ones() as usize == i)
    }

    /// Maximal nodes strictly below `m`.
    pub fn covered_by(&self, m: Mask) -> Vec<Mask> {
        let below: Vec<Mask> = self
            .nodes
            .iter()
            .copied()
            .filter(|&x| x != m && x & !m == 0)
            .collect();
        below
            .iter()
            .copied()
            .filter(|&x| !below.iter().any(|&y| y != x && x & !y == 0))
            .collect()
    }

    /// The principal ideal of `top`, i.e. all nodes contained in it, as a
    /// vine on `top`.
    pub fn ideal(&self, top: Mask) -> RegularVine {
        let idx: Vec<usize> = bits(top).collect();
        let mut pos = vec![0usize; self.n()];
        for (p, &i) in idx.iter().enumerate() {
            pos[i] = p;
        }
        let nodes = self
            .nodes
            .iter()
            .filter(|&&x| x & !top == 0)
            .map(|&x| remap(x, &pos))
            .collect();
        RegularVine {
            ground: self.ground.restrict(top),
            nodes,
        }
    }

    /// Node labels, one vector per node, in node order.
    pub fn node_labels(&self) -> Vec<Vec<String>> {
        self.nodes.iter().map(|&m| self.ground.labels_of(m)).collect()
    }
}

/// Checks atoms, rank sizes, gradedness, two covers, trees and proximity.
pub fn validate_vine(v: &RegularVine) -> ValidationReport {
    let mut r = ValidationReport::ok();
    let n = v.n();
    let g = &v.ground;
    if n == 0 {
        if !v.nodes.is_empty() {
            r.push("vine.atoms", "nodes on an empty ground set");
        }
        return r;
    }
    for i in 0..n {
        if !v.contains(1 << i) {
            r.push("vine.atoms", format!("missing singleton {}", g.label(i)));
        }
    }
    if !v.contains(g.full()) {
        r.push("vine.top", "ground set is not a node");
    }
    for i in 1..=n {
        let c = v.rank(i).count();
        if c != n + 1 - i {
            r.push(
                "vine.rank_sizes",
                format!("{c} nodes of cardinality {i}, expected {}", n + 1 - i),
            );
        }
    }
    if !r.is_valid() {
        return r;
    }
    for &m in &v.nodes {
        if m.count_ones() < 2 {
            continue;
        }
        let cov = v.covered_by(m);
        if let Some(&x) = cov.iter().find(|x| x.count_ones() + 1 != m.count_ones()) {
            r.push("vine.graded", format!("{} covers {}", g.show(m), g.show(x)));
        }
        if cov.len() != 2 {
            r.push(
                "vine.two_covers",
                format!("{} covers {} nodes", g.show(m), cov.len()),
            );
        } else if cov[0] | cov[1] != m {
            r.push(
                "vine.two_covers",
                format!("{} is not the union of the nodes it covers", g.show(m)),
            );
        }
    }
    if !r.is_valid() {
        return r;
    }
    for i in 1..n {
        let t = associated_tree_raw(v, i);
        if !is_tree(t.vertices.len(), &t.edge_ends()) {
            r.push("vine.tree", format!("level {i} is not a tree"));
        }
    }
    for &m in &v.nodes {
        if m.count_ones() < 3 {
            continue;
        }
        let cov = v.covered_by(m);
        let c0 = v.covered_by(cov[0]);
        let c1 = v.covered_by(cov[1]);
        if !c0.iter().any(|x| c1.contains(x)) {
            r.push(
                "vine.proximity",
                format!(
                    "{} and {} below {} share no node",
                    g.show(cov[0]),
                    g.show(cov[1]),
                    g.show(m)
                ),
            );
        }
    }
    r
}

fn is_tree(nv: usize, edges: &[(usize, usize)]) -> bool {
    if edges.len() + 1 != nv {
        return false;
    }
    let mut parent: Vec<usize> = (0..nv).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// The level-`i` tree: vertices are the nodes of cardinality `i`, edges the
/// nodes of cardinality `i + 1` joining the two nodes they cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedTree {
    pub level: usize,
    pub vertices: Vec<Mask>,
    /// `(edge node, endpoint, endpoint)`.
    pub edges: Vec<(Mask, Mask, Mask)>,
}

impl AssociatedTree {
    fn edge_ends(&self) -> Vec<(usize, usize)> {
        let pos = |m: Mask| self.vertices.iter().position(|&x| x == m).unwrap_or(usize::MAX);
        self.edges
            .iter()
            .filter(|e| pos(e.1) != usize::MAX && pos(e.2) != usize::MAX)
            .map(|e| (pos(e.1), pos(e.2)))
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for (a, b) in self.edge_ends() {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    pub fn is_path(&self) -> bool {
        self.degrees().iter().all(|&d| d <= 2)
    }

    pub fn is_star(&self) -> bool {
        let m = self.vertices.len();
        m <= 2 || self.degrees().iter().any(|&d| d == m - 1)
    }
}

fn associated_tree_raw(v: &RegularVine, i: usize) -> AssociatedTree {
    let vertices: Vec<Mask> = v.rank(i).collect();
    let edges = v
        .rank(i + 1)
        .map(|e| {
            let c = v.covered_by(e);
            (e, c[0], *c.get(1).unwrap_or(&c[0]))
        })
        .collect();
    AssociatedTree {
        level: i,
        vertices,
        edges,
    }
}

pub fn associated_tree(v: &RegularVine, i: usize) -> Result<AssociatedTree> {
    validate_vine(v).into_result()?;
    if i == 0 || i >= v.n() {
        return Err(Error::Argument(format!("level {i} outside 1..{}", v.n())));
    }
    Ok(associated_tree_raw(v, i))
}

/// Returns `(V1, V2, V')`: the ideals of the co-atoms `A \ {a1}` and
/// `A \ {a2}` and of `A \ {a1, a2}`, where `a1 < a2`.
pub fn split_vine(v: &RegularVine) -> Result<(RegularVine, RegularVine, RegularVine)> {
    if v.n() < 2 {
        return Err(Error::Argument("split needs at least two elements".into()));
    }
    validate_vine(v).into_result()?;
    let (l, r, a1, a2) = split_raw(v);
    let full = v.ground.full();
    Ok((l, r, v.ideal(full & !(1 << a1) & !(1 << a2))))
}

fn split_raw(v: &RegularVine) -> (RegularVine, RegularVine, usize, usize) {
    let full = v.ground.full();
    let cov = v.covered_by(full);
    let mut removed: Vec<usize> = cov.iter().map(|&c| (full & !c).trailing_zeros() as usize).collect();
    removed.sort_unstable();
    let (a1, a2) = (removed[0], removed[1]);
    (
        v.ideal(full & !(1 << a1)),
        v.ideal(full & !(1 << a2)),
        a1,
        a2,
    )
}

/// Union of the two vines plus the full ground set, when their common part
/// is a vine on `A \ {a1, a2}`.
pub fn merge_vines(v1: &RegularVine, v2: &RegularVine) -> Result<Option<RegularVine>> {
    let (ground, _, _) = common_ground(&v1.ground, &v2.ground)?;
    let lift = |v: &RegularVine| -> Result<Vec<Mask>> {
        v.nodes.iter().map(|&m| v.ground.embed(&ground, m)).collect()
    };
    let n1 = lift(v1)?;
    let n2 = lift(v2)?;
    let common: Vec<Mask> = n1.iter().copied().filter(|m| n2.contains(m)).collect();
    let shared_ground = v1.ground.embed(&ground, v1.ground.full())?
        & v2.ground.embed(&ground, v2.ground.full())?;
    let inner = RegularVine::new(ground.clone(), common)?.ideal(shared_ground);
    if inner.nodes.len() != n1.iter().filter(|m| n2.contains(m)).count()
        || !validate_vine(&inner).is_valid()
    {
        return Ok(None);
    }
    let mut nodes = n1;
    nodes.extend(n2.into_iter());
    nodes.push(ground.full());
    sort_masks(&mut nodes);
    nodes.dedup();
    Ok(Some(RegularVine::from_sorted(ground, nodes)))
}

pub fn is_d_vine(v: &RegularVine) -> Result<bool> {
    validate_vine(v).into_result()?;
    Ok((1..v.n()).all(|i| associated_tree_raw(v, i).is_path()))
}

pub fn is_c_vine(v: &RegularVine) -> Result<bool> {
    validate_vine(v).into_result()?;
    Ok((1..v.n()).all(|i| associated_tree_raw(v, i).is_star()))
}

/// Maximal chains from a singleton up to the ground set, in lexicographic
/// order of their node sequences.
pub fn maximal_chains(v: &RegularVine) -> Result<Vec<Vec<Mask>>> {
    validate_vine(v).into_result()?;
    Ok(chains_raw(v))
}

pub(crate) fn chains_raw(v: &RegularVine) -> Vec<Vec<Mask>> {
    if v.n() == 0 {
        return vec![];
    }
    let covers: BTreeMap<Mask, Vec<Mask>> = v
        .nodes
        .iter()
        .filter(|m| m.count_ones() >= 2)
        .map(|&m| (m, v.covered_by(m)))
        .collect();
    let mut out = Vec::new();
    fn down(m: Mask, covers: &BTreeMap<Mask, Vec<Mask>>, path: &mut Vec<Mask>, out: &mut Vec<Vec<Mask>>) {
        path.push(m);
        match covers.get(&m) {
            None => out.push(path.iter().rev().copied().collect()),
            Some(cs) => {
                for &c in cs {
                    down(c, covers, path, out);
                }
            }
        }
        path.pop();
    }
    down(v.ground.full(), &covers, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| crate::ground::subset_order(*x, *y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}

/// Number of maximal chains starting at each singleton, keyed by label.
pub fn chain_counts_from_atoms(v: &RegularVine) -> Result<BTreeMap<String, u64>> {
    validate_vine(v).into_result()?;
    let n = v.n();
    let mut count: BTreeMap<Mask, u64> = BTreeMap::new();
    if n == 0 {
        return Ok(BTreeMap::new());
    }
    count.insert(v.ground.full(), 1);
    // Walk from the top down; every node passes its count to the nodes it covers.
    for &m in v.nodes.iter().rev() {
        if m.count_ones() < 2 {
            continue;
        }
        let c = count.get(&m).copied().unwrap_or(0);
        for x in v.covered_by(m) {
            *count.entry(x).or_insert(0) += c;
        }
    }
    Ok((0..n)
        .map(|i| (v.ground.label(i).to_string(), count.get(&(1 << i)).copied().unwrap_or(0)))
        .collect())
}

/// The smallest node containing both labels.
pub fn join_node(v: &RegularVine, a: &str, b: &str) -> Result<Mask> {
    let i = v.ground.require(a)?;
    let j = v.ground.require(b)?;
    if i == j {
        return Err(Error::Argument("join needs two distinct labels".into()));
    }
    Ok(join_raw(v, i, j))
}

pub(crate) fn join_raw(v: &RegularVine, i: usize, j: usize) -> Mask {
    let want = 1 << i | 1 << j;
    v.nodes
        .iter()
        .copied()
        .find(|&m| m & want == want)
        .unwrap_or(0)
}

/// Smallest `k` such that all nodes of cardinality `k` share an element.
pub fn richness_via_vine(v: &RegularVine) -> Result<usize> {
    validate_vine(v).into_result()?;
    if v.n() == 0 {
        return Err(Error::Argument("richness needs a non-empty ground set".into()));
    }
    Ok((1..=v.n())
        .find(|&k| v.rank(k).fold(v.ground.full(), |acc, m| acc & m) != 0)
        .expect("the top node always qualifies"))
}

pub fn relabel_vine(v: &RegularVine, h: &Relabeling) -> Result<RegularVine> {
    let (ground, map) = h.apply(&v.ground)?;
    let nodes = v.nodes.iter().map(|&m| remap(m, &map)).collect();
    RegularVine::new(ground, nodes)
}

pub struct VineSpecies;

impl Species for VineSpecies {
    type Structure = RegularVine;
    const KIND: &'static str = "vine";

    fn ground(s: &RegularVine) -> &GroundSet {
        &s.ground
    }

    fn trivial(ground: GroundSet) -> Result<RegularVine> {
        match ground.len() {
            0 => Ok(RegularVine::from_sorted(ground, vec![])),
            1 => Ok(RegularVine::from_sorted(ground, vec![1])),
            _ => Err(Error::Argument("trivial structure needs at most one element".into())),
        }
    }

    fn validate(s: &RegularVine) -> ValidationReport {
        validate_vine(s)
    }

    fn split(s: &RegularVine) -> Result<SplitPair<RegularVine>> {
        let (left, right, a1, a2) = split_raw(s);
        Ok(SplitPair {
            left,
            right,
            removed: (s.ground.label(a1).into(), s.ground.label(a2).into()),
        })
    }

    fn merge(l: &RegularVine, r: &RegularVine) -> Result<Option<RegularVine>> {
        merge_vines(l, r)
    }

    fn relabel(s: &RegularVine, h: &Relabeling) -> Result<RegularVine> {
        relabel_vine(s, h)
    }
}
