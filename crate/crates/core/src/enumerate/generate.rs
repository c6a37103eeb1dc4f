//! Exhaustive generation of labeled regular vines, level by level: a tree on
//! the singletons from its Prüfer code, then at each higher level a spanning
//! tree of the graph joining nodes that cover a common node.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ground::{sort_masks, GroundSet, Mask};
use crate::vine::RegularVine;

/// Largest `n` for which exhaustive generation is allowed.
pub const GENERATE_CAP: usize = 7;

pub fn check_cap(n: usize) -> Result<()> {
    if n > GENERATE_CAP {
        return Err(Error::CapExceeded {
            what: "generation size",
            value: n,
            cap: GENERATE_CAP,
        });
    }
    Ok(())
}

/// All Prüfer codes of length `n - 2`, lexicographically.
fn prufer_codes(n: usize) -> Vec<Vec<u8>> {
    if n < 2 {
        return vec![];
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut c| {
            let mut code = vec![0u8; len];
            for k in (0..len).rev() {
                code[k] = (c % n) as u8;
                c /= n;
            }
            code
        })
        .collect()
}

fn prufer_edges(n: usize, code: &[u8]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c as usize] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (0..n).find(|&i| degree[i] == 1).unwrap();
        edges.push((leaf, c as usize));
        degree[leaf] -= 1;
        degree[c as usize] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Calls `f` with the edge index sets of every spanning tree, in a fixed
/// order.
fn spanning_trees(nv: usize, edges: &[(usize, usize)], f: &mut dyn FnMut(&[usize])) {
    fn find(p: &[usize; 16], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    fn connected(nv: usize, edges: &[(usize, usize)], chosen: &[usize], from: usize) -> bool {
        let mut p = [0usize; 16];
        for (i, x) in p.iter_mut().enumerate() {
            *x = i;
        }
        let mut comps = nv;
        let all = chosen.iter().copied().chain(from..edges.len());
        for e in all {
            let (a, b) = edges[e];
            let (ra, rb) = (find(&p, a), find(&p, b));
            if ra != rb {
                p[ra] = rb;
                comps -= 1;
            }
        }
        comps == 1
    }
    fn rec(
        nv: usize,
        edges: &[(usize, usize)],
        idx: usize,
        parent: [usize; 16],
        chosen: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if chosen.len() + 1 == nv {
            f(chosen);
            return;
        }
        if idx == edges.len() || chosen.len() + (edges.len() - idx) + 1 < nv {
            return;
        }
        let (a, b) = edges[idx];
        let (ra, rb) = (find(&parent, a), find(&parent, b));
        if ra != rb {
            let mut p = parent;
            p[ra] = rb;
            chosen.push(idx);
            rec(nv, edges, idx + 1, p, chosen, f);
            chosen.pop();
        }
        if connected(nv, edges, chosen, idx + 1) {
            rec(nv, edges, idx + 1, parent, chosen, f);
        }
    }
    assert!(nv <= 16);
    let mut p = [0usize; 16];
    for (i, x) in p.iter_mut().enumerate() {
        *x = i;
    }
    if nv == 1 {
        f(&[]);
        return;
    }
    rec(nv, edges, 0, p, &mut Vec::new(), f);
}

/// Extends a partial vine whose top level has vertices `verts`, each the
/// union of the two nodes in `kids`.
fn extend(
    verts: &[Mask],
    kids: &[(Mask, Mask)],
    acc: &mut Vec<Mask>,
    f: &mut dyn FnMut(&[Mask]),
) {
    if verts.len() == 1 {
        f(acc);
        return;
    }
    let m = verts.len();
    let mut edges = Vec::new();
    for p in 0..m {
        for q in p + 1..m {
            let (a, b) = kids[p];
            let (c, d) = kids[q];
            if a == c || a == d || b == c || b == d {
                edges.push((p, q));
            }
        }
    }
    spanning_trees(m, &edges, &mut |tree: &[usize]| {
        let next: Vec<Mask> = tree
            .iter()
            .map(|&e| verts[edges[e].0] | verts[edges[e].1])
            .collect();
        let next_kids: Vec<(Mask, Mask)> = tree
            .iter()
            .map(|&e| (verts[edges[e].0], verts[edges[e].1]))
            .collect();
        let before = acc.len();
        acc.extend_from_slice(&next);
        extend(&next, &next_kids, acc, f);
        acc.truncate(before);
    });
}

/// Runs the generator for one level-one tree.
fn from_code(n: usize, code: &[u8], f: &mut dyn FnMut(&[Mask])) {
    let edges = prufer_edges(n, code);
    let verts: Vec<Mask> = edges.iter().map(|&(a, b)| 1 << a | 1 << b).collect();
    let kids: Vec<(Mask, Mask)> = edges.iter().map(|&(a, b)| (1 << a, 1 << b)).collect();
    let mut acc: Vec<Mask> = (0..n).map(|i| 1 << i).collect();
    acc.extend_from_slice(&verts);
    extend(&verts, &kids, &mut acc, f);
}

/// Calls `f` with the node list (unsorted) of every labeled vine on `n`
/// elements, sequentially and in a fixed order.
pub fn for_each_vine_nodes(n: usize, f: &mut dyn FnMut(&[Mask])) -> Result<()> {
    check_cap(n)?;
    match n {
        0 => f(&[]),
        1 => f(&[1]),
        _ => {
            for code in prufer_codes(n) {
                from_code(n, &code, f);
            }
        }
    }
    Ok(())
}

/// Maps every labeled vine through `map` in parallel and folds the results
/// with `reduce`. Work is split by level-one tree.
pub fn par_fold_vines<T, M, R>(n: usize, init: impl Fn() -> T + Sync + Send, map: M, reduce: R) -> Result<T>
where
    T: Send,
    M: Fn(&mut T, &[Mask]) + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    check_cap(n)?;
    if n < 2 {
        let mut t = init();
        for_each_vine_nodes(n, &mut |nodes| map(&mut t, nodes))?;
        return Ok(t);
    }
    let codes = prufer_codes(n);
    Ok(codes
        .par_iter()
        .map(|code| {
            let mut t = init();
            from_code(n, code, &mut |nodes| map(&mut t, nodes));
            t
        })
        .reduce(&init, &reduce))
}

/// Number of labeled vines on `n` elements by exhaustive generation.
pub fn count_vines(n: usize, parallel: bool) -> Result<u64> {
    if parallel {
        par_fold_vines(n, || 0u64, |c, _| *c += 1, |a, b| a + b)
    } else {
        let mut c = 0u64;
        for_each_vine_nodes(n, &mut |_| c += 1)?;
        Ok(c)
    }
}

/// Every labeled vine on the ground set, in generation order.
pub fn generate_vines(ground: &GroundSet) -> Result<Vec<RegularVine>> {
    let mut out = Vec::new();
    for_each_vine_nodes(ground.len(), &mut |nodes| {
        let mut v = nodes.to_vec();
        sort_masks(&mut v);
        out.push(RegularVine::from_sorted(ground.clone(), v));
    })?;
    Ok(out)
}
