//! Brute-force oracles and sampling helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use splitmerge::ground::bits;
use splitmerge::{GroundSet, Mask, PreferenceDomain, Relabeling, RegularVine};

/// `n!/2 * 2^C(n-2,2)` for `n >= 2`.
pub fn labeled_count_oracle(n: usize) -> u128 {
    if n <= 1 {
        return 1;
    }
    let fact: u128 = (1..=n as u128).product();
    let e = (n - 2) * n.saturating_sub(3) / 2;
    fact / 2 * (1u128 << e)
}

/// Every triple has an alternative never ranked last among the three.
pub fn never_bottom_oracle(d: &PreferenceDomain) -> bool {
    let n = d.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let mut last = [false; 3];
                for p in d.preferences() {
                    let pos = |x: usize| p.iter().position(|&y| y as usize == x).unwrap();
                    let trio = [a, b, c];
                    let k = (0..3).max_by_key(|&i| pos(trio[i])).unwrap();
                    last[k] = true;
                }
                if last.iter().all(|&x| x) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn first_rank_oracle(d: &PreferenceDomain) -> BTreeMap<String, u64> {
    let g = d.alternatives();
    let mut out: BTreeMap<String, u64> = g.labels().iter().map(|l| (l.clone(), 0)).collect();
    for p in d.preferences() {
        *out.get_mut(g.label(p[0] as usize)).unwrap() += 1;
    }
    out
}

/// Largest `k` such that every alternative occupies every position `< k`.
pub fn richness_oracle(d: &PreferenceDomain) -> usize {
    let n = d.n();
    (0..n)
        .take_while(|&pos| (0..n).all(|x| d.preferences().iter().any(|p| p[pos] as usize == x)))
        .count()
}

/// The order of the path formed by the two-element nodes of a D-vine.
pub fn path_order(v: &RegularVine) -> Option<Vec<String>> {
    let n = v.n();
    if n <= 1 {
        return Some(v.ground().labels().to_vec());
    }
    let pairs: Vec<Mask> = v.nodes().iter().copied().filter(|m| m.count_ones() == 2).collect();
    let deg = |x: usize| pairs.iter().filter(|&&m| m >> x & 1 == 1).count();
    let start = (0..n).find(|&x| deg(x) == 1)?;
    let mut order = vec![start];
    let mut used: Mask = 1 << start;
    while order.len() < n {
        let cur = *order.last().unwrap();
        let next = pairs.iter().find(|&&m| m >> cur & 1 == 1 && m & !used != 0)?;
        let nx = (next & !used).trailing_zeros() as usize;
        used |= 1 << nx;
        order.push(nx);
    }
    Some(order.into_iter().map(|i| v.ground().label(i).to_string()).collect())
}

/// Injective relabeling of `g` into a random subset of `a..z`, in random
/// order.
pub fn random_relabeling<R: Rng>(rng: &mut R, g: &GroundSet) -> Relabeling {
    let mut pool: Vec<String> = (b'a'..=b'z').map(|c| (c as char).to_string()).collect();
    pool.shuffle(rng);
    Relabeling::new(g.labels().iter().cloned().zip(pool)).unwrap()
}

/// A uniformly random permutation of the standard labels.
pub fn random_permutation<R: Rng>(rng: &mut R, g: &GroundSet) -> Relabeling {
    let mut target = g.labels().to_vec();
    target.shuffle(rng);
    Relabeling::new(g.labels().iter().cloned().zip(target)).unwrap()
}

/// Closure under intersection of `family` together with the empty set, the
/// full set and all singletons of `0..n`. The result is a lattice with the
/// singletons as atoms.
pub fn intersection_closure(n: usize, family: &[Mask]) -> Vec<Mask> {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out: Vec<Mask> = vec![0, full];
    out.extend((0..n).map(|i| 1u64 << i));
    out.extend(family.iter().copied());
    out.sort_unstable();
    out.dedup();
    loop {
        let mut next = out.clone();
        for &x in &out {
            for &y in &out {
                next.push(x & y);
            }
        }
        next.sort_unstable();
        next.dedup();
        if next.len() == out.len() {
            return out;
        }
        out = next;
    }
}

/// Induced copy of the Boolean lattice on three atoms, found by checking
/// every triple of pairwise incomparable members against every triple of
/// candidate pairwise joins.
pub fn induced_b3_oracle(family: &[Mask]) -> bool {
    let le = |x: Mask, y: Mask| x & !y == 0;
    let inc = |x: Mask, y: Mask| !le(x, y) && !le(y, x);
    let f = family;
    for (i, &x1) in f.iter().enumerate() {
        for (j, &x2) in f.iter().enumerate().skip(i + 1) {
            if !inc(x1, x2) {
                continue;
            }
            for &x3 in f.iter().skip(j + 1) {
                if !inc(x1, x3) || !inc(x2, x3) {
                    continue;
                }
                let xs = [x1, x2, x3];
                let cand = |k: usize| -> Vec<Mask> {
                    let (a, b, c) = (xs[(k + 1) % 3], xs[(k + 2) % 3], xs[k]);
                    f.iter().copied().filter(|&y| le(a, y) && le(b, y) && !le(c, y)).collect()
                };
                let (c0, c1, c2) = (cand(0), cand(1), cand(2));
                for &y0 in &c0 {
                    for &y1 in &c1 {
                        for &y2 in &c2 {
                            if inc(y0, y1) && inc(y0, y2) && inc(y1, y2) {
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

/// The members of `v` as label sets, for readable assertion messages.
pub fn show(v: &RegularVine) -> String {
    v.nodes().iter().map(|&m| v.ground().show(m)).collect::<Vec<_>>().join(" ")
}

pub fn mask_bits(m: Mask) -> Vec<usize> {
    bits(m).collect()
}
