//! Preference domains: sets of linear orders, Condorcet cycles, Arrow's
//! single-peakedness and Black's single-peakedness.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result, ValidationReport};
use crate::ground::{bits, GroundSet, Mask, Relabeling};
use crate::species::{common_ground, Species, SplitPair};

/// A linear order on ground indices, best first.
pub type Preference = Vec<u8>;

/// A set of linear orders over a common set of alternatives. Preferences are
/// stored sorted and without repetition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PreferenceDomain {
    alternatives: GroundSet,
    prefs: Vec<Preference>,
}

impl PreferenceDomain {
    pub fn new<S: AsRef<str>>(alternatives: GroundSet, prefs: &[Vec<S>]) -> Result<Self> {
        let n = alternatives.len();
        let mut out = Vec::with_capacity(prefs.len());
        for p in prefs {
            if p.len() != n {
                return Err(Error::Malformed(format!(
                    "preference of length {} over {n} alternatives",
                    p.len()
                )));
            }
            let mask = alternatives.mask_of_labels(p)?;
            debug_assert_eq!(mask, alternatives.full());
            out.push(
                p.iter()
                    .map(|l| alternatives.index_of(l.as_ref()).unwrap() as u8)
                    .collect::<Preference>(),
            );
        }
        out.sort();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Malformed("duplicate preference".into()));
        }
        if n == 0 {
            out.clear();
        }
        Ok(PreferenceDomain {
            alternatives,
            prefs: out,
        })
    }

    /// From index preferences; sorts and removes repeats.
    pub(crate) fn from_indexed(alternatives: GroundSet, mut prefs: Vec<Preference>) -> Self {
        if alternatives.is_empty() {
            prefs.clear();
        }
        prefs.sort();
        prefs.dedup();
        PreferenceDomain {
            alternatives,
            prefs,
        }
    }

    pub fn alternatives(&self) -> &GroundSet {
        &self.alternatives
    }

    pub fn n(&self) -> usize {
        self.alternatives.len()
    }

    pub fn preferences(&self) -> &[Preference] {
        &self.prefs
    }

    pub fn len(&self) -> usize {
        self.prefs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefs.is_empty()
    }

    pub fn contains(&self, p: &[u8]) -> bool {
        self.prefs.binary_search_by(|x| x.as_slice().cmp(p)).is_ok()
    }

    pub fn labels_of(&self, p: &[u8]) -> Vec<String> {
        p.iter()
            .map(|&i| self.alternatives.label(i as usize).to_string())
            .collect()
    }

    pub fn preference_labels(&self) -> Vec<Vec<String>> {
        self.prefs.iter().map(|p| self.labels_of(p)).collect()
    }

    /// Compact rendering of one preference, e.g. `"bcad"`.
    pub fn show(&self, p: &[u8]) -> String {
        let sep = if self.alternatives.labels().iter().all(|l| l.chars().count() == 1) {
            ""
        } else {
            ","
        };
        self.labels_of(p).join(sep)
    }

    /// Text table, one column per preference, rank one in the top row.
    pub fn table(&self) -> String {
        let w = self
            .alternatives
            .labels()
            .iter()
            .map(|l| l.chars().count())
            .max()
            .unwrap_or(1);
        let mut s = String::new();
        for r in 0..self.n() {
            let row: Vec<String> = self
                .prefs
                .iter()
                .map(|p| format!("{:>w$}", self.alternatives.label(p[r] as usize)))
                .collect();
            s.push_str(row.join(" ").trim_end());
            s.push('\n');
        }
        s
    }
}

/// Restriction of every preference to the alternatives in `mask`, with the
/// result re-indexed on the sub-ground-set.
fn restrict_mask(d: &PreferenceDomain, mask: Mask) -> PreferenceDomain {
    let mut pos = vec![u8::MAX; d.n()];
    for (p, i) in bits(mask).enumerate() {
        pos[i] = p as u8;
    }
    let prefs = d
        .prefs
        .iter()
        .map(|p| {
            p.iter()
                .filter(|&&x| mask >> x & 1 == 1)
                .map(|&x| pos[x as usize])
                .collect()
        })
        .collect();
    PreferenceDomain::from_indexed(d.alternatives.restrict(mask), prefs)
}

pub fn restrict_domain<S: AsRef<str>>(d: &PreferenceDomain, subset: &[S]) -> Result<PreferenceDomain> {
    let mask = d.alternatives.mask_of_labels(subset).map_err(|e| match e {
        Error::Malformed(m) => Error::Argument(m),
        e => e,
    })?;
    Ok(restrict_mask(d, mask))
}

/// Three preferences ranking some triple cyclically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondorcetCycle {
    pub triple: [String; 3],
    pub preferences: [Vec<String>; 3],
}

fn position_table(p: &[u8]) -> Vec<usize> {
    let mut pos = vec![0; p.len()];
    for (r, &x) in p.iter().enumerate() {
        pos[x as usize] = r;
    }
    pos
}

/// Code of the restriction of an order to `x < y < z`: one of the six
/// permutations encoded by the ranks.
fn triple_code(pos: &[usize], t: [usize; 3]) -> [u8; 3] {
    let mut order = t;
    order.sort_by_key(|&a| pos[a]);
    let idx = |a: usize| t.iter().position(|&b| b == a).unwrap() as u8;
    [idx(order[0]), idx(order[1]), idx(order[2])]
}

pub fn find_condorcet_cycle(d: &PreferenceDomain) -> Option<CondorcetCycle> {
    let n = d.n();
    let tables: Vec<Vec<usize>> = d.prefs.iter().map(|p| position_table(p)).collect();
    let cycles = [
        [[0u8, 1, 2], [1, 2, 0], [2, 0, 1]],
        [[0u8, 2, 1], [2, 1, 0], [1, 0, 2]],
    ];
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let t = [x, y, z];
                let mut seen: BTreeMap<[u8; 3], usize> = BTreeMap::new();
                for (k, pos) in tables.iter().enumerate() {
                    seen.entry(triple_code(pos, t)).or_insert(k);
                }
                for c in &cycles {
                    if c.iter().all(|o| seen.contains_key(o)) {
                        let name = |i: usize| d.alternatives.label(i).to_string();
                        return Some(CondorcetCycle {
                            triple: [name(x), name(y), name(z)],
                            preferences: [0, 1, 2].map(|k| d.labels_of(&d.prefs[seen[&c[k]]])),
                        });
                    }
                }
            }
        }
    }
    None
}

/// A triple in which every alternative is ranked last by some preference.
pub fn aspd_violation(d: &PreferenceDomain) -> Option<[String; 3]> {
    aspd_violation_idx(d).map(|t| t.map(|i| d.alternatives.label(i).to_string()))
}

fn aspd_violation_idx(d: &PreferenceDomain) -> Option<[usize; 3]> {
    let n = d.n();
    let tables: Vec<Vec<usize>> = d.prefs.iter().map(|p| position_table(p)).collect();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let t = [x, y, z];
                let mut bottoms = 0u8;
                for pos in &tables {
                    let last = (0..3).max_by_key(|&k| pos[t[k]]).unwrap();
                    bottoms |= 1 << last;
                }
                if bottoms == 0b111 {
                    return Some(t);
                }
            }
        }
    }
    None
}

/// Never-bottom criterion: every triple has an alternative that is never
/// ranked last among the three.
pub fn is_aspd(d: &PreferenceDomain) -> bool {
    aspd_violation_idx(d).is_none()
}

/// An ASPD with the maximum possible size `2^(n-1)`.
pub fn is_maximal_aspd(d: &PreferenceDomain) -> bool {
    let n = d.n();
    if n == 0 {
        return d.is_empty();
    }
    n < 64 && d.len() as u64 == 1u64 << (n - 1) && is_aspd(d)
}

/// Maximality by definition: no further order can be added without losing
/// the ASPD property. Exponential, meant as a cross-check for small `n`.
pub fn is_maximal_aspd_by_definition(d: &PreferenceDomain) -> bool {
    if !is_aspd(d) {
        return false;
    }
    let n = d.n();
    let mut perm: Vec<u8> = (0..n as u8).collect();
    let mut extended = d.prefs.clone();
    loop {
        if !d.contains(&perm) {
            extended.push(perm.clone());
            let e = PreferenceDomain::from_indexed(d.alternatives.clone(), extended.clone());
            if is_aspd(&e) {
                return false;
            }
            extended.pop();
        }
        if !next_permutation(&mut perm) {
            return true;
        }
    }
}

pub(crate) fn next_permutation(p: &mut [u8]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every preference is single-peaked on `axis` (given as indices).
fn single_peaked_on(d: &PreferenceDomain, axis: &[u8]) -> bool {
    let n = d.n();
    let mut where_on_axis = vec![0usize; n];
    for (k, &a) in axis.iter().enumerate() {
        where_on_axis[a as usize] = k;
    }
    d.prefs.iter().all(|p| {
        // top-k sets are intervals of the axis
        let mut lo = where_on_axis[p[0] as usize];
        let mut hi = lo;
        for &x in &p[1..] {
            let k = where_on_axis[x as usize];
            if k + 1 == lo {
                lo = k;
            } else if k == hi + 1 {
                hi = k;
            } else {
                return false;
            }
        }
        true
    })
}

/// A societal axis on which every preference is single-peaked, if one
/// exists. Of an axis and its reversal the lexicographically smaller label
/// sequence is reported.
pub fn is_bspd(d: &PreferenceDomain) -> Option<Vec<String>> {
    let n = d.n();
    if n == 0 {
        return Some(vec![]);
    }
    let canon = |axis: Vec<u8>| {
        let rev: Vec<u8> = axis.iter().rev().copied().collect();
        let a = d.labels_of(&axis);
        let r = d.labels_of(&rev);
        a.min(r)
    };
    // A domain containing an order and its reversal can only be
    // single-peaked on that order.
    for p in &d.prefs {
        let rev: Vec<u8> = p.iter().rev().copied().collect();
        if d.contains(&rev) {
            return single_peaked_on(d, p).then(|| canon(p.clone()));
        }
    }
    let bottoms: BTreeSet<u8> = d.prefs.iter().map(|p| p[n - 1]).collect();
    if bottoms.len() > 2 {
        return None;
    }
    let mut axis: Vec<u8> = (0..n as u8).collect();
    loop {
        let ends_ok = bottoms.iter().all(|&b| b == axis[0] || b == axis[n - 1]);
        if ends_ok && axis[0] <= axis[n - 1] && single_peaked_on(d, &axis) {
            return Some(canon(axis));
        }
        if !next_permutation(&mut axis) {
            return None;
        }
    }
}

/// Alternatives ranked last by some preference.
pub fn bottom_alternatives(d: &PreferenceDomain) -> BTreeSet<String> {
    let n = d.n();
    d.prefs
        .iter()
        .map(|p| d.alternatives.label(p[n - 1] as usize).to_string())
        .collect()
}

fn require_maximal(d: &PreferenceDomain) -> Result<()> {
    if let Some(t) = aspd_violation(d) {
        return Err(Error::Invalid(crate::error::Violation::new(
            "domain.never_bottom",
            format!("every element of {} is ranked last somewhere", t.join("")),
        )));
    }
    if !is_maximal_aspd(d) {
        return Err(Error::Invalid(crate::error::Violation::new(
            "domain.maximal",
            format!("{} preferences, expected {}", d.len(), 1u64 << d.n().saturating_sub(1)),
        )));
    }
    Ok(())
}

/// Bottom alternatives of a maximal ASPD as ascending indices.
fn bottom_pair(d: &PreferenceDomain) -> Result<(usize, usize)> {
    let n = d.n();
    let b: BTreeSet<usize> = d.prefs.iter().map(|p| p[n - 1] as usize).collect();
    let v: Vec<usize> = b.into_iter().collect();
    match v.as_slice() {
        [x, y] => Ok((*x, *y)),
        _ => Err(Error::Internal(format!(
            "maximal domain with {} bottom alternatives",
            v.len()
        ))),
    }
}

/// Preferences ranking `last` at the bottom, restricted to the others.
fn block(d: &PreferenceDomain, last: usize) -> PreferenceDomain {
    let n = d.n();
    let kept: Vec<Preference> = d
        .prefs
        .iter()
        .filter(|p| p[n - 1] as usize == last)
        .cloned()
        .collect();
    let sub = PreferenceDomain::from_indexed(d.alternatives.clone(), kept);
    restrict_mask(&sub, d.alternatives.full() & !(1 << last))
}

fn split_raw(d: &PreferenceDomain) -> Result<(PreferenceDomain, PreferenceDomain, usize, usize)> {
    let (a1, a2) = bottom_pair(d)?;
    Ok((block(d, a1), block(d, a2), a1, a2))
}

/// Returns `(D1, D2, D')` where `D1` (resp. `D2`) collects the preferences
/// ranking `a1` (resp. `a2`) last, restricted to the other alternatives, and
/// `a1 < a2` are the two bottom alternatives.
pub fn split_domain(
    d: &PreferenceDomain,
) -> Result<(PreferenceDomain, PreferenceDomain, PreferenceDomain)> {
    if d.n() < 2 {
        return Err(Error::Argument("split needs at least two alternatives".into()));
    }
    require_maximal(d)?;
    let (d1, d2, a1, a2) = split_raw(d)?;
    let full = d.alternatives.full();
    let shared = restrict_mask(d, full & !(1 << a1) & !(1 << a2));
    Ok((d1, d2, shared))
}

/// Union of `D1` with `a1` appended and `D2` with `a2` appended, where `D1`
/// lives on `A \ {a1}`, when `D1` and `D2` induce the same domain on
/// `A \ {a1, a2}` through their blocks ending in the other element.
pub fn merge_domains(d1: &PreferenceDomain, d2: &PreferenceDomain) -> Result<Option<PreferenceDomain>> {
    let (ground, x, y) = common_ground(&d1.alternatives, &d2.alternatives)?;
    // d1 lacks x and d2 lacks y
    let lift = |d: &PreferenceDomain, missing: &str| -> Vec<Preference> {
        let m = ground.index_of(missing).unwrap() as u8;
        d.prefs
            .iter()
            .map(|p| {
                p.iter()
                    .map(|&i| ground.index_of(d.alternatives.label(i as usize)).unwrap() as u8)
                    .chain(std::iter::once(m))
                    .collect()
            })
            .collect()
    };
    let y_in_d1 = d1.alternatives.index_of(&y).unwrap();
    let x_in_d2 = d2.alternatives.index_of(&x).unwrap();
    let n1 = d1.n();
    if n1 > 0 {
        if !d1.prefs.iter().any(|p| p[n1 - 1] as usize == y_in_d1)
            || !d2.prefs.iter().any(|p| p[n1 - 1] as usize == x_in_d2)
        {
            return Ok(None);
        }
        let b1 = block(d1, y_in_d1);
        let b2 = block(d2, x_in_d2);
        if b1 != b2 {
            return Ok(None);
        }
    }
    let mut prefs = lift(d1, &x);
    prefs.extend(lift(d2, &y));
    Ok(Some(PreferenceDomain::from_indexed(ground, prefs)))
}

/// Smallest 1-based position `i` at which some preference ranks `x` and `y`
/// at positions `i` and `i + 1`.
pub fn topmost_contiguous_position(d: &PreferenceDomain, x: &str, y: &str) -> Result<usize> {
    let i = d.alternatives.require(x)? as u8;
    let j = d.alternatives.require(y)? as u8;
    if i == j {
        return Err(Error::Argument("contiguity needs two distinct labels".into()));
    }
    topmost_raw(d, i, j).ok_or_else(|| {
        Error::Argument(format!("{x} and {y} are never adjacent in the domain"))
    })
}

pub(crate) fn topmost_raw(d: &PreferenceDomain, i: u8, j: u8) -> Option<usize> {
    d.prefs
        .iter()
        .filter_map(|p| {
            p.windows(2)
                .position(|w| (w[0] == i && w[1] == j) || (w[0] == j && w[1] == i))
        })
        .min()
        .map(|k| k + 1)
}

/// How many preferences rank each alternative first; zero counts included.
pub fn first_rank_distribution(d: &PreferenceDomain) -> BTreeMap<String, u64> {
    let mut m: BTreeMap<String, u64> = d
        .alternatives
        .labels()
        .iter()
        .map(|l| (l.clone(), 0))
        .collect();
    for p in &d.prefs {
        *m.get_mut(d.alternatives.label(p[0] as usize)).unwrap() += 1;
    }
    m
}

/// Largest `k` such that for every `j <= k` each alternative is ranked
/// `j`-th by some preference.
pub fn richness_direct(d: &PreferenceDomain) -> usize {
    let n = d.n();
    let full = d.alternatives.full();
    (0..n)
        .take_while(|&r| d.prefs.iter().fold(0u64, |acc, p| acc | 1 << p[r]) == full)
        .count()
}

pub fn relabel_domain(d: &PreferenceDomain, h: &Relabeling) -> Result<PreferenceDomain> {
    let (ground, map) = h.apply(&d.alternatives)?;
    let prefs = d
        .prefs
        .iter()
        .map(|p| p.iter().map(|&i| map[i as usize] as u8).collect())
        .collect();
    Ok(PreferenceDomain::from_indexed(ground, prefs))
}

/// Species of maximal Arrow's single-peaked domains.
pub struct DomainSpecies;

impl Species for DomainSpecies {
    type Structure = PreferenceDomain;
    const KIND: &'static str = "domain";

    fn ground(s: &PreferenceDomain) -> &GroundSet {
        &s.alternatives
    }

    fn trivial(ground: GroundSet) -> Result<PreferenceDomain> {
        match ground.len() {
            0 => Ok(PreferenceDomain::from_indexed(ground, vec![])),
            1 => Ok(PreferenceDomain::from_indexed(ground, vec![vec![0]])),
            _ => Err(Error::Argument("trivial structure needs at most one element".into())),
        }
    }

    fn validate(s: &PreferenceDomain) -> ValidationReport {
        match require_maximal(s) {
            Ok(()) => ValidationReport::ok(),
            Err(Error::Invalid(v)) => ValidationReport { violations: vec![v] },
            Err(e) => {
                let mut r = ValidationReport::ok();
                r.push("domain.maximal", e.to_string());
                r
            }
        }
    }

    fn split(s: &PreferenceDomain) -> Result<SplitPair<PreferenceDomain>> {
        let (left, right, a1, a2) = split_raw(s)?;
        Ok(SplitPair {
            left,
            right,
            removed: (
                s.alternatives.label(a1).into(),
                s.alternatives.label(a2).into(),
            ),
        })
    }

    fn merge(l: &PreferenceDomain, r: &PreferenceDomain) -> Result<Option<PreferenceDomain>> {
        merge_domains(l, r)
    }

    fn relabel(s: &PreferenceDomain, h: &Relabeling) -> Result<PreferenceDomain> {
        relabel_domain(s, h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{d41, d42, domain, five_domain, intro_domain};


    #[test]
    fn three_element_examples() {
        let d1 = domain(&["abc", "bca", "cab"]);
        assert!(find_condorcet_cycle(&d1).is_some());
        assert!(!is_aspd(&d1));
        let d2 = domain(&["abc", "acb", "cab", "cba"]);
        assert!(find_condorcet_cycle(&d2).is_none());
        assert!(!is_aspd(&d2));
        let d3 = domain(&["abc", "bac", "bca", "cba"]);
        assert!(is_aspd(&d3));
        assert!(is_maximal_aspd(&d3));
        assert_eq!(is_bspd(&d3).unwrap(), ["a", "b", "c"]);
    }

    #[test]
    fn maximality_by_size_matches_definition() {
        for d in [intro_domain(), d41(), d42(), five_domain()] {
            assert!(is_maximal_aspd(&d));
            assert!(is_maximal_aspd_by_definition(&d));
        }
        let small = domain(&["abcd", "bacd", "bcad"]);
        assert!(is_aspd(&small));
        assert!(!is_maximal_aspd(&small));
        assert!(!is_maximal_aspd_by_definition(&small));
    }

    #[test]
    fn d41_d42_statistics() {
        assert!(is_bspd(&d41()).is_some());
        assert!(is_bspd(&d42()).is_none());
        let f = first_rank_distribution(&d41());
        assert_eq!(f.values().copied().collect::<Vec<_>>(), [1, 3, 3, 1]);
        let f = first_rank_distribution(&d42());
        assert_eq!(f.values().copied().collect::<Vec<_>>(), [4, 2, 1, 1]);
        assert_eq!(richness_direct(&d41()), 3);
        assert_eq!(richness_direct(&d42()), 2);
        let b: Vec<String> = bottom_alternatives(&d41()).into_iter().collect();
        assert_eq!(b, ["a", "d"]);
        let r = restrict_domain(&d41(), &["a", "b", "c"]).unwrap();
        assert_eq!(r, domain(&["abc", "bac", "bca", "cba"]));
    }

    #[test]
    fn five_element_split_matches_worked_example() {
        let (d1, d2, dp) = split_domain(&five_domain()).unwrap();
        // a1 = a, a2 = e
        assert_eq!(d1, domain(&["bcde", "cbde", "cdbe", "dcbe", "cdeb", "dceb", "cedb", "ecdb"]));
        assert_eq!(d2, d41());
        assert_eq!(dp, domain(&["bcd", "cbd", "cdb", "dcb"]));
        assert_eq!(merge_domains(&d1, &d2).unwrap(), Some(five_domain()));
        assert_eq!(merge_domains(&d2, &d1).unwrap(), Some(five_domain()));
    }

    #[test]
    fn contiguity_positions() {
        let d = five_domain();
        assert_eq!(topmost_contiguous_position(&d, "a", "c").unwrap(), 2);
        assert_eq!(topmost_contiguous_position(&d, "a", "e").unwrap(), 4);
        assert!(topmost_contiguous_position(&d, "a", "a").is_err());
    }

    #[test]
    fn next_permutation_enumerates_all() {
        let mut p = vec![0u8, 1, 2, 3];
        let mut c = 1;
        while next_permutation(&mut p) {
            c += 1;
        }
        assert_eq!(c, 24);
    }
}
