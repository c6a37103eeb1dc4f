//! Extremal lattices, the doubling construction and binary matrices without
//! triangles.

use crate::enumerate::canonical;
use crate::error::{Error, Result, ValidationReport};
use crate::ground::{bits, remap, sort_masks, subset_order, GroundSet, Mask};
use crate::vine::{validate_vine, RegularVine};

/// A finite family of subsets ordered by inclusion. [`validate_lattice`]
/// checks that it is a lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundedLattice {
    ground: GroundSet,
    elements: Vec<Mask>,
}

impl BoundedLattice {
    pub fn new(ground: GroundSet, mut elements: Vec<Mask>) -> Result<Self> {
        let full = ground.full();
        if elements.iter().any(|&m| m & !full != 0) {
            return Err(Error::Malformed("element outside the ground set".into()));
        }
        sort_masks(&mut elements);
        if elements.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Malformed("duplicate element".into()));
        }
        Ok(BoundedLattice { ground, elements })
    }

    pub fn from_labels<S: AsRef<str>>(ground: GroundSet, elements: &[Vec<S>]) -> Result<Self> {
        let masks = elements
            .iter()
            .map(|e| ground.mask_of_labels(e))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, masks)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn elements(&self) -> &[Mask] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element_labels(&self) -> Vec<Vec<String>> {
        self.elements.iter().map(|&m| self.ground.labels_of(m)).collect()
    }

    /// Least element above both, if unique.
    pub fn join(&self, x: Mask, y: Mask) -> Option<Mask> {
        let ups: Vec<Mask> = self
            .elements
            .iter()
            .copied()
            .filter(|&z| (x | y) & !z == 0)
            .collect();
        ups.iter().copied().find(|&z| ups.iter().all(|&w| z & !w == 0))
    }

    /// Greatest element below both, if unique.
    pub fn meet(&self, x: Mask, y: Mask) -> Option<Mask> {
        let downs: Vec<Mask> = self
            .elements
            .iter()
            .copied()
            .filter(|&z| z & !x == 0 && z & !y == 0)
            .collect();
        downs.iter().copied().find(|&z| downs.iter().all(|&w| w & !z == 0))
    }

    pub fn bottom(&self) -> Option<Mask> {
        self.elements
            .iter()
            .copied()
            .find(|&z| self.elements.iter().all(|&w| z & !w == 0))
    }

    pub fn top(&self) -> Option<Mask> {
        self.elements
            .iter()
            .copied()
            .find(|&z| self.elements.iter().all(|&w| w & !z == 0))
    }

    /// Elements covered by `m` within the family.
    pub fn lower_covers(&self, m: Mask) -> Vec<Mask> {
        let below: Vec<Mask> = self
            .elements
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

    /// Elements covering exactly one element.
    pub fn join_irreducibles(&self) -> Vec<Mask> {
        self.elements
            .iter()
            .copied()
            .filter(|&m| self.lower_covers(m).len() == 1)
            .collect()
    }
}

pub fn validate_lattice(l: &BoundedLattice) -> ValidationReport {
    let mut r = ValidationReport::ok();
    if l.elements.is_empty() {
        r.push("lattice.bounds", "empty family");
        return r;
    }
    for (k, &x) in l.elements.iter().enumerate() {
        for &y in &l.elements[k + 1..] {
            if l.join(x, y).is_none() {
                r.push(
                    "lattice.join",
                    format!("{} and {} have no least upper bound", l.ground.show(x), l.ground.show(y)),
                );
                return r;
            }
            if l.meet(x, y).is_none() {
                r.push(
                    "lattice.meet",
                    format!("{} and {} have no greatest lower bound", l.ground.show(x), l.ground.show(y)),
                );
                return r;
            }
        }
    }
    r
}

/// Eight elements forming an induced copy of the Boolean lattice on three
/// atoms: bottom, three atoms, three co-atoms, top. Co-atom `k` lies above
/// every atom except atom `2 - k`.
pub type B3Witness = [Mask; 8];

/// Searches directly for an induced Boolean lattice of rank three.
pub fn find_b3_direct(l: &BoundedLattice) -> Option<B3Witness> {
    let (bot, top) = (l.bottom()?, l.top()?);
    let e = &l.elements;
    let le = |a: Mask, b: Mask| a & !b == 0;
    let inc = |a: Mask, b: Mask| !le(a, b) && !le(b, a);
    for (i, &x1) in e.iter().enumerate() {
        for (j, &x2) in e.iter().enumerate().skip(i + 1) {
            if !inc(x1, x2) {
                continue;
            }
            for &x3 in e.iter().skip(j + 1) {
                if !inc(x1, x3) || !inc(x2, x3) {
                    continue;
                }
                let xs = [x1, x2, x3];
                // y[k] lies above the two atoms other than xs[k]
                let cand: Vec<Vec<Mask>> = (0..3)
                    .map(|k| {
                        let need = xs[(k + 1) % 3] | xs[(k + 2) % 3];
                        e.iter()
                            .copied()
                            .filter(|&y| le(need, y) && !le(xs[k], y))
                            .collect()
                    })
                    .collect();
                for &y0 in &cand[0] {
                    for &y1 in &cand[1] {
                        if !inc(y0, y1) {
                            continue;
                        }
                        for &y2 in &cand[2] {
                            if inc(y0, y2) && inc(y1, y2) {
                                return Some([bot, x1, x2, x3, y2, y1, y0, top]);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// B(3)-freeness with a witness when it fails. Families holding every
/// singleton use the triangle criterion on the incidence matrix, others the
/// direct search.
pub fn is_b3_free(l: &BoundedLattice) -> Result<Option<B3Witness>> {
    if let Some(v) = validate_lattice(l).first() {
        return Err(Error::Argument(format!("not a lattice: {v}")));
    }
    let n = l.ground.len();
    let singletons = (0..n).all(|i| l.elements.contains(&(1 << i)));
    if !singletons {
        return Ok(find_b3_direct(l));
    }
    let m = lattice_to_matrix(l);
    Ok(find_triangle(&m).map(|t| {
        let [r1, r2, r3] = t.rows;
        [
            l.bottom().unwrap(),
            1 << r1,
            1 << r2,
            1 << r3,
            m.columns[t.columns[0]],
            m.columns[t.columns[1]],
            m.columns[t.columns[2]],
            l.top().unwrap(),
        ]
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalReport {
    pub size: usize,
    pub expected_size: usize,
    pub join_irreducibles: usize,
    pub b3_free: bool,
    pub extremal: bool,
}

/// `(n,3)`-extremality: B(3)-free, at most `n` join-irreducibles and
/// `1 + n + n(n-1)/2` elements.
pub fn is_extremal_lattice(l: &BoundedLattice, n: usize) -> Result<ExtremalReport> {
    let b3_free = is_b3_free(l)?.is_none();
    let ji = l.join_irreducibles().len();
    let expected_size = 1 + n + n * n.saturating_sub(1) / 2;
    Ok(ExtremalReport {
        size: l.len(),
        expected_size,
        join_irreducibles: ji,
        b3_free,
        extremal: b3_free && ji <= n && l.len() == expected_size,
    })
}

/// The vine with an empty set adjoined as bottom.
pub fn vine_to_lattice(v: &RegularVine) -> Result<BoundedLattice> {
    validate_vine(v).into_result()?;
    let mut e = vec![0];
    e.extend_from_slice(v.nodes());
    Ok(BoundedLattice {
        ground: v.ground().clone(),
        elements: e,
    })
}

/// Removes the bottom of an extremal lattice realised by subsets.
pub fn lattice_to_vine(l: &BoundedLattice) -> Result<RegularVine> {
    if l.elements.first() != Some(&0) {
        return Err(Error::Argument("lattice lacks the empty set as bottom".into()));
    }
    let v = RegularVine::new(l.ground.clone(), l.elements[1..].to_vec())?;
    validate_vine(&v).into_result()?;
    Ok(v)
}

fn check_maximal_chain(l: &BoundedLattice, chain: &[Mask]) -> Result<()> {
    let bad = |m: &str| Err(Error::Argument(format!("not a maximal chain: {m}")));
    if chain.first() != l.bottom().as_ref() || chain.last() != l.top().as_ref() {
        return bad("must run from bottom to top");
    }
    for w in chain.windows(2) {
        if !l.elements.contains(&w[1]) || !l.lower_covers(w[1]).contains(&w[0]) {
            return bad("consecutive elements must form covers");
        }
    }
    Ok(())
}

/// Maximal chains from bottom to top.
pub fn lattice_chains(l: &BoundedLattice) -> Vec<Vec<Mask>> {
    let Some(bot) = l.bottom() else { return vec![] };
    let Some(top) = l.top() else { return vec![] };
    let mut out = Vec::new();
    fn rec(l: &BoundedLattice, m: Mask, bot: Mask, path: &mut Vec<Mask>, out: &mut Vec<Vec<Mask>>) {
        path.push(m);
        if m == bot {
            out.push(path.iter().rev().copied().collect());
        } else {
            for c in l.lower_covers(m) {
                rec(l, c, bot, path, out);
            }
        }
        path.pop();
    }
    rec(l, top, bot, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| subset_order(*x, *y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}

/// Doubles the lattice along a maximal chain. The copy of each chain
/// element is realised by adding the smallest unused label.
pub fn doubling(l: &BoundedLattice, chain: &[Mask]) -> Result<BoundedLattice> {
    check_maximal_chain(l, chain)?;
    let fresh = l.ground.fresh_label();
    let (ground, map) = l.ground.with_label(&fresh)?;
    let f = ground.index_of(&fresh).unwrap();
    let mut elements: Vec<Mask> = l.elements.iter().map(|&m| remap(m, &map)).collect();
    elements.extend(chain.iter().map(|&c| remap(c, &map) | 1 << f));
    sort_masks(&mut elements);
    Ok(BoundedLattice { ground, elements })
}

/// Inverse of [`doubling`] for an extremal lattice on at least one element:
/// removes the smaller label whose complement is a co-atom and returns the
/// remaining lattice with the chain it was doubled along.
pub fn undouble(l: &BoundedLattice) -> Result<(BoundedLattice, Vec<Mask>)> {
    let v = lattice_to_vine(l)?;
    let n = v.n();
    if n == 0 {
        return Err(Error::Argument("nothing to undouble".into()));
    }
    let full = l.ground.full();
    let a = if n == 1 {
        0
    } else {
        l.lower_covers(full)
            .iter()
            .map(|&c| (full & !c).trailing_zeros() as usize)
            .min()
            .unwrap()
    };
    undouble_index(l, a)
}

/// Like [`undouble`] but removes the given label, which must be the
/// complement of a co-atom.
pub fn undouble_at(l: &BoundedLattice, label: &str) -> Result<(BoundedLattice, Vec<Mask>)> {
    let v = lattice_to_vine(l)?;
    let a = l.ground.require(label)?;
    let full = l.ground.full();
    if v.n() > 1 && !l.lower_covers(full).contains(&(full & !(1 << a))) {
        return Err(Error::Argument(format!("{label} is not the complement of a co-atom")));
    }
    undouble_index(l, a)
}

fn undouble_index(l: &BoundedLattice, a: usize) -> Result<(BoundedLattice, Vec<Mask>)> {
    let n = l.ground.len();
    let full = l.ground.full();
    let rest = full & !(1 << a);
    let mut pos = vec![0usize; n];
    for (p, i) in bits(rest).enumerate() {
        pos[i] = p;
    }
    let mut kept: Vec<Mask> = l
        .elements
        .iter()
        .filter(|&&m| m >> a & 1 == 0)
        .map(|&m| remap(m, &pos))
        .collect();
    let mut chain: Vec<Mask> = l
        .elements
        .iter()
        .filter(|&&m| m >> a & 1 == 1)
        .map(|&m| remap(m & !(1 << a), &pos))
        .collect();
    sort_masks(&mut kept);
    sort_masks(&mut chain);
    let base = BoundedLattice {
        ground: l.ground.restrict(rest),
        elements: kept,
    };
    check_maximal_chain(&base, &chain)
        .map_err(|_| Error::Internal("removed elements do not form a maximal chain".into()))?;
    Ok((base, chain))
}

/// Incidence matrix: rows are ground elements, columns the family members
/// in subset order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: GroundSet,
    columns: Vec<Mask>,
}

impl BinaryMatrix {
    pub fn new(rows: GroundSet, mut columns: Vec<Mask>) -> Result<Self> {
        let full = rows.full();
        if columns.iter().any(|&c| c & !full != 0) {
            return Err(Error::Malformed("column outside the row set".into()));
        }
        sort_masks(&mut columns);
        if columns.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Malformed("repeated column".into()));
        }
        Ok(BinaryMatrix { rows, columns })
    }

    /// Parses `n` lines of `0`/`1` characters over the standard labels.
    pub fn parse_text(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let n = lines.len();
        if n > crate::ground::MAX_GROUND {
            return Err(Error::CapExceeded {
                what: "matrix rows",
                value: n,
                cap: crate::ground::MAX_GROUND,
            });
        }
        let width = lines.first().map_or(0, |l| l.len());
        let mut columns = vec![0u64; width];
        for (r, line) in lines.iter().enumerate() {
            if line.len() != width {
                return Err(Error::Malformed(format!("row {} has length {}, expected {width}", r + 1, line.len())));
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => columns[c] |= 1 << r,
                    _ => return Err(Error::Malformed(format!("row {} column {}: {ch:?}", r + 1, c + 1))),
                }
            }
        }
        Self::new(GroundSet::standard(n), columns)
    }

    pub fn rows(&self) -> &GroundSet {
        &self.rows
    }

    pub fn columns(&self) -> &[Mask] {
        &self.columns
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows.len() {
            for &c in &self.columns {
                s.push(if c >> r & 1 == 1 { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    pub fn column_strings(&self) -> Vec<String> {
        self.columns
            .iter()
            .map(|&c| (0..self.rows.len()).map(|r| if c >> r & 1 == 1 { '1' } else { '0' }).collect())
            .collect()
    }
}

pub fn lattice_to_matrix(l: &BoundedLattice) -> BinaryMatrix {
    BinaryMatrix {
        rows: l.ground.clone(),
        columns: l.elements.clone(),
    }
}

pub fn matrix_to_lattice(m: &BinaryMatrix) -> BoundedLattice {
    BoundedLattice {
        ground: m.rows.clone(),
        elements: m.columns.clone(),
    }
}

/// Rows `r1 < r2 < r3` and columns restricting to `110`, `101`, `011`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleWitness {
    pub rows: [usize; 3],
    pub columns: [usize; 3],
}

/// The lexicographically least triangle: smallest row triple, then the
/// first column of each pattern.
pub fn find_triangle(m: &BinaryMatrix) -> Option<TriangleWitness> {
    let n = m.rows.len();
    for r1 in 0..n {
        for r2 in r1 + 1..n {
            for r3 in r2 + 1..n {
                let want = [
                    1 << r1 | 1 << r2,
                    1 << r1 | 1 << r3,
                    1 << r2 | 1 << r3,
                ];
                let t: Mask = 1 << r1 | 1 << r2 | 1 << r3;
                let mut found = [usize::MAX; 3];
                for (c, &col) in m.columns.iter().enumerate() {
                    let r = col & t;
                    for k in 0..3 {
                        if r == want[k] && found[k] == usize::MAX {
                            found[k] = c;
                        }
                    }
                }
                if found.iter().all(|&c| c != usize::MAX) {
                    return Some(TriangleWitness {
                        rows: [r1, r2, r3],
                        columns: found,
                    });
                }
            }
        }
    }
    None
}

pub fn has_no_triangles(m: &BinaryMatrix) -> bool {
    find_triangle(m).is_none()
}

/// Distinct columns, no triangle and `1 + n + n(n-1)/2` columns.
pub fn is_extremal_matrix(m: &BinaryMatrix) -> bool {
    let n = m.rows.len();
    has_no_triangles(m) && m.columns.len() == 1 + n + n * n.saturating_sub(1) / 2
}

/// Order of the automorphism group of a vine, which is 1 or 2.
pub fn automorphism_group_order(v: &RegularVine) -> Result<usize> {
    validate_vine(v).into_result()?;
    let k = canonical::automorphism_count(v);
    if k > 2 {
        return Err(Error::Internal(format!("vine with {k} automorphisms")));
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::{five_vine, intro_vine, vine};

    #[test]
    fn intro_vine_lattice_is_extremal() {
        let l = vine_to_lattice(&intro_vine()).unwrap();
        let r = is_extremal_lattice(&l, 4).unwrap();
        assert!(r.extremal, "{r:?}");
        assert_eq!(r.size, 11);
        assert!(is_extremal_matrix(&lattice_to_matrix(&l)));
    }

    #[test]
    fn boolean_lattice_has_b3() {
        let g = GroundSet::standard(3);
        let l = BoundedLattice::new(g, (0..8).collect()).unwrap();
        let w = is_b3_free(&l).unwrap().expect("B(3) itself");
        assert_eq!(w[0], 0);
        assert_eq!(w[7], 7);
        assert!(find_b3_direct(&l).is_some());
        assert!(find_triangle(&lattice_to_matrix(&l)).is_some());
    }

    #[test]
    fn contranominal_matrix_is_a_triangle() {
        // complement of the identity: rows abc, columns bc, ac, ab
        let m = BinaryMatrix::parse_text("011\n101\n110\n").unwrap();
        let t = find_triangle(&m).unwrap();
        assert_eq!(t.rows, [0, 1, 2]);
        assert_eq!(m.to_text(), "110\n101\n011\n");
    }

    #[test]
    fn non_lattice_is_rejected() {
        let g = GroundSet::standard(3);
        // ab and ac have no join below abc missing: {a, ab, ac}
        let l = BoundedLattice::new(g, vec![1, 3, 5]).unwrap();
        assert!(is_b3_free(&l).is_err());
    }

    #[test]
    fn doubling_and_undoubling() {
        let l = vine_to_lattice(&vine(&["a", "b", "c", "ab", "bc", "abc"])).unwrap();
        let chains = lattice_chains(&l);
        assert_eq!(chains.len(), 4);
        for c in &chains {
            let d = doubling(&l, c).unwrap();
            assert!(is_extremal_lattice(&d, 4).unwrap().extremal);
            assert!(validate_vine(&lattice_to_vine(&d).unwrap()).is_valid());
            let (base, chain) = undouble(&d).unwrap();
            let again = doubling(&base, &chain).unwrap();
            assert_eq!(
                canonical::canonical_form(&lattice_to_vine(&again).unwrap()),
                canonical::canonical_form(&lattice_to_vine(&d).unwrap())
            );
        }
        assert!(doubling(&l, &[0, 1, 7]).is_err());
    }

    #[test]
    fn undouble_five_vine_removes_smaller_coatom_complement() {
        let l = vine_to_lattice(&five_vine()).unwrap();
        let (base, chain) = undouble(&l).unwrap();
        assert_eq!(base.ground().labels(), ["b", "c", "d", "e"]);
        assert_eq!(chain.len(), 5);
    }

    #[test]
    fn automorphisms_of_small_vines() {
        let d = vine(&["a", "b", "c", "ab", "bc", "abc"]);
        assert_eq!(automorphism_group_order(&d).unwrap(), 2);
        // a and d can be swapped in the intro vine
        assert_eq!(automorphism_group_order(&intro_vine()).unwrap(), 2);
        assert_eq!(automorphism_group_order(&five_vine()).unwrap(), 1);
    }
}
