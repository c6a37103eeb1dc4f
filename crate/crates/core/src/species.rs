//! The split-merge species abstraction and the generic transport of
//! structures between two species.

use std::collections::HashMap;
use std::fmt::Debug;

use crate::error::{Error, Result, ValidationReport};
use crate::ground::{GroundSet, Mask, Relabeling};

/// The two halves of a split. `left` lives on `A \ {a1}` and `right` on
/// `A \ {a2}` where `a1 < a2` are the removed elements, so equality of pairs
/// is equality of unordered pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitPair<T> {
    pub left: T,
    pub right: T,
    pub removed: (String, String),
}

/// A family of combinatorial structures with unique split and partial merge.
pub trait Species {
    type Structure: Clone + Debug + PartialEq + Eq;

    const KIND: &'static str;

    fn ground(s: &Self::Structure) -> &GroundSet;

    /// The unique structure on a ground set of size at most one.
    fn trivial(ground: GroundSet) -> Result<Self::Structure>;

    fn validate(s: &Self::Structure) -> ValidationReport;

    /// Unique split of a valid structure on at least two elements.
    fn split(s: &Self::Structure) -> Result<SplitPair<Self::Structure>>;

    /// The merge of two valid structures on co-atoms of a common ground set,
    /// or `None` when they are incompatible.
    fn merge(left: &Self::Structure, right: &Self::Structure) -> Result<Option<Self::Structure>>;

    fn relabel(s: &Self::Structure, h: &Relabeling) -> Result<Self::Structure>;
}

/// Ground set `A` such that `g1`, `g2` are `A \ {x}` and `A \ {y}` for
/// distinct `x`, `y`. Returns `(A, x, y)`.
pub fn common_ground(g1: &GroundSet, g2: &GroundSet) -> Result<(GroundSet, String, String)> {
    let only1: Vec<&String> = g1.labels().iter().filter(|l| !g2.contains(l)).collect();
    let only2: Vec<&String> = g2.labels().iter().filter(|l| !g1.contains(l)).collect();
    if g1.len() != g2.len() || only1.len() != 1 || only2.len() != 1 {
        return Err(Error::Argument(
            "ground sets are not two co-atoms of a common set".into(),
        ));
    }
    // g1 lacks the element only g2 has.
    let x = only2[0].clone();
    let y = only1[0].clone();
    let union = GroundSet::new(g1.labels().iter().cloned().chain(std::iter::once(x.clone())))?;
    Ok((union, x, y))
}

pub fn split<S: Species>(s: &S::Structure) -> Result<SplitPair<S::Structure>> {
    if S::ground(s).len() < 2 {
        return Err(Error::Argument("split needs at least two elements".into()));
    }
    S::validate(s).into_result()?;
    S::split(s)
}

/// Both halves of a split of each input share exactly one structure.
pub fn compatible<S: Species>(left: &S::Structure, right: &S::Structure) -> Result<bool> {
    common_ground(S::ground(left), S::ground(right))?;
    if S::ground(left).len() < 2 {
        return Ok(true);
    }
    let p = S::split(left)?;
    let q = S::split(right)?;
    let shared = [&p.left, &p.right]
        .iter()
        .filter(|x| **x == &q.left || **x == &q.right)
        .count();
    Ok(shared == 1)
}

/// Merge after validating both inputs and the proximity of their splits.
/// The result is checked to split back into the inputs.
pub fn merge<S: Species>(
    left: &S::Structure,
    right: &S::Structure,
) -> Result<Option<S::Structure>> {
    S::validate(left).into_result()?;
    S::validate(right).into_result()?;
    if !compatible::<S>(left, right)? {
        return Ok(None);
    }
    let merged = S::merge(left, right)?;
    if let Some(m) = &merged {
        let p = S::split(m)?;
        let ok = (p.left == *left && p.right == *right) || (p.left == *right && p.right == *left);
        if !ok {
            return Err(Error::Internal(format!(
                "{} merge does not split back into its inputs",
                S::KIND
            )));
        }
    } else {
        return Err(Error::Internal(format!(
            "{} merge refused a compatible pair",
            S::KIND
        )));
    }
    Ok(merged)
}

/// Whether the halves of the split of `s` are themselves compatible.
pub fn check_proximity<S: Species>(s: &S::Structure) -> Result<bool> {
    let p = split::<S>(s)?;
    compatible::<S>(&p.left, &p.right)
}

/// Builds the structure of species `G` that corresponds to `s` by splitting
/// down to singletons and merging back up in `G`.
pub fn transport<F: Species, G: Species>(s: &F::Structure) -> Result<G::Structure> {
    F::validate(s).into_result()?;
    let root = F::ground(s).clone();
    let mut memo: HashMap<Mask, G::Structure> = HashMap::new();
    transport_rec::<F, G>(s, &root, &mut memo)
}

fn transport_rec<F: Species, G: Species>(
    s: &F::Structure,
    root: &GroundSet,
    memo: &mut HashMap<Mask, G::Structure>,
) -> Result<G::Structure> {
    let ground = F::ground(s);
    let key = root
        .mask_of(ground)
        .ok_or_else(|| Error::Internal("sub-structure escapes the ground set".into()))?;
    if let Some(t) = memo.get(&key) {
        return Ok(t.clone());
    }
    let out = if ground.len() <= 1 {
        G::trivial(ground.clone())?
    } else {
        let p = F::split(s)?;
        let l = transport_rec::<F, G>(&p.left, root, memo)?;
        let r = transport_rec::<F, G>(&p.right, root, memo)?;
        G::merge(&l, &r)?.ok_or_else(|| {
            Error::Internal(format!(
                "transport {} -> {}: merge failed on {:?}",
                F::KIND,
                G::KIND,
                ground.labels()
            ))
        })?
    };
    memo.insert(key, out.clone());
    Ok(out)
}
