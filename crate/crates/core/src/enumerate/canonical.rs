//! Canonical labelings of regular vines.
//!
//! The labeling is built along the split recursion: a vine on `U` is
//! labelled by extending a canonical labeling of one of its two co-atom
//! ideals with the removed element placed last, keeping every extension that
//! minimises the relabelled node list. The minimising labelings form one
//! coset of the automorphism group, so their number is `|Aut|`.

use std::collections::HashMap;

use crate::ground::{bits, sort_masks, GroundSet, Mask};
use crate::vine::RegularVine;

/// Node list of the canonically relabelled vine over indices `0..n`, sorted.
pub type CanonicalForm = Vec<Mask>;

struct Canon {
    form: Vec<Mask>,
    /// `order[j]` is the original index given canonical index `j`.
    orders: Vec<Vec<u8>>,
}

fn encode(ideal: &[Mask], order: &[u8], scratch: &mut Vec<Mask>) {
    let mut pos = [0u8; 64];
    for (j, &i) in order.iter().enumerate() {
        pos[i as usize] = j as u8;
    }
    scratch.clear();
    scratch.extend(ideal.iter().map(|&m| bits(m).fold(0u64, |acc, i| acc | 1 << pos[i])));
    sort_masks(scratch);
}

fn canon_rec<'a>(nodes: &[Mask], u: Mask, memo: &'a mut HashMap<Mask, Canon>) -> &'a Canon {
    if !memo.contains_key(&u) {
        let c = if u.count_ones() <= 1 {
            Canon {
                form: if u == 0 { vec![] } else { vec![1] },
                orders: vec![bits(u).map(|i| i as u8).collect()],
            }
        } else {
            let k = u.count_ones();
            let ideal: Vec<Mask> = nodes.iter().copied().filter(|&m| m & !u == 0).collect();
            let removed: Vec<usize> = ideal
                .iter()
                .filter(|m| m.count_ones() + 1 == k)
                .map(|&m| (u & !m).trailing_zeros() as usize)
                .collect();
            let mut best: Option<Vec<Mask>> = None;
            let mut orders: Vec<Vec<u8>> = Vec::new();
            let mut scratch = Vec::with_capacity(ideal.len());
            for a in removed {
                let sub_orders = canon_rec(nodes, u & !(1 << a), memo).orders.clone();
                for mut o in sub_orders {
                    o.push(a as u8);
                    encode(&ideal, &o, &mut scratch);
                    match &best {
                        Some(b) if scratch.as_slice() > b.as_slice() => {}
                        Some(b) if scratch.as_slice() == b.as_slice() => {
                            if !orders.contains(&o) {
                                orders.push(o);
                            }
                        }
                        _ => {
                            best = Some(scratch.clone());
                            orders.clear();
                            orders.push(o);
                        }
                    }
                }
            }
            Canon {
                form: best.unwrap_or_default(),
                orders,
            }
        };
        memo.insert(u, c);
    }
    &memo[&u]
}

fn canon(v: &RegularVine) -> Canon {
    let mut memo = HashMap::new();
    let c = canon_rec(v.nodes(), v.ground().full(), &mut memo);
    Canon {
        form: c.form.clone(),
        orders: c.orders.clone(),
    }
}

/// Canonical form of a valid vine; isomorphic vines share it.
pub fn canonical_form(v: &RegularVine) -> CanonicalForm {
    canon(v).form
}

/// The canonical form together with every canonical labeling, each given as
/// the original labels in canonical order.
pub fn canonical_labelings(v: &RegularVine) -> (CanonicalForm, Vec<Vec<String>>) {
    let c = canon(v);
    let labels = c
        .orders
        .iter()
        .map(|o| o.iter().map(|&i| v.ground().label(i as usize).to_string()).collect())
        .collect();
    (c.form, labels)
}

/// Canonical form and automorphism count from a raw node list over `0..n`.
pub(crate) fn canon_masks(nodes: &[Mask], n: usize) -> (CanonicalForm, usize) {
    let mut memo = HashMap::new();
    let c = canon_rec(nodes, crate::ground::full_mask(n), &mut memo);
    (c.form.clone(), c.orders.len())
}

pub fn automorphism_count(v: &RegularVine) -> usize {
    canon(v).orders.len()
}

/// The canonical vine over the standard labels.
pub fn canonical_vine(v: &RegularVine) -> RegularVine {
    form_to_vine(&canonical_form(v), v.n())
}

pub fn form_to_vine(form: &CanonicalForm, n: usize) -> RegularVine {
    RegularVine::from_sorted(GroundSet::standard(n), form.clone())
}
