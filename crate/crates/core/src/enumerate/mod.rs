//! Enumeration, classification up to isomorphism, counting and the catalog.

pub mod canonical;
pub mod catalog;
pub mod count;
pub mod generate;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ground::{sort_masks, Mask};
use crate::vine::{chains_raw, RegularVine};
use canonical::{canon_masks, form_to_vine, CanonicalForm};

pub use generate::{check_cap, count_vines, for_each_vine_nodes, generate_vines, par_fold_vines, GENERATE_CAP};

/// Largest `n` for which class representatives are built.
pub const CLASS_CAP: usize = 9;

/// One isomorphism class of vines on `n` elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass {
    pub form: CanonicalForm,
    /// The canonical vine over the standard labels.
    pub representative: RegularVine,
    pub automorphisms: usize,
    /// Labeled vines in the class: counted when classifying a full
    /// generation, `n! / |Aut|` otherwise.
    pub members: u64,
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Groups vines on a common ground set by canonical form, ordered by form.
pub fn classify(vines: &[RegularVine]) -> Vec<IsoClass> {
    let mut m: BTreeMap<CanonicalForm, (usize, u64)> = BTreeMap::new();
    let n = vines.first().map_or(0, |v| v.n());
    for v in vines {
        let (form, aut) = canon_masks(v.nodes(), v.n());
        m.entry(form).or_insert((aut, 0)).1 += 1;
    }
    into_classes(m, n)
}

fn into_classes(m: BTreeMap<CanonicalForm, (usize, u64)>, n: usize) -> Vec<IsoClass> {
    m.into_iter()
        .map(|(form, (automorphisms, members))| IsoClass {
            representative: form_to_vine(&form, n),
            form,
            automorphisms,
            members,
        })
        .collect()
}

/// Classifies every labeled vine on `n` elements, in parallel, and checks
/// that each class has `n! / |Aut|` members.
pub fn classify_labeled(n: usize) -> Result<Vec<IsoClass>> {
    type Tally = BTreeMap<CanonicalForm, (usize, u64)>;
    let tally: Tally = par_fold_vines(
        n,
        Tally::new,
        |t, nodes| {
            let (form, aut) = canon_masks(nodes, n);
            t.entry(form).or_insert((aut, 0)).1 += 1;
        },
        |mut a, b| {
            for (k, (aut, c)) in b {
                a.entry(k).or_insert((aut, 0)).1 += c;
            }
            a
        },
    )?;
    let classes = into_classes(tally, n);
    for c in &classes {
        if c.members * c.automorphisms as u64 != factorial(n) {
            return Err(Error::Internal(format!(
                "class with {} members and {} automorphisms on {n} elements",
                c.members, c.automorphisms
            )));
        }
    }
    Ok(classes)
}

/// One representative per class, grown from the classes on `n - 1`
/// elements by doubling along every maximal chain.
pub fn class_representatives(n: usize) -> Result<Vec<IsoClass>> {
    if n > CLASS_CAP {
        return Err(Error::CapExceeded {
            what: "class enumeration size",
            value: n,
            cap: CLASS_CAP,
        });
    }
    let mut forms: BTreeMap<CanonicalForm, usize> = BTreeMap::new();
    let (f0, a0) = canon_masks(&[], 0);
    forms.insert(f0, a0);
    for m in 1..=n {
        let mut next: BTreeMap<CanonicalForm, usize> = BTreeMap::new();
        let fresh: Mask = 1 << (m - 1);
        for form in forms.keys() {
            let v = form_to_vine(form, m - 1);
            let mut chains = chains_raw(&v);
            if chains.is_empty() {
                chains.push(vec![]);
            }
            for chain in chains {
                let mut nodes = form.clone();
                nodes.push(fresh);
                nodes.extend(chain.iter().map(|&c| c | fresh));
                sort_masks(&mut nodes);
                let (f, a) = canon_masks(&nodes, m);
                next.entry(f).or_insert(a);
            }
        }
        forms = next;
    }
    let fact = factorial(n);
    Ok(forms
        .into_iter()
        .map(|(form, automorphisms)| IsoClass {
            representative: form_to_vine(&form, n),
            form,
            automorphisms,
            members: fact / automorphisms as u64,
        })
        .collect())
}
