//! Finite labelled ground sets and subsets encoded as bitmasks.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// A subset of a ground set, bit `i` standing for the `i`-th smallest label.
pub type Mask = u64;

pub const MAX_GROUND: usize = 64;

/// Total order on subsets used everywhere for determinism: by cardinality,
/// then lexicographically on the sorted element indices.
pub fn subset_order(a: Mask, b: Mask) -> Ordering {
    match a.count_ones().cmp(&b.count_ones()) {
        Ordering::Equal => {
            if a == b {
                Ordering::Equal
            } else {
                let low = (a ^ b).trailing_zeros();
                if a >> low & 1 == 1 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
        o => o,
    }
}

pub fn sort_masks(masks: &mut [Mask]) {
    masks.sort_by(|a, b| subset_order(*a, *b));
}

/// Iterates the indices of set bits, ascending.
pub fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Sorted, duplicate free list of element labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = labels.into_iter().map(Into::into).collect();
        v.sort();
        for w in v.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Malformed(format!("duplicate label {:?}", w[0])));
            }
        }
        if v.iter().any(|l| l.is_empty()) {
            return Err(Error::Malformed("empty label".into()));
        }
        if v.len() > MAX_GROUND {
            return Err(Error::CapExceeded {
                what: "ground set size",
                value: v.len(),
                cap: MAX_GROUND,
            });
        }
        Ok(GroundSet { labels: v })
    }

    /// `a, b, c, ...` for `n <= 26`, zero padded numbers beyond.
    pub fn standard(n: usize) -> Self {
        assert!(n <= MAX_GROUND);
        let labels = (0..n).map(|i| standard_label(i, n)).collect();
        GroundSet { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .ok()
    }

    pub fn require(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::Argument(format!("label {label:?} not in ground set")))
    }

    pub fn full(&self) -> Mask {
        full_mask(self.len())
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }

    /// The sub-ground-set selected by `mask`.
    pub fn restrict(&self, mask: Mask) -> GroundSet {
        GroundSet {
            labels: bits(mask).map(|i| self.labels[i].clone()).collect(),
        }
    }

    /// Mask of `other` inside `self`, if `other` is a subset.
    pub fn mask_of(&self, other: &GroundSet) -> Option<Mask> {
        let mut m = 0;
        for l in &other.labels {
            m |= 1 << self.index_of(l)?;
        }
        Some(m)
    }

    pub fn mask_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Mask> {
        let mut m = 0;
        for l in labels {
            let i = self.index_of(l.as_ref()).ok_or_else(|| {
                Error::Malformed(format!("label {:?} not in ground set", l.as_ref()))
            })?;
            if m >> i & 1 == 1 {
                return Err(Error::Malformed(format!("label {:?} repeated", l.as_ref())));
            }
            m |= 1 << i;
        }
        Ok(m)
    }

    pub fn labels_of(&self, mask: Mask) -> Vec<String> {
        bits(mask).map(|i| self.labels[i].clone()).collect()
    }

    /// Compact rendering: labels concatenated when all are one character,
    /// comma separated otherwise.
    pub fn show(&self, mask: Mask) -> String {
        let sep = if self.labels.iter().all(|l| l.chars().count() == 1) {
            ""
        } else {
            ","
        };
        let parts: Vec<&str> = bits(mask).map(|i| self.labels[i].as_str()).collect();
        if parts.is_empty() {
            "{}".to_string()
        } else {
            parts.join(sep)
        }
    }

    /// Union with one new label, plus the old-index to new-index map.
    pub fn with_label(&self, label: &str) -> Result<(GroundSet, Vec<usize>)> {
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        let g = GroundSet::new(labels)?;
        let map = self
            .labels
            .iter()
            .map(|l| g.index_of(l).expect("present"))
            .collect();
        Ok((g, map))
    }

    /// Smallest label not yet in use: the first free standard letter, then
    /// numbers.
    pub fn fresh_label(&self) -> String {
        for c in 'a'..='z' {
            let s = c.to_string();
            if !self.contains(&s) {
                return s;
            }
        }
        (0..)
            .map(|i: usize| format!("x{i}"))
            .find(|s| !self.contains(s))
            .expect("unbounded")
    }

    /// Mask of self within `larger` translated index by index.
    pub fn embed(&self, larger: &GroundSet, mask: Mask) -> Result<Mask> {
        let mut m = 0;
        for i in bits(mask) {
            m |= 1 << larger.require(&self.labels[i])?;
        }
        Ok(m)
    }
}

fn standard_label(i: usize, n: usize) -> String {
    if n <= 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        let width = (n - 1).to_string().len();
        format!("{i:0width$}")
    }
}

/// Re-expresses `mask` through an index map.
pub fn remap(mask: Mask, map: &[usize]) -> Mask {
    bits(mask).fold(0, |acc, i| acc | 1 << map[i])
}

/// A bijection between two label sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    map: BTreeMap<String, String>,
}

impl Relabeling {
    pub fn new<I, S, T>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, T)>,
        S: Into<String>,
        T: Into<String>,
    {
        let mut map = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for (k, v) in pairs {
            let (k, v) = (k.into(), v.into());
            if !seen.insert(v.clone()) {
                return Err(Error::Argument(format!("relabeling not injective at {v:?}")));
            }
            if map.insert(k.clone(), v).is_some() {
                return Err(Error::Argument(format!("relabeling defines {k:?} twice")));
            }
        }
        Ok(Relabeling { map })
    }

    pub fn get(&self, label: &str) -> Option<&str> {
        self.map.get(label).map(String::as_str)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn inverse(&self) -> Relabeling {
        Relabeling {
            map: self.map.iter().map(|(k, v)| (v.clone(), k.clone())).collect(),
        }
    }

    /// Image ground set and the old-index to new-index map. The domain of the
    /// relabeling must be exactly `ground`.
    pub fn apply(&self, ground: &GroundSet) -> Result<(GroundSet, Vec<usize>)> {
        if self.map.len() != ground.len() || ground.labels().iter().any(|l| !self.map.contains_key(l))
        {
            return Err(Error::Argument(
                "relabeling domain differs from the ground set".into(),
            ));
        }
        let image = GroundSet::new(ground.labels().iter().map(|l| self.map[l].clone()))?;
        let idx = ground
            .labels()
            .iter()
            .map(|l| image.index_of(&self.map[l]).expect("image label"))
            .collect();
        Ok((image, idx))
    }
}
