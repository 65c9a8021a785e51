//! Cayley graphs and sum-free sets over small explicit groups.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::GlElem;

/// The operations a Cayley graph needs from a group element.
pub trait GroupElement: Clone + Eq + Hash {
    fn op(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    /// Vertex label used in graph output.
    fn label(&self) -> String;
}

impl GroupElement for GlElem {
    fn op(&self, other: &Self) -> Self {
        self.mul(other)
    }

    fn inverse(&self) -> Self {
        GlElem::inverse(self)
    }

    fn label(&self) -> String {
        self.matrix()
            .codes()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// An element of the additive group `Z_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclic {
    pub modulus: u64,
    pub value: u64,
}

impl Cyclic {
    pub fn new(modulus: u64, value: u64) -> Cyclic {
        assert!(modulus >= 1, "modulus must be positive");
        Cyclic {
            modulus,
            value: value % modulus,
        }
    }

    /// All elements `0, 1, ..., m-1`.
    pub fn group(modulus: u64) -> Vec<Cyclic> {
        (0..modulus).map(|v| Cyclic::new(modulus, v)).collect()
    }
}

impl GroupElement for Cyclic {
    fn op(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Cyclic::new(self.modulus, self.value + other.value)
    }

    fn inverse(&self) -> Self {
        Cyclic::new(self.modulus, self.modulus - self.value)
    }

    fn label(&self) -> String {
        self.value.to_string()
    }
}

/// The directed Cayley graph on `elements` with an edge `(e1, e2)` whenever
/// `e1 e2^{-1}` lies in `s`. Vertices keep the order of `elements`; edges are
/// listed by source vertex, then by the order of `s`.
pub fn cayley_graph<E: GroupElement>(elements: &[E], s: &[E]) -> Result<Graph> {
    let index: HashMap<&E, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    if s.iter().any(|x| !index.contains_key(x)) {
        return Err(Error::NotSubset);
    }
    let s_inv: Vec<E> = s.iter().map(GroupElement::inverse).collect();
    let mut edges = Vec::with_capacity(elements.len() * s.len());
    for (i, e1) in elements.iter().enumerate() {
        for si in &s_inv {
            // e1 e2^{-1} = s  <=>  e2 = s^{-1} e1
            let e2 = si.op(e1);
            let j = *index.get(&e2).ok_or_else(|| {
                Error::BadParameters("element list is not closed under the group law".into())
            })?;
            edges.push((i, j));
        }
    }
    let labels = elements.iter().map(GroupElement::label).collect();
    Graph::new(elements.len(), true, edges, Some(labels))
}

/// Whether no `x, y` in `s` (not necessarily distinct) have `x + y` in `s`.
pub fn sum_free_check<E: GroupElement>(s: &[E], group: &[E]) -> Result<bool> {
    for (i, a) in group.iter().enumerate() {
        for b in &group[i + 1..] {
            if a.op(b) != b.op(a) {
                return Err(Error::NotAbelian);
            }
        }
    }
    if s.iter().any(|x| !group.contains(x)) {
        return Err(Error::NotSubset);
    }
    Ok(!s.iter().any(|x| s.iter().any(|y| s.contains(&x.op(y)))))
}
