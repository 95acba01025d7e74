use std::collections::BTreeSet;
use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

use crate::report::ReportElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("collection step budget of {budget} exceeded (inconsistent or non-terminating presentation?)")]
    StepBudgetExceeded { budget: u64 },
}

/// Exact group arithmetic on a concrete element type.
pub trait Group: Sync {
    type Elem: Clone + Ord + Hash + Debug + Send + Sync + ReportElement;

    fn identity(&self) -> Self::Elem;

    /// The positive generators; balls are built from these and their inverses.
    fn generators(&self) -> Vec<Self::Elem>;

    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, GroupError>;

    fn invert(&self, a: &Self::Elem) -> Result<Self::Elem, GroupError>;

    /// `a^n` by repeated squaring.
    fn power(&self, a: &Self::Elem, n: i64) -> Result<Self::Elem, GroupError> {
        let mut base = if n < 0 { self.invert(a)? } else { a.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Generators followed by their inverses, interleaved: `g1, g1^-1, g2, g2^-1, ...`.
    fn letters(&self) -> Result<Vec<Self::Elem>, GroupError> {
        let mut out = Vec::new();
        for g in self.generators() {
            let inv = self.invert(&g)?;
            out.push(g);
            out.push(inv);
        }
        Ok(out)
    }
}

/// A finite window on a group: all products of at most `radius` letters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball<E> {
    pub radius: usize,
    /// Sorted ascending, no duplicates.
    pub elements: Vec<E>,
}

impl<E: Ord> Ball<E> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, g: &E) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn index_of(&self, g: &E) -> Option<usize> {
        self.elements.binary_search(g).ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, E> {
        self.elements.iter()
    }
}

/// Breadth-first closure of the identity under right multiplication by the
/// letters, deduplicated on elements and returned in ascending order.
pub fn ball<G: Group>(group: &G, radius: usize) -> Result<Ball<G::Elem>, GroupError> {
    let letters = group.letters()?;
    let mut seen: BTreeSet<G::Elem> = BTreeSet::new();
    let id = group.identity();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    for _ in 0..radius {
        let mut next = Vec::new();
        for g in &frontier {
            for x in &letters {
                let h = group.multiply(g, x)?;
                if seen.insert(h.clone()) {
                    next.push(h);
                }
            }
        }
        next.sort();
        frontier = next;
    }
    Ok(Ball {
        radius,
        elements: seen.into_iter().collect(),
    })
}
