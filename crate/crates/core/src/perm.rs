//! Permutations of `0..n` and explicitly enumerated permutation groups.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A bijection on `0..n`, stored as its image array.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    /// Wraps an image array, returning `None` unless it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm(images))
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Perm {
        debug_assert!(Perm::from_images(images.clone()).is_some());
        Perm(images)
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn into_images(self) -> Vec<usize> {
        self.0
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut r = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            r[x] = i;
        }
        Perm(r)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Perm) -> Perm {
        self.compose(other).compose(&self.inverse())
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut r = Perm::identity(self.degree());
        for _ in 0..k {
            r = self.compose(&r);
        }
        r
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut p = self.clone();
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A finite group of permutations, every element stored explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: BTreeSet<Perm>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            elements: std::iter::once(Perm::identity(degree)).collect(),
        }
    }

    /// The subgroup generated by `gens`, by worklist closure under composition.
    pub fn generate<'a, I>(degree: usize, gens: I) -> PermGroup
    where
        I: IntoIterator<Item = &'a Perm>,
    {
        let gens: Vec<Perm> = gens.into_iter().cloned().collect();
        let mut group = PermGroup::trivial(degree);
        let mut queue: Vec<Perm> = gens.clone();
        while let Some(p) = queue.pop() {
            if group.elements.contains(&p) {
                continue;
            }
            group.elements.insert(p.clone());
            for g in &gens {
                let q = p.compose(g);
                if !group.elements.contains(&q) {
                    queue.push(q);
                }
            }
        }
        group
    }

    /// Builds a group from an explicit element set, checking closure.
    pub fn from_elements(degree: usize, elements: BTreeSet<Perm>) -> Option<PermGroup> {
        let group = PermGroup { degree, elements };
        if group.is_closed() {
            Some(group)
        } else {
            None
        }
    }

    fn is_closed(&self) -> bool {
        if !self.elements.contains(&Perm::identity(self.degree)) {
            return false;
        }
        self.elements.iter().all(|p| {
            p.degree() == self.degree
                && self.elements.contains(&p.inverse())
                && self.elements.iter().all(|q| self.elements.contains(&p.compose(q)))
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.elements.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Perm> {
        self.elements.iter()
    }

    pub fn elements(&self) -> &BTreeSet<Perm> {
        &self.elements
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        ambient
            .iter()
            .all(|a| self.iter().all(|s| self.contains(&a.conjugate(s))))
    }

    /// Least subgroup of `ambient` containing `gens` and closed under
    /// conjugation by `ambient`.
    pub fn normal_closure<'a, I>(ambient: &PermGroup, gens: I) -> PermGroup
    where
        I: IntoIterator<Item = &'a Perm>,
    {
        let mut conjugates: BTreeSet<Perm> = BTreeSet::new();
        for s in gens {
            for a in ambient.iter() {
                conjugates.insert(a.conjugate(s));
            }
        }
        PermGroup::generate(ambient.degree, conjugates.iter())
    }

    /// True iff `p ∘ q⁻¹` lies in this subgroup.
    pub fn equal_mod(&self, p: &Perm, q: &Perm) -> bool {
        self.contains(&p.compose(&q.inverse()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Perm {
        Perm::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_applies_right_operand_first() {
        let a = p(&[1, 2, 0]);
        let b = p(&[1, 0, 2]);
        // a(b(0)) = a(1) = 2
        assert_eq!(a.compose(&b).apply(0), 2);
        assert_eq!(a.compose(&a.inverse()), Perm::identity(3));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0]).is_none());
        assert!(Perm::from_images(vec![0, 2]).is_none());
    }

    #[test]
    fn generate_symmetric_group() {
        let g = PermGroup::generate(4, [p(&[1, 0, 2, 3]), p(&[1, 2, 3, 0])].iter());
        assert_eq!(g.order(), 24);
        let a4 = PermGroup::generate(4, [p(&[1, 2, 0, 3]), p(&[0, 2, 3, 1])].iter());
        assert_eq!(a4.order(), 12);
        assert!(a4.is_normal_in(&g));
    }

    #[test]
    fn normal_closure_of_transposition_is_everything() {
        let s4 = PermGroup::generate(4, [p(&[1, 0, 2, 3]), p(&[1, 2, 3, 0])].iter());
        let n = PermGroup::normal_closure(&s4, [p(&[1, 0, 2, 3])].iter());
        assert_eq!(n.order(), 24);
        let v4 = PermGroup::normal_closure(&s4, [p(&[1, 0, 3, 2])].iter());
        assert_eq!(v4.order(), 4);
        let triv = PermGroup::normal_closure(&s4, [Perm::identity(4)].iter());
        assert_eq!(triv.order(), 1);
    }

    #[test]
    fn equal_mod_subgroup() {
        let s3 = PermGroup::generate(3, [p(&[1, 0, 2]), p(&[1, 2, 0])].iter());
        let a3 = PermGroup::generate(3, [p(&[1, 2, 0])].iter());
        let t = p(&[1, 0, 2]);
        let u = p(&[0, 2, 1]);
        assert!(a3.equal_mod(&t, &u));
        assert!(!a3.equal_mod(&t, &Perm::identity(3)));
        assert!(s3.equal_mod(&t, &Perm::identity(3)));
        let triv = PermGroup::trivial(3);
        assert!(triv.equal_mod(&t, &t));
        assert!(!triv.equal_mod(&t, &u));
    }
}
