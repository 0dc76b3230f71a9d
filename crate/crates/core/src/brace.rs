//! Left skew braces on a shared carrier `0..n`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupError};
use crate::perm::{Perm, PermGroup};
use crate::search;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraceError {
    #[error("additive table: {0}")]
    Additive(GroupError),
    #[error("circle table: {0}")]
    Circle(GroupError),
    #[error("additive and circle tables have different orders ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("a∘(b+c) = a∘b − a + a∘c fails at a={0}, b={1}, c={2}")]
    BraceAxiomFailed(usize, usize, usize),
    #[error("subset is not closed under both operations")]
    NotASubbrace,
    #[error("order {order} exceeds the configured bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
}

/// A left skew brace `(E, +, ∘)`; index 0 is the identity of both groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewBrace {
    add: FiniteGroup,
    circ: FiniteGroup,
}

impl SkewBrace {
    pub fn new(add: FiniteGroup, circ: FiniteGroup) -> Result<SkewBrace, BraceError> {
        if add.order() != circ.order() {
            return Err(BraceError::OrderMismatch(add.order(), circ.order()));
        }
        let e = SkewBrace { add, circ };
        if let Some((a, b, c)) = e.axiom_witness() {
            return Err(BraceError::BraceAxiomFailed(a, b, c));
        }
        Ok(e)
    }

    pub fn from_tables(add: &[Vec<usize>], circ: &[Vec<usize>]) -> Result<SkewBrace, BraceError> {
        let add = FiniteGroup::from_table(add).map_err(BraceError::Additive)?;
        let circ = FiniteGroup::from_table(circ).map_err(BraceError::Circle)?;
        SkewBrace::new(add, circ)
    }

    pub fn from_fns(
        n: usize,
        add: impl Fn(usize, usize) -> usize,
        circ: impl Fn(usize, usize) -> usize,
    ) -> Result<SkewBrace, BraceError> {
        let add = FiniteGroup::from_fn(n, add).map_err(BraceError::Additive)?;
        let circ = FiniteGroup::from_fn(n, circ).map_err(BraceError::Circle)?;
        SkewBrace::new(add, circ)
    }

    fn axiom_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        for a in 0..n {
            let na = self.neg(a);
            for b in 0..n {
                let ab = self.circ(a, b);
                let ab_na = self.add(ab, na);
                for c in 0..n {
                    let lhs = self.circ(a, self.add(b, c));
                    let rhs = self.add(ab_na, self.circ(a, c));
                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// The trivial brace: `∘` equals `+`.
    pub fn trivial(g: FiniteGroup) -> SkewBrace {
        SkewBrace { circ: g.clone(), add: g }
    }

    pub fn direct_product(a: &SkewBrace, b: &SkewBrace) -> SkewBrace {
        SkewBrace {
            add: FiniteGroup::direct_product(&a.add, &b.add),
            circ: FiniteGroup::direct_product(&a.circ, &b.circ),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.add.order()
    }

    pub fn additive(&self) -> &FiniteGroup {
        &self.add
    }

    pub fn circle(&self) -> &FiniteGroup {
        &self.circ
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add.op(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.add.inv(a)
    }

    /// `a − b = a + (−b)`.
    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add.div(a, b)
    }

    #[inline]
    pub fn circ(&self, a: usize, b: usize) -> usize {
        self.circ.op(a, b)
    }

    #[inline]
    pub fn cinv(&self, a: usize) -> usize {
        self.circ.inv(a)
    }

    pub fn is_trivial(&self) -> bool {
        self.add == self.circ
    }

    /// `λ_a(b) = −a + a∘b`.
    pub fn lambda(&self, a: usize) -> Perm {
        let na = self.neg(a);
        Perm::from_images_unchecked((0..self.order()).map(|b| self.add(na, self.circ(a, b))).collect())
    }

    #[inline]
    pub fn lambda_at(&self, a: usize, b: usize) -> usize {
        self.add(self.neg(a), self.circ(a, b))
    }

    pub fn lambdas(&self) -> Vec<Perm> {
        (0..self.order()).map(|a| self.lambda(a)).collect()
    }

    /// Each `λ_a` is an additive automorphism and `a ↦ λ_a` is a
    /// homomorphism from the circle group.
    pub fn lambda_is_hom(&self) -> bool {
        let n = self.order();
        let lam = self.lambdas();
        lam.iter().all(|l| self.add.is_automorphism(l))
            && (0..n).all(|a| (0..n).all(|b| lam[self.circ(a, b)] == lam[a].compose(&lam[b])))
    }

    /// `a + b = a ∘ λ_a⁻¹(b)` and `a ∘ b = a + λ_a(b)` for all pairs.
    pub fn identities_hold(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| {
            let l = self.lambda(a);
            let li = l.inverse();
            (0..n).all(|b| {
                self.add(a, b) == self.circ(a, li.apply(b)) && self.circ(a, b) == self.add(a, l.apply(b))
            })
        })
    }

    pub fn kernel_lambda(&self) -> BTreeSet<usize> {
        (0..self.order()).filter(|&a| self.lambda(a).is_identity()).collect()
    }

    /// `Soc = Ker λ ∩ Z(E, +)`.
    pub fn socle(&self) -> BTreeSet<usize> {
        let centre = self.add.centre();
        self.kernel_lambda().intersection(&centre).copied().collect()
    }

    /// `Ann = Soc ∩ Z(E, ∘)`.
    pub fn annihilator(&self) -> BTreeSet<usize> {
        let centre = self.circ.centre();
        self.socle().intersection(&centre).copied().collect()
    }

    pub fn is_subbrace(&self, s: &BTreeSet<usize>) -> bool {
        self.add.is_subgroup(s) && self.circ.is_subgroup(s)
    }

    /// A sub-brace stable under every `λ_a`.
    pub fn is_left_ideal(&self, s: &BTreeSet<usize>) -> Result<bool, BraceError> {
        if !self.is_subbrace(s) {
            return Err(BraceError::NotASubbrace);
        }
        Ok((0..self.order()).all(|a| s.iter().all(|&y| s.contains(&self.lambda_at(a, y)))))
    }

    /// A left ideal that is normal in both groups.
    pub fn is_ideal(&self, s: &BTreeSet<usize>) -> Result<bool, BraceError> {
        Ok(self.is_left_ideal(s)? && self.add.is_normal_subgroup(s) && self.circ.is_normal_subgroup(s))
    }

    pub fn is_automorphism(&self, p: &Perm) -> bool {
        self.add.is_automorphism(p) && self.circ.is_automorphism(p)
    }

    /// `Autb(E)`: permutations preserving both tables.
    pub fn automorphisms(&self, bound: usize) -> Result<PermGroup, BraceError> {
        if self.order() > bound {
            return Err(BraceError::OrderBoundExceeded { order: self.order(), bound });
        }
        let set: BTreeSet<Perm> = search::find_isomorphisms(&[&self.add, &self.circ], &[&self.add, &self.circ], false)
            .into_iter()
            .collect();
        Ok(PermGroup::from_elements(self.order(), set).expect("automorphisms form a group"))
    }

    pub fn isomorphism_to(&self, other: &SkewBrace) -> Option<Perm> {
        search::find_isomorphisms(&[&self.add, &self.circ], &[&other.add, &other.circ], true)
            .into_iter()
            .next()
    }

    pub fn restrict(&self, s: &BTreeSet<usize>) -> Option<(SkewBrace, Vec<usize>)> {
        if !self.is_subbrace(s) {
            return None;
        }
        let (add, emb) = self.add.restrict(s)?;
        let (circ, _) = self.circ.restrict(s)?;
        Some((SkewBrace { add, circ }, emb))
    }

    /// Applies the relabeling `x ↦ p(x)` to both tables.
    pub fn relabel(&self, p: &Perm) -> Result<SkewBrace, BraceError> {
        let add = self.add.relabel(p).map_err(BraceError::Additive)?;
        let circ = self.circ.relabel(p).map_err(BraceError::Circle)?;
        SkewBrace::new(add, circ)
    }
}

/// A map between carriers that should respect both operations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraceHom {
    pub map: Vec<usize>,
}

impl BraceHom {
    pub fn new(map: Vec<usize>) -> BraceHom {
        BraceHom { map }
    }

    pub fn identity(n: usize) -> BraceHom {
        BraceHom { map: (0..n).collect() }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_hom(&self, src: &SkewBrace, dst: &SkewBrace) -> bool {
        let n = src.order();
        self.map.len() == n
            && self.map.iter().all(|&x| x < dst.order())
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    self.map[src.add(a, b)] == dst.add(self.map[a], self.map[b])
                        && self.map[src.circ(a, b)] == dst.circ(self.map[a], self.map[b])
                })
            })
    }

    pub fn kernel(&self) -> BTreeSet<usize> {
        (0..self.map.len()).filter(|&x| self.map[x] == 0).collect()
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.map.iter().copied().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.map.len()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BraceHom) -> BraceHom {
        BraceHom { map: other.map.iter().map(|&x| self.map[x]).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_BOUND;

    #[test]
    fn trivial_braces_are_valid() {
        for g in [FiniteGroup::cyclic(4), FiniteGroup::symmetric(3), FiniteGroup::dihedral(4)] {
            let e = SkewBrace::trivial(g.clone());
            assert!(SkewBrace::new(g.clone(), g).is_ok());
            assert!(e.lambda_is_hom());
            assert!(e.identities_hold());
            assert!((0..e.order()).all(|a| e.lambda(a).is_identity()));
        }
    }

    #[test]
    fn trivial_abelian_socle_is_everything() {
        let e = SkewBrace::trivial(FiniteGroup::cyclic(6));
        assert_eq!(e.socle().len(), 6);
        assert_eq!(e.annihilator().len(), 6);
        let s = SkewBrace::trivial(FiniteGroup::symmetric(3));
        assert_eq!(s.socle().len(), 1);
    }

    #[test]
    fn scan_of_all_table_pairs_on_four_points() {
        let all = crate::group::enumerate_group_tables(4, &[None; 16], &|_, _, _| true);
        let mut failures = Vec::new();
        for add in &all {
            for circ in &all {
                if let Err(BraceError::BraceAxiomFailed(a, b, c)) = SkewBrace::new(add.clone(), circ.clone()) {
                    let e = SkewBrace { add: add.clone(), circ: circ.clone() };
                    assert_ne!(e.circ(a, e.add(b, c)), e.add(e.sub(e.circ(a, b), a), e.circ(a, c)));
                    failures.push((add.is_cyclic(), circ.is_cyclic()));
                }
            }
        }
        // Every Klein circle table is compatible with every additive table;
        // the failures pair two differently labeled cyclic tables.
        assert_eq!(failures.len(), 6);
        assert!(failures.iter().all(|&(a, c)| a && c));
    }

    #[test]
    fn automorphisms_of_trivial_braces() {
        let b = DEFAULT_ORDER_BOUND;
        assert_eq!(SkewBrace::trivial(FiniteGroup::cyclic(3)).automorphisms(b).unwrap().order(), 2);
        assert_eq!(SkewBrace::trivial(FiniteGroup::cyclic(2)).automorphisms(b).unwrap().order(), 1);
    }

    #[test]
    fn ideals_of_small_brace() {
        let e = SkewBrace::trivial(FiniteGroup::cyclic(4));
        let zero: BTreeSet<usize> = [0].into_iter().collect();
        let all: BTreeSet<usize> = (0..4).collect();
        assert!(e.is_ideal(&zero).unwrap());
        assert!(e.is_ideal(&all).unwrap());
        let bad: BTreeSet<usize> = [0, 1].into_iter().collect();
        assert_eq!(e.is_ideal(&bad), Err(BraceError::NotASubbrace));
    }

    #[test]
    fn brace_hom_kernel_is_ideal() {
        let src = SkewBrace::trivial(FiniteGroup::cyclic(4));
        let dst = SkewBrace::trivial(FiniteGroup::cyclic(2));
        let f = BraceHom::new(vec![0, 1, 0, 1]);
        assert!(f.is_hom(&src, &dst));
        assert!(src.is_ideal(&f.kernel()).unwrap());
        assert!(!BraceHom::new(vec![0, 1, 1, 0]).is_hom(&src, &dst));
    }
}
