//! Backtracking searches over generator images: isomorphisms between
//! multi-table structures and homomorphisms into permutation groups.

use crate::group::FiniteGroup;
use crate::perm::{Perm, PermGroup};

/// All bijections `f` with `f(a·b) = f(a)·f(b)` in every paired table.
///
/// `src[i]` and `dst[i]` must share a carrier size. The search assigns
/// images to generators of `src[0]`, propagates by closure, and checks the
/// remaining tables on the fly. Results are sorted.
pub fn find_isomorphisms(src: &[&FiniteGroup], dst: &[&FiniteGroup], first_only: bool) -> Vec<Perm> {
    assert!(!src.is_empty() && src.len() == dst.len());
    let n = src[0].order();
    if src.iter().chain(dst.iter()).any(|g| g.order() != n) {
        return Vec::new();
    }
    let sig = |tables: &[&FiniteGroup], a: usize| -> Vec<usize> {
        tables.iter().map(|g| g.element_order(a)).collect()
    };
    let src_sig: Vec<Vec<usize>> = (0..n).map(|a| sig(src, a)).collect();
    let dst_sig: Vec<Vec<usize>> = (0..n).map(|a| sig(dst, a)).collect();
    let mut s_sorted = src_sig.clone();
    let mut d_sorted = dst_sig.clone();
    s_sorted.sort();
    d_sorted.sort();
    if s_sorted != d_sorted {
        return Vec::new();
    }
    let gens = src[0].generators();
    let mut map = vec![None; n];
    map[0] = Some(0);
    let mut st = IsoSearch {
        src,
        dst,
        gens: &gens,
        src_sig: &src_sig,
        dst_sig: &dst_sig,
        first_only,
        out: Vec::new(),
    };
    st.assign(0, map);
    st.out.sort();
    st.out
}

struct IsoSearch<'a> {
    src: &'a [&'a FiniteGroup],
    dst: &'a [&'a FiniteGroup],
    gens: &'a [usize],
    src_sig: &'a [Vec<usize>],
    dst_sig: &'a [Vec<usize>],
    first_only: bool,
    out: Vec<Perm>,
}

impl IsoSearch<'_> {
    fn assign(&mut self, k: usize, map: Vec<Option<usize>>) {
        if self.first_only && !self.out.is_empty() {
            return;
        }
        if k == self.gens.len() {
            let images: Vec<usize> = map.iter().map(|m| m.expect("generators span")).collect();
            if let Some(p) = Perm::from_images(images) {
                if self.is_hom_all(&p) {
                    self.out.push(p);
                }
            }
            return;
        }
        let g = self.gens[k];
        if map[g].is_some() {
            // Already forced by earlier generators.
            self.assign(k + 1, map);
            return;
        }
        let n = map.len();
        let used: Vec<bool> = {
            let mut u = vec![false; n];
            for m in map.iter().flatten() {
                u[*m] = true;
            }
            u
        };
        for cand in 0..n {
            if used[cand] || self.src_sig[g] != self.dst_sig[cand] {
                continue;
            }
            let mut next = map.clone();
            next[g] = Some(cand);
            if self.propagate(&mut next, k + 1) {
                self.assign(k + 1, next);
            }
        }
    }

    /// Closes the partial map under products by the first `k` generators in
    /// `src[0]`, failing on any conflict or collision.
    fn propagate(&self, map: &mut [Option<usize>], k: usize) -> bool {
        let (s0, d0) = (self.src[0], self.dst[0]);
        let n = map.len();
        let mut used = vec![false; n];
        for m in map.iter().flatten() {
            used[*m] = true;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&x| map[x].is_some()).collect();
        while let Some(x) = queue.pop() {
            let fx = map[x].unwrap();
            for &g in &self.gens[..k] {
                let Some(fg) = map[g] else { continue };
                let y = s0.op(x, g);
                let fy = d0.op(fx, fg);
                match map[y] {
                    Some(v) if v != fy => return false,
                    Some(_) => {}
                    None => {
                        if used[fy] || self.src_sig[y] != self.dst_sig[fy] {
                            return false;
                        }
                        used[fy] = true;
                        map[y] = Some(fy);
                        queue.push(y);
                    }
                }
            }
        }
        for t in 0..self.src.len() {
            let (s, d) = (self.src[t], self.dst[t]);
            for a in 0..n {
                let Some(fa) = map[a] else { continue };
                for b in 0..n {
                    let Some(fb) = map[b] else { continue };
                    if let Some(fab) = map[s.op(a, b)] {
                        if fab != d.op(fa, fb) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn is_hom_all(&self, p: &Perm) -> bool {
        self.src.iter().zip(self.dst.iter()).all(|(s, d)| {
            let n = s.order();
            (0..n).all(|a| (0..n).all(|b| p.apply(s.op(a, b)) == d.op(p.apply(a), p.apply(b))))
        })
    }
}

/// All homomorphisms from `g` into the permutation group `target`, each as
/// the list of images indexed by elements of `g`. Sorted lexicographically.
pub fn homomorphisms_into(g: &FiniteGroup, target: &PermGroup) -> Vec<Vec<Perm>> {
    let gens = g.generators();
    let n = g.order();
    let deg = target.degree();
    let mut map: Vec<Option<Perm>> = vec![None; n];
    map[0] = Some(Perm::identity(deg));
    let candidates: Vec<Vec<Perm>> = gens
        .iter()
        .map(|&x| {
            let o = g.element_order(x);
            target.iter().filter(|p| o % p.order() == 0).cloned().collect()
        })
        .collect();
    let mut out = Vec::new();
    hom_assign(g, &gens, &candidates, 0, map, &mut out);
    out.sort();
    out
}

fn hom_assign(
    g: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<Perm>],
    k: usize,
    map: Vec<Option<Perm>>,
    out: &mut Vec<Vec<Perm>>,
) {
    if k == gens.len() {
        let images: Vec<Perm> = map.into_iter().map(|m| m.expect("generators span")).collect();
        let n = g.order();
        let ok = (0..n).all(|a| (0..n).all(|b| images[g.op(a, b)] == images[a].compose(&images[b])));
        if ok {
            out.push(images);
        }
        return;
    }
    for cand in &candidates[k] {
        let mut next = map.clone();
        if let Some(existing) = &next[gens[k]] {
            if existing != cand {
                continue;
            }
        }
        next[gens[k]] = Some(cand.clone());
        if hom_propagate(g, &gens[..=k], &mut next) {
            hom_assign(g, gens, candidates, k + 1, next, out);
        }
    }
}

fn hom_propagate(g: &FiniteGroup, gens: &[usize], map: &mut [Option<Perm>]) -> bool {
    let n = g.order();
    let mut queue: Vec<usize> = (0..n).filter(|&x| map[x].is_some()).collect();
    while let Some(x) = queue.pop() {
        let fx = map[x].clone().unwrap();
        for &s in gens {
            let fs = map[s].clone().expect("assigned generator");
            let y = g.op(x, s);
            let fy = fx.compose(&fs);
            match &map[y] {
                Some(v) if *v != fy => return false,
                Some(_) => {}
                None => {
                    map[y] = Some(fy);
                    queue.push(y);
                }
            }
        }
    }
    true
}

/// Anti-homomorphisms `f(a·b) = f(b)∘f(a)`, obtained by inverting homomorphisms.
pub fn antihomomorphisms_into(g: &FiniteGroup, target: &PermGroup) -> Vec<Vec<Perm>> {
    let mut out: Vec<Vec<Perm>> = homomorphisms_into(g, target)
        .into_iter()
        .map(|h| h.iter().map(Perm::inverse).collect())
        .collect();
    out.sort();
    out
}

/// Extends generator images to a homomorphism (or, with `anti`, an
/// anti-homomorphism) on all of `g`; `None` if the images are inconsistent.
pub fn extend_homomorphism(g: &FiniteGroup, gens: &[(usize, Perm)], anti: bool) -> Option<Vec<Perm>> {
    let deg = gens.first().map(|(_, p)| p.degree())?;
    let n = g.order();
    let mut map: Vec<Option<Perm>> = vec![None; n];
    map[0] = Some(Perm::identity(deg));
    let mut queue = vec![0usize];
    while let Some(x) = queue.pop() {
        let fx = map[x].clone().unwrap();
        for (s, fs) in gens {
            let y = g.op(x, *s);
            let fy = if anti { fs.compose(&fx) } else { fx.compose(fs) };
            match &map[y] {
                Some(v) if *v != fy => return None,
                Some(_) => {}
                None => {
                    map[y] = Some(fy);
                    queue.push(y);
                }
            }
        }
    }
    let images: Vec<Perm> = map.into_iter().collect::<Option<Vec<_>>>()?;
    let ok = (0..n).all(|a| {
        (0..n).all(|b| {
            let expect = if anti { images[b].compose(&images[a]) } else { images[a].compose(&images[b]) };
            images[g.op(a, b)] == expect
        })
    });
    ok.then_some(images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_BOUND;

    #[test]
    fn s3_and_d6_are_isomorphic() {
        let s3 = FiniteGroup::symmetric(3);
        let d3 = FiniteGroup::dihedral(3);
        let isos = find_isomorphisms(&[&s3], &[&d3], false);
        assert_eq!(isos.len(), 6);
        assert!(find_isomorphisms(&[&s3], &[&FiniteGroup::cyclic(6)], true).is_empty());
    }

    #[test]
    fn homs_from_cyclic_groups() {
        let z4 = FiniteGroup::cyclic(4);
        let aut = FiniteGroup::cyclic(5).automorphism_group(DEFAULT_ORDER_BOUND).unwrap();
        // Aut(Z5) is cyclic of order 4: Hom(Z4, Z4) has 4 elements.
        assert_eq!(homomorphisms_into(&z4, &aut).len(), 4);
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(homomorphisms_into(&z3, &aut).len(), 1);
        let v = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        // Hom(V4, Z4) = Hom(V4, Z2) has 4 elements.
        assert_eq!(homomorphisms_into(&v, &aut).len(), 4);
    }

    #[test]
    fn antihoms_reverse_products() {
        let s3 = FiniteGroup::symmetric(3);
        let target = s3.inner_group();
        for f in antihomomorphisms_into(&s3, &target) {
            for a in 0..6 {
                for b in 0..6 {
                    assert_eq!(f[s3.op(a, b)], f[b].compose(&f[a]));
                }
            }
        }
    }
}
