use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::coupling::{couplings_related, triplets_equivalent, twist_action, Coupling};
use super::triplet::{cocycle1_holds, cocycle2_holds, parent_witness};
use super::{extract_action, Cochain, Extension, ExtensionError, Section, Triplet};
use crate::brace::{BraceHom, SkewBrace};
use crate::group::enumerate_group_tables;
use crate::split::{ActionTriple, Tables};
use crate::Limits;

/// A brace isomorphism `φ: E₁ → E₂` with `φ ∘ i₁ = i₂` and `π₂ ∘ φ = π₁`,
/// searched as `φ(s₁(h) ∘ y) = s₂(h) ∘ θ(h) ∘ y` over maps `θ` with `θ(0) = 0`.
pub fn extensions_equivalent(e1: &Extension, e2: &Extension) -> Option<BraceHom> {
    if e1.h() != e2.h() || e1.i() != e2.i() {
        return None;
    }
    let (s1, s2) = (e1.canonical_section(), e2.canonical_section());
    let hn = e1.h().order();
    // coords[x] = (h, y) with x = s₁(h) ∘ i₁(y).
    let coords: Vec<(usize, usize)> = (0..e1.e().order())
        .map(|x| {
            let h = e1.proj(x);
            (h, e1.pull(e1.e().circ(e1.e().cinv(s1.at(h)), x)))
        })
        .collect();
    let mut st = EquivSearch { e1, e2, s2: &s2, coords: &coords, phi: vec![None; e1.e().order()], assigned: vec![false; hn] };
    st.assign_fiber(0, 0);
    st.assigned[0] = true;
    if st.search(1) {
        Some(BraceHom::new(st.phi.into_iter().map(|v| v.unwrap()).collect()))
    } else {
        None
    }
}

struct EquivSearch<'a> {
    e1: &'a Extension,
    e2: &'a Extension,
    s2: &'a Section,
    coords: &'a [(usize, usize)],
    phi: Vec<Option<usize>>,
    assigned: Vec<bool>,
}

impl EquivSearch<'_> {
    fn assign_fiber(&mut self, h: usize, theta: usize) {
        let i = self.e1.i();
        for &x in self.e1.fiber(h) {
            let y = self.coords[x].1;
            self.phi[x] = Some(self.e2.e().circ(self.s2.at(h), self.e2.inj(i.circ(theta, y))));
        }
    }

    fn search(&mut self, k: usize) -> bool {
        let hn = self.e1.h().order();
        if k == hn {
            return true;
        }
        for theta in 0..self.e1.i().order() {
            self.assign_fiber(k, theta);
            self.assigned[k] = true;
            if self.consistent(k) && self.search(k + 1) {
                return true;
            }
            self.assigned[k] = false;
        }
        for &x in self.e1.fiber(k) {
            self.phi[x] = None;
        }
        false
    }

    fn consistent(&self, k: usize) -> bool {
        let (h, e1, e2) = (self.e1.h(), self.e1.e(), self.e2.e());
        let hn = h.order();
        for a in 0..hn {
            for b in 0..hn {
                if !(self.assigned[a] && self.assigned[b]) || (a != k && b != k && h.add(a, b) != k && h.circ(a, b) != k) {
                    continue;
                }
                let check_add = self.assigned[h.add(a, b)];
                let check_circ = self.assigned[h.circ(a, b)];
                for &x in self.e1.fiber(a) {
                    let fx = self.phi[x].unwrap();
                    for &y in self.e1.fiber(b) {
                        let fy = self.phi[y].unwrap();
                        if check_add && self.phi[e1.add(x, y)].unwrap() != e2.add(fx, fy) {
                            return false;
                        }
                        if check_circ && self.phi[e1.circ(x, y)].unwrap() != e2.circ(fx, fy) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Every extension of `H` by `I` on the normal-form carrier `H × I`
/// (`i(y) = y`, `π(x) = ⌊x/|I|⌋`), found by enumerating both group tables
/// subject to the fiber constraints and keeping the brace pairs.
pub fn enumerate_extensions(h: &SkewBrace, i: &SkewBrace, limits: &Limits) -> Result<Vec<Extension>, ExtensionError> {
    let m = i.order();
    let n = h.order() * m;
    let fixed = |g: &crate::group::FiniteGroup| -> Vec<Option<usize>> {
        (0..n * n)
            .map(|k| {
                let (a, b) = (k / n, k % n);
                if a < m && b < m {
                    Some(g.op(a, b))
                } else {
                    None
                }
            })
            .collect()
    };
    let hadd = |a: usize, b: usize, c: usize| c / m == h.add(a / m, b / m);
    let hcirc = |a: usize, b: usize, c: usize| c / m == h.circ(a / m, b / m);
    let adds = enumerate_group_tables(n, &fixed(i.additive()), &hadd);
    let circs = enumerate_group_tables(n, &fixed(i.circle()), &hcirc);
    let pairs = (adds.len() as u64).saturating_mul(circs.len() as u64);
    if pairs > limits.budget {
        return Err(ExtensionError::SearchBudgetExceeded { partial: pairs, budget: limits.budget });
    }
    let inj: Vec<usize> = (0..m).collect();
    let proj: Vec<usize> = (0..n).map(|x| x / m).collect();
    let out: Vec<Extension> = adds
        .par_iter()
        .flat_map_iter(|a| {
            circs.iter().filter_map(|c| {
                let e = SkewBrace::new(a.clone(), c.clone()).ok()?;
                Extension::new(e, h.clone(), i.clone(), inj.clone(), proj.clone()).ok()
            }).collect::<Vec<_>>()
        })
        .collect();
    Ok(out)
}

/// Extensions grouped by coupling, then by equivalence.
#[derive(Clone, Debug)]
pub struct CouplingClasses {
    pub coupling: Coupling,
    /// Each inner list holds indices into [`ExtClasses::extensions`].
    pub classes: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct ExtClasses {
    pub extensions: Vec<Extension>,
    pub buckets: Vec<CouplingClasses>,
    /// Bucket pairs whose classes agree modulo the quotient groups although
    /// no `θ`-witness relates them.
    pub equal_without_witness: usize,
}

impl ExtClasses {
    pub fn class_count(&self) -> usize {
        self.buckets.iter().map(|b| b.classes.len()).sum()
    }
}

/// Partitions all extensions of `H` by `I` by coupling (under `≈`) and then
/// by equivalence of extensions.
pub fn ext_classes(h: &SkewBrace, i: &SkewBrace, limits: &Limits) -> Result<ExtClasses, ExtensionError> {
    let extensions = enumerate_extensions(h, i, limits)?;
    let actions: Vec<ActionTriple> = extensions.iter().map(|e| extract_action(e, &e.canonical_section())).collect();
    let mut buckets: Vec<(ActionTriple, Vec<usize>)> = Vec::new();
    for (k, chi) in actions.iter().enumerate() {
        let hits: Vec<usize> = buckets
            .iter()
            .enumerate()
            .filter(|(_, (rep, _))| couplings_related(i, rep, chi).is_some())
            .map(|(b, _)| b)
            .collect();
        assert!(hits.len() <= 1, "coupling relation must partition extensions");
        match hits.first() {
            Some(&b) => buckets[b].1.push(k),
            None => buckets.push((chi.clone(), vec![k])),
        }
    }
    let mut out = Vec::with_capacity(buckets.len());
    for (rep, members) in &buckets {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &k in members {
            match classes
                .iter_mut()
                .find(|c| extensions_equivalent(&extensions[c[0]], &extensions[k]).is_some())
            {
                Some(c) => c.push(k),
                None => classes.push(vec![k]),
            }
        }
        out.push(CouplingClasses { coupling: Coupling::new(i, rep.clone(), limits.order_bound)?, classes });
    }
    let mut equal_without_witness = 0;
    for a in 0..out.len() {
        for b in a + 1..out.len() {
            if out[a].coupling.same_classes(&out[b].coupling.rep) {
                equal_without_witness += 1;
            }
        }
    }
    Ok(ExtClasses { extensions, buckets: out, equal_without_witness })
}

/// All triplets `(χ, β, τ)` with `χ ≈ α` satisfying the action identities,
/// both cocycle conditions and the compatibility relation, sorted.
pub fn z2_alpha(h: &SkewBrace, i: &SkewBrace, alpha: &Coupling, limits: &Limits) -> Result<Vec<Triplet>, ExtensionError> {
    let hn = h.order();
    let m = i.order();
    let theta_count = (m as u64).saturating_pow(hn.saturating_sub(1) as u32);
    if theta_count > limits.budget {
        return Err(ExtensionError::SearchBudgetExceeded { partial: 0, budget: limits.budget });
    }
    let mut chis: BTreeSet<ActionTriple> = BTreeSet::new();
    let mut theta = vec![0usize; hn];
    loop {
        chis.insert(twist_action(i, &alpha.rep, &theta));
        let mut k = 1;
        while k < hn {
            theta[k] += 1;
            if theta[k] < m {
                break;
            }
            theta[k] = 0;
            k += 1;
        }
        if k >= hn {
            break;
        }
    }
    let counter = AtomicU64::new(theta_count);
    let results: Vec<Result<Vec<Triplet>, ExtensionError>> = chis
        .par_iter()
        .map(|chi| cocycles_for(h, i, chi, limits, &counter))
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    out.sort();
    Ok(out)
}

/// All triplets with the fixed action `chi` that satisfy the action
/// identities, both cocycle conditions and the compatibility relation, sorted.
pub fn z2_for_action(h: &SkewBrace, i: &SkewBrace, chi: &ActionTriple, limits: &Limits) -> Result<Vec<Triplet>, ExtensionError> {
    let counter = AtomicU64::new(0);
    let mut out = cocycles_for(h, i, chi, limits, &counter)?;
    out.sort();
    Ok(out)
}

fn cocycles_for(
    h: &SkewBrace,
    i: &SkewBrace,
    chi: &ActionTriple,
    limits: &Limits,
    counter: &AtomicU64,
) -> Result<Vec<Triplet>, ExtensionError> {
    let hn = h.order();
    let m = i.order();
    let inner_add: Vec<_> = (0..m).map(|y| i.additive().inner_automorphism(y)).collect();
    let inner_circ: Vec<_> = (0..m).map(|y| i.circle().inner_automorphism(y)).collect();
    let lambdas = i.lambdas();
    let cells: Vec<(usize, usize)> = (1..hn).flat_map(|a| (1..hn).map(move |b| (a, b))).collect();
    let mut beta_cands = Vec::with_capacity(cells.len());
    let mut tau_cands = Vec::with_capacity(cells.len());
    for &(a, b) in &cells {
        let mu_target = chi.mu[h.add(a, b)].compose(&chi.mu[b].compose(&chi.mu[a]).inverse());
        let bc: Vec<usize> = (0..m).filter(|&y| inner_add[y] == mu_target).collect();
        let lam_target = chi.nu[h.circ(a, b)].inverse().compose(&chi.nu[a].compose(&chi.nu[b]));
        let sig_target = chi.sigma[h.circ(a, b)].compose(&chi.sigma[b].compose(&chi.sigma[a]).inverse());
        let tc: Vec<usize> = (0..m)
            .filter(|&y| lambdas[y] == lam_target && inner_circ[y] == sig_target)
            .collect();
        if bc.is_empty() || tc.is_empty() {
            return Ok(Vec::new());
        }
        beta_cands.push(bc);
        tau_cands.push(tc);
    }
    if !chi.nu[0].is_identity() || !chi.mu[0].is_identity() || !chi.sigma[0].is_identity() {
        return Ok(Vec::new());
    }
    let tb = Tables::new(chi);
    let mut st = CocycleSearch {
        h,
        i,
        chi,
        tb: &tb,
        cells: &cells,
        beta_cands: &beta_cands,
        tau_cands: &tau_cands,
        beta: Cochain::zero(hn),
        tau: Cochain::zero(hn),
        known: {
            let mut k = vec![false; hn * hn];
            for x in 0..hn {
                k[x] = true;
                k[x * hn] = true;
            }
            k
        },
        counter,
        budget: limits.budget,
        out: Vec::new(),
    };
    st.search(0)?;
    Ok(st.out)
}

struct CocycleSearch<'a> {
    h: &'a SkewBrace,
    i: &'a SkewBrace,
    chi: &'a ActionTriple,
    tb: &'a Tables,
    cells: &'a [(usize, usize)],
    beta_cands: &'a [Vec<usize>],
    tau_cands: &'a [Vec<usize>],
    beta: Cochain,
    tau: Cochain,
    known: Vec<bool>,
    counter: &'a AtomicU64,
    budget: u64,
    out: Vec<Triplet>,
}

impl CocycleSearch<'_> {
    fn search(&mut self, k: usize) -> Result<(), ExtensionError> {
        let used = self.counter.fetch_add(1, Ordering::Relaxed) + 1;
        if used > self.budget {
            return Err(ExtensionError::SearchBudgetExceeded { partial: used, budget: self.budget });
        }
        if k == self.cells.len() {
            let t = Triplet { chi: self.chi.clone(), beta: self.beta.clone(), tau: self.tau.clone() };
            if parent_witness(self.h, self.i, &t).is_none() {
                self.out.push(t);
            }
            return Ok(());
        }
        let (a, b) = self.cells[k];
        let hn = self.h.order();
        self.known[a * hn + b] = true;
        for bi in 0..self.beta_cands[k].len() {
            self.beta.set(a, b, self.beta_cands[k][bi]);
            if !self.cocycle1_ok() {
                continue;
            }
            for ti in 0..self.tau_cands[k].len() {
                self.tau.set(a, b, self.tau_cands[k][ti]);
                if self.cocycle2_ok() {
                    self.search(k + 1)?;
                }
            }
        }
        self.known[a * hn + b] = false;
        self.beta.set(a, b, 0);
        self.tau.set(a, b, 0);
        Ok(())
    }

    fn cocycle1_ok(&self) -> bool {
        let (h, hn) = (self.h, self.h.order());
        let kn = |x: usize, y: usize| self.known[x * hn + y];
        (0..hn).all(|a| {
            (0..hn).all(|b| {
                (0..hn).all(|c| {
                    !(kn(a, h.add(b, c)) && kn(b, c) && kn(h.add(a, b), c) && kn(a, b))
                        || cocycle1_holds(h, self.i, &self.tb.mu, &self.beta, a, b, c)
                })
            })
        })
    }

    fn cocycle2_ok(&self) -> bool {
        let (h, hn) = (self.h, self.h.order());
        let kn = |x: usize, y: usize| self.known[x * hn + y];
        (0..hn).all(|a| {
            (0..hn).all(|b| {
                (0..hn).all(|c| {
                    !(kn(a, h.circ(b, c)) && kn(b, c) && kn(h.circ(a, b), c) && kn(a, b))
                        || cocycle2_holds(h, self.i, &self.tb.sigma, &self.tau, a, b, c)
                })
            })
        })
    }
}

/// The classes of `Z²_α` under `∼`, each sorted, ordered by least member.
pub fn h2_alpha(h: &SkewBrace, i: &SkewBrace, alpha: &Coupling, limits: &Limits) -> Result<Vec<Vec<Triplet>>, ExtensionError> {
    let all = z2_alpha(h, i, alpha, limits)?;
    Ok(partition_triplets(h, i, all))
}

pub(crate) fn partition_triplets(h: &SkewBrace, i: &SkewBrace, all: Vec<Triplet>) -> Vec<Vec<Triplet>> {
    let mut classes: Vec<Vec<Triplet>> = Vec::new();
    for t in all {
        match classes.iter_mut().find(|c| triplets_equivalent(h, i, &c[0], &t).is_some()) {
            Some(c) => c.push(t),
            None => classes.push(vec![t]),
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::extension::{coupling_of, extension_from_triplet, triplet};
    use crate::group::FiniteGroup;

    fn z(n: usize) -> SkewBrace {
        SkewBrace::trivial(FiniteGroup::cyclic(n))
    }

    #[test]
    fn equivalence_detects_identity_and_distinguishes_z4_from_klein() {
        let a = catalog::z4_over_z2();
        let b = catalog::z2_by_z2_split();
        let phi = extensions_equivalent(&a, &a).unwrap();
        assert_eq!(phi, BraceHom::identity(4));
        assert!(extensions_equivalent(&a, &b).is_none());
    }

    #[test]
    fn rebuilt_twisted_triplet_is_equivalent() {
        let ext = catalog::z4_over_z2();
        for s in ext.sections() {
            let t = triplet(&ext, &s);
            let rebuilt = extension_from_triplet(ext.h(), ext.i(), &t).unwrap();
            let phi = extensions_equivalent(&rebuilt, &ext).unwrap();
            assert!(phi.is_hom(rebuilt.e(), ext.e()));
        }
    }

    #[test]
    fn z2_by_z2_extensions() {
        let limits = Limits::default();
        let all = enumerate_extensions(&z(2), &z(2), &limits).unwrap();
        assert_eq!(all.len(), 4);
        let classes = ext_classes(&z(2), &z(2), &limits).unwrap();
        assert_eq!(classes.buckets.len(), 1);
        assert_eq!(classes.class_count(), 4);
        let alpha = coupling_of(&catalog::z2_by_z2_split(), 16).unwrap();
        let z2 = z2_alpha(&z(2), &z(2), &alpha, &limits).unwrap();
        assert_eq!(z2.len(), 4);
        assert_eq!(h2_alpha(&z(2), &z(2), &alpha, &limits).unwrap().len(), 4);
    }

    #[test]
    fn budget_is_enforced() {
        let limits = Limits { budget: 1, ..Limits::default() };
        let alpha = coupling_of(&catalog::z2_by_z2_split(), 16).unwrap();
        assert!(matches!(
            z2_alpha(&z(2), &z(2), &alpha, &limits),
            Err(ExtensionError::SearchBudgetExceeded { .. })
        ));
    }
}
