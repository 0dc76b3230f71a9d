use super::{lambda_normal_closure, Extension, ExtensionError, Triplet};
use crate::brace::SkewBrace;
use crate::perm::{Perm, PermGroup};
use crate::split::ActionTriple;

/// Classes of `ν` mod `N`, `μ` mod `Inn(I,+)` and `σ` mod `Inn(I,∘)`,
/// stored as a representative triple with the three subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coupling {
    pub rep: ActionTriple,
    pub n_sub: PermGroup,
    pub inn_add: PermGroup,
    pub inn_circ: PermGroup,
}

impl Coupling {
    pub fn new(i: &SkewBrace, rep: ActionTriple, bound: usize) -> Result<Coupling, ExtensionError> {
        Ok(Coupling {
            rep,
            n_sub: lambda_normal_closure(i, bound)?,
            inn_add: i.additive().inner_group(),
            inn_circ: i.circle().inner_group(),
        })
    }

    /// Equality of the three classes for every `h`.
    pub fn same_classes(&self, other: &ActionTriple) -> bool {
        let r = &self.rep;
        r.nu.len() == other.nu.len()
            && (0..r.nu.len()).all(|h| {
                self.n_sub.equal_mod(&r.nu[h], &other.nu[h])
                    && self.inn_add.equal_mod(&r.mu[h], &other.mu[h])
                    && self.inn_circ.equal_mod(&r.sigma[h], &other.sigma[h])
            })
    }
}

pub fn coupling_of(ext: &Extension, bound: usize) -> Result<Coupling, ExtensionError> {
    let rep = super::extract_action(ext, &ext.canonical_section());
    Coupling::new(ext.i(), rep, bound)
}

/// `(ν λ_θ, i⁺_{ν(−θ)} μ, i∘_{θ⁻¹} σ)`, the action seen through the section
/// `h ↦ s(h) ∘ θ(h)`.
pub fn twist_action(i: &SkewBrace, chi: &ActionTriple, theta: &[usize]) -> ActionTriple {
    let hn = chi.nu.len();
    let m = i.order();
    let mut out = ActionTriple { nu: Vec::with_capacity(hn), mu: Vec::with_capacity(hn), sigma: Vec::with_capacity(hn) };
    for h in 0..hn {
        let y = theta[h];
        out.nu.push(chi.nu[h].compose(&i.lambda(y)));
        let c = chi.nu[h].apply(i.neg(y));
        out.mu.push(perm(m, |z| i.sub(i.add(c, chi.mu[h].apply(z)), c)));
        let yi = i.cinv(y);
        out.sigma.push(perm(m, |z| i.circ(i.circ(yi, chi.sigma[h].apply(z)), y)));
    }
    out
}

fn perm(m: usize, f: impl Fn(usize) -> usize) -> Perm {
    Perm::from_images((0..m).map(f).collect()).expect("conjugation is a bijection")
}

/// For each `h`, the set `Θ_h` of `y` with `ν'_h = ν_h λ_y`,
/// `μ'_h = i⁺_{ν_h(−y)} μ_h` and `σ'_h = i∘_{y⁻¹} σ_h`. Returns `None`
/// unless every `Θ_h` is nonempty and `0 ∈ Θ_0`.
pub fn couplings_related(i: &SkewBrace, chi1: &ActionTriple, chi2: &ActionTriple) -> Option<Vec<Vec<usize>>> {
    let hn = chi1.nu.len();
    if chi2.nu.len() != hn {
        return None;
    }
    let m = i.order();
    let lambdas = i.lambdas();
    let mut sets = Vec::with_capacity(hn);
    for h in 0..hn {
        let set: Vec<usize> = (0..m)
            .filter(|&y| {
                if chi2.nu[h] != chi1.nu[h].compose(&lambdas[y]) {
                    return false;
                }
                let c = chi1.nu[h].apply(i.neg(y));
                let yi = i.cinv(y);
                (0..m).all(|z| {
                    chi2.mu[h].apply(z) == i.sub(i.add(c, chi1.mu[h].apply(z)), c)
                        && chi2.sigma[h].apply(z) == i.circ(i.circ(yi, chi1.sigma[h].apply(z)), y)
                })
            })
            .collect();
        if set.is_empty() {
            return None;
        }
        sets.push(set);
    }
    if !sets[0].contains(&0) {
        return None;
    }
    Some(sets)
}

/// A map `θ` with `θ(0) = 0` carrying `t1` to `t2`: the actions are related
/// as in [`couplings_related`] and
/// `β₂(h₁,h₂) = ν_{h₁+h₂}(−θ(h₁+h₂)) + β₁(h₁,h₂) + μ_{h₂}(ν_{h₁}(θ(h₁))) + ν_{h₂}(θ(h₂))`,
/// `τ₂(h₁,h₂) = θ(h₁∘h₂)⁻¹ ∘ τ₁(h₁,h₂) ∘ σ_{h₂}(θ(h₁)) ∘ θ(h₂)`,
/// with `ν, μ, σ` taken from `t1`.
pub fn triplets_equivalent(h: &SkewBrace, i: &SkewBrace, t1: &Triplet, t2: &Triplet) -> Option<Vec<usize>> {
    let mut cands = couplings_related(i, &t1.chi, &t2.chi)?;
    cands[0] = vec![0];
    let hn = h.order();
    let mut theta: Vec<Option<usize>> = vec![None; hn];
    if search_theta(h, i, t1, t2, &cands, 0, &mut theta) {
        Some(theta.into_iter().map(|v| v.unwrap()).collect())
    } else {
        None
    }
}

fn search_theta(
    h: &SkewBrace,
    i: &SkewBrace,
    t1: &Triplet,
    t2: &Triplet,
    cands: &[Vec<usize>],
    k: usize,
    theta: &mut Vec<Option<usize>>,
) -> bool {
    if k == theta.len() {
        return true;
    }
    for &y in &cands[k] {
        theta[k] = Some(y);
        if pairs_consistent(h, i, t1, t2, theta, k) && search_theta(h, i, t1, t2, cands, k + 1, theta) {
            return true;
        }
    }
    theta[k] = None;
    false
}

/// Checks the two cocycle relations on all pairs that involve `k` and whose
/// required `θ` values are known.
fn pairs_consistent(h: &SkewBrace, i: &SkewBrace, t1: &Triplet, t2: &Triplet, theta: &[Option<usize>], k: usize) -> bool {
    let hn = h.order();
    let chi = &t1.chi;
    for a in 0..hn {
        for b in 0..hn {
            if a != k && b != k && h.add(a, b) != k && h.circ(a, b) != k {
                continue;
            }
            let (Some(ta), Some(tb)) = (theta[a], theta[b]) else { continue };
            if let Some(ts) = theta[h.add(a, b)] {
                let s = h.add(a, b);
                let rhs = i.add(
                    i.add(i.add(chi.nu[s].apply(i.neg(ts)), t1.beta.get(a, b)), chi.mu[b].apply(chi.nu[a].apply(ta))),
                    chi.nu[b].apply(tb),
                );
                if t2.beta.get(a, b) != rhs {
                    return false;
                }
            }
            if let Some(tc) = theta[h.circ(a, b)] {
                let rhs = i.circ(
                    i.circ(i.circ(i.cinv(tc), t1.tau.get(a, b)), chi.sigma[b].apply(ta)),
                    tb,
                );
                if t2.tau.get(a, b) != rhs {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::extension::triplet;

    #[test]
    fn section_change_gives_related_triplets() {
        for ext in [catalog::z4_over_z2(), catalog::klein_by_z2_split()] {
            let s1 = ext.canonical_section();
            let t1 = triplet(&ext, &s1);
            let c = coupling_of(&ext, 16).unwrap();
            for s2 in ext.sections() {
                let t2 = triplet(&ext, &s2);
                let expect = ext.section_difference(&s1, &s2);
                assert_eq!(twist_action(ext.i(), &t1.chi, &expect), t2.chi);
                let sets = couplings_related(ext.i(), &t1.chi, &t2.chi).unwrap();
                assert!((0..expect.len()).all(|h| sets[h].contains(&expect[h])));
                let theta = triplets_equivalent(ext.h(), ext.i(), &t1, &t2).unwrap();
                assert_eq!(triplet(&ext, &ext.shift_section(&s1, &theta)), t2);
                assert!(c.same_classes(&t2.chi));
            }
        }
    }

    #[test]
    fn reflexive_witness_is_zero() {
        let ext = catalog::z4_over_z2();
        let t = triplet(&ext, &ext.canonical_section());
        assert_eq!(triplets_equivalent(ext.h(), ext.i(), &t, &t), Some(vec![0, 0]));
    }

    #[test]
    fn z4_and_klein_triplets_are_inequivalent() {
        let a = catalog::z4_over_z2();
        let b = catalog::z2_by_z2_split();
        let ta = triplet(&a, &a.canonical_section());
        let tb = triplet(&b, &b.canonical_section());
        assert!(triplets_equivalent(a.h(), a.i(), &ta, &tb).is_none());
    }
}
