use thiserror::Error;

use super::{Cochain, Extension, ExtensionError, Triplet};
use crate::brace::SkewBrace;
use crate::group::FiniteGroup;
use crate::split::{Component, Tables};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripletError {
    #[error("triplet arrays do not match |H| and |I|")]
    Shape,
    #[error("{component}_{h} is not an automorphism of the required group")]
    NotAutomorphism { h: usize, component: Component },
    #[error("{component}_0 is not the identity")]
    NotUnital { component: Component },
    #[error("cocycles do not vanish when an argument is 0")]
    NotNormalized,
    #[error("nu identity fails at ({h1}, {h2})")]
    Action1 { h1: usize, h2: usize },
    #[error("mu identity fails at ({h1}, {h2})")]
    Action2 { h1: usize, h2: usize },
    #[error("sigma identity fails at ({h1}, {h2})")]
    Action3 { h1: usize, h2: usize },
    #[error("additive cocycle condition fails at ({h1}, {h2}, {h3})")]
    Cocycle1 { h1: usize, h2: usize, h3: usize },
    #[error("circle cocycle condition fails at ({h1}, {h2}, {h3})")]
    Cocycle2 { h1: usize, h2: usize, h3: usize },
    #[error("compatibility relation fails at h=({h1}, {h2}, {h3}), y=({y1}, {y2}, {y3})")]
    Parent {
        h1: usize,
        h2: usize,
        h3: usize,
        y1: usize,
        y2: usize,
        y3: usize,
    },
}

/// Checks every condition a triplet must satisfy to define an extension:
/// automorphism and unit conditions, normalization, the three action
/// identities, both cocycle conditions and the compatibility relation.
///
/// Identities used, with `i⁺_y(z) = y + z − y` and `i∘_y(z) = y∘z∘y⁻¹`:
/// - `ν_{h₁∘h₂} = ν_{h₁} ν_{h₂} λ⁻¹_{τ(h₁,h₂)}`
/// - `μ_{h₁+h₂} = i⁺_{β(h₁,h₂)} μ_{h₂} μ_{h₁}`
/// - `σ_{h₁∘h₂} = i∘_{τ(h₁,h₂)} σ_{h₂} σ_{h₁}`
/// - `β(h₁,h₂+h₃) + β(h₂,h₃) = β(h₁+h₂,h₃) + μ_{h₃}(β(h₁,h₂))`
/// - `τ(h₁,h₂∘h₃) ∘ τ(h₂,h₃) = τ(h₁∘h₂,h₃) ∘ σ_{h₃}(τ(h₁,h₂))`
pub fn check_triplet(h: &SkewBrace, i: &SkewBrace, t: &Triplet) -> Result<(), TripletError> {
    let (hn, m) = (h.order(), i.order());
    let chi = &t.chi;
    let shapes_ok = [&chi.nu, &chi.mu, &chi.sigma]
        .iter()
        .all(|c| c.len() == hn && c.iter().all(|p| p.degree() == m))
        && t.beta.size() == hn
        && t.tau.size() == hn
        && t.beta.values().iter().chain(t.tau.values()).all(|&v| v < m);
    if !shapes_ok {
        return Err(TripletError::Shape);
    }
    for x in 0..hn {
        if !i.additive().is_automorphism(&chi.nu[x]) {
            return Err(TripletError::NotAutomorphism { h: x, component: Component::Nu });
        }
        if !i.additive().is_automorphism(&chi.mu[x]) {
            return Err(TripletError::NotAutomorphism { h: x, component: Component::Mu });
        }
        if !i.circle().is_automorphism(&chi.sigma[x]) {
            return Err(TripletError::NotAutomorphism { h: x, component: Component::Sigma });
        }
    }
    for c in [Component::Nu, Component::Mu, Component::Sigma] {
        if !chi.component(c)[0].is_identity() {
            return Err(TripletError::NotUnital { component: c });
        }
    }
    if !t.beta.is_normalized() || !t.tau.is_normalized() {
        return Err(TripletError::NotNormalized);
    }
    action_identities(h, i, t)?;
    cocycle_conditions(h, i, t)?;
    match parent_witness(h, i, t) {
        Some((h1, h2, h3, y1, y2, y3)) => Err(TripletError::Parent { h1, h2, h3, y1, y2, y3 }),
        None => Ok(()),
    }
}

fn action_identities(h: &SkewBrace, i: &SkewBrace, t: &Triplet) -> Result<(), TripletError> {
    let hn = h.order();
    let m = i.order();
    let chi = &t.chi;
    for h1 in 0..hn {
        for h2 in 0..hn {
            let tau = t.tau.get(h1, h2);
            let beta = t.beta.get(h1, h2);
            let nu12 = &chi.nu[h.circ(h1, h2)];
            let nu_rhs = chi.nu[h1].compose(&chi.nu[h2]);
            let lam_inv = i.lambda(tau).inverse();
            if (0..m).any(|y| nu12.apply(y) != nu_rhs.apply(lam_inv.apply(y))) {
                return Err(TripletError::Action1 { h1, h2 });
            }
            let mu12 = &chi.mu[h.add(h1, h2)];
            let mu21 = chi.mu[h2].compose(&chi.mu[h1]);
            if (0..m).any(|y| mu12.apply(y) != i.sub(i.add(beta, mu21.apply(y)), beta)) {
                return Err(TripletError::Action2 { h1, h2 });
            }
            let sigma12 = &chi.sigma[h.circ(h1, h2)];
            let sigma21 = chi.sigma[h2].compose(&chi.sigma[h1]);
            let tinv = i.cinv(tau);
            if (0..m).any(|y| sigma12.apply(y) != i.circ(i.circ(tau, sigma21.apply(y)), tinv)) {
                return Err(TripletError::Action3 { h1, h2 });
            }
        }
    }
    Ok(())
}

pub(crate) fn cocycle1_holds(h: &SkewBrace, i: &SkewBrace, mu: &[Vec<usize>], beta: &Cochain, a: usize, b: usize, c: usize) -> bool {
    let lhs = i.add(beta.get(a, h.add(b, c)), beta.get(b, c));
    let rhs = i.add(beta.get(h.add(a, b), c), mu[c][beta.get(a, b)]);
    lhs == rhs
}

pub(crate) fn cocycle2_holds(h: &SkewBrace, i: &SkewBrace, sigma: &[Vec<usize>], tau: &Cochain, a: usize, b: usize, c: usize) -> bool {
    let lhs = i.circ(tau.get(a, h.circ(b, c)), tau.get(b, c));
    let rhs = i.circ(tau.get(h.circ(a, b), c), sigma[c][tau.get(a, b)]);
    lhs == rhs
}

fn cocycle_conditions(h: &SkewBrace, i: &SkewBrace, t: &Triplet) -> Result<(), TripletError> {
    let tb = Tables::new(&t.chi);
    let hn = h.order();
    for h1 in 0..hn {
        for h2 in 0..hn {
            for h3 in 0..hn {
                if !cocycle1_holds(h, i, &tb.mu, &t.beta, h1, h2, h3) {
                    return Err(TripletError::Cocycle1 { h1, h2, h3 });
                }
                if !cocycle2_holds(h, i, &tb.sigma, &t.tau, h1, h2, h3) {
                    return Err(TripletError::Cocycle2 { h1, h2, h3 });
                }
            }
        }
    }
    Ok(())
}

/// First tuple violating the brace compatibility relation between `χ`,
/// `β` and `τ`, written in additive coordinates `a = ν_h(y)`:
///
/// `ν_{h₁∘(h₂+h₃)}(τ(h₁,h₂+h₃) ∘ σ_{h₂+h₃}(y₁) ∘ ν⁻¹_{h₂+h₃}(β(h₂,h₃) + μ_{h₃}(ν_{h₂}(y₂)) + ν_{h₃}(y₃)))`
/// `= β(h₁∘h₂−h₁, h₁∘h₃) + μ_{h₁∘h₃}(β(h₁∘h₂, −h₁) + μ_{−h₁}(A − ν_{h₁}(y₁)) − β(h₁, −h₁)) + C`
///
/// where `A = ν_{h₁∘h₂}(τ(h₁,h₂) ∘ σ_{h₂}(y₁) ∘ y₂)` and
/// `C = ν_{h₁∘h₃}(τ(h₁,h₃) ∘ σ_{h₃}(y₁) ∘ y₃)`.
pub(crate) fn parent_witness(
    h: &SkewBrace,
    i: &SkewBrace,
    t: &Triplet,
) -> Option<(usize, usize, usize, usize, usize, usize)> {
    let tb = Tables::new(&t.chi);
    let (hn, m) = (h.order(), i.order());
    let (beta, tau) = (&t.beta, &t.tau);
    for h1 in 0..hn {
        let nh1 = h.neg(h1);
        let b_h1_nh1 = beta.get(h1, nh1);
        for h2 in 0..hn {
            let h12 = h.circ(h1, h2);
            let d = h.sub(h12, h1);
            for h3 in 0..hn {
                let s23 = h.add(h2, h3);
                let outer = h.circ(h1, s23);
                let h13 = h.circ(h1, h3);
                let t_1_23 = tau.get(h1, s23);
                for y1 in 0..m {
                    let lhs_head = i.circ(t_1_23, tb.sigma[s23][y1]);
                    let a_head = i.circ(tau.get(h1, h2), tb.sigma[h2][y1]);
                    let c_head = i.circ(tau.get(h1, h3), tb.sigma[h3][y1]);
                    let nu_y1 = tb.nu[h1][y1];
                    for y2 in 0..m {
                        let a = tb.nu[h12][i.circ(a_head, y2)];
                        let inner = i.sub(
                            i.add(beta.get(h12, nh1), tb.mu[nh1][i.sub(a, nu_y1)]),
                            b_h1_nh1,
                        );
                        let rhs_head = i.add(beta.get(d, h13), tb.mu[h13][inner]);
                        let sum_head = i.add(beta.get(h2, h3), tb.mu[h3][tb.nu[h2][y2]]);
                        for y3 in 0..m {
                            let sum = i.add(sum_head, tb.nu[h3][y3]);
                            let lhs = tb.nu[outer][i.circ(lhs_head, tb.nu_inv[s23][sum])];
                            let c = tb.nu[h13][i.circ(c_head, y3)];
                            if lhs != i.add(rhs_head, c) {
                                return Some((h1, h2, h3, y1, y2, y3));
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Builds `E` on `H × I` from a triplet:
/// `(h₁,y₁)+(h₂,y₂) = (h₁+h₂, ν⁻¹_{h₁+h₂}(β(h₁,h₂) + μ_{h₂}(ν_{h₁}(y₁)) + ν_{h₂}(y₂)))` and
/// `(h₁,y₁)∘(h₂,y₂) = (h₁∘h₂, τ(h₁,h₂) ∘ σ_{h₂}(y₁) ∘ y₂)`,
/// with `i(y) = (0, y)` and `π(h, y) = h`.
pub fn extension_from_triplet(h: &SkewBrace, i: &SkewBrace, t: &Triplet) -> Result<Extension, ExtensionError> {
    check_triplet(h, i, t)?;
    build_unchecked(h, i, t)
}

pub(crate) fn build_unchecked(h: &SkewBrace, i: &SkewBrace, t: &Triplet) -> Result<Extension, ExtensionError> {
    let m = i.order();
    let n = h.order() * m;
    let tb = Tables::new(&t.chi);
    let add = FiniteGroup::from_fn(n, |x, y| {
        let (h1, y1, h2, y2) = (x / m, x % m, y / m, y % m);
        let hs = h.add(h1, h2);
        let sum = i.add(i.add(t.beta.get(h1, h2), tb.mu[h2][tb.nu[h1][y1]]), tb.nu[h2][y2]);
        hs * m + tb.nu_inv[hs][sum]
    })
    .map_err(|e| ExtensionError::Construction(crate::brace::BraceError::Additive(e)))?;
    let circ = FiniteGroup::from_fn(n, |x, y| {
        let (h1, y1, h2, y2) = (x / m, x % m, y / m, y % m);
        h.circ(h1, h2) * m + i.circ(i.circ(t.tau.get(h1, h2), tb.sigma[h2][y1]), y2)
    })
    .map_err(|e| ExtensionError::Construction(crate::brace::BraceError::Circle(e)))?;
    let e = SkewBrace::new(add, circ)?;
    let inj = (0..m).collect();
    let proj = (0..n).map(|x| x / m).collect();
    Extension::new(e, h.clone(), i.clone(), inj, proj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{triplet, Cochain};
    use crate::split::ActionTriple;

    fn z(n: usize) -> SkewBrace {
        SkewBrace::trivial(FiniteGroup::cyclic(n))
    }

    #[test]
    fn z4_from_triplet() {
        let mut beta = Cochain::zero(2);
        beta.set(1, 1, 1);
        let t = Triplet { chi: ActionTriple::identity(2, 2), beta: beta.clone(), tau: beta };
        let ext = extension_from_triplet(&z(2), &z(2), &t).unwrap();
        assert!(ext.e().additive().is_cyclic());
        assert!(ext.e().circle().is_cyclic());
        assert_eq!(triplet(&ext, &ext.canonical_section()), t);
    }

    #[test]
    fn rejects_unnormalized_and_broken_cocycles() {
        let mut beta = Cochain::zero(2);
        beta.set(0, 1, 1);
        let t = Triplet { chi: ActionTriple::identity(2, 2), beta, tau: Cochain::zero(2) };
        assert_eq!(check_triplet(&z(2), &z(2), &t), Err(TripletError::NotNormalized));

        // On H = Z3 a single nonzero β cell violates the additive cocycle law.
        let mut beta = Cochain::zero(3);
        beta.set(1, 1, 1);
        let t = Triplet { chi: ActionTriple::identity(3, 2), beta, tau: Cochain::zero(3) };
        assert!(matches!(check_triplet(&z(3), &z(2), &t), Err(TripletError::Cocycle1 { .. })));
    }

    #[test]
    fn split_triplet_round_trip_over_z2_by_z3() {
        let (h, i) = (z(2), z(3));
        let neg = crate::perm::Perm::from_images(vec![0, 2, 1]).unwrap();
        let id = crate::perm::Perm::identity(3);
        let chi = ActionTriple { nu: vec![id.clone(), neg.clone()], mu: vec![id.clone(), neg.clone()], sigma: vec![id, neg] };
        let t = Triplet { chi, beta: Cochain::zero(2), tau: Cochain::zero(2) };
        let ext = extension_from_triplet(&h, &i, &t).unwrap();
        assert_eq!(triplet(&ext, &ext.canonical_section()), t);
        for s in ext.sections() {
            check_triplet(&h, &i, &triplet(&ext, &s)).unwrap();
        }
    }
}
