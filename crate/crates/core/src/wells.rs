//! The action of `Autb(H) × Autb(I)` on extensions by a trivial brace `I`,
//! the stabiliser `C` of a coupling, the Wells map `ω` and the exact sequence
//! `0 → Z¹_N(H, Z(I)) → Autb_I(E) → C → H²_N(H, Z(I))`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::brace::{BraceError, SkewBrace};
use crate::cohomology::{h2_act, h2n, z1n, CocyclePair, CohomologyError, CohomologyGroup, Coefficients, DerivationLaw};
use crate::extension::{
    extension_from_triplet, extensions_equivalent, extract_action, triplet, Cochain, Coupling, Extension, ExtensionError,
};
use crate::perm::Perm;
use crate::report::Report;
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WellsError {
    #[error("the kernel I must be a trivial skew brace")]
    NotTrivialCoefficients,
    #[error("no cohomology class reproduces the action of stabiliser element {c}")]
    ActionNotTransitive { c: usize },
    #[error("transformed pair is not a cocycle")]
    NotACocycle,
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Brace(#[from] BraceError),
}

impl WellsError {
    pub fn is_budget(&self) -> bool {
        match self {
            WellsError::Extension(ExtensionError::SearchBudgetExceeded { .. }) => true,
            WellsError::Cohomology(c) => c.is_budget(),
            _ => false,
        }
    }
}

/// `(φ, θ) ∈ Autb(H) × Autb(I)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AutPair {
    pub phi: Perm,
    pub theta: Perm,
}

impl AutPair {
    pub fn identity(h: usize, i: usize) -> AutPair {
        AutPair { phi: Perm::identity(h), theta: Perm::identity(i) }
    }

    /// `(φ₁φ₂, θ₁θ₂)`.
    pub fn compose(&self, other: &AutPair) -> AutPair {
        AutPair { phi: self.phi.compose(&other.phi), theta: self.theta.compose(&other.theta) }
    }

    pub fn inverse(&self) -> AutPair {
        AutPair { phi: self.phi.inverse(), theta: self.theta.inverse() }
    }

    pub fn is_identity(&self) -> bool {
        self.phi.is_identity() && self.theta.is_identity()
    }
}

fn require_trivial(i: &SkewBrace) -> Result<(), WellsError> {
    if i.is_trivial() {
        Ok(())
    } else {
        Err(WellsError::NotTrivialCoefficients)
    }
}

/// `E^{(φ,θ)}`: the same brace with injection `i∘θ` and projection `φ⁻¹∘π`.
pub fn pair_act(ext: &Extension, c: &AutPair) -> Result<Extension, WellsError> {
    require_trivial(ext.i())?;
    let inj = (0..ext.i().order()).map(|y| ext.inj(c.theta.apply(y))).collect();
    let phi_inv = c.phi.inverse();
    let proj = (0..ext.e().order()).map(|x| phi_inv.apply(ext.proj(x))).collect();
    Ok(Extension::new(ext.e().clone(), ext.h().clone(), ext.i().clone(), inj, proj)?)
}

/// The pairs `(φ, θ)` with `ν_h = θ⁻¹ν_{φ(h)}θ`, and the same for `μ` and
/// `σ` modulo inner automorphisms of `(I,+)` and `(I,∘)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerC {
    /// Sorted; the identity pair is first.
    pub pairs: Vec<AutPair>,
}

impl StabilizerC {
    pub fn order(&self) -> usize {
        self.pairs.len()
    }

    pub fn index_of(&self, c: &AutPair) -> Option<usize> {
        self.pairs.binary_search(c).ok()
    }

    pub fn is_subgroup(&self) -> bool {
        self.pairs.iter().all(|a| {
            self.index_of(&a.inverse()).is_some() && self.pairs.iter().all(|b| self.index_of(&a.compose(b)).is_some())
        })
    }
}

pub fn in_stabilizer(coupling: &Coupling, c: &AutPair) -> bool {
    let r = &coupling.rep;
    let ti = c.theta.inverse();
    let conj = |p: &Perm| ti.compose(p).compose(&c.theta);
    (0..r.nu.len()).all(|h| {
        let fh = c.phi.apply(h);
        r.nu[h] == conj(&r.nu[fh])
            && coupling.inn_add.equal_mod(&r.mu[h], &conj(&r.mu[fh]))
            && coupling.inn_circ.equal_mod(&r.sigma[h], &conj(&r.sigma[fh]))
    })
}

pub fn stabilizer_c(h: &SkewBrace, i: &SkewBrace, coupling: &Coupling, bound: usize) -> Result<StabilizerC, WellsError> {
    let auth = h.automorphisms(bound)?;
    let auti = i.automorphisms(bound)?;
    let mut pairs = Vec::new();
    for phi in auth.iter() {
        for theta in auti.iter() {
            let c = AutPair { phi: phi.clone(), theta: theta.clone() };
            if in_stabilizer(coupling, &c) {
                pairs.push(c);
            }
        }
    }
    pairs.sort();
    let s = StabilizerC { pairs };
    assert!(s.is_subgroup(), "the stabiliser of a coupling is a subgroup");
    Ok(s)
}

/// `g^{(φ,θ)}(h₁,h₂) = θ⁻¹(g(φ(h₁), φ(h₂)))`, and the same for `f`.
pub fn transform_pair(coeffs: &Coefficients, p: &CocyclePair, c: &AutPair) -> Result<CocyclePair, WellsError> {
    let n = p.g.size();
    let ti = c.theta.inverse();
    let (g, f) = coeffs.push_pair(p);
    let tr = |ch: &Cochain| Cochain::from_fn(n, |a, b| ti.apply(ch.get(c.phi.apply(a), c.phi.apply(b))));
    Ok(coeffs.lift(&tr(&g), &tr(&f))?)
}

/// The class of the transformed representative of `cls`.
pub fn c_act_on_h2(group: &CohomologyGroup, coeffs: &Coefficients, c: &AutPair, cls: usize) -> Result<usize, WellsError> {
    let p = transform_pair(coeffs, group.representative(cls), c)?;
    group.class_of(&p).ok_or(WellsError::NotACocycle)
}

/// The Wells map of an extension, tabulated over `C`.
#[derive(Clone, Debug)]
pub struct WellsMap {
    pub stabilizer: StabilizerC,
    pub coeffs: Coefficients,
    pub group: CohomologyGroup,
    /// `omega[k]` is the class index of `ω(stabilizer.pairs[k])`.
    pub omega: Vec<usize>,
}

impl WellsMap {
    pub fn act(&self, c: usize, cls: usize) -> Result<usize, WellsError> {
        c_act_on_h2(&self.group, &self.coeffs, &self.stabilizer.pairs[c], cls)
    }

    fn product(&self, a: usize, b: usize) -> usize {
        let p = self.stabilizer.pairs[a].compose(&self.stabilizer.pairs[b]);
        self.stabilizer.index_of(&p).expect("closed under composition")
    }

    /// `ω(c₁c₂) = ω(c₁)^{c₂} + ω(c₂)` on all of `C × C`.
    pub fn derivation_law_holds(&self) -> Result<bool, WellsError> {
        let n = self.stabilizer.order();
        for a in 0..n {
            for b in 0..n {
                let lhs = self.omega[self.product(a, b)];
                let rhs = self.group.add(self.act(b, self.omega[a])?, self.omega[b]);
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `ω(c₁c₂) = ω(c₁) + ω(c₂)` on all of `C × C`.
    pub fn is_hom(&self) -> bool {
        let n = self.stabilizer.order();
        (0..n).all(|a| (0..n).all(|b| self.omega[self.product(a, b)] == self.group.add(self.omega[a], self.omega[b])))
    }
}

/// For each `c ∈ C`, the unique class `h_c` with `[E]^c = [E]^{h_c}`,
/// found by searching the orbit of `[E]` under `H²_N(H, Z(I))`.
pub fn wells_map(ext: &Extension, limits: &Limits) -> Result<WellsMap, WellsError> {
    require_trivial(ext.i())?;
    let (h, i) = (ext.h(), ext.i());
    let t = triplet(ext, &ext.canonical_section());
    let coupling = Coupling::new(i, t.chi.clone(), limits.order_bound)?;
    let stabilizer = stabilizer_c(h, i, &coupling, limits.order_bound)?;
    let coeffs = Coefficients::centre(i, &t.chi)?;
    let group = h2n(h, &coeffs, limits)?;
    let orbit: Vec<Extension> = (0..group.order())
        .map(|x| {
            let tx = h2_act(h, i, &coeffs, group.representative(x), &t)?;
            Ok(extension_from_triplet(h, i, &tx)?)
        })
        .collect::<Result<_, WellsError>>()?;
    let omega: Vec<Result<usize, WellsError>> = stabilizer
        .pairs
        .par_iter()
        .enumerate()
        .map(|(k, c)| {
            let ec = pair_act(ext, c)?;
            orbit
                .iter()
                .position(|ex| extensions_equivalent(&ec, ex).is_some())
                .ok_or(WellsError::ActionNotTransitive { c: k })
        })
        .collect();
    let omega = omega.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(WellsMap { stabilizer, coeffs, group, omega })
}

/// `Autb_I(E)`: brace automorphisms of `E` mapping `i(I)` into itself, sorted.
pub fn autb_i(ext: &Extension, bound: usize) -> Result<Vec<Perm>, WellsError> {
    let image: BTreeSet<usize> = ext.inj_map().iter().copied().collect();
    Ok(ext
        .e()
        .automorphisms(bound)?
        .iter()
        .filter(|g| image.iter().all(|&y| image.contains(&g.apply(y))))
        .cloned()
        .collect())
}

/// `ρ(γ) = (γ_H, γ_I)` with `γ_H(h) = π(γ(s(h)))` and `γ_I = γ|_I`.
pub fn rho(ext: &Extension, gamma: &Perm) -> AutPair {
    let s = ext.canonical_section();
    let phi = (0..ext.h().order()).map(|h| ext.proj(gamma.apply(s.at(h)))).collect();
    let theta = (0..ext.i().order()).map(|y| ext.pull(gamma.apply(ext.inj(y)))).collect();
    AutPair {
        phi: Perm::from_images(phi).expect("induced map on H is a bijection"),
        theta: Perm::from_images(theta).expect("restriction to I is a bijection"),
    }
}

/// `ψ(θ)(s(h) ∘ y) = s(h) ∘ θ(h) ∘ y` for `θ` valued in the coefficients.
pub fn psi(ext: &Extension, coeffs: &Coefficients, theta: &[usize]) -> Option<Perm> {
    let e = ext.e();
    let s = ext.canonical_section();
    let images = (0..e.order())
        .map(|x| {
            let sh = s.at(ext.proj(x));
            let y = e.circ(e.cinv(sh), x);
            let t = ext.inj(coeffs.push(theta[ext.proj(x)]));
            e.circ(e.circ(sh, t), y)
        })
        .collect();
    Perm::from_images(images)
}

/// Group sizes, exactness flags and the tabulated Wells map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellsReport {
    pub autb_i_order: usize,
    pub kernel_rho_order: usize,
    pub z1_order: usize,
    pub stabilizer_order: usize,
    pub im_rho_order: usize,
    pub ker_omega_order: usize,
    pub h2_order: usize,
    pub law: DerivationLaw,
    pub psi_bijective: bool,
    pub psi_hom: bool,
    pub rho_hom: bool,
    pub im_rho_in_c: bool,
    pub exact: bool,
    pub derivation_law: bool,
    pub omega_is_hom: bool,
    pub nu_section_independent: bool,
    pub omega_table: Vec<OmegaEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaEntry {
    pub phi: Perm,
    pub theta: Perm,
    pub class: usize,
    pub representative: CocyclePair,
}

impl WellsReport {
    pub fn all_hold(&self) -> bool {
        self.psi_bijective
            && self.psi_hom
            && self.rho_hom
            && self.im_rho_in_c
            && self.exact
            && self.derivation_law
            && self.nu_section_independent
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new("wells-check");
        r.check(
            "psi: Z1_N(H,Z(I)) -> ker rho is a bijection",
            self.psi_bijective,
            format!("|Z1| = {}, |ker rho| = {}", self.z1_order, self.kernel_rho_order),
        );
        r.check("psi converts addition to composition", self.psi_hom, "");
        r.check("rho is a homomorphism", self.rho_hom, "");
        r.check("im rho lies in C", self.im_rho_in_c, "");
        r.check(
            "im rho = ker omega",
            self.exact,
            format!("|im rho| = {}, |ker omega| = {}", self.im_rho_order, self.ker_omega_order),
        );
        r.check("omega satisfies the derivation law", self.derivation_law, "");
        r.check("nu does not depend on the section", self.nu_section_independent, "");
        r.set("wells", serde_json::to_value(self).expect("report serializes"));
        r.set("omega_is_hom", json!(self.omega_is_hom));
        r
    }
}

/// Checks every arrow of the exact sequence by exhaustive enumeration.
pub fn verify_exact_sequence(ext: &Extension, law: DerivationLaw, limits: &Limits) -> Result<WellsReport, WellsError> {
    require_trivial(ext.i())?;
    let (h, e) = (ext.h(), ext.e());
    let bound = limits.order_bound;
    let autb = autb_i(ext, bound)?;
    let rhos: Vec<AutPair> = autb.iter().map(|g| rho(ext, g)).collect();
    let kernel: BTreeSet<Perm> =
        autb.iter().zip(&rhos).filter(|(_, r)| r.is_identity()).map(|(g, _)| g.clone()).collect();
    let rho_hom = autb.iter().enumerate().all(|(a, ga)| {
        autb.iter().enumerate().all(|(b, gb)| rho(ext, &ga.compose(gb)) == rhos[a].compose(&rhos[b]))
    });

    let map = wells_map(ext, limits)?;
    let z1 = z1n(h, &map.coeffs, law, limits)?;
    let images: Vec<Option<Perm>> = z1.iter().map(|t| psi(ext, &map.coeffs, t)).collect();
    let image_set: BTreeSet<Perm> = images.iter().flatten().cloned().collect();
    let psi_bijective = images.iter().all(|p| p.as_ref().is_some_and(|p| e.is_automorphism(p)))
        && image_set.len() == z1.len()
        && image_set == kernel;
    let a = &map.coeffs.a;
    let psi_hom = images.iter().all(Option::is_some)
        && z1.iter().enumerate().all(|(x, tx)| {
            z1.iter().enumerate().all(|(y, ty)| {
                let sum: Vec<usize> = tx.iter().zip(ty).map(|(&u, &v)| a.add(u, v)).collect();
                psi(ext, &map.coeffs, &sum)
                    == Some(images[x].as_ref().unwrap().compose(images[y].as_ref().unwrap()))
            })
        });

    let im_rho: BTreeSet<AutPair> = rhos.iter().cloned().collect();
    let im_rho_in_c = im_rho.iter().all(|c| map.stabilizer.index_of(c).is_some());
    let ker_omega: BTreeSet<AutPair> = map
        .stabilizer
        .pairs
        .iter()
        .zip(&map.omega)
        .filter(|(_, &w)| w == map.group.zero())
        .map(|(c, _)| c.clone())
        .collect();
    let exact = im_rho == ker_omega;

    let nu0 = extract_action(ext, &ext.canonical_section()).nu;
    let nu_section_independent = ext.sections().all(|s| extract_action(ext, &s).nu == nu0);

    let omega_table = map
        .stabilizer
        .pairs
        .iter()
        .zip(&map.omega)
        .map(|(c, &w)| OmegaEntry {
            phi: c.phi.clone(),
            theta: c.theta.clone(),
            class: w,
            representative: map.group.representative(w).clone(),
        })
        .collect();
    Ok(WellsReport {
        autb_i_order: autb.len(),
        kernel_rho_order: kernel.len(),
        z1_order: z1.len(),
        stabilizer_order: map.stabilizer.order(),
        im_rho_order: im_rho.len(),
        ker_omega_order: ker_omega.len(),
        h2_order: map.group.order(),
        law,
        psi_bijective,
        psi_hom,
        rho_hom,
        im_rho_in_c,
        exact,
        derivation_law: map.derivation_law_holds()?,
        omega_is_hom: map.is_hom(),
        nu_section_independent,
        omega_table,
    })
}
