//! Split semi-direct products `H ⋉ I` driven by an action triple `(ν, μ, σ)`.
//!
//! Carrier encoding: the pair `(h, y)` is the index `h·|I| + y`, and the
//! pair stands for `s(h) + y` in additive coordinates.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brace::{BraceError, BraceHom, SkewBrace};
use crate::extension::{self, Extension, ExtensionError, Section};
use crate::group::{FiniteGroup, GroupError};
use crate::perm::Perm;
use crate::search;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Nu,
    Mu,
    Sigma,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Component::Nu => "nu",
            Component::Mu => "mu",
            Component::Sigma => "sigma",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("triple arrays must have |H| = {expected} permutations of degree |I| = {degree}")]
    LengthMismatch { expected: usize, degree: usize },
    #[error("{component}_{h} is not an automorphism of the required group")]
    NotAutomorphism { h: usize, component: Component },
    #[error("nu is not a homomorphism at ({h1}, {h2})")]
    NotHom { h1: usize, h2: usize },
    #[error("{component} is not an anti-homomorphism at ({h1}, {h2})")]
    NotAntiHom { component: Component, h1: usize, h2: usize },
    #[error("compatibility fails at h=({h1}, {h2}, {h3}), y=({y1}, {y2}, {y3})")]
    CompatibilityFailed {
        h1: usize,
        h2: usize,
        h3: usize,
        y1: usize,
        y2: usize,
        y3: usize,
    },
    #[error("section is not a brace homomorphism")]
    SectionNotHom,
    #[error("no section is a brace homomorphism: the extension does not split")]
    NotSplit,
    #[error("decomposition isomorphism check failed")]
    DiagramFailed,
    #[error(transparent)]
    Brace(#[from] BraceError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

/// Three families of permutations of `I` indexed by `H`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ActionTriple {
    pub nu: Vec<Perm>,
    pub mu: Vec<Perm>,
    pub sigma: Vec<Perm>,
}

impl ActionTriple {
    pub fn identity(h: usize, i: usize) -> ActionTriple {
        let id = vec![Perm::identity(i); h];
        ActionTriple { nu: id.clone(), mu: id.clone(), sigma: id }
    }

    pub fn h_order(&self) -> usize {
        self.nu.len()
    }

    pub fn component(&self, c: Component) -> &[Perm] {
        match c {
            Component::Nu => &self.nu,
            Component::Mu => &self.mu,
            Component::Sigma => &self.sigma,
        }
    }

    fn shape_ok(&self, h: usize, i: usize) -> bool {
        [&self.nu, &self.mu, &self.sigma]
            .iter()
            .all(|c| c.len() == h && c.iter().all(|p| p.degree() == i))
    }
}

/// Which `h`-triples the compatibility sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SweepMode {
    /// Full sweep up to 64 carrier elements, generator sweep beyond.
    #[default]
    Auto,
    Full,
    /// Heuristic: `h₂`, `h₃` range over `0` and generators of both groups of `H`.
    Generators,
}

pub const AUTO_FULL_SWEEP_LIMIT: usize = 64;

/// Dense lookup tables for a triple and its inverses.
pub(crate) struct Tables {
    pub nu: Vec<Vec<usize>>,
    pub nu_inv: Vec<Vec<usize>>,
    pub mu: Vec<Vec<usize>>,
    pub sigma: Vec<Vec<usize>>,
}

impl Tables {
    pub fn new(t: &ActionTriple) -> Tables {
        let rows = |ps: &[Perm]| ps.iter().map(|p| p.images().to_vec()).collect::<Vec<_>>();
        Tables {
            nu: rows(&t.nu),
            nu_inv: t.nu.iter().map(|p| p.inverse().into_images()).collect(),
            mu: rows(&t.mu),
            sigma: rows(&t.sigma),
        }
    }
}

pub fn validate_split_triple(h: &SkewBrace, i: &SkewBrace, t: &ActionTriple) -> Result<(), SplitError> {
    validate_split_triple_with(h, i, t, SweepMode::Auto)
}

pub fn validate_split_triple_with(
    h: &SkewBrace,
    i: &SkewBrace,
    t: &ActionTriple,
    mode: SweepMode,
) -> Result<(), SplitError> {
    check_laws(h, i, t)?;
    let hs: Vec<usize> = match mode {
        SweepMode::Full => (0..h.order()).collect(),
        SweepMode::Auto if h.order() * i.order() <= AUTO_FULL_SWEEP_LIMIT => (0..h.order()).collect(),
        _ => {
            let mut v: Vec<usize> = std::iter::once(0)
                .chain(h.additive().generators())
                .chain(h.circle().generators())
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        }
    };
    match compatibility_witness(h, i, t, &hs) {
        Some((h1, h2, h3, y1, y2, y3)) => Err(SplitError::CompatibilityFailed { h1, h2, h3, y1, y2, y3 }),
        None => Ok(()),
    }
}

fn check_laws(h: &SkewBrace, i: &SkewBrace, t: &ActionTriple) -> Result<(), SplitError> {
    let (hn, m) = (h.order(), i.order());
    if !t.shape_ok(hn, m) {
        return Err(SplitError::LengthMismatch { expected: hn, degree: m });
    }
    for x in 0..hn {
        if !i.additive().is_automorphism(&t.nu[x]) {
            return Err(SplitError::NotAutomorphism { h: x, component: Component::Nu });
        }
        if !i.additive().is_automorphism(&t.mu[x]) {
            return Err(SplitError::NotAutomorphism { h: x, component: Component::Mu });
        }
        if !i.circle().is_automorphism(&t.sigma[x]) {
            return Err(SplitError::NotAutomorphism { h: x, component: Component::Sigma });
        }
    }
    for h1 in 0..hn {
        for h2 in 0..hn {
            if t.nu[h.circ(h1, h2)] != t.nu[h1].compose(&t.nu[h2]) {
                return Err(SplitError::NotHom { h1, h2 });
            }
            if t.mu[h.add(h1, h2)] != t.mu[h2].compose(&t.mu[h1]) {
                return Err(SplitError::NotAntiHom { component: Component::Mu, h1, h2 });
            }
            if t.sigma[h.circ(h1, h2)] != t.sigma[h2].compose(&t.sigma[h1]) {
                return Err(SplitError::NotAntiHom { component: Component::Sigma, h1, h2 });
            }
        }
    }
    Ok(())
}

/// First tuple violating the compatibility condition, `h₁` over all of `H`
/// and `h₂`, `h₃` over `hs`.
fn compatibility_witness(
    h: &SkewBrace,
    i: &SkewBrace,
    t: &ActionTriple,
    hs: &[usize],
) -> Option<(usize, usize, usize, usize, usize, usize)> {
    let tb = Tables::new(t);
    let m = i.order();
    for h1 in 0..h.order() {
        let nh1 = h.neg(h1);
        for &h2 in hs {
            let h12 = h.circ(h1, h2);
            for &h3 in hs {
                let s23 = h.add(h2, h3);
                let l_outer = h.circ(h1, s23);
                let h13 = h.circ(h1, h3);
                let r_mu = h.add(nh1, h13);
                for y1 in 0..m {
                    let u = tb.nu_inv[h1][y1];
                    let lhs_head = tb.sigma[s23][u];
                    let a_head = tb.sigma[h2][u];
                    let c_head = tb.sigma[h3][u];
                    for y2 in 0..m {
                        let a = tb.nu[h12][i.circ(a_head, tb.nu_inv[h2][y2])];
                        let left = tb.mu[r_mu][i.sub(a, y1)];
                        let my2 = tb.mu[h3][y2];
                        for y3 in 0..m {
                            let lhs = tb.nu[l_outer][i.circ(lhs_head, tb.nu_inv[s23][i.add(my2, y3)])];
                            let c = tb.nu[h13][i.circ(c_head, tb.nu_inv[h3][y3])];
                            if lhs != i.add(left, c) {
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

/// The product brace on `H × I`:
/// `(h₁,y₁)+(h₂,y₂) = (h₁+h₂, μ_{h₂}(y₁)+y₂)` and
/// `(h₁,y₁)∘(h₂,y₂) = (h₁∘h₂, ν_{h₁∘h₂}(σ_{h₂}(ν_{h₁}⁻¹(y₁)) ∘ ν_{h₂}⁻¹(y₂)))`.
pub fn semidirect_product(h: &SkewBrace, i: &SkewBrace, t: &ActionTriple) -> Result<SkewBrace, SplitError> {
    validate_split_triple(h, i, t)?;
    product_unchecked(h, i, t)
}

pub(crate) fn product_unchecked(h: &SkewBrace, i: &SkewBrace, t: &ActionTriple) -> Result<SkewBrace, SplitError> {
    let m = i.order();
    let tb = Tables::new(t);
    let n = h.order() * m;
    let add = FiniteGroup::from_fn(n, |x, y| {
        let (h1, y1, h2, y2) = (x / m, x % m, y / m, y % m);
        h.add(h1, h2) * m + i.add(tb.mu[h2][y1], y2)
    })?;
    let circ = FiniteGroup::from_fn(n, |x, y| {
        let (h1, y1, h2, y2) = (x / m, x % m, y / m, y % m);
        let hh = h.circ(h1, h2);
        let inner = i.circ(tb.sigma[h2][tb.nu_inv[h1][y1]], tb.nu_inv[h2][y2]);
        hh * m + tb.nu[hh][inner]
    })?;
    Ok(SkewBrace::new(add, circ)?)
}

/// The product together with `i(y) = (0, y)` and `π(h, y) = h`.
pub fn semidirect_extension(h: &SkewBrace, i: &SkewBrace, t: &ActionTriple) -> Result<Extension, SplitError> {
    let e = semidirect_product(h, i, t)?;
    let m = i.order();
    let inj = (0..m).collect();
    let proj = (0..e.order()).map(|x| x / m).collect();
    Ok(Extension::new(e, h.clone(), i.clone(), inj, proj)?)
}

/// Recovers the triple of a split extension from a homomorphic section, and
/// the isomorphism `φ(s(h) + y) = (h, y)` onto the product brace.
pub fn split_decompose(ext: &Extension, s: &Section) -> Result<(ActionTriple, BraceHom), SplitError> {
    if !ext.is_section(s) {
        return Err(SplitError::SectionNotHom);
    }
    let shom = BraceHom::new(s.values().to_vec());
    if !shom.is_hom(ext.h(), ext.e()) {
        return Err(SplitError::SectionNotHom);
    }
    let t = extension::extract_action(ext, s);
    let (h, i, e) = (ext.h(), ext.i(), ext.e());
    let m = i.order();
    let mut phi = vec![usize::MAX; e.order()];
    for hh in 0..h.order() {
        for y in 0..m {
            phi[e.add(s.at(hh), ext.inj(y))] = hh * m + y;
        }
    }
    let phi = BraceHom::new(phi);
    let product = semidirect_product(h, i, &t)?;
    let commutes = phi.is_injective()
        && phi.is_hom(e, &product)
        && (0..m).all(|y| phi.apply(ext.inj(y)) == y)
        && (0..e.order()).all(|x| phi.apply(x) / m == ext.proj(x));
    if !commutes {
        return Err(SplitError::DiagramFailed);
    }
    Ok((t, phi))
}

/// Finds a section that is a brace homomorphism, by assigning images to
/// additive generators of `H` and closing under addition.
pub fn find_split_section(ext: &Extension) -> Result<Section, SplitError> {
    let h = ext.h();
    let gens = h.additive().generators();
    let mut choice = vec![0usize; gens.len()];
    let fibers: Vec<&[usize]> = gens.iter().map(|&g| ext.fiber(g)).collect();
    loop {
        let mut s: Vec<Option<usize>> = vec![None; h.order()];
        s[0] = Some(0);
        let mut ok = true;
        for (k, &g) in gens.iter().enumerate() {
            let img = fibers[k][choice[k]];
            match s[g] {
                Some(v) if v != img => ok = false,
                _ => s[g] = Some(img),
            }
        }
        if ok {
            let mut queue: Vec<usize> = vec![0];
            let mut seen = vec![false; h.order()];
            seen[0] = true;
            while let Some(x) = queue.pop() {
                for &g in &gens {
                    let y = h.add(x, g);
                    let v = ext.e().add(s[x].unwrap(), s[g].unwrap());
                    match s[y] {
                        Some(w) if w != v => ok = false,
                        _ => s[y] = Some(v),
                    }
                    if !seen[y] {
                        seen[y] = true;
                        queue.push(y);
                    }
                }
            }
            if ok {
                let sec: Vec<usize> = s.into_iter().map(|v| v.unwrap()).collect();
                let hom = BraceHom::new(sec.clone());
                if hom.is_hom(h, ext.e()) {
                    return Ok(Section::new(sec));
                }
            }
        }
        let mut k = 0;
        loop {
            if k == gens.len() {
                return Err(SplitError::NotSplit);
            }
            choice[k] += 1;
            if choice[k] < fibers[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Every triple passing [`validate_split_triple`], sorted by `(ν, μ, σ)`.
///
/// `ν` ranges over homomorphisms `(H,∘) → Aut(I,+)`, `μ` over
/// anti-homomorphisms `(H,+) → Aut(I,+)`, `σ` over anti-homomorphisms
/// `(H,∘) → Aut(I,∘)`; each combination is then swept for compatibility.
pub fn enumerate_split_triples(h: &SkewBrace, i: &SkewBrace, bound: usize) -> Result<Vec<ActionTriple>, SplitError> {
    let aut_add = i.additive().automorphism_group(bound)?;
    let aut_circ = i.circle().automorphism_group(bound)?;
    let nus = search::homomorphisms_into(h.circle(), &aut_add);
    let mus = search::antihomomorphisms_into(h.additive(), &aut_add);
    let sigmas = search::antihomomorphisms_into(h.circle(), &aut_circ);
    let all: Vec<usize> = (0..h.order()).collect();
    let mut out: Vec<ActionTriple> = nus
        .par_iter()
        .flat_map_iter(|nu| {
            let mut found = Vec::new();
            for mu in &mus {
                for sigma in &sigmas {
                    let t = ActionTriple { nu: nu.clone(), mu: mu.clone(), sigma: sigma.clone() };
                    if compatibility_witness(h, i, &t, &all).is_none() {
                        found.push(t);
                    }
                }
            }
            found
        })
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_ORDER_BOUND;

    fn z(n: usize) -> SkewBrace {
        SkewBrace::trivial(FiniteGroup::cyclic(n))
    }

    fn neg_perm(p: usize) -> Perm {
        Perm::from_images((0..p).map(|x| (p - x) % p).collect()).unwrap()
    }

    #[test]
    fn identity_triple_gives_direct_product() {
        let (h, i) = (z(2), z(3));
        let t = ActionTriple::identity(2, 3);
        let e = semidirect_product(&h, &i, &t).unwrap();
        assert_eq!(e, SkewBrace::direct_product(&h, &i));
    }

    #[test]
    fn negation_by_z2_on_z3() {
        let (h, i) = (z(2), z(3));
        let t = ActionTriple {
            nu: vec![Perm::identity(3), neg_perm(3)],
            mu: vec![Perm::identity(3), neg_perm(3)],
            sigma: vec![Perm::identity(3), neg_perm(3)],
        };
        let e = semidirect_product(&h, &i, &t).unwrap();
        assert_eq!(crate::group::identify(e.additive()), "S3");
        let ext = semidirect_extension(&h, &i, &t).unwrap();
        let s = ext.canonical_section();
        let (back, _) = split_decompose(&ext, &s).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn detects_broken_laws() {
        let (h, i) = (z(2), z(3));
        let mut t = ActionTriple::identity(2, 3);
        t.nu[1] = Perm::from_images(vec![1, 0, 2]).unwrap();
        assert_eq!(
            validate_split_triple(&h, &i, &t),
            Err(SplitError::NotAutomorphism { h: 1, component: Component::Nu })
        );
        let mut t = ActionTriple::identity(2, 3);
        t.sigma[1] = neg_perm(3);
        assert!(matches!(
            validate_split_triple(&h, &i, &t),
            Err(SplitError::CompatibilityFailed { .. })
        ));
        let t = ActionTriple::identity(3, 3);
        assert!(matches!(validate_split_triple(&h, &i, &t), Err(SplitError::LengthMismatch { .. })));
    }

    #[test]
    fn z2_on_z2_has_one_triple() {
        let ts = enumerate_split_triples(&z(2), &z(2), DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(ts, vec![ActionTriple::identity(2, 2)]);
    }

    #[test]
    fn z2_on_z3_triples_are_valid_and_round_trip() {
        let (h, i) = (z(2), z(3));
        let ts = enumerate_split_triples(&h, &i, DEFAULT_ORDER_BOUND).unwrap();
        // Oracle: brute force over the eight sign choices, testing the brace
        // axiom on the product tables directly.
        let signs = [Perm::identity(3), neg_perm(3)];
        let mut expected = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    let t = ActionTriple {
                        nu: vec![Perm::identity(3), signs[a].clone()],
                        mu: vec![Perm::identity(3), signs[b].clone()],
                        sigma: vec![Perm::identity(3), signs[c].clone()],
                    };
                    if product_unchecked(&h, &i, &t).is_ok() {
                        expected.push(t);
                    }
                }
            }
        }
        expected.sort();
        assert_eq!(ts, expected);
        assert_eq!(ts.len(), 6);
        for t in ts {
            validate_split_triple_with(&h, &i, &t, SweepMode::Full).unwrap();
            let ext = semidirect_extension(&h, &i, &t).unwrap();
            let (back, _) = split_decompose(&ext, &ext.canonical_section()).unwrap();
            assert_eq!(back, t);
        }
    }

    #[test]
    fn split_section_search() {
        let ext = semidirect_extension(&z(2), &z(3), &ActionTriple::identity(2, 3)).unwrap();
        let s = find_split_section(&ext).unwrap();
        assert!(BraceHom::new(s.values().to_vec()).is_hom(ext.h(), ext.e()));
    }
}
