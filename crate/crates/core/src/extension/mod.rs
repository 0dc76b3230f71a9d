//! General extensions `0 → I → E → H → 0` of skew braces, sections, and the
//! action and cocycle data they induce.
//!
//! Constructed extensions use circle coordinates: the pair `(h, y)` is the
//! index `h·|I| + y` and stands for `s(h) ∘ y` with `s(h) = (h, 0)`.

mod classify;
mod coupling;
mod triplet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::brace::{BraceError, BraceHom, SkewBrace};
use crate::perm::Perm;
use crate::split::ActionTriple;

pub use classify::{
    enumerate_extensions, ext_classes, extensions_equivalent, h2_alpha, z2_alpha, z2_for_action, CouplingClasses,
    ExtClasses,
};
pub use coupling::{coupling_of, couplings_related, triplets_equivalent, twist_action, Coupling};
pub use triplet::{check_triplet, extension_from_triplet, TripletError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("sequence is not exact: {detail}")]
    NotExact { detail: String },
    #[error("{which} is not a brace homomorphism")]
    NotHom { which: &'static str },
    #[error("maps have the wrong length or range")]
    Malformed,
    #[error("triplet is invalid: {0}")]
    InvalidTriplet(#[from] TripletError),
    #[error("constructed tables are not a skew brace: {0}")]
    Construction(#[from] BraceError),
    #[error("search budget {budget} exceeded after {partial} candidates")]
    SearchBudgetExceeded { partial: u64, budget: u64 },
    #[error("order {order} exceeds the configured bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },
}

/// A brace extension of `H` by `I` through `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    e: SkewBrace,
    h: SkewBrace,
    i: SkewBrace,
    inj: Vec<usize>,
    proj: Vec<usize>,
    inj_inv: Vec<Option<usize>>,
    fibers: Vec<Vec<usize>>,
}

impl Extension {
    pub fn new(
        e: SkewBrace,
        h: SkewBrace,
        i: SkewBrace,
        inj: Vec<usize>,
        proj: Vec<usize>,
    ) -> Result<Extension, ExtensionError> {
        if inj.len() != i.order()
            || proj.len() != e.order()
            || inj.iter().any(|&x| x >= e.order())
            || proj.iter().any(|&x| x >= h.order())
        {
            return Err(ExtensionError::Malformed);
        }
        let inj_hom = BraceHom::new(inj.clone());
        if !inj_hom.is_hom(&i, &e) {
            return Err(ExtensionError::NotHom { which: "injection" });
        }
        let proj_hom = BraceHom::new(proj.clone());
        if !proj_hom.is_hom(&e, &h) {
            return Err(ExtensionError::NotHom { which: "projection" });
        }
        if !inj_hom.is_injective() {
            return Err(ExtensionError::NotExact { detail: "injection is not injective".into() });
        }
        if proj_hom.image().len() != h.order() {
            return Err(ExtensionError::NotExact { detail: "projection is not surjective".into() });
        }
        let image = inj_hom.image();
        if image != proj_hom.kernel() {
            return Err(ExtensionError::NotExact { detail: "image of injection differs from kernel of projection".into() });
        }
        if !e.is_ideal(&image).unwrap_or(false) {
            return Err(ExtensionError::NotExact { detail: "image of injection is not an ideal".into() });
        }
        let mut inj_inv = vec![None; e.order()];
        for (y, &x) in inj.iter().enumerate() {
            inj_inv[x] = Some(y);
        }
        let mut fibers = vec![Vec::new(); h.order()];
        for (x, &hh) in proj.iter().enumerate() {
            fibers[hh].push(x);
        }
        Ok(Extension { e, h, i, inj, proj, inj_inv, fibers })
    }

    pub fn e(&self) -> &SkewBrace {
        &self.e
    }

    pub fn h(&self) -> &SkewBrace {
        &self.h
    }

    pub fn i(&self) -> &SkewBrace {
        &self.i
    }

    pub fn inj_map(&self) -> &[usize] {
        &self.inj
    }

    pub fn proj_map(&self) -> &[usize] {
        &self.proj
    }

    #[inline]
    pub fn inj(&self, y: usize) -> usize {
        self.inj[y]
    }

    #[inline]
    pub fn proj(&self, x: usize) -> usize {
        self.proj[x]
    }

    /// Preimage under the injection; panics off the image.
    #[inline]
    pub fn pull(&self, x: usize) -> usize {
        self.inj_inv[x].expect("element lies in the image of I")
    }

    pub fn try_pull(&self, x: usize) -> Option<usize> {
        self.inj_inv[x]
    }

    /// Elements of `E` over `h`, in increasing order.
    pub fn fiber(&self, h: usize) -> &[usize] {
        &self.fibers[h]
    }

    pub fn is_section(&self, s: &Section) -> bool {
        s.0.len() == self.h.order() && s.0[0] == 0 && s.0.iter().enumerate().all(|(h, &x)| x < self.e.order() && self.proj[x] == h)
    }

    /// Least `E`-index in each fiber.
    pub fn canonical_section(&self) -> Section {
        Section(self.fibers.iter().map(|f| f[0]).collect())
    }

    /// Lazily yields all `|I|^(|H|−1)` sections with `s(0) = 0`.
    pub fn sections(&self) -> Sections<'_> {
        Sections { ext: self, odometer: Some(vec![0; self.h.order()]) }
    }

    pub fn section_count(&self) -> u128 {
        (self.i.order() as u128).pow(self.h.order().saturating_sub(1) as u32)
    }

    /// The section `h ↦ s(h) ∘ θ(h)`.
    pub fn shift_section(&self, s: &Section, theta: &[usize]) -> Section {
        Section(
            (0..self.h.order())
                .map(|h| self.e.circ(s.at(h), self.inj(theta[h])))
                .collect(),
        )
    }

    /// The unique `θ` with `s₂(h) = s₁(h) ∘ θ(h)`.
    pub fn section_difference(&self, s1: &Section, s2: &Section) -> Vec<usize> {
        (0..self.h.order())
            .map(|h| self.pull(self.e.circ(self.e.cinv(s1.at(h)), s2.at(h))))
            .collect()
    }
}

/// A set map `s: H → E` with `π ∘ s = id` and `s(0) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Section(Vec<usize>);

impl Section {
    pub fn new(values: Vec<usize>) -> Section {
        Section(values)
    }

    #[inline]
    pub fn at(&self, h: usize) -> usize {
        self.0[h]
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }
}

pub struct Sections<'a> {
    ext: &'a Extension,
    odometer: Option<Vec<usize>>,
}

impl Iterator for Sections<'_> {
    type Item = Section;

    fn next(&mut self) -> Option<Section> {
        let cur = self.odometer.as_mut()?;
        let s = Section(cur.iter().enumerate().map(|(h, &k)| self.ext.fibers[h][k]).collect());
        let mut h = 1;
        loop {
            if h >= cur.len() {
                self.odometer = None;
                break;
            }
            cur[h] += 1;
            if cur[h] < self.ext.fibers[h].len() {
                break;
            }
            cur[h] = 0;
            h += 1;
        }
        Some(s)
    }
}

/// A map `H × H → I`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain {
    n: usize,
    values: Vec<usize>,
}

impl Cochain {
    pub fn zero(n: usize) -> Cochain {
        Cochain { n, values: vec![0; n * n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Cochain {
        Cochain { n, values: (0..n * n).map(|k| f(k / n, k % n)).collect() }
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Option<Cochain> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Cochain { n, values: rows.iter().flatten().copied().collect() })
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.values.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> usize {
        self.values[a * self.n + b]
    }

    #[inline]
    pub fn set(&mut self, a: usize, b: usize, v: usize) {
        self.values[a * self.n + b] = v;
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.n).all(|h| self.get(0, h) == 0 && self.get(h, 0) == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

impl Serialize for Cochain {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.rows().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Cochain {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Cochain, D::Error> {
        let rows = Vec::<Vec<usize>>::deserialize(de)?;
        Cochain::from_rows(&rows).ok_or_else(|| serde::de::Error::custom("cochain must be a square array"))
    }
}

/// Action data plus the two cocycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triplet {
    pub chi: ActionTriple,
    pub beta: Cochain,
    pub tau: Cochain,
}

/// `ν_h(y) = −s(h) + s(h)∘y`, `μ_h(y) = −s(h) + y + s(h)`,
/// `σ_h(y) = s(h)⁻¹ ∘ y ∘ s(h)`, all pulled back to `I`.
pub fn extract_action(ext: &Extension, s: &Section) -> ActionTriple {
    let e = ext.e();
    let m = ext.i().order();
    let mut nu = Vec::with_capacity(ext.h().order());
    let mut mu = Vec::with_capacity(ext.h().order());
    let mut sigma = Vec::with_capacity(ext.h().order());
    for h in 0..ext.h().order() {
        let sh = s.at(h);
        let nsh = e.neg(sh);
        let ish = e.cinv(sh);
        let img = |f: &dyn Fn(usize) -> usize| -> Perm {
            Perm::from_images((0..m).map(|y| ext.pull(f(ext.inj(y)))).collect()).expect("bijection on I")
        };
        nu.push(img(&|x| e.add(nsh, e.circ(sh, x))));
        mu.push(img(&|x| e.add(e.add(nsh, x), sh)));
        sigma.push(img(&|x| e.circ(e.circ(ish, x), sh)));
    }
    ActionTriple { nu, mu, sigma }
}

/// `β(h₁,h₂) = −s(h₁+h₂) + s(h₁) + s(h₂)` and
/// `τ(h₁,h₂) = s(h₁∘h₂)⁻¹ ∘ s(h₁) ∘ s(h₂)`.
pub fn extract_cocycle(ext: &Extension, s: &Section) -> (Cochain, Cochain) {
    let (e, h) = (ext.e(), ext.h());
    let n = h.order();
    let beta = Cochain::from_fn(n, |a, b| {
        ext.pull(e.add(e.add(e.neg(s.at(h.add(a, b))), s.at(a)), s.at(b)))
    });
    let tau = Cochain::from_fn(n, |a, b| {
        ext.pull(e.circ(e.circ(e.cinv(s.at(h.circ(a, b))), s.at(a)), s.at(b)))
    });
    (beta, tau)
}

pub fn triplet(ext: &Extension, s: &Section) -> Triplet {
    let chi = extract_action(ext, s);
    let (beta, tau) = extract_cocycle(ext, s);
    Triplet { chi, beta, tau }
}

/// Normal closure of `{λ_y}` in `Aut(I, +)`.
pub fn lambda_normal_closure(i: &SkewBrace, bound: usize) -> Result<crate::perm::PermGroup, ExtensionError> {
    let aut = i
        .additive()
        .automorphism_group(bound)
        .map_err(|_| ExtensionError::OrderBoundExceeded { order: i.order(), bound })?;
    let lams = i.lambdas();
    Ok(crate::perm::PermGroup::normal_closure(&aut, lams.iter()))
}
