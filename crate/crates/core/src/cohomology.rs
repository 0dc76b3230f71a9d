//! Cohomology with abelian coefficients: cocycle pairs `Z²_N`, coboundaries
//! `B²_N`, the quotient `H²_N`, derivations `Z¹_N`, and the action of
//! `H²_N(H, Ann I)` on extension classes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::brace::SkewBrace;
use crate::extension::{
    check_triplet, couplings_related, ext_classes, extension_from_triplet, extensions_equivalent, h2_alpha,
    z2_for_action, Cochain, Coupling, Extension, ExtensionError, Triplet, TripletError,
};
use crate::perm::Perm;
use crate::report::Report;
use crate::split::{ActionTriple, Component};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("coefficients must form an abelian group")]
    NotAbelian,
    #[error("coefficients must carry the trivial brace structure")]
    NotTrivialBrace,
    #[error("coefficient set is not a sub-brace")]
    NotSubbrace,
    #[error("{component}_{h} does not preserve the coefficient subgroup")]
    NotInvariant { h: usize, component: Component },
    #[error("value at ({h1}, {h2}) does not lie in the coefficient subgroup")]
    ValuesNotInAnnihilator { h1: usize, h2: usize },
    #[error("action has {found} entries, expected |H| = {expected}")]
    Shape { expected: usize, found: usize },
    #[error(transparent)]
    Triplet(#[from] TripletError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

impl CohomologyError {
    pub fn is_budget(&self) -> bool {
        matches!(self, CohomologyError::Extension(ExtensionError::SearchBudgetExceeded { .. }))
    }
}

/// An abelian subgroup `A ⊆ I` carrying the trivial brace structure, with
/// the action restricted to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficients {
    /// `A` relabelled on `0..|A|`.
    pub a: SkewBrace,
    /// `embed[k]` is the element of `I` labelled `k` in `a`.
    pub embed: Vec<usize>,
    pos: Vec<Option<usize>>,
    /// The action restricted to `A`.
    pub chi: ActionTriple,
}

impl Coefficients {
    /// All of `I`, which must be an abelian group with the trivial brace structure.
    pub fn new(i: &SkewBrace, chi: &ActionTriple) -> Result<Coefficients, CohomologyError> {
        if !i.additive().is_abelian() {
            return Err(CohomologyError::NotAbelian);
        }
        if !i.is_trivial() {
            return Err(CohomologyError::NotTrivialBrace);
        }
        Coefficients::restrict(i, &(0..i.order()).collect(), chi)
    }

    /// `Ann(I)`, always abelian with trivial structure.
    pub fn annihilator(i: &SkewBrace, chi: &ActionTriple) -> Result<Coefficients, CohomologyError> {
        Coefficients::restrict(i, &i.annihilator(), chi)
    }

    /// The centre of `(I,+)` for a trivial brace `I`.
    pub fn centre(i: &SkewBrace, chi: &ActionTriple) -> Result<Coefficients, CohomologyError> {
        if !i.is_trivial() {
            return Err(CohomologyError::NotTrivialBrace);
        }
        Coefficients::restrict(i, &i.additive().centre(), chi)
    }

    pub fn restrict(i: &SkewBrace, set: &BTreeSet<usize>, chi: &ActionTriple) -> Result<Coefficients, CohomologyError> {
        let (sub, embed) = i.restrict(set).ok_or(CohomologyError::NotSubbrace)?;
        if !sub.additive().is_abelian() {
            return Err(CohomologyError::NotAbelian);
        }
        if !sub.is_trivial() {
            return Err(CohomologyError::NotTrivialBrace);
        }
        let mut pos = vec![None; i.order()];
        for (k, &x) in embed.iter().enumerate() {
            pos[x] = Some(k);
        }
        let hn = chi.nu.len();
        for c in [Component::Nu, Component::Mu, Component::Sigma] {
            let found = chi.component(c).len();
            if found != hn || chi.component(c).iter().any(|p| p.degree() != i.order()) {
                return Err(CohomologyError::Shape { expected: hn, found });
            }
        }
        let restrict_all = |ps: &[Perm], c: Component| -> Result<Vec<Perm>, CohomologyError> {
            ps.iter()
                .enumerate()
                .map(|(h, p)| {
                    let images: Option<Vec<usize>> = embed.iter().map(|&x| pos[p.apply(x)]).collect();
                    images.and_then(Perm::from_images).ok_or(CohomologyError::NotInvariant { h, component: c })
                })
                .collect()
        };
        let chi_a = ActionTriple {
            nu: restrict_all(&chi.nu, Component::Nu)?,
            mu: restrict_all(&chi.mu, Component::Mu)?,
            sigma: restrict_all(&chi.sigma, Component::Sigma)?,
        };
        Ok(Coefficients { a: sub, embed, pos, chi: chi_a })
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }

    pub fn push(&self, a: usize) -> usize {
        self.embed[a]
    }

    pub fn pull(&self, y: usize) -> Option<usize> {
        self.pos.get(y).copied().flatten()
    }

    /// Reads an `I`-valued pair as a pair over `A`.
    pub fn lift(&self, g: &Cochain, f: &Cochain) -> Result<CocyclePair, CohomologyError> {
        let n = g.size();
        let conv = |c: &Cochain| -> Result<Cochain, CohomologyError> {
            let mut out = Cochain::zero(n);
            for h1 in 0..n {
                for h2 in 0..n {
                    let v = self.pull(c.get(h1, h2)).ok_or(CohomologyError::ValuesNotInAnnihilator { h1, h2 })?;
                    out.set(h1, h2, v);
                }
            }
            Ok(out)
        };
        Ok(CocyclePair { g: conv(g)?, f: conv(f)? })
    }

    /// The pair as `I`-valued cochains.
    pub fn push_pair(&self, p: &CocyclePair) -> (Cochain, Cochain) {
        let n = p.g.size();
        (
            Cochain::from_fn(n, |a, b| self.push(p.g.get(a, b))),
            Cochain::from_fn(n, |a, b| self.push(p.f.get(a, b))),
        )
    }
}

/// A pair `(g, f)` of cochains valued in the coefficient group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CocyclePair {
    pub g: Cochain,
    pub f: Cochain,
}

impl CocyclePair {
    pub fn zero(n: usize) -> CocyclePair {
        CocyclePair { g: Cochain::zero(n), f: Cochain::zero(n) }
    }

    /// Pointwise sum in `a`.
    pub fn add(&self, other: &CocyclePair, a: &SkewBrace) -> CocyclePair {
        let n = self.g.size();
        CocyclePair {
            g: Cochain::from_fn(n, |x, y| a.add(self.g.get(x, y), other.g.get(x, y))),
            f: Cochain::from_fn(n, |x, y| a.add(self.f.get(x, y), other.f.get(x, y))),
        }
    }

    pub fn neg(&self, a: &SkewBrace) -> CocyclePair {
        let n = self.g.size();
        CocyclePair {
            g: Cochain::from_fn(n, |x, y| a.neg(self.g.get(x, y))),
            f: Cochain::from_fn(n, |x, y| a.neg(self.f.get(x, y))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_zero() && self.f.is_zero()
    }
}

fn check_action(h: &SkewBrace, c: &Coefficients) -> Result<(), CohomologyError> {
    let n = h.order();
    if c.chi.nu.len() != n {
        return Err(CohomologyError::Shape { expected: n, found: c.chi.nu.len() });
    }
    let zero = Triplet { chi: c.chi.clone(), beta: Cochain::zero(n), tau: Cochain::zero(n) };
    check_triplet(h, &c.a, &zero)?;
    Ok(())
}

/// Every normalized pair satisfying both cocycle conditions together with
/// the brace compatibility relation, so that each pair defines an extension.
pub fn z2n(h: &SkewBrace, c: &Coefficients, limits: &Limits) -> Result<Vec<CocyclePair>, CohomologyError> {
    check_action(h, c)?;
    Ok(z2_for_action(h, &c.a, &c.chi, limits)?
        .into_iter()
        .map(|t| CocyclePair { g: t.beta, f: t.tau })
        .collect())
}

/// `g(h₁,h₂) = ν_{h₁+h₂}(−θ(h₁+h₂)) + μ_{h₂}(ν_{h₁}(θ(h₁))) + ν_{h₂}(θ(h₂))`,
/// `f(h₁,h₂) = −θ(h₁∘h₂) + σ_{h₂}(θ(h₁)) + θ(h₂)`.
pub fn coboundary(h: &SkewBrace, c: &Coefficients, theta: &[usize]) -> CocyclePair {
    let (a, chi) = (&c.a, &c.chi);
    let n = h.order();
    let g = Cochain::from_fn(n, |x, y| {
        let s = h.add(x, y);
        let t1 = chi.nu[s].apply(a.neg(theta[s]));
        let t2 = chi.mu[y].apply(chi.nu[x].apply(theta[x]));
        a.add(a.add(t1, t2), chi.nu[y].apply(theta[y]))
    });
    let f = Cochain::from_fn(n, |x, y| {
        let p = h.circ(x, y);
        a.add(a.add(a.neg(theta[p]), chi.sigma[y].apply(theta[x])), theta[y])
    });
    CocyclePair { g, f }
}

/// Odometer over maps `θ: H → A` with `θ(0) = 0`.
fn for_each_theta(hn: usize, m: usize, mut f: impl FnMut(&[usize])) {
    let mut theta = vec![0usize; hn];
    loop {
        f(&theta);
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
            return;
        }
    }
}

fn theta_budget(hn: usize, m: usize, limits: &Limits) -> Result<(), CohomologyError> {
    let count = (m as u64).saturating_pow(hn.saturating_sub(1) as u32);
    if count > limits.budget {
        return Err(ExtensionError::SearchBudgetExceeded { partial: 0, budget: limits.budget }.into());
    }
    Ok(())
}

/// The coboundaries of all `θ` with `θ(0) = 0`, sorted and deduplicated.
pub fn b2n(h: &SkewBrace, c: &Coefficients) -> Vec<CocyclePair> {
    let mut out = BTreeSet::new();
    for_each_theta(h.order(), c.order(), |theta| {
        out.insert(coboundary(h, c, theta));
    });
    out.into_iter().collect()
}

/// `Z²_N / B²_N` with lexicographically least coset representatives.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    a: SkewBrace,
    pub z2: Vec<CocyclePair>,
    pub b2: Vec<CocyclePair>,
    /// Sorted; index 0 is the zero class.
    pub representatives: Vec<CocyclePair>,
    class: BTreeMap<CocyclePair, usize>,
}

impl CohomologyGroup {
    pub fn order(&self) -> usize {
        self.representatives.len()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn class_of(&self, p: &CocyclePair) -> Option<usize> {
        self.class.get(p).copied()
    }

    pub fn representative(&self, k: usize) -> &CocyclePair {
        &self.representatives[k]
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let s = self.representatives[x].add(&self.representatives[y], &self.a);
        self.class[&s]
    }

    pub fn neg(&self, x: usize) -> usize {
        self.class[&self.representatives[x].neg(&self.a)]
    }

    /// Associativity, identity, inverses and commutativity of the induced
    /// addition on classes.
    pub fn check_axioms(&self) -> bool {
        let n = self.order();
        let closed = self.z2.iter().all(|p| self.z2.iter().all(|q| self.class.contains_key(&p.add(q, &self.a))));
        closed
            && (0..n).all(|x| {
                self.add(x, 0) == x
                    && self.add(x, self.neg(x)) == 0
                    && (0..n).all(|y| {
                        self.add(x, y) == self.add(y, x)
                            && (0..n).all(|z| self.add(self.add(x, y), z) == self.add(x, self.add(y, z)))
                    })
            })
    }
}

/// Builds `H²_N`. Asserts `B²_N ⊆ Z²_N`, closure, and the group axioms.
pub fn h2n(h: &SkewBrace, c: &Coefficients, limits: &Limits) -> Result<CohomologyGroup, CohomologyError> {
    theta_budget(h.order(), c.order(), limits)?;
    let z2 = z2n(h, c, limits)?;
    let b2 = b2n(h, c);
    let zset: BTreeSet<&CocyclePair> = z2.iter().collect();
    assert!(b2.iter().all(|b| zset.contains(b)), "coboundaries must be cocycles");
    let mut class = BTreeMap::new();
    let mut representatives = Vec::new();
    for z in &z2 {
        if class.contains_key(z) {
            continue;
        }
        let k = representatives.len();
        representatives.push(z.clone());
        for b in &b2 {
            let w = z.add(b, &c.a);
            assert!(zset.contains(&w), "cocycles must be closed under adding coboundaries");
            class.insert(w, k);
        }
    }
    let group = CohomologyGroup { a: c.a.clone(), z2, b2, representatives, class };
    assert!(group.representatives.first().is_some_and(CocyclePair::is_zero), "zero pair is a cocycle");
    assert!(group.check_axioms(), "H² must be an abelian group");
    Ok(group)
}

/// Reading of the first derivation law.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DerivationLaw {
    /// `θ(h₁∘h₂) = σ_{h₂}(θ(h₁)) + θ(h₂)`.
    #[default]
    Standard,
    /// `θ(h₁∘h₂) = σ_{h₂}(θ(h₁) + θ(h₂))`.
    Alternative,
}

/// Checks both derivation laws; the second is
/// `ν_{h₁+h₂}(θ(h₁+h₂)) = μ_{h₂}(ν_{h₁}(θ(h₁))) + ν_{h₂}(θ(h₂))`.
pub fn is_derivation(h: &SkewBrace, c: &Coefficients, theta: &[usize], law: DerivationLaw) -> bool {
    let (a, chi) = (&c.a, &c.chi);
    let n = h.order();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let circ_rhs = match law {
                DerivationLaw::Standard => a.add(chi.sigma[y].apply(theta[x]), theta[y]),
                DerivationLaw::Alternative => chi.sigma[y].apply(a.add(theta[x], theta[y])),
            };
            let s = h.add(x, y);
            theta[h.circ(x, y)] == circ_rhs
                && chi.nu[s].apply(theta[s])
                    == a.add(chi.mu[y].apply(chi.nu[x].apply(theta[x])), chi.nu[y].apply(theta[y]))
        })
    })
}

/// All derivations, sorted. Each law at `h₁ = h₂ = 0` forces `θ(0) = 0`.
pub fn z1n(h: &SkewBrace, c: &Coefficients, law: DerivationLaw, limits: &Limits) -> Result<Vec<Vec<usize>>, CohomologyError> {
    theta_budget(h.order(), c.order(), limits)?;
    let mut out = Vec::new();
    for_each_theta(h.order(), c.order(), |theta| {
        if is_derivation(h, c, theta, law) {
            out.push(theta.to_vec());
        }
    });
    out.sort();
    Ok(out)
}

/// `(χ, β₁ + β, τ₁ + τ)` for a pair `(β₁, τ₁)` over `c`, checked as a triplet.
pub fn h2_act(h: &SkewBrace, i: &SkewBrace, c: &Coefficients, pair: &CocyclePair, t: &Triplet) -> Result<Triplet, CohomologyError> {
    let n = h.order();
    let (g, f) = c.push_pair(pair);
    let out = Triplet {
        chi: t.chi.clone(),
        beta: Cochain::from_fn(n, |x, y| i.add(g.get(x, y), t.beta.get(x, y))),
        tau: Cochain::from_fn(n, |x, y| i.add(f.get(x, y), t.tau.get(x, y))),
    };
    check_triplet(h, i, &out)?;
    Ok(out)
}

/// [`h2_act`] for an `I`-valued pair, rejecting values outside `c`.
pub fn h2_act_raw(h: &SkewBrace, i: &SkewBrace, c: &Coefficients, g: &Cochain, f: &Cochain, t: &Triplet) -> Result<Triplet, CohomologyError> {
    let pair = c.lift(g, f)?;
    h2_act(h, i, c, &pair, t)
}

fn locate(e: &Extension, reps: &[Extension]) -> Option<usize> {
    reps.iter().position(|r| extensions_equivalent(r, e).is_some())
}

/// Compares the number of extension classes with action `chi`, found by
/// enumerating extensions and testing equivalence, with `|H²_N|` and with
/// the number of `∼`-classes of triplets.
pub fn ext_bijection_check(h: &SkewBrace, i: &SkewBrace, chi: &ActionTriple, limits: &Limits) -> Result<Report, CohomologyError> {
    let c = Coefficients::new(i, chi)?;
    let group = h2n(h, &c, limits)?;
    let classes = ext_classes(h, i, limits)?;
    let ext_count = classes
        .buckets
        .iter()
        .find(|b| couplings_related(i, &b.coupling.rep, chi).is_some())
        .map(|b| b.classes.len())
        .unwrap_or(0);
    let alpha = Coupling::new(i, chi.clone(), limits.order_bound)?;
    let h2a = h2_alpha(h, i, &alpha, limits)?.len();
    let mut r = Report::new("cohomology bijection");
    r.check("|Ext_chi(H,I)| = |H2_N(H,I)|", ext_count == group.order(), format!("{ext_count} vs {}", group.order()));
    r.check("|H2_alpha| = |H2_N(H,I)|", h2a == group.order(), format!("{h2a} vs {}", group.order()));
    r.set("ext_classes", json!(ext_count));
    r.set("h2n_order", json!(group.order()));
    r.set("h2_alpha_classes", json!(h2a));
    r.set("z2_order", json!(group.z2.len()));
    r.set("b2_order", json!(group.b2.len()));
    Ok(r)
}

/// Freeness of the action of `H²_N(H, Ann I)` on `Ext_α(H, I)`; for a
/// trivial brace `I` also transitivity and `|Ext_α(H, I)| = |Ext_α(H, Z(I))|`.
pub fn verify_free_transitive(h: &SkewBrace, i: &SkewBrace, alpha: &Coupling, limits: &Limits) -> Result<Report, CohomologyError> {
    let classes = h2_alpha(h, i, alpha, limits)?;
    let reps: Vec<&Triplet> = classes.iter().map(|c| &c[0]).collect();
    let exts: Vec<Extension> = reps.iter().map(|t| extension_from_triplet(h, i, t)).collect::<Result<_, _>>()?;
    let coeffs = Coefficients::annihilator(i, &alpha.rep)?;
    let group = h2n(h, &coeffs, limits)?;
    let mut r = Report::new("H2_N(H, Ann I) action on Ext_alpha(H, I)");

    let same_restriction = classes
        .iter()
        .flatten()
        .all(|t| Coefficients::annihilator(i, &t.chi).map(|c| c.chi == coeffs.chi).unwrap_or(false));
    r.check("restricted action on Ann(I) is the same for every triplet", same_restriction, "");

    let (gn, kn) = (group.order(), exts.len());
    let mut table = vec![vec![usize::MAX; kn]; gn];
    let mut landed = true;
    for x in 0..gn {
        for k in 0..kn {
            let t = h2_act(h, i, &coeffs, group.representative(x), reps[k])?;
            match locate(&extension_from_triplet(h, i, &t)?, &exts) {
                Some(j) => table[x][k] = j,
                None => landed = false,
            }
        }
    }
    r.check("acted extensions stay in Ext_alpha", landed, "");
    if !landed {
        return Ok(r);
    }
    r.check("zero class acts trivially", (0..kn).all(|k| table[0][k] == k), "");
    let compat = (0..gn).all(|x| (0..gn).all(|y| (0..kn).all(|k| table[group.add(x, y)][k] == table[x][table[y][k]])));
    r.check("(x + y) acts as x after y", compat, "");

    let mut well_defined = true;
    for x in 0..gn {
        for k in 0..kn {
            for b in &group.b2 {
                let p = group.representative(x).add(b, &coeffs.a);
                let t = h2_act(h, i, &coeffs, &p, reps[k])?;
                well_defined &= locate(&extension_from_triplet(h, i, &t)?, &exts) == Some(table[x][k]);
            }
            for other in &classes[k][1..] {
                let t = h2_act(h, i, &coeffs, group.representative(x), other)?;
                well_defined &= locate(&extension_from_triplet(h, i, &t)?, &exts) == Some(table[x][k]);
            }
        }
    }
    r.check("action is independent of representatives", well_defined, "");

    let mut fixed = Vec::new();
    for x in 1..gn {
        for k in 0..kn {
            if table[x][k] == k {
                fixed.push((x, k));
            }
        }
    }
    r.check(
        "no nonzero class fixes an extension class",
        fixed.is_empty(),
        fixed.first().map(|(x, k)| format!("class {x} fixes extension class {k}")).unwrap_or_default(),
    );

    let mut orbit_of = vec![usize::MAX; kn];
    let mut orbits = 0;
    for k in 0..kn {
        if orbit_of[k] == usize::MAX {
            for x in 0..gn {
                orbit_of[table[x][k]] = orbits;
            }
            orbits += 1;
        }
    }
    if i.is_trivial() {
        r.check("single orbit for trivial I", orbits == 1, format!("{orbits} orbits on {kn} classes"));
        let ann = i.annihilator();
        let soc = i.socle();
        let centre = i.additive().centre();
        r.check("Z(I,+) = Soc(I) = Ann(I)", ann == soc && soc == centre, "");
        let zc = Coefficients::centre(i, &alpha.rep)?;
        let zalpha = Coupling::new(&zc.a, zc.chi.clone(), limits.order_bound)?;
        let zcount = h2_alpha(h, &zc.a, &zalpha, limits)?.len();
        r.check("|Ext_alpha(H,I)| = |Ext_alpha(H,Z(I))|", zcount == kn, format!("{kn} vs {zcount}"));
    }
    r.set("ext_classes", json!(kn));
    r.set("h2n_ann_order", json!(gn));
    r.set("orbits", json!(orbits));
    r.set("action_table", json!(table));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::extension::{coupling_of, triplet};
    use crate::group::FiniteGroup;

    fn z(n: usize) -> SkewBrace {
        SkewBrace::trivial(FiniteGroup::cyclic(n))
    }

    fn limits() -> Limits {
        Limits::default()
    }

    /// Every normalized pair passing `check_triplet`, by brute force.
    fn brute_z2(h: &SkewBrace, c: &Coefficients) -> Vec<CocyclePair> {
        let n = h.order();
        let m = c.order();
        let cells = (n - 1) * (n - 1);
        let total = m.pow(cells as u32);
        let fill = |mut code: usize| {
            let mut ch = Cochain::zero(n);
            for a in 1..n {
                for b in 1..n {
                    ch.set(a, b, code % m);
                    code /= m;
                }
            }
            ch
        };
        let mut out = Vec::new();
        for gc in 0..total {
            for fc in 0..total {
                let (g, f) = (fill(gc), fill(fc));
                let t = Triplet { chi: c.chi.clone(), beta: g.clone(), tau: f.clone() };
                if check_triplet(h, &c.a, &t).is_ok() {
                    out.push(CocyclePair { g, f });
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn z2_over_z2_trivial_action() {
        let (h, i) = (z(2), z(2));
        let c = Coefficients::new(&i, &ActionTriple::identity(2, 2)).unwrap();
        let z2 = z2n(&h, &c, &limits()).unwrap();
        assert_eq!(z2.len(), 4);
        assert_eq!(z2, brute_z2(&h, &c));
        assert!(z2.iter().all(|p| p.g.is_normalized() && p.f.is_normalized()));
        let b2 = b2n(&h, &c);
        // θ(1) = 1 gives g(1,1) = −θ(0) + θ(1) + θ(1) = 0 and
        // f(1,1) = −θ(0) + θ(1) + θ(1) = 0 in Z2.
        let p = coboundary(&h, &c, &[0, 1]);
        assert!(p.is_zero());
        assert_eq!(b2, vec![CocyclePair::zero(2)]);
        let g = h2n(&h, &c, &limits()).unwrap();
        assert_eq!(g.order(), z2.len() / b2.len());
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn z2_over_z3_matches_brute_force() {
        let (h, i) = (z(3), z(3));
        let c = Coefficients::new(&i, &ActionTriple::identity(3, 3)).unwrap();
        let z2 = z2n(&h, &c, &limits()).unwrap();
        assert_eq!(z2, brute_z2(&h, &c));
        let g = h2n(&h, &c, &limits()).unwrap();
        assert_eq!(g.order() * g.b2.len(), z2.len());
    }

    #[test]
    fn coprime_orders_give_trivial_h2() {
        let (h, i) = (z(2), z(3));
        for chi in crate::split::enumerate_split_triples(&h, &i, 16).unwrap() {
            if let Ok(c) = Coefficients::new(&i, &chi) {
                assert_eq!(h2n(&h, &c, &limits()).unwrap().order(), 1);
            }
        }
        let c = Coefficients::new(&z(1), &ActionTriple::identity(2, 1)).unwrap();
        assert_eq!(h2n(&h, &c, &limits()).unwrap().order(), 1);
        assert_eq!(z1n(&h, &c, DerivationLaw::Standard, &limits()).unwrap().len(), 1);
    }

    #[test]
    fn derivations_for_trivial_action_are_homomorphisms() {
        for (hn, m) in [(2, 2), (3, 3), (4, 2), (2, 4)] {
            let (h, i) = (z(hn), z(m));
            let c = Coefficients::new(&i, &ActionTriple::identity(hn, m)).unwrap();
            let d = z1n(&h, &c, DerivationLaw::Standard, &limits()).unwrap();
            let mut oracle = Vec::new();
            for code in 0..m.pow(hn as u32) {
                let theta: Vec<usize> = (0..hn).map(|k| code / m.pow(k as u32) % m).collect();
                if (0..hn).all(|x| (0..hn).all(|y| theta[(x + y) % hn] == (theta[x] + theta[y]) % m)) {
                    oracle.push(theta);
                }
            }
            oracle.sort();
            assert_eq!(d, oracle);
            assert!(d.contains(&vec![0; hn]));
        }
    }

    #[test]
    fn rejects_non_abelian_and_non_trivial_coefficients() {
        let s3 = SkewBrace::trivial(FiniteGroup::symmetric(3));
        assert_eq!(Coefficients::new(&s3, &ActionTriple::identity(2, 6)), Err(CohomologyError::NotAbelian));
        let b = catalog::z4_klein_brace();
        assert_eq!(Coefficients::new(&b, &ActionTriple::identity(2, 4)), Err(CohomologyError::NotTrivialBrace));
        let ann = Coefficients::annihilator(&b, &ActionTriple::identity(2, 4)).unwrap();
        assert_eq!(ann.embed, vec![0, 2]);
    }

    #[test]
    fn raw_values_outside_annihilator_are_rejected() {
        let ext = catalog::z2_by_z4_klein_split();
        let t = triplet(&ext, &ext.canonical_section());
        let c = Coefficients::annihilator(ext.i(), &t.chi).unwrap();
        let mut g = Cochain::zero(2);
        g.set(1, 1, 1);
        let err = h2_act_raw(ext.h(), ext.i(), &c, &g, &Cochain::zero(2), &t).unwrap_err();
        assert_eq!(err, CohomologyError::ValuesNotInAnnihilator { h1: 1, h2: 1 });
        g.set(1, 1, 2);
        assert!(h2_act_raw(ext.h(), ext.i(), &c, &g, &Cochain::zero(2), &t).is_ok());
    }

    #[test]
    fn nonzero_class_moves_split_to_cyclic() {
        let ext = catalog::z2_by_z2_split();
        let t = triplet(&ext, &ext.canonical_section());
        let c = Coefficients::annihilator(ext.i(), &t.chi).unwrap();
        let g = h2n(ext.h(), &c, &limits()).unwrap();
        let same = h2_act(ext.h(), ext.i(), &c, g.representative(0), &t).unwrap();
        assert!(extensions_equivalent(&extension_from_triplet(ext.h(), ext.i(), &same).unwrap(), &ext).is_some());
        let moved: Vec<Extension> = (1..g.order())
            .map(|x| extension_from_triplet(ext.h(), ext.i(), &h2_act(ext.h(), ext.i(), &c, g.representative(x), &t).unwrap()).unwrap())
            .collect();
        assert!(moved.iter().all(|e| extensions_equivalent(e, &ext).is_none()));
        let cyclic: Vec<&Extension> = moved.iter().filter(|e| e.e().additive().is_cyclic()).collect();
        assert!(!cyclic.is_empty());
        assert!(cyclic.iter().any(|e| extensions_equivalent(e, &catalog::z4_over_z2()).is_some()));
    }

    #[test]
    fn bijection_small_cases() {
        let r = ext_bijection_check(&z(2), &z(2), &ActionTriple::identity(2, 2), &limits()).unwrap();
        assert!(r.passed, "{}", r.render_text());
        let r = ext_bijection_check(&z(2), &z(3), &ActionTriple::identity(2, 3), &limits()).unwrap();
        assert!(r.passed, "{}", r.render_text());
        assert_eq!(r.data["ext_classes"], json!(1));
        let r = ext_bijection_check(&z(2), &z(1), &ActionTriple::identity(2, 1), &limits()).unwrap();
        assert!(r.passed);
        assert_eq!(r.data["h2n_order"], json!(1));
    }

    #[test]
    fn free_and_transitive_on_small_fixtures() {
        for ext in [catalog::z2_by_z2_split(), catalog::z2_by_z3_split(), catalog::z2_by_z3_negation()] {
            let alpha = coupling_of(&ext, 16).unwrap();
            let r = verify_free_transitive(ext.h(), ext.i(), &alpha, &limits()).unwrap();
            assert!(r.passed, "{}", r.render_text());
            assert_eq!(r.data["orbits"], json!(1));
        }
    }
}
