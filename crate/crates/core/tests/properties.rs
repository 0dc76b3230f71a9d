use std::collections::BTreeSet;
use std::sync::OnceLock;

use braceforge::brace::BraceHom;
use braceforge::catalog;
use braceforge::cohomology::{h2_act, h2n, Coefficients, CohomologyGroup};
use braceforge::extension::{
    check_triplet, enumerate_extensions, extension_from_triplet, extensions_equivalent, triplet, triplets_equivalent,
    Extension, Triplet,
};
use braceforge::io::{self, CatalogEntry, Payload, Provenance};
use braceforge::split::{self, ActionTriple};
use braceforge::wells::{pair_act, AutPair};
use braceforge::{FiniteGroup, Limits, Perm, PermGroup, SkewBrace};
use proptest::prelude::*;

fn braces() -> &'static [(String, SkewBrace)] {
    static CELL: OnceLock<Vec<(String, SkewBrace)>> = OnceLock::new();
    CELL.get_or_init(|| {
        catalog::axiom_fixtures().unwrap().into_iter().filter(|(_, b)| b.order() <= 12).collect()
    })
}

fn groups() -> &'static [FiniteGroup] {
    static CELL: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut v: Vec<FiniteGroup> = catalog::small_groups().into_iter().map(|(_, g)| g).collect();
        v.push(FiniteGroup::cyclic(12));
        v.push(FiniteGroup::dihedral(6));
        v.push(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(6)));
        v
    })
}

fn split_cases() -> &'static [(SkewBrace, SkewBrace, Vec<ActionTriple>)] {
    static CELL: OnceLock<Vec<(SkewBrace, SkewBrace, Vec<ActionTriple>)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let pairs = [
            (catalog::trivial_brace(2), catalog::trivial_brace(3)),
            (catalog::trivial_brace(2), catalog::z4_klein_brace()),
            (catalog::klein_z4_brace(), catalog::trivial_brace(3)),
            (catalog::trivial_brace(4), catalog::trivial_brace(2)),
            (catalog::trivial_brace(2), catalog::s3_z6_brace()),
        ];
        pairs
            .into_iter()
            .map(|(h, i)| {
                let ts = split::enumerate_split_triples(&h, &i, 16).unwrap();
                (h, i, ts)
            })
            .collect()
    })
}

fn extensions() -> &'static [Extension] {
    static CELL: OnceLock<Vec<Extension>> = OnceLock::new();
    CELL.get_or_init(|| {
        let l = Limits::default();
        let mut v = Vec::new();
        for (h, i) in [
            (catalog::trivial_brace(2), catalog::trivial_brace(2)),
            (catalog::trivial_brace(2), catalog::trivial_brace(3)),
            (catalog::trivial_brace(3), catalog::trivial_brace(2)),
            (catalog::trivial_brace(2), catalog::z4_klein_brace()),
        ] {
            v.extend(enumerate_extensions(&h, &i, &l).unwrap());
        }
        v.extend(catalog::extension_fixtures().into_iter().map(|(_, e)| e));
        v
    })
}

/// Fixtures with trivial `I` and their `H²_N(H, Ann I)`.
fn acted() -> &'static [(Extension, Coefficients, CohomologyGroup)] {
    static CELL: OnceLock<Vec<(Extension, Coefficients, CohomologyGroup)>> = OnceLock::new();
    CELL.get_or_init(|| {
        ["z2-by-z2-split", "z4-over-z2", "z2-by-z3-negation", "klein-by-z2-twisted"]
            .iter()
            .map(|n| {
                let ext = catalog::extension_fixtures().into_iter().find(|(m, _)| m == n).unwrap().1;
                let t = triplet(&ext, &ext.canonical_section());
                let c = Coefficients::annihilator(ext.i(), &t.chi).unwrap();
                let g = h2n(ext.h(), &c, &Limits::default()).unwrap();
                (ext, c, g)
            })
            .collect()
    })
}

fn elems(n: usize) -> impl Strategy<Value = usize> {
    0..n
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha, ..ProptestConfig::default() })]

    #[test]
    fn group_tables_are_associative(k in 0usize..17, a in elems(12), b in elems(12), c in elems(12)) {
        let g = &groups()[k % groups().len()];
        let n = g.order();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(g.op(g.op(a, b), c), g.op(a, g.op(b, c)));
        prop_assert_eq!(g.op(a, g.inv(a)), 0);
    }

    #[test]
    fn automorphism_groups_are_closed(k in 0usize..14, x in any::<prop::sample::Index>(), y in any::<prop::sample::Index>()) {
        let g = &catalog::small_groups()[k].1;
        let aut = g.automorphism_group(16).unwrap();
        let elems: Vec<&Perm> = aut.iter().collect();
        let (p, q) = (x.get(&elems), y.get(&elems));
        prop_assert!(g.is_automorphism(p));
        prop_assert!(aut.contains(&p.compose(q)));
        prop_assert!(aut.contains(&p.inverse()));
    }

    #[test]
    fn normal_closure_is_minimal(picks in prop::collection::vec(any::<prop::sample::Index>(), 1..3)) {
        let s4 = PermGroup::generate(4, [Perm::from_images(vec![1, 0, 2, 3]).unwrap(), Perm::from_images(vec![1, 2, 3, 0]).unwrap()].iter());
        prop_assert_eq!(s4.order(), 24);
        let all: Vec<&Perm> = s4.iter().collect();
        let gens: Vec<Perm> = picks.iter().map(|i| (*i.get(&all)).clone()).collect();
        let n = PermGroup::normal_closure(&s4, gens.iter());
        prop_assert!(n.is_normal_in(&s4));
        prop_assert!(gens.iter().all(|g| n.contains(g)));
        for x in n.iter().filter(|x| !gens.contains(x) && !x.is_identity()) {
            let rest: BTreeSet<Perm> = n.iter().filter(|y| *y != x).cloned().collect();
            let closed = rest.iter().all(|a| rest.iter().all(|b| rest.contains(&a.compose(b))))
                && s4.iter().all(|a| rest.iter().all(|b| rest.contains(&a.conjugate(b))));
            prop_assert!(!closed);
        }
    }

    #[test]
    fn lambda_laws(k in any::<prop::sample::Index>(), a in elems(12), b in elems(12), c in elems(12)) {
        let (_, e) = k.get(braces());
        let n = e.order();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(e.circ(a, e.add(b, c)), e.add(e.sub(e.circ(a, b), a), e.circ(a, c)));
        let la = e.lambda(a);
        prop_assert_eq!(la.apply(e.add(b, c)), e.add(la.apply(b), la.apply(c)));
        prop_assert_eq!(e.lambda(e.circ(a, b)), la.compose(&e.lambda(b)));
        prop_assert_eq!(e.add(a, b), e.circ(a, la.inverse().apply(b)));
        prop_assert_eq!(e.circ(a, b), e.add(a, la.apply(b)));
    }

    #[test]
    fn socle_chain(k in any::<prop::sample::Index>()) {
        let (_, e) = k.get(braces());
        let (ann, soc, ker) = (e.annihilator(), e.socle(), e.kernel_lambda());
        prop_assert!(ann.is_subset(&soc) && soc.is_subset(&ker));
        for s in [&ann, &soc, &ker] {
            prop_assert!(e.is_subbrace(s));
        }
    }

    #[test]
    fn projection_kernels_are_ideals(k in any::<prop::sample::Index>()) {
        let ext = k.get(extensions());
        let hom = BraceHom::new(ext.proj_map().to_vec());
        prop_assert!(hom.is_hom(ext.e(), ext.h()));
        prop_assert!(ext.e().is_ideal(&hom.kernel()).unwrap());
    }

    #[test]
    fn split_products_round_trip(k in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let (h, i, ts) = k.get(split_cases());
        let t = j.get(ts);
        let ext = split::semidirect_extension(h, i, t).unwrap();
        let e = ext.e();
        prop_assert!(SkewBrace::from_tables(&e.additive().rows(), &e.circle().rows()).is_ok());
        let (back, _) = split::split_decompose(&ext, &ext.canonical_section()).unwrap();
        prop_assert_eq!(&back, t);
        prop_assert!(BraceHom::new(ext.inj_map().to_vec()).is_hom(i, e));
        prop_assert!(BraceHom::new(ext.proj_map().to_vec()).is_hom(e, h));
        let image: BTreeSet<usize> = ext.inj_map().iter().copied().collect();
        prop_assert_eq!(image, BraceHom::new(ext.proj_map().to_vec()).kernel());
    }

    #[test]
    fn identity_triple_gives_direct_product(k in any::<prop::sample::Index>()) {
        let (h, i, _) = k.get(split_cases());
        let t = ActionTriple::identity(h.order(), i.order());
        prop_assert_eq!(split::semidirect_product(h, i, &t).unwrap(), SkewBrace::direct_product(h, i));
    }

    #[test]
    fn extracted_triplets_are_valid_and_section_independent(k in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let ext = k.get(extensions());
        let sections: Vec<_> = ext.sections().take(64).collect();
        let s = j.get(&sections);
        let (h, i) = (ext.h(), ext.i());
        let t1 = triplet(ext, &ext.canonical_section());
        let t2 = triplet(ext, s);
        prop_assert!(check_triplet(h, i, &t2).is_ok());
        prop_assert!(triplets_equivalent(h, i, &t1, &t2).is_some());
        let theta = ext.section_difference(&ext.canonical_section(), s);
        prop_assert_eq!(&ext.shift_section(&ext.canonical_section(), &theta), s);
        let rebuilt = extension_from_triplet(h, i, &t2).unwrap();
        prop_assert_eq!(triplet(&rebuilt, &rebuilt.canonical_section()), t2.clone());
        prop_assert!(extensions_equivalent(&rebuilt, ext).is_some());
    }

    #[test]
    fn equivalence_is_transitive(k in any::<prop::sample::Index>(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let ext = k.get(extensions());
        let sections: Vec<_> = ext.sections().take(64).collect();
        let (h, i) = (ext.h(), ext.i());
        let t0 = triplet(ext, &ext.canonical_section());
        let t1 = triplet(ext, a.get(&sections));
        let t2 = triplet(ext, b.get(&sections));
        prop_assert!(triplets_equivalent(h, i, &t0, &t0).is_some());
        prop_assert!(triplets_equivalent(h, i, &t1, &t0).is_some());
        prop_assert!(triplets_equivalent(h, i, &t1, &t2).is_some());
    }

    #[test]
    fn h2_acts_as_a_group(k in any::<prop::sample::Index>(), x in any::<prop::sample::Index>(), y in any::<prop::sample::Index>()) {
        let (ext, c, g) = k.get(acted());
        let (h, i) = (ext.h(), ext.i());
        let classes: Vec<usize> = (0..g.order()).collect();
        let (x, y) = (*x.get(&classes), *y.get(&classes));
        let t = triplet(ext, &ext.canonical_section());
        let act = |cls: usize, t: &Triplet| h2_act(h, i, c, g.representative(cls), t).unwrap();
        let zero = extension_from_triplet(h, i, &act(0, &t)).unwrap();
        prop_assert!(extensions_equivalent(&zero, ext).is_some());
        let lhs = extension_from_triplet(h, i, &act(g.add(x, y), &t)).unwrap();
        let rhs = extension_from_triplet(h, i, &act(x, &act(y, &t))).unwrap();
        prop_assert!(extensions_equivalent(&lhs, &rhs).is_some());
        let ann = i.annihilator();
        prop_assert_eq!(&ann, &i.socle());
        prop_assert_eq!(&ann, &i.additive().centre());
    }

    #[test]
    fn pair_action_is_a_right_action(k in any::<prop::sample::Index>(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let trivial_i: Vec<&Extension> = extensions().iter().filter(|e| e.i().is_trivial() && e.h().order() <= 3).collect();
        let ext = *k.get(&trivial_i);
        let auth: Vec<Perm> = ext.h().automorphisms(16).unwrap().iter().cloned().collect();
        let auti: Vec<Perm> = ext.i().automorphisms(16).unwrap().iter().cloned().collect();
        let pairs: Vec<AutPair> = auth.iter().flat_map(|p| auti.iter().map(move |t| AutPair { phi: p.clone(), theta: t.clone() })).collect();
        let (c1, c2) = (a.get(&pairs), b.get(&pairs));
        let id = AutPair::identity(ext.h().order(), ext.i().order());
        prop_assert!(extensions_equivalent(&pair_act(ext, &id).unwrap(), ext).is_some());
        let lhs = pair_act(ext, &c1.compose(c2)).unwrap();
        let rhs = pair_act(&pair_act(ext, c1).unwrap(), c2).unwrap();
        prop_assert!(extensions_equivalent(&lhs, &rhs).is_some());
    }

    #[test]
    fn catalog_entries_round_trip(k in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let (h, i, ts) = k.get(split_cases());
        let t = j.get(ts).clone();
        for payload in [Payload::Triple(t.clone()), Payload::Brace(split::semidirect_product(h, i, &t).unwrap())] {
            let entry = CatalogEntry::new("sample", payload, Provenance::Derived);
            let text = io::canonical_string(&entry.to_value());
            let back = io::entry_from_str("mem", &text).unwrap();
            prop_assert_eq!(&back, &entry);
            prop_assert_eq!(io::canonical_string(&back.to_value()), text);
        }
    }
}
