use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use omlab_core::digraph::{
    decompose_nonneg_flow, disjoint_cocircuit_decomposition, graphic_om, is_flow, FlowFn,
};
use omlab_core::format::{
    emit_digraph, emit_lines, emit_matroid, emit_pair, parse_digraph, parse_lines, parse_matroid,
    parse_om,
};
use omlab_core::generators::{random_digraph, random_pairs, uniform_alt};
use omlab_core::oriented::{
    check_4p, check_ce, check_fa, check_orthogonality, check_orthogonality_sep, induced_signature,
};
use omlab_core::realizations::{u3_signature, Line, LineSet};
use omlab_core::{
    CheckOptions, ElementSet, GroundSet, Matroid, MinorSpec, SignVector, SignaturePair,
    SignedSubset, ValidationOptions,
};

const N: usize = 6;

fn sign_vector(n: usize) -> impl Strategy<Value = SignVector> {
    proptest::collection::vec(0u8..3, n).prop_map(|signs| {
        let mut pos = ElementSet::EMPTY;
        let mut neg = ElementSet::EMPTY;
        for (e, s) in signs.into_iter().enumerate() {
            match s {
                1 => pos = pos.with(e),
                2 => neg = neg.with(e),
                _ => {}
            }
        }
        SignVector::new(pos, neg)
    })
}

fn subset(n: usize) -> impl Strategy<Value = ElementSet> {
    (0u64..1 << n).prop_map(ElementSet::from_bits)
}

fn spec(n: usize) -> impl Strategy<Value = MinorSpec> {
    proptest::collection::vec(0u8..3, n).prop_map(|code| {
        let mut s = MinorSpec::default();
        for (e, c) in code.into_iter().enumerate() {
            match c {
                1 => s.contract = s.contract.with(e),
                2 => s.delete = s.delete.with(e),
                _ => {}
            }
        }
        s
    })
}

// Graphic and uniform matroids on at most seven elements.
fn matroid() -> impl Strategy<Value = Matroid> {
    prop_oneof![
        (3usize..=5, 2usize..=7, any::<u64>())
            .prop_map(|(v, a, seed)| random_digraph(v, a, seed).unwrap().cycle_matroid().unwrap()),
        (2usize..=6)
            .prop_flat_map(|n| (Just(n), 0..=n))
            .prop_map(|(n, r)| Matroid::uniform(&GroundSet::numbered(n), r).unwrap()),
    ]
}

fn random_free_lines(seed: u64, n: usize) -> LineSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let lines: Result<Vec<Line>, _> = (0..n)
            .map(|_| {
                Line::from_ints(
                    rng.gen_range(-3..=3),
                    rng.gen_range(-3..=3),
                    rng.gen_range(-3..=3),
                )
            })
            .collect();
        if let Ok(Ok(q)) = lines.map(LineSet::new) {
            if omlab_core::realizations::is_free(&q).holds() {
                return q;
            }
        }
    }
}

// Oriented matroids from every generator, on at most seven elements.
fn oriented() -> impl Strategy<Value = SignaturePair> {
    prop_oneof![
        (3usize..=6).prop_map(|n| uniform_alt(n).unwrap()),
        (3usize..=5, 2usize..=7, any::<u64>())
            .prop_map(|(v, a, seed)| graphic_om(&random_digraph(v, a, seed).unwrap()).unwrap()),
        (4usize..=6, any::<u64>()).prop_map(|(n, seed)| u3_signature(&random_free_lines(seed, n)).unwrap()),
    ]
}

// Oriented matroids and arbitrary signings of small uniform matroids.
fn any_pair() -> impl Strategy<Value = SignaturePair> {
    prop_oneof![
        oriented(),
        (2usize..=5, any::<u64>()).prop_map(|(n, seed)| {
            let m = Matroid::uniform(&GroundSet::numbered(n), 1.max(n / 2)).unwrap();
            random_pairs(&m, 1, seed).unwrap().pop().unwrap()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reorient_keeps_support(x in sign_vector(N), a in subset(N)) {
        prop_assert_eq!(x.reorient(a).support(), x.support());
        prop_assert_eq!(x.reorient(a).reorient(a), x);
    }

    #[test]
    fn orthogonality_symmetries(x in sign_vector(N), y in sign_vector(N), a in subset(N)) {
        let o = x.is_orthogonal_to(y);
        prop_assert_eq!(o, y.is_orthogonal_to(x));
        prop_assert_eq!(o, x.opposite().is_orthogonal_to(y));
        prop_assert_eq!(o, x.reorient(a).is_orthogonal_to(y.reorient(a)));
    }

    #[test]
    fn restriction_conforms(x in sign_vector(N), a in subset(N)) {
        prop_assert!(x.restrict(a).conforms_to(x));
    }

    #[test]
    fn composition_flattens(
        xs in proptest::collection::vec(sign_vector(N), 0..5),
        ys in proptest::collection::vec(sign_vector(N), 0..5),
    ) {
        let left = SignVector::compose_all(xs.iter().copied());
        let right = SignVector::compose_all(ys.iter().copied());
        let flat = SignVector::compose_all(xs.iter().chain(&ys).copied());
        prop_assert_eq!(left.compose(right), flat);
        for e in flat.support().iter() {
            let first = xs.iter().chain(&ys).find(|v| v.support().contains(e)).unwrap();
            prop_assert_eq!(flat.sign(e), first.sign(e));
        }
    }

    #[test]
    fn orthogonal_to_every_member_means_orthogonal_to_composition(
        u in sign_vector(5),
        xs in proptest::collection::vec(sign_vector(5), 1..5),
    ) {
        let members: Vec<SignVector> = xs.into_iter().filter(|x| x.is_orthogonal_to(u)).collect();
        prop_assert!(SignVector::compose_all(members).is_orthogonal_to(u));
    }

    #[test]
    fn signed_subset_parse_round_trip(x in sign_vector(N)) {
        let g = GroundSet::numbered(N);
        let s = SignedSubset::from_signs(&g, x).unwrap();
        prop_assert_eq!(SignedSubset::parse(&g, &s.to_string()).unwrap(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn double_dual_is_identity(m in matroid()) {
        prop_assert_eq!(m.dual().dual(), m.clone());
        prop_assert_eq!(m.dual().rank(), m.len() - m.rank());
    }

    #[test]
    fn circuits_never_meet_cocircuits_once(m in matroid()) {
        for c in m.circuits() {
            for u in m.cocircuits() {
                prop_assert_ne!((*c & *u).len(), 1);
            }
        }
    }

    #[test]
    fn minors_commute(m in matroid(), s1 in spec(7), s2 in spec(7)) {
        let n = m.len();
        let all = ElementSet::full(n);
        let s1 = MinorSpec::new(s1.contract & all, s1.delete & (all - s1.contract));
        let kept = s1.kept(m.ground());
        let k = kept.len();
        let s2 = MinorSpec::new(s2.contract & ElementSet::full(k), s2.delete & (ElementSet::full(k) - s2.contract));
        let stepwise = m.minor(&s1).unwrap().minor(&s2).unwrap();
        let merged = MinorSpec::new(
            s1.contract | s2.contract.expand(kept),
            s1.delete | s2.delete.expand(kept),
        );
        prop_assert_eq!(stepwise, m.minor(&merged).unwrap());
    }

    #[test]
    fn minor_circuits_lift(m in matroid(), s in spec(7)) {
        let all = ElementSet::full(m.len());
        let s = MinorSpec::new(s.contract & all, s.delete & (all - s.contract));
        let kept = s.kept(m.ground());
        for c in m.minor(&s).unwrap().circuits() {
            let c = c.expand(kept);
            prop_assert!(m
                .circuits()
                .iter()
                .any(|d| c.is_subset(*d) && d.is_subset(c | s.contract)));
        }
    }

    #[test]
    fn contraction_agrees_with_bases(m in matroid(), x in subset(7)) {
        let x = x & ElementSet::full(m.len());
        let rest = ElementSet::full(m.len()) - x;
        // rank through bases only
        let rank = |s: ElementSet| m.bases().iter().map(|b| (*b & s).len()).max().unwrap_or(0);
        let rx = rank(x);
        let independent = |i: ElementSet| rank(i | x) == i.len() + rx;
        let mut expect: Vec<ElementSet> = rest
            .subsets()
            .filter(|c| !c.is_empty() && !independent(*c) && c.iter().all(|e| independent(c.without(e))))
            .map(|c| c.compress(rest))
            .collect();
        expect.sort();
        let contracted = m.contract(x).unwrap();
        prop_assert_eq!(contracted.circuits(), &expect[..]);
    }

    #[test]
    fn matroid_format_round_trip(m in matroid()) {
        let back = parse_matroid(&emit_matroid(&m), ValidationOptions::default()).unwrap();
        prop_assert_eq!(back, m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orthogonality_forms_agree(p in any_pair()) {
        prop_assert_eq!(check_orthogonality(&p).holds(), check_orthogonality_sep(&p).holds());
    }

    #[test]
    fn checks_are_reorientation_invariant(p in any_pair(), a in subset(7)) {
        let a = a & ElementSet::full(p.len());
        let q = p.reorient(a);
        prop_assert_eq!(check_orthogonality(&p).holds(), check_orthogonality(&q).holds());
        let ce = CheckOptions::elimination();
        prop_assert_eq!(check_ce(p.circuits(), &ce).unwrap().holds(), check_ce(q.circuits(), &ce).unwrap().holds());
        let p4 = CheckOptions::four_painting();
        prop_assert_eq!(check_4p(&p, &p4).unwrap().holds(), check_4p(&q, &p4).unwrap().holds());
        let fa = CheckOptions::farkas_axiom();
        prop_assert_eq!(check_fa(&p, &fa).unwrap().holds(), check_fa(&q, &fa).unwrap().holds());
    }

    #[test]
    fn generated_pairs_satisfy_every_axiom(p in oriented()) {
        prop_assert!(check_orthogonality(&p).holds());
        prop_assert!(check_ce(p.circuits(), &CheckOptions::elimination()).unwrap().holds());
        prop_assert!(check_ce(p.cocircuits(), &CheckOptions::elimination()).unwrap().holds());
        prop_assert!(check_4p(&p, &CheckOptions::four_painting()).unwrap().holds());
        prop_assert!(check_fa(&p, &CheckOptions::farkas_axiom()).unwrap().holds());
    }

    #[test]
    fn om_format_round_trip(p in any_pair()) {
        let back = parse_om(&emit_pair(&p), ValidationOptions::default()).unwrap().pair().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn line_restriction_matches_direct_signature(seed in any::<u64>(), n in 5usize..=7, drop in subset(7)) {
        let q = random_free_lines(seed, n);
        let drop = drop & ElementSet::full(n);
        prop_assume!(n - drop.len() >= 4);
        let kept = ElementSet::full(n) - drop;
        let restricted = induced_signature(&u3_signature(&q).unwrap(), &MinorSpec::delete(drop)).unwrap();
        let direct = u3_signature(&q.subset(kept)).unwrap();
        let k = kept.len();
        let strings = |p: &SignaturePair| -> (Vec<String>, Vec<String>) {
            (
                p.circuits().sign_vectors().iter().map(|v| v.to_sign_string(k)).collect(),
                p.cocircuits().sign_vectors().iter().map(|v| v.to_sign_string(k)).collect(),
            )
        };
        prop_assert_eq!(strings(&restricted), strings(&direct));
    }

    #[test]
    fn lines_format_round_trip(seed in any::<u64>(), n in 3usize..=7) {
        let q = random_free_lines(seed, n);
        prop_assert_eq!(parse_lines(&emit_lines(&q)).unwrap(), q);
    }

    #[test]
    fn digraph_format_round_trip(v in 2usize..=6, a in 0usize..=10, seed in any::<u64>()) {
        let d = random_digraph(v, a, seed).unwrap();
        prop_assert_eq!(parse_digraph(&emit_digraph(&d)).unwrap(), d);
    }

    #[test]
    fn parsers_never_panic(text in "[-+0-9a-z ,#\\[\\]\n]{0,80}") {
        let _ = parse_om(&text, ValidationOptions::default());
        let _ = parse_matroid(&text, ValidationOptions::default());
        let _ = parse_lines(&text);
        let _ = parse_digraph(&text);
    }

    #[test]
    fn flows_decompose_into_directed_cycles(
        v in 2usize..=5,
        a in 2usize..=9,
        seed in any::<u64>(),
        weights in proptest::collection::vec(0u64..4, 16),
    ) {
        let d = random_digraph(v, a, seed).unwrap();
        let om = graphic_om(&d).unwrap();
        let directed: Vec<SignVector> = om
            .circuits()
            .sign_vectors()
            .into_iter()
            .filter(|c| c.is_positive())
            .collect();
        let mut values = vec![0i64; a];
        for (c, w) in directed.iter().zip(&weights) {
            for e in c.support().iter() {
                values[e] += *w as i64;
            }
        }
        let f = FlowFn::new(values.clone());
        prop_assert!(is_flow(&d, &f).unwrap());
        let parts = decompose_nonneg_flow(&d, &f).unwrap();
        let mut sum = vec![0i64; a];
        for (cycle, k) in &parts {
            prop_assert!(directed.iter().any(|c| c.support() == *cycle));
            for e in cycle.iter() {
                sum[e] += *k as i64;
            }
        }
        prop_assert_eq!(sum, values);
    }

    #[test]
    fn cocircuit_sums_split_into_disjoint_cocircuits(
        v in 2usize..=5,
        a in 1usize..=9,
        seed in any::<u64>(),
        picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..4),
    ) {
        let d = random_digraph(v, a, seed).unwrap();
        let om = graphic_om(&d).unwrap();
        let all = om.cocircuits().sign_vectors();
        prop_assume!(!all.is_empty());
        let mut g = SignVector::EMPTY;
        for p in picks {
            let u = *p.get(&all);
            if u.support().is_disjoint(g.support()) {
                g = g.compose(u);
            }
        }
        let g = SignedSubset::from_signs(om.ground(), g).unwrap();
        let parts = disjoint_cocircuit_decomposition(&om, &g).unwrap();
        let mut union = ElementSet::EMPTY;
        for u in &parts {
            prop_assert!(u.support().is_disjoint(union));
            prop_assert!(u.conforms_to(&g).unwrap());
            prop_assert!(all.contains(&u.signs()));
            union = union | u.support();
        }
        prop_assert_eq!(union, g.support());
    }
}
