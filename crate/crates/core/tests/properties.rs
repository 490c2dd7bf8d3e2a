use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use skewhilbert::congruence::{self, phi, Partition};
use skewhilbert::search::{enumerate_models, SearchSpec};
use skewhilbert::term::{self, Term};
use skewhilbert::{axioms, codec, corpus, AxiomSystem, CongMode, ElemSet, FinStructure};

fn config() -> Config {
    let seed = std::env::var("SKEWHILBERT_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed_2026);
    Config { cases: 128, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

/// Every skew Hilbert algebra of size at most 5 up to isomorphism, plus the corpus.
fn pool() -> &'static [FinStructure] {
    static POOL: OnceLock<Vec<FinStructure>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut all: Vec<FinStructure> = (1..=5)
            .flat_map(|n| enumerate_models(&SearchSpec::new(n, AxiomSystem::SkewHilbert)).unwrap())
            .collect();
        all.extend(corpus::NAMES.iter().map(|n| corpus::load(n)));
        all
    })
}

fn structure() -> impl Strategy<Value = FinStructure> {
    (0..pool().len()).prop_map(|i| pool()[i].clone())
}

fn with_perm() -> impl Strategy<Value = (FinStructure, Vec<usize>)> {
    structure().prop_flat_map(|s| {
        let perm: Vec<usize> = (0..s.size()).collect();
        (Just(s), Just(perm).prop_shuffle())
    })
}

fn with_subset() -> impl Strategy<Value = (FinStructure, ElemSet)> {
    structure().prop_flat_map(|s| {
        let n = s.size();
        (Just(s), (0u64..1 << n).prop_map(ElemSet))
    })
}

fn with_pair() -> impl Strategy<Value = (FinStructure, usize, usize)> {
    structure().prop_flat_map(|s| {
        let n = s.size();
        (Just(s), 0..n, 0..n)
    })
}

fn partition(n: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..n, n).prop_map(|l| Partition::from_labels(&l))
}

fn term_strategy() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["x", "y", "z", "u"]).prop_map(term::var),
        Just(Term::One),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| term::star(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| term::join(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| term::meet(a, b)),
            (inner.clone(), inner.clone(), prop::collection::vec(inner, 0..2))
                .prop_map(|(a, b, rest)| term::coneinf(a, b, rest)),
        ]
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn text_format_round_trips(s in structure()) {
        let back = codec::parse(&codec::emit(&s)).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn json_format_round_trips(s in structure()) {
        let back = codec::from_json(&codec::to_json(&s)).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(codec::parse_any(&codec::to_json(&s)).unwrap(), s);
    }

    #[test]
    fn verdicts_ignore_relabelling((s, perm) in with_perm()) {
        let p = s.permuted(&perm);
        for sys in AxiomSystem::ALL {
            let (a, b) = (axioms::check(&s, sys), axioms::check(&p, sys));
            match (a, b) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a.pass, b.pass, "{}", sys.name()),
                (a, b) => prop_assert_eq!(a.is_err(), b.is_err(), "{}", sys.name()),
            }
        }
    }

    #[test]
    fn congruence_counts_ignore_relabelling((s, perm) in with_perm()) {
        let p = s.permuted(&perm);
        let a = congruence::enumerate_congruences(&s, CongMode::MinStable).unwrap();
        let b = congruence::enumerate_congruences(&p, CongMode::MinStable).unwrap();
        prop_assert_eq!(a.len(), b.len());
        for theta in &a {
            let moved: Vec<usize> = (0..s.size())
                .map(|x| perm.iter().position(|&q| q == x).unwrap())
                .map(|x| theta.block_of(x))
                .collect();
            prop_assert!(b.contains(&Partition::from_labels(&moved)));
        }
    }

    #[test]
    fn partitions_form_a_lattice(
        (p, q, r) in (1usize..8).prop_flat_map(|n| (partition(n), partition(n), partition(n)))
    ) {
        prop_assert_eq!(p.join(&q), q.join(&p));
        prop_assert_eq!(p.meet(&q), q.meet(&p));
        prop_assert_eq!(p.join(&p.meet(&q)), p.clone());
        prop_assert_eq!(p.meet(&p.join(&q)), p.clone());
        prop_assert_eq!(p.join(&q).join(&r), p.join(&q.join(&r)));
        prop_assert_eq!(p.meet(&q).meet(&r), p.meet(&q.meet(&r)));
        prop_assert_eq!(p.refines(&q), p.meet(&q) == p);
        prop_assert!(p.meet(&q).refines(&p) && p.refines(&p.join(&q)));
        prop_assert_eq!(p.relation().to_partition(), Some(p.clone()));
    }

    #[test]
    fn elemset_matches_btreeset(
        a in prop::collection::btree_set(0usize..64, 0..20),
        b in prop::collection::btree_set(0usize..64, 0..20),
    ) {
        let (x, y) = (ElemSet::from_iter(a.iter().copied()), ElemSet::from_iter(b.iter().copied()));
        prop_assert_eq!(x.iter().collect::<Vec<_>>(), a.iter().copied().collect::<Vec<_>>());
        prop_assert_eq!(x.len(), a.len());
        prop_assert_eq!(x.union(y).iter().collect::<BTreeSet<_>>(), a.union(&b).copied().collect());
        prop_assert_eq!(x.intersect(y).iter().collect::<BTreeSet<_>>(), a.intersection(&b).copied().collect());
        prop_assert_eq!(x.is_subset(y), a.is_subset(&b));
        prop_assert_eq!(x.first(), a.first().copied());
        for e in 0..64 {
            prop_assert_eq!(x.contains(e), a.contains(&e));
            prop_assert_eq!(x.without(e).contains(e), false);
            prop_assert!(x.with(e).contains(e));
        }
    }

    #[test]
    fn phi_is_symmetric((s, m) in with_subset()) {
        let r = phi(&s, m);
        prop_assert!(r.is_symmetric());
        prop_assert_eq!(r.is_reflexive(), m.contains(s.one()));
        for x in 0..s.size() {
            prop_assert_eq!(r.contains(x, s.one()), m.contains(s.one()) && m.contains(s.s(s.one(), x)));
        }
    }

    #[test]
    fn phi_is_monotone((s, m) in with_subset(), extra in 0usize..6) {
        let bigger = m.with(extra % s.size());
        let (small, large) = (phi(&s, m), phi(&s, bigger));
        for (x, y) in small.pairs() {
            prop_assert!(large.contains(x, y));
        }
    }

    #[test]
    fn principal_congruence_is_least((s, a, b) in with_pair()) {
        let mode = CongMode::default_for(&s);
        let theta = congruence::principal_congruence(&s, &[(a, b)]).unwrap();
        prop_assert!(theta.same(a, b));
        prop_assert!(congruence::is_congruence(&s, &theta, mode).unwrap().pass);
        for other in congruence::enumerate_congruences(&s, mode).unwrap() {
            if other.same(a, b) {
                prop_assert!(theta.refines(&other));
            }
        }
    }

    #[test]
    fn terms_print_and_parse(t in term_strategy()) {
        prop_assert_eq!(Term::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn substitution_commutes_with_evaluation(
        t in term_strategy(),
        r in term_strategy(),
        (s, a, b) in with_pair(),
    ) {
        let env = [("x", a), ("y", b), ("z", s.one()), ("u", a)];
        if let Some(v) = term::eval(&s, &r, &env).unwrap() {
            let direct = term::eval(&s, &t.substitute(&[("z", r.clone())]), &env).unwrap();
            let staged = term::eval(&s, &t, &[("x", a), ("y", b), ("z", v), ("u", a)]).unwrap();
            prop_assert_eq!(direct, staged);
        }
    }
}
