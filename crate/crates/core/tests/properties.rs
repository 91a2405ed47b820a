use std::sync::OnceLock;

use proptest::prelude::*;

use cmlie::lie::scalar;
use cmlie::series::pbw_identity_holds;
use cmlie::weights::ascend_character;
use cmlie::{
    apply, descend_character, free_lie_dims, generator_count_from_dims, graded_quotient,
    lyndon_basis, lyndon_count_over_graded_alphabet, weight_filtration, Derivation, FreeLie,
    GeneratorSpec, GradedModule, LieElement, LyndonWord, MultiDegree,
};

const N: u32 = 10;

fn lie() -> &'static FreeLie {
    static LIE: OnceLock<FreeLie> = OnceLock::new();
    LIE.get_or_init(|| FreeLie::new(N).unwrap())
}

fn words() -> &'static [LyndonWord] {
    static WORDS: OnceLock<Vec<LyndonWord>> = OnceLock::new();
    WORDS.get_or_init(|| {
        (1..=6)
            .flat_map(MultiDegree::with_total)
            .flat_map(|m| lyndon_basis(m).unwrap())
            .collect()
    })
}

/// A small inhomogeneous combination of basis words of length at most 6.
fn element() -> impl Strategy<Value = LieElement> {
    prop::collection::vec((0..words().len(), -3i64..=3), 1..4).prop_map(|terms| {
        LieElement::from_terms(terms.into_iter().map(|(i, c)| (words()[i], scalar(c))))
    })
}

fn homogeneous(m: MultiDegree) -> impl Strategy<Value = LieElement> {
    let basis = lyndon_basis(m).unwrap();
    prop::collection::vec(-3i64..=3, basis.len())
        .prop_map(move |cs| LieElement::combination(&basis, &cs.into_iter().map(scalar).collect::<Vec<_>>()))
}

fn derivation() -> impl Strategy<Value = Derivation> {
    // Raise at most 2, so brackets of words up to degree 4 stay within N.
    prop::sample::select(vec![(0i64, 0i64), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)])
        .prop_flat_map(|(a, b)| {
            let shift = MultiDegree::new(a, b);
            (
                Just(shift),
                homogeneous(shift + MultiDegree::X),
                homogeneous(shift + MultiDegree::Y),
            )
        })
        .prop_map(|(shift, ix, iy)| Derivation::homogeneous(shift, ix, iy, N).unwrap())
}

fn generator_spec() -> impl Strategy<Value = GeneratorSpec> {
    prop::collection::btree_map((0i64..=4, 0i64..=4), 1u64..=2, 1..5).prop_map(|m| {
        GeneratorSpec::from_pairs(
            m.into_iter()
                .filter(|((a, b), _)| a + b > 0)
                .map(|((a, b), k)| (MultiDegree::new(a, b), k)),
        )
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric(a in element(), b in element()) {
        let l = lie();
        prop_assert_eq!(l.bracket(&a, &b), -&l.bracket(&b, &a));
        prop_assert!(l.bracket(&a, &a).is_zero());
    }

    #[test]
    fn bracket_satisfies_jacobi(a in element(), b in element(), c in element()) {
        let l = lie();
        let s = &(&l.bracket(&a, &l.bracket(&b, &c)) + &l.bracket(&b, &l.bracket(&c, &a)))
            + &l.bracket(&c, &l.bracket(&a, &b));
        prop_assert!(s.is_zero(), "{}", s);
    }

    #[test]
    fn derivations_obey_leibniz(d in derivation(), i in 0usize..8, j in 0usize..8) {
        let l = lie();
        let (a, b) = (LieElement::basis(words()[i]), LieElement::basis(words()[j]));
        let lhs = apply(l, &d, &l.bracket(&a, &b)).unwrap();
        let rhs = &l.bracket(&apply(l, &d, &a).unwrap(), &b) + &l.bracket(&a, &apply(l, &d, &b).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn generators_round_trip_through_dims(gens in generator_spec(), t in 1u32..=10) {
        let dims = free_lie_dims(&gens, t).unwrap();
        prop_assert!(pbw_identity_holds(&gens, &dims));
        prop_assert_eq!(generator_count_from_dims(&dims).unwrap(), gens.restricted(t));
        prop_assert_eq!(&lyndon_count_over_graded_alphabet(&gens, t), &dims);
    }

    #[test]
    fn more_generators_never_shrink_dims(gens in generator_spec(), a in 0i64..=3, b in 1i64..=3) {
        let t = 8;
        let mut bigger = gens.clone();
        bigger.add(MultiDegree::new(a, b), 1).unwrap();
        let small = free_lie_dims(&gens, t).unwrap();
        let large = free_lie_dims(&bigger, t).unwrap();
        for (m, c) in small.iter() {
            prop_assert!(large.get(m) >= c, "at {}", m);
        }
    }

    #[test]
    fn characters_round_trip(w in prop::sample::select(vec![2i64, 4, 6]), m1 in -20i64..=20, k in -6i64..=6) {
        // Choose m2 congruent to m1 modulo w.
        let m2 = m1 + k * w;
        prop_assume!((-20..=20).contains(&m2));
        let m = MultiDegree::new(m1, m2);
        let (a, b) = descend_character(m, w).unwrap();
        prop_assert_eq!(ascend_character(a, b, w).unwrap(), m);
    }

    #[test]
    fn filtration_is_increasing_and_sliced(
        pairs in prop::collection::vec(((-8i64..=0, -8i64..=0), 1u64..=3), 0..12),
        n in -16i64..=0,
    ) {
        let v = GradedModule::from_pairs(2, pairs.into_iter().map(|((a, b), d)| (vec![a, b], d))).unwrap();
        let lower = weight_filtration(&v, n - 1);
        let upper = weight_filtration(&v, n);
        prop_assert!(lower.total_dim() <= upper.total_dim());
        prop_assert_eq!(lower.total_dim() + graded_quotient(&v, n).total_dim(), upper.total_dim());
        let slices: u64 = (-16..=0).map(|k| graded_quotient(&v, k).total_dim()).sum();
        prop_assert_eq!(slices, v.total_dim());
    }

    #[test]
    fn bidegrees_print_and_parse(m1 in -50i64..=50, m2 in -50i64..=50) {
        let m = MultiDegree::new(m1, m2);
        prop_assert_eq!(m.to_string().parse::<MultiDegree>().unwrap(), m);
    }

    #[test]
    fn lyndon_words_print_and_parse(i in 0..words().len()) {
        let w = words()[i];
        prop_assert_eq!(w.to_string().parse::<LyndonWord>().unwrap(), w);
    }
}
