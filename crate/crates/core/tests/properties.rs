use proptest::prelude::*;

use symhyper::classify::{classify, classify_recursive};
use symhyper::pascal::{binom_mod2, pascal_matrix};
use symhyper::recovery::{first_column, reconstruct, trace_mixture, CoefficientVariant};
use symhyper::statevec::{
    apply_gates, build_state, g_operator_gates, is_stabilized, Hypergraph, PauliWord,
};
use symhyper::sym_core::{
    cardinalities_from_indicator, e_from_g, g_from_e, indicator_from_cardinalities,
    sign_vector, CardinalityVector,
};

fn cardinalities(max_n: usize) -> impl Strategy<Value = CardinalityVector> {
    (1..=max_n).prop_flat_map(|n| {
        (1u128..(1u128 << n)).prop_map(move |levels| CardinalityVector::from_mask(n, levels << 1).unwrap())
    })
}

fn hypergraph(max_n: usize) -> impl Strategy<Value = Hypergraph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1u32..(1u32 << n), 0..12).prop_map(move |masks| {
            let mut g = Hypergraph::new(n).unwrap();
            for m in masks {
                g.add_edge_mask(m).unwrap();
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn exponents_determine_cardinalities(k in cardinalities(100)) {
        let g = indicator_from_cardinalities(&k);
        let e = e_from_g(&g);
        prop_assert_eq!(g_from_e(&e).unwrap(), g);
        prop_assert_eq!(cardinalities_from_indicator(&g), k.clone());
        prop_assert_eq!(sign_vector(&k).to_cardinalities().unwrap(), k);
    }

    #[test]
    fn pascal_entries_follow_lucas(n in 0usize..100, i in 0usize..100, j in 0usize..100) {
        let (i, j) = (i % (n + 1), j % (n + 1));
        let a = pascal_matrix(n).unwrap();
        prop_assert_eq!(a.get(i, j), binom_mod2(i as u64, j as u64));
    }

    #[test]
    fn text_form_parses_back(k in cardinalities(127)) {
        prop_assert_eq!(k.to_string().parse::<CardinalityVector>().unwrap(), k);
    }

    #[test]
    fn recursion_agrees_with_palindromes(k in cardinalities(127)) {
        prop_assert_eq!(classify_recursive(&k), classify(&k));
    }

    #[test]
    fn reconstruction_inverts_trace(
        (traced, k) in (1usize..6, 2usize..40).prop_flat_map(|(traced, n)| {
            let n = n.max(traced + 1);
            // Only levels above `traced`.
            (Just(traced), (1u128..(1u128 << (n - traced)))
                .prop_map(move |levels| CardinalityVector::from_mask(n, levels << (traced + 1)).unwrap()))
        })
    ) {
        let column = first_column(&trace_mixture(&k, traced).unwrap());
        let f = reconstruct(&column, k.n(), traced, CoefficientVariant::default()).unwrap();
        prop_assert_eq!(f, sign_vector(&k));
    }

    #[test]
    fn g_operators_stabilize_any_hypergraph_state(g in hypergraph(8), j in 1usize..=8) {
        prop_assume!(j <= g.n());
        let psi = build_state(&g).unwrap();
        let out = apply_gates(&g_operator_gates(&g, j).unwrap(), &psi).unwrap();
        prop_assert!(out.distance(&psi) < 1e-10);
    }

    #[test]
    fn class_word_stabilizes_only_its_class(k in cardinalities(9)) {
        let psi = symhyper::statevec::build_symmetric_state(&k).unwrap();
        let c = classify(&k);
        for cand in symhyper::StabilizerClass::STABLE {
            let word = PauliWord::for_class(cand, k.n()).unwrap();
            prop_assert_eq!(is_stabilized(&word, &psi), c == cand);
        }
    }
}
