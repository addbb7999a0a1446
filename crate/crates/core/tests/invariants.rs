mod common;

use proptest::prelude::*;

use common::generic_net;
use plmorse::complex::{is_generic, CanonicalComplex};
use plmorse::complexity::is_pl_morse_depth2;
use plmorse::geometry::{strict_feasible, Affine};
use plmorse::network::{random_network, Scheme};
use plmorse::rational::int;
use plmorse::Rational;

fn arch() -> impl Strategy<Value = Vec<usize>> {
    prop_oneof![
        Just(vec![2, 3, 1]),
        Just(vec![2, 4, 1]),
        Just(vec![1, 3, 1]),
        Just(vec![2, 2, 2, 1]),
    ]
}

/// Alternating count of open cells: the Euler characteristic with compact
/// supports of R^n, which is (-1)^n.
fn compact_support_euler(cx: &CanonicalComplex) -> i64 {
    cx.cells().iter().map(|c| if c.dim % 2 == 0 { 1 } else { -1 }).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cells_tile_the_input_space(arch in arch(), seed in 0u64..1000) {
        let net = random_network(&arch, seed, Scheme::Gaussian).unwrap();
        let cx = CanonicalComplex::build(&net);
        let sign = if arch[0] % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(compact_support_euler(&cx), sign);
        let levels: Vec<Rational> = vec![int(0), int(1)];
        prop_assert_eq!(compact_support_euler(&cx.refine(&levels)), sign);
    }

    #[test]
    fn every_face_has_lower_dimension(arch in arch(), seed in 0u64..1000) {
        let cx = CanonicalComplex::build(&random_network(&arch, seed, Scheme::Uniform).unwrap());
        for i in 0..cx.len() {
            for &f in cx.faces(i) {
                prop_assert!(cx.cell(f).dim < cx.cell(i).dim);
                prop_assert!(cx.cofaces(f).contains(&i));
                prop_assert!(cx.cell(i).polyhedron.contains_point(&cx.cell(f).interior_point));
            }
        }
    }

    #[test]
    fn negation_mirrors_thresholds(arch in arch(), seed in 0u64..1000) {
        let net = generic_net(&arch, seed);
        let a = CanonicalComplex::build(&net).nontransversal_thresholds();
        let mut b: Vec<Rational> = CanonicalComplex::build(&net.negated())
            .nontransversal_thresholds()
            .iter()
            .map(|t| -t)
            .collect();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn interior_points_locate_their_cells(seed in 0u64..1000) {
        let cx = CanonicalComplex::build(&random_network(&[2, 3, 2, 1], seed, Scheme::Gaussian).unwrap());
        for (i, c) in cx.cells().iter().enumerate() {
            prop_assert_eq!(cx.locate(&c.interior_point).unwrap(), i);
        }
    }

    #[test]
    fn all_minus_test_agrees_with_classification(n1 in 2usize..6, seed in 0u64..1000) {
        let net = random_network(&[2, n1, 1], seed, Scheme::Gaussian).unwrap();
        prop_assume!(is_generic(&net));
        let layer = &net.layers()[0];
        let forms: Vec<Affine> = (0..n1).map(|i| layer.neuron(i)).collect();
        prop_assert_eq!(!strict_feasible(&forms), is_pl_morse_depth2(&net).unwrap());
    }
}
