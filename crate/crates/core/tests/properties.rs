use dashu_ratio::RBig;
use num_complex::Complex64;
use proptest::prelude::*;

use qtv::braid::{closure, conjugate, stabilize, BraidWord};
use qtv::cyclo::{CycloContext, CyclotomicElement};
use qtv::fibered::{adjust_linking, homogenize, insert_pattern};
use qtv::invariants::{growth_series, tv_link_complement, InvariantOptions};
use qtv::skein::{colored_bracket, exact_root, float_root, EngineOptions};

fn element(order: u64) -> impl Strategy<Value = CyclotomicElement> {
    let phi = CycloContext::get(order).unwrap().phi();
    prop::collection::vec((-40i64..40, 1u64..6), phi).prop_map(move |cs| {
        let ctx = CycloContext::get(order).unwrap();
        let coeffs: Vec<RBig> = cs.iter().map(|&(n, d)| RBig::from(n) / RBig::from(d)).collect();
        CyclotomicElement::from_coefficients(&ctx, &coeffs)
    })
}

fn braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        prop::collection::vec((1..n as i32, any::<bool>()), 0..=max_len)
            .prop_map(move |ls| BraidWord::new(n, ls.iter().map(|&(g, s)| if s { g } else { -g }).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(a in element(20), b in element(20), c in element(20)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), CyclotomicElement::one(a.context()));
        }
    }

    #[test]
    fn galois_is_a_ring_map(a in element(12), b in element(12), k in prop::sample::select(vec![1i64, 5, 7, 11])) {
        prop_assert_eq!((&a * &b).galois(k).unwrap(), &a.galois(k).unwrap() * &b.galois(k).unwrap());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert!((a.conj().embed() - a.embed().conj()).norm() < 1e-9);
    }

    #[test]
    fn embedding_is_multiplicative(a in element(28), b in element(28)) {
        let lhs = (&a * &b).embed();
        let rhs = a.embed() * b.embed();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn linking_invariant_under_markov_moves(b in braid(4, 12), g in braid(4, 6), positive in any::<bool>()) {
        let g = g.delete_strands(&(0..g.strands()).map(|i| i < b.strands()).collect::<Vec<_>>());
        let old = closure(&b);
        for m in [conjugate(&b, &g).unwrap(), stabilize(&b, positive)] {
            let new = closure(&m.braid);
            prop_assert_eq!(new.component_count(), old.component_count());
            for i in 0..old.component_count() {
                for j in 0..old.component_count() {
                    if i != j {
                        prop_assert_eq!(old.linking_matrix[i][j], new.linking_matrix[m.component_map[i]][m.component_map[j]]);
                    }
                }
            }
        }
    }

    #[test]
    fn canonical_text_is_stable(b in braid(5, 15)) {
        let again = BraidWord::from_canonical(&b.canonical()).unwrap();
        prop_assert_eq!(&again, &b);
        prop_assert_eq!(again.canonical(), b.canonical());
        prop_assert_eq!(BraidWord::parse(&b.text(), Some(b.strands())).unwrap(), b);
    }

    #[test]
    fn homogenization_invariants(b in braid(4, 20), extra in prop::collection::vec(-3i64..4, 4)) {
        let h = homogenize(&b);
        h.check_invariants().unwrap();
        let orig = closure(&b);
        let deleted = closure(&h.delete_stallings());
        prop_assert_eq!(&deleted.linking_matrix, &orig.linking_matrix);
        let targets: Vec<i64> = extra.iter().take(h.linking_vector.len()).copied().collect();
        let a = adjust_linking(&h, &targets).unwrap();
        a.check_invariants().unwrap();
        prop_assert_eq!(&a.linking_vector, &targets);
        if b.crossing_count() > 0 {
            let p = insert_pattern(&a, 2, 1, 0).unwrap();
            p.check_invariants().unwrap();
            let total: i64 = p.linking_vector.iter().sum();
            prop_assert_eq!(total, targets.iter().sum::<i64>());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn corrected_bracket_is_markov_invariant(
        b in braid(3, 6),
        g in braid(3, 4),
        colors in prop::collection::vec(0u32..=3, 3),
        positive in any::<bool>(),
        r in prop::sample::select(vec![5i64, 7]),
    ) {
        let g = g.delete_strands(&(0..g.strands()).map(|i| i < b.strands()).collect::<Vec<_>>());
        let root = exact_root(r).unwrap();
        let opts = EngineOptions::for_backend::<CyclotomicElement>();
        let link = closure(&b);
        let coloring: Vec<u32> = colors[..link.component_count()].to_vec();
        let base = colored_bracket(&link, &coloring, &root, &opts).unwrap();
        for m in [conjugate(&b, &g).unwrap(), stabilize(&b, positive)] {
            let new = closure(&m.braid);
            let mut c2 = vec![0; new.component_count()];
            for (old, &nw) in m.component_map.iter().enumerate() {
                c2[nw] = coloring[old];
            }
            prop_assert_eq!(&colored_bracket(&new, &c2, &root, &opts).unwrap(), &base);
        }
    }

    #[test]
    fn tv_is_real_and_nonnegative(b in braid(3, 6), r in prop::sample::select(vec![5i64, 7])) {
        let link = closure(&b);
        prop_assume!(link.component_count() <= 2);
        let exact = tv_link_complement(&link, &exact_root(r).unwrap(), &InvariantOptions::for_backend::<CyclotomicElement>()).unwrap();
        let float = tv_link_complement(&link, &float_root(r).unwrap(), &InvariantOptions::for_backend::<Complex64>()).unwrap();
        prop_assert_eq!(exact.conj(), exact.clone());
        prop_assert!(float.re >= -1e-9 && float.im.abs() < 1e-9 * float.re.abs().max(1.0));
        prop_assert!((exact.embed() - float).norm() <= 1e-6 * float.norm().max(1e-300));
    }

    #[test]
    fn growth_entries_finite_iff_positive(b in braid(3, 5)) {
        let link = closure(&b);
        prop_assume!(link.component_count() <= 2);
        let s = growth_series::<Complex64>(&link, &[5, 7], None, &InvariantOptions::for_backend::<Complex64>()).unwrap();
        for e in &s.entries {
            prop_assert_eq!(e.y.is_some(), e.tv > 0.0);
            if let Some(y) = e.y {
                prop_assert!(y.is_finite());
            }
        }
    }
}
