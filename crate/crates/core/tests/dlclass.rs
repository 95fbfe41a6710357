use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use dlchow::dlclass::{
    admissible_pairs, class_via_divided_diff, class_x, class_y_ss, class_y_unip, components_x, components_y_ss,
    equality_classes, equality_classes_streaming, fixed_point_poincare, transition_matrix, ClassKind, ClassReport,
    ComputationPath, Explanation,
};
use dlchow::permgroup::{all_elements, apply_twist, coset_data, poincare_polynomial, Permutation, Twist};
use dlchow::polyring::{LaurentPoly, QPoly};
use dlchow::schubert::{Basis, FlagRing, SchubertVector};

const TWISTS: [Twist; 2] = [Twist::Trivial, Twist::ConjByW0];

fn perm(s: &str, n: usize) -> Permutation {
    Permutation::parse(s, n).unwrap()
}

fn to_qpoly(p: &LaurentPoly) -> QPoly {
    p.to_rational()
}

#[test]
fn classes_are_homogeneous_and_positive() {
    for n in 1..=5 {
        let ring = FlagRing::new(n).unwrap();
        for w in all_elements(n) {
            for twist in TWISTS {
                let v = class_x(&ring, &w, twist).unwrap();
                assert_eq!(v.basis, Basis::Cycle);
                assert!(v.entries().all(|(a, _)| a.length() == w.length()), "{w}");
                assert!(v.has_integer_coefficients() && v.is_nonnegative(), "{w}: {v}");
            }
            let ss = class_y_ss(&ring, &w).unwrap();
            assert!(ss.is_constant() && ss.has_integer_coefficients() && ss.is_nonnegative());
            let unip = class_y_unip(&ring, &w).unwrap();
            assert!(unip.is_constant() && unip.is_nonnegative());
        }
    }
}

#[test]
fn pair_count_matches_length_budget() {
    for n in 1..=4 {
        for w in all_elements(n) {
            for twist in TWISTS {
                let pairs = admissible_pairs(&w, twist);
                let w0 = Permutation::longest(n);
                for (u, v) in &pairs {
                    assert_eq!(&(&(u * &w) * &apply_twist(twist, v).inverse()), &w0);
                    assert_eq!(u.length() + v.length(), w0.length() - w.length());
                }
            }
        }
    }
}

#[test]
fn identity_class_counts_fixed_points() {
    for n in 1..=5 {
        let ring = FlagRing::new(n).unwrap();
        let id = Permutation::identity(n);
        for twist in TWISTS {
            let expected = SchubertVector::from_entries(
                n,
                Basis::Cycle,
                [(id.clone(), to_qpoly(&fixed_point_poincare(n, twist)))],
            );
            assert_eq!(class_x(&ring, &id, twist).unwrap(), expected);
        }
        assert_eq!(fixed_point_poincare(n, Twist::Trivial), poincare_polynomial(n));
    }
}

#[test]
fn classes_at_q_zero_are_inverse_schubert_cycles() {
    for n in 1..=5 {
        let ring = FlagRing::new(n).unwrap();
        for w in all_elements(n) {
            for twist in TWISTS {
                let at_zero = class_x(&ring, &w, twist).unwrap().eval_q(&BigRational::zero());
                let expected = SchubertVector::from_entries(n, Basis::Cycle, [(w.inverse(), QPoly::one())]);
                assert_eq!(at_zero, expected, "{w} {twist}");
            }
        }
    }
}

#[test]
fn semisimple_classes_respect_the_proven_symmetries() {
    for n in 2..=5 {
        let ring = FlagRing::new(n).unwrap();
        let elements: Vec<Permutation> = all_elements(n).collect();
        for w in &elements {
            assert_eq!(class_y_ss(&ring, w).unwrap(), class_y_ss(&ring, &w.inverse()).unwrap(), "{w}");
        }
        for a in &elements {
            for b in &elements {
                let ab = a * b;
                if a.support().is_disjoint(&b.support()) && a.length() + b.length() == ab.length() {
                    assert_eq!(class_y_ss(&ring, &ab).unwrap(), class_y_ss(&ring, &(b * a)).unwrap(), "{a} * {b}");
                }
            }
        }
    }
}

#[test]
fn divided_difference_path_agrees_up_to_rank_four() {
    for n in 1..=4 {
        let ring = FlagRing::new(n).unwrap();
        for w in all_elements(n) {
            for twist in TWISTS {
                assert_eq!(class_x(&ring, &w, twist).unwrap(), class_via_divided_diff(&w, twist).unwrap(), "{w}");
            }
        }
    }
}

#[test]
fn component_counts() {
    let one = BigRational::one();
    for n in 1..=5 {
        for w in all_elements(n) {
            let count = components_y_ss(&w);
            assert_eq!(
                components_x(&w, Twist::Trivial).to_rational().eval(&one).unwrap(),
                BigRational::from_integer(BigInt::from(count))
            );
            for twist in TWISTS {
                let closure = dlchow::permgroup::twisted_support_closure(twist, &w);
                assert_eq!(components_x(&w, twist), coset_data(&closure, n).unwrap().poincare);
            }
        }
    }
    assert_eq!(components_x(&perm("s1", 4), Twist::ConjByW0).render("q"), "q^4+q^3+2*q^2+q+1");
    assert_eq!(components_y_ss(&perm("s1 s3", 4)), 6);
    assert!(components_x(&Permutation::longest(4), Twist::ConjByW0).is_one());
}

#[test]
fn transition_determinants() {
    for n in 2..=4 {
        let ring = FlagRing::new(n).unwrap();
        for twist in TWISTS {
            let t = transition_matrix(&ring, twist).unwrap();
            assert_eq!(t.size() as u64, dlchow::permgroup::factorial(n));
            assert!(t.factorization.is_complete(), "n={n} {twist}: {}", t.factorization);
            assert!(t.factorization.unit.abs().is_one());
            assert!(!t.det.is_zero());
            assert_eq!(t.det.coeff(0).abs(), BigRational::one());
        }
    }
}

#[test]
fn equality_groups_are_consistent() {
    let ring = FlagRing::new(5).unwrap();
    let mut streamed = Vec::new();
    let groups = equality_classes_streaming(&ring, |g| streamed.push(g.clone())).unwrap();
    assert_eq!(streamed, groups);
    for g in &groups {
        assert!(g.members.len() >= 2);
        let first = class_y_ss(&ring, &g.members[0]).unwrap();
        for w in &g.members[1..] {
            assert_eq!(class_y_ss(&ring, w).unwrap(), first);
        }
        assert_ne!(g.explanation, Explanation::Exceptional);
    }
    let lengths: Vec<usize> = groups.iter().map(|g| g.members[0].length()).collect();
    assert!(lengths.windows(2).all(|p| p[0] <= p[1]));
    assert!(groups.iter().any(|g| g.explanation == Explanation::Mixed));
    assert!(equality_classes(&FlagRing::new(2).unwrap()).unwrap().is_empty());
    for tag in ["inverse", "disjoint-support", "mixed", "exceptional"] {
        assert_eq!(tag.parse::<Explanation>().unwrap().to_string(), tag);
    }
}

#[test]
fn rank_mismatch_is_an_error() {
    let ring = FlagRing::new(3).unwrap();
    assert!(class_x(&ring, &Permutation::identity(4), Twist::Trivial).is_err());
}

fn report_strategy() -> impl Strategy<Value = (usize, usize, usize, usize, bool)> {
    (1usize..=4)
        .prop_flat_map(|n| (Just(n), 0..dlchow::permgroup::factorial(n) as usize, 0usize..3, 0usize..2, any::<bool>()))
}

proptest! {
    #[test]
    fn reports_round_trip_through_json((n, idx, kind, twist, dd) in report_strategy()) {
        let ring = FlagRing::new(n).unwrap();
        let w = Permutation::from_rank_index(n, idx);
        let kind = [ClassKind::DLFrobenius, ClassKind::RegSemisimple, ClassKind::RegUnipotent][kind];
        let path = if dd { ComputationPath::DividedDifference } else { ComputationPath::PairEnumeration };
        let report = ClassReport::compute(&ring, &w, TWISTS[twist], kind, path).unwrap();
        let text = serde_json::to_string(&report.to_json()).unwrap();
        let back = ClassReport::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &report);
        let other = ClassReport::compute(&ring, &w, TWISTS[twist], kind, ComputationPath::PairEnumeration).unwrap();
        prop_assert_eq!(&other.vector, &report.vector);
    }
}
