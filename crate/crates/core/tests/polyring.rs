use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use dlchow::permgroup::poincare_polynomial;
use dlchow::polyring::{Exponents, LaurentPoly, MultiPoly, PolyError, QPoly, Substitution, Var};

const N: usize = 2;

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u16..3, 2 * N + 1), -4i64..5), 0..6).prop_map(|terms| {
        let mut p = MultiPoly::zero(N);
        for (e, c) in terms {
            p.add_term(Exponents::from_vec(e), rat(c));
        }
        p
    })
}

fn qpoly_strategy() -> impl Strategy<Value = QPoly> {
    prop::collection::vec((0i64..5, -3i64..4, 1i64..3), 0..5).prop_map(|terms| {
        QPoly::from_terms(terms.into_iter().map(|(e, a, b)| (e, BigRational::new(a.into(), b.into()))))
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &MultiPoly::one(N), a.clone());
    }

    #[test]
    fn substitution_composes(f in poly_strategy(), g in poly_strategy(), h in poly_strategy()) {
        let first = Substitution::identity(N).set(Var::X(1), g).unwrap().set(Var::Q, MultiPoly::y(N, 2)).unwrap();
        let second = Substitution::identity(N).set(Var::Y(2), h).unwrap().set(Var::X(2), MultiPoly::x(N, 1)).unwrap();
        let both = second.after(&first).unwrap();
        prop_assert_eq!(f.substitute(&first).unwrap().substitute(&second).unwrap(), f.substitute(&both).unwrap());
    }

    #[test]
    fn render_parse_round_trip(f in poly_strategy()) {
        prop_assert_eq!(MultiPoly::parse(&f.to_string(), N).unwrap(), f);
    }

    #[test]
    fn division_with_remainder(a in qpoly_strategy(), b in qpoly_strategy()) {
        prop_assume!(!b.is_zero());
        let (quot, rem) = a.div_rem(&b).unwrap();
        prop_assert_eq!(&(&quot * &b) + &rem, a.clone());
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in qpoly_strategy(), b in qpoly_strategy(), v in -5i64..6) {
        let v = rat(v);
        let lhs = (&a * &b).eval(&v).unwrap();
        prop_assert_eq!(lhs, a.eval(&v).unwrap() * b.eval(&v).unwrap());
    }
}

#[test]
fn poincare_polynomial_of_s10_at_ten() {
    // Π_{k=1}^{10} (1 + q + .. + q^{k-1}) at q = 10 is Π_k repunit(k)
    let p = poincare_polynomial(10);
    let mut expected = BigInt::one();
    let mut repunit = BigInt::zero();
    for _ in 0..10 {
        repunit = repunit * 10 + 1;
        expected *= &repunit;
    }
    assert_eq!(p.eval(&rat(10)).unwrap(), BigRational::from_integer(expected));
    assert_eq!(p.degree(), Some(45));
}

#[test]
fn laurent_inverse_powers() {
    let p = LaurentPoly::parse("x^-1 - 1", "x").unwrap();
    assert_eq!(p.low_degree(), Some(-1));
    assert!(!p.is_polynomial());
    assert_eq!(p.shift(1).render("x"), "-x+1");
}

#[test]
fn errors_are_reported() {
    assert!(matches!(MultiPoly::parse("x3", 2), Err(PolyError::UnknownVariable(_)) | Err(PolyError::Parse(_))));
    assert!(matches!(MultiPoly::parse("x1 +", 2), Err(PolyError::Parse(_))));
    let a = MultiPoly::x(2, 1);
    let b = MultiPoly::x(3, 1);
    assert_eq!(a.try_add(&b), Err(PolyError::ShapeMismatch { left: 2, right: 3 }));
    assert!(QPoly::one().div_rem(&QPoly::zero()).is_err());
    assert!(QPoly::var().div_exact(&QPoly::parse("q+1", "q").unwrap()).is_err());
}
