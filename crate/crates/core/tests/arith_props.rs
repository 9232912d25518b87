use proptest::prelude::*;
use vermacas::arith::series::taylor_in_param;
use vermacas::arith::{Field, Poly, Qhbar, RatFunc, Scalar, Xi};
use vermacas::rat;

type R = RatFunc<Scalar, Xi>;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_len: usize) -> impl Strategy<Value = Poly<Scalar, Xi>> {
    prop::collection::vec(scalar(), 0..=max_len).prop_map(Poly::from_coeffs)
}

fn ratfunc() -> impl Strategy<Value = R> {
    (poly(3), poly(3)).prop_filter_map("nonzero denominator", |(n, d)| RatFunc::new(n, d).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        if let Some(inv) = a.inv() {
            prop_assert!(a.mul(&inv).is_one());
        }
    }

    #[test]
    fn reduced_form_is_canonical(a in ratfunc(), k in poly(2)) {
        prop_assume!(!k.is_zero());
        let scaled = RatFunc::new(a.num().mul(&k), a.den().mul(&k)).unwrap();
        prop_assert_eq!(&scaled, &a);
        prop_assert!(a.den().leading().unwrap().is_one());
        prop_assert!(a.num().gcd(a.den()).degree() == Some(0));
    }

    #[test]
    fn shift_is_invertible(a in ratfunc(), c in scalar()) {
        prop_assert_eq!(a.shift(&c).shift(&c.neg()), a);
    }

    #[test]
    fn json_round_trip(a in ratfunc()) {
        prop_assert_eq!(R::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), x in scalar()) {
        if let (Ok(va), Ok(vb)) = (a.eval(&x), b.eval(&x)) {
            if let Ok(vab) = a.mul(&b).eval(&x) {
                prop_assert_eq!(vab, va.mul(&vb));
            }
            if let Ok(s) = a.add(&b).eval(&x) {
                prop_assert_eq!(s, va.add(&vb));
            }
        }
    }

    #[test]
    fn division_with_remainder(a in poly(5), b in poly(3)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn taylor_series_multiplies(a in poly(2), b in poly(2), c in 1i64..4) {
        // f = a(ξ) + ħ·b(ξ) over (1 − cħ) has coefficients a, b + ca, c(b + ca), …
        let lift = |p: &Poly<Scalar, Xi>| p.map(|x| Qhbar::constant(x.clone()));
        let hbar = Qhbar::var();
        let num = lift(&a).add(&lift(&b).scale(&hbar));
        let den = Poly::constant(Qhbar::one().sub(&hbar.scale(&rat(c, 1))));
        let f = RatFunc::new(num, den).unwrap();
        prop_assume!(!f.is_zero());
        let coeffs = taylor_in_param(&f, 3).unwrap();
        let ca = a.scale(&rat(c, 1));
        prop_assert_eq!(&coeffs[0], &RatFunc::from_poly(a.clone()));
        prop_assert_eq!(&coeffs[1], &RatFunc::from_poly(b.add(&ca)));
        prop_assert_eq!(&coeffs[2], &RatFunc::from_poly(b.add(&ca).scale(&rat(c, 1))));
    }
}
