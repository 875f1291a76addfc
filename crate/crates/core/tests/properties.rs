use proptest::prelude::*;

use superquant::json::{operator_from_json, operator_json};
use superquant::rational::rat;
use superquant::{parse_superfn, DiffOp, HalfInt, Mono, Parity, Poly, Rational, SuperFn};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(rational(), 0..=4).prop_map(Poly::from_coeffs)
}

fn superfn() -> impl Strategy<Value = SuperFn> {
    (poly(), poly(), poly(), poly()).prop_map(|(a, b, c, d)| SuperFn::new(a, b, c, d))
}

fn homogeneous() -> impl Strategy<Value = (Parity, SuperFn)> {
    (superfn(), any::<bool>()).prop_map(|(f, odd)| {
        let (even, odd_part) = f.parity_split();
        if odd {
            (Parity::Odd, odd_part)
        } else {
            (Parity::Even, even)
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn supercommutative((pa, a) in homogeneous(), (pb, b) in homogeneous()) {
        prop_assert_eq!(&a * &b, (&b * &a).scale(&pa.sign_with(pb)));
    }

    #[test]
    fn associative_and_distributive(a in superfn(), b in superfn(), c in superfn()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn graded_leibniz((pa, a) in homogeneous(), b in superfn(), i in 1u8..=2) {
        let lhs = (&a * &b).dbar(i);
        let rhs = &(&a.dbar(i) * &b) + &(&a * &b.dbar(i)).scale(&pa.sign());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!((&a * &b).dx(), &(&a.dx() * &b) + &(&a * &b.dx()));
    }

    #[test]
    fn dbar_relations(f in superfn()) {
        prop_assert_eq!(f.dbar(1).dbar(1), -f.dx());
        prop_assert_eq!(f.dbar(2).dbar(2), -f.dx());
        prop_assert!((&f.dbar(2).dbar(1) + &f.dbar(1).dbar(2)).is_zero());
    }

    #[test]
    fn print_parse_round_trip(f in superfn()) {
        prop_assert_eq!(parse_superfn(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn half_int_round_trip(twice in 0u32..200) {
        let h = HalfInt(twice);
        prop_assert_eq!(h.to_string().parse::<HalfInt>().unwrap(), h);
    }

    #[test]
    fn operator_json_round_trip(cs in prop::collection::vec((0u32..4, 0u8..=1, 0u8..=1, superfn()), 0..5), l in rational(), m in rational()) {
        let d = DiffOp::from_terms(l, m, cs.into_iter().map(|(l, m, n, c)| (Mono::new(l, m, n), c)));
        let text = operator_json(&d).to_string();
        let back = operator_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(operator_json(&back).to_string(), text);
        prop_assert_eq!(back, d);
    }
}
