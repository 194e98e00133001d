use proptest::prelude::*;

use qbecc::ext::ExtField;
use qbecc::field::{Field, Gf2, Gf4};
use qbecc::gf4::F4;
use qbecc::poly::Poly;

fn check_axioms<F: Field>(f: &F, x: u32, y: u32, z: u32) {
    assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
    assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
    assert_eq!(f.add(x, y), f.add(y, x));
    assert_eq!(f.mul(x, y), f.mul(y, x));
    assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
}

#[test]
fn gf4_axioms_exhaustive() {
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                check_axioms(&Gf4, x, y, z);
            }
        }
    }
}

#[test]
fn gf16_axioms_exhaustive() {
    let f = ExtField::build(2).unwrap();
    for x in 0..16 {
        for y in 0..16 {
            for z in 0..16 {
                check_axioms(&f, x, y, z);
            }
        }
        if x != 0 {
            assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
        }
    }
}

#[test]
fn conj_is_a_field_automorphism() {
    for x in F4::ALL {
        for y in F4::ALL {
            assert_eq!((x + y).conj(), x.conj() + y.conj());
            assert_eq!((x * y).conj(), x.conj() * y.conj());
        }
    }
}

#[test]
fn every_default_modulus_is_primitive() {
    for m in 1..=8 {
        let f = ExtField::build(m).unwrap();
        assert_eq!(f.element_order(f.generator()), Some(f.order() as u64 - 1), "m = {m}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn large_field_axioms_sampled(m in 3usize..=8, x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let f = ExtField::build(m).unwrap();
        let q = f.order();
        let (x, y, z) = (x % q, y % q, z % q);
        check_axioms(&f, x, y, z);
        if x != 0 {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
        }
    }
}

fn poly_strategy(q: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0..q, 0..12).prop_map(Poly::from_coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn divmod_round_trip_gf2(a in poly_strategy(2), b in poly_strategy(2)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&b, &Gf2).unwrap();
        prop_assert_eq!(q.mul(&b, &Gf2).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn divmod_round_trip_gf4(a in poly_strategy(4), b in poly_strategy(4)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.divmod(&b, &Gf4).unwrap();
        prop_assert_eq!(q.mul(&b, &Gf4).add(&r), a);
        prop_assert!(r.is_zero() || r.degree() < b.degree());
    }

    #[test]
    fn divmod_round_trip_gf64(a in poly_strategy(64), b in poly_strategy(64)) {
        prop_assume!(!b.is_zero());
        let f = ExtField::build(3).unwrap();
        let (q, r) = a.divmod(&b, &f).unwrap();
        prop_assert_eq!(q.mul(&b, &f).add(&r), a);
    }

    #[test]
    fn grammar_round_trip(a in poly_strategy(4)) {
        prop_assume!(!a.is_zero());
        prop_assert_eq!(Poly::parse(&a.to_grammar()).unwrap(), a);
    }
}

#[test]
fn division_by_zero_is_an_error() {
    assert!(Poly::one().divmod(&Poly::zero(), &Gf4).is_err());
}
