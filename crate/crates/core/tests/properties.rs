use daggerlab::axioms::{complement_h3, strict_sqrt_c};
use daggerlab::biproduct::{derived_add, oplus_mor, verify_injections};
use daggerlab::matcat::Morphism;
use daggerlab::random;
use daggerlab::scalar::{FieldTag, Scalar, Tolerance};
use proptest::prelude::*;

fn field() -> impl Strategy<Value = FieldTag> {
    prop::sample::select(FieldTag::ALL.to_vec())
}

fn scalar_from(field: FieldTag, c: [f64; 4]) -> Scalar {
    Scalar::new(field, &c[..field.width()]).unwrap()
}

fn comp() -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-10.0f64..10.0)
}

fn morphism(field: FieldTag, dom: usize, cod: usize, seed: u64) -> Morphism {
    random::morphism(
        field,
        dom,
        cod,
        &mut random::rng(seed, "prop", (dom * 16 + cod) as u64),
    )
}

fn close(a: &Morphism, b: &Morphism, scale: f64) -> bool {
    a.frobenius_distance(b).unwrap() <= 1e-9 * (1.0 + scale)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_reverses_products(f in field(), a in comp(), b in comp()) {
        let (x, y) = (scalar_from(f, a), scalar_from(f, b));
        let lhs = (x * y).conj();
        let rhs = y.conj() * x.conj();
        prop_assert!(lhs.distance(&rhs) <= 1e-9 * (1.0 + x.norm() * y.norm()));
        prop_assert!(x.conj().conj().distance(&x) == 0.0);
    }

    #[test]
    fn inverse_is_two_sided(f in field(), a in comp()) {
        let x = scalar_from(f, a);
        prop_assume!(x.norm() > 1e-3);
        let inv = x.inv(&Tolerance::default()).unwrap();
        let one = Scalar::one(f);
        prop_assert!((x * inv).distance(&one) <= 1e-9);
        prop_assert!((inv * x).distance(&one) <= 1e-9);
    }

    #[test]
    fn dagger_is_an_involutive_contravariant_functor(
        f in field(), a in 0usize..6, b in 0usize..6, c in 0usize..6, seed in any::<u64>()
    ) {
        let g = morphism(f, a, b, seed);
        let h = morphism(f, b, c, seed);
        prop_assert_eq!(g.dagger().dagger(), g.clone());
        let lhs = h.compose(&g).unwrap().dagger();
        let rhs = g.dagger().compose(&h.dagger()).unwrap();
        prop_assert!(close(&lhs, &rhs, g.frobenius_norm() * h.frobenius_norm()));
        prop_assert_eq!(Morphism::identity(f, a).dagger(), Morphism::identity(f, a));
    }

    #[test]
    fn derived_addition_is_entrywise(
        f in field(), a in 0usize..9, b in 0usize..9, seed in any::<u64>()
    ) {
        let g = morphism(f, a, b, seed);
        let h = morphism(f, a, b, seed.wrapping_add(1));
        let sum = derived_add(&g, &h).unwrap();
        for i in 0..b {
            for j in 0..a {
                let expected: Vec<f64> = g.get(i, j).components().iter()
                    .zip(h.get(i, j).components())
                    .map(|(x, y)| x + y)
                    .collect();
                let got = sum.get(i, j);
                for (x, y) in got.components().iter().zip(&expected) {
                    prop_assert!((x - y).abs() <= 1e-12);
                }
            }
        }
        prop_assert!(close(&sum, &derived_add(&h, &g).unwrap(), 0.0));
        prop_assert!(close(&derived_add(&g, &Morphism::zero(f, a, b)).unwrap(), &g, 0.0));
    }

    #[test]
    fn composition_distributes_over_addition(
        f in field(), a in 1usize..5, b in 1usize..5, c in 1usize..5, seed in any::<u64>()
    ) {
        let g1 = morphism(f, a, b, seed);
        let g2 = morphism(f, a, b, seed.wrapping_add(7));
        let h = morphism(f, b, c, seed.wrapping_add(3));
        let lhs = h.compose(&derived_add(&g1, &g2).unwrap()).unwrap();
        let rhs = derived_add(&h.compose(&g1).unwrap(), &h.compose(&g2).unwrap()).unwrap();
        prop_assert!(close(&lhs, &rhs, h.frobenius_norm() * (g1.frobenius_norm() + g2.frobenius_norm())));
    }

    #[test]
    fn oplus_commutes_with_dagger(f in field(), a in 0usize..5, b in 0usize..5, seed in any::<u64>()) {
        let g = morphism(f, a, b, seed);
        let h = morphism(f, b, a, seed.wrapping_add(5));
        prop_assert_eq!(oplus_mor(&g, &h).unwrap().dagger(), oplus_mor(&g.dagger(), &h.dagger()).unwrap());
    }

    #[test]
    fn complement_completes_a_biproduct(f in field(), x in 0usize..9, frac in 0.0f64..=1.0, seed in any::<u64>()) {
        let a = ((x as f64) * frac).round() as usize;
        let mut rng = random::rng(seed, "prop-complement", 0);
        let m = random::dagger_mono(f, a, x, &mut rng);
        let g = complement_h3(&m, &Tolerance::default()).unwrap();
        prop_assert_eq!(g.dom().dim() + a, x);
        prop_assert!(verify_injections(&m, &g).unwrap().max() <= 1e-8);
    }

    #[test]
    fn strict_root_squares_to_u(n in 1usize..7, seed in any::<u64>()) {
        let mut rng = random::rng(seed, "prop-sqrt", 0);
        let u = random::unitary(FieldTag::Complex, n, &mut rng);
        let cert = strict_sqrt_c(&u, &Tolerance::default()).unwrap();
        let square = cert.root.compose(&cert.root).unwrap();
        prop_assert!(square.frobenius_distance(&u).unwrap() <= 1e-8);
        prop_assert!(cert.root.dagger_iso_residual() <= 1e-8);
        prop_assert!(cert.polynomial_residual <= 1e-7);
    }
}
