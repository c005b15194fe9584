use heptile::cyclo::{Cyclo, CycloInt, RigidMotion};
use heptile::matrix::{build_matrix, inflation_factor_sq, perron_identity_holds, tile_count, CoronacciState, Seed};
use heptile::{Phi, PhiF64};
use proptest::prelude::*;

fn phi_num() -> impl Strategy<Value = Phi> {
    (-50i64..50, -50i64..50, -50i64..50).prop_map(|(p, q, r)| Phi::int(p, q, r))
}

fn cyclo() -> impl Strategy<Value = CycloInt> {
    prop::array::uniform12(-20i64..20).prop_map(Cyclo::from_coeffs)
}

fn seed() -> impl Strategy<Value = Seed> {
    (0i64..40, 0i64..40, 0i64..40)
        .prop_filter("nonzero", |&(a, b, c)| a + b + c > 0)
        .prop_map(|(a, b, c)| Seed::new(a, b, c).unwrap())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #[test]
    fn field_axioms(a in phi_num(), b in phi_num(), c in phi_num()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Phi::one());
        }
    }

    #[test]
    fn embedding_is_a_homomorphism(a in phi_num(), b in phi_num()) {
        let (x, y): (f64, f64) = (a.embed(), b.embed());
        prop_assert!(close((&a * &b).embed(), x * y));
        prop_assert!(close((&a + &b).embed(), x + y));
    }

    #[test]
    fn exact_sign_agrees_with_embedding(a in phi_num()) {
        let v: f64 = a.embed();
        if v.abs() > 1e-9 {
            prop_assert_eq!(a.signum(), v.partial_cmp(&0.0).unwrap());
        }
    }

    #[test]
    fn text_form_round_trips(a in phi_num()) {
        prop_assert_eq!(a.to_string().parse::<Phi>().unwrap(), a);
    }

    #[test]
    fn float_field_tracks_exact(p in -5.0f64..5.0, q in -5.0f64..5.0, r in -5.0f64..5.0) {
        let x = PhiF64::new(p, q, r);
        let sq: f64 = x.square().embed();
        let e: f64 = x.embed();
        prop_assert!(close(sq, e * e));
    }

    #[test]
    fn cyclo_product_matches_complex(a in cyclo(), b in cyclo()) {
        let (ax, ay) = a.embed2d::<f64>();
        let (bx, by) = b.embed2d::<f64>();
        let (px, py) = a.checked_mul(&b).unwrap().embed2d::<f64>();
        prop_assert!((px - (ax * bx - ay * by)).abs() < 1e-7);
        prop_assert!((py - (ax * by + ay * bx)).abs() < 1e-7);
    }

    #[test]
    fn motions_invert(rot in 0i64..28, refl: bool, s in cyclo(), z in cyclo()) {
        let m = RigidMotion::new(rot, refl, s);
        let back = m.inverse().unwrap().apply(&m.apply(&z).unwrap()).unwrap();
        prop_assert_eq!(back, z);
    }

    #[test]
    fn perron_identity_for_random_seeds(s in seed()) {
        prop_assert!(perron_identity_holds(s).unwrap());
        let m = build_matrix(s);
        prop_assert!(m.shifted_det(&inflation_factor_sq(s).unwrap()).is_zero());
    }

    #[test]
    fn matrices_are_symmetric_and_counted(s in seed()) {
        let m = build_matrix(s);
        prop_assert!(m.is_symmetric());
        prop_assert!(m.power(3).unwrap().is_symmetric());
        prop_assert_eq!(m.total().unwrap(), tile_count(s));
        prop_assert_eq!(tile_count(s), 3 * s.a + 5 * s.b + 6 * s.c);
    }

    #[test]
    fn matrix_product_of_seeds_is_closed(s in seed(), t in seed()) {
        // The generator algebra is commutative, so products of seed
        // matrices are again seed matrices.
        let st = build_matrix(s).checked_mul(&build_matrix(t)).unwrap();
        let row = *st.row(heptile::TileType::A);
        let u = Seed::new(row[0], row[1], row[2]).unwrap();
        prop_assert_eq!(build_matrix(u), st);
        prop_assert_eq!(inflation_factor_sq(u).unwrap(), &inflation_factor_sq(s).unwrap() * &inflation_factor_sq(t).unwrap());
    }

    #[test]
    fn coronacci_ratio_tends_to_phi(s in seed()) {
        let mut st = CoronacciState::from_seed(s).unwrap();
        for _ in 0..80 {
            st = st.step();
        }
        let phi = 2.0 * (std::f64::consts::PI / 7.0).cos();
        prop_assert!((st.ratio().unwrap() - phi).abs() < 1e-6);
    }
}
