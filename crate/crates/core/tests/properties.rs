//! Randomized property tests: field axioms for the scalar type, bilinearity
//! of algebra multiplication, congruence-diagonalization invariants, JSON
//! round trips, subalgebra closure, and isotropy-witness validity.

use alg::algebra::{Algebra, Element, Law};
use alg::forms::{IsotropyStatus, QuadraticFormData};
use alg::json;
use alg::linalg::coords_in_span;
use alg::osborn;
use alg::sample;
use alg::scalar::{parse_scalar, FieldDesc, Scalar};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fields() -> impl Strategy<Value = FieldDesc> {
    prop_oneof![
        Just(FieldDesc::Rational),
        Just(FieldDesc::prime(3).unwrap()),
        Just(FieldDesc::prime(5).unwrap()),
        Just(FieldDesc::prime(101).unwrap()),
    ]
}

/// A small random quadratic algebra built from its scalar part and
/// imaginary-space data, which is the general shape every quadratic algebra
/// decomposes into.
fn random_quadratic(field: FieldDesc, m: usize, seed: u64) -> Algebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gram = sample::random_gram(field, m, &mut rng);
    let cross = sample::random_anticommutative_cross(field, m, &mut rng);
    osborn::build_from_osborn(field, &gram, &cross).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(field in fields(), a in -50i64..=50, b in -50i64..=50, c in -50i64..=50) {
        let (a, b, c) = (field.from_i64(a), field.from_i64(b), field.from_i64(c));
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * &b, b.clone() * &a);
        prop_assert_eq!(
            a.clone() * &(b.clone() + c.clone()),
            a.clone() * &b + a.clone() * &c
        );
        prop_assert_eq!((a.clone() + b.clone()) - b.clone(), a.clone());
        if !a.is_zero() {
            let inv = a.clone().invert().unwrap();
            prop_assert!((a.clone() * &inv).is_one());
        }
    }

    #[test]
    fn scalar_display_parse_round_trip(field in fields(), n in -999i64..=999, d in 1i64..=99) {
        let s = if field == FieldDesc::Rational {
            field.from_i64(n).div(&field.from_i64(d)).unwrap()
        } else {
            field.from_i64(n)
        };
        let text = s.to_string();
        prop_assert_eq!(parse_scalar(&text, field).unwrap(), s);
    }

    #[test]
    fn multiplication_is_bilinear(field in fields(), seed in 0u64..1000, t in -9i64..=9) {
        let a = random_quadratic(field, 3, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xbeef);
        let x = sample::random_element(field, a.dim, &mut rng);
        let y = sample::random_element(field, a.dim, &mut rng);
        let z = sample::random_element(field, a.dim, &mut rng);
        let t = field.from_i64(t);
        prop_assert_eq!(
            a.multiply(&x.add(&y), &z).unwrap(),
            a.multiply(&x, &z).unwrap().add(&a.multiply(&y, &z).unwrap())
        );
        prop_assert_eq!(
            a.multiply(&z, &x.add(&y)).unwrap(),
            a.multiply(&z, &x).unwrap().add(&a.multiply(&z, &y).unwrap())
        );
        prop_assert_eq!(
            a.multiply(&x.scale(&t), &y).unwrap(),
            a.multiply(&x, &y).unwrap().scale(&t)
        );
        prop_assert_eq!(
            a.multiply(&x, &y.scale(&t)).unwrap(),
            a.multiply(&x, &y).unwrap().scale(&t)
        );
        // the unit really is two-sided
        prop_assert_eq!(a.multiply(&a.one(), &x).unwrap(), x.clone());
        prop_assert_eq!(a.multiply(&x, &a.one()).unwrap(), x);
    }

    #[test]
    fn diagonalization_invariants(field in fields(), m in 1usize..=4, seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gram = sample::random_symmetric_gram(field, m, &mut rng);
        let form = QuadraticFormData::new(field, gram.clone()).unwrap();
        let p = form.diagonalize();
        prop_assert!(p.is_invertible());
        let d = p.transpose().matmul(&gram).matmul(&p);
        for i in 0..m {
            for j in 0..m {
                if i != j {
                    prop_assert!(d[(i, j)].is_zero(), "off-diagonal entry at ({}, {})", i, j);
                }
            }
        }
    }

    #[test]
    fn algebra_json_round_trip(field in fields(), m in 1usize..=3, seed in 0u64..1000) {
        let a = random_quadratic(field, m, seed);
        let doc = json::algebra_to_json(&a);
        let back = json::algebra_from_json(&doc).unwrap();
        prop_assert_eq!(back.field, a.field);
        prop_assert_eq!(&back.mul, &a.mul);
        prop_assert_eq!(&back.unit, &a.unit);
        // serialization itself is deterministic
        prop_assert_eq!(doc.to_string(), json::algebra_to_json(&a).to_string());
    }

    #[test]
    fn subalgebra_closure_is_closed(field in fields(), seed in 0u64..500) {
        let a = random_quadratic(field, 3, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfeed);
        let gens = vec![
            sample::random_element(field, a.dim, &mut rng),
            sample::random_element(field, a.dim, &mut rng),
        ];
        let basis = a.subalgebra_closure(&gens);
        let rows: Vec<Vec<Scalar>> = basis.iter().map(|e| e.coords.clone()).collect();
        // contains the unit and all generators
        prop_assert!(coords_in_span(field, &rows, &a.one().coords).is_some());
        for g in &gens {
            prop_assert!(coords_in_span(field, &rows, &g.coords).is_some());
        }
        // closed under multiplication
        for x in &basis {
            for y in &basis {
                let p = a.multiply(x, y).unwrap();
                prop_assert!(coords_in_span(field, &rows, &p.coords).is_some());
            }
        }
    }

    #[test]
    fn isotropy_witness_is_valid(p in prop_oneof![Just(3u32), Just(5), Just(7)],
                                 m in 1usize..=4, seed in 0u64..1000) {
        let field = FieldDesc::prime(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gram = sample::random_symmetric_gram(field, m, &mut rng);
        let form = QuadraticFormData::new(field, gram).unwrap();
        let verdict = form.isotropy(10);
        // exact over a finite field: never Unknown
        prop_assert_ne!(verdict.status, IsotropyStatus::Unknown);
        match verdict.status {
            IsotropyStatus::Isotropic => {
                let w = verdict.witness.unwrap();
                prop_assert!(w.iter().any(|s| !s.is_zero()));
                prop_assert!(form.eval(&w).is_zero());
            }
            IsotropyStatus::Anisotropic => prop_assert!(verdict.witness.is_none()),
            IsotropyStatus::Unknown => unreachable!(),
        }
    }

    #[test]
    fn decompose_inverts_build(field in fields(), m in 1usize..=3, seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gram = sample::random_gram(field, m, &mut rng);
        let cross = sample::random_anticommutative_cross(field, m, &mut rng);
        let a = osborn::build_from_osborn(field, &gram, &cross).unwrap();
        let d = osborn::decompose(&a).unwrap();
        prop_assert_eq!(&d.gram, &gram);
        prop_assert_eq!(&d.cross, &cross);
        prop_assert_eq!(
            d.flexible_criterion().holds,
            a.check_law(Law::Flexible).holds
        );
    }

    #[test]
    fn element_at_is_lexicographic_and_injective(p in prop_oneof![Just(3u32), Just(5)],
                                                 dim in 1usize..=3) {
        let field = FieldDesc::prime(p).unwrap();
        let total = (p as u64).pow(dim as u32);
        let mut seen: Vec<Element> = Vec::new();
        for idx in 0..total {
            let e = alg::algebra::element_at(field, dim, idx);
            prop_assert_eq!(e.coords.len(), dim);
            prop_assert!(!seen.contains(&e), "duplicate at index {}", idx);
            seen.push(e);
        }
        // matches the iterator order
        let listed: Vec<Element> = alg::algebra::enumerate_elements(field, dim).collect();
        prop_assert_eq!(listed, seen);
    }
}
