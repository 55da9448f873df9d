mod common;

use proptest::prelude::*;

use floerkit::periodicity::periodicity_test;
use floerkit::poincare::{binom_mod_p, poincare_poly, SpaceSpec};
use floerkit::ring_core::{cyclic_reduce, Characteristic, CyclicPoly, GradedPoly};
use floerkit::spin_gysin::{apply_spin_change, classify_gysin_family, GysinFamily};
use floerkit::quilt::{boundary_sum, solve_delta, QuiltScenarioFile};

fn poly() -> impl Strategy<Value = GradedPoly> {
    prop::collection::vec((-30i64..=30, -9i64..=9), 0..8).prop_map(GradedPoly::from_terms)
}

fn closed_manifolds() -> Vec<SpaceSpec> {
    let mut out = vec![
        SpaceSpec::ExteriorAlgebra { degrees: vec![1, 3, 5] },
        SpaceSpec::ExteriorAlgebra { degrees: vec![3, 7] },
        SpaceSpec::TruncatedPoly { degree: 2, truncation: 5 },
        SpaceSpec::Flag { parts: vec![1, 1, 1] },
        SpaceSpec::Flag { parts: vec![1, 2, 1] },
        SpaceSpec::Flag { parts: vec![2, 3] },
    ];
    out.extend((1..=6).map(|n| SpaceSpec::Torus { n }));
    out.extend((1..=6).flat_map(|n| (0..=n).map(move |k| SpaceSpec::Grassmannian { k, n })));
    for n in 2..=12 {
        for p in [0u64, 2, 3, 5, 7, 11] {
            out.push(SpaceSpec::Psu { n, characteristic: Characteristic::new(p).unwrap() });
        }
    }
    out
}

#[test]
fn closed_manifolds_are_palindromic() {
    for space in closed_manifolds() {
        let p = poincare_poly(&space).unwrap();
        assert_eq!(p.reflect(space.dimension()), p, "{space:?}");
    }
}

#[test]
fn spin_change_is_a_group_action() {
    for family in GysinFamily::ALL {
        let base = family.ledger();
        let rank = base.spin_basis.len();
        let all: Vec<Vec<u8>> = (0..1u32 << rank)
            .map(|b| (0..rank).map(|i| (b >> i & 1) as u8).collect())
            .collect();
        let zero = vec![0u8; rank];
        assert_eq!(apply_spin_change(&base, &zero).unwrap(), base);
        for a in &all {
            let once = apply_spin_change(&base, a).unwrap();
            assert_eq!(apply_spin_change(&once, a).unwrap(), base, "involution {a:?}");
            for b in &all {
                let sum: Vec<u8> = a.iter().zip(b).map(|(x, y)| x ^ y).collect();
                assert_eq!(
                    apply_spin_change(&once, b).unwrap(),
                    apply_spin_change(&base, &sum).unwrap(),
                    "{a:?} + {b:?}"
                );
            }
        }
    }
}

#[test]
fn global_flip_preserves_gysin_primes() {
    for family in GysinFamily::ALL {
        let table = classify_gysin_family(family, false).unwrap();
        let shifted = classify_gysin_family(family, true).unwrap();
        for (a, b) in table.rows.iter().zip(&shifted.rows) {
            let flipped: Vec<_> = a.spin.iter().map(|s| s.flip()).collect();
            let opposite = table.row(&flipped).unwrap();
            assert_eq!(a.admissible, opposite.admissible);
            assert_eq!(a.det.abs(), opposite.det.abs());
            assert_eq!(a.admissible, b.admissible);
        }
    }
}

#[test]
fn global_flip_negates_quilt_target_and_boundary() {
    for family in GysinFamily::ALL {
        let file = QuiltScenarioFile::curated(family);
        let shifted = file.ledger.shifted();
        let forced = vec![0u8; file.ledger.sphere_count()];
        for delta in floerkit::quilt::DELTAS {
            assert_eq!(shifted.signed_count(&forced, delta), -file.ledger.signed_count(&forced, delta));
            let (a, b) = boundary_sum(&file.ledger, &forced, delta);
            assert_eq!(boundary_sum(&shifted, &forced, delta), (-a, -b));
        }
        for target in [-5i64, -3, -1, 1, 3, 5] {
            assert_eq!(
                solve_delta(&file.ledger, target, &forced).unwrap(),
                solve_delta(&shifted, -target, &forced).unwrap()
            );
        }
    }
}

#[test]
fn flag_poincare_is_symmetric_in_parts() {
    let lists: &[&[u32]] = &[&[1, 2, 3], &[2, 2, 1], &[1, 1, 2, 1]];
    for parts in lists {
        let reference = poincare_poly(&SpaceSpec::Flag { parts: parts.to_vec() }).unwrap();
        let mut perm = parts.to_vec();
        perm.reverse();
        assert_eq!(poincare_poly(&SpaceSpec::Flag { parts: perm.clone() }).unwrap(), reference);
        perm.rotate_left(1);
        assert_eq!(poincare_poly(&SpaceSpec::Flag { parts: perm }).unwrap(), reference);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn cyclic_reduce_is_a_ring_homomorphism(p in poly(), q in poly(), n in 1usize..=24) {
        let rp = cyclic_reduce(&p, n).unwrap();
        let rq = cyclic_reduce(&q, n).unwrap();
        prop_assert_eq!(cyclic_reduce(&(&p + &q), n).unwrap(), rp.checked_add(&rq).unwrap());
        prop_assert_eq!(cyclic_reduce(&(&p * &q), n).unwrap(), rp.checked_mul(&rq).unwrap());
        prop_assert_eq!(cyclic_reduce(&GradedPoly::one(), n).unwrap().coeffs()[0].clone(), 1.into());
    }
}

proptest! {
    #[test]
    fn lucas_agrees_with_factorials(n in 0u64..=60, k in 0u64..=61, pi in 0usize..6) {
        let p = [2u64, 3, 5, 7, 11, 13][pi];
        let exact = common::factorial_binomial(n, k) % num_bigint::BigUint::from(p);
        prop_assert_eq!(num_bigint::BigUint::from(binom_mod_p(n, k, p).unwrap()), exact);
    }

    #[test]
    fn periodicity_both_directions(cofactor in prop::collection::vec(-4i64..=4, 1..=6), mult in 1usize..=4) {
        // Build an exactly periodic vector, then perturb one coefficient.
        let q = cofactor.len();
        let n = q * mult;
        let periodic: Vec<i64> = (0..n).map(|i| cofactor[i % q]).collect();
        let p = CyclicPoly::from_ints(&periodic).unwrap();
        let report = periodicity_test(&p, q).unwrap();
        prop_assert!(report.divisible && report.roots_vanish() && report.total_dimension_divisible);
        if mult > 1 {
            let mut broken = periodic.clone();
            broken[q] += 1;
            let report = periodicity_test(&CyclicPoly::from_ints(&broken).unwrap(), q).unwrap();
            prop_assert!(!report.divisible && !report.roots_vanish());
        }
    }
}
