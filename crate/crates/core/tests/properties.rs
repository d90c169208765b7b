//! Module invariants as property tests. Each case draws a seed and builds its
//! instance from a seeded generator, so failures shrink to a reproducible seed.

mod common;

use std::sync::Arc;

use cnlattice::dim1::{is_invertible_1d, Dominance, ScalarForms};
use cnlattice::equivalence::{
    lattice_equivalent, short_vectors, EquivalenceMode, EquivalenceOptions, EquivalenceStatus,
    DEFAULT_BUDGET,
};
use cnlattice::lattice::{same_lattice, LatticeBasis, LatticeComparison};
use cnlattice::numeric::{hermitian_eig, vec_norm};
use cnlattice::polar::{gram, polar};
use cnlattice::reallinear::{BlockForm, RealLinearMap, Representation};
use cnlattice::torus::{reduce, torus_add, torus_eq};
use cnlattice::{Complex, ComplexMatrix, Error};
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

fn kind() -> impl Strategy<Value = Representation> {
    prop::sample::select(Representation::ALL.to_vec())
}

fn max_action_gap(a: &RealLinearMap, b: &RealLinearMap, rng: &mut TestRng) -> f64 {
    let n = a.dim();
    (0..4)
        .map(|_| {
            let z = vector(rng, n, 1.0);
            let wa = a.apply(&z).unwrap();
            let wb = b.apply(&z).unwrap();
            let d: Vec<Complex> = wa.iter().zip(&wb).map(|(x, y)| x - y).collect();
            vec_norm(&d) / (a.realify().frobenius_norm() * vec_norm(&z))
        })
        .fold(0.0, f64::max)
}

/// Integer `2n x 2n` matrix of determinant +-1 from elementary operations.
fn integer_unimodular(rng: &mut TestRng, m: usize, steps: usize) -> Vec<Vec<i64>> {
    let mut w: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..steps {
        let i = rng.gen_range(0..m);
        let j = rng.gen_range(0..m);
        if i == j {
            for row in &mut w {
                row[i] = -row[i];
            }
        } else {
            let c = rng.gen_range(-1..=1);
            for row in &mut w {
                row[i] += c * row[j];
            }
        }
    }
    w
}

fn times_integer(g: &ComplexMatrix, w: &[Vec<i64>]) -> ComplexMatrix {
    let m = w.len();
    ComplexMatrix::from_fn(g.rows(), m, |i, j| {
        (0..m).map(|k| g[(i, k)] * w[k][j] as f64).sum()
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn conversions_preserve_the_map(seed in any::<u64>(), n in 1usize..=4, from in kind(), to in kind()) {
        let mut rng = rng(seed);
        let map = real_linear_map(&mut rng, from, n);
        match map.convert(to, tol()) {
            Ok(converted) => {
                prop_assert_eq!(converted.kind(), to);
                prop_assert!(max_action_gap(&map, &converted, &mut rng) < 1e-9);
                let back = converted.convert(from, tol()).unwrap();
                prop_assert!(max_action_gap(&map, &back, &mut rng) < 1e-9);
                prop_assert!(map_distance(&map, &back) < 1e-9);
            }
            Err(Error::NotInSplitClass { .. }) => prop_assert_eq!(to, Representation::Split),
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn split_class_is_e1_identity_and_e3_zero(seed in any::<u64>(), n in 1usize..=4, split in any::<bool>()) {
        let mut rng = rng(seed);
        let (e1, e3) = if split {
            (ComplexMatrix::identity(n), ComplexMatrix::zeros(n, n))
        } else {
            (real_matrix(&mut rng, n), real_matrix(&mut rng, n))
        };
        let map: RealLinearMap = BlockForm::new(e1, real_matrix(&mut rng, n), e3, real_matrix(&mut rng, n))
            .unwrap()
            .into();
        prop_assert_eq!(map.convert(Representation::Split, tol()).is_ok(), split);
    }

    #[test]
    fn polar_factors_and_gram_invariance(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = rng(seed);
        let a = invertible(&mut rng, n, 1e4);
        let (u, p) = polar(&a, tol()).unwrap();
        let id = ComplexMatrix::identity(n);
        prop_assert!((&a - &(&u * p.matrix())).frobenius_norm() <= 1e-10 * a.frobenius_norm());
        prop_assert!((&(&u.adjoint() * &u) - &id).frobenius_norm() <= 1e-10);
        prop_assert!(hermitian_eig(&p.matrix().hermitian_part(), tol()).unwrap().values[0] > 0.0);

        let t = unitary(&mut rng, n);
        let g1 = gram(&a, tol()).unwrap();
        let g2 = gram(&(&t * &a), tol()).unwrap();
        prop_assert!((g1.matrix() - g2.matrix()).frobenius_norm() <= 1e-10 * g1.matrix().frobenius_norm());
    }

    #[test]
    fn same_lattice_under_integer_change_of_basis(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = rng(seed);
        let g = lattice_generators(&mut rng, n);
        let w = integer_unimodular(&mut rng, 2 * n, 6);
        let l1 = LatticeBasis::from_generators(g.clone(), tol()).unwrap();
        let l2 = LatticeBasis::from_generators(times_integer(&g, &w), tol()).unwrap();
        match same_lattice(&l1, &l2, tol()).unwrap() {
            LatticeComparison::Same { witness } => {
                // the witness reproduces the second basis from the first
                let rebuilt = times_integer(&g, &witness);
                prop_assert!((&rebuilt - l2.generators()).frobenius_norm() <= 1e-8 * g.frobenius_norm());
            }
            other => prop_assert!(false, "expected Same, got {other:?}"),
        }
        let doubled = LatticeBasis::from_generators(g.scale(Complex::new(2.0, 0.0)), tol()).unwrap();
        prop_assert!(!same_lattice(&l1, &doubled, tol()).unwrap().is_same());
    }

    #[test]
    fn short_vectors_are_unitarily_invariant(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = rng(seed);
        let a = invertible(&mut rng, n, 10.0);
        let t = unitary(&mut rng, n);
        let radius = 6.0;
        let s1 = short_vectors(&a, radius, DEFAULT_BUDGET).unwrap();
        let s2 = short_vectors(&(&t * &a), radius, DEFAULT_BUDGET).unwrap();
        // norms right at the radius may fall either way
        let inner = |v: &[f64]| -> Vec<f64> { v.iter().copied().filter(|&x| x < radius * (1.0 - 1e-6)).collect() };
        let (v1, v2) = (inner(&s1.norms), inner(&s2.norms));
        prop_assert_eq!(v1.len(), v2.len());
        for (x, y) in v1.iter().zip(&v2) {
            prop_assert!((x - y).abs() <= 1e-9 * radius);
        }
        prop_assert!(s1.norms.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn equivalence_is_unitary_and_sigma_invariant(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = rng(seed);
        let a = invertible(&mut rng, n, 50.0);
        let t = unitary(&mut rng, n);
        let options = EquivalenceOptions { height: 1, ..EquivalenceOptions::default() };
        let v = lattice_equivalent(&a, &(&t * &a), EquivalenceMode::Unitary, options).unwrap();
        prop_assert_eq!(v.status, EquivalenceStatus::Equivalent);

        let b = unimodular(&mut rng, n, 2, 6);
        let ab = &a * &b.to_complex();
        let v = lattice_equivalent(&a, &ab, EquivalenceMode::Unitary, EquivalenceOptions::default()).unwrap();
        prop_assert_eq!(v.status, EquivalenceStatus::Equivalent);
        let check = v.witness.unwrap().verify(&a, &ab).unwrap();
        prop_assert!(check.relative_residual <= 1e-8 && check.unitarity_defect <= 1e-9);
        prop_assert_eq!(check.det_b, (1, 0));
    }

    /// For n = 1, `a Z[i]` and `b Z[i]` differ by a unitary exactly when `|a| = |b|`.
    #[test]
    fn refuters_are_sound_in_dimension_one(seed in any::<u64>(), same in any::<bool>()) {
        let mut rng = rng(seed);
        let a = complex(&mut rng) + Complex::new(0.1, 0.0);
        let phase = Complex::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let scale = if same { 1.0 } else { rng.gen_range(1.05..2.0) };
        let b = a * phase * scale;
        let options = EquivalenceOptions { height: 3, ..EquivalenceOptions::default() };
        let m = |x: Complex| ComplexMatrix::from_rows(&[vec![x]]).unwrap();
        let v = lattice_equivalent(&m(a), &m(b), EquivalenceMode::Unitary, options).unwrap();
        if same {
            prop_assert_eq!(v.status, EquivalenceStatus::Equivalent);
        } else {
            prop_assert_ne!(v.status, EquivalenceStatus::Equivalent);
        }
    }

    #[test]
    fn torus_addition_agrees_across_bases(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = rng(seed);
        let g = lattice_generators(&mut rng, n);
        let w = integer_unimodular(&mut rng, 2 * n, 4);
        let l1 = Arc::new(LatticeBasis::from_generators(g.clone(), tol()).unwrap());
        let l2 = Arc::new(LatticeBasis::from_generators(times_integer(&g, &w), tol()).unwrap());
        let (z1, z2) = (vector(&mut rng, n, 2.0), vector(&mut rng, n, 2.0));
        let p = reduce(&l1, &z1, tol()).unwrap();
        let q_same = reduce(&l1, &z2, tol()).unwrap();
        let q_other = reduce(&l2, &z2, tol()).unwrap();
        prop_assert!(torus_eq(&q_same, &q_other, tol()).unwrap());
        let s1 = torus_add(&p, &q_same, tol()).unwrap();
        let s2 = torus_add(&p, &q_other, tol()).unwrap();
        prop_assert!(torus_eq(&s1, &s2, tol()).unwrap());
        let sum: Vec<Complex> = z1.iter().zip(&z2).map(|(a, b)| a + b).collect();
        prop_assert!(torus_eq(&s1, &reduce(&l1, &sum, tol()).unwrap(), tol()).unwrap());
        prop_assert!(s1.coords().iter().all(|&c| (0.0..1.0).contains(&c)));
    }

    #[test]
    fn scalar_trichotomy(re_a in -2.0f64..2.0, im_a in -2.0f64..2.0, re_b in -2.0f64..2.0, im_b in -2.0f64..2.0) {
        let f = ScalarForms::from_ab(Complex::new(re_a, im_a), Complex::new(re_b, im_b));
        let class = f.classify(tol());
        prop_assert_eq!(is_invertible_1d(&f, tol()), class != Dominance::Singular);
        match class {
            Dominance::Holomorphic => prop_assert!(f.thetamu.is_some()),
            Dominance::Antiholomorphic => prop_assert!(f.thetamu.is_none()),
            Dominance::Singular => {}
        }
        let back = ScalarForms::from_alpha_beta(f.alpha, f.beta);
        prop_assert!((back.a - f.a).norm() <= 1e-15 * (1.0 + f.a.norm()) * 4.0);
        prop_assert!((back.b - f.b).norm() <= 1e-15 * (1.0 + f.b.norm()) * 4.0);
    }
}
