//! Random instances shared by the integration tests.
#![allow(dead_code)]

pub mod golden;

use cnlattice::lattice::{GaussianInt, GaussianMatrix, GaussianUnimodular};
use cnlattice::numeric::{conditioning_ratio, operator_norm, vec_norm};
use cnlattice::reallinear::{
    BlockForm, ConjugatePairForm, NormalizedForm, RealLinearMap, Representation, SplitForm,
};
use cnlattice::{Complex, ComplexMatrix, Tolerance};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tol() -> Tolerance {
    Tolerance::default()
}

pub fn complex(rng: &mut TestRng) -> Complex {
    Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn vector(rng: &mut TestRng, n: usize, scale: f64) -> Vec<Complex> {
    (0..n).map(|_| complex(rng) * scale).collect()
}

pub fn matrix(rng: &mut TestRng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex(rng))
}

pub fn real_matrix(rng: &mut TestRng, n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| Complex::new(rng.gen_range(-1.0..1.0), 0.0))
}

/// Random square matrix with `sigma_max / sigma_min <= max_cond`.
pub fn invertible(rng: &mut TestRng, n: usize, max_cond: f64) -> ComplexMatrix {
    loop {
        let a = matrix(rng, n, n);
        let (min, max) = conditioning_ratio(&a, tol());
        if min > 0.0 && max / min <= max_cond {
            return a;
        }
    }
}

/// Gram-Schmidt on a random matrix.
pub fn unitary(rng: &mut TestRng, n: usize) -> ComplexMatrix {
    let a = invertible(rng, n, 1e3);
    let mut cols: Vec<Vec<Complex>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = a.column(j);
        for _ in 0..2 {
            for q in &cols {
                let proj: Complex = q.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= qi * proj;
                }
            }
        }
        let norm = vec_norm(&v);
        cols.push(v.iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// Product of random elementary matrices `I + g e_ij` and unit diagonals of
/// determinant one, kept while every entry has height `<= height`.
pub fn unimodular(rng: &mut TestRng, n: usize, height: i64, steps: usize) -> GaussianUnimodular {
    let mut rows: Vec<Vec<GaussianInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        GaussianInt::ONE
                    } else {
                        GaussianInt::ZERO
                    }
                })
                .collect()
        })
        .collect();
    if n > 1 {
        for _ in 0..steps {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let mut next = rows.clone();
            if rng.gen_bool(0.2) {
                // diag(u, u^-1) on rows i, j
                let u = GaussianInt::UNITS[rng.gen_range(0..4)];
                let inv = u.inverse_unit().expect("unit");
                for k in 0..n {
                    next[i][k] = mul(u, rows[i][k]);
                    next[j][k] = mul(inv, rows[j][k]);
                }
            } else {
                let g = GaussianInt::new(rng.gen_range(-1..=1), rng.gen_range(-1..=1));
                for k in 0..n {
                    next[i][k] = add(rows[i][k], mul(g, rows[j][k]));
                }
            }
            if next.iter().flatten().all(|e| e.height() as i64 <= height) {
                rows = next;
            }
        }
    }
    let entries = rows.into_iter().flatten().collect();
    GaussianUnimodular::new(GaussianMatrix::new(n, entries).unwrap()).unwrap()
}

fn mul(a: GaussianInt, b: GaussianInt) -> GaussianInt {
    GaussianInt::new(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)
}

fn add(a: GaussianInt, b: GaussianInt) -> GaussianInt {
    GaussianInt::new(a.re + b.re, a.im + b.im)
}

/// Random map in the given representation. Split maps have invertible `B`,
/// conjugate-pair and normalized maps have invertible `M` / prefactor.
pub fn real_linear_map(rng: &mut TestRng, kind: Representation, n: usize) -> RealLinearMap {
    match kind {
        Representation::Block => BlockForm::new(
            real_matrix(rng, n),
            real_matrix(rng, n),
            real_matrix(rng, n),
            real_matrix(rng, n),
        )
        .unwrap()
        .into(),
        Representation::Split => {
            let b = loop {
                let b = real_matrix(rng, n);
                let (min, max) = conditioning_ratio(&b, tol());
                if min > 1e-3 * max {
                    break b;
                }
            };
            SplitForm::new(real_matrix(rng, n), b).unwrap().into()
        }
        Representation::ConjugatePair => {
            ConjugatePairForm::new(invertible(rng, n, 1e3), matrix(rng, n, n))
                .unwrap()
                .into()
        }
        Representation::Normalized => {
            NormalizedForm::with_prefactor(invertible(rng, n, 1e3), matrix(rng, n, n))
                .unwrap()
                .into()
        }
    }
}

/// `||K|| = norm` exactly, up to rounding.
pub fn scaled_to_norm(k: ComplexMatrix, norm: f64) -> ComplexMatrix {
    let current = operator_norm(&k, tol());
    k.scale(Complex::new(norm / current, 0.0))
}

/// `M z + conj(N z)` with `N = K M`, so the majorization ratio is `||K||`.
pub fn majorizing_pair(rng: &mut TestRng, n: usize) -> ConjugatePairForm {
    let m = invertible(rng, n, 1e3);
    let k = scaled_to_norm(matrix(rng, n, n), rng.gen_range(0.0..0.999));
    let nn = k.matmul(&m).unwrap();
    ConjugatePairForm::new(m, nn).unwrap()
}

/// Real generator matrix `n x 2n`, reasonably conditioned.
pub fn lattice_generators(rng: &mut TestRng, n: usize) -> ComplexMatrix {
    loop {
        let g = matrix(rng, n, 2 * n);
        let (min, max) = conditioning_ratio(&g.realify(), tol());
        if min > 1e-3 * max {
            return g;
        }
    }
}

/// Relative Frobenius distance of the realifications.
pub fn map_distance(a: &RealLinearMap, b: &RealLinearMap) -> f64 {
    let ra = a.realify();
    (&ra - &b.realify()).frobenius_norm() / ra.frobenius_norm().max(f64::MIN_POSITIVE)
}
