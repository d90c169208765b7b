//! Dense complex linear algebra for the small matrices (n <= 16) used by the
//! rest of the crate: products, adjoints, pivoted elimination, a cyclic
//! Jacobi eigensolver for Hermitian matrices and singular values built on it.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A complex scalar. Public operations reject non-finite components.
pub type Complex = Complex64;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);
pub const I: Complex = Complex::new(0.0, 1.0);

const MAX_JACOBI_SWEEPS: usize = 100;

/// Relative/absolute tolerance pair threaded through every numerical predicate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance {
        rel: 1e-9,
        abs: 1e-12,
    };

    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        if !(rel.is_finite() && abs.is_finite()) {
            return Err(Error::NonFinite {
                context: "tolerance",
            });
        }
        if rel <= 0.0 || abs < 0.0 {
            return Err(Error::DimensionMismatch(format!(
                "tolerance requires rel > 0 and abs >= 0, got rel = {rel}, abs = {abs}"
            )));
        }
        Ok(Tolerance { rel, abs })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::DEFAULT
    }
}

pub fn is_finite(z: Complex) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(v: &[Complex]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Dense row-major complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if !data.iter().all(|z| is_finite(*z)) {
            return Err(Error::NonFinite {
                context: "matrix entries",
            });
        }
        Ok(ComplexMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<Complex>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.concat())
    }

    /// Real matrix given as rows of `f64`.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let converted: Vec<Vec<Complex>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| Complex::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&converted)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn diag(entries: &[Complex]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { ZERO })
    }

    /// n x 1 column matrix.
    pub fn column_vector(v: &[Complex]) -> Self {
        ComplexMatrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Self {
        let start = range.start;
        Self::from_fn(self.rows, range.len(), |i, j| self[(i, start + j)])
    }

    pub fn select_columns(&self, indices: &[usize]) -> Self {
        Self::from_fn(self.rows, indices.len(), |i, j| self[(i, indices[j])])
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)]
            } else {
                other[(i, j - self.cols)]
            }
        }))
    }

    /// Standard matrix product.
    pub fn matmul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                let src = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += a * s;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn map(&self, f: impl Fn(Complex) -> Complex) -> Self {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    /// Real parts, as a complex matrix with zero imaginary part.
    pub fn re(&self) -> Self {
        self.map(|z| Complex::new(z.re, 0.0))
    }

    /// Imaginary parts, as a complex matrix with zero imaginary part.
    pub fn im(&self) -> Self {
        self.map(|z| Complex::new(z.im, 0.0))
    }

    pub fn scale(&self, c: Complex) -> Self {
        self.map(|z| z * c)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Stacks real and imaginary parts: an `n x m` complex matrix becomes the
    /// `2n x m` real matrix `[Re G; Im G]` (stored with zero imaginary parts).
    pub fn realify(&self) -> Self {
        Self::from_fn(2 * self.rows, self.cols, |i, j| {
            if i < self.rows {
                Complex::new(self[(i, j)].re, 0.0)
            } else {
                Complex::new(self[(i - self.rows, j)].im, 0.0)
            }
        })
    }

    pub fn is_hermitian_within(&self, tol: Tolerance) -> bool {
        self.is_square()
            && (self - &self.adjoint()).frobenius_norm()
                <= tol.rel * self.frobenius_norm() + tol.abs
    }

    /// `(A + A*) / 2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale(Complex::new(0.5, 0.0))
    }

    pub fn trace(&self) -> Complex {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

// Operator forms panic on shape mismatch; use `matmul` for the checked product.
impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum shape mismatch"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix difference shape mismatch"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>12.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Standard product, checked.
pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.matmul(b)
}

pub fn adjoint(a: &ComplexMatrix) -> ComplexMatrix {
    a.adjoint()
}

fn require_square(a: &ComplexMatrix, what: &str) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "{what} needs a square matrix, got {}x{}",
            a.rows, a.cols
        )))
    }
}

fn max_column_norm(a: &ComplexMatrix) -> f64 {
    (0..a.cols)
        .map(|j| vec_norm(&a.column(j)))
        .fold(0.0, f64::max)
}

/// Solves `A X = b` by Gaussian elimination with partial pivoting.
///
/// A pivot with magnitude at or below `tol.rel` times the largest initial
/// column norm of `A` is reported as [`Error::SingularMatrix`].
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix> {
    require_square(a, "solve")?;
    if b.rows != a.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has {} rows, matrix has {}",
            b.rows, a.rows
        )));
    }
    let n = a.rows;
    let threshold = tol.rel * max_column_norm(a);
    let mut lu = a.clone();
    let mut x = b.clone();
    for k in 0..n {
        let (p, pivot_abs) = (k..n)
            .map(|i| (i, lu[(i, k)].norm()))
            .fold(
                (k, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        if pivot_abs <= threshold {
            return Err(Error::SingularMatrix {
                pivot: pivot_abs,
                threshold,
            });
        }
        if p != k {
            swap_rows(&mut lu, p, k);
            swap_rows(&mut x, p, k);
        }
        let pivot = lu[(k, k)];
        for i in k + 1..n {
            let factor = lu[(i, k)] / pivot;
            if factor == ZERO {
                continue;
            }
            for j in k..n {
                let v = lu[(k, j)];
                lu[(i, j)] -= factor * v;
            }
            for j in 0..x.cols {
                let v = x[(k, j)];
                x[(i, j)] -= factor * v;
            }
        }
    }
    for k in (0..n).rev() {
        let pivot = lu[(k, k)];
        for j in 0..x.cols {
            let mut acc = x[(k, j)];
            for m in k + 1..n {
                acc -= lu[(k, m)] * x[(m, j)];
            }
            x[(k, j)] = acc / pivot;
        }
    }
    Ok(x)
}

pub fn solve_vec(a: &ComplexMatrix, b: &[Complex], tol: Tolerance) -> Result<Vec<Complex>> {
    Ok(solve(a, &ComplexMatrix::column_vector(b), tol)?.column(0))
}

pub fn inverse(a: &ComplexMatrix, tol: Tolerance) -> Result<ComplexMatrix> {
    require_square(a, "inverse")?;
    solve(a, &ComplexMatrix::identity(a.rows), tol)
}

fn swap_rows(m: &mut ComplexMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    let cols = m.cols;
    for j in 0..cols {
        m.data.swap(a * cols + j, b * cols + j);
    }
}

/// Determinant by pivoted elimination. A singular matrix yields (nearly) zero.
pub fn det(a: &ComplexMatrix) -> Result<Complex> {
    require_square(a, "det")?;
    let n = a.rows;
    let mut lu = a.clone();
    let mut acc = ONE;
    for k in 0..n {
        let (p, pivot_abs) = (k..n)
            .map(|i| (i, lu[(i, k)].norm()))
            .fold(
                (k, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        if pivot_abs == 0.0 {
            return Ok(ZERO);
        }
        if p != k {
            swap_rows(&mut lu, p, k);
            acc = -acc;
        }
        let pivot = lu[(k, k)];
        acc *= pivot;
        for i in k + 1..n {
            let factor = lu[(i, k)] / pivot;
            for j in k + 1..n {
                let v = lu[(k, j)];
                lu[(i, j)] -= factor * v;
            }
        }
    }
    Ok(acc)
}

/// Eigen-decomposition of a Hermitian matrix: `P V = V diag(values)`, with
/// `V` unitary and `values` ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation acts on a `(p, q)` plane: the off-diagonal entry's phase is
/// absorbed into the rotation so the 2x2 subproblem is real symmetric.
pub fn hermitian_eig(p: &ComplexMatrix, tol: Tolerance) -> Result<HermitianEigen> {
    require_square(p, "hermitian_eig")?;
    let defect = (p - &p.adjoint()).frobenius_norm();
    if defect > tol.rel * p.frobenius_norm() + tol.abs {
        return Err(Error::NotSelfAdjoint { defect });
    }
    let n = p.rows;
    let mut h = p.hermitian_part();
    for i in 0..n {
        h[(i, i)].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n);
    let scale = h.frobenius_norm();

    for _ in 0..MAX_JACOBI_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| h[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 0.25 * f64::EPSILON * scale || off == 0.0 {
            break;
        }
        for pi in 0..n {
            for qi in pi + 1..n {
                rotate(&mut h, &mut v, pi, qi);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| h[(a, a)].re.total_cmp(&h[(b, b)].re));
    let values = order.iter().map(|&k| h[(k, k)].re).collect();
    let vectors = v.select_columns(&order);
    Ok(HermitianEigen { values, vectors })
}

fn rotate(h: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let hpq = h[(p, q)];
    let r = hpq.norm();
    if r == 0.0 {
        return;
    }
    let phase = hpq / r;
    let a = h[(p, p)].re;
    let d = h[(q, q)].re;
    let theta = (d - a) / (2.0 * r);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // Rotation in the (p, q) plane: [[c, s e], [-s conj(e), c]] with e = phase.
    let vpq = phase * s;
    let vqp = -phase.conj() * s;
    let n = h.rows;
    for k in 0..n {
        let hkp = h[(k, p)];
        let hkq = h[(k, q)];
        h[(k, p)] = hkp * c + hkq * vqp;
        h[(k, q)] = hkp * vpq + hkq * c;
        let ukp = v[(k, p)];
        let ukq = v[(k, q)];
        v[(k, p)] = ukp * c + ukq * vqp;
        v[(k, q)] = ukp * vpq + ukq * c;
    }
    for k in 0..n {
        let hpk = h[(p, k)];
        let hqk = h[(q, k)];
        h[(p, k)] = hpk * c + hqk * vqp.conj();
        h[(q, k)] = hpk * vpq.conj() + hqk * c;
    }
    h[(p, q)] = ZERO;
    h[(q, p)] = ZERO;
    h[(p, p)].im = 0.0;
    h[(q, q)].im = 0.0;
}

/// Singular values in descending order.
///
/// Obtained from the Hermitian dilation `[[0, A], [A*, 0]]`, whose largest
/// `min(rows, cols)` eigenvalues are the singular values of `A`. Small
/// singular values keep absolute accuracy near `eps * ||A||`.
pub fn singular_values(a: &ComplexMatrix, tol: Tolerance) -> Vec<f64> {
    let (m, k) = (a.rows, a.cols);
    let r = m.min(k);
    if r == 0 {
        return Vec::new();
    }
    let size = m + k;
    let dilation = ComplexMatrix::from_fn(size, size, |i, j| {
        if i < m && j >= m {
            a[(i, j - m)]
        } else if i >= m && j < m {
            a[(j, i - m)].conj()
        } else {
            ZERO
        }
    });
    let eig = hermitian_eig(&dilation, tol).expect("dilation is Hermitian by construction");
    eig.values
        .iter()
        .rev()
        .take(r)
        .map(|&s| s.max(0.0))
        .collect()
}

/// Largest singular value (0 for empty matrices).
pub fn operator_norm(a: &ComplexMatrix, tol: Tolerance) -> f64 {
    singular_values(a, tol).first().copied().unwrap_or(0.0)
}

/// Smallest over largest singular value; 0 for a zero matrix.
pub fn conditioning_ratio(a: &ComplexMatrix, tol: Tolerance) -> (f64, f64) {
    let sv = singular_values(a, tol);
    let max = sv.first().copied().unwrap_or(0.0);
    let min = sv.last().copied().unwrap_or(0.0);
    (min, max)
}

/// `true` iff the smallest singular value exceeds `tol.rel` times the largest.
pub fn is_full_rank(a: &ComplexMatrix, tol: Tolerance) -> bool {
    let (min, max) = conditioning_ratio(a, tol);
    max > 0.0 && min > tol.rel * max
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn random_matrix(rng: &mut ChaCha8Rng, r: usize, k: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(r, k, |_, _| {
            c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
    }

    fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
        random_matrix(rng, n, n).hermitian_part()
    }

    #[test]
    fn identity_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = random_matrix(&mut rng, 2, 2);
        assert_eq!(ComplexMatrix::identity(2).matmul(&x).unwrap(), x);
    }

    #[test]
    fn i_squared() {
        let i = ComplexMatrix::from_rows(&[vec![I]]).unwrap();
        assert_eq!(i.matmul(&i).unwrap()[(0, 0)], c(-1.0, 0.0));
    }

    #[test]
    fn matmul_against_triple_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_matrix(&mut rng, 3, 3);
        let b = random_matrix(&mut rng, 3, 3);
        let prod = a.matmul(&b).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = ZERO;
                for k in 0..3 {
                    acc += a[(i, k)] * b[(k, j)];
                }
                assert!((prod[(i, j)] - acc).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn matmul_rejects_mismatch() {
        let a = ComplexMatrix::zeros(2, 3);
        assert!(matches!(a.matmul(&a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn rejects_non_finite() {
        assert!(matches!(
            ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite { .. })
        ));
        assert!(Tolerance::new(0.0, 0.0).is_err());
    }

    #[test]
    fn adjoint_cases() {
        let i = ComplexMatrix::from_rows(&[vec![I]]).unwrap();
        assert_eq!(i.adjoint()[(0, 0)], -I);
        let sym = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 5.0]]).unwrap();
        assert_eq!(sym.adjoint(), sym);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = random_matrix(&mut rng, 4, 4);
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn solve_cases() {
        let tol = Tolerance::default();
        let v = ComplexMatrix::column_vector(&[c(1.0, 2.0), c(-3.0, 0.5)]);
        assert_eq!(solve(&ComplexMatrix::identity(2), &v, tol).unwrap(), v);
        let two = ComplexMatrix::from_real_rows(&[vec![2.0]]).unwrap();
        let four = ComplexMatrix::from_real_rows(&[vec![4.0]]).unwrap();
        assert_eq!(solve(&two, &four, tol).unwrap()[(0, 0)], c(2.0, 0.0));

        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = &random_matrix(&mut rng, 5, 5) + &ComplexMatrix::identity(5).scale(c(3.0, 0.0));
        let b = random_matrix(&mut rng, 5, 2);
        let x = solve(&a, &b, tol).unwrap();
        let residual = (&a.matmul(&x).unwrap() - &b).frobenius_norm();
        assert!(residual <= tol.rel * a.frobenius_norm() * x.frobenius_norm() + tol.abs);
    }

    #[test]
    fn solve_detects_singular() {
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        let b = ComplexMatrix::identity(2);
        assert!(matches!(
            solve(&a, &b, Tolerance::default()),
            Err(Error::SingularMatrix { .. })
        ));
    }

    #[test]
    fn det_cases() {
        assert_eq!(det(&ComplexMatrix::identity(3)).unwrap(), ONE);
        let d = ComplexMatrix::diag(&[c(2.0, 0.0), c(0.0, 3.0)]);
        assert!((det(&d).unwrap() - c(0.0, 6.0)).norm() < 1e-15);
        let singular = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(det(&singular).unwrap().norm() < 1e-15);
    }

    #[test]
    fn det_against_leibniz() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(&mut rng, 3, 3);
        let m = |i: usize, j: usize| a[(i, j)];
        let leibniz =
            m(0, 0) * m(1, 1) * m(2, 2) + m(0, 1) * m(1, 2) * m(2, 0) + m(0, 2) * m(1, 0) * m(2, 1)
                - m(0, 2) * m(1, 1) * m(2, 0)
                - m(0, 0) * m(1, 2) * m(2, 1)
                - m(0, 1) * m(1, 0) * m(2, 2);
        assert!((det(&a).unwrap() - leibniz).norm() < 1e-13);
    }

    #[test]
    fn det_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let a = random_matrix(&mut rng, 4, 4);
            let b = random_matrix(&mut rng, 4, 4);
            let lhs = det(&a.matmul(&b).unwrap()).unwrap();
            let rhs = det(&a).unwrap() * det(&b).unwrap();
            assert!((lhs - rhs).norm() <= 1e-9 * rhs.norm().max(1e-300));
        }
    }

    #[test]
    fn eig_diagonal_and_two_by_two() {
        let tol = Tolerance::default();
        let d = ComplexMatrix::diag(&[c(1.0, 0.0), c(4.0, 0.0)]);
        let e = hermitian_eig(&d, tol).unwrap();
        assert_eq!(e.values, vec![1.0, 4.0]);
        for j in 0..2 {
            assert!((e.vectors[(j, j)].norm() - 1.0).abs() < 1e-15);
        }
        // characteristic polynomial (2 - x)^2 - 1 = 0 has roots 1 and 3
        let p = ComplexMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
        let e = hermitian_eig(&p, tol).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-14);
        assert!((e.values[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let a = ComplexMatrix::from_rows(&[vec![ONE, I], vec![I, ONE]]).unwrap();
        assert!(matches!(
            hermitian_eig(&a, Tolerance::default()),
            Err(Error::NotSelfAdjoint { .. })
        ));
    }

    #[test]
    fn eig_reconstruction_random() {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=8 {
            for _ in 0..20 {
                let p = random_hermitian(&mut rng, n);
                let e = hermitian_eig(&p, tol).unwrap();
                let v = &e.vectors;
                let lhs = p.matmul(v).unwrap();
                let vals: Vec<Complex> = e.values.iter().map(|&x| c(x, 0.0)).collect();
                let rhs = v.matmul(&ComplexMatrix::diag(&vals)).unwrap();
                assert!((&lhs - &rhs).frobenius_norm() <= 1e-10 * p.frobenius_norm());
                let gram = v.adjoint().matmul(v).unwrap();
                assert!((&gram - &ComplexMatrix::identity(n)).frobenius_norm() <= 1e-10);
                assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }

    #[test]
    fn singular_value_cases() {
        let tol = Tolerance::default();
        let sv = singular_values(&ComplexMatrix::identity(3), tol);
        assert!(sv.iter().all(|s| (s - 1.0).abs() < 1e-15));
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 2.0], vec![0.0, 0.0]]).unwrap();
        let sv = singular_values(&a, tol);
        assert!((sv[0] - 2.0).abs() < 1e-15 && sv[1].abs() < 1e-15);
    }

    #[test]
    fn operator_norm_dominates_random_directions() {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = random_matrix(&mut rng, 3, 3);
        let sigma = operator_norm(&a, tol);
        let mut best: f64 = 0.0;
        for _ in 0..1000 {
            let z: Vec<Complex> = (0..3)
                .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let norm = vec_norm(&z);
            let z: Vec<Complex> = z.iter().map(|w| w / norm).collect();
            best = best.max(vec_norm(&a.mul_vec(&z).unwrap()));
        }
        assert!(best <= sigma * (1.0 + 1e-12));
        assert!(best >= 0.9 * sigma);
    }

    #[test]
    fn small_singular_values_are_accurate() {
        let tol = Tolerance::default();
        let a = ComplexMatrix::diag(&[c(1.0, 0.0), c(1e-13, 0.0)]);
        let sv = singular_values(&a, tol);
        assert!((sv[1] - 1e-13).abs() < 1e-16);
        assert!(!is_full_rank(&a, tol));
    }

    #[test]
    fn rectangular_singular_values() {
        let tol = Tolerance::default();
        let a = ComplexMatrix::from_real_rows(&[vec![3.0], vec![4.0]]).unwrap();
        let sv = singular_values(&a, tol);
        assert_eq!(sv.len(), 1);
        assert!((sv[0] - 5.0).abs() < 1e-14);
    }
}
