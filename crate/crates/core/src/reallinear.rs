//! Real-linear maps `T: C^n -> C^n` in four interchangeable representations.
//!
//! Writing `z = x + i y` with `x, y` real:
//!
//! * block: `T(z) = E1 x + E2 y + i (E3 x + E4 y)` with real `E_k`;
//! * split: `T(z) = x + A y + i B y` with real `A, B`;
//! * conjugate pair: `T(z) = M z + conj(N z)` with complex `M, N`;
//! * normalized: `T(z) = G (z + conj(E z))`, where the pure form has `G = I`.
//!
//! Every conversion is checked by evaluating source and result on the `2n`
//! real basis vectors `e_k`, `i e_k` before it is returned.

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{
    self, conditioning_ratio, hermitian_eig, inverse, operator_norm, singular_values, Complex,
    ComplexMatrix, Tolerance, I, ONE, ZERO,
};

/// Which of the four representations a map is stored in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Representation {
    Block,
    Split,
    ConjugatePair,
    Normalized,
}

impl Representation {
    pub const ALL: [Representation; 4] = [
        Representation::Block,
        Representation::Split,
        Representation::ConjugatePair,
        Representation::Normalized,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Representation::Block => "block",
            Representation::Split => "split",
            Representation::ConjugatePair => "conjugate_pair",
            Representation::Normalized => "normalized",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.name() == name)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn require_square_n(m: &ComplexMatrix, n: usize, what: &str) -> Result<()> {
    if m.rows() == n && m.cols() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "{what} must be {n}x{n}, got {}x{}",
            m.rows(),
            m.cols()
        )))
    }
}

fn require_real(m: &ComplexMatrix, what: &'static str) -> Result<()> {
    if m.is_real() {
        Ok(())
    } else {
        Err(Error::NotReal(what))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockForm {
    e1: ComplexMatrix,
    e2: ComplexMatrix,
    e3: ComplexMatrix,
    e4: ComplexMatrix,
}

impl BlockForm {
    /// All four blocks must be real `n x n` matrices (imaginary parts exactly zero).
    pub fn new(
        e1: ComplexMatrix,
        e2: ComplexMatrix,
        e3: ComplexMatrix,
        e4: ComplexMatrix,
    ) -> Result<Self> {
        let n = e1.rows();
        for (m, name) in [(&e1, "E1"), (&e2, "E2"), (&e3, "E3"), (&e4, "E4")] {
            require_square_n(m, n, name)?;
            require_real(m, name)?;
        }
        Ok(BlockForm { e1, e2, e3, e4 })
    }

    /// Splits a real `2n x 2n` matrix into its four blocks.
    pub fn from_realification(r: &ComplexMatrix) -> Result<Self> {
        if !r.is_square() || !r.rows().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "realification must be 2n x 2n, got {}x{}",
                r.rows(),
                r.cols()
            )));
        }
        let n = r.rows() / 2;
        let block = |r0: usize, c0: usize| {
            ComplexMatrix::from_fn(n, n, |i, j| Complex::new(r[(r0 + i, c0 + j)].re, 0.0))
        };
        Ok(BlockForm {
            e1: block(0, 0),
            e2: block(0, n),
            e3: block(n, 0),
            e4: block(n, n),
        })
    }

    pub fn blocks(&self) -> [&ComplexMatrix; 4] {
        [&self.e1, &self.e2, &self.e3, &self.e4]
    }

    pub fn dim(&self) -> usize {
        self.e1.rows()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitForm {
    a: ComplexMatrix,
    b: ComplexMatrix,
}

impl SplitForm {
    pub fn new(a: ComplexMatrix, b: ComplexMatrix) -> Result<Self> {
        let n = a.rows();
        require_square_n(&a, n, "A")?;
        require_square_n(&b, n, "B")?;
        require_real(&a, "A")?;
        require_real(&b, "B")?;
        Ok(SplitForm { a, b })
    }

    pub fn a(&self) -> &ComplexMatrix {
        &self.a
    }

    pub fn b(&self) -> &ComplexMatrix {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConjugatePairForm {
    m: ComplexMatrix,
    n: ComplexMatrix,
}

impl ConjugatePairForm {
    pub fn new(m: ComplexMatrix, n: ComplexMatrix) -> Result<Self> {
        let dim = m.rows();
        require_square_n(&m, dim, "M")?;
        require_square_n(&n, dim, "N")?;
        Ok(ConjugatePairForm { m, n })
    }

    pub fn m(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn n(&self) -> &ComplexMatrix {
        &self.n
    }

    pub fn dim(&self) -> usize {
        self.m.rows()
    }

    /// `|N z| < |M z|` for all `z != 0`, i.e. `M` invertible and
    /// `||N M^{-1}|| < 1`, tested with margin `tol.rel`.
    pub fn majorization(&self, tol: Tolerance) -> StrictBound {
        match inverse(&self.m, tol) {
            Ok(m_inv) => StrictBound::below_one(operator_norm(&(&self.n * &m_inv), tol), tol),
            Err(_) => StrictBound::below_one(f64::INFINITY, tol),
        }
    }

    pub fn majorizes(&self, tol: Tolerance) -> bool {
        self.majorization(tol).holds
    }

    /// Factors `T = G o (z + conj(E z))` with `G = M` and `E = conj(M)^{-1} N`.
    pub fn normalize_post_composition(
        &self,
        tol: Tolerance,
    ) -> Result<(ComplexMatrix, NormalizedForm)> {
        let e = numeric::solve(&self.m.conj(), &self.n, tol).map_err(|_| Error::SingularM)?;
        let pure = NormalizedForm::new(e)?;
        let factored = NormalizedForm {
            prefactor: self.m.clone(),
            e: pure.e.clone(),
        };
        verify_same_map(
            &RealLinearMap::ConjugatePair(self.clone()),
            &RealLinearMap::Normalized(factored),
            tol,
        )?;
        Ok((self.m.clone(), pure))
    }
}

/// `T(z) = G (z + conj(E z))`. The pure normalized form has `G = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedForm {
    prefactor: ComplexMatrix,
    e: ComplexMatrix,
}

impl NormalizedForm {
    pub fn new(e: ComplexMatrix) -> Result<Self> {
        let n = e.rows();
        require_square_n(&e, n, "E")?;
        Ok(NormalizedForm {
            prefactor: ComplexMatrix::identity(n),
            e,
        })
    }

    /// Normalized form post-composed with the complex-linear map `prefactor`.
    pub fn with_prefactor(prefactor: ComplexMatrix, e: ComplexMatrix) -> Result<Self> {
        let n = e.rows();
        require_square_n(&e, n, "E")?;
        require_square_n(&prefactor, n, "G")?;
        Ok(NormalizedForm { prefactor, e })
    }

    pub fn e(&self) -> &ComplexMatrix {
        &self.e
    }

    pub fn prefactor(&self) -> &ComplexMatrix {
        &self.prefactor
    }

    pub fn is_pure(&self) -> bool {
        self.prefactor == ComplexMatrix::identity(self.dim())
    }

    pub fn dim(&self) -> usize {
        self.e.rows()
    }

    /// Operator-norm test `||E|| < 1` paired with the positivity test
    /// `I - E*E > 0`. The eigenvalue test uses the margin matching
    /// `||E|| < 1 - tol.rel`, so the two must agree up to rounding.
    pub fn contraction(&self, tol: Tolerance) -> ContractionReport {
        let n = self.dim();
        let norm = operator_norm(&self.e, tol);
        let gap = &ComplexMatrix::identity(n) - &(&self.e.adjoint() * &self.e);
        let min_eigenvalue = hermitian_eig(&gap.hermitian_part(), tol)
            .expect("I - E*E is Hermitian")
            .values
            .first()
            .copied()
            .unwrap_or(1.0);
        let bound = StrictBound::below_one(norm, tol);
        let eig_limit = 1.0 - (1.0 - tol.rel).powi(2);
        let eig_holds = min_eigenvalue > eig_limit;
        if eig_holds != bound.holds && (norm - (1.0 - tol.rel)).abs() > 1e-12 {
            panic!(
                "internal error: contraction checks disagree (||E|| = {norm:e}, min eig(I - E*E) = {min_eigenvalue:e})"
            );
        }
        ContractionReport {
            norm,
            min_eigenvalue,
            holds: bound.holds,
            boundary: bound.boundary,
        }
    }

    pub fn contraction_check(&self, tol: Tolerance) -> bool {
        self.contraction(tol).holds
    }
}

/// Outcome of a strict inequality `value < 1` tested with margin `tol.rel`.
/// Values within the margin of 1 do not hold and are flagged as boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrictBound {
    pub value: f64,
    pub holds: bool,
    pub boundary: bool,
}

impl StrictBound {
    pub fn below_one(value: f64, tol: Tolerance) -> Self {
        let holds = value < 1.0 - tol.rel;
        let boundary = !holds && (value - 1.0).abs() <= tol.rel;
        StrictBound {
            value,
            holds,
            boundary,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionReport {
    pub norm: f64,
    pub min_eigenvalue: f64,
    pub holds: bool,
    pub boundary: bool,
}

/// A real-linear map on `C^n` tagged with the representation it was built in.
#[derive(Debug, Clone, PartialEq)]
pub enum RealLinearMap {
    Block(BlockForm),
    Split(SplitForm),
    ConjugatePair(ConjugatePairForm),
    Normalized(NormalizedForm),
}

impl From<BlockForm> for RealLinearMap {
    fn from(f: BlockForm) -> Self {
        RealLinearMap::Block(f)
    }
}

impl From<SplitForm> for RealLinearMap {
    fn from(f: SplitForm) -> Self {
        RealLinearMap::Split(f)
    }
}

impl From<ConjugatePairForm> for RealLinearMap {
    fn from(f: ConjugatePairForm) -> Self {
        RealLinearMap::ConjugatePair(f)
    }
}

impl From<NormalizedForm> for RealLinearMap {
    fn from(f: NormalizedForm) -> Self {
        RealLinearMap::Normalized(f)
    }
}

fn split_xy(z: &[Complex]) -> (Vec<Complex>, Vec<Complex>) {
    (
        z.iter().map(|w| Complex::new(w.re, 0.0)).collect(),
        z.iter().map(|w| Complex::new(w.im, 0.0)).collect(),
    )
}

impl RealLinearMap {
    pub fn identity(n: usize) -> Self {
        RealLinearMap::Normalized(NormalizedForm::new(ComplexMatrix::zeros(n, n)).expect("square"))
    }

    pub fn dim(&self) -> usize {
        match self {
            RealLinearMap::Block(f) => f.dim(),
            RealLinearMap::Split(f) => f.dim(),
            RealLinearMap::ConjugatePair(f) => f.dim(),
            RealLinearMap::Normalized(f) => f.dim(),
        }
    }

    pub fn kind(&self) -> Representation {
        match self {
            RealLinearMap::Block(_) => Representation::Block,
            RealLinearMap::Split(_) => Representation::Split,
            RealLinearMap::ConjugatePair(_) => Representation::ConjugatePair,
            RealLinearMap::Normalized(_) => Representation::Normalized,
        }
    }

    /// Evaluates the stored representation literally.
    pub fn apply(&self, z: &[Complex]) -> Result<Vec<Complex>> {
        let n = self.dim();
        if z.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "map on C^{n} applied to vector of length {}",
                z.len()
            )));
        }
        let out = match self {
            RealLinearMap::Block(f) => {
                let (x, y) = split_xy(z);
                let re: Vec<Complex> =
                    f.e1.mul_vec(&x)?
                        .iter()
                        .zip(f.e2.mul_vec(&y)?)
                        .map(|(a, b)| a + b)
                        .collect();
                let im: Vec<Complex> =
                    f.e3.mul_vec(&x)?
                        .iter()
                        .zip(f.e4.mul_vec(&y)?)
                        .map(|(a, b)| a + b)
                        .collect();
                re.iter().zip(im).map(|(r, i)| r + I * i).collect()
            }
            RealLinearMap::Split(f) => {
                let (x, y) = split_xy(z);
                let ay = f.a.mul_vec(&y)?;
                let by = f.b.mul_vec(&y)?;
                (0..n).map(|k| x[k] + ay[k] + I * by[k]).collect()
            }
            RealLinearMap::ConjugatePair(f) => {
                let mz = f.m.mul_vec(z)?;
                let nz = f.n.mul_vec(z)?;
                mz.iter().zip(nz).map(|(a, b)| a + b.conj()).collect()
            }
            RealLinearMap::Normalized(f) => {
                let ez = f.e.mul_vec(z)?;
                let inner: Vec<Complex> = z.iter().zip(ez).map(|(a, b)| a + b.conj()).collect();
                f.prefactor.mul_vec(&inner)?
            }
        };
        Ok(out)
    }

    /// The real `2n x 2n` matrix `R` with `R (x; y) = (Re T(x+iy); Im T(x+iy))`.
    pub fn realify(&self) -> ComplexMatrix {
        let n = self.dim();
        if let RealLinearMap::Block(f) = self {
            return ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| {
                let block = match (i < n, j < n) {
                    (true, true) => &f.e1,
                    (true, false) => &f.e2,
                    (false, true) => &f.e3,
                    (false, false) => &f.e4,
                };
                block[(i % n, j % n)]
            });
        }
        let mut r = ComplexMatrix::zeros(2 * n, 2 * n);
        for k in 0..2 * n {
            let mut basis = vec![ZERO; n];
            basis[k % n] = if k < n { ONE } else { I };
            let image = self.apply(&basis).expect("basis vector has length n");
            for (i, w) in image.iter().enumerate() {
                r[(i, k)] = Complex::new(w.re, 0.0);
                r[(n + i, k)] = Complex::new(w.im, 0.0);
            }
        }
        r
    }

    pub fn to_block(&self) -> BlockForm {
        match self {
            RealLinearMap::Block(f) => f.clone(),
            _ => BlockForm::from_realification(&self.realify()).expect("realification is 2n x 2n"),
        }
    }

    fn to_conjugate_pair_unchecked(&self) -> ConjugatePairForm {
        let half = Complex::new(0.5, 0.0);
        match self {
            RealLinearMap::ConjugatePair(f) => f.clone(),
            RealLinearMap::Normalized(f) => ConjugatePairForm {
                m: f.prefactor.clone(),
                n: &f.prefactor.conj() * &f.e,
            },
            RealLinearMap::Split(f) => {
                // x = (z + conj z)/2, y = -i (z - conj z)/2, W = A + iB:
                // T = (I - iW)/2 z + (I + iW)/2 conj(z).
                let n = f.dim();
                let w = &f.a + &f.b.scale(I);
                let id = ComplexMatrix::identity(n);
                let m = (&id - &w.scale(I)).scale(half);
                let conj_coeff = (&id + &w.scale(I)).scale(half);
                ConjugatePairForm {
                    m,
                    n: conj_coeff.conj(),
                }
            }
            RealLinearMap::Block(_) => {
                let b = self.to_block();
                // M = ((E1 + E4) + i (E3 - E2)) / 2, N = ((E1 - E4) - i (E3 + E2)) / 2
                let m = (&(&b.e1 + &b.e4) + &(&b.e3 - &b.e2).scale(I)).scale(half);
                let n = (&(&b.e1 - &b.e4) - &(&b.e3 + &b.e2).scale(I)).scale(half);
                ConjugatePairForm { m, n }
            }
        }
    }

    /// Converts to `target`, verifying apply-equality on the real basis.
    pub fn convert(&self, target: Representation, tol: Tolerance) -> Result<RealLinearMap> {
        if target == self.kind() {
            return Ok(self.clone());
        }
        let converted = match target {
            Representation::Block => RealLinearMap::Block(self.to_block()),
            Representation::ConjugatePair => {
                RealLinearMap::ConjugatePair(self.to_conjugate_pair_unchecked())
            }
            Representation::Split => {
                let b = self.to_block();
                let scale = self.realify().frobenius_norm();
                let n = self.dim();
                let e1_defect = (&b.e1 - &ComplexMatrix::identity(n)).frobenius_norm();
                let e3_defect = b.e3.frobenius_norm();
                let bound = tol.rel * scale + tol.abs;
                if e1_defect > bound || e3_defect > bound {
                    return Err(Error::NotInSplitClass {
                        e1_defect,
                        e3_defect,
                    });
                }
                RealLinearMap::Split(SplitForm { a: b.e2, b: b.e4 })
            }
            Representation::Normalized => {
                let cp = self.to_conjugate_pair_unchecked();
                let e = numeric::solve(&cp.m.conj(), &cp.n, tol).map_err(|_| Error::SingularM)?;
                RealLinearMap::Normalized(NormalizedForm { prefactor: cp.m, e })
            }
        };
        verify_same_map(self, &converted, tol)?;
        Ok(converted)
    }

    /// Trivial kernel, decided on the realification:
    /// `sigma_min(R) > tol.rel * sigma_max(R)`.
    ///
    /// For split forms the answer is cross-checked against invertibility of
    /// the real matrix `B`.
    pub fn is_invertible(&self, tol: Tolerance) -> bool {
        let (min, max) = conditioning_ratio(&self.realify(), tol);
        let invertible = max > 0.0 && min > tol.rel * max;
        if let RealLinearMap::Split(f) = self {
            let (b_min, b_max) = conditioning_ratio(&f.b, tol);
            let b_invertible = b_max > 0.0 && b_min > tol.rel * b_max;
            if b_invertible != invertible {
                // R = [[I, A], [0, B]] gives
                // sigma_min(B) / ((sigma_min(B) + 1 + ||A||)(1 + ||A|| + ||B||)) <= ratio(R) <= ratio(B),
                // so a disagreement is only legitimate when ratio(B) sits inside that band.
                let a_norm = operator_norm(&f.a, tol);
                let band =
                    (b_min + 1.0 + a_norm) * (1.0 + a_norm + b_max) / b_max.max(f64::MIN_POSITIVE);
                let ratio_b = b_min / b_max.max(f64::MIN_POSITIVE);
                let legitimate = if b_invertible {
                    ratio_b <= tol.rel * band * (1.0 + 1e-6)
                } else {
                    ratio_b > tol.rel * (1.0 - 1e-6)
                };
                assert!(
                    legitimate,
                    "internal error: split-form invertibility disagrees with invertibility of B \
                     (ratio(B) = {ratio_b:e}, ratio(R) = {:e})",
                    min / max
                );
            }
        }
        invertible
    }

    /// Singular values of the realification, descending.
    pub fn real_singular_values(&self, tol: Tolerance) -> Vec<f64> {
        singular_values(&self.realify(), tol)
    }
}

/// Checks that two maps agree on the `2n` real basis vectors.
pub fn verify_same_map(a: &RealLinearMap, b: &RealLinearMap, tol: Tolerance) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!(
            "maps on C^{} and C^{}",
            a.dim(),
            b.dim()
        )));
    }
    let ra = a.realify();
    let residual = (&ra - &b.realify()).frobenius_norm();
    let bound = tol.rel * ra.frobenius_norm() + tol.abs;
    if residual > bound {
        return Err(Error::ConversionCheckFailed { residual, bound });
    }
    Ok(())
}

/// `realify(T2 o T1) = realify(T2) realify(T1)`: composition as a block form.
pub fn compose(outer: &RealLinearMap, inner: &RealLinearMap) -> Result<RealLinearMap> {
    let product = outer.realify().matmul(&inner.realify())?;
    Ok(RealLinearMap::Block(BlockForm::from_realification(
        &product,
    )?))
}
