//! The case `n = 1` in closed form.
//!
//! A real-linear map of `C` has four scalar descriptions:
//! `a x + i b y`, `a (x + i c y)`, `alpha z + beta conj(z)` and
//! `theta (z + mu conj(z))`. Everything here is plain complex arithmetic;
//! the matrix modules are only used to cross-check.

use crate::error::{Error, Result};
use crate::numeric::{Complex, ComplexMatrix, Tolerance, I};
use crate::reallinear::{verify_same_map, ConjugatePairForm, NormalizedForm, RealLinearMap};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarForms {
    pub a: Complex,
    pub b: Complex,
    pub alpha: Complex,
    pub beta: Complex,
    /// `(a, c)` with `c = b / a`, present when `a != 0`.
    pub ac: Option<(Complex, Complex)>,
    /// `(theta, mu)` with `theta = alpha`, `mu = beta / alpha`, present when `|alpha| > |beta|`.
    pub thetamu: Option<(Complex, Complex)>,
}

impl ScalarForms {
    /// `T(x + iy) = a x + i b y`, so `alpha = (a + b) / 2`, `beta = (a - b) / 2`.
    pub fn from_ab(a: Complex, b: Complex) -> Self {
        let alpha = (a + b) * 0.5;
        let beta = (a - b) * 0.5;
        let ac = (a != Complex::new(0.0, 0.0)).then(|| (a, b / a));
        let thetamu = (alpha.norm() > beta.norm()).then(|| (alpha, beta / alpha));
        ScalarForms {
            a,
            b,
            alpha,
            beta,
            ac,
            thetamu,
        }
    }

    /// `T(z) = alpha z + beta conj(z)`, so `a = alpha + beta`, `b = alpha - beta`.
    pub fn from_alpha_beta(alpha: Complex, beta: Complex) -> Self {
        let mut f = Self::from_ab(alpha + beta, alpha - beta);
        f.alpha = alpha;
        f.beta = beta;
        f.thetamu = (alpha.norm() > beta.norm()).then(|| (alpha, beta / alpha));
        f
    }

    /// `a Re(z) + i b Im(z)`.
    pub fn apply(&self, z: Complex) -> Complex {
        self.a * z.re + I * self.b * z.im
    }

    pub fn apply_alpha_beta(&self, z: Complex) -> Complex {
        self.alpha * z + self.beta * z.conj()
    }

    /// `a (x + i c y)`, when present.
    pub fn apply_ac(&self, z: Complex) -> Option<Complex> {
        self.ac.map(|(a, c)| a * (z.re + I * c * z.im))
    }

    /// `theta (z + mu conj(z))`, when present.
    pub fn apply_thetamu(&self, z: Complex) -> Option<Complex> {
        self.thetamu.map(|(theta, mu)| theta * (z + mu * z.conj()))
    }

    /// With `a != 0`, invertibility is `Re(c) != 0`, since `Re(conj(a) b) = |a|^2 Re(c)`.
    pub fn ac_invertible(&self, tol: Tolerance) -> Option<bool> {
        self.ac
            .map(|(_, c)| c.re.abs() > tol.rel * (1.0 + c.norm()))
    }

    /// `alpha z + conj(conj(beta) z)` as a general real-linear map.
    pub fn to_conjugate_pair(&self) -> RealLinearMap {
        let m = ComplexMatrix::from_rows(&[vec![self.alpha]]).expect("finite scalar");
        let n = ComplexMatrix::from_rows(&[vec![self.beta.conj()]]).expect("finite scalar");
        ConjugatePairForm::new(m, n).expect("1x1 blocks").into()
    }

    pub fn classify(&self, tol: Tolerance) -> Dominance {
        let (p, q) = (self.alpha.norm(), self.beta.norm());
        let diff = p - q;
        if diff.abs() <= tol.rel * (p + q) {
            Dominance::Singular
        } else if diff > 0.0 {
            Dominance::Holomorphic
        } else {
            Dominance::Antiholomorphic
        }
    }
}

/// Which of `|alpha|`, `|beta|` dominates, up to the tolerance margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// `|alpha| > |beta|`: invertible, `theta`/`mu` form available.
    Holomorphic,
    /// `|alpha| < |beta|`: invertible, no `theta`/`mu` form.
    Antiholomorphic,
    /// `|alpha| = |beta|`: not invertible.
    Singular,
}

pub fn from_ab(a: Complex, b: Complex) -> ScalarForms {
    ScalarForms::from_ab(a, b)
}

/// `||alpha| - |beta|| > tol.rel (|alpha| + |beta|)`.
///
/// The realification has singular values `|alpha| + |beta|` and
/// `||alpha| - |beta||`, so the general test computes the same ratio; the two
/// may only disagree through rounding right at the margin.
pub fn is_invertible_1d(f: &ScalarForms, tol: Tolerance) -> bool {
    let (p, q) = (f.alpha.norm(), f.beta.norm());
    let invertible = (p - q).abs() > tol.rel * (p + q);
    let general = f.to_conjugate_pair().is_invertible(tol);
    if invertible != general {
        let ratio = (p - q).abs() / (p + q);
        assert!(
            (ratio - tol.rel).abs() <= 1e-12 * (1.0 + tol.rel),
            "internal error: scalar invertibility disagrees with the realified map (ratio {ratio:e})"
        );
    }
    invertible
}

/// `theta = alpha`, `mu = beta / alpha`; requires `|alpha| > |beta|` beyond the margin.
pub fn to_thetamu(f: &ScalarForms, tol: Tolerance) -> Result<(Complex, Complex)> {
    if f.classify(tol) != Dominance::Holomorphic {
        return Err(Error::MajorizationFails);
    }
    let theta = f.alpha;
    let mu = f.beta / f.alpha;
    for z in [Complex::new(1.0, 0.0), I] {
        let lhs = theta * (z + mu * z.conj());
        let rhs = f.apply_alpha_beta(z);
        let bound = tol.rel * (f.alpha.norm() + f.beta.norm()) + tol.abs;
        if (lhs - rhs).norm() > bound {
            return Err(Error::ConversionCheckFailed {
                residual: (lhs - rhs).norm(),
                bound,
            });
        }
    }
    Ok((theta, mu))
}

/// `theta (z + conj(E z))` with `E = conj(mu)`, checked against the map itself.
pub fn to_normalized(f: &ScalarForms, tol: Tolerance) -> Result<NormalizedForm> {
    let (theta, mu) = to_thetamu(f, tol)?;
    let g = ComplexMatrix::from_rows(&[vec![theta]])?;
    let e = ComplexMatrix::from_rows(&[vec![mu.conj()]])?;
    let normalized = NormalizedForm::with_prefactor(g, e)?;
    verify_same_map(&f.to_conjugate_pair(), &normalized.clone().into(), tol)?;
    Ok(normalized)
}
