//! Canonical forms for `GL(C^n)` modulo the unitary group and `SL(C^n)`
//! modulo `SU(C^n)`: the Gram form `A*A`, its positive-definite square root
//! and the polar decomposition `A = U P`.

use crate::error::{Error, Result};
use crate::numeric::{
    det, hermitian_eig, inverse, is_full_rank, Complex, ComplexMatrix, Tolerance,
};

const MAX_POLAR_ITERATIONS: usize = 100;

/// Self-adjoint positive-definite matrix: the representative of a unitary coset.
#[derive(Debug, Clone, PartialEq)]
pub struct GramForm {
    p: ComplexMatrix,
}

impl GramForm {
    /// Validates self-adjointness within `tol` and strict positivity of the
    /// smallest eigenvalue; the stored matrix is the Hermitian part of `p`.
    pub fn new(p: ComplexMatrix, tol: Tolerance) -> Result<Self> {
        let eig = hermitian_eig(&p, tol)?;
        let min_eigenvalue = eig.values.first().copied().unwrap_or(1.0);
        if min_eigenvalue <= 0.0 {
            return Err(Error::NotPositiveDefinite { min_eigenvalue });
        }
        Ok(GramForm {
            p: p.hermitian_part(),
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.p
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.p.rows()
    }
}

/// Membership of a square matrix in `GL`, `SL`, `U` and `SU`, with the
/// quantities the decisions were based on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupMembership {
    pub in_gl: bool,
    pub in_sl: bool,
    pub in_u: bool,
    pub in_su: bool,
    pub abs_det: f64,
    /// `||A*A - I||_F`
    pub unitarity_defect: f64,
    /// `|det A - 1|`
    pub det_defect: f64,
}

/// Group membership: invertibility by singular-value ratio, unitarity as
/// `||A*A - I|| <= tol.rel * n`, determinant one as `|det - 1| <= tol.rel * n`.
pub fn classify(a: &ComplexMatrix, tol: Tolerance) -> Result<GroupMembership> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "classify needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows() as f64;
    let d = det(a)?;
    let unitarity_defect =
        (&(&a.adjoint() * a) - &ComplexMatrix::identity(a.rows())).frobenius_norm();
    let det_defect = (d - Complex::new(1.0, 0.0)).norm();
    let in_gl = is_full_rank(a, tol);
    let in_u = in_gl && unitarity_defect <= tol.rel * n;
    let in_sl = in_gl && det_defect <= tol.rel * n;
    Ok(GroupMembership {
        in_gl,
        in_sl,
        in_u,
        in_su: in_u && in_sl,
        abs_det: d.norm(),
        unitarity_defect,
        det_defect,
    })
}

fn require_invertible(a: &ComplexMatrix, tol: Tolerance) -> Result<()> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    inverse(a, tol).map(|_| ())
}

/// `A*A` for invertible `A`.
pub fn gram(a: &ComplexMatrix, tol: Tolerance) -> Result<GramForm> {
    require_invertible(a, tol)?;
    GramForm::new((&a.adjoint() * a).hermitian_part(), tol)
}

/// Outcome of comparing two unitary cosets through their Gram forms.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryEquivalence {
    pub equivalent: bool,
    /// `T = A2 A1^{-1}`, present when `equivalent`.
    pub witness: Option<ComplexMatrix>,
    /// `||A1*A1 - A2*A2||_F`
    pub gram_defect: f64,
}

/// `A2 = T A1` for a unitary `T` exactly when the Gram forms agree.
///
/// Gram equality is tested with bound `tol.rel (||A1||^2 + ||A2||^2)`; on
/// success `T = A2 A1^{-1}` is returned and must classify as unitary.
pub fn unitarily_equivalent(
    a1: &ComplexMatrix,
    a2: &ComplexMatrix,
    tol: Tolerance,
) -> Result<UnitaryEquivalence> {
    if a1.rows() != a2.rows() || a1.cols() != a2.cols() {
        return Err(Error::DimensionMismatch(
            "matrices of different sizes".into(),
        ));
    }
    let g1 = gram(a1, tol)?;
    let g2 = gram(a2, tol)?;
    let gram_defect = (g1.matrix() - g2.matrix()).frobenius_norm();
    let bound = tol.rel * (a1.frobenius_norm().powi(2) + a2.frobenius_norm().powi(2));
    if gram_defect > bound {
        return Ok(UnitaryEquivalence {
            equivalent: false,
            witness: None,
            gram_defect,
        });
    }
    let t = a2 * &inverse(a1, tol)?;
    let unitary = classify(&t, tol)?.in_u;
    Ok(UnitaryEquivalence {
        equivalent: unitary,
        witness: unitary.then_some(t),
        gram_defect,
    })
}

/// The unique self-adjoint positive-definite square root.
pub fn spd_sqrt(p: &GramForm, tol: Tolerance) -> Result<GramForm> {
    let eig = hermitian_eig(p.matrix(), tol)?;
    if let Some(&min_eigenvalue) = eig.values.first() {
        if min_eigenvalue <= 0.0 {
            return Err(Error::NotPositiveDefinite { min_eigenvalue });
        }
    }
    let roots: Vec<Complex> = eig
        .values
        .iter()
        .map(|&l| Complex::new(l.sqrt(), 0.0))
        .collect();
    let v = &eig.vectors;
    let q = &(v * &ComplexMatrix::diag(&roots)) * &v.adjoint();
    Ok(GramForm {
        p: q.hermitian_part(),
    })
}

/// `A = U P` with `U` unitary and `P = sqrt(A*A)`.
///
/// `U` comes from the scaled Newton iteration `X <- (z X + X^{-*} / z) / 2`,
/// which keeps `U` unitary to rounding even for ill-conditioned `A`.
pub fn polar(a: &ComplexMatrix, tol: Tolerance) -> Result<(ComplexMatrix, GramForm)> {
    let p = spd_sqrt(&gram(a, tol)?, tol)?;
    let n = a.rows();
    let mut x = a.clone();
    for _ in 0..MAX_POLAR_ITERATIONS {
        let x_inv_adj = inverse(&x, tol)?.adjoint();
        let ratio = x_inv_adj.frobenius_norm() / x.frobenius_norm();
        let zeta = if ratio.is_finite() && ratio > 0.0 {
            ratio.sqrt()
        } else {
            1.0
        };
        let next = (&x.scale(Complex::new(0.5 * zeta, 0.0)))
            + &x_inv_adj.scale(Complex::new(0.5 / zeta, 0.0));
        let step = (&next - &x).frobenius_norm();
        x = next;
        if step <= 4.0 * f64::EPSILON * (n as f64).sqrt() {
            break;
        }
    }
    // one unscaled step settles the last rounding-level drift
    let x = (&x + &inverse(&x, tol)?.adjoint()).scale(Complex::new(0.5, 0.0));
    Ok((x, p))
}

/// Scales `A` by the inverse principal `n`-th root of `det A`, so the result
/// has determinant 1. The root's argument lies in `(-pi/n, pi/n]`.
pub fn sl_normalize(a: &ComplexMatrix, tol: Tolerance) -> Result<(ComplexMatrix, Complex)> {
    require_invertible(a, tol)?;
    let n = a.rows() as f64;
    let d = det(a)?;
    let delta = Complex::from_polar(d.norm().powf(1.0 / n), d.arg() / n);
    Ok((a.scale(delta.inv()), delta))
}

/// Gram form of an `SL` matrix; its determinant is 1.
pub fn su_sl_canonical(b: &ComplexMatrix, tol: Tolerance) -> Result<GramForm> {
    let membership = classify(b, tol)?;
    if !membership.in_sl {
        return Err(Error::NotInSL {
            det_defect: membership.det_defect,
        });
    }
    let g = gram(b, tol)?;
    let d = det(g.matrix())?;
    let det_defect = (d - Complex::new(1.0, 0.0)).norm();
    if det_defect > 2.0 * tol.rel * b.rows() as f64 + tol.abs {
        return Err(Error::NotInSL { det_defect });
    }
    Ok(g)
}
