//! Lattices in `C^n` given by `2n` generators of full real rank, lattice
//! comparison with integral change-of-basis witnesses, the group `Sigma`, and
//! normalization of a basis to `[I | Z]` with a period matrix `Z`.

pub use crate::gaussian::{GaussianInt, GaussianMatrix, GaussianUnimodular};

use crate::error::{Error, Result};
use crate::gaussian::{integer_det, round_to_integer};
use crate::numeric::{
    conditioning_ratio, det, inverse, is_full_rank, singular_values, solve, vec_norm, Complex,
    ComplexMatrix, Tolerance, I,
};
use crate::reallinear::SplitForm;

/// Generators of a lattice: an `n x 2n` complex matrix whose columns are the
/// images of the standard basis of `R^{2n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeBasis {
    generators: ComplexMatrix,
}

impl LatticeBasis {
    /// Rejects generators whose `2n x 2n` realification is rank deficient.
    pub fn from_generators(generators: ComplexMatrix, tol: Tolerance) -> Result<Self> {
        let n = generators.rows();
        if generators.cols() != 2 * n || n == 0 {
            return Err(Error::DimensionMismatch(format!(
                "lattice generators must be n x 2n, got {}x{}",
                n,
                generators.cols()
            )));
        }
        let (min, max) = conditioning_ratio(&generators.realify(), tol);
        if !(max > 0.0 && min > tol.rel * max) {
            return Err(Error::RankDeficient { margin: min });
        }
        Ok(LatticeBasis { generators })
    }

    /// `(Z[i])^n`, generated by `e_1, .., e_n, i e_1, .., i e_n`.
    pub fn standard(n: usize) -> Self {
        let generators = ComplexMatrix::identity(n)
            .hstack(&ComplexMatrix::identity(n).scale(I))
            .expect("same rows");
        LatticeBasis { generators }
    }

    /// The lattice `A((Z[i])^n)`, generated by the columns of `[A | iA]`.
    pub fn from_complex_linear(a: &ComplexMatrix, tol: Tolerance) -> Result<Self> {
        Self::from_generators(a.hstack(&a.scale(I))?, tol)
    }

    pub fn n(&self) -> usize {
        self.generators.rows()
    }

    pub fn generators(&self) -> &ComplexMatrix {
        &self.generators
    }

    /// Real `2n x 2n` matrix `[Re G; Im G]`.
    pub fn realification(&self) -> ComplexMatrix {
        self.generators.realify()
    }

    /// Volume of a fundamental parallelepiped: `|det [Re G; Im G]|`.
    pub fn covolume(&self) -> f64 {
        det(&self.realification()).expect("square").norm()
    }

    /// Applies a complex-linear map to every generator.
    pub fn transform(&self, a: &ComplexMatrix, tol: Tolerance) -> Result<Self> {
        Self::from_generators(a.matmul(&self.generators)?, tol)
    }

    /// Lattice point `G c` for integer coordinates `c`.
    pub fn point(&self, coords: &[i64]) -> Result<Vec<Complex>> {
        let c: Vec<Complex> = coords
            .iter()
            .map(|&k| Complex::new(k as f64, 0.0))
            .collect();
        self.generators.mul_vec(&c)
    }
}

/// Smallest singular value of the `2n x m` realification of `m <= 2n`
/// generators. A positive margin certifies a trivial kernel, which survives
/// perturbations of smaller size.
pub fn rank_margin(generators: &ComplexMatrix) -> Result<f64> {
    let limit = 2 * generators.rows();
    if generators.cols() > limit {
        return Err(Error::DimensionViolation {
            m: generators.cols(),
            limit,
        });
    }
    Ok(singular_values(&generators.realify(), Tolerance::default())
        .last()
        .copied()
        .unwrap_or(0.0))
}

pub fn covolume(l: &LatticeBasis) -> f64 {
    l.covolume()
}

/// Result of [`same_lattice`].
#[derive(Debug, Clone, PartialEq)]
pub enum LatticeComparison {
    /// `R2 = R1 W` with `W` integral and `|det W| = 1`.
    Same {
        witness: Vec<Vec<i64>>,
    },
    Different {
        reason: &'static str,
    },
    /// Some entry of `R1^{-1} R2` sits just outside the integrality tolerance.
    Ambiguous {
        row: usize,
        col: usize,
        distance: f64,
    },
}

impl LatticeComparison {
    pub fn is_same(&self) -> bool {
        matches!(self, LatticeComparison::Same { .. })
    }
}

/// Two bases generate the same lattice iff the change of basis
/// `R1^{-1} R2` is an integer matrix with determinant `+-1`.
pub fn same_lattice(
    l1: &LatticeBasis,
    l2: &LatticeBasis,
    tol: Tolerance,
) -> Result<LatticeComparison> {
    if l1.n() != l2.n() {
        return Err(Error::DimensionMismatch(format!(
            "lattices in C^{} and C^{}",
            l1.n(),
            l2.n()
        )));
    }
    let x = solve(&l1.realification(), &l2.realification(), tol)?;
    let m = x.rows();
    let mut witness = vec![vec![0i64; m]; m];
    for (i, row) in witness.iter_mut().enumerate() {
        for (j, w) in row.iter_mut().enumerate() {
            match round_to_integer(x[(i, j)].re, tol) {
                Ok(k) => *w = k,
                Err(failure) => {
                    return Ok(match failure.at(i, j) {
                        Error::AmbiguousIntegrality { row, col, distance } => {
                            LatticeComparison::Ambiguous { row, col, distance }
                        }
                        _ => LatticeComparison::Different {
                            reason: "change of basis is not integral",
                        },
                    })
                }
            }
        }
    }
    let d = integer_det(&witness)?;
    if d.abs() != 1 {
        return Ok(LatticeComparison::Different {
            reason: "change of basis is not unimodular",
        });
    }
    Ok(LatticeComparison::Same { witness })
}

/// Rounds `b` to a Gaussian-integer matrix and checks `det = 1` exactly.
/// The inverse is recomputed as the exact adjugate and checked.
pub fn sigma_membership(b: &ComplexMatrix, tol: Tolerance) -> Result<GaussianUnimodular> {
    let m = GaussianMatrix::from_complex(b, tol)?;
    let u = GaussianUnimodular::new(m)?;
    let inv = u.inverse()?;
    assert_eq!(
        u.matrix().matmul(inv.matrix())?,
        GaussianMatrix::identity(u.dim()),
        "internal error: adjugate of a determinant-one matrix is not its inverse"
    );
    Ok(u)
}

/// Reorders the generators so the first `n` are C-linearly independent.
///
/// Greedy column-pivoted Gram-Schmidt over C: each step takes the remaining
/// column with the largest residual norm (lowest index on ties). The chosen
/// columns come first in ascending index order, then the rest ascending.
pub fn permute_to_l1(l: &LatticeBasis, tol: Tolerance) -> Result<(LatticeBasis, Vec<usize>)> {
    let n = l.n();
    let g = l.generators();
    let mut residuals: Vec<Vec<Complex>> = (0..2 * n).map(|j| g.column(j)).collect();
    let mut remaining: Vec<usize> = (0..2 * n).collect();
    let mut chosen = Vec::with_capacity(n);
    let scale = g.frobenius_norm();
    for _ in 0..n {
        let mut best: Option<(usize, f64)> = None;
        for (pos, &j) in remaining.iter().enumerate() {
            let norm = vec_norm(&residuals[j]);
            if best.is_none_or(|(_, b)| norm > b) {
                best = Some((pos, norm));
            }
        }
        let (pos, norm) = best.ok_or(Error::FirstBlockSingular)?;
        if norm <= tol.rel * scale {
            return Err(Error::FirstBlockSingular);
        }
        let j = remaining.remove(pos);
        chosen.push(j);
        let q: Vec<Complex> = residuals[j].iter().map(|z| z / norm).collect();
        for &k in &remaining {
            let proj: Complex = q.iter().zip(&residuals[k]).map(|(a, b)| a.conj() * b).sum();
            for (r, qi) in residuals[k].iter_mut().zip(&q) {
                *r -= qi * proj;
            }
        }
    }
    chosen.sort_unstable();
    let perm: Vec<usize> = chosen.into_iter().chain(remaining).collect();
    let permuted = LatticeBasis {
        generators: g.select_columns(&perm),
    };
    if !is_full_rank(&permuted.generators.columns(0..n), tol) {
        return Err(Error::FirstBlockSingular);
    }
    Ok((permuted, perm))
}

/// `Z` with invertible imaginary part; the lattice generated by `[I | Z]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodMatrix {
    z: ComplexMatrix,
}

impl PeriodMatrix {
    pub fn new(z: ComplexMatrix, tol: Tolerance) -> Result<Self> {
        if !z.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "period matrix must be square, got {}x{}",
                z.rows(),
                z.cols()
            )));
        }
        if !is_full_rank(&z.im(), tol) {
            return Err(Error::PeriodImaginaryPartSingular);
        }
        Ok(PeriodMatrix { z })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.z
    }

    pub fn dim(&self) -> usize {
        self.z.rows()
    }

    /// Generators `[I | Z]`.
    pub fn lattice(&self, tol: Tolerance) -> Result<LatticeBasis> {
        LatticeBasis::from_generators(ComplexMatrix::identity(self.dim()).hstack(&self.z)?, tol)
    }

    /// `T(x + iy) = x + Re(Z) y + i Im(Z) y`.
    pub fn to_split_form(&self) -> SplitForm {
        SplitForm::new(self.z.re(), self.z.im()).expect("real square parts")
    }
}

pub fn to_split_form(z: &PeriodMatrix) -> SplitForm {
    z.to_split_form()
}

/// For a basis whose first `n` generators `G1` are C-independent, returns
/// `A = G1^{-1}` and `Z = A G2`, so that `A G = [I | Z]`.
pub fn normalize_to_lstarstar(
    l: &LatticeBasis,
    tol: Tolerance,
) -> Result<(ComplexMatrix, PeriodMatrix)> {
    let n = l.n();
    let g = l.generators();
    let a = inverse(&g.columns(0..n), tol).map_err(|_| Error::FirstBlockSingular)?;
    let z = a.matmul(&g.columns(n..2 * n))?;
    Ok((a, PeriodMatrix::new(z, tol)?))
}

/// Output of the full normalization pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedLattice {
    pub permutation: Vec<usize>,
    pub a: ComplexMatrix,
    pub period: PeriodMatrix,
}

/// `permute_to_l1` followed by `normalize_to_lstarstar`.
pub fn normalize_lattice(l: &LatticeBasis, tol: Tolerance) -> Result<NormalizedLattice> {
    let (permuted, permutation) = permute_to_l1(l, tol)?;
    let (a, period) = normalize_to_lstarstar(&permuted, tol)?;
    Ok(NormalizedLattice {
        permutation,
        a,
        period,
    })
}
