//! Exact arithmetic over the Gaussian integers `Z[i]`: fraction-free
//! determinants, adjugates and the determinant-one group `Sigma`.

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{Complex, ComplexMatrix, Tolerance};

/// `re + i im` with integer parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub const ZERO: GaussianInt = GaussianInt { re: 0, im: 0 };
    pub const ONE: GaussianInt = GaussianInt { re: 1, im: 0 };
    pub const I: GaussianInt = GaussianInt { re: 0, im: 1 };
    /// The four units, in the order `1, i, -1, -i`.
    pub const UNITS: [GaussianInt; 4] = [
        GaussianInt { re: 1, im: 0 },
        GaussianInt { re: 0, im: 1 },
        GaussianInt { re: -1, im: 0 },
        GaussianInt { re: 0, im: -1 },
    ];

    pub const fn new(re: i64, im: i64) -> Self {
        GaussianInt { re, im }
    }

    pub fn to_complex(self) -> Complex {
        Complex::new(self.re as f64, self.im as f64)
    }

    pub fn conj(self) -> Self {
        GaussianInt {
            re: self.re,
            im: -self.im,
        }
    }

    /// `re^2 + im^2`.
    pub fn norm(self) -> i128 {
        let (a, b) = (self.re as i128, self.im as i128);
        a * a + b * b
    }

    /// Max of `|re|` and `|im|`.
    pub fn height(self) -> u64 {
        self.re.unsigned_abs().max(self.im.unsigned_abs())
    }

    pub fn inverse_unit(self) -> Option<Self> {
        match (self.re, self.im) {
            (1, 0) | (-1, 0) => Some(self),
            (0, 1) | (0, -1) => Some(GaussianInt::new(0, -self.im)),
            _ => None,
        }
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.re, self.im)
    }
}

/// Wide intermediate used by the fraction-free elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Wide {
    re: i128,
    im: i128,
}

impl Wide {
    const ZERO: Wide = Wide { re: 0, im: 0 };
    const ONE: Wide = Wide { re: 1, im: 0 };

    fn from(g: GaussianInt) -> Self {
        Wide {
            re: g.re as i128,
            im: g.im as i128,
        }
    }

    fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    fn add(self, o: Wide) -> Result<Wide> {
        Ok(Wide {
            re: self.re.checked_add(o.re).ok_or(Error::Overflow)?,
            im: self.im.checked_add(o.im).ok_or(Error::Overflow)?,
        })
    }

    fn sub(self, o: Wide) -> Result<Wide> {
        Ok(Wide {
            re: self.re.checked_sub(o.re).ok_or(Error::Overflow)?,
            im: self.im.checked_sub(o.im).ok_or(Error::Overflow)?,
        })
    }

    fn mul(self, o: Wide) -> Result<Wide> {
        let m = |a: i128, b: i128| a.checked_mul(b).ok_or(Error::Overflow);
        Ok(Wide {
            re: m(self.re, o.re)?
                .checked_sub(m(self.im, o.im)?)
                .ok_or(Error::Overflow)?,
            im: m(self.re, o.im)?
                .checked_add(m(self.im, o.re)?)
                .ok_or(Error::Overflow)?,
        })
    }

    fn neg(self) -> Wide {
        Wide {
            re: -self.re,
            im: -self.im,
        }
    }

    /// Division known to be exact in `Z[i]`.
    fn div_exact(self, d: Wide) -> Result<Wide> {
        let num = self.mul(Wide {
            re: d.re,
            im: -d.im,
        })?;
        let den =
            d.re.checked_mul(d.re)
                .and_then(|x| x.checked_add(d.im.checked_mul(d.im)?))
                .ok_or(Error::Overflow)?;
        assert!(
            den != 0 && num.re % den == 0 && num.im % den == 0,
            "internal error: fraction-free elimination produced an inexact quotient"
        );
        Ok(Wide {
            re: num.re / den,
            im: num.im / den,
        })
    }
}

/// Square matrix with Gaussian-integer entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianMatrix {
    n: usize,
    entries: Vec<GaussianInt>,
}

impl GaussianMatrix {
    pub fn new(n: usize, entries: Vec<GaussianInt>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{n}x{n} matrix needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        Ok(GaussianMatrix { n, entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![GaussianInt::ZERO; n * n];
        for i in 0..n {
            entries[i * n + i] = GaussianInt::ONE;
        }
        GaussianMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> GaussianInt {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[GaussianInt] {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<GaussianInt>> {
        self.entries
            .chunks(self.n.max(1))
            .map(<[GaussianInt]>::to_vec)
            .take(self.n)
            .collect()
    }

    pub fn height(&self) -> u64 {
        self.entries.iter().map(|g| g.height()).max().unwrap_or(0)
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).to_complex())
    }

    /// Rounds every entry to the nearest Gaussian integer.
    ///
    /// Distances up to `tol.abs` are accepted; distances in
    /// `(tol.abs, 10 tol.abs]` are reported as ambiguous.
    pub fn from_complex(m: &ComplexMatrix, tol: Tolerance) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "expected a square matrix, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let n = m.rows();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let z = m[(i, j)];
                let re = round_to_integer(z.re, tol).map_err(|e| e.at(i, j))?;
                let im = round_to_integer(z.im, tol).map_err(|e| e.at(i, j))?;
                entries.push(GaussianInt::new(re, im));
            }
        }
        Ok(GaussianMatrix { n, entries })
    }

    /// Exact determinant (Bareiss fraction-free elimination over `Z[i]`).
    pub fn det(&self) -> Result<(i128, i128)> {
        let w = wide_det(
            self.n,
            self.entries.iter().map(|&g| Wide::from(g)).collect(),
        )?;
        Ok((w.re, w.im))
    }

    /// Exact adjugate: `self * adj = det * I`.
    pub fn adjugate(&self) -> Result<GaussianMatrix> {
        let n = self.n;
        if n == 1 {
            return Ok(GaussianMatrix::identity(1));
        }
        let mut out = vec![GaussianInt::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Wide> = (0..n)
                    .filter(|&r| r != i)
                    .flat_map(|r| (0..n).filter(move |&c| c != j).map(move |c| (r, c)))
                    .map(|(r, c)| Wide::from(self.get(r, c)))
                    .collect();
                let mut cof = wide_det(n - 1, minor)?;
                if (i + j) % 2 == 1 {
                    cof = cof.neg();
                }
                // adj[j][i] = cofactor(i, j)
                out[j * n + i] = narrow(cof)?;
            }
        }
        Ok(GaussianMatrix { n, entries: out })
    }

    pub fn matmul(&self, other: &GaussianMatrix) -> Result<GaussianMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.n, self.n, other.n, other.n
            )));
        }
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Wide::ZERO;
                for k in 0..n {
                    acc = acc.add(Wide::from(self.get(i, k)).mul(Wide::from(other.get(k, j)))?)?;
                }
                out.push(narrow(acc)?);
            }
        }
        Ok(GaussianMatrix { n, entries: out })
    }

    /// `diag(u, 1, ..., 1) * self`.
    pub fn scale_first_row(&self, u: GaussianInt) -> Result<GaussianMatrix> {
        let mut out = self.clone();
        for j in 0..self.n {
            out.entries[j] = narrow(Wide::from(u).mul(Wide::from(self.get(0, j)))?)?;
        }
        Ok(out)
    }
}

fn narrow(w: Wide) -> Result<GaussianInt> {
    Ok(GaussianInt {
        re: i64::try_from(w.re).map_err(|_| Error::Overflow)?,
        im: i64::try_from(w.im).map_err(|_| Error::Overflow)?,
    })
}

fn wide_det(n: usize, mut m: Vec<Wide>) -> Result<Wide> {
    if n == 0 {
        return Ok(Wide::ONE);
    }
    let mut negate = false;
    let mut prev = Wide::ONE;
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !m[r * n + k].is_zero()) {
                Some(r) => {
                    for c in 0..n {
                        m.swap(k * n + c, r * n + c);
                    }
                    negate = !negate;
                }
                None => return Ok(Wide::ZERO),
            }
        }
        let pivot = m[k * n + k];
        for i in k + 1..n {
            for j in k + 1..n {
                let v = pivot
                    .mul(m[i * n + j])?
                    .sub(m[i * n + k].mul(m[k * n + j])?)?;
                m[i * n + j] = v.div_exact(prev)?;
            }
            m[i * n + k] = Wide::ZERO;
        }
        prev = pivot;
    }
    let d = m[n * n - 1];
    Ok(if negate { d.neg() } else { d })
}

/// Integer square matrix (used for `GL_m(Z)` change-of-basis witnesses).
pub fn integer_det(rows: &[Vec<i64>]) -> Result<i128> {
    let n = rows.len();
    let entries = rows
        .iter()
        .flat_map(|r| {
            r.iter().map(|&x| Wide {
                re: x as i128,
                im: 0,
            })
        })
        .collect();
    Ok(wide_det(n, entries)?.re)
}

/// Why a float failed to round to an integer.
#[derive(Debug, Clone, Copy)]
pub(crate) enum RoundingFailure {
    NonIntegral(f64),
    Ambiguous(f64),
}

impl RoundingFailure {
    pub(crate) fn at(self, row: usize, col: usize) -> Error {
        match self {
            RoundingFailure::NonIntegral(distance) => {
                Error::NonIntegralEntry { row, col, distance }
            }
            RoundingFailure::Ambiguous(distance) => {
                Error::AmbiguousIntegrality { row, col, distance }
            }
        }
    }
}

pub(crate) fn round_to_integer(
    x: f64,
    tol: Tolerance,
) -> std::result::Result<i64, RoundingFailure> {
    let r = x.round();
    let distance = (x - r).abs();
    if distance > 10.0 * tol.abs {
        return Err(RoundingFailure::NonIntegral(distance));
    }
    if distance > tol.abs {
        return Err(RoundingFailure::Ambiguous(distance));
    }
    if r.abs() >= 9.0e15 {
        return Err(RoundingFailure::NonIntegral(distance));
    }
    Ok(r as i64)
}

/// Element of `Sigma`: Gaussian-integer matrix with determinant exactly 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianUnimodular {
    matrix: GaussianMatrix,
}

impl GaussianUnimodular {
    pub fn new(matrix: GaussianMatrix) -> Result<Self> {
        let (re, im) = matrix.det()?;
        if (re, im) != (1, 0) {
            return Err(Error::DeterminantNotOne { re, im });
        }
        Ok(GaussianUnimodular { matrix })
    }

    pub fn identity(n: usize) -> Self {
        GaussianUnimodular {
            matrix: GaussianMatrix::identity(n),
        }
    }

    pub fn matrix(&self) -> &GaussianMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        self.matrix.to_complex()
    }

    /// The inverse, which is the adjugate since the determinant is 1.
    pub fn inverse(&self) -> Result<GaussianUnimodular> {
        Ok(GaussianUnimodular {
            matrix: self.matrix.adjugate()?,
        })
    }
}
