//! Equivalence of lattices `A(Z[i]^n)` under unitary maps.
//!
//! `A2 = T A1 B` with `T` unitary and `B` in `Sigma` exactly when
//! `gram(A2) = B* gram(A1) B`, so the search runs over Gram forms. Cheap
//! invariants (covolume, short-vector spectrum) refute first; the bounded
//! search either certifies with a re-verifiable witness or gives up honestly.

use crate::error::{Error, Result};
use crate::gaussian::{GaussianInt, GaussianMatrix, GaussianUnimodular};
use crate::lattice::LatticeBasis;
use crate::numeric::{conditioning_ratio, det, inverse, Complex, ComplexMatrix, Tolerance};
use crate::polar::{classify, gram, polar, GramForm};

/// Largest dimension the Sigma search accepts.
pub const MAX_SEARCH_DIM: usize = 3;
pub const DEFAULT_HEIGHT: u32 = 2;
pub const DEFAULT_RADIUS: f64 = 4.0;
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Relative slack used when comparing short-vector spectra.
const SPECTRUM_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceMode {
    Unitary,
    SpecialUnitary,
}

impl EquivalenceMode {
    pub fn name(self) -> &'static str {
        match self {
            EquivalenceMode::Unitary => "unitary",
            EquivalenceMode::SpecialUnitary => "special_unitary",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "unitary" => Some(EquivalenceMode::Unitary),
            "special_unitary" => Some(EquivalenceMode::SpecialUnitary),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceStatus {
    Equivalent,
    RefutedByInvariant,
    UndecidedUpToBound,
}

impl EquivalenceStatus {
    pub fn name(self) -> &'static str {
        match self {
            EquivalenceStatus::Equivalent => "Equivalent",
            EquivalenceStatus::RefutedByInvariant => "RefutedByInvariant",
            EquivalenceStatus::UndecidedUpToBound => "UndecidedUpToBound",
        }
    }
}

/// Certificate `A2 = T A1 D_u B` with `D_u = diag(unit, 1, .., 1)`.
///
/// `t` is absent for pure Gram-form searches. `unit` is 1 except in unitary
/// mode, where a lattice automorphism of unit determinant may be needed.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub t: Option<ComplexMatrix>,
    pub unit: GaussianInt,
    pub b: GaussianUnimodular,
}

/// Re-verification of a [`Witness`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessCheck {
    /// `||A2 - T A1 D_u B||_F / ||A2||_F`
    pub relative_residual: f64,
    /// `||T*T - I||_F`
    pub unitarity_defect: f64,
    /// exact determinant of `B`
    pub det_b: (i128, i128),
}

impl Witness {
    /// `D_u B`, the full Gaussian-integer change of basis.
    pub fn change_of_basis(&self) -> Result<GaussianMatrix> {
        self.b.matrix().scale_first_row(self.unit)
    }

    pub fn verify(&self, a1: &ComplexMatrix, a2: &ComplexMatrix) -> Result<WitnessCheck> {
        let t = self
            .t
            .as_ref()
            .ok_or_else(|| Error::DimensionMismatch("witness carries no unitary factor".into()))?;
        let c = a1.matmul(&self.change_of_basis()?.to_complex())?;
        let relative_residual = (a2 - &t.matmul(&c)?).frobenius_norm() / a2.frobenius_norm();
        let unitarity_defect =
            (&t.adjoint().matmul(t)? - &ComplexMatrix::identity(t.rows())).frobenius_norm();
        Ok(WitnessCheck {
            relative_residual,
            unitarity_defect,
            det_b: self.b.matrix().det()?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariant {
    Covolume,
    ShortVectorSpectrum,
}

impl Invariant {
    pub fn name(self) -> &'static str {
        match self {
            Invariant::Covolume => "covolume",
            Invariant::ShortVectorSpectrum => "short_vector_spectrum",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InvariantValues {
    Scalar(f64, f64),
    /// squared norms up to the comparison radius
    Spectrum(Vec<f64>, Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Refuter {
    pub invariant: Invariant,
    pub values: InvariantValues,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceVerdict {
    pub status: EquivalenceStatus,
    pub witness: Option<Witness>,
    pub refuter: Option<Refuter>,
    /// height bound `H` of the search
    pub bound: u32,
    pub diagnostics: Vec<String>,
}

impl EquivalenceVerdict {
    fn undecided(bound: u32) -> Self {
        EquivalenceVerdict {
            status: EquivalenceStatus::UndecidedUpToBound,
            witness: None,
            refuter: None,
            bound,
            diagnostics: Vec::new(),
        }
    }

    fn refuted(refuter: Refuter, bound: u32, diagnostics: Vec<String>) -> Self {
        EquivalenceVerdict {
            status: EquivalenceStatus::RefutedByInvariant,
            witness: None,
            refuter: Some(refuter),
            bound,
            diagnostics,
        }
    }
}

/// Ascending squared norms of nonzero lattice vectors within a radius.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortVectorSpectrum {
    pub radius: f64,
    pub norms: Vec<f64>,
}

/// Squared norms `|A l|^2 <= radius` over nonzero `l` in `Z[i]^n`.
///
/// Coefficients are bounded by the box `|x_k| <= sqrt(radius) ||row_k(R^{-1})||`
/// for the realified generators `R`; the box size is checked against
/// `budget`. Inside the box the search prunes with a triangular factor of `R`.
pub fn short_vectors(a: &ComplexMatrix, radius: f64, budget: u64) -> Result<ShortVectorSpectrum> {
    let tol = Tolerance::default();
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if !radius.is_finite() || radius < 0.0 {
        return Err(Error::NonFinite {
            context: "short-vector radius",
        });
    }
    inverse(a, tol)?;
    let r = LatticeBasis::from_complex_linear(a, tol)?.realification();
    let mut norms = enumerate_norms(&r, radius, budget, tol)?;
    norms.sort_by(f64::total_cmp);
    Ok(ShortVectorSpectrum { radius, norms })
}

fn enumerate_norms(
    r: &ComplexMatrix,
    radius: f64,
    budget: u64,
    tol: Tolerance,
) -> Result<Vec<f64>> {
    let m = r.rows();
    let rows: Vec<Vec<f64>> = (0..m)
        .map(|i| (0..m).map(|j| r[(i, j)].re).collect())
        .collect();
    let r_inv = inverse(r, tol)?;
    let sqrt_r = radius.sqrt();
    let mut bounds = Vec::with_capacity(m);
    let mut estimate: u128 = 1;
    for k in 0..m {
        let row_norm = (0..m).map(|j| r_inv[(k, j)].norm_sqr()).sum::<f64>().sqrt();
        let b = (sqrt_r * row_norm * (1.0 + 1e-9)).floor();
        if b.is_nan() || b >= 1e15 {
            return Err(Error::RadiusBudgetExceeded {
                estimate: u128::MAX,
                budget: budget as u128,
            });
        }
        let b = b as i64;
        bounds.push(b);
        estimate = estimate.saturating_mul(2 * b as u128 + 1);
    }
    if estimate > budget as u128 {
        return Err(Error::RadiusBudgetExceeded {
            estimate,
            budget: budget as u128,
        });
    }
    let u = upper_factor(&rows);
    let mut out = Vec::new();
    let mut x = vec![0i64; m];
    let mut search = Enumeration {
        rows: &rows,
        u: &u,
        bounds: &bounds,
        radius,
        out: &mut out,
    };
    search.descend(m, 0.0, &mut x);
    Ok(out)
}

/// Upper-triangular `U` with `R = Q U` (modified Gram-Schmidt).
fn upper_factor(rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let m = rows.len();
    let mut q: Vec<Vec<f64>> = (0..m)
        .map(|j| (0..m).map(|i| rows[i][j]).collect())
        .collect();
    let mut u = vec![vec![0.0; m]; m];
    for j in 0..m {
        for i in 0..j {
            let dot: f64 = q[i].iter().zip(&q[j]).map(|(a, b)| a * b).sum();
            u[i][j] = dot;
            let qi = q[i].clone();
            for (v, w) in q[j].iter_mut().zip(&qi) {
                *v -= dot * w;
            }
        }
        let norm = q[j].iter().map(|v| v * v).sum::<f64>().sqrt();
        u[j][j] = norm;
        for v in &mut q[j] {
            *v /= norm;
        }
    }
    u
}

struct Enumeration<'a> {
    rows: &'a [Vec<f64>],
    u: &'a [Vec<f64>],
    bounds: &'a [i64],
    radius: f64,
    out: &'a mut Vec<f64>,
}

impl Enumeration<'_> {
    /// Coordinates `level..m` are fixed; `partial` is their contribution to `|U x|^2`.
    fn descend(&mut self, level: usize, partial: f64, x: &mut [i64]) {
        if level == 0 {
            if x.iter().all(|&v| v == 0) {
                return;
            }
            let norm: f64 = self
                .rows
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(x.iter())
                        .map(|(a, &b)| a * b as f64)
                        .sum::<f64>()
                        .powi(2)
                })
                .sum();
            if norm <= self.radius {
                self.out.push(norm);
            }
            return;
        }
        let i = level - 1;
        let s: f64 = (level..x.len()).map(|j| self.u[i][j] * x[j] as f64).sum();
        let rem = (self.radius - partial).max(0.0);
        let span = rem.sqrt();
        let d = self.u[i][i];
        let slack = 1e-7 * (1.0 + span + s.abs()) / d;
        let lo = ((-s - span) / d - slack)
            .ceil()
            .max(-(self.bounds[i] as f64)) as i64;
        let hi = ((-s + span) / d + slack).floor().min(self.bounds[i] as f64) as i64;
        for v in lo..=hi {
            x[i] = v;
            let term = (d * v as f64 + s).powi(2);
            self.descend(i, partial + term, x);
        }
        x[i] = 0;
    }
}

/// `B* P1 B = P2` for some `B` in `Sigma` with entries of height `<= height`.
pub fn sigma_orbit_equal(
    p1: &GramForm,
    p2: &GramForm,
    height: u32,
    tol: Tolerance,
) -> Result<EquivalenceVerdict> {
    sigma_orbit_search(
        p1.matrix(),
        p2.matrix(),
        height,
        DEFAULT_BUDGET,
        tol,
        |_| true,
    )
}

/// Same as [`sigma_orbit_equal`] with an explicit node budget.
pub fn sigma_orbit_equal_with_budget(
    p1: &GramForm,
    p2: &GramForm,
    height: u32,
    budget: u64,
    tol: Tolerance,
) -> Result<EquivalenceVerdict> {
    sigma_orbit_search(p1.matrix(), p2.matrix(), height, budget, tol, |_| true)
}

/// Column-wise complete search of the height box.
///
/// Column `j` of `B` ranges over vectors `v` with `v* P1 v ~ P2_jj`, nearest
/// to `e_j` first, then lexicographically. Off-diagonal constraints prune
/// partial matrices, and the exact determinant is checked at the leaves.
/// `accept` may reject a candidate, in which case the search continues.
fn sigma_orbit_search(
    p1: &ComplexMatrix,
    p2: &ComplexMatrix,
    height: u32,
    budget: u64,
    tol: Tolerance,
    mut accept: impl FnMut(&GaussianUnimodular) -> bool,
) -> Result<EquivalenceVerdict> {
    let n = p1.rows();
    if !p1.is_square() || p2.rows() != n || p2.cols() != n {
        return Err(Error::DimensionMismatch(
            "Gram forms of different sizes".into(),
        ));
    }
    if n > MAX_SEARCH_DIM {
        return Err(Error::DimensionTooLarge {
            n,
            cap: MAX_SEARCH_DIM,
        });
    }
    let side = 2 * height as u128 + 1;
    let estimate = side
        .checked_pow(2 * n as u32)
        .and_then(|v| v.checked_mul(n as u128))
        .unwrap_or(u128::MAX);
    if estimate > budget as u128 || height > i32::MAX as u32 {
        return Err(Error::HeightTooLarge {
            height,
            estimate,
            budget: budget as u128,
        });
    }

    let scale1 = p1.frobenius_norm();
    let scale2 = p2.frobenius_norm();
    let entry_bound = |ni: f64, nj: f64| tol.rel * (scale1 * ni * nj + scale2) + tol.abs;

    let vectors = box_vectors(n, height as i64);
    let mut columns: Vec<Vec<Candidate>> = vec![Vec::new(); n];
    for v in &vectors {
        let c: Vec<Complex> = v.iter().map(|g| g.to_complex()).collect();
        let pv = p1.mul_vec(&c)?;
        let q: Complex = c.iter().zip(&pv).map(|(a, b)| a.conj() * b).sum();
        let len = c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for (j, col) in columns.iter_mut().enumerate() {
            if (q - p2[(j, j)]).norm() <= entry_bound(len, len) {
                col.push(Candidate {
                    entries: v.clone(),
                    complex: c.clone(),
                    p1v: pv.clone(),
                    len,
                });
            }
        }
    }
    for (j, col) in columns.iter_mut().enumerate() {
        col.sort_by(|a, b| {
            distance_to_unit(&a.entries, j)
                .cmp(&distance_to_unit(&b.entries, j))
                .then_with(|| lex_key(&a.entries).cmp(&lex_key(&b.entries)))
        });
    }

    let mut state = Search {
        columns: &columns,
        p2,
        entry_bound: &entry_bound,
        nodes: 0,
        budget,
        height,
        chosen: Vec::with_capacity(n),
    };
    match state.run(&mut accept)? {
        Some(b) => Ok(EquivalenceVerdict {
            status: EquivalenceStatus::Equivalent,
            witness: Some(Witness {
                t: None,
                unit: GaussianInt::ONE,
                b,
            }),
            refuter: None,
            bound: height,
            diagnostics: Vec::new(),
        }),
        None => Ok(EquivalenceVerdict::undecided(height)),
    }
}

#[derive(Clone)]
struct Candidate {
    entries: Vec<GaussianInt>,
    complex: Vec<Complex>,
    p1v: Vec<Complex>,
    len: f64,
}

fn box_vectors(n: usize, h: i64) -> Vec<Vec<GaussianInt>> {
    let mut out = Vec::new();
    let mut coords = vec![-h; 2 * n];
    loop {
        out.push(
            (0..n)
                .map(|k| GaussianInt::new(coords[2 * k], coords[2 * k + 1]))
                .collect(),
        );
        let mut k = 2 * n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if coords[k] < h {
                coords[k] += 1;
                break;
            }
            coords[k] = -h;
        }
    }
}

fn distance_to_unit(v: &[GaussianInt], j: usize) -> i128 {
    v.iter()
        .enumerate()
        .map(|(k, g)| {
            let re = g.re as i128 - i128::from(k == j);
            re * re + (g.im as i128).pow(2)
        })
        .sum()
}

fn lex_key(v: &[GaussianInt]) -> Vec<i64> {
    v.iter().flat_map(|g| [g.re, g.im]).collect()
}

struct Search<'a, F: Fn(f64, f64) -> f64> {
    columns: &'a [Vec<Candidate>],
    p2: &'a ComplexMatrix,
    entry_bound: &'a F,
    nodes: u64,
    budget: u64,
    height: u32,
    chosen: Vec<&'a Candidate>,
}

impl<'a, F: Fn(f64, f64) -> f64> Search<'a, F> {
    fn run(
        &mut self,
        accept: &mut impl FnMut(&GaussianUnimodular) -> bool,
    ) -> Result<Option<GaussianUnimodular>> {
        let j = self.chosen.len();
        let n = self.columns.len();
        if j == n {
            let entries: Vec<GaussianInt> = (0..n)
                .flat_map(|row| self.chosen.iter().map(move |c| c.entries[row]))
                .collect();
            let m = GaussianMatrix::new(n, entries)?;
            if m.det()? != (1, 0) {
                return Ok(None);
            }
            let b = GaussianUnimodular::new(m)?;
            return Ok(accept(&b).then_some(b));
        }
        for cand in &self.columns[j] {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::HeightTooLarge {
                    height: self.height,
                    estimate: self.nodes as u128,
                    budget: self.budget as u128,
                });
            }
            let consistent = self.chosen.iter().enumerate().all(|(i, prev)| {
                let cross: Complex = prev
                    .complex
                    .iter()
                    .zip(&cand.p1v)
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                (cross - self.p2[(i, j)]).norm() <= (self.entry_bound)(prev.len, cand.len)
            });
            if !consistent {
                continue;
            }
            self.chosen.push(cand);
            let found = self.run(accept)?;
            self.chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

/// Options for [`lattice_equivalent`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceOptions {
    pub height: u32,
    pub radius: f64,
    pub budget: u64,
    pub tol: Tolerance,
}

impl Default for EquivalenceOptions {
    fn default() -> Self {
        EquivalenceOptions {
            height: DEFAULT_HEIGHT,
            radius: DEFAULT_RADIUS,
            budget: DEFAULT_BUDGET,
            tol: Tolerance::DEFAULT,
        }
    }
}

/// Decides whether `T(A1(Z[i]^n)) = A2(Z[i]^n)` for a unitary (or special
/// unitary) `T`, up to the search height.
///
/// Covolume and short-vector spectra are compared first. The Gram search then
/// looks for `B` in `Sigma`; in unitary mode it also tries `A1 D_u` for the
/// four units `u`. A candidate is kept only if the reconstructed `T`, projected
/// to its unitary polar factor, reproduces `A2` within `10 tol.rel ||A2||`.
pub fn lattice_equivalent(
    a1: &ComplexMatrix,
    a2: &ComplexMatrix,
    mode: EquivalenceMode,
    options: EquivalenceOptions,
) -> Result<EquivalenceVerdict> {
    let tol = options.tol;
    if !a1.is_square() || a1.rows() != a2.rows() || a2.cols() != a2.rows() {
        return Err(Error::DimensionMismatch(
            "lattice matrices must be square and of equal size".into(),
        ));
    }
    inverse(a1, tol)?;
    inverse(a2, tol)?;
    if mode == EquivalenceMode::SpecialUnitary {
        for a in [a1, a2] {
            let membership = classify(a, tol)?;
            if !membership.in_sl {
                return Err(Error::NotInSL {
                    det_defect: membership.det_defect,
                });
            }
        }
    }
    let n = a1.rows();
    let mut diagnostics = Vec::new();

    let (c1, e1) = covolume_with_error(a1, tol)?;
    let (c2, e2) = covolume_with_error(a2, tol)?;
    if (c1 - c2).abs() > e1 + e2 + tol.rel * c1.max(c2) {
        let refuter = Refuter {
            invariant: Invariant::Covolume,
            values: InvariantValues::Scalar(c1, c2),
        };
        return Ok(EquivalenceVerdict::refuted(
            refuter,
            options.height,
            diagnostics,
        ));
    }

    let r = options.radius;
    let widened = r * (1.0 + SPECTRUM_SLACK);
    match (
        short_vectors(a1, widened, options.budget),
        short_vectors(a2, widened, options.budget),
    ) {
        (Ok(s1), Ok(s2)) => {
            if !spectra_agree(&s1.norms, &s2.norms, r) || !spectra_agree(&s2.norms, &s1.norms, r) {
                let cut = |s: &[f64]| s.iter().copied().filter(|&v| v <= r).collect();
                let refuter = Refuter {
                    invariant: Invariant::ShortVectorSpectrum,
                    values: InvariantValues::Spectrum(cut(&s1.norms), cut(&s2.norms)),
                };
                return Ok(EquivalenceVerdict::refuted(
                    refuter,
                    options.height,
                    diagnostics,
                ));
            }
        }
        (Err(Error::RadiusBudgetExceeded { estimate, budget }), _)
        | (_, Err(Error::RadiusBudgetExceeded { estimate, budget })) => {
            diagnostics.push(format!(
                "short-vector refuter skipped: box of {estimate} points exceeds budget {budget}"
            ));
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    }

    let p2 = gram(a2, tol)?;
    let units: &[GaussianInt] = match mode {
        EquivalenceMode::Unitary => &GaussianInt::UNITS,
        EquivalenceMode::SpecialUnitary => &[GaussianInt::ONE],
    };
    let a2_norm = a2.frobenius_norm();
    for &unit in units {
        let mut scaled = a1.clone();
        for i in 0..n {
            scaled[(i, 0)] *= unit.to_complex();
        }
        let p1 = gram(&scaled, tol)?;
        let mut found_t = None;
        let verdict = sigma_orbit_search(
            p1.matrix(),
            p2.matrix(),
            options.height,
            options.budget,
            tol,
            |b| match reconstruct_unitary(&scaled, a2, b, tol) {
                Ok(Some((t, residual)))
                    if residual <= 10.0 * tol.rel * a2_norm
                        && (mode == EquivalenceMode::Unitary || det_is_one(&t, tol)) =>
                {
                    found_t = Some(t);
                    true
                }
                _ => false,
            },
        )?;
        if let Some(mut witness) = verdict.witness {
            witness.t = found_t;
            witness.unit = unit;
            return Ok(EquivalenceVerdict {
                status: EquivalenceStatus::Equivalent,
                witness: Some(witness),
                refuter: None,
                bound: options.height,
                diagnostics,
            });
        }
    }
    let mut verdict = EquivalenceVerdict::undecided(options.height);
    verdict.diagnostics = diagnostics;
    Ok(verdict)
}

/// `|det A|^2` and a rounding-error estimate for it.
fn covolume_with_error(a: &ComplexMatrix, tol: Tolerance) -> Result<(f64, f64)> {
    let c = det(a)?.norm_sqr();
    let (min, max) = conditioning_ratio(a, tol);
    let cond = if min > 0.0 { max / min } else { f64::INFINITY };
    Ok((c, 8.0 * a.rows() as f64 * f64::EPSILON * cond * c))
}

/// Every entry of `s` up to `radius` matches the entry of `other` at the same
/// sorted position. `other` must be enumerated slightly past `radius`.
fn spectra_agree(s: &[f64], other: &[f64], radius: f64) -> bool {
    let head = s.iter().take_while(|&&v| v <= radius);
    let mut count = 0;
    for (k, &v) in head.enumerate() {
        count += 1;
        match other.get(k) {
            Some(&w) if (v - w).abs() <= SPECTRUM_SLACK * radius.max(f64::MIN_POSITIVE) => {}
            _ => return false,
        }
    }
    count <= other.len()
}

/// Unitary polar factor of `A2 (A1 B)^{-1}` and the residual `||A2 - T A1 B||_F`.
fn reconstruct_unitary(
    a1: &ComplexMatrix,
    a2: &ComplexMatrix,
    b: &GaussianUnimodular,
    tol: Tolerance,
) -> Result<Option<(ComplexMatrix, f64)>> {
    let c = a1.matmul(&b.to_complex())?;
    let t0 = a2.matmul(&inverse(&c, tol)?)?;
    let (t, _) = polar(&t0, tol)?;
    let unitarity =
        (&t.adjoint().matmul(&t)? - &ComplexMatrix::identity(t.rows())).frobenius_norm();
    if unitarity > tol.rel {
        return Ok(None);
    }
    let residual = (a2 - &t.matmul(&c)?).frobenius_norm();
    Ok(Some((t, residual)))
}

fn det_is_one(t: &ComplexMatrix, tol: Tolerance) -> bool {
    det(t)
        .map(|d| (d - Complex::new(1.0, 0.0)).norm() <= 4.0 * tol.rel * t.rows() as f64)
        .unwrap_or(false)
}
