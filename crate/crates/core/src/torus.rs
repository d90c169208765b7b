//! The complex torus `C^n / L` as an additive group.
//!
//! Points are stored by their coordinates in the half-open parallelepiped
//! `[0, 1)^{2n}` spanned by the generators. Coordinates are snapped to the
//! dyadic grid `2^-32`, which makes reduction idempotent bit for bit and
//! keeps coordinate addition exact.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{same_lattice, LatticeBasis};
use crate::numeric::{solve, Complex, ComplexMatrix, Tolerance};

const GRID: f64 = 4_294_967_296.0; // 2^32

#[derive(Debug, Clone, PartialEq)]
pub struct TorusPoint {
    lattice: Arc<LatticeBasis>,
    rep: Vec<Complex>,
    coords: Vec<f64>,
}

impl TorusPoint {
    pub fn zero(lattice: Arc<LatticeBasis>) -> Self {
        let n = lattice.n();
        TorusPoint {
            lattice,
            rep: vec![Complex::new(0.0, 0.0); n],
            coords: vec![0.0; 2 * n],
        }
    }

    pub fn lattice(&self) -> &Arc<LatticeBasis> {
        &self.lattice
    }

    /// Representative in the fundamental parallelepiped.
    pub fn rep(&self) -> &[Complex] {
        &self.rep
    }

    /// Generator coordinates, each in `[0, 1)`.
    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    fn from_coords(lattice: Arc<LatticeBasis>, coords: Vec<f64>) -> Self {
        let c: Vec<Complex> = coords.iter().map(|&x| Complex::new(x, 0.0)).collect();
        let rep = lattice
            .generators()
            .mul_vec(&c)
            .expect("coordinate vector has 2n entries");
        TorusPoint {
            lattice,
            rep,
            coords,
        }
    }
}

/// Fractional part snapped to the grid, with values that round to 1 wrapped to 0.
fn wrap(x: f64) -> f64 {
    let f = x - x.floor();
    let q = (f * GRID).round() / GRID;
    if q >= 1.0 {
        0.0
    } else {
        q
    }
}

fn coordinates(l: &LatticeBasis, z: &[Complex], tol: Tolerance) -> Result<Vec<f64>> {
    let n = l.n();
    if z.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "point has {} entries, lattice lives in C^{n}",
            z.len()
        )));
    }
    if !z.iter().all(|w| w.re.is_finite() && w.im.is_finite()) {
        return Err(Error::NonFinite {
            context: "torus point",
        });
    }
    let rhs = ComplexMatrix::column_vector(z).realify();
    let c = solve(&l.realification(), &rhs, tol)?;
    Ok((0..2 * n).map(|k| c[(k, 0)].re).collect())
}

fn distance_to_integer(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Reduces `z` modulo the lattice.
///
/// Panics if `z - rep` fails to have integral coordinates within `tol.rel`,
/// which would mean the linear solve itself is broken.
pub fn reduce(l: &Arc<LatticeBasis>, z: &[Complex], tol: Tolerance) -> Result<TorusPoint> {
    let c = coordinates(l, z, tol)?;
    let coords: Vec<f64> = c.iter().map(|&x| wrap(x)).collect();
    let worst = c
        .iter()
        .zip(&coords)
        .map(|(a, b)| distance_to_integer(a - b))
        .fold(0.0, f64::max);
    assert!(
        worst <= tol.rel,
        "internal error: z - rep is off the lattice by {worst:e} in coordinates"
    );
    Ok(TorusPoint::from_coords(Arc::clone(l), coords))
}

/// Bases describe the same lattice: same allocation, equal generators, or an
/// integral unimodular change of basis.
fn compatible(p: &TorusPoint, q: &TorusPoint, tol: Tolerance) -> Result<bool> {
    if Arc::ptr_eq(&p.lattice, &q.lattice) || p.lattice == q.lattice {
        return Ok(true);
    }
    if p.lattice.n() != q.lattice.n() {
        return Err(Error::LatticeMismatch);
    }
    if same_lattice(&p.lattice, &q.lattice, tol)?.is_same() {
        Ok(false)
    } else {
        Err(Error::LatticeMismatch)
    }
}

/// `p + q` on the torus of `p`'s basis.
///
/// With a common basis the grid coordinates are added exactly; otherwise
/// `p.rep + q.rep` is reduced.
pub fn torus_add(p: &TorusPoint, q: &TorusPoint, tol: Tolerance) -> Result<TorusPoint> {
    if compatible(p, q, tol)? {
        let coords = p
            .coords
            .iter()
            .zip(&q.coords)
            .map(|(a, b)| wrap(a + b))
            .collect();
        return Ok(TorusPoint::from_coords(Arc::clone(&p.lattice), coords));
    }
    let sum: Vec<Complex> = p.rep.iter().zip(&q.rep).map(|(a, b)| a + b).collect();
    reduce(&p.lattice, &sum, tol)
}

pub fn torus_neg(p: &TorusPoint) -> TorusPoint {
    let coords = p.coords.iter().map(|&c| wrap(-c)).collect();
    TorusPoint::from_coords(Arc::clone(&p.lattice), coords)
}

/// Coordinate differences are within `tol.rel` of integers.
pub fn torus_eq(p: &TorusPoint, q: &TorusPoint, tol: Tolerance) -> Result<bool> {
    let q_coords = if compatible(p, q, tol)? {
        q.coords.clone()
    } else {
        coordinates(&p.lattice, &q.rep, tol)?
    };
    Ok(p.coords
        .iter()
        .zip(&q_coords)
        .all(|(a, b)| distance_to_integer(a - b) <= tol.rel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::I;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn tau_lattice(tau: Complex) -> Arc<LatticeBasis> {
        let g = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), tau]]).unwrap();
        Arc::new(LatticeBasis::from_generators(g, tol()).unwrap())
    }

    #[test]
    fn reduce_examples() {
        let std = Arc::new(LatticeBasis::standard(1));
        let p = reduce(&std, &[c(2.5, 3.25)], tol()).unwrap();
        assert_eq!(p.rep(), &[c(0.5, 0.25)]);
        assert_eq!(p.coords(), &[0.5, 0.25]);

        let tau = c(0.3, 1.7);
        let l = tau_lattice(tau);
        let z = c(3.25, 0.0) + tau * 2.5;
        let p = reduce(&l, &[z], tol()).unwrap();
        assert_eq!(p.coords(), &[0.25, 0.5]);
        assert!((p.rep()[0] - (c(0.25, 0.0) + tau * 0.5)).norm() < 1e-15);

        let point = l.point(&[-7, 4]).unwrap();
        assert_eq!(
            reduce(&l, &point, tol()).unwrap(),
            TorusPoint::zero(Arc::clone(&l))
        );
    }

    #[test]
    fn reduce_is_idempotent() {
        let l = tau_lattice(c(-0.41, 0.93));
        for k in 0..50 {
            let z = c(0.37 * k as f64 - 5.0, 1.3 - 0.11 * k as f64);
            let p = reduce(&l, &[z], tol()).unwrap();
            assert_eq!(reduce(&l, p.rep(), tol()).unwrap(), p);
        }
    }

    #[test]
    fn addition_examples() {
        let std = Arc::new(LatticeBasis::standard(1));
        let half = reduce(&std, &[c(0.5, 0.0)], tol()).unwrap();
        let zero = TorusPoint::zero(Arc::clone(&std));
        assert_eq!(torus_add(&half, &zero, tol()).unwrap(), half);
        assert_eq!(torus_add(&half, &half, tol()).unwrap(), zero);
        assert_eq!(torus_add(&half, &torus_neg(&half), tol()).unwrap(), zero);
    }

    #[test]
    fn addition_across_equal_lattices() {
        let std = Arc::new(LatticeBasis::standard(1));
        let swapped = Arc::new(
            LatticeBasis::from_generators(
                ComplexMatrix::from_rows(&[vec![I, c(1.0, 0.0)]]).unwrap(),
                tol(),
            )
            .unwrap(),
        );
        let p = reduce(&std, &[c(0.25, 0.5)], tol()).unwrap();
        let q = reduce(&swapped, &[c(0.5, 0.25)], tol()).unwrap();
        let s = torus_add(&p, &q, tol()).unwrap();
        assert_eq!(s.coords(), &[0.75, 0.75]);
        assert!(torus_eq(&q, &reduce(&std, &[c(0.5, 0.25)], tol()).unwrap(), tol()).unwrap());

        let other = tau_lattice(c(0.3, 1.7));
        let r = reduce(&other, &[c(0.1, 0.1)], tol()).unwrap();
        assert_eq!(
            torus_add(&p, &r, tol()).unwrap_err(),
            Error::LatticeMismatch
        );
        assert_eq!(torus_eq(&p, &r, tol()).unwrap_err(), Error::LatticeMismatch);
    }

    #[test]
    fn equality_examples() {
        let std = Arc::new(LatticeBasis::standard(1));
        let a = reduce(&std, &[c(0.25, 0.0)], tol()).unwrap();
        let b = reduce(&std, &[c(0.5, 0.0)], tol()).unwrap();
        assert!(!torus_eq(&a, &b, tol()).unwrap());
        assert!(torus_eq(&a, &reduce(&std, &[c(3.25, -2.0)], tol()).unwrap(), tol()).unwrap());

        let near_one = reduce(&std, &[c(1.0 - 1e-13, 0.0)], tol()).unwrap();
        assert_eq!(near_one.coords(), &[0.0, 0.0]);
        assert!(torus_eq(&near_one, &TorusPoint::zero(Arc::clone(&std)), tol()).unwrap());
    }

    #[test]
    fn wraparound_in_equality() {
        let std = Arc::new(LatticeBasis::standard(1));
        let zero = TorusPoint::zero(Arc::clone(&std));
        let almost = TorusPoint {
            lattice: Arc::clone(&std),
            rep: vec![c(1.0 - 1e-13, 0.0)],
            coords: vec![1.0 - 1e-13, 0.0],
        };
        assert!(torus_eq(&zero, &almost, tol()).unwrap());
    }

    #[test]
    fn wrap_handles_negative_zero_and_grid() {
        assert_eq!(wrap(-1e-17), 0.0);
        assert_eq!(wrap(-0.25), 0.75);
        assert_eq!(wrap(7.0), 0.0);
        assert_eq!(wrap(0.1) * GRID, (0.1 * GRID).round());
    }
}
