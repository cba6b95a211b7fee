//! Integer lattices in `Z^m`: canonical bases, sums, intersections, preimages
//! and presentations of quotients.

pub mod field;
pub mod matrix;
pub mod normal_form;

use num_bigint::BigInt;

pub use matrix::{int_matrix, int_vec, IntegerMatrix, Matrix};
pub use normal_form::{
    hermite, hermite_with_transform, left_kernel, right_kernel, smith, Hermite, Smith,
};

use crate::error::{Error, Result};
use crate::scalar::IntegerScalar;

/// A sublattice of `T^m` held as a row Hermite basis.
///
/// The basis is canonical, so `==` is lattice equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice<T = BigInt> {
    ambient_dim: usize,
    basis: Matrix<T>,
    pivots: Vec<usize>,
}

pub type IntegerLattice = Lattice<BigInt>;

impl<T: IntegerScalar> Lattice<T> {
    pub fn from_generators(generators: &Matrix<T>) -> Self {
        let h = hermite(generators);
        Lattice {
            ambient_dim: generators.cols(),
            basis: h.basis,
            pivots: h.pivots,
        }
    }

    pub fn from_rows(ambient_dim: usize, rows: Vec<Vec<T>>) -> Self {
        Lattice::from_generators(&Matrix::from_rows(ambient_dim, rows))
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Lattice {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Lattice::coordinate(ambient_dim, &(0..ambient_dim).collect::<Vec<_>>())
    }

    /// Span of the given standard basis vectors.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let mut basis = Matrix::zeros(idx.len(), ambient_dim);
        for (r, &i) in idx.iter().enumerate() {
            basis[(r, i)] = T::one();
        }
        Lattice {
            ambient_dim,
            basis,
            pivots: idx,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    /// Coefficients of `v` in the basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        assert_eq!(v.len(), self.ambient_dim, "vector outside ambient space");
        let mut rest = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (k, &p) in self.pivots.iter().enumerate() {
            let (q, r) = rest[p].div_rem(&self.basis[(k, p)]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (j, b) in self.basis.row(k).iter().enumerate().skip(p) {
                    if !b.is_zero() {
                        rest[j] = rest[j].clone() - q.clone() * b.clone();
                    }
                }
            }
            coords.push(q);
        }
        rest.iter().all(|x| x.is_zero()).then_some(coords)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, other: &Self) -> bool {
        other.ambient_dim == self.ambient_dim && other.basis.iter_rows().all(|r| self.contains(r))
    }

    /// Linear combination of basis vectors.
    pub fn vector(&self, coords: &[T]) -> Vec<T> {
        self.basis.apply(coords)
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::InvalidInput(format!(
                "lattices live in different ambient spaces ({} vs {})",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Lattice::from_generators(&self.basis.vstack(&other.basis)))
    }

    /// Intersection, via the left kernel of the stacked bases.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if self.rank() == 0 || other.rank() == 0 {
            return Ok(Lattice::zero(self.ambient_dim));
        }
        let k = left_kernel(&self.basis.vstack(&other.basis));
        let c = k.select_cols(&(0..self.rank()).collect::<Vec<_>>());
        Ok(Lattice::from_generators(&c.mul(&self.basis)))
    }

    /// Image of the lattice under `x -> x * map`.
    pub fn image(&self, map: &Matrix<T>) -> Lattice<T> {
        assert_eq!(map.rows(), self.ambient_dim, "map does not start here");
        Lattice::from_generators(&self.basis.mul(map))
    }

    /// `{x in self : x * map in target}`.
    pub fn preimage(&self, map: &Matrix<T>, target: &Lattice<T>) -> Lattice<T> {
        assert_eq!(map.rows(), self.ambient_dim, "map does not start here");
        assert_eq!(map.cols(), target.ambient_dim, "map does not land in target");
        if self.rank() == 0 {
            return self.clone();
        }
        let w = self.basis.mul(map);
        let k = left_kernel(&w.vstack(&target.basis));
        let c = k.select_cols(&(0..self.rank()).collect::<Vec<_>>());
        Lattice::from_generators(&c.mul(&self.basis))
    }

    /// True when `Z^m / L` is torsion free, i.e. all invariant factors are 1.
    pub fn is_saturated(&self) -> bool {
        smith(&self.basis)
            .invariant_factors
            .iter()
            .all(|d| d.is_one())
    }

    /// Coordinates of another lattice's basis in this basis (`sub` must be contained).
    pub fn coordinates_of(&self, sub: &Lattice<T>) -> Result<Matrix<T>> {
        let mut rows = Vec::with_capacity(sub.rank());
        for r in sub.basis.iter_rows() {
            rows.push(self.coordinates(r).ok_or_else(|| {
                Error::NotContained("lattice is not contained in the enclosing lattice".into())
            })?);
        }
        Ok(Matrix::from_rows(self.rank(), rows))
    }
}

/// Which of the two lattice operations [`lattice_meet_join`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeetJoin {
    Sum,
    Intersection,
}

pub fn lattice_meet_join<T: IntegerScalar>(
    a: &Lattice<T>,
    b: &Lattice<T>,
    op: MeetJoin,
) -> Result<Lattice<T>> {
    match op {
        MeetJoin::Sum => a.sum(b),
        MeetJoin::Intersection => a.intersection(b),
    }
}

pub fn kernel_lattice<T: IntegerScalar>(m: &Matrix<T>) -> Lattice<T> {
    let cols = m.cols();
    let basis = right_kernel(m);
    Lattice::from_generators(&Matrix::from_rows(cols, basis.to_rows()))
}

pub fn smith_normal_form<T: IntegerScalar>(m: &Matrix<T>) -> Smith<T> {
    smith(m)
}

/// Presentation of `sup / sub` as `T^rank + sum T/d_i`.
#[derive(Clone, Debug)]
pub struct QuotientPresentation<T = BigInt> {
    pub rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<T>,
    /// Ambient vectors of `sup` whose classes generate the quotient: first one
    /// per torsion factor (in order), then the free generators.
    pub lift_basis: Matrix<T>,
    sup: Lattice<T>,
    /// Coordinate change from `sup`'s basis to the adapted basis.
    v: Matrix<T>,
    /// Diagonal entries of the adapted relation matrix, padded with zeros.
    diagonal: Vec<T>,
}

impl<T: IntegerScalar> QuotientPresentation<T> {
    pub fn sup(&self) -> &Lattice<T> {
        &self.sup
    }

    /// Class of an element of `sup`: free coordinates and torsion residues
    /// (each residue reduced into `0..d_i`).
    pub fn class_of(&self, v: &[T]) -> Option<(Vec<T>, Vec<T>)> {
        let a = self.sup.coordinates(v)?;
        let adapted = self.v.apply(&a);
        let mut free = Vec::new();
        let mut torsion = Vec::new();
        for (x, d) in adapted.into_iter().zip(&self.diagonal) {
            if d.is_zero() {
                free.push(x);
            } else if !d.is_one() {
                torsion.push(x.mod_floor(d));
            }
        }
        Some((free, torsion))
    }

    /// True when `v` (in `sup`) represents the zero class.
    pub fn is_trivial_class(&self, v: &[T]) -> Option<bool> {
        self.class_of(v)
            .map(|(f, t)| f.iter().all(|x| x.is_zero()) && t.iter().all(|x| x.is_zero()))
    }
}

/// Presents `sup / sub`; fails if `sub` is not contained in `sup`.
pub fn quotient_presentation<T: IntegerScalar>(
    sub: &Lattice<T>,
    sup: &Lattice<T>,
) -> Result<QuotientPresentation<T>> {
    if sub.ambient_dim != sup.ambient_dim {
        return Err(Error::InvalidInput("quotient of lattices in different ambients".into()));
    }
    let k = sup.coordinates_of(sub)?;
    let r = sup.rank();
    let s = smith(&k);
    // U K V = D, so sub is spanned by d_i times the rows of V^-1 * basis(sup).
    let adapted = s.v_inverse.mul(&sup.basis);
    let mut diagonal = vec![T::zero(); r];
    for (i, d) in s.invariant_factors.iter().enumerate() {
        diagonal[i] = d.clone();
    }
    let mut lifts = Vec::new();
    let mut torsion = Vec::new();
    for (i, d) in diagonal.iter().enumerate() {
        if !d.is_zero() && !d.is_one() {
            torsion.push(d.clone());
            lifts.push(adapted.row(i).to_vec());
        }
    }
    for (i, d) in diagonal.iter().enumerate() {
        if d.is_zero() {
            lifts.push(adapted.row(i).to_vec());
        }
    }
    Ok(QuotientPresentation {
        rank: r - s.invariant_factors.len(),
        torsion,
        lift_basis: Matrix::from_rows(sup.ambient_dim, lifts),
        sup: sup.clone(),
        v: s.v,
        diagonal,
    })
}
