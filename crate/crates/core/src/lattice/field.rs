//! Linear algebra over an exact field.


use super::matrix::Matrix;
use crate::scalar::FieldScalar;

/// Reduced row echelon form; returns the nonzero rows and their pivot columns.
pub fn rref<F: FieldScalar>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = F::one() / a[(r, c)].clone();
        for x in a.row_mut(r)[c..].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !a[(i, c)].is_zero() {
                let f = -a[(i, c)].clone();
                a.add_row_multiple(i, r, &f, c);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let out = Matrix::from_rows(cols, (0..r).map(|i| a.row(i).to_vec()).collect());
    (out, pivots)
}

pub fn rank<F: FieldScalar>(m: &Matrix<F>) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : x * m = 0}`.
pub fn left_kernel<F: FieldScalar>(m: &Matrix<F>) -> Matrix<F> {
    right_kernel(&m.transpose())
}

/// Basis of `{x : m * x = 0}` (one vector per free column).
pub fn right_kernel<F: FieldScalar>(m: &Matrix<F>) -> Matrix<F> {
    let cols = m.cols();
    let (r, pivots) = rref(m);
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..cols).filter(|&j| !is_pivot[j]) {
        let mut v = vec![F::zero(); cols];
        v[free] = F::one();
        for (k, &p) in pivots.iter().enumerate() {
            v[p] = -r[(k, free)].clone();
        }
        basis.push(v);
    }
    Matrix::from_rows(cols, basis)
}

/// A subspace of `F^n`, stored as an RREF basis so that `==` is equality.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F> {
    dim: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: FieldScalar> Subspace<F> {
    pub fn span(generators: &Matrix<F>) -> Self {
        let (basis, pivots) = rref(generators);
        Subspace {
            dim: generators.cols(),
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            dim: ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    /// Coordinates in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        let coords: Vec<F> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.apply(&coords);
        (back == v).then_some(coords)
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_space(&self, other: &Self) -> bool {
        other.basis.iter_rows().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Self) -> Self {
        Subspace::span(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.dim);
        }
        let k = left_kernel(&self.basis.vstack(&other.basis));
        let c = k.select_cols(&(0..self.dim()).collect::<Vec<_>>());
        Subspace::span(&c.mul(&self.basis))
    }

    /// Image under `x -> x * map`.
    pub fn image(&self, map: &Matrix<F>) -> Self {
        Subspace::span(&self.basis.mul(map))
    }

    /// `{x in self : x * map in target}`.
    pub fn preimage(&self, map: &Matrix<F>, target: &Subspace<F>) -> Self {
        if self.dim() == 0 {
            return self.clone();
        }
        let w = self.basis.mul(map);
        let k = left_kernel(&w.vstack(&target.basis));
        let c = k.select_cols(&(0..self.dim()).collect::<Vec<_>>());
        Subspace::span(&c.mul(&self.basis))
    }
}

/// Solves `x * m = b` for full-row-rank `m` using a precomputed inverse of a
/// maximal nonsingular column block.
#[derive(Clone, Debug)]
pub struct RowSolver<F> {
    m: Matrix<F>,
    cols: Vec<usize>,
    inverse: Matrix<F>,
}

impl<F: FieldScalar> RowSolver<F> {
    /// Returns `None` if the rows of `m` are dependent.
    pub fn new(m: &Matrix<F>) -> Option<Self> {
        let k = m.rows();
        let (_, pivots) = rref(&m.transpose());
        if pivots.len() != k {
            return None;
        }
        // Rows of m are independent; pick k independent columns.
        let (_, cols) = rref(m);
        let block = m.select_cols(&cols);
        let inverse = invert(&block)?;
        Some(RowSolver {
            m: m.clone(),
            cols,
            inverse,
        })
    }

    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        let rhs: Vec<F> = self.cols.iter().map(|&j| b[j].clone()).collect();
        let x = self.inverse.apply(&rhs);
        (self.m.apply(&x) == b).then_some(x)
    }
}

pub fn invert<F: FieldScalar>(m: &Matrix<F>) -> Option<Matrix<F>> {
    let n = m.rows();
    if m.cols() != n {
        return None;
    }
    let aug = m.hstack(&Matrix::identity(n));
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
        return None;
    }
    Some(r.select_cols(&(n..2 * n).collect::<Vec<_>>()))
}

/// Any solution of `x * m = b`, by elimination on the augmented system.
pub fn solve_left<F: FieldScalar>(m: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
    let k = m.rows();
    // x * m = b  <=>  m^T x^T = b^T.
    let aug = m.transpose().hstack(&Matrix::from_rows(1, b.iter().map(|x| vec![x.clone()]).collect()));
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![F::zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, k)].clone();
    }
    Some(x)
}

pub fn is_identity<F: FieldScalar>(m: &Matrix<F>) -> bool {
    m.rows() == m.cols()
        && (0..m.rows()).all(|i| {
            (0..m.cols()).all(|j| {
                if i == j {
                    m[(i, j)].is_one()
                } else {
                    m[(i, j)].is_zero()
                }
            })
        })
}
