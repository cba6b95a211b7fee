//! Hermite and Smith normal forms over a Euclidean integer type.


use super::matrix::Matrix;
use crate::scalar::IntegerScalar;

/// Row Hermite normal form of a matrix.
///
/// `basis` holds the nonzero rows: pivots strictly move right, every pivot is
/// positive and the entries above a pivot lie in `0..pivot`. Two generator
/// sets span the same lattice exactly when their `basis` matrices agree.
#[derive(Clone, Debug, PartialEq)]
pub struct Hermite<T> {
    pub basis: Matrix<T>,
    pub pivots: Vec<usize>,
    /// Unimodular `U` with `U * M = H` (zero rows of `H` at the bottom).
    /// Only populated by [`hermite_with_transform`].
    pub transform: Option<Matrix<T>>,
}

impl<T: IntegerScalar> Hermite<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn hermite<T: IntegerScalar>(m: &Matrix<T>) -> Hermite<T> {
    hermite_impl(m, false)
}

pub fn hermite_with_transform<T: IntegerScalar>(m: &Matrix<T>) -> Hermite<T> {
    hermite_impl(m, true)
}

fn hermite_impl<T: IntegerScalar>(m: &Matrix<T>, track: bool) -> Hermite<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = track.then(|| Matrix::<T>::identity(rows));
    let mut pivots = Vec::new();
    let mut r = 0;

    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            // Smallest nonzero entry at or below row r becomes the pivot candidate.
            let mut best: Option<usize> = None;
            for i in r..rows {
                let v = &a[(i, c)];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|b| v.abs() < a[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(r, b);
            if let Some(u) = u.as_mut() {
                u.swap_rows(r, b);
            }
            let mut clean = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = a[(i, c)].div_floor(&a[(r, c)]);
                let neg_q = -q;
                a.add_row_multiple(i, r, &neg_q, c);
                if let Some(u) = u.as_mut() {
                    u.add_row_multiple(i, r, &neg_q, 0);
                }
                if !a[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            a.negate_row(r);
            if let Some(u) = u.as_mut() {
                u.negate_row(r);
            }
        }
        for i in 0..r {
            let q = a[(i, c)].div_floor(&a[(r, c)]);
            if q.is_zero() {
                continue;
            }
            let neg_q = -q;
            a.add_row_multiple(i, r, &neg_q, c);
            if let Some(u) = u.as_mut() {
                u.add_row_multiple(i, r, &neg_q, 0);
            }
        }
        pivots.push(c);
        r += 1;
    }

    let rank = pivots.len();
    let basis = Matrix::from_rows(cols, (0..rank).map(|i| a.row(i).to_vec()).collect());
    Hermite {
        basis,
        pivots,
        transform: u,
    }
}

/// Basis (in Hermite form) of `{x : x * m = 0}`.
///
/// Taken from the transform rows that the Hermite form of `m` sends to zero;
/// such a kernel is always saturated.
pub fn left_kernel<T: IntegerScalar>(m: &Matrix<T>) -> Matrix<T> {
    let h = hermite_with_transform(m);
    let u = h.transform.expect("transform tracked");
    let rank = h.pivots.len();
    let rows: Vec<Vec<T>> = (rank..m.rows()).map(|i| u.row(i).to_vec()).collect();
    hermite(&Matrix::from_rows(m.rows(), rows)).basis
}

/// Basis (in Hermite form) of `{x : m * x = 0}`, i.e. the usual column kernel.
pub fn right_kernel<T: IntegerScalar>(m: &Matrix<T>) -> Matrix<T> {
    left_kernel(&m.transpose())
}

/// Smith decomposition `U * M * V = D`.
#[derive(Clone, Debug)]
pub struct Smith<T> {
    /// Nonzero diagonal entries of `D`; each divides the next and all are positive.
    pub invariant_factors: Vec<T>,
    pub u: Matrix<T>,
    pub v: Matrix<T>,
    pub v_inverse: Matrix<T>,
}

impl<T: IntegerScalar> Smith<T> {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<T> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

pub fn smith<T: IntegerScalar>(m: &Matrix<T>) -> Smith<T> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = Matrix::<T>::identity(rows);
    let mut v = Matrix::<T>::identity(cols);
    let mut vi = Matrix::<T>::identity(cols);
    let mut factors = Vec::new();

    // Column operations are mirrored on V (as columns) and on V^-1 (as rows).
    let add_col = |a: &mut Matrix<T>, v: &mut Matrix<T>, vi: &mut Matrix<T>, t, s, q: &T| {
        a.add_col_multiple(t, s, q);
        v.add_col_multiple(t, s, q);
        let neg = -q.clone();
        vi.add_row_multiple(s, t, &neg, 0);
    };

    for t in 0..rows.min(cols) {
        'pivot: loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &a[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            a.swap_rows(t, bi);
            u.swap_rows(t, bi);
            a.swap_cols(t, bj);
            v.swap_cols(t, bj);
            vi.swap_rows(t, bj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = -a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &q, 0);
                u.add_row_multiple(i, t, &q, 0);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = -a[(t, j)].div_floor(&a[(t, t)]);
                add_col(&mut a, &mut v, &mut vi, j, t, &q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility: fold an offending row into the pivot row.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !a[(i, j)].is_multiple_of(&a[(t, t)]) {
                        let one = T::one();
                        a.add_row_multiple(t, i, &one, 0);
                        u.add_row_multiple(t, i, &one, 0);
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if a[(t, t)].is_zero() {
            break;
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        factors.push(a[(t, t)].clone());
    }

    Smith {
        invariant_factors: factors,
        u,
        v,
        v_inverse: vi,
    }
}
