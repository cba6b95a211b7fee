//! Independent reference computations for tests: plain Gaussian elimination
//! over the rationals on explicit face lists, without the engine's lattice or
//! chain-complex code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Q = BigRational;
type Simplex = Vec<u32>;

fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Row-reduces in place and returns the pivot columns.
fn reduce(rows: &mut [Vec<Q>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..cols {
                    let d = &rows[r][j] * &f;
                    rows[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut m = rows.to_vec();
    reduce(&mut m).len()
}

/// Basis of `{x : sum_i x_i * rows[i] = 0}`, i.e. the left kernel.
pub fn left_kernel(rows: &[Vec<Q>], width: usize) -> Vec<Vec<Q>> {
    let n = rows.len();
    // Columns of the transpose are the rows.
    let mut t: Vec<Vec<Q>> = (0..width).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect();
    if width == 0 {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    let pivots = reduce(&mut t);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); n];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -t[r][f].clone();
            }
            v
        })
        .collect()
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

/// Hyperedges of size `n + 1`, sorted.
pub fn of_dim(h: &[Simplex], n: usize) -> Vec<Simplex> {
    let s: BTreeSet<Simplex> = h.iter().filter(|e| e.len() == n + 1).cloned().collect();
    s.into_iter().collect()
}

/// Faces with the alternating sign, dropping vertex `i` gives sign `(-1)^i`.
fn faces(s: &Simplex) -> Vec<(Simplex, i64)> {
    if s.len() <= 1 {
        return Vec::new();
    }
    (0..s.len())
        .map(|i| {
            let mut f = s.clone();
            f.remove(i);
            (f, if i % 2 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// Faces of the `n`-simplices of `h` that are not `(n-1)`-simplices of `allowed`.
fn forbidden_faces(simplices: &[Simplex], allowed: &[Simplex]) -> Vec<Simplex> {
    let ok: BTreeSet<&Simplex> = allowed.iter().collect();
    let all: BTreeSet<Simplex> = simplices.iter().flat_map(|s| faces(s).into_iter().map(|(f, _)| f)).collect();
    all.into_iter().filter(|f| !ok.contains(f)).collect()
}

/// Boundary of each simplex restricted to the faces in `targets`.
fn boundary_rows(simplices: &[Simplex], targets: &[Simplex]) -> Vec<Vec<Q>> {
    simplices
        .iter()
        .map(|s| {
            let mut row = vec![Q::zero(); targets.len()];
            for (f, sign) in faces(s) {
                if let Ok(j) = targets.binary_search(&f) {
                    row[j] += q(sign);
                }
            }
            row
        })
        .collect()
}

/// Basis of `Inf_n(h)` in the coordinates of the `n`-simplices of `h`.
pub fn inf_basis(h: &[Simplex], n: usize) -> Vec<Vec<Q>> {
    let simplices = of_dim(h, n);
    let below = if n == 0 { Vec::new() } else { of_dim(h, n - 1) };
    let bad = forbidden_faces(&simplices, &below);
    left_kernel(&boundary_rows(&simplices, &bad), bad.len())
}

pub fn inf_rank(h: &[Simplex], n: usize) -> usize {
    inf_basis(h, n).len()
}

/// `dim H_n(Inf(h)/Inf(a); Q)` for `a ⊆ h`.
pub fn relative_betti(h: &[Simplex], a: &[Simplex], n: usize) -> usize {
    let hn = of_dim(h, n);
    if hn.is_empty() {
        return 0;
    }
    // Relative cycles: chains on H_n whose boundary lies on A_{n-1}.
    let a_below = if n == 0 { Vec::new() } else { of_dim(a, n - 1) };
    let bad = forbidden_faces(&hn, &a_below);
    let cycles = left_kernel(&boundary_rows(&hn, &bad), bad.len()).len();

    // Relative boundaries: ∂ Inf_{n+1}(H) + Inf_n(A), both inside span H_n.
    let mut gens = Vec::new();
    let up = of_dim(h, n + 1);
    for z in inf_basis(h, n + 1) {
        let mut v = vec![Q::zero(); hn.len()];
        for (s, c) in up.iter().zip(&z) {
            if c.is_zero() {
                continue;
            }
            // Faces outside H cancel across the chain.
            for (f, sign) in faces(s) {
                if let Ok(j) = hn.binary_search(&f) {
                    v[j] += c * q(sign);
                }
            }
        }
        gens.push(v);
    }
    let an = of_dim(a, n);
    for z in inf_basis(a, n) {
        let mut v = vec![Q::zero(); hn.len()];
        for (s, c) in an.iter().zip(&z) {
            v[hn.binary_search(s).expect("A ⊆ H")] = c.clone();
        }
        gens.push(v);
    }
    cycles - if gens.is_empty() { 0 } else { rank(&gens) }
}

pub fn relative_bettis(h: &[Simplex], a: &[Simplex]) -> Vec<usize> {
    let top = h.iter().map(Vec::len).max().unwrap_or(0);
    (0..top).map(|n| relative_betti(h, a, n)).collect()
}

/// Simplex lists from anything that yields vertex id slices.
pub fn simplices(edges: impl IntoIterator<Item = Vec<u32>>) -> Vec<Simplex> {
    let mut v: Vec<Simplex> = edges
        .into_iter()
        .map(|mut e| {
            e.sort_unstable();
            e
        })
        .collect();
    v.sort();
    v.dedup();
    v
}
