//! Exact linear algebra over `Q(z_k)`.
//!
//! Reduced row echelon form scans columns left to right and takes the first
//! row with a nonzero entry as pivot; pivot rows are normalized before
//! elimination. The work per pivot is proportional to the matrix size, so
//! low-rank inputs are cheap regardless of their dimensions.

use rayon::prelude::*;

use crate::cyclotomic::CycNum;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub k: u32,
    pub cols: usize,
    pub rows: Vec<Vec<CycNum>>,
}

impl Matrix {
    pub fn zeros(k: u32, rows: usize, cols: usize) -> Matrix {
        Matrix { k, cols, rows: vec![vec![CycNum::zero(k); cols]; rows] }
    }

    pub fn from_rows(k: u32, cols: usize, rows: Vec<Vec<CycNum>>) -> Matrix {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Matrix { k, cols, rows }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(k: u32, nrows: usize, cols: &[Vec<CycNum>]) -> Matrix {
        let mut m = Matrix::zeros(k, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.rows[i][j] = v.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn mul_vec(&self, x: &[CycNum]) -> Vec<CycNum> {
        self.rows
            .iter()
            .map(|r| {
                r.iter().zip(x).filter(|(a, b)| !a.is_zero() && !b.is_zero()).fold(
                    CycNum::zero(self.k),
                    |acc, (a, b)| &acc + &(a * b),
                )
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.k, self.cols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                t.rows[j][i] = v.clone();
            }
        }
        t
    }
}

/// Result of row reduction: the nonzero rows and their pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref {
    pub k: u32,
    pub cols: usize,
    pub rows: Vec<Vec<CycNum>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn eliminate(target: &mut [CycNum], pivot_row: &[CycNum], nz: &[usize], col: usize) {
    if target[col].is_zero() {
        return;
    }
    let f = target[col].clone();
    for &c in nz {
        target[c] = &target[c] - &(&f * &pivot_row[c]);
    }
}

/// Reduced row echelon form of `m`.
pub fn rref(m: &Matrix) -> Rref {
    rref_rows(m.k, m.cols, m.rows.clone(), m.cols)
}

/// Row reduction that only pivots in the first `pivot_limit` columns.
fn rref_rows(k: u32, cols: usize, mut rows: Vec<Vec<CycNum>>, pivot_limit: usize) -> Rref {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..pivot_limit {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        for v in rows[rank].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let (head, tail) = rows.split_at_mut(rank);
        let (prow, tail) = tail.split_first_mut().expect("pivot row exists");
        let prow: &[CycNum] = prow;
        let nz: Vec<usize> = (col..cols).filter(|&c| !prow[c].is_zero()).collect();
        let work = (head.len() + tail.len()) * nz.len();
        if work > 4096 {
            head.par_iter_mut().for_each(|r| eliminate(r, prow, &nz, col));
            tail.par_iter_mut().for_each(|r| eliminate(r, prow, &nz, col));
        } else {
            head.iter_mut().for_each(|r| eliminate(r, prow, &nz, col));
            tail.iter_mut().for_each(|r| eliminate(r, prow, &nz, col));
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    Rref { k, cols, rows, pivots }
}

/// A particular solution of `a x = b` with all free variables zero.
pub fn solve_particular(a: &Matrix, b: &[CycNum]) -> Option<Vec<CycNum>> {
    let n = a.cols;
    let rows: Vec<Vec<CycNum>> = a
        .rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut r = r.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let red = rref_rows(a.k, n + 1, rows, n + 1);
    if red.pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![CycNum::zero(a.k); n];
    for (r, &c) in red.pivots.iter().enumerate() {
        x[c] = red.rows[r][n].clone();
    }
    Some(x)
}

/// Basis of `{x : a x = 0}`, one vector per free column in ascending order.
pub fn nullspace(a: &Matrix) -> Vec<Vec<CycNum>> {
    let red = rref(a);
    nullspace_of_rref(&red)
}

fn nullspace_of_rref(red: &Rref) -> Vec<Vec<CycNum>> {
    let n = red.cols;
    let mut is_pivot = vec![false; n];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![CycNum::zero(red.k); n];
            v[f] = CycNum::one(red.k);
            for (r, &p) in red.pivots.iter().enumerate() {
                v[p] = -&red.rows[r][f];
            }
            v
        })
        .collect()
}

/// A subspace of `Q(z_k)^n` held as a canonical RREF basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    pub k: u32,
    pub dim_ambient: usize,
    pub basis: Vec<Vec<CycNum>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(k: u32, n: usize, vectors: Vec<Vec<CycNum>>) -> Subspace {
        let red = rref_rows(k, n, vectors, n);
        Subspace { k, dim_ambient: n, basis: red.rows, pivots: red.pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in
    /// the subspace.
    pub fn reduce(&self, v: &[CycNum]) -> Vec<CycNum> {
        let mut v = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (c, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        v[c] = &v[c] - &(&f * x);
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[CycNum]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates of `v` in the basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[CycNum]) -> Option<Vec<CycNum>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn equals(&self, other: &Subspace) -> bool {
        self.pivots == other.pivots && self.basis == other.basis
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.k, self.dim_ambient, v)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let cols: Vec<Vec<CycNum>> =
            self.basis.iter().cloned().chain(other.basis.iter().map(|w| w.iter().map(|x| -x).collect())).collect();
        let m = Matrix::from_columns(self.k, self.dim_ambient, &cols);
        let vecs = nullspace(&m)
            .into_iter()
            .map(|coef| combine(self.k, self.dim_ambient, &self.basis, &coef[..self.dim()]))
            .collect();
        Subspace::span(self.k, self.dim_ambient, vecs)
    }
}

/// `sum_i coef[i] * vecs[i]`.
pub fn combine(k: u32, n: usize, vecs: &[Vec<CycNum>], coef: &[CycNum]) -> Vec<CycNum> {
    let mut out = vec![CycNum::zero(k); n];
    for (v, c) in vecs.iter().zip(coef) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o = &*o + &(c * x);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(k: u32, rows: &[&[i64]]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(k, cols, rows.iter().map(|r| r.iter().map(|&x| CycNum::from_int(k, x)).collect()).collect())
    }

    #[test]
    fn rref_rank_two() {
        let a = m(1, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let r = rref(&a);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(nullspace(&a).len(), 1);
        for v in nullspace(&a) {
            assert!(a.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_over_cyclotomic() {
        let z = CycNum::zeta(7, 1);
        let a = Matrix::from_rows(7, 2, vec![vec![z.clone(), CycNum::one(7)], vec![CycNum::one(7), z.clone()]]);
        let b = vec![CycNum::one(7), CycNum::zero(7)];
        let x = solve_particular(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let sing = m(1, &[&[1, 1], &[1, 1]]);
        assert!(solve_particular(&sing, &[CycNum::one(1), CycNum::zero(1)]).is_none());
    }

    #[test]
    fn subspace_operations() {
        let e = |v: &[i64]| v.iter().map(|&x| CycNum::from_int(1, x)).collect::<Vec<_>>();
        let u = Subspace::span(1, 3, vec![e(&[1, 0, 0]), e(&[0, 1, 0])]);
        let w = Subspace::span(1, 3, vec![e(&[0, 1, 0]), e(&[0, 0, 1])]);
        assert_eq!(u.intersect(&w), Subspace::span(1, 3, vec![e(&[0, 5, 0])]));
        assert_eq!(u.sum(&w).dim(), 3);
        assert!(u.contains(&e(&[3, -2, 0])));
        assert!(!u.contains(&e(&[0, 0, 1])));
        assert_eq!(u.coordinates(&e(&[3, -2, 0])).unwrap(), e(&[3, -2]));
    }
}
