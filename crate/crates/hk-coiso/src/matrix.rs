//! Dense exact-rational matrices: fraction-free elimination, canonical
//! reduced echelon form, nullspaces, and canonical row spaces.
//!
//! The forward pass is Bareiss-style over integers (row-wise denominator
//! clearing first), so intermediate entries stay minor-sized. The reduced
//! form is then obtained by exact rational back-substitution. Reduced
//! echelon form is unique for a given row space, which makes subspace
//! equality a coefficient-wise comparison.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::rat::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols)
                .map(|k| &self[(i, k)] * &other[(k, j)])
                .sum()
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "vector length differs");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|k| &self[(i, k)] * &v[k]).sum())
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column counts differ");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row counts differ");
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Canonical reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        // Fraction-free forward pass on a denominator-cleared integer copy.
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let lcm = crate::rat::denom_lcm(self.row(i));
                self.row(i)
                    .iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                    debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                    a[i][j] = num / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        // Rational back-substitution to the unique reduced form.
        let mut m = Matrix::from_rows(
            a.into_iter()
                .map(|row| row.into_iter().map(Rat::from_integer).collect())
                .collect(),
        );
        for (k, &c) in pivots.iter().enumerate().rev() {
            let inv = {
                let p = m[(k, c)].clone();
                p.recip()
            };
            for j in c..self.cols {
                let v = &m[(k, j)] * &inv;
                m[(k, j)] = v;
            }
            for i in 0..k {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..self.cols {
                    let v = &m[(i, j)] - &f * &m[(k, j)];
                    m[(i, j)] = v;
                }
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of `{ x : self · x = 0 }`, one kernel vector per row.
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -r[(k, f)].clone();
            }
            rows.push(v);
        }
        let (canon, _) = Matrix::from_rows_padded(rows, self.cols).rref();
        canon.drop_zero_rows()
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| r[(i, n + j)].clone()))
    }

    /// Unique solution of `self · x = b`, or `None` when the system is
    /// inconsistent or does not determine `x` uniquely.
    pub fn solve_unique(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(self.rows, b.len(), "rhs length differs");
        let rhs = Matrix::from_rows(b.iter().map(|x| vec![x.clone()]).collect());
        let (r, pivots) = self.hstack(&rhs).rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        if pivots.len() < self.cols {
            return None; // underdetermined
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r[(k, self.cols)].clone();
        }
        Some(x)
    }

    fn from_rows_padded(rows: Vec<Vec<Rat>>, cols: usize) -> Matrix {
        if rows.is_empty() {
            Matrix::zero(0, cols)
        } else {
            Matrix::from_rows(rows)
        }
    }

    fn drop_zero_rows(self) -> Matrix {
        let rows: Vec<Vec<Rat>> = (0..self.rows)
            .map(|i| self.row(i).to_vec())
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        Matrix::from_rows_padded(rows, self.cols)
    }

    pub fn scale(&self, t: &Rat) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * t)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// A subspace of Q^cols held as a canonical reduced-echelon basis.
/// Two `RowSpace`s are equal iff they are the same subspace.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RowSpace {
    cols: usize,
    basis: Matrix,
}

impl RowSpace {
    pub fn new(generators: Matrix) -> Self {
        let cols = generators.ncols();
        let (r, _) = generators.rref();
        RowSpace {
            cols,
            basis: r.drop_zero_rows(),
        }
    }

    pub fn from_vectors(vecs: Vec<Vec<Rat>>, cols: usize) -> Self {
        RowSpace::new(Matrix::from_rows_padded(vecs, cols))
    }

    pub fn full(cols: usize) -> Self {
        RowSpace::new(Matrix::identity(cols))
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.cols
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains_vec(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.cols);
        if v.iter().all(Rat::is_zero) {
            return true;
        }
        let stacked = self.basis.vstack(&Matrix::from_rows(vec![v.to_vec()]));
        stacked.rank() == self.dim()
    }

    pub fn contains(&self, other: &RowSpace) -> bool {
        self.join(other).dim() == self.dim()
    }

    pub fn join(&self, other: &RowSpace) -> RowSpace {
        assert_eq!(self.cols, other.cols);
        RowSpace::new(self.basis.vstack(&other.basis))
    }

    pub fn intersection_dim(&self, other: &RowSpace) -> usize {
        self.dim() + other.dim() - self.join(other).dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat_frac, rat_int};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    /// Plain rational Gauss-Jordan, kept independent of the Bareiss path.
    fn naive_rref(mat: &Matrix) -> Matrix {
        let mut a = mat.rows_vec();
        let (nr, nc) = (mat.nrows(), mat.ncols());
        let mut r = 0;
        for c in 0..nc {
            if r == nr {
                break;
            }
            let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].clone().recip();
            for j in 0..nc {
                a[r][j] = &a[r][j] * &inv;
            }
            for i in 0..nr {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..nc {
                        a[i][j] = &a[i][j] - &f * &a[r][j];
                    }
                }
            }
            r += 1;
        }
        Matrix::from_rows(a)
    }

    #[test]
    fn rref_matches_naive_elimination() {
        let cases = vec![
            m(&[&[0, 1], &[1, 0]]),
            m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]),
            m(&[&[2, 4], &[1, 2], &[3, 6]]),
            m(&[&[0, 0, 5], &[0, 3, 1], &[0, 0, 0]]),
            Matrix::from_rows(vec![
                vec![rat_frac(1, 2), rat_frac(-2, 3)],
                vec![rat_frac(3, 7), rat_int(5)],
            ]),
        ];
        for c in cases {
            assert_eq!(c.rref().0, naive_rref(&c));
        }
    }

    #[test]
    fn nullspace_is_exact_kernel() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let ns = a.nullspace();
        assert_eq!(ns.nrows(), 1);
        // (1, -2, 1) spans the kernel
        for i in 0..ns.nrows() {
            let prod = a.mul_vec(ns.row(i));
            assert!(prod.iter().all(Rat::is_zero));
        }
        let expected = RowSpace::from_vectors(vec![vec![rat_int(1), rat_int(-2), rat_int(1)]], 3);
        assert_eq!(RowSpace::new(ns), expected);
    }

    #[test]
    fn inverse_round_trip() {
        let u = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(u.inverse().unwrap(), u);
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert!(m(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn solve_unique_cases() {
        let a = m(&[&[1, 0], &[0, 2], &[1, 2]]);
        // consistent overdetermined system
        let b = vec![rat_int(3), rat_int(4), rat_int(5)];
        assert_eq!(a.solve_unique(&b).unwrap(), vec![rat_int(3), rat_int(2)]);
        // inconsistent
        let b_bad = vec![rat_int(3), rat_int(4), rat_int(6)];
        assert!(a.solve_unique(&b_bad).is_none());
        // underdetermined
        let wide = m(&[&[1, 1, 1]]);
        assert!(wide.solve_unique(&[rat_int(1)]).is_none());
    }

    #[test]
    fn row_space_equality_is_canonical() {
        let s1 = RowSpace::new(m(&[&[1, 1, 0], &[0, 0, 1]]));
        let s2 = RowSpace::new(m(&[&[2, 2, 2], &[-1, -1, 3], &[1, 1, 1]]));
        assert_eq!(s1, s2);
        assert_eq!(s1.dim(), 2);
        assert!(s1.contains_vec(&[rat_int(5), rat_int(5), rat_int(-7)]));
        assert!(!s1.contains_vec(&[rat_int(1), rat_int(0), rat_int(0)]));
    }

    #[test]
    fn join_and_intersection_dims() {
        let x = RowSpace::new(m(&[&[1, 0, 0], &[0, 1, 0]]));
        let y = RowSpace::new(m(&[&[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(x.join(&y).dim(), 3);
        assert_eq!(x.intersection_dim(&y), 1);
    }
}
