//! Dense exact matrices over the Gaussian rationals, with a deterministic
//! reduced row echelon form as the single workhorse.
//!
//! Conventions used crate-wide:
//! * vectors are column vectors; a `rows × cols` matrix maps C^cols → C^rows;
//! * every canonical basis (kernel, image, subspace) is derived from `rref`,
//!   which picks the first nonzero row at each pivot column — no pivoting
//!   heuristics, so identical inputs give identical outputs on every run
//!   and every thread count.

use crate::scalar::Scalar;
use crate::Error;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>, // row-major, rows*cols entries
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(
            rows.iter().all(|row| row.len() == c),
            "ragged rows in matrix constructor"
        );
        ExactMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds from integer entries — convenient for structure-constant tables.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| Scalar::from_int(n)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// A single row vector as a 1×n matrix.
    pub fn row_vector(v: Vec<Scalar>) -> Self {
        ExactMatrix {
            rows: 1,
            cols: v.len(),
            data: v,
        }
    }

    /// A single column vector as an n×1 matrix.
    pub fn col_vector(v: Vec<Scalar>) -> Self {
        ExactMatrix {
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Scalar]> {
        self.data.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn col(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.conj()).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "trace of non-square matrix");
        let mut t = Scalar::zero();
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        t
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "apply: dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.cols {
                    if !v[j].is_zero() {
                        acc += self.get(i, j) * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.rows, other.rows, "hstack: row mismatch");
        ExactMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.cols, other.cols, "vstack: column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        ExactMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Kronecker product; block (i,j) is `self[i,j] * other`.
    pub fn kron(&self, other: &ExactMatrix) -> Self {
        ExactMatrix::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let a = self.get(i / other.rows, j / other.cols);
                let b = other.get(i % other.rows, j % other.cols);
                a * b
            },
        )
    }

    /// Block diagonal `[self 0; 0 other]`.
    pub fn direct_sum(&self, other: &ExactMatrix) -> Self {
        ExactMatrix::from_fn(
            self.rows + other.rows,
            self.cols + other.cols,
            |i, j| {
                if i < self.rows && j < self.cols {
                    self.get(i, j).clone()
                } else if i >= self.rows && j >= self.cols {
                    other.get(i - self.rows, j - self.cols).clone()
                } else {
                    Scalar::zero()
                }
            },
        )
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        ExactMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows.start + i, cols.start + j).clone()
        })
    }

    /// Commutator `self·other − other·self`.
    pub fn commutator(&self, other: &ExactMatrix) -> Self {
        self.mat_mul(other) - other.mat_mul(self)
    }

    pub fn mat_mul(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.cols, other.rows, "matmul: dimension mismatch");
        let mut out = ExactMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let mut cur = out.get(i, j).clone();
                    cur += a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot-column list.
    ///
    /// Deterministic: at each column the first nonzero row (in current
    /// order) becomes the pivot, is scaled to a leading 1, and clears its
    /// column. The result is the canonical rref of the row space.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            // swap rows p and r
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            // normalize pivot row
            let inv = m.get(r, c).inverse().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            // eliminate the column everywhere else
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let delta = &factor * m.get(r, j);
                    let v = m.get(i, j).clone() - delta;
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the null space {x : self·x = 0}, one vector per
    /// returned row. Each free column contributes the vector with a 1 in
    /// that coordinate and `−rref` entries at the pivot coordinates.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (row_idx, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row_idx, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Canonical basis of the column space (the image of the map), one
    /// vector per returned row: the nonzero rows of `rref(selfᵀ)`.
    pub fn image_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.transpose().rref();
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
    }

    /// Solves `self · X = rhs` column by column, setting all free variables
    /// to zero, so the solution is unique and reproducible. Errors if any
    /// right-hand column is outside the image.
    pub fn solve_columns(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, Error> {
        assert_eq!(self.rows, rhs.rows, "solve: row mismatch");
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        // any pivot in the rhs block means an inconsistent system
        if pivots.iter().any(|&c| c >= self.cols) {
            return Err(Error::NotInSpan);
        }
        let mut x = ExactMatrix::zeros(self.cols, rhs.cols);
        for (row_idx, &pc) in pivots.iter().enumerate() {
            for k in 0..rhs.cols {
                x.set(pc, k, r.get(row_idx, self.cols + k).clone());
            }
        }
        Ok(x)
    }

    /// Solves `self · x = b` for a single column vector (free vars zero).
    pub fn solve(&self, b: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        let x = self.solve_columns(&ExactMatrix::col_vector(b.to_vec()))?;
        Ok(x.col(0))
    }

    /// Exact inverse; errors when the matrix is singular or non-square.
    pub fn inverse(&self) -> Result<ExactMatrix, Error> {
        if self.rows != self.cols {
            return Err(Error::Singular);
        }
        let x = self
            .solve_columns(&ExactMatrix::identity(self.rows))
            .map_err(|_| Error::Singular)?;
        if x.mat_mul(self) != ExactMatrix::identity(self.rows) {
            return Err(Error::Singular);
        }
        Ok(x)
    }
}

impl Add for ExactMatrix {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add: shape");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .into_iter()
                .zip(rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for ExactMatrix {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub: shape");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .into_iter()
                .zip(rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for ExactMatrix {
    type Output = Self;
    fn neg(self) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for ExactMatrix {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mat_mul(&rhs)
    }
}

impl<'a, 'b> Mul<&'b ExactMatrix> for &'a ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &'b ExactMatrix) -> ExactMatrix {
        self.mat_mul(rhs)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl serde::Serialize for ExactMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<&Scalar>> = self.rows_iter().map(|r| r.iter().collect()).collect();
        rows.serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for ExactMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<Scalar>> = Vec::deserialize(deserializer)?;
        if let Some(c) = rows.first().map(|r| r.len()) {
            if rows.iter().any(|r| r.len() != c) {
                return Err(serde::de::Error::custom("ragged matrix rows"));
            }
        }
        Ok(ExactMatrix::from_rows(rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn rank_one_complex_matrix() {
        // rows are (1, i) and (i, -1): the second is i times the first
        let m = ExactMatrix::from_rows(vec![
            vec![s("1"), s("i")],
            vec![s("i"), s("-1")],
        ]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![s("-i"), s("1")]);
        // kernel vectors actually die
        assert!(m.apply(&k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let id = ExactMatrix::identity(4);
        let (r, p) = id.rref();
        assert_eq!(r, id);
        assert_eq!(p, vec![0, 1, 2, 3]);
    }

    #[test]
    fn solve_columns_picks_zero_free_vars() {
        // x + y = 2 has many solutions; ours must be (2, 0)
        let a = ExactMatrix::from_int_rows(&[&[1, 1]]);
        let x = a.solve(&[s("2")]).unwrap();
        assert_eq!(x, vec![s("2"), s("0")]);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = ExactMatrix::from_int_rows(&[&[1, 0], &[1, 0]]);
        let r = a.solve(&[s("1"), s("2")]);
        assert!(matches!(r, Err(Error::NotInSpan)));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = ExactMatrix::from_rows(vec![
            vec![s("1"), s("i")],
            vec![s("0"), s("2")],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mat_mul(&inv), ExactMatrix::identity(2));
        assert_eq!(inv.mat_mul(&m), ExactMatrix::identity(2));
        let sing = ExactMatrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_err());
    }

    #[test]
    fn kron_shapes_and_values() {
        let a = ExactMatrix::from_int_rows(&[&[1, 2]]);
        let b = ExactMatrix::from_int_rows(&[&[3], &[4]]);
        let k = a.kron(&b);
        assert_eq!((k.rows, k.cols), (2, 2));
        assert_eq!(k.get(0, 0), &s("3"));
        assert_eq!(k.get(1, 1), &s("8"));
    }

    #[test]
    fn image_basis_is_canonical() {
        let m = ExactMatrix::from_int_rows(&[&[1, 1], &[2, 2], &[0, 0]]);
        // image is the line through (1,2,0)
        let im = m.image_basis();
        assert_eq!(im.len(), 1);
        assert_eq!(im[0], vec![s("1"), s("2"), s("0")]);
    }
}
