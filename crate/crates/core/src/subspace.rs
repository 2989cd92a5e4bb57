//! Subspaces of C^n in canonical form, plus the lattice operations and the
//! isotropy test used by the supercharge classifier.
//!
//! A subspace is stored as the reduced row echelon form of any spanning
//! set, so equal subspaces compare equal structurally and print the same
//! basis. Intersections are computed through kernels (exactly), never by
//! dimension counting alone.

use crate::matrix::ExactMatrix;
use crate::scalar::Scalar;
use crate::Error;

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    /// rref matrix whose rows are the canonical basis (no zero rows kept).
    basis: ExactMatrix,
}

impl Subspace {
    /// Spans the given vectors inside C^ambient.
    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "span: vector of wrong length");
        }
        if vectors.is_empty() {
            return Subspace {
                ambient,
                basis: ExactMatrix::zeros(0, ambient),
            };
        }
        let m = ExactMatrix::from_rows(vectors.to_vec());
        let (r, pivots) = m.rref();
        let basis = r.submatrix(0..pivots.len(), 0..ambient);
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace::span(ambient, &[])
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: ExactMatrix::identity(ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    /// Canonical basis vectors (rows of the rref).
    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.rows_iter().map(|r| r.to_vec()).collect()
    }

    pub fn basis_matrix(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient, "contains: vector of wrong length");
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        let stacked = self.basis.vstack(&ExactMatrix::row_vector(v.to_vec()));
        stacked.rank() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "contains: ambient mismatch");
        other
            .basis_vectors()
            .iter()
            .all(|v| self.contains_vector(v))
    }

    /// Sum of subspaces (span of the union of bases).
    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "sum: ambient mismatch");
        let mut vs = self.basis_vectors();
        vs.extend(other.basis_vectors());
        Subspace::span(self.ambient, &vs)
    }

    /// Exact intersection. A vector of the intersection is a combination
    /// of self's basis that is also a combination of other's; solving
    /// `[Aᵀ | −Bᵀ]·(x,y) = 0` and projecting onto the x-part gives it.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "intersect: ambient mismatch");
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        let at = self.basis.transpose(); // ambient × dim_a
        let bt = other.basis.transpose(); // ambient × dim_b
        let stacked = at.hstack(&bt.scale(&Scalar::from_int(-1)));
        let mut vectors = Vec::new();
        for k in stacked.kernel_basis() {
            let x = &k[0..self.dim()];
            let mut v = vec![Scalar::zero(); self.ambient];
            for (coef, row) in x.iter().zip(self.basis.rows_iter()) {
                if coef.is_zero() {
                    continue;
                }
                for (vi, ri) in v.iter_mut().zip(row.iter()) {
                    *vi += coef * ri;
                }
            }
            vectors.push(v);
        }
        Subspace::span(self.ambient, &vectors)
    }

    /// Writes `v = Σ cᵢ·basisᵢ` and returns the coefficients, or errors if
    /// `v` is outside the subspace.
    pub fn coordinates_of(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        self.basis.transpose().solve(v)
    }

    /// Tests whether the subspace is isotropic for `gram` (every pair of
    /// basis vectors pairs to zero) and of the maximal possible dimension
    /// for a nondegenerate symmetric form, namely ⌊n/2⌋.
    ///
    /// Errors if `gram` is not symmetric or is degenerate: the notion of a
    /// *maximal* isotropic subspace used here presumes a nondegenerate form.
    pub fn is_maximal_isotropic(&self, gram: &ExactMatrix) -> Result<bool, Error> {
        if gram.rows != self.ambient || gram.cols != self.ambient {
            return Err(Error::Dimension(format!(
                "gram is {}x{} but ambient dimension is {}",
                gram.rows, gram.cols, self.ambient
            )));
        }
        if gram != &gram.transpose() {
            return Err(Error::NotSymmetric);
        }
        if gram.rank() != self.ambient {
            return Err(Error::DegenerateForm);
        }
        if !self.is_isotropic(gram)? {
            return Ok(false);
        }
        Ok(self.dim() == self.ambient / 2)
    }

    /// Tests whether every pair of vectors pairs to zero under `gram`.
    pub fn is_isotropic(&self, gram: &ExactMatrix) -> Result<bool, Error> {
        if gram.rows != self.ambient || gram.cols != self.ambient {
            return Err(Error::Dimension(format!(
                "gram is {}x{} but ambient dimension is {}",
                gram.rows, gram.cols, self.ambient
            )));
        }
        let b = &self.basis;
        let pairing = b.mat_mul(gram).mat_mul(&b.transpose());
        Ok(pairing.is_zero())
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of C^{})", self.dim(), self.ambient)?;
        if self.dim() > 0 {
            write!(f, " basis {:?}", self.basis)?;
        }
        Ok(())
    }
}

/// A quotient space V/I presented by explicit representatives.
///
/// Representatives are the rows of `rref(K)` whose pivots are not pivots of
/// `rref(I)`, where K ⊇ I; this choice is canonical and gives a section of
/// the projection. `reduce` rewrites any vector of K as (coords on
/// representatives) ⊕ (element of I) and drops the ideal part.
pub struct QuotientSpace {
    pub ambient: usize,
    pub total: Subspace,
    pub ideal: Subspace,
    pub representatives: Vec<Vec<Scalar>>,
    /// columns: representatives then ideal basis — used to resolve vectors.
    resolver: ExactMatrix,
}

impl QuotientSpace {
    /// Builds K/I. Errors unless I ⊆ K.
    pub fn new(total: Subspace, ideal: Subspace) -> Result<Self, Error> {
        if total.ambient_dim() != ideal.ambient_dim() {
            return Err(Error::Dimension(
                "quotient: ambient dimension mismatch".into(),
            ));
        }
        if !total.contains(&ideal) {
            return Err(Error::NotASubspace);
        }
        let ideal_pivots: std::collections::BTreeSet<usize> = {
            let (_, p) = ideal.basis_matrix().rref();
            p.into_iter().collect()
        };
        let (kr, kp) = total.basis_matrix().rref();
        let mut representatives = Vec::new();
        for (row_idx, &pc) in kp.iter().enumerate() {
            if !ideal_pivots.contains(&pc) {
                representatives.push(kr.row(row_idx).to_vec());
            }
        }
        let mut cols = representatives.clone();
        cols.extend(ideal.basis_vectors());
        let resolver = if cols.is_empty() {
            ExactMatrix::zeros(total.ambient_dim(), 0)
        } else {
            ExactMatrix::from_rows(cols).transpose()
        };
        Ok(QuotientSpace {
            ambient: total.ambient_dim(),
            total,
            ideal,
            representatives,
            resolver,
        })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of `v + I` on the canonical representatives. Errors if
    /// `v` is not in the total space.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        if v.iter().all(|x| x.is_zero()) {
            return Ok(vec![Scalar::zero(); self.dim()]);
        }
        let sol = self.resolver.solve(v)?;
        Ok(sol[0..self.dim()].to_vec())
    }

    /// The canonical representative vector of the class of `v`.
    pub fn representative(&self, v: &[Scalar]) -> Result<Vec<Scalar>, Error> {
        let coords = self.reduce(v)?;
        let mut out = vec![Scalar::zero(); self.ambient];
        for (c, rep) in coords.iter().zip(&self.representatives) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(rep.iter()) {
                *o += c * r;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&n| Scalar::from_int(n)).collect()
    }

    #[test]
    fn span_canonicalizes() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 0, 1])]);
        let b = Subspace::span(3, &[v(&[1, 1, 1]), v(&[2, 2, 1]), v(&[3, 3, 2])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn sum_and_intersection_dimensions() {
        let a = Subspace::span(4, &[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]);
        let b = Subspace::span(4, &[v(&[0, 1, 0, 0]), v(&[0, 0, 1, 0])]);
        let sum = a.sum(&b);
        let cap = a.intersect(&b);
        assert_eq!(sum.dim(), 3);
        assert_eq!(cap.dim(), 1);
        assert!(cap.contains_vector(&v(&[0, 1, 0, 0])));
        // dim(A) + dim(B) = dim(A+B) + dim(A∩B)
        assert_eq!(a.dim() + b.dim(), sum.dim() + cap.dim());
    }

    #[test]
    fn intersection_needs_actual_overlap() {
        // two different lines in the plane meet only at zero
        let a = Subspace::span(2, &[v(&[1, 0])]);
        let b = Subspace::span(2, &[v(&[1, 1])]);
        assert_eq!(a.intersect(&b).dim(), 0);
    }

    #[test]
    fn maximal_isotropic_for_split_form() {
        // hyperbolic form on C^4: pairs (x1,x3) and (x2,x4)
        let gram = ExactMatrix::from_int_rows(&[
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
        ]);
        let lag = Subspace::span(4, &[v(&[1, 0, 0, 0]), v(&[0, 1, 0, 0])]);
        assert!(lag.is_maximal_isotropic(&gram).unwrap());
        let line = Subspace::span(4, &[v(&[1, 0, 0, 0])]);
        assert!(!line.is_maximal_isotropic(&gram).unwrap()); // isotropic but not maximal
        let bad = Subspace::span(4, &[v(&[1, 0, 1, 0]), v(&[0, 1, 0, 0])]);
        assert!(!bad.is_maximal_isotropic(&gram).unwrap()); // not isotropic
    }

    #[test]
    fn isotropy_rejects_bad_grams() {
        let asym = ExactMatrix::from_int_rows(&[&[0, 1], &[-1, 0]]);
        let line = Subspace::span(2, &[v(&[1, 0])]);
        assert!(matches!(
            line.is_maximal_isotropic(&asym),
            Err(Error::NotSymmetric)
        ));
        let degenerate = ExactMatrix::from_int_rows(&[&[1, 0], &[0, 0]]);
        assert!(matches!(
            line.is_maximal_isotropic(&degenerate),
            Err(Error::DegenerateForm)
        ));
    }

    #[test]
    fn quotient_reduces_consistently() {
        let total = Subspace::full(3);
        let ideal = Subspace::span(3, &[v(&[1, 1, 0])]);
        let q = QuotientSpace::new(total, ideal).unwrap();
        assert_eq!(q.dim(), 2);
        // (1,1,0) is in the ideal, so its class is zero
        assert!(q.reduce(&v(&[1, 1, 0])).unwrap().iter().all(|x| x.is_zero()));
        // shifting by the ideal must not change the class
        let a = q.reduce(&[s("2"), s("0"), s("5")]).unwrap();
        let b = q.reduce(&[s("3"), s("1"), s("5")]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_requires_containment() {
        let total = Subspace::span(3, &[v(&[1, 0, 0])]);
        let ideal = Subspace::span(3, &[v(&[0, 1, 0])]);
        assert!(QuotientSpace::new(total, ideal).is_err());
    }
}
