//! Subspaces of 𝔽_p^d represented by the reduced row-echelon form of a basis.

use std::fmt;

use serde::Serialize;

use super::field::{mul_mod, sub_mod};
use super::matrix::FqMatrix;
use crate::error::{Error, Result};

/// A subspace of 𝔽_p^ambient. Equality is equality of the canonical rref basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subspace {
    ambient: usize,
    basis: FqMatrix,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_matrix(m: &FqMatrix) -> Self {
        let (basis, pivots) = m.rref_with_pivots();
        Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn from_rows(p: u32, ambient: usize, rows: &[Vec<u32>]) -> Self {
        Subspace::from_matrix(&FqMatrix::from_rows(p, ambient, rows))
    }

    pub fn zero(p: u32, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: FqMatrix::zeros(p, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(p: u32, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: FqMatrix::identity(p, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span_of(p: u32, ambient: usize, v: &[u32]) -> Self {
        Subspace::from_rows(p, ambient, &[v.to_vec()])
    }

    pub fn p(&self) -> u32 {
        self.basis.p()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical basis (rows in rref).
    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        if self.p() != other.p() {
            return Err(Error::InvalidArgument("subspaces over different fields".into()));
        }
        Ok(())
    }

    /// Reduces `v` modulo the subspace; the result is zero iff `v` lies in it.
    pub fn residual(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p();
        let mut w = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let f = w[c];
            if f == 0 {
                continue;
            }
            for (wj, &bj) in w.iter_mut().zip(self.basis.row(i)) {
                *wj = sub_mod(*wj, mul_mod(f, bj, p), p);
            }
        }
        w
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.residual(v).iter().all(|&a| a == 0)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient
            && (0..other.dim()).all(|i| self.contains_vector(other.basis.row(i)))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        self.contains_vector(v)
            .then(|| self.pivots.iter().map(|&c| v[c]).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)))
    }

    /// `{c : c·s = 0 for all s}` with respect to the dot product.
    pub fn annihilator(&self) -> Subspace {
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.contains(other) {
            return Ok(other.clone());
        }
        if other.contains(self) {
            return Ok(self.clone());
        }
        let a = self.annihilator();
        let b = other.annihilator();
        Ok(a.basis.vstack(&b.basis).kernel())
    }

    /// `{w : form(f, w) = 0 for all f}` where `form(a, b) = aᵀ·form·b`.
    pub fn perp(&self, form: &FqMatrix) -> Subspace {
        assert_eq!(form.rows(), self.ambient);
        assert_eq!(form.cols(), self.ambient);
        self.basis.mul(form).kernel()
    }

    pub fn image_under(&self, x: &FqMatrix) -> Subspace {
        // Rows b_i map to x·b_i, i.e. the rows of basis·xᵀ.
        Subspace::from_matrix(&self.basis.mul(&x.transpose()))
    }

    /// `{w : x·w ∈ target}`.
    pub fn preimage(x: &FqMatrix, target: &Subspace) -> Subspace {
        let ann = target.annihilator();
        ann.basis.mul(x).kernel()
    }

    pub fn is_invariant(&self, x: &FqMatrix) -> bool {
        (0..self.dim()).all(|i| self.contains_vector(&x.apply(self.basis.row(i))))
    }

    /// Basis vectors of `self` completing a basis of `sub` (which must be
    /// contained in `self`) to a basis of `self`.
    pub fn complement_of(&self, sub: &Subspace) -> Vec<Vec<u32>> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for i in 0..self.dim() {
            let v = self.basis.row(i);
            if !acc.contains_vector(v) {
                out.push(v.to_vec());
                acc = acc
                    .sum(&Subspace::span_of(self.p(), self.ambient, v))
                    .expect("same ambient");
            }
        }
        out
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.dim())
            .map(|i| {
                let r: Vec<String> = self.basis.row(i).iter().map(u32::to_string).collect();
                format!("[{}]", r.join(" "))
            })
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

pub fn sum(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.sum(b)
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

pub fn perp(f: &Subspace, form: &FqMatrix) -> Subspace {
    f.perp(form)
}

/// Matrix of the operator induced by `x` on `w/u`, in the basis given by
/// [`Subspace::complement_of`].
pub fn restrict_operator(x: &FqMatrix, w: &Subspace, u: &Subspace) -> Result<FqMatrix> {
    if w.ambient_dim() != x.cols() || u.ambient_dim() != x.cols() || !x.is_square() {
        return Err(Error::SizeMismatch("operator and subspaces disagree".into()));
    }
    if !w.contains(u) {
        return Err(Error::InvarianceViolated("u is not contained in w".into()));
    }
    if !u.is_invariant(x) {
        return Err(Error::InvarianceViolated("x(u) is not contained in u".into()));
    }
    if !w.is_invariant(x) {
        return Err(Error::InvarianceViolated("x(w) is not contained in w".into()));
    }
    let p = x.p();
    let comp = w.complement_of(u);
    let r = comp.len();
    if r == 0 {
        return Ok(FqMatrix::zeros(p, 0, 0));
    }
    let mut rows = u.basis_vectors();
    rows.extend(comp.iter().cloned());
    let basis = FqMatrix::from_rows(p, x.cols(), &rows);
    let images: Vec<Vec<u32>> = comp.iter().map(|c| x.apply(c)).collect();
    let targets = FqMatrix::from_rows(p, x.cols(), &images);
    let coeffs = basis
        .solve_left(&targets)
        .expect("images lie in w by invariance");
    let offset = u.dim();
    let mut out = FqMatrix::zeros(p, r, r);
    for j in 0..r {
        for i in 0..r {
            out.set(i, j, coeffs.get(j, offset + i));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_trivia() {
        let a = Subspace::from_rows(3, 3, &[vec![1, 2, 0]]);
        let z = Subspace::zero(3, 3);
        let f = Subspace::full(3, 3);
        assert_eq!(a.sum(&z).unwrap(), a);
        assert_eq!(a.intersect(&f).unwrap(), a);
        let l1 = Subspace::from_rows(2, 2, &[vec![1, 0]]);
        let l2 = Subspace::from_rows(2, 2, &[vec![1, 1]]);
        assert_eq!(l1.sum(&l2).unwrap(), Subspace::full(2, 2));
        assert!(l1.intersect(&l2).unwrap().is_zero());
        assert!(a.sum(&Subspace::zero(3, 4)).is_err());
    }

    #[test]
    fn canonical_form_ignores_spanning_set() {
        let a = Subspace::from_rows(5, 3, &[vec![1, 2, 3], vec![0, 1, 1]]);
        let b = Subspace::from_rows(5, 3, &[vec![1, 3, 4], vec![2, 4, 1], vec![1, 3, 4]]);
        assert_eq!(a, b);
    }

    #[test]
    fn restrict_trivial_cases() {
        let mut x = FqMatrix::zeros(2, 3, 3);
        x.set(0, 1, 1);
        x.set(1, 2, 1);
        let full = Subspace::full(2, 3);
        let zero = Subspace::zero(2, 3);
        assert_eq!(restrict_operator(&x, &full, &zero).unwrap(), x);
        assert_eq!(restrict_operator(&x, &full, &full).unwrap().rows(), 0);
        // J3: ker(x²)/ker(x) is one-dimensional with zero induced map.
        let k2 = x.pow(2).kernel();
        let k1 = x.kernel();
        let r = restrict_operator(&x, &k2, &k1).unwrap();
        assert_eq!((r.rows(), r.is_zero()), (1, true));
        assert!(matches!(
            restrict_operator(&x, &k1, &k2),
            Err(Error::InvarianceViolated(_))
        ));
    }

    #[test]
    fn preimage_and_coordinates() {
        let mut x = FqMatrix::zeros(3, 2, 2);
        x.set(0, 1, 1);
        let target = Subspace::zero(3, 2);
        assert_eq!(Subspace::preimage(&x, &target), x.kernel());
        let s = Subspace::from_rows(3, 2, &[vec![1, 2]]);
        assert_eq!(s.coordinates(&[2, 1]), Some(vec![2]));
        assert_eq!(s.coordinates(&[1, 1]), None);
    }
}
