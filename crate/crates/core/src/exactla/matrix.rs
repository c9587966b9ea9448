//! Dense matrices over 𝔽_p, stored row-major as residues.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::{add_mod, check_prime, inv_mod, mul_mod, neg_mod, reduce_i64, sub_mod};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// A dense `rows × cols` matrix over 𝔽_p.
///
/// Operators act on column vectors: `x.apply(v)` is `x·v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr")]
pub struct FqMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

#[derive(Deserialize)]
struct MatrixRepr {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl TryFrom<MatrixRepr> for FqMatrix {
    type Error = Error;
    fn try_from(r: MatrixRepr) -> Result<Self> {
        FqMatrix::from_i64(r.p, r.rows, r.cols, &r.data)
    }
}

impl FqMatrix {
    pub fn new(p: u32, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        check_prime(p)?;
        if data.len() != rows * cols {
            return Err(Error::SizeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(FqMatrix {
            p,
            rows,
            cols,
            data: data.into_iter().map(|v| v % p).collect(),
        })
    }

    pub fn from_i64(p: u32, rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        check_prime(p)?;
        let data = data.iter().map(|&v| reduce_i64(v, p)).collect();
        FqMatrix::new(p, rows, cols, data)
    }

    /// Builds a matrix whose rows are the given vectors.
    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().map(|v| v % p));
        }
        FqMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FqMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = FqMatrix::zeros(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// Matrix product. Panics on incompatible shapes or moduli.
    pub fn mul(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.p, other.p, "mixed moduli");
        assert_eq!(self.cols, other.rows, "incompatible shapes");
        let p = self.p;
        let mut out = FqMatrix::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(orow) {
                    *d = add_mod(*d, mul_mod(a, b, p), p);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| add_mod(a, b, p))
            .collect();
        FqMatrix { data, ..*self }
    }

    pub fn sub(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| sub_mod(a, b, p))
            .collect();
        FqMatrix { data, ..*self }
    }

    pub fn scale(&self, c: u32) -> FqMatrix {
        let p = self.p;
        let data = self.data.iter().map(|&a| mul_mod(a, c % p, p)).collect();
        FqMatrix { data, ..*self }
    }

    pub fn pow(&self, e: usize) -> FqMatrix {
        assert!(self.is_square());
        let mut r = FqMatrix::identity(self.p, self.rows);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// `self · v` for a column vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b, p), p))
            })
            .collect()
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FqMatrix {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row-echelon form with zero rows removed, plus pivot columns.
    pub fn rref_with_pivots(&self) -> (FqMatrix, Vec<usize>) {
        let p = self.p;
        let cols = self.cols;
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| m[i * cols + c] != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    m.swap(r * cols + j, pr * cols + j);
                }
            }
            let inv = inv_mod(m[r * cols + c], p);
            for j in c..cols {
                m[r * cols + j] = mul_mod(m[r * cols + j], inv, p);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = m[i * cols + c];
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    let t = mul_mod(f, m[r * cols + j], p);
                    m[i * cols + j] = sub_mod(m[i * cols + j], t, p);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r * cols);
        (
            FqMatrix {
                p,
                rows: r,
                cols,
                data: m,
            },
            pivots,
        )
    }

    pub fn rref(&self) -> FqMatrix {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Right null space `{v : self·v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref_with_pivots();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[f] = 1 % p;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = neg_mod(r.get(i, f), p);
            }
            basis.push(v);
        }
        Subspace::from_rows(p, self.cols, &basis)
    }

    /// Column space, as a subspace of 𝔽_p^rows.
    pub fn image(&self) -> Subspace {
        Subspace::from_matrix(&self.transpose())
    }

    /// Solves `Λ · self = targets` for the coefficient matrix Λ, assuming the
    /// rows of `self` are independent. Returns `None` if some target row is
    /// outside the row space.
    pub fn solve_left(&self, targets: &FqMatrix) -> Option<FqMatrix> {
        assert_eq!(self.cols, targets.cols);
        let d = self.rows;
        let t = targets.rows;
        let n = self.cols;
        let p = self.p;
        // Augmented system [selfᵀ | targetsᵀ] of size n × (d + t).
        let mut aug = FqMatrix::zeros(p, n, d + t);
        for j in 0..n {
            for i in 0..d {
                aug.data[j * (d + t) + i] = self.get(i, j);
            }
            for i in 0..t {
                aug.data[j * (d + t) + d + i] = targets.get(i, j);
            }
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.iter().any(|&c| c >= d) {
            return None;
        }
        assert_eq!(pivots.len(), d, "rows are not independent");
        let mut out = FqMatrix::zeros(p, t, d);
        for (row, &c) in pivots.iter().enumerate() {
            for i in 0..t {
                out.data[i * d + c] = r.get(row, d + i);
            }
        }
        Some(out)
    }

    /// Some solution `z` of `self · z = b`, if one exists.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let n = self.cols;
        let mut aug = FqMatrix::zeros(self.p, self.rows, n + 1);
        for (i, &bi) in b.iter().enumerate().take(self.rows) {
            for j in 0..n {
                aug.data[i * (n + 1) + j] = self.get(i, j);
            }
            aug.data[i * (n + 1) + n] = bi;
        }
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut z = vec![0u32; n];
        for (i, &c) in pivots.iter().enumerate() {
            z[c] = r.get(i, n);
        }
        Some(z)
    }

    /// `true` iff `self^e = 0` for `e = rows`.
    pub fn is_nilpotent(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut m = self.clone();
        for _ in 0..self.rows.max(1) {
            if m.is_zero() {
                return true;
            }
            m = m.mul(self);
        }
        m.is_zero()
    }

    /// Smallest `e ≥ 0` with `self^e = 0`, if nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        if !self.is_square() {
            return None;
        }
        let mut m = FqMatrix::identity(self.p, self.rows);
        for e in 0..=self.rows {
            if m.is_zero() {
                return Some(e);
            }
            m = m.mul(self);
        }
        None
    }
}

impl fmt::Display for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Free-function form of [`FqMatrix::rref`].
pub fn rref(m: &FqMatrix) -> FqMatrix {
    m.rref()
}

/// Free-function form of [`FqMatrix::kernel`].
pub fn kernel(x: &FqMatrix) -> Subspace {
    x.kernel()
}

/// Free-function form of [`FqMatrix::image`].
pub fn image(x: &FqMatrix) -> Subspace {
    x.image()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, rows: usize, cols: usize, d: &[i64]) -> FqMatrix {
        FqMatrix::from_i64(p, rows, cols, d).unwrap()
    }

    #[test]
    fn rref_examples() {
        let id = FqMatrix::identity(3, 3);
        assert_eq!(id.rref(), id);
        assert_eq!(FqMatrix::zeros(2, 3, 4).rref().rows(), 0);
        assert_eq!(m(2, 2, 2, &[1, 1, 1, 1]).rref(), m(2, 1, 2, &[1, 1]));
    }

    #[test]
    fn rref_is_idempotent() {
        let a = m(5, 3, 4, &[1, 2, 3, 4, 2, 4, 1, 0, 3, 1, 4, 4]);
        let r = a.rref();
        assert_eq!(r.rref(), r);
    }

    #[test]
    fn kernel_and_image() {
        assert_eq!(FqMatrix::zeros(2, 4, 4).kernel().dim(), 4);
        assert_eq!(FqMatrix::zeros(2, 4, 4).image().dim(), 0);
        // J2 ⊕ J2 with x e1 = 0, x e2 = e1, x e3 = 0, x e4 = e3.
        let mut x = FqMatrix::zeros(2, 4, 4);
        x.set(0, 1, 1);
        x.set(2, 3, 1);
        let k = x.kernel();
        assert_eq!(k.dim(), 2);
        assert!(k.contains_vector(&[1, 0, 0, 0]));
        assert!(k.contains_vector(&[0, 0, 1, 0]));
        assert_eq!(k.dim() + x.image().dim(), 4);
    }

    #[test]
    fn solve_left_recovers_coefficients() {
        let b = m(7, 2, 3, &[1, 0, 2, 0, 1, 3]);
        let t = m(7, 1, 3, &[3, 4, 6 + 12]);
        let c = b.solve_left(&t).unwrap();
        assert_eq!(c.row(0), &[3, 4]);
        assert!(b.solve_left(&m(7, 1, 3, &[0, 0, 1])).is_none());
    }

    #[test]
    fn nilpotency() {
        let mut x = FqMatrix::zeros(3, 3, 3);
        x.set(0, 1, 1);
        x.set(1, 2, 1);
        assert_eq!(x.nilpotency_index(), Some(3));
        assert!(!FqMatrix::identity(3, 2).is_nilpotent());
    }

    #[test]
    fn json_schema_round_trip() {
        let a = m(3, 2, 2, &[1, 2, 0, 1]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"p":3,"rows":2,"cols":2,"data":[1,2,0,1]}"#);
        let b: FqMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        assert!(serde_json::from_str::<FqMatrix>(r#"{"p":4,"rows":1,"cols":1,"data":[1]}"#).is_err());
    }
}
