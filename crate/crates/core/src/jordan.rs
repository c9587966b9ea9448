//! Jordan types of nilpotent operators on subquotients, computed directly
//! and through dimension formulas, and recovery of exotic Jordan types.

use crate::combinatorics::{transpose, union_partitions, Bipartition, Partition};
use crate::error::{Error, Result};
use crate::exactla::{restrict_operator, FqMatrix, Subspace};
use crate::symplectic::{ExoticPoint, SymplecticSpace};

/// Block sizes of a nilpotent operator, weakly decreasing.
pub type JordanType = Partition;

/// The bipartition `(μ, ν)` labelling an exotic orbit.
pub type ExoticType = Bipartition;

/// Jordan type from the kernel dimensions: `λ^t_j = dim ker x^j − dim ker x^{j−1}`.
pub fn jordan_type(x: &FqMatrix) -> Result<JordanType> {
    if !x.is_square() {
        return Err(Error::SizeMismatch("operator must be square".into()));
    }
    let d = x.rows();
    let mut cols = Vec::new();
    let mut prev = 0usize;
    let mut pw = FqMatrix::identity(x.p(), d);
    for _ in 0..d {
        pw = pw.mul(x);
        let k = d - pw.rank();
        if k == prev {
            break;
        }
        cols.push((k - prev) as i64);
        prev = k;
    }
    if prev != d {
        return Err(Error::NotNilpotent);
    }
    Ok(Partition::from_columns(&cols).expect("kernel increments weakly decrease"))
}

/// Jordan type of the operator induced on `w/u`.
pub fn jordan_subquotient_direct(x: &FqMatrix, w: &Subspace, u: &Subspace) -> Result<JordanType> {
    jordan_type(&restrict_operator(x, w, u)?)
}

/// Jordan type of `x` on `w/u` from
/// `μ^t_i = dim(x^i W ∩ U) + dim(ker x^i ∩ W) − (same at i−1)`.
pub fn jordan_subquotient_formula(x: &FqMatrix, w: &Subspace, u: &Subspace) -> Result<JordanType> {
    if !w.contains(u) {
        return Err(Error::InvarianceViolated("u is not contained in w".into()));
    }
    if !u.is_invariant(x) || !w.is_invariant(x) {
        return Err(Error::InvarianceViolated("subspaces are not x-stable".into()));
    }
    if !x.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let target = (w.dim() - u.dim()) as i64;
    let d_at = |xi: &FqMatrix| -> Result<i64> {
        let a = w.image_under(xi).intersect(u)?.dim();
        let b = xi.kernel().intersect(w)?.dim();
        Ok((a + b) as i64)
    };
    let mut cols = Vec::new();
    let mut xi = FqMatrix::identity(x.p(), x.rows());
    let mut prev = d_at(&xi)?;
    let mut total = 0;
    while total < target {
        xi = xi.mul(x);
        let cur = d_at(&xi)?;
        let c = cur - prev;
        if c <= 0 {
            return Err(Error::InvarianceViolated("formula stalled".into()));
        }
        cols.push(c);
        total += c;
        prev = cur;
    }
    Partition::from_columns(&cols)
        .ok_or_else(|| Error::InvarianceViolated("formula columns are not a partition".into()))
}

/// Removes `removals[j-1]` boxes from the bottom of column `j` of `lambda`.
/// `None` if a column goes negative or the result is not a partition.
pub fn remove_from_columns(lambda: &Partition, removals: &[i64]) -> Option<Partition> {
    let cols = transpose(lambda);
    let n = cols.len().max(removals.len());
    let new: Vec<i64> = (0..n)
        .map(|j| i64::from(cols.get(j)) - removals.get(j).copied().unwrap_or(0))
        .collect();
    Partition::from_columns(&new)
}

/// Recovers `(μ, ν)` from `λ = J(x)` and `λ' = J(x` on `V/𝔽[x]v)`.
///
/// `λ` must be `(μ+ν) ∪ (μ+ν)`; then, going down from the last index,
/// `ν_i = λ'_{2i} − μ_{i+1}` and `μ_i = λ'_{2i−1} − ν_i`.
pub fn exotic_type_from_jordan_types(lambda: &Partition, lambda_prime: &Partition) -> Result<ExoticType> {
    let parts = lambda.parts();
    if !parts.len().is_multiple_of(2) || parts.chunks(2).any(|c| c[0] != c[1]) {
        return Err(Error::NotExotic(format!("J(x) = {lambda} is not doubled")));
    }
    let s: Vec<i64> = parts.iter().step_by(2).map(|&a| i64::from(a)).collect();
    let len = s.len();
    let lp = |k: usize| i64::from(lambda_prime.get(k - 1));
    let mut mu = vec![0i64; len + 1];
    let mut nu = vec![0i64; len + 1];
    for i in (1..=len).rev() {
        nu[i - 1] = lp(2 * i) - mu[i];
        mu[i - 1] = lp(2 * i - 1) - nu[i - 1];
    }
    mu.pop();
    nu.pop();
    if mu.iter().chain(&nu).any(|&a| a < 0) {
        return Err(Error::NotExotic("negative recovered part".into()));
    }
    let to_part = |v: &[i64]| Partition::new(v.iter().map(|&a| a as u32).collect());
    let (mu, nu) = match (to_part(&mu), to_part(&nu)) {
        (Ok(m), Ok(n)) => (m, n),
        _ => return Err(Error::NotExotic("recovered parts are not monotone".into())),
    };
    let b = Bipartition::new(mu, nu);
    let sums = b.row_sums();
    if union_partitions(&sums, &sums) != *lambda {
        return Err(Error::NotExotic("J(x) ≠ (μ+ν)∪(μ+ν)".into()));
    }
    if quotient_type(&b) != *lambda_prime {
        return Err(Error::NotExotic("quotient type does not match".into()));
    }
    Ok(b)
}

/// `(μ_1+ν_1, μ_2+ν_1, μ_2+ν_2, μ_3+ν_2, …)`.
pub fn quotient_type(b: &Bipartition) -> Partition {
    let len = b.mu.len().max(b.nu.len());
    let mut v = Vec::with_capacity(2 * len);
    for i in 0..len {
        v.push(b.mu.get(i) + b.nu.get(i));
        v.push(b.mu.get(i + 1) + b.nu.get(i));
    }
    Partition::from_unsorted(v)
}

/// `eJ(v, x)` read off from `J(x)` and `J(x|V/𝔽[x]v)`.
pub fn exotic_jordan_type(pt: &ExoticPoint) -> Result<ExoticType> {
    let full = pt.space.full_space();
    let lambda = jordan_type(&pt.x)?;
    let lambda_prime = jordan_subquotient_direct(&pt.x, &full, &pt.cyclic_span())?;
    exotic_type_from_jordan_types(&lambda, &lambda_prime)
}

/// `eJ(v + F, x|F^⊥/F)` for an `x`-stable isotropic `F` with `v ∈ F^⊥`.
pub fn exotic_type_of_subquotient(pt: &ExoticPoint, f: &Subspace) -> Result<ExoticType> {
    let fp = pt.space.perp(f);
    if !fp.contains_vector(&pt.v) {
        return Err(Error::InvalidArgument("v is not in F^⊥".into()));
    }
    let lambda = jordan_subquotient_direct(&pt.x, &fp, f)?;
    let with_v = f.sum(&pt.cyclic_span())?;
    let lambda_prime = jordan_subquotient_direct(&pt.x, &fp, &with_v)?;
    exotic_type_from_jordan_types(&lambda, &lambda_prime)
}

/// The invariants `k_j` (`j = 1..=ℓ`) and `2h_j` (`j = 0..=ℓ`) of an isotropic
/// `F ⊆ ker x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSubspaceData {
    pub ell: usize,
    /// `n[j-1]` = multiplicity of `j` in `μ+ν`.
    pub n: Vec<i64>,
    pub k: Vec<i64>,
    pub two_h: Vec<i64>,
}

pub fn kernel_subspace_data(x: &FqMatrix, space: &SymplecticSpace, f: &Subspace) -> Result<KernelSubspaceData> {
    if !x.kernel().contains(f) {
        return Err(Error::InvalidArgument("F is not contained in ker x".into()));
    }
    if !space.is_isotropic(f) {
        return Err(Error::InvalidArgument("F is not isotropic".into()));
    }
    let ell = x.nilpotency_index().ok_or(Error::NotNilpotent)?;
    let lambda = jordan_type(x)?;
    let n: Vec<i64> = (1..=ell as u32)
        .map(|j| lambda.multiplicity(j) as i64 / 2)
        .collect();
    let fp = space.perp(f);
    let mut a = Vec::with_capacity(ell + 1);
    let mut two_h = Vec::with_capacity(ell + 1);
    let mut xj = FqMatrix::identity(x.p(), x.rows());
    for _ in 0..=ell {
        let fim = f.intersect(&xj.image())?.dim() as i64;
        let frad = f.intersect(&fp.image_under(&xj))?.dim() as i64;
        a.push(fim);
        two_h.push(fim - frad);
        xj = xj.mul(x);
    }
    let k = (1..=ell).map(|j| a[j - 1] - a[j]).collect();
    Ok(KernelSubspaceData { ell, n, k, two_h })
}

/// Predicted `(J(x|V/F), J(x|F^⊥/F))` for isotropic `F ⊆ ker x`, from the
/// multiplicities `2n_j − k_j + k_{j+1}` and
/// `2n_j − 2k_j + 2k_{j+1} + 2h_{j−1} − 4h_j + 2h_{j+1}`.
pub fn predict_types_general_l(
    x: &FqMatrix,
    space: &SymplecticSpace,
    f: &Subspace,
) -> Result<(JordanType, JordanType)> {
    let data = kernel_subspace_data(x, space, f)?;
    let ell = data.ell;
    let k = |j: usize| if (1..=ell).contains(&j) { data.k[j - 1] } else { 0 };
    let hh = |j: usize| if j >= 1 && j < ell { data.two_h[j] } else { 0 };
    let n = |j: usize| data.n[j - 1];
    let quot: Vec<i64> = (1..=ell).map(|j| 2 * n(j) - k(j) + k(j + 1)).collect();
    let sub: Vec<i64> = (1..=ell)
        .map(|j| 2 * n(j) - 2 * k(j) + 2 * k(j + 1) + hh(j - 1) - 2 * hh(j) + hh(j + 1))
        .collect();
    let bad = || Error::InvalidArgument("predicted multiplicity is negative".into());
    Ok((
        Partition::from_multiplicities(&quot).ok_or_else(bad)?,
        Partition::from_multiplicities(&sub).ok_or_else(bad)?,
    ))
}

/// Column-removal predictions for the individual subquotient lemmas.
pub mod lemmas {
    use super::*;

    fn dims_until<F: FnMut(&FqMatrix) -> Result<i64>>(x: &FqMatrix, mut f: F) -> Result<Vec<i64>> {
        let ell = x.nilpotency_index().ok_or(Error::NotNilpotent)?;
        let mut out = Vec::with_capacity(ell + 1);
        let mut xj = FqMatrix::identity(x.p(), x.rows());
        for _ in 0..=ell {
            out.push(f(&xj)?);
            xj = xj.mul(x);
        }
        Ok(out)
    }

    fn removal(base: &Partition, seq: &[i64], increasing: bool) -> Result<Partition> {
        let r: Vec<i64> = seq
            .windows(2)
            .map(|w| if increasing { w[1] - w[0] } else { w[0] - w[1] })
            .collect();
        remove_from_columns(base, &r)
            .ok_or_else(|| Error::InvalidArgument("column removal leaves no partition".into()))
    }

    /// `J(x|V/F)` for `F ⊆ ker x`: remove `a_{j−1} − a_j` boxes from column `j`,
    /// `a_j = dim(F ∩ Im x^j)`.
    pub fn quotient_by_kernel_subspace(x: &FqMatrix, f: &Subspace) -> Result<Partition> {
        if !x.kernel().contains(f) {
            return Err(Error::InvalidArgument("F is not contained in ker x".into()));
        }
        let a = dims_until(x, |xj| Ok(f.intersect(&xj.image())?.dim() as i64))?;
        removal(&jordan_type(x)?, &a, false)
    }

    /// `J(x|F)` for `F ⊇ Im x`: remove `b_j − b_{j−1}` boxes from column `j`,
    /// `b_j = dim(F + ker x^j)`.
    pub fn restriction_to_superspace(x: &FqMatrix, f: &Subspace) -> Result<Partition> {
        if !f.contains(&x.image()) {
            return Err(Error::InvalidArgument("F does not contain Im x".into()));
        }
        let b = dims_until(x, |xj| Ok(f.sum(&xj.kernel())?.dim() as i64))?;
        removal(&jordan_type(x)?, &b, true)
    }

    /// `J(x|F^⊥/F)` from `J(x|V/F)` by removing `a'_{j−1} − a'_j` boxes,
    /// `a'_j = dim(F ∩ x^j(F^⊥))`.
    pub fn isotropic_subquotient(x: &FqMatrix, space: &SymplecticSpace, f: &Subspace) -> Result<Partition> {
        let fp = space.perp(f);
        let a = dims_until(x, |xj| Ok(f.intersect(&fp.image_under(xj))?.dim() as i64))?;
        removal(&quotient_by_kernel_subspace(x, f)?, &a, false)
    }

    /// `J(x|F^⊥/(F+𝔽[x]v))` from `J(x|V/F)` by removing `b'_{j−1} − b'_j`
    /// boxes, `b'_j = dim((F + 𝔽[x]v) ∩ x^j(F^⊥))`.
    pub fn isotropic_subquotient_mod_v(pt: &ExoticPoint, f: &Subspace) -> Result<Partition> {
        let fp = pt.space.perp(f);
        if !fp.contains_vector(&pt.v) {
            return Err(Error::InvalidArgument("v is not in F^⊥".into()));
        }
        let fv = f.sum(&pt.cyclic_span())?;
        let b = dims_until(&pt.x, |xj| Ok(fv.intersect(&fp.image_under(xj))?.dim() as i64))?;
        removal(&quotient_by_kernel_subspace(&pt.x, f)?, &b, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate_bipartitions;
    use crate::symplectic::normal_basis;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn bp(mu: &[u32], nu: &[u32]) -> Bipartition {
        Bipartition::new(p(mu), p(nu))
    }

    fn shift(p_: u32, sizes: &[usize]) -> FqMatrix {
        let d: usize = sizes.iter().sum();
        let mut x = FqMatrix::zeros(p_, d, d);
        let mut off = 0;
        for &s in sizes {
            for j in 1..s {
                x.set(off + j - 1, off + j, 1);
            }
            off += s;
        }
        x
    }

    #[test]
    fn jordan_type_examples() {
        assert_eq!(jordan_type(&FqMatrix::zeros(2, 5, 5)).unwrap(), p(&[1, 1, 1, 1, 1]));
        assert_eq!(jordan_type(&shift(2, &[3])).unwrap(), p(&[3]));
        let pt = normal_basis(&bp(&[3, 1], &[2, 2, 1]), 3).unwrap();
        assert_eq!(jordan_type(&pt.x).unwrap(), p(&[5, 5, 3, 3, 1, 1]));
        assert_eq!(jordan_type(&FqMatrix::identity(3, 2)), Err(Error::NotNilpotent));
    }

    #[test]
    fn subquotient_trivia() {
        let x = shift(2, &[3, 1]);
        let full = Subspace::full(2, 4);
        let zero = Subspace::zero(2, 4);
        assert_eq!(jordan_subquotient_direct(&x, &full, &zero).unwrap(), p(&[3, 1]));
        assert_eq!(jordan_subquotient_direct(&x, &full, &full).unwrap(), p(&[]));
        assert_eq!(jordan_subquotient_formula(&x, &full, &zero).unwrap(), p(&[3, 1]));
        assert_eq!(jordan_subquotient_formula(&x, &full, &full).unwrap(), p(&[]));
    }

    #[test]
    fn line_through_v_for_x_zero() {
        let pt = normal_basis(&bp(&[1, 1], &[]), 3).unwrap();
        let f = pt.cyclic_span();
        let fp = pt.space.perp(&f);
        assert_eq!(jordan_subquotient_direct(&pt.x, &fp, &f).unwrap(), p(&[1, 1]));
    }

    #[test]
    fn recovery_examples() {
        let b = bp(&[3, 1], &[2, 2, 1]);
        assert_eq!(quotient_type(&b), p(&[5, 3, 3, 2, 1, 1]));
        assert_eq!(
            exotic_type_from_jordan_types(&p(&[5, 5, 3, 3, 1, 1]), &p(&[5, 3, 3, 2, 1, 1])).unwrap(),
            b
        );
        assert!(exotic_type_from_jordan_types(&p(&[2, 1]), &p(&[1])).is_err());
        let zero = normal_basis(&bp(&[], &[1, 1, 1]), 2).unwrap();
        assert_eq!(exotic_jordan_type(&zero).unwrap(), bp(&[], &[1, 1, 1]));
    }

    #[test]
    fn round_trip_small() {
        for n in 0..=3 {
            for b in enumerate_bipartitions(n) {
                for q in [2, 3] {
                    let pt = normal_basis(&b, q).unwrap();
                    assert_eq!(exotic_jordan_type(&pt).unwrap(), b);
                }
            }
        }
    }

    #[test]
    fn general_predictor_x_zero() {
        let pt = normal_basis(&bp(&[], &[1, 1, 1]), 3).unwrap();
        let f = Subspace::from_rows(3, 6, &[vec![1, 0, 0, 0, 0, 0], vec![0, 1, 0, 0, 0, 0]]);
        let (q, s) = predict_types_general_l(&pt.x, &pt.space, &f).unwrap();
        assert_eq!(q, Partition::rectangle(1, 4));
        assert_eq!(s, Partition::rectangle(1, 2));
    }

    #[test]
    fn column_removal() {
        assert_eq!(remove_from_columns(&p(&[2, 2]), &[1, 1]), Some(p(&[2])));
        assert_eq!(remove_from_columns(&p(&[2, 2]), &[0, 2]), Some(p(&[1, 1])));
        assert_eq!(remove_from_columns(&p(&[2, 1]), &[0, 2]), None);
    }
}
