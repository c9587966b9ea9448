//! Symplectic spaces over 𝔽_p, exotic points `(v, x)` and their normal
//! bases, the forms `⟨⟨u,w⟩⟩_j` on `Im(x^j)`, and isotropic Grassmannians.

use serde::Serialize;

use crate::combinatorics::Bipartition;
use crate::error::{Error, Result};
use crate::exactla::enumerate::enumerate_isotropic_in;
use crate::exactla::field::{add_mod, mul_mod};
use crate::exactla::{FqMatrix, Subspace, SubspaceIter};

/// `true` iff `m` is square, `mᵀ = −m` and the diagonal vanishes.
pub fn is_alternating(m: &FqMatrix) -> bool {
    if !m.is_square() {
        return false;
    }
    let p = m.p();
    let n = m.rows();
    (0..n).all(|i| {
        m.get(i, i) == 0 && (i + 1..n).all(|j| add_mod(m.get(i, j), m.get(j, i), p) == 0)
    })
}

/// A vector space with a nondegenerate alternating form, given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticSpace {
    form: FqMatrix,
}

impl SymplecticSpace {
    pub fn new(form: FqMatrix) -> Result<Self> {
        if !is_alternating(&form) {
            return Err(Error::BadForm("not alternating".into()));
        }
        if form.rank() != form.rows() {
            return Err(Error::BadForm("degenerate".into()));
        }
        Ok(SymplecticSpace { form })
    }

    /// The form with `⟨e_a, e_{2n−1−a}⟩ = 1` for `a < n`.
    pub fn standard(n: usize, p: u32) -> Self {
        let d = 2 * n;
        let mut form = FqMatrix::zeros(p, d, d);
        for a in 0..d {
            let val = if a < n { 1 } else { p - 1 };
            form.set(a, d - 1 - a, val);
        }
        SymplecticSpace { form }
    }

    pub fn p(&self) -> u32 {
        self.form.p()
    }

    pub fn dim(&self) -> usize {
        self.form.rows()
    }

    pub fn half_dim(&self) -> usize {
        self.dim() / 2
    }

    pub fn form(&self) -> &FqMatrix {
        &self.form
    }

    pub fn pair(&self, a: &[u32], b: &[u32]) -> u32 {
        let fb = self.form.apply(b);
        let p = self.p();
        a.iter()
            .zip(&fb)
            .fold(0, |acc, (&x, &y)| add_mod(acc, mul_mod(x, y, p), p))
    }

    pub fn perp(&self, f: &Subspace) -> Subspace {
        f.perp(&self.form)
    }

    pub fn is_isotropic(&self, f: &Subspace) -> bool {
        self.perp(f).contains(f)
    }

    /// `x ∈ 𝒮`: `⟨xa, b⟩ = ⟨a, xb⟩`, phrased as "`Ω·x` is alternating" so that
    /// the condition is also the right one in characteristic 2.
    pub fn is_self_adjoint(&self, x: &FqMatrix) -> bool {
        x.rows() == self.dim() && x.is_square() && is_alternating(&self.form.mul(x))
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.p(), self.dim())
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.p(), self.dim())
    }
}

/// A pair `(v, x)` with `x` self-adjoint and nilpotent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExoticPoint {
    pub space: SymplecticSpace,
    pub x: FqMatrix,
    pub v: Vec<u32>,
}

impl ExoticPoint {
    pub fn new(space: SymplecticSpace, x: FqMatrix, v: Vec<u32>) -> Result<Self> {
        if x.rows() != space.dim() || !x.is_square() || v.len() != space.dim() {
            return Err(Error::SizeMismatch("x and v must match the space".into()));
        }
        if x.p() != space.p() {
            return Err(Error::InvalidArgument("x and the form use different primes".into()));
        }
        if !space.is_self_adjoint(&x) {
            return Err(Error::NotSelfAdjoint);
        }
        if !x.is_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        let p = space.p();
        let v = v.into_iter().map(|a| a % p).collect();
        Ok(ExoticPoint { space, x, v })
    }

    pub fn p(&self) -> u32 {
        self.space.p()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn v_is_zero(&self) -> bool {
        self.v.iter().all(|&a| a == 0)
    }

    /// `𝔽_p[x]v = span{v, xv, x²v, …}`.
    pub fn cyclic_span(&self) -> Subspace {
        let mut rows = Vec::new();
        let mut w = self.v.clone();
        for _ in 0..=self.dim() {
            if w.iter().all(|&a| a == 0) {
                break;
            }
            rows.push(w.clone());
            w = self.x.apply(&w);
        }
        Subspace::from_rows(self.p(), self.dim(), &rows)
    }
}

/// Index of `v_{ij}` (1-based `i`, `j`) in the normal basis of `b`.
pub fn normal_index(b: &Bipartition, i: usize, j: usize) -> usize {
    let s = b.row_sums();
    let off: u32 = s.parts()[..i - 1].iter().sum();
    off as usize + j - 1
}

/// Index of `v*_{ij}` in the normal basis of `b`.
pub fn normal_index_star(b: &Bipartition, i: usize, j: usize) -> usize {
    2 * b.size() as usize - 1 - normal_index(b, i, j)
}

/// The normal-basis representative of the orbit labelled by `b`.
///
/// The basis is `v_{11},…,v_{1,s_1}, v_{21},…` followed by the `v*` in reverse
/// order, where `s = μ+ν`; `x v_{ij} = v_{i,j−1}`, `x v*_{ij} = v*_{i,j+1}`,
/// `⟨v_{ij}, v*_{ij}⟩ = 1` and `v = Σ_i v_{i,μ_i}`.
pub fn normal_basis(b: &Bipartition, p: u32) -> Result<ExoticPoint> {
    crate::exactla::field::check_prime(p)?;
    let n = b.size() as usize;
    let space = SymplecticSpace::standard(n, p);
    let s = b.row_sums();
    let mut x = FqMatrix::zeros(p, 2 * n, 2 * n);
    for (i0, &len) in s.parts().iter().enumerate() {
        let i = i0 + 1;
        for j in 1..=len as usize {
            if j >= 2 {
                x.set(normal_index(b, i, j - 1), normal_index(b, i, j), 1);
            }
            if j < len as usize {
                x.set(normal_index_star(b, i, j + 1), normal_index_star(b, i, j), 1);
            }
        }
    }
    let mut v = vec![0u32; 2 * n];
    for (i0, &m) in b.mu.parts().iter().enumerate() {
        v[normal_index(b, i0 + 1, m as usize)] = 1;
    }
    ExoticPoint::new(space, x, v)
}

/// Text picture of the normal basis: one line per row `i`, the first diagram
/// right-justified, then a bar, then the second diagram; the starred half is
/// printed below in reverse.
pub fn normal_basis_diagram(b: &Bipartition) -> String {
    let s = b.row_sums();
    let width = b.mu.largest() as usize;
    let cell = |i: usize, j: usize, star: bool| {
        if star {
            format!("v*{i}{j}")
        } else {
            format!("v{i}{j}")
        }
    };
    let line = |i: usize, star: bool| {
        let m = b.mu.get(i - 1) as usize;
        let total = s.get(i - 1) as usize;
        let pad = "     ".repeat(width - m);
        let left: Vec<String> = (1..=m).map(|j| format!("{:<5}", cell(i, j, star))).collect();
        let right: Vec<String> = (m + 1..=total)
            .map(|j| format!("{:<5}", cell(i, j, star)))
            .collect();
        format!("{pad}{}| {}", left.concat(), right.concat()).trim_end().to_string()
    };
    let mut out = Vec::new();
    for i in 1..=s.len() {
        out.push(line(i, false));
    }
    for i in (1..=s.len()).rev() {
        out.push(line(i, true));
    }
    out.join("\n")
}

fn check_exotic_operator(x: &FqMatrix, space: &SymplecticSpace) -> Result<()> {
    if !space.is_self_adjoint(x) {
        return Err(Error::NotSelfAdjoint);
    }
    if !x.is_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    Ok(())
}

/// `Im(x^j)` together with the Gram matrix of `⟨⟨u,w⟩⟩_j = ⟨z,w⟩`, `x^j z = u`,
/// in the canonical basis of `Im(x^j)`.
pub fn induced_form(x: &FqMatrix, space: &SymplecticSpace, j: usize) -> Result<(Subspace, FqMatrix)> {
    check_exotic_operator(x, space)?;
    let xj = x.pow(j);
    let domain = xj.image();
    let basis = domain.basis_vectors();
    let ker = xj.kernel();
    let d = basis.len();
    let p = space.p();
    let mut gram = FqMatrix::zeros(p, d, d);
    for (a, ua) in basis.iter().enumerate() {
        let z = xj.solve(ua).expect("u lies in the image");
        // A second preimage must give the same pairing.
        let z2 = match ker.basis_vectors().first() {
            Some(k) => z.iter().zip(k).map(|(&s, &t)| add_mod(s, t, p)).collect(),
            None => z.clone(),
        };
        for (b, ub) in basis.iter().enumerate() {
            let val = space.pair(&z, ub);
            if space.pair(&z2, ub) != val {
                return Err(Error::NotSelfAdjoint);
            }
            gram.set(a, b, val);
        }
    }
    Ok((domain, gram))
}

/// `W^{⊥⊥_j} = {u ∈ Im(x^j) : ⟨⟨u, w⟩⟩_j = 0 for all w ∈ W}`.
pub fn perp_pp(w: &Subspace, x: &FqMatrix, space: &SymplecticSpace, j: usize) -> Result<Subspace> {
    let (domain, gram) = induced_form(x, space, j)?;
    if !domain.contains(w) {
        return Err(Error::InvalidArgument("w is not contained in Im(x^j)".into()));
    }
    let p = space.p();
    let coords: Vec<Vec<u32>> = w
        .basis_vectors()
        .iter()
        .map(|v| domain.coordinates(v).expect("contained"))
        .collect();
    if domain.dim() == 0 {
        return Ok(domain);
    }
    let cw = FqMatrix::from_rows(p, domain.dim(), &coords);
    // c ranges over coordinates of u: need cᵀ G c_w = 0, i.e. (C_w Gᵀ) c = 0.
    let sol = cw.mul(&gram.transpose()).kernel();
    if sol.dim() == 0 {
        return Ok(Subspace::zero(p, space.dim()));
    }
    Ok(Subspace::from_matrix(&sol.basis().mul(domain.basis())))
}

/// Isotropic `k`-subspaces of `within`, each once.
pub fn enumerate_isotropic(space: &SymplecticSpace, k: usize, within: &Subspace) -> SubspaceIter {
    enumerate_isotropic_in(space.form(), k, within)
}

/// Gram matrix on 𝔽_p^d of rank `2r`: standard on the first `2r` coordinates.
pub fn degenerate_form(d: usize, r: usize, p: u32) -> FqMatrix {
    assert!(2 * r <= d);
    let mut g = FqMatrix::zeros(p, d, d);
    let std = SymplecticSpace::standard(r, p);
    for a in 0..2 * r {
        for b in 0..2 * r {
            g.set(a, b, std.form().get(a, b));
        }
    }
    g
}

/// Dimension `k(d−k) − k(k−1)/2 + (k−r)(k−r−1)/2` of the isotropic
/// Grassmannian of a `d`-dimensional space whose form has rank `2r`; the last
/// term is dropped when `k ≤ r`.
pub fn grass_perp_dim(k: i64, d: i64, r: i64) -> Result<i64> {
    if r < 0 || 2 * r > d || k < 0 || k > d - r {
        return Err(Error::InvalidArgument(format!(
            "need 0 ≤ r ≤ d/2 and 0 ≤ k ≤ d−r, got k={k}, d={d}, r={r}"
        )));
    }
    let third = if k > r { (k - r) * (k - r - 1) / 2 } else { 0 };
    Ok(k * (d - k) - k * (k - 1) / 2 + third)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Partition;

    fn bp(mu: &[u32], nu: &[u32]) -> Bipartition {
        Bipartition::new(
            Partition::new(mu.to_vec()).unwrap(),
            Partition::new(nu.to_vec()).unwrap(),
        )
    }

    #[test]
    fn boxes_example() {
        let b = bp(&[3, 1], &[2, 2, 1]);
        let pt = normal_basis(&b, 2).unwrap();
        assert_eq!(pt.dim(), 18);
        let mut v = vec![0; 18];
        v[normal_index(&b, 1, 3)] = 1;
        v[normal_index(&b, 2, 1)] = 1;
        assert_eq!(pt.v, v);
        // x moves v_{13} to v_{12}.
        let e = |i: usize| {
            let mut w = vec![0; 18];
            w[i] = 1;
            w
        };
        assert_eq!(pt.x.apply(&e(normal_index(&b, 1, 3))), e(normal_index(&b, 1, 2)));
        assert_eq!(
            pt.x.apply(&e(normal_index_star(&b, 1, 2))),
            e(normal_index_star(&b, 1, 3))
        );
    }

    #[test]
    fn tiny_cases() {
        let z = normal_basis(&Bipartition::empty(), 3).unwrap();
        assert_eq!(z.dim(), 0);
        let pt = normal_basis(&bp(&[1, 1], &[]), 2).unwrap();
        assert!(pt.x.is_zero());
        assert_eq!(pt.v, vec![1, 1, 0, 0]);
        // ⟨v11, v*11⟩ = 1 with v*11 last.
        assert_eq!(pt.space.pair(&[1, 0, 0, 0], &[0, 0, 0, 1]), 1);
        assert_eq!(pt.space.pair(&[0, 1, 0, 0], &[0, 0, 1, 0]), 1);
    }

    #[test]
    fn normal_basis_points_are_exotic_for_all_small_orbits() {
        for n in 0..=4 {
            for b in crate::combinatorics::enumerate_bipartitions(n) {
                for p in [2, 3, 5] {
                    let pt = normal_basis(&b, p).unwrap();
                    assert!(pt.space.is_self_adjoint(&pt.x));
                }
            }
        }
    }

    #[test]
    fn induced_forms() {
        let pt = normal_basis(&bp(&[], &[2]), 3).unwrap();
        let (dom, g) = induced_form(&pt.x, &pt.space, 0).unwrap();
        assert_eq!(dom.dim(), 4);
        assert_eq!(g, pt.space.form().clone());
        let (dom1, g1) = induced_form(&pt.x, &pt.space, 1).unwrap();
        assert_eq!(dom1.dim(), 2);
        assert_eq!(g1.rank(), 2);
        assert!(is_alternating(&g1));
        let zero = normal_basis(&bp(&[], &[1, 1]), 3).unwrap();
        assert_eq!(induced_form(&zero.x, &zero.space, 1).unwrap().0.dim(), 0);
    }

    #[test]
    fn induced_form_rejects_non_self_adjoint() {
        let space = SymplecticSpace::standard(1, 3);
        let mut y = FqMatrix::zeros(3, 2, 2);
        y.set(0, 0, 1);
        assert_eq!(induced_form(&y, &space, 1), Err(Error::NotSelfAdjoint));
    }

    #[test]
    fn perp_pp_basics() {
        let pt = normal_basis(&bp(&[], &[2, 2]), 3).unwrap();
        let im = pt.x.image();
        let zero = Subspace::zero(3, pt.dim());
        assert_eq!(perp_pp(&zero, &pt.x, &pt.space, 1).unwrap(), im);
        for l in crate::exactla::enumerate_subspaces(pt.dim(), 1, 3, Some(&im)).unwrap() {
            let pp = perp_pp(&l, &pt.x, &pt.space, 1).unwrap();
            assert_eq!(perp_pp(&pp, &pt.x, &pt.space, 1).unwrap(), l);
        }
        let outside = Subspace::full(3, pt.dim());
        assert!(perp_pp(&outside, &pt.x, &pt.space, 1).is_err());
    }

    #[test]
    fn isotropic_counts_f2() {
        let sp = SymplecticSpace::standard(2, 2);
        let full = sp.full_space();
        assert_eq!(enumerate_isotropic(&sp, 1, &full).count(), 15);
        assert_eq!(enumerate_isotropic(&sp, 2, &full).count(), 15);
        assert_eq!(enumerate_isotropic(&sp, 3, &full).count(), 0);
        for f in enumerate_isotropic(&sp, 2, &full) {
            assert!(sp.is_isotropic(&f));
            assert_eq!(sp.perp(&f).dim(), 4 - f.dim());
        }
    }

    #[test]
    fn grass_dims() {
        assert_eq!(grass_perp_dim(2, 4, 2).unwrap(), 3);
        for n in 1..6 {
            assert_eq!(grass_perp_dim(1, 2 * n, n).unwrap(), 2 * n - 1);
        }
        // k = r + 1: third term vanishes.
        assert_eq!(grass_perp_dim(2, 4, 1).unwrap(), 2 * 2 - 1);
        assert!(grass_perp_dim(4, 6, 3).is_err());
    }
}
