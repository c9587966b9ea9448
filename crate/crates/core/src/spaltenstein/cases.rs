//! The case analysis of isotropic `F ⊆ ker x ∩ (𝔽[x]v)^⊥` when `x² = 0`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::combinatorics::{Bipartition, Partition};
use crate::error::{Error, Result};
use crate::exactla::Subspace;
use crate::polyid::{eval_stratum_dim, Stratum};
use crate::symplectic::{grass_perp_dim, ExoticPoint};

use super::{allowed_space, check_guard, gaussian_binomial};

/// Which position `v` and `F` are in; suffixes `a`, `b`, `c` follow the
/// subcase order (`v ∈ F`, the intersection with `x(F^⊥)` grows, it does not).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseKind {
    X0V0,
    X0VnzInF,
    X0VnzNotF,
    V0,
    VInImA,
    VInImB,
    VInImC,
    VInKerA,
    VInKerB,
    VInKerC,
    VNotKerA,
    VNotKerB,
}

impl CaseKind {
    pub fn name(self) -> &'static str {
        match self {
            CaseKind::X0V0 => "X0V0",
            CaseKind::X0VnzInF => "X0Vnz_vInF",
            CaseKind::X0VnzNotF => "X0Vnz_vNotF",
            CaseKind::V0 => "V0",
            CaseKind::VInImA => "VInIm_a",
            CaseKind::VInImB => "VInIm_b",
            CaseKind::VInImC => "VInIm_c",
            CaseKind::VInKerA => "VInKer_a",
            CaseKind::VInKerB => "VInKer_b",
            CaseKind::VInKerC => "VInKer_c",
            CaseKind::VNotKerA => "VNotKer_a",
            CaseKind::VNotKerB => "VNotKer_b",
        }
    }

    pub fn is_x_zero(self) -> bool {
        matches!(self, CaseKind::X0V0 | CaseKind::X0VnzInF | CaseKind::X0VnzNotF)
    }
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A case together with `k_1 = k − k_2`, `k_2 = dim(F ∩ Im x)` and `h`, where
/// `2h = k_2 − dim(F ∩ x(F^⊥))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CaseTag {
    pub kind: CaseKind,
    pub k1: i64,
    pub k2: i64,
    pub h: i64,
}

impl CaseTag {
    pub fn new(kind: CaseKind, k1: i64, k2: i64, h: i64) -> Result<Self> {
        if k1 < 0 || k2 < 0 || h < 0 || 2 * h > k2 {
            return Err(Error::InvalidArgument(format!(
                "need k1, k2 ≥ 0 and 0 ≤ 2h ≤ k2, got k1={k1}, k2={k2}, h={h}"
            )));
        }
        if kind.is_x_zero() && (k2 != 0 || h != 0) {
            return Err(Error::InvalidArgument("x = 0 forces k2 = h = 0".into()));
        }
        Ok(CaseTag { kind, k1, k2, h })
    }

    pub fn k(&self) -> i64 {
        self.k1 + self.k2
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(k1={}, k2={}, h={})", self.kind, self.k1, self.k2, self.h)
    }
}

fn is_zero_vec(v: &[u32]) -> bool {
    v.iter().all(|&a| a == 0)
}

/// Classifies `F` for an exotic point with `x² = 0`.
pub fn classify_case_x2(pt: &ExoticPoint, f: &Subspace) -> Result<CaseTag> {
    Ok(classify_stratum_x2(pt, f)?.0)
}

/// The case of `F` and, for `x ≠ 0`, the stratum it lies in.
pub fn classify_stratum_x2(pt: &ExoticPoint, f: &Subspace) -> Result<(CaseTag, Option<Stratum>)> {
    let x = &pt.x;
    if !x.mul(x).is_zero() {
        return Err(Error::InvalidArgument("x² ≠ 0".into()));
    }
    if f.ambient_dim() != pt.dim() {
        return Err(Error::AmbientMismatch { left: pt.dim(), right: f.ambient_dim() });
    }
    if !pt.space.is_isotropic(f) {
        return Err(Error::InvalidArgument("F is not isotropic".into()));
    }
    if !allowed_space(pt, &pt.space.zero_space())?.contains(f) {
        return Err(Error::InvalidArgument("F ⊄ ker x ∩ (𝔽[x]v)^⊥".into()));
    }
    let k = f.dim() as i64;
    let v = &pt.v;
    let v_in_f = f.contains_vector(v);
    if x.is_zero() {
        let kind = match (is_zero_vec(v), v_in_f) {
            (true, _) => CaseKind::X0V0,
            (false, true) => CaseKind::X0VnzInF,
            (false, false) => CaseKind::X0VnzNotF,
        };
        return Ok((CaseTag::new(kind, k, 0, 0)?, None));
    }
    let im = x.image();
    let x_fperp = pt.space.perp(f).image_under(x);
    let f_rad = f.intersect(&x_fperp)?;
    let k2 = f.intersect(&im)?.dim() as i64;
    let defect = k2 - f_rad.dim() as i64;
    if defect % 2 != 0 {
        return Err(Error::InvarianceViolated(format!("odd rank defect {defect}")));
    }
    let h = defect / 2;
    let tag = |kind| CaseTag::new(kind, k - k2, k2, h);
    let grows = || -> Result<bool> {
        let fv = f.sum(&Subspace::span_of(pt.p(), pt.dim(), v))?;
        Ok(fv.intersect(&x_fperp)?.dim() > f_rad.dim())
    };
    let xv = x.apply(v);
    let (kind, stratum) = if is_zero_vec(v) {
        (CaseKind::V0, Stratum::X)
    } else if im.contains_vector(v) {
        if v_in_f {
            let s = if f_rad.contains_vector(v) { Stratum::X1 } else { Stratum::Y };
            (CaseKind::VInImA, s)
        } else if grows()? {
            (CaseKind::VInImB, Stratum::X2)
        } else {
            (CaseKind::VInImC, Stratum::X3)
        }
    } else if is_zero_vec(&xv) {
        if v_in_f {
            (CaseKind::VInKerA, Stratum::X4)
        } else if grows()? {
            (CaseKind::VInKerB, Stratum::X5)
        } else {
            (CaseKind::VInKerC, Stratum::X6)
        }
    } else if f.contains_vector(&xv) {
        (CaseKind::VNotKerA, Stratum::X7)
    } else {
        (CaseKind::VNotKerB, Stratum::X8)
    };
    Ok((tag(kind)?, Some(stratum)))
}

fn ones(a: i64) -> Partition {
    Partition::rectangle(1, a as usize)
}

fn twos_ones(a: i64, b: i64) -> Partition {
    Partition::twos_ones(a as usize, b as usize)
}

/// The exotic type of `(v + F, x|F^⊥/F)` predicted by the case analysis,
/// for the orbit with `μ + ν = 2^{n_2} 1^{n_1}`.
pub fn predict_exotic_type_x2(tag: &CaseTag, n1: i64, n2: i64) -> Result<Bipartition> {
    let CaseTag { kind, k1, k2, h } = *tag;
    let out_of_range = || Error::InvalidArgument(format!("{tag} is out of range for n1={n1}, n2={n2}"));
    if kind.is_x_zero() {
        if n2 != 0 || k1 > n1 {
            return Err(out_of_range());
        }
        let rest = ones(n1 - k1);
        return Ok(match kind {
            CaseKind::X0VnzNotF => Bipartition::new(rest, Partition::empty()),
            _ => Bipartition::new(Partition::empty(), rest),
        });
    }
    let n2p = n2 - k2 + h;
    let n1p = n1 - k1 + k2 - 2 * h;
    let long = n1 + n2 - k1 - h;
    if n2p < 0 || n1p < 0 || long < 0 {
        return Err(out_of_range());
    }
    let e = Partition::empty;
    Ok(match kind {
        CaseKind::V0 | CaseKind::VInImA | CaseKind::VInKerA => Bipartition::new(e(), twos_ones(n2p, n1p)),
        CaseKind::VInImB | CaseKind::VInKerB => Bipartition::new(ones(n2p), ones(long)),
        CaseKind::VInImC | CaseKind::VInKerC | CaseKind::VNotKerA => {
            Bipartition::new(ones(long), ones(n2p))
        }
        CaseKind::VNotKerB => Bipartition::new(twos_ones(n2p, n1p), e()),
        _ => unreachable!("x = 0 handled above"),
    })
}

/// Whether the stratum with parameters `(k, k_2, h)` inside `ker x` is nonempty:
/// `max{0, k−n_1} ≤ k_2 ≤ min{k, 2n_2}` and `max{0, k_2−n_2} ≤ h ≤ k_2/2`.
pub fn stratum_nonempty(n1: i64, n2: i64, k: i64, k2: i64, h: i64) -> bool {
    (0.max(k - n1)..=k.min(2 * n2)).contains(&k2) && (0.max(k2 - n2)..).contains(&h) && 2 * h <= k2
}

/// Closed-form dimension of a stratum.
pub fn stratum_dim(s: Stratum, n1: i64, n2: i64, k1: i64, k2: i64, h: i64) -> i64 {
    eval_stratum_dim(s, n1, n2, k1, k2, h)
}

/// A census key: the case, its parameters and (for `x ≠ 0`) the stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StratumKey {
    pub k2: i64,
    pub h: i64,
    pub tag: CaseTag,
    pub stratum: Option<Stratum>,
}

impl StratumKey {
    /// Dimension of the piece for the orbit with `μ + ν = 2^{n_2} 1^{n_1}`.
    /// For `x = 0` these are isotropic Grassmannians of `V`, of `v^⊥/v` or of `v^⊥`.
    pub fn dimension(&self, n1: i64, n2: i64) -> Result<i64> {
        let t = &self.tag;
        match (self.stratum, t.kind) {
            (Some(s), _) => Ok(stratum_dim(s, n1, n2, t.k1, t.k2, t.h)),
            (None, CaseKind::X0V0) => grass_perp_dim(t.k1, 2 * n1, n1),
            (None, CaseKind::X0VnzInF) => grass_perp_dim(t.k1 - 1, 2 * n1 - 2, n1 - 1),
            (None, CaseKind::X0VnzNotF) => grass_perp_dim(t.k1, 2 * n1 - 1, n1 - 1),
            _ => Err(Error::InvalidArgument("x ≠ 0 requires a stratum".into())),
        }
    }
}

/// Counts the isotropic `k`-subspaces of `ker x ∩ (𝔽[x]v)^⊥` by case.
pub fn stratum_census_x2(pt: &ExoticPoint, k: usize, guard: u64) -> Result<BTreeMap<StratumKey, u64>> {
    let allowed = allowed_space(pt, &pt.space.zero_space())?;
    check_guard(gaussian_binomial(allowed.dim(), k, u64::from(pt.p())), guard)?;
    let mut out = BTreeMap::new();
    for f in crate::symplectic::enumerate_isotropic(&pt.space, k, &allowed) {
        let (tag, stratum) = classify_stratum_x2(pt, &f)?;
        let key = StratumKey { k2: tag.k2, h: tag.h, tag, stratum };
        *out.entry(key).or_default() += 1;
    }
    Ok(out)
}
