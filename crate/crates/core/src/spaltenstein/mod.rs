//! Exotic Spaltenstein fibres over 𝔽_q: flags of a given type compatible
//! with an exotic point, the map to bipartition sequences, censuses by that
//! map, the case analysis for `x² = 0` and point-count fitting.

mod cases;
mod fit;
mod theorem;

pub use cases::{
    classify_case_x2, classify_stratum_x2, predict_exotic_type_x2, stratum_census_x2, stratum_dim,
    stratum_nonempty, CaseKind, CaseTag, StratumKey,
};
pub use fit::{
    fit_count_polynomial, gaussian_binomial, interpolate, CountPolynomial, CountSeries, NoFit,
    DEFAULT_PRIMES,
};
pub use theorem::{
    conjecture_evidence, fitted_key_degrees, stratified_key_degrees, twos_ones_counts, verify_theorem_main, DegreeMethod,
    KeyVerdict, TheoremReport,
};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{BipartitionSequence, Composition};
use crate::error::{Error, Result};
use crate::exactla::{EchelonIter, FqMatrix, Subspace};
use crate::jordan::{exotic_jordan_type, exotic_type_of_subquotient};
use crate::symplectic::ExoticPoint;

/// Default refusal threshold for projected enumeration sizes.
pub const DEFAULT_GUARD: u64 = 10_000_000;

/// The type `α` of a partial symplectic flag, with its palindromic doubling
/// and partial sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagType {
    pub alpha: Composition,
}

impl FlagType {
    pub fn new(alpha: Composition) -> Self {
        FlagType { alpha }
    }

    pub fn n(&self) -> usize {
        self.alpha.size() as usize
    }

    pub fn m(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha_hat(&self) -> Vec<u32> {
        self.alpha.hat()
    }

    /// `α̌_0 = 0, α̌_1, …, α̌_{2m} = 2n`.
    pub fn alpha_check(&self) -> Vec<u32> {
        self.alpha.check()
    }

    pub fn tail(&self) -> FlagType {
        FlagType::new(self.alpha.tail())
    }
}

/// A chain `F_{α̌_1} ⊆ … ⊆ F_{α̌_{2m}} = V`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialFlag {
    pub subspaces: Vec<Subspace>,
}

impl PartialFlag {
    /// Completes the lower half `F_{α̌_1}, …, F_{α̌_m}` by perpendiculars.
    pub fn from_lower_half(pt: &ExoticPoint, lower: Vec<Subspace>) -> Self {
        let mut subspaces = lower.clone();
        for f in lower.iter().rev().skip(1) {
            subspaces.push(pt.space.perp(f));
        }
        if !lower.is_empty() {
            subspaces.push(pt.space.full_space());
        }
        PartialFlag { subspaces }
    }

    /// `F_{α̌_i}` for `0 ≤ i ≤ 2m`.
    pub fn step(&self, i: usize, ambient: usize, p: u32) -> Subspace {
        if i == 0 {
            Subspace::zero(p, ambient)
        } else {
            self.subspaces[i - 1].clone()
        }
    }

    pub fn lower_half(&self) -> &[Subspace] {
        &self.subspaces[..self.subspaces.len() / 2]
    }

    /// Whether the flag has type `ft`, is symplectic and lies in the fibre
    /// over `pt`.
    pub fn check_in_fiber(&self, pt: &ExoticPoint, ft: &FlagType) -> Result<()> {
        let check = ft.alpha_check();
        let m = ft.m();
        let bad = |msg: String| Err(Error::NotInFiber(msg));
        if self.subspaces.len() != 2 * m {
            return bad(format!("expected {} subspaces, got {}", 2 * m, self.subspaces.len()));
        }
        let (p, d) = (pt.p(), pt.dim());
        for i in 1..=2 * m {
            let f = self.step(i, d, p);
            if f.ambient_dim() != d || f.dim() != check[i] as usize {
                return bad(format!("F_{} has the wrong dimension", check[i]));
            }
            if !f.contains(&self.step(i - 1, d, p)) {
                return bad(format!("F_{} does not contain its predecessor", check[i]));
            }
            if pt.space.perp(&f) != self.step(2 * m - i, d, p) {
                return bad(format!("F_{}^⊥ is not F_{}", check[i], check[2 * m - i]));
            }
            if !self.step(i - 1, d, p).contains(&f.image_under(&pt.x)) {
                return bad(format!("x(F_{}) ⊄ F_{}", check[i], check[i - 1]));
            }
        }
        if m > 0 && !self.step(m, d, p).contains_vector(&pt.v) {
            return bad("v ∉ F_n".into());
        }
        Ok(())
    }
}

/// One level of the depth-first flag search: isotropic extensions of `base`
/// inside `K = x^{-1}(base) ∩ base^⊥ ∩ (𝔽[x]v)^⊥`.
#[derive(Clone, Debug)]
struct Level {
    base: Subspace,
    complement: FqMatrix,
    iter: EchelonIter,
}

fn allowed_space(pt: &ExoticPoint, base: &Subspace) -> Result<Subspace> {
    let cv_perp = pt.space.perp(&pt.cyclic_span());
    Subspace::preimage(&pt.x, base)
        .intersect(&pt.space.perp(base))?
        .intersect(&cv_perp)
}

fn make_level(pt: &ExoticPoint, base: Subspace, k: usize) -> Result<Level> {
    let allowed = allowed_space(pt, &base)?;
    let rows = allowed.complement_of(&base);
    let complement = FqMatrix::from_rows(pt.p(), pt.dim(), &rows);
    let gram = complement.mul(pt.space.form()).mul(&complement.transpose());
    let iter = EchelonIter::new(pt.p(), rows.len(), k, Some(gram));
    Ok(Level { base, complement, iter })
}

impl Level {
    fn extend(&self, coeffs: &FqMatrix) -> Subspace {
        if coeffs.rows() == 0 {
            return self.base.clone();
        }
        let new = Subspace::from_matrix(&coeffs.mul(&self.complement));
        self.base.sum(&new).expect("same ambient space")
    }
}

/// Depth-first stream of the flags of a fibre.
#[derive(Clone, Debug)]
pub struct FiberIter {
    pt: ExoticPoint,
    sizes: Vec<usize>,
    /// `chosen[..prefix_len]` is fixed; `stack[j]` chooses `chosen[prefix_len + j]`.
    prefix_len: usize,
    stack: Vec<Level>,
    chosen: Vec<Subspace>,
    /// Set when the prefix is already a full lower half.
    pending_complete: bool,
}

impl FiberIter {
    fn new(pt: &ExoticPoint, ft: &FlagType, prefix: Vec<Subspace>) -> Result<Self> {
        let sizes: Vec<usize> = ft.alpha.parts().iter().map(|&a| a as usize).collect();
        let prefix_len = prefix.len();
        let mut it = FiberIter {
            pt: pt.clone(),
            sizes,
            prefix_len,
            stack: Vec::new(),
            chosen: prefix,
            pending_complete: false,
        };
        if prefix_len == it.sizes.len() {
            it.pending_complete = true;
        } else {
            let base = it
                .chosen
                .last()
                .cloned()
                .unwrap_or_else(|| pt.space.zero_space());
            it.stack.push(make_level(pt, base, it.sizes[prefix_len])?);
        }
        Ok(it)
    }
}

impl Iterator for FiberIter {
    type Item = PartialFlag;

    fn next(&mut self) -> Option<PartialFlag> {
        if self.pending_complete {
            self.pending_complete = false;
            return Some(PartialFlag::from_lower_half(&self.pt, self.chosen.clone()));
        }
        loop {
            if self.stack.is_empty() {
                return None;
            }
            let level = self.prefix_len + self.stack.len() - 1;
            let top = self.stack.last_mut().expect("nonempty");
            let Some(coeffs) = top.iter.next() else {
                self.stack.pop();
                if self.stack.is_empty() {
                    return None;
                }
                continue;
            };
            let f = top.extend(&coeffs);
            self.chosen.truncate(level);
            self.chosen.push(f.clone());
            if level + 1 == self.sizes.len() {
                return Some(PartialFlag::from_lower_half(&self.pt, self.chosen.clone()));
            }
            let next = make_level(&self.pt, f, self.sizes[level + 1]).expect("same ambient space");
            self.stack.push(next);
        }
    }
}

/// All flags of type `α` in the fibre over `(v, x)`.
pub fn enumerate_fiber(pt: &ExoticPoint, ft: &FlagType) -> Result<FiberIter> {
    check_type(pt, ft)?;
    FiberIter::new(pt, ft, Vec::new())
}

fn check_type(pt: &ExoticPoint, ft: &FlagType) -> Result<()> {
    if 2 * ft.n() != pt.dim() {
        return Err(Error::SizeMismatch(format!(
            "|α| = {} but dim V = {}",
            ft.n(),
            pt.dim()
        )));
    }
    Ok(())
}

/// The first-step choices `F_{α̌_1}`.
pub fn first_steps(pt: &ExoticPoint, ft: &FlagType) -> Result<Vec<Subspace>> {
    check_type(pt, ft)?;
    let Some(&a1) = ft.alpha.parts().first() else {
        return Ok(Vec::new());
    };
    let level = make_level(pt, pt.space.zero_space(), a1 as usize)?;
    Ok(level.iter.clone().map(|c| level.extend(&c)).collect())
}

/// Projected number of flags: `[dim K_1, α_1]_q · Π_{i≥2} [2(n − α̌_{i−1}), α_i]_q`.
pub fn estimate_fiber_size(pt: &ExoticPoint, ft: &FlagType) -> Result<u128> {
    check_type(pt, ft)?;
    let q = u64::from(pt.p());
    let parts = ft.alpha.parts();
    let Some(&a1) = parts.first() else {
        return Ok(1);
    };
    let k1 = allowed_space(pt, &pt.space.zero_space())?.dim();
    let mut est = gaussian_binomial(k1, a1 as usize, q);
    let n = ft.n();
    let mut so_far = a1 as usize;
    for &a in &parts[1..] {
        est = est.saturating_mul(gaussian_binomial(2 * (n - so_far), a as usize, q));
        so_far += a as usize;
    }
    Ok(est)
}

/// The effective guard: `EXOTIC_GUARD` overrides the supplied value.
pub fn effective_guard(requested: u64) -> u64 {
    std::env::var("EXOTIC_GUARD")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&g: &u64| g >= 1)
        .unwrap_or(requested)
}

pub fn check_guard(estimated: u128, guard: u64) -> Result<()> {
    if estimated > u128::from(guard) {
        return Err(Error::GuardExceeded { estimated, guard });
    }
    Ok(())
}

/// `(Φ^m, …, Φ^0)`: the exotic types of `(v + F_{α̌_i}, x|F_{α̌_i}^⊥/F_{α̌_i})`.
pub fn phi(pt: &ExoticPoint, ft: &FlagType, flag: &PartialFlag) -> Result<BipartitionSequence> {
    flag.check_in_fiber(pt, ft)?;
    Ok(phi_unchecked(pt, flag, &exotic_jordan_type(pt)?))
}

fn phi_unchecked(
    pt: &ExoticPoint,
    flag: &PartialFlag,
    top: &crate::combinatorics::Bipartition,
) -> BipartitionSequence {
    let lower = flag.lower_half();
    let mut steps = Vec::with_capacity(lower.len() + 1);
    for (i, f) in lower.iter().enumerate().rev() {
        if i + 1 == lower.len() {
            steps.push(crate::combinatorics::Bipartition::empty());
        } else {
            steps.push(
                exotic_type_of_subquotient(pt, f).expect("subquotients of exotic points are exotic"),
            );
        }
    }
    steps.push(top.clone());
    BipartitionSequence(steps)
}

/// Number of flags for each value of `Φ`.
pub type Census = BTreeMap<BipartitionSequence, u64>;

/// Exhaustive census of the fibre by `Φ`, parallel over the first step.
pub fn fiber_census(pt: &ExoticPoint, ft: &FlagType, guard: u64) -> Result<Census> {
    check_guard(estimate_fiber_size(pt, ft)?, guard)?;
    let top = exotic_jordan_type(pt)?;
    if ft.m() == 0 {
        let flag = PartialFlag::from_lower_half(pt, Vec::new());
        return Ok(BTreeMap::from([(phi_unchecked(pt, &flag, &top), 1)]));
    }
    let firsts = first_steps(pt, ft)?;
    let partials: Vec<Census> = firsts
        .into_par_iter()
        .map(|f1| {
            let mut local = Census::new();
            let it = FiberIter::new(pt, ft, vec![f1]).expect("validated above");
            for flag in it {
                *local.entry(phi_unchecked(pt, &flag, &top)).or_default() += 1;
            }
            local
        })
        .collect();
    let mut out = Census::new();
    for part in partials {
        for (k, c) in part {
            *out.entry(k).or_default() += c;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
