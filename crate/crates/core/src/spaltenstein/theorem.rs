//! Desk-scale check that the top-dimensional pieces of a fibre with
//! `x² = 0` are indexed by semistandard bitableaux.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::combinatorics::{
    d_alpha, enumerate_semistandard, is_semistandard, sequence_to_bitableau, Bipartition,
    BipartitionSequence, Composition,
};
use crate::error::{Error, Result};
use crate::jordan::exotic_type_of_subquotient;
use crate::symplectic::{enumerate_isotropic, normal_basis};

use super::{
    allowed_space, check_guard, classify_stratum_x2, fiber_census, fit_count_polynomial,
    gaussian_binomial, CountSeries, FlagType, StratumKey,
};

/// `(n_1, n_2)` with `μ + ν = 2^{n_2} 1^{n_1}`, or `None` if a part exceeds 2.
pub fn twos_ones_counts(b: &Bipartition) -> Option<(i64, i64)> {
    let s = b.row_sums();
    if s.largest() > 2 {
        return None;
    }
    Some((s.multiplicity(1) as i64, s.multiplicity(2) as i64))
}

/// Degrees of the fitted count polynomial of every `Φ`-value, one census per
/// prime; `Err` carries the reason a key did not fit.
pub fn fitted_key_degrees(
    b: &Bipartition,
    alpha: &Composition,
    primes: &[u32],
    guard: u64,
) -> Result<BTreeMap<BipartitionSequence, std::result::Result<i64, String>>> {
    let ft = FlagType::new(alpha.clone());
    let mut per_prime = Vec::with_capacity(primes.len());
    for &q in primes {
        let pt = normal_basis(b, q)?;
        per_prime.push((q, fiber_census(&pt, &ft, guard)?));
    }
    let keys: BTreeSet<BipartitionSequence> =
        per_prime.iter().flat_map(|(_, c)| c.keys().cloned()).collect();
    let bound = primes.len().saturating_sub(2);
    let mut out = BTreeMap::new();
    for key in keys {
        let mut cs = CountSeries::new();
        for (q, census) in &per_prime {
            cs.insert(*q, census.get(&key).copied().unwrap_or(0))?;
        }
        let verdict = match fit_count_polynomial(&cs, bound) {
            Ok(p) => p
                .degree()
                .map(|d| d as i64)
                .ok_or_else(|| "zero polynomial".to_string()),
            Err(e) => Err(e.reason),
        };
        out.insert(key, verdict);
    }
    Ok(out)
}

/// Key degrees by recursion on the first step: the flags with a given `Φ`
/// form a union over first-step pieces of bundles whose fibre is the
/// corresponding piece for the subquotient orbit. A piece counts as present if
/// some prime in `primes` realizes it.
pub fn stratified_key_degrees(
    b: &Bipartition,
    alpha: &Composition,
    primes: &[u32],
    guard: u64,
) -> Result<BTreeMap<BipartitionSequence, i64>> {
    let mut memo = BTreeMap::new();
    stratified_rec(b, alpha, primes, guard, &mut memo)
}

type Memo = BTreeMap<(Bipartition, Composition), BTreeMap<BipartitionSequence, i64>>;

fn stratified_rec(
    b: &Bipartition,
    alpha: &Composition,
    primes: &[u32],
    guard: u64,
    memo: &mut Memo,
) -> Result<BTreeMap<BipartitionSequence, i64>> {
    if let Some(hit) = memo.get(&(b.clone(), alpha.clone())) {
        return Ok(hit.clone());
    }
    let (n1, n2) = twos_ones_counts(b)
        .ok_or_else(|| Error::InvalidArgument(format!("{b} does not have x² = 0")))?;
    if b.size() != alpha.size() {
        return Err(Error::InvalidArgument("|α| differs from the orbit size".into()));
    }
    let mut out = BTreeMap::new();
    let Some(&k) = alpha.parts().first() else {
        out.insert(BipartitionSequence(vec![b.clone()]), 0);
        memo.insert((b.clone(), alpha.clone()), out.clone());
        return Ok(out);
    };
    // Realized first-step pieces and the subquotient orbit each one leads to.
    let mut pieces: BTreeSet<(StratumKey, Bipartition)> = BTreeSet::new();
    for &q in primes {
        let pt = normal_basis(b, q)?;
        let allowed = allowed_space(&pt, &pt.space.zero_space())?;
        check_guard(gaussian_binomial(allowed.dim(), k as usize, u64::from(q)), guard)?;
        for f in enumerate_isotropic(&pt.space, k as usize, &allowed) {
            let (tag, stratum) = classify_stratum_x2(&pt, &f)?;
            let key = StratumKey { k2: tag.k2, h: tag.h, tag, stratum };
            pieces.insert((key, exotic_type_of_subquotient(&pt, &f)?));
        }
    }
    let tail = alpha.tail();
    for (key, sub) in pieces {
        let base = key.dimension(n1, n2)?;
        for (subkey, deg) in stratified_rec(&sub, &tail, primes, guard, memo)? {
            let mut steps = subkey.0;
            steps.push(b.clone());
            let e = out.entry(BipartitionSequence(steps)).or_insert(i64::MIN);
            *e = (*e).max(base + deg);
        }
    }
    memo.insert((b.clone(), alpha.clone()), out.clone());
    Ok(out)
}

/// How key degrees are obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum DegreeMethod {
    Fitted { primes: Vec<u32> },
    Stratified { primes: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeyVerdict {
    pub key: BipartitionSequence,
    pub bitableau: Option<String>,
    pub semistandard: bool,
    pub degree: Option<i64>,
    pub fit_failure: Option<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub bipartition: Bipartition,
    pub alpha: Composition,
    pub method: DegreeMethod,
    pub d_alpha: i64,
    pub keys: Vec<KeyVerdict>,
    /// Semistandard bitableaux that never appeared as a key.
    pub missing_semistandard: Vec<String>,
    pub passed: bool,
}

/// Checks that the keys of degree `d^α` are exactly the semistandard
/// bitableaux and every other key has smaller degree.
pub fn verify_theorem_main(
    b: &Bipartition,
    alpha: &Composition,
    method: DegreeMethod,
    guard: u64,
) -> Result<TheoremReport> {
    if twos_ones_counts(b).is_none() {
        return Err(Error::InvalidArgument(format!("{b} does not have x² = 0")));
    }
    check_top_keys(b, alpha, method, guard)
}

/// The same comparison for an arbitrary orbit, as evidence for the general
/// conjecture; only fitted degrees are available there.
pub fn conjecture_evidence(
    b: &Bipartition,
    alpha: &Composition,
    method: DegreeMethod,
    guard: u64,
) -> Result<TheoremReport> {
    if matches!(method, DegreeMethod::Stratified { .. }) && twos_ones_counts(b).is_none() {
        return Err(Error::InvalidArgument("the recursion needs x² = 0".into()));
    }
    check_top_keys(b, alpha, method, guard)
}

fn check_top_keys(
    b: &Bipartition,
    alpha: &Composition,
    method: DegreeMethod,
    guard: u64,
) -> Result<TheoremReport> {
    let d = d_alpha(b, alpha)?;
    let degrees: BTreeMap<BipartitionSequence, std::result::Result<i64, String>> = match &method {
        DegreeMethod::Fitted { primes } => fitted_key_degrees(b, alpha, primes, guard)?,
        DegreeMethod::Stratified { primes } => stratified_key_degrees(b, alpha, primes, guard)?
            .into_iter()
            .map(|(k, v)| (k, Ok(v)))
            .collect(),
    };
    let m = alpha.len();
    let expected: BTreeSet<BipartitionSequence> = enumerate_semistandard(b, alpha)
        .iter()
        .map(|t| t.to_sequence(m))
        .collect();
    let mut keys = Vec::new();
    for (key, deg) in degrees.iter() {
        let tab = sequence_to_bitableau(key).ok();
        let semistandard = match &tab {
            Some(t) => is_semistandard(t, alpha)?,
            None => false,
        };
        let (degree, fit_failure) = match deg {
            Ok(v) => (Some(*v), None),
            Err(e) => (None, Some(e.clone())),
        };
        let ok = match degree {
            Some(v) if semistandard => v == d,
            Some(v) => v < d,
            None => false,
        };
        keys.push(KeyVerdict {
            key: key.clone(),
            bitableau: tab.map(|t| t.to_string()),
            semistandard,
            degree,
            fit_failure,
            ok,
        });
    }
    let missing_semistandard: Vec<String> = expected
        .iter()
        .filter(|k| !degrees.contains_key(*k))
        .map(|k| k.to_string())
        .collect();
    let passed = keys.iter().all(|k| k.ok) && missing_semistandard.is_empty();
    Ok(TheoremReport {
        bipartition: b.clone(),
        alpha: alpha.clone(),
        method,
        d_alpha: d,
        keys,
        missing_semistandard,
        passed,
    })
}
