//! Relative positions of pairs of partial symplectic flags and the
//! geometric extraction of a correspondence between position matrices and
//! pairs of semistandard bitableaux.
//!
//! The incidence variety of triples `(F, F', (v, x))` is counted through its
//! projection to flag pairs: since `Sp(V)` moves any flag of type `α` to a
//! fixed standard one, the count is `|flags of type α| · Σ_{F'} q^{dim L(F₀, F')}`,
//! where `L(F₀, F')` is the linear space of `(v, x)` compatible with both flags.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    enumerate_bipartitions, enumerate_semistandard, BipartitionSequence, Bitableau,
    Composition,
};
use crate::error::{Error, Result};
use crate::exactla::{FqMatrix, Subspace};
use crate::spaltenstein::{
    check_guard, enumerate_fiber, fit_count_polynomial, phi, CountSeries, FlagType, PartialFlag,
};
use crate::symplectic::{ExoticPoint, SymplecticSpace};

/// The matrix `a_{ij} = dim(F_i ∩ F'_j) − dim(F_{i−1} ∩ F'_j) − dim(F_i ∩ F'_{j−1}) + dim(F_{i−1} ∩ F'_{j−1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RelPosMatrix(pub Vec<Vec<u32>>);

impl RelPosMatrix {
    pub fn rows(&self) -> usize {
        self.0.len()
    }

    pub fn cols(&self) -> usize {
        self.0.first().map_or(0, Vec::len)
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.0.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.cols()).map(|j| self.0.iter().map(|r| r[j]).sum()).collect()
    }

    pub fn is_centrally_symmetric(&self) -> bool {
        let (r, c) = (self.rows(), self.cols());
        (0..r).all(|i| (0..c).all(|j| self.0[i][j] == self.0[r - 1 - i][c - 1 - j]))
    }

    /// Row sums `α̂`, column sums `β̂` and central symmetry.
    pub fn check(&self, alpha: &Composition, beta: &Composition) -> Result<()> {
        if self.0.iter().any(|r| r.len() != self.cols()) {
            return Err(Error::InvalidArgument("ragged matrix".into()));
        }
        if self.row_sums() != alpha.hat() || self.col_sums() != beta.hat() {
            return Err(Error::InvalidArgument(format!("{self}: wrong row or column sums")));
        }
        if !self.is_centrally_symmetric() {
            return Err(Error::InvalidArgument(format!("{self}: not centrally symmetric")));
        }
        Ok(())
    }

    /// Row-major entries joined by commas.
    pub fn flattened(&self) -> String {
        let v: Vec<String> = self.0.iter().flatten().map(u32::to_string).collect();
        v.join(",")
    }
}

impl fmt::Display for RelPosMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| format!("[{}]", r.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

fn flag_ambient(f: &PartialFlag) -> Option<(usize, u32)> {
    f.subspaces.last().map(|s| (s.ambient_dim(), s.p()))
}

pub fn relative_position(f: &PartialFlag, g: &PartialFlag) -> Result<RelPosMatrix> {
    let (d, p) = match (flag_ambient(f), flag_ambient(g)) {
        (None, None) => return Ok(RelPosMatrix(Vec::new())),
        (Some(a), Some(b)) if a == b => a,
        (a, b) => {
            return Err(Error::AmbientMismatch {
                left: a.map_or(0, |x| x.0),
                right: b.map_or(0, |x| x.0),
            })
        }
    };
    let (r, c) = (f.subspaces.len(), g.subspaces.len());
    let mut dims = vec![vec![0i64; c + 1]; r + 1];
    for (i, row) in dims.iter_mut().enumerate().skip(1) {
        let fi = f.step(i, d, p);
        for (j, cell) in row.iter_mut().enumerate().skip(1) {
            *cell = fi.intersect(&g.step(j, d, p))?.dim() as i64;
        }
    }
    let data = (1..=r)
        .map(|i| {
            (1..=c)
                .map(|j| (dims[i][j] - dims[i - 1][j] - dims[i][j - 1] + dims[i - 1][j - 1]) as u32)
                .collect()
        })
        .collect();
    Ok(RelPosMatrix(data))
}

/// All matrices with row sums `α̂`, column sums `β̂` and central symmetry,
/// in row-major lexicographic order.
pub fn enumerate_m(alpha: &Composition, beta: &Composition) -> Result<Vec<RelPosMatrix>> {
    if alpha.size() != beta.size() {
        return Err(Error::InvalidArgument(format!("|α| = {} but |β| = {}", alpha.size(), beta.size())));
    }
    let (rs, cs) = (alpha.hat(), beta.hat());
    let (r, c) = (rs.len(), cs.len());
    let mut out = Vec::new();
    let mut grid = vec![vec![0u32; c]; r];
    let mut col_left = cs.clone();
    let mut row_left = rs.clone();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        cell: usize,
        r: usize,
        c: usize,
        grid: &mut Vec<Vec<u32>>,
        row_left: &mut Vec<u32>,
        col_left: &mut Vec<u32>,
        out: &mut Vec<RelPosMatrix>,
    ) {
        if cell == r * c {
            if row_left.iter().chain(col_left.iter()).all(|&x| x == 0) {
                out.push(RelPosMatrix(grid.clone()));
            }
            return;
        }
        let (i, j) = (cell / c, cell % c);
        let mirror = (r - 1 - i) * c + (c - 1 - j);
        let range: Vec<u32> = if mirror < cell {
            vec![grid[r - 1 - i][c - 1 - j]]
        } else {
            let hi = row_left[i].min(col_left[j]);
            let hi = if mirror > cell {
                hi.min(row_left[r - 1 - i]).min(col_left[c - 1 - j])
            } else {
                hi
            };
            (0..=hi).collect()
        };
        for val in range {
            if val > row_left[i] || val > col_left[j] {
                continue;
            }
            // A row is finished at its last cell.
            if j == c - 1 && row_left[i] != val {
                continue;
            }
            grid[i][j] = val;
            row_left[i] -= val;
            col_left[j] -= val;
            rec(cell + 1, r, c, grid, row_left, col_left, out);
            row_left[i] += val;
            col_left[j] += val;
            grid[i][j] = 0;
        }
    }
    rec(0, r, c, &mut grid, &mut row_left, &mut col_left, &mut out);
    Ok(out)
}

/// `2n² − ½Σ(α_i² − α_i) − ½Σ(β_i² − β_i)`.
pub fn steinberg_dim_prediction(alpha: &Composition, beta: &Composition, n: u32) -> i64 {
    2 * i64::from(n) * i64::from(n) - alpha.half_sum_sq() as i64 - beta.half_sum_sq() as i64
}

/// The flag whose `i`-th piece is spanned by the first `α̌_i` basis vectors.
pub fn standard_flag(space: &SymplecticSpace, ft: &FlagType) -> PartialFlag {
    let (d, p) = (space.dim(), space.p());
    let subspaces = ft.alpha_check()[1..]
        .iter()
        .map(|&k| {
            let rows: Vec<Vec<u32>> = (0..k as usize)
                .map(|a| {
                    let mut e = vec![0; d];
                    e[a] = 1;
                    e
                })
                .collect();
            Subspace::from_rows(p, d, &rows)
        })
        .collect();
    PartialFlag { subspaces }
}

fn zero_point(n: usize, p: u32) -> ExoticPoint {
    let space = SymplecticSpace::standard(n, p);
    ExoticPoint::new(space, FqMatrix::zeros(p, 2 * n, 2 * n), vec![0; 2 * n])
        .expect("the zero point is exotic")
}

/// The pairs `(v, x)` with `x` self-adjoint, `x(F_i) ⊆ F_{i−1}` and
/// `x(G_j) ⊆ G_{j−1}` for all steps, and `v ∈ F_n ∩ G_n`, as a subspace of
/// `𝔽^{2n} ⊕ 𝔽^{2n×2n}` (coordinates: `v`, then `x` row-major).
pub fn incidence_space(space: &SymplecticSpace, f: &PartialFlag, g: &PartialFlag) -> Result<Subspace> {
    let (d, p) = (space.dim(), space.p());
    let unknowns = d + d * d;
    let xi = |r: usize, c: usize| d + r * d + c;
    let form = space.form();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    // Ω·x alternating: (Ωx)_{ab} + (Ωx)_{ba} = 0 and (Ωx)_{aa} = 0.
    for a in 0..d {
        for b in a..d {
            let mut row = vec![0u32; unknowns];
            for r in 0..d {
                let wa = form.get(a, r);
                row[xi(r, b)] = (row[xi(r, b)] + wa) % p;
                if a != b {
                    let wb = form.get(b, r);
                    row[xi(r, a)] = (row[xi(r, a)] + wb) % p;
                }
            }
            rows.push(row);
        }
    }
    for flag in [f, g] {
        let m = flag.subspaces.len();
        for i in 1..=m {
            let ann = flag.step(i - 1, d, p).annihilator();
            for fv in flag.step(i, d, p).basis_vectors() {
                for w in ann.basis_vectors() {
                    let mut row = vec![0u32; unknowns];
                    for r in 0..d {
                        for c in 0..d {
                            row[xi(r, c)] = ((u64::from(w[r]) * u64::from(fv[c])) % u64::from(p)) as u32;
                        }
                    }
                    rows.push(row);
                }
            }
        }
        let half = m / 2;
        for w in flag.step(half, d, p).annihilator().basis_vectors() {
            let mut row = vec![0u32; unknowns];
            row[..d].copy_from_slice(&w);
            rows.push(row);
        }
    }
    Ok(FqMatrix::from_rows(p, unknowns, &rows).kernel())
}

fn split_point(space: &SymplecticSpace, z: &[u32]) -> Result<ExoticPoint> {
    let d = space.dim();
    let x = FqMatrix::new(space.p(), d, d, z[d..].to_vec())?;
    ExoticPoint::new(space.clone(), x, z[..d].to_vec())
}

/// All vectors of a subspace, each once.
fn subspace_points(s: &Subspace) -> impl Iterator<Item = Vec<u32>> + '_ {
    let k = s.dim();
    let p = s.p();
    let basis = s.basis_vectors();
    let total = (p as u64).checked_pow(k as u32).expect("guarded size");
    (0..total).map(move |mut idx| {
        let mut z = vec![0u32; s.ambient_dim()];
        for b in &basis {
            let c = (idx % u64::from(p)) as u32;
            idx /= u64::from(p);
            if c != 0 {
                for (zi, &bi) in z.iter_mut().zip(b) {
                    *zi = ((u64::from(*zi) + u64::from(c) * u64::from(bi)) % u64::from(p)) as u32;
                }
            }
        }
        z
    })
}

/// Counts over one prime.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairCensus {
    pub q: u32,
    /// Number of flags of type `α`.
    pub flag_count: u64,
    /// `Σ q^{dim L(F₀, F')}` over `F'` in each relative position.
    pub weighted: BTreeMap<RelPosMatrix, u64>,
    /// Points `(F', (v, x))` split by relative position and the two values of `Φ`;
    /// empty unless points were requested.
    pub pairs: BTreeMap<RelPosMatrix, BTreeMap<(BipartitionSequence, BipartitionSequence), u64>>,
}

impl PairCensus {
    /// Points of the whole incidence variety over `𝔽_q`.
    pub fn total(&self) -> BigInt {
        BigInt::from(self.flag_count) * self.weighted.values().map(|&w| BigInt::from(w)).sum::<BigInt>()
    }
}

/// Enumerates `F'` of type `β` against the standard flag of type `α`; with
/// `with_points`, also every `(v, x)` compatible with both.
pub fn pair_census(
    alpha: &Composition,
    beta: &Composition,
    q: u32,
    with_points: bool,
    guard: u64,
) -> Result<PairCensus> {
    if alpha.size() != beta.size() {
        return Err(Error::InvalidArgument("|α| ≠ |β|".into()));
    }
    let n = alpha.size() as usize;
    let zero = zero_point(n, q);
    let (fa, fb) = (FlagType::new(alpha.clone()), FlagType::new(beta.clone()));
    let flag_count = enumerate_fiber(&zero, &fa)?.count() as u64;
    let f0 = standard_flag(&zero.space, &fa);
    let others: Vec<PartialFlag> = enumerate_fiber(&zero, &fb)?.collect();
    let spaces: Vec<(RelPosMatrix, Subspace)> = others
        .par_iter()
        .map(|g| Ok((relative_position(&f0, g)?, incidence_space(&zero.space, &f0, g)?)))
        .collect::<Result<_>>()?;
    let mut weighted = BTreeMap::new();
    let mut points: u128 = 0;
    for (a, l) in &spaces {
        let w = u64::from(q).pow(l.dim() as u32);
        *weighted.entry(a.clone()).or_default() += w;
        points += u128::from(w);
    }
    let mut census = PairCensus { q, flag_count, weighted, pairs: BTreeMap::new() };
    if !with_points {
        return Ok(census);
    }
    check_guard(points, guard)?;
    let parts: Vec<(RelPosMatrix, BTreeMap<_, u64>)> = others
        .par_iter()
        .zip(spaces.par_iter())
        .map(|(g, (a, l))| {
            let mut local: BTreeMap<(BipartitionSequence, BipartitionSequence), u64> = BTreeMap::new();
            for z in subspace_points(l) {
                let pt = split_point(&zero.space, &z)?;
                let key = (phi(&pt, &fa, &f0)?, phi(&pt, &fb, g)?);
                *local.entry(key).or_default() += 1;
            }
            Ok((a.clone(), local))
        })
        .collect::<Result<_>>()?;
    for (a, local) in parts {
        let slot = census.pairs.entry(a).or_default();
        for (k, c) in local {
            *slot.entry(k).or_default() += c;
        }
    }
    Ok(census)
}

/// Fate of one matrix in the extraction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RskStatus {
    Matched,
    Unresolved(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RskEntry {
    pub matrix: RelPosMatrix,
    pub t: Option<Bitableau>,
    pub t_prime: Option<Bitableau>,
    /// Degree of the count of the shared locus, including the flag-variety factor.
    pub degree: Option<i64>,
    pub status: RskStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RskReport {
    pub alpha: Composition,
    pub beta: Composition,
    pub primes: Vec<u32>,
    pub entries: Vec<RskEntry>,
    /// Number of same-shape pairs of semistandard bitableaux.
    pub pair_count: usize,
    pub bijective: bool,
}

/// The semistandard pairs `(T, T')` of equal shape.
pub fn semistandard_pairs(alpha: &Composition, beta: &Composition) -> Vec<(Bitableau, Bitableau)> {
    let mut out = Vec::new();
    for b in enumerate_bipartitions(alpha.size()) {
        let ta = enumerate_semistandard(&b, alpha);
        let tb = enumerate_semistandard(&b, beta);
        for t in &ta {
            for u in &tb {
                out.push((t.clone(), u.clone()));
            }
        }
    }
    out
}

fn fit_degree(cs: &CountSeries, bound: usize) -> std::result::Result<Option<i64>, String> {
    match fit_count_polynomial(cs, bound) {
        Ok(p) => Ok(p.degree().map(|d| d as i64)),
        Err(e) => Err(e.reason),
    }
}

/// Matches each position matrix to the pair `(T, T')` whose shared locus has
/// the largest fitted dimension; ties and fit failures stay unresolved.
pub fn rsk_extract(alpha: &Composition, beta: &Composition, primes: &[u32], guard: u64) -> Result<RskReport> {
    if alpha.size() != beta.size() {
        return Err(Error::InvalidArgument("|α| ≠ |β|".into()));
    }
    let pairs = semistandard_pairs(alpha, beta);
    let mut report = RskReport {
        alpha: alpha.clone(),
        beta: beta.clone(),
        primes: primes.to_vec(),
        entries: Vec::new(),
        pair_count: pairs.len(),
        bijective: false,
    };
    if alpha.size() == 0 {
        report.bijective = true;
        return Ok(report);
    }
    let censuses: Vec<PairCensus> = primes
        .iter()
        .map(|&q| pair_census(alpha, beta, q, true, guard))
        .collect::<Result<_>>()?;
    let bound = primes.len().saturating_sub(2);
    let mut flag_series = CountSeries::new();
    for c in &censuses {
        flag_series.insert(c.q, c.flag_count)?;
    }
    let flag_dim = fit_degree(&flag_series, bound)
        .map_err(|e| Error::InvalidArgument(format!("flag variety count does not fit: {e}")))?
        .unwrap_or(0);
    let (m, l) = (alpha.len(), beta.len());
    for a in enumerate_m(alpha, beta)? {
        let mut best: Vec<(i64, usize)> = Vec::new();
        let mut failure = None;
        for (idx, (t, u)) in pairs.iter().enumerate() {
            let key = (t.to_sequence(m), u.to_sequence(l));
            let mut cs = CountSeries::new();
            for c in &censuses {
                let v = c.pairs.get(&a).and_then(|x| x.get(&key)).copied().unwrap_or(0);
                cs.insert(c.q, v)?;
            }
            match fit_degree(&cs, bound) {
                Ok(Some(deg)) => best.push((deg, idx)),
                Ok(None) => {}
                Err(e) => failure = Some(format!("{t} / {u}: {e}")),
            }
        }
        best.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        let entry = match (failure, best.as_slice()) {
            (Some(e), _) => RskEntry { matrix: a, t: None, t_prime: None, degree: None, status: RskStatus::Unresolved(e) },
            (None, []) => RskEntry {
                matrix: a,
                t: None,
                t_prime: None,
                degree: None,
                status: RskStatus::Unresolved("no semistandard pair occurs".into()),
            },
            (None, [first, rest @ ..]) => {
                let deg = Some(first.0 + flag_dim);
                if rest.first().is_some_and(|s| s.0 == first.0) {
                    RskEntry {
                        matrix: a,
                        t: None,
                        t_prime: None,
                        degree: deg,
                        status: RskStatus::Unresolved("tie for the top degree".into()),
                    }
                } else {
                    let (t, u) = pairs[first.1].clone();
                    RskEntry { matrix: a, t: Some(t), t_prime: Some(u), degree: deg, status: RskStatus::Matched }
                }
            }
        };
        report.entries.push(entry);
    }
    let matched: BTreeSet<(Option<Bitableau>, Option<Bitableau>)> = report
        .entries
        .iter()
        .filter(|e| e.status == RskStatus::Matched)
        .map(|e| (e.t.clone(), e.t_prime.clone()))
        .collect();
    report.bijective = report.entries.iter().all(|e| e.status == RskStatus::Matched)
        && matched.len() == report.entries.len()
        && report.entries.len() == report.pair_count;
    Ok(report)
}

/// Point counts of the whole incidence variety over each prime.
pub fn steinberg_total_counts(alpha: &Composition, beta: &Composition, primes: &[u32]) -> Result<CountSeries> {
    let mut cs = CountSeries::new();
    for &q in primes {
        cs.insert(q, pair_census(alpha, beta, q, false, u64::MAX)?.total())?;
    }
    Ok(cs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(v: &[u32]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    fn mat(rows: &[&[u32]]) -> RelPosMatrix {
        RelPosMatrix(rows.iter().map(|r| r.to_vec()).collect())
    }

    /// Every 2m × 2l grid with entries ≤ n, filtered by the three constraints.
    fn brute_force_m(alpha: &Composition, beta: &Composition) -> Vec<RelPosMatrix> {
        let (r, c) = (2 * alpha.len(), 2 * beta.len());
        let n = alpha.size();
        let cells = r * c;
        let mut out = Vec::new();
        let total = (n + 1).pow(cells as u32);
        for mut idx in 0..total {
            let mut g = vec![vec![0u32; c]; r];
            for cell in 0..cells {
                g[cell / c][cell % c] = idx % (n + 1);
                idx /= n + 1;
            }
            let m = RelPosMatrix(g);
            if m.check(alpha, beta).is_ok() {
                out.push(m);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn m_sets() {
        let m = enumerate_m(&comp(&[2]), &comp(&[2])).unwrap();
        assert_eq!(m, vec![mat(&[&[0, 2], &[2, 0]]), mat(&[&[1, 1], &[1, 1]]), mat(&[&[2, 0], &[0, 2]])]);
        assert_eq!(enumerate_m(&comp(&[1]), &comp(&[1])).unwrap().len(), 2);
        assert!(enumerate_m(&comp(&[1]), &comp(&[2])).is_err());
        for (a, b) in [(vec![1, 1], vec![2]), (vec![2], vec![1, 1]), (vec![3], vec![1, 2])] {
            let (a, b) = (comp(&a), comp(&b));
            let mut fast = enumerate_m(&a, &b).unwrap();
            fast.sort();
            assert_eq!(fast, brute_force_m(&a, &b));
        }
    }

    #[test]
    fn predictions() {
        assert_eq!(steinberg_dim_prediction(&Composition::ones(3), &Composition::ones(3), 3), 18);
        assert_eq!(steinberg_dim_prediction(&comp(&[2]), &comp(&[2]), 2), 6);
        assert_eq!(steinberg_dim_prediction(&comp(&[1, 2]), &comp(&[3]), 3), 14);
    }

    #[test]
    fn self_and_transversal_positions() {
        let zero = zero_point(2, 3);
        let ft = FlagType::new(comp(&[1, 1]));
        let f = standard_flag(&zero.space, &ft);
        let a = relative_position(&f, &f).unwrap();
        assert_eq!(a, mat(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]));

        let ft = FlagType::new(comp(&[2]));
        let f = standard_flag(&zero.space, &ft);
        let g = PartialFlag::from_lower_half(
            &zero,
            vec![Subspace::from_rows(3, 4, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1]])],
        );
        assert_eq!(relative_position(&f, &g).unwrap(), mat(&[&[0, 2], &[2, 0]]));
    }

    #[test]
    fn positions_of_enumerated_pairs_lie_in_m() {
        let (a, b) = (comp(&[1, 1]), comp(&[2]));
        let zero = zero_point(2, 2);
        let allowed: BTreeSet<_> = enumerate_m(&a, &b).unwrap().into_iter().collect();
        let fs: Vec<_> = enumerate_fiber(&zero, &FlagType::new(a.clone())).unwrap().collect();
        let gs: Vec<_> = enumerate_fiber(&zero, &FlagType::new(b.clone())).unwrap().collect();
        for f in &fs {
            for g in &gs {
                let m = relative_position(f, g).unwrap();
                m.check(&a, &b).unwrap();
                assert!(allowed.contains(&m));
            }
        }
    }

    #[test]
    fn incidence_space_for_equal_lagrangians() {
        // x: V/F → F alternating (one parameter) and v ∈ F (two).
        let zero = zero_point(2, 5);
        let f = standard_flag(&zero.space, &FlagType::new(comp(&[2])));
        assert_eq!(incidence_space(&zero.space, &f, &f).unwrap().dim(), 3);
    }

    #[test]
    fn rsk_small_cases() {
        let r = rsk_extract(&comp(&[1]), &comp(&[1]), &[2, 3, 5], u64::MAX).unwrap();
        assert_eq!(r.entries.len(), 2);
        assert!(r.bijective, "{r:?}");
        let r = rsk_extract(&Composition::new(vec![]).unwrap(), &Composition::new(vec![]).unwrap(), &[2, 3], 10).unwrap();
        assert!(r.entries.is_empty());
    }
}
