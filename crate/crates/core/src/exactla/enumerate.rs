//! Enumeration of subspaces by reduced row-echelon pattern.
//!
//! A `k`-subspace of 𝔽_q^d has a unique rref basis, determined by its pivot
//! columns and the free entries right of each pivot outside pivot columns.
//! Pivot patterns are visited lexicographically and free entries count up
//! with the last entry varying fastest.
//!
//! The same machinery enumerates subspaces that are totally isotropic for a
//! (possibly degenerate) alternating Gram matrix `G`: when row `i` is filled,
//! orthogonality to rows `0..i` is a system of linear equations in its free
//! entries, so the admissible rows form an affine space that is walked
//! directly instead of filtering.

use super::field::{add_mod, check_prime, mul_mod, neg_mod, sub_mod};
use super::matrix::FqMatrix;
use super::subspace::Subspace;
use crate::error::Result;

/// Lexicographic iterator over `k`-subsets of `0..n`.
#[derive(Clone, Debug)]
struct Combinations {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            cur: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let mut c = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if c[i] < self.n - k + i {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                self.cur = Some(c);
                break;
            }
        }
        Some(out)
    }
}

/// Affine space of admissible values for one row: `base + Σ t_i · dirs_i`.
#[derive(Clone, Debug)]
struct Level {
    base: Vec<u32>,
    dirs: Vec<Vec<u32>>,
    counter: Vec<u32>,
    row: Vec<u32>,
}

impl Level {
    fn recompute(&mut self, p: u32) {
        self.row.clone_from(&self.base);
        for (t, d) in self.counter.iter().zip(&self.dirs) {
            if *t == 0 {
                continue;
            }
            for (r, &di) in self.row.iter_mut().zip(d) {
                *r = add_mod(*r, mul_mod(*t, di, p), p);
            }
        }
    }

    fn increment(&mut self, p: u32) -> bool {
        for i in (0..self.counter.len()).rev() {
            self.counter[i] += 1;
            if self.counter[i] < p {
                self.recompute(p);
                return true;
            }
            self.counter[i] = 0;
        }
        false
    }
}

/// Iterator over rref coefficient matrices (`k × d`) of subspaces of 𝔽_p^d,
/// optionally restricted to those isotropic for a Gram matrix.
#[derive(Clone, Debug)]
pub struct EchelonIter {
    p: u32,
    d: usize,
    k: usize,
    gram: Option<FqMatrix>,
    patterns: Combinations,
    pivots: Option<Vec<usize>>,
    started: bool,
    levels: Vec<Level>,
}

impl EchelonIter {
    pub fn new(p: u32, d: usize, k: usize, gram: Option<FqMatrix>) -> Self {
        if let Some(g) = &gram {
            assert_eq!((g.rows(), g.cols()), (d, d), "Gram matrix shape");
        }
        let mut patterns = Combinations::new(d, k);
        let pivots = patterns.next();
        EchelonIter {
            p,
            d,
            k,
            gram,
            patterns,
            pivots,
            started: false,
            levels: Vec::with_capacity(k),
        }
    }

    /// Computes the admissible affine space for the next row; `false` if empty.
    fn push_level(&mut self) -> bool {
        let p = self.p;
        let d = self.d;
        let pivots = self.pivots.as_ref().expect("active pattern");
        let i = self.levels.len();
        let c = pivots[i];
        let free: Vec<usize> = (c + 1..d).filter(|j| !pivots.contains(j)).collect();
        let mut base = vec![0u32; d];
        base[c] = 1 % p;
        // Constraints: for each earlier row r_j, Σ_f t_f g_j[f] = −g_j[c], g_j = G r_j.
        let mut eqs: Vec<Vec<u32>> = Vec::new();
        if let Some(g) = &self.gram {
            for lvl in &self.levels {
                let gj = g.apply(&lvl.row);
                let mut eq: Vec<u32> = free.iter().map(|&f| gj[f]).collect();
                eq.push(neg_mod(gj[c], p));
                eqs.push(eq);
            }
        }
        let nf = free.len();
        let (particular, null) = if eqs.is_empty() {
            let null = (0..nf)
                .map(|a| {
                    let mut v = vec![0u32; nf];
                    v[a] = 1 % p;
                    v
                })
                .collect();
            (vec![0u32; nf], null)
        } else {
            match solve_affine(p, nf, &eqs) {
                Some(s) => s,
                None => return false,
            }
        };
        for (t, &f) in particular.iter().zip(&free) {
            base[f] = *t;
        }
        let dirs = null
            .into_iter()
            .map(|nv| {
                let mut v = vec![0u32; d];
                for (t, &f) in nv.iter().zip(&free) {
                    v[f] = *t;
                }
                v
            })
            .collect::<Vec<_>>();
        let mut lvl = Level {
            counter: vec![0; dirs.len()],
            row: base.clone(),
            base,
            dirs,
        };
        lvl.recompute(p);
        self.levels.push(lvl);
        true
    }

    fn bump(&mut self) -> bool {
        let p = self.p;
        while let Some(top) = self.levels.last_mut() {
            if top.increment(p) {
                return true;
            }
            self.levels.pop();
        }
        false
    }

    fn descend(&mut self) -> bool {
        while self.levels.len() < self.k {
            if !self.push_level() && !self.bump() {
                return false;
            }
        }
        true
    }

    fn current(&self) -> FqMatrix {
        let rows: Vec<Vec<u32>> = self.levels.iter().map(|l| l.row.clone()).collect();
        FqMatrix::from_rows(self.p, self.d, &rows)
    }

    /// Advances to the next complete assignment without materializing it.
    fn advance(&mut self) -> bool {
        loop {
            if self.pivots.is_none() {
                return false;
            }
            let ok = if self.started {
                self.bump() && self.descend()
            } else {
                self.started = true;
                self.descend()
            };
            if ok {
                return true;
            }
            self.levels.clear();
            self.started = false;
            self.pivots = self.patterns.next();
        }
    }

    /// Counts the remaining elements without building matrices.
    pub fn count_remaining(mut self) -> u64 {
        if !self.started {
            return self.count_within(u64::MAX).expect("unbounded budget");
        }
        let mut n = 0;
        while self.advance() {
            n += 1;
        }
        n
    }

    /// Counts all elements of a fresh iterator, giving up once more than
    /// `budget` search nodes have been visited. The last row of each
    /// assignment is counted in closed form (`p^free`), so the work is
    /// roughly the number of admissible prefixes of `k − 1` rows.
    pub fn count_within(mut self, budget: u64) -> Option<u64> {
        assert!(!self.started, "count_within needs a fresh iterator");
        let mut total = 0u64;
        let mut nodes = 0u64;
        while self.pivots.is_some() {
            self.levels.clear();
            total += self.count_pattern(&mut nodes, budget)?;
            self.pivots = self.patterns.next();
        }
        Some(total)
    }

    fn count_pattern(&mut self, nodes: &mut u64, budget: u64) -> Option<u64> {
        if self.k == 0 {
            return Some(1);
        }
        *nodes += 1;
        if *nodes > budget {
            return None;
        }
        if !self.push_level() {
            return Some(0);
        }
        let mut sum = 0;
        if self.levels.len() == self.k {
            let free = self.levels.last().expect("pushed").dirs.len();
            sum = u64::from(self.p).pow(free as u32);
        } else {
            loop {
                sum += self.count_pattern(nodes, budget)?;
                if !self.levels.last_mut().expect("pushed").increment(self.p) {
                    break;
                }
            }
        }
        self.levels.pop();
        Some(sum)
    }
}

impl Iterator for EchelonIter {
    type Item = FqMatrix;
    fn next(&mut self) -> Option<FqMatrix> {
        self.advance().then(|| self.current())
    }
}

/// Solves the linear system whose augmented rows are `eqs` (each of length
/// `n + 1`). Returns a particular solution and a null-space basis.
fn solve_affine(p: u32, n: usize, eqs: &[Vec<u32>]) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
    let aug = FqMatrix::from_rows(p, n + 1, eqs);
    let (r, pivots) = aug.rref_with_pivots();
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut particular = vec![0u32; n];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = r.get(i, n);
    }
    let mut null = Vec::new();
    for f in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; n];
        v[f] = 1 % p;
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = sub_mod(0, r.get(i, f), p);
        }
        null.push(v);
    }
    Some((particular, null))
}

/// Maps coefficient rows through the basis of `within`.
fn lift(coeffs: &FqMatrix, within: &FqMatrix) -> Subspace {
    Subspace::from_matrix(&coeffs.mul(within))
}

/// Stream of subspaces produced by an [`EchelonIter`] inside a fixed space.
#[derive(Clone, Debug)]
pub struct SubspaceIter {
    inner: EchelonIter,
    within: FqMatrix,
}

impl SubspaceIter {
    pub(crate) fn new(inner: EchelonIter, within: FqMatrix) -> Self {
        SubspaceIter { inner, within }
    }

    /// Number of remaining subspaces, computed without building them.
    pub fn count_remaining(self) -> u64 {
        self.inner.count_remaining()
    }

    /// Budgeted count of a fresh iterator; see [`EchelonIter::count_within`].
    pub fn count_within(self, budget: u64) -> Option<u64> {
        self.inner.count_within(budget)
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;
    fn next(&mut self) -> Option<Subspace> {
        self.inner.next().map(|c| lift(&c, &self.within))
    }
}

/// All `k`-dimensional subspaces of `within` (or of 𝔽_p^ambient_dim), each once.
pub fn enumerate_subspaces(
    ambient_dim: usize,
    k: usize,
    p: u32,
    within: Option<&Subspace>,
) -> Result<SubspaceIter> {
    check_prime(p)?;
    let w = match within {
        Some(w) => {
            if w.ambient_dim() != ambient_dim {
                return Err(crate::error::Error::AmbientMismatch {
                    left: ambient_dim,
                    right: w.ambient_dim(),
                });
            }
            w.basis().clone()
        }
        None => FqMatrix::identity(p, ambient_dim),
    };
    let d = w.rows();
    Ok(SubspaceIter::new(EchelonIter::new(p, d, k, None), w))
}

/// Subspaces of `within` that are totally isotropic for `form` (a Gram
/// matrix on the ambient space).
pub fn enumerate_isotropic_in(form: &FqMatrix, k: usize, within: &Subspace) -> SubspaceIter {
    let w = within.basis().clone();
    let gram = w.mul(form).mul(&w.transpose());
    SubspaceIter::new(EchelonIter::new(form.p(), w.rows(), k, Some(gram)), w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_are_lexicographic() {
        let c: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(c.len(), 6);
        assert_eq!(c[0], vec![0, 1]);
        assert_eq!(c[5], vec![2, 3]);
        assert_eq!(Combinations::new(3, 0).count(), 1);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn planes_in_f2_4() {
        let all: Vec<Subspace> = enumerate_subspaces(4, 2, 2, None).unwrap().collect();
        assert_eq!(all.len(), 35);
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 35);
        assert!(all.iter().all(|s| s.dim() == 2));
    }

    #[test]
    fn closed_form_count_matches_iteration() {
        // Standard alternating form on 𝔽_p^4 plus a 2-dimensional radical.
        for p in [2u32, 3] {
            let mut g = FqMatrix::zeros(p, 6, 6);
            for a in 0..2 {
                g.set(a, 3 - a, 1);
                g.set(3 - a, a, p - 1);
            }
            for k in 0..=4 {
                let fast = EchelonIter::new(p, 6, k, Some(g.clone())).count_remaining();
                let slow = EchelonIter::new(p, 6, k, Some(g.clone())).count();
                assert_eq!(fast as usize, slow, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn extreme_dimensions() {
        let z: Vec<Subspace> = enumerate_subspaces(3, 0, 3, None).unwrap().collect();
        assert_eq!(z, vec![Subspace::zero(3, 3)]);
        let f: Vec<Subspace> = enumerate_subspaces(3, 3, 3, None).unwrap().collect();
        assert_eq!(f, vec![Subspace::full(3, 3)]);
        assert_eq!(enumerate_subspaces(3, 4, 3, None).unwrap().count(), 0);
    }

    #[test]
    fn within_a_subspace() {
        let w = Subspace::from_rows(2, 4, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]);
        let lines: Vec<Subspace> = enumerate_subspaces(4, 1, 2, Some(&w)).unwrap().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines.iter().all(|l| w.contains(l)));
    }
}
