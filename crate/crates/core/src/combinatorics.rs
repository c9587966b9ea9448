//! Partitions, compositions, bipartitions and bitableaux.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition, stored without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl Partition {
    /// Accepts a weakly decreasing sequence; trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!("{parts:?} has interior zeros")));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary nonnegative parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(a^m)` written as a partition; `m = 0` or `a = 0` gives ∅.
    pub fn rectangle(a: u32, m: usize) -> Self {
        if a == 0 {
            return Partition::empty();
        }
        Partition(vec![a; m])
    }

    /// `(2^{n2} 1^{n1})`.
    pub fn twos_ones(n2: usize, n1: usize) -> Self {
        let mut v = vec![2; n2];
        v.extend(std::iter::repeat_n(1, n1));
        Partition(v)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based); zero beyond the length.
    pub fn get(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Multiplicity of the part `j`.
    pub fn multiplicity(&self, j: u32) -> usize {
        self.0.iter().filter(|&&p| p == j).count()
    }

    pub fn largest(&self) -> u32 {
        self.get(0)
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| other.get(i) <= self.get(i))
    }

    /// Builds a partition from its multiplicities: `mults[j-1]` parts equal to `j`.
    /// Negative multiplicities are rejected.
    pub fn from_multiplicities(mults: &[i64]) -> Option<Partition> {
        let mut parts = Vec::new();
        for (idx, &m) in mults.iter().enumerate().rev() {
            if m < 0 {
                return None;
            }
            parts.extend(std::iter::repeat_n(idx as u32 + 1, m as usize));
        }
        Some(Partition(parts))
    }

    /// Builds a partition from column lengths; `None` unless they weakly decrease.
    pub fn from_columns(cols: &[i64]) -> Option<Partition> {
        if cols.iter().any(|&c| c < 0) || cols.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        let cols: Vec<u32> = cols.iter().map(|&c| c as u32).collect();
        Some(transpose(&Partition::from_unsorted(cols)))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Parses a comma-separated list; the empty string is ∅.
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_list(s)?)
    }
}

pub(crate) fn parse_list(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        })
        .collect()
}

pub fn add_partitions(a: &Partition, b: &Partition) -> Partition {
    let n = a.len().max(b.len());
    Partition((0..n).map(|i| a.get(i) + b.get(i)).collect())
}

pub fn union_partitions(a: &Partition, b: &Partition) -> Partition {
    let mut v = a.0.clone();
    v.extend_from_slice(&b.0);
    Partition::from_unsorted(v)
}

pub fn transpose(l: &Partition) -> Partition {
    let m = l.largest();
    Partition(
        (1..=m)
            .map(|j| l.0.iter().filter(|&&p| p >= j).count() as u32)
            .collect(),
    )
}

/// `N(λ) = Σ (i−1) λ_i`.
pub fn n_stat(l: &Partition) -> u64 {
    l.0.iter()
        .enumerate()
        .map(|(i, &p)| i as u64 * u64::from(p))
        .sum()
}

/// All partitions of `n`, in reverse lexicographic order of parts.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A composition: a finite sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Composition(Vec<u32>);

impl TryFrom<Vec<u32>> for Composition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Composition::new(v)
    }
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Vec<u32> {
        c.0
    }
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "composition {parts:?} has a zero part"
            )));
        }
        Ok(Composition(parts))
    }

    pub fn ones(n: usize) -> Self {
        Composition(vec![1; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn reversed(&self) -> Composition {
        Composition(self.0.iter().rev().copied().collect())
    }

    /// `α̂ = (α_1,…,α_m,α_m,…,α_1)`.
    pub fn hat(&self) -> Vec<u32> {
        let mut v = self.0.clone();
        v.extend(self.0.iter().rev());
        v
    }

    /// Partial sums of `α̂`, starting with `α̌_0 = 0`.
    pub fn check(&self) -> Vec<u32> {
        let mut out = vec![0];
        let mut acc = 0;
        for a in self.hat() {
            acc += a;
            out.push(acc);
        }
        out
    }

    /// `½ Σ (α_i² − α_i)`.
    pub fn half_sum_sq(&self) -> u64 {
        self.0
            .iter()
            .map(|&a| u64::from(a) * u64::from(a.saturating_sub(1)) / 2)
            .sum()
    }

    /// The composition with its first part dropped.
    pub fn tail(&self) -> Composition {
        Composition(self.0.iter().skip(1).copied().collect())
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Composition::new(parse_list(s)?)
    }
}

/// All compositions of `n`, lexicographic.
pub fn compositions_of(n: u32) -> Vec<Composition> {
    fn rec(rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if rest == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        for part in 1..=rest {
            cur.push(part);
            rec(rest - part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// A pair of partitions `(μ, ν)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bipartition {
    pub mu: Partition,
    pub nu: Partition,
}

impl Bipartition {
    pub fn new(mu: Partition, nu: Partition) -> Self {
        Bipartition { mu, nu }
    }

    pub fn empty() -> Self {
        Bipartition::default()
    }

    pub fn size(&self) -> u32 {
        self.mu.size() + self.nu.size()
    }

    /// `μ + ν`.
    pub fn row_sums(&self) -> Partition {
        add_partitions(&self.mu, &self.nu)
    }

    pub fn contains(&self, other: &Bipartition) -> bool {
        self.mu.contains(&other.mu) && self.nu.contains(&other.nu)
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.mu, self.nu)
    }
}

pub fn d_alpha(b: &Bipartition, alpha: &Composition) -> Result<i64> {
    if b.size() != alpha.size() {
        return Err(Error::SizeMismatch(format!(
            "|{b}| = {} but |{alpha}| = {}",
            b.size(),
            alpha.size()
        )));
    }
    Ok(2 * n_stat(&b.row_sums()) as i64 + i64::from(b.nu.size()) - alpha.half_sum_sq() as i64)
}

/// All bipartitions of `n`, ordered lexicographically by `(|μ|, μ, ν)`.
pub fn enumerate_bipartitions(n: u32) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for a in 0..=n {
        let mut mus = partitions_of(a);
        mus.sort();
        let mut nus = partitions_of(n - a);
        nus.sort();
        for mu in &mus {
            for nu in &nus {
                out.push(Bipartition::new(mu.clone(), nu.clone()));
            }
        }
    }
    out
}

/// The sequence `(Φ^m, …, Φ^0)` attached to a flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BipartitionSequence(pub Vec<Bipartition>);

impl BipartitionSequence {
    pub fn new(steps: Vec<Bipartition>) -> Result<Self> {
        let s = BipartitionSequence(steps);
        s.composition()?;
        Ok(s)
    }

    pub fn steps(&self) -> &[Bipartition] {
        &self.0
    }

    /// The composition `α` read off from the size increments (which run
    /// through `α` backwards).
    pub fn composition(&self) -> Result<Composition> {
        let steps = &self.0;
        if steps.first().map(Bipartition::size) != Some(0) {
            return Err(Error::InvalidArgument("sequence must start at (∅,∅)".into()));
        }
        let mut inc = Vec::new();
        for w in steps.windows(2) {
            let (a, b) = (w[0].size(), w[1].size());
            if b <= a {
                return Err(Error::InvalidArgument(
                    "sizes must strictly increase along the sequence".into(),
                ));
            }
            inc.push(b - a);
        }
        inc.reverse();
        Composition::new(inc)
    }

    pub fn last(&self) -> &Bipartition {
        self.0.last().expect("nonempty sequence")
    }

    pub fn is_nested(&self) -> bool {
        self.0.windows(2).all(|w| w[1].contains(&w[0]))
    }
}

impl fmt::Display for BipartitionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(", "))
    }
}

/// A filling of both diagrams of a bipartition with positive labels.
///
/// Both diagrams are stored left-justified; the mirror image of the first
/// diagram is only a matter of display.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bitableau {
    pub shape: Bipartition,
    pub fill1: Vec<Vec<u32>>,
    pub fill2: Vec<Vec<u32>>,
}

/// Marker returned when a sequence of bipartitions is not nested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NotNested;

impl Bitableau {
    pub fn new(shape: Bipartition, fill1: Vec<Vec<u32>>, fill2: Vec<Vec<u32>>) -> Result<Self> {
        let ok = |p: &Partition, f: &Vec<Vec<u32>>| {
            f.len() == p.len()
                && f.iter().enumerate().all(|(i, r)| r.len() == p.get(i) as usize)
                && f.iter().flatten().all(|&v| v > 0)
        };
        if !ok(&shape.mu, &fill1) || !ok(&shape.nu, &fill2) {
            return Err(Error::InvalidArgument("filling does not match the shape".into()));
        }
        Ok(Bitableau { shape, fill1, fill2 })
    }

    fn labels(&self) -> impl Iterator<Item = u32> + '_ {
        self.fill1.iter().chain(&self.fill2).flatten().copied()
    }

    pub fn max_label(&self) -> u32 {
        self.labels().max().unwrap_or(0)
    }

    /// `counts[ℓ-1]` = number of boxes labelled `ℓ`.
    pub fn content(&self) -> Vec<u32> {
        let mut c = vec![0u32; self.max_label() as usize];
        for l in self.labels() {
            c[l as usize - 1] += 1;
        }
        c
    }

    /// Whether the label counts match a flag of type `α`: label `ℓ` marks the
    /// boxes added at the `ℓ`-th step from `(∅,∅)`, which has `α_{m+1−ℓ}` boxes.
    pub fn has_flag_content(&self, alpha: &Composition) -> bool {
        let mut c = self.content();
        c.resize(alpha.len().max(c.len()), 0);
        c == alpha.reversed().parts()
    }

    /// Shape formed by the boxes with label at most `l`.
    pub fn shape_up_to(&self, l: u32) -> Bipartition {
        let part = |f: &Vec<Vec<u32>>| {
            Partition::from_unsorted(
                f.iter()
                    .map(|r| r.iter().filter(|&&v| v <= l).count() as u32)
                    .collect(),
            )
        };
        Bipartition::new(part(&self.fill1), part(&self.fill2))
    }

    /// The nested sequence `(Φ^m, …, Φ^0)` with `m` steps.
    pub fn to_sequence(&self, m: usize) -> BipartitionSequence {
        BipartitionSequence((0..=m as u32).map(|l| self.shape_up_to(l)).collect())
    }
}

impl fmt::Display for Bitableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |rows: &Vec<Vec<u32>>| {
            if rows.is_empty() {
                return "∅".to_string();
            }
            let r: Vec<String> = rows
                .iter()
                .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(""))
                .collect();
            r.join("/")
        };
        write!(f, "({}, {})", show(&self.fill1), show(&self.fill2))
    }
}

/// Labels the boxes added when passing from `Φ^{i+1}` to `Φ^i` with `m − i`.
pub fn sequence_to_bitableau(
    s: &BipartitionSequence,
) -> std::result::Result<Bitableau, NotNested> {
    if !s.is_nested() {
        return Err(NotNested);
    }
    let last = s.last().clone();
    let mut fill1: Vec<Vec<u32>> = last.mu.parts().iter().map(|&l| vec![0; l as usize]).collect();
    let mut fill2: Vec<Vec<u32>> = last.nu.parts().iter().map(|&l| vec![0; l as usize]).collect();
    for (step, w) in s.0.windows(2).enumerate() {
        let label = step as u32 + 1;
        for (fill, old, new) in [
            (&mut fill1, &w[0].mu, &w[1].mu),
            (&mut fill2, &w[0].nu, &w[1].nu),
        ] {
            for (i, row) in fill.iter_mut().enumerate() {
                for b in old.get(i)..new.get(i) {
                    row[b as usize] = label;
                }
            }
        }
    }
    Ok(Bitableau {
        shape: last,
        fill1,
        fill2,
    })
}

fn rows_and_columns_ok(f: &[Vec<u32>]) -> bool {
    let rows_ok = f.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
    let cols_ok = f
        .windows(2)
        .all(|w| w[1].iter().zip(&w[0]).all(|(below, above)| above <= below));
    rows_ok && cols_ok
}

/// Strictly increasing along rows, weakly increasing down columns.
pub fn is_semistandard(t: &Bitableau, alpha: &Composition) -> Result<bool> {
    if !t.has_flag_content(alpha) {
        return Err(Error::ContentMismatch);
    }
    Ok(rows_and_columns_ok(&t.fill1) && rows_and_columns_ok(&t.fill2))
}

fn is_vertical_strip(from: &Partition, to: &Partition) -> bool {
    from.contains(to) && (0..from.len()).all(|i| from.get(i) - to.get(i) <= 1)
}

pub fn is_vertical_strip_removal(from: &Bipartition, to: &Bipartition, k: u32) -> bool {
    from.contains(to)
        && from.size() == to.size() + k
        && is_vertical_strip(&from.mu, &to.mu)
        && is_vertical_strip(&from.nu, &to.nu)
}

/// All ways to add a vertical strip to `cur` staying inside `target`, as
/// (new shape, number of boxes added).
fn vertical_strip_additions(cur: &Partition, target: &Partition) -> Vec<(Partition, u32)> {
    let rows = target.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << rows) {
        let new: Vec<u32> = (0..rows)
            .map(|i| cur.get(i) + (mask >> i & 1))
            .collect();
        let fits = (0..rows).all(|i| new[i] <= target.get(i));
        let is_partition = new.windows(2).all(|w| w[0] >= w[1]);
        if fits && is_partition {
            out.push((Partition::from_unsorted(new), mask.count_ones()));
        }
    }
    out
}

/// The semistandard bitableaux of shape `b` for flags of type `α`.
pub fn enumerate_semistandard(b: &Bipartition, alpha: &Composition) -> Vec<Bitableau> {
    if b.size() != alpha.size() {
        return Vec::new();
    }
    let sizes = alpha.reversed();
    let mut out = Vec::new();
    let mut seq = vec![Bipartition::empty()];
    fn rec(
        b: &Bipartition,
        sizes: &[u32],
        seq: &mut Vec<Bipartition>,
        out: &mut Vec<Bitableau>,
    ) {
        let Some((&need, rest)) = sizes.split_first() else {
            if seq.last() == Some(b) {
                let s = BipartitionSequence(seq.clone());
                out.push(sequence_to_bitableau(&s).expect("nested by construction"));
            }
            return;
        };
        let cur = seq.last().expect("nonempty").clone();
        for (mu, a) in vertical_strip_additions(&cur.mu, &b.mu) {
            if a > need {
                continue;
            }
            for (nu, c) in vertical_strip_additions(&cur.nu, &b.nu) {
                if a + c == need {
                    seq.push(Bipartition::new(mu.clone(), nu));
                    rec(b, rest, seq, out);
                    seq.pop();
                }
            }
        }
    }
    rec(b, sizes.parts(), &mut seq, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn bp(mu: &[u32], nu: &[u32]) -> Bipartition {
        Bipartition::new(p(mu), p(nu))
    }

    fn c(v: &[u32]) -> Composition {
        Composition::new(v.to_vec()).unwrap()
    }

    fn seq(v: Vec<Bipartition>) -> BipartitionSequence {
        BipartitionSequence::new(v).unwrap()
    }

    #[test]
    fn partition_ops() {
        assert_eq!(add_partitions(&p(&[3, 1]), &p(&[2, 2, 1])), p(&[5, 3, 1]));
        assert_eq!(add_partitions(&p(&[]), &p(&[4, 2])), p(&[4, 2]));
        assert_eq!(add_partitions(&p(&[1, 1]), &p(&[1])), p(&[2, 1]));
        assert_eq!(union_partitions(&p(&[2, 1]), &p(&[2])), p(&[2, 2, 1]));
        assert_eq!(union_partitions(&p(&[3]), &p(&[])), p(&[3]));
        assert_eq!(
            union_partitions(&p(&[5, 3, 1]), &p(&[5, 3, 1])),
            p(&[5, 5, 3, 3, 1, 1])
        );
        assert_eq!(transpose(&p(&[1, 1, 1])), p(&[3]));
        assert_eq!(transpose(&p(&[2, 2, 1])), p(&[3, 2]));
        assert_eq!(transpose(&p(&[])), p(&[]));
        assert_eq!(p(&[2, 1, 0, 0]).parts(), &[2, 1]);
        assert_eq!(p(&[2, 1]).get(5), 0);
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn n_statistic() {
        for n in 0..8u64 {
            assert_eq!(n_stat(&Partition::rectangle(1, n as usize)), n * n.saturating_sub(1) / 2);
        }
        assert_eq!(n_stat(&p(&[2, 1])), 1);
        for n2 in 0..5u64 {
            for n1 in 0..5u64 {
                let l = Partition::twos_ones(n2 as usize, n1 as usize);
                let s = n2 + n1;
                let expect = s * s.saturating_sub(1) / 2 + n2 * n2.saturating_sub(1) / 2;
                assert_eq!(n_stat(&l), expect);
            }
        }
    }

    #[test]
    fn d_alpha_examples() {
        assert_eq!(d_alpha(&bp(&[], &[2, 1]), &c(&[1, 2])).unwrap(), 4);
        assert_eq!(d_alpha(&bp(&[1, 1], &[]), &c(&[2])).unwrap(), 1);
        let b = bp(&[2], &[1, 1]);
        let expect = 2 * n_stat(&b.row_sums()) as i64 + 2;
        assert_eq!(d_alpha(&b, &Composition::ones(4)).unwrap(), expect);
        assert!(matches!(
            d_alpha(&bp(&[1], &[]), &c(&[2])),
            Err(Error::SizeMismatch(_))
        ));
    }

    #[test]
    fn bipartition_counts_and_order() {
        assert_eq!(enumerate_bipartitions(0), vec![Bipartition::empty()]);
        let two = enumerate_bipartitions(2);
        assert_eq!(two.len(), 5);
        assert_eq!(two[0], bp(&[], &[1, 1]));
        assert_eq!(two[4], bp(&[2], &[]));
        assert_eq!(enumerate_bipartitions(3).len(), 10);
    }

    #[test]
    fn sequences_to_bitableaux() {
        let s1 = seq(vec![bp(&[], &[]), bp(&[1, 1], &[])]);
        let t1 = sequence_to_bitableau(&s1).unwrap();
        assert_eq!(t1.fill1, vec![vec![1], vec![1]]);
        assert!(t1.fill2.is_empty());
        assert!(is_semistandard(&t1, &c(&[2])).unwrap());

        let s2 = seq(vec![bp(&[], &[]), bp(&[], &[1]), bp(&[1, 1], &[])]);
        assert_eq!(sequence_to_bitableau(&s2), Err(NotNested));

        let s3 = seq(vec![bp(&[], &[]), bp(&[], &[2]), bp(&[], &[2, 1])]);
        let t3 = sequence_to_bitableau(&s3).unwrap();
        assert_eq!(t3.fill2, vec![vec![1, 1], vec![2]]);
        assert!(!is_semistandard(&t3, &c(&[1, 2])).unwrap());
        assert_eq!(t3.to_sequence(2), s3);

        let row = Bitableau::new(bp(&[], &[2]), vec![], vec![vec![1, 1]]).unwrap();
        assert!(!is_semistandard(&row, &c(&[2])).unwrap());
        assert_eq!(is_semistandard(&row, &c(&[1, 1])), Err(Error::ContentMismatch));
    }

    #[test]
    fn semistandard_examples() {
        let one = enumerate_semistandard(&bp(&[1, 1], &[]), &c(&[2]));
        assert_eq!(one.len(), 1);
        let ex = enumerate_semistandard(&bp(&[], &[2, 1]), &c(&[1, 2]));
        assert_eq!(ex.len(), 1);
        assert_eq!(ex[0].fill2, vec![vec![1, 2], vec![1]]);
        assert!(enumerate_semistandard(&bp(&[], &[2]), &c(&[2])).is_empty());
    }

    #[test]
    fn vertical_strips() {
        for n in 1..5usize {
            for k in 0..=n {
                let from = Bipartition::new(Partition::empty(), Partition::rectangle(1, n));
                let to = Bipartition::new(Partition::empty(), Partition::rectangle(1, n - k));
                assert!(is_vertical_strip_removal(&from, &to, k as u32));
            }
        }
        let from = Bipartition::new(Partition::rectangle(1, 3), Partition::empty());
        let to = Bipartition::new(Partition::empty(), Partition::rectangle(1, 2));
        assert!(!is_vertical_strip_removal(&from, &to, 1));
        assert!(!is_vertical_strip_removal(&bp(&[], &[2, 2]), &bp(&[], &[2]), 2));
    }

    #[test]
    fn parsing() {
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("2, 1".parse::<Partition>().unwrap(), p(&[2, 1]));
        assert!("1,x".parse::<Partition>().is_err());
        assert!("1,0,2".parse::<Composition>().is_err());
    }

    #[test]
    fn json_schemas() {
        let b = bp(&[1], &[2, 1]);
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"mu":[1],"nu":[2,1]}"#);
        let t = enumerate_semistandard(&bp(&[], &[2, 1]), &c(&[1, 2])).remove(0);
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(
            s,
            r#"{"shape":{"mu":[],"nu":[2,1]},"fill1":[],"fill2":[[1,2],[1]]}"#
        );
        assert_eq!(serde_json::from_str::<Bitableau>(&s).unwrap(), t);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }
}
