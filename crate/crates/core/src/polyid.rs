//! Exact multivariate integer polynomials and the catalogue of stratum
//! dimension identities for `x² = 0`.
//!
//! Every closed form involved has half-integer coefficients (terms such as
//! `½k(k−1)`), so the catalogue works with twice each quantity. This keeps all
//! coefficients integral without changing which identities hold.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// The formal variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Var {
    N1,
    N2,
    K,
    K1,
    K2,
    H,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::N1, Var::N2, Var::K, Var::K1, Var::K2, Var::H];

    pub fn name(self) -> &'static str {
        match self {
            Var::N1 => "n1",
            Var::N2 => "n2",
            Var::K => "k",
            Var::K1 => "k1",
            Var::K2 => "k2",
            Var::H => "h",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

type Monomial = [u8; 6];

/// A polynomial in `n1, n2, k, k1, k2, h` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn constant(c: i64) -> Self {
        let mut p = IntPoly::zero();
        p.add_term([0; 6], BigInt::from(c));
        p
    }

    pub fn var(v: Var) -> Self {
        let mut m = [0u8; 6];
        m[v.index()] = 1;
        let mut p = IntPoly::zero();
        p.add_term(m, BigInt::one());
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| u32::from(e)).sum())
            .max()
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = [0u8; 6];
                for i in 0..6 {
                    m[i] = ma[i] + mb[i];
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> IntPoly {
        self.mul(&IntPoly::constant(c))
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        (0..e).fold(IntPoly::constant(1), |acc, _| acc.mul(self))
    }

    /// Simultaneous substitution of the bound variables.
    pub fn substitute(&self, bindings: &BTreeMap<Var, IntPoly>) -> IntPoly {
        let mut out = IntPoly::zero();
        for (m, c) in &self.terms {
            let mut term = IntPoly::zero();
            term.add_term([0; 6], c.clone());
            for v in Var::ALL {
                let e = m[v.index()];
                if e == 0 {
                    continue;
                }
                let factor = match bindings.get(&v) {
                    Some(p) => p.pow(u32::from(e)),
                    None => {
                        let mut mm = [0u8; 6];
                        mm[v.index()] = e;
                        let mut p = IntPoly::zero();
                        p.add_term(mm, BigInt::one());
                        p
                    }
                };
                term = term.mul(&factor);
            }
            out = out.add(&term);
        }
        out
    }

    pub fn eval(&self, values: &BTreeMap<Var, i64>) -> BigInt {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m[v.index()];
                if e > 0 {
                    let x = BigInt::from(*values.get(&v).unwrap_or(&0));
                    t *= num_traits::pow(x, usize::from(e));
                }
            }
            total += t;
        }
        total
    }
}

impl std::ops::Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::mul(self, rhs)
    }
}

/// Which ring operation [`poly_arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &IntPoly, b: &IntPoly, op: ArithOp) -> IntPoly {
    match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    }
}

pub fn substitute(p: &IntPoly, bindings: &BTreeMap<Var, IntPoly>) -> IntPoly {
    p.substitute(bindings)
}

impl fmt::Display for IntPoly {
    /// Terms in decreasing total degree, then decreasing monomial order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().map(|&e| u32::from(e)).sum();
            let db: u32 = b.0.iter().map(|&e| u32::from(e)).sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = Var::ALL
                .iter()
                .filter(|v| m[v.index()] > 0)
                .map(|v| match m[v.index()] {
                    1 => v.name().to_string(),
                    e => format!("{}^{e}", v.name()),
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// The strata of isotropic subspaces of `ker x` distinguished for `x² = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Stratum {
    X,
    X1,
    Y,
    X2,
    X3,
    X4,
    X5,
    X6,
    X7,
    X8,
}

impl Stratum {
    pub const ALL: [Stratum; 10] = [
        Stratum::X,
        Stratum::X1,
        Stratum::Y,
        Stratum::X2,
        Stratum::X3,
        Stratum::X4,
        Stratum::X5,
        Stratum::X6,
        Stratum::X7,
        Stratum::X8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stratum::X => "X",
            Stratum::X1 => "X1",
            Stratum::Y => "Y",
            Stratum::X2 => "X2",
            Stratum::X3 => "X3",
            Stratum::X4 => "X4",
            Stratum::X5 => "X5",
            Stratum::X6 => "X6",
            Stratum::X7 => "X7",
            Stratum::X8 => "X8",
        }
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Stratum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Stratum::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown stratum {s:?}")))
    }
}

fn v(x: Var) -> IntPoly {
    IntPoly::var(x)
}

fn c(x: i64) -> IntPoly {
    IntPoly::constant(x)
}

/// Sum of polynomials.
fn sum(ps: &[IntPoly]) -> IntPoly {
    ps.iter().fold(IntPoly::zero(), |acc, p| acc.add(p))
}

/// `2 · [a(d−a) − ½a(a−1)]`: twice the dimension of the nondegenerate part of
/// an isotropic Grassmannian of `a`-planes in a `d`-dimensional space.
fn twice_grass(a: &IntPoly, d: &IntPoly) -> IntPoly {
    let am1 = a.sub(&c(1));
    a.mul(&d.sub(a)).scale(2).sub(&a.mul(&am1))
}

/// `2·N(2^a 1^b) = (a+b)(a+b−1) + a(a−1)`.
pub fn twice_n_twos_ones(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let s = a.add(b);
    s.mul(&s.sub(&c(1))).add(&a.mul(&a.sub(&c(1))))
}

/// Twice the dimension of a stratum, as a polynomial in `n1, n2, k1, k2, h`.
pub fn twice_stratum_dim(s: Stratum) -> IntPoly {
    let (n1, n2, k1, k2, h) = (v(Var::N1), v(Var::N2), v(Var::K1), v(Var::K2), v(Var::H));
    let two_h = h.scale(2);
    let r = k2.sub(&two_h); // k2 − 2h
    let r1 = r.sub(&c(1));
    // 2h(2n2 − 2k2 + 2h), the part from the radical quotient, doubled.
    let block = |shift: i64| {
        two_h
            .mul(&sum(&[n2.scale(2), k2.scale(-2), two_h.clone(), c(-shift)]))
            .scale(2)
    };
    let base = |a: &IntPoly, d: IntPoly| twice_grass(a, &d);
    // Grassmannian-type factor for the k1-part living in a space of dimension
    // 2n2 + 2n1 − k2 (minus `shift`).
    let k1part = |a: &IntPoly, shift: i64| {
        twice_grass(a, &sum(&[n2.scale(2), n1.scale(2), k2.neg(), c(-shift)]))
    };
    // (k2−2h)(2n2 − k2 + 2h) − ½(k2−2h)(k2−2h−1) = grass(k2−2h, 2n2).
    let x_base = base(&r, n2.scale(2));
    match s {
        Stratum::X | Stratum::X3 => sum(&[x_base, block(0), k1part(&k1, 0)]),
        Stratum::X1 => sum(&[base(&r1, n2.scale(2).sub(&c(2))), block(0), k1part(&k1, 0)]),
        Stratum::Y => sum(&[
            base(&r, n2.scale(2).sub(&c(1))),
            two_h
                .sub(&c(1))
                .mul(&sum(&[n2.scale(2), k2.scale(-2), two_h.clone()]))
                .scale(2),
            k1part(&k1, 0),
        ]),
        Stratum::X2 => sum(&[base(&r, n2.scale(2).sub(&c(1))), block(0), k1part(&k1, 0)]),
        Stratum::X4 => sum(&[x_base, block(0), k1part(&k1.sub(&c(1)), 2)]),
        Stratum::X5 => sum(&[
            x_base,
            block(0),
            k1part(&k1.sub(&c(1)), 2),
            sum(&[n2.scale(2), k2.scale(-2), two_h.clone()]).scale(2),
        ]),
        Stratum::X6 => sum(&[x_base, block(0), k1part(&k1, 1)]),
        Stratum::X7 => sum(&[base(&r1, n2.scale(2).sub(&c(2))), block(0), k1part(&k1, 1)]),
        Stratum::X8 => sum(&[base(&r, n2.scale(2).sub(&c(1))), block(1), k1part(&k1, 1)]),
    }
}

/// `|ν|` and `|ν'|` of the orbit and of the subquotient orbit attached to a
/// stratum, with `(μ'+ν') = 2^{n2−k2+h} 1^{n1−k1+k2−2h}`.
fn nu_sizes(s: Stratum) -> (IntPoly, IntPoly) {
    let (n1, n2, k1, k2, h) = (v(Var::N1), v(Var::N2), v(Var::K1), v(Var::K2), v(Var::H));
    let n2p = sum(&[n2.clone(), k2.neg(), h.clone()]);
    let n1p = sum(&[n1.clone(), k1.neg(), k2.clone(), h.scale(-2)]);
    let twos_ones = sum(&[n2p.scale(2), n1p]);
    let ones_long = sum(&[n1.clone(), n2.clone(), k1.neg(), h.neg()]);
    let ones_short = n2p;
    let nu_all = sum(&[n2.scale(2), n1.clone()]);
    let nu_ones = sum(&[n2.clone(), n1.clone()]);
    match s {
        Stratum::X => (nu_all, twos_ones),
        Stratum::X1 | Stratum::Y => (nu_ones, twos_ones),
        Stratum::X2 => (nu_ones, ones_long),
        Stratum::X3 => (nu_ones, ones_short),
        Stratum::X4 => (n2, twos_ones),
        Stratum::X5 => (n2, ones_long),
        Stratum::X6 => (n2, ones_short),
        Stratum::X7 => (c(0), ones_short),
        Stratum::X8 => (c(0), c(0)),
    }
}

/// Twice `d^α_{(μ,ν)} − d^{α'}_{(μ',ν')}` after the `Σα²` terms have cancelled
/// down to `½k(k−1)`.
fn twice_d_difference(s: Stratum) -> IntPoly {
    let (n1, n2, k1, k2, h) = (v(Var::N1), v(Var::N2), v(Var::K1), v(Var::K2), v(Var::H));
    let k = v(Var::K);
    let n2p = sum(&[n2.clone(), k2.neg(), h.clone()]);
    let n1p = sum(&[n1.clone(), k1.neg(), k2.clone(), h.scale(-2)]);
    let (nu, nup) = nu_sizes(s);
    sum(&[
        twice_n_twos_ones(&n2, &n1).scale(2),
        twice_n_twos_ones(&n2p, &n1p).scale(-2),
        nu.scale(2),
        nup.scale(-2),
        k.mul(&k.sub(&c(1))).neg(),
    ])
}

/// Twice the claimed value of `d^α − d^{α'} − dim(stratum)`.
fn twice_claimed_difference(s: Stratum) -> IntPoly {
    let (n1, n2, k1, k2, h) = (v(Var::N1), v(Var::N2), v(Var::K1), v(Var::K2), v(Var::H));
    let two_h = h.scale(2);
    let d1 = n1.sub(&k1); // n1 − k1
    let tail = sum(&[n2.clone(), k2.neg(), h.clone()]); // n2 − k2 + h
    let a = h.mul(&sum(&[d1.scale(2), c(1)])); // h(2n1 − 2k1 + 1)
    let b = two_h.add(&c(1)).mul(&d1); // (2h+1)(n1 − k1)
    let value = match s {
        Stratum::X | Stratum::X8 => a,
        Stratum::X1 => sum(&[two_h.mul(&d1.add(&c(1))), tail]),
        Stratum::Y => sum(&[two_h.mul(&d1), tail]),
        Stratum::X2 | Stratum::X6 => two_h.mul(&d1),
        Stratum::X3 | Stratum::X5 => b,
        Stratum::X4 => sum(&[b, tail]),
        Stratum::X7 => sum(&[a, tail]),
    };
    value.scale(2)
}

/// One identity `d^α − d^{α'} − dim(stratum) = rhs`, scaled by two.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub stratum: Stratum,
    pub lhs: IntPoly,
    pub rhs: IntPoly,
}

/// The ten identities, with `k` eliminated through `k = k1 + k2`.
pub fn identity_catalog() -> Vec<CatalogEntry> {
    let mut bind = BTreeMap::new();
    bind.insert(Var::K, v(Var::K1).add(&v(Var::K2)));
    Stratum::ALL
        .iter()
        .map(|&s| CatalogEntry {
            stratum: s,
            lhs: twice_d_difference(s)
                .sub(&twice_stratum_dim(s))
                .substitute(&bind),
            rhs: twice_claimed_difference(s),
        })
        .collect()
}

/// Outcome for one identity.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityOutcome {
    pub stratum: Stratum,
    pub passed: bool,
    /// `lhs − rhs` (scaled by two); zero when the identity holds.
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub outcomes: Vec<IdentityOutcome>,
}

impl IdentityReport {
    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed).count()
    }

    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }
}

pub fn verify_catalog(entries: &[CatalogEntry]) -> IdentityReport {
    IdentityReport {
        outcomes: entries
            .iter()
            .map(|e| {
                let residual = e.lhs.sub(&e.rhs);
                IdentityOutcome {
                    stratum: e.stratum,
                    passed: residual.is_zero(),
                    residual: residual.to_string(),
                }
            })
            .collect(),
    }
}

pub fn verify_identity_catalog() -> IdentityReport {
    verify_catalog(&identity_catalog())
}

/// Evaluates a stratum dimension at integers.
pub fn eval_stratum_dim(s: Stratum, n1: i64, n2: i64, k1: i64, k2: i64, h: i64) -> i64 {
    let vals: BTreeMap<Var, i64> = [
        (Var::N1, n1),
        (Var::N2, n2),
        (Var::K1, k1),
        (Var::K2, k2),
        (Var::H, h),
        (Var::K, k1 + k2),
    ]
    .into_iter()
    .collect();
    let twice = twice_stratum_dim(s).eval(&vals);
    let two = BigInt::from(2);
    assert!((&twice % &two).is_zero(), "dimension formula must be integral");
    (twice / two).to_i64().expect("small dimension")
}
