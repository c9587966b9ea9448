//! Exact point-count series and polynomial interpolation in `q`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::is_prime;

/// The primes tried by default, in order.
pub const DEFAULT_PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

/// Exact point counts indexed by the prime `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSeries(BTreeMap<u32, BigInt>);

impl CountSeries {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, q: u32, count: impl Into<BigInt>) -> Result<()> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        let c = count.into();
        if c.is_negative() {
            return Err(Error::InvalidArgument("point counts are nonnegative".into()));
        }
        if self.0.insert(q, c).is_some() {
            return Err(Error::InvalidArgument(format!("prime {q} given twice")));
        }
        Ok(())
    }

    pub fn from_pairs<I: IntoIterator<Item = (u32, u64)>>(pairs: I) -> Result<Self> {
        let mut s = Self::new();
        for (q, c) in pairs {
            s.insert(q, c)?;
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, q: u32) -> Option<&BigInt> {
        self.0.get(&q)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigInt)> {
        self.0.iter().map(|(&q, c)| (q, c))
    }
}

/// A polynomial in `q` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountPolynomial {
    coeffs: Vec<BigRational>,
}

impl CountPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        CountPolynomial { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * q + c)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    fn mul_linear(&self, root: &BigRational) -> Self {
        // (q − root) · self
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * root;
        }
        Self::from_coeffs(out)
    }
}

impl fmt::Display for CountPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let mono = match i {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Why a series did not fit a polynomial of bounded degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoFit {
    pub reason: String,
}

/// Lagrange interpolation through the given points.
pub fn interpolate(points: &[(BigRational, BigRational)]) -> CountPolynomial {
    let mut total = CountPolynomial::from_coeffs(Vec::new());
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = CountPolynomial::from_coeffs(vec![BigRational::one()]);
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = basis.mul_linear(xj);
                denom *= xi - xj;
            }
        }
        let scale = yi / denom;
        let mut coeffs = total.coeffs.clone();
        coeffs.resize(coeffs.len().max(basis.coeffs.len()), BigRational::zero());
        for (k, c) in basis.coeffs.iter().enumerate() {
            coeffs[k] += c * &scale;
        }
        total = CountPolynomial::from_coeffs(coeffs);
    }
    total
}

/// Interpolates the first `degree_bound + 1` points and accepts the result
/// only if every remaining point (at least one) agrees exactly.
pub fn fit_count_polynomial(cs: &CountSeries, degree_bound: usize) -> std::result::Result<CountPolynomial, NoFit> {
    if cs.len() < degree_bound + 2 {
        return Err(NoFit {
            reason: format!(
                "{} primes cannot certify degree ≤ {degree_bound}; need {}",
                cs.len(),
                degree_bound + 2
            ),
        });
    }
    let pts: Vec<(BigRational, BigRational)> = cs
        .iter()
        .map(|(q, c)| (BigRational::from_integer(q.into()), BigRational::from_integer(c.clone())))
        .collect();
    let (fit_pts, held) = pts.split_at(degree_bound + 1);
    let poly = interpolate(fit_pts);
    for (q, c) in held {
        if poly.eval(q) != *c {
            return Err(NoFit {
                reason: format!("held-out point q={q} gives {} but the count is {c}", poly.eval(q)),
            });
        }
    }
    Ok(poly)
}

/// Gaussian binomial `[d choose k]_q`, saturating at `u128::MAX`.
pub fn gaussian_binomial(d: usize, k: usize, q: u64) -> u128 {
    if k > d {
        return 0;
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let q = BigInt::from(q);
    for i in 0..k {
        num *= q.pow((d - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    (num / den).to_u128().unwrap_or(u128::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_line() {
        let cs = CountSeries::from_pairs([(2, 3), (3, 4), (5, 6)]).unwrap();
        let p = fit_count_polynomial(&cs, 1).unwrap();
        assert_eq!(p, CountPolynomial::from_integers(&[1, 1]));
        assert_eq!(p.to_string(), "q + 1");
    }

    #[test]
    fn projective_plane_from_direct_count() {
        // Lines in 𝔽_q^3 counted by brute force over nonzero vectors.
        let count = |q: u64| (q.pow(3) - 1) / (q - 1);
        let cs = CountSeries::from_pairs([2, 3, 5, 7].map(|q| (q as u32, count(q)))).unwrap();
        let p = fit_count_polynomial(&cs, 2).unwrap();
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.to_string(), "q^2 + q + 1");
    }

    #[test]
    fn inconsistent_series() {
        let cs = CountSeries::from_pairs([(2, 3), (3, 4), (5, 7)]).unwrap();
        assert!(fit_count_polynomial(&cs, 1).is_err());
        assert!(fit_count_polynomial(&cs, 2).is_err());
    }

    #[test]
    fn series_validation() {
        let mut cs = CountSeries::new();
        assert_eq!(cs.insert(4, 1u32), Err(Error::NotPrime(4)));
        cs.insert(2, 1u32).unwrap();
        assert!(cs.insert(2, 1u32).is_err());
        assert!(cs.insert(3, -1).is_err());
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 0, 5), 1);
        assert_eq!(gaussian_binomial(2, 3, 5), 0);
    }
}
