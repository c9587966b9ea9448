//! Arithmetic in prime fields 𝔽_p for small p.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest modulus accepted. Products of two residues must fit in `u32`.
pub const MAX_PRIME: u32 = 65_521;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if is_prime(p) && p <= MAX_PRIME {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    a * b % p
}

#[inline]
pub(crate) fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue (Fermat).
#[inline]
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, u64::from(p - 2), p)
}

pub(crate) fn reduce_i64(v: i64, p: u32) -> u32 {
    v.rem_euclid(i64::from(p)) as u32
}

/// An element of 𝔽_p carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    pub fn new(value: i64, modulus: u32) -> Result<Self> {
        check_prime(modulus)?;
        Ok(Fp {
            value: reduce_i64(value, modulus),
            modulus,
        })
    }

    pub fn zero(modulus: u32) -> Self {
        Fp { value: 0, modulus }
    }

    pub fn one(modulus: u32) -> Self {
        Fp {
            value: 1 % modulus,
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inv(self) -> Option<Self> {
        (self.value != 0).then(|| Fp {
            value: inv_mod(self.value, self.modulus),
            modulus: self.modulus,
        })
    }

    pub fn pow(self, e: u64) -> Self {
        Fp {
            value: pow_mod(self.value, e, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        Fp {
            value: add_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        Fp {
            value: sub_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        Fp {
            value: mul_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: neg_mod(self.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u32> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(Fp::new(1, 4).is_err());
    }

    #[test]
    fn inverses_in_f13() {
        for a in 1..13 {
            let x = Fp::new(a, 13).unwrap();
            assert_eq!(x * x.inv().unwrap(), Fp::one(13));
        }
        assert!(Fp::zero(13).inv().is_none());
    }

    #[test]
    fn negative_values_reduce() {
        assert_eq!(Fp::new(-1, 5).unwrap().value(), 4);
        assert_eq!((Fp::new(3, 5).unwrap() - Fp::new(4, 5).unwrap()).value(), 4);
        assert_eq!((-Fp::new(2, 7).unwrap()).value(), 5);
    }
}
