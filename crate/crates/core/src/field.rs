//! Arithmetic in prime fields GF(p).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted by [`PrimeField::new`] (exclusive).
pub const MAX_MODULUS: u64 = 1 << 20;

/// The prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct PrimeField {
    p: u32,
}

impl<'de> Deserialize<'de> for PrimeField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = u64::deserialize(d)?;
        PrimeField::new(p).map_err(serde::de::Error::custom)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// The element `value mod p`; negative values wrap.
    pub fn elem(self, value: i64) -> Fp {
        Fp { value: self.reduce(value), p: self.p }
    }

    #[inline]
    pub fn reduce(self, value: i64) -> u32 {
        value.rem_euclid(self.p as i64) as u32
    }

    pub fn zero(self) -> Fp {
        Fp { value: 0, p: self.p }
    }

    pub fn one(self) -> Fp {
        Fp { value: 1 % self.p, p: self.p }
    }

    pub fn elements(self) -> impl Iterator<Item = Fp> {
        (0..self.p).map(move |value| Fp { value, p: self.p })
    }

    /// Multiplicative order of a nonzero element, `None` for zero.
    pub fn order(self, a: Fp) -> Option<u32> {
        if a.p != self.p || a.value == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x.value != 1 {
            x = x * a;
            k += 1;
        }
        Some(k)
    }

    pub fn is_primitive(self, a: Fp) -> bool {
        self.order(a) == Some(self.p - 1)
    }

    /// Smallest element of multiplicative order `p - 1`.
    pub fn find_primitive(self) -> Fp {
        self.elements()
            .skip(1)
            .find(|&a| self.is_primitive(a))
            .expect("every prime field has a primitive element")
    }

    // Raw u32 arithmetic used by the matrix and stabilizer hot loops.
    #[inline]
    pub(crate) fn add_raw(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub_raw(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub(crate) fn mul_raw(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub(crate) fn neg_raw(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub(crate) fn pow_raw(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }

    pub(crate) fn inv_raw(self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            // Fermat: a^(p-2)
            Some(self.pow_raw(a, self.p as u64 - 2))
        }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

/// An element of some [`PrimeField`].
///
/// The operator impls panic when the operands live in different fields;
/// the `checked_*` methods report [`Error::FieldMismatch`] instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    p: u32,
}

impl Fp {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: Fp) -> Result<PrimeField> {
        if self.p == other.p {
            Ok(self.field())
        } else {
            Err(Error::FieldMismatch(self.p, other.p))
        }
    }

    pub fn checked_add(self, rhs: Fp) -> Result<Fp> {
        let f = self.same_field(rhs)?;
        Ok(Fp { value: f.add_raw(self.value, rhs.value), p: self.p })
    }

    pub fn checked_sub(self, rhs: Fp) -> Result<Fp> {
        let f = self.same_field(rhs)?;
        Ok(Fp { value: f.sub_raw(self.value, rhs.value), p: self.p })
    }

    pub fn checked_mul(self, rhs: Fp) -> Result<Fp> {
        let f = self.same_field(rhs)?;
        Ok(Fp { value: f.mul_raw(self.value, rhs.value), p: self.p })
    }

    pub fn checked_div(self, rhs: Fp) -> Result<Fp> {
        self.same_field(rhs)?;
        self.checked_mul(rhs.inv()?)
    }

    pub fn inv(self) -> Result<Fp> {
        let value = self.field().inv_raw(self.value).ok_or(Error::ZeroInverse)?;
        Ok(Fp { value, p: self.p })
    }

    pub fn pow(self, exp: u64) -> Fp {
        Fp { value: self.field().pow_raw(self.value, exp), p: self.p }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for Fp {
            type Output = Fp;
            fn $m(self, rhs: Fp) -> Fp {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { value: self.field().neg_raw(self.value), p: self.p }
    }
}
