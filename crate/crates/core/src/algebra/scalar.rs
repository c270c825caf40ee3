use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ring::{Prime, Ring};
use crate::error::{Error, Result};

/// An exact element of ℤ, ℚ or GF(p).
///
/// Rationals are kept in lowest terms with a positive denominator and
/// residues in `[0, p)`, so derived equality and hashing are structural.
/// The arithmetic operators panic when the operands live in different
/// rings; the `checked_*` methods report [`Error::RingMismatch`] instead.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod { value: u64, modulus: Prime },
}

impl Scalar {
    pub fn zero(ring: Ring) -> Scalar {
        Scalar::from_i64(ring, 0)
    }

    pub fn one(ring: Ring) -> Scalar {
        Scalar::from_i64(ring, 1)
    }

    pub fn from_i64(ring: Ring, v: i64) -> Scalar {
        Scalar::from_bigint(ring, BigInt::from(v))
    }

    pub fn from_bigint(ring: Ring, v: BigInt) -> Scalar {
        match ring {
            Ring::Integers => Scalar::Int(v),
            Ring::Rationals => Scalar::Rat(BigRational::from_integer(v)),
            Ring::PrimeField(p) => {
                let m = BigInt::from(p.get());
                let r = v.mod_floor(&m).to_u64().expect("residue fits in u64");
                Scalar::Mod {
                    value: r,
                    modulus: p,
                }
            }
        }
    }

    /// The rational `num/den`; fails when `den` is zero.
    pub fn rational(num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(Scalar::Rat(BigRational::new(num.into(), den.into())))
    }

    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Int(_) => Ring::Integers,
            Scalar::Rat(_) => Ring::Rationals,
            Scalar::Mod { modulus, .. } => Ring::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_one(),
            Scalar::Rat(v) => v.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    /// True for negative integers and rationals; residues have no sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_negative(),
            Scalar::Rat(v) => v.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }

    fn same_ring(&self, other: &Scalar) -> Result<()> {
        if self.ring() == other.ring() {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring(), other.ring()))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ring(other)?;
        Ok(match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + b) % modulus.get(),
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ring(other)?;
        Ok(match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a - b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => {
                let p = modulus.get();
                Scalar::Mod {
                    value: (a + p - b) % p,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ring(other)?;
        Ok(match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: a * b % modulus.get(),
                modulus: *modulus,
            },
            _ => unreachable!(),
        })
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        match self {
            Scalar::Int(_) => Err(Error::NoDivision(Ring::Integers)),
            Scalar::Rat(v) => Ok(Scalar::Rat(v.recip())),
            Scalar::Mod { value, modulus } => {
                let p = modulus.get();
                Ok(Scalar::Mod {
                    value: pow_mod(*value, p - 2, p),
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ring(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Division that is known to be exact; over ℤ it is integer division.
    pub(crate) fn exact_div(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                debug_assert!((a % b).is_zero(), "inexact division {a} / {b}");
                Scalar::Int(a / b)
            }
            _ => self.checked_div(other).expect("exact division"),
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.ring());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Canonical image of `self` in `target` (ℤ → anything, ℚ → fields).
    pub fn embed(&self, target: Ring) -> Result<Scalar> {
        if self.ring() == target {
            return Ok(self.clone());
        }
        match self {
            Scalar::Int(v) => Ok(Scalar::from_bigint(target, v.clone())),
            Scalar::Rat(v) if target.is_field() => {
                let num = Scalar::from_bigint(target, v.numer().clone());
                let den = Scalar::from_bigint(target, v.denom().clone());
                num.checked_div(&den)
            }
            _ => Err(Error::RingMismatch(self.ring(), target)),
        }
    }

    /// Parses decimal integers and, where the ring allows, `num/den`.
    pub fn parse(ring: Ring, text: &str) -> Result<Scalar> {
        let bad = || Error::ParseScalar {
            text: text.to_string(),
            ring,
        };
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        match den {
            None => Ok(Scalar::from_bigint(ring, num)),
            Some(_) if ring == Ring::Integers => Err(bad()),
            Some(d) => {
                let den: BigInt = d.parse().map_err(|_| bad())?;
                let den = Scalar::from_bigint(ring, den);
                Scalar::from_bigint(ring, num)
                    .checked_div(&den)
                    .map_err(|_| bad())
            }
        }
    }

    /// Total order used for canonical forms; numeric within ℤ and ℚ,
    /// by residue within GF(p).
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        self.cmp(other)
    }

    pub fn as_bigint(&self) -> Option<&BigInt> {
        match self {
            Scalar::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(v) => Some(v),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            _ => None,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(v) if v.is_integer() => write!(f, "{}", v.numer()),
            Scalar::Rat(v) => write!(f, "{}/{}", v.numer(), v.denom()),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident, $assign_tr:ident, $assign:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }

        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }

        impl $assign_tr<&Scalar> for Scalar {
            fn $assign(&mut self, rhs: &Scalar) {
                *self = (&*self).$method(rhs);
            }
        }
    };
}

binop!(Add, add, checked_add, AddAssign, add_assign);
binop!(Sub, sub, checked_sub, SubAssign, sub_assign);
binop!(Mul, mul, checked_mul, MulAssign, mul_assign);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Int(v) => Scalar::Int(-v),
            Scalar::Rat(v) => Scalar::Rat(-v),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus.get() - value) % modulus.get(),
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
