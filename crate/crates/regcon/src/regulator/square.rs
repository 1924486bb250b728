//! Square classes in Q^×/Q^×² and Q_p^×/Q_p^×².

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{legendre, squarefree_part};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    pub sign: i8,
    pub squarefree: BigUint,
}

impl SquareClass {
    pub fn one() -> Self {
        SquareClass { sign: 1, squarefree: BigUint::one() }
    }

    pub fn from_rational(r: &BigRational) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::Factorization("0".into()));
        }
        let sign = if r.is_negative() { -1 } else { 1 };
        let sf = squarefree_part(&(r.numer() * r.denom()))?;
        Ok(SquareClass { sign, squarefree: sf })
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n))).expect("nonzero")
    }

    pub fn is_trivial(&self) -> bool {
        self.sign == 1 && self.squarefree.is_one()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let g = self.squarefree.gcd(&other.squarefree);
        let sf = (&self.squarefree / &g) * (&other.squarefree / &g);
        SquareClass { sign: self.sign * other.sign, squarefree: sf }
    }

    pub fn as_integer(&self) -> BigInt {
        BigInt::from(self.sign) * BigInt::from(self.squarefree.clone())
    }

    /// Odd part: the class modulo the subgroup generated by 2.
    pub fn odd_part(&self) -> Self {
        let two = BigUint::from(2u32);
        let sf = if self.squarefree.is_even() { &self.squarefree / &two } else { self.squarefree.clone() };
        SquareClass { sign: self.sign, squarefree: sf }
    }

    pub fn to_padic(&self, p: u64) -> PadicSquareClass {
        PadicSquareClass::from_integer(&self.as_integer(), p)
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_integer())
    }
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Class in Q_p^×/Q_p^×²: valuation parity plus unit class (a residue bit
/// for odd p, the unit mod 8 for p = 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PadicSquareClass {
    pub p: u64,
    pub val_parity: u8,
    pub unit: u8,
}

impl PadicSquareClass {
    pub fn one(p: u64) -> Self {
        PadicSquareClass { p, val_parity: 0, unit: if p == 2 { 1 } else { 0 } }
    }

    pub fn from_integer(n: &BigInt, p: u64) -> Self {
        let bp = BigInt::from(p);
        let mut u = n.clone();
        let mut v = 0u8;
        while (&u % &bp).is_zero() {
            u /= &bp;
            v ^= 1;
        }
        if p == 2 {
            let m = u.mod_floor(&BigInt::from(8)).to_u8().unwrap();
            PadicSquareClass { p, val_parity: v, unit: m }
        } else {
            let r = u.mod_floor(&bp).to_i64().unwrap();
            let bit = if legendre(r, p) == 1 { 0 } else { 1 };
            PadicSquareClass { p, val_parity: v, unit: bit }
        }
    }

    pub fn from_rational(r: &BigRational, p: u64) -> Self {
        Self::from_integer(&(r.numer() * r.denom()), p)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let unit = if self.p == 2 { (self.unit * other.unit) % 8 } else { self.unit ^ other.unit };
        PadicSquareClass { p: self.p, val_parity: self.val_parity ^ other.val_parity, unit }
    }

    pub fn is_trivial(&self) -> bool {
        *self == Self::one(self.p)
    }
}

impl fmt::Display for PadicSquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pre = if self.val_parity == 1 { format!("{}·", self.p) } else { String::new() };
        if self.p == 2 {
            write!(f, "{pre}u≡{}", self.unit)
        } else {
            write!(f, "{pre}{}", if self.unit == 0 { "square unit" } else { "non-square unit" })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_frac;

    #[test]
    fn classes_multiply() {
        let a = SquareClass::from_rational(&rat_frac(12, 5)).unwrap();
        assert_eq!(a.to_string(), "15");
        let b = SquareClass::from_int(-10);
        assert_eq!(a.mul(&b).to_string(), "-6");
        assert!(SquareClass::from_rational(&rat_frac(4, 9)).unwrap().is_trivial());
        assert_eq!(SquareClass::from_int(6).odd_part().to_string(), "3");
    }

    #[test]
    fn padic_reduction_is_multiplicative() {
        for p in [2u64, 3, 5, 7] {
            for a in [-15i64, -6, -1, 2, 3, 5, 7, 10, 14] {
                for b in [-3i64, 2, 5, 6, 11] {
                    let ca = SquareClass::from_int(a);
                    let cb = SquareClass::from_int(b);
                    assert_eq!(ca.mul(&cb).to_padic(p), ca.to_padic(p).mul(&cb.to_padic(p)));
                }
            }
        }
        // 17 is a square in Q_2, 5 is not; -1 is a square in Q_5
        assert!(SquareClass::from_int(17).to_padic(2).is_trivial());
        assert!(!SquareClass::from_int(5).to_padic(2).is_trivial());
        assert!(SquareClass::from_int(-1).to_padic(5).is_trivial());
    }
}
