//! Tamagawa numbers of elliptic curves over extensions of the base field,
//! as functions of `(e, f)` and of which quadratic fields the extension contains.

use std::fmt;

use serde::{Serialize, Serializer};

use super::ReductionKind;
use crate::arith::gcd_u64;
use crate::{Error, Result};

/// Membership of `√B`, `√Δ`, `√(-6B)` in the field at hand (`None`: not supplied).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub sqrt_b: Option<bool>,
    pub sqrt_delta: Option<bool>,
    pub sqrt_minus_6b: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TamagawaValue {
    Exact(u64),
    /// `1` or `4`: determined only up to squares.
    OneOrFour,
}

impl TamagawaValue {
    /// A representative of the square class.
    pub fn square_representative(&self) -> u64 {
        match self {
            TamagawaValue::Exact(c) => *c,
            TamagawaValue::OneOrFour => 1,
        }
    }
}

impl fmt::Display for TamagawaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TamagawaValue::Exact(c) => write!(f, "{c}"),
            TamagawaValue::OneOrFour => write!(f, "1|4"),
        }
    }
}

impl Serialize for TamagawaValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Kodaira symbol of potentially good reduction with discriminant valuation `δe`.
pub fn kodaira_symbol(delta_e: u64) -> &'static str {
    match delta_e % 12 {
        0 => "I0",
        2 => "II",
        3 => "III",
        4 => "IV",
        6 => "I0*",
        8 => "IV*",
        9 => "III*",
        10 => "II*",
        _ => "?",
    }
}

/// `c_v` over a field with ramification degree `e` and residue degree `f`
/// for good or multiplicative reduction.
pub fn tamagawa_semistable(kind: &ReductionKind, e: u64, f: u64) -> Result<u64> {
    match *kind {
        ReductionKind::Good => Ok(1),
        ReductionKind::SplitMult { n } => Ok(n * e),
        ReductionKind::NonsplitMult { n } => {
            let ne = n * e;
            Ok(if f.is_multiple_of(2) {
                ne
            } else if ne % 2 == 1 {
                1
            } else {
                2
            })
        }
        _ => Err(Error::WrongKind("expected good or multiplicative reduction".into())),
    }
}

fn need(flag: Option<bool>, name: &str) -> Result<bool> {
    flag.ok_or_else(|| Error::MissingFlag(name.into()))
}

/// `c_v` over a field with ramification degree `e` for additive reduction
/// with residue characteristic `l > 3`.
pub fn tamagawa_additive(kind: &ReductionKind, e: u64, _f: u64, flags: &Flags, l: u64) -> Result<TamagawaValue> {
    if l <= 3 {
        return Err(Error::UnsupportedCase("additive reduction needs residue characteristic > 3".into()));
    }
    use TamagawaValue::*;
    match *kind {
        ReductionKind::PotGood { delta } => match gcd_u64(delta * e, 12) {
            12 | 2 => Ok(Exact(1)),
            3 => Ok(Exact(2)),
            4 => Ok(Exact(if need(flags.sqrt_b, "sqrt_b")? { 3 } else { 1 })),
            6 => Ok(if need(flags.sqrt_delta, "sqrt_delta")? { OneOrFour } else { Exact(2) }),
            _ => Err(Error::WrongKind(format!("δ = {delta} is not a potentially good valuation for l > 3"))),
        },
        ReductionKind::PotMult { n } => {
            if e.is_multiple_of(2) {
                Ok(Exact(if need(flags.sqrt_minus_6b, "sqrt_minus_6b")? { n * e } else { 2 }))
            } else {
                let present = if n % 2 == 1 {
                    need(flags.sqrt_b, "sqrt_b")?
                } else {
                    need(flags.sqrt_delta, "sqrt_delta")?
                };
                Ok(Exact(if present { 4 } else { 2 }))
            }
        }
        _ => Err(Error::WrongKind("expected potentially good or potentially multiplicative reduction".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semistable_table() {
        for (e, f) in [(1, 1), (3, 2), (4, 7)] {
            assert_eq!(tamagawa_semistable(&ReductionKind::Good, e, f).unwrap(), 1);
        }
        assert_eq!(tamagawa_semistable(&ReductionKind::SplitMult { n: 2 }, 3, 1).unwrap(), 6);
        assert_eq!(tamagawa_semistable(&ReductionKind::NonsplitMult { n: 1 }, 1, 2).unwrap(), 1);
        assert_eq!(tamagawa_semistable(&ReductionKind::NonsplitMult { n: 1 }, 2, 1).unwrap(), 2);
        assert_eq!(tamagawa_semistable(&ReductionKind::NonsplitMult { n: 3 }, 1, 1).unwrap(), 1);
        assert_eq!(tamagawa_semistable(&ReductionKind::NonsplitMult { n: 3 }, 2, 4).unwrap(), 6);
        assert!(matches!(
            tamagawa_semistable(&ReductionKind::PotGood { delta: 2 }, 1, 1),
            Err(Error::WrongKind(_))
        ));
    }

    #[test]
    fn additive_table() {
        let none = Flags::default();
        let b = Flags { sqrt_b: Some(true), ..none };
        let pg = |delta| ReductionKind::PotGood { delta };
        assert_eq!(tamagawa_additive(&pg(3), 1, 1, &none, 5).unwrap(), TamagawaValue::Exact(2));
        assert_eq!(tamagawa_additive(&pg(4), 1, 1, &b, 5).unwrap(), TamagawaValue::Exact(3));
        assert_eq!(
            tamagawa_additive(&pg(4), 1, 1, &Flags { sqrt_b: Some(false), ..none }, 5).unwrap(),
            TamagawaValue::Exact(1)
        );
        assert_eq!(tamagawa_additive(&pg(2), 6, 1, &none, 7).unwrap(), TamagawaValue::Exact(1));
        assert_eq!(tamagawa_additive(&pg(4), 1, 1, &none, 5), Err(Error::MissingFlag("sqrt_b".into())));
        assert_eq!(
            tamagawa_additive(&pg(2), 3, 1, &Flags { sqrt_delta: Some(true), ..none }, 5).unwrap(),
            TamagawaValue::OneOrFour
        );
        let split = Flags { sqrt_minus_6b: Some(true), ..none };
        assert_eq!(tamagawa_additive(&ReductionKind::PotMult { n: 3 }, 2, 1, &split, 5).unwrap(), TamagawaValue::Exact(6));
        assert_eq!(
            tamagawa_additive(&ReductionKind::PotMult { n: 3 }, 2, 1, &Flags { sqrt_minus_6b: Some(false), ..none }, 5)
                .unwrap(),
            TamagawaValue::Exact(2)
        );
        assert!(matches!(tamagawa_additive(&pg(3), 1, 1, &none, 3), Err(Error::UnsupportedCase(_))));
    }

    #[test]
    fn kodaira_symbols() {
        assert_eq!(kodaira_symbol(2), "II");
        assert_eq!(kodaira_symbol(10), "II*");
        assert_eq!(kodaira_symbol(18), "I0*");
        assert_eq!(kodaira_symbol(24), "I0");
    }
}
