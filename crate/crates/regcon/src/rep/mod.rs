//! Characters, Galois orbits over Q and Q_p, and explicit rational representations.

pub mod chartable;
pub mod cyclo;
pub mod induced;
pub mod rational;
mod split;

use serde::Serialize;

pub use chartable::{character_table, Character, CharacterTable};
pub use induced::CyclicInduced;
pub use rational::{InvariantPairing, RationalRep};

use crate::arith::{gcd_u64, val_u64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BaseField {
    Q,
    Qp(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SchurHint {
    One,
    PossiblyEven,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldOrbit {
    pub base: BaseField,
    pub members: Vec<usize>,
    pub self_dual: bool,
    pub fs: i8,
    pub degree: usize,
    /// Integer values when the orbit sum is rational-valued.
    pub rational_character: Option<Vec<i64>>,
    pub schur_hint: SchurHint,
}

impl FieldOrbit {
    pub fn dim(&self) -> usize {
        self.degree * self.members.len()
    }
}

/// Exponents `a` (mod e) of the acting Galois group.
pub fn galois_exponents(e: usize, base: BaseField) -> Vec<usize> {
    let units: Vec<usize> = (1..=e.max(1)).filter(|&a| gcd_u64(a as u64, e as u64) == 1).map(|a| a % e.max(1)).collect();
    match base {
        BaseField::Q => units,
        BaseField::Qp(p) => {
            // Gal(Q_p(ζ_e)/Q_p) = (Z/p^v)^× × <p mod e'>
            let v = val_u64(e as u64, p);
            let e1 = e as u64 / p.pow(v);
            let mut powers = vec![1 % e1];
            let mut x = p % e1;
            while e1 > 1 && !powers.contains(&x) {
                powers.push(x);
                x = x * p % e1;
            }
            units.into_iter().filter(|&a| powers.contains(&(a as u64 % e1))).collect()
        }
    }
}

/// Orbits of irreducible characters under the Galois group of the base field,
/// ordered by smallest member.
pub fn field_orbits(table: &CharacterTable, base: BaseField, perm_chars: Option<&[Vec<i64>]>) -> Vec<FieldOrbit> {
    let k = table.len();
    let exps = galois_exponents(table.exponent, base);
    let mut assigned = vec![false; k];
    let mut out = Vec::new();
    for i in 0..k {
        if assigned[i] {
            continue;
        }
        let mut members: Vec<usize> = exps.iter().map(|&a| table.galois_image(i, a)).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            assigned[m] = true;
        }
        let self_dual = members.contains(&table.dual(i));
        let fs = table.chars[i].fs;
        let rational_character = table.rational_values(&members);
        let hint = if fs == -1 {
            SchurHint::PossiblyEven
        } else if let (Some(rc), Some(pcs)) = (&rational_character, perm_chars) {
            if crate::burnside::perm_combination(pcs, rc).is_some() {
                SchurHint::One
            } else {
                SchurHint::Unknown
            }
        } else {
            SchurHint::Unknown
        };
        out.push(FieldOrbit {
            base,
            members,
            self_dual,
            fs,
            degree: table.chars[i].degree,
            rational_character,
            schur_hint: hint,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::named_group;

    #[test]
    fn q_orbits_of_d10() {
        let g = named_group("D 10").unwrap();
        let t = g.character_table().unwrap();
        let orbits = field_orbits(t, BaseField::Q, None);
        let dims: Vec<usize> = orbits.iter().map(|o| o.dim()).collect();
        assert_eq!(dims, vec![1, 1, 4]);
        assert!(orbits.iter().all(|o| o.self_dual));
    }

    #[test]
    fn qp_exponents() {
        // e = 12, p = 2: (Z/4)^× × <2 mod 3> = all units
        assert_eq!(galois_exponents(12, BaseField::Qp(2)).len(), 4);
        // e = 5, p = 11: 11 ≡ 1 mod 5, trivial group
        assert_eq!(galois_exponents(5, BaseField::Qp(11)), vec![1]);
        // e = 5, p = 2: 2 has order 4 mod 5
        assert_eq!(galois_exponents(5, BaseField::Qp(2)).len(), 4);
        // e = 9, p = 3: totally ramified, full group
        assert_eq!(galois_exponents(9, BaseField::Qp(3)).len(), 6);
    }
}
