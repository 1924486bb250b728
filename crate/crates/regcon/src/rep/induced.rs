//! Modules `Ind_C^G ψ_d`, where `C = ⟨x⟩` is cyclic and `ψ_d` is the sum of
//! the characters of `C` of exact order `d` (a Q-irreducible character of `C`).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::rational::{cyclic_generators, RationalRep};
use crate::arith::{divisors, euler_phi, ramanujan_sum};
use crate::group::FiniteGroup;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CyclicInduced {
    pub generator: usize,
    pub order: usize,
    pub d: usize,
}

impl CyclicInduced {
    /// Every `(C, d)` with `d > 1`, one cyclic subgroup per conjugacy class.
    /// (`d = 1` gives the permutation modules `Q[G/C]`.)
    pub fn all(g: &FiniteGroup) -> Vec<Self> {
        let mut out = Vec::new();
        for (generator, order) in cyclic_generators(g) {
            for d in divisors(order as u64).into_iter().skip(1) {
                out.push(CyclicInduced { generator, order, d: d as usize });
            }
        }
        out
    }

    pub fn dim(&self, g: &FiniteGroup) -> usize {
        g.order() / self.order * euler_phi(self.d as u64) as usize
    }

    fn psi(&self, k: usize) -> i64 {
        ramanujan_sum(self.d as u64, k as u64)
    }

    fn positions(&self, g: &FiniteGroup) -> HashMap<usize, usize> {
        (0..self.order).map(|k| (g.pow(self.generator, k as i64), k)).collect()
    }

    /// Character values on the conjugacy classes of `g`.
    pub fn character(&self, g: &FiniteGroup) -> Vec<i64> {
        let pos = self.positions(g);
        let cc = g.conjugacy_classes();
        (0..cc.len())
            .map(|c| {
                let r = cc.rep(c);
                let total: i64 = (0..g.order())
                    .filter_map(|y| pos.get(&g.conj(y, r)).map(|&k| self.psi(k)))
                    .sum();
                total / self.order as i64
            })
            .collect()
    }

    /// The left ideal `Q[G]·e_ψ` of the regular representation.
    pub fn module(&self, g: &FiniteGroup) -> Result<RationalRep> {
        let regular = RationalRep::regular(g);
        let mut e = vec![BigRational::zero(); g.order()];
        for (x, k) in self.positions(g) {
            e[x] = BigRational::from_integer(BigInt::from(self.psi(k)));
        }
        regular.cyclic_submodule(g, &e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::named_group;

    #[test]
    fn character_matches_module() {
        for name in ["S 3", "Q 8", "C 6", "D 8"] {
            let g = named_group(name).unwrap();
            for ind in CyclicInduced::all(&g) {
                let m = ind.module(&g).unwrap();
                assert_eq!(m.dim(), ind.dim(&g), "{name} {ind:?}");
                assert_eq!(m.character(&g), ind.character(&g), "{name} {ind:?}");
            }
        }
    }
}
