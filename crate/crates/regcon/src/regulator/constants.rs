//! Regulator constants of permutation modules, explicit representations and
//! rational irreducibles.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::functions::BurnsideFunction;
use super::square::SquareClass;
use crate::arith::rat_pow;
use crate::burnside::{permutation_character, Relation};
use crate::group::FiniteGroup;
use crate::rep::{field_orbits, BaseField, CharacterTable, CyclicInduced, FieldOrbit, InvariantPairing, RationalRep};
use crate::{Error, Result};

/// Largest module tried by the isotypic strategies.
const MAX_MODULE_DIM: usize = 120;

/// `∏_i (∏_{w ∈ H_i\G/D} 1/|H_i ∩ wDw^{-1}|)^{n_i}` for the module `Q[G/D]`.
pub fn regconst_perm(g: &FiniteGroup, rel: &Relation, d: &[usize]) -> BigRational {
    let lat = g.subgroup_lattice();
    let mut acc = BigRational::one();
    for (i, n) in rel.terms() {
        let h = &lat.classes[i].representative;
        let mut denom = BigInt::one();
        for w in g.double_cosets(h, d).reps {
            let conj = g.conjugate_set(d, w);
            denom *= BigInt::from(FiniteGroup::intersection(h, &conj).len());
        }
        acc *= rat_pow(&BigRational::new(BigInt::one(), denom), n);
    }
    acc
}

/// `det((1/|H|)⟨,⟩ restricted to ρ^H)`, with 1 on a zero-dimensional space.
fn invariant_det(
    rep: &RationalRep,
    pairing: &InvariantPairing,
    h: &[usize],
    class_id: usize,
) -> Result<BigRational> {
    let b = rep.invariants(h);
    if b.cols == 0 {
        return Ok(BigRational::one());
    }
    let m = b.transpose().mul(&pairing.gram).mul(&b);
    let det = m.det();
    if det.is_zero() {
        return Err(Error::DegenerateOnInvariants(class_id));
    }
    Ok(det / rat_pow(&BigRational::from_integer(BigInt::from(h.len())), b.cols as i64))
}

/// The function `D_ρ: H ↦ det((1/|H|)⟨,⟩|ρ^H)` on all subgroup classes.
pub fn d_function(g: &FiniteGroup, rep: &RationalRep, pairing: &InvariantPairing) -> Result<BurnsideFunction> {
    let lat = g.subgroup_lattice();
    let values = lat
        .classes
        .iter()
        .map(|c| invariant_det(rep, pairing, &c.representative, c.id))
        .collect::<Result<Vec<_>>>()?;
    Ok(BurnsideFunction::new(values))
}

/// `C_Θ(ρ)` as an exact rational (depends on the pairing only up to squares).
pub fn regconst_rep_exact(
    g: &FiniteGroup,
    rel: &Relation,
    rep: &RationalRep,
    pairing: &InvariantPairing,
) -> Result<BigRational> {
    let lat = g.subgroup_lattice();
    let mut acc = BigRational::one();
    for (i, n) in rel.terms() {
        let v = invariant_det(rep, pairing, &lat.classes[i].representative, i)?;
        acc *= rat_pow(&v, n);
    }
    Ok(acc)
}

pub fn regconst_rep(g: &FiniteGroup, rel: &Relation, rep: &RationalRep, pairing: &InvariantPairing) -> Result<SquareClass> {
    SquareClass::from_rational(&regconst_rep_exact(g, rel, rep, pairing)?)
}

/// A rational module in which an irreducible is looked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum SourceModule {
    /// `Q[G/K]` for a subgroup class `K`.
    Permutation { subgroup: usize },
    /// `Ind_C^G ψ_d` for a cyclic subgroup `C`.
    CyclicInduced(CyclicInduced),
}

impl SourceModule {
    fn build(&self, g: &FiniteGroup) -> Result<RationalRep> {
        match *self {
            SourceModule::Permutation { subgroup } => {
                Ok(RationalRep::perm_rep(g, &g.subgroup_lattice().classes[subgroup].representative))
            }
            SourceModule::CyclicInduced(ind) => ind.module(g),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Strategy {
    /// Integer combination of permutation characters.
    PermCombination,
    /// Isotypic component of a module where the summand occurs an odd number of times.
    OddMultiplicity { module: SourceModule, copies: usize },
    /// A single summand cut out of an isotypic component.
    Extraction { module: SourceModule },
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitConstant {
    pub orbit: usize,
    pub class: SquareClass,
    /// Exact value `C_Θ(ρ)` for one copy of the Q-irreducible, when computed on it directly.
    #[serde(serialize_with = "ser_opt_rat")]
    pub exact: Option<BigRational>,
    pub strategy: Strategy,
    /// Schur index over Q, when the computation certified it.
    pub schur_index: Option<usize>,
}

fn ser_opt_rat<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Data shared by all constant computations on one group.
pub struct RegulatorContext<'a> {
    pub group: &'a FiniteGroup,
    pub table: &'a CharacterTable,
    /// Permutation character of `G/K` for every subgroup class `K`.
    pub perm_chars: Vec<Vec<i64>>,
    /// Modules induced from nontrivial rational characters of cyclic subgroups, with characters.
    pub induced: Vec<(CyclicInduced, Vec<i64>)>,
    pub q_orbits: Vec<FieldOrbit>,
    pub seed: u64,
}

impl<'a> RegulatorContext<'a> {
    pub fn new(group: &'a FiniteGroup, seed: u64) -> Result<Self> {
        Ok(Self::with_table(group, group.character_table()?, seed))
    }

    pub fn with_table(group: &'a FiniteGroup, table: &'a CharacterTable, seed: u64) -> Self {
        let perm_chars: Vec<Vec<i64>> = group
            .subgroup_lattice()
            .classes
            .iter()
            .map(|c| permutation_character(group, &c.representative))
            .collect();
        let induced = CyclicInduced::all(group).into_iter().map(|m| (m, m.character(group))).collect();
        let q_orbits = field_orbits(table, BaseField::Q, Some(&perm_chars));
        RegulatorContext { group, table, perm_chars, induced, q_orbits, seed }
    }

    fn multiplicity(&self, chi: usize, character: &[i64]) -> usize {
        self.table.multiplicity_in(chi, character).to_integer().to_usize().expect("multiplicity")
    }

    /// Multiplicity of an irreducible character in each `Q[G/K]`.
    pub fn perm_multiplicities(&self, chi: usize) -> Vec<usize> {
        self.perm_chars.iter().map(|pc| self.multiplicity(chi, pc)).collect()
    }

    /// Every source module containing `chi`, with its dimension and the multiplicity of `chi`.
    fn sources(&self, chi: usize) -> Vec<(SourceModule, usize, usize)> {
        let g = self.group;
        let lat = g.subgroup_lattice();
        let mut out: Vec<(SourceModule, usize, usize)> = self
            .perm_chars
            .iter()
            .enumerate()
            .map(|(k, pc)| (SourceModule::Permutation { subgroup: k }, g.order() / lat.classes[k].order, self.multiplicity(chi, pc)))
            .collect();
        for (m, ch) in &self.induced {
            out.push((SourceModule::CyclicInduced(*m), m.dim(g), self.multiplicity(chi, ch)));
        }
        out.retain(|s| s.2 > 0);
        out.sort_by_key(|s| s.1);
        out
    }

    /// Index of the Q-orbit containing a complex character.
    pub fn q_orbit_of(&self, chi: usize) -> usize {
        self.q_orbits.iter().position(|o| o.members.contains(&chi)).expect("every character lies in an orbit")
    }

    /// Constants of every Q-orbit, in orbit order.
    pub fn all_constants(&self, rel: &Relation) -> Vec<Result<OrbitConstant>> {
        (0..self.q_orbits.len()).map(|i| regconst_irreducible(self, rel, i)).collect()
    }
}

/// `C_Θ(ρ)` for the Q-irreducible representation attached to a Q-orbit of characters.
///
/// The Schur index `s` divides the multiplicity of `χ` in every rational
/// module, so it is known once the gcd of those multiplicities reaches the
/// lower bound (2 for symplectic orbits, else 1).
pub fn regconst_irreducible(ctx: &RegulatorContext, rel: &Relation, orbit_idx: usize) -> Result<OrbitConstant> {
    let g = ctx.group;
    let lat = g.subgroup_lattice();
    let orbit = ctx.q_orbits.get(orbit_idx).ok_or_else(|| Error::Unsolvable(format!("no orbit {orbit_idx}")))?;
    if !orbit.self_dual {
        return Err(Error::NotSelfDual);
    }
    let omega = orbit.rational_character.clone().ok_or(Error::NotSelfDual)?;
    let s_lower: usize = if orbit.fs == -1 { 2 } else { 1 };
    let sources = ctx.sources(orbit.members[0]);
    let gcd = sources.iter().fold(0usize, |a, s| a.gcd(&s.2));
    let s_known = (gcd == s_lower).then_some(s_lower);

    // (i) s·Ω as an integer combination of permutation characters
    let target: Vec<i64> = omega.iter().map(|&v| v * s_lower as i64).collect();
    if let Some(x) = crate::burnside::perm_combination(&ctx.perm_chars, &target) {
        let mut exact = BigRational::one();
        for (k, xk) in x.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            let v = regconst_perm(g, rel, &lat.classes[k].representative);
            exact *= rat_pow(&v, xk.to_i64().expect("small coefficient"));
        }
        return Ok(OrbitConstant {
            orbit: orbit_idx,
            class: SquareClass::from_rational(&exact)?,
            exact: Some(exact),
            strategy: Strategy::PermCombination,
            schur_index: Some(s_lower),
        });
    }

    let candidates: Vec<&(SourceModule, usize, usize)> = sources.iter().filter(|s| s.1 <= MAX_MODULE_DIM).collect();

    // (ii) odd number of copies of ρ
    for &&(module, _, mult) in &candidates {
        let copies = match s_known {
            Some(s) => mult / s,
            None if mult % 2 == 1 => mult,
            None => continue,
        };
        if copies % 2 == 0 {
            continue;
        }
        let iso = module.build(g)?.isotypic_component(g, &omega)?;
        let pairing = iso.average_pairing(ctx.seed)?;
        let exact = regconst_rep_exact(g, rel, &iso, &pairing)?;
        return Ok(OrbitConstant {
            orbit: orbit_idx,
            class: SquareClass::from_rational(&exact)?,
            exact: (copies == 1).then_some(exact),
            strategy: Strategy::OddMultiplicity { module, copies },
            schur_index: s_known,
        });
    }

    // (iii) cut a single summand out of an isotypic component
    if let Some(&&(module, _, _)) = candidates.first() {
        let iso = module.build(g)?.isotypic_component(g, &omega)?;
        if let Ok(single) = iso.extract_single_copy(g, s_lower * orbit.dim(), ctx.seed) {
            let pairing = single.average_pairing(ctx.seed)?;
            let exact = regconst_rep_exact(g, rel, &single, &pairing)?;
            return Ok(OrbitConstant {
                orbit: orbit_idx,
                class: SquareClass::from_rational(&exact)?,
                exact: Some(exact),
                strategy: Strategy::Extraction { module },
                schur_index: Some(s_lower),
            });
        }
    }
    Err(Error::Unsolvable(format!("orbit {orbit_idx}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::relations_lattice;
    use crate::group::named::named_group;

    #[test]
    fn s3_perm_constants() {
        let g = named_group("S 3").unwrap();
        let lat = g.subgroup_lattice();
        let rel = relations_lattice(&g).remove(0);
        let class = |k: usize| SquareClass::from_rational(&regconst_perm(&g, &rel, &lat.classes[k].representative)).unwrap();
        assert_eq!(class(3).to_string(), "3");
        assert_eq!(class(2).to_string(), "1");
        assert_eq!(class(1).to_string(), "1");
        assert!(regconst_perm(&g, &Relation::zero(&g), &lat.classes[0].representative).is_one());
    }

    #[test]
    fn s3_irreducibles() {
        let g = named_group("S 3").unwrap();
        let rel = relations_lattice(&g).remove(0);
        let ctx = RegulatorContext::new(&g, 1).unwrap();
        let classes: Vec<String> =
            ctx.all_constants(&rel).into_iter().map(|c| c.unwrap().class.to_string()).collect();
        assert_eq!(classes, vec!["3", "3", "3"]);
    }
}
