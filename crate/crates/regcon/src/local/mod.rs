//! Local data at a finite place: Tamagawa numbers, the functions `C_v` and
//! `D_V` on the Burnside ring of a decomposition group, the dihedral tables
//! and the monodromy lattice function `φ(e, f)`.

pub mod compat;
pub mod lattice;
pub mod sweep;
pub mod tables;
pub mod tamagawa;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd_u64, is_prime, prime_divisors};
use crate::group::parse::parse_group;
use crate::group::{FiniteGroup, DEFAULT_BOUND};
use crate::{Error, Result};

pub use compat::{
    check_flags, compatibility_check, cv_function, dv_function, root_sign, v_character, CompatReport, CvFunction, LocalCase,
    VSpec,
};
pub use lattice::{phi_lattice, verify_phi_claims, ClaimReport, FixedPointMethod, LatticePair, PhiValue};
pub use tables::{load_tables, verify_dihedral_tables, verify_table, DihedralTable, DihedralTableEntry, TableReport};
pub use tamagawa::{tamagawa_additive, tamagawa_semistable, Flags, TamagawaValue};

/// Decomposition group `D` with inertia `I ⊴ D` and wild inertia `W ⊴ D`.
#[derive(Debug, Clone)]
pub struct LocalSetup {
    pub group: FiniteGroup,
    pub inertia: Vec<usize>,
    pub wild: Vec<usize>,
    pub residue_char: u64,
    pub residue_size: u64,
}

/// JSON form of a [`LocalSetup`]: subgroups by lattice label.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SetupSpec {
    pub group: String,
    pub inertia: String,
    #[serde(default = "trivial_label")]
    pub wild: String,
    pub l: u64,
    pub q: u64,
}

fn trivial_label() -> String {
    "1".into()
}

fn is_power_of(q: u64, l: u64) -> bool {
    let f = factorize(q);
    f.len() == 1 && f[0].0 == l
}

impl LocalSetup {
    pub fn new(group: FiniteGroup, inertia: Vec<usize>, wild: Vec<usize>, l: u64, q: u64) -> Result<Self> {
        let bad = |m: &str| Err(Error::InvalidSetup(m.into()));
        if !group.is_subgroup(&inertia) || !group.is_subgroup(&wild) {
            return bad("inertia and wild inertia must be subgroups");
        }
        let all: Vec<usize> = (0..group.order()).collect();
        crate::regulator::functions::check_cyclic_quotient(&group, &all, &inertia)?;
        if !wild.iter().all(|x| inertia.binary_search(x).is_ok()) || !group.is_normal(&wild) {
            return bad("W must be a normal subgroup of D contained in I");
        }
        if !is_prime(l) || !is_power_of(q, l) {
            return bad("q must be a power of the prime l");
        }
        if wild.len() > 1 && prime_divisors(wild.len() as u64) != [l] {
            return bad("|W| must be a power of l");
        }
        let tame = inertia.len() / wild.len();
        if gcd_u64(tame as u64, l) != 1 {
            return bad("[I:W] must be prime to l");
        }
        let cyclic_tame = inertia.iter().any(|&x| {
            let mut gens = wild.clone();
            gens.push(x);
            group.closure(&gens).len() == inertia.len()
        });
        if !cyclic_tame {
            return bad("I/W must be cyclic");
        }
        Ok(LocalSetup { group, inertia, wild, residue_char: l, residue_size: q })
    }

    pub fn from_spec(spec: &SetupSpec) -> Result<Self> {
        let g = parse_group(&spec.group, DEFAULT_BOUND)?;
        let i = normal_by_label(&g, &spec.inertia)?;
        let w = normal_by_label(&g, &spec.wild)?;
        LocalSetup::new(g, i, w, spec.l, spec.q)
    }

    pub fn all(&self) -> Vec<usize> {
        (0..self.group.order()).collect()
    }

    /// `(e, f)` of the fixed field of `H` over the base.
    pub fn ef(&self, h: &[usize]) -> (u64, u64) {
        let hi = FiniteGroup::intersection(h, &self.inertia).len();
        let e = self.inertia.len() / hi;
        let f = (self.group.order() / self.inertia.len()) / (h.len() / hi);
        (e as u64, f as u64)
    }

    /// An element generating `D/I`.
    pub fn frobenius_lift(&self) -> usize {
        (0..self.group.order())
            .find(|&y| {
                let mut gens = self.inertia.clone();
                gens.push(y);
                self.group.closure(&gens).len() == self.group.order()
            })
            .expect("D/I is cyclic")
    }

    /// The subgroup of index 2 containing `I` (fixing the unramified
    /// quadratic extension), if `[D:I]` is even.
    pub fn unramified_quadratic(&self) -> Option<Vec<usize>> {
        let index = self.group.order() / self.inertia.len();
        if index % 2 == 1 {
            return None;
        }
        let y = self.frobenius_lift();
        let mut gens = self.inertia.clone();
        gens.push(self.group.mul(y, y));
        Some(self.group.closure(&gens))
    }

    /// Frobenius acts on tame inertia `I/W` by `x ↦ x^q`.
    pub fn check_frobenius(&self) -> Result<()> {
        let g = &self.group;
        let y = self.frobenius_lift();
        // orders of elements of I divide |I|
        let q = (self.residue_size % self.inertia.len() as u64) as i64;
        for &x in &self.inertia {
            let lhs = g.conj(y, x);
            let rhs = g.pow(x, q);
            let diff = g.mul(lhs, g.inv(rhs));
            if self.wild.binary_search(&diff).is_err() {
                return Err(Error::InvalidSetup(format!(
                    "Frobenius does not act on I/W by the q-th power (q = {})",
                    self.residue_size
                )));
            }
        }
        Ok(())
    }

    /// True when the wild inertia group is cyclic.
    pub fn wild_is_cyclic(&self) -> bool {
        self.wild.iter().any(|&x| self.group.element_order(x) == self.wild.len())
    }
}

/// The unique subgroup in a normal class, looked up by lattice label.
pub fn normal_by_label(g: &FiniteGroup, label: &str) -> Result<Vec<usize>> {
    let lat = g.subgroup_lattice();
    let id = lat
        .by_label(label)
        .ok_or_else(|| Error::InvalidSetup(format!("no subgroup class labelled {label}")))?;
    let c = &lat.classes[id];
    if !c.is_normal {
        return Err(Error::InvalidSetup(format!("subgroup {label} is not normal")));
    }
    Ok(c.representative.clone())
}

/// Reduction type of an elliptic curve or abelian variety over the base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReductionKind {
    Good,
    SplitMult { n: u64 },
    NonsplitMult { n: u64 },
    /// Potentially good reduction, `δ` the valuation of the minimal discriminant.
    PotGood { delta: u64 },
    /// Potentially multiplicative reduction of type `I_n*`.
    PotMult { n: u64 },
    SemistableAv { lattice: LatticePair },
}

impl ReductionKind {
    /// `12 / gcd(12, δ)` for potentially good reduction.
    pub fn e_frak(&self) -> Option<u64> {
        match self {
            ReductionKind::PotGood { delta } => Some(12 / gcd_u64(12, *delta)),
            _ => None,
        }
    }

    pub fn is_semistable(&self) -> bool {
        matches!(
            self,
            ReductionKind::Good
                | ReductionKind::SplitMult { .. }
                | ReductionKind::NonsplitMult { .. }
                | ReductionKind::SemistableAv { .. }
        )
    }
}

/// Which quadratic extensions `K(√x)` lie in a field `F^H`, given as the
/// subgroup `Gal(F/K(√x))`: `√x ∈ F^H` iff `H` lies in it. The label
/// `"none"` means `√x ∉ F`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sqrt_b: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sqrt_delta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sqrt_minus_6b: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionData {
    #[serde(flatten)]
    pub kind: ReductionKind,
    #[serde(default)]
    pub flags: FlagSpec,
}

impl ReductionData {
    pub fn new(kind: ReductionKind) -> Self {
        ReductionData { kind, flags: FlagSpec::default() }
    }

    pub fn with_flags(mut self, flags: FlagSpec) -> Self {
        self.flags = flags;
        self
    }
}

/// A resolved flag: the subgroup `Gal(F/K(√x))`, or `None` when `√x ∉ F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagGroup(pub Option<Vec<usize>>);

impl FlagGroup {
    pub fn resolve(g: &FiniteGroup, label: &str) -> Result<Self> {
        if label == "none" {
            return Ok(FlagGroup(None));
        }
        let s = normal_by_label(g, label)?;
        if g.order() / s.len() > 2 {
            return Err(Error::InvalidSetup(format!("flag subgroup {label} has index > 2")));
        }
        Ok(FlagGroup(Some(s)))
    }

    pub fn contains(&self, h: &[usize]) -> bool {
        self.0.as_ref().is_some_and(|s| h.iter().all(|x| s.binary_search(x).is_ok()))
    }
}
