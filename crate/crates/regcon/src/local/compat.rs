//! The functions `C_v` and `D_V` on the Burnside ring of a decomposition
//! group, and their comparison.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::tamagawa::{tamagawa_additive, tamagawa_semistable, Flags, TamagawaValue};
use super::{normal_by_label, FlagGroup, LatticePair, LocalSetup, ReductionData, ReductionKind};
use crate::burnside::{format_relation, relations_lattice};
use crate::arith::gcd_u64;
use crate::group::FiniteGroup;
use crate::regulator::{d_function, functions_equivalent, BurnsideFunction, CompareMode, SquareClass};
use crate::rep::RationalRep;
use crate::{Error, Result};

/// `C_v` on every subgroup class of `D`, split as `c_v · ω`.
#[derive(Debug, Clone, Serialize)]
pub struct CvFunction {
    /// `C_v`, with `ω` reduced modulo squares.
    pub values: BurnsideFunction,
    /// The Tamagawa numbers `c_v(F^H)`, as displayed values (`1|4` when only
    /// the square class is known).
    pub tamagawa: Vec<String>,
    /// Exponent of `q` in `ω(H)`.
    pub omega_exponent: Vec<u64>,
}

struct ResolvedFlags {
    sqrt_b: Option<FlagGroup>,
    sqrt_delta: Option<FlagGroup>,
    sqrt_minus_6b: Option<FlagGroup>,
}

impl ResolvedFlags {
    fn new(g: &FiniteGroup, red: &ReductionData) -> Result<Self> {
        let r = |l: &Option<String>| l.as_deref().map(|l| FlagGroup::resolve(g, l)).transpose();
        Ok(ResolvedFlags {
            sqrt_b: r(&red.flags.sqrt_b)?,
            sqrt_delta: r(&red.flags.sqrt_delta)?,
            sqrt_minus_6b: r(&red.flags.sqrt_minus_6b)?,
        })
    }

    fn at(&self, h: &[usize]) -> Flags {
        Flags {
            sqrt_b: self.sqrt_b.as_ref().map(|s| s.contains(h)),
            sqrt_delta: self.sqrt_delta.as_ref().map(|s| s.contains(h)),
            sqrt_minus_6b: self.sqrt_minus_6b.as_ref().map(|s| s.contains(h)),
        }
    }
}

/// The extension of `F^H` generated by the square root used in the Tamagawa
/// number formula is unramified, for every `H` where that formula applies.
pub fn check_flags(setup: &LocalSetup, red: &ReductionData) -> Result<()> {
    let g = &setup.group;
    let flags = ResolvedFlags::new(g, red)?;
    let odd_index = (g.order() / setup.inertia.len()) % 2 == 1;
    for c in &g.subgroup_lattice().classes {
        let h = &c.representative;
        let (e, _) = setup.ef(h);
        let used = match &red.kind {
            ReductionKind::PotGood { delta } => match gcd_u64(delta * e, 12) {
                4 => Some(("sqrt_b", &flags.sqrt_b)),
                6 => Some(("sqrt_delta", &flags.sqrt_delta)),
                _ => None,
            },
            ReductionKind::PotMult { n } if e % 2 == 1 => {
                if n % 2 == 1 {
                    Some(("sqrt_b", &flags.sqrt_b))
                } else {
                    Some(("sqrt_delta", &flags.sqrt_delta))
                }
            }
            ReductionKind::PotMult { .. } => Some(("sqrt_minus_6b", &flags.sqrt_minus_6b)),
            _ => None,
        };
        let Some((name, Some(flag))) = used else { continue };
        let hi = FiniteGroup::intersection(h, &setup.inertia);
        let unramified = match &flag.0 {
            Some(s) => flag.contains(h) || FiniteGroup::intersection(&hi, s).len() == hi.len(),
            // a root outside F: unramified over the base only if F has no
            // unramified quadratic subextension
            None => odd_index || e % 2 == 0,
        };
        if !unramified {
            return Err(Error::InvalidSetup(format!("{name} gives a ramified extension of F^{}", c.label)));
        }
    }
    Ok(())
}

/// `H ↦ C_v(F^H)`. The decomposition group is all of `D`, so every `F^H`
/// has a single place above the base.
pub fn cv_function(setup: &LocalSetup, red: &ReductionData) -> Result<CvFunction> {
    let g = &setup.group;
    let flags = ResolvedFlags::new(g, red)?;
    check_flags(setup, red)?;
    let q = BigRational::from_integer(BigInt::from(setup.residue_size));
    let mut values = Vec::new();
    let mut tamagawa = Vec::new();
    let mut omega_exponent = Vec::new();
    for c in &g.subgroup_lattice().classes {
        let h = &c.representative;
        let (e, f) = setup.ef(h);
        let (tam, omega): (TamagawaValue, u64) = match &red.kind {
            ReductionKind::Good | ReductionKind::SplitMult { .. } | ReductionKind::NonsplitMult { .. } => {
                (TamagawaValue::Exact(tamagawa_semistable(&red.kind, e, f)?), 0)
            }
            ReductionKind::PotGood { delta } => {
                let t = tamagawa_additive(&red.kind, e, f, &flags.at(h), setup.residue_char)?;
                (t, delta * e / 12 * f)
            }
            ReductionKind::PotMult { .. } => {
                let t = tamagawa_additive(&red.kind, e, f, &flags.at(h), setup.residue_char)?;
                (t, e / 2 * f)
            }
            ReductionKind::SemistableAv { lattice } => {
                lattice.validate()?;
                let c = lattice.fixed_points(e, f, super::FixedPointMethod::Kernel)?;
                tamagawa.push(c.to_string());
                values.push(BigRational::from_integer(c));
                omega_exponent.push(0);
                continue;
            }
        };
        tamagawa.push(tam.to_string());
        omega_exponent.push(omega);
        let mut v = BigRational::from_integer(BigInt::from(tam.square_representative()));
        if omega % 2 == 1 {
            v *= &q;
        }
        values.push(v);
    }
    Ok(CvFunction { values: BurnsideFunction::new(values), tamagawa, omega_exponent })
}

/// A rational representation `V` of `D`, described as in the local root
/// number formulas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum VSpec {
    Zero,
    Trivial,
    /// The unramified quadratic character (zero when `[D:I]` is odd, as `F`
    /// then contains no unramified quadratic extension).
    UnramifiedQuadratic,
    /// `copies` times the quadratic character with the given kernel.
    Quadratic {
        kernel: String,
        #[serde(default = "one_copy")]
        copies: usize,
    },
    /// `1 ⊕ η ⊕ σ` for `D/D'` dihedral of order 6, 8 or 12 whose rotations
    /// are the image of `I`: `η` the unramified quadratic character and `σ`
    /// the faithful 2-dimensional representation of `D/D'`.
    Dihedral { kernel: String },
    /// `X(T*) ⊗ Q = M' ⊗ Q`, with `D` acting through `D/I` by Frobenius.
    Lattice { lattice: LatticePair },
    Sum { parts: Vec<VSpec> },
}

fn one_copy() -> usize {
    1
}

fn zero_rep(g: &FiniteGroup) -> RationalRep {
    RationalRep::from_generators(g, 0, vec![crate::arith::QMatrix::zeros(0, 0); g.generators().len()])
        .expect("zero representation")
}

/// Character values of `V` on conjugacy classes of `D`.
fn quadratic_character(g: &FiniteGroup, kernel: &[usize]) -> Vec<i64> {
    let cc = g.conjugacy_classes();
    (0..cc.len()).map(|c| if kernel.binary_search(&cc.rep(c)).is_ok() { 1 } else { -1 }).collect()
}

fn quadratic_rep(g: &FiniteGroup, kernel: &[usize]) -> Result<RationalRep> {
    if g.order() / kernel.len() != 2 || !g.is_normal(kernel) {
        return Err(Error::InvalidSetup("a quadratic character needs a normal subgroup of index 2".into()));
    }
    RationalRep::perm_rep(g, kernel).isotypic_component(g, &quadratic_character(g, kernel))
}

fn direct_sum_all(g: &FiniteGroup, parts: Vec<RationalRep>) -> RationalRep {
    parts.into_iter().fold(zero_rep(g), |acc, r| if acc.dim() == 0 { r } else if r.dim() == 0 { acc } else { acc.direct_sum(&r) })
}

fn dihedral_pieces(setup: &LocalSetup, kernel: &[usize]) -> Result<Vec<RationalRep>> {
    let g = &setup.group;
    let index = g.order() / kernel.len();
    let bad = || Error::InvalidSetup("D/D' must be dihedral of order 6, 8 or 12 with rotations the image of I".into());
    if !g.is_normal(kernel) || ![6, 8, 12].contains(&index) {
        return Err(bad());
    }
    let mut rot_gens = kernel.to_vec();
    rot_gens.extend(&setup.inertia);
    let rotations = g.closure(&rot_gens);
    if rotations.len() * 2 != g.order() {
        return Err(bad());
    }
    let order_mod = |x: usize| (1..=index).find(|&k| kernel.binary_search(&g.pow(x, k as i64)).is_ok()).unwrap_or(index);
    let e_frak = index / 2;
    if !rotations.iter().any(|&x| order_mod(x) == e_frak) {
        return Err(bad());
    }
    let reflection = (0..g.order()).find(|x| rotations.binary_search(x).is_err()).expect("index 2");
    if (0..g.order()).filter(|x| rotations.binary_search(x).is_err()).any(|x| order_mod(x) != 2) {
        return Err(bad());
    }
    // σ: 2cos(2π/k) on rotations of order k modulo D', 0 on reflections
    let cc = g.conjugacy_classes();
    let sigma: Vec<i64> = (0..cc.len())
        .map(|c| {
            let x = cc.rep(c);
            if rotations.binary_search(&x).is_err() {
                return 0;
            }
            match order_mod(x) {
                1 => 2,
                2 => -2,
                3 => -1,
                4 => 0,
                6 => 1,
                _ => unreachable!("rotation orders divide 6 or 4"),
            }
        })
        .collect();
    let mut fix = kernel.to_vec();
    fix.push(reflection);
    let sigma_rep = RationalRep::perm_rep(g, &g.closure(&fix)).isotypic_component(g, &sigma)?;
    if sigma_rep.dim() != 2 {
        return Err(bad());
    }
    let eta = quadratic_rep(g, &rotations)?;
    Ok(vec![RationalRep::trivial(g), eta, sigma_rep])
}

fn lattice_rep(setup: &LocalSetup, lp: &LatticePair) -> Result<RationalRep> {
    let g = &setup.group;
    let m = lp.validate()?;
    let index = g.order() / setup.inertia.len();
    if !index.is_multiple_of(m) {
        return Err(Error::InvalidSetup(format!("F has order {m}, which does not divide [D:I] = {index}")));
    }
    // D acts through D/I = ⟨y⟩; y ↦ F
    let y = setup.frobenius_lift();
    let mut power = vec![usize::MAX; g.order()];
    let mut yk = g.identity();
    for k in 0..index {
        for &i in &setup.inertia {
            power[g.mul(yk, i)] = k;
        }
        yk = g.mul(yk, y);
    }
    let f = crate::arith::QMatrix::from_i64(&lp.f_on_mprime);
    let gens = g
        .generators()
        .iter()
        .map(|&s| (0..power[s]).fold(crate::arith::QMatrix::identity(lp.rank), |acc, _| acc.mul(&f)))
        .collect();
    RationalRep::from_generators(g, lp.rank, gens)
}

impl VSpec {
    /// `V` as a list of mutually orthogonal summands.
    pub fn pieces(&self, setup: &LocalSetup) -> Result<Vec<RationalRep>> {
        let g = &setup.group;
        match self {
            VSpec::Zero => Ok(vec![]),
            VSpec::Trivial => Ok(vec![RationalRep::trivial(g)]),
            VSpec::UnramifiedQuadratic => match setup.unramified_quadratic() {
                Some(k) => Ok(vec![quadratic_rep(g, &k)?]),
                None => Ok(vec![]),
            },
            VSpec::Quadratic { kernel, copies } => {
                let one = quadratic_rep(g, &normal_by_label(g, kernel)?)?;
                Ok(vec![one; *copies])
            }
            VSpec::Dihedral { kernel } => dihedral_pieces(setup, &normal_by_label(g, kernel)?),
            VSpec::Lattice { lattice } => Ok(vec![lattice_rep(setup, lattice)?]),
            VSpec::Sum { parts } => {
                let mut out = Vec::new();
                for p in parts {
                    out.extend(p.pieces(setup)?);
                }
                Ok(out)
            }
        }
    }

    pub fn build(&self, setup: &LocalSetup) -> Result<RationalRep> {
        Ok(direct_sum_all(&setup.group, self.pieces(setup)?))
    }
}

/// `D_V: H ↦ det((1/|H|)⟨,⟩ | V^H)` for an invariant pairing on `V`,
/// taken orthogonal on the summands of the description.
pub fn dv_function(setup: &LocalSetup, v: &VSpec, seed: u64) -> Result<BurnsideFunction> {
    let g = &setup.group;
    let mut out = BurnsideFunction::constant(g, BigRational::one());
    for (k, piece) in v.pieces(setup)?.iter().enumerate() {
        out = out.mul(&rep_d_function(g, piece, seed.wrapping_add(k as u64))?);
    }
    Ok(out)
}

fn rep_d_function(g: &FiniteGroup, rep: &RationalRep, seed: u64) -> Result<BurnsideFunction> {
    if rep.dim() == 0 {
        return Ok(BurnsideFunction::constant(g, BigRational::one()));
    }
    let pairing = match rep.standard_pairing() {
        Some(p) => p,
        None => rep.average_pairing(seed)?,
    };
    d_function(g, rep, &pairing)
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub c_v: SquareClass,
    pub d_v: SquareClass,
    pub agree: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompatReport {
    pub holds: bool,
    pub mode: CompareMode,
    pub c_v: Vec<SquareClass>,
    pub d_v: Vec<SquareClass>,
    pub tamagawa: Vec<String>,
    pub per_relation: Vec<RelationCheck>,
    pub witness: Option<String>,
    pub witness_value: Option<SquareClass>,
}

fn is_4ex(setup: &LocalSetup, red: &ReductionData) -> bool {
    match &red.kind {
        ReductionKind::SemistableAv { lattice } => {
            setup.residue_char == 2 && !setup.wild_is_cyclic() && lattice.order().is_some_and(|m| m % 2 == 0)
        }
        _ => false,
    }
}

/// Compares `C_v` with `D_𝒱`, where `𝒱 = V`, plus `Q[D]` when `λ = -1`.
/// In the exceptional semistable case (residue characteristic 2, non-cyclic
/// wild inertia, `F` of even order) only odd parts are compared.
pub fn compatibility_check(setup: &LocalSetup, red: &ReductionData, v: &VSpec, lambda: i8) -> Result<CompatReport> {
    let g = &setup.group;
    match &red.kind {
        ReductionKind::PotGood { .. } | ReductionKind::PotMult { .. } => {
            if setup.residue_char <= 3 {
                return Err(Error::UnsupportedCase("additive reduction with residue characteristic 2 or 3".into()));
            }
            setup.check_frobenius()?;
        }
        ReductionKind::SemistableAv { lattice }
            if lattice.pairing.is_none() => {
                return Err(Error::PairingWitnessMissing);
            }
        _ => {}
    }
    if lambda != 1 && lambda != -1 {
        return Err(Error::UnsupportedCase(format!("λ = {lambda} is not a sign")));
    }
    let cv = cv_function(setup, red)?;
    // D is multiplicative in orthogonal direct sums
    let mut dv = dv_function(setup, v, 0x5eed)?;
    if lambda == -1 {
        dv = dv.mul(&rep_d_function(g, &RationalRep::regular(g), 0)?);
    }
    let mode = if is_4ex(setup, red) { CompareMode::OddPart } else { CompareMode::Full };
    let eq = functions_equivalent(g, &cv.values, &dv, mode)?;
    let mut per_relation = Vec::new();
    for rel in relations_lattice(g) {
        let a = cv.values.class_on(&rel)?;
        let b = dv.class_on(&rel)?;
        let agree = match mode {
            CompareMode::Full => a == b,
            CompareMode::OddPart => a.odd_part() == b.odd_part(),
        };
        per_relation.push(RelationCheck { relation: format_relation(g, &rel.coeffs), c_v: a, d_v: b, agree });
    }
    Ok(CompatReport {
        holds: eq.holds,
        mode,
        c_v: cv.values.square_classes()?,
        d_v: dv.square_classes()?,
        tamagawa: cv.tamagawa,
        per_relation,
        witness: eq.witness.map(|w| format_relation(g, &w.coeffs)),
        witness_value: eq.value,
    })
}

/// `λ^{dim τ} (-1)^{⟨τ, V⟩}` for rational characters `τ` and `V` given on
/// conjugacy classes.
pub fn root_sign(g: &FiniteGroup, lambda: i8, v: &[i64], tau: &[i64]) -> Result<i8> {
    let cc = g.conjugacy_classes();
    let total: i64 = (0..cc.len()).map(|c| cc.size(c) as i64 * tau[c] * v[c]).sum();
    if total % g.order() as i64 != 0 {
        return Err(Error::InvalidRelation("⟨τ, V⟩ is not an integer; characters must be rational".into()));
    }
    let inner = total / g.order() as i64;
    let dim = tau[cc.class_of[g.identity()]];
    let sign = if inner.rem_euclid(2) == 0 { 1 } else { -1 };
    let lam = if lambda == -1 && dim.rem_euclid(2) == 1 { -1 } else { 1 };
    Ok(sign * lam)
}

/// Table 1 of the local root number formulas: `(λ, V)` for each reduction
/// case. The signs `w`, `ε` and `w(χ)²` are inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum LocalCase {
    #[serde(rename = "1-")]
    ArchimedeanMinus { w: i8 },
    #[serde(rename = "1+")]
    ArchimedeanPlus { w: i8, kernel: String, b: usize },
    #[serde(rename = "2G")]
    Good,
    #[serde(rename = "2S")]
    Split,
    #[serde(rename = "2NS")]
    Nonsplit,
    #[serde(rename = "3C")]
    Cyclic { epsilon: i8 },
    #[serde(rename = "3D")]
    Dihedral { epsilon: i8, kernel: String },
    #[serde(rename = "3M")]
    PotMult { w_chi_squared: i8, kernel: String },
    #[serde(rename = "4")]
    Semistable { lattice: LatticePair },
}

impl LocalCase {
    pub fn lambda_and_v(&self) -> (i8, VSpec) {
        match self {
            LocalCase::ArchimedeanMinus { w } => (*w, VSpec::Zero),
            LocalCase::ArchimedeanPlus { w, kernel, b } => (*w, VSpec::Quadratic { kernel: kernel.clone(), copies: *b }),
            LocalCase::Good => (1, VSpec::Zero),
            LocalCase::Split => (1, VSpec::Trivial),
            LocalCase::Nonsplit => (1, VSpec::UnramifiedQuadratic),
            LocalCase::Cyclic { epsilon } => (*epsilon, VSpec::Zero),
            LocalCase::Dihedral { epsilon, kernel } => (-*epsilon, VSpec::Dihedral { kernel: kernel.clone() }),
            LocalCase::PotMult { w_chi_squared, kernel } => {
                (*w_chi_squared, VSpec::Quadratic { kernel: kernel.clone(), copies: 1 })
            }
            LocalCase::Semistable { lattice } => (1, VSpec::Lattice { lattice: lattice.clone() }),
        }
    }
}

/// Character of `V` on conjugacy classes.
pub fn v_character(setup: &LocalSetup, v: &VSpec) -> Result<Vec<i64>> {
    let rep = v.build(setup)?;
    let n = setup.group.conjugacy_classes().len();
    if rep.dim() == 0 {
        return Ok(vec![0; n]);
    }
    Ok(rep.character(&setup.group))
}
