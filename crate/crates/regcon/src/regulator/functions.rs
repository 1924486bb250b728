//! Multiplicative functions on the Burnside ring and their equivalence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::square::SquareClass;
use crate::arith::{is_rational_square, rat_pow};
use crate::burnside::{relations_lattice, restrict_class, Embedded, Relation};
use crate::group::FiniteGroup;
use crate::{Error, Result};

/// Exact nonzero rational value on every subgroup class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnsideFunction {
    pub values: Vec<BigRational>,
    pub label: Option<String>,
}

impl Serialize for BurnsideFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.values.iter().map(|r| r.to_string()).collect();
        v.serialize(s)
    }
}

impl BurnsideFunction {
    pub fn new(values: Vec<BigRational>) -> Self {
        BurnsideFunction { values, label: None }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect())
    }

    pub fn constant(g: &FiniteGroup, value: BigRational) -> Self {
        Self::new(vec![value; g.subgroup_lattice().len()])
    }

    /// `H ↦ f(H)` for a function of the subgroup order.
    pub fn from_order(g: &FiniteGroup, f: impl Fn(usize) -> BigRational) -> Self {
        Self::new(g.subgroup_lattice().classes.iter().map(|c| f(c.order)).collect())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `∏ φ(H_i)^{n_i}`.
    pub fn evaluate(&self, coeffs: &[i64]) -> Result<BigRational> {
        let mut acc = BigRational::one();
        for (v, &n) in self.values.iter().zip(coeffs) {
            if n == 0 {
                continue;
            }
            if v.is_zero() {
                return Err(Error::InvalidRelation("function vanishes on a constituent".into()));
            }
            acc *= rat_pow(v, n);
        }
        Ok(acc)
    }

    pub fn class_on(&self, rel: &Relation) -> Result<SquareClass> {
        SquareClass::from_rational(&self.evaluate(&rel.coeffs)?)
    }

    pub fn square_classes(&self) -> Result<Vec<SquareClass>> {
        self.values.iter().map(SquareClass::from_rational).collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect())
    }

    pub fn div(&self, other: &Self) -> Self {
        Self::new(self.values.iter().zip(&other.values).map(|(a, b)| a / b).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompareMode {
    Full,
    /// Compare in `Q^×/⟨2, Q^×²⟩`, ignoring powers of 2.
    OddPart,
}

#[derive(Debug, Clone, Serialize)]
pub struct Equivalence {
    pub holds: bool,
    pub witness: Option<Relation>,
    /// Class of `φ/ψ` on the witness.
    pub value: Option<SquareClass>,
}

fn trivial_in(r: &BigRational, mode: CompareMode) -> bool {
    match mode {
        CompareMode::Full => is_rational_square(r),
        CompareMode::OddPart => is_rational_square(r) || is_rational_square(&(r * BigRational::from_integer(2.into()))),
    }
}

/// `φ ∼ ψ` iff `φ/ψ` is a square on every relation; checking a lattice basis suffices.
pub fn functions_equivalent(
    g: &FiniteGroup,
    phi: &BurnsideFunction,
    psi: &BurnsideFunction,
    mode: CompareMode,
) -> Result<Equivalence> {
    for rel in relations_lattice(g) {
        let r = phi.evaluate(&rel.coeffs)? / psi.evaluate(&rel.coeffs)?;
        if !trivial_in(&r, mode) {
            let value = SquareClass::from_rational(&r)?;
            return Ok(Equivalence { holds: false, witness: Some(rel), value: Some(value) });
        }
    }
    Ok(Equivalence { holds: true, witness: None, value: None })
}

/// `H ↦ ∏_{x ∈ H\G/D} φ_D(x^{-1}Hx ∩ D)`.
pub fn gdi_local(g: &FiniteGroup, d: &Embedded, phi_d: &BurnsideFunction) -> BurnsideFunction {
    let lat = g.subgroup_lattice();
    let values = lat
        .classes
        .iter()
        .map(|c| {
            let counts = restrict_class(g, &c.representative, d);
            phi_d.evaluate(&counts).expect("local function is nonzero")
        })
        .collect();
    BurnsideFunction::new(values)
}

/// Ramification and residue degree `(e, f)` of every place of `H` above `D`,
/// for `I ⊴ D` with `D/I` cyclic.
pub fn ef_places(g: &FiniteGroup, d: &[usize], i: &[usize], h: &[usize]) -> Result<Vec<(u64, u64)>> {
    check_cyclic_quotient(g, d, i)?;
    let mut out = Vec::new();
    for x in g.double_cosets(h, d).reps {
        let dx = g.conjugate_set(d, x);
        let ix = g.conjugate_set(i, x);
        let h_d = FiniteGroup::intersection(h, &dx).len();
        let h_i = FiniteGroup::intersection(h, &ix).len();
        let e = (i.len() / h_i) as u64;
        let f = ((d.len() / i.len()) / (h_d / h_i)) as u64;
        out.push((e, f));
    }
    Ok(out)
}

pub fn check_cyclic_quotient(g: &FiniteGroup, d: &[usize], i: &[usize]) -> Result<()> {
    let normal = i.iter().all(|x| d.binary_search(x).is_ok())
        && d.iter().all(|&y| g.conjugate_set(i, y) == i);
    if !normal {
        return Err(Error::NotNormal);
    }
    let index = d.len() / i.len();
    let cyclic = d.iter().any(|&y| {
        let mut gens = i.to_vec();
        gens.push(y);
        g.closure(&gens).len() == d.len()
    });
    if !cyclic && index > 1 {
        return Err(Error::QuotientNotCyclic);
    }
    Ok(())
}

/// `⟨D, I, ψ⟩: H ↦ ∏_{x ∈ H\G/D} ψ(e_x, f_x)`.
pub fn gdi_ef(
    g: &FiniteGroup,
    d: &[usize],
    i: &[usize],
    psi: &dyn Fn(u64, u64) -> BigRational,
) -> Result<BurnsideFunction> {
    check_cyclic_quotient(g, d, i)?;
    let lat = g.subgroup_lattice();
    let mut values = Vec::with_capacity(lat.len());
    for c in &lat.classes {
        let mut acc = BigRational::one();
        for (e, f) in ef_places(g, d, i, &c.representative)? {
            acc *= psi(e, f);
        }
        values.push(acc);
    }
    Ok(BurnsideFunction::new(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::group::named::named_group;

    #[test]
    fn order_function_on_klein_four() {
        let g = named_group("CxC 2 2").unwrap();
        let order = BurnsideFunction::from_order(&g, |n| rat(n as i64));
        let one = BurnsideFunction::constant(&g, rat(1));
        let eq = functions_equivalent(&g, &order, &one, CompareMode::Full).unwrap();
        assert!(!eq.holds);
        assert_eq!(eq.value.unwrap().to_string(), "2");
        let lambda = BurnsideFunction::constant(&g, rat(7));
        assert!(functions_equivalent(&g, &lambda, &one, CompareMode::Full).unwrap().holds);
        assert!(functions_equivalent(&g, &order, &one, CompareMode::OddPart).unwrap().holds);
    }

    #[test]
    fn local_at_whole_group_is_identity() {
        let g = named_group("D 8").unwrap();
        let all: Vec<usize> = (0..g.order()).collect();
        let d = Embedded::new(&g, &all);
        let phi = BurnsideFunction::from_order(&d.group, |n| rat(n as i64 + 2));
        let lifted = gdi_local(&g, &d, &phi);
        let direct = BurnsideFunction::from_order(&g, |n| rat(n as i64 + 2));
        assert_eq!(lifted, direct);
    }

    #[test]
    fn non_cyclic_quotient_rejected() {
        let g = named_group("CxC 2 2").unwrap();
        let all: Vec<usize> = (0..g.order()).collect();
        let r = gdi_ef(&g, &all, &[0], &|_, _| rat(1));
        assert_eq!(r.unwrap_err(), Error::QuotientNotCyclic);
    }
}
