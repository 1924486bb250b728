//! The sets T_{Θ,p} of self-dual representations with prescribed pairing parities.

use num_traits::ToPrimitive;
use serde::Serialize;

use super::constants::RegulatorContext;
use super::functions::check_cyclic_quotient;
use crate::arith::rational_val;
use crate::burnside::{permutation_character, restrict_relation, Embedded, Relation};
use crate::group::FiniteGroup;
use crate::rep::chartable::compatible_table;
use crate::rep::{field_orbits, BaseField, CharacterTable, FieldOrbit};
use crate::{Error, Result};

/// Required parity of `⟨τ, ρ⟩` for one self-dual Q_p-orbit; `None` when flagged.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitParity {
    pub members: Vec<usize>,
    pub fs: i8,
    pub degree: usize,
    pub parity: Option<u8>,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TwistSpec {
    pub relation: Relation,
    pub p: u64,
    pub parity_vector: Vec<OrbitParity>,
    /// One complex constituent of every orbit with odd parity.
    pub canonical_rep: Vec<usize>,
    pub caveats: Vec<String>,
}

impl TwistSpec {
    pub fn dimension(&self, table: &CharacterTable) -> usize {
        self.canonical_rep.iter().map(|&i| table.chars[i].degree).sum()
    }
}

pub fn tau_theta(ctx: &RegulatorContext, rel: &Relation, p: u64) -> TwistSpec {
    let table = ctx.table;
    let orbits = field_orbits(table, BaseField::Qp(p), None);
    let mut constants: Vec<Option<Result<super::OrbitConstant>>> = vec![None; ctx.q_orbits.len()];
    let mut parity_vector = Vec::new();
    let mut caveats = Vec::new();
    for o in orbits.iter().filter(|o| o.self_dual) {
        let (parity, reason) = orbit_parity(ctx, rel, p, o, &mut constants);
        if parity.is_none() {
            caveats.push(format!("orbit {:?}: {reason}", o.members));
        }
        parity_vector.push(OrbitParity { members: o.members.clone(), fs: o.fs, degree: o.degree, parity, reason });
    }
    let canonical_rep = parity_vector.iter().filter(|op| op.parity == Some(1)).map(|op| op.members[0]).collect();
    TwistSpec { relation: rel.clone(), p, parity_vector, canonical_rep, caveats }
}

fn orbit_parity(
    ctx: &RegulatorContext,
    rel: &Relation,
    p: u64,
    o: &FieldOrbit,
    constants: &mut [Option<Result<super::OrbitConstant>>],
) -> (Option<u8>, String) {
    match o.fs {
        -1 => return (Some(0), "symplectic".into()),
        0 => return (Some(0), "dual pair".into()),
        _ => {}
    }
    let q = ctx.q_orbit_of(o.members[0]);
    if ctx.q_orbits[q].members != o.members {
        return (None, "rational orbit splits over Q_p".into());
    }
    let c = constants[q].get_or_insert_with(|| super::regconst_irreducible(ctx, rel, q));
    match c {
        Err(e) => (None, format!("constant unavailable: {e}")),
        Ok(c) if c.schur_index != Some(1) => (None, "Schur index over Q not certified".into()),
        Ok(c) => {
            let v = rational_val(&num_rational::BigRational::from_integer(c.class.as_integer()), p);
            (Some(v.rem_euclid(2) as u8), format!("C = {}", c.class))
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckItem {
    pub name: String,
    /// `None` when skipped.
    pub passed: Option<bool>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyCheck {
    pub items: Vec<CheckItem>,
}

impl PropertyCheck {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed != Some(false))
    }

    fn push(&mut self, name: &str, passed: Option<bool>, detail: impl Into<String>) {
        self.items.push(CheckItem { name: name.into(), passed, detail: detail.into() });
    }
}

/// `⟨τ, ψ_j⟩` for every irreducible `ψ_j` of a subgroup, where `τ` is a sum
/// of characters of `G`; `sub` must be compatible with `table`.
pub fn restricted_multiplicities(
    g: &FiniteGroup,
    table: &CharacterTable,
    tau: &[usize],
    d: &Embedded,
    sub: &CharacterTable,
) -> Vec<i64> {
    let gcc = g.conjugacy_classes();
    let field = &table.field;
    let res: Vec<Vec<i64>> = sub
        .class_reps
        .iter()
        .map(|&x| {
            let c = gcc.class_of[d.embedding[x]];
            let mut acc = field.from_int(0);
            for &i in tau {
                acc = field.add(&acc, &table.chars[i].values[c]);
            }
            acc
        })
        .collect();
    (0..sub.len())
        .map(|j| {
            let mut acc = field.from_int(0);
            for (c, r) in res.iter().enumerate() {
                let conj = table.embed_value(sub.exponent, &sub.chars[j].values[sub.inv_class(c)]);
                let t = field.mul(r, &conj);
                for (a, b) in acc.iter_mut().zip(&t) {
                    *a += sub.class_sizes[c] as i64 * b;
                }
            }
            let v = field.as_integer(&acc).expect("rational inner product");
            v / sub.group_order as i64
        })
        .collect()
}

fn subgroup_condition(g: &FiniteGroup, h: &[usize], p: u64) -> Option<&'static str> {
    if h.len() % 2 == 1 {
        return Some("odd order");
    }
    let emb = Embedded::new(g, h);
    let all: Vec<usize> = (0..emb.group.order()).collect();
    let lat = emb.group.subgroup_lattice();
    for n in lat.classes.iter().filter(|c| c.is_normal && !(c.order as u64).is_multiple_of(p)) {
        if check_cyclic_quotient(&emb.group, &all, &n.representative).is_ok() {
            return Some(if n.order == 1 { "cyclic" } else { "cyclic over a p'-normal subgroup" });
        }
    }
    None
}

/// Checks the general properties of T_{Θ,p} on the canonical representative.
pub fn check_twist_properties(ctx: &RegulatorContext, spec: &TwistSpec) -> Result<PropertyCheck> {
    let g = ctx.group;
    let table = ctx.table;
    let tau = &spec.canonical_rep;
    let mut report = PropertyCheck { items: Vec::new() };

    let dim = spec.dimension(table);
    report.push("even dimension", Some(dim.is_multiple_of(2)), format!("dim τ = {dim}"));

    let e = table.exponent.max(1);
    let det_trivial = (0..table.num_classes()).all(|c| tau.iter().map(|&i| table.chars[i].det_exp[c]).sum::<usize>() % e == 0);
    report.push("trivial determinant", Some(det_trivial), "");

    let mut duals: Vec<usize> = tau.iter().map(|&i| table.dual(i)).collect();
    duals.sort_unstable();
    let mut sorted = tau.clone();
    sorted.sort_unstable();
    report.push("self-dual", Some(duals == sorted), "");

    let parities_ok = spec.parity_vector.iter().all(|op| match op.parity {
        Some(par) => (tau.iter().filter(|i| op.members.contains(i)).count() % 2) as u8 == par,
        None => true,
    });
    report.push("pairing parities", Some(parities_ok), "");

    let exact = spec.caveats.is_empty();
    let skip = "skipped: flagged orbits";

    // ⟨τ, Q_p[G/H]⟩ even for the listed kinds of H
    if exact {
        let lat = g.subgroup_lattice();
        let mut bad = Vec::new();
        let mut tested = 0;
        for class in &lat.classes {
            let Some(kind) = subgroup_condition(g, &class.representative, spec.p) else { continue };
            tested += 1;
            let pc = permutation_character(g, &class.representative);
            let m: i64 = tau.iter().map(|&i| table.multiplicity_in(i, &pc).to_integer().to_i64().unwrap()).sum();
            if m % 2 != 0 {
                bad.push(format!("{} ({kind})", class.label));
            }
        }
        report.push(
            "even pairing with permutation modules",
            Some(bad.is_empty()),
            if bad.is_empty() { format!("{tested} subgroup classes") } else { bad.join(", ") },
        );
    } else {
        report.push("even pairing with permutation modules", None, skip);
    }

    // Res_D τ ∈ T_{Res Θ, p}
    if exact {
        let lat = g.subgroup_lattice();
        let mut bad = Vec::new();
        let mut notes = Vec::new();
        for class in lat.classes.iter().take(lat.len().saturating_sub(1)) {
            let d = Embedded::new(g, &class.representative);
            let sub_table = compatible_table(&d.group, table)?;
            let sub_ctx = RegulatorContext::with_table(&d.group, &sub_table, ctx.seed);
            let res_rel = restrict_relation(g, &spec.relation, &d);
            let sub_spec = tau_theta(&sub_ctx, &res_rel, spec.p);
            let mults = restricted_multiplicities(g, table, tau, &d, &sub_table);
            for op in &sub_spec.parity_vector {
                let Some(par) = op.parity else { continue };
                let total: i64 = op.members.iter().map(|&j| mults[j]).sum();
                if total.rem_euclid(2) as u8 != par {
                    if op.fs == -1 {
                        notes.push(format!("{}: symplectic orbit {:?} (Schur index over Q_p unknown)", class.label, op.members));
                    } else {
                        bad.push(format!("{}: orbit {:?}", class.label, op.members));
                    }
                }
            }
            for c in &sub_spec.caveats {
                notes.push(format!("{}: {c}", class.label));
            }
        }
        let mut detail = bad.join("; ");
        if !notes.is_empty() {
            if !detail.is_empty() {
                detail.push_str("; ");
            }
            detail.push_str(&format!("inconclusive: {}", notes.join("; ")));
        }
        report.push("restriction", Some(bad.is_empty()), detail);
    } else {
        report.push("restriction", None, skip);
    }
    report.push("induction", None, "no overgroup supplied");

    if !report.all_passed() {
        let failed: Vec<String> =
            report.items.iter().filter(|i| i.passed == Some(false)).map(|i| format!("{} {}", i.name, i.detail)).collect();
        return Err(Error::PropertyViolation(failed.join("; ")));
    }
    Ok(report)
}
