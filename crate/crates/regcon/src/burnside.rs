//! Burnside ring elements, permutation characters and relations.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::arith::zmat::{self, ZMat};
use crate::group::{FiniteGroup, Quotient};
use crate::{Error, Result};

/// Integer combination of subgroup classes, indexed by lattice class id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BurnsideElement {
    pub coeffs: Vec<i64>,
}

/// A Burnside element whose permutation characters cancel.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Relation {
    pub coeffs: Vec<i64>,
}

impl BurnsideElement {
    pub fn zero(n: usize) -> Self {
        BurnsideElement { coeffs: vec![0; n] }
    }

    pub fn add(&self, other: &Self) -> Self {
        BurnsideElement { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn neg(&self) -> Self {
        BurnsideElement { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        BurnsideElement { coeffs: self.coeffs.iter().map(|a| k * a).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl Relation {
    pub fn new(g: &FiniteGroup, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != g.subgroup_lattice().len() {
            return Err(Error::InvalidRelation("wrong number of coefficients".into()));
        }
        if !is_relation(g, &coeffs) {
            return Err(Error::InvalidRelation("permutation characters do not cancel".into()));
        }
        Ok(Relation { coeffs })
    }

    pub fn zero(g: &FiniteGroup) -> Self {
        Relation { coeffs: vec![0; g.subgroup_lattice().len()] }
    }

    pub fn element(&self) -> BurnsideElement {
        BurnsideElement { coeffs: self.coeffs.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Relation { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        Relation { coeffs: self.coeffs.iter().map(|a| k * a).collect() }
    }

    /// Nonzero `(class, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c))
    }
}

/// Permutation character of `G/H` on conjugacy classes:
/// `χ(c) = |G|·|H ∩ c| / (|H|·|c|)`.
pub fn permutation_character(g: &FiniteGroup, h: &[usize]) -> Vec<i64> {
    let cc = g.conjugacy_classes();
    let mut meet = vec![0usize; cc.len()];
    for &x in h {
        meet[cc.class_of[x]] += 1;
    }
    (0..cc.len())
        .map(|c| (g.order() * meet[c] / (h.len() * cc.size(c))) as i64)
        .collect()
}

/// Rows: subgroup classes; columns: conjugacy classes.
pub fn character_matrix(g: &FiniteGroup) -> Vec<Vec<i64>> {
    g.subgroup_lattice()
        .classes
        .iter()
        .map(|c| permutation_character(g, &c.representative))
        .collect()
}

pub fn is_relation(g: &FiniteGroup, coeffs: &[i64]) -> bool {
    let m = character_matrix(g);
    let k = g.conjugacy_classes().len();
    (0..k).all(|c| m.iter().zip(coeffs).map(|(row, &n)| n * row[c]).sum::<i64>() == 0)
}

/// Hermite-reduced, saturated basis of the relation lattice.
pub fn relations_lattice(g: &FiniteGroup) -> Vec<Relation> {
    let m = character_matrix(g);
    let k = g.conjugacy_classes().len();
    let z = zmat::zmat_from_i64(&m);
    zmat::left_kernel(&z, k)
        .into_iter()
        .map(|row| Relation { coeffs: row.iter().map(|x| x.to_i64().expect("small coefficient")).collect() })
        .collect()
}

/// Hermite normal form of a list of relations (canonical lattice basis).
pub fn lattice_basis(rels: &[Relation], n: usize) -> ZMat {
    if rels.is_empty() {
        return Vec::new();
    }
    let z: Vec<Vec<i64>> = rels.iter().map(|r| r.coeffs.clone()).collect();
    zmat::hnf_basis(&zmat::zmat_from_i64(&z), n)
}

/// Integer coefficients `x` with `Σ x_i perm_chars[i] = target`, if any.
pub fn perm_combination(perm_chars: &[Vec<i64>], target: &[i64]) -> Option<Vec<BigInt>> {
    if perm_chars.is_empty() {
        return if target.iter().all(|&t| t == 0) { Some(Vec::new()) } else { None };
    }
    let a = zmat::zmat_from_i64(perm_chars);
    let b: Vec<BigInt> = target.iter().map(|&t| BigInt::from(t)).collect();
    zmat::solve_left(&a, target.len(), &b)
}

/// A subgroup packaged as a group together with its embedding.
#[derive(Debug, Clone)]
pub struct Embedded {
    pub group: FiniteGroup,
    pub embedding: Vec<usize>,
}

impl Embedded {
    pub fn new(g: &FiniteGroup, set: &[usize]) -> Self {
        let (group, embedding) = g.subgroup_as_group(set);
        Embedded { group, embedding }
    }

    /// Local indices of a subset of the ambient group lying in the subgroup.
    pub fn localize(&self, set: &[usize]) -> Vec<usize> {
        set.iter()
            .map(|x| self.embedding.binary_search(x).expect("element lies in the subgroup"))
            .collect()
    }

    pub fn globalize(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&i| self.embedding[i]).collect();
        out.sort_unstable();
        out
    }
}

/// `Res_D H = Σ_{x ∈ H\G/D} [D ∩ x^{-1} H x]` as a Burnside element of `D`.
pub fn restrict_class(g: &FiniteGroup, h: &[usize], d: &Embedded) -> Vec<i64> {
    let lat = d.group.subgroup_lattice();
    let mut out = vec![0i64; lat.len()];
    let dset = &d.embedding;
    for x in g.double_cosets(h, dset).reps {
        let conj = g.conjugate_set(h, g.inv(x));
        let meet = FiniteGroup::intersection(&conj, dset);
        let local = d.localize(&meet);
        out[lat.identify(&d.group, &local)] += 1;
    }
    out
}

pub fn restrict_element(g: &FiniteGroup, coeffs: &[i64], d: &Embedded) -> Vec<i64> {
    let lat = g.subgroup_lattice();
    let mut out = vec![0i64; d.group.subgroup_lattice().len()];
    for (i, &n) in coeffs.iter().enumerate() {
        if n == 0 {
            continue;
        }
        for (j, v) in restrict_class(g, &lat.classes[i].representative, d).into_iter().enumerate() {
            out[j] += n * v;
        }
    }
    out
}

pub fn restrict_relation(g: &FiniteGroup, rel: &Relation, d: &Embedded) -> Relation {
    Relation { coeffs: restrict_element(g, &rel.coeffs, d) }
}

/// A relation of the subgroup viewed as a relation of `G`.
pub fn induce_relation(g: &FiniteGroup, d: &Embedded, rel: &Relation) -> Relation {
    let lat = g.subgroup_lattice();
    let dlat = d.group.subgroup_lattice();
    let mut out = vec![0i64; lat.len()];
    for (i, n) in rel.terms() {
        let set = d.globalize(&dlat.classes[i].representative);
        out[lat.identify(g, &set)] += n;
    }
    Relation { coeffs: out }
}

pub fn project_relation(g: &FiniteGroup, q: &Quotient, rel: &Relation) -> Relation {
    let lat = g.subgroup_lattice();
    let qlat = q.group.subgroup_lattice();
    let mut out = vec![0i64; qlat.len()];
    for (i, n) in rel.terms() {
        let mut img: Vec<usize> = lat.classes[i].representative.iter().map(|&x| q.proj[x]).collect();
        img.sort_unstable();
        img.dedup();
        out[qlat.identify(&q.group, &img)] += n;
    }
    Relation { coeffs: out }
}

pub fn lift_relation(g: &FiniteGroup, q: &Quotient, rel: &Relation) -> Relation {
    let lat = g.subgroup_lattice();
    let qlat = q.group.subgroup_lattice();
    let mut out = vec![0i64; lat.len()];
    for (i, n) in rel.terms() {
        let hbar = &qlat.classes[i].representative;
        let pre: Vec<usize> = (0..g.order()).filter(|&x| hbar.binary_search(&q.proj[x]).is_ok()).collect();
        out[lat.identify(g, &pre)] += n;
    }
    Relation { coeffs: out }
}

/// A relation of `G` all of whose constituents contain `N`, read as a relation of `G/N`.
pub fn descend_relation(g: &FiniteGroup, q: &Quotient, rel: &Relation) -> Result<Relation> {
    let lat = g.subgroup_lattice();
    let n_set = &q.cosets[0];
    for (i, _) in rel.terms() {
        let rep = &lat.classes[i].representative;
        if !n_set.iter().all(|x| rep.binary_search(x).is_ok()) {
            return Err(Error::LiftConstituentMissingN);
        }
    }
    Ok(project_relation(g, q, rel))
}

/// `1*[1] - 2*[C2] ...` using lattice labels.
pub fn format_relation(g: &FiniteGroup, coeffs: &[i64]) -> String {
    let lat = g.subgroup_lattice();
    let mut s = String::new();
    for (i, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let label = &lat.classes[i].label;
        if s.is_empty() {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if c < 0 { " - " } else { " + " });
        }
        s.push_str(&format!("{}*[{}]", c.abs(), label));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Parse `a*[label] ± b*[label] ...`; `[#id]` selects a class by index and a
/// missing coefficient means 1.
pub fn parse_element(g: &FiniteGroup, text: &str) -> Result<BurnsideElement> {
    let lat = g.subgroup_lattice();
    let mut coeffs = vec![0i64; lat.len()];
    let t = text.trim();
    if t == "0" {
        return Ok(BurnsideElement { coeffs });
    }
    let bytes = t.as_bytes();
    let mut i = 0;
    let perr = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.into() };
    let mut first = true;
    while i < bytes.len() {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= bytes.len() {
            break;
        }
        let mut sign = 1i64;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        } else if !first {
            return Err(perr(i, "expected '+' or '-'"));
        }
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coef: i64 = if start == i { 1 } else { t[start..i].parse().map_err(|_| perr(start, "bad coefficient"))? };
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
        }
        if i >= bytes.len() || bytes[i] != b'[' {
            return Err(perr(i, "expected '['"));
        }
        let open = i;
        let close = t[open..].find(']').map(|k| open + k).ok_or_else(|| perr(open, "unclosed '['"))?;
        let label = t[open + 1..close].trim();
        let id = if let Some(num) = label.strip_prefix('#') {
            num.parse::<usize>().ok().filter(|&k| k < lat.len()).ok_or_else(|| perr(open + 1, "bad class index"))?
        } else {
            lat.by_label(label).ok_or_else(|| perr(open + 1, &format!("unknown class label '{label}'")))?
        };
        coeffs[id] += sign * coef;
        i = close + 1;
        first = false;
    }
    Ok(BurnsideElement { coeffs })
}

pub fn parse_relation(g: &FiniteGroup, text: &str) -> Result<Relation> {
    let e = parse_element(g, text)?;
    Relation::new(g, e.coeffs)
}

/// Coordinates of a relation in a lattice basis (None if outside the lattice).
pub fn coordinates(basis: &[Relation], rel: &Relation) -> Option<Vec<BigInt>> {
    if basis.is_empty() {
        return if rel.is_zero() { Some(Vec::new()) } else { None };
    }
    let a = zmat::zmat_from_i64(&basis.iter().map(|r| r.coeffs.clone()).collect::<Vec<_>>());
    let b: Vec<BigInt> = rel.coeffs.iter().map(|&c| BigInt::from(c)).collect();
    zmat::solve_left(&a, rel.coeffs.len(), &b)
}

/// True when the two lists span the same sublattice.
pub fn same_lattice(a: &[Relation], b: &[Relation], n: usize) -> bool {
    lattice_basis(a, n) == lattice_basis(b, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::named_group;

    #[test]
    fn s3_relation() {
        let g = named_group("S 3").unwrap();
        let rels = relations_lattice(&g);
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].coeffs, vec![1, -2, -1, 2]);
        assert_eq!(format_relation(&g, &rels[0].coeffs), "1*[1] - 2*[C2] - 1*[C3] + 2*[G]");
        let parsed = parse_relation(&g, "[1] - 2*[C2] - [C3] + 2[G]").unwrap();
        assert_eq!(parsed, rels[0]);
        assert!(parse_relation(&g, "[1] - [C2]").is_err());
    }

    #[test]
    fn cyclic_groups_have_none() {
        for n in [1, 2, 6, 12] {
            let g = named_group(&format!("C {n}")).unwrap();
            assert!(relations_lattice(&g).is_empty());
        }
    }

    #[test]
    fn s3_perm_character() {
        let g = named_group("S 3").unwrap();
        let lat = g.subgroup_lattice();
        assert_eq!(permutation_character(&g, &lat.classes[1].representative), vec![3, 1, 0]);
        assert_eq!(permutation_character(&g, &lat.classes[3].representative), vec![1, 1, 1]);
    }

    #[test]
    fn parse_error_position() {
        let g = named_group("S 3").unwrap();
        match parse_element(&g, "[1] - 2*[Q9]") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("{other:?}"),
        }
    }
}
