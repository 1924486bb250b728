//! The subgroup tables for dihedral decomposition groups (and the `C6×C2`
//! subquotient) with additive potentially good reduction: for each
//! subgroup `H`, the value `a(H)`, the parity of `dim V^H`, the Kodaira
//! symbol and the Tamagawa number over `F^H`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::tamagawa::kodaira_symbol;
use crate::burnside::{format_relation, relations_lattice, Relation};
use crate::group::named::named_group;
use crate::group::FiniteGroup;
use crate::regulator::SquareClass;
use crate::{Error, Result};

const TABLES_JSON: &str = include_str!("../../data/tables.json");
const TABLES_SHA256: &str = "19eb2cddbb7856c166655fdd07d206d5cd971c392f0d12310e6aa181d18e8391";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DihedralTableEntry {
    pub label: String,
    /// Generators as words in the named generators, e.g. `gh^3`.
    pub gens: Vec<String>,
    /// `a(H)`, or `X` for the case-dependent value.
    pub a: String,
    /// `dim V^H` is odd.
    pub star: bool,
    pub kodaira: String,
    /// `c_v`: a number, a paired variant `1(3)`, `?` or `sq` (a square).
    pub cv: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DihedralTable {
    pub id: String,
    pub group: String,
    /// Names of the catalog group's generators, in order.
    pub generators: Vec<String>,
    pub inertia: Vec<String>,
    pub e_frak: u64,
    /// Discriminant valuations giving the plain and the starred Kodaira types.
    pub delta: [u64; 2],
    /// Possible values of `X`.
    pub x_values: Vec<u64>,
    pub entries: Vec<DihedralTableEntry>,
    /// Relations listed alongside the table, as `(coefficient, label)`.
    pub relations: Vec<Vec<(i64, String)>>,
}

#[derive(Deserialize)]
struct TableFile {
    version: u32,
    tables: Vec<DihedralTable>,
}

/// Loads the embedded tables, checking the data checksum.
pub fn load_tables() -> Result<Vec<DihedralTable>> {
    let digest = hex::encode(Sha256::digest(TABLES_JSON.as_bytes()));
    if digest != TABLES_SHA256 {
        return Err(Error::TableInconsistent(format!("table data checksum mismatch: {digest}")));
    }
    let file: TableFile =
        serde_json::from_str(TABLES_JSON).map_err(|e| Error::TableInconsistent(format!("table data: {e}")))?;
    if file.version != 1 {
        return Err(Error::TableInconsistent(format!("unknown table version {}", file.version)));
    }
    Ok(file.tables)
}

pub fn table_ids() -> Vec<String> {
    load_tables().map(|t| t.into_iter().map(|t| t.id).collect()).unwrap_or_default()
}

fn bad(msg: String) -> Error {
    Error::TableInconsistent(msg)
}

/// Evaluates a word such as `gh^3` (left to right).
fn eval_word(g: &FiniteGroup, names: &[String], word: &str) -> Result<usize> {
    let mut acc = g.identity();
    let chars: Vec<char> = word.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let name = chars[i].to_string();
        let k = names.iter().position(|n| *n == name).ok_or_else(|| bad(format!("unknown generator {name}")))?;
        i += 1;
        let mut exp = 1i64;
        if i < chars.len() && chars[i] == '^' {
            let start = i + 1;
            i = start;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            exp = chars[start..i].iter().collect::<String>().parse().map_err(|_| bad(format!("bad word {word}")))?;
        }
        acc = g.mul(acc, g.pow(g.generators()[k], exp));
    }
    Ok(acc)
}

/// Allowed Tamagawa numbers for a Kodaira type (residue characteristic > 3).
fn allowed(kodaira: &str) -> &'static [u64] {
    match kodaira.trim_end_matches('*') {
        "I0" if kodaira == "I0" => &[1],
        "I0" => &[1, 2, 4],
        "II" => &[1],
        "III" => &[2],
        "IV" => &[1, 3],
        _ => &[],
    }
}

fn starred(kodaira: &str, star: bool) -> String {
    if star && ["II", "III", "IV"].contains(&kodaira) {
        format!("{kodaira}*")
    } else {
        kodaira.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Slot {
    Fixed(u64),
    Paired(u64, u64),
    Unknown(Vec<u64>),
}

/// A choice of the paired variant and of `X`, with the completions of the
/// remaining slots that make `c_v·a` a square on every relation.
#[derive(Debug, Clone, Serialize)]
pub struct VariantReport {
    /// 0 for the plain values, 1 for the values in parentheses.
    pub paired_choice: usize,
    pub x: Option<u64>,
    /// Each satisfying completion: label ↦ chosen value.
    pub completions: Vec<BTreeMap<String, u64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub id: String,
    pub starred: bool,
    pub delta: u64,
    /// Lattice basis of relations, as listed in the data file.
    pub relations: Vec<String>,
    pub variants: Vec<VariantReport>,
    pub holds: bool,
}

pub(crate) struct Resolved {
    pub(crate) group: FiniteGroup,
    /// Lattice class id of each entry.
    pub(crate) class: Vec<usize>,
}

/// Lattice class ids of the entries of a table, in the catalog group.
pub(crate) fn entry_classes(t: &DihedralTable) -> Result<Vec<usize>> {
    Ok(resolve(t)?.class)
}

pub(crate) fn resolve(t: &DihedralTable) -> Result<Resolved> {
    let g = named_group(&t.group)?;
    if g.generators().len() != t.generators.len() {
        return Err(bad(format!("{}: generator count", t.id)));
    }
    let lat = g.subgroup_lattice();
    let mut class = Vec::new();
    for e in &t.entries {
        let gens = e.gens.iter().map(|w| eval_word(&g, &t.generators, w)).collect::<Result<Vec<_>>>()?;
        class.push(lat.identify(&g, &g.closure(&gens)));
    }
    let mut sorted = class.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != class.len() || sorted.len() != lat.len() {
        return Err(bad(format!("{}: entries do not match the subgroup classes one to one", t.id)));
    }
    Ok(Resolved { group: g, class })
}

fn inertia_of(t: &DihedralTable, g: &FiniteGroup) -> Result<Vec<usize>> {
    let gens = t.inertia.iter().map(|w| eval_word(g, &t.generators, w)).collect::<Result<Vec<_>>>()?;
    Ok(g.closure(&gens))
}

/// `dim V^H` for `V = 1 ⊕ η ⊕ σ` on a dihedral group with rotations `rot`.
fn dihedral_invariant_dim(g: &FiniteGroup, rot: &[usize], h: &[usize]) -> usize {
    let total: i64 = h
        .iter()
        .map(|&x| {
            if rot.binary_search(&x).is_ok() {
                let sigma = match g.element_order(x) {
                    1 => 2,
                    2 => -2,
                    3 => -1,
                    4 => 0,
                    6 => 1,
                    _ => unreachable!(),
                };
                2 + sigma
            } else {
                0
            }
        })
        .sum();
    (total / h.len() as i64) as usize
}

fn check_structure(t: &DihedralTable, r: &Resolved, delta: u64, star: bool) -> Result<Vec<Slot>> {
    let g = &r.group;
    let lat = g.subgroup_lattice();
    let inertia = inertia_of(t, g)?;
    if inertia.len() as u64 != t.e_frak {
        return Err(bad(format!("{}: inertia has order {}", t.id, inertia.len())));
    }
    let dihedral = t.id.starts_with('D');
    let mut slots = Vec::new();
    for (e, &c) in t.entries.iter().zip(&r.class) {
        let h = &lat.classes[c].representative;
        let ram = (inertia.len() / FiniteGroup::intersection(h, &inertia).len()) as u64;
        let expected = kodaira_symbol(delta * ram);
        let printed = starred(&e.kodaira, star);
        if expected != printed {
            return Err(bad(format!("{} {}: Kodaira type {printed}, expected {expected}", t.id, e.label)));
        }
        if dihedral {
            let odd = dihedral_invariant_dim(g, &inertia, h) % 2 == 1;
            if odd != e.star {
                return Err(bad(format!("{} {}: parity of dim V^H", t.id, e.label)));
            }
        }
        let ok = allowed(&printed);
        let check = |v: u64| {
            if ok.contains(&v) {
                Ok(v)
            } else {
                Err(bad(format!("{} {}: c_v = {v} impossible for type {printed}", t.id, e.label)))
            }
        };
        let slot = match e.cv.as_str() {
            "?" => Slot::Unknown(ok.to_vec()),
            "sq" => Slot::Unknown(ok.iter().copied().filter(|&v| v == 1 || v == 4).collect()),
            s => match s.split_once('(') {
                Some((a, b)) => {
                    let p = |x: &str| x.parse::<u64>().map_err(|_| bad(format!("bad entry {s}")));
                    Slot::Paired(check(p(a)?)?, check(p(b.trim_end_matches(')'))?)?)
                }
                None => Slot::Fixed(check(s.parse().map_err(|_| bad(format!("bad entry {s}")))?)?),
            },
        };
        slots.push(slot);
    }
    Ok(slots)
}

fn listed_relations(t: &DihedralTable, r: &Resolved) -> Result<Vec<Relation>> {
    let n = r.group.subgroup_lattice().len();
    t.relations
        .iter()
        .map(|terms| {
            let mut coeffs = vec![0; n];
            for (k, label) in terms {
                let i = t.entries.iter().position(|e| e.label == *label).ok_or_else(|| bad(format!("unknown label {label}")))?;
                coeffs[r.class[i]] += k;
            }
            Relation::new(&r.group, coeffs).map_err(|_| bad(format!("{}: listed combination is not a relation", t.id)))
        })
        .collect()
}

fn a_value(e: &DihedralTableEntry, x: Option<u64>) -> Result<u64> {
    match (e.a.as_str(), x) {
        ("X", Some(x)) => Ok(x),
        ("X", None) => Err(bad("X used without values".into())),
        (s, _) => s.parse().map_err(|_| bad(format!("bad a-value {s}"))),
    }
}

/// Checks that `c_v·a` is a square on every relation of the table group, for
/// every paired variant and value of `X`, searching over the undetermined
/// slots. `star` selects the table with II, III, IV replaced by II*, III*, IV*.
pub fn verify_dihedral_tables(table_id: &str, star: bool) -> Result<TableReport> {
    let tables = load_tables()?;
    let t = tables
        .iter()
        .find(|t| t.id.eq_ignore_ascii_case(table_id))
        .ok_or_else(|| Error::UnknownGroup(format!("no table {table_id}")))?;
    verify_table(t, star)
}

/// As [`verify_dihedral_tables`], for table data supplied by the caller.
pub fn verify_table(t: &DihedralTable, star: bool) -> Result<TableReport> {
    let r = resolve(t)?;
    let delta = t.delta[usize::from(star)];
    let slots = check_structure(t, &r, delta, star)?;
    let mut rels = relations_lattice(&r.group);
    rels.extend(listed_relations(t, &r)?);
    let n = r.group.subgroup_lattice().len();

    let unknown: Vec<usize> = (0..slots.len()).filter(|&i| matches!(slots[i], Slot::Unknown(_))).collect();
    let has_pair = slots.iter().any(|s| matches!(s, Slot::Paired(..)));
    let xs: Vec<Option<u64>> = if t.x_values.is_empty() { vec![None] } else { t.x_values.iter().map(|&x| Some(x)).collect() };

    let mut variants = Vec::new();
    for choice in 0..if has_pair { 2 } else { 1 } {
        for &x in &xs {
            let mut completions = Vec::new();
            let sizes: Vec<usize> = unknown
                .iter()
                .map(|&i| match &slots[i] {
                    Slot::Unknown(v) => v.len(),
                    _ => unreachable!(),
                })
                .collect();
            let total: usize = sizes.iter().product();
            for code in 0..total {
                let mut rest = code;
                let mut pick = BTreeMap::new();
                let mut value = vec![0i64; n];
                for (i, (e, slot)) in t.entries.iter().zip(&slots).enumerate() {
                    let cv = match slot {
                        Slot::Fixed(v) => *v,
                        Slot::Paired(a, b) => [*a, *b][choice],
                        Slot::Unknown(vals) => {
                            let k = rest % vals.len();
                            rest /= vals.len();
                            pick.insert(e.label.clone(), vals[k]);
                            vals[k]
                        }
                    };
                    value[r.class[i]] = (cv * a_value(e, x)?) as i64;
                }
                let all_square = rels.iter().all(|rel| {
                    let sc = rel
                        .coeffs
                        .iter()
                        .zip(&value)
                        .filter(|(k, _)| *k % 2 != 0)
                        .fold(SquareClass::one(), |acc, (_, &v)| acc.mul(&SquareClass::from_int(v)));
                    sc.is_trivial()
                });
                if all_square {
                    completions.push(pick);
                }
            }
            variants.push(VariantReport { paired_choice: choice, x, completions });
        }
    }
    let holds = variants.iter().all(|v| !v.completions.is_empty());
    Ok(TableReport {
        id: t.id.clone(),
        starred: star,
        delta,
        relations: relations_lattice(&r.group).iter().map(|rel| format_relation(&r.group, &rel.coeffs)).collect(),
        variants,
        holds,
    })
}
