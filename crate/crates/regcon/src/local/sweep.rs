//! Exhaustive compatibility checks over small decomposition groups.

use serde::Serialize;

use super::compat::{check_flags, compatibility_check, cv_function, VSpec};
use super::tables::{load_tables, DihedralTable};
use super::{FlagSpec, LatticePair, LocalSetup, ReductionData, ReductionKind};
use crate::arith::{factorize, gcd_u64};
use crate::group::named::{catalog, named_group};
use crate::group::FiniteGroup;
use crate::Result;

#[derive(Debug, Clone, Serialize)]
pub struct SweepFailure {
    pub group: String,
    pub inertia: String,
    pub wild: String,
    pub l: u64,
    pub q: u64,
    pub case: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SweepReport {
    pub checked: usize,
    pub failures: Vec<SweepFailure>,
}

impl SweepReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty() && self.checked > 0
    }

    fn record(&mut self, setup: &LocalSetup, case: String, outcome: Result<(bool, String)>) {
        self.checked += 1;
        let detail = match outcome {
            Ok((true, _)) => return,
            Ok((false, d)) => d,
            Err(e) => e.to_string(),
        };
        let lat = setup.group.subgroup_lattice();
        let label = |s: &[usize]| lat.classes[lat.identify(&setup.group, s)].label.clone();
        self.failures.push(SweepFailure {
            group: setup.group.label().unwrap_or("?").to_string(),
            inertia: label(&setup.inertia),
            wild: label(&setup.wild),
            l: setup.residue_char,
            q: setup.residue_size,
            case,
            detail,
        });
    }
}

fn check(setup: &LocalSetup, red: &ReductionData, v: &VSpec, lambda: i8) -> Result<(bool, String)> {
    let r = compatibility_check(setup, red, v, lambda)?;
    let detail = match (&r.witness, &r.witness_value) {
        (Some(w), Some(c)) => format!("fails on {w} with class {c}"),
        _ => String::new(),
    };
    Ok((r.holds, detail))
}

fn l_part(n: usize, l: u64) -> usize {
    factorize(n as u64).iter().filter(|(p, _)| *p == l).map(|(p, k)| p.pow(*k) as usize).product()
}

/// All `(I, W)` with `I ⊴ D`, `D/I` cyclic and `W` the normal Sylow
/// `l`-subgroup of `I` with `I/W` cyclic.
fn inertia_choices(g: &FiniteGroup, l: u64, q: u64) -> Vec<LocalSetup> {
    let lat = g.subgroup_lattice();
    let mut out = Vec::new();
    for i in lat.classes.iter().filter(|c| c.is_normal) {
        let wild_order = l_part(i.order, l);
        for w in lat.classes.iter().filter(|c| c.is_normal && c.order == wild_order) {
            if let Ok(s) = LocalSetup::new(g.clone(), i.representative.clone(), w.representative.clone(), l, q) {
                out.push(s);
            }
        }
    }
    out
}

/// Good, split and nonsplit multiplicative reduction over every catalog group
/// of order at most `max_order`, every admissible `(I, W)` for `l ∈ {2,3,5,7}`
/// and `n ≤ max_n`.
pub fn sweep_semistable(max_order: usize, max_n: u64) -> SweepReport {
    let mut report = SweepReport::default();
    for g in catalog(max_order) {
        for l in [2, 3, 5, 7] {
            for setup in inertia_choices(&g, l, l) {
                let good = ReductionData::new(ReductionKind::Good);
                report.record(&setup, "2G".into(), check(&setup, &good, &VSpec::Zero, 1));
                for n in 1..=max_n {
                    let split = ReductionData::new(ReductionKind::SplitMult { n });
                    report.record(&setup, format!("2S n={n}"), check(&setup, &split, &VSpec::Trivial, 1));
                    let nonsplit = ReductionData::new(ReductionKind::NonsplitMult { n });
                    report.record(
                        &setup,
                        format!("2NS n={n}"),
                        check(&setup, &nonsplit, &VSpec::UnramifiedQuadratic, 1),
                    );
                }
            }
        }
    }
    report
}

const ADDITIVE_PRIMES: [u64; 12] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43];

fn index_two_labels(g: &FiniteGroup) -> Vec<String> {
    g.subgroup_lattice()
        .classes
        .iter()
        .filter(|c| c.is_normal && g.order() == 2 * c.order)
        .map(|c| c.label.clone())
        .collect()
}

/// Values of the `√B` and `√Δ` flags: not in `F`, in `K`, or generating one
/// of the quadratic subextensions.
fn flag_choices(g: &FiniteGroup) -> Vec<String> {
    let mut out = vec!["none".to_string(), g.subgroup_lattice().classes[g.subgroup_lattice().top()].label.clone()];
    out.extend(index_two_labels(g));
    out
}

/// Whether the Tamagawa numbers over the subfields reproduce the determined
/// entries of the table for some choice of the paired variant.
fn matches_table(t: &DihedralTable, tam: &[String], class: &[usize]) -> bool {
    (0..2).any(|choice| {
        t.entries.iter().zip(class).all(|(e, &c)| {
            let got = tam[c].as_str();
            match e.cv.as_str() {
                "?" => true,
                "sq" => ["1", "4", "1|4"].contains(&got),
                s => {
                    let want = match s.split_once('(') {
                        Some((a, b)) => [a, b.trim_end_matches(')')][choice],
                        None => s,
                    };
                    got == want || (got == "1|4" && (want == "1" || want == "4"))
                }
            }
        })
    })
}

fn first_prime(setup_for: impl Fn(u64) -> Option<LocalSetup>, count: usize) -> Vec<LocalSetup> {
    ADDITIVE_PRIMES.iter().filter_map(|&q| setup_for(q)).take(count).collect()
}

/// Potentially good reduction with `D` one of the tabulated groups
/// (cases 3C and 3D), with every assignment of the `√B`, `√Δ` flags that
/// reproduces the determined table entries.
pub fn sweep_potentially_good() -> Result<SweepReport> {
    let mut report = SweepReport::default();
    for t in load_tables()? {
        let g = named_group(&t.group)?;
        let lat = g.subgroup_lattice();
        let inertia_label = {
            let gens = vec![g.generators()[t.generators.iter().position(|n| *n == t.inertia[0]).expect("h")]];
            lat.classes[lat.identify(&g, &g.closure(&gens))].label.clone()
        };
        let dihedral = t.id.starts_with('D');
        let setups = first_prime(
            |q| {
                let target = if dihedral { t.e_frak - 1 } else { 1 };
                if q % t.e_frak != target {
                    return None;
                }
                let spec = super::SetupSpec {
                    group: t.group.clone(),
                    inertia: inertia_label.clone(),
                    wild: "1".into(),
                    l: q,
                    q,
                };
                LocalSetup::from_spec(&spec).ok()
            },
            2,
        );
        let class = super::tables::entry_classes(&t)?;
        let flags = flag_choices(&g);
        for setup in &setups {
            for star in [false, true] {
                let delta = t.delta[usize::from(star)];
                let mut admissible = 0;
                for b in &flags {
                    for d in &flags {
                        let red = ReductionData::new(ReductionKind::PotGood { delta }).with_flags(FlagSpec {
                            sqrt_b: Some(b.clone()),
                            sqrt_delta: Some(d.clone()),
                            sqrt_minus_6b: None,
                        });
                        if check_flags(setup, &red).is_err() {
                            continue;
                        }
                        let cv = cv_function(setup, &red)?;
                        if !matches_table(&t, &cv.tamagawa, &class) {
                            continue;
                        }
                        admissible += 1;
                        for eps in [1i8, -1] {
                            let (case, lambda, v) = if dihedral {
                                ("3D", -eps, VSpec::Dihedral { kernel: "1".into() })
                            } else {
                                ("3C", eps, VSpec::Zero)
                            };
                            let name = format!("{case} {} δ={delta} ε={eps} √B@{b} √Δ@{d}", t.id);
                            report.record(setup, name, check(setup, &red, &v, lambda));
                        }
                    }
                }
                if admissible == 0 {
                    report.record(setup, format!("{} δ={delta}", t.id), Ok((false, "no admissible flags".into())));
                }
            }
        }
    }
    Ok(report)
}

/// Potentially multiplicative reduction (case 3M) over catalog groups of
/// order at most `max_order`: every cyclic `I ⊴ D` with `D/I` cyclic, every
/// index-2 subgroup `D'` not containing `I` as the kernel of the quadratic
/// character, `n ≤ max_n`, both signs, and `√B`, `√Δ` either absent, in the
/// base or in the unramified quadratic extension.
pub fn sweep_potentially_multiplicative(max_order: usize, max_n: u64) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    for g in catalog(max_order) {
        let lat = g.subgroup_lattice();
        let top = lat.classes[lat.top()].label.clone();
        for i in lat.classes.iter().filter(|c| c.is_normal && c.order > 1) {
            let Some(setup) = ADDITIVE_PRIMES.iter().find_map(|&q| {
                if gcd_u64(q, g.order() as u64) != 1 {
                    return None;
                }
                let s = LocalSetup::new(g.clone(), i.representative.clone(), vec![g.identity()], q, q).ok()?;
                s.check_frobenius().ok().map(|_| s)
            }) else {
                continue;
            };
            let unram = setup.unramified_quadratic().map(|u| lat.classes[lat.identify(&g, &u)].label.clone());
            let mut flag_values = vec!["none".to_string(), top.clone()];
            flag_values.extend(unram);
            for kernel in index_two_labels(&g) {
                let k = &lat.classes[lat.by_label(&kernel).expect("label")].representative;
                if i.representative.iter().all(|x| k.binary_search(x).is_ok()) {
                    continue;
                }
                for n in 1..=max_n {
                    for b in &flag_values {
                        for d in &flag_values {
                            let red = ReductionData::new(ReductionKind::PotMult { n }).with_flags(FlagSpec {
                                sqrt_b: Some(b.clone()),
                                sqrt_delta: Some(d.clone()),
                                sqrt_minus_6b: Some(kernel.clone()),
                            });
                            if check_flags(&setup, &red).is_err() {
                                continue;
                            }
                            let v = VSpec::Quadratic { kernel: kernel.clone(), copies: 1 };
                            for lambda in [1i8, -1] {
                                let name = format!("3M n={n} χ@{kernel} λ={lambda} √B@{b} √Δ@{d}");
                                report.record(&setup, name, check(&setup, &red, &v, lambda));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Semistable abelian varieties (case 4): over every catalog group of order
/// at most `max_order` and every admissible `(I, W)` for `l ∈ {2, 3, 5}`,
/// `per_setup` seeded lattice pairs whose Frobenius order divides `[D:I]`.
pub fn sweep_semistable_av(max_order: usize, per_setup: usize, seed: u64) -> SweepReport {
    let mut report = SweepReport::default();
    let mut s = seed;
    for g in catalog(max_order) {
        for l in [2, 3, 5] {
            for setup in inertia_choices(&g, l, l) {
                let index = g.order() / setup.inertia.len();
                let orders: Vec<usize> = [1, 2, 3, 4, 6].into_iter().filter(|m| index % m == 0).collect();
                let mut made = 0;
                while made < per_setup {
                    s = s.wrapping_add(1);
                    let order = orders[(s % orders.len() as u64) as usize];
                    let rank = 1 + ((s / 7) % 3) as usize;
                    let Some(lp) = LatticePair::random(s, rank, order) else { continue };
                    made += 1;
                    let red = ReductionData::new(ReductionKind::SemistableAv { lattice: lp.clone() });
                    let v = VSpec::Lattice { lattice: lp };
                    report.record(&setup, format!("4 seed={s} rank={rank} |F|={order}"), check(&setup, &red, &v, 1));
                }
            }
        }
    }
    report
}
