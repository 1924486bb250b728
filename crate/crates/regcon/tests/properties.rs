#[macro_use]
mod common;

use proptest::prelude::*;
use regcon::arith::{prime_divisors, rat};
use regcon::burnside::{induce_relation, lift_relation, relations_lattice, restrict_relation, Embedded, Relation};
use regcon::group::named::{catalog, named_group};
use regcon::group::FiniteGroup;
use regcon::regulator::*;
use regcon::rep::RationalRep;

/// Permutation modules and one isotypic piece per rational orbit.
fn test_reps(g: &FiniteGroup, ctx: &RegulatorContext) -> Vec<RationalRep> {
    let lat = g.subgroup_lattice();
    let mut reps: Vec<RationalRep> = lat.classes.iter().map(|c| RationalRep::perm_rep(g, &c.representative)).collect();
    for o in &ctx.q_orbits {
        let omega = o.rational_character.as_ref().unwrap();
        let mults = ctx.perm_multiplicities(o.members[0]);
        let k = (0..lat.len()).rev().find(|&k| mults[k] > 0).unwrap();
        let perm = RationalRep::perm_rep(g, &lat.classes[k].representative);
        reps.push(perm.isotypic_component(g, omega).unwrap());
    }
    reps
}

pub fn pairing_independence_and_perm_oracle() {
    for g in catalog(24) {
        let ctx = RegulatorContext::new(&g, 0).unwrap();
        let lat = g.subgroup_lattice();
        let rels = relations_lattice(&g);
        let reps = test_reps(&g, &ctx);
        for rel in &rels {
            for (idx, rep) in reps.iter().enumerate() {
                let values: Vec<_> = [101u64, 202, 303]
                    .iter()
                    .map(|&s| regconst_rep_exact(&g, rel, rep, &rep.average_pairing(s).unwrap()).unwrap())
                    .collect();
                assert!(values.windows(2).all(|w| w[0] == w[1]), "{:?} rep {idx}: {values:?}", g.label());
                if idx < lat.len() {
                    let std = regconst_rep_exact(&g, rel, rep, &rep.standard_pairing().unwrap()).unwrap();
                    let formula = regconst_perm(&g, rel, &lat.classes[idx].representative);
                    assert_eq!(std, formula);
                    assert_eq!(values[0], formula);
                }
                // Σ n_i dim ρ^{H_i} = 0
                let dims: i64 = rel.terms().map(|(i, n)| n * rep.invariants(&lat.classes[i].representative).cols as i64).sum();
                assert_eq!(dims, 0);
            }
        }
    }
}

pub fn symplectic_and_dual_pairs_trivial() {
    for g in catalog(24) {
        let ctx = RegulatorContext::new(&g, 0).unwrap();
        for rel in relations_lattice(&g) {
            for (i, o) in ctx.q_orbits.iter().enumerate() {
                if o.fs == 1 {
                    continue;
                }
                let c = regconst_irreducible(&ctx, &rel, i).unwrap();
                assert!(c.class.is_trivial(), "{:?} orbit {:?}", g.label(), o.members);
            }
        }
    }
}

pub fn odd_order_groups_trivial() {
    for name in ["C 15", "F21", "He27"] {
        let g = named_group(name).unwrap();
        let ctx = RegulatorContext::new(&g, 0).unwrap();
        let lat = g.subgroup_lattice();
        let rels = relations_lattice(&g);
        if name != "C 15" {
            assert!(!rels.is_empty());
        }
        for rel in &rels {
            for c in ctx.all_constants(rel) {
                assert!(c.unwrap().class.is_trivial(), "{name}");
            }
            for d in &lat.classes {
                let v = SquareClass::from_rational(&regconst_perm(&g, rel, &d.representative)).unwrap();
                assert!(v.is_trivial(), "{name}");
            }
        }
    }
}

pub fn coprime_primes_have_even_valuation() {
    for g in catalog(24) {
        let ctx = RegulatorContext::new(&g, 0).unwrap();
        let lat = g.subgroup_lattice();
        let bad_prime = |c: &SquareClass| {
            let n = c.squarefree.to_u64_digits().first().copied().unwrap_or(1);
            prime_divisors(n).into_iter().find(|p| g.order() as u64 % p != 0)
        };
        for rel in relations_lattice(&g) {
            for c in ctx.all_constants(&rel) {
                let c = c.unwrap();
                assert_eq!(bad_prime(&c.class), None, "{:?}", g.label());
            }
            for d in &lat.classes {
                let v = SquareClass::from_rational(&regconst_perm(&g, &rel, &d.representative)).unwrap();
                assert_eq!(bad_prime(&v), None);
                if d.is_cyclic {
                    assert!(v.is_trivial(), "{:?} cyclic {}", g.label(), d.label);
                }
            }
        }
    }
}

/// `N ⊴ H` with `H/N` cyclic and `p ∤ |N|` forces even `ord_p C_Θ(Q[G/H])`.
pub fn cyclic_over_coprime_normal() {
    for g in catalog(24) {
        let lat = g.subgroup_lattice();
        let rels = relations_lattice(&g);
        if rels.is_empty() {
            continue;
        }
        for h in &lat.classes {
            let emb = Embedded::new(&g, &h.representative);
            let all: Vec<usize> = (0..emb.group.order()).collect();
            for n in emb.group.subgroup_lattice().classes.iter().filter(|c| c.is_normal) {
                if regcon::regulator::functions::check_cyclic_quotient(&emb.group, &all, &n.representative).is_err() {
                    continue;
                }
                for p in prime_divisors(g.order() as u64).into_iter().filter(|p| n.order as u64 % p != 0) {
                    for rel in &rels {
                        let v = regconst_perm(&g, rel, &h.representative);
                        assert_eq!(regcon::arith::rational_val(&v, p) % 2, 0, "{:?} H={} p={p}", g.label(), h.label);
                    }
                }
            }
        }
    }
}

pub fn induction_restriction_lift() {
    for g in catalog(16) {
        let lat = g.subgroup_lattice();
        let rels = relations_lattice(&g);
        for dclass in &lat.classes {
            let d = Embedded::new(&g, &dclass.representative);
            let dlat = d.group.subgroup_lattice();
            // C_Θ(Ind_D Q[D/U]) = C_{Res Θ}(Q[D/U])
            for rel in &rels {
                let res = restrict_relation(&g, rel, &d);
                assert!(regcon::burnside::is_relation(&d.group, &res.coeffs));
                for u in &dlat.classes {
                    let global = d.globalize(&u.representative);
                    let a = SquareClass::from_rational(&regconst_perm(&g, rel, &global)).unwrap();
                    let b = SquareClass::from_rational(&regconst_perm(&d.group, &res, &u.representative)).unwrap();
                    assert_eq!(a, b);
                }
            }
            // C_Θ(Res Q[G/K]) = C_{Ind Θ}(Q[G/K])
            for rel in relations_lattice(&d.group) {
                let ind = induce_relation(&g, &d, &rel);
                for k in &lat.classes {
                    let rep = RationalRep::perm_rep(&g, &k.representative).restrict(&d.embedding);
                    let a = regconst_rep(&d.group, &rel, &rep, &rep.standard_pairing().unwrap()).unwrap();
                    let b = SquareClass::from_rational(&regconst_perm(&g, &ind, &k.representative)).unwrap();
                    assert_eq!(a, b);
                }
            }
            // lifting from G/N
            if dclass.is_normal && dclass.order > 1 && dclass.order < g.order() {
                let q = g.quotient(&dclass.representative).unwrap();
                let qlat = q.group.subgroup_lattice();
                for rel in relations_lattice(&q.group) {
                    let lifted = lift_relation(&g, &q, &rel);
                    assert!(regcon::burnside::is_relation(&g, &lifted.coeffs));
                    for u in &qlat.classes {
                        let pre: Vec<usize> =
                            (0..g.order()).filter(|&x| u.representative.binary_search(&q.proj[x]).is_ok()).collect();
                        let a = SquareClass::from_rational(&regconst_perm(&g, &lifted, &pre)).unwrap();
                        let b = SquareClass::from_rational(&regconst_perm(&q.group, &rel, &u.representative)).unwrap();
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }
}

pub fn induced_d_function_is_local() {
    for g in catalog(16) {
        let lat = g.subgroup_lattice();
        for dclass in &lat.classes {
            let d = Embedded::new(&g, &dclass.representative);
            for u in &d.group.subgroup_lattice().classes {
                let local_rep = RationalRep::perm_rep(&d.group, &u.representative);
                let phi_d = d_function(&d.group, &local_rep, &local_rep.standard_pairing().unwrap()).unwrap();
                let induced = RationalRep::perm_rep(&g, &d.globalize(&u.representative));
                let big = d_function(&g, &induced, &induced.standard_pairing().unwrap()).unwrap();
                let eq = functions_equivalent(&g, &big, &gdi_local(&g, &d, &phi_d), CompareMode::Full).unwrap();
                assert!(eq.holds, "{:?} D={} U={}", g.label(), dclass.label, u.label);
            }
        }
    }
}

fn d12_context() -> &'static (FiniteGroup, Vec<Relation>) {
    use std::sync::OnceLock;
    static CELL: OnceLock<(FiniteGroup, Vec<Relation>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let g = named_group("D 12").unwrap();
        let rels = relations_lattice(&g);
        (g, rels)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn constants_are_multiplicative_in_relations(a in -3i64..=3, b in -3i64..=3, c in -3i64..=3, k in 0usize..10) {
        let (g, rels) = d12_context();
        let lat = g.subgroup_lattice();
        let coeffs = [a, b, c];
        let rel = rels.iter().zip(coeffs).fold(Relation::zero(g), |acc, (r, n)| acc.add(&r.scale(n)));
        let k = k % lat.len();
        let whole = SquareClass::from_rational(&regconst_perm(g, &rel, &lat.classes[k].representative)).unwrap();
        let parts = rels.iter().zip(coeffs).fold(SquareClass::one(), |acc, (r, n)| {
            let v = SquareClass::from_rational(&regconst_perm(g, &r.scale(n), &lat.classes[k].representative)).unwrap();
            acc.mul(&v)
        });
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn square_classes_multiply(x in 1i64..5000, y in 1i64..5000, sx in any::<bool>(), sy in any::<bool>()) {
        let x = if sx { -x } else { x };
        let y = if sy { -y } else { y };
        let direct = SquareClass::from_rational(&rat(x * y)).unwrap();
        let prod = SquareClass::from_int(x).mul(&SquareClass::from_int(y));
        prop_assert_eq!(&direct, &prod);
        for p in [2u64, 3, 5, 7, 11] {
            prop_assert_eq!(direct.to_padic(p), SquareClass::from_int(x).to_padic(p).mul(&SquareClass::from_int(y).to_padic(p)));
        }
    }
}

run_as_tests!(
    pairing_independence_and_perm_oracle,
    symplectic_and_dual_pairs_trivial,
    odd_order_groups_trivial,
    coprime_primes_have_even_valuation,
    cyclic_over_coprime_normal,
    induction_restriction_lift,
    induced_d_function_is_local,
);
