#[macro_use]
mod common;

use common::relation;
use regcon::burnside::{relations_lattice, same_lattice, Relation};
use regcon::group::named::{catalog, named_group};
use regcon::group::FiniteGroup;

// dihedral generators: 0 = rotation h, 1 = reflection g
const H: usize = 0;
const G: usize = 1;

/// Fixed points of every element on `G/U`, counted on the coset action.
fn fixed_counts(g: &FiniteGroup, u: &[usize]) -> Vec<i64> {
    let action = g.coset_action(u);
    (0..g.order()).map(|x| action[x].iter().enumerate().filter(|(i, &j)| *i == j).count() as i64).collect()
}

fn is_relation_oracle(g: &FiniteGroup, rel: &Relation) -> bool {
    let lat = g.subgroup_lattice();
    let mut total = vec![0i64; g.order()];
    for (i, &n) in rel.coeffs.iter().enumerate() {
        if n != 0 {
            for (t, c) in total.iter_mut().zip(fixed_counts(g, &lat.classes[i].representative)) {
                *t += n * c;
            }
        }
    }
    total.iter().all(|&t| t == 0)
}

fn is_cyclic(g: &FiniteGroup, u: &[usize]) -> bool {
    u.iter().any(|&x| g.element_order(x) == u.len())
}

pub fn s3_unique_relation() {
    let g = named_group("S 3").unwrap();
    let rels = relations_lattice(&g);
    assert_eq!(rels.len(), 1);
    // 2 S3 + {1} - 2 C2 - C3
    let expected = relation(&g, &[(2, vec![vec![(0, 1)], vec![(1, 1)]]), (1, vec![]), (-2, vec![vec![(1, 1)]]), (-1, vec![vec![(0, 1)]])]);
    assert!(rels[0] == expected || rels[0].coeffs == expected.coeffs.iter().map(|c| -c).collect::<Vec<_>>());
}

pub fn klein_four_unique_relation() {
    let g = named_group("CxC 2 2").unwrap();
    let rels = relations_lattice(&g);
    assert_eq!(rels.len(), 1);
    let mut c = rels[0].coeffs.clone();
    if c[0] < 0 {
        c.iter_mut().for_each(|x| *x = -*x);
    }
    // {1} - C2 - C2 - C2 + 2 G
    let lat = g.subgroup_lattice();
    for (i, cls) in lat.classes.iter().enumerate() {
        let want = match cls.order {
            1 => 1,
            2 => -1,
            _ => 2,
        };
        assert_eq!(c[i], want);
    }
}

pub fn cyclic_groups_have_no_relations() {
    for n in [1, 2, 3, 4, 6, 8, 12, 15] {
        assert!(relations_lattice(&named_group(&format!("C {n}")).unwrap()).is_empty());
    }
}

pub fn d8_basis() {
    let g = named_group("D 8").unwrap();
    let gh = vec![(G, 1), (H, 1)];
    let basis = vec![
        relation(&g, &[(1, vec![]), (-1, vec![vec![(G, 1)]]), (-1, vec![gh.clone()]), (-1, vec![vec![(H, 1)]]), (2, vec![vec![(G, 1)], vec![(H, 1)]])]),
        relation(&g, &[(1, vec![vec![(G, 1)]]), (-1, vec![gh.clone()]), (-1, vec![vec![(G, 1)], vec![(H, 2)]]), (1, vec![gh.clone(), vec![(H, 2)]])]),
        // with <gh, h^2> in the last term the characters do not cancel on g
        relation(&g, &[(1, vec![]), (-1, vec![vec![(H, 2)]]), (-2, vec![vec![(G, 1)]]), (2, vec![vec![(G, 1)], vec![(H, 2)]])]),
    ];
    let lat = g.subgroup_lattice();
    let mut swapped = vec![0i64; lat.len()];
    for (n, gens) in [(1, vec![]), (-1, vec![vec![(H, 2)]]), (-2, vec![vec![(G, 1)]]), (2, vec![gh, vec![(H, 2)]])] {
        swapped[common::class_of(&g, &gens)] += n;
    }
    assert!(Relation::new(&g, swapped).is_err());
    let ours = relations_lattice(&g);
    assert_eq!(ours.len(), 3);
    assert!(same_lattice(&ours, &basis, g.subgroup_lattice().len()));
}

pub fn d12_basis() {
    let g = named_group("D 12").unwrap();
    let gh = vec![(G, 1), (H, 1)];
    let whole = vec![vec![(G, 1)], vec![(H, 1)]];
    let basis = vec![
        relation(&g, &[(1, vec![]), (-1, vec![vec![(G, 1)]]), (-1, vec![gh.clone()]), (-1, vec![vec![(H, 1)]]), (2, whole.clone())]),
        relation(&g, &[(1, vec![vec![(H, 3)]]), (-1, vec![vec![(H, 1)]]), (-2, vec![vec![(G, 1)], vec![(H, 3)]]), (2, whole.clone())]),
        relation(
            &g,
            &[
                (1, vec![vec![(H, 2)]]),
                (-1, vec![vec![(H, 1)]]),
                (-1, vec![gh.clone(), vec![(H, 2)]]),
                (-1, vec![vec![(G, 1)], vec![(H, 2)]]),
                (2, whole),
            ],
        ),
        relation(&g, &[(1, vec![vec![(G, 1)]]), (-1, vec![gh.clone()]), (1, vec![gh, vec![(H, 2)]]), (-1, vec![vec![(G, 1)], vec![(H, 2)]])]),
    ];
    // ten classes, six of them cyclic
    let ours = relations_lattice(&g);
    assert_eq!(ours.len(), 4);
    assert!(same_lattice(&ours, &basis, g.subgroup_lattice().len()));
}

pub fn rank_and_validity_over_catalog() {
    for g in catalog(24) {
        let lat = g.subgroup_lattice();
        let cyclic = lat.classes.iter().filter(|c| is_cyclic(&g, &c.representative)).count();
        let rels = relations_lattice(&g);
        assert_eq!(rels.len(), lat.len() - cyclic, "{:?}", g.label());
        for r in &rels {
            assert!(is_relation_oracle(&g, r), "{:?}", g.label());
        }
    }
}

run_as_tests!(
    s3_unique_relation,
    klein_four_unique_relation,
    cyclic_groups_have_no_relations,
    d8_basis,
    d12_basis,
    rank_and_validity_over_catalog,
);
