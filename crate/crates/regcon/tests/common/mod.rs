#![allow(dead_code)]

use regcon::burnside::Relation;
use regcon::group::FiniteGroup;
use regcon::rep::CharacterTable;

/// Product of generator powers, left to right.
pub fn word(g: &FiniteGroup, w: &[(usize, i64)]) -> usize {
    w.iter().fold(g.identity(), |acc, &(k, e)| g.mul(acc, g.pow(g.generators()[k], e)))
}

/// Lattice class of the subgroup generated by the given words.
pub fn class_of(g: &FiniteGroup, gens: &[Vec<(usize, i64)>]) -> usize {
    let elems: Vec<usize> = gens.iter().map(|w| word(g, w)).collect();
    let set = g.closure(&elems);
    g.subgroup_lattice().identify(g, &set)
}

/// Relation from `(coefficient, generating words)` terms.
pub fn relation(g: &FiniteGroup, terms: &[(i64, Vec<Vec<(usize, i64)>>)]) -> Relation {
    let mut coeffs = vec![0i64; g.subgroup_lattice().len()];
    for (n, gens) in terms {
        coeffs[class_of(g, gens)] += n;
    }
    Relation::new(g, coeffs).expect("valid relation")
}

/// Elements in the kernel of a character.
pub fn kernel(g: &FiniteGroup, t: &CharacterTable, chi: usize) -> Vec<usize> {
    let cc = g.conjugacy_classes();
    let deg = t.field.from_int(t.chars[chi].degree as i64);
    (0..g.order()).filter(|&x| t.chars[chi].values[cc.class_of[x]] == deg).collect()
}

/// `#[test]` wrappers for public check functions, so the acceptance runner
/// can call the same bodies.
macro_rules! run_as_tests {
    ($($name:ident),* $(,)?) => {
        mod tests {
            $(#[test] fn $name() { super::$name() })*
        }
    };
}
