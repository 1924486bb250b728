//! Conjugacy classes of subgroups.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::FiniteGroup;

#[derive(Debug, Clone)]
pub struct SubgroupClass {
    pub id: usize,
    pub representative: Vec<usize>,
    pub order: usize,
    pub generators: Vec<usize>,
    pub is_cyclic: bool,
    pub is_normal: bool,
    pub conjugates_count: usize,
    pub label: String,
}

#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    pub classes: Vec<SubgroupClass>,
    /// `contains[i][j]`: class `i` contains a conjugate of class `j`.
    pub contains: Vec<Vec<bool>>,
    canon: HashMap<Vec<usize>, usize>,
}

/// All conjugates of a subgroup (orbit under conjugation by the generators).
fn conjugates(g: &FiniteGroup, set: &[usize]) -> Vec<Vec<usize>> {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut orbit = vec![set.to_vec()];
    seen.insert(set.to_vec());
    let mut i = 0;
    while i < orbit.len() {
        for &x in g.generators() {
            let c = g.conjugate_set(&orbit[i], x);
            if seen.insert(c.clone()) {
                orbit.push(c);
            }
        }
        i += 1;
    }
    orbit
}

fn canonical(g: &FiniteGroup, set: &[usize]) -> (Vec<usize>, usize) {
    let orbit = conjugates(g, set);
    let n = orbit.len();
    (orbit.into_iter().min().expect("nonempty orbit"), n)
}

impl SubgroupLattice {
    pub(super) fn compute(g: &FiniteGroup) -> Self {
        let n = g.order();
        // cyclic subgroups, each with a generator
        let mut cyclic: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for x in 0..n {
            let c = g.closure(&[x]);
            cyclic.entry(c).or_insert(x);
        }
        let cyclic: Vec<(Vec<usize>, usize)> = cyclic.into_iter().collect();

        let mut found: HashMap<Vec<usize>, (Vec<usize>, usize)> = HashMap::new();
        let mut work: Vec<Vec<usize>> = Vec::new();
        for (set, x) in &cyclic {
            let (can, _) = canonical(g, set);
            if !found.contains_key(&can) {
                // generator of the canonical conjugate
                let gens = if can == *set {
                    vec![*x]
                } else {
                    vec![*can.iter().find(|&&y| g.closure(&[y]).len() == set.len()).unwrap()]
                };
                found.insert(can.clone(), (gens, 0));
                work.push(can);
            }
        }
        while let Some(k) = work.pop() {
            let kgens = found[&k].0.clone();
            for (c, x) in &cyclic {
                if c.iter().all(|y| k.binary_search(y).is_ok()) {
                    continue;
                }
                let mut gens = kgens.clone();
                gens.push(*x);
                let j = g.closure(&gens);
                let (can, _) = canonical(g, &j);
                if found.contains_key(&can) {
                    continue;
                }
                let cgens = if can == j { gens } else { small_generators(g, &can) };
                found.insert(can.clone(), (cgens, 0));
                work.push(can);
            }
        }

        let mut reps: Vec<(Vec<usize>, Vec<usize>)> =
            found.into_iter().map(|(k, (gens, _))| (k, gens)).collect();
        reps.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));

        let orbits: Vec<Vec<Vec<usize>>> = reps.iter().map(|(r, _)| conjugates(g, r)).collect();
        let mut classes: Vec<SubgroupClass> = reps
            .iter()
            .enumerate()
            .map(|(id, (rep, gens))| {
                let order = rep.len();
                let is_cyclic = rep.iter().any(|&x| g.element_order(x) == order);
                SubgroupClass {
                    id,
                    representative: rep.clone(),
                    order,
                    generators: gens.clone(),
                    is_cyclic,
                    is_normal: orbits[id].len() == 1,
                    conjugates_count: orbits[id].len(),
                    label: String::new(),
                }
            })
            .collect();

        let m = classes.len();
        let mut contains = vec![vec![false; m]; m];
        for i in 0..m {
            for j in 0..m {
                if !classes[i].order.is_multiple_of(classes[j].order) {
                    continue;
                }
                let big = &classes[i].representative;
                contains[i][j] = orbits[j]
                    .iter()
                    .any(|c| c.iter().all(|y| big.binary_search(y).is_ok()));
            }
        }

        let names: Vec<String> = classes.iter().map(|c| iso_name(g, c, n)).collect();
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for nm in &names {
            *counts.entry(nm.as_str()).or_default() += 1;
        }
        let mut used: HashMap<&str, usize> = HashMap::new();
        for (c, nm) in classes.iter_mut().zip(&names) {
            if counts[nm.as_str()] > 1 {
                let k = used.entry(nm.as_str()).or_default();
                c.label = format!("{nm}{}", suffix(*k));
                *k += 1;
            } else {
                c.label = nm.clone();
            }
        }

        let canon = classes.iter().map(|c| (c.representative.clone(), c.id)).collect();
        SubgroupLattice { classes, contains, canon }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn top(&self) -> usize {
        self.classes.len() - 1
    }

    /// Class id of an arbitrary subgroup of the group.
    pub fn identify(&self, g: &FiniteGroup, set: &[usize]) -> usize {
        let mut s = set.to_vec();
        s.sort_unstable();
        let (can, _) = canonical(g, &s);
        self.canon[&can]
    }

    pub fn by_label(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.label == label)
    }
}

fn suffix(k: usize) -> String {
    let mut k = k;
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (k % 26) as u8);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}

fn small_generators(g: &FiniteGroup, set: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![0usize];
    for &x in set {
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.closure(&gens);
        }
    }
    gens
}

/// Isomorphism-type name of a subgroup, from element-order statistics.
fn iso_name(g: &FiniteGroup, c: &SubgroupClass, group_order: usize) -> String {
    let n = c.order;
    if n == 1 {
        return "1".into();
    }
    if n == group_order {
        return "G".into();
    }
    if c.is_cyclic {
        return format!("C{n}");
    }
    let set = &c.representative;
    let orders: Vec<usize> = set.iter().map(|&x| g.element_order(x)).collect();
    let abelian = c
        .generators
        .iter()
        .all(|&a| c.generators.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    if abelian {
        return abelian_name(n, &orders);
    }
    let count = |k: usize| orders.iter().filter(|&&o| o == k).count();
    // dihedral / dicyclic via a cyclic subgroup of index 2
    if n.is_multiple_of(2) {
        if let Some(pos) = orders.iter().position(|&o| o == n / 2) {
            let a = set[pos];
            let cyc = g.closure(&[a]);
            let outside: Vec<usize> = set
                .iter()
                .zip(&orders)
                .filter(|(x, _)| cyc.binary_search(x).is_err())
                .map(|(_, &o)| o)
                .collect();
            if outside.iter().all(|&o| o == 2) {
                return format!("D{n}");
            }
            if n.is_multiple_of(4) && outside.iter().all(|&o| o == 4) && count(2) == 1 {
                return format!("Q{n}");
            }
        }
    }
    let profile: Vec<(usize, usize)> = {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for &o in &orders {
            *m.entry(o).or_default() += 1;
        }
        m.into_iter().collect()
    };
    let known: &[(&str, &[(usize, usize)])] = &[
        ("A4", &[(1, 1), (2, 3), (3, 8)]),
        ("S4", &[(1, 1), (2, 9), (3, 8), (4, 6)]),
        ("SL2F3", &[(1, 1), (2, 1), (3, 8), (4, 6), (6, 8)]),
        ("A5", &[(1, 1), (2, 15), (3, 20), (5, 24)]),
        ("S5", &[(1, 1), (2, 25), (3, 20), (4, 30), (5, 24), (6, 20)]),
    ];
    for (name, prof) in known {
        if profile.as_slice() == *prof {
            return (*name).into();
        }
    }
    format!("H{n}")
}

fn abelian_name(n: usize, orders: &[usize]) -> String {
    // for each prime, recover the partition from |{x : x^(p^k) = 1}|
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for (p, _) in crate::arith::factorize(n as u64) {
        let mut logs = vec![0u32];
        let mut k = 1u32;
        loop {
            let pk = p.pow(k) as usize;
            let cnt = orders.iter().filter(|&&o| pk.is_multiple_of(o)).count() as u64;
            let l = crate::arith::val_u64(cnt, p);
            if l == *logs.last().unwrap() {
                break;
            }
            logs.push(l);
            k += 1;
        }
        // parts[i] = λ_i, descending
        let mut parts: Vec<u32> = Vec::new();
        for k in 1..logs.len() {
            let at_least = (logs[k] - logs[k - 1]) as usize;
            if parts.len() < at_least {
                parts.resize(at_least, 0);
            }
            for part in parts.iter_mut().take(at_least) {
                *part += 1;
            }
        }
        columns.push(parts.iter().map(|&e| p.pow(e)).collect());
    }
    let len = columns.iter().map(|c| c.len()).max().unwrap_or(0);
    let mut factors: Vec<u64> = (0..len)
        .map(|i| columns.iter().map(|c| c.get(i).copied().unwrap_or(1)).product())
        .collect();
    factors.sort_unstable();
    factors.iter().map(|f| format!("C{f}")).collect::<Vec<_>>().join("x")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::named_group;

    #[test]
    fn abelian_labels() {
        let g = named_group("CxC 2 6").unwrap();
        let names: Vec<&str> =
            g.subgroup_lattice().classes.iter().map(|c| c.label.as_str()).collect();
        assert!(names.contains(&"C2xC2"));
        assert_eq!(suffix(0), "a");
        assert_eq!(suffix(27), "ab");
    }

    #[test]
    fn d12_labels() {
        let g = named_group("D 12").unwrap();
        let lat = g.subgroup_lattice();
        let names: Vec<&str> = lat.classes.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(lat.len(), 10);
        assert!(names.contains(&"D6a") && names.contains(&"D6b"));
        assert_eq!(names[0], "1");
        assert_eq!(names[9], "G");
    }
}
