//! Finite groups given by permutation generators.
//!
//! Products read left to right: `a*b` applies `a` first, so the permutation
//! of `a*b` is `i -> b[a[i]]`.

mod lattice;
pub mod named;
pub mod parse;

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::{Error, Result};

pub use lattice::{SubgroupClass, SubgroupLattice};

/// Default cap on the group order.
pub const DEFAULT_BOUND: usize = 20160;

/// Multiplication tables are kept only up to this order.
const TABLE_LIMIT: usize = 2048;

pub type Perm = Vec<u32>;

#[derive(Debug, Clone)]
pub struct ConjugacyClasses {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub element_orders: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].len()
    }
}

#[derive(Debug, Clone)]
pub struct DoubleCosets {
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// Coset index of every element of the parent group.
    pub proj: Vec<usize>,
    pub cosets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    degree: usize,
    perms: Vec<Perm>,
    index: HashMap<Perm, u32>,
    table: Option<Vec<u32>>,
    inv: Vec<u32>,
    gens: Vec<usize>,
    /// `element = parent * gens[k]` for every non-identity element.
    parent: Vec<(u32, u32)>,
    bfs: Vec<u32>,
    label: Option<String>,
    classes: OnceLock<ConjugacyClasses>,
    lattice: OnceLock<SubgroupLattice>,
    pub(crate) chartable: OnceLock<crate::rep::CharacterTable>,
}

fn compose(a: &[u32], b: &[u32]) -> Perm {
    a.iter().map(|&i| b[i as usize]).collect()
}

fn invert(a: &[u32]) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        out[j as usize] = i as u32;
    }
    out
}

fn is_bijection(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        let x = x as usize;
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

impl FiniteGroup {
    /// Closure of the generators, elements in breadth-first order over
    /// generator words (generators tried in the given order).
    pub fn from_permutations(degree: usize, gens: &[Perm], bound: usize) -> Result<Self> {
        for g in gens {
            if g.len() != degree || !is_bijection(g) {
                return Err(Error::InvalidPermutation(format!("{g:?}")));
            }
        }
        let id: Perm = (0..degree as u32).collect();
        let mut perms = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut parent = vec![(0u32, 0u32)];
        let mut i = 0;
        while i < perms.len() {
            for (k, g) in gens.iter().enumerate() {
                let p = compose(&perms[i], g);
                if !index.contains_key(&p) {
                    if perms.len() >= bound {
                        return Err(Error::GroupTooLarge { bound });
                    }
                    index.insert(p.clone(), perms.len() as u32);
                    perms.push(p);
                    parent.push((i as u32, k as u32));
                }
            }
            i += 1;
        }
        let gen_idx = gens.iter().map(|g| index[g] as usize).collect();
        let bfs = (0..perms.len() as u32).collect();
        Ok(Self::finish(degree, perms, index, gen_idx, parent, bfs))
    }

    /// Group whose elements are exactly `perms` (element 0 the identity),
    /// generated by the listed element indices.
    pub fn from_elements(degree: usize, perms: Vec<Perm>, gens: Vec<usize>) -> Self {
        let index: HashMap<Perm, u32> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let n = perms.len();
        let mut parent = vec![(0u32, 0u32); n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut bfs = vec![0u32];
        let mut q = VecDeque::from([0usize]);
        while let Some(x) = q.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let y = index[&compose(&perms[x], &perms[g])] as usize;
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = (x as u32, k as u32);
                    bfs.push(y as u32);
                    q.push_back(y);
                }
            }
        }
        assert_eq!(bfs.len(), n, "generators must generate the element set");
        Self::finish(degree, perms, index, gens, parent, bfs)
    }

    fn finish(
        degree: usize,
        perms: Vec<Perm>,
        index: HashMap<Perm, u32>,
        gens: Vec<usize>,
        parent: Vec<(u32, u32)>,
        bfs: Vec<u32>,
    ) -> Self {
        let n = perms.len();
        let inv: Vec<u32> = perms.iter().map(|p| index[&invert(p)]).collect();
        let table = if n <= TABLE_LIMIT {
            // right multiplication by generators, then extend along the word tree
            let right: Vec<Vec<u32>> = (0..n)
                .map(|x| gens.iter().map(|&g| index[&compose(&perms[x], &perms[g])]).collect())
                .collect();
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                t[a * n] = a as u32;
                for &b in &bfs[1..] {
                    let b = b as usize;
                    let (p, k) = parent[b];
                    let ap = t[a * n + p as usize] as usize;
                    t[a * n + b] = right[ap][k as usize];
                }
            }
            Some(t)
        } else {
            None
        };
        FiniteGroup {
            degree,
            perms,
            index,
            table,
            inv,
            gens,
            parent,
            bfs,
            label: None,
            classes: OnceLock::new(),
            lattice: OnceLock::new(),
            chartable: OnceLock::new(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn perm(&self, a: usize) -> &[u32] {
        &self.perms[a]
    }

    pub fn element_of_perm(&self, p: &[u32]) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.perms.len() + b] as usize,
            None => self.index[&compose(&self.perms[a], &self.perms[b])] as usize,
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `x h x^-1`.
    pub fn conj(&self, x: usize, h: usize) -> usize {
        self.mul(self.mul(x, h), self.inv(x))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut r = 0;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Generator word for an element (indices into `generators()`).
    pub fn word(&self, mut a: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while a != 0 {
            let (p, k) = self.parent[a];
            w.push(k as usize);
            a = p as usize;
        }
        w.reverse();
        w
    }

    /// Elements in word-tree order together with `(parent, generator)`.
    pub fn word_tree(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.bfs[1..].iter().map(move |&b| {
            let (p, k) = self.parent[b as usize];
            (b as usize, p as usize, k as usize)
        })
    }

    pub fn exponent(&self) -> usize {
        self.conjugacy_classes()
            .element_orders
            .iter()
            .fold(1, |acc, &o| num_integer::lcm(acc, o))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugacy_classes(&self) -> &ConjugacyClasses {
        self.classes.get_or_init(|| {
            let n = self.order();
            let orders: Vec<usize> = (0..n).map(|a| self.element_order(a)).collect();
            let mut class_of = vec![usize::MAX; n];
            let mut raw: Vec<Vec<usize>> = Vec::new();
            for a in 0..n {
                if class_of[a] != usize::MAX {
                    continue;
                }
                let id = raw.len();
                let mut members = vec![a];
                class_of[a] = id;
                let mut i = 0;
                while i < members.len() {
                    let x = members[i];
                    for &g in &self.gens {
                        let y = self.mul(self.mul(self.inv(g), x), g);
                        if class_of[y] == usize::MAX {
                            class_of[y] = id;
                            members.push(y);
                        }
                    }
                    i += 1;
                }
                members.sort_unstable();
                raw.push(members);
            }
            let mut perm: Vec<usize> = (0..raw.len()).collect();
            perm.sort_by_key(|&c| (orders[raw[c][0]], raw[c][0]));
            let classes: Vec<Vec<usize>> = perm.iter().map(|&c| raw[c].clone()).collect();
            for (new, cls) in classes.iter().enumerate() {
                for &x in cls {
                    class_of[x] = new;
                }
            }
            ConjugacyClasses { classes, class_of, element_orders: orders }
        })
    }

    pub fn subgroup_lattice(&self) -> &SubgroupLattice {
        self.lattice.get_or_init(|| SubgroupLattice::compute(self))
    }

    /// Subgroup generated by the given elements, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let n = self.order();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut elems = vec![0usize];
        let mut i = 0;
        while i < elems.len() {
            for &g in gens {
                let y = self.mul(elems[i], g);
                if !seen[y] {
                    seen[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.first() != Some(&0) {
            return false;
        }
        s.iter().all(|&a| s.binary_search(&self.inv(a)).is_ok())
            && s.iter().all(|&a| s.iter().all(|&b| s.binary_search(&self.mul(a, b)).is_ok()))
    }

    /// `x H x^-1`, sorted.
    pub fn conjugate_set(&self, set: &[usize], x: usize) -> Vec<usize> {
        let xi = self.inv(x);
        let mut out: Vec<usize> = set.iter().map(|&h| self.mul(self.mul(x, h), xi)).collect();
        out.sort_unstable();
        out
    }

    pub fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
        a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        self.gens.iter().all(|&g| {
            set.iter().all(|&h| set.binary_search(&self.conj(g, h)).is_ok())
        })
    }

    pub fn normalizer(&self, set: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&x| set.iter().all(|&h| set.binary_search(&self.conj(x, h)).is_ok()))
            .collect()
    }

    /// Double cosets `H x D`, each represented by its smallest element.
    pub fn double_cosets(&self, h: &[usize], d: &[usize]) -> DoubleCosets {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut size = 0;
            for &a in h {
                let ax = self.mul(a, x);
                for &b in d {
                    let y = self.mul(ax, b);
                    if !seen[y] {
                        seen[y] = true;
                        size += 1;
                    }
                }
            }
            reps.push(x);
            sizes.push(size);
        }
        DoubleCosets { reps, sizes }
    }

    /// Left cosets `xH` ordered by smallest element; returns (cosets, coset index per element).
    pub fn left_cosets(&self, h: &[usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
        let n = self.order();
        let mut which = vec![usize::MAX; n];
        let mut cosets = Vec::new();
        for x in 0..n {
            if which[x] != usize::MAX {
                continue;
            }
            let mut c: Vec<usize> = h.iter().map(|&k| self.mul(x, k)).collect();
            c.sort_unstable();
            for &y in &c {
                which[y] = cosets.len();
            }
            cosets.push(c);
        }
        (cosets, which)
    }

    /// Action of each element on the left cosets of `h`: `perm[g][c] = coset of g·x_c`.
    pub fn coset_action(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let (cosets, which) = self.left_cosets(h);
        (0..self.order())
            .map(|g| cosets.iter().map(|c| which[self.mul(g, c[0])]).collect())
            .collect()
    }

    pub fn quotient(&self, normal: &[usize]) -> Result<Quotient> {
        if !self.is_subgroup(normal) || !self.is_normal(normal) {
            return Err(Error::NotNormal);
        }
        let (cosets, proj) = self.left_cosets(normal);
        let m = cosets.len();
        let perms: Vec<Perm> = (0..m)
            .map(|c| (0..m).map(|y| proj[self.mul(cosets[y][0], cosets[c][0])] as u32).collect())
            .collect();
        let gens = self.gens.iter().map(|&g| proj[g]).collect();
        let group = FiniteGroup::from_elements(m, perms, gens);
        Ok(Quotient { group, proj, cosets })
    }

    /// The subgroup `set` as a group in its own right, with the embedding of
    /// its elements (element `i` of the result is `embedding[i]`).
    pub fn subgroup_as_group(&self, set: &[usize]) -> (FiniteGroup, Vec<usize>) {
        let mut elems = set.to_vec();
        elems.sort_unstable();
        let mut gens: Vec<usize> = Vec::new();
        let mut span = vec![0usize];
        for &x in &elems {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let perms = elems.iter().map(|&x| self.perms[x].clone()).collect();
        let local_gens = gens.iter().map(|g| pos[g]).collect();
        let mut g = FiniteGroup::from_elements(self.degree, perms, local_gens);
        g.label = None;
        (g, elems)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]], DEFAULT_BOUND).unwrap()
    }

    #[test]
    fn s3_basics() {
        let g = s3();
        assert_eq!(g.order(), 6);
        let cc = g.conjugacy_classes();
        let sizes: Vec<usize> = cc.classes.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        for a in 0..6 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..6 {
                let want = g.element_of_perm(&compose(g.perm(a), g.perm(b))).unwrap();
                assert_eq!(g.mul(a, b), want);
            }
        }
    }

    #[test]
    fn trivial_and_bad_input() {
        let g = FiniteGroup::from_permutations(0, &[], DEFAULT_BOUND).unwrap();
        assert_eq!(g.order(), 1);
        let err = FiniteGroup::from_permutations(3, &[vec![0, 0, 1]], DEFAULT_BOUND).unwrap_err();
        assert_eq!(err.code(), "InvalidPermutation");
        let err = FiniteGroup::from_permutations(5, &[vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]], 50)
            .unwrap_err();
        assert_eq!(err, Error::GroupTooLarge { bound: 50 });
    }

    #[test]
    fn words_reconstruct_elements() {
        let g = s3();
        for a in 0..g.order() {
            let x = g.word(a).iter().fold(0, |acc, &k| g.mul(acc, g.generators()[k]));
            assert_eq!(x, a);
        }
    }

    #[test]
    fn double_cosets_s3() {
        let g = s3();
        let c2 = g.closure(&[g.generators()[1]]);
        let dc = g.double_cosets(&c2, &c2);
        let mut sizes = dc.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
        let normalizer = g.normalizer(&c2);
        assert_eq!(normalizer, c2);
    }

    #[test]
    fn quotient_by_c3() {
        let g = s3();
        let c3 = g.closure(&[g.generators()[0]]);
        let q = g.quotient(&c3).unwrap();
        assert_eq!(q.group.order(), 2);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(q.proj[g.mul(a, b)], q.group.mul(q.proj[a], q.proj[b]));
            }
        }
        let c2 = g.closure(&[g.generators()[1]]);
        assert_eq!(g.quotient(&c2).unwrap_err(), Error::NotNormal);
    }
}
