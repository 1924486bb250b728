//! Explicit representations over Q with invariant pairings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::QMatrix;
use crate::group::FiniteGroup;
use crate::{Error, Result};

#[derive(Debug, Clone)]
enum Mats {
    /// `perm[g][i]`: the basis vector `e_i` is sent to `e_{perm[g][i]}`.
    Perm(Vec<Vec<usize>>),
    Dense(Vec<QMatrix>),
}

/// A representation `ρ: G → GL_n(Q)` stored on every group element.
#[derive(Debug, Clone)]
pub struct RationalRep {
    dim: usize,
    mats: Mats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantPairing {
    pub gram: QMatrix,
}

/// Incrementally built row-echelon basis.
#[derive(Debug, Clone, Default)]
struct Echelon {
    rows: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    fn insert(&mut self, v: &[BigRational]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = r[p].recip();
        let r: Vec<BigRational> = r.iter().map(|x| x * &inv).collect();
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }

    fn len(&self) -> usize {
        self.rows.len()
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RationalRep {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_permutation(&self) -> bool {
        matches!(self.mats, Mats::Perm(_))
    }

    /// Representation from a permutation action, one permutation per element.
    pub fn from_perm_action(dim: usize, perms: Vec<Vec<usize>>) -> Self {
        RationalRep { dim, mats: Mats::Perm(perms) }
    }

    /// `Q[G/H]` with `G` acting on left cosets.
    pub fn perm_rep(g: &FiniteGroup, h: &[usize]) -> Self {
        let action = g.coset_action(h);
        let dim = action.first().map_or(0, |a| a.len());
        RationalRep { dim, mats: Mats::Perm(action) }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        RationalRep { dim: 1, mats: Mats::Perm(vec![vec![0]; g.order()]) }
    }

    pub fn regular(g: &FiniteGroup) -> Self {
        Self::perm_rep(g, &[0])
    }

    /// One matrix per generator of `g`; extended along the word tree and
    /// checked to be a homomorphism.
    pub fn from_generators(g: &FiniteGroup, dim: usize, gens: Vec<QMatrix>) -> Result<Self> {
        let mut mats = vec![QMatrix::identity(dim); g.order()];
        for (x, p, k) in g.word_tree() {
            mats[x] = mats[p].mul(&gens[k]);
        }
        let rep = RationalRep { dim, mats: Mats::Dense(mats) };
        rep.verify(g)?;
        Ok(rep)
    }

    fn verify(&self, g: &FiniteGroup) -> Result<()> {
        if let Mats::Dense(m) = &self.mats {
            for x in 0..g.order() {
                for &s in g.generators() {
                    if m[x].mul(&m[s]) != m[g.mul(x, s)] {
                        return Err(Error::PropertyViolation("matrices do not define a representation".into()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn matrix(&self, x: usize) -> QMatrix {
        match &self.mats {
            Mats::Perm(p) => {
                let mut m = QMatrix::zeros(self.dim, self.dim);
                for (i, &j) in p[x].iter().enumerate() {
                    m.data[j][i] = BigRational::one();
                }
                m
            }
            Mats::Dense(m) => m[x].clone(),
        }
    }

    pub fn apply(&self, x: usize, v: &[BigRational]) -> Vec<BigRational> {
        match &self.mats {
            Mats::Perm(p) => {
                let mut out = vec![BigRational::zero(); self.dim];
                for (i, &j) in p[x].iter().enumerate() {
                    out[j] = v[i].clone();
                }
                out
            }
            Mats::Dense(m) => m[x].mul_vec(v),
        }
    }

    pub fn trace(&self, x: usize) -> BigRational {
        match &self.mats {
            Mats::Perm(p) => int(p[x].iter().enumerate().filter(|(i, &j)| *i == j).count() as i64),
            Mats::Dense(m) => m[x].trace(),
        }
    }

    /// Character values on the conjugacy classes of `g` (always integers).
    pub fn character(&self, g: &FiniteGroup) -> Vec<i64> {
        let cc = g.conjugacy_classes();
        (0..cc.len())
            .map(|c| {
                let t = self.trace(cc.rep(c));
                assert!(t.is_integer());
                i64::try_from(t.to_integer()).expect("character value fits")
            })
            .collect()
    }

    pub fn direct_sum(&self, other: &RationalRep) -> RationalRep {
        let n = self.dim;
        let dim = n + other.dim;
        match (&self.mats, &other.mats) {
            (Mats::Perm(a), Mats::Perm(b)) => {
                let perms = a
                    .iter()
                    .zip(b)
                    .map(|(pa, pb)| pa.iter().copied().chain(pb.iter().map(|&j| j + n)).collect())
                    .collect();
                RationalRep { dim, mats: Mats::Perm(perms) }
            }
            _ => {
                let order = match &self.mats {
                    Mats::Perm(p) => p.len(),
                    Mats::Dense(m) => m.len(),
                };
                let mats = (0..order)
                    .map(|x| {
                        let (ma, mb) = (self.matrix(x), other.matrix(x));
                        let mut m = QMatrix::zeros(dim, dim);
                        for i in 0..n {
                            for j in 0..n {
                                m.data[i][j] = ma.data[i][j].clone();
                            }
                        }
                        for i in 0..other.dim {
                            for j in 0..other.dim {
                                m.data[n + i][n + j] = mb.data[i][j].clone();
                            }
                        }
                        m
                    })
                    .collect();
                RationalRep { dim, mats: Mats::Dense(mats) }
            }
        }
    }

    /// Restriction along an embedding of a subgroup (`embedding[i]` is the
    /// image of element `i` of the subgroup).
    pub fn restrict(&self, embedding: &[usize]) -> RationalRep {
        let mats = match &self.mats {
            Mats::Perm(p) => Mats::Perm(embedding.iter().map(|&x| p[x].clone()).collect()),
            Mats::Dense(m) => Mats::Dense(embedding.iter().map(|&x| m[x].clone()).collect()),
        };
        RationalRep { dim: self.dim, mats }
    }

    /// Basis of `ρ^H` as the columns of an `n × r` matrix in column-reduced echelon form.
    pub fn invariants(&self, h: &[usize]) -> QMatrix {
        match &self.mats {
            Mats::Perm(p) => {
                // orbit indicator vectors, ordered by smallest point
                let n = self.dim;
                let mut orbit_of = vec![usize::MAX; n];
                let mut count = 0;
                for start in 0..n {
                    if orbit_of[start] != usize::MAX {
                        continue;
                    }
                    let mut stack = vec![start];
                    orbit_of[start] = count;
                    while let Some(i) = stack.pop() {
                        for &x in h {
                            let j = p[x][i];
                            if orbit_of[j] == usize::MAX {
                                orbit_of[j] = count;
                                stack.push(j);
                            }
                        }
                    }
                    count += 1;
                }
                let mut b = QMatrix::zeros(n, count);
                for (i, &o) in orbit_of.iter().enumerate() {
                    b.data[i][o] = BigRational::one();
                }
                b
            }
            Mats::Dense(m) => {
                let mut sum = QMatrix::zeros(self.dim, self.dim);
                for &x in h {
                    sum.add_assign(&m[x]);
                }
                sum.column_basis().0
            }
        }
    }

    /// The standard pairing, invariant for permutation representations.
    pub fn standard_pairing(&self) -> Option<InvariantPairing> {
        match self.mats {
            Mats::Perm(_) => Some(InvariantPairing { gram: QMatrix::identity(self.dim) }),
            Mats::Dense(_) => None,
        }
    }

    pub fn is_invariant(&self, g: &FiniteGroup, pairing: &InvariantPairing) -> bool {
        g.generators().iter().all(|&s| {
            let m = self.matrix(s);
            m.transpose().mul(&pairing.gram).mul(&m) == pairing.gram
        })
    }

    /// Average a seeded random positive definite form over the group.
    pub fn average_pairing(&self, seed: u64) -> Result<InvariantPairing> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::PairingSearchFailed);
        }
        for attempt in 0..4u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9)));
            // X = B^T B + I with small integer B
            let b: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
            let mut x = vec![vec![0i64; n]; n];
            for i in 0..n {
                for j in 0..n {
                    x[i][j] = (0..n).map(|k| b[k][i] * b[k][j]).sum::<i64>() + i64::from(i == j);
                }
            }
            let gram = match &self.mats {
                Mats::Perm(p) => {
                    let mut acc = vec![vec![0i64; n]; n];
                    for perm in p {
                        for i in 0..n {
                            for j in 0..n {
                                acc[i][j] += x[perm[i]][perm[j]];
                            }
                        }
                    }
                    QMatrix::from_i64(&acc)
                }
                Mats::Dense(m) => {
                    let xq = QMatrix::from_i64(&x);
                    let mut acc = QMatrix::zeros(n, n);
                    for mg in m {
                        acc.add_assign(&mg.transpose().mul(&xq).mul(mg));
                    }
                    acc
                }
            };
            if !gram.det().is_zero() {
                return Ok(InvariantPairing { gram });
            }
        }
        Err(Error::PairingSearchFailed)
    }

    /// Sub-representation on a `G`-stable subspace spanned by the columns of `span`.
    pub fn subrep(&self, g: &FiniteGroup, span: &QMatrix) -> Result<RationalRep> {
        let (b, pivots) = span.column_basis();
        let r = b.cols;
        let gens: Vec<QMatrix> = g
            .generators()
            .iter()
            .map(|&s| {
                let mb = match &self.mats {
                    Mats::Dense(m) => m[s].mul(&b),
                    Mats::Perm(_) => self.matrix(s).mul(&b),
                };
                mb.select_rows(&pivots)
            })
            .collect();
        // check stability: M_s B = B X_s
        for (k, &s) in g.generators().iter().enumerate() {
            let lhs = self.matrix(s).mul(&b);
            if lhs != b.mul(&gens[k]) {
                return Err(Error::PropertyViolation("subspace is not G-stable".into()));
            }
        }
        RationalRep::from_generators(g, r, gens)
    }

    /// Image of the central idempotent attached to a rational class function
    /// `omega` (values on conjugacy classes), i.e. of `Σ_g ω(g^{-1}) ρ(g)`.
    pub fn isotypic_component(&self, g: &FiniteGroup, omega: &[i64]) -> Result<RationalRep> {
        let cc = g.conjugacy_classes();
        let n = self.dim;
        let mut e = QMatrix::zeros(n, n);
        for x in 0..g.order() {
            let w = omega[cc.class_of[g.inv(x)]];
            if w == 0 {
                continue;
            }
            match &self.mats {
                Mats::Perm(p) => {
                    for (i, &j) in p[x].iter().enumerate() {
                        e.data[j][i] += int(w);
                    }
                }
                Mats::Dense(m) => e.add_assign(&m[x].scale(&int(w))),
            }
        }
        if e.is_zero() {
            return Ok(RationalRep { dim: 0, mats: Mats::Dense(vec![QMatrix::zeros(0, 0); g.order()]) });
        }
        self.subrep(g, &e)
    }

    /// `G`-submodule generated by a vector.
    pub fn cyclic_submodule(&self, g: &FiniteGroup, v: &[BigRational]) -> Result<RationalRep> {
        let ech = self.spin(g, v);
        let span = QMatrix::from_rows(ech.rows, self.dim).transpose();
        self.subrep(g, &span)
    }

    /// A basis of the image of `Σ c_k ρ(x_k)`.
    pub fn image_of(&self, terms: &[(usize, i64)]) -> Vec<Vec<BigRational>> {
        let mut ech = Echelon::default();
        for i in 0..self.dim {
            let mut e = vec![BigRational::zero(); self.dim];
            e[i] = BigRational::one();
            let mut acc = vec![BigRational::zero(); self.dim];
            for &(x, c) in terms {
                if c == 0 {
                    continue;
                }
                for (a, b) in acc.iter_mut().zip(self.apply(x, &e)) {
                    *a += b * int(c);
                }
            }
            ech.insert(&acc);
        }
        ech.rows
    }

    fn spin(&self, g: &FiniteGroup, v: &[BigRational]) -> Echelon {
        let mut ech = Echelon::default();
        let mut queue = vec![v.to_vec()];
        ech.insert(v);
        while let Some(w) = queue.pop() {
            for &s in g.generators() {
                let u = self.apply(s, &w);
                if ech.insert(&u) {
                    queue.push(u);
                }
            }
        }
        ech
    }

    /// Try to cut an isotypic representation containing `copies` Q-irreducible
    /// summands of dimension `target_dim` down to a single summand.
    pub fn extract_single_copy(&self, g: &FiniteGroup, target_dim: usize, seed: u64) -> Result<RationalRep> {
        if self.dim == target_dim {
            return Ok(self.clone());
        }
        if target_dim == 0 || !self.dim.is_multiple_of(target_dim) {
            return Err(Error::ExtractionFailed);
        }
        // fixed vectors of subgroups
        let lattice = g.subgroup_lattice();
        for class in lattice.classes.iter().rev() {
            let inv = self.invariants(&class.representative);
            for c in 0..inv.cols {
                let v: Vec<BigRational> = (0..self.dim).map(|i| inv.data[i][c].clone()).collect();
                let ech = self.spin(g, &v);
                if ech.len() < self.dim && ech.len().is_multiple_of(target_dim) {
                    let span = QMatrix::from_rows(ech.rows.clone(), self.dim).transpose();
                    let sub = self.subrep(g, &span)?;
                    return sub.extract_single_copy(g, target_dim, seed);
                }
            }
        }
        // images of rational idempotents of cyclic subgroups
        for (gen, n) in cyclic_generators(g) {
            for d in crate::arith::divisors(n as u64).into_iter().skip(1) {
                let terms: Vec<(usize, i64)> =
                    (0..n).map(|k| (g.pow(gen, k as i64), crate::arith::ramanujan_sum(d, k as u64))).collect();
                for v in self.image_of(&terms).into_iter().take(4) {
                    let ech = self.spin(g, &v);
                    if ech.len() < self.dim && ech.len().is_multiple_of(target_dim) {
                        let span = QMatrix::from_rows(ech.rows.clone(), self.dim).transpose();
                        let sub = self.subrep(g, &span)?;
                        return sub.extract_single_copy(g, target_dim, seed);
                    }
                }
            }
        }
        // random commutant elements with a rational eigenvalue
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let x = QMatrix::from_i64(
                &(0..self.dim).map(|_| (0..self.dim).map(|_| rng.gen_range(-3..=3)).collect()).collect::<Vec<_>>(),
            );
            let mut t = QMatrix::zeros(self.dim, self.dim);
            for y in 0..g.order() {
                let m = self.matrix(y);
                let mi = self.matrix(g.inv(y));
                t.add_assign(&m.mul(&x).mul(&mi));
            }
            for lam in rational_roots(&t.char_poly()) {
                let mut shifted = t.clone();
                for i in 0..self.dim {
                    shifted.data[i][i] -= &lam;
                }
                let ker = shifted.kernel();
                if !ker.is_empty() && ker.len() < self.dim && ker.len().is_multiple_of(target_dim) {
                    let span = QMatrix::from_rows(ker, self.dim).transpose();
                    let sub = self.subrep(g, &span)?;
                    return sub.extract_single_copy(g, target_dim, rng.gen());
                }
            }
        }
        if let Some(w) = super::split::split_two_copies(self, g, target_dim) {
            return Ok(w);
        }
        Err(Error::ExtractionFailed)
    }
}

/// A generator and the order of every nontrivial cyclic subgroup, one per conjugacy class.
pub fn cyclic_generators(g: &FiniteGroup) -> Vec<(usize, usize)> {
    g.subgroup_lattice()
        .classes
        .iter()
        .filter(|c| c.is_cyclic && c.order > 1)
        .map(|c| {
            let x = *c.representative.iter().find(|&&x| g.element_order(x) == c.order).expect("cyclic");
            (x, c.order)
        })
        .collect()
}

/// Rational roots of a polynomial with rational coefficients (constant first).
pub fn rational_roots(poly: &[BigRational]) -> Vec<BigRational> {
    use num_integer::Integer;
    // clear denominators
    let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut coeffs: Vec<BigInt> = poly.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    while coeffs.len() > 1 && coeffs[0].is_zero() {
        coeffs.remove(0);
        if !roots.contains(&BigRational::zero()) {
            roots.push(BigRational::zero());
        }
    }
    if coeffs.len() <= 1 {
        return roots;
    }
    let a0 = coeffs[0].clone();
    let an = coeffs.last().unwrap().clone();
    let divs = |n: &BigInt| -> Vec<BigInt> {
        let n = num_traits::Signed::abs(n);
        let limit = num_integer::Roots::sqrt(&n);
        let mut out = Vec::new();
        let mut d = BigInt::one();
        while d <= limit {
            if (&n % &d).is_zero() {
                out.push(d.clone());
                out.push(&n / &d);
            }
            d += 1;
            if out.len() > 2000 {
                break;
            }
        }
        out
    };
    let eval = |x: &BigRational| -> BigRational {
        coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    };
    for p in divs(&a0) {
        for q in divs(&an) {
            for s in [1i64, -1] {
                let cand = BigRational::new(&p * s, q.clone());
                if !roots.contains(&cand) && eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::named_group;

    #[test]
    fn perm_rep_s3_c2() {
        let g = named_group("S 3").unwrap();
        let lat = g.subgroup_lattice();
        let c2 = lat.classes.iter().find(|c| c.order == 2).unwrap();
        let rep = RationalRep::perm_rep(&g, &c2.representative);
        assert_eq!(rep.dim(), 3);
        assert_eq!(rep.character(&g), vec![3, 1, 0]);
        let c3 = lat.classes.iter().find(|c| c.order == 3).unwrap();
        assert_eq!(rep.invariants(&c3.representative).cols, 1);
    }

    #[test]
    fn pairings_are_invariant() {
        let g = named_group("D 8").unwrap();
        let rep = RationalRep::regular(&g);
        let pairing = rep.average_pairing(7).unwrap();
        assert!(rep.is_invariant(&g, &pairing));
        assert!(rep.is_invariant(&g, &rep.standard_pairing().unwrap()));
    }

    #[test]
    fn two_dim_of_s3_from_regular() {
        let g = named_group("S 3").unwrap();
        let t = g.character_table().unwrap();
        let rho = t.rational_values(&[2]).unwrap();
        let reg = RationalRep::regular(&g);
        let iso = reg.isotypic_component(&g, &rho).unwrap();
        assert_eq!(iso.dim(), 4);
        let single = iso.extract_single_copy(&g, 2, 1).unwrap();
        assert_eq!(single.character(&g), rho);
    }

    #[test]
    fn roots_of_rational_poly() {
        let p: Vec<BigRational> = [6, -5, 1].iter().map(|&c| int(c)).collect();
        assert_eq!(rational_roots(&p), vec![int(2), int(3)]);
    }
}
