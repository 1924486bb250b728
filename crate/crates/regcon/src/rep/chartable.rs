//! Complex character tables by the Burnside–Dixon method.

use num_rational::BigRational;
use num_bigint::BigInt;

use super::cyclo::CycloField;
use crate::arith::{is_prime, mod_inv, mod_pow, primitive_root};
use crate::group::FiniteGroup;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct Character {
    pub degree: usize,
    /// Cyclotomic coordinates of the value on each class.
    pub values: Vec<Vec<i64>>,
    /// `det ρ(g) = ζ^{det_exp}` on each class.
    pub det_exp: Vec<usize>,
    pub fs: i8,
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub exponent: usize,
    pub field: CycloField,
    pub group_order: usize,
    pub class_sizes: Vec<usize>,
    pub class_reps: Vec<usize>,
    pub class_orders: Vec<usize>,
    /// `power_map[t][c]`: class of `g_c^t`, for `t` in `0..exponent`.
    pub power_map: Vec<Vec<usize>>,
    pub chars: Vec<Character>,
    /// Prime used for the modular computation.
    pub prime: u64,
    /// Primitive `exponent`-th root of unity mod `prime` standing for ζ.
    pub root: u64,
}

fn dixon_prime(e: u64, bound: f64) -> u64 {
    let mut l = e + 1;
    loop {
        if is_prime(l) && (l as f64) > bound {
            return l;
        }
        l += e;
    }
}

fn nullspace_mod(m: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = m.to_vec();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_multiple_of(p)) else { continue };
        a.swap(r, piv);
        let inv = mod_inv(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&prow) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0u64; cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[i][f]) % p;
            }
            v
        })
        .collect()
}

/// Characteristic polynomial mod p, constant term first.
fn char_poly_mod(r: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = r.len();
    let matmul = |a: &[Vec<u64>], b: &[Vec<u64>]| -> Vec<Vec<u64>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(0u64, |s, k| (s + a[i][k] * b[k][j]) % p))
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![0u64; n + 1];
    coeffs[n] = 1;
    let mut m = vec![vec![0u64; n]; n];
    for k in 1..=n {
        let mut next = matmul(r, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = (row[i] + coeffs[n - k + 1]) % p;
        }
        m = next;
        let am = matmul(r, &m);
        let tr = (0..n).fold(0u64, |s, i| (s + am[i][i]) % p);
        coeffs[n - k] = (p - tr) % p * mod_inv(k as u64 % p, p) % p;
    }
    coeffs
}

fn roots_mod(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p) == 0)
        .collect()
}

/// Basis vectors as columns of a k×d matrix in column-echelon form with
/// identity rows at `pivots`.
struct Space {
    basis: Vec<Vec<u64>>, // d vectors of length k
    pivots: Vec<usize>,
}

fn echelon(vectors: Vec<Vec<u64>>, k: usize, p: u64) -> Space {
    // row-reduce the vectors as rows; pivots are coordinates
    let mut a = vectors;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        if r == a.len() {
            break;
        }
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, piv);
        let inv = mod_inv(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        let prow = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&prow) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Space { basis: a, pivots }
}

pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable> {
    character_table_with(g, None)
}

/// Table of a subgroup whose cyclotomic coordinates embed into those of
/// `parent` via `ζ_e ↦ ζ_E^{E/e}`.
pub fn compatible_table(g: &FiniteGroup, parent: &CharacterTable) -> Result<CharacterTable> {
    let e = g.exponent();
    if !parent.exponent.is_multiple_of(e) {
        return Err(Error::CharacterTable("exponent does not divide the ambient exponent".into()));
    }
    let z = mod_pow(parent.root, (parent.exponent / e) as u64, parent.prime);
    character_table_with(g, Some((parent.prime, z)))
}

/// Dixon's method modulo `l` with `z` of order `exp(G)`; both chosen when `None`.
pub fn character_table_with(g: &FiniteGroup, modulus: Option<(u64, u64)>) -> Result<CharacterTable> {
    let cc = g.conjugacy_classes();
    let k = cc.len();
    let n = g.order();
    let e = g.exponent();
    let sizes: Vec<usize> = cc.classes.iter().map(|c| c.len()).collect();
    let reps: Vec<usize> = (0..k).map(|c| cc.rep(c)).collect();
    let max_class = *sizes.iter().max().unwrap();
    let bound = 2.0 * (n as f64).sqrt() * max_class as f64;
    let (l, z) = match modulus {
        Some((l, z)) => {
            if (l as f64) <= bound || (l - 1) % e as u64 != 0 {
                return Err(Error::CharacterTable("modulus too small".into()));
            }
            (l, z)
        }
        None => {
            let l = dixon_prime(e as u64, bound);
            (l, mod_pow(primitive_root(l), (l - 1) / e as u64, l))
        }
    };

    // a[i][j][m] = #{x in C_i : x^-1 z_m in C_j}
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for (m, &z) in reps.iter().enumerate() {
        for x in 0..n {
            let y = g.mul(g.inv(x), z);
            a[cc.class_of[x]][cc.class_of[y]][m] += 1;
        }
    }

    let mut spaces = vec![Space { basis: nullspace_mod(&[], k, l), pivots: (0..k).collect() }];
    spaces[0] = echelon(spaces[0].basis.clone(), k, l);
    for mi in a.iter().skip(1) {
        if spaces.iter().all(|s| s.basis.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for s in spaces {
            let d = s.basis.len();
            if d == 1 {
                next.push(s);
                continue;
            }
            // image vectors M b for each basis vector b
            let images: Vec<Vec<u64>> = s
                .basis
                .iter()
                .map(|b| (0..k).map(|j| (0..k).fold(0u64, |acc, t| (acc + mi[j][t] % l * b[t]) % l)).collect())
                .collect();
            // restricted matrix R with M B = B R: column c of R = images[c] at pivots
            let rmat: Vec<Vec<u64>> =
                (0..d).map(|r| (0..d).map(|c| images[c][s.pivots[r]]).collect()).collect();
            let roots = roots_mod(&char_poly_mod(&rmat, l), l);
            let mut total = 0;
            for lam in roots {
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|r| {
                        (0..d)
                            .map(|c| if r == c { (rmat[r][c] + l - lam) % l } else { rmat[r][c] })
                            .collect()
                    })
                    .collect();
                let coeffs = nullspace_mod(&shifted, d, l);
                total += coeffs.len();
                let vecs: Vec<Vec<u64>> = coeffs
                    .iter()
                    .map(|cv| {
                        (0..k)
                            .map(|t| (0..d).fold(0u64, |acc, c| (acc + cv[c] * s.basis[c][t]) % l))
                            .collect()
                    })
                    .collect();
                next.push(echelon(vecs, k, l));
            }
            if total != d {
                return Err(Error::CharacterTable("class algebra not split".into()));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.basis.len() != 1) || spaces.len() != k {
        return Err(Error::CharacterTable("eigenspaces did not separate".into()));
    }

    // power maps
    let power_map: Vec<Vec<usize>> =
        (0..e).map(|t| reps.iter().map(|&x| cc.class_of[g.pow(x, t as i64)]).collect()).collect();
    let inv_class = |c: usize| power_map[(e - 1) % e.max(1)][c];
    let field = CycloField::new(e);
    let e_inv = mod_inv(e as u64 % l, l);

    let mut chars = Vec::new();
    for s in &spaces {
        let w0 = s.basis[0][0];
        if w0 == 0 {
            return Err(Error::CharacterTable("central character vanishes at identity".into()));
        }
        let winv = mod_inv(w0, l);
        let w: Vec<u64> = s.basis[0].iter().map(|&x| x * winv % l).collect();
        let mut ssum = 0u64;
        for c in 0..k {
            let t = w[c] * w[inv_class(c)] % l * mod_inv(sizes[c] as u64 % l, l) % l;
            ssum = (ssum + t) % l;
        }
        let d2 = n as u64 % l * mod_inv(ssum, l) % l;
        let Some(d) = (1..=(n as f64).sqrt() as u64 + 1).find(|&d| d * d % l == d2 && d * d <= n as u64)
        else {
            return Err(Error::CharacterTable("no integral degree".into()));
        };
        let chi_mod: Vec<u64> =
            (0..k).map(|c| d * w[c] % l * mod_inv(sizes[c] as u64 % l, l) % l).collect();
        let mut values = Vec::with_capacity(k);
        let mut det_exp = Vec::with_capacity(k);
        for c in 0..k {
            let mut mult = vec![0i64; e];
            for (j, mj) in mult.iter_mut().enumerate() {
                let mut acc = 0u64;
                for t in 0..e {
                    let zt = mod_pow(z, ((e - (j * t) % e) % e) as u64, l);
                    acc = (acc + chi_mod[power_map[t][c]] * zt) % l;
                }
                let m = acc * e_inv % l;
                if m > d {
                    return Err(Error::CharacterTable("eigenvalue multiplicity out of range".into()));
                }
                *mj = m as i64;
            }
            if mult.iter().sum::<i64>() != d as i64 {
                return Err(Error::CharacterTable("multiplicities do not sum to degree".into()));
            }
            det_exp.push(mult.iter().enumerate().map(|(j, &m)| j * m as usize).sum::<usize>() % e);
            values.push(field.from_exponents(&mult));
        }
        chars.push(Character { degree: d as usize, values, det_exp, fs: 0 });
    }

    let mut table = CharacterTable {
        exponent: e,
        field,
        group_order: n,
        class_sizes: sizes,
        class_reps: reps,
        class_orders: (0..k).map(|c| cc.element_orders[cc.rep(c)]).collect(),
        power_map,
        chars,
        prime: l,
        root: z,
    };
    let one = table.field.from_int(1);
    table.chars.sort_by(|x, y| {
        let tx = x.values.iter().all(|v| *v == one);
        let ty = y.values.iter().all(|v| *v == one);
        ty.cmp(&tx).then(x.degree.cmp(&y.degree)).then_with(|| x.values.cmp(&y.values))
    });
    for i in 0..table.chars.len() {
        let sq: Vec<usize> = (0..k).map(|c| table.power_map[2 % e.max(1)][c]).collect();
        let f: Vec<Vec<i64>> = sq.iter().map(|&c| table.chars[i].values[c].clone()).collect();
        let s = table.sum_over_group(&f);
        let fs = table.field.as_integer(&s).ok_or_else(|| Error::CharacterTable("FS".into()))?;
        if fs % n as i64 != 0 {
            return Err(Error::CharacterTable("FS indicator not integral".into()));
        }
        table.chars[i].fs = (fs / n as i64) as i8;
    }
    Ok(table)
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    /// `Σ_c |C_c| f(c)` for a cyclotomic class function.
    pub fn sum_over_group(&self, f: &[Vec<i64>]) -> Vec<i64> {
        let mut acc = self.field.from_int(0);
        for (c, v) in f.iter().enumerate() {
            let s = self.class_sizes[c] as i64;
            for (a, b) in acc.iter_mut().zip(v) {
                *a += s * b;
            }
        }
        acc
    }

    pub fn inv_class(&self, c: usize) -> usize {
        self.power_map[(self.exponent - 1) % self.exponent.max(1)][c]
    }

    /// `⟨χ_i, χ_j⟩` as an exact rational.
    pub fn inner(&self, i: usize, j: usize) -> BigRational {
        let f: Vec<Vec<i64>> = (0..self.num_classes())
            .map(|c| self.field.mul(&self.chars[i].values[c], &self.chars[j].values[self.inv_class(c)]))
            .collect();
        let s = self.sum_over_group(&f);
        match self.field.as_integer(&s) {
            Some(v) => BigRational::new(BigInt::from(v), BigInt::from(self.group_order as i64)),
            None => panic!("inner product of characters is rational"),
        }
    }

    /// Multiplicity of `χ_i` in an integer-valued class function.
    pub fn multiplicity_in(&self, i: usize, f: &[i64]) -> BigRational {
        let vals: Vec<Vec<i64>> = (0..self.num_classes())
            .map(|c| {
                let conj = &self.chars[i].values[self.inv_class(c)];
                conj.iter().map(|x| x * f[c]).collect()
            })
            .collect();
        let s = self.sum_over_group(&vals);
        let v = self.field.as_integer(&s).expect("rational multiplicity");
        BigRational::new(BigInt::from(v), BigInt::from(self.group_order as i64))
    }

    pub fn dual(&self, i: usize) -> usize {
        let vals: Vec<Vec<i64>> =
            (0..self.num_classes()).map(|c| self.chars[i].values[self.inv_class(c)].clone()).collect();
        self.position_of(&vals).expect("dual character is irreducible")
    }

    /// The character `χ^{σ_a}` with `σ_a: ζ ↦ ζ^a`, `gcd(a, e) = 1`.
    pub fn galois_image(&self, i: usize, a: usize) -> usize {
        let e = self.exponent.max(1);
        let vals: Vec<Vec<i64>> =
            (0..self.num_classes()).map(|c| self.chars[i].values[self.power_map[a % e][c]].clone()).collect();
        self.position_of(&vals).expect("Galois conjugate is irreducible")
    }

    fn position_of(&self, vals: &[Vec<i64>]) -> Option<usize> {
        self.chars.iter().position(|ch| ch.values == vals)
    }

    /// Integer values of a sum of characters (must be rational).
    pub fn rational_values(&self, members: &[usize]) -> Option<Vec<i64>> {
        (0..self.num_classes())
            .map(|c| {
                let mut acc = self.field.from_int(0);
                for &i in members {
                    acc = self.field.add(&acc, &self.chars[i].values[c]);
                }
                self.field.as_integer(&acc)
            })
            .collect()
    }

    /// Coordinates of a subgroup table value in this table's field.
    pub fn embed_value(&self, sub_exponent: usize, v: &[i64]) -> Vec<i64> {
        let step = self.exponent / sub_exponent.max(1);
        let mut exps = vec![0i64; self.exponent.max(1)];
        for (j, &c) in v.iter().enumerate() {
            exps[(j * step) % self.exponent.max(1)] += c;
        }
        self.field.reduce(&exps)
    }

    pub fn is_trivial_char(&self, i: usize) -> bool {
        let one = self.field.from_int(1);
        self.chars[i].values.iter().all(|v| *v == one)
    }
}

impl FiniteGroup {
    /// Character table, computed once and cached.
    pub fn character_table(&self) -> Result<&CharacterTable> {
        if let Some(t) = self.chartable.get() {
            return Ok(t);
        }
        let t = character_table(self)?;
        Ok(self.chartable.get_or_init(|| t))
    }
}
