//! Splitting `V ≅ W ⊕ W` when the image `A` of `Q[G]` in `End(V)` is a
//! quaternion algebra over a center `K` that is Q or quadratic.
//!
//! Write `A = K⟨T, U⟩` with `T² = δ`, `U² = c`, `UT = -TU`. A nonzero
//! `q = x + yT + zU` with `x² - δy² - cz² = 0` has rank one over `K`, and the
//! G-span of any vector in its image is a single copy of `W`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::rational::RationalRep;
use crate::arith::{factorize, QMatrix};
use crate::group::FiniteGroup;

/// Box radius of the search for an isotropic vector, per center degree.
const BOX: [i64; 2] = [40, 4];
/// Number of choices of `T` tried.
const T_TRIES: usize = 8;

fn flat(m: &QMatrix) -> Vec<BigRational> {
    m.data.iter().flatten().cloned().collect()
}

/// Coefficients of `target` in the span of `basis` (assumed independent).
fn coords(basis: &[QMatrix], target: &QMatrix) -> Option<Vec<BigRational>> {
    let cols: Vec<Vec<BigRational>> = basis.iter().chain(std::iter::once(target)).map(flat).collect();
    let n = cols[0].len();
    let m = QMatrix::from_rows((0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect(), cols.len());
    let ker = m.kernel();
    let v = ker.iter().find(|v| !v[basis.len()].is_zero())?;
    let s = -v[basis.len()].recip();
    Some(v[..basis.len()].iter().map(|x| x * &s).collect())
}

/// `{Σ a_j B_j : Σ a_j L(B_j) = 0}` for a linear map `L` given on the basis.
fn solve_in(basis: &[QMatrix], images: &[Vec<BigRational>]) -> Vec<QMatrix> {
    let n = images[0].len();
    let m = QMatrix::from_rows((0..n).map(|i| images.iter().map(|c| c[i].clone()).collect()).collect(), images.len());
    m.kernel()
        .into_iter()
        .map(|a| {
            let mut acc = QMatrix::zeros(basis[0].rows, basis[0].cols);
            for (b, x) in basis.iter().zip(&a) {
                if !x.is_zero() {
                    acc.add_assign(&b.scale(x));
                }
            }
            acc
        })
        .collect()
}

/// Elements of `K` as pairs `a + bι` with `ι² = m` (`ι = None` when `K = Q`).
struct Center {
    iota: Option<QMatrix>,
    m: i64,
}

impl Center {
    fn basis(&self, n: usize) -> Vec<QMatrix> {
        let mut b = vec![QMatrix::identity(n)];
        b.extend(self.iota.clone());
        b
    }

    fn embed(&self, n: usize, a: &[BigRational]) -> QMatrix {
        let mut out = QMatrix::identity(n).scale(&a[0]);
        if let Some(i) = &self.iota {
            out.add_assign(&i.scale(&a[1]));
        }
        out
    }

    fn times(&self, x: &QMatrix) -> Vec<QMatrix> {
        let mut b = vec![x.clone()];
        b.extend(self.iota.as_ref().map(|i| i.mul(x)));
        b
    }
}

fn center(basis: &[QMatrix], gens: &[QMatrix]) -> Option<Center> {
    let n = gens[0].rows;
    let images: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|b| gens.iter().flat_map(|s| flat(&b.mul(s).sub(&s.mul(b)))).collect())
        .collect();
    let z = solve_in(basis, &images);
    match z.len() {
        1 => Some(Center { iota: None, m: 1 }),
        2 => {
            let id = QMatrix::identity(n);
            let w = z.iter().find(|w| coords(std::slice::from_ref(&id), w).is_none())?;
            // w² = p w + q  ⇒  (2w - p)² = p² + 4q
            let pq = coords(&[w.clone(), id.clone()], &w.mul(w))?;
            let two = BigRational::from_integer(2.into());
            let mut iota = w.scale(&two).sub(&id.scale(&pq[0]));
            let disc = &pq[0] * &pq[0] + &pq[1] * BigRational::from_integer(4.into());
            // rescale to a squarefree integer
            let den = disc.denom().clone();
            iota = iota.scale(&BigRational::from_integer(den.clone()));
            let mut m = (disc.numer() * &den).to_i64()?;
            let mut root = 1i64;
            for (p, k) in factorize(m.unsigned_abs()) {
                root *= (p as i64).pow(k / 2);
            }
            m /= root * root;
            iota = iota.scale(&BigRational::new(BigInt::one(), BigInt::from(root)));
            Some(Center { iota: Some(iota), m })
        }
        _ => None,
    }
}

/// Integer point on `x² - δy² - cz² = 0` over `K`, coordinates as pairs.
fn isotropic(k: &Center, delta: &[BigInt], c: &[BigInt]) -> Option<[[i64; 2]; 3]> {
    let deg = if k.iota.is_some() { 2 } else { 1 };
    let m = k.m as i128;
    let d = [delta[0].to_i128()?, delta.get(1).map_or(Some(0), |v| v.to_i128())?];
    let cc = [c[0].to_i128()?, c.get(1).map_or(Some(0), |v| v.to_i128())?];
    let mul = |a: [i128; 2], b: [i128; 2]| [a[0] * b[0] + m * a[1] * b[1], a[0] * b[1] + a[1] * b[0]];
    let r = BOX[deg - 1];
    let range: Vec<i64> = (-r..=r).collect();
    let elems: Vec<[i64; 2]> = if deg == 1 {
        range.iter().map(|&a| [a, 0]).collect()
    } else {
        range.iter().flat_map(|&a| range.iter().map(move |&b| [a, b])).collect()
    };
    let sq: Vec<[i128; 2]> = elems.iter().map(|e| mul([e[0] as i128, e[1] as i128], [e[0] as i128, e[1] as i128])).collect();
    let dy: Vec<[i128; 2]> = sq.iter().map(|s| mul(d, *s)).collect();
    let cz: Vec<[i128; 2]> = sq.iter().map(|s| mul(cc, *s)).collect();
    for (ix, x2) in sq.iter().enumerate() {
        for (iy, y2) in dy.iter().enumerate() {
            let rest = [x2[0] - y2[0], x2[1] - y2[1]];
            for (iz, z2) in cz.iter().enumerate() {
                if rest[0] == z2[0] && rest[1] == z2[1] {
                    let p = [elems[ix], elems[iy], elems[iz]];
                    if p.iter().any(|e| e[0] != 0 || e[1] != 0) {
                        return Some(p);
                    }
                }
            }
        }
    }
    None
}

fn to_int_pair(a: &[BigRational], scale: &BigInt) -> Vec<BigInt> {
    a.iter().map(|x| (x * BigRational::from_integer(scale.clone())).to_integer()).collect()
}

/// One copy of `W` inside `V ≅ W ⊕ W`, or `None` when no split was found.
pub(super) fn split_two_copies(rep: &RationalRep, g: &FiniteGroup, target_dim: usize) -> Option<RationalRep> {
    let n = rep.dim();
    if n != 2 * target_dim {
        return None;
    }
    let mats: Vec<QMatrix> = (0..g.order()).map(|x| rep.matrix(x)).collect();
    let mut basis: Vec<QMatrix> = Vec::new();
    let mut rank_rows: Vec<Vec<BigRational>> = Vec::new();
    for m in &mats {
        rank_rows.push(flat(m));
        if QMatrix::from_rows(rank_rows.clone(), n * n).rank() > basis.len() {
            basis.push(m.clone());
        } else {
            rank_rows.pop();
        }
    }
    let gens: Vec<QMatrix> = g.generators().iter().map(|&s| mats[s].clone()).collect();
    let k = center(&basis, &gens)?;
    let deg = if k.iota.is_some() { 2 } else { 1 };
    if basis.len() != 4 * deg {
        return None;
    }
    let kb = k.basis(n);
    let mut tried = 0;
    for t in &mats {
        if coords(&kb, t).is_some() {
            continue;
        }
        tried += 1;
        if tried > T_TRIES {
            break;
        }
        // T² = tr·T - nm over K; shift to trace zero
        let mut span = k.times(t);
        span.extend(kb.iter().cloned());
        let Some(cf) = coords(&span, &t.mul(t)) else { continue };
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let tr: Vec<BigRational> = cf[..deg].iter().map(|x| x * &half).collect();
        let t0 = t.sub(&k.embed(n, &tr));
        let Some(delta) = coords(&kb, &t0.mul(&t0)) else { continue };
        let images: Vec<Vec<BigRational>> = basis.iter().map(|b| flat(&b.mul(&t0).add(&t0.mul(b)))).collect();
        let Some(u) = solve_in(&basis, &images).into_iter().next() else { continue };
        let Some(c) = coords(&kb, &u.mul(&u)) else { continue };
        let den = delta.iter().chain(&c).fold(BigInt::one(), |a, x| a.lcm(x.denom()));
        let den2 = &den * &den;
        let Some([x, y, z]) = isotropic(&k, &to_int_pair(&delta, &den2), &to_int_pair(&c, &den2)) else { continue };
        let as_k = |e: [i64; 2], s: &BigInt| -> Vec<BigRational> {
            e.iter().map(|&v| BigRational::from_integer(BigInt::from(v) * s)).collect()
        };
        let one = BigInt::one();
        let q = k
            .embed(n, &as_k(x, &one))
            .add(&k.embed(n, &as_k(y, &den)).mul(&t0))
            .add(&k.embed(n, &as_k(z, &den)).mul(&u));
        if q.is_zero() {
            continue;
        }
        let qt = q.transpose();
        for col in &qt.data {
            if col.iter().all(|v| v.is_zero()) {
                continue;
            }
            if let Ok(sub) = rep.cyclic_submodule(g, col) {
                if sub.dim() == target_dim {
                    return Some(sub);
                }
            }
            break;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::named_group;

    #[test]
    fn regular_of_q8_faithful_part() {
        // the faithful summand of Q[Q8] is two copies of a 4-dim module
        // only when the quaternions split, which they do not
        let g = named_group("Q 8").unwrap();
        let t = g.character_table().unwrap();
        let chi = t.chars.iter().position(|c| c.degree == 2).unwrap();
        let omega: Vec<i64> = t.chars[chi].values.iter().map(|v| 2 * t.field.as_integer(v).unwrap()).collect();
        let iso = RationalRep::regular(&g).isotypic_component(&g, &omega).unwrap();
        assert_eq!(iso.dim(), 4);
        assert!(split_two_copies(&iso, &g, 2).is_none());
    }

    #[test]
    fn two_dim_of_s3_from_regular() {
        let g = named_group("S 3").unwrap();
        let t = g.character_table().unwrap();
        let chi = t.chars.iter().position(|c| c.degree == 2).unwrap();
        let omega: Vec<i64> = t.chars[chi].values.iter().map(|v| t.field.as_integer(v).unwrap()).collect();
        let iso = RationalRep::regular(&g).isotypic_component(&g, &omega).unwrap();
        assert_eq!(iso.dim(), 4);
        let w = split_two_copies(&iso, &g, 2).unwrap();
        assert_eq!(w.character(&g), omega);
    }
}
