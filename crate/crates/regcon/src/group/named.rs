//! Catalog of named groups with fixed permutation generators.

use super::{FiniteGroup, Perm, DEFAULT_BOUND};
use crate::{Error, Result};

fn cycle(degree: usize, pts: &[usize]) -> Perm {
    let mut p: Perm = (0..degree as u32).collect();
    for (i, &a) in pts.iter().enumerate() {
        p[a] = pts[(i + 1) % pts.len()] as u32;
    }
    p
}

fn build(degree: usize, gens: Vec<Perm>, label: String, bound: usize) -> Result<FiniteGroup> {
    Ok(FiniteGroup::from_permutations(degree, &gens, bound)?.with_label(label))
}

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    let pts: Vec<usize> = (0..n).collect();
    let gens = if n > 1 { vec![cycle(n, &pts)] } else { vec![] };
    build(n.max(1), gens, format!("C{n}"), DEFAULT_BOUND)
}

/// Dihedral group of order `order` (rotation first, reflection second).
pub fn dihedral(order: usize) -> Result<FiniteGroup> {
    if order < 2 || order % 2 == 1 {
        return Err(Error::UnknownGroup(format!("D {order}")));
    }
    let n = order / 2;
    let label = format!("D{order}");
    match n {
        1 => build(2, vec![vec![1, 0]], label, DEFAULT_BOUND),
        2 => build(4, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]], label, DEFAULT_BOUND),
        _ => {
            let r: Perm = (0..n).map(|i| ((i + 1) % n) as u32).collect();
            let s: Perm = (0..n).map(|i| ((n - i) % n) as u32).collect();
            build(n, vec![r, s], label, DEFAULT_BOUND)
        }
    }
}

/// Dicyclic group of order `4m`: `a^{2m} = 1, x^2 = a^m, x a x^-1 = a^-1`,
/// acting regularly on itself.
pub fn dicyclic(order: usize) -> Result<FiniteGroup> {
    if order < 8 || !order.is_multiple_of(4) {
        return Err(Error::UnknownGroup(format!("Q {order}")));
    }
    let m2 = order / 2; // order of a
    let m = m2 / 2;
    // element a^i x^j  <->  index i + m2*j
    let mul = |(i1, j1): (usize, usize), (i2, j2): (usize, usize)| -> (usize, usize) {
        // a^i1 x^j1 a^i2 x^j2 = a^(i1 ± i2) x^(j1+j2)
        let i2s = if j1 == 1 { (m2 - i2) % m2 } else { i2 };
        let mut i = (i1 + i2s) % m2;
        let mut j = j1 + j2;
        if j == 2 {
            j = 0;
            i = (i + m) % m2;
        }
        (i, j)
    };
    let idx = |(i, j): (usize, usize)| i + m2 * j;
    let elems: Vec<(usize, usize)> =
        (0..2).flat_map(|j| (0..m2).map(move |i| (i, j))).collect();
    let left = |g: (usize, usize)| -> Perm { elems.iter().map(|&h| idx(mul(g, h)) as u32).collect() };
    build(order, vec![left((1, 0)), left((0, 1))], format!("Q{order}"), DEFAULT_BOUND)
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    let label = format!("A{n}");
    if n < 3 {
        return build(n.max(1), vec![], label, DEFAULT_BOUND);
    }
    let a = cycle(n, &[0, 1, 2]);
    let b = if n % 2 == 1 {
        cycle(n, &(0..n).collect::<Vec<_>>())
    } else {
        cycle(n, &(1..n).collect::<Vec<_>>())
    };
    build(n, vec![a, b], label, DEFAULT_BOUND)
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    let label = format!("S{n}");
    if n < 2 {
        return build(1, vec![], label, DEFAULT_BOUND);
    }
    let full = cycle(n, &(0..n).collect::<Vec<_>>());
    build(n, vec![full, cycle(n, &[0, 1])], label, DEFAULT_BOUND)
}

pub fn cyclic_product(m: usize, n: usize) -> Result<FiniteGroup> {
    let deg = (m + n).max(1);
    let mut gens = Vec::new();
    if m > 1 {
        gens.push(cycle(deg, &(0..m).collect::<Vec<_>>()));
    }
    if n > 1 {
        gens.push(cycle(deg, &(m..m + n).collect::<Vec<_>>()));
    }
    build(deg, gens, format!("C{m}xC{n}"), DEFAULT_BOUND)
}

/// `C_n ⋊ C_{2^k}` with the generator of `C_{2^k}` acting by inversion.
pub fn cyclic_by_two_power(n: usize, k: u32) -> Result<FiniteGroup> {
    if n < 2 || k == 0 {
        return Err(Error::UnknownGroup(format!("SDP {n} {k}")));
    }
    let t = 1usize << k;
    let deg = n + t;
    let x = cycle(deg, &(0..n).collect::<Vec<_>>());
    let mut y: Perm = (0..deg as u32).collect();
    for i in 0..n {
        y[i] = ((n - i) % n) as u32;
    }
    if t > 1 {
        for i in 0..t {
            y[n + i] = (n + (i + 1) % t) as u32;
        }
    }
    build(deg, vec![x, y], format!("C{n}:C{t}"), DEFAULT_BOUND)
}

/// SL_2(F_3) acting on the 8 nonzero vectors of F_3^2.
pub fn sl2f3() -> Result<FiniteGroup> {
    let pts: Vec<(i64, i64)> = (0..9).map(|k| (k / 3, k % 3)).filter(|&v| v != (0, 0)).collect();
    let pos = |v: (i64, i64)| pts.iter().position(|&w| w == v).unwrap() as u32;
    let act = |m: [[i64; 2]; 2]| -> Perm {
        pts.iter()
            .map(|&(a, b)| {
                pos(((m[0][0] * a + m[0][1] * b).rem_euclid(3), (m[1][0] * a + m[1][1] * b).rem_euclid(3)))
            })
            .collect()
    };
    build(8, vec![act([[1, 1], [0, 1]]), act([[0, 2], [1, 0]])], "SL2F3".into(), DEFAULT_BOUND)
}

/// C7 ⋊ C3.
pub fn f21() -> Result<FiniteGroup> {
    let x: Perm = (0..7).map(|i| ((i + 1) % 7) as u32).collect();
    let y: Perm = (0..7).map(|i| ((2 * i) % 7) as u32).collect();
    build(7, vec![x, y], "C7:C3".into(), DEFAULT_BOUND)
}

/// Heisenberg group of order 27 acting on F_3^2.
pub fn heisenberg27() -> Result<FiniteGroup> {
    let idx = |a: usize, b: usize| (3 * (a % 3) + b % 3) as u32;
    let x: Perm = (0..9).map(|k| idx(k / 3 + 1, k % 3)).collect();
    let y: Perm = (0..9).map(|k| idx(k / 3, k % 3 + k / 3)).collect();
    build(9, vec![x, y], "He27".into(), DEFAULT_BOUND)
}

fn split_token(tok: &str) -> (String, Option<usize>) {
    let pos = tok.find(|c: char| c.is_ascii_digit()).unwrap_or(tok.len());
    let (a, b) = tok.split_at(pos);
    (a.to_ascii_uppercase(), b.parse().ok())
}

/// Parse a catalog name such as `D 12`, `D12`, `SL2F3`, `CxC 2 6`, `C6xC2`,
/// `SDP 3 4` (C3 ⋊ C4), `F21`, `He27`.
pub fn named_group(spec: &str) -> Result<FiniteGroup> {
    let unknown = || Error::UnknownGroup(spec.trim().to_string());
    let toks: Vec<&str> = spec.split_whitespace().collect();
    if toks.is_empty() {
        return Err(unknown());
    }
    let head_upper = toks[0].to_ascii_uppercase();
    match head_upper.as_str() {
        "SL2F3" | "SL(2,3)" => return sl2f3(),
        "F21" | "C7:C3" => return f21(),
        "HE27" | "HEIS27" => return heisenberg27(),
        "V4" | "V" => return cyclic_product(2, 2),
        _ => {}
    }
    if let Some((a, b)) = head_upper.split_once('X') {
        if toks.len() == 1 {
            let (pa, m) = split_token(a);
            let (pb, n) = split_token(b);
            if pa == "C" && pb == "C" {
                if let (Some(m), Some(n)) = (m, n) {
                    return cyclic_product(m, n);
                }
            }
        }
    }
    let nums: Vec<usize> = toks[1..].iter().map(|t| t.parse().map_err(|_| unknown())).collect::<Result<_>>()?;
    let (name, inline) = split_token(toks[0]);
    let mut args = Vec::new();
    if let Some(k) = inline {
        args.push(k);
    }
    args.extend(nums);
    match (name.as_str(), args.as_slice()) {
        ("C", [n]) if *n >= 1 => cyclic(*n),
        ("D", [n]) => dihedral(*n),
        ("Q", [n]) => dicyclic(*n),
        ("A", [n]) if *n >= 1 => alternating(*n),
        ("S", [n]) if *n >= 1 => symmetric(*n),
        ("CXC", [m, n]) if *m >= 1 && *n >= 1 => cyclic_product(*m, *n),
        ("SDP", [n, t]) if t.is_power_of_two() && *t >= 2 => {
            cyclic_by_two_power(*n, t.trailing_zeros())
        }
        _ => Err(unknown()),
    }
}

/// The catalog groups of order at most `max_order`, used by the property suites.
pub fn catalog(max_order: usize) -> Vec<FiniteGroup> {
    let specs = [
        "C 1", "C 2", "C 3", "C 4", "C 5", "C 6", "C 7", "C 8", "C 9", "C 10", "C 12", "C 15",
        "CxC 2 2", "CxC 2 4", "CxC 2 6", "CxC 3 3", "D 6", "D 8", "D 10", "D 12",
        "D 14", "D 16", "D 18", "D 20", "D 24", "Q 8", "Q 12", "Q 16", "A 4", "S 4", "SL2F3",
        "SDP 3 4", "SDP 3 8", "SDP 5 4", "F21", "He27", "A 5",
    ];
    let mut out: Vec<FiniteGroup> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for s in specs {
        let g = named_group(s).expect("catalog entry");
        if g.order() <= max_order && seen.insert(g.label().unwrap_or("").to_string()) {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        let cases = [
            ("D 6", 6),
            ("D6", 6),
            ("D 4", 4),
            ("SL2F3", 24),
            ("A5", 60),
            ("Q8", 8),
            ("Q 12", 12),
            ("CxC 2 6", 12),
            ("C2xC6", 12),
            ("SDP 3 4", 12),
            ("SDP 3 8", 24),
            ("F21", 21),
            ("He27", 27),
            ("S 4", 24),
            ("C 1", 1),
        ];
        for (s, n) in cases {
            assert_eq!(named_group(s).unwrap().order(), n, "{s}");
        }
        assert_eq!(named_group("X 3").unwrap_err().code(), "UnknownGroup");
    }

    #[test]
    fn group_structure_labels() {
        let q8 = named_group("Q 8").unwrap();
        assert_eq!(q8.conjugacy_classes().len(), 5);
        let he = heisenberg27().unwrap();
        assert_eq!(he.exponent(), 3);
        assert!(!he.is_abelian());
        let sdp = named_group("SDP 3 4").unwrap();
        assert_eq!(sdp.exponent(), 12);
        assert_eq!(sl2f3().unwrap().conjugacy_classes().len(), 7);
    }
}
