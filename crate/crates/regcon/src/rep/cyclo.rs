//! Cyclotomic integers Z[ζ_e] in the power basis 1, ζ, …, ζ^{φ(e)-1}.

/// Arithmetic context for the `e`-th cyclotomic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloField {
    pub e: usize,
    /// Coefficients of Φ_e, constant term first, monic.
    phi: Vec<i64>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd] / den[dd];
        q[k] = c;
        for (j, &d) in den.iter().enumerate() {
            r[k + j] -= c * d;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn cyclotomic_poly(e: usize) -> Vec<i64> {
    let mut p = vec![0i64; e + 1];
    p[0] = -1;
    p[e] = 1;
    for d in crate::arith::divisors(e as u64) {
        let d = d as usize;
        if d < e {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

impl CycloField {
    pub fn new(e: usize) -> Self {
        CycloField { e, phi: cyclotomic_poly(e.max(1)) }
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    /// Reduce a polynomial in ζ (any length) modulo Φ_e and x^e - 1.
    pub fn reduce(&self, full: &[i64]) -> Vec<i64> {
        let e = self.e.max(1);
        let mut r = vec![0i64; e];
        for (j, &c) in full.iter().enumerate() {
            r[j % e] += c;
        }
        let d = self.degree();
        for k in (d..e).rev() {
            let c = r[k];
            if c == 0 {
                continue;
            }
            for (j, &p) in self.phi.iter().enumerate() {
                r[k - d + j] -= c * p;
            }
        }
        r.truncate(d);
        r
    }

    pub fn from_int(&self, n: i64) -> Vec<i64> {
        let mut v = vec![0; self.degree()];
        v[0] = n;
        v
    }

    /// `Σ m_j ζ^j` for a multiplicity vector indexed by exponent.
    pub fn from_exponents(&self, m: &[i64]) -> Vec<i64> {
        self.reduce(m)
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut full = vec![0i64; a.len() + b.len()];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                full[i + j] += x * y;
            }
        }
        self.reduce(&full)
    }

    /// Image under ζ ↦ ζ^k.
    pub fn galois(&self, a: &[i64], k: usize) -> Vec<i64> {
        let e = self.e.max(1);
        let mut full = vec![0i64; e];
        for (j, &c) in a.iter().enumerate() {
            full[(j * k) % e] += c;
        }
        self.reduce(&full)
    }

    pub fn conj(&self, a: &[i64]) -> Vec<i64> {
        let e = self.e.max(1);
        self.galois(a, e - 1)
    }

    pub fn as_integer(&self, a: &[i64]) -> Option<i64> {
        if a[1..].iter().all(|&x| x == 0) {
            Some(a[0])
        } else {
            None
        }
    }

    /// Human-readable form such as `-1 + 2z^3`.
    pub fn format(&self, a: &[i64]) -> String {
        let mut parts = Vec::new();
        for (j, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = match j {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{j}"),
            };
            let coeff = if j > 0 && c.abs() == 1 { String::new() } else { c.abs().to_string() };
            parts.push((c < 0, format!("{coeff}{mono}")));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (neg, body)) in parts.into_iter().enumerate() {
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }
}
