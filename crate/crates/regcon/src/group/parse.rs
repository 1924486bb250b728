//! Group input text: `perm: (1 2 3)(4 5), (1 4)` or `name: D 12`.

use super::{named::named_group, FiniteGroup, Perm};
use crate::{Error, Result};

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

/// Parse a list of cycle-notation permutations on points `1..n`.
/// Returns the degree (largest point mentioned) and the generators.
pub fn parse_generators(text: &str, offset: usize) -> Result<(usize, Vec<Perm>)> {
    let mut gens_cycles: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut degree = 0usize;
    let bytes = text.as_bytes();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == bytes.len() {
        return Ok((0, Vec::new()));
    }
    loop {
        skip_ws(&mut i);
        let mut cycles = Vec::new();
        if i >= bytes.len() || bytes[i] != b'(' {
            return Err(perr(offset + i, "expected '('"));
        }
        while i < bytes.len() && bytes[i] == b'(' {
            i += 1;
            let mut cyc = Vec::new();
            loop {
                skip_ws(&mut i);
                if i >= bytes.len() {
                    return Err(perr(offset + i, "unterminated cycle"));
                }
                if bytes[i] == b')' {
                    i += 1;
                    break;
                }
                if bytes[i] == b',' {
                    i += 1;
                    continue;
                }
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if start == i {
                    return Err(perr(offset + i, "expected a point"));
                }
                let p: usize = text[start..i]
                    .parse()
                    .map_err(|_| perr(offset + start, "point out of range"))?;
                if p == 0 {
                    return Err(perr(offset + start, "points are numbered from 1"));
                }
                if cyc.contains(&(p - 1)) {
                    return Err(Error::InvalidPermutation(format!("point {p} repeated in a cycle")));
                }
                degree = degree.max(p);
                cyc.push(p - 1);
            }
            cycles.push(cyc);
            skip_ws(&mut i);
        }
        gens_cycles.push(cycles);
        skip_ws(&mut i);
        if i == bytes.len() {
            break;
        }
        if bytes[i] != b',' {
            return Err(perr(offset + i, "expected ',' between generators"));
        }
        i += 1;
    }
    let degree = degree.max(1);
    let gens = gens_cycles
        .into_iter()
        .map(|cycles| {
            // cycles compose left to right
            let mut p: Perm = (0..degree as u32).collect();
            for cyc in cycles {
                let mut c: Perm = (0..degree as u32).collect();
                for (k, &a) in cyc.iter().enumerate() {
                    c[a] = cyc[(k + 1) % cyc.len()] as u32;
                }
                p = p.iter().map(|&x| c[x as usize]).collect();
            }
            p
        })
        .collect();
    Ok((degree, gens))
}

/// Parse a group specification. Bare names without a prefix are accepted.
pub fn parse_group(text: &str, bound: usize) -> Result<FiniteGroup> {
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    if let Some(rest) = trimmed.strip_prefix("perm:") {
        let (deg, gens) = parse_generators(rest, lead + 5)?;
        return FiniteGroup::from_permutations(deg.max(1), &pad(&gens, deg.max(1)), bound);
    }
    let body = trimmed.strip_prefix("name:").unwrap_or(trimmed);
    if body.trim_start().starts_with('(') {
        let (deg, gens) = parse_generators(body, lead)?;
        return FiniteGroup::from_permutations(deg.max(1), &pad(&gens, deg.max(1)), bound);
    }
    let g = named_group(body)?;
    if g.order() > bound {
        return Err(Error::GroupTooLarge { bound });
    }
    Ok(g)
}

fn pad(gens: &[Perm], degree: usize) -> Vec<Perm> {
    gens.iter()
        .map(|g| {
            let mut p = g.clone();
            p.extend(g.len() as u32..degree as u32);
            p
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_BOUND;

    #[test]
    fn perm_specs() {
        assert_eq!(parse_group("perm: (1 2 3), (1 2)", DEFAULT_BOUND).unwrap().order(), 6);
        assert_eq!(parse_group("perm: (1 2 3 4), (1 3)", DEFAULT_BOUND).unwrap().order(), 8);
        assert_eq!(parse_group("perm: (1 2 3)(4 5), (1 4)", DEFAULT_BOUND).unwrap().order(), 120);
        assert_eq!(parse_group("perm:", DEFAULT_BOUND).unwrap().order(), 1);
        assert_eq!(parse_group("name: D 12", DEFAULT_BOUND).unwrap().order(), 12);
        assert_eq!(parse_group("A5", DEFAULT_BOUND).unwrap().order(), 60);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_group("perm: (1 2, (3", DEFAULT_BOUND) {
            Err(Error::Parse { pos, .. }) => assert!(pos >= 6),
            other => panic!("unexpected {other:?}"),
        }
        match parse_group("perm: (1 2) x", DEFAULT_BOUND) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 12),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_group("perm: (1 1)", DEFAULT_BOUND).unwrap_err().code(), "InvalidPermutation");
    }
}
