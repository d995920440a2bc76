//! Text and JSON notation for group elements, tuples and generator subsets.
//!
//! Text form of an element: factors joined by `*`, each one of
//! `e`, `t[c_1,…,c_n]` (translation in simple-coroot coordinates, rationals
//! allowed) or a comma separated word in affine generator indices.
//!
//! JSON form: `{"lambda": [...], "w": "i,j,…"}` with `lambda` in lattice
//! coordinates of `X_*` and `w` a reduced word for the finite part, using the
//! affine indices `1..=n` of the finite simple reflections.

use num_rational::Rational64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::weyl::{format_word, AffineWeylGroup, WeylElement};

fn finite_word(g: &AffineWeylGroup, x: &WeylElement) -> Vec<usize> {
    g.finite().word(x.finite_index()).iter().map(|j| j + 1).collect()
}

pub fn element_to_json(g: &AffineWeylGroup, x: &WeylElement) -> Value {
    json!({
        "lambda": g.lambda(x),
        "w": format_word(&finite_word(g, x)),
    })
}

pub fn element_from_json(g: &AffineWeylGroup, v: &Value) -> Result<WeylElement> {
    let lambda: Vec<i64> = v
        .get("lambda")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("element JSON needs a \"lambda\" array".into()))?
        .iter()
        .map(|c| c.as_i64().ok_or_else(|| Error::Parse(format!("bad coordinate {c}"))))
        .collect::<Result<_>>()?;
    let w = v
        .get("w")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("element JSON needs a \"w\" string".into()))?;
    let word = g.parse_word(w)?;
    if word.contains(&0) {
        return Err(Error::Parse("finite part may only use indices 1..=n".into()));
    }
    let finite = g.finite().from_word(&word.iter().map(|i| i - 1).collect::<Vec<_>>());
    g.from_parts(&lambda, finite)
}

fn format_rational(r: &Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form, accepted back by [`parse_element`].
pub fn format_element(g: &AffineWeylGroup, x: &WeylElement) -> String {
    let lambda = g.lambda(x);
    let mut parts = Vec::new();
    if lambda.iter().any(|&c| c != 0) {
        let coords = g.datum().coroot_coords(lambda).expect("rank matches");
        let coords: Vec<String> = coords.iter().map(format_rational).collect();
        parts.push(format!("t[{}]", coords.join(",")));
    }
    let word = finite_word(g, x);
    if !word.is_empty() {
        parts.push(format_word(&word));
    }
    if parts.is_empty() {
        "e".to_string()
    } else {
        parts.join("*")
    }
}

fn parse_translation(g: &AffineWeylGroup, body: &str) -> Result<WeylElement> {
    let coords: Vec<Rational64> = body
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<Rational64>()
                .map_err(|_| Error::Parse(format!("bad coordinate {t:?}")))
        })
        .collect::<Result<_>>()?;
    let lambda = g.datum().from_coroot_coords(&coords)?;
    g.translation(&lambda)
}

pub fn parse_element(g: &AffineWeylGroup, s: &str) -> Result<WeylElement> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    let mut x = g.identity();
    for factor in s.split('*') {
        let factor = factor.trim();
        let y = if factor == "e" {
            g.identity()
        } else if let Some(body) = factor.strip_prefix("t[").and_then(|r| r.strip_suffix(']')) {
            parse_translation(g, body)?
        } else if factor.starts_with('t') {
            return Err(Error::Parse(format!("bad translation {factor:?}")));
        } else {
            g.from_word(&g.parse_word(factor)?)?
        };
        x = g.multiply(&x, &y);
    }
    Ok(x)
}

/// Splits a tuple of elements. Entries are separated by `;` if one is present,
/// otherwise by commas outside brackets (so `1,0` is a pair of reflections and
/// `1,0;1` a pair of words).
pub fn parse_tuple(g: &AffineWeylGroup, s: &str) -> Result<Vec<WeylElement>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty tuple".into()));
    }
    let items: Vec<String> = if s.contains(';') {
        s.split(';').map(str::to_string).collect()
    } else {
        let mut items = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        for ch in s.chars() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                _ => {}
            }
            if ch == ',' && depth == 0 {
                items.push(std::mem::take(&mut cur));
            } else {
                cur.push(ch);
            }
        }
        if depth != 0 {
            return Err(Error::Parse(format!("unbalanced brackets in {s:?}")));
        }
        items.push(cur);
        items
    };
    items.iter().map(|t| parse_element(g, t)).collect()
}

/// `""` is the empty set, `spherical` the finite simple reflections, anything
/// else a comma separated index list.
pub fn parse_subset(g: &AffineWeylGroup, s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s == "spherical" {
        return Ok((1..=g.rank()).collect());
    }
    let mut v = g.parse_word(s)?;
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::GroupSpec;

    fn group(spec: &str) -> AffineWeylGroup {
        AffineWeylGroup::new(spec.parse::<GroupSpec>().unwrap().build().unwrap()).unwrap()
    }

    #[test]
    fn text_round_trip() {
        for spec in ["A1:sc", "A1:adjoint", "B2:adjoint", "A2:sc", "G2:sc"] {
            let g = group(spec);
            let x = g.from_word(&[0, 1, 0, 2.min(g.rank())]).unwrap();
            for y in g.lower_interval(&x).unwrap() {
                let s = format_element(&g, &y);
                assert_eq!(parse_element(&g, &s).unwrap(), y, "{spec} {s}");
                assert_eq!(element_from_json(&g, &element_to_json(&g, &y)).unwrap(), y);
            }
        }
    }

    #[test]
    fn examples() {
        let g = group("B2:adjoint");
        let mu = parse_element(&g, "t[1,1]").unwrap();
        assert_eq!(g.lambda(&mu), &[0, 1]);
        assert_eq!(g.length(&mu), 4);
        let a = group("A1:adjoint");
        let tau = parse_element(&a, "t[1/2]*1").unwrap();
        assert!(a.is_omega(&tau) && !tau.is_identity());
        assert_eq!(format_element(&a, &a.identity()), "e");
        assert!(parse_element(&a, "t[1/3]").is_err());
        assert!(parse_element(&a, "2").is_err());
    }

    #[test]
    fn tuples_and_subsets() {
        let g = group("B2:adjoint");
        assert_eq!(parse_tuple(&g, "t[1,1],t[1,1],t[1,1]").unwrap().len(), 3);
        assert_eq!(parse_tuple(&g, "1,0").unwrap().len(), 2);
        let t = parse_tuple(&g, "1,0;1").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(g.length(&t[0]), 2);
        assert_eq!(parse_subset(&g, "").unwrap(), Vec::<usize>::new());
        assert_eq!(parse_subset(&g, "spherical").unwrap(), vec![1, 2]);
        assert_eq!(parse_subset(&g, "2,0,2").unwrap(), vec![0, 2]);
    }
}
