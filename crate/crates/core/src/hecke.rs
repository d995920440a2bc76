//! The Iwahori–Hecke algebra of `(W, S_aff)` over `Z[q]` and parahoric
//! computations done inside it.
//!
//! Multiplication uses `T_x T_s = T_{xs}` if `xs > x`, else
//! `q T_{xs} + (q-1) T_x`, and `T_x T_τ = T_{xτ}` for `τ ∈ Ω`. A parahoric
//! basis element `f_w` is the coset sum `Σ_{x ∈ W_P w W_P} T_x`; dividing a
//! product of `r` of them by `π_P^{r-1}` gives the convolution of the
//! normalized characteristic functions.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::notation::{element_to_json, format_element};
use crate::poly::PolyQ;
use crate::weyl::{AffineWeylGroup, ParabolicData, WeylElement};

/// A finite sum `Σ c_x(q) T_x` with nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HeckeElement {
    terms: BTreeMap<WeylElement, PolyQ>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `T_x`.
    pub fn basis(x: WeylElement) -> Self {
        let mut h = Self::zero();
        h.add_term(x, &PolyQ::one());
        h
    }

    pub fn add_term(&mut self, x: WeylElement, c: &PolyQ) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(x).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&x);
        }
    }

    pub fn add(&mut self, other: &HeckeElement) {
        for (x, c) in &other.terms {
            self.add_term(*x, c);
        }
    }

    pub fn scale(&self, c: &PolyQ) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (x, d) in &self.terms {
            out.add_term(*x, &(d * c));
        }
        out
    }

    pub fn coeff(&self, x: &WeylElement) -> PolyQ {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> &BTreeMap<WeylElement, PolyQ> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn div_exact(&self, d: &PolyQ) -> Result<HeckeElement> {
        let mut out = HeckeElement::zero();
        for (x, c) in &self.terms {
            out.add_term(*x, &c.div_exact(d)?);
        }
        Ok(out)
    }

    /// Terms sorted by `(length, element)`, serialized as a list.
    pub fn to_json(&self, g: &AffineWeylGroup) -> Value {
        let xs = g.sorted(self.terms.keys().copied());
        Value::Array(
            xs.iter()
                .map(|x| {
                    json!({
                        "element": element_to_json(g, x),
                        "coeffs": self.terms[x].to_json()["coeffs"],
                    })
                })
                .collect(),
        )
    }
}

/// `h · T_{s_i}`.
pub fn mul_simple(g: &AffineWeylGroup, h: &HeckeElement, i: usize) -> HeckeElement {
    let q = PolyQ::q();
    let qm1 = PolyQ::q_minus_one();
    let mut out = HeckeElement::zero();
    for (x, c) in &h.terms {
        let xs = g.right_mul_simple(x, i);
        if g.is_right_descent(x, i) {
            out.add_term(xs, &(c * &q));
            out.add_term(*x, &(c * &qm1));
        } else {
            out.add_term(xs, c);
        }
    }
    out
}

/// `h · T_y`.
pub fn mul_basis(g: &AffineWeylGroup, h: &HeckeElement, y: &WeylElement) -> HeckeElement {
    let (tau, word) = g.reduced_word(y);
    let mut out = HeckeElement::zero();
    for (x, c) in &h.terms {
        out.add_term(g.multiply(x, &tau), c);
    }
    // T_y = T_τ T_{s_{i1}} ⋯ T_{s_{iℓ}}
    for i in word {
        out = mul_simple(g, &out, i);
    }
    out
}

pub fn hecke_product(g: &AffineWeylGroup, h1: &HeckeElement, h2: &HeckeElement) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for (y, c) in &h2.terms {
        out.add(&mul_basis(g, h1, y).scale(c));
    }
    out
}

/// `Σ_{x ∈ W_P w W_P} T_x` (open) or `Σ_{x ≤ max_rep(w)} T_x` (closed).
pub fn parahoric_element(
    g: &AffineWeylGroup,
    w: &WeylElement,
    p: &ParabolicData,
    closed: bool,
) -> Result<HeckeElement> {
    let support = if closed {
        g.lower_interval(&g.double_max(w, p))?
    } else {
        g.double_coset(w, p)
    };
    let mut h = HeckeElement::zero();
    for x in support {
        h.add_term(x, &PolyQ::one());
    }
    Ok(h)
}

/// `π_P(q) = Σ_{u ∈ W_P} q^{ℓ(u)}`.
pub fn poincare(p: &ParabolicData) -> PolyQ {
    let coeffs: Vec<i64> = p.length_counts().iter().map(|&c| c as i64).collect();
    PolyQ::from_coeffs(&coeffs)
}

/// The structure constants `c^v_{w_1, w_2}` of `f_{w_1} * f_{w_2}`, keyed by
/// the maximal representative `v` of each double coset in the support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstantTable {
    pub w1: WeylElement,
    pub w2: WeylElement,
    pub generators: Vec<usize>,
    pub constants: BTreeMap<WeylElement, PolyQ>,
}

impl StructureConstantTable {
    pub fn get(&self, v: &WeylElement) -> PolyQ {
        self.constants.get(v).cloned().unwrap_or_default()
    }

    /// As a parahoric element `Σ_v c^v f_v`, expanded in the Iwahori basis.
    pub fn to_hecke(&self, g: &AffineWeylGroup, p: &ParabolicData) -> Result<HeckeElement> {
        let mut h = HeckeElement::zero();
        for (v, c) in &self.constants {
            h.add(&parahoric_element(g, v, p, false)?.scale(c));
        }
        Ok(h)
    }

    pub fn to_json(&self, g: &AffineWeylGroup) -> Value {
        let mut constants = Map::new();
        for (v, c) in &self.constants {
            constants.insert(format_element(g, v), c.to_json());
        }
        json!({
            "w1": format_element(g, &self.w1),
            "w2": format_element(g, &self.w2),
            "SP": self.generators,
            "constants": constants,
        })
    }
}

/// Groups the terms of `h` by double coset, checking that the coefficient is
/// constant on each one.
pub fn collect_double_cosets(
    g: &AffineWeylGroup,
    h: &HeckeElement,
    p: &ParabolicData,
) -> Result<BTreeMap<WeylElement, PolyQ>> {
    let mut out: BTreeMap<WeylElement, PolyQ> = BTreeMap::new();
    let mut seen = 0usize;
    for (x, c) in &h.terms {
        let v = g.double_max(x, p);
        if out.contains_key(&v) {
            continue;
        }
        for y in g.double_coset(&v, p) {
            let cy = h.coeff(&y);
            if cy != *c {
                return Err(Error::Consistency(format!(
                    "coefficient not constant on the double coset of {}: {} at {} vs {} at {}",
                    format_element(g, &v),
                    c,
                    format_element(g, x),
                    cy,
                    format_element(g, &y)
                )));
            }
            seen += 1;
        }
        out.insert(v, c.clone());
    }
    debug_assert_eq!(seen, h.len());
    Ok(out)
}

pub fn structure_constants(
    g: &AffineWeylGroup,
    w1: &WeylElement,
    w2: &WeylElement,
    p: &ParabolicData,
) -> Result<StructureConstantTable> {
    let f1 = parahoric_element(g, w1, p, false)?;
    let f2 = parahoric_element(g, w2, p, false)?;
    let h = hecke_product(g, &f1, &f2).div_exact(&poincare(p))?;
    Ok(StructureConstantTable {
        w1: g.double_max(w1, p),
        w2: g.double_max(w2, p),
        generators: p.generators().to_vec(),
        constants: collect_double_cosets(g, &h, p)?,
    })
}

/// `π_P^{-(r-1)} Π_i f_{w_i}` as an Iwahori-level element; the convolution
/// function of the tuple.
pub fn convolution_element(
    g: &AffineWeylGroup,
    tuple: &[WeylElement],
    p: &ParabolicData,
    closed: &[bool],
) -> Result<HeckeElement> {
    if tuple.is_empty() {
        return Err(Error::InvalidArgument("empty tuple".into()));
    }
    if closed.len() != tuple.len() {
        return Err(Error::DimensionMismatch {
            expected: tuple.len(),
            got: closed.len(),
        });
    }
    let pi = poincare(p);
    let mut h = parahoric_element(g, &tuple[0], p, closed[0])?;
    for (w, &c) in tuple.iter().zip(closed).skip(1) {
        let f = parahoric_element(g, w, p, c)?;
        h = hecke_product(g, &h, &f).div_exact(&pi)?;
    }
    Ok(h)
}

/// The coefficient of `T_x` in [`convolution_element`].
pub fn convolution_value(
    g: &AffineWeylGroup,
    tuple: &[WeylElement],
    p: &ParabolicData,
    closed: &[bool],
    x: &WeylElement,
) -> Result<PolyQ> {
    Ok(convolution_element(g, tuple, p, closed)?.coeff(x))
}
