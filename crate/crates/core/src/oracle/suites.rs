use std::collections::BTreeMap;

use num_bigint::BigInt;
use rustc_hash::FxHashSet;
use serde_json::{json, Value};

use super::{all_perms, bott_samelson_count, perm_from_word, perm_word, subword_bruhat, FiniteGroupData, Perm};
use crate::error::Result;
use crate::hecke::structure_constants;
use crate::notation::format_element;
use crate::paving::{iwahori_fiber_table, Mode};
use crate::poly::PolyQ;
use crate::rootdata::{GroupSpec, Isogeny, RootDatum, Series};
use crate::weyl::{format_word, AffineWeylGroup, WeylElement};

/// Outcome of one verification suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub checked: usize,
    /// One line per counterexample.
    pub failures: Vec<String>,
}

impl Report {
    fn new(name: &str) -> Self {
        Report {
            name: name.to_string(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.name,
            "checked": self.checked,
            "passed": self.passed(),
            "failures": self.failures,
        })
    }
}

fn type_a(n: usize) -> Result<AffineWeylGroup> {
    AffineWeylGroup::new(RootDatum::build(Series::A, n - 1, Isogeny::SimplyConnected)?)
}

fn perm_element(g: &AffineWeylGroup, w: &Perm) -> Result<WeylElement> {
    g.from_word(&perm_word(w))
}

fn element_perm(g: &AffineWeylGroup, n: usize, x: &WeylElement) -> Perm {
    let word: Vec<usize> = g.finite().word(x.finite_index()).iter().map(|j| j + 1).collect();
    perm_from_word(n, &word)
}

fn words(letters: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| {
                (1..=letters).map(move |i| {
                    let mut w = w.clone();
                    w.push(i);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Matrix gallery counts against the Iwahori fiber polynomials at `q = p`,
/// for every word over the finite simple reflections of `SL_n` up to the
/// given length, every target and both modes.
pub fn verify_bott_samelson(cases: &[(usize, usize)], primes: &[u32]) -> Result<Report> {
    let mut report = Report::new("bott-samelson");
    for &(n, max_len) in cases {
        let g = type_a(n)?;
        let perms = all_perms(n);
        for word in words(n - 1, max_len) {
            let tuple: Vec<WeylElement> = word.iter().map(|&i| g.simple_reflection(i)).collect::<Result<_>>()?;
            for mode in [Mode::Uncompactified, Mode::Compactified] {
                let table: BTreeMap<WeylElement, PolyQ> = iwahori_fiber_table(&g, &tuple, mode)?;
                for v in &perms {
                    let poly = table.get(&perm_element(&g, v)?).cloned().unwrap_or_default();
                    for &p in primes {
                        let count = bott_samelson_count(n, &word, v, p, mode)?;
                        let expected = poly.eval_i64(i64::from(p));
                        report.check(BigInt::from(count) == expected, || {
                            format!(
                                "SL{n} F{p} {mode:?} word [{}] v {v:?}: matrices {count}, recursion {expected} ({poly})",
                                format_word(&word)
                            )
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Double coset counts in `SL_n(F_p)` against route-B structure constants at
/// `q = p`, for every parabolic, every pair of double cosets.
pub fn verify_structure_constants(cases: &[(usize, u32)]) -> Result<Report> {
    let mut report = Report::new("finite-structure-constants");
    for &(n, p) in cases {
        let g = type_a(n)?;
        let data = FiniteGroupData::new(n, p)?;
        for mask in 0u32..1 << (n - 1) {
            let s_p: Vec<usize> = (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let pd = g.parabolic_data(&s_p)?;
            let reps: Vec<WeylElement> = {
                let mut set = FxHashSet::default();
                for w in all_perms(n) {
                    set.insert(g.double_max(&perm_element(&g, &w)?, &pd));
                }
                g.sorted(set)
            };
            for w1 in &reps {
                for w2 in &reps {
                    let table = structure_constants(&g, w1, w2, &pd)?;
                    let route_b: BTreeMap<Perm, BigInt> = table
                        .constants
                        .iter()
                        .map(|(v, c)| (element_perm(&g, n, v), c.eval_i64(i64::from(p))))
                        .filter(|(_, c)| *c != BigInt::from(0))
                        .collect();
                    let oracle: BTreeMap<Perm, BigInt> = data
                        .structure_constants(&s_p, &element_perm(&g, n, w1), &element_perm(&g, n, w2))?
                        .into_iter()
                        .map(|(v, c)| (v, BigInt::from(c)))
                        .collect();
                    report.check(route_b == oracle, || {
                        format!(
                            "SL{n} F{p} S_P {s_p:?} w1 {} w2 {}: matrices {oracle:?}, Hecke {route_b:?}",
                            format_element(&g, w1),
                            format_element(&g, w2)
                        )
                    });
                }
            }
        }
    }
    Ok(report)
}

/// `Ω`, generated by the length-zero parts of the lattice translations.
fn omega(g: &AffineWeylGroup) -> Result<Vec<WeylElement>> {
    let mut set: FxHashSet<WeylElement> = FxHashSet::default();
    set.insert(g.identity());
    let mut gens = Vec::new();
    for k in 0..g.rank() {
        let mut e = vec![0; g.rank()];
        e[k] = 1;
        gens.push(g.omega_part(&g.translation(&e)?));
    }
    loop {
        let next: Vec<WeylElement> = set
            .iter()
            .flat_map(|x| gens.iter().map(move |t| (x, t)))
            .map(|(x, t)| g.multiply(x, t))
            .filter(|y| !set.contains(y))
            .collect();
        if next.is_empty() {
            return Ok(g.sorted(set));
        }
        set.extend(next);
    }
}

/// All elements of length at most `max_len`.
pub(crate) fn elements_up_to(g: &AffineWeylGroup, max_len: usize) -> Result<Vec<WeylElement>> {
    let mut set: FxHashSet<WeylElement> = omega(g)?.into_iter().collect();
    let mut layer: Vec<WeylElement> = set.iter().copied().collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for x in &layer {
            for i in 0..g.num_generators() {
                if !g.is_right_descent(x, i) {
                    let y = g.right_mul_simple(x, i);
                    if set.insert(y) {
                        next.push(y);
                    }
                }
            }
        }
        layer = next;
    }
    Ok(g.sorted(set))
}

/// `bruhat_leq` against exhaustive subwords for all pairs up to a length.
pub fn verify_subword_bruhat(specs: &[&str], max_len: usize) -> Result<Report> {
    let mut report = Report::new("subword-bruhat");
    for spec in specs {
        let g = AffineWeylGroup::new(spec.parse::<GroupSpec>()?.build()?)?;
        let elements = elements_up_to(&g, max_len)?;
        for y in &elements {
            let ly = g.length(y);
            for x in &elements {
                let fast = g.bruhat_leq(x, y);
                // subword products are never longer than y
                let slow = g.length(x) <= ly && subword_bruhat(&g, x, y)?;
                report.check(fast == slow, || {
                    format!(
                        "{spec}: {} <= {}: order {fast}, subwords {slow}",
                        format_element(&g, x),
                        format_element(&g, y)
                    )
                });
            }
        }
    }
    Ok(report)
}

/// The registered suites at their default sizes.
pub fn verify_all() -> Result<Vec<Report>> {
    Ok(vec![
        verify_bott_samelson(&[(2, 5), (3, 4)], &[2, 3])?,
        verify_structure_constants(&[(2, 2), (2, 3), (2, 5), (3, 2), (3, 3)])?,
        verify_subword_bruhat(&["A1:sc", "A1:adjoint", "A2:sc", "A2:adjoint"], 8)?,
    ])
}
