//! Brute-force verifiers, independent of the recursions they check.
//!
//! * Bott–Samelson fibers of finite flag varieties of `SL_n(F_p)`, by
//!   enumerating matrix galleries.
//! * Structure constants of finite parabolic Hecke algebras, by literal
//!   double coset counting in `SL_n(F_p)`.
//! * Bruhat order by exhaustive subwords.

mod ff;
mod suites;

use std::collections::{BTreeMap, BTreeSet};

pub use ff::{all_perms, bruhat_cell, perm_from_word, perm_word, FFMatrix, Perm, SUPPORTED_PRIMES};
pub use suites::{verify_all, verify_bott_samelson, verify_structure_constants, verify_subword_bruhat, Report};

use crate::error::{Error, Result};
use crate::paving::Mode;
use crate::weyl::{AffineWeylGroup, WeylElement};

/// Largest number of galleries [`bott_samelson_count`] will enumerate.
pub const GALLERY_CAP: u64 = 10_000_000;

/// Longest `y` accepted by [`subword_bruhat`].
pub const SUBWORD_CAP: usize = 16;

fn check_n(n: usize) -> Result<()> {
    if (2..=3).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("matrix size {n} not in {{2, 3}}")))
    }
}

fn galleries(n: usize, p: u32, word: &[usize], mode: Mode) -> Result<Vec<FFMatrix>> {
    check_n(n)?;
    let choices = u64::from(p) + u64::from(mode == Mode::Compactified);
    let total = choices.checked_pow(word.len() as u32).unwrap_or(u64::MAX);
    if total > GALLERY_CAP {
        return Err(Error::LimitExceeded(format!("{total} galleries exceed the cap of {GALLERY_CAP}")));
    }
    let mut layer = vec![FFMatrix::identity(n, p)?];
    for &i in word {
        if i == 0 || i >= n {
            return Err(Error::BadGenerator { index: i, count: n });
        }
        let s = FFMatrix::s_dot(n, p, i)?;
        // coset representatives of B s B / B, plus B itself when compactified
        let mut steps: Vec<FFMatrix> = (0..p)
            .map(|x| FFMatrix::root_element(n, p, i, x).map(|u| u.mul(&s)))
            .collect::<Result<_>>()?;
        if mode == Mode::Compactified {
            steps.push(FFMatrix::identity(n, p)?);
        }
        layer = layer
            .iter()
            .flat_map(|g| steps.iter().map(move |st| g.mul(st)))
            .collect();
    }
    Ok(layer)
}

/// Number of galleries `(g_1 B, …, g_r B)` of the given word ending at the
/// point `v̇ B`. Words use 1-based simple reflection indices.
pub fn bott_samelson_count(n: usize, word: &[usize], v: &Perm, p: u32, mode: Mode) -> Result<u64> {
    let v_inv = FFMatrix::lift(n, p, &perm_word(v))?.inverse()?;
    Ok(galleries(n, p, word, mode)?
        .iter()
        .filter(|g| v_inv.mul(g).is_upper_triangular())
        .count() as u64)
}

/// Number of galleries ending anywhere in the orbit `B v B / B`; equals
/// `p^{ℓ(v)}` times [`bott_samelson_count`].
pub fn bott_samelson_orbit_count(n: usize, word: &[usize], v: &Perm, p: u32, mode: Mode) -> Result<u64> {
    let mut count = 0;
    for g in galleries(n, p, word, mode)? {
        if bruhat_cell(&g)? == *v {
            count += 1;
        }
    }
    Ok(count)
}

/// `x ≤ y` iff some subword of a reduced word of `y` multiplies to `x`.
pub fn subword_bruhat(g: &AffineWeylGroup, x: &WeylElement, y: &WeylElement) -> Result<bool> {
    let (tau, word) = g.reduced_word(y);
    if word.len() > SUBWORD_CAP {
        return Err(Error::LimitExceeded(format!(
            "subword test needs length at most {SUBWORD_CAP}, got {}",
            word.len()
        )));
    }
    let gens: Vec<WeylElement> = (0..g.num_generators()).map(|i| g.simple_reflection(i)).collect::<Result<_>>()?;
    Ok((0u32..1 << word.len()).any(|mask| {
        let prod = word
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .fold(tau, |acc, (_, &i)| g.multiply(&acc, &gens[i]));
        prod == *x
    }))
}

fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&j| a[j]).collect()
}

fn inversions(w: &[usize]) -> usize {
    (0..w.len())
        .map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count())
        .sum()
}

/// `SL_n(F_p)` with the Bruhat cell of every `g` and of every `g^{-1} v̇`.
pub struct FiniteGroupData {
    n: usize,
    perms: Vec<Perm>,
    /// `cells[k]` = cell of the `k`-th group element.
    cells: Vec<usize>,
    /// `shifted[k][v]` = cell of `g_k^{-1} v̇`.
    shifted: Vec<Vec<usize>>,
}

impl FiniteGroupData {
    pub fn new(n: usize, p: u32) -> Result<Self> {
        check_n(n)?;
        let group = FFMatrix::special_linear_group(n, p)?;
        let perms = all_perms(n);
        let index = |w: &Perm| perms.iter().position(|x| x == w).expect("permutation");
        let lifts: Vec<FFMatrix> = perms
            .iter()
            .map(|w| FFMatrix::lift(n, p, &perm_word(w)))
            .collect::<Result<_>>()?;
        let mut cells = Vec::with_capacity(group.len());
        let mut shifted = Vec::with_capacity(group.len());
        for g in &group {
            cells.push(index(&bruhat_cell(g)?));
            let gi = g.inverse()?;
            shifted.push(
                lifts
                    .iter()
                    .map(|l| bruhat_cell(&gi.mul(l)).map(|c| index(&c)))
                    .collect::<Result<_>>()?,
            );
        }
        Ok(FiniteGroupData {
            n,
            perms,
            cells,
            shifted,
        })
    }

    pub fn order(&self) -> usize {
        self.cells.len()
    }

    fn parabolic(&self, s_p: &[usize]) -> Result<BTreeSet<Perm>> {
        for &i in s_p {
            if i == 0 || i >= self.n {
                return Err(Error::BadGenerator { index: i, count: self.n });
            }
        }
        let mut set: BTreeSet<Perm> = BTreeSet::from([(0..self.n).collect()]);
        loop {
            let next: BTreeSet<Perm> = set
                .iter()
                .flat_map(|w| s_p.iter().map(move |&i| compose(w, &perm_from_word(w.len(), &[i]))))
                .chain(set.iter().cloned())
                .collect();
            if next.len() == set.len() {
                return Ok(set);
            }
            set = next;
        }
    }

    fn double_coset(&self, wp: &BTreeSet<Perm>, w: &[usize]) -> BTreeSet<Perm> {
        wp.iter()
            .flat_map(|a| wp.iter().map(move |b| compose(&compose(a, w), b)))
            .collect()
    }

    /// `c^v = #{g : g ∈ P w_1 P, g^{-1} v̇ ∈ P w_2 P} / |P|`, keyed by the
    /// longest permutation `v` of each double coset; zeros omitted.
    pub fn structure_constants(&self, s_p: &[usize], w1: &Perm, w2: &Perm) -> Result<BTreeMap<Perm, u64>> {
        let wp = self.parabolic(s_p)?;
        let member = |set: &BTreeSet<Perm>| -> Vec<bool> { self.perms.iter().map(|w| set.contains(w)).collect() };
        let in_p = member(&wp);
        let in_d1 = member(&self.double_coset(&wp, w1));
        let in_d2 = member(&self.double_coset(&wp, w2));
        let p_order = self.cells.iter().filter(|&&c| in_p[c]).count() as u64;
        let mut out = BTreeMap::new();
        let mut done: BTreeSet<Perm> = BTreeSet::new();
        for (vi, v) in self.perms.iter().enumerate() {
            if done.contains(v) {
                continue;
            }
            let coset = self.double_coset(&wp, v);
            let max = coset
                .iter()
                .max_by_key(|w| inversions(w))
                .expect("nonempty")
                .clone();
            done.extend(coset);
            let count = (0..self.order())
                .filter(|&k| in_d1[self.cells[k]] && in_d2[self.shifted[k][vi]])
                .count() as u64;
            if count % p_order != 0 {
                return Err(Error::Consistency(format!("count {count} not divisible by |P| = {p_order}")));
            }
            if count > 0 {
                out.insert(max, count / p_order);
            }
        }
        Ok(out)
    }
}

/// One-shot form of [`FiniteGroupData::structure_constants`].
pub fn finite_structure_constants(n: usize, p: u32, s_p: &[usize], w1: &Perm, w2: &Perm) -> Result<BTreeMap<Perm, u64>> {
    FiniteGroupData::new(n, p)?.structure_constants(s_p, w1, w2)
}
