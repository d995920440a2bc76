//! Cellular pavings and point counts of convolution fibers.
//!
//! Iwahori level: for a word `s_1 ⋯ s_r` the fiber over `v` of the
//! uncompactified (`G`) or compactified (`F`) convolution morphism is built
//! one letter at a time,
//!
//! ```text
//! G_r(v) = q G_{r-1}(vs)                      if v < vs
//!        = (q-1) G_{r-1}(v) + G_{r-1}(vs)     otherwise
//! F_r(v) = F_{r-1}(v) + q F_{r-1}(vs)         if v < vs
//!        = q F_{r-1}(v) + F_{r-1}(vs)         otherwise
//! ```
//!
//! with `G_0(v) = F_0(v) = [v = e]`. Each term contributes a factor `A0`,
//! `A1` (`q`) or `Gm` (`q-1`) to the cells it produces.
//!
//! Parahoric level: the fiber function of `(w_1, …, w_r)` is tabulated on
//! right-`W_P`-minimal elements, one factor at a time. The `k`-th factor adds
//! the Iwahori recursion over the letters of every `u` in the double coset of
//! `w_k` (or in the closure), starting from the previous table.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::notation::element_to_json;
use crate::poly::PolyQ;
use crate::weyl::{AffineWeylGroup, ParabolicData, WeylElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    A0,
    A1,
    Gm,
}

impl Factor {
    pub fn as_str(self) -> &'static str {
        match self {
            Factor::A0 => "A0",
            Factor::A1 => "A1",
            Factor::Gm => "Gm",
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Uncompactified,
    Compactified,
}

/// What the recursions accumulate: plain counts, monomial multisets or
/// explicit cells.
pub trait Accumulator: Clone {
    fn zero() -> Self;
    /// A single point, with trace `[v]`.
    fn point(v: &WeylElement) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&mut self, other: &Self);
    fn extend(&self, f: Factor) -> Self;
    /// Appends `v` to every trace.
    fn mark(&self, v: &WeylElement) -> Self;
}

impl Accumulator for PolyQ {
    fn zero() -> Self {
        PolyQ::zero()
    }

    fn point(_: &WeylElement) -> Self {
        PolyQ::one()
    }

    fn is_zero(&self) -> bool {
        PolyQ::is_zero(self)
    }

    fn add(&mut self, other: &Self) {
        *self += other;
    }

    fn extend(&self, f: Factor) -> Self {
        match f {
            Factor::A0 => self.clone(),
            Factor::A1 => self.shift(1),
            Factor::Gm => &self.shift(1) - self,
        }
    }

    fn mark(&self, _: &WeylElement) -> Self {
        self.clone()
    }
}

/// A multiset of monomials `q^a (q-1)^b`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PavingPolynomial {
    monomials: BTreeMap<(usize, usize), u64>,
}

impl PavingPolynomial {
    pub fn monomial(a: usize, b: usize) -> Self {
        let mut p = Self::default();
        p.monomials.insert((a, b), 1);
        p
    }

    pub fn insert(&mut self, a: usize, b: usize, mult: u64) {
        if mult == 0 {
            return;
        }
        let m = self.monomials.entry((a, b)).or_insert(0);
        *m = m.checked_add(mult).expect("cell multiplicity overflows u64");
    }

    pub fn monomials(&self) -> &BTreeMap<(usize, usize), u64> {
        &self.monomials
    }

    pub fn num_cells(&self) -> u64 {
        self.monomials.values().sum()
    }

    pub fn has_gm(&self) -> bool {
        self.monomials.keys().any(|&(_, b)| b > 0)
    }

    /// `Σ m_{a,b} q^a (q-1)^b`.
    pub fn value(&self) -> PolyQ {
        let mut v = PolyQ::zero();
        for (&(a, b), &m) in &self.monomials {
            v += &PolyQ::cell(a, b).scale(&BigInt::from(m));
        }
        v
    }

    pub fn to_json(&self) -> Value {
        let monomials: Vec<Value> = self
            .monomials
            .iter()
            .map(|(&(a, b), &m)| json!([a, b, m]))
            .collect();
        json!({ "monomials": monomials, "value": self.value().to_json() })
    }
}

impl Accumulator for PavingPolynomial {
    fn zero() -> Self {
        Self::default()
    }

    fn point(_: &WeylElement) -> Self {
        Self::monomial(0, 0)
    }

    fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    fn add(&mut self, other: &Self) {
        for (&(a, b), &m) in &other.monomials {
            self.insert(a, b, m);
        }
    }

    fn extend(&self, f: Factor) -> Self {
        let (da, db) = match f {
            Factor::A0 => return self.clone(),
            Factor::A1 => (1, 0),
            Factor::Gm => (0, 1),
        };
        PavingPolynomial {
            monomials: self.monomials.iter().map(|(&(a, b), &m)| ((a + da, b + db), m)).collect(),
        }
    }

    fn mark(&self, _: &WeylElement) -> Self {
        self.clone()
    }
}

/// The multiplicities `m_{a,b}`.
pub fn mab_table(p: &PavingPolynomial) -> BTreeMap<(usize, usize), u64> {
    p.monomials.clone()
}

/// One cell `A1^a × Gm^b` with the gallery that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PavingCell {
    pub factors: Vec<Factor>,
    pub trace: Vec<WeylElement>,
}

impl PavingCell {
    pub fn a(&self) -> usize {
        self.factors.iter().filter(|&&f| f == Factor::A1).count()
    }

    pub fn b(&self) -> usize {
        self.factors.iter().filter(|&&f| f == Factor::Gm).count()
    }

    pub fn to_json(&self, g: &AffineWeylGroup) -> Value {
        json!({
            "a": self.a(),
            "b": self.b(),
            "factors": self.factors.iter().map(|f| f.as_str()).collect::<Vec<_>>(),
            "trace": self.trace.iter().map(|x| element_to_json(g, x)).collect::<Vec<_>>(),
        })
    }
}

/// Explicit cell lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cells(pub Vec<PavingCell>);

impl Cells {
    pub fn paving(&self) -> PavingPolynomial {
        let mut p = PavingPolynomial::default();
        for c in &self.0 {
            p.insert(c.a(), c.b(), 1);
        }
        p
    }
}

impl Accumulator for Cells {
    fn zero() -> Self {
        Cells(Vec::new())
    }

    fn point(v: &WeylElement) -> Self {
        Cells(vec![PavingCell {
            factors: Vec::new(),
            trace: vec![*v],
        }])
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add(&mut self, other: &Self) {
        self.0.extend(other.0.iter().cloned());
    }

    fn extend(&self, f: Factor) -> Self {
        Cells(
            self.0
                .iter()
                .map(|c| {
                    let mut c = c.clone();
                    c.factors.push(f);
                    c
                })
                .collect(),
        )
    }

    fn mark(&self, v: &WeylElement) -> Self {
        Cells(
            self.0
                .iter()
                .map(|c| {
                    let mut c = c.clone();
                    c.trace.push(*v);
                    c
                })
                .collect(),
        )
    }
}

/// Moves the length-zero parts of a tuple to the front:
/// `x_1 ⋯ x_r = τ · s_{i_1} ⋯ s_{i_m}` with the letters of each factor
/// conjugated past the later `τ`s.
pub fn normalize_tuple(g: &AffineWeylGroup, tuple: &[WeylElement]) -> Result<(WeylElement, Vec<usize>)> {
    let mut sigma = g.identity();
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(tuple.len());
    for x in tuple.iter().rev() {
        g.validate(x)?;
        let (tau, word) = g.reduced_word(x);
        let perm = g.omega_permutation(&g.inverse(&sigma))?;
        blocks.push(word.iter().map(|&i| perm[i]).collect());
        sigma = g.multiply(&tau, &sigma);
    }
    blocks.reverse();
    Ok((sigma, blocks.concat()))
}

/// Backward recursion for one target, memoized on `(letters left, v)`.
struct IwahoriRecursion<'a, A> {
    g: &'a AffineWeylGroup,
    word: &'a [usize],
    mode: Mode,
    memo: FxHashMap<(usize, WeylElement), A>,
}

impl<A: Accumulator> IwahoriRecursion<'_, A> {
    fn eval(&mut self, k: usize, v: WeylElement) -> A {
        if k == 0 {
            return if v.is_identity() { A::point(&v) } else { A::zero() };
        }
        if let Some(a) = self.memo.get(&(k, v)) {
            return a.clone();
        }
        let s = self.word[k - 1];
        let vs = self.g.right_mul_simple(&v, s);
        let up = !self.g.is_right_descent(&v, s);
        let mut out = match (self.mode, up) {
            (Mode::Uncompactified, true) => self.eval(k - 1, vs).extend(Factor::A1),
            (Mode::Uncompactified, false) => {
                let mut a = self.eval(k - 1, v).extend(Factor::Gm);
                a.add(&self.eval(k - 1, vs).extend(Factor::A0));
                a
            }
            (Mode::Compactified, true) => {
                let mut a = self.eval(k - 1, v).extend(Factor::A0);
                a.add(&self.eval(k - 1, vs).extend(Factor::A1));
                a
            }
            (Mode::Compactified, false) => {
                let mut a = self.eval(k - 1, v).extend(Factor::A1);
                a.add(&self.eval(k - 1, vs).extend(Factor::A0));
                a
            }
        };
        out = out.mark(&v);
        self.memo.insert((k, v), out.clone());
        out
    }
}

/// Fiber over `v` of the convolution morphism for the tuple (one factor per
/// letter for words of simple reflections).
pub fn iwahori_fiber<A: Accumulator>(
    g: &AffineWeylGroup,
    tuple: &[WeylElement],
    v: &WeylElement,
    mode: Mode,
) -> Result<A> {
    g.validate(v)?;
    let (tau, word) = normalize_tuple(g, tuple)?;
    let target = g.multiply(&g.inverse(&tau), v);
    let mut rec = IwahoriRecursion {
        g,
        word: &word,
        mode,
        memo: FxHashMap::default(),
    };
    Ok(rec.eval(word.len(), target))
}

/// All nonzero fibers at once, by forward propagation.
pub fn iwahori_fiber_table<A: Accumulator>(
    g: &AffineWeylGroup,
    tuple: &[WeylElement],
    mode: Mode,
) -> Result<BTreeMap<WeylElement, A>> {
    let (tau, word) = normalize_tuple(g, tuple)?;
    let e = g.identity();
    let mut table: FxHashMap<WeylElement, A> = FxHashMap::default();
    table.insert(e, A::point(&e));
    for &s in &word {
        let mut next: FxHashMap<WeylElement, A> = FxHashMap::default();
        let mut push = |x: WeylElement, a: A| {
            next.entry(x).or_insert_with(A::zero).add(&a.mark(&x));
        };
        for (z, h) in &table {
            let zs = g.right_mul_simple(z, s);
            let up = !g.is_right_descent(z, s);
            match (mode, up) {
                (Mode::Uncompactified, true) => push(zs, h.extend(Factor::A0)),
                (Mode::Uncompactified, false) => {
                    push(zs, h.extend(Factor::A1));
                    push(*z, h.extend(Factor::Gm));
                }
                (Mode::Compactified, true) => {
                    push(*z, h.extend(Factor::A0));
                    push(zs, h.extend(Factor::A0));
                }
                (Mode::Compactified, false) => {
                    push(*z, h.extend(Factor::A1));
                    push(zs, h.extend(Factor::A1));
                }
            }
        }
        if next.len() > g.enum_cap() {
            return Err(Error::LimitExceeded(format!("fiber table has more than {} entries", g.enum_cap())));
        }
        table = next;
    }
    Ok(table
        .into_iter()
        .filter(|(_, a)| !a.is_zero())
        .map(|(z, a)| (g.multiply(&tau, &z), a))
        .collect())
}

/// How the last factor of a parahoric product is peeled off when only counts
/// are needed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Sum over the double coset of the last factor (supports cells).
    RightPeel,
    /// Sum over the support of the previous table, recursing on the left.
    LeftPeel,
    /// Whichever sum is shorter.
    #[default]
    Auto,
}

/// Support of the `k`-th factor: its double coset, or everything below its
/// maximal representative.
struct FactorData {
    max_rep: WeylElement,
    closed: bool,
}

impl FactorData {
    fn contains(&self, g: &AffineWeylGroup, p: &ParabolicData, v: &WeylElement) -> bool {
        if self.closed {
            g.bruhat_leq(v, &self.max_rep)
        } else {
            g.double_max(v, p) == self.max_rep
        }
    }

    fn elements(&self, g: &AffineWeylGroup, p: &ParabolicData) -> Result<Vec<WeylElement>> {
        if self.closed {
            g.lower_interval(&self.max_rep)
        } else {
            Ok(g.double_coset(&self.max_rep, p))
        }
    }
}

type Table<A> = FxHashMap<WeylElement, A>;

/// `R_u(x) = [T_x](C · T_u)` where `C = Σ_y prev(y) T_y` over right-minimal `y`.
fn right_peel<A: Accumulator>(
    g: &AffineWeylGroup,
    prev: &Table<A>,
    us: &[(WeylElement, Vec<usize>)],
    x: &WeylElement,
) -> A {
    struct Rec<'a, A> {
        g: &'a AffineWeylGroup,
        prev: &'a Table<A>,
        tau_inv: WeylElement,
        word: &'a [usize],
        memo: FxHashMap<(usize, WeylElement), A>,
    }
    impl<A: Accumulator> Rec<'_, A> {
        fn eval(&mut self, k: usize, v: WeylElement) -> A {
            if k == 0 {
                let y = self.g.multiply(&v, &self.tau_inv);
                return match self.prev.get(&y) {
                    Some(a) if y != v => a.mark(&v),
                    Some(a) => a.clone(),
                    None => A::zero(),
                };
            }
            if let Some(a) = self.memo.get(&(k, v)) {
                return a.clone();
            }
            let s = self.word[k - 1];
            let vs = self.g.right_mul_simple(&v, s);
            let out = if !self.g.is_right_descent(&v, s) {
                self.eval(k - 1, vs).extend(Factor::A1)
            } else {
                let mut a = self.eval(k - 1, v).extend(Factor::Gm);
                a.add(&self.eval(k - 1, vs).extend(Factor::A0));
                a
            };
            let out = out.mark(&v);
            self.memo.insert((k, v), out.clone());
            out
        }
    }

    let mut total = A::zero();
    for (tau, word) in us {
        let mut rec = Rec {
            g,
            prev,
            tau_inv: g.inverse(tau),
            word,
            memo: FxHashMap::default(),
        };
        total.add(&rec.eval(word.len(), *x));
    }
    total
}

/// `Σ_y prev(y) · [T_x](T_y f)` with the inner coefficient computed by left
/// multiplication into the indicator of the factor's support.
fn left_peel(
    g: &AffineWeylGroup,
    p: &ParabolicData,
    prev: &Table<PolyQ>,
    factor: &FactorData,
    x: &WeylElement,
) -> PolyQ {
    fn eval(
        g: &AffineWeylGroup,
        p: &ParabolicData,
        factor: &FactorData,
        word: &[usize],
        j: usize,
        v: WeylElement,
        memo: &mut FxHashMap<(usize, WeylElement), PolyQ>,
    ) -> PolyQ {
        if j == word.len() {
            return if factor.contains(g, p, &v) { PolyQ::one() } else { PolyQ::zero() };
        }
        if let Some(c) = memo.get(&(j, v)) {
            return c.clone();
        }
        let s = word[j];
        let sv = g.left_mul_simple(s, &v);
        let out = if !g.is_left_descent(s, &v) {
            eval(g, p, factor, word, j + 1, sv, memo).shift(1)
        } else {
            let c = eval(g, p, factor, word, j + 1, v, memo);
            &(&c.shift(1) - &c) + &eval(g, p, factor, word, j + 1, sv, memo)
        };
        memo.insert((j, v), out.clone());
        out
    }

    let mut total = PolyQ::zero();
    for (y, c) in prev {
        let (tau, word) = g.reduced_word(y);
        let start = g.multiply(&g.inverse(&tau), x);
        let mut memo = FxHashMap::default();
        let l = eval(g, p, factor, &word, 0, start, &mut memo);
        if !l.is_zero() {
            total += &(c * &l);
        }
    }
    total
}

/// Tabulates the fiber function of the first `tuple.len() - 1` factors and
/// returns the data of the last one.
struct Parahoric<'a> {
    g: &'a AffineWeylGroup,
    p: &'a ParabolicData,
    factors: Vec<FactorData>,
    /// Demazure products of the maximal representatives, one per prefix.
    prefix_max: Vec<WeylElement>,
}

impl<'a> Parahoric<'a> {
    fn new(g: &'a AffineWeylGroup, p: &'a ParabolicData, tuple: &[WeylElement], closed: &[bool]) -> Result<Self> {
        if tuple.is_empty() {
            return Err(Error::InvalidArgument("empty tuple".into()));
        }
        if closed.len() != tuple.len() {
            return Err(Error::DimensionMismatch {
                expected: tuple.len(),
                got: closed.len(),
            });
        }
        let mut factors = Vec::with_capacity(tuple.len());
        let mut prefix_max = Vec::with_capacity(tuple.len());
        let mut acc = p.longest();
        for (w, &c) in tuple.iter().zip(closed) {
            g.validate(w)?;
            let max_rep = g.double_max(w, p);
            acc = g.demazure(&acc, &max_rep);
            factors.push(FactorData { max_rep, closed: c });
            prefix_max.push(acc);
        }
        Ok(Parahoric {
            g,
            p,
            factors,
            prefix_max,
        })
    }

    fn peel_data(&self, k: usize) -> Result<Vec<(WeylElement, Vec<usize>)>> {
        Ok(self.factors[k]
            .elements(self.g, self.p)?
            .iter()
            .map(|u| self.g.reduced_word(u))
            .collect())
    }

    /// Right-minimal elements that may carry a nonzero value after `k + 1`
    /// factors.
    fn support(&self, k: usize) -> Result<Vec<WeylElement>> {
        Ok(self
            .g
            .lower_interval(&self.prefix_max[k])?
            .into_iter()
            .filter(|y| self.g.is_right_minimal(y, self.p))
            .collect())
    }

    fn initial<A: Accumulator>(&self) -> Table<A> {
        let e = self.g.identity();
        let mut t = Table::default();
        t.insert(e, A::point(&e));
        t
    }

    fn step_right<A: Accumulator>(&self, prev: &Table<A>, k: usize, targets: &[WeylElement]) -> Result<Table<A>> {
        let us = self.peel_data(k)?;
        Ok(targets
            .iter()
            .filter_map(|x| {
                let a = right_peel(self.g, prev, &us, x);
                (!a.is_zero()).then_some((*x, a))
            })
            .collect())
    }

    fn step_count(&self, prev: &Table<PolyQ>, k: usize, targets: &[WeylElement], strategy: Strategy) -> Result<Table<PolyQ>> {
        let left = match strategy {
            Strategy::RightPeel => false,
            Strategy::LeftPeel => true,
            Strategy::Auto => {
                let d = &self.factors[k];
                let coset_size = if d.closed {
                    usize::MAX
                } else {
                    self.p.order() * self.p.order()
                };
                prev.len() < coset_size
            }
        };
        if !left {
            return self.step_right(prev, k, targets);
        }
        Ok(targets
            .iter()
            .filter_map(|x| {
                let c = left_peel(self.g, self.p, prev, &self.factors[k], x);
                (!c.is_zero()).then_some((*x, c))
            })
            .collect())
    }
}

/// Fiber over `x` (as a point of the partial flag variety) of the parahoric
/// convolution morphism, computed by right peeling so that cells and traces
/// are available. `x` may be any element of its coset `x W_P`.
pub fn parahoric_fiber<A: Accumulator>(
    g: &AffineWeylGroup,
    tuple: &[WeylElement],
    p: &ParabolicData,
    x: &WeylElement,
    closed: &[bool],
) -> Result<A> {
    g.validate(x)?;
    let ph = Parahoric::new(g, p, tuple, closed)?;
    let r = tuple.len();
    let mut table = ph.initial::<A>();
    for k in 0..r - 1 {
        let support = ph.support(k)?;
        table = ph.step_right(&table, k, &support)?;
    }
    let x = g.right_min(x, p);
    Ok(ph.step_right(&table, r - 1, &[x])?.remove(&x).unwrap_or_else(A::zero))
}

/// The value of [`parahoric_fiber`] only, with a choice of peeling strategy.
pub fn parahoric_count(
    g: &AffineWeylGroup,
    tuple: &[WeylElement],
    p: &ParabolicData,
    x: &WeylElement,
    closed: &[bool],
    strategy: Strategy,
) -> Result<PolyQ> {
    g.validate(x)?;
    let ph = Parahoric::new(g, p, tuple, closed)?;
    let r = tuple.len();
    let mut table = ph.initial::<PolyQ>();
    for k in 0..r - 1 {
        let support = ph.support(k)?;
        table = ph.step_count(&table, k, &support, strategy)?;
    }
    let x = g.right_min(x, p);
    Ok(ph.step_count(&table, r - 1, &[x], strategy)?.remove(&x).unwrap_or_default())
}

/// The full fiber function on right-minimal elements.
pub fn parahoric_fiber_table(
    g: &AffineWeylGroup,
    tuple: &[WeylElement],
    p: &ParabolicData,
    closed: &[bool],
    strategy: Strategy,
) -> Result<BTreeMap<WeylElement, PolyQ>> {
    let ph = Parahoric::new(g, p, tuple, closed)?;
    let mut table = ph.initial::<PolyQ>();
    for k in 0..tuple.len() {
        let support = ph.support(k)?;
        table = ph.step_count(&table, k, &support, strategy)?;
    }
    Ok(table.into_iter().collect())
}
