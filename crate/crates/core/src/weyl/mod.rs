//! The extended affine Weyl group `W = X_* ⋊ W_0`.
//!
//! An element `t_λ w` acts on `V = X_* ⊗ R` by `x ↦ λ + w(x)`. The base alcove
//! lies in the dominant chamber with the origin in its closure, the affine
//! simple reflections are `s_1, …, s_n` (finite) and `s_0 = t_{θ^∨} s_θ`, and
//! `Ω` is the stabilizer of the base alcove.

mod finite;
mod parabolic;

use std::collections::HashMap;
use std::sync::Arc;

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::rootdata::{dot, RootDatum, MAX_RANK};

pub use finite::FiniteWeylGroup;
pub use parabolic::{CosetForms, ParabolicData};

/// Default cap on the size of any enumerated subset of `W`.
pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_ENUM_CAP`].
pub const ENUM_CAP_ENV: &str = "CONVPAVE_ENUM_CAP";

/// An element `t_λ w` of the extended affine Weyl group.
///
/// Elements do not carry a reference to their group; all arithmetic goes
/// through [`AffineWeylGroup`]. Coordinates past the rank are always zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    lambda: [i64; MAX_RANK],
    w: u32,
}

impl WeylElement {
    pub const IDENTITY: WeylElement = WeylElement {
        lambda: [0; MAX_RANK],
        w: 0,
    };

    /// Translation part, padded to [`MAX_RANK`] coordinates.
    pub fn lambda_raw(&self) -> &[i64; MAX_RANK] {
        &self.lambda
    }

    /// Index of the finite part in [`FiniteWeylGroup`].
    pub fn finite_index(&self) -> usize {
        self.w as usize
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

/// An extended affine Weyl group together with the tables needed for fast
/// arithmetic.
#[derive(Debug)]
pub struct AffineWeylGroup {
    datum: Arc<RootDatum>,
    finite: FiniteWeylGroup,
    theta_coroot: Vec<i64>,
    generators: Vec<WeylElement>,
    enum_cap: usize,
}

impl AffineWeylGroup {
    pub fn new(datum: RootDatum) -> Result<Self> {
        let cap = std::env::var(ENUM_CAP_ENV)
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(DEFAULT_ENUM_CAP);
        Self::with_enum_cap(datum, cap)
    }

    pub fn with_enum_cap(datum: RootDatum, enum_cap: usize) -> Result<Self> {
        let finite = FiniteWeylGroup::new(&datum)?;
        let theta_coroot = datum.highest_root().cocharacter.clone();
        let mut g = AffineWeylGroup {
            datum: Arc::new(datum),
            finite,
            theta_coroot,
            generators: Vec::new(),
            enum_cap,
        };
        g.generators = (0..=g.rank()).map(|i| g.right_mul_simple(&WeylElement::IDENTITY, i)).collect();
        Ok(g)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn finite(&self) -> &FiniteWeylGroup {
        &self.finite
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// Number of affine simple reflections, `rank + 1`.
    pub fn num_generators(&self) -> usize {
        self.rank() + 1
    }

    pub fn enum_cap(&self) -> usize {
        self.enum_cap
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::IDENTITY
    }

    pub fn translation(&self, lambda: &[i64]) -> Result<WeylElement> {
        self.datum.check_dim(lambda.len())?;
        let mut raw = [0; MAX_RANK];
        raw[..lambda.len()].copy_from_slice(lambda);
        Ok(WeylElement { lambda: raw, w: 0 })
    }

    /// `t_λ w`, with `w` given by its index in the finite Weyl group.
    pub fn from_parts(&self, lambda: &[i64], finite_index: usize) -> Result<WeylElement> {
        if finite_index >= self.finite.order() {
            return Err(Error::ForeignElement(format!("finite index {finite_index}")));
        }
        let mut x = self.translation(lambda)?;
        x.w = finite_index as u32;
        Ok(x)
    }

    /// The affine simple reflection `s_i` (`i = 0` is the affine one).
    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement> {
        self.check_generator(i)?;
        Ok(self.generators[i])
    }

    pub fn check_generator(&self, i: usize) -> Result<()> {
        if i > self.rank() {
            return Err(Error::BadGenerator {
                index: i,
                count: self.num_generators(),
            });
        }
        Ok(())
    }

    /// Validates an element produced elsewhere (e.g. deserialized).
    pub fn validate(&self, x: &WeylElement) -> Result<()> {
        if x.finite_index() >= self.finite.order() || x.lambda[self.rank()..].iter().any(|&c| c != 0) {
            return Err(Error::ForeignElement(format!("{x:?}")));
        }
        Ok(())
    }

    pub fn lambda<'a>(&self, x: &'a WeylElement) -> &'a [i64] {
        &x.lambda[..self.rank()]
    }

    /// Product of a sequence of affine simple reflections, left to right.
    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement> {
        self.word_times(WeylElement::IDENTITY, word)
    }

    /// `x · s_{i_1} ⋯ s_{i_k}`.
    pub fn word_times(&self, mut x: WeylElement, word: &[usize]) -> Result<WeylElement> {
        for &i in word {
            self.check_generator(i)?;
            x = self.right_mul_simple(&x, i);
        }
        Ok(x)
    }

    pub fn multiply(&self, x: &WeylElement, y: &WeylElement) -> WeylElement {
        let n = self.rank();
        let u_mu = self.finite.apply(x.finite_index(), &y.lambda[..n]);
        let mut lambda = x.lambda;
        for k in 0..n {
            lambda[k] += u_mu[k];
        }
        WeylElement {
            lambda,
            w: self.finite.multiply(x.finite_index(), y.finite_index()) as u32,
        }
    }

    /// Checked product: both factors must belong to this group.
    pub fn try_multiply(&self, x: &WeylElement, y: &WeylElement) -> Result<WeylElement> {
        self.validate(x)?;
        self.validate(y)?;
        Ok(self.multiply(x, y))
    }

    pub fn inverse(&self, x: &WeylElement) -> WeylElement {
        let n = self.rank();
        let winv = self.finite.inverse(x.finite_index());
        let v = self.finite.apply(winv, &x.lambda[..n]);
        let mut lambda = [0; MAX_RANK];
        for k in 0..n {
            lambda[k] = -v[k];
        }
        WeylElement {
            lambda,
            w: winv as u32,
        }
    }

    /// Image of an integral point of `V` under `x`.
    pub fn apply(&self, x: &WeylElement, point: &[i64]) -> Vec<i64> {
        let n = self.rank();
        let mut v = self.finite.apply(x.finite_index(), point);
        for k in 0..n {
            v[k] += x.lambda[k];
        }
        v
    }

    /// `x · s_i`.
    pub fn right_mul_simple(&self, x: &WeylElement, i: usize) -> WeylElement {
        let mut y = *x;
        if i == 0 {
            let shift = self.finite.theta_coroot_image(x.finite_index());
            for k in 0..self.rank() {
                y.lambda[k] += shift[k];
            }
            y.w = self.finite.right_mul_theta(x.finite_index()) as u32;
        } else {
            y.w = self.finite.right_mul(x.finite_index(), i - 1) as u32;
        }
        y
    }

    /// `s_i · x`.
    pub fn left_mul_simple(&self, i: usize, x: &WeylElement) -> WeylElement {
        let n = self.rank();
        let mut y = WeylElement::IDENTITY;
        if i == 0 {
            // t_{θ^∨} s_θ t_λ w = t_{θ^∨ + s_θ λ} s_θ w
            let s_theta = self.finite.s_theta();
            let v = self.finite.apply(s_theta, &x.lambda[..n]);
            for k in 0..n {
                y.lambda[k] = v[k] + self.theta_coroot[k];
            }
            y.w = self.finite.left_mul_theta(x.finite_index()) as u32;
        } else {
            let s = self.finite.generator(i - 1);
            let v = self.finite.apply(s, &x.lambda[..n]);
            y.lambda[..n].copy_from_slice(&v);
            y.w = self.finite.left_mul(x.finite_index(), i - 1) as u32;
        }
        y
    }

    /// Number of affine root hyperplanes separating the base alcove from its
    /// image under `x`.
    pub fn length(&self, x: &WeylElement) -> usize {
        let n = self.rank();
        let roots = self.datum.roots();
        let npos = self.datum.num_positive_roots();
        let winv = self.finite.inverse(x.finite_index());
        let mut total = 0i64;
        for (k, root) in roots[..npos].iter().enumerate() {
            let m = dot(&root.character, &x.lambda[..n]);
            if self.finite.root_image(winv, k) < npos {
                total += m.abs();
            } else {
                total += (m - 1).abs();
            }
        }
        total as usize
    }

    /// `ℓ(x s_i) < ℓ(x)`, decided by the sign of the affine root `x(a_i)`.
    pub fn is_right_descent(&self, x: &WeylElement, i: usize) -> bool {
        let n = self.rank();
        let npos = self.datum.num_positive_roots();
        let w = x.finite_index();
        let (beta, k) = if i == 0 {
            let wt = self.finite.root_image(w, self.datum.highest_root_index());
            let m = dot(&self.datum.roots()[wt].character, &x.lambda[..n]);
            (self.datum.negative_index(wt), 1 + m)
        } else {
            let wa = self.finite.root_image(w, self.finite.simple_root_index(i - 1));
            let m = dot(&self.datum.roots()[wa].character, &x.lambda[..n]);
            (wa, -m)
        };
        let positive = k >= 1 || (k == 0 && beta < npos);
        !positive
    }

    /// `ℓ(s_i x) < ℓ(x)`.
    pub fn is_left_descent(&self, i: usize, x: &WeylElement) -> bool {
        self.is_right_descent(&self.inverse(x), i)
    }

    pub fn right_descents(&self, x: &WeylElement) -> Vec<usize> {
        (0..=self.rank()).filter(|&i| self.is_right_descent(x, i)).collect()
    }

    pub fn is_omega(&self, x: &WeylElement) -> bool {
        (0..=self.rank()).all(|i| !self.is_right_descent(x, i))
    }

    /// `x = τ · s_{i_1} ⋯ s_{i_ℓ}` with `τ ∈ Ω`. Descents are stripped from the
    /// right, always taking the smallest index.
    pub fn reduced_word(&self, x: &WeylElement) -> (WeylElement, Vec<usize>) {
        let mut cur = *x;
        let mut letters = Vec::new();
        while let Some(i) = (0..=self.rank()).find(|&i| self.is_right_descent(&cur, i)) {
            letters.push(i);
            cur = self.right_mul_simple(&cur, i);
        }
        letters.reverse();
        (cur, letters)
    }

    /// The `Ω`-component `τ` of `x = τ · w_aff`.
    pub fn omega_part(&self, x: &WeylElement) -> WeylElement {
        self.reduced_word(x).0
    }

    /// The index `j` with `τ s_i τ^{-1} = s_j`.
    pub fn omega_conjugate(&self, tau: &WeylElement, i: usize) -> Result<usize> {
        self.check_generator(i)?;
        if !self.is_omega(tau) {
            return Err(Error::NotInOmega);
        }
        let y = self.multiply(&self.multiply(tau, &self.generators[i]), &self.inverse(tau));
        self.generators
            .iter()
            .position(|g| *g == y)
            .ok_or_else(|| Error::Consistency("Ω does not normalize S_aff".into()))
    }

    /// The permutation of `S_aff` induced by conjugation with `τ`.
    pub fn omega_permutation(&self, tau: &WeylElement) -> Result<Vec<usize>> {
        (0..=self.rank()).map(|i| self.omega_conjugate(tau, i)).collect()
    }

    /// Bruhat order on `W`; elements with different `Ω`-components are
    /// incomparable.
    ///
    /// Uses the lifting property: if `ys < y` then `x ≤ y` iff `xs ≤ ys`
    /// (when `xs < x`) or `x ≤ ys` (when `xs > x`). Each step shortens `y`, so
    /// no memoization is needed.
    pub fn bruhat_leq(&self, x: &WeylElement, y: &WeylElement) -> bool {
        let (mut x, mut y) = (*x, *y);
        let mut lx = self.length(&x);
        let mut ly = self.length(&y);
        loop {
            if lx > ly {
                return false;
            }
            if lx == ly {
                return x == y;
            }
            let s = (0..=self.rank())
                .find(|&i| self.is_right_descent(&y, i))
                .expect("positive length implies a descent");
            if self.is_right_descent(&x, s) {
                x = self.right_mul_simple(&x, s);
                lx -= 1;
            }
            y = self.right_mul_simple(&y, s);
            ly -= 1;
        }
    }

    /// `x * s_i`: `x s_i` if that is longer, else `x`.
    pub fn demazure_simple(&self, x: &WeylElement, i: usize) -> WeylElement {
        if self.is_right_descent(x, i) {
            *x
        } else {
            self.right_mul_simple(x, i)
        }
    }

    /// The Demazure product `x * y`.
    pub fn demazure(&self, x: &WeylElement, y: &WeylElement) -> WeylElement {
        let (tau, word) = self.reduced_word(y);
        let mut acc = self.multiply(x, &tau);
        for i in word {
            acc = self.demazure_simple(&acc, i);
        }
        acc
    }

    pub fn demazure_all<'a>(&self, xs: impl IntoIterator<Item = &'a WeylElement>) -> WeylElement {
        xs.into_iter()
            .fold(WeylElement::IDENTITY, |acc, x| self.demazure(&acc, x))
    }

    /// All `u ≤ w`, sorted by length and then by element order.
    pub fn lower_interval(&self, w: &WeylElement) -> Result<Vec<WeylElement>> {
        let (tau, word) = self.reduced_word(w);
        let mut set: FxHashSet<WeylElement> = FxHashSet::default();
        set.insert(tau);
        for i in word {
            let shifted: Vec<WeylElement> = set.iter().map(|u| self.right_mul_simple(u, i)).collect();
            set.extend(shifted);
            if set.len() > self.enum_cap {
                return Err(Error::LimitExceeded(format!(
                    "Bruhat interval has more than {} elements",
                    self.enum_cap
                )));
            }
        }
        Ok(self.sorted(set))
    }

    /// Sort by `(length, element)`.
    pub fn sorted(&self, elements: impl IntoIterator<Item = WeylElement>) -> Vec<WeylElement> {
        let mut v: Vec<(usize, WeylElement)> = elements.into_iter().map(|x| (self.length(&x), x)).collect();
        v.sort_unstable();
        v.into_iter().map(|(_, x)| x).collect()
    }

    /// Parses a comma separated list of affine generator indices.
    pub fn parse_word(&self, s: &str) -> Result<Vec<usize>> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        s.split(',')
            .map(|t| {
                let i: usize = t
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad generator index {t:?}")))?;
                self.check_generator(i)?;
                Ok(i)
            })
            .collect()
    }

    /// Lookup table from elements to their lengths, for hot loops.
    pub fn length_cache(&self) -> LengthCache<'_> {
        LengthCache {
            group: self,
            cache: HashMap::new(),
        }
    }
}

/// Memoized lengths.
pub struct LengthCache<'a> {
    group: &'a AffineWeylGroup,
    cache: HashMap<WeylElement, usize>,
}

impl LengthCache<'_> {
    pub fn get(&mut self, x: &WeylElement) -> usize {
        let group = self.group;
        *self.cache.entry(*x).or_insert_with(|| group.length(x))
    }
}

pub fn format_word(word: &[usize]) -> String {
    word.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}
