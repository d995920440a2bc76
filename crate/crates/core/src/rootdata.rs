//! Based root data of split groups.
//!
//! Coordinates: the cocharacter lattice `X_*` is identified with `Z^n` and the
//! character lattice `X^*` with its dual, so the pairing is the dot product.
//! For the simply connected form the basis of `X_*` is the simple coroots; for
//! the adjoint form it is the fundamental coweights.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank accepted by [`RootDatum::build`].
pub const MAX_RANK: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    G,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::G => 'G',
        };
        write!(f, "{c}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Isogeny {
    /// `X_*` is the coroot lattice.
    #[serde(rename = "sc")]
    SimplyConnected,
    /// `X_*` is the coweight lattice.
    #[serde(rename = "adjoint")]
    Adjoint,
}

impl fmt::Display for Isogeny {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Isogeny::SimplyConnected => write!(f, "sc"),
            Isogeny::Adjoint => write!(f, "adjoint"),
        }
    }
}

/// A root together with its coroot, in several coordinate systems.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Root {
    /// Coefficients in the simple roots.
    pub coeffs: Vec<i64>,
    /// Coordinates in `X^*`.
    pub character: Vec<i64>,
    /// Coefficients of the coroot in the simple coroots.
    pub coroot_coeffs: Vec<i64>,
    /// Coordinates of the coroot in `X_*`.
    pub cocharacter: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    fn negated(&self) -> Root {
        let neg = |v: &[i64]| v.iter().map(|x| -x).collect::<Vec<_>>();
        Root {
            coeffs: neg(&self.coeffs),
            character: neg(&self.character),
            coroot_coeffs: neg(&self.coroot_coeffs),
            cocharacter: neg(&self.cocharacter),
        }
    }
}

/// Finite based root datum of an irreducible split group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    series: Series,
    rank: usize,
    isogeny: Isogeny,
    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    cartan: Vec<Vec<i64>>,
    /// Positive roots first (height, then lexicographic on coefficients),
    /// followed by their negatives in the same order.
    roots: Vec<Root>,
    highest_root: usize,
    two_rho: Vec<i64>,
}

fn cartan_matrix(series: Series, rank: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::UnsupportedType(format!("{series}{rank}"));
    let min_rank = match series {
        Series::A => 1,
        Series::B | Series::C => 2,
        Series::D => 4,
        Series::G => 2,
    };
    if rank < min_rank || rank > MAX_RANK || (series == Series::G && rank != 2) {
        return Err(bad());
    }
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match series {
        Series::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
        Series::B => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            // alpha_n is short
            link(n - 2, n - 1, -2, -1);
        }
        Series::C => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            // alpha_n is long
            link(n - 2, n - 1, -1, -2);
        }
        Series::D => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        // alpha_1 short, alpha_2 long
        Series::G => link(0, 1, -1, -3),
    }
    Ok(a)
}

impl RootDatum {
    pub fn build(series: Series, rank: usize, isogeny: Isogeny) -> Result<Self> {
        let cartan = cartan_matrix(series, rank)?;
        let n = rank;
        let unit = |i: usize| {
            let mut v = vec![0i64; n];
            v[i] = 1;
            v
        };

        // Close the simple roots (and their coroots) under simple reflections.
        let mut found: Vec<(Vec<i64>, Vec<i64>)> = (0..n).map(|i| (unit(i), unit(i))).collect();
        let mut frontier = found.clone();
        while let Some((beta, beta_v)) = frontier.pop() {
            for j in 0..n {
                let p: i64 = (0..n).map(|i| beta[i] * cartan[i][j]).sum();
                let pv: i64 = (0..n).map(|i| beta_v[i] * cartan[j][i]).sum();
                let mut image = beta.clone();
                image[j] -= p;
                let mut image_v = beta_v.clone();
                image_v[j] -= pv;
                if !found.iter().any(|(r, _)| *r == image) {
                    found.push((image.clone(), image_v.clone()));
                    frontier.push((image, image_v));
                }
            }
        }
        let mut positive: Vec<(Vec<i64>, Vec<i64>)> = found
            .into_iter()
            .filter(|(r, _)| r.iter().all(|&c| c >= 0))
            .collect();
        positive.sort_by(|(a, _), (b, _)| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });

        let to_root = |coeffs: &[i64], coroot_coeffs: &[i64]| -> Root {
            let (character, cocharacter) = match isogeny {
                // X_* basis = simple coroots, X^* basis = fundamental weights.
                Isogeny::SimplyConnected => {
                    let ch = (0..n).map(|j| (0..n).map(|i| coeffs[i] * cartan[i][j]).sum()).collect();
                    (ch, coroot_coeffs.to_vec())
                }
                // X_* basis = fundamental coweights, X^* basis = simple roots.
                Isogeny::Adjoint => {
                    let co = (0..n)
                        .map(|i| (0..n).map(|j| cartan[i][j] * coroot_coeffs[j]).sum())
                        .collect();
                    (coeffs.to_vec(), co)
                }
            };
            Root {
                coeffs: coeffs.to_vec(),
                character,
                coroot_coeffs: coroot_coeffs.to_vec(),
                cocharacter,
            }
        };
        let mut roots: Vec<Root> = positive.iter().map(|(r, rv)| to_root(r, rv)).collect();
        let negatives: Vec<Root> = roots.iter().map(Root::negated).collect();
        roots.extend(negatives);

        let npos = positive.len();
        let highest_root = (0..npos)
            .max_by_key(|&k| (roots[k].height(), std::cmp::Reverse(k)))
            .expect("root system is nonempty");
        let mut two_rho = vec![0i64; n];
        for r in &roots[..npos] {
            for (t, c) in two_rho.iter_mut().zip(&r.character) {
                *t += c;
            }
        }
        Ok(RootDatum {
            series,
            rank,
            isogeny,
            cartan,
            roots,
            highest_root,
            two_rho,
        })
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn isogeny(&self) -> Isogeny {
        self.isogeny
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// All roots: positive roots in canonical order, then their negatives.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive_roots()]
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len() / 2
    }

    /// Index (into [`roots`](Self::roots)) of the negative of root `k`.
    pub fn negative_index(&self, k: usize) -> usize {
        let npos = self.num_positive_roots();
        if k < npos {
            k + npos
        } else {
            k - npos
        }
    }

    pub fn root_index(&self, character: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.character == character)
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        let k = self
            .roots
            .iter()
            .position(|r| r.height() == 1 && r.coeffs[i] == 1)
            .expect("simple roots are roots");
        &self.roots[k]
    }

    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        (0..self.rank).map(|i| self.simple_root(i).character.clone()).collect()
    }

    pub fn simple_coroots(&self) -> Vec<Vec<i64>> {
        (0..self.rank).map(|i| self.simple_root(i).cocharacter.clone()).collect()
    }

    pub fn highest_root(&self) -> &Root {
        &self.roots[self.highest_root]
    }

    pub fn highest_root_index(&self) -> usize {
        self.highest_root
    }

    /// `2 rho`, the sum of the positive roots, as a character.
    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }

    pub fn pair(&self, character: &[i64], cocharacter: &[i64]) -> Result<i64> {
        self.check_dim(character.len())?;
        self.check_dim(cocharacter.len())?;
        Ok(dot(character, cocharacter))
    }

    pub fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: len,
            });
        }
        Ok(())
    }

    /// Cocharacter with the given coefficients in the simple coroots, if it
    /// lies in `X_*`.
    pub fn from_coroot_coords(&self, coeffs: &[Rational64]) -> Result<Vec<i64>> {
        self.check_dim(coeffs.len())?;
        let simple = self.simple_coroots();
        let mut out = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let x: Rational64 = (0..self.rank)
                .map(|j| coeffs[j] * Rational64::from_integer(simple[j][i]))
                .sum();
            if !x.is_integer() {
                return Err(Error::InvalidArgument(format!(
                    "cocharacter with coroot coordinates {coeffs:?} is not in X_*"
                )));
            }
            out.push(x.to_integer());
        }
        Ok(out)
    }

    /// Coefficients of a cocharacter in the simple coroots.
    pub fn coroot_coords(&self, cocharacter: &[i64]) -> Result<Vec<Rational64>> {
        self.check_dim(cocharacter.len())?;
        let n = self.rank;
        // Columns are the simple coroots.
        let simple = self.simple_coroots();
        let m: Vec<Vec<Rational64>> = (0..n)
            .map(|i| (0..n).map(|j| Rational64::from_integer(simple[j][i])).collect())
            .collect();
        let b: Vec<Rational64> = cocharacter.iter().map(|&x| Rational64::from_integer(x)).collect();
        solve(m, b).ok_or_else(|| Error::Consistency("singular coroot matrix".into()))
    }

    /// The cocharacter `lambda` with `<alpha_i, lambda> = pairings[i]`, if it
    /// lies in `X_*`.
    pub fn cocharacter_with_pairings(&self, pairings: &[i64]) -> Option<Vec<i64>> {
        if pairings.len() != self.rank {
            return None;
        }
        let n = self.rank;
        let simple = self.simple_roots();
        let m: Vec<Vec<Rational64>> = (0..n)
            .map(|i| (0..n).map(|j| Rational64::from_integer(simple[i][j])).collect())
            .collect();
        let b: Vec<Rational64> = pairings.iter().map(|&x| Rational64::from_integer(x)).collect();
        let sol = solve(m, b)?;
        sol.iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    /// True when `mu` pairs nonnegatively with every simple root.
    pub fn is_dominant(&self, cocharacter: &[i64]) -> bool {
        (0..self.rank).all(|i| dot(&self.simple_root(i).character, cocharacter) >= 0)
    }

    /// True when the cocharacter is a nonnegative integer combination of simple coroots.
    pub fn is_nonneg_coroot_sum(&self, cocharacter: &[i64]) -> bool {
        match self.coroot_coords(cocharacter) {
            Ok(c) => c.iter().all(|x| x.is_integer() && *x >= Rational64::zero()),
            Err(_) => false,
        }
    }

    /// Short name such as `B2:adjoint`.
    pub fn name(&self) -> String {
        format!("{}{}:{}", self.series, self.rank, self.isogeny)
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Parsed form of a group string like `"B2:adjoint"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupSpec {
    pub series: Series,
    pub rank: usize,
    pub isogeny: Isogeny,
}

impl GroupSpec {
    pub fn build(&self) -> Result<RootDatum> {
        RootDatum::build(self.series, self.rank, self.isogeny)
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("bad group spec {s:?}; expected e.g. \"B2:adjoint\" or \"A1:sc\""));
        let (ty, iso) = s.trim().split_once(':').ok_or_else(err)?;
        let mut chars = ty.chars();
        let series = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Series::A,
            Some('B') => Series::B,
            Some('C') => Series::C,
            Some('D') => Series::D,
            Some('G') => Series::G,
            _ => return Err(err()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| err())?;
        let isogeny = match iso.to_ascii_lowercase().as_str() {
            "sc" | "simply-connected" | "simplyconnected" => Isogeny::SimplyConnected,
            "adjoint" | "ad" => Isogeny::Adjoint,
            _ => return Err(err()),
        };
        Ok(GroupSpec {
            series,
            rank,
            isogeny,
        })
    }
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gaussian elimination over the rationals; `None` if singular.
fn solve(mut m: Vec<Vec<Rational64>>, mut b: Vec<Rational64>) -> Option<Vec<Rational64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Rational64::one() / m[col][col];
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col] * inv;
                for c in col..n {
                    let sub = factor * m[col][c];
                    m[r][c] -= sub;
                }
                let sub = factor * b[col];
                b[r] -= sub;
            }
        }
    }
    Some((0..n).map(|i| b[i] / m[i][i]).collect())
}
