use std::fmt;

use crate::error::{Error, Result};

/// A square matrix over the prime field `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FFMatrix {
    n: usize,
    p: u32,
    data: Vec<u32>,
}

pub const SUPPORTED_PRIMES: [u32; 3] = [2, 3, 5];

fn check_prime(p: u32) -> Result<()> {
    if SUPPORTED_PRIMES.contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("prime {p} not in {SUPPORTED_PRIMES:?}")))
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| a * b % p == 1).expect("nonzero element of a prime field")
}

impl FFMatrix {
    pub fn identity(n: usize, p: u32) -> Result<Self> {
        check_prime(p)?;
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Ok(FFMatrix { n, p, data })
    }

    /// Entries in row-major order, reduced mod `p`.
    pub fn from_entries(n: usize, p: u32, entries: &[i64]) -> Result<Self> {
        check_prime(p)?;
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        let data = entries.iter().map(|&x| x.rem_euclid(i64::from(p)) as u32).collect();
        Ok(FFMatrix { n, p, data })
    }

    /// The root group element `1 + x E_{i-1,i}` of the simple root `α_i`
    /// (`i` is 1-based).
    pub fn root_element(n: usize, p: u32, i: usize, x: u32) -> Result<Self> {
        let mut m = Self::identity(n, p)?;
        m.data[(i - 1) * n + i] = x % p;
        Ok(m)
    }

    /// The lift `ṡ_i`: the block `[[0, 1], [-1, 0]]` in rows and columns
    /// `i-1, i`.
    pub fn s_dot(n: usize, p: u32, i: usize) -> Result<Self> {
        let mut m = Self::identity(n, p)?;
        let (a, b) = (i - 1, i);
        m.data[a * n + a] = 0;
        m.data[b * n + b] = 0;
        m.data[a * n + b] = 1;
        m.data[b * n + a] = p - 1;
        Ok(m)
    }

    /// `ṡ_{i_1} ⋯ ṡ_{i_k}` for a word in 1-based indices.
    pub fn lift(n: usize, p: u32, word: &[usize]) -> Result<Self> {
        let mut m = Self::identity(n, p)?;
        for &i in word {
            if i == 0 || i >= n {
                return Err(Error::BadGenerator { index: i, count: n });
            }
            m = m.mul(&Self::s_dot(n, p, i)?);
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.n + c]
    }

    pub fn mul(&self, other: &FFMatrix) -> FFMatrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a != 0 {
                    for j in 0..n {
                        data[i * n + j] = (data[i * n + j] + a * other.data[k * n + j]) % self.p;
                    }
                }
            }
        }
        FFMatrix { n, p: self.p, data }
    }

    pub fn det(&self) -> u32 {
        let (n, p) = (self.n, self.p);
        let mut a = self.data.clone();
        let mut det = 1u32;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| a[r * n + c] != 0) else {
                return 0;
            };
            if r != c {
                for j in 0..n {
                    a.swap(r * n + j, c * n + j);
                }
                det = (p - det) % p;
            }
            let piv = a[c * n + c];
            det = det * piv % p;
            let inv = inv_mod(piv, p);
            for r in c + 1..n {
                let f = a[r * n + c] * inv % p;
                if f != 0 {
                    for j in c..n {
                        a[r * n + j] = (a[r * n + j] + p * p - f * a[c * n + j] % p) % p;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<FFMatrix> {
        let (n, p) = (self.n, self.p);
        let mut a = self.data.clone();
        let mut inv = Self::identity(n, p)?.data;
        for c in 0..n {
            let r = (c..n)
                .find(|&r| a[r * n + c] != 0)
                .ok_or_else(|| Error::InvalidArgument("singular matrix".into()))?;
            for j in 0..n {
                a.swap(r * n + j, c * n + j);
                inv.swap(r * n + j, c * n + j);
            }
            let s = inv_mod(a[c * n + c], p);
            for j in 0..n {
                a[c * n + j] = a[c * n + j] * s % p;
                inv[c * n + j] = inv[c * n + j] * s % p;
            }
            for r in 0..n {
                let f = a[r * n + c];
                if r != c && f != 0 {
                    for j in 0..n {
                        a[r * n + j] = (a[r * n + j] + p * p - f * a[c * n + j]) % p;
                        inv[r * n + j] = (inv[r * n + j] + p * p - f * inv[c * n + j]) % p;
                    }
                }
            }
        }
        Ok(FFMatrix { n, p, data: inv })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|r| (0..r).all(|c| self.get(r, c) == 0))
    }

    fn rank_of(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> usize {
        let p = self.p;
        let mut a: Vec<Vec<u32>> = rows.map(|r| cols.clone().map(|c| self.get(r, c)).collect()).collect();
        let width = cols.len();
        let mut rank = 0;
        for c in 0..width {
            let Some(r) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
                continue;
            };
            a.swap(rank, r);
            let inv = inv_mod(a[rank][c], p);
            for r in 0..a.len() {
                if r != rank && a[r][c] != 0 {
                    let f = a[r][c] * inv % p;
                    for j in 0..width {
                        a[r][j] = (a[r][j] + p * p - f * a[rank][j]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// All `n × n` matrices of determinant one, in lexicographic order of
    /// entries.
    pub fn special_linear_group(n: usize, p: u32) -> Result<Vec<FFMatrix>> {
        check_prime(p)?;
        let total = (p as u64).checked_pow((n * n) as u32).unwrap_or(u64::MAX);
        if total > 2_000_000 {
            return Err(Error::LimitExceeded(format!("SL_{n}(F_{p}) is too large to enumerate")));
        }
        let mut out = Vec::new();
        let mut data = vec![0u32; n * n];
        for _ in 0..total {
            let m = FFMatrix { n, p, data: data.clone() };
            if m.det() == 1 {
                out.push(m);
            }
            for d in data.iter_mut().rev() {
                *d += 1;
                if *d < p {
                    break;
                }
                *d = 0;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for FFMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|r| {
                (0..self.n)
                    .map(|c| self.get(r, c).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}] mod {}", rows.join("; "), self.p)
    }
}

/// A permutation of `0..n`; `perm[j]` is the row of the nonzero entry in
/// column `j` of its matrix.
pub type Perm = Vec<usize>;

/// The `w` with `m ∈ B w B` (`B` upper triangular), read off from the ranks
/// of the lower-left submatrices.
pub fn bruhat_cell(m: &FFMatrix) -> Result<Perm> {
    let n = m.n();
    if m.det() == 0 {
        return Err(Error::InvalidArgument("singular matrix".into()));
    }
    // r[i][j] = rank of rows i.., columns ..j
    let mut r = vec![vec![0usize; n + 1]; n + 1];
    for i in 0..n {
        for j in 1..=n {
            r[i][j] = m.rank_of(i..n, 0..j);
        }
    }
    let mut perm = vec![usize::MAX; n];
    for j in 1..=n {
        for i in 0..n {
            let here = r[i][j] - r[i][j - 1];
            let below = r[i + 1][j] - r[i + 1][j - 1];
            if here == 1 && below == 0 {
                perm[j - 1] = i;
            }
        }
    }
    debug_assert!(perm.iter().all(|&x| x < n));
    Ok(perm)
}

/// Reduced word (1-based indices) of a permutation, `w = s_{i_1} ∘ ⋯ ∘ s_{i_k}`.
pub fn perm_word(perm: &[usize]) -> Vec<usize> {
    let mut w = perm.to_vec();
    let mut word = Vec::new();
    while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
        w.swap(i, i + 1);
        word.push(i + 1);
    }
    word.reverse();
    word
}

pub fn perm_from_word(n: usize, word: &[usize]) -> Perm {
    let mut w: Perm = (0..n).collect();
    for &i in word {
        w.swap(i - 1, i);
    }
    w
}

pub fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(cur: &mut Perm, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
