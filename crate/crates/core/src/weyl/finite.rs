use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::rootdata::{dot, RootDatum};

/// Hard limit on `|W_0|`; tables are quadratic in rank times this.
const MAX_FINITE_ORDER: usize = 100_000;

/// The finite Weyl group `W_0`, enumerated once, with lookup tables.
///
/// Element 0 is the identity; elements are indexed in breadth-first order of
/// discovery by right multiplication with simple reflections.
#[derive(Debug)]
pub struct FiniteWeylGroup {
    rank: usize,
    /// Row-major `rank × rank` matrices acting on `X_*` coordinates.
    matrices: Vec<Vec<i64>>,
    words: Vec<Vec<usize>>,
    right_mul: Vec<Vec<u32>>,
    left_mul: Vec<Vec<u32>>,
    right_mul_theta: Vec<u32>,
    left_mul_theta: Vec<u32>,
    inverse: Vec<u32>,
    /// `root_action[w][k]` is the index of `w(root_k)`.
    root_action: Vec<Vec<u16>>,
    theta_images: Vec<Vec<i64>>,
    generators: Vec<usize>,
    simple_root_indices: Vec<usize>,
    s_theta: usize,
}

fn mat_mul(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik != 0 {
                for j in 0..n {
                    c[i * n + j] += aik * b[k * n + j];
                }
            }
        }
    }
    c
}

/// Matrix of the reflection `x ↦ x - <α, x> α^∨` on `X_*`.
fn reflection_matrix(character: &[i64], cocharacter: &[i64]) -> Vec<i64> {
    let n = character.len();
    let mut m = vec![0; n * n];
    for r in 0..n {
        for c in 0..n {
            m[r * n + c] = i64::from(r == c) - cocharacter[r] * character[c];
        }
    }
    m
}

impl FiniteWeylGroup {
    pub(crate) fn new(datum: &RootDatum) -> Result<Self> {
        let n = datum.rank();
        let roots = datum.roots();
        let simple_root_indices: Vec<usize> = (0..n)
            .map(|i| {
                roots
                    .iter()
                    .position(|r| r.height() == 1 && r.coeffs[i] == 1)
                    .expect("simple root present")
            })
            .collect();
        let gens: Vec<Vec<i64>> = simple_root_indices
            .iter()
            .map(|&k| reflection_matrix(&roots[k].character, &roots[k].cocharacter))
            .collect();
        // s_j on root indices: β ↦ β - <β, α_j^∨> α_j
        let reflect_roots: Vec<Vec<u16>> = simple_root_indices
            .iter()
            .map(|&j| {
                let a = &roots[j];
                roots
                    .iter()
                    .map(|b| {
                        let p = dot(&b.character, &a.cocharacter);
                        let img: Vec<i64> = b.character.iter().zip(&a.character).map(|(x, y)| x - p * y).collect();
                        datum.root_index(&img).expect("reflection permutes roots") as u16
                    })
                    .collect()
            })
            .collect();

        let mut identity = vec![0; n * n];
        for i in 0..n {
            identity[i * n + i] = 1;
        }
        let mut matrices = vec![identity.clone()];
        let mut words: Vec<Vec<usize>> = vec![Vec::new()];
        let mut root_action: Vec<Vec<u16>> = vec![(0..roots.len() as u16).collect()];
        let mut index: HashMap<Vec<i64>, u32> = HashMap::new();
        index.insert(identity, 0);
        let mut right_mul: Vec<Vec<u32>> = Vec::new();
        let mut head = 0;
        while head < matrices.len() {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let m = mat_mul(&matrices[head], &gens[j], n);
                let id = match index.get(&m) {
                    Some(&id) => id,
                    None => {
                        let id = matrices.len() as u32;
                        if matrices.len() >= MAX_FINITE_ORDER {
                            return Err(Error::LimitExceeded(format!(
                                "finite Weyl group of {} is larger than {MAX_FINITE_ORDER}",
                                datum.name()
                            )));
                        }
                        let mut word = words[head].clone();
                        word.push(j);
                        let action: Vec<u16> = (0..roots.len())
                            .map(|k| root_action[head][reflect_roots[j][k] as usize])
                            .collect();
                        index.insert(m.clone(), id);
                        matrices.push(m);
                        words.push(word);
                        root_action.push(action);
                        id
                    }
                };
                row.push(id);
            }
            right_mul.push(row);
            head += 1;
        }

        let lookup = |m: &Vec<i64>| -> u32 { *index.get(m).expect("group is closed") };
        let order = matrices.len();
        let inverse: Vec<u32> = (0..order)
            .map(|w| {
                // inverse of a product of reflections is the reversed product
                let mut m = matrices[0].clone();
                for &j in words[w].iter().rev() {
                    m = mat_mul(&m, &gens[j], n);
                }
                lookup(&m)
            })
            .collect();
        let left_mul: Vec<Vec<u32>> = (0..order)
            .map(|w| (0..n).map(|j| lookup(&mat_mul(&gens[j], &matrices[w], n))).collect())
            .collect();
        let theta = datum.highest_root();
        let s_theta_m = reflection_matrix(&theta.character, &theta.cocharacter);
        let s_theta = lookup(&s_theta_m) as usize;
        let right_mul_theta = (0..order).map(|w| lookup(&mat_mul(&matrices[w], &s_theta_m, n))).collect();
        let left_mul_theta = (0..order).map(|w| lookup(&mat_mul(&s_theta_m, &matrices[w], n))).collect();
        let theta_images = matrices.iter().map(|m| mat_vec(m, &theta.cocharacter, n)).collect();
        let generators = (0..n).map(|j| right_mul[0][j] as usize).collect();

        Ok(FiniteWeylGroup {
            rank: n,
            matrices,
            words,
            right_mul,
            left_mul,
            right_mul_theta,
            left_mul_theta,
            inverse,
            root_action,
            theta_images,
            generators,
            simple_root_indices,
            s_theta,
        })
    }

    pub fn order(&self) -> usize {
        self.matrices.len()
    }

    pub fn matrix(&self, w: usize) -> &[i64] {
        &self.matrices[w]
    }

    /// Reduced word in finite simple reflections (0-based finite indices).
    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    pub fn length(&self, w: usize) -> usize {
        self.words[w].len()
    }

    /// Index of the simple reflection `s_{j+1}`.
    pub fn generator(&self, j: usize) -> usize {
        self.generators[j]
    }

    pub fn s_theta(&self) -> usize {
        self.s_theta
    }

    pub fn right_mul(&self, w: usize, j: usize) -> usize {
        self.right_mul[w][j] as usize
    }

    pub fn left_mul(&self, w: usize, j: usize) -> usize {
        self.left_mul[w][j] as usize
    }

    pub fn right_mul_theta(&self, w: usize) -> usize {
        self.right_mul_theta[w] as usize
    }

    pub fn left_mul_theta(&self, w: usize) -> usize {
        self.left_mul_theta[w] as usize
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverse[w] as usize
    }

    pub fn multiply(&self, u: usize, v: usize) -> usize {
        self.words[v].iter().fold(u, |acc, &j| self.right_mul(acc, j))
    }

    /// `w(θ^∨)` as a cocharacter.
    pub fn theta_coroot_image(&self, w: usize) -> &[i64] {
        &self.theta_images[w]
    }

    pub fn root_image(&self, w: usize, root: usize) -> usize {
        self.root_action[w][root] as usize
    }

    pub fn simple_root_index(&self, j: usize) -> usize {
        self.simple_root_indices[j]
    }

    pub fn apply(&self, w: usize, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.matrices[w], v, self.rank)
    }

    /// Index of the element with the given reduced (or any) word.
    pub fn from_word(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &j| self.right_mul(acc, j))
    }
}

fn mat_vec(m: &[i64], v: &[i64], n: usize) -> Vec<i64> {
    (0..n).map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum()).collect()
}
