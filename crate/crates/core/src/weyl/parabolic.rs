use rustc_hash::FxHashSet;

use super::{AffineWeylGroup, WeylElement};
use crate::error::{Error, Result};

/// A finite standard parabolic subgroup `W_P ⊂ W_aff` generated by a subset
/// of the affine simple reflections.
#[derive(Debug, Clone)]
pub struct ParabolicData {
    generators: Vec<usize>,
    /// Sorted by length, then element order.
    elements: Vec<WeylElement>,
    members: FxHashSet<WeylElement>,
    /// `length_counts[k]` = number of elements of length `k`.
    length_counts: Vec<usize>,
    longest: WeylElement,
}

impl ParabolicData {
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: &WeylElement) -> bool {
        self.members.contains(x)
    }

    pub fn length_counts(&self) -> &[usize] {
        &self.length_counts
    }

    pub fn longest(&self) -> WeylElement {
        self.longest
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Normal forms of a double coset `W_P x W_P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetForms {
    pub min_rep: WeylElement,
    pub max_rep: WeylElement,
    /// The right-`W_P`-minimal representatives `η` with
    /// `W_P x W_P = ⊔ η W_P`, sorted by length.
    pub eta_list: Vec<WeylElement>,
}

impl AffineWeylGroup {
    /// Enumerates `W_P` for a set of affine simple reflection indices.
    pub fn parabolic_data(&self, generators: &[usize]) -> Result<ParabolicData> {
        let mut gens: Vec<usize> = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        for &i in &gens {
            self.check_generator(i)?;
        }
        let mut members: FxHashSet<WeylElement> = FxHashSet::default();
        members.insert(WeylElement::IDENTITY);
        let mut frontier = vec![WeylElement::IDENTITY];
        while let Some(x) = frontier.pop() {
            for &i in &gens {
                let y = self.right_mul_simple(&x, i);
                if members.insert(y) {
                    if members.len() > self.enum_cap {
                        return Err(Error::NotFiniteType { cap: self.enum_cap });
                    }
                    frontier.push(y);
                }
            }
        }
        let elements = self.sorted(members.iter().copied());
        let mut length_counts = Vec::new();
        for x in &elements {
            let l = self.length(x);
            if length_counts.len() <= l {
                length_counts.resize(l + 1, 0);
            }
            length_counts[l] += 1;
        }
        let longest = *elements.last().expect("contains identity");
        Ok(ParabolicData {
            generators: gens,
            elements,
            members,
            length_counts,
            longest,
        })
    }

    /// The spherical parabolic `W_0 = ⟨s_1, …, s_n⟩`.
    pub fn spherical(&self) -> Result<ParabolicData> {
        self.parabolic_data(&(1..=self.rank()).collect::<Vec<_>>())
    }

    /// Minimal element of `x W_P`.
    pub fn right_min(&self, x: &WeylElement, p: &ParabolicData) -> WeylElement {
        let mut cur = *x;
        while let Some(&s) = p.generators.iter().find(|&&s| self.is_right_descent(&cur, s)) {
            cur = self.right_mul_simple(&cur, s);
        }
        cur
    }

    /// Maximal element of `x W_P`.
    pub fn right_max(&self, x: &WeylElement, p: &ParabolicData) -> WeylElement {
        let mut cur = *x;
        while let Some(&s) = p.generators.iter().find(|&&s| !self.is_right_descent(&cur, s)) {
            cur = self.right_mul_simple(&cur, s);
        }
        cur
    }

    pub fn is_right_minimal(&self, x: &WeylElement, p: &ParabolicData) -> bool {
        p.generators.iter().all(|&s| !self.is_right_descent(x, s))
    }

    /// Minimal element of `W_P x W_P`.
    pub fn double_min(&self, x: &WeylElement, p: &ParabolicData) -> WeylElement {
        let mut cur = *x;
        loop {
            if let Some(&s) = p.generators.iter().find(|&&s| self.is_left_descent(s, &cur)) {
                cur = self.left_mul_simple(s, &cur);
            } else if let Some(&s) = p.generators.iter().find(|&&s| self.is_right_descent(&cur, s)) {
                cur = self.right_mul_simple(&cur, s);
            } else {
                return cur;
            }
        }
    }

    /// Maximal element of `W_P x W_P`.
    pub fn double_max(&self, x: &WeylElement, p: &ParabolicData) -> WeylElement {
        let mut cur = *x;
        loop {
            if let Some(&s) = p.generators.iter().find(|&&s| !self.is_left_descent(s, &cur)) {
                cur = self.left_mul_simple(s, &cur);
            } else if let Some(&s) = p.generators.iter().find(|&&s| !self.is_right_descent(&cur, s)) {
                cur = self.right_mul_simple(&cur, s);
            } else {
                return cur;
            }
        }
    }

    /// All elements of `W_P x W_P`, sorted.
    pub fn double_coset(&self, x: &WeylElement, p: &ParabolicData) -> Vec<WeylElement> {
        let mut seen: FxHashSet<WeylElement> = FxHashSet::default();
        for a in p.elements() {
            let ax = self.multiply(a, x);
            for b in p.elements() {
                seen.insert(self.multiply(&ax, b));
            }
        }
        self.sorted(seen)
    }

    pub fn coset_normal_forms(&self, x: &WeylElement, p: &ParabolicData) -> CosetForms {
        let mut etas: FxHashSet<WeylElement> = FxHashSet::default();
        for a in p.elements() {
            etas.insert(self.right_min(&self.multiply(a, x), p));
        }
        CosetForms {
            min_rep: self.double_min(x, p),
            max_rep: self.double_max(x, p),
            eta_list: self.sorted(etas),
        }
    }
}
