//! Intersections of semi-infinite orbits with spherical Schubert cells in the
//! affine Grassmannian.
//!
//! For a standard parabolic `P = MN` and `ν ≥^P μ`, the points of
//! `L⁺M LN x_λ ∩ L⁺G x_μ` are counted as the fiber over `t_{-ν}` of the
//! spherical convolution of `(t_μ, t_{-ν-λ})`. All cocharacters are given in
//! lattice coordinates of `X_*`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::hecke::{parahoric_element, poincare};
use crate::paving::{parahoric_fiber, Accumulator};
use crate::poly::PolyQ;
use crate::rootdata::dot;
use crate::weyl::AffineWeylGroup;

/// Largest multiple tried by [`find_nu`].
pub const NU_SEARCH_CAP: i64 = 64;

/// A standard parabolic `P ⊇ B`, given by the simple roots of its Levi `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicChoice {
    /// 1-based simple root indices.
    levi: Vec<usize>,
    /// Indices into the datum's root list of the positive roots of `M`.
    m_roots: Vec<usize>,
    /// Positive roots of `N`.
    n_roots: Vec<usize>,
}

impl ParabolicChoice {
    pub fn new(g: &AffineWeylGroup, levi: &[usize]) -> Result<Self> {
        let mut levi = levi.to_vec();
        levi.sort_unstable();
        levi.dedup();
        for &i in &levi {
            if i == 0 || i > g.rank() {
                return Err(Error::BadGenerator {
                    index: i,
                    count: g.rank() + 1,
                });
            }
        }
        let (mut m_roots, mut n_roots) = (Vec::new(), Vec::new());
        for (k, r) in g.datum().positive_roots().iter().enumerate() {
            let in_m = r.coeffs.iter().enumerate().all(|(i, &c)| c == 0 || levi.contains(&(i + 1)));
            if in_m {
                m_roots.push(k);
            } else {
                n_roots.push(k);
            }
        }
        Ok(ParabolicChoice { levi, m_roots, n_roots })
    }

    pub fn borel(g: &AffineWeylGroup) -> Self {
        Self::new(g, &[]).expect("empty Levi")
    }

    pub fn whole(g: &AffineWeylGroup) -> Self {
        Self::new(g, &(1..=g.rank()).collect::<Vec<_>>()).expect("all simple roots")
    }

    pub fn levi(&self) -> &[usize] {
        &self.levi
    }

    pub fn m_roots(&self) -> &[usize] {
        &self.m_roots
    }

    pub fn n_roots(&self) -> &[usize] {
        &self.n_roots
    }

    pub fn is_m_dominant(&self, g: &AffineWeylGroup, lambda: &[i64]) -> bool {
        self.levi
            .iter()
            .all(|&i| dot(&g.datum().simple_root(i - 1).character, lambda) >= 0)
    }
}

fn check_dominant(g: &AffineWeylGroup, mu: &[i64]) -> Result<()> {
    g.datum().check_dim(mu.len())?;
    if g.datum().is_dominant(mu) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{mu:?} is not dominant")))
    }
}

/// `Ω(μ) = {λ : μ - wλ is a nonnegative coroot sum for all w ∈ W_0}`, sorted.
pub fn omega_set(g: &AffineWeylGroup, mu: &[i64]) -> Result<Vec<Vec<i64>>> {
    check_dominant(g, mu)?;
    let w0 = g.finite();
    let orbit: Vec<Vec<i64>> = (0..w0.order()).map(|w| w0.apply(w, mu)).collect();
    let n = g.rank();
    let lo: Vec<i64> = (0..n).map(|i| orbit.iter().map(|v| v[i]).min().unwrap_or(0)).collect();
    let hi: Vec<i64> = (0..n).map(|i| orbit.iter().map(|v| v[i]).max().unwrap_or(0)).collect();
    let datum = g.datum();
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        let ok = (0..w0.order()).all(|w| {
            let diff: Vec<i64> = mu.iter().zip(w0.apply(w, &cur)).map(|(a, b)| a - b).collect();
            datum.is_nonneg_coroot_sum(&diff)
        });
        if ok {
            out.push(cur.clone());
        }
        let Some(k) = (0..n).find(|&k| cur[k] < hi[k]) else {
            break;
        };
        cur[k] += 1;
        for (c, l) in cur.iter_mut().zip(&lo).take(k) {
            *c = *l;
        }
    }
    out.sort();
    Ok(out)
}

/// `ν ≥^P μ`: `ν` pairs to zero with the roots of `M`, and `ν + λ` pairs
/// positively with the roots of `N` for every `λ ∈ Ω(μ)`.
pub fn geq_p(g: &AffineWeylGroup, nu: &[i64], mu: &[i64], p: &ParabolicChoice) -> Result<bool> {
    g.datum().check_dim(nu.len())?;
    let omega = omega_set(g, mu)?;
    let roots = g.datum().roots();
    if p.m_roots.iter().any(|&k| dot(&roots[k].character, nu) != 0) {
        return Ok(false);
    }
    Ok(p.n_roots.iter().all(|&k| {
        omega.iter().all(|lambda| {
            let s: Vec<i64> = nu.iter().zip(lambda).map(|(a, b)| a + b).collect();
            dot(&roots[k].character, &s) > 0
        })
    }))
}

/// The smallest multiple of `Σ_{i ∉ M} ϖ_i^∨` that lies in `X_*`.
fn central_direction(g: &AffineWeylGroup, p: &ParabolicChoice) -> Result<Vec<i64>> {
    let pairings: Vec<i64> = (1..=g.rank()).map(|i| i64::from(!p.levi.contains(&i))).collect();
    for d in 1..=NU_SEARCH_CAP {
        let scaled: Vec<i64> = pairings.iter().map(|x| d * x).collect();
        if let Some(c) = g.datum().cocharacter_with_pairings(&scaled) {
            return Ok(c);
        }
    }
    Err(Error::InvalidArgument("no M-central, N-positive cocharacter in X_*".into()))
}

/// The first `count` multiples `k c` (`k ≤ 64`) of the central direction
/// with `k c ≥^P μ`.
pub fn nu_witnesses(g: &AffineWeylGroup, mu: &[i64], p: &ParabolicChoice, count: usize) -> Result<Vec<Vec<i64>>> {
    let c = central_direction(g, p)?;
    if c.iter().all(|&x| x == 0) {
        // P = G: only ν = 0 is central
        return Ok(if geq_p(g, &c, mu, p)? { vec![c] } else { Vec::new() });
    }
    let mut out = Vec::new();
    for k in 0..=NU_SEARCH_CAP {
        let nu: Vec<i64> = c.iter().map(|x| k * x).collect();
        if geq_p(g, &nu, mu, p)? {
            out.push(nu);
            if out.len() == count {
                break;
            }
        }
    }
    Ok(out)
}

pub fn find_nu(g: &AffineWeylGroup, mu: &[i64], p: &ParabolicChoice) -> Result<Vec<i64>> {
    nu_witnesses(g, mu, p, 1)?
        .pop()
        .ok_or_else(|| Error::LimitExceeded(format!("no ν ≥^P μ among the first {NU_SEARCH_CAP} multiples")))
}

/// The paving of `L⁺M LN x_λ ∩ L⁺G x_μ`, computed with the given witness
/// `ν`, or with [`find_nu`] when none is given.
pub fn mv_intersection<A: Accumulator>(
    g: &AffineWeylGroup,
    mu: &[i64],
    lambda: &[i64],
    p: &ParabolicChoice,
    nu: Option<&[i64]>,
) -> Result<A> {
    check_dominant(g, mu)?;
    g.datum().check_dim(lambda.len())?;
    if !p.is_m_dominant(g, lambda) {
        return Err(Error::InvalidArgument(format!("{lambda:?} is not M-dominant")));
    }
    let nu = match nu {
        Some(nu) => {
            if !geq_p(g, nu, mu, p)? {
                return Err(Error::InvalidArgument(format!("ν = {nu:?} does not satisfy ν ≥^P μ")));
            }
            nu.to_vec()
        }
        None => find_nu(g, mu, p)?,
    };
    let neg: Vec<i64> = nu.iter().map(|x| -x).collect();
    let shifted: Vec<i64> = nu.iter().zip(lambda).map(|(a, b)| -a - b).collect();
    let tuple = [g.translation(mu)?, g.translation(&shifted)?];
    let x = g.translation(&neg)?;
    parahoric_fiber(g, &tuple, &g.spherical()?, &x, &[false, false])
}

/// `|L⁺G x_μ (F_q)|`, as the Poincaré polynomial of the double coset of
/// `t_μ` divided by that of `W_0`.
pub fn spherical_cell_count(g: &AffineWeylGroup, mu: &[i64]) -> Result<PolyQ> {
    check_dominant(g, mu)?;
    let sp = g.spherical()?;
    let f = parahoric_element(g, &g.translation(mu)?, &sp, false)?;
    let mut total = PolyQ::zero();
    for x in f.terms().keys() {
        total += &PolyQ::monomial(1, g.length(x));
    }
    total.div_exact(&poincare(&sp))
}

/// Lattice points of the box spanned by the `W_0`-orbit of `μ`, widened by
/// `margin` on each side.
pub fn orbit_box(g: &AffineWeylGroup, mu: &[i64], margin: i64) -> Result<Vec<Vec<i64>>> {
    g.datum().check_dim(mu.len())?;
    let w0 = g.finite();
    let orbit: Vec<Vec<i64>> = (0..w0.order()).map(|w| w0.apply(w, mu)).collect();
    let n = g.rank();
    let ranges: Vec<(i64, i64)> = (0..n)
        .map(|i| {
            let lo = orbit.iter().map(|v| v[i]).min().unwrap_or(0) - margin;
            let hi = orbit.iter().map(|v| v[i]).max().unwrap_or(0) + margin;
            (lo, hi)
        })
        .collect();
    let mut out: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    loop {
        out.insert(cur.clone());
        let Some(k) = (0..n).find(|&k| cur[k] < ranges[k].1) else {
            break;
        };
        cur[k] += 1;
        for (j, c) in cur.iter_mut().enumerate().take(k) {
            *c = ranges[j].0;
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paving::PavingPolynomial;
    use crate::rootdata::GroupSpec;

    fn group(spec: &str) -> AffineWeylGroup {
        AffineWeylGroup::new(spec.parse::<GroupSpec>().unwrap().build().unwrap()).unwrap()
    }

    fn p(c: &[i64]) -> PolyQ {
        PolyQ::from_coeffs(c)
    }

    #[test]
    fn omega_sets() {
        let g = group("A1:sc");
        assert_eq!(omega_set(&g, &[0]).unwrap(), vec![vec![0]]);
        assert_eq!(omega_set(&g, &[1]).unwrap(), vec![vec![-1], vec![0], vec![1]]);
        assert!(omega_set(&g, &[-1]).is_err());
        let b2 = group("B2:adjoint");
        let mu = vec![0, 1];
        let om = omega_set(&b2, &mu).unwrap();
        assert!(om.contains(&mu));
        assert_eq!(om.len(), 5);
    }

    #[test]
    fn geq_p_examples() {
        let g = group("A1:sc");
        let borel = ParabolicChoice::borel(&g);
        assert!(geq_p(&g, &[2], &[1], &borel).unwrap());
        assert!(!geq_p(&g, &[0], &[1], &borel).unwrap());
        assert!(geq_p(&g, &[0], &[1], &ParabolicChoice::whole(&g)).unwrap());
        assert!(!geq_p(&g, &[1], &[1], &ParabolicChoice::whole(&g)).unwrap());
    }

    #[test]
    fn nu_search() {
        let g = group("A1:adjoint");
        let borel = ParabolicChoice::borel(&g);
        // X_* is spanned by ϖ^∨ and α^∨ = 2ϖ^∨; <α, kϖ^∨ - α^∨> = k - 2
        assert_eq!(find_nu(&g, &[2], &borel).unwrap(), vec![3]);
        assert_eq!(find_nu(&g, &[2], &ParabolicChoice::whole(&g)).unwrap(), vec![0]);
        let sc = group("A1:sc");
        assert_eq!(find_nu(&sc, &[1], &ParabolicChoice::borel(&sc)).unwrap(), vec![2]);
    }

    #[test]
    fn a1_values() {
        let g = group("A1:sc");
        let borel = ParabolicChoice::borel(&g);
        let v = |lambda: i64| -> PolyQ { mv_intersection(&g, &[1], &[lambda], &borel, None).unwrap() };
        assert_eq!(v(-1), PolyQ::one());
        assert_eq!(v(0), p(&[-1, 1]));
        assert_eq!(v(1), p(&[0, 0, 1]));
        assert!(v(2).is_zero());
        assert!(v(-2).is_zero());
        let mass = v(-1) + v(0) + v(1);
        assert_eq!(mass, spherical_cell_count(&g, &[1]).unwrap());
    }

    #[test]
    fn witness_independence() {
        let g = group("B2:adjoint");
        let borel = ParabolicChoice::borel(&g);
        let mu = [0, 1];
        let nus = nu_witnesses(&g, &mu, &borel, 2).unwrap();
        assert_eq!(nus.len(), 2);
        let om = omega_set(&g, &mu).unwrap();
        let mut mass = PolyQ::zero();
        for lambda in orbit_box(&g, &mu, 1).unwrap() {
            let a: PavingPolynomial = mv_intersection(&g, &mu, &lambda, &borel, Some(&nus[0])).unwrap();
            let b: PavingPolynomial = mv_intersection(&g, &mu, &lambda, &borel, Some(&nus[1])).unwrap();
            assert_eq!(a.value(), b.value());
            assert_eq!(a.is_zero(), !om.contains(&lambda), "{lambda:?}");
            mass += &a.value();
        }
        assert_eq!(mass, spherical_cell_count(&g, &mu).unwrap());
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = group("A2:sc");
        let p1 = ParabolicChoice::new(&g, &[1]).unwrap();
        assert!(mv_intersection::<PolyQ>(&g, &[1, 1], &[-1, 0], &p1, None).is_err());
        assert!(ParabolicChoice::new(&g, &[3]).is_err());
        assert!(mv_intersection::<PolyQ>(&g, &[1, 1], &[0, 0], &p1, Some(&[0, 0])).is_err());
    }
}
