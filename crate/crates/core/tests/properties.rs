use std::collections::BTreeMap;
use std::sync::OnceLock;

use convpave::hecke::{hecke_product, structure_constants, HeckeElement};
use convpave::paving::{iwahori_fiber, parahoric_fiber};
use convpave::{AffineWeylGroup, Cells, Factor, GroupSpec, Mode, PolyQ, WeylElement};
use proptest::prelude::*;

const SPECS: [&str; 6] = ["A1:sc", "A1:adjoint", "A2:sc", "A2:adjoint", "B2:sc", "B2:adjoint"];

fn groups() -> &'static [AffineWeylGroup] {
    static GROUPS: OnceLock<Vec<AffineWeylGroup>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        SPECS
            .iter()
            .map(|s| AffineWeylGroup::new(s.parse::<GroupSpec>().unwrap().build().unwrap()).unwrap())
            .collect()
    })
}

/// A word in raw letters plus a translation, mapped into a group.
#[derive(Debug, Clone)]
struct RawElement {
    letters: Vec<usize>,
    shift: Vec<i64>,
}

fn raw_element(max_len: usize) -> impl Strategy<Value = RawElement> {
    (prop::collection::vec(0usize..8, 0..=max_len), prop::collection::vec(-1i64..=1, 2))
        .prop_map(|(letters, shift)| RawElement { letters, shift })
}

fn element(g: &AffineWeylGroup, raw: &RawElement) -> WeylElement {
    let word: Vec<usize> = raw.letters.iter().map(|l| l % g.num_generators()).collect();
    let x = g.from_word(&word).unwrap();
    // the length-zero part of a translation moves to another component
    let t = g.omega_part(&g.translation(&raw.shift[..g.rank()]).unwrap());
    g.multiply(&x, &t)
}

fn subset(g: &AffineWeylGroup, kind: u8) -> Vec<usize> {
    match kind % 3 {
        0 => Vec::new(),
        1 => vec![usize::from(kind / 3) % g.num_generators()],
        _ => (1..=g.rank()).collect(),
    }
}

fn at_one(h: &HeckeElement) -> BTreeMap<WeylElement, i64> {
    h.terms()
        .iter()
        .map(|(x, c)| (*x, i64::try_from(c.eval_i64(1)).unwrap()))
        .filter(|(_, c)| *c != 0)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn reduced_words_round_trip(gi in 0..SPECS.len(), x in raw_element(10)) {
        let g = &groups()[gi];
        let x = element(g, &x);
        let (tau, word) = g.reduced_word(&x);
        prop_assert!(g.is_omega(&tau));
        prop_assert_eq!(word.len(), g.length(&x));
        prop_assert_eq!(g.multiply(&tau, &g.from_word(&word).unwrap()), x);
    }

    #[test]
    fn demazure_is_product_iff_lengths_add(gi in 0..SPECS.len(), x in raw_element(6), y in raw_element(6)) {
        let g = &groups()[gi];
        let (x, y) = (element(g, &x), element(g, &y));
        let xy = g.multiply(&x, &y);
        let additive = g.length(&xy) == g.length(&x) + g.length(&y);
        prop_assert_eq!(additive, g.demazure(&x, &y) == xy);
        prop_assert!(g.bruhat_leq(&xy, &g.demazure(&x, &y)));
    }

    #[test]
    fn coset_representatives_are_fixed_points(gi in 0..SPECS.len(), x in raw_element(8), kind in 0u8..12) {
        let g = &groups()[gi];
        let x = element(g, &x);
        let p = g.parabolic_data(&subset(g, kind)).unwrap();
        let forms = g.coset_normal_forms(&x, &p);
        for rep in [forms.min_rep, forms.max_rep] {
            let again = g.coset_normal_forms(&rep, &p);
            prop_assert_eq!(again.min_rep, forms.min_rep);
            prop_assert_eq!(again.max_rep, forms.max_rep);
        }
        prop_assert!(g.length(&forms.min_rep) <= g.length(&x));
        prop_assert!(g.length(&x) <= g.length(&forms.max_rep));
        prop_assert_eq!(forms.eta_list.len() * p.order(), g.double_coset(&x, &p).len());
    }

    #[test]
    fn hecke_product_is_associative(gi in 0..SPECS.len(), x in raw_element(4), y in raw_element(4), z in raw_element(4)) {
        let g = &groups()[gi];
        let [x, y, z] = [x, y, z].map(|r| HeckeElement::basis(element(g, &r)));
        let mut xy = hecke_product(g, &x, &y);
        xy.add(&x);
        let left = hecke_product(g, &xy, &z);
        let yz = hecke_product(g, &y, &z);
        let mut right = hecke_product(g, &x, &yz);
        right.add(&hecke_product(g, &x, &z));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn hecke_product_at_one_is_the_group_product(gi in 0..SPECS.len(), x in raw_element(6), y in raw_element(6)) {
        let g = &groups()[gi];
        let (x, y) = (element(g, &x), element(g, &y));
        let h = hecke_product(g, &HeckeElement::basis(x), &HeckeElement::basis(y));
        prop_assert_eq!(at_one(&h), BTreeMap::from([(g.multiply(&x, &y), 1)]));
    }

    #[test]
    fn iwahori_constants_are_basis_products(gi in 0..SPECS.len(), x in raw_element(5), y in raw_element(5)) {
        let g = &groups()[gi];
        let (x, y) = (element(g, &x), element(g, &y));
        let table = structure_constants(g, &x, &y, &g.parabolic_data(&[]).unwrap()).unwrap();
        let h = hecke_product(g, &HeckeElement::basis(x), &HeckeElement::basis(y));
        prop_assert_eq!(&table.constants, h.terms());
    }

    #[test]
    fn structure_constants_are_bounded_by_the_demazure_product(
        gi in 0..SPECS.len(), x in raw_element(5), y in raw_element(5), kind in 0u8..12,
    ) {
        let g = &groups()[gi];
        let (x, y) = (element(g, &x), element(g, &y));
        let p = g.parabolic_data(&subset(g, kind)).unwrap();
        let table = structure_constants(g, &x, &y, &p).unwrap();
        let top = g.demazure(&table.w1, &table.w2);
        prop_assert!(!table.get(&top).is_zero());
        for (v, c) in &table.constants {
            prop_assert!(g.bruhat_leq(v, &top));
            prop_assert!(c.is_nonneg_in_q_minus_one(), "{}", c);
        }
    }

    #[test]
    fn parahoric_fibers_are_coset_invariant(
        gi in 0..SPECS.len(),
        tuple in prop::collection::vec(raw_element(4), 1..=3),
        kind in 0u8..12,
        pick in 0usize..64,
    ) {
        let g = &groups()[gi];
        let tuple: Vec<WeylElement> = tuple.iter().map(|r| element(g, r)).collect();
        let p = g.parabolic_data(&subset(g, kind)).unwrap();
        let x = g.multiply(&g.demazure_all(&tuple), &g.inverse(&p.elements()[pick % p.order()]));
        let closed = vec![false; tuple.len()];
        let cells: Cells = parahoric_fiber(g, &tuple, &p, &x, &closed).unwrap();
        let value = cells.paving().value();
        for w in p.elements() {
            let y = g.multiply(&x, w);
            let other: PolyQ = parahoric_fiber::<Cells>(g, &tuple, &p, &y, &closed).unwrap().paving().value();
            prop_assert_eq!(&other, &value);
        }
        prop_assert!(!value.is_zero());
        let total = cells.0.iter().fold(PolyQ::zero(), |acc, c| {
            &acc + &PolyQ::cell(c.a(), c.b())
        });
        prop_assert_eq!(total, value);
    }

    #[test]
    fn compactified_cells_have_no_gm_factor(gi in 0..SPECS.len(), word in prop::collection::vec(0usize..8, 0..=9), v in raw_element(9)) {
        let g = &groups()[gi];
        let tuple: Vec<WeylElement> = word.iter().map(|l| g.simple_reflection(l % g.num_generators()).unwrap()).collect();
        let v = element(g, &v);
        let cells: Cells = iwahori_fiber(g, &tuple, &v, Mode::Compactified).unwrap();
        for c in &cells.0 {
            prop_assert!(!c.factors.contains(&Factor::Gm));
            prop_assert_eq!(c.b(), 0);
        }
        let value: PolyQ = iwahori_fiber(g, &tuple, &v, Mode::Compactified).unwrap();
        prop_assert_eq!(cells.paving().value(), value);
    }
}
