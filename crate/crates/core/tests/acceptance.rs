//! End-to-end acceptance checks, one line per criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use convpave::grass::{self, ParabolicChoice};
use convpave::hecke::{convolution_value, hecke_product, structure_constants, HeckeElement};
use convpave::notation::parse_tuple;
use convpave::oracle::{verify_bott_samelson, verify_subword_bruhat};
use convpave::paving::{iwahori_fiber_table, parahoric_count, parahoric_fiber};
use convpave::{AffineWeylGroup, Cells, GroupSpec, Mode, PavingPolynomial, PolyQ, Result, Strategy, WeylElement};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_c0de;

fn group(spec: &str) -> AffineWeylGroup {
    AffineWeylGroup::new(spec.parse::<GroupSpec>().unwrap().build().unwrap()).unwrap()
}

fn word_groups() -> Vec<(&'static str, AffineWeylGroup)> {
    ["A1:sc", "A2:sc", "B2:adjoint"].into_iter().map(|s| (s, group(s))).collect()
}

/// Outcome of one criterion: a summary and any counterexamples.
struct Outcome {
    summary: String,
    failures: Vec<String>,
}

impl Outcome {
    fn new(summary: impl Into<String>) -> Self {
        Outcome {
            summary: summary.into(),
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(describe());
        }
    }
}

fn omega(g: &AffineWeylGroup) -> Vec<WeylElement> {
    let gens: Vec<WeylElement> = (0..g.rank())
        .map(|k| {
            let mut e = vec![0; g.rank()];
            e[k] = 1;
            g.omega_part(&g.translation(&e).unwrap())
        })
        .collect();
    let mut out = vec![g.identity()];
    let mut i = 0;
    while i < out.len() {
        for t in &gens {
            let y = g.multiply(&out[i], t);
            if !out.contains(&y) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

fn random_word(g: &AffineWeylGroup, rng: &mut ChaCha8Rng, len: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..g.num_generators())).collect()
}

fn random_element(g: &AffineWeylGroup, rng: &mut ChaCha8Rng, max_len: usize) -> WeylElement {
    let len = rng.gen_range(0..=max_len);
    let x = g.from_word(&random_word(g, rng, len)).unwrap();
    g.multiply(&x, omega(g).choose(rng).unwrap())
}

fn reflections(g: &AffineWeylGroup, word: &[usize]) -> Vec<WeylElement> {
    word.iter().map(|&i| g.simple_reflection(i).unwrap()).collect()
}

fn fiber_table(g: &AffineWeylGroup, word: &[usize], mode: Mode) -> BTreeMap<WeylElement, PolyQ> {
    iwahori_fiber_table(g, &reflections(g, word), mode).unwrap()
}

fn mass(g: &AffineWeylGroup, table: &BTreeMap<WeylElement, PolyQ>) -> PolyQ {
    let mut total = PolyQ::zero();
    for (v, c) in table {
        total += &c.shift(g.length(v));
    }
    total
}

fn power(p: &PolyQ, r: usize) -> PolyQ {
    (0..r).fold(PolyQ::one(), |acc, _| &acc * p)
}

/// Products of all `2^r` subwords, with multiplicity.
fn subword_products(g: &AffineWeylGroup, word: &[usize]) -> BTreeMap<WeylElement, u64> {
    let mut out = BTreeMap::new();
    for mask in 0u32..1 << word.len() {
        let sub: Vec<usize> = (0..word.len()).filter(|j| mask >> j & 1 == 1).map(|j| word[j]).collect();
        *out.entry(g.from_word(&sub).unwrap()).or_insert(0) += 1;
    }
    out
}

fn klm() -> Outcome {
    let g = group("B2:adjoint");
    let p = g.spherical().unwrap();
    let tuple = parse_tuple(&g, "t[1,1],t[1,1],t[1,1]").unwrap();
    let e = g.identity();
    let closed = [false; 3];
    let expected = PolyQ::from_coeffs(&[0, -1, 0, 0, 0, 1]);
    let limit = Duration::from_secs(60);

    let start = Instant::now();
    let route_a = parahoric_fiber::<PavingPolynomial>(&g, &tuple, &p, &e, &closed).unwrap().value();
    let time_a = start.elapsed();
    let start = Instant::now();
    let route_b = convolution_value(&g, &tuple, &p, &closed, &e).unwrap();
    let time_b = start.elapsed();

    let mut out = Outcome::new(format!(
        "B2 adjoint spherical triple: paving {route_a} in {time_a:.2?}, Hecke {route_b} in {time_b:.2?}"
    ));
    out.check(route_a == expected, || format!("paving gave {route_a}"));
    out.check(route_b == expected, || format!("Hecke gave {route_b}"));
    out.check(time_a < limit && time_b < limit, || "over 60 s".into());
    out
}

fn quadratic_relation() -> Outcome {
    let mut out = Outcome::new("T_s T_s = (q-1) T_s + q T_e for every affine simple reflection");
    let mut count = 0;
    for spec in ["A1:sc", "A2:sc", "B2:adjoint"] {
        let g = group(spec);
        for i in 0..g.num_generators() {
            let s = g.simple_reflection(i).unwrap();
            let t = HeckeElement::basis(s);
            let lhs = hecke_product(&g, &t, &t);
            let mut rhs = HeckeElement::zero();
            rhs.add_term(s, &PolyQ::q_minus_one());
            rhs.add_term(g.identity(), &PolyQ::q());
            out.check(lhs == rhs, || format!("{spec} s{i}"));
            count += 1;
        }
    }
    out.summary = format!("{} ({count} generators)", out.summary);
    out
}

fn mass_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let groups = word_groups();
    let q_plus_one = PolyQ::from_coeffs(&[1, 1]);
    let samples = 240;
    let mut out = Outcome::new(format!(
        "sum G(v) q^l(v) = q^r and sum F(v) q^l(v) = (q+1)^r on {samples} random words, r <= 12"
    ));
    for n in 0..samples {
        let (spec, g) = &groups[n % groups.len()];
        let r = rng.gen_range(1..=12);
        let word = random_word(g, &mut rng, r);
        let open = mass(g, &fiber_table(g, &word, Mode::Uncompactified));
        let compact = mass(g, &fiber_table(g, &word, Mode::Compactified));
        out.check(open == PolyQ::monomial(1, r), || format!("{spec} {word:?}: open mass {open}"));
        out.check(compact == power(&q_plus_one, r), || {
            format!("{spec} {word:?}: compactified mass {compact}")
        });
    }
    out
}

fn q_one_specializations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let groups = word_groups();
    let samples = 120;
    let mut out = Outcome::new(format!(
        "G at q=1 is the indicator of the product, F at q=1 counts subwords ({samples} words, r <= 12)"
    ));
    for n in 0..samples {
        let (spec, g) = &groups[n % groups.len()];
        let r = rng.gen_range(1..=12);
        let word = random_word(g, &mut rng, r);
        let product = g.from_word(&word).unwrap();
        let open = fiber_table(g, &word, Mode::Uncompactified);
        let compact = fiber_table(g, &word, Mode::Compactified);
        let subwords = subword_products(g, &word);
        let mut targets: Vec<WeylElement> = open.keys().chain(compact.keys()).chain(subwords.keys()).copied().collect();
        targets.push(product);
        for v in targets {
            let at_one = open.get(&v).map(|c| c.eval_i64(1)).unwrap_or_default();
            let indicator = i64::from(v == product);
            out.check(at_one == indicator.into(), || format!("{spec} {word:?} {v:?}: G(1) = {at_one}"));
            let at_one = compact.get(&v).map(|c| c.eval_i64(1)).unwrap_or_default();
            let count = subwords.get(&v).copied().unwrap_or(0);
            out.check(at_one == count.into(), || {
                format!("{spec} {word:?} {v:?}: F(1) = {at_one}, subwords {count}")
            });
        }
    }
    out
}

fn subword_sum() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let groups = word_groups();
    let samples = 60;
    let mut out = Outcome::new(format!("F(v) = sum over subwords J of G(s_J; v) on {samples} words, r <= 8"));
    for n in 0..samples {
        let (spec, g) = &groups[n % groups.len()];
        let r = rng.gen_range(1..=8);
        let word = random_word(g, &mut rng, r);
        let mut sum: BTreeMap<WeylElement, PolyQ> = BTreeMap::new();
        for mask in 0u32..1 << r {
            let sub: Vec<usize> = (0..r).filter(|j| mask >> j & 1 == 1).map(|j| word[j]).collect();
            for (v, c) in fiber_table(g, &sub, Mode::Uncompactified) {
                *sum.entry(v).or_default() += &c;
            }
        }
        sum.retain(|_, c| !c.is_zero());
        let compact = fiber_table(g, &word, Mode::Compactified);
        out.check(sum == compact, || format!("{spec} {word:?}"));
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let report = verify_bott_samelson(&[(2, 5), (3, 4)], &[2, 3]).unwrap();
    let elapsed = start.elapsed();
    let mut out = Outcome::new(format!(
        "matrix gallery counts over F2, F3 match fibers at q = p: {} checks in {elapsed:.2?}",
        report.checked
    ));
    out.failures = report.failures;
    out.check(elapsed < Duration::from_secs(300), || "over 5 min".into());
    out
}

/// A random parahoric sample: group, `S_P`, tuple, closed flags, target.
struct Sample {
    spec: &'static str,
    g: AffineWeylGroup,
    sp: Vec<usize>,
    tuple: Vec<WeylElement>,
    closed: Vec<bool>,
    x: WeylElement,
}

fn parahoric_samples(count: usize) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let specs = ["A1:sc", "A1:adjoint", "A2:sc", "A2:adjoint", "B2:sc", "B2:adjoint"];
    (0..count)
        .map(|n| {
            let spec = specs[n % specs.len()];
            let g = group(spec);
            let sp = match n / specs.len() % 3 {
                0 => Vec::new(),
                1 => vec![rng.gen_range(0..g.num_generators())],
                _ => (1..=g.rank()).collect(),
            };
            let r = rng.gen_range(1..=3);
            let tuple: Vec<WeylElement> = (0..r).map(|_| random_element(&g, &mut rng, 6)).collect();
            let closed: Vec<bool> = (0..r).map(|_| rng.gen_bool(0.25)).collect();
            // aim at the support most of the time, so that values are nonzero
            let x = match rng.gen_range(0..4) {
                0 => random_element(&g, &mut rng, 6),
                1 => g.demazure_all(&tuple),
                _ => {
                    let mut x = g.identity();
                    for y in &tuple {
                        let len = rng.gen_range(0..=g.length(y));
                        let (tau, word) = g.reduced_word(y);
                        x = g.multiply(&x, &g.multiply(&tau, &g.from_word(&word[..len]).unwrap()));
                    }
                    x
                }
            };
            Sample {
                spec,
                g,
                sp,
                tuple,
                closed,
                x,
            }
        })
        .collect()
}

fn describe(s: &Sample) -> String {
    format!("{} S_P {:?} tuple {:?} closed {:?} x {:?}", s.spec, s.sp, s.tuple, s.closed, s.x)
}

fn routes_agree(samples: &[Sample]) -> Outcome {
    let mut out = Outcome::new("");
    let mut nonzero = 0;
    for s in samples {
        let p = s.g.parabolic_data(&s.sp).unwrap();
        let route_b = convolution_value(&s.g, &s.tuple, &p, &s.closed, &s.x).unwrap();
        let cells: Cells = parahoric_fiber(&s.g, &s.tuple, &p, &s.x, &s.closed).unwrap();
        let route_a = cells.paving().value();
        nonzero += usize::from(!route_b.is_zero());
        out.check(route_a == route_b, || format!("{}: paving {route_a}, Hecke {route_b}", describe(s)));
        for strategy in [Strategy::RightPeel, Strategy::LeftPeel] {
            let count = parahoric_count(&s.g, &s.tuple, &p, &s.x, &s.closed, strategy).unwrap();
            out.check(count == route_b, || format!("{}: {strategy:?} {count}", describe(s)));
        }
    }
    out.summary = format!(
        "paving recursion = Hecke coset sums on {} tuples ({nonzero} nonzero)",
        samples.len()
    );
    out
}

fn positivity(samples: &[Sample]) -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut out = Outcome::new("");
    let mut values = 0;
    let mut constants = 0;
    let mut compact = 0;
    for s in samples {
        let p = s.g.parabolic_data(&s.sp)?;
        let v = parahoric_count(&s.g, &s.tuple, &p, &s.x, &s.closed, Strategy::Auto)?;
        values += 1;
        out.check(v.is_nonneg_in_q_minus_one(), || format!("{}: value {v}", describe(s)));
        if s.tuple.len() >= 2 {
            let table = structure_constants(&s.g, &s.tuple[0], &s.tuple[1], &p)?;
            for (v, c) in &table.constants {
                constants += 1;
                out.check(c.is_nonneg_in_q_minus_one(), || format!("{}: constant at {v:?} {c}", describe(s)));
            }
        }
        let r = rng.gen_range(1..=10);
        let word = random_word(&s.g, &mut rng, r);
        for (v, c) in fiber_table(&s.g, &word, Mode::Compactified) {
            compact += 1;
            out.check(c.has_nonneg_coeffs(), || format!("{} {word:?} at {v:?}: {c}", s.spec));
        }
    }
    out.summary = format!(
        "{values} fiber values and {constants} structure constants positive in q-1, {compact} compactified fibers in N[q]"
    );
    Ok(out)
}

fn bruhat_demazure() -> Outcome {
    let report = verify_subword_bruhat(&["A1:sc", "A1:adjoint", "A2:sc", "A2:adjoint"], 8).unwrap();
    let mut out = Outcome::new("");
    out.failures = report.failures;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let groups: Vec<AffineWeylGroup> = ["A1:sc", "A2:sc", "A2:adjoint", "B2:adjoint"].into_iter().map(group).collect();
    let triples = 10_000;
    for n in 0..triples {
        let g = &groups[n % groups.len()];
        let [x, y, z] = [0; 3].map(|_| random_element(g, &mut rng, 8));
        let left = g.demazure(&g.demazure(&x, &y), &z);
        let right = g.demazure(&x, &g.demazure(&y, &z));
        out.check(left == right, || format!("{x:?} {y:?} {z:?}"));
    }
    out.summary = format!(
        "Bruhat order = subword test on {} pairs up to length 8, Demazure associative on {triples} triples",
        report.checked
    );
    out
}

fn mv_suite() -> Result<Outcome> {
    let mut out = Outcome::new("");
    let mut checked = 0;
    let cases: [(&str, Vec<Vec<i64>>); 2] = [
        ("A1:sc", vec![vec![0], vec![1], vec![2], vec![3]]),
        ("B2:adjoint", vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 0], vec![0, 2], vec![2, 1]]),
    ];
    for (spec, mus) in cases {
        let g = group(spec);
        let p = ParabolicChoice::borel(&g);
        for mu in mus {
            let omega = grass::omega_set(&g, &mu)?;
            let witnesses = grass::nu_witnesses(&g, &mu, &p, 2)?;
            out.check(witnesses.len() == 2, || format!("{spec} {mu:?}: witnesses {witnesses:?}"));
            let mut total = PolyQ::zero();
            for lambda in grass::orbit_box(&g, &mu, 1)? {
                let values: Vec<PolyQ> = witnesses
                    .iter()
                    .map(|nu| Ok(grass::mv_intersection::<PavingPolynomial>(&g, &mu, &lambda, &p, Some(nu))?.value()))
                    .collect::<Result<_>>()?;
                checked += 1;
                out.check(values.windows(2).all(|w| w[0] == w[1]), || {
                    format!("{spec} mu {mu:?} lambda {lambda:?}: depends on nu {values:?}")
                });
                out.check(!values[0].is_zero() == omega.contains(&lambda), || {
                    format!("{spec} mu {mu:?} lambda {lambda:?}: value {} vs membership", values[0])
                });
                total += &values[0];
            }
            let cell = grass::spherical_cell_count(&g, &mu)?;
            out.check(total == cell, || format!("{spec} mu {mu:?}: total {total}, orbit {cell}"));
        }
    }
    let g = group("A1:sc");
    let extreme = grass::mv_intersection::<PavingPolynomial>(&g, &[1], &[-1], &ParabolicChoice::borel(&g), None)?.value();
    out.check(extreme == PolyQ::one(), || format!("A1 mu = a, lambda = -a: {extreme}"));
    out.summary = format!(
        "semi-infinite intersections on A1 sc and B2 adjoint: {checked} (mu, lambda) pairs, two nu each, extreme case {extreme}"
    );
    Ok(out)
}

fn main() -> ExitCode {
    let samples = parahoric_samples(120);
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("KLM reproduction", Box::new(klm)),
        ("quadratic relation", Box::new(quadratic_relation)),
        ("mass identities", Box::new(mass_identities)),
        ("q = 1 specializations", Box::new(q_one_specializations)),
        ("subword sum", Box::new(subword_sum)),
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("route A = route B", Box::new(|| routes_agree(&samples))),
        ("positivity", Box::new(|| positivity(&samples).unwrap())),
        ("Bruhat and Demazure", Box::new(bruhat_demazure)),
        ("semi-infinite orbits", Box::new(|| mv_suite().unwrap())),
    ];
    let mut all = true;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let passed = outcome.failures.is_empty();
        all &= passed;
        println!(
            "criterion {:>2} {:<24} {} [{:.2?}] {}",
            n + 1,
            name,
            if passed { "PASS" } else { "FAIL" },
            start.elapsed(),
            outcome.summary
        );
        for f in outcome.failures.iter().take(10) {
            println!("    {f}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
