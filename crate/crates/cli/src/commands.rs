use std::collections::BTreeMap;
use std::fmt::Write as _;

use convpave::grass::{self, ParabolicChoice};
use convpave::hecke::{self, HeckeElement};
use convpave::notation::{element_to_json, format_element, parse_element, parse_subset, parse_tuple};
use convpave::oracle::{self, Report};
use convpave::paving::{self, Cells, Mode, PavingPolynomial, Strategy};
use convpave::weyl::format_word;
use convpave::{AffineWeylGroup, Error, GroupSpec, PolyQ, Result, WeylElement};
use num_rational::Rational64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::{Cli, Command, GroupCommand, HeckeCommand, MvArgs, OracleCommand, PavingCommand, StrategyArg, Suite, WeylCommand};

pub struct Output {
    pub json: Value,
    pub text: String,
    pub status: u8,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, status: 0 }
    }
}

fn group(spec: &str) -> Result<AffineWeylGroup> {
    AffineWeylGroup::new(spec.parse::<GroupSpec>()?.build()?)
}

fn elem(g: &AffineWeylGroup, x: &WeylElement) -> Value {
    let mut v = element_to_json(g, x);
    v["text"] = json!(format_element(g, x));
    v["length"] = json!(g.length(x));
    v
}

fn poly_json(p: &PolyQ) -> Value {
    let mut v = p.to_json();
    v["text"] = json!(p.to_string());
    v
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Group {
            command: GroupCommand::Describe(a),
        } => describe(&a.group),
        Command::Weyl { command } => weyl(command),
        Command::Hecke { command } => hecke_cmd(command),
        Command::Paving { command } => paving_cmd(command),
        Command::Mv(args) => mv(args),
        Command::Oracle {
            command: OracleCommand::Verify { all, suite },
        } => verify(*all, *suite),
    }
}

fn describe(spec: &str) -> Result<Output> {
    let g = group(spec)?;
    let d = g.datum();
    let roots: Vec<Value> = d.positive_roots().iter().map(|r| json!(r)).collect();
    let json = json!({
        "group": d.name(),
        "rank": d.rank(),
        "isogeny": d.isogeny().to_string(),
        "cartan_matrix": d.cartan_matrix(),
        "positive_roots": roots,
        "highest_root": json!(d.highest_root()),
        "two_rho": d.two_rho(),
        "finite_weyl_group_order": g.finite().order(),
    });
    let mut text = String::new();
    let _ = writeln!(text, "group          {}", d.name());
    let _ = writeln!(text, "cartan matrix  {:?}", d.cartan_matrix());
    let _ = writeln!(text, "positive roots {}", d.num_positive_roots());
    for r in d.positive_roots() {
        let _ = writeln!(text, "  {:?}  coroot {:?}", r.coeffs, r.coroot_coeffs);
    }
    let _ = writeln!(text, "highest root   {:?}", d.highest_root().coeffs);
    let _ = writeln!(text, "2rho           {:?}", d.two_rho());
    let _ = writeln!(text, "|W_0|          {}", g.finite().order());
    Ok(Output::ok(json, text))
}

fn weyl(cmd: &WeylCommand) -> Result<Output> {
    match cmd {
        WeylCommand::Length { group: a, x } => {
            let g = group(&a.group)?;
            let x = parse_element(&g, x)?;
            let l = g.length(&x);
            Ok(Output::ok(json!({ "element": elem(&g, &x), "length": l }), l.to_string()))
        }
        WeylCommand::Word { group: a, x } => {
            let g = group(&a.group)?;
            let x = parse_element(&g, x)?;
            let (tau, word) = g.reduced_word(&x);
            let text = format!("tau {}  word [{}]", format_element(&g, &tau), format_word(&word));
            Ok(Output::ok(
                json!({ "element": elem(&g, &x), "tau": elem(&g, &tau), "word": format_word(&word) }),
                text,
            ))
        }
        WeylCommand::Bruhat { group: a, x, y } => {
            let g = group(&a.group)?;
            let (x, y) = (parse_element(&g, x)?, parse_element(&g, y)?);
            let leq = g.bruhat_leq(&x, &y);
            Ok(Output::ok(json!({ "x": elem(&g, &x), "y": elem(&g, &y), "leq": leq }), leq.to_string()))
        }
        WeylCommand::Demazure { group: a, x, y } => {
            let g = group(&a.group)?;
            let (x, y) = (parse_element(&g, x)?, parse_element(&g, y)?);
            let z = g.demazure(&x, &y);
            Ok(Output::ok(json!({ "element": elem(&g, &z) }), format_element(&g, &z)))
        }
        WeylCommand::Cosets { group: a, x, sp } => {
            let g = group(&a.group)?;
            let x = parse_element(&g, x)?;
            let pd = g.parabolic_data(&parse_subset(&g, sp)?)?;
            let f = g.coset_normal_forms(&x, &pd);
            let etas: Vec<Value> = f.eta_list.iter().map(|e| elem(&g, e)).collect();
            let mut text = String::new();
            let _ = writeln!(text, "min  {}", format_element(&g, &f.min_rep));
            let _ = writeln!(text, "max  {}", format_element(&g, &f.max_rep));
            for e in &f.eta_list {
                let _ = writeln!(text, "eta  {}", format_element(&g, e));
            }
            Ok(Output::ok(
                json!({
                    "min_rep": elem(&g, &f.min_rep),
                    "max_rep": elem(&g, &f.max_rep),
                    "eta_list": etas,
                    "double_coset_size": f.eta_list.len() * pd.order(),
                }),
                text,
            ))
        }
    }
}

fn hecke_text(g: &AffineWeylGroup, h: &HeckeElement) -> String {
    let mut text = String::new();
    for x in g.sorted(h.terms().keys().copied()) {
        let _ = writeln!(text, "{:<24} {}", format_element(g, &x), h.coeff(&x));
    }
    if h.is_empty() {
        text.push('0');
    }
    text
}

fn hecke_cmd(cmd: &HeckeCommand) -> Result<Output> {
    match cmd {
        HeckeCommand::Product { group: a, tuple } => {
            let g = group(&a.group)?;
            let mut h = HeckeElement::basis(g.identity());
            for x in parse_tuple(&g, tuple)? {
                h = hecke::hecke_product(&g, &h, &HeckeElement::basis(x));
            }
            Ok(Output::ok(json!({ "product": h.to_json(&g) }), hecke_text(&g, &h)))
        }
        HeckeCommand::Constants { group: a, sp, w1, w2 } => {
            let g = group(&a.group)?;
            let pd = g.parabolic_data(&parse_subset(&g, sp)?)?;
            let (w1, w2) = (parse_element(&g, w1)?, parse_element(&g, w2)?);
            let table = hecke::structure_constants(&g, &w1, &w2, &pd)?;
            let mut text = String::new();
            for v in g.sorted(table.constants.keys().copied()) {
                let _ = writeln!(text, "{:<24} {}", format_element(&g, &v), table.get(&v));
            }
            Ok(Output::ok(table.to_json(&g), text))
        }
    }
}

fn parse_closed(s: &str, r: usize) -> Result<Vec<bool>> {
    match s.trim() {
        "none" => Ok(vec![false; r]),
        "all" => Ok(vec![true; r]),
        other => {
            let flags: Vec<bool> = other
                .split(',')
                .map(|t| match t.trim() {
                    "0" => Ok(false),
                    "1" => Ok(true),
                    _ => Err(Error::Parse(format!("bad closed flag {t:?}"))),
                })
                .collect::<Result<_>>()?;
            if flags.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    got: flags.len(),
                });
            }
            Ok(flags)
        }
    }
}

fn paving_text(p: &PavingPolynomial, cells: Option<(&AffineWeylGroup, &Cells)>) -> String {
    let value = p.value();
    let mut text = String::new();
    let _ = writeln!(text, "value  {value}");
    let _ = writeln!(text, "in q-1 {}", value.in_q_minus_one().to_string().replace('q', "z"));
    for (&(a, b), m) in p.monomials() {
        let _ = writeln!(text, "  {m} x q^{a} (q-1)^{b}");
    }
    if let Some((g, cells)) = cells {
        for c in &cells.0 {
            let factors: Vec<&str> = c.factors.iter().map(|f| f.as_str()).collect();
            let trace: Vec<String> = c.trace.iter().map(|x| format_element(g, x)).collect();
            let _ = writeln!(text, "  cell [{}] via {}", factors.join(" "), trace.join(" -> "));
        }
    }
    text
}

fn paving_json(g: &AffineWeylGroup, p: &PavingPolynomial, cells: Option<&Cells>) -> Value {
    let mut v = p.to_json();
    v["value"] = poly_json(&p.value());
    if let Some(cells) = cells {
        v["cells"] = Value::Array(cells.0.iter().map(|c| c.to_json(g)).collect());
    }
    v
}

fn paving_cmd(cmd: &PavingCommand) -> Result<Output> {
    match cmd {
        PavingCommand::Fiber {
            group: a,
            sp,
            tuple,
            at,
            closed,
            cells,
            check,
            strategy,
        } => {
            let g = group(&a.group)?;
            let pd = g.parabolic_data(&parse_subset(&g, sp)?)?;
            let tuple = parse_tuple(&g, tuple)?;
            let x = parse_element(&g, at)?;
            let closed = parse_closed(closed, tuple.len())?;
            let (paving, cell_list) = if *cells {
                let c: Cells = paving::parahoric_fiber(&g, &tuple, &pd, &x, &closed)?;
                (c.paving(), Some(c))
            } else {
                let p: PavingPolynomial = paving::parahoric_fiber(&g, &tuple, &pd, &x, &closed)?;
                (p, None)
            };
            let strategy = match strategy {
                StrategyArg::Auto => Strategy::Auto,
                StrategyArg::Right => Strategy::RightPeel,
                StrategyArg::Left => Strategy::LeftPeel,
            };
            let count = paving::parahoric_count(&g, &tuple, &pd, &x, &closed, strategy)?;
            if count != paving.value() {
                return Err(Error::Consistency(format!(
                    "peeling strategies disagree: {count} vs {}",
                    paving.value()
                )));
            }
            let mut json = paving_json(&g, &paving, cell_list.as_ref());
            json["at"] = elem(&g, &g.right_min(&x, &pd));
            let mut text = paving_text(&paving, cell_list.as_ref().map(|c| (&g, c)));
            if *check {
                let route_b = hecke::convolution_value(&g, &tuple, &pd, &closed, &x)?;
                if route_b != paving.value() {
                    return Err(Error::Consistency(format!(
                        "fiber recursion gives {} but Hecke coset sums give {route_b}",
                        paving.value()
                    )));
                }
                json["hecke_value"] = poly_json(&route_b);
                let _ = writeln!(text, "hecke  {route_b}");
            }
            Ok(Output::ok(json, text))
        }
        PavingCommand::Word {
            group: a,
            tuple,
            at,
            compactified,
            cells,
        } => {
            let g = group(&a.group)?;
            let tuple = parse_tuple(&g, tuple)?;
            let v = parse_element(&g, at)?;
            let mode = if *compactified {
                Mode::Compactified
            } else {
                Mode::Uncompactified
            };
            let c: Cells = paving::iwahori_fiber(&g, &tuple, &v, mode)?;
            let p = c.paving();
            let shown = cells.then_some(&c);
            Ok(Output::ok(
                paving_json(&g, &p, shown),
                paving_text(&p, shown.map(|c| (&g, c))),
            ))
        }
    }
}

fn coroot_vector(g: &AffineWeylGroup, s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    let s = s.strip_prefix("t[").and_then(|r| r.strip_suffix(']')).unwrap_or(s);
    let coords: Vec<Rational64> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<Rational64>()
                .map_err(|_| Error::Parse(format!("bad coordinate {t:?}")))
        })
        .collect::<Result<_>>()?;
    g.datum().from_coroot_coords(&coords)
}

fn coroot_text(g: &AffineWeylGroup, v: &[i64]) -> String {
    format_element(g, &g.translation(v).expect("rank matches"))
}

fn mv(args: &MvArgs) -> Result<Output> {
    let g = group(&args.group.group)?;
    let levi = if args.p.trim().is_empty() {
        Vec::new()
    } else {
        g.parse_word(&args.p)?
    };
    let p = ParabolicChoice::new(&g, &levi)?;
    let mu = coroot_vector(&g, &args.mu)?;
    let nu = match &args.nu {
        Some(s) => coroot_vector(&g, s)?,
        None => grass::find_nu(&g, &mu, &p)?,
    };
    let lambdas: Vec<Vec<i64>> = if args.lambda.trim() == "box" {
        grass::orbit_box(&g, &mu, 1)?
            .into_iter()
            .filter(|l| p.is_m_dominant(&g, l))
            .collect()
    } else {
        vec![coroot_vector(&g, &args.lambda)?]
    };
    let results: Vec<(Vec<i64>, PavingPolynomial)> = lambdas
        .par_iter()
        .map(|l| grass::mv_intersection::<PavingPolynomial>(&g, &mu, l, &p, Some(&nu)).map(|v| (l.clone(), v)))
        .collect::<Result<_>>()?;
    let omega: Vec<Vec<i64>> = grass::omega_set(&g, &mu)?;
    let mut entries = Vec::new();
    let mut text = String::new();
    let _ = writeln!(text, "mu {}  nu {}", coroot_text(&g, &mu), coroot_text(&g, &nu));
    for (l, v) in &results {
        let mut e = paving_json(&g, v, None);
        e["lambda"] = json!(coroot_text(&g, l));
        e["in_omega"] = json!(omega.contains(l));
        entries.push(e);
        let _ = writeln!(text, "{:<20} {}", coroot_text(&g, l), v.value());
    }
    let json = if entries.len() == 1 && args.lambda.trim() != "box" {
        let mut e = entries.pop().expect("one entry");
        e["mu"] = json!(coroot_text(&g, &mu));
        e["nu"] = json!(coroot_text(&g, &nu));
        e
    } else {
        json!({
            "mu": coroot_text(&g, &mu),
            "nu": coroot_text(&g, &nu),
            "results": entries,
        })
    };
    Ok(Output::ok(json, text))
}

fn verify(all: bool, suite: Option<Suite>) -> Result<Output> {
    let suites: Vec<Suite> = match (all, suite) {
        (true, _) | (false, None) => vec![Suite::BottSamelson, Suite::StructureConstants, Suite::SubwordBruhat],
        (false, Some(s)) => vec![s],
    };
    let reports: Vec<Report> = suites
        .par_iter()
        .map(|s| match s {
            Suite::BottSamelson => oracle::verify_bott_samelson(&[(2, 5), (3, 4)], &[2, 3]),
            Suite::StructureConstants => oracle::verify_structure_constants(&[(2, 2), (2, 3), (2, 5), (3, 2), (3, 3)]),
            Suite::SubwordBruhat => oracle::verify_subword_bruhat(&["A1:sc", "A1:adjoint", "A2:sc", "A2:adjoint"], 8),
        })
        .collect::<Result<_>>()?;
    let passed = reports.iter().all(Report::passed);
    let mut text = String::new();
    let mut by_name = BTreeMap::new();
    for r in &reports {
        let _ = writeln!(
            text,
            "{:<28} {} ({} checks, {} failures)",
            r.name,
            if r.passed() { "PASS" } else { "FAIL" },
            r.checked,
            r.failures.len()
        );
        for f in r.failures.iter().take(20) {
            let _ = writeln!(text, "    {f}");
        }
        by_name.insert(r.name.clone(), r.to_json());
    }
    Ok(Output {
        json: json!({ "passed": passed, "suites": by_name }),
        text,
        status: if passed { 0 } else { 2 },
    })
}
