//! Fixture-driven verification: every stored claim is re-checked by exact
//! arithmetic and compared with a fresh run of the corresponding solver.
//!
//! A fixture is one JSON object with a `kind` field; see the files under
//! `fixtures/` for the layouts.

use std::collections::BTreeSet;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Deserialize;
use serde_json::Value;

use crate::algebraic::NumberField;
use crate::bounds::ConstantPack;
use crate::domain::{element_eq, enumerate_unit_solutions, Equality, FractionRep, Presentation, PresentationFile};
use crate::error::{Error, Result};
use crate::function_field::{ff_height, mason_bound, solve_ff_sunit, FFElement, PlaceSet};
use crate::reduction::{canonical_rep, reduce, ReductionOptions};
use crate::report::Check;
use crate::solvers::{
    mult_dep_general, mult_dep_q, mult_rep_exponents, solve_exponential, solve_sunit_q, ExpEquationProblem, ExpSolution,
    GeneralVerdict, MultDep, MultDepCaps, MultRep, RationalSUnitProblem,
};
use crate::specialization::{
    build_h, discriminant_bound, find_good_point, specialize_poly, verify_height_lift, verify_specialized_height,
    SpecializedFiber,
};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SignedExponents {
    sign: i8,
    exponents: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SUnitClaim {
    eps: SignedExponents,
    eta: SignedExponents,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpClaim {
    v: Vec<i64>,
    w: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum Fixture {
    SunitQ {
        name: String,
        primes: Vec<i64>,
        abc: [i64; 3],
        cap: u32,
        /// Whether the claims are the complete solution list at this cap.
        #[serde(default)]
        complete: bool,
        solutions: Vec<SUnitClaim>,
    },
    FfSunit {
        name: String,
        places: String,
        solutions: Vec<(String, String)>,
    },
    Exponential {
        name: String,
        presentation: PresentationFile,
        gammas: Vec<(String, String)>,
        abc: [String; 3],
        cap: u32,
        solutions: Vec<ExpClaim>,
    },
    Multdep {
        name: String,
        values: Vec<String>,
        relation: Option<Vec<i64>>,
    },
    MultRep {
        name: String,
        target: String,
        bases: Vec<String>,
        exponents: Option<Vec<i64>>,
    },
    MultdepGeneral {
        name: String,
        presentation: PresentationFile,
        gammas: Vec<(String, String)>,
        relation: Option<Vec<i64>>,
    },
    Reduction {
        name: String,
        presentation: PresentationFile,
        degree: usize,
        elements: Vec<(String, String)>,
    },
    UnitEquation {
        name: String,
        presentation: PresentationFile,
        size_cap: u32,
        /// `(eps, eta)` representatives that must be among the solutions.
        solutions: Vec<(String, String)>,
    },
    Specialization {
        name: String,
        presentation: PresentationFile,
        elements: Vec<(String, String)>,
        point: Option<Vec<i64>>,
    },
}

fn q(s: &str) -> Result<BigRational> {
    s.trim().parse::<BigRational>().map_err(|e| Error::input(format!("rational {s:?}: {e}")))
}

fn signed_value(primes: &[i64], c: &SignedExponents) -> Result<BigRational> {
    if c.exponents.len() != primes.len() || !matches!(c.sign, 1 | -1) {
        return Err(Error::input("exponent vector does not match the primes, or sign is not ±1"));
    }
    let mut v = BigRational::from_integer(c.sign.into());
    for (&p, &e) in primes.iter().zip(&c.exponents) {
        let pp = BigRational::from_integer(BigInt::from(p));
        let f = num_traits::pow(pp, e.unsigned_abs() as usize);
        v *= if e < 0 { f.recip() } else { f };
    }
    Ok(v)
}

fn fracs(p: &Presentation, v: &[(String, String)]) -> Result<Vec<FractionRep>> {
    v.iter().map(|(n, d)| FractionRep::parse(p, n, d)).collect()
}

fn check_sunit_q(name: &str, primes: &[i64], abc: [i64; 3], cap: u32, complete: bool, claims: &[SUnitClaim]) -> Result<Vec<Check>> {
    let prob = RationalSUnitProblem::new(primes, abc, cap)?;
    let mut out = vec![];
    let mut claimed = BTreeSet::new();
    for (i, c) in claims.iter().enumerate() {
        let eps = signed_value(primes, &c.eps)?;
        let eta = signed_value(primes, &c.eta)?;
        let ok = &prob.a * &eps + &prob.b * &eta == prob.c;
        out.push(Check::new(format!("{name}: claim {i} satisfies a*eps + b*eta = c"), ok, format!("eps = {eps}, eta = {eta}")));
        claimed.insert((eps.to_string(), eta.to_string()));
    }
    let rep = solve_sunit_q(&prob)?;
    let found: BTreeSet<(String, String)> = rep.solutions.iter().map(|s| (s.eps.to_string(), s.eta.to_string())).collect();
    let missing: Vec<_> = claimed.difference(&found).collect();
    out.push(Check::new(format!("{name}: claims are found by the solver"), missing.is_empty(), format!("missing {missing:?}")));
    if complete {
        out.push(Check::new(format!("{name}: solver list equals the claims"), found == claimed, format!("{} found, {} claimed", found.len(), claimed.len())));
    }
    out.push(Check::new(
        format!("{name}: heights within the S-unit bound"),
        rep.check.holds,
        format!("max height {:.4}", rep.check.max_height),
    ));
    Ok(out)
}

fn check_ff(name: &str, places: &str, claims: &[(String, String)]) -> Result<Vec<Check>> {
    let s = PlaceSet::parse(places)?;
    let mut out = vec![];
    let mut claimed = BTreeSet::new();
    for (i, (x, y)) in claims.iter().enumerate() {
        let (x, y) = (FFElement::parse(x)?, FFElement::parse(y)?);
        let ok = x.add(&y) == FFElement::constant(BigRational::one()) && s.is_unit(&x) && s.is_unit(&y) && !x.is_constant();
        out.push(Check::new(format!("{name}: claim {i} is an S-unit solution of x + y = 1"), ok, format!("x = {x}, y = {y}")));
        claimed.insert((x.to_string(), y.to_string()));
    }
    let sols = solve_ff_sunit(&s)?;
    let found: BTreeSet<(String, String)> = sols.iter().map(|s| (s.x.to_string(), s.y.to_string())).collect();
    out.push(Check::new(format!("{name}: solver list equals the claims"), found == claimed, format!("{} found, {} claimed", found.len(), claimed.len())));
    let b = mason_bound(s.len() as u64, 0);
    let ok = sols.iter().all(|t| (ff_height(&t.x) as i64) <= b);
    out.push(Check::new(format!("{name}: heights within |S| - 2"), ok, format!("bound {b}")));
    Ok(out)
}

fn check_exponential(
    name: &str,
    pf: &PresentationFile,
    gammas: &[(String, String)],
    abc: &[String; 3],
    cap: u32,
    claims: &[ExpClaim],
) -> Result<Vec<Check>> {
    let p = Presentation::from_file(pf)?;
    let gammas = fracs(&p, gammas)?;
    let [a, b, c] = [p.poly(&abc[0])?, p.poly(&abc[1])?, p.poly(&abc[2])?];
    let mut out = vec![];
    let mut claimed = BTreeSet::new();
    for (i, cl) in claims.iter().enumerate() {
        if cl.v.len() != gammas.len() || cl.w.len() != gammas.len() {
            return Err(Error::input(format!("{name}: claim {i} has the wrong number of exponents")));
        }
        let (nv, dv) = power_product(&p, &gammas, &cl.v);
        let (nw, dw) = power_product(&p, &gammas, &cl.w);
        let lhs = &(&(&a * &nv) * &dw) + &(&(&b * &nw) * &dv);
        let rhs = &(&c * &dv) * &dw;
        let ok = element_eq(&p, &lhs, &rhs) == Equality::Equal;
        out.push(Check::new(format!("{name}: claim {i} satisfies the equation"), ok, format!("v = {:?}, w = {:?}", cl.v, cl.w)));
        claimed.insert(ExpSolution { v: cl.v.clone(), w: cl.w.clone() });
    }
    let prob = ExpEquationProblem { presentation: p, gammas, a, b, c, cap };
    let rep = solve_exponential(&prob, &ConstantPack::default())?;
    let found: BTreeSet<ExpSolution> = rep.solutions.iter().cloned().collect();
    out.push(Check::new(
        format!("{name}: solver list equals the claims"),
        found == claimed && rep.undecided.is_empty(),
        format!("{} found, {} claimed, {} undecided", found.len(), claimed.len(), rep.undecided.len()),
    ));
    Ok(out)
}

fn power_product(p: &Presentation, g: &[FractionRep], k: &[i64]) -> (crate::poly::ZPoly, crate::poly::ZPoly) {
    let (mut n, mut d) = (crate::poly::ZPoly::one(p.r), crate::poly::ZPoly::one(p.r));
    for (x, &e) in g.iter().zip(k) {
        let (a, b) = if e >= 0 { (&x.num, &x.den) } else { (&x.den, &x.num) };
        n = &n * &a.pow(e.unsigned_abs() as u32);
        d = &d * &b.pow(e.unsigned_abs() as u32);
    }
    (n, d)
}

fn rat_product(values: &[BigRational], k: &[i64]) -> BigRational {
    values.iter().zip(k).fold(BigRational::one(), |acc, (v, &e)| {
        let f = num_traits::pow(v.clone(), e.unsigned_abs() as usize);
        acc * if e < 0 { f.recip() } else { f }
    })
}

fn check_multdep(name: &str, values: &[String], relation: &Option<Vec<i64>>) -> Result<Vec<Check>> {
    let vals: Vec<BigRational> = values.iter().map(|s| q(s)).collect::<Result<_>>()?;
    let verdict = mult_dep_q(&vals)?;
    let mut out = vec![];
    match relation {
        Some(k) => {
            let nontrivial = k.iter().any(|&x| x != 0) && k.len() == vals.len();
            out.push(Check::new(format!("{name}: claimed relation multiplies to 1"), nontrivial && rat_product(&vals, k).is_one(), format!("{k:?}")));
            out.push(Check::new(format!("{name}: solver reports dependence"), matches!(verdict, MultDep::Dependent(_)), format!("{verdict:?}")));
        }
        None => out.push(Check::new(format!("{name}: solver reports independence"), verdict == MultDep::Independent, format!("{verdict:?}"))),
    }
    Ok(out)
}

fn check_mult_rep(name: &str, target: &str, bases: &[String], exps: &Option<Vec<i64>>) -> Result<Vec<Check>> {
    let t = q(target)?;
    let b: Vec<BigRational> = bases.iter().map(|s| q(s)).collect::<Result<_>>()?;
    let got = mult_rep_exponents(&t, &b, &ConstantPack::default())?;
    let mut out = vec![];
    match exps {
        Some(k) => {
            out.push(Check::new(format!("{name}: claimed exponents reproduce the target"), k.len() == b.len() && rat_product(&b, k) == t, format!("{k:?}")));
            let want = MultRep::Exponents(k.iter().map(|&x| BigInt::from(x)).collect());
            out.push(Check::new(format!("{name}: solver returns the claimed exponents"), got == want, format!("{got:?}")));
        }
        None => out.push(Check::new(format!("{name}: no representation"), got == MultRep::NoRepresentation, format!("{got:?}"))),
    }
    Ok(out)
}

fn check_multdep_general(name: &str, pf: &PresentationFile, gammas: &[(String, String)], relation: &Option<Vec<i64>>) -> Result<Vec<Check>> {
    let p = Presentation::from_file(pf)?;
    let g = fracs(&p, gammas)?;
    let r = mult_dep_general(&p, &g, &MultDepCaps::default())?;
    let mut out = vec![];
    match relation {
        Some(k) => {
            let (n, d) = power_product(&p, &g, k);
            let ok = k.len() == g.len() && k.iter().any(|&x| x != 0) && element_eq(&p, &n, &d) == Equality::Equal;
            out.push(Check::new(format!("{name}: claimed relation holds in the domain"), ok, format!("{k:?}")));
            out.push(Check::new(format!("{name}: solver reports dependence"), matches!(r.verdict, GeneralVerdict::Dependent(_)), format!("{:?}", r.verdict)));
        }
        None => out.push(Check::new(
            format!("{name}: no relation within the window"),
            r.verdict == GeneralVerdict::IndependentAtCap,
            format!("{:?} at {:?}", r.verdict, r.point),
        )),
    }
    Ok(out)
}

fn check_reduction(name: &str, pf: &PresentationFile, degree: usize, elements: &[(String, String)]) -> Result<Vec<Check>> {
    let p = Presentation::from_file(pf)?;
    let opts = ReductionOptions::default();
    let elems = fracs(&p, elements)?;
    let rd = reduce(&p, &elems, &opts)?;
    let mut out = vec![
        Check::new(format!("{name}: degree D"), rd.big_d == degree, format!("D = {}, expected {degree}", rd.big_d)),
        Check::new(format!("{name}: D <= d^t"), (rd.big_d as u64) <= (p.d() as u64).pow(p.t() as u32), format!("d = {}, t = {}", p.d(), p.t())),
        Check::new(format!("{name}: F(y) lies in the ideal"), rd.f_of_y_verified, String::new()),
    ];
    for (i, e) in elems.iter().enumerate() {
        let rep = canonical_rep(&rd, &p, e, &opts)?;
        let lhs = &rd.embed(&rep.q) * &e.num;
        let rhs = &e.den * &rd.eval_in_y(&rep.p);
        let ok = element_eq(&p, &lhs, &rhs) == Equality::Equal;
        out.push(Check::new(format!("{name}: canonical representation {i} round-trips"), ok, String::new()));
    }
    Ok(out)
}

fn check_unit_equation(name: &str, pf: &PresentationFile, size_cap: u32, claims: &[(String, String)]) -> Result<Vec<Check>> {
    let p = Presentation::from_file(pf)?;
    let [a, b, c] = p.abc.clone().ok_or_else(|| Error::input(format!("{name}: presentation needs a, b, c")))?;
    let sols = enumerate_unit_solutions(&p, &a, &b, &c, size_cap);
    let mut out = vec![Check::new(
        format!("{name}: every solution carries valid certificates"),
        sols.iter().all(|s| s.verify(&p, &a, &b, &c)),
        format!("{} solutions", sols.len()),
    )];
    for (i, (e, h)) in claims.iter().enumerate() {
        let (e, h) = (p.poly(e)?, p.poly(h)?);
        let hit = sols.iter().any(|s| element_eq(&p, &s.eps, &e) == Equality::Equal && element_eq(&p, &s.eta, &h) == Equality::Equal);
        out.push(Check::new(format!("{name}: claim {i} is found"), hit, String::new()));
    }
    Ok(out)
}

fn check_specialization(name: &str, pf: &PresentationFile, elements: &[(String, String)], point: &Option<Vec<i64>>) -> Result<Vec<Check>> {
    let p = Presentation::from_file(pf)?;
    let opts = ReductionOptions::default();
    let elems = fracs(&p, elements)?;
    let rd = reduce(&p, &elems, &opts)?;
    let u = match point {
        Some(u) => u.clone(),
        None => find_good_point(&build_h(&rd)?, 8)?,
    };
    let fiber = SpecializedFiber::new(&rd, &u)?;
    let mut out = vec![];
    let reps = elems.iter().map(|e| canonical_rep(&rd, &p, e, &opts)).collect::<Result<Vec<_>>>()?;
    for (i, rep) in reps.iter().enumerate() {
        let hc = verify_specialized_height(&rd, &fiber, rep)?;
        out.push(Check::new(format!("{name}: element {i} specialized heights within bound"), hc.counted_holds, format!("{:?} vs {:.4}", hc.heights, hc.bound.counted)));
        let lc = verify_height_lift(&rd, rep, None)?;
        out.push(Check::new(format!("{name}: element {i} height recovered from specializations"), lc.holds, format!("hbar {:.4}", lc.hbar)));
    }
    for d in discriminant_bound(&rd, &fiber) {
        out.push(Check::new(
            format!("{name}: discriminant of the fiber root {}", d.j),
            d.coefficient_form_holds && d.counted_holds,
            format!("ln|disc| = {:.4}", d.ln_disc),
        ));
    }
    // specialization is multiplicative
    let field = NumberField::new(fiber.roots[0].minpoly());
    for i in 0..elems.len() {
        for j in i..elems.len() {
            let prod = FractionRep::new(&elems[i].num * &elems[j].num, &elems[i].den * &elems[j].den);
            let pr = canonical_rep(&rd, &p, &prod, &opts)?;
            let lhs = field.reduce(&specialize_poly(&fiber, &pr)?);
            let rhs = field.mul(&specialize_poly(&fiber, &reps[i])?, &specialize_poly(&fiber, &reps[j])?);
            out.push(Check::new(format!("{name}: image of product {i}*{j}"), lhs == rhs, format!("at {u:?}")));
        }
    }
    Ok(out)
}

fn run_fixture(f: &Fixture) -> Result<Vec<Check>> {
    match f {
        Fixture::SunitQ { name, primes, abc, cap, complete, solutions } => check_sunit_q(name, primes, *abc, *cap, *complete, solutions),
        Fixture::FfSunit { name, places, solutions } => check_ff(name, places, solutions),
        Fixture::Exponential { name, presentation, gammas, abc, cap, solutions } => {
            check_exponential(name, presentation, gammas, abc, *cap, solutions)
        }
        Fixture::Multdep { name, values, relation } => check_multdep(name, values, relation),
        Fixture::MultRep { name, target, bases, exponents } => check_mult_rep(name, target, bases, exponents),
        Fixture::MultdepGeneral { name, presentation, gammas, relation } => check_multdep_general(name, presentation, gammas, relation),
        Fixture::Reduction { name, presentation, degree, elements } => check_reduction(name, presentation, *degree, elements),
        Fixture::UnitEquation { name, presentation, size_cap, solutions } => check_unit_equation(name, presentation, *size_cap, solutions),
        Fixture::Specialization { name, presentation, elements, point } => check_specialization(name, presentation, elements, point),
    }
}

fn fixture_name(v: &Value) -> String {
    v.get("name").and_then(Value::as_str).unwrap_or("?").to_string()
}

/// Runs every `*.json` fixture in `dir`, sorted by file name.
///
/// Input errors (missing or empty directory, malformed fixture) are returned
/// as errors; solver failures inside a fixture become failed checks.
pub fn verify_fixtures(dir: &Path) -> Result<Vec<Check>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Error::input(format!("no fixtures in {}", dir.display())));
    }
    let mut out = vec![];
    for path in files {
        let text = std::fs::read_to_string(&path).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        let raw: Value = serde_json::from_str(&text).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        let fx: Fixture = serde_json::from_value(raw.clone()).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        match run_fixture(&fx) {
            Ok(c) => out.extend(c),
            Err(e @ (Error::Input(_) | Error::Parse(_))) => return Err(e),
            Err(e) => out.push(Check::new(format!("{}: runs", fixture_name(&raw)), false, e.to_string())),
        }
    }
    Ok(out)
}

/// Closed-form spot checks that need no fixtures.
pub fn builtin_checks() -> Vec<Check> {
    use crate::bounds::{gyory_yu_c1, loher_masser_bound};
    use crate::logvalue::LogValue;
    let mut out = vec![];
    let c1 = gyory_yu_c1(1, 1).map(|v| v.to_f64()).unwrap_or(f64::NAN);
    let want = std::f64::consts::PI * 2f64.powi(34) * 2f64.ln();
    out.push(Check::new("c1(1,1) = pi 2^34 log 2", ((c1 - want) / want).abs() < 1e-12, format!("{c1:.6e}")));
    let l2 = LogValue::from_f64(2f64.ln());
    let lm = loher_masser_bound(1, 2, &[l2.clone(), l2]).map(|v| v[0].to_f64()).unwrap_or(f64::NAN);
    out.push(Check::new("relation (2,-1) of (2,4) within the relation bound", 2.0 <= lm, format!("bound {lm:.4}")));
    let m = mason_bound(3, 0);
    out.push(Check::new("Mason bound for three places", m == 1, format!("{m}")));
    out
}

/// Fixture checks followed by the built-in checks.
pub fn verify_paper(dir: &Path) -> Result<Vec<Check>> {
    let mut out = verify_fixtures(dir)?;
    out.extend(builtin_checks());
    Ok(out)
}
