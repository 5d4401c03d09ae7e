//! Enumeration solvers: S-unit equations over `Q`, exponential equations
//! over a presented domain, and multiplicative dependence.
//!
//! Every emitted solution or relation is re-verified exactly, and the
//! magnitudes found are checked against the closed-form bounds.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::algebraic::NumberField;
use crate::bounds::{gyory_yu_bound, gyory_yu_c1, lemma72_bound, regulator_bound, thm13_bound, ConstantPack};
use crate::domain::{element_eq, Equality, FractionRep, PointSample, Presentation};
use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{hnf, solve_int, IntMatrix};
use crate::logvalue::{bf, LogValue};
use crate::poly::{SizeTriple, ZPoly};
use crate::reduction::{canonical_rep, reduce, ReductionOptions};
use crate::specialization::{build_h, find_good_point, specialize_poly, SpecializedFiber};
use crate::upoly::UQ;

// ---------------------------------------------------------------------------
// integer factorization

const TRIAL_LIMIT: u64 = 1_000_000;
const RHO_STEPS: u64 = 1 << 20;

/// Prime factorization of `|n|`, sorted by prime. Trial division up to 10^6,
/// then Miller-Rabin and Pollard rho; cofactors rho cannot split are rejected.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    if n.is_zero() {
        return Err(Error::input("cannot factor 0"));
    }
    let mut m = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, e: u32, out: &mut Vec<(BigInt, u32)>| {
        if let Some(slot) = out.iter_mut().find(|(q, _)| *q == p) {
            slot.1 += e;
        } else {
            out.push((p, e));
        }
    };
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > m {
            break;
        }
        let mut e = 0;
        while (&m % &bd).is_zero() {
            m /= &bd;
            e += 1;
        }
        if e > 0 {
            push(bd, e, &mut out);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![m];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            push(m, 1, &mut out);
            continue;
        }
        let f = pollard_rho(&m).ok_or_else(|| Error::input(format!("could not factor the cofactor {m} within the rho budget")))?;
        let g = &m / &f;
        stack.push(f);
        stack.push(g);
    }
    out.sort();
    Ok(out)
}

fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let bp = BigInt::from(p);
        if *n == bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'base: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

// Brent's variant with batched gcds.
fn pollard_rho(n: &BigInt) -> Option<BigInt> {
    if n.is_even() {
        return Some(BigInt::from(2));
    }
    for c in 1u32..8 {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % n;
        let (mut y, mut r, mut q) = (BigInt::from(2), 1u64, BigInt::one());
        let mut x;
        let mut ys;
        let mut g;
        let mut steps = 0u64;
        loop {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            loop {
                ys = y.clone();
                let batch = 128.min(r - k);
                for _ in 0..batch {
                    y = f(&y);
                    q = (&q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += batch;
                steps += batch;
                if k >= r || !g.is_one() {
                    break;
                }
            }
            r *= 2;
            if !g.is_one() || steps > RHO_STEPS {
                break;
            }
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
    }
    None
}

/// `(sign, exponents over primes)` of a nonzero rational, or `None` when it has a prime outside `primes`.
fn s_exponents(x: &BigRational, primes: &[BigInt]) -> Option<(bool, Vec<i64>)> {
    if x.is_zero() {
        return None;
    }
    let mut num = x.numer().abs();
    let mut den = x.denom().abs();
    let mut e = vec![0i64; primes.len()];
    for (k, p) in primes.iter().enumerate() {
        while (&num % p).is_zero() {
            num /= p;
            e[k] += 1;
        }
        while (&den % p).is_zero() {
            den /= p;
            e[k] -= 1;
        }
    }
    (num.is_one() && den.is_one()).then_some((x.is_negative(), e))
}

fn rat_pow(x: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

fn rat_height(x: &BigRational) -> f64 {
    let m = x.numer().abs().max(x.denom().clone());
    LogValue::from_bigint(&m).ln().to_f64()
}

fn box_vectors(n: usize, cap: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (-cap..=cap).map(move |e| [v.clone(), vec![e]].concat())).collect();
    }
    out
}

// ---------------------------------------------------------------------------
// S-unit equations over Q

#[derive(Clone, Debug)]
pub struct RationalSUnitProblem {
    pub primes: Vec<BigInt>,
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub cap: u32,
}

impl RationalSUnitProblem {
    pub fn new(primes: &[i64], abc: [i64; 3], cap: u32) -> Result<Self> {
        let r = |v: i64| BigRational::from_integer(v.into());
        let p = RationalSUnitProblem { primes: primes.iter().map(|&p| BigInt::from(p)).collect(), a: r(abc[0]), b: r(abc[1]), c: r(abc[2]), cap };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a.is_zero() || self.b.is_zero() || self.c.is_zero() {
            return Err(Error::Precondition("a, b, c must be nonzero".into()));
        }
        let set: BTreeSet<&BigInt> = self.primes.iter().collect();
        if set.len() != self.primes.len() {
            return Err(Error::input("primes must be distinct"));
        }
        for p in &self.primes {
            if !is_probable_prime(p) {
                return Err(Error::input(format!("{p} is not prime")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SUnitSolution {
    pub eps: BigRational,
    pub eta: BigRational,
    pub eps_exponents: Vec<i64>,
    pub eta_exponents: Vec<i64>,
}

impl SUnitSolution {
    pub fn to_json(&self) -> Value {
        json!({
            "eps": self.eps.to_string(),
            "eta": self.eta.to_string(),
            "eps_exponents": self.eps_exponents,
            "eta_exponents": self.eta_exponents,
        })
    }
}

/// Height check for the normalized equation `eps1 + eta1 = 1` over the enlarged set `S'`.
#[derive(Clone, Debug)]
pub struct SUnitBoundCheck {
    /// `S` together with the primes of `a, b, c`.
    pub primes: Vec<BigInt>,
    pub bound: Option<LogValue>,
    pub r_s: f64,
    pub regulator_bound: Option<LogValue>,
    pub max_height: f64,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct SUnitReport {
    pub solutions: Vec<SUnitSolution>,
    pub check: SUnitBoundCheck,
}

fn primes_of(x: &BigRational) -> Result<Vec<BigInt>> {
    let mut v: Vec<BigInt> = factor_integer(x.numer())?.into_iter().map(|(p, _)| p).collect();
    v.extend(factor_integer(x.denom())?.into_iter().map(|(p, _)| p));
    Ok(v)
}

/// All `(eps, eta)` with `eps = ±prod p^e`, `|e| <= cap`, `a eps + b eta = c` and
/// `eta` an S-unit, sorted by the exponent vector of `eps` (then sign).
pub fn solve_sunit_q(prob: &RationalSUnitProblem) -> Result<SUnitReport> {
    prob.validate()?;
    let cap = prob.cap as i64;
    let t = prob.primes.len();
    let mut cands: Vec<(Vec<i64>, bool)> = Vec::new();
    for e in box_vectors(t, cap) {
        cands.push((e.clone(), false));
        cands.push((e, true));
    }
    let mut solutions: Vec<SUnitSolution> = exec::par_filter_map(&cands, |(e, neg)| {
        let mut eps = BigRational::one();
        for (p, &k) in prob.primes.iter().zip(e) {
            eps *= rat_pow(&BigRational::from_integer(p.clone()), k);
        }
        if *neg {
            eps = -eps;
        }
        let eta = (&prob.c - &prob.a * &eps) / &prob.b;
        let (_, eta_e) = s_exponents(&eta, &prob.primes)?;
        Some(SUnitSolution { eps, eta, eps_exponents: e.clone(), eta_exponents: eta_e })
    });
    solutions.sort_by(|x, y| x.eps_exponents.cmp(&y.eps_exponents).then(x.eps.is_negative().cmp(&y.eps.is_negative())));
    for s in &solutions {
        if &prob.a * &s.eps + &prob.b * &s.eta != prob.c {
            return Err(Error::defect("S-unit solution fails re-verification"));
        }
    }
    let check = sunit_bound_check(prob, &solutions)?;
    if !check.holds {
        return Err(Error::defect("an S-unit solution exceeds the height bound"));
    }
    Ok(SUnitReport { solutions, check })
}

fn sunit_bound_check(prob: &RationalSUnitProblem, sols: &[SUnitSolution]) -> Result<SUnitBoundCheck> {
    let mut set: BTreeSet<BigInt> = prob.primes.iter().cloned().collect();
    for x in [&prob.a, &prob.b, &prob.c] {
        set.extend(primes_of(x)?);
    }
    let primes: Vec<BigInt> = set.into_iter().collect();
    let max_height = sols
        .iter()
        .map(|s| rat_height(&(&prob.a * &s.eps / &prob.c)).max(rat_height(&(&prob.b * &s.eta / &prob.c))))
        .fold(0.0, f64::max);
    if primes.is_empty() {
        // only eps1, eta1 in {±1}, and no two of them sum to 1
        return Ok(SUnitBoundCheck { primes, bound: None, r_s: 0.0, regulator_bound: None, max_height, holds: sols.is_empty() });
    }
    let s = primes.len() as u64 + 1;
    let r_s = primes.iter().fold(bf::from_i64(1), |acc, p| bf::mul(&acc, &bf::ln(&bf::from_bigint(p))));
    let big_p = bf::from_bigint(primes.iter().max().expect("nonempty"));
    let big_q = bf::from_bigint(&primes.iter().product::<BigInt>());
    let reg = regulator_bound(&BigInt::one(), 1, &big_q, s)?;
    let bound = gyory_yu_bound(&gyory_yu_c1(1, s)?, &big_p, &r_s)?;
    let reg_ok = LogValue::from_bigfloat(&r_s).cmp_total(&reg) != Ordering::Greater;
    let h_ok = LogValue::from_f64(max_height).cmp_total(&bound) != Ordering::Greater;
    Ok(SUnitBoundCheck { primes, bound: Some(bound), r_s: bf::to_f64(&r_s), regulator_bound: Some(reg), max_height, holds: reg_ok && h_ok })
}

// ---------------------------------------------------------------------------
// multiplicative dependence over Q

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultDep {
    Dependent(Vec<BigInt>),
    Independent,
}

impl MultDep {
    pub fn to_json(&self) -> Value {
        match self {
            MultDep::Dependent(k) => json!({"verdict": "dependent", "relation": k.iter().map(|x| x.to_string()).collect::<Vec<_>>()}),
            MultDep::Independent => json!({"verdict": "independent"}),
        }
    }
}

/// Exponent matrix of the values over their primes plus a sign row; the sign
/// row carries an extra column `-2` so the sign is counted modulo 2.
fn exponent_system(values: &[BigRational]) -> Result<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    let mut set = BTreeSet::new();
    for v in values {
        if v.is_zero() {
            return Err(Error::Precondition("values must be nonzero".into()));
        }
        set.extend(primes_of(v)?);
    }
    let primes: Vec<BigInt> = set.into_iter().collect();
    let cols: Vec<(bool, Vec<i64>)> = values.iter().map(|v| s_exponents(v, &primes).expect("all primes present")).collect();
    let n = values.len();
    let mut rows: Vec<Vec<BigInt>> = (0..primes.len())
        .map(|i| {
            let mut r: Vec<BigInt> = cols.iter().map(|(_, e)| BigInt::from(e[i])).collect();
            r.push(BigInt::zero());
            r
        })
        .collect();
    let mut sign: Vec<BigInt> = cols.iter().map(|(neg, _)| BigInt::from(*neg as i64)).collect();
    sign.push(BigInt::from(-2));
    rows.push(sign);
    debug_assert!(rows.iter().all(|r| r.len() == n + 1));
    Ok((primes, rows))
}

fn rat_product(values: &[BigRational], k: &[BigInt]) -> BigRational {
    values.iter().zip(k).fold(BigRational::one(), |acc, (v, e)| acc * rat_pow(v, e.to_i64().expect("small exponent")))
}

fn normalize_sign(v: Vec<BigInt>) -> Vec<BigInt> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.into_iter().map(|x| -x).collect(),
        _ => v,
    }
}

/// Exact multiplicative dependence of nonzero rationals.
pub fn mult_dep_q(values: &[BigRational]) -> Result<MultDep> {
    if values.is_empty() {
        return Err(Error::input("need at least one value"));
    }
    let n = values.len();
    let (_, rows) = exponent_system(values)?;
    let u = IntMatrix::with_shape(rows.len(), n + 1, rows);
    let lattice: Vec<Vec<BigInt>> = hnf(&u).kernel_lattice().into_iter().map(|v| v[..n].to_vec()).filter(|v| v.iter().any(|x| !x.is_zero())).collect();
    if lattice.is_empty() {
        return Ok(MultDep::Independent);
    }
    let reduced = crate::linalg::lll(lattice);
    let k = reduced
        .into_iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .min_by_key(|v| v.iter().map(|x| x.abs()).max())
        .expect("nonempty lattice");
    let k = normalize_sign(k);
    if !rat_product(values, &k).is_one() {
        return Err(Error::defect("multiplicative relation fails re-verification"));
    }
    Ok(MultDep::Dependent(k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultRep {
    Exponents(Vec<BigInt>),
    NoRepresentation,
}

/// `k` with `gamma0 = prod gamma_i^(k_i)` for independent `gamma_1..gamma_s`.
pub fn mult_rep_exponents(gamma0: &BigRational, gammas: &[BigRational], pack: &ConstantPack) -> Result<MultRep> {
    if gammas.is_empty() {
        return Ok(if gamma0.is_one() { MultRep::Exponents(vec![]) } else { MultRep::NoRepresentation });
    }
    if mult_dep_q(gammas)? != MultDep::Independent {
        return Err(Error::Precondition("gamma_1..gamma_s must be multiplicatively independent".into()));
    }
    let mut all = vec![gamma0.clone()];
    all.extend(gammas.iter().cloned());
    let (_, rows) = exponent_system(&all)?;
    let s = gammas.len();
    // column 0 is gamma0, moved to the right-hand side
    let b: Vec<BigInt> = rows.iter().map(|r| r[0].clone()).collect();
    let a: Vec<Vec<BigInt>> = rows.iter().map(|r| r[1..].to_vec()).collect();
    let u = IntMatrix::with_shape(a.len(), s + 1, a);
    let Some(sol) = solve_int(&u, &b) else {
        return Ok(MultRep::NoRepresentation);
    };
    let k = sol[..s].to_vec();
    if rat_product(gammas, &k) != *gamma0 {
        return Err(Error::defect("representation fails re-verification"));
    }
    let h = all.iter().map(rat_height).fold(1.0, f64::max);
    let bound = lemma72_bound(1, h, 1, s as u64, pack)?.bound;
    if k.iter().any(|x| LogValue::from_bigint(&x.abs()).cmp_total(&bound) == Ordering::Greater) {
        return Err(Error::defect("representation exponent exceeds its bound"));
    }
    Ok(MultRep::Exponents(k))
}

// ---------------------------------------------------------------------------
// multiplicative dependence over a presented domain

#[derive(Clone, Debug)]
pub struct MultDepCaps {
    /// Largest exponent searched, intersected with the window from the bound.
    pub exponent: i64,
    /// Max-norm budget when scanning for a good specialization point.
    pub point_norm: i64,
    pub reduction: ReductionOptions,
}

impl Default for MultDepCaps {
    fn default() -> Self {
        MultDepCaps { exponent: 6, point_norm: 8, reduction: ReductionOptions::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeneralVerdict {
    Dependent(Vec<i64>),
    IndependentAtCap,
    Unknown(String),
}

#[derive(Clone, Debug)]
pub struct GeneralMultDep {
    pub verdict: GeneralVerdict,
    pub point: Vec<i64>,
    pub window: i64,
    /// Relations among the images that did not lift.
    pub rejected: Vec<Vec<i64>>,
}

impl GeneralMultDep {
    pub fn to_json(&self) -> Value {
        let verdict = match &self.verdict {
            GeneralVerdict::Dependent(k) => json!({"verdict": "dependent", "relation": k}),
            GeneralVerdict::IndependentAtCap => json!({"verdict": "independent_at_cap"}),
            GeneralVerdict::Unknown(why) => json!({"verdict": "unknown", "reason": why}),
        };
        json!({"result": verdict, "point": self.point, "window": self.window, "rejected_image_relations": self.rejected})
    }
}

fn frac_power_product(p: &Presentation, gammas: &[FractionRep], k: &[i64]) -> (ZPoly, ZPoly) {
    let (mut lhs, mut rhs) = (ZPoly::one(p.r), ZPoly::one(p.r));
    for (g, &e) in gammas.iter().zip(k) {
        let (a, b) = if e >= 0 { (&g.num, &g.den) } else { (&g.den, &g.num) };
        let m = e.unsigned_abs() as u32;
        lhs = &lhs * &a.pow(m);
        rhs = &rhs * &b.pow(m);
    }
    (lhs, rhs)
}

/// Nonzero vectors of the `[-cap, cap]^n` box with first nonzero entry
/// positive, by increasing max-norm.
fn relation_candidates(n: usize, cap: i64) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = box_vectors(n, cap)
        .into_iter()
        .filter(|k| k.iter().find(|x| **x != 0).is_some_and(|x| *x > 0))
        .collect();
    v.sort_by_key(|k| (k.iter().map(|x| x.abs()).max().unwrap_or(0), k.clone()));
    v
}

/// Multiplicative dependence of `gamma_0..gamma_s` in the fraction field of `A`.
///
/// The values are specialized at a good point; relations among the images in
/// the exponent window are lifted and checked by ideal membership. Absence of
/// image relations proves absence of relations in the window.
pub fn mult_dep_general(p: &Presentation, gammas: &[FractionRep], caps: &MultDepCaps) -> Result<GeneralMultDep> {
    if gammas.is_empty() {
        return Err(Error::input("need at least one value"));
    }
    for g in gammas {
        if g.num.is_zero() || g.den.is_zero() {
            return Err(Error::Precondition("values must be nonzero".into()));
        }
    }
    let rd = reduce(p, gammas, &caps.reduction)?;
    let h = build_h(&rd)?;
    let u = find_good_point(&h, caps.point_norm)?;
    let fiber = SpecializedFiber::new(&rd, &u)?;
    let field = NumberField::new(fiber.roots[0].minpoly());
    let images: Vec<UQ> = gammas
        .iter()
        .map(|g| Ok(field.reduce(&specialize_poly(&fiber, &canonical_rep(&rd, p, g, &caps.reduction)?)?)))
        .collect::<Result<_>>()?;
    let n = gammas.len();
    let d = gammas.iter().map(|g| g.num.degree_or_zero().max(g.den.degree_or_zero())).max().unwrap_or(1).max(p.d()).max(1);
    let hgt = gammas.iter().flat_map(|g| [&g.num, &g.den]).map(|x| SizeTriple::of(x).h_f64()).fold(p.h(), f64::max);
    let v = lemma72_bound(d as u64, hgt, p.r as u64, n as u64 - 1, &caps.reduction.pack)?.v;
    let window = match v.to_f64() {
        x if x.is_finite() && x < caps.exponent as f64 => x.floor().max(1.0) as i64,
        _ => caps.exponent,
    };
    let mut out = GeneralMultDep { verdict: GeneralVerdict::IndependentAtCap, point: u, window, rejected: vec![] };
    if field.degree() == 1 {
        let q: Vec<BigRational> = images.iter().map(|x| x.coeff(0)).collect();
        if mult_dep_q(&q)? == MultDep::Independent {
            return Ok(out);
        }
    }
    let powers: Vec<Vec<UQ>> = images
        .iter()
        .map(|x| (-window..=window).map(|e| field.pow(x, e).ok_or_else(|| Error::defect("image vanishes at a good point"))).collect())
        .collect::<Result<_>>()?;
    let one = UQ::one();
    let hits: Vec<Vec<i64>> = exec::par_filter_map(&relation_candidates(n, window), |k| {
        let prod = k.iter().enumerate().fold(UQ::one(), |acc, (i, &e)| field.mul(&acc, &powers[i][(e + window) as usize]));
        (prod == one).then(|| k.clone())
    });
    let mut unknown = None;
    for k in hits {
        let (lhs, rhs) = frac_power_product(p, gammas, &k);
        match element_eq(p, &lhs, &rhs) {
            Equality::Equal => {
                out.verdict = GeneralVerdict::Dependent(k);
                return Ok(out);
            }
            Equality::NotEqual => out.rejected.push(k),
            Equality::Unknown => {
                unknown.get_or_insert(k);
            }
        }
    }
    if let Some(k) = unknown {
        out.verdict = GeneralVerdict::Unknown(format!("could not decide the candidate relation {k:?}"));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// exponential equations

#[derive(Clone, Debug)]
pub struct ExpEquationProblem {
    pub presentation: Presentation,
    pub gammas: Vec<FractionRep>,
    pub a: ZPoly,
    pub b: ZPoly,
    pub c: ZPoly,
    pub cap: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExpSolution {
    pub v: Vec<i64>,
    pub w: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct ExpReport {
    pub solutions: Vec<ExpSolution>,
    /// Candidates surviving the point filter whose membership was undecided.
    pub undecided: Vec<ExpSolution>,
    pub bound: LogValue,
    pub independence: String,
}

impl ExpReport {
    pub fn to_json(&self) -> Value {
        let sol = |s: &ExpSolution| json!({"v": s.v, "w": s.w});
        json!({
            "solutions": self.solutions.iter().map(sol).collect::<Vec<_>>(),
            "undecided": self.undecided.iter().map(sol).collect::<Vec<_>>(),
            "exponent_bound": {"log10": self.bound.log10_string()},
            "independence": self.independence,
        })
    }
}

fn as_rational(g: &FractionRep) -> Option<BigRational> {
    (g.num.is_constant() && g.den.is_constant() && !g.den.constant_term().is_zero())
        .then(|| BigRational::new(g.num.constant_term(), g.den.constant_term()))
}

/// Independence of the bases, exact over `Q` and windowed otherwise.
fn check_independent(p: &Presentation, gammas: &[FractionRep]) -> Result<String> {
    let rat: Option<Vec<BigRational>> = gammas.iter().map(as_rational).collect();
    if let Some(q) = rat {
        return match mult_dep_q(&q)? {
            MultDep::Independent => Ok("independent".into()),
            MultDep::Dependent(k) => Err(Error::Precondition(format!("bases are dependent: {k:?}"))),
        };
    }
    let r = mult_dep_general(p, gammas, &MultDepCaps::default())?;
    match r.verdict {
        GeneralVerdict::IndependentAtCap => Ok(format!("independent within exponent window {}", r.window)),
        GeneralVerdict::Dependent(k) => Err(Error::Precondition(format!("bases are dependent: {k:?}"))),
        GeneralVerdict::Unknown(why) => Err(Error::Precondition(format!("independence undecided: {why}"))),
    }
}

/// All `(v, w)` in the box `|v_i|, |w_i| <= cap` with
/// `a prod gamma^v + b prod gamma^w = c` in `A`.
pub fn solve_exponential(prob: &ExpEquationProblem, pack: &ConstantPack) -> Result<ExpReport> {
    let p = &prob.presentation;
    if prob.a.is_zero() || prob.b.is_zero() || prob.c.is_zero() {
        return Err(Error::Precondition("a, b, c must be nonzero".into()));
    }
    if prob.gammas.is_empty() {
        return Err(Error::input("need at least one base"));
    }
    let independence = check_independent(p, &prob.gammas)?;
    let s = prob.gammas.len();
    let cap = prob.cap as i64;
    let boxes = box_vectors(s, cap);
    let pairs: Vec<(usize, usize)> = (0..boxes.len()).flat_map(|i| (0..boxes.len()).map(move |j| (i, j))).collect();
    let fracs: Vec<(ZPoly, ZPoly)> = boxes.iter().map(|v| frac_power_product(p, &prob.gammas, v)).collect();
    let sample = PointSample::find(p, 12);
    let outcomes: Vec<(ExpSolution, Equality)> = exec::par_filter_map(&pairs, |&(i, j)| {
        let (nv, dv) = &fracs[i];
        let (nw, dw) = &fracs[j];
        let lhs = &(&(&prob.a * nv) * dw) + &(&(&prob.b * nw) * dv);
        let rhs = &(&prob.c * dv) * dw;
        let diff = &lhs - &rhs;
        if sample.signature(&diff).iter().any(|&x| x != 0) {
            return None;
        }
        let sol = ExpSolution { v: boxes[i].clone(), w: boxes[j].clone() };
        match element_eq(p, &lhs, &rhs) {
            Equality::NotEqual => None,
            e => Some((sol, e)),
        }
    });
    let mut solutions: Vec<ExpSolution> = outcomes.iter().filter(|(_, e)| *e == Equality::Equal).map(|(s, _)| s.clone()).collect();
    let mut undecided: Vec<ExpSolution> = outcomes.into_iter().filter(|(_, e)| *e == Equality::Unknown).map(|(s, _)| s).collect();
    solutions.sort();
    undecided.sort();
    let polys = prob.gammas.iter().flat_map(|g| [&g.num, &g.den]).chain([&prob.a, &prob.b, &prob.c]);
    let (mut d, mut h) = (p.d(), p.h());
    for x in polys {
        d = d.max(x.degree_or_zero());
        if !x.is_zero() {
            h = h.max(SizeTriple::of(x).h_f64());
        }
    }
    let bound = thm13_bound(d as u64, h, p.r as u64, s as u64, pack)?;
    for sol in &solutions {
        let m = sol.v.iter().chain(&sol.w).map(|x| x.unsigned_abs()).max().unwrap_or(0);
        if LogValue::from_u64(m).cmp_total(&bound) == Ordering::Greater {
            return Err(Error::defect("exponential-equation solution exceeds its bound"));
        }
    }
    Ok(ExpReport { solutions, undecided, bound, independence })
}
