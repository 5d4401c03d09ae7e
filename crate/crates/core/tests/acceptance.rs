//! Acceptance gate: one PASS/FAIL line per criterion, each checked against an
//! oracle written independently of the library code path it exercises.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::time::Instant;

use effkit_core::algebraic::NumberField;
use effkit_core::bounds::{gyory_yu_bound, gyory_yu_c1, loher_masser_bound, regulator_bound, thm13_bound, ConstantPack};
use effkit_core::domain::{element_eq, Equality, FractionRep, Presentation};
use effkit_core::function_field::{ff_height, solve_ff_sunit, FFElement, PlaceSet};
use effkit_core::linalg::{kernel_basis_int, solve_int_small, IntMatrix, IntSolution};
use effkit_core::logvalue::bf;
use effkit_core::poly::{monomials_up_to, Monomial};
use effkit_core::poly_linear::{ideal_membership, Membership, MembershipOptions};
use effkit_core::reduction::{canonical_rep, reduce, CanonicalRep, ReducedDomain, ReductionOptions};
use effkit_core::solvers::{
    mult_dep_q, mult_rep_exponents, solve_exponential, solve_sunit_q, ExpEquationProblem, ExpSolution, MultDep, MultRep,
    RationalSUnitProblem,
};
use effkit_core::specialization::{
    build_h, coeff_bound_from_values, discriminant_bound, find_good_point, reconstruct_coeffs, specialize,
    specialize_poly, verify_height_lift, verify_lemma_5_1, verify_specialized_height, SpecializedFiber,
};
use effkit_core::upoly::UQ;
use effkit_core::verify::verify_paper;
use effkit_core::{LogValue, QPoly, ZPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(int(n), int(d))
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

// ---------------------------------------------------------------------------
// 1. S-units of Q(z) for S = {inf, z, z-1}

fn uq(c: &[i64]) -> UQ {
    UQ::new(c.iter().map(|&x| rat(x, 1)).collect())
}

/// Strips the factors `z` and `z - 1`; `Some(constant)` when nothing else remains.
fn s_part_constant(p: &UQ) -> Option<BigRational> {
    if p.is_zero() {
        return None;
    }
    let mut p = p.clone();
    for f in [uq(&[0, 1]), uq(&[-1, 1])] {
        loop {
            let (qt, r) = p.div_rem(&f);
            if !r.is_zero() || p.deg() == 0 {
                break;
            }
            p = qt;
        }
    }
    (p.deg() == 0).then(|| p.coeff(0))
}

fn criterion_1() -> Outcome {
    let t0 = Instant::now();
    let s = PlaceSet::parse("inf,z,z-1").map_err(|e| e.to_string())?;
    let sols = solve_ff_sunit(&s).map_err(|e| e.to_string())?;
    let elapsed = t0.elapsed().as_secs_f64();
    ensure(sols.len() == 6, || format!("{} solutions", sols.len()))?;
    for x in &sols {
        ensure(ff_height(&x.x) == 1 && ff_height(&x.y) == 1, || format!("height of {} is not 1", x.x))?;
        ensure(x.x.add(&x.y) == FFElement::constant(BigRational::one()), || format!("{} + {} != 1", x.x, x.y))?;
    }
    // x = c N / D with N, D monic, coprime, supported on {z, z-1}. If D - cN is
    // S-supported and nonconstant it vanishes at 0 or 1, which fixes c; if it is
    // constant then c = 1 and deg N = deg D.
    let mut monic = vec![];
    for a in 0..=3u32 {
        for b in 0..=3 - a {
            monic.push((a, b, &uq(&[0, 1]).pow(a) * &uq(&[-1, 1]).pow(b)));
        }
    }
    let mut oracle = vec![];
    let mut pairs = 0;
    for (an, bn, n) in &monic {
        for (ad, bd, d) in &monic {
            if (*an > 0 && *ad > 0) || (*bn > 0 && *bd > 0) || (n.deg() == 0 && d.deg() == 0) {
                continue;
            }
            pairs += 1;
            let mut cs = BTreeSet::new();
            for pt in [rat(0, 1), rat(1, 1)] {
                let nv = n.eval(&pt);
                if !nv.is_zero() {
                    cs.insert(d.eval(&pt) / nv);
                }
            }
            if n.deg() == d.deg() {
                cs.insert(BigRational::one());
            }
            for c in cs {
                if c.is_zero() {
                    continue;
                }
                let rest = d - &n.scale(&c);
                if s_part_constant(&rest).is_some() {
                    let x = FFElement::new(n.scale(&c), d.clone()).map_err(|e| e.to_string())?;
                    if !oracle.contains(&x) {
                        oracle.push(x);
                    }
                }
            }
        }
    }
    ensure(oracle.len() == sols.len(), || format!("oracle finds {} solutions over {pairs} pairs", oracle.len()))?;
    for x in &oracle {
        ensure(sols.iter().any(|s| &s.x == x), || format!("oracle solution {x} missing"))?;
    }
    ensure(elapsed < 5.0, || format!("took {elapsed:.2} s"))?;
    Ok(format!("6 solutions of height 1, oracle over {pairs} coprime pairs agrees, {elapsed:.3} s"))
}

// ---------------------------------------------------------------------------
// 2. height dominance for S = {2, 3}

fn is_23_unit(x: &BigRational) -> bool {
    let strip = |mut v: BigInt| {
        for p in [2i64, 3] {
            while (&v % BigInt::from(p)).is_zero() {
                v /= p;
            }
        }
        v.abs().is_one()
    };
    !x.is_zero() && strip(x.numer().clone()) && strip(x.denom().clone())
}

fn criterion_2() -> Outcome {
    let t0 = Instant::now();
    let prob = RationalSUnitProblem::new(&[2, 3], [1, 1, 1], 10).map_err(|e| e.to_string())?;
    let rep = solve_sunit_q(&prob).map_err(|e| e.to_string())?;
    for (e, h) in [((2, 1), (-1, 1)), ((1, 2), (1, 2)), ((9, 1), (-8, 1))] {
        let (e, h) = (rat(e.0, e.1), rat(h.0, h.1));
        ensure(rep.solutions.iter().any(|s| s.eps == e && s.eta == h), || format!("({e}, {h}) missing"))?;
    }
    // s counts the two primes and the infinite place; Q = 2 * 3
    let s = 3;
    let c1 = gyory_yu_c1(1, s).map_err(|e| e.to_string())?;
    let r = regulator_bound(&int(1), 1, &bf::from_i64(6), s).map_err(|e| e.to_string())?;
    let r = r.value().ok_or("regulator bound out of range")?;
    let bound = gyory_yu_bound(&c1, &bf::from_i64(3), &r).map_err(|e| e.to_string())?;
    let mut worst = LogValue::zero();
    for sol in &rep.solutions {
        ensure(&sol.eps + &sol.eta == BigRational::one(), || format!("{} + {} != 1", sol.eps, sol.eta))?;
        ensure(is_23_unit(&sol.eps) && is_23_unit(&sol.eta), || format!("{} or {} is not an S-unit", sol.eps, sol.eta))?;
        let h = LogValue::from_bigint(&sol.eps.numer().abs().max(sol.eps.denom().clone()));
        ensure(h.cmp_total(&bound).is_le(), || format!("h({}) exceeds the bound", sol.eps))?;
        worst = worst.max(&h);
    }
    let elapsed = t0.elapsed().as_secs_f64();
    ensure(elapsed < 60.0, || format!("took {elapsed:.2} s"))?;
    Ok(format!(
        "{} solutions, max h(eps) = {:.4} <= log bound {}, {elapsed:.2} s",
        rep.solutions.len(),
        worst.ln_f64(),
        bound.ln_string()
    ))
}

// ---------------------------------------------------------------------------
// 3. c1(1,1) = pi 2^34 log 2 against a fixed-point series evaluation

/// `sum (-1)^k / ((2k+1) x^(2k+1))`, scaled by `scale`.
fn atan_inv(x: i64, scale: &BigInt) -> BigInt {
    let x2 = int(x * x);
    let mut pow = scale / int(x);
    let mut sum = BigInt::zero();
    let mut k = 0i64;
    while !pow.is_zero() {
        let term = &pow / int(2 * k + 1);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        pow /= &x2;
        k += 1;
    }
    sum
}

/// `2 sum 1 / ((2k+1) 3^(2k+1))`, scaled by `scale`.
fn ln2_scaled(scale: &BigInt) -> BigInt {
    let mut pow = scale / int(3);
    let mut sum = BigInt::zero();
    let mut k = 0i64;
    while !pow.is_zero() {
        sum += &pow / int(2 * k + 1);
        pow /= int(9);
        k += 1;
    }
    sum * 2
}

/// Parses `[-]d.ddd[e[+-]x]` exactly.
fn decimal_to_rational(s: &str) -> Option<BigRational> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = mant.strip_prefix('-').map_or((false, mant), |m| (true, m));
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: BigInt = format!("{ip}{fp}").parse().ok()?;
    let e = exp - fp.len() as i64;
    let ten = int(10);
    let mut v = if e >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, e as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-e) as usize))
    };
    if neg {
        v = -v;
    }
    Some(v)
}

fn criterion_3() -> Outcome {
    let scale = num_traits::pow(int(10), 80);
    let pi = atan_inv(5, &scale) * 16 - atan_inv(239, &scale) * 4;
    let ln2 = ln2_scaled(&scale);
    let oracle = BigRational::new(pi * ln2 * num_traits::pow(int(2), 34), &scale * &scale);
    let c1 = gyory_yu_c1(1, 1).map_err(|e| e.to_string())?;
    let v = c1.value().ok_or("c1 out of range")?;
    let text = bf::to_string(&v);
    let got = decimal_to_rational(&text).ok_or_else(|| format!("cannot read {text}"))?;
    let rel = ((&got - &oracle) / &oracle).abs();
    let tol = BigRational::new(int(1), num_traits::pow(int(10), 30));
    ensure(rel <= tol, || format!("relative error {} too large", rel.to_f64().unwrap_or(f64::NAN)))?;
    let lead: String = text.chars().take(14).collect();
    Ok(format!("c1 = {lead}..., relative error {:.1e} against an 80-digit series", rel.to_f64().unwrap_or(0.0)))
}

// ---------------------------------------------------------------------------
// 4. kernel and small-solution certificates

fn det_i128(mut a: Vec<Vec<i128>>) -> i128 {
    // fraction-free elimination
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i][k] != 0) else { return 0 };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Rank and gcd of the maximal nonvanishing minors.
fn determinantal(a: &[Vec<i128>]) -> (usize, i128) {
    let (m, n) = (a.len(), a.first().map_or(0, |r| r.len()));
    for k in (1..=m.min(n)).rev() {
        let mut g = 0i128;
        for rows in subsets(m, k) {
            for cols in subsets(n, k) {
                let sub: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j]).collect()).collect();
                g = g.gcd(&det_i128(sub));
            }
        }
        if g != 0 {
            return (k, g);
        }
    }
    (0, 1)
}

fn minor_bound_holds(y: &[BigInt], m: usize, hmax: &BigInt) -> bool {
    let h = hmax.clone().max(BigInt::one());
    let ymax = y.iter().map(|v| v.abs()).max().unwrap_or_default();
    &ymax * &ymax <= num_traits::pow(h, 2 * m) * num_traits::pow(int(m as i64), m)
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut kvecs, mut solved, mut unsolvable) = (0, 0, 0);
    for trial in 0..1000 {
        let m = rng.gen_range(1..=4usize);
        let n = rng.gen_range(1..=6usize);
        let a: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| rng.gen_range(-50..=50)).collect()).collect();
        let u = IntMatrix::new(a.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect());
        let ai: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let hmax = int(a.iter().flatten().map(|x| x.abs()).max().unwrap());
        let (rank, _) = determinantal(&ai);

        let ker = kernel_basis_int(&u);
        ensure(ker.len() == n - rank, || format!("trial {trial}: {} kernel vectors, expected {}", ker.len(), n - rank))?;
        for y in &ker {
            ensure(u.mul_vec(y).iter().all(Zero::is_zero), || format!("trial {trial}: U y != 0"))?;
            ensure(minor_bound_holds(y, m, &hmax), || format!("trial {trial}: kernel vector exceeds the bound"))?;
        }
        if !ker.is_empty() {
            let kt: Vec<Vec<i128>> = ker.iter().map(|y| y.iter().map(|v| v.to_i128().unwrap()).collect()).collect();
            ensure(determinantal(&kt).0 == ker.len(), || format!("trial {trial}: kernel vectors are dependent"))?;
        }
        kvecs += ker.len();

        let b: Vec<i64> = if trial % 2 == 0 {
            (0..m).map(|_| rng.gen_range(-50..=50)).collect()
        } else {
            let x: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            a.iter().map(|r| r.iter().zip(&x).map(|(p, q)| p * q).sum()).collect()
        };
        let bb: Vec<BigInt> = b.iter().map(|&x| int(x)).collect();
        let aug: Vec<Vec<i128>> = ai.iter().zip(&b).map(|(r, &x)| r.iter().cloned().chain([x as i128]).collect()).collect();
        let (r1, g1) = determinantal(&ai);
        let (r2, g2) = determinantal(&aug);
        let oracle_solvable = r1 == r2 && g1 == g2;
        match solve_int_small(&u, &bb).map_err(|e| format!("trial {trial}: {e}"))? {
            IntSolution::Solution(y) => {
                ensure(oracle_solvable, || format!("trial {trial}: solution where the minors forbid one"))?;
                ensure(u.mul_vec(&y) == bb, || format!("trial {trial}: U y != b"))?;
                let hmax_aug = hmax.clone().max(int(b.iter().map(|x| x.abs()).max().unwrap()));
                ensure(minor_bound_holds(&y, m, &hmax_aug), || format!("trial {trial}: solution exceeds the bound"))?;
                solved += 1;
            }
            IntSolution::Unsolvable => {
                ensure(!oracle_solvable, || format!("trial {trial}: reported unsolvable, minors agree"))?;
                unsolvable += 1;
            }
        }
    }
    Ok(format!("1000 matrices: {kvecs} kernel vectors, {solved} solutions, {unsolvable} unsolvable, all certified"))
}

// ---------------------------------------------------------------------------
// 5. ideal membership against a bounded cofactor search

fn random_poly(rng: &mut ChaCha8Rng, nvars: usize, deg: u32, c: i64) -> ZPoly {
    let mut p = ZPoly::zero(nvars);
    for mono in monomials_up_to(nvars, deg) {
        if rng.gen_bool(0.5) {
            p.add_term(mono, int(rng.gen_range(-c..=c)));
        }
    }
    p
}

fn max_coeff(p: &ZPoly) -> i64 {
    p.max_abs_coeff().to_i64().unwrap_or(i64::MAX)
}

fn dense(p: &ZPoly, index: &BTreeMap<Vec<u32>, usize>) -> Vec<i64> {
    let mut v = vec![0; index.len()];
    for (m, c) in p.terms() {
        v[index[&m.0]] = c.to_i64().unwrap();
    }
    v
}

/// Cofactors of degree <= 1 with entries in [-2, 2], by exhaustion.
fn bounded_cofactor_search(gens: &[ZPoly], b: &ZPoly, nvars: usize) -> bool {
    let top = gens.iter().chain([b]).map(|g| g.degree_or_zero()).max().unwrap() + 1;
    let index: BTreeMap<Vec<u32>, usize> = monomials_up_to(nvars, top).into_iter().enumerate().map(|(i, m)| (m.0, i)).collect();
    let target = dense(b, &index);
    let shifts: Vec<Vec<i64>> = gens
        .iter()
        .flat_map(|g| monomials_up_to(nvars, 1).into_iter().map(move |m| g.mul_monomial(&m, &BigInt::one())))
        .map(|p| dense(&p, &index))
        .collect();
    let k = shifts.len();
    let mut digits = vec![-2i64; k];
    loop {
        let mut acc = vec![0i64; index.len()];
        for (d, s) in digits.iter().zip(&shifts) {
            for (a, x) in acc.iter_mut().zip(s) {
                *a += d * x;
            }
        }
        if acc == target {
            return true;
        }
        let mut i = 0;
        while i < k && digits[i] == 2 {
            digits[i] = -2;
            i += 1;
        }
        if i == k {
            return false;
        }
        digits[i] += 1;
    }
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let opts = MembershipOptions::default();
    let (mut members, mut non, mut total) = (0, 0, 0);
    while total < 120 {
        let nvars = rng.gen_range(1..=2usize);
        let m = rng.gen_range(1..=2usize);
        // generators share a rational zero, so targets not vanishing there are outside
        let pt: Vec<BigInt> = (0..nvars).map(|_| int(rng.gen_range(-2..=2))).collect();
        let gens: Vec<ZPoly> = (0..m)
            .map(|_| {
                let deg = rng.gen_range(1..=3);
                let g = random_poly(&mut rng, nvars, deg, 2);
                &g - &ZPoly::constant(nvars, g.eval(&pt))
            })
            .collect();
        if gens.iter().any(|g| g.is_zero() || max_coeff(g) > 5) {
            continue;
        }
        let mut b = ZPoly::zero(nvars);
        for g in &gens {
            b = &b + &(&random_poly(&mut rng, nvars, 1, 1) * g);
        }
        let member = rng.gen_bool(0.5);
        if !member {
            b = &b + &ZPoly::constant(nvars, int(rng.gen_range(1..=3)));
        }
        if b.is_zero() || max_coeff(&b) > 5 {
            continue;
        }
        total += 1;
        let oracle = bounded_cofactor_search(&gens, &b, nvars);
        ensure(oracle == member, || format!("instance {total}: oracle disagrees with the construction"))?;
        match ideal_membership(&gens, &b, &opts) {
            Membership::Member(cert) => {
                ensure(oracle, || format!("instance {total}: Member but the oracle refutes"))?;
                let mut sum = QPoly::zero(nvars);
                for (x, g) in cert.cofactors.iter().zip(&gens) {
                    sum = &sum + &(x * &g.to_rational());
                }
                ensure(sum == b.to_rational(), || format!("instance {total}: certificate does not re-verify"))?;
                members += 1;
            }
            Membership::NonMember(_) => {
                ensure(!oracle, || format!("instance {total}: NonMember but the oracle finds cofactors"))?;
                non += 1;
            }
            Membership::Unknown { searched_to } => {
                return Err(format!("instance {total}: undecided up to degree {searched_to} (oracle: member = {oracle})"));
            }
        }
    }
    Ok(format!("{total} instances agree ({members} member, {non} non-member), certificates re-verified"))
}

// ---------------------------------------------------------------------------
// 6. reduction pipeline

fn eval_f64(p: &ZPoly, x: &[f64]) -> f64 {
    p.terms()
        .map(|(m, c)| c.to_f64().unwrap() * m.0.iter().zip(x).map(|(&e, v)| v.powi(e as i32)).product::<f64>())
        .sum()
}

fn round_trip_numeric(rd: &ReducedDomain, rep: &CanonicalRep, e: &FractionRep, x: &[f64]) -> bool {
    let y = eval_f64(&rd.y_rep, x);
    let zq: Vec<f64> = x[..rd.q].to_vec();
    let lhs = eval_f64(&rep.q, &zq) * eval_f64(&e.num, x) / eval_f64(&e.den, x);
    let rhs: f64 = rep.p.iter().enumerate().map(|(j, pj)| eval_f64(pj, &zq) * y.powi(j as i32)).sum();
    (lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs())
}

fn criterion_6() -> Outcome {
    let t0 = Instant::now();
    let s2 = 2f64.sqrt();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let z = 2.3f64;
    let cases: [(&str, usize, usize, &[&str], Vec<(&str, &str)>, Vec<f64>); 3] = [
        ("Z[sqrt 2]", 1, 0, &["X1^2 - 2"], vec![("X1 + 1", "1"), ("1", "X1 + 1"), ("X1^3 - 5", "1")], vec![s2]),
        ("Z[phi]", 1, 0, &["X1^2 - X1 - 1"], vec![("X1", "1"), ("1", "X1"), ("2*X1 - 1", "1")], vec![phi]),
        ("Z[z, sqrt z]", 2, 1, &["X2^2 - X1"], vec![("X2", "1"), ("X2 + 1", "X1"), ("X1*X2 - 3", "1")], vec![z, z.sqrt()]),
    ];
    let opts = ReductionOptions::default();
    let mut notes = vec![];
    for (name, r, q, gens, elems, point) in cases {
        let p = Presentation::parse(r, q, gens).map_err(|e| e.to_string())?;
        let elems: Vec<FractionRep> = elems.iter().map(|(n, d)| FractionRep::parse(&p, n, d).unwrap()).collect();
        let rd = reduce(&p, &elems, &opts).map_err(|e| format!("{name}: {e}"))?;
        ensure(rd.big_d == 2, || format!("{name}: D = {}", rd.big_d))?;
        ensure(rd.big_d as u64 <= (p.d() as u64).pow(p.t() as u32), || format!("{name}: D > d^t"))?;
        ensure(rd.f_of_y_verified, || format!("{name}: F(y) not verified"))?;
        let fy = rd.big_f_at_y();
        let in_ideal = match ideal_membership(&p.gens, &fy, &MembershipOptions::default()) {
            Membership::Member(c) => {
                let mut s = QPoly::zero(p.r);
                for (x, g) in c.cofactors.iter().zip(&p.gens) {
                    s = &s + &(x * &g.to_rational());
                }
                s == fy.to_rational()
            }
            _ => false,
        };
        ensure(in_ideal, || format!("{name}: F(y) is not certified in I"))?;
        ensure(eval_f64(&fy, &point).abs() < 1e-9, || format!("{name}: F(y) does not vanish numerically"))?;
        for (i, e) in elems.iter().enumerate() {
            let rep = canonical_rep(&rd, &p, e, &opts).map_err(|e| format!("{name}: {e}"))?;
            let lhs = &rd.embed(&rep.q) * &e.num;
            let rhs = &e.den * &rd.eval_in_y(&rep.p);
            ensure(element_eq(&p, &lhs, &rhs) == Equality::Equal, || format!("{name}: element {i} does not round-trip"))?;
            ensure(round_trip_numeric(&rd, &rep, e, &point), || format!("{name}: element {i} fails numerically"))?;
        }
        notes.push(format!("{name} D={}", rd.big_d));
    }
    let elapsed = t0.elapsed().as_secs_f64();
    ensure(elapsed < 30.0, || format!("took {elapsed:.2} s"))?;
    Ok(format!("{}, {elapsed:.2} s", notes.join(", ")))
}

// ---------------------------------------------------------------------------
// 7. degree bound for unit equations in B = Z[t, 1/(t(1-t)(1+t))], t = sqrt z

/// `Some(sign, exponents)` when `p` is `±t^a (1-t)^b (1+t)^c`.
fn t_unit_exponents(p: &UQ) -> Option<(i64, [i64; 3])> {
    if p.is_zero() {
        return None;
    }
    let mut p = p.clone();
    let mut e = [0i64; 3];
    for (k, f) in [uq(&[0, 1]), uq(&[1, -1]), uq(&[1, 1])].iter().enumerate() {
        loop {
            let (qt, r) = p.div_rem(f);
            if !r.is_zero() || p.deg() == 0 {
                break;
            }
            p = qt;
            e[k] += 1;
        }
    }
    let c = p.coeff(0);
    (p.deg() == 0 && c.abs().is_one()).then(|| (if c.is_positive() { 1 } else { -1 }, e))
}

/// `(num, den)` of `sign t^a (1-t)^b (1+t)^c` over `t`.
fn t_unit(sign: i64, e: [i64; 3]) -> (UQ, UQ) {
    let (mut num, mut den) = (uq(&[sign]), uq(&[1]));
    for (f, k) in [uq(&[0, 1]), uq(&[1, -1]), uq(&[1, 1])].iter().zip(e) {
        if k >= 0 {
            num = &num * &f.pow(k as u32);
        } else {
            den = &den * &f.pow((-k) as u32);
        }
    }
    (num, den)
}

/// Substitutes `t = X2` in a univariate polynomial with integer coefficients.
fn in_x2(p: &UQ) -> ZPoly {
    let mut out = ZPoly::zero(2);
    for (i, c) in p.coeffs().iter().enumerate() {
        assert!(c.is_integer());
        out.add_term(Monomial(vec![0, i as u32]), c.to_integer());
    }
    out
}

fn criterion_7() -> Outcome {
    let p = Presentation::parse(2, 1, &["X2^2 - X1"]).map_err(|e| e.to_string())?;
    let alphas = vec![FractionRep::parse(&p, "X2", "1").unwrap(), FractionRep::parse(&p, "1 - X2", "1").unwrap()];
    let opts = ReductionOptions { max_level: 8, ..Default::default() };
    let rd = reduce(&p, &alphas, &opts).map_err(|e| e.to_string())?;
    let bound = 4 * rd.q as u32 * (rd.big_d as u32).pow(2) * rd.d1();
    let mut sols = vec![];
    for sign in [1, -1] {
        for a in -3..=3 {
            for b in -3..=3 {
                for c in -3..=3 {
                    let (n, d) = t_unit(sign, [a, b, c]);
                    let rest = &d - &n;
                    let Some((s2, e2)) = t_unit_exponents(&rest) else { continue };
                    // eta = rest / d, with d carrying no common factor with rest handled by exponents
                    let mut eta = [0; 3];
                    for k in 0..3 {
                        eta[k] = e2[k] - [a, b, c][k].min(0).abs();
                    }
                    sols.push(((sign, [a, b, c]), (s2, eta)));
                }
            }
        }
    }
    ensure(!sols.is_empty(), || "no solutions found".into())?;
    let mut worst = 0;
    for ((s1, e1), (s2, e2)) in &sols {
        for (s, e) in [(*s1, *e1), (*s2, *e2)] {
            let (n, d) = t_unit(s, e);
            let fr = FractionRep::new(in_x2(&n), in_x2(&d));
            let rep = canonical_rep(&rd, &p, &fr, &opts).map_err(|err| format!("{e:?}: {err}"))?;
            worst = worst.max(rep.degbar());
            ensure(rep.degbar() <= bound, || format!("unit {s} {e:?} has degbar {} > {bound}", rep.degbar()))?;
        }
    }
    Ok(format!("{} solutions, max degbar {worst} <= 4 q D^2 d1 = {bound}", sols.len()))
}

// ---------------------------------------------------------------------------
// 8. specialization

fn criterion_8() -> Outcome {
    let p = Presentation::parse(2, 1, &["X2^2 - X1"]).map_err(|e| e.to_string())?;
    let opts = ReductionOptions::default();
    let base = vec![FractionRep::parse(&p, "X2", "1").unwrap(), FractionRep::parse(&p, "X2 + 1", "X1").unwrap()];
    let rd = reduce(&p, &base, &opts).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let dens = ["1", "X1", "X2", "X1^2"];
    let mut pool = vec![];
    while pool.len() < 21 {
        let num = random_poly(&mut rng, 2, 2, 3);
        if num.is_zero() {
            continue;
        }
        let den = p.poly(dens[rng.gen_range(0..dens.len())]).unwrap();
        let e = FractionRep::new(num, den);
        let rep = canonical_rep(&rd, &p, &e, &opts).map_err(|err| err.to_string())?;
        pool.push((e, rep));
    }
    let fibers: Vec<SpecializedFiber> = [3, 4].iter().map(|&u| SpecializedFiber::new(&rd, &[u]).unwrap()).collect();
    let mut embeddings = vec![];
    for f in &fibers {
        for j in 0..f.roots.len() {
            embeddings.push((f, j, NumberField::new(f.roots[j].minpoly())));
        }
    }
    let mut pairs = 0;
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            let (a, ra) = &pool[i];
            let (b, rb) = &pool[j];
            let prod = FractionRep::new(&a.num * &b.num, &a.den * &b.den);
            let sum = FractionRep::new(&(&a.num * &b.den) + &(&b.num * &a.den), &a.den * &b.den);
            let rp = canonical_rep(&rd, &p, &prod, &opts).map_err(|e| e.to_string())?;
            let rs = canonical_rep(&rd, &p, &sum, &opts).map_err(|e| e.to_string())?;
            for (fib, k, field) in &embeddings {
                let img = |r: &CanonicalRep| field.reduce(&specialize_poly(fib, r).unwrap());
                let (ia, ib) = (img(ra), img(rb));
                ensure(img(&rp) == field.mul(&ia, &ib), || format!("product {i}*{j} at u={:?}, root {k}", fib.u))?;
                ensure(img(&rs) == field.add(&ia, &ib), || format!("sum {i}+{j} at u={:?}, root {k}", fib.u))?;
            }
            pairs += 1;
        }
    }
    // the same identity through algebraic numbers on one fiber
    let fib = &fibers[0];
    let field = NumberField::new(fib.roots[0].minpoly());
    for w in pool.windows(2) {
        let prod = FractionRep::new(&w[0].0.num * &w[1].0.num, &w[0].0.den * &w[1].0.den);
        let rp = canonical_rep(&rd, &p, &prod, &opts).map_err(|e| e.to_string())?;
        let lhs = specialize(fib, 0, &rp).map_err(|e| e.to_string())?;
        let rhs = fib.roots[0].eval_field_elem(
            &field.mul(&specialize_poly(fib, &w[0].1).unwrap(), &specialize_poly(fib, &w[1].1).unwrap()),
        );
        ensure(lhs.same(&rhs), || "algebraic-number product mismatch".into())?;
    }

    // inequality verifiers on every fixture domain
    let mut checks = 0;
    let domains: [(usize, usize, &[&str], &[(&str, &str)]); 3] = [
        (1, 0, &["X1^2 - 2"], &[("X1 + 1", "1"), ("1", "X1 + 1")]),
        (1, 0, &["X1^2 - X1 - 1"], &[("X1", "1"), ("1", "X1")]),
        (2, 1, &["X2^2 - X1"], &[("X2", "1"), ("X2 + 1", "X1"), ("X1 - X2", "1")]),
    ];
    for (r, q, gens, elems) in domains {
        let p = Presentation::parse(r, q, gens).map_err(|e| e.to_string())?;
        let elems: Vec<FractionRep> = elems.iter().map(|(n, d)| FractionRep::parse(&p, n, d).unwrap()).collect();
        let rd = reduce(&p, &elems, &opts).map_err(|e| e.to_string())?;
        let u = find_good_point(&build_h(&rd).map_err(|e| e.to_string())?, 8).map_err(|e| e.to_string())?;
        let fib = SpecializedFiber::new(&rd, &u).map_err(|e| e.to_string())?;
        let l51 = verify_lemma_5_1(&fib.f_u).map_err(|e| e.to_string())?;
        ensure(l51.holds, || format!("{gens:?}: root-height sum estimate fails"))?;
        for c in discriminant_bound(&rd, &fib) {
            ensure(c.coefficient_form_holds && c.counted_holds, || format!("{gens:?}: discriminant bound fails"))?;
            checks += 1;
        }
        for e in &elems {
            let rep = canonical_rep(&rd, &p, e, &opts).map_err(|e| e.to_string())?;
            let hc = verify_specialized_height(&rd, &fib, &rep).map_err(|e| e.to_string())?;
            ensure(hc.counted_holds, || format!("{gens:?}: specialized height bound fails"))?;
            let lc = verify_height_lift(&rd, &rep, None).map_err(|e| e.to_string())?;
            ensure(lc.holds, || format!("{gens:?}: height lift fails"))?;
            let images: Vec<_> = (0..fib.roots.len()).map(|j| specialize(&fib, j, &rep).unwrap()).collect();
            let rc = reconstruct_coeffs(&fib.roots, &images).map_err(|e| e.to_string())?;
            ensure(rc.holds, || format!("{gens:?}: coefficient reconstruction estimate fails"))?;
            if let Some(g1) = rep.p.iter().find(|c| !c.is_zero()) {
                if rd.q > 0 {
                    let n = g1.degree_or_zero().max(rep.q.degree_or_zero()).max(1) as i64;
                    let cb = coeff_bound_from_values(g1, &rep.q, n, &[]).map_err(|e| e.to_string())?;
                    ensure(cb.all_hold(), || format!("{gens:?}: coefficient bound from values fails"))?;
                }
            }
            checks += 4;
        }
    }
    Ok(format!("{pairs} pairs x {} embeddings homomorphic; {checks} lemma checks pass", embeddings.len()))
}

// ---------------------------------------------------------------------------
// 9. 2^v + 2^w = 3

fn criterion_9() -> Outcome {
    let p = Presentation::parse(1, 0, &["X1 - 1"]).map_err(|e| e.to_string())?;
    let k = |s: &str| p.poly(s).unwrap();
    let prob = ExpEquationProblem {
        presentation: p.clone(),
        gammas: vec![FractionRep::element(k("2"))],
        a: k("1"),
        b: k("1"),
        c: k("3"),
        cap: 10,
    };
    let pack = ConstantPack::default();
    let rep = solve_exponential(&prob, &pack).map_err(|e| e.to_string())?;
    let pow2 = |e: i64| if e >= 0 { rat(1 << e, 1) } else { rat(1, 1 << -e) };
    let mut oracle = vec![];
    for v in -10..=10 {
        for w in -10..=10 {
            if pow2(v) + pow2(w) == rat(3, 1) {
                oracle.push(ExpSolution { v: vec![v], w: vec![w] });
            }
        }
    }
    let want = vec![ExpSolution { v: vec![0], w: vec![1] }, ExpSolution { v: vec![1], w: vec![0] }];
    ensure(oracle == want, || format!("oracle found {oracle:?}"))?;
    ensure(rep.solutions == want, || format!("solver found {:?}", rep.solutions))?;
    ensure(rep.undecided.is_empty(), || "undecided candidates remain".into())?;
    let t13 = thm13_bound(1, 3f64.ln(), 1, 1, &pack).map_err(|e| e.to_string())?;
    for s in &rep.solutions {
        for e in s.v.iter().chain(&s.w) {
            let m = LogValue::from_u64(e.unsigned_abs());
            ensure(m.cmp_total(&rep.bound).is_le() && m.cmp_total(&t13).is_le(), || format!("exponent {e} above the bound"))?;
        }
    }
    Ok(format!("exactly {{(0,1),(1,0)}}; exponent bound log10 = {}", rep.bound.log10_string()))
}

// ---------------------------------------------------------------------------
// 10. multiplicative dependence over Q

/// Sign and prime exponents by trial division (all inputs are small).
fn trial_factor(x: &BigRational) -> (bool, BTreeMap<i64, i64>) {
    let mut out = BTreeMap::new();
    for (v, s) in [(x.numer().abs().to_i64().unwrap(), 1), (x.denom().to_i64().unwrap(), -1)] {
        let mut v = v;
        let mut p = 2;
        while v > 1 {
            while v % p == 0 {
                *out.entry(p).or_insert(0) += s;
                v /= p;
            }
            p += 1;
        }
    }
    out.retain(|_, e| *e != 0);
    (x.is_negative(), out)
}

/// Column vectors of exponents over the union of primes.
fn exponent_columns(xs: &[BigRational]) -> (Vec<i64>, Vec<Vec<BigRational>>) {
    let facs: Vec<_> = xs.iter().map(trial_factor).collect();
    let primes: BTreeSet<i64> = facs.iter().flat_map(|(_, f)| f.keys().cloned()).collect();
    let primes: Vec<i64> = primes.into_iter().collect();
    let cols = facs.iter().map(|(_, f)| primes.iter().map(|p| rat(*f.get(p).unwrap_or(&0), 1)).collect()).collect();
    (primes, cols)
}

/// Rank by Gaussian elimination over Q.
fn rank_q(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[rank][c];
                for k in 0..ncols {
                    let t = &f * &rows[rank][k];
                    rows[i][k] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn rat_pow(x: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

fn product(xs: &[BigRational], k: &[BigInt]) -> BigRational {
    xs.iter().zip(k).fold(BigRational::one(), |acc, (x, e)| acc * rat_pow(x, e.to_i64().unwrap()))
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let n = rng.gen_range(1..=24);
    let d = rng.gen_range(1..=24);
    let s = if rng.gen_bool(0.2) { -1 } else { 1 };
    rat(s * n, d)
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let pack = ConstantPack::default();
    let (mut dep, mut indep, mut reps, mut norep) = (0, 0, 0, 0);
    for trial in 0..500 {
        let n = rng.gen_range(1..=3);
        let mut xs: Vec<BigRational> = (0..n).map(|_| random_rational(&mut rng)).collect();
        if n > 1 && rng.gen_bool(0.4) {
            // plant a relation
            let k: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-2..=2)).collect();
            let s = if rng.gen_bool(0.3) { -1 } else { 1 };
            xs[n - 1] = xs[..n - 1].iter().zip(&k).fold(rat(s, 1), |acc, (x, &e)| acc * rat_pow(x, e));
        }
        let (_, cols) = exponent_columns(&xs);
        let oracle_dependent = rank_q(cols.clone()) < n;
        match mult_dep_q(&xs).map_err(|e| format!("trial {trial}: {e}"))? {
            MultDep::Dependent(k) => {
                ensure(oracle_dependent, || format!("trial {trial}: {xs:?} reported dependent"))?;
                ensure(k.iter().any(|x| !x.is_zero()), || format!("trial {trial}: zero relation"))?;
                ensure(product(&xs, &k).is_one(), || format!("trial {trial}: relation fails"))?;
                dep += 1;
            }
            MultDep::Independent => {
                ensure(!oracle_dependent, || format!("trial {trial}: {xs:?} reported independent"))?;
                indep += 1;
                // representation of a target in the independent values
                let target = if rng.gen_bool(0.5) {
                    let k: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
                    xs.iter().zip(&k).fold(BigRational::one(), |acc, (x, &e)| acc * rat_pow(x, e))
                } else {
                    random_rational(&mut rng)
                };
                let (tneg, tf) = trial_factor(&target);
                let mut all = vec![target.clone()];
                all.extend(xs.iter().cloned());
                let (primes, cols) = exponent_columns(&all);
                let tv: Vec<BigRational> = primes.iter().map(|p| rat(*tf.get(p).unwrap_or(&0), 1)).collect();
                // unique rational solution of sum k_i v_i = v0, if any
                let mut aug: Vec<Vec<BigRational>> =
                    (0..primes.len()).map(|r| cols[1..].iter().map(|c| c[r].clone()).chain([tv[r].clone()]).collect()).collect();
                let rank_a = rank_q(aug.iter().map(|r| r[..n].to_vec()).collect());
                let rank_aug = rank_q(aug.clone());
                let mut oracle_k: Option<Vec<BigInt>> = None;
                if rank_a == rank_aug {
                    // back-substitute via elimination on the augmented system
                    let mut row = 0;
                    let mut piv = vec![];
                    for c in 0..n {
                        let Some(pr) = (row..aug.len()).find(|&i| !aug[i][c].is_zero()) else { continue };
                        aug.swap(row, pr);
                        let inv = aug[row][c].recip();
                        for x in aug[row].iter_mut() {
                            *x = &*x * &inv;
                        }
                        for i in 0..aug.len() {
                            if i != row && !aug[i][c].is_zero() {
                                let f = aug[i][c].clone();
                                for k in 0..=n {
                                    let t = &f * &aug[row][k];
                                    aug[i][k] -= t;
                                }
                            }
                        }
                        piv.push(c);
                        row += 1;
                    }
                    let mut k = vec![BigRational::zero(); n];
                    for (r, &c) in piv.iter().enumerate() {
                        k[c] = aug[r][n].clone();
                    }
                    if k.iter().all(|x| x.is_integer()) {
                        let ki: Vec<BigInt> = k.iter().map(|x| x.to_integer()).collect();
                        let sign_neg = xs.iter().zip(&ki).filter(|(x, e)| x.is_negative() && e.is_odd()).count() % 2 == 1;
                        if sign_neg == tneg {
                            oracle_k = Some(ki);
                        }
                    }
                }
                match mult_rep_exponents(&target, &xs, &pack).map_err(|e| format!("trial {trial}: {e}"))? {
                    MultRep::Exponents(k) => {
                        ensure(oracle_k.as_ref() == Some(&k), || format!("trial {trial}: {target} = {xs:?}^{k:?}, oracle {oracle_k:?}"))?;
                        ensure(product(&xs, &k) == target, || format!("trial {trial}: representation fails"))?;
                        reps += 1;
                    }
                    MultRep::NoRepresentation => {
                        ensure(oracle_k.is_none(), || format!("trial {trial}: oracle represents {target}"))?;
                        norep += 1;
                    }
                }
            }
        }
    }
    // (2, 4): relation (2, -1); heights log 2 and log 4, nominal degree 2
    let k = match mult_dep_q(&[rat(2, 1), rat(4, 1)]).map_err(|e| e.to_string())? {
        MultDep::Dependent(k) => k,
        MultDep::Independent => return Err("2 and 4 reported independent".into()),
    };
    ensure(k == vec![int(2), int(-1)], || format!("relation {k:?}"))?;
    let hs = [LogValue::from_f64(2f64.ln()), LogValue::from_f64(4f64.ln())];
    let lm = loher_masser_bound(1, 2, &hs).map_err(|e| e.to_string())?;
    let tightest = lm.iter().map(|b| b.to_f64()).fold(f64::INFINITY, f64::min);
    // the quoted 302.9 is the value truncated to one decimal
    ensure((tightest * 10.0).floor() == 3029.0, || format!("bound {tightest:.2}, expected 302.9..."))?;
    for (ki, b) in k.iter().zip(&lm) {
        ensure(LogValue::from_bigint(&ki.abs()).cmp_total(b).is_le(), || format!("|{ki}| exceeds {}", b.to_f64()))?;
    }
    Ok(format!(
        "500 tuples: {dep} dependent, {indep} independent; {reps} representations, {norep} refusals; LM bound {tightest:.2} covers (2,-1)"
    ))
}

// ---------------------------------------------------------------------------
// 11. negative control

/// Adds 1 to the first integer found under a solution-bearing key.
fn tamper(v: &mut serde_json::Value) -> bool {
    use serde_json::Value;
    fn first_int(v: &mut Value) -> bool {
        match v {
            Value::Number(n) if n.is_i64() => {
                *v = Value::from(n.as_i64().unwrap() + 1);
                true
            }
            Value::Array(a) => a.iter_mut().any(first_int),
            Value::Object(o) => ["exponents", "v", "w", "eps", "eta"].iter().any(|k| o.get_mut(*k).is_some_and(first_int)),
            _ => false,
        }
    }
    let Value::Object(o) = v else { return false };
    ["solutions", "relation", "exponents"].iter().any(|k| o.get_mut(*k).is_some_and(first_int))
}

fn criterion_11() -> Outcome {
    let src = fixtures_dir();
    let clean = verify_paper(&src).map_err(|e| e.to_string())?;
    ensure(clean.iter().all(|c| c.passed), || "untampered fixtures fail".into())?;
    let mut names: Vec<PathBuf> = std::fs::read_dir(&src).map_err(|e| e.to_string())?.map(|e| e.unwrap().path()).collect();
    names.sort();
    let mut tampered = 0;
    for target in &names {
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
        if !tamper(&mut v) {
            continue;
        }
        let dir = std::env::temp_dir().join(format!("effkit-tamper-{}-{tampered}", std::process::id()));
        std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
        for f in &names {
            let dst = dir.join(f.file_name().unwrap());
            if f == target {
                std::fs::write(&dst, serde_json::to_string_pretty(&v).unwrap()).unwrap();
            } else {
                std::fs::copy(f, &dst).unwrap();
            }
        }
        let failed = match verify_paper(&dir) {
            Ok(checks) => checks.iter().any(|c| !c.passed),
            Err(_) => true,
        };
        std::fs::remove_dir_all(&dir).ok();
        let name = target.file_name().unwrap().to_string_lossy().to_string();
        ensure(failed, || format!("tampered {name} still verifies"))?;
        tampered += 1;
    }
    ensure(tampered >= 1, || "nothing to tamper with".into())?;
    Ok(format!("{} clean checks pass; each of {tampered} tampered fixtures is rejected", clean.len()))
}

// ---------------------------------------------------------------------------

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("Mason completeness for S = {inf, z, z-1}", criterion_1),
        ("height dominance for S = {2, 3}", criterion_2),
        ("c1(1,1) to 30 digits", criterion_3),
        ("kernel and small-solution certificates", criterion_4),
        ("ideal membership oracle equivalence", criterion_5),
        ("reduction pipeline", criterion_6),
        ("degree bound for unit solutions in B", criterion_7),
        ("specialization soundness", criterion_8),
        ("exponential equation 2^v + 2^w = 3", criterion_9),
        ("multiplicative dependence over Q", criterion_10),
        ("negative control", criterion_11),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|o| o != i + 1) {
            continue;
        }
        let t0 = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t0.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("criterion {:>2} PASS: {name}: {detail} [{secs:.2}s]", i + 1),
            Err(e) => {
                failures += 1;
                println!("criterion {:>2} FAIL: {name}: {e} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
