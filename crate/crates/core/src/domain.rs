//! Presentations `A = Z[X1..Xr]/(f1..fm)` of finitely generated domains.

use std::collections::HashMap;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebraic::factor_z;
use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::modp::reduce;
use crate::poly::{content_in_last, enumerate_small_polys, multipoly_gcd, parse_poly, QPoly, SizeTriple, ZPoly};
use crate::poly_linear::{ideal_membership, verify_combination, Membership, MembershipOptions, Ring};
use crate::upoly::{pow_mod, UZ};

/// Presentation file contents.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub r: usize,
    #[serde(default)]
    pub q: usize,
    pub generators: Vec<String>,
    #[serde(default)]
    pub a: Option<String>,
    #[serde(default)]
    pub b: Option<String>,
    #[serde(default)]
    pub c: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub r: usize,
    /// `X1..Xq` are declared algebraically independent; the rest are algebraic over them.
    pub q: usize,
    pub gens: Vec<ZPoly>,
    /// Coefficients of a unit equation `a x + b y = c`, when given.
    pub abc: Option<[ZPoly; 3]>,
}

impl Presentation {
    pub fn new(r: usize, q: usize, gens: Vec<ZPoly>) -> Result<Self> {
        if q > r {
            return Err(Error::input(format!("q = {q} exceeds r = {r}")));
        }
        if gens.iter().any(|g| g.nvars() != r) {
            return Err(Error::input("generators must use r variables"));
        }
        Ok(Presentation { r, q, gens, abc: None })
    }

    pub fn parse(r: usize, q: usize, gens: &[&str]) -> Result<Self> {
        let g: Vec<ZPoly> = gens.iter().map(|s| parse_poly(s, r)).collect::<std::result::Result<_, _>>()?;
        Self::new(r, q, g)
    }

    pub fn from_file(f: &PresentationFile) -> Result<Self> {
        let gens: Vec<&str> = f.generators.iter().map(String::as_str).collect();
        let mut p = Self::parse(f.r, f.q, &gens)?;
        if let (Some(a), Some(b), Some(c)) = (&f.a, &f.b, &f.c) {
            p.abc = Some([parse_poly(a, f.r)?, parse_poly(b, f.r)?, parse_poly(c, f.r)?]);
        }
        Ok(p)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: PresentationFile = serde_json::from_str(text).map_err(|e| Error::input(format!("presentation: {e}")))?;
        Self::from_file(&f)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn t(&self) -> usize {
        self.r - self.q
    }

    /// Max total degree of the generators (at least 1).
    pub fn d(&self) -> u32 {
        self.gens.iter().map(|g| g.degree_or_zero()).max().unwrap_or(1).max(1)
    }

    /// Max logarithmic height of the generators (at least 1).
    pub fn h(&self) -> f64 {
        self.gens.iter().map(|g| SizeTriple::of(g).h_f64()).fold(1.0, f64::max)
    }

    pub fn poly(&self, s: &str) -> Result<ZPoly> {
        Ok(parse_poly(s, self.r)?)
    }
}

/// Three-valued outcome of an equality test.
/// `num / den` in the fraction field, both given by representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionRep {
    pub num: ZPoly,
    pub den: ZPoly,
}

impl FractionRep {
    pub fn new(num: ZPoly, den: ZPoly) -> Self {
        assert_eq!(num.nvars(), den.nvars());
        FractionRep { num, den }
    }

    pub fn element(a: ZPoly) -> Self {
        let n = a.nvars();
        FractionRep { num: a, den: ZPoly::one(n) }
    }

    pub fn inverse(&self) -> Self {
        FractionRep { num: self.den.clone(), den: self.num.clone() }
    }

    pub fn parse(p: &Presentation, num: &str, den: &str) -> Result<Self> {
        Ok(FractionRep { num: p.poly(num)?, den: p.poly(den)? })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equality {
    Equal,
    NotEqual,
    Unknown,
}

fn options() -> MembershipOptions {
    MembershipOptions { max_deg: 6, ..Default::default() }
}

/// Is `a - b` in the ideal?
pub fn element_eq(p: &Presentation, a: &ZPoly, b: &ZPoly) -> Equality {
    element_eq_with(p, a, b, &options())
}

pub fn element_eq_with(p: &Presentation, a: &ZPoly, b: &ZPoly, opts: &MembershipOptions) -> Equality {
    match ideal_membership(&p.gens, &(a - b), opts) {
        Membership::Member(_) => Equality::Equal,
        Membership::NonMember(_) => Equality::NotEqual,
        Membership::Unknown { .. } => Equality::Unknown,
    }
}

/// Cofactors showing `target` is in the ideal, if found.
fn member_cofactors(p: &Presentation, target: &ZPoly) -> Option<Vec<QPoly>> {
    match ideal_membership(&p.gens, target, &options()) {
        Membership::Member(c) => Some(c.cofactors),
        _ => None,
    }
}

/// Points of the variety of the ideal over small prime fields, used as a hash
/// of residue classes: elements equal in `A` agree at every such point.
#[derive(Clone, Debug)]
pub struct PointSample {
    points: Vec<(u64, Vec<u64>)>,
}

pub fn eval_mod(f: &ZPoly, x: &[u64], p: u64) -> u64 {
    let mut acc = 0u64;
    for (m, c) in f.terms() {
        let mut t = reduce(c, p);
        for (xi, &e) in x.iter().zip(&m.0) {
            if e > 0 {
                t = ((t as u128 * pow_mod(*xi, e as u64, p) as u128) % p as u128) as u64;
            }
        }
        acc = (acc + t) % p;
    }
    acc
}

impl PointSample {
    pub fn find(p: &Presentation, want: usize) -> Self {
        let primes = [101u64, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197];
        let small = [31u64, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];
        let pool: Vec<u64> = if p.r <= 2 { primes.to_vec() } else { small.to_vec() };
        let mut points = Vec::new();
        for &prime in &pool {
            if points.len() >= want {
                break;
            }
            let total = (prime as u128).pow(p.r as u32);
            if total > 3_000_000 {
                continue;
            }
            let mut per_prime = 0;
            let mut x = vec![0u64; p.r];
            'scan: for idx in 0..total {
                let mut k = idx;
                for xi in x.iter_mut() {
                    *xi = (k % prime as u128) as u64;
                    k /= prime as u128;
                }
                // skip the most degenerate coordinates
                if x.iter().any(|&v| v == 0) {
                    continue;
                }
                if p.gens.iter().all(|g| eval_mod(g, &x, prime) == 0) {
                    points.push((prime, x.clone()));
                    per_prime += 1;
                    if per_prime >= 3 || points.len() >= want {
                        break 'scan;
                    }
                }
            }
        }
        PointSample { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn signature(&self, f: &ZPoly) -> Vec<u64> {
        self.points.iter().map(|(p, x)| eval_mod(f, x, *p)).collect()
    }

    fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.points.iter().map(|(p, _)| *p)
    }
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    (a % p != 0).then(|| pow_mod(a, p - 2, p))
}

/// A representative of the inverse of `a`, searched by increasing size up to `size_cap`.
pub fn find_inverse(p: &Presentation, a: &ZPoly, size_cap: u32) -> Result<ZPoly> {
    let sample = PointSample::find(p, 12);
    let sa = sample.signature(a);
    let want: Option<Vec<u64>> = sa.iter().zip(sample.primes()).map(|(&v, q)| inv_mod(v, q)).collect();
    let Some(want) = want else {
        return Err(Error::SearchExhausted(format!("no inverse: the element vanishes at a point of the variety (size cap {size_cap})")));
    };
    let one = ZPoly::one(p.r);
    for g in enumerate_small_polys(size_cap, p.r) {
        if g.is_zero() || sample.signature(&g) != want {
            continue;
        }
        if let Some(x) = member_cofactors(p, &(&(a * &g) - &one)) {
            debug_assert!(verify_combination(&p.gens, &x, &(&(a * &g) - &one)));
            return Ok(g);
        }
    }
    Err(Error::SearchExhausted(format!("no inverse representative with size <= {size_cap}")))
}

/// One solution `(eps, eps', eta, eta')` of `a eps + b eta = c` with `eps eps' = eta eta' = 1` in `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitSolution {
    pub eps: ZPoly,
    pub eps_inv: ZPoly,
    pub eta: ZPoly,
    pub eta_inv: ZPoly,
    /// Cofactor certificates for the three memberships, in the order above.
    pub certificates: [Vec<QPoly>; 3],
}

impl UnitSolution {
    /// Re-checks the three memberships by multiplying out the stored cofactors.
    pub fn verify(&self, p: &Presentation, a: &ZPoly, b: &ZPoly, c: &ZPoly) -> bool {
        let one = ZPoly::one(p.r);
        let targets = [
            &(&self.eps * &self.eps_inv) - &one,
            &(&self.eta * &self.eta_inv) - &one,
            &(&(a * &self.eps) + &(b * &self.eta)) - c,
        ];
        targets.iter().zip(&self.certificates).all(|(t, x)| verify_combination(&p.gens, x, t))
    }
}

struct Unit {
    rep: ZPoly,
    inv: ZPoly,
    sig: Vec<u64>,
    cert: Vec<QPoly>,
}

/// All unit-equation solutions whose four representatives have size at most `size_cap`,
/// one per solution in `A`.
pub fn enumerate_unit_solutions(p: &Presentation, a: &ZPoly, b: &ZPoly, c: &ZPoly, size_cap: u32) -> Vec<UnitSolution> {
    let sample = PointSample::find(p, 12);
    let candidates: Vec<ZPoly> = enumerate_small_polys(size_cap, p.r).filter(|f| !f.is_zero()).collect();
    let sigs: Vec<Vec<u64>> = exec::par_map(&candidates, |f| sample.signature(f));
    let mut by_sig: HashMap<&[u64], Vec<usize>> = HashMap::new();
    for (i, s) in sigs.iter().enumerate() {
        by_sig.entry(s.as_slice()).or_default().push(i);
    }
    let primes: Vec<u64> = sample.primes().collect();
    let one = ZPoly::one(p.r);
    // units with an inverse inside the size cap
    let found: Vec<Option<Unit>> = exec::par_range(candidates.len(), |i| {
        let want: Option<Vec<u64>> = sigs[i].iter().zip(&primes).map(|(&v, &q)| inv_mod(v, q)).collect();
        let want = want?;
        let partners = by_sig.get(want.as_slice())?;
        for &j in partners {
            let t = &(&candidates[i] * &candidates[j]) - &one;
            if let Some(cert) = member_cofactors(p, &t) {
                return Some(Unit { rep: candidates[i].clone(), inv: candidates[j].clone(), sig: sigs[i].clone(), cert });
            }
        }
        None
    });
    let mut units: Vec<Unit> = Vec::new();
    for u in found.into_iter().flatten() {
        // keep the first representative of each element
        let dup = units.iter().any(|v| v.sig == u.sig && element_eq(p, &v.rep, &u.rep) == Equality::Equal);
        if !dup {
            units.push(u);
        }
    }
    let sa = sample.signature(a);
    let sb = sample.signature(b);
    let sc = sample.signature(c);
    let mut out = Vec::new();
    for e in &units {
        for h in &units {
            let consistent = (0..primes.len()).all(|k| {
                let q = primes[k] as u128;
                (sa[k] as u128 * e.sig[k] as u128 + sb[k] as u128 * h.sig[k] as u128) % q == sc[k] as u128 % q
            });
            if !consistent {
                continue;
            }
            let t = &(&(a * &e.rep) + &(b * &h.rep)) - c;
            if let Some(cert) = member_cofactors(p, &t) {
                out.push(UnitSolution {
                    eps: e.rep.clone(),
                    eps_inv: e.inv.clone(),
                    eta: h.rep.clone(),
                    eta_inv: h.inv.clone(),
                    certificates: [e.cert.clone(), h.cert.clone(), cert],
                });
            }
        }
    }
    out
}

/// Outcome of [`check_domain`].
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DomainCheck {
    Verified { reason: String },
    Refuted { reason: String },
    Unknown,
}

/// Partial test that the presentation defines a domain of characteristic zero.
pub fn check_domain(p: &Presentation) -> DomainCheck {
    let opts = MembershipOptions { max_deg: 4, ring: Ring::Integer, ..Default::default() };
    for n in 1..=12i64 {
        if ideal_membership(&p.gens, &ZPoly::constant(p.r, BigInt::from(n)), &opts).is_member() {
            return DomainCheck::Refuted { reason: format!("{n} lies in the ideal") };
        }
    }
    let nonzero: Vec<&ZPoly> = p.gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.len() != 1 {
        return DomainCheck::Unknown;
    }
    let f = nonzero[0];
    let content = f.content();
    if !content.is_one() {
        return DomainCheck::Refuted {
            reason: format!("{content} * ({}) lies in the ideal and neither factor does", f.map_coeffs(|c| c / &content)),
        };
    }
    let vars: Vec<usize> = (0..p.r).filter(|&v| f.degree_in(v).unwrap_or(0) > 0).collect();
    match vars.len() {
        1 => {
            let u = UZ::from_multi(&f.remap_vars(1, &vec![0; p.r]), 0)
                .expect("univariate");
            let (_, fs) = factor_z(&u);
            if fs.len() == 1 && fs[0].1 == 1 {
                DomainCheck::Verified { reason: format!("{f} is irreducible over Q and primitive") }
            } else {
                let g = fs[0].0.to_multi(p.r, vars[0]);
                DomainCheck::Refuted { reason: format!("{f} has the proper factor {g}") }
            }
        }
        2 => bivariate_check(f, p.r, vars[0], vars[1]),
        _ => DomainCheck::Unknown,
    }
}

fn bivariate_check(f: &ZPoly, r: usize, v0: usize, v1: usize) -> DomainCheck {
    for v in [v0, v1] {
        let d = ZPoly::from_terms(
            r,
            f.terms().filter(|(m, _)| m.0[v] > 0).map(|(m, c)| {
                let mut e = m.0.clone();
                e[v] -= 1;
                (crate::poly::Monomial(e), c * BigInt::from(m.0[v]))
            }),
        );
        let g = multipoly_gcd(f, &d);
        if !g.is_constant() {
            let cof = f.div_exact(&g).expect("gcd divides");
            return DomainCheck::Refuted { reason: format!("({g}) * ({cof}) lies in the ideal with a repeated factor") };
        }
    }
    for (main, other) in [(v1, v0), (v0, v1)] {
        let cont = content_in_last(&f.remap_vars(r, &swap_to_last(r, main)), r - 1);
        if !cont.is_constant() {
            continue;
        }
        let dm = f.degree_in(main).unwrap_or(0);
        for c in [1i64, 2, -1, 3, -2, 5, 7, -3, 11] {
            let vals: Vec<ZPoly> =
                (0..r).map(|i| if i == other { ZPoly::constant(1, BigInt::from(c)) } else if i == main { ZPoly::var(1, 0) } else { ZPoly::zero(1) }).collect();
            let s = f.substitute(&vals);
            let Some(u) = UZ::from_multi(&s, 0) else { continue };
            if u.is_zero() || u.deg() as u32 != dm {
                continue;
            }
            let (_, fs) = factor_z(&u);
            if fs.len() == 1 && fs[0].1 == 1 {
                return DomainCheck::Verified {
                    reason: format!("primitive in X{} and irreducible after X{} -> {c}", main + 1, other + 1),
                };
            }
        }
    }
    DomainCheck::Unknown
}

fn swap_to_last(r: usize, v: usize) -> Vec<usize> {
    (0..r).map(|i| if i == v { r - 1 } else if i == r - 1 { v } else { i }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(r: usize, g: &[&str]) -> Presentation {
        Presentation::parse(r, 0, g).unwrap()
    }

    #[test]
    fn equality_examples() {
        let p = pres(1, &["X^2-2"]);
        let z = |s: &str| p.poly(s).unwrap();
        assert_eq!(element_eq(&p, &z("X^2"), &z("2")), Equality::Equal);
        assert_eq!(element_eq(&p, &z("X"), &z("0")), Equality::NotEqual);
        assert_eq!(element_eq(&p, &z("X^3"), &z("2X")), Equality::Equal);
    }

    #[test]
    fn inverses() {
        let phi = pres(1, &["X^2-X-1"]);
        assert_eq!(find_inverse(&phi, &phi.poly("X").unwrap(), 2).unwrap(), phi.poly("X-1").unwrap());
        let s2 = pres(1, &["X^2-2"]);
        let inv = find_inverse(&s2, &s2.poly("X+1").unwrap(), 2).unwrap();
        assert_eq!(element_eq(&s2, &inv, &s2.poly("X-1").unwrap()), Equality::Equal);
        assert!(find_inverse(&s2, &s2.poly("X").unwrap(), 2).is_err());
    }

    #[test]
    fn golden_ratio_solutions() {
        let p = pres(1, &["X^2-X-1"]);
        let one = ZPoly::one(1);
        let sols = enumerate_unit_solutions(&p, &one, &one, &one, 1);
        assert!(sols.iter().all(|s| s.verify(&p, &one, &one, &one)));
        let want = (p.poly("X").unwrap(), p.poly("1-X").unwrap());
        assert!(sols.iter().any(|s| element_eq(&p, &s.eps, &want.0) == Equality::Equal
            && element_eq(&p, &s.eta, &want.1) == Equality::Equal));
        let z = pres(1, &["X-1"]);
        assert!(enumerate_unit_solutions(&z, &ZPoly::one(1), &ZPoly::one(1), &ZPoly::one(1), 2).is_empty());
    }

    #[test]
    fn domain_checks() {
        assert!(matches!(check_domain(&pres(1, &["X^2-2"])), DomainCheck::Verified { .. }));
        assert!(matches!(check_domain(&pres(1, &["X^2-1"])), DomainCheck::Refuted { .. }));
        assert!(matches!(check_domain(&pres(1, &["2"])), DomainCheck::Refuted { .. }));
        assert!(matches!(check_domain(&pres(2, &["X2^2-X1"])), DomainCheck::Verified { .. }));
        assert!(matches!(check_domain(&pres(2, &["X1^2-X2^2"])), DomainCheck::Unknown | DomainCheck::Refuted { .. }));
    }
}
