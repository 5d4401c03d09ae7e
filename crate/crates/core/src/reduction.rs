//! Reduction of a domain `A = Z[X1..Xr]/I` to `B = A0[y, 1/f]` with `A0 = Z[X1..Xq]`
//! and `y` integral over `A0` generating the function field `K = K0(y)`.
//!
//! Linear systems over `K0 = Q(X1..Xq)` are solved with polynomial entries in the
//! first `q` variables, so every relation found is an exact identity in `Z[X]`
//! up to a nonzero multiplier from `A0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::algebraic::is_irreducible;
use crate::bounds::{lift_cap, reduction_cap, ConstantPack};
use crate::domain::{FractionRep, Presentation};
use crate::error::{Error, Result};
use crate::logvalue::LogValue;
use crate::poly::{monomials_up_to, multipoly_gcd, Monomial, SizeTriple, ZPoly};
use crate::poly_linear::{ideal_membership, kernel_at_degree, verify_combination, Membership, MembershipOptions, PolySystem, Ring};
use crate::upoly::UZ;

#[derive(Clone, Debug)]
pub struct ReductionOptions {
    /// Largest degree tried for the `A0`-coefficients and the cofactors.
    pub max_level: u32,
    pub pack: ConstantPack,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        ReductionOptions { max_level: 6, pack: ConstantPack::default() }
    }
}

/// Identity `mult * expr = sum_k cofactors[k] * f_k` in `Z[X]`, with `mult` in `A0` nonzero.
/// In a domain whose ideal meets `A0` trivially this shows `expr` lies in `I`.
#[derive(Clone, Debug)]
pub struct K0Certificate {
    pub mult: ZPoly,
    pub cofactors: Vec<ZPoly>,
}

impl K0Certificate {
    pub fn verify(&self, p: &Presentation, expr: &ZPoly) -> bool {
        if self.mult.is_zero() || self.cofactors.len() != p.gens.len() {
            return false;
        }
        let mut rhs = ZPoly::zero(p.r);
        for (c, g) in self.cofactors.iter().zip(&p.gens) {
            rhs = &rhs + &(c * g);
        }
        &self.mult * expr == rhs
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Minimality {
    /// Irreducibility over `K0` was shown.
    Certified(String),
    Uncertified,
}

/// Minimal-polynomial data for `w = sum a_i X_{q+i}`.
#[derive(Clone, Debug)]
pub struct MinPoly {
    pub degree: usize,
    /// `G_0..G_D` in `q` variables, content 1, `G_0` sign-normalized.
    pub g: Vec<ZPoly>,
    pub certificate: K0Certificate,
    pub minimality: Minimality,
}

#[derive(Clone, Debug)]
pub struct ReducedDomain {
    pub q: usize,
    pub t: usize,
    pub r: usize,
    pub big_d: usize,
    pub weights: Vec<i64>,
    pub g: Vec<ZPoly>,
    /// `F_1..F_D` in `q` variables; `F = Y^D + F_1 Y^(D-1) + ... + F_D`.
    pub f_coeffs: Vec<ZPoly>,
    /// Representative of `y` in `Z[X1..Xr]`.
    pub y_rep: ZPoly,
    /// Denominator `f` of `B`, in `q` variables.
    pub f_den: ZPoly,
    pub minimality: Minimality,
    /// Whether `F(y) = 0` in `A` was re-verified from an exact identity.
    pub f_of_y_verified: bool,
}

/// `P_0..P_{D-1}, Q` with `Q alpha = sum P_j y^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalRep {
    pub p: Vec<ZPoly>,
    pub q: ZPoly,
}

impl CanonicalRep {
    fn components(&self) -> impl Iterator<Item = &ZPoly> {
        self.p.iter().chain([&self.q])
    }

    /// Largest total degree among the components.
    pub fn degbar(&self) -> u32 {
        self.components().map(|c| c.degree_or_zero()).max().unwrap_or(0)
    }

    /// Largest logarithmic height among the components.
    pub fn hbar(&self) -> f64 {
        self.components().filter(|c| !c.is_zero()).map(|c| SizeTriple::of(c).h_f64()).fold(0.0, f64::max)
    }

    pub fn gcd(&self) -> ZPoly {
        self.components().fold(ZPoly::zero(self.q.nvars()), |g, c| multipoly_gcd(&g, c))
    }
}

fn h_of(p: &ZPoly) -> f64 {
    if p.is_zero() {
        0.0
    } else {
        SizeTriple::of(p).h_f64()
    }
}

impl ReducedDomain {
    pub fn d0(&self) -> u32 {
        self.f_coeffs.iter().map(|c| c.degree_or_zero()).max().unwrap_or(0).max(1)
    }

    pub fn d1(&self) -> u32 {
        self.d0().max(self.f_den.degree_or_zero())
    }

    pub fn h0(&self) -> f64 {
        self.f_coeffs.iter().map(h_of).fold(1.0, f64::max)
    }

    pub fn h1(&self) -> f64 {
        self.h0().max(h_of(&self.f_den))
    }

    /// `F` as a polynomial in `q + 1` variables, `Y` last.
    pub fn big_f(&self) -> ZPoly {
        let n = self.q + 1;
        let emb: Vec<usize> = (0..self.q).collect();
        let mut out = ZPoly::var(n, self.q).pow(self.big_d as u32);
        for (i, c) in self.f_coeffs.iter().enumerate() {
            let e = (self.big_d - 1 - i) as u32;
            out = &out + &(&c.remap_vars(n, &emb) * &ZPoly::var(n, self.q).pow(e));
        }
        out
    }

    /// `F(y)` with `y` replaced by its representative in `Z[X]`.
    pub fn big_f_at_y(&self) -> ZPoly {
        let mut out = self.y_rep.pow(self.big_d as u32);
        for (i, c) in self.f_coeffs.iter().enumerate() {
            let e = (self.big_d - 1 - i) as u32;
            out = &out + &(&self.embed(c) * &self.y_rep.pow(e));
        }
        out
    }

    /// Embeds an element of `A0` into `Z[X1..Xr]`.
    pub fn embed(&self, a: &ZPoly) -> ZPoly {
        let emb: Vec<usize> = (0..self.q).collect();
        a.remap_vars(self.r, &emb)
    }

    /// `sum P_j y^j` in `Z[X]`.
    pub fn eval_in_y(&self, coeffs: &[ZPoly]) -> ZPoly {
        let mut out = ZPoly::zero(self.r);
        let mut pw = ZPoly::one(self.r);
        for c in coeffs {
            out = &out + &(&self.embed(c) * &pw);
            pw = &pw * &self.y_rep;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let names = ZPoly::default_names(self.q.max(1));
        let nm: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let show = |p: &ZPoly| if self.q == 0 { p.constant_term().to_string() } else { p.display_with(&nm[..self.q]) };
        let mut fnames: Vec<&str> = nm[..self.q].to_vec();
        fnames.push("Y");
        json!({
            "D": self.big_d,
            "q": self.q,
            "t": self.t,
            "weights": self.weights,
            "G": self.g.iter().map(show).collect::<Vec<_>>(),
            "F": self.big_f().display_with(&fnames),
            "y": self.y_rep.to_string(),
            "f": show(&self.f_den),
            "d0": self.d0(),
            "d1": self.d1(),
            "h0": self.h0(),
            "h1": self.h1(),
            "minimality": match &self.minimality {
                Minimality::Certified(why) => json!({"certified": true, "reason": why}),
                Minimality::Uncertified => json!({"certified": false}),
            },
        })
    }
}

/// Splits each column polynomial by monomials in `X_{q+1}..X_r` and solves the
/// resulting system over `K0`: unknowns are one scalar per entry of `scalars` and
/// one `A0`-coefficient per cofactor monomial of degree `<= dx`.
/// Returns kernel vectors split into (scalar part, certificate cofactors).
fn solve_k0(p: &Presentation, scalars: &[ZPoly], dx: u32, dz: u32) -> Vec<(Vec<ZPoly>, Vec<ZPoly>)> {
    let (q, r, t) = (p.q, p.r, p.t());
    let xvars: Vec<usize> = (q..r).collect();
    let xmons = monomials_up_to(t, dx);
    let mut cols: Vec<ZPoly> = scalars.to_vec();
    for g in &p.gens {
        for mu in &xmons {
            let mut e = vec![0u32; r];
            e[q..].copy_from_slice(&mu.0);
            cols.push(-&g.mul_monomial(&Monomial(e), &BigInt::one()));
        }
    }
    let split: Vec<_> = cols.iter().map(|c| c.coeffs_in_group(&xvars)).collect();
    let mut keys: Vec<Vec<u32>> = split.iter().flat_map(|m| m.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    if keys.is_empty() {
        return vec![];
    }
    let a: Vec<Vec<ZPoly>> = keys
        .iter()
        .map(|k| split.iter().map(|m| m.get(k).map(|c| c.truncate_vars(q)).unwrap_or_else(|| ZPoly::zero(q))).collect())
        .collect();
    let sys = PolySystem::new(a, Ring::Rational);
    let emb: Vec<usize> = (0..q).collect();
    kernel_at_degree(&sys, dz)
        .into_iter()
        .map(|v| {
            let s = v[..scalars.len()].to_vec();
            let mut cof = Vec::with_capacity(p.gens.len());
            let mut it = v[scalars.len()..].iter();
            for _ in &p.gens {
                let mut c = ZPoly::zero(r);
                for mu in &xmons {
                    let coef = it.next().expect("column count");
                    let mut e = vec![0u32; r];
                    e[q..].copy_from_slice(&mu.0);
                    c = &c + &coef.remap_vars(r, &emb).mul_monomial(&Monomial(e), &BigInt::one());
                }
                cof.push(c);
            }
            (s, cof)
        })
        .collect()
}

/// Divides by the gcd and makes the component at `lead` lex-positive.
fn normalize(v: &[ZPoly], lead: usize) -> (Vec<ZPoly>, ZPoly) {
    let nv = v[0].nvars();
    let g = v.iter().fold(ZPoly::zero(nv), |g, c| multipoly_gcd(&g, c));
    let mut g = g;
    if v[lead].leading_coeff().is_some_and(|c| c.is_negative()) {
        g = -&g;
    }
    (v.iter().map(|c| c.div_exact(&g).expect("gcd divides")).collect(), g)
}

fn weighted_w(p: &Presentation, weights: &[i64]) -> ZPoly {
    let mut w = ZPoly::zero(p.r);
    for (i, &a) in weights.iter().enumerate() {
        w = &w + &ZPoly::var(p.r, p.q + i).scale(&BigInt::from(a));
    }
    w
}

/// Irreducibility of `sum G_i T^(D-i)` over `K0`, shown by an irreducible
/// specialization of the same degree.
fn certify_minimal(g: &[ZPoly], q: usize) -> Minimality {
    let d = g.len() - 1;
    if d == 1 {
        return Minimality::Certified("degree one".into());
    }
    let points: Vec<Vec<i64>> = if q == 0 {
        vec![vec![]]
    } else {
        let vals = [2i64, 3, -2, 5, 7, -3, 11, 13];
        (0..vals.len()).map(|k| (0..q).map(|j| vals[(k + 3 * j) % vals.len()]).collect()).collect()
    };
    for pt in points {
        let x: Vec<BigInt> = pt.iter().map(|&v| BigInt::from(v)).collect();
        let c: Vec<BigInt> = g.iter().rev().map(|gi| gi.eval(&x)).collect();
        if c[d].is_zero() {
            continue;
        }
        if is_irreducible(&UZ::new(c)) {
            return Minimality::Certified(if q == 0 {
                "irreducible over Q".into()
            } else {
                format!("irreducible specialization at {pt:?}")
            });
        }
        if q == 0 {
            break;
        }
    }
    Minimality::Uncertified
}

/// Least-degree relation `sum G_i w^(D-i) = 0` over `K0`, `G_0 != 0`.
pub fn minimal_poly(p: &Presentation, weights: &[i64], opts: &ReductionOptions) -> Result<MinPoly> {
    if weights.len() != p.t() {
        return Err(Error::input(format!("expected {} weights, got {}", p.t(), weights.len())));
    }
    let w = weighted_w(p, weights);
    let cap = (p.d() as usize).pow(p.t() as u32).max(1);
    for big_d in 1..=cap {
        let scalars: Vec<ZPoly> = (0..=big_d).map(|i| w.pow((big_d - i) as u32)).collect();
        for level in 0..=opts.max_level {
            for (s, cof) in solve_k0(p, &scalars, level, level) {
                if s[0].is_zero() {
                    continue;
                }
                let (g, div) = normalize(&s, 0);
                let certificate = K0Certificate { mult: embed_a0(&div, p), cofactors: cof };
                let minimality = certify_minimal(&g, p.q);
                return Ok(MinPoly { degree: big_d, g, certificate, minimality });
            }
        }
    }
    Err(Error::SearchExhausted(format!("no relation for w up to degree {cap} at level {}", opts.max_level)))
}

fn embed_a0(a: &ZPoly, p: &Presentation) -> ZPoly {
    let emb: Vec<usize> = (0..p.q).collect();
    a.remap_vars(p.r, &emb)
}

/// Integer tuples of max-norm exactly `k`, entries ordered `0, 1, -1, 2, -2, ...`, lex.
fn tuples_of_norm(t: usize, k: i64) -> Vec<Vec<i64>> {
    let key = |x: i64| (x.abs(), x < 0);
    let mut vals: Vec<i64> = (-k..=k).collect();
    vals.sort_by_key(|&x| key(x));
    let mut out = vec![vec![]];
    for _ in 0..t {
        out = out
            .into_iter()
            .flat_map(|pre: Vec<i64>| {
                vals.iter().map(move |&v| {
                    let mut n = pre.clone();
                    n.push(v);
                    n
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|x| x.abs() == k));
    out
}

/// Builds `y = G_0 w` and `F` from minimal-polynomial data.
fn assemble(p: &Presentation, weights: Vec<i64>, mp: MinPoly) -> ReducedDomain {
    let (q, r, t) = (p.q, p.r, p.t());
    let big_d = mp.degree;
    let (y_rep, f_coeffs) = if big_d == 1 {
        (ZPoly::one(r), vec![ZPoly::constant(q, BigInt::from(-1))])
    } else {
        let y = &embed_a0(&mp.g[0], p) * &weighted_w(p, &weights);
        let fc: Vec<ZPoly> = (1..=big_d).map(|i| &mp.g[i] * &mp.g[0].pow((i - 1) as u32)).collect();
        (y, fc)
    };
    let mut rd = ReducedDomain {
        q,
        t,
        r,
        big_d,
        weights,
        g: mp.g.clone(),
        f_coeffs,
        y_rep,
        f_den: ZPoly::one(q),
        minimality: mp.minimality.clone(),
        f_of_y_verified: false,
    };
    // F(y) = G_0^(D-1) * sum G_i w^(D-i), so the relation's certificate scales.
    rd.f_of_y_verified = if big_d == 1 {
        true
    } else {
        let s = embed_a0(&mp.g[0].pow((big_d - 1) as u32), p);
        let cert = K0Certificate {
            mult: mp.certificate.mult.clone(),
            cofactors: mp.certificate.cofactors.iter().map(|c| &s * c).collect(),
        };
        cert.verify(p, &rd.big_f_at_y())
    };
    rd
}

/// Searches weights for a primitive element and returns the reduced data
/// (with `f = 1`; see [`build_b`]).
///
/// Tuples are tried by increasing max-norm; after each norm level the first tuple
/// of the largest degree seen is accepted once every `X_{q+i}` has a canonical
/// representation in its powers.
pub fn find_primitive(p: &Presentation, opts: &ReductionOptions) -> Result<ReducedDomain> {
    let t = p.t();
    if t == 0 {
        return Ok(trivial(p));
    }
    let cap = (p.d() as usize).pow(t as u32);
    let mut best: Option<(Vec<i64>, MinPoly)> = None;
    let mut tried_best: Option<Vec<i64>> = None;
    let mut k = 1i64;
    while (k as usize) <= cap * cap {
        for a in tuples_of_norm(t, k) {
            let mp = match minimal_poly(p, &a, opts) {
                Ok(mp) => mp,
                Err(Error::SearchExhausted(_)) => continue,
                Err(e) => return Err(e),
            };
            if mp.degree > cap {
                return Err(Error::defect(format!("degree {} exceeds d^t = {cap}", mp.degree)));
            }
            if best.as_ref().map_or(true, |(_, b)| mp.degree > b.degree) {
                best = Some((a, mp));
            }
        }
        if let Some((a, mp)) = &best {
            if tried_best.as_ref() != Some(a) {
                tried_best = Some(a.clone());
                let rd = assemble(p, a.clone(), mp.clone());
                if t == 1 || is_primitive(&rd, p, opts) {
                    return Ok(rd);
                }
            }
        }
        if best.as_ref().is_some_and(|(_, b)| b.degree == cap) && tried_best.is_some() {
            break;
        }
        k += 1;
    }
    Err(Error::SearchExhausted(format!("no primitive element with |a_i| <= {}", cap * cap)))
}

fn is_primitive(rd: &ReducedDomain, p: &Presentation, opts: &ReductionOptions) -> bool {
    (0..rd.t).all(|i| canonical_rep(rd, p, &FractionRep::element(ZPoly::var(p.r, p.q + i)), opts).is_ok())
}

fn trivial(p: &Presentation) -> ReducedDomain {
    ReducedDomain {
        q: p.q,
        t: 0,
        r: p.r,
        big_d: 1,
        weights: vec![],
        g: vec![ZPoly::one(p.q), ZPoly::constant(p.q, BigInt::from(-1))],
        f_coeffs: vec![ZPoly::constant(p.q, BigInt::from(-1))],
        y_rep: ZPoly::one(p.r),
        f_den: ZPoly::one(p.q),
        minimality: Minimality::Certified("degree one".into()),
        f_of_y_verified: true,
    }
}

/// Canonical representation with its `A0`-certificate of the defining identity.
#[derive(Clone, Debug)]
pub struct CanonicalResult {
    pub rep: CanonicalRep,
    pub certificate: K0Certificate,
    /// `(2d*)^(exp(C r)) (h*+1)` for the inputs at hand.
    pub cap: LogValue,
}

impl CanonicalResult {
    pub fn within_cap(&self) -> bool {
        let deg = LogValue::from_u64(self.rep.degbar() as u64);
        let h = LogValue::from_f64(self.rep.hbar());
        deg.cmp_total(&self.cap).is_le() && h.cmp_total(&self.cap).is_le()
    }
}

/// `Q * num - den * sum P_j y^j` in `Z[X]`.
pub fn canonical_residual(rd: &ReducedDomain, alpha: &FractionRep, rep: &CanonicalRep) -> ZPoly {
    &(&rd.embed(&rep.q) * &alpha.num) - &(&alpha.den * &rd.eval_in_y(&rep.p))
}

pub fn canonical_rep(rd: &ReducedDomain, p: &Presentation, alpha: &FractionRep, opts: &ReductionOptions) -> Result<CanonicalRep> {
    canonical_rep_full(rd, p, alpha, opts).map(|c| c.rep)
}

pub fn canonical_rep_full(
    rd: &ReducedDomain,
    p: &Presentation,
    alpha: &FractionRep,
    opts: &ReductionOptions,
) -> Result<CanonicalResult> {
    if alpha.den.is_zero() {
        return Err(Error::Precondition("zero denominator".into()));
    }
    let mut scalars = vec![alpha.num.clone()];
    let mut pw = ZPoly::one(p.r);
    for _ in 0..rd.big_d {
        scalars.push(-&(&alpha.den * &pw));
        pw = &pw * &rd.y_rep;
    }
    for level in 0..=opts.max_level {
        for (s, cof) in solve_k0(p, &scalars, level, level) {
            if s[0].is_zero() {
                continue;
            }
            let (v, div) = normalize(&s, 0);
            let rep = CanonicalRep { q: v[0].clone(), p: v[1..].to_vec() };
            let certificate = K0Certificate { mult: embed_a0(&div, p), cofactors: cof };
            if !certificate.verify(p, &canonical_residual(rd, alpha, &rep)) {
                return Err(Error::defect("canonical representation fails its own identity"));
            }
            let ds = p.d().max(alpha.num.degree_or_zero()).max(alpha.den.degree_or_zero()).max(1);
            let hs = p.h().max(h_of(&alpha.num)).max(h_of(&alpha.den));
            let cap = reduction_cap(ds as u64, hs, p.r as u64, &opts.pack)?;
            return Ok(CanonicalResult { rep, certificate, cap });
        }
    }
    Err(Error::SearchExhausted(format!("no canonical representation at level {}", opts.max_level)))
}

/// `f = prod Q_{y_i} * prod (Q_alpha Q_{1/alpha})`, so that `A` and the given
/// elements with their inverses lie in `A0[y, 1/f]`. Updates `rd.f_den`.
pub fn build_b(rd: &mut ReducedDomain, p: &Presentation, alphas: &[FractionRep], opts: &ReductionOptions) -> Result<ZPoly> {
    let mut f = ZPoly::one(rd.q);
    for i in 0..rd.t {
        let c = canonical_rep(rd, p, &FractionRep::element(ZPoly::var(p.r, p.q + i)), opts)?;
        f = &f * &c.q;
    }
    for a in alphas {
        if a.num.is_zero() {
            return Err(Error::Precondition("alpha must be nonzero".into()));
        }
        f = &f * &canonical_rep(rd, p, a, opts)?.q;
        f = &f * &canonical_rep(rd, p, &a.inverse(), opts)?.q;
    }
    let f = f.sign_normalized();
    rd.f_den = f.clone();
    Ok(f)
}

/// Lifted representative with the membership certificate for
/// `eps * (Q a) + sum g_i f_i = b sum P_i y^i`.
#[derive(Clone, Debug)]
pub struct Lifted {
    pub eps: ZPoly,
    pub cofactors: Vec<ZPoly>,
    pub cap: LogValue,
}

/// Recovers a representative of `eps` from the canonical representation `beta`
/// of `lambda * eps`, `lambda = a / b`.
pub fn lift_representative(
    rd: &ReducedDomain,
    p: &Presentation,
    lambda: &FractionRep,
    beta: &CanonicalRep,
    opts: &MembershipOptions,
) -> Result<Lifted> {
    let lead = &rd.embed(&beta.q) * &lambda.num;
    let target = &lambda.den * &rd.eval_in_y(&beta.p);
    let mut gens = vec![lead];
    gens.extend(p.gens.iter().cloned());
    match ideal_membership(&gens, &target, opts) {
        Membership::Member(cert) => {
            if !verify_combination(&gens, &cert.cofactors, &target) {
                return Err(Error::defect("lift certificate fails re-check"));
            }
            let ints: Option<Vec<ZPoly>> = cert.cofactors.iter().map(|c| c.to_integer()).collect();
            let ints = ints.ok_or_else(|| Error::defect("lift cofactors are not integral"))?;
            let cap = lift_cap(rd.d0() as u64, rd.h0(), p.r as u64, &opts.pack)?;
            Ok(Lifted { eps: ints[0].clone(), cofactors: ints[1..].to_vec(), cap })
        }
        Membership::NonMember(w) => Err(Error::Precondition(format!("beta is not lambda times an element of A: {w}"))),
        Membership::Unknown { searched_to } => {
            Err(Error::SearchExhausted(format!("no lift with cofactors of degree <= {searched_to}")))
        }
    }
}

/// Full pipeline: primitive element, minimal polynomial, denominator `f`.
pub fn reduce(p: &Presentation, alphas: &[FractionRep], opts: &ReductionOptions) -> Result<ReducedDomain> {
    let mut rd = find_primitive(p, opts)?;
    build_b(&mut rd, p, alphas, opts)?;
    Ok(rd)
}
