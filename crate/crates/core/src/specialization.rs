//! Specializations `z -> u`, `y -> y_j(u)` of the reduced domain into algebraic
//! numbers, and checks of the height and discriminant estimates they obey.
//!
//! Estimates built on the evaluation inequality `log|g(u)| <= q log deg g + ...`
//! are reported twice: as stated, and with `log deg` replaced by the monomial
//! count `log(deg + 1)`, which always holds. Only the counted form is asserted.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebraic::complex::CQ;
use crate::algebraic::roots::log_mahler_interval;
use crate::algebraic::{factor_z, isolate_roots, AlgebraicNumber};
use crate::error::{Error, Result};
use crate::exec;
use crate::logvalue::LogValue;
use crate::poly::{ln_abs, ZPoly};
use crate::reduction::{CanonicalRep, ReducedDomain};
use crate::upoly::{discriminant_monic_in, UQ, UZ};

/// `H = disc_Y(F) * F_D * f`.
pub fn build_h(rd: &ReducedDomain) -> Result<ZPoly> {
    let disc = if rd.big_d == 1 {
        ZPoly::one(rd.q)
    } else {
        discriminant_monic_in(&rd.big_f(), rd.q).truncate_vars(rd.q)
    };
    let h = &(&disc * rd.f_coeffs.last().expect("D >= 1")) * &rd.f_den;
    let cap = 2 * rd.big_d as u32 * rd.d1();
    if h.degree_or_zero() > cap {
        return Err(Error::defect(format!("deg H = {} exceeds 2 D d1 = {cap}", h.degree_or_zero())));
    }
    Ok(h)
}

/// Integer points of `{-n..n}^q` by increasing max-norm, then lexicographically.
pub fn points_by_norm(q: usize, n: i64) -> Vec<Vec<i64>> {
    let mut pts: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..q {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (-n..=n).map(move |v| {
                    let mut w = p.clone();
                    w.push(v);
                    w
                })
            })
            .collect();
    }
    pts.sort_by(|a, b| {
        let na = a.iter().map(|x| x.abs()).max().unwrap_or(0);
        let nb = b.iter().map(|x| x.abs()).max().unwrap_or(0);
        na.cmp(&nb).then_with(|| a.cmp(b))
    });
    pts
}

fn big(u: &[i64]) -> Vec<BigInt> {
    u.iter().map(|&x| BigInt::from(x)).collect()
}

fn norm(u: &[i64]) -> i64 {
    u.iter().map(|x| x.abs()).max().unwrap_or(0)
}

/// First point in scan order with `H(u) != 0`.
pub fn find_good_point(h: &ZPoly, n: i64) -> Result<Vec<i64>> {
    if h.is_zero() {
        return Err(Error::Precondition("H must be nonzero".into()));
    }
    points_by_norm(h.nvars(), n)
        .into_iter()
        .find(|u| !h.eval(&big(u)).is_zero())
        .ok_or_else(|| Error::SearchExhausted(format!("H vanishes on all of {{-{n}..{n}}}^{}", h.nvars())))
}

/// The `D` roots of `F_u`, in stable order.
#[derive(Clone, Debug)]
pub struct SpecializedFiber {
    pub u: Vec<i64>,
    pub f_u: UZ,
    pub roots: Vec<AlgebraicNumber>,
}

impl SpecializedFiber {
    pub fn new(rd: &ReducedDomain, u: &[i64]) -> Result<Self> {
        if u.len() != rd.q {
            return Err(Error::input(format!("point needs {} coordinates", rd.q)));
        }
        let h = build_h(rd)?;
        if h.eval(&big(u)).is_zero() {
            return Err(Error::Precondition(format!("H vanishes at {u:?}")));
        }
        let x = big(u);
        let mut c: Vec<BigInt> = rd.f_coeffs.iter().rev().map(|g| g.eval(&x)).collect();
        c.push(BigInt::one());
        let f_u = UZ::new(c);
        let roots = AlgebraicNumber::roots_of(&f_u);
        if roots.len() != rd.big_d || roots.iter().any(|r| r.is_zero()) {
            return Err(Error::defect("F_u must have D distinct nonzero roots"));
        }
        Ok(SpecializedFiber { u: u.to_vec(), f_u, roots })
    }
}

/// `sum (P_i(u)/Q(u)) Y^i`.
pub fn specialize_poly(fiber: &SpecializedFiber, alpha: &CanonicalRep) -> Result<UQ> {
    let x = big(&fiber.u);
    let qu = alpha.q.eval(&x);
    if qu.is_zero() {
        return Err(Error::Precondition("Q(u) = 0: the element is not in B".into()));
    }
    Ok(UQ::new(alpha.p.iter().map(|p| BigRational::new(p.eval(&x), qu.clone())).collect()))
}

/// The image of `alpha` under `z -> u`, `y -> y_j(u)`.
pub fn specialize(fiber: &SpecializedFiber, j: usize, alpha: &CanonicalRep) -> Result<AlgebraicNumber> {
    let y = fiber.roots.get(j).ok_or_else(|| Error::input(format!("root index {j} out of range")))?;
    Ok(y.eval_field_elem(&specialize_poly(fiber, alpha)?))
}

/// Absolute logarithmic height; exact for rationals, a certified midpoint otherwise.
pub fn alg_height(a: &AlgebraicNumber) -> LogValue {
    if let Some(q) = a.as_rational() {
        if q.is_zero() {
            return LogValue::zero();
        }
        let m = q.numer().abs().max(q.denom().clone());
        return LogValue::from_bigint(&m).ln();
    }
    LogValue::from_f64(a.height())
}

#[derive(Clone, Debug)]
pub struct Lemma51 {
    pub m: usize,
    pub h_g: f64,
    /// Enclosure of `sum h(alpha_i)` over the roots with multiplicity.
    pub sum: (f64, f64),
    pub holds: bool,
}

/// `|h(G) - sum h(alpha_i)| <= m` for monic `G = prod (X - alpha_i)`.
pub fn verify_lemma_5_1(g: &UZ) -> Result<Lemma51> {
    if g.is_zero() || g.deg() == 0 || g.lc().abs() != BigInt::one() {
        return Err(Error::Precondition("G must be monic of positive degree".into()));
    }
    let (_, facs) = factor_z(g);
    let (mut lo, mut hi) = (0.0, 0.0);
    for (f, e) in facs {
        let (a, b) = log_mahler_interval(&f, &isolate_roots(&f));
        lo += e as f64 * a;
        hi += e as f64 * b;
    }
    let m = g.deg();
    let h_g = ln_abs(&g.max_abs());
    let holds = hi - h_g <= m as f64 && h_g - lo <= m as f64;
    Ok(Lemma51 { m, h_g, sum: (lo, hi), holds })
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub q: BigInt,
    pub p: Vec<BigInt>,
    pub log_max: f64,
    pub bound: f64,
    pub holds: bool,
}

fn gauss_cq(mut a: Vec<Vec<CQ>>, mut b: Vec<CQ>) -> Option<Vec<CQ>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm2().cmp(&a[j][col].norm2()))?;
        if a[piv][col].is_zero() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for i in col + 1..n {
            let f = a[i][col].div(&a[col][col]);
            for k in col..n {
                let t = f.mul(&a[col][k]);
                a[i][k] = a[i][k].sub(&t);
            }
            let t = f.mul(&b[col]);
            b[i] = b[i].sub(&t);
        }
    }
    let mut x = vec![CQ::zero(); n];
    for i in (0..n).rev() {
        let mut s = b[i].clone();
        for k in i + 1..n {
            s = s.sub(&a[i][k].mul(&x[k]));
        }
        x[i] = s.div(&a[i][i]);
    }
    Some(x)
}

/// First continued-fraction convergent within `tol` of `x`.
fn nearby_rational(x: &BigRational, tol: &BigRational) -> BigRational {
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x.clone();
    for _ in 0..400 {
        let a = r.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        let c = BigRational::new(h2.clone(), k2.clone());
        if (&c - x).abs() <= *tol {
            return c;
        }
        let frac = &r - BigRational::from_integer(a);
        if frac.is_zero() {
            return c;
        }
        r = frac.recip();
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    x.clone()
}

/// Recovers integers `q, p_0..p_{m-1}` with `beta_i = sum (p_j/q) alpha_i^j`, where the
/// `alpha_i` are all roots of a monic integer polynomial, and checks the size estimate
/// `log max(|q|,|p_j|) <= 2m^2 + (m-1) h(G) + sum h(beta_i)`.
pub fn reconstruct_coeffs(alphas: &[AlgebraicNumber], betas: &[AlgebraicNumber]) -> Result<Reconstruction> {
    let m = alphas.len();
    if m == 0 || betas.len() != m {
        return Err(Error::Precondition("need as many values as roots, at least one".into()));
    }
    let mut g = UZ::one();
    let mut seen: Vec<&UZ> = vec![];
    for a in alphas {
        if !seen.contains(&a.minpoly()) {
            seen.push(a.minpoly());
            g = &g * a.minpoly();
        }
    }
    if g.deg() != m || g.lc().abs() != BigInt::one() {
        return Err(Error::Precondition("the alphas must be all roots of a monic integer polynomial".into()));
    }
    for i in 0..m {
        for k in i + 1..m {
            if alphas[i].same(&alphas[k]) {
                return Err(Error::Precondition("the alphas must be distinct".into()));
            }
        }
    }
    let h_g = ln_abs(&g.max_abs());
    let sum_beta: f64 = betas.iter().map(|b| b.height_interval().1).sum();
    let bound = 2.0 * (m * m) as f64 + (m as f64 - 1.0) * h_g + sum_beta;
    for bits in [64u32, 128, 256, 512, 1024, 2048] {
        let eps = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
        let ac: Vec<CQ> = alphas.iter().map(|a| a.refined(&eps).disc().center.clone()).collect();
        let bc: Vec<CQ> = betas.iter().map(|b| b.refined(&eps).disc().center.clone()).collect();
        let v: Vec<Vec<CQ>> = ac
            .iter()
            .map(|a| {
                let mut row = vec![CQ::one()];
                for k in 1..m {
                    row.push(row[k - 1].mul(a));
                }
                row
            })
            .collect();
        let Some(c) = gauss_cq(v, bc) else { continue };
        let tol = BigRational::new(BigInt::one(), BigInt::one() << (bits / 2) as usize);
        let coeffs: Vec<BigRational> = c.iter().map(|z| nearby_rational(&z.re, &tol)).collect();
        let poly = UQ::new(coeffs.clone());
        if !(0..m).all(|i| alphas[i].eval_field_elem(&poly).same(&betas[i])) {
            continue;
        }
        let q = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let p: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(q.clone())).to_integer()).collect();
        let mx = p.iter().map(|x| x.abs()).fold(q.clone(), |a, b| a.max(b));
        let log_max = ln_abs(&mx);
        return Ok(Reconstruction { holds: log_max <= bound + 1e-9, q, p, log_max, bound });
    }
    Err(Error::Precondition("values are not a rational polynomial in the roots".into()))
}

#[derive(Clone, Debug)]
pub struct PlaceCheck {
    /// `"inf"` or the prime.
    pub place: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct CoeffBoundReport {
    pub exponent: u64,
    pub points: usize,
    pub checks: Vec<PlaceCheck>,
}

impl CoeffBoundReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

fn vp(x: &BigInt, p: &BigInt) -> u64 {
    let mut k = 0;
    let mut v = x.clone();
    while !v.is_zero() && (&v % p).is_zero() {
        v /= p;
        k += 1;
    }
    k
}

/// `|g1|_p <= (4N)^(q D1 (D1+1)/2) max_{u in S} |g1(u)|_p` for `p = inf`, the primes
/// up to 13, the prime divisors of the coefficients of `g1`, and `extra`.
pub fn coeff_bound_from_values(g1: &ZPoly, g2: &ZPoly, n: i64, extra: &[u64]) -> Result<CoeffBoundReport> {
    if g1.is_zero() || g2.is_zero() {
        return Err(Error::Precondition("g1 and g2 must be nonzero".into()));
    }
    let d1 = g1.degree_or_zero() as u64;
    if n < d1.max(g2.degree_or_zero() as u64) as i64 || n < 1 {
        return Err(Error::Precondition("N must be at least both degrees and positive".into()));
    }
    let q = g1.nvars();
    let pts: Vec<Vec<i64>> = points_by_norm(q, n);
    let vals: Vec<BigInt> = exec::par_filter_map(&pts, |u| {
        let x = big(u);
        (!g2.eval(&x).is_zero()).then(|| g1.eval(&x))
    });
    if vals.is_empty() {
        return Err(Error::defect("no point with g2(u) != 0"));
    }
    let exponent = q as u64 * d1 * (d1 + 1) / 2;
    let scale = BigInt::from(4 * n).pow(exponent as u32);
    let mut checks = vec![];
    let maxv = vals.iter().map(|v| v.abs()).max().expect("nonempty");
    checks.push(PlaceCheck { place: "inf".into(), holds: g1.max_abs_coeff() <= &scale * &maxv });
    let mut primes: Vec<u64> = vec![2, 3, 5, 7, 11, 13];
    for (_, c) in g1.terms() {
        if let Ok(fs) = crate::solvers::factor_integer(c) {
            primes.extend(fs.into_iter().filter_map(|(p, _)| p.to_u64()));
        }
    }
    primes.extend_from_slice(extra);
    primes.sort();
    primes.dedup();
    for p in primes {
        let pb = BigInt::from(p);
        let a = g1.terms().map(|(_, c)| vp(c, &pb)).min().expect("nonzero");
        let b = vals.iter().filter(|v| !v.is_zero()).map(|v| vp(v, &pb)).min();
        let holds = match b {
            None => false,
            Some(b) if b <= a => true,
            Some(b) => pb.pow((b - a) as u32) <= scale,
        };
        checks.push(PlaceCheck { place: p.to_string(), holds });
    }
    Ok(CoeffBoundReport { exponent, points: vals.len(), checks })
}

fn ln_pos(x: u64) -> f64 {
    if x <= 1 {
        0.0
    } else {
        (x as f64).ln()
    }
}

/// A bound in two readings: as stated, and with monomial counts in place of degrees.
#[derive(Clone, Debug)]
pub struct TwoBounds {
    pub stated: f64,
    pub counted: f64,
}

/// `D^2 + q (D log d0 + log degbar) + D h0 + hbar + (D d0 + degbar) log max(1,|u|)`,
/// with `log 0` read as 0.
pub fn specialized_height_bound(rd: &ReducedDomain, alpha: &CanonicalRep, u: &[i64]) -> TwoBounds {
    let (d, q) = (rd.big_d as f64, rd.q as f64);
    let (d0, h0) = (rd.d0() as u64, rd.h0());
    let db = alpha.degbar() as u64;
    let lu = ln_pos(norm(u) as u64);
    let tail = d * d + d * h0 + alpha.hbar() + (d * d0 as f64 + db as f64) * lu;
    TwoBounds {
        stated: tail + q * (d * ln_pos(d0) + ln_pos(db)),
        counted: tail + q * (d * ln_pos(d0 + 1) + ln_pos(db + 1)),
    }
}

#[derive(Clone, Debug)]
pub struct HeightCheck {
    pub heights: Vec<f64>,
    pub bound: TwoBounds,
    pub stated_holds: bool,
    pub counted_holds: bool,
}

/// Checks `h(alpha_j(u))` against [`specialized_height_bound`] for every `j`.
pub fn verify_specialized_height(rd: &ReducedDomain, fiber: &SpecializedFiber, alpha: &CanonicalRep) -> Result<HeightCheck> {
    let bound = specialized_height_bound(rd, alpha, &fiber.u);
    let mut heights = vec![];
    for j in 0..fiber.roots.len() {
        heights.push(specialize(fiber, j, alpha)?.height_interval().1);
    }
    let top = heights.iter().cloned().fold(0.0, f64::max);
    Ok(HeightCheck { stated_holds: top <= bound.stated, counted_holds: top <= bound.counted, heights, bound })
}

/// `5 N^4 (h1+1)^2 + 2 D (h1+1) H`.
pub fn height_lift_bound(rd: &ReducedDomain, n: u64, h_obs: f64) -> LogValue {
    let h1 = rd.h1();
    let nf = n as f64;
    LogValue::from_f64(5.0 * nf.powi(4) * (h1 + 1.0).powi(2) + 2.0 * rd.big_d as f64 * (h1 + 1.0) * h_obs)
}

/// Smallest `N` the lift estimate admits for `alpha`.
pub fn lift_n(rd: &ReducedDomain, alpha: &CanonicalRep) -> u64 {
    let (d, q) = (rd.big_d as u64, rd.q as u64);
    (alpha.degbar() as u64).max(2 * d * rd.d0() as u64 + 2 * (q + 1) * (rd.d1() as u64 + 1))
}

#[derive(Clone, Debug)]
pub struct LiftCheck {
    pub n: u64,
    pub points: usize,
    pub h_obs: f64,
    pub hbar: f64,
    pub bound: LogValue,
    pub holds: bool,
}

/// `hbar(alpha) <= 5 N^4 (h1+1)^2 + 2 D (h1+1) H` with `H` the largest height of
/// `alpha_j(u)` over the good points of the box.
pub fn verify_height_lift(rd: &ReducedDomain, alpha: &CanonicalRep, n: Option<u64>) -> Result<LiftCheck> {
    let n = n.unwrap_or_else(|| lift_n(rd, alpha));
    if n < lift_n(rd, alpha) {
        return Err(Error::Precondition(format!("N must be at least {}", lift_n(rd, alpha))));
    }
    let h = build_h(rd)?;
    let pts: Vec<Vec<i64>> =
        points_by_norm(rd.q, n as i64).into_iter().filter(|u| !h.eval(&big(u)).is_zero()).collect();
    if pts.is_empty() {
        return Err(Error::defect("no good point in the box"));
    }
    let hs: Vec<Result<f64>> = exec::par_map(&pts, |u| {
        let fib = SpecializedFiber::new(rd, u)?;
        let mut m: f64 = 0.0;
        for j in 0..fib.roots.len() {
            m = m.max(specialize(&fib, j, alpha)?.height_interval().1);
        }
        Ok(m)
    });
    let mut h_obs: f64 = 0.0;
    for x in hs {
        h_obs = h_obs.max(x?);
    }
    let bound = height_lift_bound(rd, n, h_obs);
    let hbar = alpha.hbar();
    Ok(LiftCheck { n, points: pts.len(), h_obs, hbar, holds: LogValue::from_f64(hbar).cmp_total(&bound).is_le(), bound })
}

#[derive(Clone, Debug)]
pub struct DiscCheck {
    pub j: usize,
    pub minpoly: UZ,
    pub disc: BigInt,
    pub ln_disc: f64,
    pub bound: TwoBounds,
    /// `|disc F_u| <= D^(2D-1) |F_u|^(2D-2)`.
    pub coefficient_form_holds: bool,
    pub stated_holds: bool,
    pub counted_holds: bool,
}

/// `|disc(minpoly y_j(u))| <= D^(2D-1) (d0^q e^h0 max(1,|u|)^d0)^(2D-2)` for each `j`.
pub fn discriminant_bound(rd: &ReducedDomain, fiber: &SpecializedFiber) -> Vec<DiscCheck> {
    let d = rd.big_d as f64;
    let (d0, h0, q) = (rd.d0() as u64, rd.h0(), rd.q as f64);
    let lu = ln_pos(norm(&fiber.u) as u64);
    let head = (2.0 * d - 1.0) * d.ln();
    let stated = head + (2.0 * d - 2.0) * (q * ln_pos(d0) + h0 + d0 as f64 * lu);
    let counted = head + (2.0 * d - 2.0) * (q * ln_pos(d0 + 1) + h0 + d0 as f64 * lu);
    let fu_disc = fiber.f_u.discriminant();
    let coeff_form = ln_abs(&fu_disc) <= head + (2.0 * d - 2.0) * ln_abs(&fiber.f_u.max_abs()) + 1e-9;
    fiber
        .roots
        .iter()
        .enumerate()
        .map(|(j, y)| {
            let mp = y.minpoly().clone();
            let disc = mp.discriminant();
            let ln_disc = ln_abs(&disc);
            DiscCheck {
                j,
                minpoly: mp,
                ln_disc,
                stated_holds: ln_disc <= stated + 1e-9,
                counted_holds: ln_disc <= counted + 1e-9,
                coefficient_form_holds: coeff_form && (&fu_disc % &disc).is_zero(),
                disc,
                bound: TwoBounds { stated, counted },
            }
        })
        .collect()
}
