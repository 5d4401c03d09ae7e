//! Certified complex root isolation for squarefree integer polynomials.
//!
//! Approximations come from Aberth iteration; each approximation `z_i` gets
//! the Weierstrass correction `W_i = p(z_i) / (lc * prod_{j != i} (z_i - z_j))`
//! computed exactly, and the disc of radius `n |W_i|` around `z_i`. When the
//! axis-parallel squares around these discs are pairwise disjoint every disc
//! holds exactly one root. Otherwise the approximations are refined with
//! exact rational Aberth steps at doubled precision.

use std::cmp::Ordering;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::complex::{eval_cq, f64_to_q, q_to_f64, CQ};
use crate::upoly::UZ;

/// Disc `|w - center| <= radius` containing exactly one root of its polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct RootDisc {
    pub center: CQ,
    pub radius: BigRational,
}

impl RootDisc {
    pub fn radius_f64(&self) -> f64 {
        q_to_f64(&self.radius)
    }

    pub fn approx(&self) -> Complex64 {
        self.center.to_c64()
    }

    /// Squares of half-width `radius` are disjoint.
    pub fn box_disjoint(&self, o: &RootDisc) -> bool {
        let s = &self.radius + &o.radius;
        (&self.center.re - &o.center.re).abs() > s || (&self.center.im - &o.center.im).abs() > s
    }

    pub fn box_contains(&self, z: &CQ) -> bool {
        (&self.center.re - &z.re).abs() <= self.radius && (&self.center.im - &z.im).abs() <= self.radius
    }

    /// Stable order: by real part unless the real parts are not separated, then by imaginary part.
    pub fn order(&self, o: &RootDisc) -> Ordering {
        let s = &self.radius + &o.radius;
        if (&self.center.re - &o.center.re).abs() > s {
            self.center.re.cmp(&o.center.re)
        } else {
            self.center.im.cmp(&o.center.im).then(self.center.re.cmp(&o.center.re))
        }
    }
}

fn aberth_f64(p: &UZ) -> Vec<Complex64> {
    let n = p.deg();
    let c: Vec<f64> = p.coeffs().iter().map(|a| a.to_f64().unwrap_or(f64::MAX)).collect();
    let lc = c[n];
    let cauchy = 1.0 + c[..n].iter().map(|a| (a / lc).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(cauchy * 0.7, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4)).collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for a in c.iter().rev() {
            d = d * x + v;
            v = v * x + a;
        }
        (v, d)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-17 {
            break;
        }
    }
    z
}

fn aberth_exact_step(p: &UZ, dp: &UZ, z: &[CQ], bits: u32) -> Vec<CQ> {
    let n = z.len();
    (0..n)
        .map(|i| {
            let v = eval_cq(p, &z[i]);
            if v.is_zero() {
                return z[i].clone();
            }
            let d = eval_cq(dp, &z[i]);
            if d.is_zero() {
                return z[i].clone();
            }
            let ratio = v.div(&d);
            let mut s = CQ::zero();
            for j in (0..n).filter(|&j| j != i) {
                let diff = z[i].sub(&z[j]);
                if !diff.is_zero() {
                    s = s.add(&CQ::one().div(&diff));
                }
            }
            let denom = CQ::one().sub(&ratio.mul(&s));
            let w = if denom.is_zero() { ratio } else { ratio.div(&denom) };
            z[i].sub(&w).round_bits(bits)
        })
        .collect()
}

fn certify(p: &UZ, z: &[CQ]) -> Option<Vec<RootDisc>> {
    let n = z.len();
    let lc = BigRational::from_integer(p.lc());
    let mut discs = Vec::with_capacity(n);
    for i in 0..n {
        let v = eval_cq(p, &z[i]);
        let radius = if v.is_zero() {
            BigRational::zero()
        } else {
            let mut den = CQ::real(lc.clone());
            for j in (0..n).filter(|&j| j != i) {
                let d = z[i].sub(&z[j]);
                if d.is_zero() {
                    return None;
                }
                den = den.mul(&d);
            }
            let w2 = v.div(&den).norm2() * BigRational::from_integer((n * n).into());
            upper_sqrt(&w2)
        };
        discs.push(RootDisc { center: z[i].clone(), radius });
    }
    for i in 0..n {
        for j in i + 1..n {
            if !discs[i].box_disjoint(&discs[j]) {
                return None;
            }
        }
    }
    Some(discs)
}

/// Rational `r >= sqrt(x)`.
pub fn upper_sqrt(x: &BigRational) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let f = q_to_f64(x).sqrt();
    let mut r = f64_to_q(f * (1.0 + 1e-9) + f64::MIN_POSITIVE);
    if r.is_zero() {
        r = BigRational::new(1.into(), num_bigint::BigInt::one() << 1000usize);
    }
    while &r * &r < *x {
        r = &r * BigRational::from_integer(2.into());
    }
    r
}

/// Isolating discs for all roots of a squarefree polynomial, in stable order.
pub fn isolate_roots(p: &UZ) -> Vec<RootDisc> {
    let n = p.deg();
    if p.is_zero() || n == 0 {
        return Vec::new();
    }
    assert!(p.is_squarefree(), "root isolation needs a squarefree polynomial");
    if n == 1 {
        let c = p.coeffs();
        let root = BigRational::new(-c[0].clone(), c[1].clone());
        return vec![RootDisc { center: CQ::real(root), radius: BigRational::zero() }];
    }
    let mut z: Vec<CQ> = aberth_f64(p).into_iter().map(CQ::from_c64).collect();
    let dp = p.derivative();
    let mut bits = 60;
    let mut discs = loop {
        if let Some(d) = certify(p, &z) {
            break d;
        }
        bits *= 2;
        assert!(bits <= 1 << 16, "root isolation did not converge");
        for _ in 0..4 {
            z = aberth_exact_step(p, &dp, &z, bits);
        }
    };
    discs.sort_by(|a, b| a.order(b));
    discs
}

/// Shrinks an isolating disc of a root of `p` below `target` radius by exact Newton steps.
pub fn refine_disc(p: &UZ, disc: &RootDisc, target: &BigRational) -> RootDisc {
    if disc.radius <= *target {
        return disc.clone();
    }
    let dp = p.derivative();
    let mut bits = 64u32;
    let mut z = disc.center.clone();
    loop {
        for _ in 0..3 {
            let v = eval_cq(p, &z);
            if v.is_zero() {
                return RootDisc { center: z, radius: BigRational::zero() };
            }
            let d = eval_cq(&dp, &z);
            if d.is_zero() {
                break;
            }
            z = z.sub(&v.div(&d)).round_bits(bits);
        }
        if let Some(r) = local_disc(p, &dp, &z) {
            if r <= *target && disc_inside(&z, &r, disc) {
                return RootDisc { center: z, radius: r };
            }
        }
        bits *= 2;
        assert!(bits <= 1 << 16, "refinement did not converge");
    }
}

/// `|z - c| + r <= R` for the disc `(c, R)`.
fn disc_inside(z: &CQ, r: &BigRational, outer: &RootDisc) -> bool {
    let slack = &outer.radius - r;
    !slack.is_negative() && z.sub(&outer.center).norm2() <= &slack * &slack
}

/// Radius of a disc around `z` that contains a root of `p`: `n |p(z) / p'(z)|`.
///
/// Every polynomial of degree `n` has a root within `n |p(z)/p'(z)|` of any `z`.
fn local_disc(p: &UZ, dp: &UZ, z: &CQ) -> Option<BigRational> {
    let v = eval_cq(p, z);
    if v.is_zero() {
        return Some(BigRational::zero());
    }
    let d = eval_cq(dp, z);
    if d.is_zero() {
        return None;
    }
    let n = BigRational::from_integer(p.deg().into());
    Some(upper_sqrt(&(v.div(&d).norm2() * &n * &n)))
}

/// Rigorous enclosure `[lo, hi]` of `log M(p)` (Mahler measure) from isolating discs.
pub fn log_mahler_interval(p: &UZ, discs: &[RootDisc]) -> (f64, f64) {
    let lc = crate::poly::ln_abs(&p.lc());
    let mut lo = lc;
    let mut hi = lc;
    for d in discs {
        let r = d.radius_f64();
        let a_lo = (d.center.abs_lower() - r).max(0.0);
        let a_hi = d.center.abs_upper() + r;
        lo += a_lo.max(1.0).ln();
        hi += a_hi.max(1.0).ln();
    }
    let slack = 1e-12 * (1.0 + hi.abs());
    (lo - slack, hi + slack)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolates_simple_roots() {
        let p = UZ::from_i64(&[-2, 0, 1]);
        let d = isolate_roots(&p);
        assert_eq!(d.len(), 2);
        assert!(d[0].approx().re < 0.0 && d[1].approx().re > 0.0);
        assert!((d[1].approx().re - 2f64.sqrt()).abs() < 1e-12);
        let q = UZ::from_i64(&[1, 0, 1]);
        let d = isolate_roots(&q);
        assert_eq!(d.len(), 2);
        assert!(d[0].approx().im < 0.0);
    }

    #[test]
    fn close_roots_need_refinement() {
        // (1000x - 1)(1000x - 1001)(x + 3) has roots 0.001 and 1.001 and -3; add a near pair
        let p = &(&UZ::from_i64(&[-1, 100000]) * &UZ::from_i64(&[-2, 200001])) * &UZ::from_i64(&[3, 1]);
        let d = isolate_roots(&p);
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn mahler_of_quadratic() {
        let p = UZ::from_i64(&[-2, 0, 1]);
        let (lo, hi) = log_mahler_interval(&p, &isolate_roots(&p));
        assert!(lo <= 2f64.ln() && 2f64.ln() <= hi && hi - lo < 1e-9);
    }

    #[test]
    fn refinement_shrinks() {
        let p = UZ::from_i64(&[-2, 0, 1]);
        let d = isolate_roots(&p);
        let t = BigRational::new(1.into(), num_bigint::BigInt::from(10).pow(30));
        let r = refine_disc(&p, &d[1], &t);
        assert!(r.radius <= t);
    }
}
