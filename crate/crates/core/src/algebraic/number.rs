//! Algebraic numbers as a minimal polynomial plus an isolating disc.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::complex::{eval_cq, q_to_f64, CQ};
use super::factor::factor_z;
use super::field::NumberField;
use super::roots::{isolate_roots, log_mahler_interval, refine_disc, RootDisc};
use crate::upoly::{UQ, UZ};

#[derive(Clone)]
pub struct AlgebraicNumber {
    minpoly: UZ,
    disc: RootDisc,
}

impl AlgebraicNumber {
    pub fn from_rational(q: &BigRational) -> Self {
        AlgebraicNumber {
            minpoly: UZ::new(vec![-q.numer().clone(), q.denom().clone()]),
            disc: RootDisc { center: CQ::real(q.clone()), radius: BigRational::zero() },
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(v.into()))
    }

    /// All roots of a nonzero polynomial without multiplicity, in stable order.
    pub fn roots_of(p: &UZ) -> Vec<AlgebraicNumber> {
        let (_, fs) = factor_z(p);
        let mut out = Vec::new();
        for (f, _) in fs {
            for d in isolate_roots(&f) {
                out.push(AlgebraicNumber { minpoly: f.clone(), disc: d });
            }
        }
        out.sort_by(|a, b| a.disc.order(&b.disc));
        out
    }

    pub fn minpoly(&self) -> &UZ {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn disc(&self) -> &RootDisc {
        &self.disc
    }

    pub fn approx(&self) -> Complex64 {
        self.disc.approx()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| BigRational::new(-self.minpoly.coeff(0), self.minpoly.coeff(1)))
    }

    pub fn is_zero(&self) -> bool {
        self.is_rational() && self.minpoly.coeff(0).is_zero()
    }

    /// Is the number real. Exact: conjugation fixes the root iff the disc meets the real axis.
    pub fn is_real(&self) -> bool {
        self.disc.center.im.abs() <= self.disc.radius
    }

    /// Field generated by this number.
    pub fn field(&self) -> NumberField {
        NumberField::new(&self.minpoly)
    }

    /// Absolute logarithmic height enclosure `[lo, hi]`; rational values are exact to rounding.
    pub fn height_interval(&self) -> (f64, f64) {
        if let Some(q) = self.as_rational() {
            let v = crate::poly::ln_abs(q.numer()).max(crate::poly::ln_abs(q.denom()));
            let v = if q.is_zero() { 0.0 } else { v };
            return (v * (1.0 - 1e-15), v * (1.0 + 1e-15));
        }
        let discs = isolate_roots(&self.minpoly);
        let (lo, hi) = log_mahler_interval(&self.minpoly, &discs);
        let d = self.degree() as f64;
        (lo / d, hi / d)
    }

    pub fn height(&self) -> f64 {
        let (lo, hi) = self.height_interval();
        0.5 * (lo + hi)
    }

    /// The value `a(self)` for `a` in `Q[Y]`.
    pub fn eval_field_elem(&self, a: &UQ) -> AlgebraicNumber {
        let k = self.field();
        let a = k.reduce(a);
        if a.deg() == 0 {
            return AlgebraicNumber::from_rational(&a.coeff(0));
        }
        let mp = k.minpoly(&a);
        let cands = isolate_roots(&mp);
        let mut me = self.clone();
        let mut cands = cands;
        loop {
            let (c, r) = enclose(&a, &me.disc);
            let hits: Vec<usize> = (0..cands.len())
                .filter(|&i| {
                    let s = &cands[i].radius + &r;
                    cands[i].center.sub(&c).norm2() <= &s * &s
                })
                .collect();
            if hits.len() == 1 {
                return AlgebraicNumber { minpoly: mp, disc: cands[hits[0]].clone() };
            }
            assert!(!hits.is_empty(), "enclosure missed every conjugate");
            me = me.refined(&(&me.disc.radius / BigRational::from_integer(BigInt::from(1u64 << 32))).max(tiny()));
            cands = cands.iter().map(|d| refine_disc(&mp, d, &(&d.radius / BigRational::from_integer(BigInt::from(1u64 << 32))))).collect();
        }
    }

    /// Same number with an isolating disc of radius at most `target`.
    pub fn refined(&self, target: &BigRational) -> AlgebraicNumber {
        AlgebraicNumber { minpoly: self.minpoly.clone(), disc: refine_disc(&self.minpoly, &self.disc, target) }
    }

    /// Exact equality: same minimal polynomial and the discs isolate the same root.
    pub fn same(&self, o: &AlgebraicNumber) -> bool {
        if self.minpoly != o.minpoly {
            return false;
        }
        if self.is_rational() {
            return true;
        }
        let discs = isolate_roots(&self.minpoly);
        let find = |d: &RootDisc| {
            let mut a = d.clone();
            loop {
                let hits: Vec<usize> = (0..discs.len())
                    .filter(|&i| {
                        let s = &discs[i].radius + &a.radius;
                        discs[i].center.sub(&a.center).norm2() <= &s * &s
                    })
                    .collect();
                if hits.len() == 1 {
                    return hits[0];
                }
                a = refine_disc(&self.minpoly, &a, &(&a.radius / BigRational::from_integer(BigInt::from(1u64 << 20))));
            }
        };
        find(&self.disc) == find(&o.disc)
    }
}

fn tiny() -> BigRational {
    BigRational::new(1.into(), BigInt::from(1) << 4000usize)
}

/// Disc `(c, R)` containing `a(w)` for every `w` in the given disc.
fn enclose(a: &UQ, d: &RootDisc) -> (CQ, BigRational) {
    let den = a.coeffs().iter().fold(BigInt::from(1), |l, c| num_integer::Integer::lcm(&l, c.denom()));
    let az = a.map(|c| (c * BigRational::from_integer(den.clone())).to_integer());
    let c = eval_cq(&az, &d.center).scale(&BigRational::new(1.into(), den.clone()));
    if d.radius.is_zero() {
        return (c, BigRational::zero());
    }
    // |a(c + t) - a(c)| <= A(|c| + r) - A(|c|) with A the absolute-coefficient polynomial
    let m = d.center.abs_upper();
    let r = q_to_f64(&d.radius) * (1.0 + 1e-12);
    let abs: Vec<f64> = a.coeffs().iter().map(|x| q_to_f64(&x.abs())).collect();
    let ev = |x: f64| abs.iter().rev().fold(0.0, |acc, v| acc * x + v);
    let delta = (ev(m + r) - ev(m)).abs() * (1.0 + 1e-9) + ev(m + r) * 1e-14;
    (c, super::complex::f64_to_q(delta.max(f64::MIN_POSITIVE)))
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, o: &Self) -> bool {
        self.same(o)
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = self.approx();
        write!(f, "root of {} near {:.6}{:+.6}i", self.minpoly, z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_and_friends() {
        let r = AlgebraicNumber::roots_of(&UZ::from_i64(&[-2, 0, 1]));
        assert_eq!(r.len(), 2);
        let s = &r[1];
        assert!(s.approx().re > 0.0);
        let (lo, hi) = s.height_interval();
        let h = 0.5 * 2f64.ln();
        assert!(lo <= h && h <= hi);
        // (1 + Y)^2 = 3 + 2 sqrt2 has minpoly X^2 - 6X + 1
        let t = s.eval_field_elem(&UQ::from_multi(&crate::poly::parse_poly("Y^2 + 2Y + 1", 1).unwrap().to_rational(), 0).unwrap());
        assert_eq!(t.minpoly(), &UZ::from_i64(&[1, -6, 1]));
        assert!((t.approx().re - (3.0 + 2.0 * 2f64.sqrt())).abs() < 1e-9);
        assert!(!t.same(&r[0]));
    }

    #[test]
    fn rational_heights() {
        let q = AlgebraicNumber::from_rational(&BigRational::new((-9).into(), 8.into()));
        let (lo, hi) = q.height_interval();
        assert!(lo <= 9f64.ln() && 9f64.ln() <= hi);
        assert!(q.is_real());
        assert_eq!(AlgebraicNumber::from_int(0).height(), 0.0);
    }
}
