//! Exact complex rationals.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::upoly::UZ;

#[derive(Clone, Debug, PartialEq)]
pub struct CQ {
    pub re: BigRational,
    pub im: BigRational,
}

impl CQ {
    pub fn zero() -> Self {
        CQ { re: BigRational::zero(), im: BigRational::zero() }
    }
    pub fn one() -> Self {
        CQ { re: BigRational::one(), im: BigRational::zero() }
    }
    pub fn real(re: BigRational) -> Self {
        CQ { re, im: BigRational::zero() }
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn add(&self, o: &CQ) -> CQ {
        CQ { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    pub fn sub(&self, o: &CQ) -> CQ {
        CQ { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    pub fn mul(&self, o: &CQ) -> CQ {
        CQ { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
    pub fn scale(&self, k: &BigRational) -> CQ {
        CQ { re: &self.re * k, im: &self.im * k }
    }
    pub fn norm2(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn conj(&self) -> CQ {
        CQ { re: self.re.clone(), im: -self.im.clone() }
    }
    pub fn div(&self, o: &CQ) -> CQ {
        let n = o.norm2();
        let t = self.mul(&o.conj());
        CQ { re: t.re / &n, im: t.im / n }
    }
    pub fn from_c64(z: Complex64) -> CQ {
        CQ { re: f64_to_q(z.re), im: f64_to_q(z.im) }
    }
    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(q_to_f64(&self.re), q_to_f64(&self.im))
    }
    /// Rounds both parts to the grid `2^-bits`.
    pub fn round_bits(&self, bits: u32) -> CQ {
        CQ { re: round_q(&self.re, bits), im: round_q(&self.im, bits) }
    }
    pub fn abs_upper(&self) -> f64 {
        q_to_f64(&self.norm2()).sqrt() * (1.0 + 1e-12) + 1e-300
    }
    pub fn abs_lower(&self) -> f64 {
        (q_to_f64(&self.norm2()).sqrt() * (1.0 - 1e-12)).max(0.0)
    }
}

pub fn f64_to_q(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

pub fn q_to_f64(x: &BigRational) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() && b != 0.0 => a / b,
        _ => {
            let shift = (x.numer().bits() as i64 - x.denom().bits() as i64 - 60).max(0);
            let scaled = if shift > 0 {
                x / BigRational::from_integer(BigInt::one() << shift as usize)
            } else {
                x.clone()
            };
            let s = scaled.numer().to_f64().unwrap_or(0.0) / scaled.denom().to_f64().unwrap_or(1.0);
            s * 2f64.powi(shift as i32)
        }
    }
}

pub fn round_q(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits as usize;
    let v = x * BigRational::from_integer(scale.clone());
    BigRational::new(v.round().to_integer(), scale)
}

/// Exact `p(z)` for an integer polynomial.
pub fn eval_cq(p: &UZ, z: &CQ) -> CQ {
    let mut acc = CQ::zero();
    for a in p.coeffs().iter().rev() {
        acc = acc.mul(z);
        acc.re += BigRational::from_integer(a.clone());
    }
    acc
}

/// Upper bound for `|p(w)|` over the disc `|w - c| <= r`.
pub fn disc_abs_upper(p: &UZ, c: &CQ, r: f64) -> f64 {
    let m = c.abs_upper() + r;
    p.coeffs().iter().rev().fold(0.0, |acc, a| acc * m + q_to_f64(&BigRational::from_integer(a.abs())))
}
