use std::cmp::Ordering;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{monomials_up_to, Monomial, ZPoly};
use crate::logvalue::{bf, LogValue};

/// Degree, height and size `s = max(1, deg, h)` of an integer polynomial.
///
/// The height is kept as the exact maximal coefficient; the log is derived.
#[derive(Clone, Debug, PartialEq)]
pub struct SizeTriple {
    /// Total degree; `None` for the zero polynomial.
    pub deg: Option<u32>,
    /// `max |coeff|`, zero for the zero polynomial.
    pub max_coeff: BigInt,
}

impl SizeTriple {
    pub fn of(f: &ZPoly) -> Self {
        SizeTriple { deg: f.degree(), max_coeff: f.max_abs_coeff() }
    }

    /// `h = log max|coeff|`; `None` for the zero polynomial.
    pub fn h(&self) -> Option<LogValue> {
        (!self.max_coeff.is_zero()).then(|| LogValue::from_bigint(&self.max_coeff).ln())
    }

    pub fn h_f64(&self) -> f64 {
        if self.max_coeff.is_zero() {
            f64::NEG_INFINITY
        } else {
            ln_bigint(&self.max_coeff)
        }
    }

    pub fn deg_or_zero(&self) -> u32 {
        self.deg.unwrap_or(0)
    }

    /// `s = max(1, deg, h)` as a float.
    pub fn s(&self) -> f64 {
        1f64.max(self.deg_or_zero() as f64).max(self.h_f64())
    }

    /// Exact test `s <= sigma` for an integer `sigma`.
    pub fn s_at_most(&self, sigma: u32) -> bool {
        sigma >= 1 && self.deg_or_zero() <= sigma && self.max_coeff <= coeff_cap(sigma)
    }

    /// Smallest integer `sigma >= 1` with `s <= sigma`.
    pub fn size_class(&self) -> u32 {
        let mut sigma = self.deg_or_zero().max(1);
        while self.max_coeff > coeff_cap(sigma) {
            sigma += 1;
        }
        sigma
    }
}

/// `floor(e^sigma)`: the largest coefficient allowed by `h <= sigma`.
pub fn coeff_cap(sigma: u32) -> BigInt {
    let v = bf::exp(&bf::from_i64(sigma as i64));
    let s = bf::to_string(&v.floor());
    // format is d.ddde+N; go through a rational parse of the decimal
    parse_decimal_int(&s)
}

fn parse_decimal_int(s: &str) -> BigInt {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().unwrap()),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mant.find('.') {
        Some(i) => (&mant[..i], &mant[i + 1..]),
        None => (mant, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    let shift = exp - frac_part.len() as i64;
    let n: BigInt = digits.parse().unwrap();
    if shift >= 0 {
        n * num_traits::pow(BigInt::from(10), shift as usize)
    } else {
        n / num_traits::pow(BigInt::from(10), (-shift) as usize)
    }
}

pub(crate) fn ln_bigint(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits < 1000 {
        let f: f64 = v.abs().to_string().parse().unwrap();
        f.ln()
    } else {
        let shift = bits - 900;
        let top: BigInt = v.abs() >> shift;
        let f: f64 = top.to_string().parse().unwrap();
        f.ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Exact evaluation together with the evaluation height bound.
#[derive(Clone, Debug)]
pub struct EvalCertificate {
    pub value: BigInt,
    /// `q log deg g + h(g) + deg g log max(1,|u|)`, natural log; `log 0` read as 0.
    pub bound: BigFloat,
    /// Same with `log(deg g + 1)` in place of `log deg g`; always valid.
    pub counted_bound: BigFloat,
    /// Whether `log |g(u)| <= bound`.
    pub holds: bool,
}

/// Evaluates `g` at an integer point and reports the height bound.
pub fn poly_eval_int(g: &ZPoly, u: &[BigInt]) -> EvalCertificate {
    assert_eq!(g.nvars(), u.len());
    let value = g.eval(u);
    let q = g.nvars() as i64;
    let deg = g.degree_or_zero() as i64;
    let umax = u.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero).max(BigInt::one());
    let h = if g.is_zero() { bf::from_i64(0) } else { bf::ln(&bf::from_bigint(&g.max_abs_coeff())) };
    let tail = bf::add(&h, &bf::mul(&bf::from_i64(deg), &bf::ln(&bf::from_bigint(&umax))));
    let log_deg = if deg <= 1 { bf::from_i64(0) } else { bf::ln(&bf::from_i64(deg)) };
    let bound = bf::add(&bf::mul(&bf::from_i64(q), &log_deg), &tail);
    let counted_bound = bf::add(&bf::mul(&bf::from_i64(q), &bf::ln(&bf::from_i64(deg + 1))), &tail);
    let holds = value.is_zero() || bf::cmp(&bf::ln(&bf::from_bigint(&value.abs())), &bound) != Ordering::Greater;
    if !value.is_zero() {
        let lhs = bf::ln(&bf::from_bigint(&value.abs()));
        assert!(bf::cmp(&lhs, &counted_bound) != Ordering::Greater, "evaluation exceeded the monomial-count bound");
    }
    EvalCertificate { value, bound, counted_bound, holds }
}

/// All integer polynomials in `nvars` variables with `s(f) <= sigma`, including 0.
///
/// Ordered by size class, then by the degree-lex order of coefficient vectors.
pub fn enumerate_small_polys(sigma: u32, nvars: usize) -> SmallPolys {
    SmallPolys::new(sigma, nvars)
}

/// Iterator behind [`enumerate_small_polys`].
pub struct SmallPolys {
    nvars: usize,
    sigma: u32,
    class: u32,
    monos: Vec<Monomial>,
    cap: i64,
    prev_cap: i64,
    prev_deg: u32,
    digits: Vec<i64>,
    done_class: bool,
    zero_pending: bool,
}

impl SmallPolys {
    fn new(sigma: u32, nvars: usize) -> Self {
        let mut it = SmallPolys {
            nvars,
            sigma,
            class: 0,
            monos: Vec::new(),
            cap: 0,
            prev_cap: 0,
            prev_deg: 0,
            digits: Vec::new(),
            done_class: true,
            zero_pending: sigma >= 1,
        };
        it.next_class();
        it
    }

    fn next_class(&mut self) {
        self.class += 1;
        if self.class > self.sigma {
            self.done_class = true;
            return;
        }
        if self.class > 1 {
            self.prev_cap = self.cap;
            self.prev_deg = self.class - 1;
        }
        self.cap = i64::try_from(coeff_cap(self.class)).expect("coefficient cap fits i64");
        self.monos = monomials_up_to(self.nvars, self.class);
        self.digits = vec![-self.cap; self.monos.len()];
        self.done_class = false;
    }

    fn in_previous_class(&self) -> bool {
        if self.class == 1 {
            return false;
        }
        self.digits
            .iter()
            .zip(&self.monos)
            .all(|(&c, m)| c == 0 || (c.abs() <= self.prev_cap && m.degree() <= self.prev_deg))
    }

    fn advance(&mut self) {
        for i in (0..self.digits.len()).rev() {
            if self.digits[i] < self.cap {
                self.digits[i] += 1;
                return;
            }
            self.digits[i] = -self.cap;
        }
        self.done_class = true;
    }
}

impl SmallPolys {
    /// Next coefficient vector (aligned with `monomials()`), without building the polynomial.
    fn next_digits(&mut self) -> Option<Vec<i64>> {
        if self.zero_pending {
            self.zero_pending = false;
            return Some(Vec::new());
        }
        loop {
            if self.done_class {
                if self.class > self.sigma {
                    return None;
                }
                self.next_class();
                if self.done_class {
                    return None;
                }
            }
            let nonzero = self.digits.iter().any(|&c| c != 0);
            let fresh = nonzero && !self.in_previous_class();
            let digits = fresh.then(|| self.digits.clone());
            self.advance();
            if digits.is_some() {
                return digits;
            }
        }
    }

    /// Counts the remaining polynomials without materializing them.
    pub fn count_fast(mut self) -> u64 {
        let mut n = 0;
        while self.next_digits().is_some() {
            n += 1;
        }
        n
    }
}

impl Iterator for SmallPolys {
    type Item = ZPoly;

    fn next(&mut self) -> Option<ZPoly> {
        let digits = self.next_digits()?;
        Some(ZPoly::from_terms(
            self.nvars,
            digits.iter().zip(&self.monos).filter(|(c, _)| **c != 0).map(|(c, m)| (m.clone(), BigInt::from(*c))),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn measures_examples() {
        let f = parse_poly("3*X1^2 - 5*X1 + 2", 1).unwrap();
        let t = SizeTriple::of(&f);
        assert_eq!(t.deg, Some(2));
        assert_eq!(t.max_coeff, BigInt::from(5));
        assert!((t.s() - 2.0).abs() < 1e-15);
        let one = SizeTriple::of(&ZPoly::one(1));
        assert_eq!((one.deg, one.h_f64(), one.s()), (Some(0), 0.0, 1.0));
        let g = SizeTriple::of(&parse_poly("X1*X2 - 7", 2).unwrap());
        assert_eq!(g.deg, Some(2));
        assert!((g.h_f64() - 7f64.ln()).abs() < 1e-15);
        assert!((g.s() - 2.0).abs() < 1e-15);
        assert!(g.s_at_most(2) && !g.s_at_most(1));
    }

    #[test]
    fn coefficient_caps() {
        assert_eq!(coeff_cap(1), BigInt::from(2));
        assert_eq!(coeff_cap(2), BigInt::from(7));
        assert_eq!(coeff_cap(3), BigInt::from(20));
        assert_eq!(coeff_cap(10), BigInt::from(22026));
    }

    #[test]
    fn eval_examples() {
        let g = parse_poly("z1*z2 + 1", 2).unwrap();
        let c = poly_eval_int(&g, &ints(&[2, 3]));
        assert_eq!(c.value, BigInt::from(7));
        assert!(bf::rel_diff(&c.bound, &bf::ln(&bf::from_i64(36))) < 1e-60);
        assert!(c.holds);
        let c = poly_eval_int(&ZPoly::constant(1, BigInt::from(5)), &ints(&[0]));
        assert_eq!(c.value, BigInt::from(5));
        assert!(bf::rel_diff(&c.bound, &bf::ln(&bf::from_i64(5))) < 1e-60);
        let c = poly_eval_int(&parse_poly("z1^3 - z1", 1).unwrap(), &ints(&[-3]));
        assert_eq!(c.value, BigInt::from(-24));
        assert!(c.holds);
    }

    #[test]
    fn eval_bound_needs_monomial_count_at_low_degree() {
        // z+1 at u=1: log 2 exceeds q log deg + h + deg log|u| = 0
        let c = poly_eval_int(&parse_poly("z + 1", 1).unwrap(), &ints(&[1]));
        assert!(!c.holds);
    }

    #[test]
    fn enumeration_count_matches_formula() {
        for sigma in 1..=2u32 {
            for n in 1..=2usize {
                let cap = coeff_cap(sigma);
                let monos = monomials_up_to(n, sigma).len();
                let expected = num_traits::pow(BigInt::from(2) * cap + 1, monos);
                let got = if expected > BigInt::from(100_000) {
                    enumerate_small_polys(sigma, n).count_fast() as usize
                } else {
                    enumerate_small_polys(sigma, n).count()
                };
                assert_eq!(BigInt::from(got), expected, "sigma={sigma} n={n}");
            }
        }
    }

    #[test]
    fn enumeration_is_by_size_class() {
        let classes: Vec<u32> = enumerate_small_polys(2, 1).map(|p| SizeTriple::of(&p).size_class()).collect();
        assert!(classes.windows(2).all(|w| w[0] <= w[1]));
        assert!(enumerate_small_polys(2, 1).all(|p| SizeTriple::of(&p).s_at_most(2)));
    }
}
