//! Dense univariate polynomials over `Z`, `Q` and `Z/p`.
//!
//! Coefficients are stored from the constant term upwards with no trailing
//! zeros, so the zero polynomial is the empty vector.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{Coeff, Monomial, MultiPoly, QPoly, ZPoly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly<C> {
    c: Vec<C>,
}

pub type UZ = UPoly<BigInt>;
pub type UQ = UPoly<BigRational>;

impl<C: Coeff> UPoly<C> {
    pub fn new(mut c: Vec<C>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly { c: vec![C::one()] }
    }

    pub fn constant(v: C) -> Self {
        Self::new(vec![v])
    }

    /// `X`
    pub fn x() -> Self {
        UPoly { c: vec![C::zero(), C::one()] }
    }

    /// `X - a`
    pub fn linear_root(a: C) -> Self {
        UPoly { c: vec![-a, C::one()] }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> C {
        self.c.get(i).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> C {
        self.c.last().cloned().unwrap_or_else(C::zero)
    }

    pub fn eval(&self, x: &C) -> C {
        let mut acc = C::zero();
        for a in self.c.iter().rev() {
            acc = acc * x.clone() + a.clone();
        }
        acc
    }

    pub fn scale(&self, k: &C) -> Self {
        Self::new(self.c.iter().map(|a| a.clone() * k.clone()).collect())
    }

    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![C::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| {
                    let mut k = C::zero();
                    for _ in 0..i {
                        k = k + C::one();
                    }
                    a.clone() * k
                })
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// `self(g(X))`
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Self::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * g) + &Self::constant(a.clone());
        }
        acc
    }

    pub fn map<D: Coeff>(&self, f: impl FnMut(&C) -> D) -> UPoly<D> {
        UPoly::new(self.c.iter().map(f).collect())
    }

    /// As a multivariate polynomial in variable `var` of an `nvars` ring.
    pub fn to_multi(&self, nvars: usize, var: usize) -> MultiPoly<C> {
        MultiPoly::from_terms(
            nvars,
            self.c.iter().enumerate().map(|(i, a)| {
                let mut e = vec![0u32; nvars];
                e[var] = i as u32;
                (Monomial(e), a.clone())
            }),
        )
    }

    /// From a multivariate polynomial involving only variable `var`.
    pub fn from_multi(p: &MultiPoly<C>, var: usize) -> Option<Self> {
        let mut c = vec![C::zero(); p.degree_in(var).unwrap_or(0) as usize + 1];
        for (m, a) in p.terms() {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e != 0) {
                return None;
            }
            c[m.0[var] as usize] = a.clone();
        }
        Some(Self::new(c))
    }
}

impl<C: Coeff> std::ops::Add for &UPoly<C> {
    type Output = UPoly<C>;
    fn add(self, o: &UPoly<C>) -> UPoly<C> {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<C: Coeff> std::ops::Sub for &UPoly<C> {
    type Output = UPoly<C>;
    fn sub(self, o: &UPoly<C>) -> UPoly<C> {
        let n = self.c.len().max(o.c.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<C: Coeff> std::ops::Mul for &UPoly<C> {
    type Output = UPoly<C>;
    fn mul(self, o: &UPoly<C>) -> UPoly<C> {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut c = vec![C::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        UPoly::new(c)
    }
}

impl<C: Coeff> std::ops::Neg for &UPoly<C> {
    type Output = UPoly<C>;
    fn neg(self) -> UPoly<C> {
        UPoly { c: self.c.iter().map(|a| -a.clone()).collect() }
    }
}

impl<C: Coeff> fmt::Display for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multi(1, 0).display_with(&["X"]))
    }
}

impl<C: Coeff> fmt::Debug for UPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl UQ {
    pub fn div_rem(&self, d: &UQ) -> (UQ, UQ) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let dd = d.deg();
        let lc = d.lc();
        if r.len() < d.c.len() {
            return (UQ::zero(), self.clone());
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let t = &r[i + dd] / &lc;
            if !t.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[i + j] = &r[i + j] - &t * b;
                }
            }
            q[i] = t;
        }
        r.truncate(dd);
        (UQ::new(q), UQ::new(r))
    }

    pub fn rem(&self, d: &UQ) -> UQ {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> UQ {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.lc();
        self.map(|a| a / &lc)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &UQ) -> UQ {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn xgcd(&self, o: &UQ) -> (UQ, UQ, UQ) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UQ::one(), UQ::zero());
        let (mut t0, mut t1) = (UQ::zero(), UQ::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = r1;
            r1 = r;
            let s = &s0 - &(&q * &s1);
            s0 = s1;
            s1 = s;
            let t = &t0 - &(&q * &t1);
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = BigRational::one() / r0.lc();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Primitive integer polynomial with positive leading coefficient.
    pub fn to_primitive_z(&self) -> UZ {
        let l = self.c.iter().fold(BigInt::one(), |l, a| l.lcm(a.denom()));
        let z = self.map(|a| (a * BigRational::from_integer(l.clone())).to_integer());
        z.primitive()
    }

    pub fn from_qpoly(p: &QPoly, var: usize) -> Option<UQ> {
        UQ::from_multi(p, var)
    }
}

impl UZ {
    pub fn from_i64(c: &[i64]) -> UZ {
        UZ::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn to_q(&self) -> UQ {
        self.map(|a| BigRational::from_integer(a.clone()))
    }

    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, a| g.gcd(a))
    }

    /// Divided by the content, leading coefficient positive.
    pub fn primitive(&self) -> UZ {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        self.map(|a| a / &g)
    }

    pub fn max_abs(&self) -> BigInt {
        self.c.iter().map(|a| a.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Exact quotient in `Z[X]` if it exists.
    pub fn div_exact(&self, d: &UZ) -> Option<UZ> {
        let (q, r) = self.to_q().div_rem(&d.to_q());
        if !r.is_zero() {
            return None;
        }
        q.c.iter().all(|a| a.is_integer()).then(|| q.map(|a| a.to_integer()))
    }

    /// Gcd in `Z[X]`: gcd of contents times the primitive gcd over `Q`.
    pub fn gcd(&self, o: &UZ) -> UZ {
        if self.is_zero() {
            return o.clone().abs_lc();
        }
        if o.is_zero() {
            return self.clone().abs_lc();
        }
        let c = self.content().gcd(&o.content());
        let g = self.to_q().gcd(&o.to_q()).to_primitive_z();
        g.scale(&c)
    }

    fn abs_lc(self) -> UZ {
        if self.lc().is_negative() {
            -&self
        } else {
            self
        }
    }

    /// Squarefree part (primitive), i.e. `f / gcd(f, f')`.
    pub fn squarefree_part(&self) -> UZ {
        if self.deg() == 0 {
            return UZ::one();
        }
        let g = self.to_q().gcd(&self.derivative().to_q());
        self.to_q().div_rem(&g).0.to_primitive_z()
    }

    pub fn is_squarefree(&self) -> bool {
        self.to_q().gcd(&self.derivative().to_q()).deg() == 0
    }

    /// Resultant `Res(self, o)` via the Sylvester determinant.
    pub fn resultant(&self, o: &UZ) -> BigInt {
        if self.is_zero() || o.is_zero() {
            return BigInt::zero();
        }
        let (m, n) = (self.deg(), o.deg());
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut s = vec![vec![BigInt::zero(); size]; size];
        for i in 0..n {
            for j in 0..=m {
                s[i][i + j] = self.c[m - j].clone();
            }
        }
        for i in 0..m {
            for j in 0..=n {
                s[n + i][i + j] = o.c[n - j].clone();
            }
        }
        crate::linalg::det_bareiss(s)
    }

    /// Discriminant `(-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> BigInt {
        let n = self.deg();
        if n <= 1 {
            return BigInt::one();
        }
        let r = self.resultant(&self.derivative());
        let d = r / self.lc();
        if (n * (n - 1) / 2) % 2 == 1 {
            -d
        } else {
            d
        }
    }

    /// `lc^(n-1) f(X / lc)`: the monic integer polynomial of `lc * root`.
    pub fn monicize(&self) -> UZ {
        let n = self.deg();
        let a = self.lc();
        let mut c: Vec<BigInt> = (0..n).map(|i| &self.c[i] * num_traits::pow(a.clone(), n - 1 - i)).collect();
        c.push(BigInt::one());
        UZ::new(c)
    }

    /// Reduction modulo a prime.
    pub fn mod_p(&self, p: u64) -> UPolyFp {
        UPolyFp::new(self.c.iter().map(|a| a.mod_floor(&BigInt::from(p)).try_into().unwrap()).collect(), p)
    }
}

/// Dense polynomial over `Z/p` for a small prime `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPolyFp {
    pub c: Vec<u64>,
    pub p: u64,
}

impl UPolyFp {
    pub fn new(mut c: Vec<u64>, p: u64) -> Self {
        for a in c.iter_mut() {
            *a %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        UPolyFp { c, p }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn rem(&self, d: &UPolyFp) -> UPolyFp {
        assert!(!d.is_zero());
        let p = self.p;
        let mut r = self.c.clone();
        let dd = d.deg();
        let li = self.inv(*d.c.last().unwrap());
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let t = r[top] * li % p;
            if t != 0 {
                for (j, b) in d.c.iter().enumerate() {
                    let idx = top - dd + j;
                    r[idx] = (r[idx] + p * p - t * b % p) % p;
                }
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        UPolyFp::new(r, p)
    }

    pub fn gcd(&self, o: &UPolyFp) -> UPolyFp {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let li = a.inv(*a.c.last().unwrap());
        UPolyFp::new(a.c.iter().map(|x| x * li % a.p).collect(), a.p)
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Resultant of two multivariate integer polynomials with respect to `var`.
pub fn resultant_in(f: &ZPoly, g: &ZPoly, var: usize) -> ZPoly {
    let n = f.nvars();
    let fc = f.coeffs_in(var);
    let gc = g.coeffs_in(var);
    if f.is_zero() || g.is_zero() {
        return ZPoly::zero(n);
    }
    let (m, k) = (fc.len() - 1, gc.len() - 1);
    if m == 0 && k == 0 {
        return ZPoly::one(n);
    }
    if m == 0 {
        return fc[0].pow(k as u32);
    }
    if k == 0 {
        return gc[0].pow(m as u32);
    }
    let size = m + k;
    let mut s = vec![vec![ZPoly::zero(n); size]; size];
    for i in 0..k {
        for j in 0..=m {
            s[i][i + j] = fc[m - j].clone();
        }
    }
    for i in 0..m {
        for j in 0..=k {
            s[k + i][i + j] = gc[k - j].clone();
        }
    }
    crate::linalg::det_bareiss_poly(s, n)
}

/// Discriminant of a polynomial monic in `var`, with coefficients in the other variables.
pub fn discriminant_monic_in(f: &ZPoly, var: usize) -> ZPoly {
    let n = f.nvars();
    let d = f.degree_in(var).unwrap_or(0);
    if d <= 1 {
        return ZPoly::one(n);
    }
    let fprime = ZPoly::from_terms(
        n,
        f.terms().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            e[var] -= 1;
            (Monomial(e), c * BigInt::from(m.0[var]))
        }),
    );
    let r = resultant_in(f, &fprime, var);
    if (d * (d - 1) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}
