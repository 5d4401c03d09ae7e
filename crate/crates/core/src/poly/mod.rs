//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors. The derived
//! ordering on [`Monomial`] is lexicographic with `X1 > X2 > ...`, so the last
//! entry of the map is the lex-leading term.

mod gcd;
mod measures;
mod parse;

pub use gcd::{content_in_last, multipoly_gcd};
pub(crate) use measures::ln_bigint as ln_abs;
pub use measures::{enumerate_small_polys, poly_eval_int, EvalCertificate, SizeTriple};
pub use parse::{parse_poly, parse_poly_with, ParsePolyError};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient ring for [`MultiPoly`].
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
{
}

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Graded lexicographic comparison (total degree first, then lex).
    pub fn cmp_grlex(&self, other: &Monomial) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.cmp(other))
    }
}

/// All exponent vectors in `nvars` variables of total degree at most `deg`,
/// sorted degree-lexicographically (ascending).
pub fn monomials_up_to(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=deg {
        let mut cur = vec![0u32; nvars];
        exact_degree(nvars, d, 0, &mut cur, &mut out);
    }
    out
}

fn exact_degree(nvars: usize, left: u32, idx: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if nvars == 0 {
        if left == 0 {
            out.push(Monomial(vec![]));
        }
        return;
    }
    if idx == nvars - 1 {
        cur[idx] = left;
        out.push(Monomial(cur.clone()));
        cur[idx] = 0;
        return;
    }
    // larger exponent on earlier variables first gives descending lex; reverse below
    let start = out.len();
    for e in 0..=left {
        cur[idx] = e;
        exact_degree(nvars, left - e, idx + 1, cur, out);
    }
    cur[idx] = 0;
    if idx == 0 {
        out[start..].sort();
    }
}

/// Sparse polynomial in `nvars` variables.
#[derive(Clone, PartialEq)]
pub struct MultiPoly<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

pub type ZPoly = MultiPoly<BigInt>;
pub type QPoly = MultiPoly<BigRational>;

impl<C: Coeff> MultiPoly<C> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, i), C::one());
        p
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut p = Self::zero(m.0.len());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Monomial::one(self.nvars))
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: C) {
        assert_eq!(m.0.len(), self.nvars, "exponent vector length mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Total degree with `deg 0 = 0`.
    pub fn degree_or_zero(&self) -> u32 {
        self.degree().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    /// Lex-leading term.
    pub fn leading_term(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&C> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Leading term for the graded lex order.
    pub fn leading_term_grlex(&self) -> Option<(&Monomial, &C)> {
        self.terms.iter().max_by(|a, b| a.0.cmp_grlex(b.0))
    }

    pub fn map_coeffs<D: Coeff>(&self, mut f: impl FnMut(&C) -> D) -> MultiPoly<D> {
        MultiPoly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        self.map_coeffs(|x| x.clone() * c.clone())
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        MultiPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc.clone() * c.clone())),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `vals[i]` for variable `i`; all `vals` share one variable count.
    pub fn substitute(&self, vals: &[MultiPoly<C>]) -> MultiPoly<C> {
        assert_eq!(vals.len(), self.nvars, "one substitution per variable");
        let target = vals.first().map(|v| v.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<MultiPoly<C>>> = vals.iter().map(|v| vec![MultiPoly::one(v.nvars)]).collect();
        let mut out = MultiPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &vals[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    pub fn eval(&self, point: &[C]) -> C {
        assert_eq!(point.len(), self.nvars);
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Embeds into a ring with more variables, mapping variable `i` to `map[i]`.
    pub fn remap_vars(&self, new_nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        MultiPoly::from_terms(
            new_nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; new_nvars];
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Keeps the first `k` variables; panics if a later variable occurs.
    pub fn truncate_vars(&self, k: usize) -> Self {
        MultiPoly::from_terms(
            k,
            self.terms.iter().map(|(m, c)| {
                assert!(m.0[k..].iter().all(|&e| e == 0), "polynomial uses a dropped variable");
                (Monomial(m.0[..k].to_vec()), c.clone())
            }),
        )
    }

    /// Coefficients with respect to variable `var`: `self = sum_j out[j] * X_var^j`.
    /// The returned polynomials keep `nvars` with `var` absent.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly<C>> {
        let deg = match self.degree_in(var) {
            Some(d) => d as usize,
            None => return vec![],
        };
        let mut out = vec![MultiPoly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            let j = mm.0[var] as usize;
            mm.0[var] = 0;
            out[j].add_term(mm, c.clone());
        }
        out
    }

    /// Coefficients with respect to a group of variables: map from the
    /// exponent vector restricted to `vars` to the coefficient polynomial
    /// (with those variables removed).
    pub fn coeffs_in_group(&self, vars: &[usize]) -> BTreeMap<Vec<u32>, MultiPoly<C>> {
        let mut out: BTreeMap<Vec<u32>, MultiPoly<C>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = vars.iter().map(|&v| m.0[v]).collect();
            let mut mm = m.clone();
            for &v in vars {
                mm.0[v] = 0;
            }
            out.entry(key).or_insert_with(|| MultiPoly::zero(self.nvars)).add_term(mm, c.clone());
        }
        out
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let cs = format!("{c}");
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].to_string()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            let needs_paren = mag.contains('/') && !factors.is_empty();
            if factors.is_empty() {
                s.push_str(&mag);
            } else if mag == "1" {
                s.push_str(&factors.join("*"));
            } else if needs_paren {
                s.push_str(&format!("({mag})*{}", factors.join("*")));
            } else {
                s.push_str(&format!("{mag}*{}", factors.join("*")));
            }
        }
        s
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("X{i}")).collect()
    }
}

impl<C: Coeff> fmt::Display for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = Self::default_names(self.nvars);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.display_with(&refs))
    }
}

impl<C: Coeff> fmt::Debug for MultiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.nvars, self)
    }
}

impl<C: Coeff> Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $m(self, rhs: MultiPoly<C>) -> MultiPoly<C> {
                (&self).$m(&rhs)
            }
        }
        impl<C: Coeff> $tr<&MultiPoly<C>> for MultiPoly<C> {
            type Output = MultiPoly<C>;
            fn $m(self, rhs: &MultiPoly<C>) -> MultiPoly<C> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Neg for MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        -&self
    }
}

impl ZPoly {
    pub fn from_i64(nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        MultiPoly::from_terms(nvars, terms.iter().map(|(e, c)| (Monomial(e.to_vec()), BigInt::from(*c))))
    }

    /// Max absolute value of the coefficients (0 for the zero polynomial).
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Nonnegative gcd of the coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `self / content`, with lex-leading coefficient made positive.
    pub fn primitive_part(&self) -> ZPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content();
        let p = self.map_coeffs(|x| x / &c);
        p.sign_normalized()
    }

    /// Multiplies by -1 if the lex-leading coefficient is negative.
    pub fn sign_normalized(&self) -> ZPoly {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    pub fn to_rational(&self) -> QPoly {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }

    /// Exact quotient `self / d` if `d` divides `self` in `Z[X]`.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        assert_eq!(self.nvars, d.nvars);
        let (lm, lc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = ZPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm)?;
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    pub fn divides(&self, other: &ZPoly) -> bool {
        other.div_exact(self).is_some()
    }
}

impl QPoly {
    /// Clears denominators: returns `(n, p)` with `n > 0` and `p = n * self` in `Z[X]`,
    /// `p` having content equal to `n * content(self)`.
    pub fn clear_denominators(&self) -> (BigInt, ZPoly) {
        let l = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let p = self.map_coeffs(|c| (c * BigRational::from_integer(l.clone())).to_integer());
        (l, p)
    }

    /// Primitive integer polynomial proportional to `self`.
    pub fn primitive_integer(&self) -> ZPoly {
        self.clear_denominators().1.primitive_part()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn to_integer(&self) -> Option<ZPoly> {
        if !self.is_integral() {
            return None;
        }
        Some(self.map_coeffs(|c| c.to_integer()))
    }
}
