//! Arithmetic in `Q[Y]/(g)` for an irreducible `g`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::upoly::{UQ, UZ};

#[derive(Clone, Debug, PartialEq)]
pub struct NumberField {
    modulus: UQ,
    defining: UZ,
}

impl NumberField {
    /// `g` must be irreducible over `Q`; it is not checked here.
    pub fn new(g: &UZ) -> Self {
        assert!(g.deg() >= 1, "defining polynomial must have positive degree");
        NumberField { modulus: g.to_q().monic(), defining: g.primitive() }
    }

    pub fn rationals() -> Self {
        NumberField::new(&UZ::from_i64(&[0, 1]))
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn defining(&self) -> &UZ {
        &self.defining
    }

    pub fn reduce(&self, a: &UQ) -> UQ {
        a.rem(&self.modulus)
    }

    pub fn from_rational(&self, q: BigRational) -> UQ {
        UQ::constant(q)
    }

    pub fn gen(&self) -> UQ {
        self.reduce(&UQ::x())
    }

    pub fn add(&self, a: &UQ, b: &UQ) -> UQ {
        a + b
    }

    pub fn sub(&self, a: &UQ, b: &UQ) -> UQ {
        a - b
    }

    pub fn mul(&self, a: &UQ, b: &UQ) -> UQ {
        self.reduce(&(a * b))
    }

    pub fn inv(&self, a: &UQ) -> Option<UQ> {
        let a = self.reduce(a);
        if a.is_zero() {
            return None;
        }
        let (g, s, _) = a.xgcd(&self.modulus);
        debug_assert!(g.deg() == 0);
        Some(self.reduce(&s))
    }

    pub fn div(&self, a: &UQ, b: &UQ) -> Option<UQ> {
        Some(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &UQ, e: i64) -> Option<UQ> {
        let base = if e < 0 { self.inv(a)? } else { self.reduce(a) };
        let mut k = e.unsigned_abs();
        let mut acc = UQ::one();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            k >>= 1;
        }
        Some(acc)
    }

    /// Matrix of multiplication by `a` in the basis `1, Y, .., Y^(d-1)` (columns are images).
    pub fn mul_matrix(&self, a: &UQ) -> Vec<Vec<BigRational>> {
        let d = self.degree();
        let mut m = vec![vec![BigRational::zero(); d]; d];
        let mut col = self.reduce(a);
        for j in 0..d {
            for i in 0..d {
                m[i][j] = col.coeff(i);
            }
            col = self.mul(&col, &UQ::x());
        }
        m
    }

    /// Characteristic polynomial of multiplication by `a` (monic, degree `d`).
    pub fn charpoly(&self, a: &UQ) -> UQ {
        charpoly(&self.mul_matrix(a))
    }

    /// Minimal polynomial of `a` as a primitive integer polynomial.
    pub fn minpoly(&self, a: &UQ) -> UZ {
        let cp = self.charpoly(a).to_primitive_z();
        cp.squarefree_part()
    }

    pub fn norm(&self, a: &UQ) -> BigRational {
        let m = self.mul_matrix(a);
        let d = m.len();
        let cp = charpoly(&m);
        let c0 = cp.coeff(0);
        if d % 2 == 1 {
            -c0
        } else {
            c0
        }
    }

    pub fn trace(&self, a: &UQ) -> BigRational {
        let m = self.mul_matrix(a);
        (0..m.len()).fold(BigRational::zero(), |acc, i| acc + &m[i][i])
    }

    pub fn is_rational(&self, a: &UQ) -> bool {
        self.reduce(a).deg() == 0
    }

    /// Polynomials over the field, dense low-to-high with no trailing zeros.
    pub fn kpoly_trim(&self, mut a: Vec<UQ>) -> Vec<UQ> {
        for c in a.iter_mut() {
            *c = self.reduce(c);
        }
        while a.last().map_or(false, |c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn kpoly_rem(&self, a: &[UQ], d: &[UQ]) -> Vec<UQ> {
        assert!(!d.is_empty(), "division by zero polynomial");
        let mut r = self.kpoly_trim(a.to_vec());
        let dd = d.len() - 1;
        let inv = self.inv(&d[dd]).expect("nonzero leading coefficient");
        while r.len() > dd {
            let top = r.len() - 1;
            let t = self.mul(&r[top], &inv);
            for (j, b) in d.iter().enumerate() {
                r[top - dd + j] = self.sub(&r[top - dd + j], &self.mul(&t, b));
            }
            r = self.kpoly_trim(r);
        }
        r
    }

    /// Monic gcd of polynomials over the field (empty for two zeros).
    pub fn kpoly_gcd(&self, a: &[UQ], b: &[UQ]) -> Vec<UQ> {
        let (mut a, mut b) = (self.kpoly_trim(a.to_vec()), self.kpoly_trim(b.to_vec()));
        while !b.is_empty() {
            let r = self.kpoly_rem(&a, &b);
            a = b;
            b = r;
        }
        if let Some(lc) = a.last().cloned() {
            let inv = self.inv(&lc).expect("nonzero");
            a = a.iter().map(|c| self.mul(c, &inv)).collect();
        }
        a
    }

    pub fn kpoly_derivative(&self, a: &[UQ]) -> Vec<UQ> {
        let out = a.iter().enumerate().skip(1).map(|(i, c)| c.scale(&BigRational::from_integer(i.into()))).collect();
        self.kpoly_trim(out)
    }

    /// Squarefree part `a / gcd(a, a')`, monic.
    pub fn kpoly_squarefree(&self, a: &[UQ]) -> Vec<UQ> {
        let a = self.kpoly_trim(a.to_vec());
        if a.len() <= 1 {
            return a;
        }
        let g = self.kpoly_gcd(&a, &self.kpoly_derivative(&a));
        self.kpoly_div(&a, &g)
    }

    /// Exact quotient (the remainder is discarded).
    pub fn kpoly_div(&self, a: &[UQ], d: &[UQ]) -> Vec<UQ> {
        let mut r = self.kpoly_trim(a.to_vec());
        let dd = d.len() - 1;
        if r.len() <= dd {
            return Vec::new();
        }
        let inv = self.inv(&d[dd]).expect("nonzero leading coefficient");
        let mut q = vec![UQ::zero(); r.len() - dd];
        while r.len() > dd {
            let top = r.len() - 1;
            let t = self.mul(&r[top], &inv);
            for (j, b) in d.iter().enumerate() {
                r[top - dd + j] = self.sub(&r[top - dd + j], &self.mul(&t, b));
            }
            q[top - dd] = t;
            r = self.kpoly_trim(r);
        }
        self.kpoly_trim(q)
    }
}

/// Faddeev-LeVerrier characteristic polynomial `det(X I - M)`.
pub fn charpoly(m: &[Vec<BigRational>]) -> UQ {
    let n = m.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = M * M_{k-1} + c_{n-k+1} I, with M_0 = 0
        let mut next = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for l in 0..n {
                    if !m[i][l].is_zero() && !mk[l][j].is_zero() {
                        acc += &m[i][l] * &mk[l][j];
                    }
                }
                next[i][j] = acc;
            }
            next[i][i] += &coeffs[n - k + 1];
        }
        mk = next;
        let mut tr = BigRational::zero();
        for i in 0..n {
            for l in 0..n {
                if !m[i][l].is_zero() && !mk[l][i].is_zero() {
                    tr += &m[i][l] * &mk[l][i];
                }
            }
        }
        coeffs[n - k] = -tr / BigRational::from_integer(k.into());
    }
    UQ::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_field() {
        let k = NumberField::new(&UZ::from_i64(&[-2, 0, 1]));
        let y = k.gen();
        assert_eq!(k.mul(&y, &y), UQ::constant(BigRational::from_integer(2.into())));
        let a = &y + &UQ::one();
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), UQ::one());
        assert_eq!(k.minpoly(&a), UZ::from_i64(&[-1, -2, 1]));
        assert_eq!(k.norm(&a), BigRational::from_integer((-1).into()));
        assert_eq!(k.minpoly(&UQ::constant(BigRational::from_integer(3.into()))), UZ::from_i64(&[-3, 1]));
    }

    #[test]
    fn charpoly_matches_companion() {
        let g = UZ::from_i64(&[5, -3, 0, 1]);
        let k = NumberField::new(&g);
        assert_eq!(k.charpoly(&k.gen()).to_primitive_z(), g);
    }
}
