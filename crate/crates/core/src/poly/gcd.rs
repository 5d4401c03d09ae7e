use num_integer::Integer;

use super::{Monomial, ZPoly};

/// gcd in `Z[X1..Xn]`, normalized so the lex-leading coefficient is positive.
///
/// Content/primitive-part recursion on the highest variable that occurs,
/// with a primitive pseudo-remainder sequence for the primitive parts.
pub fn multipoly_gcd(f: &ZPoly, g: &ZPoly) -> ZPoly {
    assert_eq!(f.nvars(), g.nvars());
    if f.is_zero() {
        return g.sign_normalized();
    }
    if g.is_zero() {
        return f.sign_normalized();
    }
    let n = f.nvars();
    let top = (0..n).rev().find(|&v| f.degree_in(v).unwrap_or(0) > 0 || g.degree_in(v).unwrap_or(0) > 0);
    let Some(k) = top else {
        let c = f.constant_term().gcd(&g.constant_term());
        return ZPoly::constant(n, c);
    };
    let cf = content_in_last(f, k);
    let cg = content_in_last(g, k);
    let pf = f.div_exact(&cf).expect("content divides");
    let pg = g.div_exact(&cg).expect("content divides");
    let c = multipoly_gcd(&cf, &cg);
    let (mut a, mut b) = if pf.degree_in(k) >= pg.degree_in(k) { (pf, pg) } else { (pg, pf) };
    loop {
        let r = pseudo_rem(&a, &b, k);
        if r.is_zero() {
            break;
        }
        if r.degree_in(k).unwrap_or(0) == 0 {
            b = ZPoly::one(n);
            break;
        }
        a = b;
        let cr = content_in_last(&r, k);
        b = r.div_exact(&cr).expect("content divides");
    }
    (&c * &b).sign_normalized()
}

/// gcd of the coefficients of `p` viewed as a polynomial in variable `k`.
pub fn content_in_last(p: &ZPoly, k: usize) -> ZPoly {
    let mut g = ZPoly::zero(p.nvars());
    for c in p.coeffs_in(k) {
        if c.is_zero() {
            continue;
        }
        g = multipoly_gcd(&g, &c);
        if g.is_constant() && g.constant_term() == num_bigint::BigInt::from(1) {
            break;
        }
    }
    // keep sign of the actual polynomial content positive
    g.sign_normalized()
}

fn pseudo_rem(a: &ZPoly, b: &ZPoly, k: usize) -> ZPoly {
    let n = a.nvars();
    let db = b.degree_in(k).unwrap_or(0);
    let bc = b.coeffs_in(k);
    let lb = bc[db as usize].clone();
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(k).unwrap_or(0);
        if dr < db {
            break;
        }
        let lr = r.coeffs_in(k)[dr as usize].clone();
        let mut shift = vec![0u32; n];
        shift[k] = dr - db;
        let t = (&lr * b).mul_monomial(&Monomial(shift), &num_bigint::BigInt::from(1));
        r = &(&lb * &r) - &t;
    }
    r
}
