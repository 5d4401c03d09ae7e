//! Exact LLL reduction and nearest-plane rounding for small integer lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_q(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |s, (x, y)| s + x * y)
}

fn to_q(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>, Vec<BigRational>) {
    let k = b.len();
    let mut bs: Vec<Vec<BigRational>> = Vec::with_capacity(k);
    let mut mu = vec![vec![BigRational::zero(); k]; k];
    let mut norms = Vec::with_capacity(k);
    for i in 0..k {
        let bi = to_q(&b[i]);
        let mut v = bi.clone();
        for j in 0..i {
            mu[i][j] = if norms[j] == BigRational::zero() { BigRational::zero() } else { dot_q(&bi, &bs[j]) / &norms[j] };
            for (x, y) in v.iter_mut().zip(&bs[j]) {
                *x = &*x - &mu[i][j] * y;
            }
        }
        norms.push(dot_q(&v, &v));
        bs.push(v);
    }
    (bs, mu, norms)
}

fn round(q: &BigRational) -> BigInt {
    let two = BigInt::from(2);
    (q.numer() * &two + q.denom()).div_floor(&(q.denom() * &two))
}

/// LLL-reduces a basis of linearly independent integer vectors (delta = 3/4).
pub fn lll(mut b: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let k = b.len();
    if k <= 1 {
        return b;
    }
    let delta = BigRational::new(3.into(), 4.into());
    let (mut _bs, mut mu, mut norms) = gram_schmidt(&b);
    let mut i = 1;
    let mut guard = 0usize;
    while i < k {
        guard += 1;
        if guard > 100_000 {
            break;
        }
        for j in (0..i).rev() {
            let r = round(&mu[i][j]);
            if !r.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[i].iter_mut().zip(&bj) {
                    *x -= &r * y;
                }
                let rq = BigRational::from_integer(r);
                for l in 0..j {
                    mu[i][l] = &mu[i][l] - &rq * &mu[j][l];
                }
                mu[i][j] = &mu[i][j] - &rq;
            }
        }
        let lhs = &norms[i] + &mu[i][i - 1] * &mu[i][i - 1] * &norms[i - 1];
        if lhs >= &delta * &norms[i - 1] {
            i += 1;
        } else {
            b.swap(i, i - 1);
            let gs = gram_schmidt(&b);
            _bs = gs.0;
            mu = gs.1;
            norms = gs.2;
            i = (i - 1).max(1);
        }
    }
    b
}

fn max_abs(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
}

/// Moves `t` close to the lattice origin coset representative of small max-norm:
/// nearest-plane rounding against the reduced basis, then greedy `+-b_j` steps.
pub fn reduce_against(t: &[BigInt], basis: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut t = t.to_vec();
    if basis.is_empty() {
        return t;
    }
    let (bs, _, norms) = gram_schmidt(basis);
    for j in (0..basis.len()).rev() {
        if norms[j].is_zero() {
            continue;
        }
        let c = round(&(dot_q(&to_q(&t), &bs[j]) / &norms[j]));
        if !c.is_zero() {
            for (x, y) in t.iter_mut().zip(&basis[j]) {
                *x -= &c * y;
            }
        }
    }
    let mut best = max_abs(&t);
    let mut improved = true;
    while improved {
        improved = false;
        for bj in basis {
            for sign in [BigInt::one(), -BigInt::one()] {
                let cand: Vec<BigInt> = t.iter().zip(bj).map(|(x, y)| x + &sign * y).collect();
                let m = max_abs(&cand);
                if m < best || (m == best && dot(&cand, &cand) < dot(&t, &t)) {
                    best = m;
                    t = cand;
                    improved = true;
                }
            }
        }
    }
    t
}
