//! Factorization in `Z[X]` by recombination of certified complex roots.
//!
//! A factor `h` of a primitive `p` satisfies `lc(p) * prod_{a in T} (X - a) = lc(p)/lc(h) * h`
//! for the set `T` of its roots, so every candidate subset is rounded to an
//! integer polynomial and tested by exact division. Discs are refined until
//! the rounding is guaranteed correct, which makes a failed search a proof of
//! irreducibility.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::roots::{isolate_roots, refine_disc, RootDisc};
use crate::upoly::UZ;

/// Irreducible factors with multiplicity; the integer content is returned separately.
pub fn factor_z(p: &UZ) -> (BigInt, Vec<(UZ, u32)>) {
    let (c, parts) = squarefree_decomposition_exact(p);
    let mut out = Vec::new();
    for (f, e) in parts {
        for g in factor_squarefree(&f) {
            out.push((g, e));
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
    (c, out)
}

/// Squarefree decomposition by repeated gcd with the derivative (exact over Z).
pub fn squarefree_decomposition_exact(p: &UZ) -> (BigInt, Vec<(UZ, u32)>) {
    let c = if p.lc().is_negative() { -p.content() } else { p.content() };
    if p.deg() == 0 {
        return (p.coeff(0), Vec::new());
    }
    let mut f = p.primitive();
    let mut out = Vec::new();
    let mut e = 1u32;
    // f = prod g_i^i; s = squarefree part of f; f / s has exponents lowered by one
    while f.deg() > 0 {
        let s = f.squarefree_part();
        let rest = f.div_exact(&s).expect("squarefree part divides");
        let s_next = if rest.deg() > 0 { rest.squarefree_part() } else { UZ::one() };
        let layer = s.div_exact(&s_next).expect("nested squarefree parts");
        if layer.deg() > 0 {
            out.push((layer.primitive(), e));
        }
        f = rest.primitive();
        e += 1;
    }
    (c, out)
}

pub fn is_irreducible(p: &UZ) -> bool {
    p.deg() >= 1 && p.content().is_one() && p.is_squarefree() && factor_squarefree(p).len() == 1
}

/// Irreducible factors of a squarefree polynomial of positive degree, primitive with positive leading coefficient.
pub fn factor_squarefree(p: &UZ) -> Vec<UZ> {
    let p = p.primitive();
    let n = p.deg();
    if n <= 1 {
        return vec![p];
    }
    let mut rest = p.clone();
    let mut out = Vec::new();
    // rational roots first; they are cheap and shrink the recombination
    let discs = certified_discs(&p);
    let mut remaining: Vec<RootDisc> = Vec::new();
    for d in discs {
        if let Some(lin) = rational_root_factor(&rest, &d) {
            rest = rest.div_exact(&lin).expect("linear factor divides");
            out.push(lin);
        } else {
            remaining.push(d);
        }
    }
    if rest.deg() > 0 {
        out.extend(recombine(&rest, remaining));
    }
    out.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
    out
}

fn certified_discs(p: &UZ) -> Vec<RootDisc> {
    let discs = isolate_roots(p);
    refine_for_rounding(p, discs)
}

fn refine_for_rounding(p: &UZ, mut discs: Vec<RootDisc>) -> Vec<RootDisc> {
    loop {
        if rounding_error_bound(&p.lc(), &discs) < 0.2 {
            return discs;
        }
        discs = discs
            .iter()
            .map(|d| {
                let t = if d.radius.is_zero() { d.radius.clone() } else { &d.radius * BigRational::new(1.into(), BigInt::from(1u64 << 40)) };
                refine_disc(p, d, &t)
            })
            .collect();
    }
}

// Bound on |coefficient of lc * prod (X - a_i)| error over any subset, from disc radii and f64 rounding.
fn rounding_error_bound(lc: &BigInt, discs: &[RootDisc]) -> f64 {
    let lcf = lc.to_f64().unwrap_or(f64::INFINITY).abs();
    let n = discs.len();
    let mut with_r = vec![1.0f64];
    let mut without = vec![1.0f64];
    for d in discs {
        let a = d.center.abs_upper();
        let r = d.radius_f64() * (1.0 + 1e-9);
        with_r = mul_linear(&with_r, a + r);
        without = mul_linear(&without, a);
    }
    let u = f64::EPSILON;
    (0..=n).map(|k| lcf * ((with_r[k] - without[k]) + 4.0 * (n as f64 + 2.0) * u * with_r[k])).fold(0.0, f64::max)
}

fn mul_linear(c: &[f64], a: f64) -> Vec<f64> {
    let mut out = vec![0.0; c.len() + 1];
    for (i, v) in c.iter().enumerate() {
        out[i] += v;
        out[i + 1] += v * a;
    }
    out
}

fn rational_root_factor(p: &UZ, d: &RootDisc) -> Option<UZ> {
    if d.center.im.abs() > d.radius {
        return None;
    }
    let c = d.approx();
    let lc = p.lc().to_f64()?;
    let num = (c.re * lc).round();
    if !num.is_finite() {
        return None;
    }
    let lin = UZ::new(vec![BigInt::from(-(num as i128)), p.lc()]).primitive();
    p.div_exact(&lin).map(|_| lin)
}

fn recombine(p: &UZ, discs: Vec<RootDisc>) -> Vec<UZ> {
    let mut p = p.primitive();
    let mut roots: Vec<Complex64> = discs.iter().map(|d| d.approx()).collect();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= roots.len() {
        let mut found = false;
        let lcf = p.lc().to_f64().unwrap_or(f64::INFINITY);
        for subset in Subsets::new(roots.len(), size) {
            let cand = candidate(&subset, &roots, lcf);
            let Some(h) = cand else { continue };
            if let Some(q) = p.div_exact(&h) {
                out.push(h.primitive());
                p = q.primitive();
                let keep: Vec<Complex64> =
                    roots.iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, z)| *z).collect();
                roots = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if p.deg() > 0 {
        out.push(p);
    }
    out
}

fn candidate(subset: &[usize], roots: &[Complex64], lc: f64) -> Option<UZ> {
    let mut c = vec![Complex64::new(lc, 0.0)];
    for &i in subset {
        let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
        for (k, v) in c.iter().enumerate() {
            next[k + 1] += v;
            next[k] -= v * roots[i];
        }
        c = next;
    }
    let mut out = Vec::with_capacity(c.len());
    for v in &c {
        if (v.im).abs() > 0.3 || (v.re - v.re.round()).abs() > 0.3 || !v.re.is_finite() {
            return None;
        }
        out.push(BigInt::from(v.re.round() as i128));
    }
    Some(UZ::new(out).primitive())
}

struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let cur = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(c: &[i64]) -> UZ {
        UZ::from_i64(c)
    }

    fn product(fs: &[(UZ, u32)]) -> UZ {
        fs.iter().fold(UZ::one(), |acc, (f, e)| &acc * &f.pow(*e))
    }

    #[test]
    fn factors_products() {
        let p = &(&z(&[-2, 0, 1]) * &z(&[1, 1, 1])) * &z(&[3, 2]);
        let (c, fs) = factor_z(&p);
        assert!(c.is_one());
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs), p);
        assert!(is_irreducible(&z(&[-2, 0, 1])));
        assert!(!is_irreducible(&z(&[-4, 0, 1])));
        // x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2) has no rational roots
        let (_, fs) = factor_z(&z(&[4, 0, 0, 0, 1]));
        assert_eq!(fs.len(), 2);
        assert!(is_irreducible(&z(&[1, 0, 0, 0, 1])));
    }

    #[test]
    fn repeated_factors() {
        let p = &(&z(&[-1, 1]).pow(3) * &z(&[2, 0, 1]).pow(2)).scale(&BigInt::from(-6));
        let (c, fs) = factor_z(&p);
        assert_eq!(c, BigInt::from(-6));
        assert_eq!(fs, vec![(z(&[-1, 1]), 3), (z(&[2, 0, 1]), 2)]);
    }

    #[test]
    fn subsets_enumerate_all() {
        assert_eq!(Subsets::new(5, 2).count(), 10);
        assert_eq!(Subsets::new(4, 0).count(), 1);
    }
}
