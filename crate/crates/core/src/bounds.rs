//! Closed-form bounds as functions returning [`LogValue`] magnitudes.
//!
//! Constants the source leaves as "effectively computable" live in a
//! [`ConstantPack`]; every result that depends on one is conditional on it.

use std::path::Path;

use astro_float::BigFloat;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logvalue::{bf, LogValue};

/// Named stand-ins for unspecified absolute constants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ConstantPack {
    /// `exp O(r)` is read as `exp(C_expO_r * r)`.
    #[serde(rename = "C_expO_r")]
    pub c_exp_o_r: f64,
    /// `exp O(r+s)` is read as `exp(C_expO_rs * (r+s))`.
    #[serde(rename = "C_expO_rs")]
    pub c_exp_o_rs: f64,
    /// `exp O(N log* N)` is read as `exp(C_NlogN * N log* N)`.
    #[serde(rename = "C_NlogN")]
    pub c_n_log_n: f64,
    #[serde(rename = "C_c1")]
    pub c_c1: f64,
    #[serde(rename = "C_c2")]
    pub c_c2: f64,
    /// Multiplier of the height estimate for the reduced representation.
    #[serde(rename = "C_prop36")]
    pub c_prop36: f64,
}

impl Default for ConstantPack {
    fn default() -> Self {
        ConstantPack { c_exp_o_r: 10.0, c_exp_o_rs: 10.0, c_n_log_n: 10.0, c_c1: 10.0, c_c2: 10.0, c_prop36: 10.0 }
    }
}

impl ConstantPack {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in self.entries() {
            if !(v > 1.0) || !v.is_finite() {
                return Err(Error::input(format!("constant {name} must be a finite number > 1, got {v}")));
            }
        }
        Ok(())
    }

    pub fn entries(&self) -> [(&'static str, f64); 6] {
        [
            ("C_expO_r", self.c_exp_o_r),
            ("C_expO_rs", self.c_exp_o_rs),
            ("C_NlogN", self.c_n_log_n),
            ("C_c1", self.c_c1),
            ("C_c2", self.c_c2),
            ("C_prop36", self.c_prop36),
        ]
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: ConstantPack = serde_json::from_str(text).map_err(|e| Error::input(format!("constant pack: {e}")))?;
        p.validate()?;
        Ok(p)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("pack serializes")
    }
}

fn f(v: f64) -> BigFloat {
    bf::from_f64(v)
}

fn u(v: u64) -> BigFloat {
    bf::from_i64(v as i64)
}

fn ln_u(v: u64) -> BigFloat {
    bf::ln(&u(v))
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg.to_string()))
    }
}

/// `exp((2d)^(c1^r) (h+1))`, for solutions of unit equations over a domain with `r` generators.
pub fn thm11_bound(d: u64, h: f64, r: u64, pack: &ConstantPack) -> Result<LogValue> {
    require(d >= 1 && h >= 1.0 && r >= 1, "thm11 needs d, h, r >= 1")?;
    Ok(tower(d, h, &bf::pow(&f(pack.c_c1), &u(r))))
}

/// `exp((2d)^(c2^(r+s)) (h+1))`, for solutions of exponential equations.
pub fn thm13_bound(d: u64, h: f64, r: u64, s: u64, pack: &ConstantPack) -> Result<LogValue> {
    require(d >= 1 && h >= 1.0 && r >= 1, "thm13 needs d, h, r >= 1")?;
    Ok(tower(d, h, &bf::pow(&f(pack.c_c2), &u(r + s))))
}

// exp((2d)^k (h+1)) via ln ln = k ln(2d) + ln(h+1)
fn tower(d: u64, h: f64, k: &BigFloat) -> LogValue {
    let lnln = bf::add(&bf::mul(k, &ln_u(2 * d)), &bf::ln(&f(h + 1.0)));
    LogValue::from_ln_ln(lnln)
}

#[derive(Clone, Debug)]
pub struct Prop36 {
    pub deg: u64,
    /// The height bound itself, `exp(C (2D(q+d1) log*(2D(q+d1)) + D h1))`.
    pub height: LogValue,
}

/// Degree and height caps for the reduced representation of a domain element.
pub fn prop36_bounds(q: u64, big_d: u64, d1: u64, h1: f64, pack: &ConstantPack) -> Result<Prop36> {
    require(big_d >= 1 && d1 >= 1 && h1 >= 1.0, "prop36 needs D, d1, h1 >= 1")?;
    let deg = 4 * q * big_d * big_d * d1;
    let a = u(2 * big_d * (q + d1));
    let inner = bf::add(&bf::mul(&a, &bf::log_star(&a)), &bf::mul(&u(big_d), &f(h1)));
    Ok(Prop36 { deg, height: LogValue::from_ln(bf::mul(&f(pack.c_prop36), &inner)) })
}

/// Constant `c1(d_L, s)` of the S-unit equation estimate, at working precision.
pub fn gyory_yu_c1(d_l: u64, s: u64) -> Result<LogValue> {
    require(d_l >= 1 && s >= 1, "gyory_yu_c1 needs d_L, s >= 1")?;
    let pre = bf::max(&bf::from_i64(1), &bf::div(&bf::pi(), &u(d_l)));
    let s_pow = bf::pow(&u(s), &bf::add(&u(2 * s), &bf::parse("3.5")));
    let two_pow = bf::pow(&u(2), &u(7 * s + 27));
    let log2s = ln_u(2 * s);
    let dl_pow = bf::pow(&u(d_l), &u(2 * (s + 1)));
    let ls = bf::log_star(&u(2 * d_l));
    let ls3 = bf::mul(&bf::mul(&ls, &ls), &ls);
    let v = [s_pow, two_pow, log2s, dl_pow, ls3].iter().fold(pre, |acc, x| bf::mul(&acc, x));
    Ok(LogValue::from_bigfloat(&v))
}

/// `c1 P R_S (1 + log* R_S / log P)`.
pub fn gyory_yu_bound(c1: &LogValue, p: &BigFloat, r_s: &BigFloat) -> Result<LogValue> {
    require(bf::cmp(p, &u(2)) != std::cmp::Ordering::Less && r_s.is_positive(), "gyory_yu_bound needs P >= 2, R_S > 0")?;
    let factor = bf::add(&u(1), &bf::div(&bf::log_star(r_s), &bf::ln(p)));
    Ok(c1.mul(&LogValue::from_bigfloat(&bf::mul(&bf::mul(p, r_s), &factor))))
}

/// `|Delta_L|^(1/2) (log* |Delta_L|)^(d_L - 1) (log* Q)^s`.
pub fn regulator_bound(disc: &num_bigint::BigInt, d_l: u64, big_q: &BigFloat, s: u64) -> Result<LogValue> {
    use num_traits::Signed;
    let a = disc.abs();
    require(a >= 1.into() && d_l >= 1, "regulator_bound needs |Delta_L| >= 1")?;
    require(bf::cmp(big_q, &u(2)) != std::cmp::Ordering::Less, "regulator_bound needs Q >= 2")?;
    let af = bf::from_bigint(&a);
    let v = bf::mul(
        &bf::mul(&bf::sqrt(&af), &bf::pow(&bf::log_star(&af), &u(d_l - 1))),
        &bf::pow(&bf::log_star(big_q), &u(s)),
    );
    Ok(LogValue::from_bigfloat(&v))
}

/// Per-index exponent bounds for a multiplicative relation among `s+1` numbers of degree `d`.
///
/// `58 (s! e^s / s^s) d^(s+1) log d * prod_j h_j / h_i`. At `d = 1` the factor
/// `log d` vanishes and the formula is unusable, reported as [`Error::DegreeOne`].
pub fn loher_masser_bound(s: u64, d: u64, heights: &[LogValue]) -> Result<Vec<LogValue>> {
    require(s >= 1, "loher_masser_bound needs s >= 1")?;
    if heights.len() as u64 != s + 1 {
        return Err(Error::input(format!("expected {} heights, got {}", s + 1, heights.len())));
    }
    if heights.iter().any(|h| h.is_zero()) {
        return Err(Error::Precondition("all heights must be positive".into()));
    }
    if d <= 1 {
        return Err(Error::DegreeOne);
    }
    let fact = (1..=s).fold(bf::from_i64(1), |acc, k| bf::mul(&acc, &u(k)));
    let e_s = bf::exp(&u(s));
    let s_s = bf::pow(&u(s), &u(s));
    let head = [bf::div(&bf::mul(&fact, &e_s), &s_s), bf::pow(&u(d), &u(s + 1)), ln_u(d)]
        .iter()
        .fold(u(58), |acc, x| bf::mul(&acc, x));
    let head = LogValue::from_bigfloat(&head);
    let prod = heights.iter().fold(LogValue::one(), |acc, h| acc.mul(h));
    Ok(heights.iter().map(|h| head.mul(&prod).div(h)).collect())
}

#[derive(Clone, Debug)]
pub struct Lemma72 {
    /// `(2d)^(exp(C (r+s))) (h+1)^s`.
    pub bound: LogValue,
    /// Same with exponent `s - 1` on `(h+1)`.
    pub v: LogValue,
}

pub fn lemma72_bound(d: u64, h: f64, r: u64, s: u64, pack: &ConstantPack) -> Result<Lemma72> {
    require(d >= 1 && h >= 1.0, "lemma72 needs d, h >= 1")?;
    let base = bf::mul(&bf::exp(&bf::mul(&f(pack.c_exp_o_rs), &u(r + s))), &ln_u(2 * d));
    let lh = bf::ln(&f(h + 1.0));
    let bound = LogValue::from_ln(bf::add(&base, &bf::mul(&u(s), &lh)));
    let v = LogValue::from_ln(bf::add(&base, &bf::mul(&u(s.saturating_sub(1)), &lh)));
    Ok(Lemma72 { bound, v })
}

/// `(2d)^(exp(C r)) (h+1)`: degree and height cap for minimal polynomials and
/// canonical representations over a domain with `r` generators.
pub fn reduction_cap(d: u64, h: f64, r: u64, pack: &ConstantPack) -> Result<LogValue> {
    require(d >= 1 && h >= 0.0, "reduction cap needs d >= 1, h >= 0")?;
    let base = bf::mul(&bf::exp(&bf::mul(&f(pack.c_exp_o_r), &u(r))), &ln_u(2 * d));
    Ok(LogValue::from_ln(bf::add(&base, &bf::ln(&f(h + 1.0)))))
}

/// `(2d)^(exp(C r log* r)) (h+1)`: cap for lifted representatives.
pub fn lift_cap(d: u64, h: f64, r: u64, pack: &ConstantPack) -> Result<LogValue> {
    require(d >= 1 && h >= 0.0, "lift cap needs d >= 1, h >= 0")?;
    let rf = u(r.max(1));
    let e = bf::exp(&bf::mul(&f(pack.c_n_log_n), &bf::mul(&rf, &bf::log_star(&rf))));
    Ok(LogValue::from_ln(bf::add(&bf::mul(&e, &ln_u(2 * d)), &bf::ln(&f(h + 1.0)))))
}

/// Caps from the effective ideal membership and linear-system estimates.
#[derive(Clone, Debug)]
pub struct Section2Caps {
    /// `(2md)^(2^N)`.
    pub hermann_deg: LogValue,
    /// `(2md)^(6^N) (h+1)`.
    pub cor23_height: LogValue,
    /// `(2d)^(exp(C N log* N)) (h+1)`.
    pub prop25_deg: LogValue,
    /// `(2d)^(exp(C N log* N)) (h+1)^(N+1)`.
    pub prop25_height: LogValue,
}

pub fn section2_caps(m: u64, d: u64, h: f64, n: u64, pack: &ConstantPack) -> Result<Section2Caps> {
    require(m >= 1 && d >= 1 && h >= 1.0 && n >= 1, "caps need m, d, h, N >= 1")?;
    let l2md = ln_u(2 * m * d);
    let hermann_deg = LogValue::from_ln(bf::mul(&bf::pow(&u(2), &u(n)), &l2md));
    let lh = bf::ln(&f(h + 1.0));
    let cor23_height = LogValue::from_ln(bf::add(&bf::mul(&bf::pow(&u(6), &u(n)), &l2md), &lh));
    let nf = u(n);
    let e = bf::exp(&bf::mul(&f(pack.c_n_log_n), &bf::mul(&nf, &bf::log_star(&nf))));
    let base = bf::mul(&e, &ln_u(2 * d));
    let prop25_deg = LogValue::from_ln(bf::add(&base, &lh));
    let prop25_height = LogValue::from_ln(bf::add(&base, &bf::mul(&u(n + 1), &lh)));
    Ok(Section2Caps { hermann_deg, cor23_height, prop25_deg, prop25_height })
}

/// `q D d1 + sum_i sums_i / Delta_i`; inputs are `(Delta_i, conjugate height sum_i)`.
pub fn lemma44_bound(q: u64, big_d: u64, d1: u64, sums: &[(u64, f64)]) -> Result<LogValue> {
    if sums.iter().any(|&(delta, s)| delta == 0 || s < 0.0) {
        return Err(Error::input("each Delta_i must be positive and each sum nonnegative"));
    }
    let mut acc = u(q * big_d * d1);
    for &(delta, s) in sums {
        acc = bf::add(&acc, &bf::div(&f(s), &u(delta)));
    }
    Ok(LogValue::from_bigfloat(&acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pack(c: f64) -> ConstantPack {
        ConstantPack { c_exp_o_r: c, c_exp_o_rs: c, c_n_log_n: c, c_c1: c, c_c2: c, c_prop36: c }
    }

    fn lnln(v: &LogValue) -> f64 {
        bf::to_f64(&v.ln_ln().unwrap())
    }

    #[test]
    fn towers() {
        let p = pack(2.0);
        assert!((lnln(&thm11_bound(1, 1.0, 1, &p).unwrap()) - 8f64.ln()).abs() < 1e-12);
        assert!((lnln(&thm11_bound(2, 1.0, 1, &p).unwrap()) - 32f64.ln()).abs() < 1e-12);
        assert!((lnln(&thm11_bound(2, 3.0, 2, &p).unwrap()) - 1024f64.ln()).abs() < 1e-12);
        assert!((lnln(&thm13_bound(1, 1.0, 1, 1, &p).unwrap()) - 32f64.ln()).abs() < 1e-12);
        assert!((lnln(&thm13_bound(2, 1.0, 1, 1, &p).unwrap()) - 512f64.ln()).abs() < 1e-12);
        assert!(thm11_bound(1, 1.0, 0, &p).is_err());
        // default pack stays finite in log-log space
        let big = thm13_bound(5, 10.0, 4, 4, &ConstantPack::default()).unwrap();
        assert!(lnln(&big) > 1e8);
    }

    #[test]
    fn prop36_examples() {
        assert_eq!(prop36_bounds(1, 1, 2, 1.0, &pack(10.0)).unwrap().deg, 8);
        assert_eq!(prop36_bounds(1, 2, 1, 1.0, &pack(10.0)).unwrap().deg, 16);
        assert_eq!(prop36_bounds(0, 3, 2, 1.0, &pack(10.0)).unwrap().deg, 0);
        let r = prop36_bounds(2, 2, 3, 1.0, &pack(10.0)).unwrap();
        assert_eq!(r.deg, 96);
        let want = 10.0 * (20.0 * 20f64.ln() + 2.0);
        assert!((r.height.ln_f64() - want).abs() < 1e-9);
    }

    #[test]
    fn gyory_yu_examples() {
        let c = gyory_yu_c1(1, 1).unwrap();
        assert!((c.to_f64() / 3.742e10 - 1.0).abs() < 1e-3);
        let c21 = gyory_yu_c1(2, 1).unwrap().to_f64();
        let want = std::f64::consts::PI / 2.0 * 2f64.powi(34) * 2f64.ln() * 16.0 * 4f64.ln().powi(3);
        assert!((c21 / want - 1.0).abs() < 1e-12);
        let b = gyory_yu_bound(&LogValue::one(), &u(2), &u(1)).unwrap().to_f64();
        assert!((b - 2.0 * (1.0 + 1.0 / 2f64.ln())).abs() < 1e-12);
        let b = gyory_yu_bound(&LogValue::from_u64(2), &u(2), &bf::exp(&u(1))).unwrap().to_f64();
        assert!((b - 4.0 * std::f64::consts::E * (1.0 + 1.0 / 2f64.ln())).abs() < 1e-9);
    }

    #[test]
    fn regulator_examples() {
        let v = regulator_bound(&(-4).into(), 2, &u(2), 2).unwrap().to_f64();
        assert!((v - 2.0 * 4f64.ln()).abs() < 1e-12);
        assert!((regulator_bound(&1.into(), 1, &u(2), 1).unwrap().to_f64() - 1.0).abs() < 1e-12);
        let v = regulator_bound(&(-3).into(), 2, &u(3), 2).unwrap().to_f64();
        assert!((v - 3f64.sqrt() * 3f64.ln().powi(3)).abs() < 1e-12);
    }

    #[test]
    fn loher_masser_examples() {
        let l2 = LogValue::from_f64(2f64.ln());
        let b = loher_masser_bound(1, 2, &[l2.clone(), l2.clone()]).unwrap();
        let want = 58.0 * std::f64::consts::E * 4.0 * 2f64.ln() * 2f64.ln();
        assert!((b[0].to_f64() - want).abs() < 1e-9 && (want - 302.9).abs() < 0.1);
        let l4 = LogValue::from_f64(4f64.ln());
        let b = loher_masser_bound(1, 2, &[l2.clone(), l4]).unwrap();
        assert!((b[0].to_f64() / b[1].to_f64() - 2.0).abs() < 1e-12);
        assert!(matches!(loher_masser_bound(1, 1, &[l2.clone(), l2]), Err(Error::DegreeOne)));
    }

    #[test]
    fn lemma72_and_caps() {
        let r = lemma72_bound(1, 1.0, 1, 1, &pack(1.0)).unwrap();
        let e = std::f64::consts::E;
        assert!((r.bound.ln_f64() - (e * e * 2f64.ln() + 2f64.ln())).abs() < 1e-9);
        assert!((r.v.ln_f64() - e * e * 2f64.ln()).abs() < 1e-9);
        let r = lemma72_bound(2, 1.0, 2, 2, &pack(1.0)).unwrap();
        assert!((r.bound.ln_f64() - (e.powi(4) * 4f64.ln() + 2.0 * 2f64.ln())).abs() < 1e-9);
        for (m, d, n) in [(1, 2, 1), (2, 1, 1), (1, 1, 2)] {
            let c = section2_caps(m, d, 1.0, n, &pack(10.0)).unwrap();
            assert!((c.hermann_deg.to_f64() - 16.0).abs() < 1e-9);
        }
        let c = section2_caps(1, 1, 1.0, 1, &pack(10.0)).unwrap();
        assert!((c.cor23_height.ln_f64() - (6.0 * 2f64.ln() + 2f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn lemma44_examples() {
        assert!((lemma44_bound(1, 1, 1, &[(1, 0.0)]).unwrap().to_f64() - 1.0).abs() < 1e-12);
        assert!((lemma44_bound(1, 2, 1, &[(2, 6.0)]).unwrap().to_f64() - 5.0).abs() < 1e-12);
        assert!((lemma44_bound(2, 2, 3, &[]).unwrap().to_f64() - 12.0).abs() < 1e-12);
    }

    #[test]
    fn pack_json() {
        let p = ConstantPack::from_json(r#"{"C_c1": 3.5}"#).unwrap();
        assert_eq!(p.c_c1, 3.5);
        assert_eq!(p.c_c2, 10.0);
        assert!(ConstantPack::from_json(r#"{"C_c1": 1.0}"#).is_err());
        assert!(ConstantPack::from_json(r#"{"C_zz": 3}"#).is_err());
    }
}
