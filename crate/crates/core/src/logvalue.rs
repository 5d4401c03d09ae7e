//! Extended-range nonnegative magnitudes kept in log space.
//!
//! A [`LogValue`] stores `ln x` as a big float, or `ln ln x` once `ln x` itself
//! no longer fits the float exponent range. Values like `exp((2d)^(c^r)(h+1))`
//! are therefore never materialized.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Working precision in bits (about 115 decimal digits).
pub const PREC: usize = 384;
const RM: RoundingMode = RoundingMode::ToEven;
/// Above this `ln x` the value is stored one level higher.
const LN_LIMIT_LOG2: i64 = 1 << 28;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants"));
}

pub(crate) fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Big-float helpers at the crate precision.
pub mod bf {
    use super::*;

    pub fn from_i64(v: i64) -> BigFloat {
        BigFloat::from_i64(v, PREC)
    }

    pub fn from_f64(v: f64) -> BigFloat {
        BigFloat::from_f64(v, PREC)
    }

    pub fn from_bigint(v: &BigInt) -> BigFloat {
        with_consts(|cc| BigFloat::parse(&v.to_string(), Radix::Dec, PREC, RM, cc))
    }

    pub fn from_ratio(v: &BigRational) -> BigFloat {
        from_bigint(v.numer()).div(&from_bigint(v.denom()), PREC, RM)
    }

    pub fn parse(s: &str) -> BigFloat {
        with_consts(|cc| BigFloat::parse(s, Radix::Dec, PREC, RM, cc))
    }

    pub fn add(a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, PREC, RM)
    }
    pub fn sub(a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, PREC, RM)
    }
    pub fn mul(a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, PREC, RM)
    }
    pub fn div(a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, PREC, RM)
    }
    pub fn ln(a: &BigFloat) -> BigFloat {
        with_consts(|cc| a.ln(PREC, RM, cc))
    }
    pub fn exp(a: &BigFloat) -> BigFloat {
        with_consts(|cc| a.exp(PREC, RM, cc))
    }
    pub fn sqrt(a: &BigFloat) -> BigFloat {
        a.sqrt(PREC, RM)
    }
    pub fn pow(a: &BigFloat, e: &BigFloat) -> BigFloat {
        with_consts(|cc| a.pow(e, PREC, RM, cc))
    }
    pub fn pi() -> BigFloat {
        with_consts(|cc| cc.pi(PREC, RM))
    }
    pub fn max(a: &BigFloat, b: &BigFloat) -> BigFloat {
        if cmp(a, b) == Ordering::Less {
            b.clone()
        } else {
            a.clone()
        }
    }
    pub fn cmp(a: &BigFloat, b: &BigFloat) -> Ordering {
        match a.cmp(b) {
            Some(x) if x < 0 => Ordering::Less,
            Some(0) => Ordering::Equal,
            Some(_) => Ordering::Greater,
            None => panic!("comparison with NaN"),
        }
    }
    /// `log* x = max(1, log x)`, with `log* 0 = 1`.
    pub fn log_star(a: &BigFloat) -> BigFloat {
        if a.is_zero() || cmp(a, &exp(&from_i64(1))) != Ordering::Greater {
            from_i64(1)
        } else {
            ln(a)
        }
    }
    pub fn to_f64(a: &BigFloat) -> f64 {
        if a.is_zero() {
            return 0.0;
        }
        to_string(a).parse().unwrap_or(if a.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
    }
    pub fn to_string(a: &BigFloat) -> String {
        with_consts(|cc| a.format(Radix::Dec, RM, cc)).expect("formatting big float")
    }
    /// Binary exponent (position of the leading bit), 0 for zero.
    pub fn exponent(a: &BigFloat) -> i64 {
        a.exponent().map(i64::from).unwrap_or(0)
    }
    /// `ln(1 + e^t)` for `t <= 0`.
    pub fn softplus_neg(t: &BigFloat) -> BigFloat {
        if exponent(t) > 12 && t.is_negative() {
            // e^t below 2^-PREC relative to 1
            return from_i64(0);
        }
        ln(&add(&from_i64(1), &exp(t)))
    }
    /// Relative difference `|a-b| / max(|a|,|b|)`.
    pub fn rel_diff(a: &BigFloat, b: &BigFloat) -> f64 {
        let d = sub(a, b).abs();
        let m = max(&a.abs(), &b.abs());
        if m.is_zero() {
            return 0.0;
        }
        to_f64(&div(&d, &m))
    }
}

#[derive(Clone)]
enum Repr {
    Zero,
    /// `ln x`
    Ln(BigFloat),
    /// `ln ln x`, only used when `ln x` is astronomically large
    LnLn(BigFloat),
}

/// Nonnegative magnitude stored through its logarithm.
#[derive(Clone)]
pub struct LogValue(Repr);

impl LogValue {
    pub fn zero() -> Self {
        LogValue(Repr::Zero)
    }

    pub fn one() -> Self {
        LogValue(Repr::Ln(bf::from_i64(0)))
    }

    /// The value whose natural log is `ln`.
    pub fn from_ln(ln: BigFloat) -> Self {
        if bf::exponent(&ln) > LN_LIMIT_LOG2 && ln.is_positive() {
            LogValue(Repr::LnLn(bf::ln(&ln)))
        } else {
            LogValue(Repr::Ln(ln))
        }
    }

    /// The value whose iterated log `ln ln x` is `lnln`.
    pub fn from_ln_ln(lnln: BigFloat) -> Self {
        if bf::exponent(&lnln) < 28 {
            LogValue::from_ln(bf::exp(&lnln))
        } else {
            LogValue(Repr::LnLn(lnln))
        }
    }

    pub fn from_bigfloat(v: &BigFloat) -> Self {
        assert!(!v.is_negative(), "LogValue must be nonnegative");
        if v.is_zero() {
            return Self::zero();
        }
        Self::from_ln(bf::ln(v))
    }

    pub fn from_u64(v: u64) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }

    pub fn from_f64(v: f64) -> Self {
        Self::from_bigfloat(&bf::from_f64(v))
    }

    pub fn from_bigint(v: &BigInt) -> Self {
        assert!(!v.is_negative(), "LogValue must be nonnegative");
        if v.is_zero() {
            return Self::zero();
        }
        Self::from_ln(bf::ln(&bf::from_bigint(v)))
    }

    pub fn from_ratio(v: &BigRational) -> Self {
        assert!(!v.is_negative(), "LogValue must be nonnegative");
        if v.is_zero() {
            return Self::zero();
        }
        Self::from_ln(bf::sub(&bf::ln(&bf::from_bigint(v.numer())), &bf::ln(&bf::from_bigint(v.denom()))))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Zero)
    }

    /// `ln x`, or `None` for zero or when it exceeds the float range.
    pub fn ln_value(&self) -> Option<BigFloat> {
        match &self.0 {
            Repr::Ln(l) => Some(l.clone()),
            _ => None,
        }
    }

    /// `ln ln x` for `x > 1`.
    pub fn ln_ln(&self) -> Option<BigFloat> {
        match &self.0 {
            Repr::Zero => None,
            Repr::Ln(l) if l.is_positive() => Some(bf::ln(l)),
            Repr::Ln(_) => None,
            Repr::LnLn(ll) => Some(ll.clone()),
        }
    }

    /// The value itself when it fits a big float.
    pub fn value(&self) -> Option<BigFloat> {
        match &self.0 {
            Repr::Zero => Some(bf::from_i64(0)),
            Repr::Ln(l) if bf::exponent(l) < 30 => Some(bf::exp(l)),
            _ => None,
        }
    }

    /// `ln x` as a magnitude (requires `x >= 1`).
    pub fn ln(&self) -> LogValue {
        match &self.0 {
            Repr::Zero => panic!("ln of zero"),
            Repr::Ln(l) => {
                assert!(!l.is_negative(), "ln of a value below 1 is negative");
                LogValue::from_bigfloat(l)
            }
            Repr::LnLn(ll) => LogValue::from_ln(ll.clone()),
        }
    }

    /// `e^x`.
    pub fn exp(&self) -> LogValue {
        match &self.0 {
            Repr::Zero => LogValue::one(),
            Repr::Ln(l) => LogValue::from_ln_ln(l.clone()),
            Repr::LnLn(_) => panic!("exp of a value beyond the doubly exponential range"),
        }
    }

    pub fn mul(&self, other: &LogValue) -> LogValue {
        match (&self.0, &other.0) {
            (Repr::Zero, _) | (_, Repr::Zero) => LogValue::zero(),
            (Repr::Ln(a), Repr::Ln(b)) => LogValue::from_ln(bf::add(a, b)),
            _ => {
                // at least one side is doubly exponential
                let (big, small) = if self.cmp_total(other) == Ordering::Less { (other, self) } else { (self, other) };
                let lb = big.ln_ln().expect("large operand");
                let ls = small.ln_value();
                match ls {
                    Some(l) => {
                        // ln ln(xy) = lb + ln(1 + ln(y)/ln(x)); the correction is below precision here
                        let _ = l;
                        LogValue(Repr::LnLn(lb))
                    }
                    None => {
                        let ll = small.ln_ln().unwrap();
                        LogValue(Repr::LnLn(bf::add(&lb, &bf::softplus_neg(&bf::sub(&ll, &lb)))))
                    }
                }
            }
        }
    }

    pub fn div(&self, other: &LogValue) -> LogValue {
        match (&self.0, &other.0) {
            (_, Repr::Zero) => panic!("division by zero"),
            (Repr::Zero, _) => LogValue::zero(),
            (Repr::Ln(a), Repr::Ln(b)) => LogValue::from_ln(bf::sub(a, b)),
            (Repr::LnLn(_), Repr::Ln(_)) => self.clone(),
            _ => panic!("division by a doubly exponential magnitude"),
        }
    }

    pub fn add(&self, other: &LogValue) -> LogValue {
        match (&self.0, &other.0) {
            (Repr::Zero, _) => other.clone(),
            (_, Repr::Zero) => self.clone(),
            (Repr::Ln(a), Repr::Ln(b)) => {
                let (hi, lo) = if bf::cmp(a, b) == Ordering::Less { (b, a) } else { (a, b) };
                LogValue::from_ln(bf::add(hi, &bf::softplus_neg(&bf::sub(lo, hi))))
            }
            _ => {
                if self.cmp_total(other) == Ordering::Less {
                    other.clone()
                } else {
                    self.clone()
                }
            }
        }
    }

    /// `x^k` for real `k >= 0`.
    pub fn pow(&self, k: &BigFloat) -> LogValue {
        if k.is_zero() {
            return LogValue::one();
        }
        match &self.0 {
            Repr::Zero => LogValue::zero(),
            Repr::Ln(l) => LogValue::from_ln(bf::mul(l, k)),
            Repr::LnLn(ll) => LogValue(Repr::LnLn(bf::add(ll, &bf::ln(k)))),
        }
    }

    pub fn powi(&self, k: u64) -> LogValue {
        self.pow(&bf::from_i64(k as i64))
    }

    /// `log* x = max(1, ln x)` as a magnitude.
    pub fn log_star(&self) -> LogValue {
        match &self.0 {
            Repr::Zero => LogValue::one(),
            Repr::Ln(l) if bf::cmp(l, &bf::from_i64(1)) != Ordering::Greater => LogValue::one(),
            _ => self.ln(),
        }
    }

    pub fn max(&self, other: &LogValue) -> LogValue {
        if self.cmp_total(other) == Ordering::Less {
            other.clone()
        } else {
            self.clone()
        }
    }

    fn level(&self) -> u8 {
        match self.0 {
            Repr::Zero => 0,
            Repr::Ln(_) => 1,
            Repr::LnLn(_) => 2,
        }
    }

    pub fn cmp_total(&self, other: &LogValue) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Zero, Repr::Zero) => Ordering::Equal,
            (Repr::Zero, _) => Ordering::Less,
            (_, Repr::Zero) => Ordering::Greater,
            (Repr::Ln(a), Repr::Ln(b)) => bf::cmp(a, b),
            (Repr::LnLn(a), Repr::LnLn(b)) => bf::cmp(a, b),
            _ => {
                let flip = self.level() > other.level();
                let (ln_side, ll_side) = if flip { (other, self) } else { (self, other) };
                let ord = match ln_side.ln_ln() {
                    None => Ordering::Less,
                    Some(l) => bf::cmp(&l, &ll_side.ln_ln().unwrap()),
                };
                if flip {
                    ord.reverse()
                } else {
                    ord
                }
            }
        }
    }

    /// `ln x` as `f64` (may be infinite for doubly exponential values).
    pub fn ln_f64(&self) -> f64 {
        match &self.0 {
            Repr::Zero => f64::NEG_INFINITY,
            Repr::Ln(l) => bf::to_f64(l),
            Repr::LnLn(_) => f64::INFINITY,
        }
    }

    /// The value as `f64` (infinite when out of range).
    pub fn to_f64(&self) -> f64 {
        self.ln_f64().exp()
    }

    /// `log10 x` rendered as a decimal string.
    pub fn log10_string(&self) -> String {
        match &self.0 {
            Repr::Zero => "-inf".to_string(),
            Repr::Ln(l) => short(&bf::div(l, &bf::ln(&bf::from_i64(10)))),
            Repr::LnLn(ll) => format!("exp({})/ln(10)", short(ll)),
        }
    }

    /// Decimal rendering of the value, or of its log when it does not fit.
    pub fn to_decimal_string(&self) -> String {
        match self.value() {
            Some(v) if bf::exponent(&v) < 200 => short(&v),
            _ => format!("e^{}", self.ln_string()),
        }
    }

    /// `ln x` rendered as a decimal string.
    pub fn ln_string(&self) -> String {
        match &self.0 {
            Repr::Zero => "-inf".to_string(),
            Repr::Ln(l) => short(l),
            Repr::LnLn(ll) => format!("e^{}", short(ll)),
        }
    }
}

fn short(v: &BigFloat) -> String {
    let f = bf::to_f64(v);
    if f.is_finite() {
        format!("{f:.12e}")
    } else {
        bf::to_string(v)
    }
}

impl PartialEq for LogValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_total(other) == Ordering::Equal
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_total(other))
    }
}

impl fmt::Debug for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogValue(ln = {})", self.ln_string())
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_arithmetic() {
        let two = LogValue::from_u64(2);
        let three = LogValue::from_u64(3);
        assert!((two.mul(&three).to_f64() - 6.0).abs() < 1e-12);
        assert!((two.add(&three).to_f64() - 5.0).abs() < 1e-12);
        assert!((three.div(&two).to_f64() - 1.5).abs() < 1e-12);
        assert!(two < three);
        assert!(LogValue::zero() < LogValue::from_f64(1e-300));
        assert!((two.powi(10).to_f64() - 1024.0).abs() < 1e-9);
    }

    #[test]
    fn log_star_convention() {
        assert_eq!(LogValue::zero().log_star(), LogValue::one());
        assert_eq!(LogValue::from_u64(2).log_star(), LogValue::one());
        let l4 = LogValue::from_u64(4).log_star().to_f64();
        assert!((l4 - 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn round_trip_large() {
        // x = 10^100, ln(exp(x)) must give back x
        let x = LogValue::from_bigint(&num_traits::pow(BigInt::from(10), 100));
        let back = x.exp().ln();
        let a = x.ln_value().unwrap();
        let b = back.ln_value().unwrap();
        assert!(bf::rel_diff(&a, &b) < 1e-100);
    }

    #[test]
    fn doubly_exponential_ordering() {
        // exp(2^(10^10)) vs exp(2^(10^10) + 1) and a modest value
        let ll = bf::mul(&bf::from_i64(10_000_000_000), &bf::ln(&bf::from_i64(2)));
        let huge = LogValue::from_ln_ln(ll.clone());
        let huger = LogValue::from_ln_ln(bf::add(&ll, &bf::from_i64(1)));
        assert!(huge < huger);
        assert!(LogValue::from_u64(1 << 40) < huge);
        assert_eq!(huge.mul(&LogValue::from_u64(7)), huge);
        assert!(huge.powi(3) > huge);
    }
}
