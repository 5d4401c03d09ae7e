//! The rational function field `Q(z)`: places, valuations, heights and the
//! two-term S-unit equation `x + y = 1`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebraic::is_irreducible;
use crate::error::{Error, Result};
use crate::exec;
use crate::poly::parse_poly_with;
use crate::upoly::UQ;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq)]
pub struct FFElement {
    num: UQ,
    den: UQ,
}

fn show(p: &UQ) -> String {
    p.to_multi(1, 0).display_with(&["z"])
}

impl fmt::Display for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.deg() == 0 {
            write!(f, "{}", show(&self.num))
        } else {
            write!(f, "({})/({})", show(&self.num), show(&self.den))
        }
    }
}

impl fmt::Debug for FFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FFElement {
    pub fn new(num: UQ, den: UQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::input("zero denominator"));
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lc = d.lc();
        Ok(FFElement { num: n.map(|c| c / &lc), den: d.monic() })
    }

    pub fn poly(p: UQ) -> Self {
        FFElement { num: p, den: UQ::one() }
    }

    pub fn constant(c: BigRational) -> Self {
        FFElement::poly(UQ::constant(c))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (n, d) = match text.split_once('/') {
            Some((n, d)) => (n, d),
            None => (text, "1"),
        };
        let conv = |s: &str| -> Result<UQ> {
            let s = s.trim();
            let s = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(s);
            let p = parse_poly_with(s, &["z"])?;
            Ok(UQ::from_multi(&p.to_rational(), 0).expect("univariate"))
        };
        FFElement::new(conv(n)?, conv(d)?)
    }

    pub fn num(&self) -> &UQ {
        &self.num
    }

    pub fn den(&self) -> &UQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.deg() == 0 && self.den.deg() == 0
    }

    pub fn add(&self, o: &FFElement) -> FFElement {
        FFElement::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).expect("nonzero den")
    }

    pub fn sub(&self, o: &FFElement) -> FFElement {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> FFElement {
        FFElement { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, o: &FFElement) -> FFElement {
        FFElement::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero den")
    }

    pub fn inv(&self) -> Result<FFElement> {
        FFElement::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &BigRational) -> FFElement {
        self.mul(&FFElement::constant(c.clone()))
    }
}

/// A place of `Q(z)` trivial on `Q`.
#[derive(Clone, PartialEq)]
pub enum Place {
    Infinity,
    /// Monic irreducible polynomial.
    Finite(UQ),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Finite(p) => write!(f, "{}", show(p)),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Place {
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(Place::Infinity);
        }
        let p = parse_poly_with(t, &["z"])?;
        let u = UQ::from_multi(&p.to_rational(), 0).expect("univariate");
        if u.degree().unwrap_or(0) == 0 {
            return Err(Error::input(format!("place {t} must be a nonconstant polynomial")));
        }
        if !is_irreducible(&u.to_primitive_z()) {
            return Err(Error::input(format!("place {t} is reducible over Q")));
        }
        Ok(Place::Finite(u.monic()))
    }

    /// Residue degree; the infinite place has degree 1.
    pub fn degree(&self) -> u32 {
        match self {
            Place::Infinity => 1,
            Place::Finite(p) => p.deg() as u32,
        }
    }
}

fn multiplicity(f: &UQ, p: &UQ) -> i64 {
    let mut k = 0;
    let mut cur = f.clone();
    loop {
        let (q, r) = cur.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        cur = q;
        k += 1;
    }
}

pub fn ff_valuation(x: &FFElement, v: &Place) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::Precondition("valuation of zero".into()));
    }
    Ok(match v {
        Place::Infinity => x.den.deg() as i64 - x.num.deg() as i64,
        Place::Finite(p) => multiplicity(&x.num, p) - multiplicity(&x.den, p),
    })
}

/// `max(deg num, deg den)`.
pub fn ff_height(x: &FFElement) -> u32 {
    x.num.degree().unwrap_or(0).max(x.den.deg()) as u32
}

/// Height of a polynomial vector: largest degree after removing the common gcd.
pub fn ff_height_vec(v: &[UQ]) -> Result<u32> {
    let g = v.iter().fold(UQ::zero(), |g, p| g.gcd(p));
    if g.is_zero() {
        return Err(Error::Precondition("height of the zero vector".into()));
    }
    Ok(v.iter().filter(|p| !p.is_zero()).map(|p| p.div_rem(&g).0.deg() as u32).max().unwrap_or(0))
}

/// `|S| + 2g - 2`.
pub fn mason_bound(s: u64, g: u64) -> i64 {
    s as i64 + 2 * g as i64 - 2
}

/// `(d - 1) m maxdeg`.
pub fn genus_bound(d: u64, m: u64, maxdeg: u64) -> u64 {
    d.saturating_sub(1) * m * maxdeg
}

/// `4 q D^2 d1`.
pub fn degree_bound_3_13(q: u64, big_d: u64, d1: u64) -> u64 {
    4 * q * big_d * big_d * d1
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootHeights {
    pub height_sum: u32,
    pub max_coeff_degree: u32,
}

/// For `F = prod (X - y_i)` with polynomial coefficients, `sum H(y_i)` equals the
/// largest coefficient degree; both are returned after checking the equality.
pub fn root_height_sum(roots: &[FFElement]) -> Result<RootHeights> {
    let mut coeffs = vec![FFElement::constant(BigRational::one())];
    for y in roots {
        let mut next = vec![FFElement::constant(BigRational::zero()); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = next[i + 1].add(c);
            next[i] = next[i].sub(&c.mul(y));
        }
        coeffs = next;
    }
    if coeffs.iter().any(|c| c.den.deg() > 0) {
        return Err(Error::Precondition("expanded coefficients are not polynomials".into()));
    }
    let max_coeff_degree = coeffs.iter().map(|c| c.num.degree().unwrap_or(0) as u32).max().unwrap_or(0);
    let height_sum = roots.iter().map(ff_height).sum();
    if height_sum != max_coeff_degree {
        return Err(Error::defect(format!("root heights {height_sum} differ from coefficient degree {max_coeff_degree}")));
    }
    Ok(RootHeights { height_sum, max_coeff_degree })
}

/// Finite set of places.
#[derive(Clone, Debug)]
pub struct PlaceSet {
    places: Vec<Place>,
}

impl PlaceSet {
    pub fn new(places: Vec<Place>) -> Result<Self> {
        if places.is_empty() {
            return Err(Error::input("empty place set"));
        }
        for (i, p) in places.iter().enumerate() {
            if places[..i].contains(p) {
                return Err(Error::input(format!("place {p} listed twice")));
            }
        }
        Ok(PlaceSet { places })
    }

    pub fn parse(text: &str) -> Result<Self> {
        PlaceSet::new(text.split(',').map(Place::parse).collect::<Result<_>>()?)
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn finite(&self) -> Vec<UQ> {
        self.places
            .iter()
            .filter_map(|p| match p {
                Place::Finite(u) => Some(u.clone()),
                Place::Infinity => None,
            })
            .collect()
    }

    pub fn has_infinity(&self) -> bool {
        self.places.contains(&Place::Infinity)
    }

    /// Nonzero and with valuation zero outside the set.
    pub fn is_unit(&self, x: &FFElement) -> bool {
        if x.is_zero() {
            return false;
        }
        let fin = self.finite();
        let strip = |f: &UQ| {
            let mut cur = f.clone();
            for p in &fin {
                loop {
                    let (q, r) = cur.div_rem(p);
                    if !r.is_zero() {
                        break;
                    }
                    cur = q;
                }
            }
            cur.deg() == 0
        };
        let inf_ok = self.has_infinity() || x.num.deg() == x.den.deg();
        inf_ok && strip(&x.num) && strip(&x.den)
    }
}

#[derive(Clone, Debug)]
pub struct FfSolution {
    pub x: FFElement,
    pub y: FFElement,
}

impl FfSolution {
    pub fn to_json(&self) -> Value {
        json!({"x": self.x.to_string(), "y": self.y.to_string(), "H_x": ff_height(&self.x), "H_y": ff_height(&self.y)})
    }
}

fn pow(p: &UQ, e: u32) -> UQ {
    (0..e).fold(UQ::one(), |acc, _| &acc * p)
}

/// Exponent vectors for `places` with positive part and negative part each of
/// weighted degree at most `b`.
fn exponent_box(degs: &[u32], b: u32) -> Vec<Vec<i64>> {
    let mut out = vec![(vec![], 0u32, 0u32)];
    for &d in degs {
        let mut next = vec![];
        for (v, pos, neg) in out {
            let lim = (b / d) as i64;
            for e in -lim..=lim {
                let (p2, n2) = if e >= 0 { (pos + e as u32 * d, neg) } else { (pos, neg + (-e) as u32 * d) };
                if p2 <= b && n2 <= b {
                    let mut w = v.clone();
                    w.push(e);
                    next.push((w, p2, n2));
                }
            }
        }
        out = next;
    }
    out.into_iter().map(|(v, _, _)| v).collect()
}

/// Monic products of `allowed` places of degree at most `b`.
fn products(allowed: &[UQ], b: u32) -> Vec<UQ> {
    let degs: Vec<u32> = allowed.iter().map(|p| p.deg() as u32).collect();
    let mut out = vec![(UQ::one(), 0u32)];
    for (p, &d) in allowed.iter().zip(&degs) {
        let mut next = vec![];
        for (m, used) in out {
            let mut k = 0;
            while used + k * d <= b {
                next.push((&m * &pow(p, k), used + k * d));
                k += 1;
            }
        }
        out = next;
    }
    out.into_iter().map(|(m, _)| m).collect()
}

/// Solves `target = c n + c' m` for rationals `c, c'` by coefficient comparison.
fn solve_two(target: &UQ, n: &UQ, m: &UQ) -> Option<(BigRational, BigRational)> {
    let len = target.coeffs().len().max(n.coeffs().len()).max(m.coeffs().len());
    let (mut pick, mut det) = (None, BigRational::zero());
    'outer: for i in 0..len {
        for j in i + 1..len {
            let d = n.coeff(i) * m.coeff(j) - n.coeff(j) * m.coeff(i);
            if !d.is_zero() {
                pick = Some((i, j));
                det = d;
                break 'outer;
            }
        }
    }
    let (i, j) = pick?;
    let c = (target.coeff(i) * m.coeff(j) - target.coeff(j) * m.coeff(i)) / &det;
    let cp = (n.coeff(i) * target.coeff(j) - n.coeff(j) * target.coeff(i)) / &det;
    let check = &n.scale(&c) + &m.scale(&cp);
    (&check == target).then_some((c, cp))
}

/// All `x + y = 1` with `x, y` S-units outside `Q*`, for genus zero and `inf` in `S`.
pub fn solve_ff_sunit(s: &PlaceSet) -> Result<Vec<FfSolution>> {
    if !s.has_infinity() {
        return Err(Error::Precondition("the place set must contain inf".into()));
    }
    let b = mason_bound(s.len() as u64, 0);
    if b <= 0 {
        return Ok(vec![]);
    }
    let b = b as u32;
    let fin = s.finite();
    let degs: Vec<u32> = fin.iter().map(|p| p.deg() as u32).collect();
    let boxes: Vec<Vec<i64>> = exponent_box(&degs, b).into_iter().filter(|e| e.iter().any(|&x| x != 0)).collect();
    let found: Vec<Vec<FfSolution>> = exec::par_map(&boxes, |e| {
        let mut n = UQ::one();
        let mut d = UQ::one();
        let mut free = vec![];
        for ((p, &k), _) in fin.iter().zip(e).zip(&degs) {
            match k.signum() {
                1 => n = &n * &pow(p, k as u32),
                -1 => d = &d * &pow(p, (-k) as u32),
                _ => free.push(p.clone()),
            }
        }
        let mut sols = vec![];
        // 1 - c n/d = c' m/d, with m supported away from n and d
        for m in products(&free, b) {
            if let Some((c, cp)) = solve_two(&d, &n, &m) {
                if c.is_zero() || cp.is_zero() {
                    continue;
                }
                let x = FFElement::new(n.scale(&c), d.clone()).expect("nonzero den");
                let y = FFElement::new(m.scale(&cp), d.clone()).expect("nonzero den");
                sols.push(FfSolution { x, y });
            }
        }
        sols
    });
    let mut out: Vec<FfSolution> = vec![];
    for sol in found.into_iter().flatten() {
        let one = FFElement::constant(BigRational::one());
        if sol.x.add(&sol.y) != one || !s.is_unit(&sol.x) || !s.is_unit(&sol.y) || sol.x.is_constant() {
            return Err(Error::defect(format!("solution {} + {} fails re-verification", sol.x, sol.y)));
        }
        if ff_height(&sol.x).max(ff_height(&sol.y)) > b {
            return Err(Error::defect("solution exceeds the height bound"));
        }
        if !out.iter().any(|o| o.x == sol.x) {
            out.push(sol);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn e(s: &str) -> FFElement {
        FFElement::parse(s).unwrap()
    }

    fn pl(s: &str) -> Place {
        Place::parse(s).unwrap()
    }

    #[test]
    fn valuations() {
        let x = e("z/(z-1)");
        assert_eq!(ff_valuation(&x, &pl("z")).unwrap(), 1);
        assert_eq!(ff_valuation(&x, &pl("z-1")).unwrap(), -1);
        assert_eq!(ff_valuation(&x, &Place::Infinity).unwrap(), 0);
        let c = e("5");
        assert_eq!(ff_valuation(&c, &pl("z")).unwrap(), 0);
        let y = e("(z^2+1)/z^3");
        let vs = [(pl("z^2+1"), 1), (pl("z"), -3), (Place::Infinity, 1)];
        let mut total = 0;
        for (p, v) in vs {
            assert_eq!(ff_valuation(&y, &p).unwrap(), v);
            total += v * p.degree() as i64;
        }
        assert_eq!(total, 0);
    }

    #[test]
    fn heights() {
        assert_eq!(ff_height(&e("z/(z-1)")), 1);
        assert_eq!(ff_height(&e("7")), 0);
        let v = [e("z^2-1").num().clone(), e("z+1").num().clone()];
        assert_eq!(ff_height_vec(&v).unwrap(), 1);
        assert_eq!(ff_height(&e("z/(z-1)").scale(&q(3))), 1);
    }

    #[test]
    fn formulas() {
        assert_eq!(mason_bound(3, 0), 1);
        assert_eq!(mason_bound(2, 0), 0);
        assert_eq!(mason_bound(4, 1), 4);
        assert_eq!(genus_bound(2, 2, 1), 2);
        assert_eq!(genus_bound(1, 5, 9), 0);
        assert_eq!(genus_bound(3, 1, 2), 4);
        assert_eq!(degree_bound_3_13(1, 2, 1), 16);
        assert_eq!(degree_bound_3_13(0, 5, 3), 0);
        assert_eq!(degree_bound_3_13(2, 2, 3), 96);
    }

    #[test]
    fn root_sums() {
        assert_eq!(root_height_sum(&[e("z"), e("1")]).unwrap().height_sum, 1);
        assert_eq!(root_height_sum(&[e("z"), e("z^2")]).unwrap().height_sum, 3);
        assert_eq!(root_height_sum(&[e("1"), e("2")]).unwrap().height_sum, 0);
        assert!(root_height_sum(&[e("1/z")]).is_err());
    }

    #[test]
    fn three_places() {
        let s = PlaceSet::parse("inf,z,z-1").unwrap();
        let sols = solve_ff_sunit(&s).unwrap();
        assert_eq!(sols.len(), 6);
        let want = ["z", "1-z", "1/z", "(z-1)/z", "z/(z-1)", "-1/(z-1)"];
        for w in want {
            assert!(sols.iter().any(|s| s.x == e(w)), "missing {w}");
        }
        assert!(sols.iter().all(|s| ff_height(&s.x) == 1 && ff_height(&s.y) == 1));
        assert!(solve_ff_sunit(&PlaceSet::parse("inf,z").unwrap()).unwrap().is_empty());
    }

    #[test]
    fn four_places_within_bound() {
        let s = PlaceSet::parse("inf,z,z+1,z-1").unwrap();
        let sols = solve_ff_sunit(&s).unwrap();
        assert!(!sols.is_empty());
        assert!(sols.iter().all(|s| ff_height(&s.x).max(ff_height(&s.y)) <= 2));
        // z^2 + (1 - z^2) = 1
        assert!(sols.iter().any(|s| s.x == e("z^2")));
    }
}
