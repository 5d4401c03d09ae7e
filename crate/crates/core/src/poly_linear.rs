//! Degree-truncated linear algebra over `Q[X1..XN]` and `Z[X1..XN]`.
//!
//! A polynomial system `A x = b` with unknown entries of degree at most `delta`
//! is expanded into a linear system on the unknown coefficients. Unknowns are
//! indexed by (column, monomial) with monomials in graded lex order; rows by
//! (row, monomial) for all product monomials.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebraic::{factor_z, NumberField};
use crate::bounds::{section2_caps, ConstantPack};
use crate::linalg::{self, modp, rational, IntMatrix};
use crate::logvalue::{bf, LogValue};
use crate::poly::{monomials_up_to, Monomial, QPoly, ZPoly};
use crate::upoly::{resultant_in, UPolyFp, UQ, UZ};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Rational,
    Integer,
}

impl std::str::FromStr for Ring {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "qq" | "QQ" | "rational" => Ok(Ring::Rational),
            "zz" | "ZZ" | "integer" => Ok(Ring::Integer),
            _ => Err(format!("unknown ring {s:?} (expected zz or qq)")),
        }
    }
}

/// `A x = b` (or `A x = 0`) with polynomial entries in a common number of variables.
///
/// Rational systems are stored with denominators cleared row by row, which
/// does not change the solution set over `Q`.
#[derive(Clone, Debug)]
pub struct PolySystem {
    nvars: usize,
    a: Vec<Vec<ZPoly>>,
    b: Option<Vec<ZPoly>>,
    ring: Ring,
}

impl PolySystem {
    pub fn new(a: Vec<Vec<ZPoly>>, ring: Ring) -> Self {
        assert!(!a.is_empty() && !a[0].is_empty(), "system needs at least one entry");
        let nvars = a[0][0].nvars();
        let n = a[0].len();
        assert!(a.iter().all(|r| r.len() == n && r.iter().all(|p| p.nvars() == nvars)), "ragged system");
        PolySystem { nvars, a, b: None, ring }
    }

    pub fn from_rational(a: Vec<Vec<QPoly>>, b: Option<Vec<QPoly>>, ring: Ring) -> Self {
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (i, row) in a.iter().enumerate() {
            let l = row
                .iter()
                .chain(b.as_ref().map(|v| &v[i]))
                .flat_map(|p| p.terms().map(|(_, c)| c.denom().clone()).collect::<Vec<_>>())
                .fold(BigInt::one(), |l, d| num_integer::Integer::lcm(&l, &d));
            let s = BigRational::from_integer(l);
            rows.push(row.iter().map(|p| p.scale(&s).to_integer().expect("cleared")).collect());
            if let Some(v) = &b {
                rhs.push(v[i].scale(&s).to_integer().expect("cleared"));
            }
        }
        let sys = PolySystem::new(rows, ring);
        if b.is_some() {
            sys.with_rhs(rhs)
        } else {
            sys
        }
    }

    pub fn with_rhs(mut self, b: Vec<ZPoly>) -> Self {
        assert_eq!(b.len(), self.a.len(), "right-hand side length");
        self.b = Some(b);
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn rows(&self) -> usize {
        self.a.len()
    }
    pub fn cols(&self) -> usize {
        self.a[0].len()
    }
    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Max total degree of the entries of `A` (at least 1).
    pub fn degree(&self) -> u32 {
        self.a.iter().flatten().map(|p| p.degree_or_zero()).max().unwrap_or(0).max(1)
    }

    /// `log max(1, |coefficients of A|)`.
    pub fn height(&self) -> f64 {
        let m = self.a.iter().flatten().map(|p| p.max_abs_coeff()).max().unwrap_or_else(BigInt::zero);
        if m <= BigInt::one() {
            0.0
        } else {
            crate::poly::ln_abs(&m)
        }
    }

    /// Degree cap `(2md)^(2^N)` beyond which truncation loses nothing.
    pub fn hermann_bound(&self) -> LogValue {
        let md = 2 * self.rows() as u64 * self.degree() as u64;
        LogValue::from_ln(bf::mul(&bf::pow(&bf::from_i64(2), &bf::from_i64(self.nvars as i64)), &bf::ln(&bf::from_i64(md as i64))))
    }

    /// The cap as an integer when it is small enough to use as a degree.
    pub fn hermann_bound_small(&self) -> Option<u32> {
        let md = 2 * self.rows() as u64 * self.degree() as u64;
        let mut v: u64 = md;
        for _ in 0..self.nvars {
            v = v.checked_mul(v)?;
            if v > u32::MAX as u64 {
                return None;
            }
        }
        Some(v as u32)
    }

    fn assemble(&self, delta: u32) -> Assembled {
        let cols_monos = monomials_up_to(self.nvars, delta);
        let mut row_index: HashMap<(usize, Monomial), usize> = HashMap::new();
        let mut data: Vec<Vec<BigInt>> = Vec::new();
        let ncols = self.cols() * cols_monos.len();
        let mut rhs_entries: Vec<(usize, Monomial, BigInt)> = Vec::new();
        let mut row_of = |key: (usize, Monomial), data: &mut Vec<Vec<BigInt>>| -> usize {
            *row_index.entry(key).or_insert_with(|| {
                data.push(vec![BigInt::zero(); ncols]);
                data.len() - 1
            })
        };
        for (i, row) in self.a.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                for (k, mono) in cols_monos.iter().enumerate() {
                    for (em, c) in entry.terms() {
                        let r = row_of((i, em.mul(mono)), &mut data);
                        data[r][j * cols_monos.len() + k] += c;
                    }
                }
            }
            if let Some(b) = &self.b {
                for (m, c) in b[i].terms() {
                    rhs_entries.push((i, m.clone(), c.clone()));
                }
            }
        }
        let mut rhs = vec![BigInt::zero(); data.len()];
        for (i, m, c) in rhs_entries {
            let r = row_of((i, m), &mut data);
            rhs.resize(data.len(), BigInt::zero());
            rhs[r] += c;
        }
        rhs.resize(data.len(), BigInt::zero());
        Assembled { cols_monos, ncols, data, rhs, ncolumns: self.cols(), nvars: self.nvars }
    }
}

struct Assembled {
    cols_monos: Vec<Monomial>,
    ncols: usize,
    data: Vec<Vec<BigInt>>,
    rhs: Vec<BigInt>,
    ncolumns: usize,
    nvars: usize,
}

impl Assembled {
    fn to_polys<C: crate::poly::Coeff>(&self, y: &[C]) -> Vec<crate::poly::MultiPoly<C>> {
        let k = self.cols_monos.len();
        (0..self.ncolumns)
            .map(|j| {
                crate::poly::MultiPoly::from_terms(
                    self.nvars,
                    self.cols_monos.iter().enumerate().map(|(t, m)| (m.clone(), y[j * k + t].clone())),
                )
            })
            .collect()
    }

    fn matrix(&self) -> IntMatrix {
        IntMatrix::with_shape(self.data.len(), self.ncols, self.data.clone())
    }
}

fn flatten(v: &[ZPoly], monos: &[Monomial]) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(v.len() * monos.len());
    for p in v {
        for m in monos {
            out.push(BigRational::from_integer(p.coeff(m)));
        }
    }
    out
}

fn vec_degree(v: &[ZPoly]) -> u32 {
    v.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
}

/// Generators of the solutions of `A x = 0` with entries of degree at most `delta`.
///
/// Every solution of degree at most `delta` is a polynomial combination of the
/// returned vectors (with the combination also truncated at `delta`). Vectors
/// are primitive over `Z` and listed by increasing degree.
pub fn truncated_kernel(sys: &PolySystem, delta: u32) -> Vec<Vec<ZPoly>> {
    assert!(sys.b.is_none(), "truncated_kernel takes a homogeneous system");
    let n = sys.nvars;
    let mut gens: Vec<Vec<ZPoly>> = Vec::new();
    for k in 0..=delta {
        let asm = sys.assemble(k);
        let basis = linalg::kernel_basis_int(&asm.matrix());
        if basis.is_empty() {
            continue;
        }
        let monos = &asm.cols_monos;
        let mut span = rational::Span::new();
        for g in &gens {
            for m in monomials_up_to(n, k - vec_degree(g)) {
                let shifted: Vec<ZPoly> = g.iter().map(|p| p.mul_monomial(&m, &BigInt::one())).collect();
                span.insert(&flatten(&shifted, monos));
            }
        }
        let mut fresh: Vec<Vec<ZPoly>> = basis.iter().map(|y| asm.to_polys(y)).collect();
        fresh.sort_by_key(|v| vec_degree(v));
        for v in fresh {
            if span.contains(&flatten(&v, monos)) {
                continue;
            }
            for m in monomials_up_to(n, k - vec_degree(&v)) {
                let shifted: Vec<ZPoly> = v.iter().map(|p| p.mul_monomial(&m, &BigInt::one())).collect();
                span.insert(&flatten(&shifted, monos));
            }
            gens.push(v);
        }
    }
    gens
}

/// Basis of the `Q`-space of solutions of `A x = 0` with entries of degree at most `delta`,
/// as primitive integer vectors (no pruning of module multiples).
pub fn kernel_at_degree(sys: &PolySystem, delta: u32) -> Vec<Vec<ZPoly>> {
    assert!(sys.b.is_none(), "kernel_at_degree takes a homogeneous system");
    let asm = sys.assemble(delta);
    linalg::kernel_basis_int(&asm.matrix()).iter().map(|y| asm.to_polys(y)).collect()
}

#[derive(Clone, Debug)]
pub struct NotFoundUpTo {
    pub max_deg: u32,
    /// The degree beyond which a miss would prove unsolvability.
    pub bound: LogValue,
}

impl fmt::Display for NotFoundUpTo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "no solution with entries of degree <= {} (complete search needs degree up to e^{})", self.max_deg, self.bound.ln_string())
    }
}

/// Iterative deepening for `A x = b`; solutions are rational or integral according to the ring.
pub fn solve_poly_linear(sys: &PolySystem, max_deg: u32) -> Result<Vec<QPoly>, NotFoundUpTo> {
    let b = sys.b.as_ref().expect("solve_poly_linear needs a right-hand side");
    for delta in 0..=max_deg {
        if b.iter().any(|p| p.degree_or_zero() > delta + sys.degree() && !p.is_zero()) {
            continue;
        }
        if let Some(x) = solve_at(sys, delta) {
            return Ok(x);
        }
    }
    Err(NotFoundUpTo { max_deg, bound: sys.hermann_bound() })
}

fn solve_at(sys: &PolySystem, delta: u32) -> Option<Vec<QPoly>> {
    let asm = sys.assemble(delta);
    match sys.ring {
        Ring::Rational => {
            let q = rational::to_q(&asm.data);
            let rhs: Vec<BigRational> = asm.rhs.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            let y = rational::solve_q(&q, &rhs, asm.ncols)?;
            Some(asm.to_polys(&y))
        }
        Ring::Integer => {
            if !modp::FILTER_PRIMES.iter().any(|&p| modp::consistent_mod(&asm.data, &asm.rhs, asm.ncols, p)) {
                return None;
            }
            let y = linalg::solve_int(&asm.matrix(), &asm.rhs)?;
            let yq: Vec<BigRational> = y.into_iter().map(BigRational::from_integer).collect();
            Some(asm.to_polys(&yq))
        }
    }
}

#[derive(Clone, Debug)]
pub struct MembershipOptions {
    pub max_deg: u32,
    /// Cofactors whose height exceeds this are not accepted.
    pub height_cap: Option<f64>,
    pub ring: Ring,
    pub pack: ConstantPack,
}

impl Default for MembershipOptions {
    fn default() -> Self {
        MembershipOptions { max_deg: 12, height_cap: None, ring: Ring::Integer, pack: ConstantPack::default() }
    }
}

/// Why `b` is not in the ideal.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The ideal is zero and `b` is not.
    ZeroIdeal,
    /// Under the ring map, the image ideal in a univariate ring over a field is
    /// `(g)` and `g` does not divide the image of `b`.
    Substitution { map: String, field: String, gcd: String },
    /// A common zero of the generators at which `b` does not vanish.
    CommonZero { point: String },
    /// The coefficient system over `Q` is unsolvable at a degree past the complete-search cap.
    RationalUnsolvable { degree: u32 },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::ZeroIdeal => write!(f, "the ideal is zero"),
            Witness::Substitution { map, field, gcd } => {
                write!(f, "under {map} over {field} the image ideal is ({gcd}), which misses the image of the target")
            }
            Witness::CommonZero { point } => write!(f, "common zero {point} where the target does not vanish"),
            Witness::RationalUnsolvable { degree } => write!(f, "no rational solution at degree {degree}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MemberCert {
    pub cofactors: Vec<QPoly>,
    pub degree: u32,
    /// `log` of the largest numerator or denominator among cofactor coefficients.
    pub height: f64,
    pub found_at: u32,
}

#[derive(Clone, Debug)]
pub enum Membership {
    Member(MemberCert),
    NonMember(Witness),
    Unknown { searched_to: u32 },
}

impl Membership {
    pub fn verdict(&self) -> &'static str {
        match self {
            Membership::Member(_) => "member",
            Membership::NonMember(_) => "non_member",
            Membership::Unknown { .. } => "unknown",
        }
    }
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
    pub fn is_non_member(&self) -> bool {
        matches!(self, Membership::NonMember(_))
    }
}

/// Theoretical caps reported next to a membership verdict.
#[derive(Clone, Debug)]
pub struct MembershipCaps {
    pub hermann_deg: LogValue,
    pub cofactor_deg: LogValue,
    pub cofactor_height: LogValue,
}

pub fn membership_caps(gens: &[ZPoly], b: &ZPoly, pack: &ConstantPack) -> MembershipCaps {
    let m = gens.len().max(1) as u64;
    let d = gens.iter().chain([b]).map(|p| p.degree_or_zero()).max().unwrap_or(1).max(1) as u64;
    let h = gens
        .iter()
        .chain([b])
        .map(|p| p.max_abs_coeff())
        .filter(|c| *c > BigInt::one())
        .map(|c| crate::poly::ln_abs(&c))
        .fold(1.0, f64::max);
    let n = b.nvars().max(1) as u64;
    let caps = section2_caps(m, d, h, n, pack).expect("arguments are at least 1");
    MembershipCaps { hermann_deg: caps.hermann_deg, cofactor_deg: caps.prop25_deg, cofactor_height: caps.prop25_height }
}

fn q_height(v: &[QPoly]) -> f64 {
    let mut best = BigInt::one();
    for p in v {
        for (_, c) in p.terms() {
            best = best.max(c.numer().abs()).max(c.denom().clone());
        }
    }
    if best.is_one() {
        0.0
    } else {
        crate::poly::ln_abs(&best)
    }
}

/// Exact check `sum x_i f_i = b`.
pub fn verify_combination(gens: &[ZPoly], x: &[QPoly], b: &ZPoly) -> bool {
    if gens.len() != x.len() {
        return false;
    }
    let mut acc = QPoly::zero(b.nvars());
    for (f, xi) in gens.iter().zip(x) {
        acc = &acc + &(&f.to_rational() * xi);
    }
    acc == b.to_rational()
}

/// Decides `b in (f_1..f_m)` over `Z` or `Q`, three-valued.
///
/// `Member` carries cofactors re-verified by exact multiplication; `NonMember`
/// carries a witness that is valid for the chosen ring; anything else is `Unknown`.
pub fn ideal_membership(gens: &[ZPoly], b: &ZPoly, opts: &MembershipOptions) -> Membership {
    let n = b.nvars();
    assert!(gens.iter().all(|g| g.nvars() == n), "generators and target must share variables");
    let nz: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_zero()).collect();
    if b.is_zero() {
        let zeros = vec![QPoly::zero(n); gens.len()];
        return Membership::Member(MemberCert { cofactors: zeros, degree: 0, height: 0.0, found_at: 0 });
    }
    if nz.is_empty() {
        return Membership::NonMember(Witness::ZeroIdeal);
    }
    let live: Vec<ZPoly> = nz.iter().map(|&i| gens[i].clone()).collect();
    if let Some(w) = find_witness(&live, b, opts.ring) {
        return Membership::NonMember(w);
    }
    let expand = |x: Vec<QPoly>| -> Vec<QPoly> {
        let mut out = vec![QPoly::zero(n); gens.len()];
        for (k, &i) in nz.iter().enumerate() {
            out[i] = x[k].clone();
        }
        out
    };
    let accept = |x: &[QPoly], at: u32| -> Option<MemberCert> {
        if !verify_combination(&live, x, b) {
            return None;
        }
        let height = q_height(x);
        if opts.height_cap.map_or(false, |cap| height > cap) {
            return None;
        }
        let degree = x.iter().map(|p| p.degree_or_zero()).max().unwrap_or(0);
        Some(MemberCert { cofactors: expand(x.to_vec()), degree, height, found_at: at })
    };
    if opts.ring == Ring::Rational && n == 1 {
        if let Some(x) = univariate_cofactors(&live, b) {
            if let Some(c) = accept(&x, x.iter().map(|p| p.degree_or_zero()).max().unwrap_or(0)) {
                return Membership::Member(c);
            }
        }
    }
    let sys = PolySystem::new(vec![live.clone()], opts.ring).with_rhs(vec![b.clone()]);
    let d = sys.degree();
    for delta in 0..=opts.max_deg {
        if b.degree_or_zero() > delta + d {
            continue;
        }
        if let Some(x) = solve_at(&sys, delta) {
            if let Some(c) = accept(&x, delta) {
                return Membership::Member(c);
            }
        }
    }
    // past the complete-search degree, rational unsolvability is a proof
    if let Some(cap) = sys.hermann_bound_small().filter(|&c| c <= opts.max_deg.max(24)) {
        let qsys = PolySystem::new(vec![live.clone()], Ring::Rational).with_rhs(vec![b.clone()]);
        if solve_at(&qsys, cap).is_none() {
            return Membership::NonMember(Witness::RationalUnsolvable { degree: cap });
        }
    }
    Membership::Unknown { searched_to: opts.max_deg }
}

/// Cofactors over `Q[X]` from extended gcds, when the gcd of the generators divides `b`.
fn univariate_cofactors(gens: &[ZPoly], b: &ZPoly) -> Option<Vec<QPoly>> {
    let fs: Vec<UQ> = gens.iter().map(|g| UQ::from_multi(&g.to_rational(), 0).expect("univariate")).collect();
    let bq = UQ::from_multi(&b.to_rational(), 0).expect("univariate");
    let mut g = fs[0].monic();
    let lc0 = fs[0].lc();
    let mut coef: Vec<UQ> = vec![UQ::zero(); fs.len()];
    coef[0] = UQ::constant(BigRational::one() / lc0);
    for i in 1..fs.len() {
        let (h, s, t) = g.xgcd(&fs[i]);
        if h.is_zero() {
            continue;
        }
        for c in coef.iter_mut().take(i) {
            *c = &*c * &s;
        }
        coef[i] = t;
        g = h;
    }
    let (q, r) = bq.div_rem(&g);
    if !r.is_zero() {
        return None;
    }
    // shrink cofactors modulo the other generators where possible
    let mut x: Vec<UQ> = coef.iter().map(|c| c * &q).collect();
    if fs.len() == 2 {
        // x0 f0 + x1 f1 = b; reduce x0 modulo f1 / g
        let f1g = fs[1].div_rem(&g).0;
        let (k, r0) = x[0].div_rem(&f1g);
        let f0g = fs[0].div_rem(&g).0;
        x[1] = &x[1] + &(&k * &f0g);
        x[0] = r0;
    }
    Some(x.iter().map(|p| p.to_multi(1, 0)).collect())
}

fn find_witness(gens: &[ZPoly], b: &ZPoly, ring: Ring) -> Option<Witness> {
    let n = b.nvars();
    for (map, label) in substitution_maps(n) {
        let imgs: Vec<UZ> = gens.iter().map(|g| to_uz(&g.substitute(&map))).collect();
        let bi = to_uz(&b.substitute(&map));
        if let Some(gcd) = rational_obstruction(&imgs, &bi) {
            return Some(Witness::Substitution { map: label.clone(), field: "Q".into(), gcd });
        }
        if ring == Ring::Integer {
            for p in [2u64, 3, 5, 7] {
                if let Some(gcd) = modular_obstruction(&imgs, &bi, p) {
                    return Some(Witness::Substitution { map: label.clone(), field: format!("F_{p}"), gcd });
                }
            }
        }
    }
    if n == 2 {
        for v in [1usize, 0] {
            if let Some(point) = common_zero(gens, b, v) {
                return Some(Witness::CommonZero { point });
            }
        }
    }
    None
}

fn to_uz(p: &ZPoly) -> UZ {
    UZ::from_multi(p, 0).expect("univariate image")
}

fn rational_obstruction(imgs: &[UZ], b: &UZ) -> Option<String> {
    let mut g = UQ::zero();
    for f in imgs {
        g = g.gcd(&f.to_q());
    }
    if g.is_zero() {
        return (!b.is_zero()).then(|| "0".to_string());
    }
    (!b.to_q().rem(&g).is_zero()).then(|| g.to_primitive_z().to_string())
}

fn modular_obstruction(imgs: &[UZ], b: &UZ, p: u64) -> Option<String> {
    let mut g = UPolyFp::new(vec![], p);
    for f in imgs {
        g = g.gcd(&f.mod_p(p));
    }
    let bp = b.mod_p(p);
    if g.is_zero() {
        return (!bp.is_zero()).then(|| "0".to_string());
    }
    (!bp.rem(&g).is_zero()).then(|| {
        let s: Vec<String> = g.c.iter().map(|c| c.to_string()).collect();
        format!("coefficients [{}] mod {p}", s.join(", "))
    })
}

/// Ring maps `Z[X1..XN] -> Z[T]` tried for obstructions, with a printable description.
fn substitution_maps(n: usize) -> Vec<(Vec<ZPoly>, String)> {
    let t = ZPoly::var(1, 0);
    let c = |v: i64| ZPoly::constant(1, BigInt::from(v));
    let mut out = Vec::new();
    let describe = |imgs: &[(i64, i64)]| -> String {
        let parts: Vec<String> = imgs
            .iter()
            .enumerate()
            .map(|(i, &(a, k))| {
                let lin = match a {
                    0 => format!("{k}"),
                    1 if k == 0 => "T".to_string(),
                    1 => format!("T{k:+}"),
                    _ if k == 0 => format!("{a}T"),
                    _ => format!("{a}T{k:+}"),
                };
                format!("X{} -> {lin}", i + 1)
            })
            .collect();
        parts.join(", ")
    };
    let mut push = |spec: Vec<(i64, i64)>| {
        let map: Vec<ZPoly> = spec.iter().map(|&(a, k)| &t.scale(&BigInt::from(a)) + &c(k)).collect();
        let label = describe(&spec);
        out.push((map, label));
    };
    let consts = [0i64, 1, -1, 2, -2, 3];
    for main in 0..n {
        for &k in &consts {
            push((0..n).map(|j| if j == main { (1, 0) } else { (0, k) }).collect());
        }
    }
    // lines through the origin and shifted diagonals
    let mut state = 0x9e37_79b9_u64;
    for round in 0..12 {
        let spec: Vec<(i64, i64)> = (0..n)
            .map(|j| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let a = [1i64, -1, 2, 1][((state >> 33) % 4) as usize];
                let k = if round < 4 { 0 } else { [0i64, 1, -1, 2][((state >> 40) % 4) as usize] };
                if j == 0 {
                    (1, k)
                } else {
                    (a, k)
                }
            })
            .collect();
        push(spec);
    }
    out
}

/// Common zero above a root of an elimination polynomial in the other variable.
fn common_zero(gens: &[ZPoly], b: &ZPoly, elim: usize) -> Option<String> {
    let keep = 1 - elim;
    let with: Vec<&ZPoly> = gens.iter().filter(|g| g.degree_in(elim).unwrap_or(0) > 0).collect();
    let without: Vec<&ZPoly> = gens.iter().filter(|g| g.degree_in(elim).unwrap_or(0) == 0).collect();
    let mut r = UQ::zero();
    for g in &without {
        r = r.gcd(&UQ::from_multi(&g.to_rational(), keep).expect("free of the eliminated variable"));
    }
    for i in 0..with.len() {
        for j in i + 1..with.len() {
            let res = resultant_in(with[i], with[j], elim);
            r = r.gcd(&UQ::from_multi(&res.to_rational(), keep).expect("eliminated"));
        }
    }
    if r.is_zero() || r.deg() == 0 {
        return None;
    }
    let (_, factors) = factor_z(&r.to_primitive_z());
    for (p, _) in factors {
        let k = NumberField::new(&p);
        let image = |f: &ZPoly| -> Vec<UQ> {
            let cs = f.coeffs_in(elim);
            k.kpoly_trim(cs.iter().map(|c| UQ::from_multi(&c.to_rational(), keep).expect("one variable left")).collect())
        };
        let mut h: Vec<UQ> = Vec::new();
        for g in gens {
            h = k.kpoly_gcd(&h, &image(g));
        }
        let bi = image(b);
        let hit = if h.is_empty() {
            !bi.is_empty()
        } else if h.len() >= 2 {
            !k.kpoly_rem(&bi, &k.kpoly_squarefree(&h)).is_empty()
        } else {
            false
        };
        if hit {
            let names = ["X1", "X2"];
            return Some(format!(
                "{} a root of {}, {} a root of a degree-{} factor over that field",
                names[keep],
                p.to_multi(1, 0).display_with(&[names[keep]]),
                names[elim],
                h.len().saturating_sub(1).max(usize::from(h.is_empty()))
            ));
        }
    }
    None
}
