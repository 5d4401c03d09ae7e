//! Exact integer linear algebra with height certificates.
//!
//! [`kernel_basis_int`] follows the minor construction: with `M` a nonsingular
//! `r x r` block (pivot columns found left to right), each free column `k`
//! gives the vector with `det M` at `k` and the signed Cramer minors on the
//! pivot columns. [`solve_int_small`] decides solvability through the column
//! Hermite form and then shortens the particular solution against an
//! LLL-reduced kernel lattice.

mod lattice;
pub mod modp;
pub mod rational;

pub use lattice::{lll, reduce_against};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::ZPoly;

/// Dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    #[serde(with = "bigint_rows")]
    pub data: Vec<Vec<BigInt>>,
}

mod bigint_rows {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let t: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        t.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let t: Vec<Vec<serde_json::Value>> = Vec::deserialize(d)?;
        t.into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| {
                        let s = match x {
                            serde_json::Value::String(s) => s,
                            other => other.to_string(),
                        };
                        s.parse::<BigInt>().map_err(serde::de::Error::custom)
                    })
                    .collect()
            })
            .collect()
    }
}

impl IntMatrix {
    pub fn new(data: Vec<Vec<BigInt>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows, cols, data }
    }

    /// Matrix with the given shape; needed when there are no rows.
    pub fn with_shape(rows: usize, cols: usize, data: Vec<Vec<BigInt>>) -> Self {
        assert_eq!(data.len(), rows);
        assert!(data.iter().all(|r| r.len() == cols));
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64(v: &[&[i64]]) -> Self {
        Self::new(v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect()).collect())
    }

    /// `max(1, max |entry|)`; the log of this is the height `h(U)`.
    pub fn height_base(&self) -> BigInt {
        self.data.iter().flatten().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero).max(BigInt::one())
    }

    pub fn mul_vec(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.data.iter().map(|r| r.iter().zip(y).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows);
        let data = (0..self.rows)
            .map(|i| (0..o.cols).map(|j| (0..self.cols).map(|k| &self.data[i][k] * &o.data[k][j]).sum()).collect())
            .collect();
        IntMatrix::with_shape(self.rows, o.cols, data)
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    /// `[U, b]`
    pub fn augmented(&self, b: &[BigInt]) -> IntMatrix {
        let data = self
            .data
            .iter()
            .zip(b)
            .map(|(r, x)| {
                let mut r = r.clone();
                r.push(x.clone());
                r
            })
            .collect();
        IntMatrix::with_shape(self.rows, self.cols + 1, data)
    }

    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        det_bareiss(self.data.clone())
    }

    pub fn rank(&self) -> usize {
        rational::rref(&rational::to_q(&self.data), self.cols).rank()
    }
}

/// Fraction-free determinant.
pub fn det_bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Fraction-free determinant over `Z[X1..Xn]`.
pub fn det_bareiss_poly(mut a: Vec<Vec<ZPoly>>, nvars: usize) -> ZPoly {
    let n = a.len();
    if n == 0 {
        return ZPoly::one(nvars);
    }
    let mut negate = false;
    let mut prev = ZPoly::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else { return ZPoly::zero(nvars) };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Column Hermite normal form `H = U T` with `T` unimodular.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub t: IntMatrix,
    /// `(row, col)` of each pivot; pivot columns are `0..rank`.
    pub pivots: Vec<(usize, usize)>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns of `T` spanning the integer kernel of `U` (a lattice basis).
    pub fn kernel_lattice(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.t.cols).map(|j| self.t.column(j)).collect()
    }
}

fn col_op(m: &mut [Vec<BigInt>], k: usize, j: usize, a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) {
    // (col_k, col_j) <- (a col_k + b col_j, c col_k + d col_j)
    for row in m.iter_mut() {
        let x = row[k].clone();
        let y = row[j].clone();
        row[k] = a * &x + b * &y;
        row[j] = c * &x + d * &y;
    }
}

/// Lower staircase column Hermite form: pivots positive, entries left of a
/// pivot reduced into `[0, pivot)`, columns right of the rank zero.
pub fn hnf(u: &IntMatrix) -> Hnf {
    let (m, n) = (u.rows, u.cols);
    let mut h = u.data.clone();
    let mut t = IntMatrix::identity(n).data;
    let mut pivots = Vec::new();
    let mut k = 0;
    for i in 0..m {
        if k == n {
            break;
        }
        for j in k + 1..n {
            if h[i][j].is_zero() {
                continue;
            }
            let (a, b) = (h[i][k].clone(), h[i][j].clone());
            let eg = a.extended_gcd(&b);
            let g = eg.gcd;
            let (s, tt) = (eg.x, eg.y);
            let (c, d) = (-(&b / &g), &a / &g);
            col_op(&mut h, k, j, &s, &tt, &c, &d);
            col_op(&mut t, k, j, &s, &tt, &c, &d);
        }
        if h[i][k].is_zero() {
            continue;
        }
        if h[i][k].is_negative() {
            for row in h.iter_mut().chain(t.iter_mut()) {
                row[k] = -row[k].clone();
            }
        }
        for j in 0..k {
            let q = h[i][j].div_floor(&h[i][k]);
            if !q.is_zero() {
                for row in h.iter_mut().chain(t.iter_mut()) {
                    let v = &row[j] - &q * &row[k];
                    row[j] = v;
                }
            }
        }
        pivots.push((i, k));
        k += 1;
    }
    Hnf { h: IntMatrix::with_shape(m, n, h), t: IntMatrix::with_shape(n, n, t), pivots }
}

/// Exact check of `h(y) <= m h(U) + (m/2) log m`, i.e. `max|y|^2 <= H^(2m) m^m`
/// with `H = max(1, max|U|)`.
pub fn within_height_bound(y: &[BigInt], m: usize, h_base: &BigInt) -> bool {
    let ymax = y.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero);
    if ymax.is_zero() {
        return true;
    }
    let lhs = &ymax * &ymax;
    let rhs = num_traits::pow(h_base.clone(), 2 * m) * num_traits::pow(BigInt::from(m), m);
    lhs <= rhs
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

/// Integer vectors spanning `{y in Q^n : U y = 0}` with `h(y) <= m h(U) + (m/2) log m`.
///
/// Pivot columns are the first independent columns left to right; each
/// vector is the Cramer-minor vector of one free column, divided by its content.
pub fn kernel_basis_int(u: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = u.cols;
    let e = rational::rref(&rational::to_q(&u.data), n);
    let r = e.rank();
    let mut is_pivot = vec![false; n];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let block: Vec<Vec<BigInt>> =
        e.pivot_rows.iter().map(|&i| e.pivots.iter().map(|&c| u.data[i][c].clone()).collect()).collect();
    let delta = det_bareiss(block);
    let dq = BigRational::from_integer(delta.clone());
    let mut out = Vec::with_capacity(n - r);
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![BigInt::zero(); n];
        v[free] = delta.clone();
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            let x = -(&row[free] * &dq);
            debug_assert!(x.is_integer());
            v[p] = x.to_integer();
        }
        let v = primitive(v);
        // first nonzero entry positive
        let v = match v.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => v.into_iter().map(|x| -x).collect(),
            _ => v,
        };
        out.push(v);
    }
    out
}

/// Outcome of [`solve_int_small`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntSolution {
    Solution(Vec<BigInt>),
    Unsolvable,
}

/// Some integer solution of `U y = b`, shortened against the kernel lattice.
pub fn solve_int(u: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(u.rows, b.len());
    let n = u.cols;
    if b.iter().all(Zero::is_zero) {
        return Some(vec![BigInt::zero(); n]);
    }
    let f = hnf(u);
    // forward substitution on the staircase
    let mut z = vec![BigInt::zero(); n];
    for &(i, k) in &f.pivots {
        let s: BigInt = (0..k).map(|j| &f.h.data[i][j] * &z[j]).sum();
        let (q, rem) = (&b[i] - s).div_rem(&f.h.data[i][k]);
        if !rem.is_zero() {
            return None;
        }
        z[k] = q;
    }
    if f.h.mul_vec(&z) != b {
        return None;
    }
    let y0 = f.t.mul_vec(&z);
    let lattice = f.kernel_lattice();
    let reduced = if lattice.is_empty() {
        y0
    } else if lattice.len() <= 24 && n <= 64 {
        reduce_against(&y0, &lll(lattice))
    } else {
        reduce_against(&y0, &lattice)
    };
    debug_assert_eq!(u.mul_vec(&reduced), b);
    Some(reduced)
}

/// Integer solution of `U y = b` with `h(y) <= m h([U,b]) + (m/2) log m`, or `Unsolvable`.
///
/// A `Defect` error means the shortened solution still exceeded the bound.
pub fn solve_int_small(u: &IntMatrix, b: &[BigInt]) -> Result<IntSolution> {
    let Some(reduced) = solve_int(u, b) else { return Ok(IntSolution::Unsolvable) };
    let hb = u.augmented(b).height_base();
    if !within_height_bound(&reduced, u.rows, &hb) {
        return Err(Error::defect(format!(
            "shortened solution exceeds the minor bound ({} rows, max entry {})",
            u.rows,
            reduced.iter().map(|x| x.abs()).max().unwrap()
        )));
    }
    Ok(IntSolution::Solution(reduced))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&a| BigInt::from(a)).collect()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis_int(&IntMatrix::from_i64(&[&[1, 1]])), vec![v(&[1, -1])]);
        let k = kernel_basis_int(&IntMatrix::from_i64(&[&[2, 3]]));
        assert_eq!(k, vec![v(&[3, -2])]);
        assert!(kernel_basis_int(&IntMatrix::identity(3)).is_empty());
        let z = IntMatrix::from_i64(&[&[0, 0]]);
        assert_eq!(kernel_basis_int(&z).len(), 2);
    }

    #[test]
    fn solve_examples() {
        let u = IntMatrix::from_i64(&[&[2, 3]]);
        match solve_int_small(&u, &v(&[1])).unwrap() {
            IntSolution::Solution(y) => {
                assert_eq!(u.mul_vec(&y), v(&[1]));
                assert!(y.iter().all(|x| x.abs() <= BigInt::from(1)));
            }
            _ => panic!(),
        }
        assert_eq!(solve_int_small(&IntMatrix::from_i64(&[&[2]]), &v(&[1])).unwrap(), IntSolution::Unsolvable);
        assert_eq!(
            solve_int_small(&IntMatrix::identity(2), &v(&[4, 7])).unwrap(),
            IntSolution::Solution(v(&[4, 7]))
        );
    }

    #[test]
    fn hnf_examples() {
        let u = IntMatrix::from_i64(&[&[4, 6]]);
        let f = hnf(&u);
        assert_eq!(f.h, IntMatrix::from_i64(&[&[2, 0]]));
        assert_eq!(u.mul(&f.t), f.h);
        assert_eq!(f.t.det().abs(), BigInt::one());
        let f = hnf(&IntMatrix::from_i64(&[&[2, 3]]));
        assert_eq!(f.h, IntMatrix::from_i64(&[&[1, 0]]));
        let f = hnf(&IntMatrix::identity(3));
        assert_eq!(f.h, IntMatrix::identity(3));
        assert_eq!(f.t, IntMatrix::identity(3));
    }

    #[test]
    fn determinants() {
        assert_eq!(IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(IntMatrix::from_i64(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]).det(), BigInt::from(18));
    }
}
