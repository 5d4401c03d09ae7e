//! Gauss-Jordan elimination over `Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<BigRational>>,
    /// Pivot column of each nonzero row, increasing.
    pub pivots: Vec<usize>,
    /// Original row index that supplied each pivot.
    pub pivot_rows: Vec<usize>,
    pub ncols: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn to_q(rows: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Row reduces `a` (pivot columns chosen left to right, first usable row wins).
pub fn rref(a: &[Vec<BigRational>], ncols: usize) -> Rref {
    let mut rows: Vec<Vec<BigRational>> = a.to_vec();
    let mut origin: Vec<usize> = (0..rows.len()).collect();
    let mut pivots = Vec::new();
    let mut pivot_rows = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        origin.swap(r, p);
        let inv = BigRational::one() / &rows[r][col];
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(col);
        pivot_rows.push(origin[r]);
        r += 1;
    }
    rows.truncate(r);
    Rref { rows, pivots, pivot_rows, ncols }
}

/// Basis of `{y : a y = 0}` over `Q`, one vector per free column.
pub fn kernel_q(a: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let e = rref(a, ncols);
    let mut out = Vec::new();
    let mut is_pivot = vec![false; ncols];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// A solution of `a y = b` over `Q` (free variables zero), if one exists.
pub fn solve_q(a: &[Vec<BigRational>], b: &[BigRational], ncols: usize) -> Option<Vec<BigRational>> {
    let aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let e = rref(&aug, ncols + 1);
    if e.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut y = vec![BigRational::zero(); ncols];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        y[p] = row[ncols].clone();
    }
    Some(y)
}

/// Incremental row space over `Q` for membership tests.
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Span {
    pub fn new() -> Self {
        Span { rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = &*x - &f * y;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[BigRational]) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = BigRational::one() / &r[p];
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    if !y.is_zero() {
                        *x = &*x - &f * y;
                    }
                }
            }
        }
        self.rows.push((p, r));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[&[i64]]) -> Vec<Vec<BigRational>> {
        v.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let e = rref(&a, 3);
        assert_eq!(e.rank(), 1);
        let k = kernel_q(&a, 3);
        assert_eq!(k.len(), 2);
        let b = q(&[&[1, 1]]);
        let y = solve_q(&b, &[BigRational::from_integer(3.into())], 2).unwrap();
        assert_eq!(&y[0] + &y[1], BigRational::from_integer(3.into()));
        assert!(solve_q(&q(&[&[0, 0]]), &[BigRational::one()], 2).is_none());
    }

    #[test]
    fn span_membership() {
        let mut s = Span::new();
        assert!(s.insert(&q(&[&[1, 2, 0]])[0]));
        assert!(s.insert(&q(&[&[0, 1, 1]])[0]));
        assert!(s.contains(&q(&[&[1, 3, 1]])[0]));
        assert!(!s.insert(&q(&[&[2, 5, 1]])[0]));
        assert!(!s.contains(&q(&[&[0, 0, 1]])[0]));
    }
}
