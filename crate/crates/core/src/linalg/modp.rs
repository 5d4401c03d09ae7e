//! Gaussian elimination over `Z/p` for word-sized primes, used as a cheap filter.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::upoly::pow_mod;

/// Two primes below `2^62`.
pub const FILTER_PRIMES: [u64; 2] = [4_611_686_018_427_387_847, 4_611_686_018_427_387_817];

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn reduce(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().expect("reduced residue fits")
}

/// Rank of the matrix modulo `p`.
pub fn rank_mod(rows: &[Vec<BigInt>], ncols: usize, p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| reduce(x, p)).collect()).collect();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for j in c..ncols {
            a[rank][j] = mulm(a[rank][j], inv, p);
        }
        for i in 0..a.len() {
            if i != rank && a[i][c] != 0 {
                let f = a[i][c];
                for j in c..ncols {
                    let t = mulm(f, a[rank][j], p);
                    a[i][j] = (a[i][j] + p - t) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Does `U y = b` have a solution modulo `p`?
pub fn consistent_mod(u: &[Vec<BigInt>], b: &[BigInt], ncols: usize, p: u64) -> bool {
    let aug: Vec<Vec<BigInt>> = u.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    rank_mod(u, ncols, p) == rank_mod(&aug, ncols + 1, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        let m: Vec<Vec<BigInt>> = vec![vec![1.into(), 2.into()], vec![2.into(), 4.into()]];
        assert_eq!(rank_mod(&m, 2, 7), 1);
        assert!(consistent_mod(&m, &[1.into(), 2.into()], 2, FILTER_PRIMES[0]));
        assert!(!consistent_mod(&m, &[1.into(), 3.into()], 2, FILTER_PRIMES[0]));
    }
}
