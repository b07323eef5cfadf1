//! Kernel computation over Z_p and fraction-free integer determinants.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::modp;

/// Basis of the right kernel of `rows` (each of length `ncols`) over Z_p,
/// one vector per free column of the reduced row echelon form, in
/// increasing free-column order.
pub fn kernel_mod_p(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| x % p).collect()).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(found) = (r..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, found);
        let scale = modp::inv(m[r][col], p).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = modp::mul(*x, scale, p);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = modp::sub(*x, modp::mul(f, y, p), p);
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u64; ncols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = modp::sub(0, m[row][free], p);
        }
        basis.push(v);
    }
    basis
}

/// Rank over Z_p of a sparse matrix given as rows of `(column, value)`.
/// Pivots on the column with the fewest entries, which keeps fill-in low on
/// crossing relation matrices.
pub fn sparse_rank_mod_p(rows: &[Vec<(usize, u64)>], ncols: usize, p: u64) -> usize {
    let mut m: Vec<BTreeMap<usize, u64>> = rows
        .iter()
        .map(|r| {
            let mut row = BTreeMap::new();
            for &(c, v) in r {
                let e = row.entry(c).or_insert(0);
                *e = modp::add(*e, v % p, p);
            }
            row.retain(|_, v| *v != 0);
            row
        })
        .collect();
    let mut in_col: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (i, row) in m.iter().enumerate() {
        for &c in row.keys() {
            in_col[c].insert(i);
        }
    }
    let mut live: BTreeSet<usize> = (0..ncols).filter(|&c| !in_col[c].is_empty()).collect();
    let mut rank = 0;
    while let Some(col) = live.iter().copied().min_by_key(|&c| (in_col[c].len(), c)) {
        live.remove(&col);
        let Some(r) = in_col[col].iter().copied().min_by_key(|&i| (m[i].len(), i)) else { continue };
        let pivot = std::mem::take(&mut m[r]);
        for &c in pivot.keys() {
            in_col[c].remove(&r);
        }
        let inv = modp::inv(pivot[&col], p).expect("nonzero pivot");
        let others: Vec<usize> = in_col[col].iter().copied().collect();
        for i in others {
            let f = modp::mul(m[i][&col], inv, p);
            for (&c, &v) in &pivot {
                let e = m[i].entry(c).or_insert(0);
                let was_zero = *e == 0;
                *e = modp::sub(*e, modp::mul(f, v, p), p);
                if *e == 0 {
                    m[i].remove(&c);
                    in_col[c].remove(&i);
                } else if was_zero {
                    in_col[c].insert(i);
                }
            }
        }
        live.retain(|&c| !in_col[c].is_empty());
        rank += 1;
    }
    rank
}

/// Determinant of a square integer matrix by Bareiss elimination; every
/// intermediate division is exact.
pub fn bareiss_determinant(matrix: &[Vec<i64>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut m: Vec<Vec<BigInt>> = matrix.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

pub fn abs_determinant(matrix: &[Vec<i64>]) -> BigInt {
    bareiss_determinant(matrix).abs()
}
