//! Exact linear algebra over ℚ: rank and nullspace by fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// Scales a rational row to a primitive integer row.
fn integer_row(row: &[Q]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    primitive(ints)
}

fn primitive(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut row {
            *x /= &g;
        }
    }
    row
}

/// Row echelon form with the pivot column of each nonzero row.
///
/// Pivots are chosen deterministically: the leftmost column with a nonzero
/// entry, taking the first such row.
fn echelon(rows: &[Vec<Q>], ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(r) = (top..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(top, r);
        if m[top][col].is_negative() {
            for x in &mut m[top] {
                *x = -x.clone();
            }
        }
        let pivot_row = m[top].clone();
        for row in m.iter_mut().skip(top + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            let next: Vec<BigInt> = row
                .iter()
                .zip(&pivot_row)
                .map(|(x, p)| x * &pivot_row[col] - &factor * p)
                .collect();
            *row = primitive(next);
        }
        pivots.push(col);
        top += 1;
    }
    m.truncate(top);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    echelon(rows, ncols).1.len()
}

/// A basis of `{ c : M c = 0 }`, one vector per free column, with that free
/// coordinate set to 1 and the other free coordinates 0.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let (m, pivots) = echelon(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut c = vec![Q::zero(); ncols];
            c[f] = Q::one();
            for (row, &pc) in m.iter().zip(&pivots).rev() {
                let rest: Q = (pc + 1..ncols)
                    .map(|k| Q::from_integer(row[k].clone()) * &c[k])
                    .fold(Q::zero(), |acc, t| acc + t);
                c[pc] = -rest / Q::from_integer(row[pc].clone());
            }
            c
        })
        .collect()
}

/// Whether every vector of `inner` lies in the span of `outer`.
pub fn span_contains(outer: &[Vec<Q>], inner: &[Vec<Q>], ncols: usize) -> bool {
    let base = rank(outer, ncols);
    let joined: Vec<Vec<Q>> = outer.iter().chain(inner).cloned().collect();
    rank(&joined, ncols) == base
}

/// A linearly independent subfamily spanning the same space.
pub fn independent_subset(vectors: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut kept: Vec<Vec<Q>> = Vec::new();
    for v in vectors {
        kept.push(v.clone());
        if rank(&kept, ncols) < kept.len() {
            kept.pop();
        }
    }
    kept
}
