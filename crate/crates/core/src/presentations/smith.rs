//! Smith normal form over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Diagonal of the Smith normal form of a `rows x cols` matrix, nonnegative,
/// each entry dividing the next, zeros last.
pub fn smith_diagonal(mut m: Vec<Vec<BigInt>>, cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let steps = rows.min(cols);
    let mut diag = Vec::with_capacity(steps);
    for k in 0..steps {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pr, pc)) = min_entry(&m, k, cols) else {
            break;
        };
        m.swap(k, pr);
        for row in m.iter_mut() {
            row.swap(k, pc);
        }
        loop {
            let mut dirty = false;
            for r in k + 1..rows {
                if m[r][k].is_zero() {
                    continue;
                }
                let q = m[r][k].div_floor(&m[k][k]);
                let (top, bottom) = m.split_at_mut(r);
                for (x, p) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                    *x -= &q * p;
                }
                dirty |= !m[r][k].is_zero();
            }
            for c in k + 1..cols {
                if m[k][c].is_zero() {
                    continue;
                }
                let q = m[k][c].div_floor(&m[k][k]);
                for row in m.iter_mut().skip(k) {
                    let t = &q * &row[k];
                    row[c] -= t;
                }
                dirty |= !m[k][c].is_zero();
            }
            if !dirty {
                // pivot must divide the rest of the block
                let bad = (k + 1..rows)
                    .flat_map(|r| (k + 1..cols).map(move |c| (r, c)))
                    .find(|&(r, c)| !m[r][c].is_multiple_of(&m[k][k]));
                match bad {
                    None => break,
                    Some((r, _)) => {
                        let (top, bottom) = m.split_at_mut(r);
                        for (p, x) in top[k][k..].iter_mut().zip(&bottom[0][k..]) {
                            *p += x;
                        }
                        continue;
                    }
                }
            }
            let (pr, pc) = min_entry(&m, k, cols).expect("block still nonzero");
            m.swap(k, pr);
            for row in m.iter_mut() {
                row.swap(k, pc);
            }
        }
        diag.push(m[k][k].abs());
    }
    diag.resize(steps, BigInt::zero());
    diag
}

fn min_entry(m: &[Vec<BigInt>], k: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (r, row) in m.iter().enumerate().skip(k) {
        for (c, v) in row.iter().enumerate().take(cols).skip(k) {
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(br, bc)| v.abs() < m[br][bc].abs()) {
                best = Some((r, c));
            }
        }
    }
    best
}

/// Rank and nontrivial invariant factors.
pub fn invariant_factors(m: Vec<Vec<BigInt>>, cols: usize) -> (usize, Vec<BigInt>) {
    let diag = smith_diagonal(m, cols);
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = diag
        .into_iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .collect();
    (rank, torsion)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn small_cases() {
        let d = smith_diagonal(big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3);
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let d = smith_diagonal(big(&[&[2, 0], &[0, 3]]), 2);
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(6)]);
        let d = smith_diagonal(big(&[&[0, 0], &[0, 0]]), 2);
        assert_eq!(d, vec![BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn rectangular() {
        let (rank, torsion) = invariant_factors(big(&[&[2, 0], &[0, 0], &[0, 2], &[4, 4]]), 2);
        assert_eq!(rank, 2);
        assert_eq!(torsion, vec![BigInt::from(2), BigInt::from(2)]);
        let (rank, torsion) = invariant_factors(Vec::new(), 3);
        assert_eq!((rank, torsion.len()), (0, 0));
    }
}
