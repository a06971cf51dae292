//! Constructive membership: factor level 2 matrices over `E(i,j)` and `F(i)`.
//!
//! Columns are cleared one at a time by left multiplication. In column `c`
//! every off-pivot entry is reduced modulo twice the pivot with `E(i,c)`
//! powers, then the pivot is reduced modulo twice the smallest nonzero
//! off-pivot entry of an unfinished row with `E(c,i)` powers; the two moves
//! alternate until the column is `±e_c`, and `F(c)` fixes the sign. Neither
//! move touches a finished column.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmat::{generator_matrix, is_level2, GeneratorId, IntMatrix};
use crate::words::{free_reduce, Letter, Word};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    /// Generator powers applied on the left, in order.
    pub steps: Vec<Letter>,
    /// Distance to `±e_t` before the first step and after each Euclidean
    /// step: off-pivot absolute sum plus `|pivot| - 1`.
    pub metrics: Vec<BigInt>,
}

impl ReductionTrace {
    pub fn strictly_decreasing(&self) -> bool {
        self.metrics.windows(2).all(|w| w[1] < w[0])
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorTrace {
    /// One trace per column, in processing order.
    pub columns: Vec<(usize, ReductionTrace)>,
}

/// Quotient `m` with `a - m*d` of least absolute value, ties to the
/// nonnegative remainder.
fn nearest_quotient(a: &BigInt, d: &BigInt) -> BigInt {
    let ad = d.abs();
    let r0 = a.mod_floor(&ad);
    let r1 = &r0 - &ad;
    let r = if r1.abs() < r0 { r1 } else { r0 };
    (a - r) / d
}

fn exponent(m: &BigInt) -> Result<i64> {
    m.to_i64()
        .ok_or_else(|| Error::Precondition(format!("exponent {m} does not fit in 64 bits")))
}

fn distance(col: &[BigInt], pivot: usize) -> BigInt {
    col.iter()
        .enumerate()
        .map(|(i, a)| if i == pivot { a.abs() - 1 } else { a.abs() })
        .sum()
}

/// Column reduction of `v` towards `±e_{pivot}`; rows in `frozen` are never
/// used to reduce the pivot. Each recorded step is an `E` power applied on
/// the left. The vector is updated in place; `on_step` sees every step.
fn reduce_column(
    v: &mut [BigInt],
    pivot: usize,
    frozen: &[bool],
    trace: &mut ReductionTrace,
    mut on_step: impl FnMut(usize, usize, &BigInt),
) -> Result<()> {
    let n = v.len();
    trace.metrics.push(distance(v, pivot));
    loop {
        for i in (0..n).filter(|&i| i != pivot) {
            if v[i].is_zero() {
                continue;
            }
            let m = nearest_quotient(&v[i], &(BigInt::from(2) * &v[pivot]));
            if m.is_zero() {
                continue;
            }
            // E(i,pivot)^(-m): row i -= 2m * row pivot
            let t = BigInt::from(2) * &m * &v[pivot];
            v[i] -= t;
            on_step(i, pivot, &-&m);
            trace.steps.push(Letter::new(GeneratorId::E(i + 1, pivot + 1), exponent(&-&m)?));
            trace.metrics.push(distance(v, pivot));
        }
        let candidate = (0..n)
            .filter(|&i| i != pivot && !frozen[i] && !v[i].is_zero())
            .min_by(|&a, &b| v[a].abs().cmp(&v[b].abs()).then(a.cmp(&b)));
        let Some(k) = candidate else {
            break;
        };
        let m = nearest_quotient(&v[pivot], &(BigInt::from(2) * &v[k]));
        let t = BigInt::from(2) * &m * &v[k];
        v[pivot] -= t;
        on_step(pivot, k, &-&m);
        trace.steps.push(Letter::new(GeneratorId::E(pivot + 1, k + 1), exponent(&-&m)?));
        trace.metrics.push(distance(v, pivot));
    }
    if !v[pivot].abs().is_one() || (0..n).any(|i| i != pivot && !v[i].is_zero()) {
        return Err(Error::Consistency(
            "column did not reduce to a signed unit vector".into(),
        ));
    }
    Ok(())
}

/// Row operation `row_i += 2 m row_j` on a matrix.
fn add_rows(a: &mut IntMatrix, i: usize, j: usize, m: &BigInt) {
    let n = a.dim();
    for c in 0..n {
        let t = BigInt::from(2) * m * a.at(j, c);
        if !t.is_zero() {
            *a.at_mut(i, c) += t;
        }
    }
}

fn negate_row(a: &mut IntMatrix, i: usize) {
    for c in 0..a.dim() {
        let v = -a.at(i, c).clone();
        *a.at_mut(i, c) = v;
    }
}

/// Factor `A` processing columns in the given order (1-based indices).
pub(crate) fn factor_with_order(a: &IntMatrix, order: &[usize]) -> Result<(Word, FactorTrace)> {
    let n = a.dim();
    if !is_level2(a) {
        return Err(Error::NotLevel2(n));
    }
    let mut cur = a.clone();
    let mut frozen = vec![false; n];
    let mut inverse_ops: Vec<Letter> = Vec::new();
    let mut trace = FactorTrace::default();
    for &col in order {
        let c = col - 1;
        let mut v = cur.column(col);
        let mut column_trace = ReductionTrace::default();
        let mut ops: Vec<(usize, usize, BigInt)> = Vec::new();
        reduce_column(&mut v, c, &frozen, &mut column_trace, |i, j, m| {
            ops.push((i, j, m.clone()));
        })?;
        for (i, j, m) in &ops {
            add_rows(&mut cur, *i, *j, m);
        }
        for step in &column_trace.steps {
            inverse_ops.push(step.inverse());
        }
        if v[c].is_negative() {
            negate_row(&mut cur, c);
            column_trace.steps.push(Letter::new(GeneratorId::F(col), 1));
            inverse_ops.push(Letter::new(GeneratorId::F(col), 1));
        }
        frozen[c] = true;
        trace.columns.push((col, column_trace));
    }
    if !cur.is_identity() {
        return Err(Error::Consistency("factorization did not reach the identity".into()));
    }
    Ok((free_reduce(&Word::from_letters(inverse_ops)), trace))
}

/// A word over `E(i,j)`, `F(i)` evaluating to `A`.
pub fn factor(a: &IntMatrix) -> Result<Word> {
    Ok(factor_traced(a)?.0)
}

pub fn factor_traced(a: &IntMatrix) -> Result<(Word, FactorTrace)> {
    let order: Vec<usize> = (1..=a.dim()).collect();
    factor_with_order(a, &order)
}

/// Factor a matrix fixing `e_t` using only generators that fix `e_t`.
pub fn factor_in_stabilizer(a: &IntMatrix, t: usize) -> Result<Word> {
    let n = a.dim();
    if t < 1 || t > n {
        return Err(Error::IndexOutOfRange {
            what: format!("axis {t}"),
            n,
        });
    }
    if a.column(t) != IntMatrix::identity(n).column(t) {
        return Err(Error::Precondition(format!("matrix does not fix e_{t}")));
    }
    let order: Vec<usize> = std::iter::once(t).chain((1..=n).filter(|&c| c != t)).collect();
    Ok(factor_with_order(a, &order)?.0)
}

/// Word `w` with `evaluate(w) * v = e_t`.
///
/// `v` must have an odd entry at `t` and even entries elsewhere.
pub fn reduce_vector(v: &[BigInt], t: usize) -> Result<(Word, ReductionTrace)> {
    let n = v.len();
    if t < 1 || t > n {
        return Err(Error::IndexOutOfRange {
            what: format!("pivot {t}"),
            n,
        });
    }
    let parity_ok = v
        .iter()
        .enumerate()
        .all(|(i, a)| a.is_odd() == (i + 1 == t));
    if !parity_ok {
        return Err(Error::Precondition(format!(
            "vector needs an odd entry at {t} and even entries elsewhere"
        )));
    }
    let mut cur = v.to_vec();
    let mut trace = ReductionTrace::default();
    reduce_column(&mut cur, t - 1, &vec![false; n], &mut trace, |_, _, _| {}).map_err(|_| {
        Error::Precondition("vector is not a column of an invertible matrix".into())
    })?;
    if cur[t - 1].is_negative() {
        trace.steps.push(Letter::new(GeneratorId::F(t), 1));
    }
    let mut letters = trace.steps.clone();
    letters.reverse();
    Ok((free_reduce(&Word::from_letters(letters)), trace))
}

fn gl2_letter(name: &str, k: i64) -> Letter {
    Letter::new(GeneratorId::named(name), k)
}

/// A word over `x, y, z` evaluating to a unimodular `2 x 2` matrix.
pub fn factor_gl2(a: &IntMatrix) -> Result<Word> {
    if a.dim() != 2 {
        return Err(Error::DimensionMismatch(format!("expected 2x2, got {0}x{0}", a.dim())));
    }
    let det = a.det();
    if !det.abs().is_one() {
        return Err(Error::NotUnimodular(det.to_string()));
    }
    let mut cur = a.clone();
    let mut ops: Vec<Letter> = Vec::new();
    // left multiplication by x^k: row0 -= k row1; by y^k: row1 += k row0
    let apply = |cur: &mut IntMatrix, ops: &mut Vec<Letter>, l: Letter| {
        let k = BigInt::from(l.exponent);
        let (dst, src, f) = match &l.symbol {
            GeneratorId::Named(s) if s == "x" => (0, 1, -k),
            _ => (1, 0, k),
        };
        for c in 0..2 {
            let t = &f * cur.at(src, c);
            *cur.at_mut(dst, c) += t;
        }
        ops.push(l);
    };
    if det.is_negative() {
        let (r0, r1) = (cur.column(1), cur.column(2));
        cur = IntMatrix::from_rows(&[vec![r0[1].clone(), r1[1].clone()], vec![r0[0].clone(), r1[0].clone()]])?;
        ops.push(gl2_letter("z", 1));
    }
    while !cur.at(1, 0).is_zero() {
        if cur.at(0, 0).is_zero() {
            apply(&mut cur, &mut ops, gl2_letter("x", -1));
            continue;
        }
        let q = cur.at(1, 0) / cur.at(0, 0);
        if !q.is_zero() {
            apply(&mut cur, &mut ops, gl2_letter("y", -exponent(&q)?));
        }
        if cur.at(1, 0).is_zero() {
            break;
        }
        let q = cur.at(0, 0) / cur.at(1, 0);
        if !q.is_zero() {
            apply(&mut cur, &mut ops, gl2_letter("x", exponent(&q)?));
        }
    }
    if cur.at(0, 0).is_negative() {
        // (xy)^3 = -I
        for _ in 0..3 {
            apply(&mut cur, &mut ops, gl2_letter("x", 1));
            apply(&mut cur, &mut ops, gl2_letter("y", 1));
        }
    }
    let b = exponent(cur.at(0, 1))?;
    if b != 0 {
        apply(&mut cur, &mut ops, gl2_letter("x", b));
    }
    // z is its own inverse
    let letters: Vec<Letter> = ops
        .iter()
        .map(|l| if l.exponent == 1 && l.symbol == GeneratorId::named("z") { l.clone() } else { l.inverse() })
        .collect();
    Ok(free_reduce(&Word::from_letters(letters)))
}

/// Matrix of a standard generator power, for callers building words by hand.
pub fn letter_matrix(l: &Letter, n: usize) -> Result<IntMatrix> {
    generator_matrix(&l.symbol, n)?.pow(l.exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::gl2z_presentation;
    use crate::words::evaluate;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_factorizations() {
        assert!(factor(&IntMatrix::identity(3)).unwrap().is_empty());
        let e12 = generator_matrix(&GeneratorId::E(1, 2), 3).unwrap();
        assert_eq!(factor(&e12).unwrap().to_string(), "E(1,2)");
        assert_eq!(factor(&m(&[&[1, 4], &[0, 1]])).unwrap().to_string(), "E(1,2)^2");
        let g4 = m(&[&[-1, 0], &[2, 1]]);
        let w = factor(&g4).unwrap();
        assert_eq!(evaluate(&w, 2).unwrap(), g4);
        assert!(matches!(factor(&m(&[&[1, 1], &[0, 1]])), Err(Error::NotLevel2(2))));
    }

    #[test]
    fn vector_reduction() {
        let (w, _) = reduce_vector(&big(&[1, 0]), 1).unwrap();
        assert!(w.is_empty());
        let v = big(&[1, 2]);
        let (w, trace) = reduce_vector(&v, 1).unwrap();
        assert_eq!(evaluate(&w, 2).unwrap().mul_vec(&v), big(&[1, 0]));
        assert!(trace.strictly_decreasing());
        let (w, _) = reduce_vector(&big(&[-1, 0]), 1).unwrap();
        assert_eq!(w.to_string(), "F(1)");
        assert!(reduce_vector(&big(&[2, 1]), 1).is_err());
    }

    #[test]
    fn long_vector_reduction_is_monotone() {
        let v = big(&[7, 2, -4]);
        // column of a level 2 matrix: gcd 1
        let (w, trace) = reduce_vector(&v, 1).unwrap();
        assert_eq!(evaluate(&w, 3).unwrap().mul_vec(&v), big(&[1, 0, 0]));
        assert!(trace.strictly_decreasing());
        assert!(trace.metrics.len() > 2);
    }

    #[test]
    fn stabilizer_factoring_uses_stabilizer_generators() {
        let a = evaluate(&crate::parse_word("E(1,2)^3 E(3,2) F(2) E(2,3)^-2 E(1,3)").unwrap(), 3).unwrap();
        let w = factor_in_stabilizer(&a, 1).unwrap();
        assert_eq!(evaluate(&w, 3).unwrap(), a);
        for s in w.symbols() {
            let g = generator_matrix(s, 3).unwrap();
            assert_eq!(g.column(1), IntMatrix::identity(3).column(1), "{s}");
        }
    }

    #[test]
    fn gl2_factorization() {
        let p = gl2z_presentation();
        assert!(factor_gl2(&IntMatrix::identity(2)).unwrap().is_empty());
        assert_eq!(factor_gl2(&m(&[&[0, 1], &[1, 0]])).unwrap().to_string(), "z");
        for a in [
            m(&[&[0, -1], &[1, 1]]),
            m(&[&[-1, 0], &[0, -1]]),
            m(&[&[5, 3], &[3, 2]]),
            m(&[&[2, 5], &[1, 3]]),
            m(&[&[-7, 2], &[4, -1]]),
            m(&[&[0, 1], &[-1, 0]]),
        ] {
            let w = factor_gl2(&a).unwrap();
            assert_eq!(p.evaluate(&w).unwrap(), a, "{w}");
        }
        assert!(factor_gl2(&m(&[&[2, 0], &[0, 1]])).is_err());
    }
}
