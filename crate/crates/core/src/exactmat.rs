//! Exact integer and mod-2 matrix arithmetic.
//!
//! [`IntMatrix`] carries arbitrary-precision entries: long words over the
//! level 2 generators grow entries exponentially, so fixed-width integers are
//! not an option. All public indices (generator indices, [`IntMatrix::entry`])
//! are 1-based.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest dimension accepted by the enumeration helpers.
pub const ENUMERATION_BOUND: usize = 4;

/// Square integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntMatrix { n, entries }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    r + 1,
                    row.len(),
                    n
                )));
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { n, entries })
    }

    /// Convenience constructor for literal data; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Self::from_rows(&rows).expect("square literal matrix")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry at 1-based position `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> &BigInt {
        assert!(row >= 1 && row <= self.n && col >= 1 && col <= self.n);
        &self.entries[(row - 1) * self.n + (col - 1)]
    }

    pub(crate) fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.n + c]
    }

    pub(crate) fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.n + c]
    }

    /// Column `col` (1-based) as a vector.
    pub fn column(&self, col: usize) -> Vec<BigInt> {
        assert!(col >= 1 && col <= self.n);
        (0..self.n).map(|r| self.at(r, col - 1).clone()).collect()
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|r| {
            (0..self.n).all(|c| {
                let e = self.at(r, c);
                if r == c {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch in product");
        let n = self.n;
        let mut entries = vec![BigInt::zero(); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        entries[r * n + c] += a * b;
                    }
                }
            }
        }
        IntMatrix { n, entries }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|r| {
                (0..self.n)
                    .map(|c| self.at(r, c) * &v[c])
                    .fold(BigInt::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        let mut m: Vec<Vec<BigInt>> = self.rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        sign * &m[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// Exact inverse of a unimodular matrix.
    ///
    /// Integer Gauss-Jordan on `[A | I]` using Euclidean row operations only;
    /// the pivots can be brought to `±1` exactly when `det A = ±1`.
    pub fn inverse(&self) -> Result<IntMatrix> {
        let n = self.n;
        let mut a = self.rows();
        let mut b = IntMatrix::identity(n).rows();
        for c in 0..n {
            // Euclid down column c among rows c..n until one nonzero entry remains.
            loop {
                let nonzero: Vec<usize> = (c..n).filter(|&r| !a[r][c].is_zero()).collect();
                if nonzero.is_empty() {
                    return Err(Error::NotUnimodular(self.det().to_string()));
                }
                let p = *nonzero
                    .iter()
                    .min_by(|&&x, &&y| a[x][c].abs().cmp(&a[y][c].abs()).then(x.cmp(&y)))
                    .expect("nonempty");
                if nonzero.len() == 1 {
                    a.swap(c, p);
                    b.swap(c, p);
                    break;
                }
                for &r in &nonzero {
                    if r == p {
                        continue;
                    }
                    let q = a[r][c].div_floor(&a[p][c]);
                    for j in 0..n {
                        let t = &q * &a[p][j];
                        a[r][j] -= t;
                        let t = &q * &b[p][j];
                        b[r][j] -= t;
                    }
                }
            }
            if !a[c][c].abs().is_one() {
                return Err(Error::NotUnimodular(self.det().to_string()));
            }
            if a[c][c].is_negative() {
                for j in 0..n {
                    a[c][j] = -&a[c][j];
                    b[c][j] = -&b[c][j];
                }
            }
            for r in 0..n {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let q = a[r][c].clone();
                for j in 0..n {
                    let t = &q * &a[c][j];
                    a[r][j] -= t;
                    let t = &q * &b[c][j];
                    b[r][j] -= t;
                }
            }
        }
        IntMatrix::from_rows(&b)
    }

    /// `self^k` for any integer `k`; negative powers require unimodularity.
    pub fn pow(&self, k: i64) -> Result<IntMatrix> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        Ok(base.pow_unsigned(k.unsigned_abs()))
    }

    pub(crate) fn pow_unsigned(&self, mut e: u64) -> IntMatrix {
        let mut result = IntMatrix::identity(self.n);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        result
    }

    /// `X A X^{-1}`.
    pub fn conjugate_by(&self, x: &IntMatrix) -> Result<IntMatrix> {
        Ok(x.mul(self).mul(&x.inverse()?))
    }

    /// The `(n-1)`-matrix obtained by deleting row `row` and column `col` (1-based).
    pub fn minor(&self, row: usize, col: usize) -> IntMatrix {
        assert!(self.n >= 2);
        let mut entries = Vec::with_capacity((self.n - 1) * (self.n - 1));
        for r in 0..self.n {
            if r + 1 == row {
                continue;
            }
            for c in 0..self.n {
                if c + 1 != col {
                    entries.push(self.at(r, c).clone());
                }
            }
        }
        IntMatrix {
            n: self.n - 1,
            entries,
        }
    }
}

impl fmt::Display for IntMatrix {
    /// Matrix text format: rows joined by `;`, entries by `,`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.entries.chunks(self.n).enumerate() {
            if r > 0 {
                f.write_str(";")?;
            }
            for (c, e) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix[{self}]")
    }
}

impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut offset = 0;
        for row_text in s.split(';') {
            let mut row = Vec::new();
            let mut col_offset = offset;
            for cell in row_text.split(',') {
                let trimmed: String = cell.chars().filter(|c| !c.is_whitespace()).collect();
                let value = BigInt::from_str(&trimmed).map_err(|_| {
                    Error::parse(col_offset, format!("invalid matrix entry {:?}", cell.trim()))
                })?;
                row.push(value);
                col_offset += cell.len() + 1;
            }
            rows.push(row);
            offset += row_text.len() + 1;
        }
        let n = rows.len();
        if let Some((r, row)) = rows.iter().enumerate().find(|(_, row)| row.len() != n) {
            return Err(Error::parse(
                0,
                format!("row {} has {} entries, expected {}", r + 1, row.len(), n),
            ));
        }
        IntMatrix::from_rows(&rows)
    }
}

/// Generator symbols. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorId {
    /// `I + 2 e_i e_j^T`.
    E(usize, usize),
    /// Sign flip of coordinate `i`.
    F(usize),
    /// `I + e_i e_j^T`.
    T(usize, usize),
    /// Transposition of coordinates `i` and `i+1`.
    S(usize),
    Named(String),
}

impl GeneratorId {
    pub fn named(label: impl Into<String>) -> Self {
        GeneratorId::Named(label.into())
    }

    /// True for the symbols with a built-in matrix.
    pub fn is_standard(&self) -> bool {
        !matches!(self, GeneratorId::Named(_))
    }

    /// Identifier-safe spelling used when tagging per-vertex copies, e.g. `E1_2`.
    pub fn compact_label(&self) -> String {
        match self {
            GeneratorId::E(i, j) => format!("E{i}_{j}"),
            GeneratorId::F(i) => format!("F{i}"),
            GeneratorId::T(i, j) => format!("T{i}_{j}"),
            GeneratorId::S(i) => format!("S{i}"),
            GeneratorId::Named(s) => s.clone(),
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let out = |what: String| Err(Error::IndexOutOfRange { what, n });
        match *self {
            GeneratorId::E(i, j) | GeneratorId::T(i, j) => {
                if i == j {
                    return Err(Error::InvalidGenerator(format!("{self}: indices must differ")));
                }
                if i < 1 || j < 1 || i > n || j > n {
                    return out(self.to_string());
                }
            }
            GeneratorId::F(i) => {
                if i < 1 || i > n {
                    return out(self.to_string());
                }
            }
            GeneratorId::S(i) => {
                if i < 1 || i + 1 > n {
                    return out(self.to_string());
                }
            }
            GeneratorId::Named(ref s) => {
                return Err(Error::InvalidGenerator(format!(
                    "{s} has no built-in matrix"
                )))
            }
        }
        Ok(())
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorId::E(i, j) => write!(f, "E({i},{j})"),
            GeneratorId::F(i) => write!(f, "F({i})"),
            GeneratorId::T(i, j) => write!(f, "T({i},{j})"),
            GeneratorId::S(i) => write!(f, "S({i})"),
            GeneratorId::Named(s) => f.write_str(s),
        }
    }
}

fn unit(n: usize, i: usize, j: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    *m.at_mut(i - 1, j - 1) = BigInt::one();
    m
}

/// The matrix of a standard generator at dimension `n`.
pub fn generator_matrix(g: &GeneratorId, n: usize) -> Result<IntMatrix> {
    g.validate(n)?;
    let m = match *g {
        GeneratorId::E(i, j) => {
            let mut m = IntMatrix::identity(n);
            *m.at_mut(i - 1, j - 1) = BigInt::from(2);
            m
        }
        GeneratorId::F(i) => {
            let mut m = IntMatrix::identity(n);
            *m.at_mut(i - 1, i - 1) = BigInt::from(-1);
            m
        }
        GeneratorId::T(i, j) => unit(n, i, j),
        GeneratorId::S(i) => {
            let mut m = IntMatrix::identity(n);
            *m.at_mut(i - 1, i - 1) = BigInt::zero();
            *m.at_mut(i, i) = BigInt::zero();
            *m.at_mut(i - 1, i) = BigInt::one();
            *m.at_mut(i, i - 1) = BigInt::one();
            m
        }
        GeneratorId::Named(_) => unreachable!("validate rejects named symbols"),
    };
    Ok(m)
}

/// Membership in the level 2 congruence subgroup.
pub fn is_level2(a: &IntMatrix) -> bool {
    let n = a.dim();
    let parity_ok = (0..n).all(|r| {
        (0..n).all(|c| {
            let odd = a.at(r, c).is_odd();
            if r == c {
                odd
            } else {
                !odd
            }
        })
    });
    parity_ok && a.is_unimodular()
}

/// Square matrix over Z/2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mod2Matrix {
    n: usize,
    bits: Vec<bool>,
}

impl Mod2Matrix {
    pub fn identity(n: usize) -> Self {
        let mut bits = vec![false; n * n];
        for i in 0..n {
            bits[i * n + i] = true;
        }
        Mod2Matrix { n, bits }
    }

    pub fn from_bits(n: usize, bits: Vec<bool>) -> Self {
        assert_eq!(bits.len(), n * n);
        Mod2Matrix { n, bits }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        let bits = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), n);
                r.iter().map(|&x| x.rem_euclid(2) == 1)
            })
            .collect();
        Mod2Matrix { n, bits }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Bit at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> bool {
        self.bits[(row - 1) * self.n + (col - 1)]
    }

    pub fn mul(&self, other: &Mod2Matrix) -> Mod2Matrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut bits = vec![false; n * n];
        for r in 0..n {
            for c in 0..n {
                bits[r * n + c] =
                    (0..n).fold(false, |acc, k| acc ^ (self.bits[r * n + k] & other.bits[k * n + c]));
            }
        }
        Mod2Matrix { n, bits }
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<bool>> = self.bits.chunks(self.n).map(|r| r.to_vec()).collect();
        rank_mod2(rows)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }
}

impl fmt::Display for Mod2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.bits.chunks(self.n).enumerate() {
            if r > 0 {
                f.write_str(";")?;
            }
            for (c, &b) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(",")?;
                }
                f.write_str(if b { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Mod2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mod2Matrix[{self}]")
    }
}

/// Rank over Z/2 of a list of equal-length bit rows.
pub fn rank_mod2(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn mod2_image(a: &IntMatrix) -> Mod2Matrix {
    Mod2Matrix {
        n: a.dim(),
        bits: a.entries.iter().map(|e| e.is_odd()).collect(),
    }
}

/// All invertible `n x n` matrices over Z/2, sorted.
pub fn enumerate_gl_mod2(n: usize) -> Result<Vec<Mod2Matrix>> {
    if n == 0 {
        return Err(Error::DimensionMismatch("dimension must be positive".into()));
    }
    if n > ENUMERATION_BOUND {
        return Err(Error::TooLarge {
            what: "GL(n, Z/2) enumeration",
            n,
            max: ENUMERATION_BOUND,
        });
    }
    let cells = n * n;
    let mut out: Vec<Mod2Matrix> = (0u32..1 << cells)
        .map(|mask| Mod2Matrix {
            n,
            bits: (0..cells).map(|k| mask >> k & 1 == 1).collect(),
        })
        .filter(Mod2Matrix::is_invertible)
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}
