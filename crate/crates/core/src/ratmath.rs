//! Exact rational scalars, vectors and dense matrices.
//!
//! Scalars are [`num_rational::BigRational`], which keeps every value in
//! canonical form (positive denominator, coprime parts). Vectors are plain
//! `Vec<Rational>`; [`RatMatrix`] is a row-major dense matrix with a fixed
//! shape.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;
pub type RatVector = Vec<Rational>;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn rvec(values: &[i64]) -> RatVector {
    values.iter().map(|&v| int(v)).collect()
}

pub fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

/// `q - floor(q)`, always in `[0, 1)`.
pub fn frac_part(q: &Rational) -> Rational {
    q - q.floor()
}

pub fn to_i64(value: &BigInt) -> Result<i64> {
    value
        .to_i64()
        .ok_or_else(|| Error::Domain(format!("integer {value} does not fit in 64 bits")))
}

/// Parses `"p/q"`, `"p"`, with an optional leading minus (ASCII or U+2212)
/// on `p`. The denominator must be a positive integer.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let malformed = || Error::Parse(format!("not a rational number: {text:?}"));
    let trimmed = text.trim();
    let (negative, body) = if let Some(rest) = trimmed.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = trimmed.strip_prefix('\u{2212}') {
        (true, rest)
    } else {
        (false, trimmed)
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
    let (num, den) = match body.split_once('/') {
        Some((p, q)) => (p, q),
        None => (body, "1"),
    };
    if !digits(num) || !digits(den) {
        return Err(malformed());
    }
    let num: BigInt = num.parse().map_err(|_| malformed())?;
    let den: BigInt = den.parse().map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    let value = Rational::new(num, den);
    Ok(if negative { -value } else { value })
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[i64], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .filter(|(c, _)| **c != 0)
        .fold(Rational::zero(), |acc, (c, y)| acc + y * BigInt::from(*c))
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Rational], b: &[Rational]) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(a: &[Rational], s: &Rational) -> RatVector {
    a.iter().map(|x| x * s).collect()
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

/// Least common multiple of all denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Positive multiple of `v` that is integral with coprime entries.
/// The zero vector maps to itself.
pub fn primitive_integral(v: &[Rational]) -> Vec<BigInt> {
    let lcm = denominator_lcm(v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn primitive_rational(v: &[Rational]) -> RatVector {
    primitive_integral(v)
        .into_iter()
        .map(Rational::from_integer)
        .collect()
}

/// Dense row-major rational matrix; the shape never changes after
/// construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrix must have at least one row and column".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged matrix rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|row| rvec(row)).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[RatVector]) -> Result<Self> {
        Ok(Self::from_rows(cols.to_vec())?.transpose())
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Rational::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = Rational::one();
        }
        Self { rows: n, cols: n, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<RatVector> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> RatVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<RatVector> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for l in 0..self.cols {
                    acc += &self[(i, l)] * &other[(l, j)];
                }
                data.push(acc);
            }
        }
        RatMatrix::new(self.rows, other.cols, data)
    }

    fn require_square(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "square matrix required, got {}x{}",
                self.rows, self.cols
            )));
        }
        Ok(())
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det(&self) -> Result<Rational> {
        self.require_square()?;
        let n = self.rows;
        // Clear denominators row by row, then run Bareiss on integers.
        let mut scale = Rational::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let l = denominator_lcm(self.row(i));
            scale /= Rational::from_integer(l.clone());
            let lq = Rational::from_integer(l);
            m.push(self.row(i).iter().map(|x| (x * &lq).to_integer()).collect());
        }
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(Rational::zero());
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        Ok(Rational::from_integer(sign * &m[n - 1][n - 1]) * scale)
    }

    /// Reduced row echelon form together with pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..self.rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in c..self.cols {
                        let t = &f * &m[r][j];
                        m[i][j] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let reduced = RatMatrix::from_rows(m).expect("shape preserved");
        (reduced, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<RatVector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Exact solution of `M x = v` for square `M`; `None` when singular.
    pub fn solve(&self, v: &[Rational]) -> Result<Option<RatVector>> {
        self.require_square()?;
        if v.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} for {} rows",
                v.len(),
                self.rows
            )));
        }
        let n = self.rows;
        let mut m: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(v[i].clone());
                row
            })
            .collect();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(None);
            };
            m.swap(k, p);
            let inv = m[k][k].recip();
            for x in m[k][k..].iter_mut() {
                *x *= &inv;
            }
            for i in 0..n {
                if i != k && !m[i][k].is_zero() {
                    let f = m[i][k].clone();
                    for j in k..=n {
                        let t = &f * &m[k][j];
                        m[i][j] -= t;
                    }
                }
            }
        }
        Ok(Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect()))
    }

    pub fn inverse(&self) -> Result<Option<RatMatrix>> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = self.row(i).to_vec();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            aug.push(row);
        }
        let (r, pivots) = RatMatrix::from_rows(aug)?.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        let data = (0..n)
            .flat_map(|i| r.row(i)[n..].to_vec())
            .collect();
        Ok(Some(RatMatrix::new(n, n, data)?))
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rank of a list of vectors (all of the same length).
pub fn rank_of(vectors: &[RatVector]) -> usize {
    if vectors.is_empty() || vectors[0].is_empty() {
        return 0;
    }
    RatMatrix::from_rows(vectors.to_vec()).map_or(0, |m| m.rank())
}

pub fn is_nonnegative(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn pow(q: &Rational, e: u32) -> Rational {
    num_traits::pow(q.clone(), e as usize)
}
