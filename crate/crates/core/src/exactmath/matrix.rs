use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rat;
use crate::error::{Error, Result};

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[BigRational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
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

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &RatMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::Shape(format!(
                "hstack {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().chain(other.row(i)).cloned().collect())
            .collect();
        Self::from_rows(rows)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.denom().is_one())
    }

    pub fn det(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let (d, rows) = self.integer_rows();
        let det = integer_det(rows);
        Ok(BigRational::new(det, num_traits::pow(d, self.rows)))
    }

    /// `(D, D * self)` with `D` the lcm of the denominators.
    pub fn integer_rows(&self) -> (BigInt, Vec<Vec<BigInt>>) {
        let d = self
            .data
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let rows = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.numer() * (&d / x.denom()))
                    .collect()
            })
            .collect();
        (d, rows)
    }

    /// Gauss-Jordan inverse; `SingularMatrix` when not invertible.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        // fraction-free Gauss-Jordan on [D*self | I]
        let n = self.rows;
        let (d, rows) = self.integer_rows();
        let mut a: Vec<Vec<BigInt>> = rows
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend((0..n).map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                }));
                r
            })
            .collect();
        let mut prev = BigInt::one();
        for k in 0..n {
            let piv = (k..n)
                .find(|&i| !a[i][k].is_zero())
                .ok_or(Error::SingularMatrix)?;
            a.swap(piv, k);
            let (top, rest) = a.split_at_mut(k);
            let (pk, below) = rest.split_first_mut().expect("row k");
            for row in top.iter_mut().chain(below.iter_mut()) {
                for j in 0..2 * n {
                    if j == k {
                        continue;
                    }
                    row[j] = (&pk[k] * &row[j] - &row[k] * &pk[j]) / &prev;
                }
                row[k] = BigInt::zero();
            }
            prev = pk[k].clone();
        }
        // every diagonal entry is now `prev`
        let data = a
            .iter()
            .flat_map(|r| {
                r[n..]
                    .iter()
                    .map(|x| BigRational::new(x * &d, prev.clone()))
            })
            .collect();
        Ok(Self {
            rows: n,
            cols: n,
            data,
        })
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Rank over Q.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..a.cols {
            let Some(piv) = (rank..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(piv, rank);
            for i in rank + 1..a.rows {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let f = &a[(i, col)] / &a[(rank, col)];
                for j in col..a.cols {
                    let t = &f * &a[(rank, j)];
                    a[(i, j)] -= t;
                }
            }
            rank += 1;
        }
        rank
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let t = a * &rhs[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Fraction-free elimination over `Z`.
pub fn integer_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if piv != k {
            m.swap(piv, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return sign;
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::frac;

    #[test]
    fn inverse_roundtrip() {
        let m = RatMatrix::from_int_rows(&[&[2, 1], &[5, 3]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RatMatrix::identity(2));
        assert_eq!(m.det().unwrap(), rat(1));
        let s = RatMatrix::from_int_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(s.inverse(), Err(Error::SingularMatrix));
        let m = RatMatrix::from_rows(vec![
            vec![rat(0), frac(1, 3), rat(2)],
            vec![frac(-5, 2), rat(0), rat(1)],
            vec![rat(4), frac(7, 6), rat(0)],
        ])
        .unwrap();
        assert_eq!(&m * &m.inverse().unwrap(), RatMatrix::identity(3));
        assert_eq!(
            m.det().unwrap(),
            m.inverse().unwrap().det().unwrap().recip()
        );
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn rotation_determinant() {
        let r = RatMatrix::from_rows(vec![
            vec![frac(3, 5), frac(-4, 5)],
            vec![frac(4, 5), frac(3, 5)],
        ])
        .unwrap();
        let one_minus = &RatMatrix::identity(2) - &r;
        assert_eq!(one_minus.det().unwrap(), frac(4, 5));
    }
}
