//! Dense matrices over ℚ(ζ_n) and exact Gaussian elimination.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use crate::exactnum::{CyclotomicField, CyclotomicNumber};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Arc<CyclotomicField>,
    rows: usize,
    cols: usize,
    data: Vec<CyclotomicNumber>,
}

impl Matrix {
    pub fn zeros(field: &Arc<CyclotomicField>, rows: usize, cols: usize) -> Self {
        Self { field: field.clone(), rows, cols, data: vec![CyclotomicNumber::zero(field); rows * cols] }
    }

    pub fn identity(field: &Arc<CyclotomicField>, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.set(i, i, CyclotomicNumber::one(field));
        }
        m
    }

    pub fn from_fn(
        field: &Arc<CyclotomicField>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> CyclotomicNumber,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { field: field.clone(), rows, cols, data }
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CyclotomicNumber) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CyclotomicNumber::is_zero)
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Self {
        Self { data: self.data.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    pub fn pow(&self, e: usize) -> Self {
        assert_eq!(self.rows, self.cols);
        (0..e).fold(Self::identity(&self.field, self.rows), |acc, _| &acc * self)
    }

    pub fn entries(&self) -> &[CyclotomicNumber] {
        &self.data
    }

    /// Solves `self · w = rhs` for square `self`; `None` when singular.
    pub fn solve(&self, rhs: &[CyclotomicNumber]) -> Option<Vec<CyclotomicNumber>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(rhs.len(), self.rows);
        let n = self.rows;
        let mut aug: Vec<Vec<CyclotomicNumber>> = (0..n)
            .map(|i| {
                let mut row: Vec<_> = (0..n).map(|j| self.get(i, j).clone()).collect();
                row.push(rhs[i].clone());
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
            aug.swap(col, pivot);
            let inv = aug[col][col].inv().ok()?;
            for c in col..=n {
                aug[col][c] = &aug[col][c] * &inv;
            }
            for r in 0..n {
                if r == col || aug[r][col].is_zero() {
                    continue;
                }
                let factor = aug[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &aug[col][c];
                    aug[r][c] = &aug[r][c] - &delta;
                }
            }
        }
        Some(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
    }

    /// Two-sided inverse of a square matrix; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.rows;
        let mut out = Self::zeros(&self.field, n, n);
        for j in 0..n {
            let e: Vec<_> = (0..n)
                .map(|i| if i == j { CyclotomicNumber::one(&self.field) } else { CyclotomicNumber::zero(&self.field) })
                .collect();
            for (i, v) in self.solve(&e)?.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Some(out)
    }

    /// Rank of the matrix whose rows are the given vectors.
    pub fn rank_of_rows(vectors: &[Vec<CyclotomicNumber>]) -> usize {
        let mut rows: Vec<Vec<CyclotomicNumber>> = vectors.to_vec();
        let width = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..width {
            let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let inv = rows[rank][col].inv().expect("pivot is nonzero");
            let pivot_row: Vec<_> = rows[rank].iter().map(|x| x * &inv).collect();
            for r in (rank + 1)..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = rows[r][col].clone();
                for c in col..width {
                    rows[r][c] = &rows[r][c] - &(&factor * &pivot_row[c]);
                }
            }
            rows[rank] = pivot_row;
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Matrix { data, ..self.clone() }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        Matrix { data, ..self.clone() }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zeros(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let cell = &out.data[i * rhs.cols + j] + &(a * b);
                        out.data[i * rhs.cols + j] = cell;
                    }
                }
            }
        }
        out
    }
}
