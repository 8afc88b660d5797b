//! Dense matrices over exact integral domains and fraction-free solving.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::LaurentPolynomial;
use crate::unipoly::IntLaurent;

/// An exact integral domain. Elements carry enough context (variable count)
/// to build their own zero and one.
pub trait Domain: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    /// Exact division; `None` when `rhs` does not divide `self`.
    fn divide_exact(&self, rhs: &Self) -> Option<Self>;
    /// A size estimate for pivot selection.
    fn weight(&self) -> usize {
        1
    }
}

impl Domain for LaurentPolynomial {
    fn zero_like(&self) -> Self {
        LaurentPolynomial::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        LaurentPolynomial::one(self.nvars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn divide_exact(&self, rhs: &Self) -> Option<Self> {
        self.exact_div(rhs)
    }
    fn weight(&self) -> usize {
        self.len()
    }
}

impl Domain for IntLaurent {
    fn zero_like(&self) -> Self {
        IntLaurent::zero()
    }
    fn one_like(&self) -> Self {
        IntLaurent::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn divide_exact(&self, rhs: &Self) -> Option<Self> {
        self.exact_div(rhs)
    }
    fn weight(&self) -> usize {
        self.len()
    }
}

impl Domain for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn divide_exact(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
}

impl Domain for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn divide_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
    zero: R,
}

impl<R: Domain> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize, zero: R) -> Self {
        Self { rows, cols, data: vec![zero.clone(); rows * cols], zero }
    }

    pub fn identity(n: usize, zero: R) -> Self {
        let one = zero.one_like();
        let mut m = Self::zeros(n, n, zero);
        for i in 0..n {
            m.set(i, i, one.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, zero: R, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data, zero }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn zero(&self) -> &R {
        &self.zero
    }

    pub fn map<S: Domain>(&self, zero: S, mut f: impl FnMut(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(&mut f).collect(), zero }
    }

    pub fn mul(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols, self.zero.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero_elem() {
                        continue;
                    }
                    let v = out.get(i, j).plus(&a.times(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix<R>) -> Matrix<R> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.minus(b)).collect(),
            zero: self.zero.clone(),
        }
    }

    pub fn column_sum(&self, j: usize) -> R {
        (0..self.rows).fold(self.zero.clone(), |acc, i| acc.plus(self.get(i, j)))
    }

    /// Positions where the two matrices differ.
    pub fn differences(&self, rhs: &Matrix<R>) -> Vec<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) != rhs.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// `x_i = numerators[i] / denominator`, with `denominator = ±det A`.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionFreeSolution<R> {
    pub numerators: Vec<R>,
    pub denominator: R,
}

/// Solves `A x = b` by Bareiss elimination on the augmented matrix. Every
/// intermediate entry is a minor of `[A | b]`, so all divisions are exact.
/// Returns `None` when `A` is singular.
pub fn solve_fraction_free<R: Domain>(a: &Matrix<R>, b: &[R]) -> Option<FractionFreeSolution<R>> {
    solve_fraction_free_many(a, core::slice::from_ref(&b.to_vec())).map(|mut v| v.remove(0))
}

/// Like [`solve_fraction_free`] for several right-hand sides sharing one
/// elimination. All solutions share the same denominator.
pub fn solve_fraction_free_many<R: Domain>(a: &Matrix<R>, rhs: &[Vec<R>]) -> Option<Vec<FractionFreeSolution<R>>> {
    let n = a.rows();
    assert_eq!(n, a.cols(), "matrix must be square");
    assert!(rhs.iter().all(|b| b.len() == n), "right-hand side has the wrong length");
    let zero = a.zero().clone();
    let one = zero.one_like();
    if n == 0 {
        return Some(
            rhs.iter().map(|_| FractionFreeSolution { numerators: Vec::new(), denominator: one.clone() }).collect(),
        );
    }
    let width = n + rhs.len();
    let mut m: Vec<Vec<R>> = (0..n)
        .map(|i| {
            let mut row: Vec<R> = (0..n).map(|j| a.get(i, j).clone()).collect();
            row.extend(rhs.iter().map(|b| b[i].clone()));
            row
        })
        .collect();
    let mut prev = one;
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&r| !m[r][k].is_zero_elem())
            .min_by_key(|&r| (m[r][k].weight(), m[r][k..].iter().filter(|x| !x.is_zero_elem()).count()))?;
        m.swap(k, pivot);
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let p = &pivot_row[k];
        for row in rest.iter_mut() {
            let lead = core::mem::replace(&mut row[k], zero.clone());
            for j in (k + 1)..width {
                let cross = if lead.is_zero_elem() || pivot_row[j].is_zero_elem() {
                    None
                } else {
                    Some(lead.times(&pivot_row[j]))
                };
                if row[j].is_zero_elem() && cross.is_none() {
                    continue;
                }
                let mut v = if row[j].is_zero_elem() { zero.clone() } else { p.times(&row[j]) };
                if let Some(c) = cross {
                    v = v.minus(&c);
                }
                row[j] = v.divide_exact(&prev).expect("Bareiss step divides exactly by the previous pivot");
            }
        }
        prev = m[k][k].clone();
    }
    let det = prev;
    let mut out = Vec::with_capacity(rhs.len());
    for col in n..width {
        let mut x: Vec<R> = vec![zero.clone(); n];
        for i in (0..n).rev() {
            let mut s = if m[i][col].is_zero_elem() { zero.clone() } else { det.times(&m[i][col]) };
            for j in (i + 1)..n {
                if !m[i][j].is_zero_elem() && !x[j].is_zero_elem() {
                    s = s.minus(&m[i][j].times(&x[j]));
                }
            }
            x[i] = s.divide_exact(&m[i][i]).expect("fraction-free back substitution divides exactly");
        }
        out.push(FractionFreeSolution { numerators: x, denominator: det.clone() });
    }
    Some(out)
}
