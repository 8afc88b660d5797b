//! Dense univariate Laurent polynomials over the integers.
//!
//! This is the workhorse for single-variable solves: fraction-free
//! elimination stays inside `Z[t, t⁻¹]`, so no rational normalisation is paid
//! on every coefficient operation.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{LaurentPolynomial, Monomial};

/// `Σ coeffs[k] · t^(low + k)`; normalised so both ends are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntLaurent {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl IntLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        Self::from_coeffs(exp, vec![c.into()])
    }

    pub fn from_coeffs(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { low, coeffs };
        p.normalize();
        p
    }

    /// Ascending integer coefficients starting at `t^0`.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(0, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent present (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent present.
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, exp: i64) -> BigInt {
        let k = exp - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn shift(&self, by: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + by, coeffs: self.coeffs.clone() }
    }

    /// `t ↦ t⁻¹`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self { low: -self.high(), coeffs }
    }

    pub fn neg(&self) -> Self {
        Self { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, true)
    }

    fn combine(&self, rhs: &Self, subtract: bool) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if subtract { rhs.neg() } else { rhs.clone() };
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(rhs.low - low) as usize + k];
            if subtract {
                *slot -= c;
            } else {
                *slot += c;
            }
        }
        Self::from_coeffs(low, coeffs)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(self.low + rhs.low, coeffs)
    }

    /// Exact quotient in `Z[t, t⁻¹]`, or `None` if `divisor` does not divide.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let b = &divisor.coeffs;
        let lb = b.len() - 1;
        if self.coeffs.len() < b.len() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - lb;
        let mut q = vec![BigInt::zero(); qlen];
        let b_top = &b[lb];
        for i in (0..qlen).rev() {
            let top = &rem[i + lb];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(b_top);
            if !r.is_zero() {
                return None;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    rem[i + j] -= &c * bj;
                }
            }
            q[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(self.low - divisor.low, q))
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn divide_coeffs(&self, c: &BigInt) -> Self {
        Self { low: self.low, coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    /// Primitive part with positive top coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.coeffs.last().unwrap().is_negative() {
            c = -c;
        }
        self.divide_coeffs(&c)
    }

    /// Greatest common divisor up to units `±t^k`: a primitive polynomial with
    /// nonzero constant term and positive top coefficient, times the gcd of
    /// the contents. Uses the primitive polynomial remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.abs_unit();
        }
        if other.is_zero() {
            return self.abs_unit();
        }
        let content = self.content().gcd(&other.content());
        let mut a = self.shift(-self.low).primitive_part();
        let mut b = other.shift(-other.low).primitive_part();
        if a.coeffs.len() < b.coeffs.len() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = pseudo_remainder(&a, &b);
            a = b;
            b = r.primitive_part();
        }
        let g = a.shift(-a.low).primitive_part();
        g.scale(&content)
    }

    /// Representative of `self` modulo units: no monomial factor, positive top.
    fn abs_unit(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let p = self.shift(-self.low);
        if p.coeffs.last().unwrap().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    pub fn evaluate(&self, x: &BigRational) -> Option<BigRational> {
        if self.low < 0 && x.is_zero() {
            return None;
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        Some(acc * crate::poly::pow_rational(x, self.low as i32))
    }

    pub fn to_laurent(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            1,
            self.coeffs.iter().enumerate().map(|(k, c)| {
                (Monomial::from_exponents(vec![(self.low + k as i64) as i32]), BigRational::from_integer(c.clone()))
            }),
        )
    }

    /// Converts a one-variable polynomial with integer coefficients.
    pub fn from_laurent(p: &LaurentPolynomial) -> Option<Self> {
        if p.nvars() != 1 {
            return None;
        }
        if p.is_zero() {
            return Some(Self::zero());
        }
        let low = p.terms().map(|(m, _)| m.exponents()[0] as i64).min().unwrap();
        let high = p.terms().map(|(m, _)| m.exponents()[0] as i64).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (m, c) in p.terms() {
            if !c.is_integer() {
                return None;
            }
            coeffs[(m.exponents()[0] as i64 - low) as usize] = c.to_integer();
        }
        Some(Self::from_coeffs(low, coeffs))
    }

    /// Compact ascending form such as `1-14t^2+t^4`.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + k as i64;
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                s.push('-');
            } else if !s.is_empty() {
                s.push('+');
            }
            if e == 0 {
                s.push_str(&format!("{abs}"));
                continue;
            }
            if !abs.is_one() {
                s.push_str(&format!("{abs}"));
            }
            s.push_str(var);
            if e != 1 {
                s.push_str(&format!("^{e}"));
            }
        }
        s
    }
}

/// `lc(b)^k · a mod b` for ordinary polynomials (`low == 0`).
fn pseudo_remainder(a: &IntLaurent, b: &IntLaurent) -> IntLaurent {
    let lb = b.coeffs.len() - 1;
    let b_top = b.coeffs[lb].clone();
    let mut r = a.coeffs.clone();
    while r.len() > lb && !r.is_empty() {
        let top = r.last().unwrap().clone();
        let off = r.len() - 1 - lb;
        for x in r.iter_mut() {
            *x *= &b_top;
        }
        for (j, bj) in b.coeffs.iter().enumerate() {
            r[off + j] -= &top * bj;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    IntLaurent::from_coeffs(0, r)
}

impl fmt::Display for IntLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("t"))
    }
}
