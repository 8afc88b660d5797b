//! Rational functions in commuting indeterminates.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::SeriesError;
use crate::poly::{LaurentPolynomial, Monomial};
use crate::unipoly::IntLaurent;

/// `num / den` with no simplification. Equality is by cross-multiplication,
/// so no multivariate gcd is ever needed.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    pub num: LaurentPolynomial,
    pub den: LaurentPolynomial,
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl RationalFunction {
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        assert_eq!(num.nvars(), den.nvars());
        Self { num, den }
    }

    pub fn from_poly(p: LaurentPolynomial) -> Self {
        let den = LaurentPolynomial::one(p.nvars());
        Self { num: p, den }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.num, self.den.clone())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.num.scale(c), self.den.clone())
    }

    /// `t ↦ t⁻¹` in every variable.
    pub fn invert_variables(&self) -> Self {
        Self::new(self.num.invert_variables(), self.den.invert_variables())
    }

    pub fn permute_variables(&self, perm: &[usize]) -> Self {
        Self::new(self.num.permute_variables(perm), self.den.permute_variables(perm))
    }

    /// `None` if the denominator vanishes at the point.
    pub fn evaluate(&self, point: &[BigRational]) -> Option<BigRational> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.evaluate(point)? / d)
    }

    /// Power series coefficients of total degree `≤ max_degree`.
    pub fn expand(&self, max_degree: u32) -> Result<BTreeMap<Monomial, BigRational>, SeriesError> {
        let shift = self.den.min_exponents();
        let den = self.den.shift(&shift.inverse());
        let num = self.num.shift(&shift.inverse());
        let c0 = den.constant_term();
        if c0.is_zero() || num.terms().any(|(m, _)| !m.is_nonnegative()) {
            return Err(SeriesError::NotExpandable);
        }
        let max = max_degree as i64;
        let by_degree = |p: &LaurentPolynomial| {
            let mut out: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); max as usize + 1];
            for (m, c) in p.terms() {
                let d = m.total_degree();
                if d <= max {
                    out[d as usize].push((m.clone(), c.clone()));
                }
            }
            out
        };
        let num_parts = by_degree(&num);
        let den_parts = by_degree(&den);
        let n = self.nvars();
        // S_d = (N_d - Σ_{e≥1} D_e S_{d-e}) / c0
        let mut series: Vec<LaurentPolynomial> = Vec::with_capacity(max as usize + 1);
        for d in 0..=max as usize {
            let mut acc = LaurentPolynomial::from_terms(n, num_parts[d].iter().cloned());
            for (e, part) in den_parts.iter().enumerate().take(d + 1).skip(1) {
                if part.is_empty() || series[d - e].is_zero() {
                    continue;
                }
                let de = LaurentPolynomial::from_terms(n, part.iter().cloned());
                acc = &acc - &(&de * &series[d - e]);
            }
            series.push(acc.scale(&c0.recip()));
        }
        let mut out = BTreeMap::new();
        for s in series {
            for (m, c) in s.terms() {
                out.insert(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Canonical reduced form of a single-variable function.
    pub fn to_univariate(&self) -> Result<UnivariateRational, SeriesError> {
        if self.nvars() != 1 {
            return Err(SeriesError::NotUnivariate(self.nvars()));
        }
        let lcm = self.num.terms().chain(self.den.terms()).fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let scale = BigRational::from_integer(lcm);
        let num = IntLaurent::from_laurent(&self.num.scale(&scale)).expect("integral after scaling");
        let den = IntLaurent::from_laurent(&self.den.scale(&scale)).expect("integral after scaling");
        Ok(UnivariateRational::reduce(num, den))
    }
}

/// A reduced single-variable rational function: `gcd(num, den) = 1`, the
/// denominator is an ordinary polynomial with positive constant term, and
/// the integer coefficients of both sides share no common factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnivariateRational {
    num: IntLaurent,
    den: IntLaurent,
}

impl UnivariateRational {
    pub fn reduce(num: IntLaurent, den: IntLaurent) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self { num, den: IntLaurent::one() };
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g).expect("gcd divides numerator");
        let mut den = den.exact_div(&g).expect("gcd divides denominator");
        let low = den.low();
        num = num.shift(-low);
        den = den.shift(-low);
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.exact_div(&IntLaurent::monomial(c.clone(), 0)).unwrap();
            den = den.exact_div(&IntLaurent::monomial(c, 0)).unwrap();
        }
        if den.coefficient(0).is_negative() {
            num = num.neg();
            den = den.neg();
        }
        Self { num, den }
    }

    /// From ascending integer coefficient lists.
    pub fn from_ints(num: &[i64], den: &[i64]) -> Self {
        Self::reduce(IntLaurent::from_ints(num), IntLaurent::from_ints(den))
    }

    pub fn numerator(&self) -> &IntLaurent {
        &self.num
    }

    pub fn denominator(&self) -> &IntLaurent {
        &self.den
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        RationalFunction::new(self.num.to_laurent(), self.den.to_laurent())
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn invert_variable(&self) -> Self {
        Self::reduce(self.num.invert_variable(), self.den.invert_variable())
    }

    /// Coefficients of `t^0 … t^max_degree`.
    pub fn expand(&self, max_degree: usize) -> Result<Vec<BigRational>, SeriesError> {
        if self.num.low() < 0 {
            return Err(SeriesError::NotExpandable);
        }
        let d0 = BigRational::from_integer(self.den.coefficient(0));
        let mut out: Vec<BigRational> = Vec::with_capacity(max_degree + 1);
        for k in 0..=max_degree {
            let mut acc = BigRational::from_integer(self.num.coefficient(k as i64));
            for j in 1..=k.min(self.den.high().max(0) as usize) {
                let dj = self.den.coefficient(j as i64);
                if !dj.is_zero() {
                    acc -= BigRational::from_integer(dj) * &out[k - j];
                }
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }

    pub fn display(&self, var: &str) -> String {
        let wrap = |p: &IntLaurent| {
            let s = p.display(var);
            if p.term_count() > 1 {
                alloc::format!("({s})")
            } else {
                s
            }
        };
        if self.den.is_one() {
            return self.num.display(var);
        }
        alloc::format!("{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Display for UnivariateRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("t"))
    }
}
