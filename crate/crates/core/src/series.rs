//! Growth series as rational functions, reciprocals, and reciprocity.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::automaton::{Automaton, Convention, SymbolicMatrix};
use crate::complex::{CubicalComplex, VertexId};
use crate::error::SeriesError;
use crate::linalg::{solve_fraction_free, solve_fraction_free_many, Domain, Matrix};
use crate::poly::Monomial;
use crate::rational::{RationalFunction, UnivariateRational};
use crate::substitution::Substitution;

/// Exact multivariate solves are refused above this many states; use
/// [`evaluate_series`] at sample points instead.
pub const MULTIVARIATE_STATE_LIMIT: usize = 24;

/// `B (I - Q)^{-1} E` for every `(initial, accept)` pair, as `[b][e]`.
fn solve_system<R: Domain>(q: &Matrix<R>, initial: &[Vec<bool>], accept: &[Vec<bool>]) -> Option<Vec<Vec<(R, R)>>> {
    let n = q.rows();
    let zero = q.zero().clone();
    let one = zero.one_like();
    let a = Matrix::identity(n, zero.clone()).sub(q);
    let rhs: Vec<Vec<R>> =
        accept.iter().map(|e| e.iter().map(|&b| if b { one.clone() } else { zero.clone() }).collect()).collect();
    let sols = solve_fraction_free_many(&a, &rhs)?;
    Some(
        initial
            .iter()
            .map(|b| {
                sols.iter()
                    .map(|s| {
                        let num = b
                            .iter()
                            .zip(&s.numerators)
                            .filter(|(&bi, _)| bi)
                            .fold(zero.clone(), |acc, (_, x)| acc.plus(x));
                        (num, s.denominator.clone())
                    })
                    .collect()
            })
            .collect(),
    )
}

/// A solved series in both representations; `univariate` is present for
/// single-variable substitutions.
#[derive(Clone, Debug, PartialEq)]
pub struct SolvedSeries {
    pub function: RationalFunction,
    pub univariate: Option<UnivariateRational>,
}

impl SolvedSeries {
    fn from_univariate(u: UnivariateRational) -> Self {
        Self { function: u.to_rational_function(), univariate: Some(u) }
    }
}

/// Solves `B (I - Q(t))^{-1} E` for an arbitrary symbolic matrix and 0/1
/// selector vectors. The result is indexed `[initial][accept]`.
pub fn solve_symbolic(
    q: &SymbolicMatrix,
    initial: &[Vec<bool>],
    accept: &[Vec<bool>],
    substitution: &Substitution,
) -> Result<Vec<Vec<SolvedSeries>>, SeriesError> {
    if substitution.nvars() == 1 {
        let m = substitution.specialize_int(q)?;
        let sol = solve_system(&m, initial, accept).ok_or(SeriesError::SingularSystem)?;
        return Ok(sol
            .into_iter()
            .map(|row| {
                row.into_iter().map(|(n, d)| SolvedSeries::from_univariate(UnivariateRational::reduce(n, d))).collect()
            })
            .collect());
    }
    if q.size() > MULTIVARIATE_STATE_LIMIT {
        return Err(SeriesError::TooLarge {
            states: q.size(),
            vars: substitution.nvars(),
            limit: MULTIVARIATE_STATE_LIMIT,
        });
    }
    let m = substitution.specialize(q)?;
    let sol = solve_system(&m, initial, accept).ok_or(SeriesError::SingularSystem)?;
    Ok(sol
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|(n, d)| SolvedSeries { function: RationalFunction::new(n, d), univariate: None })
                .collect()
        })
        .collect())
}

fn automaton(complex: &CubicalComplex, convention: Convention) -> Result<Automaton, SeriesError> {
    Ok(Automaton::build(complex, convention)?)
}

/// All growth series `G_{x,y}` at once, indexed `[x][y]` by vertex.
pub fn growth_series_table(
    complex: &CubicalComplex,
    substitution: &Substitution,
    convention: Convention,
) -> Result<Vec<Vec<SolvedSeries>>, SeriesError> {
    let a = automaton(complex, convention)?;
    let initial: Vec<Vec<bool>> = complex.vertices().map(|x| a.initial_vector(x)).collect();
    let accept: Vec<Vec<bool>> = complex.vertices().map(|y| a.accept_vector(y)).collect();
    solve_symbolic(&a.transition_matrix(), &initial, &accept, substitution)
}

pub fn growth_series_solved(
    complex: &CubicalComplex,
    x: VertexId,
    y: VertexId,
    substitution: &Substitution,
    convention: Convention,
) -> Result<SolvedSeries, SeriesError> {
    let a = automaton(complex, convention)?;
    let mut sol = solve_symbolic(&a.transition_matrix(), &[a.initial_vector(x)], &[a.accept_vector(y)], substitution)?;
    Ok(sol.remove(0).remove(0))
}

/// `G_{x,y}(t)` as an unreduced rational function.
pub fn growth_series(
    complex: &CubicalComplex,
    x: VertexId,
    y: VertexId,
    substitution: &Substitution,
    convention: Convention,
) -> Result<RationalFunction, SeriesError> {
    growth_series_solved(complex, x, y, substitution, convention).map(|s| s.function)
}

/// `G_{x,y}(t)` in reduced single-variable form.
pub fn growth_series_univariate(
    complex: &CubicalComplex,
    x: VertexId,
    y: VertexId,
    convention: Convention,
) -> Result<UnivariateRational, SeriesError> {
    let s = growth_series_solved(complex, x, y, &Substitution::single_variable(complex), convention)?;
    Ok(s.univariate.expect("single-variable solve"))
}

/// The reciprocal series computed two ways.
#[derive(Clone, Debug, PartialEq)]
pub struct ReciprocalSeries {
    /// Solved with every monomial of `Q` inverted.
    pub matrix_route: SolvedSeries,
    /// `t ↦ t⁻¹` applied to the growth series.
    pub substitution_route: SolvedSeries,
}

impl ReciprocalSeries {
    pub fn routes_agree(&self) -> bool {
        self.matrix_route.function == self.substitution_route.function
    }
}

fn invert(s: &SolvedSeries) -> SolvedSeries {
    match &s.univariate {
        Some(u) => SolvedSeries::from_univariate(u.invert_variable()),
        None => SolvedSeries { function: s.function.invert_variables(), univariate: None },
    }
}

pub fn reciprocal_series(
    complex: &CubicalComplex,
    x: VertexId,
    y: VertexId,
    substitution: &Substitution,
    convention: Convention,
) -> Result<ReciprocalSeries, SeriesError> {
    let g = growth_series_solved(complex, x, y, substitution, convention)?;
    let matrix_route =
        growth_series_solved(complex, x, y, &substitution.inverted(), convention).map_err(|e| match e {
            SeriesError::SingularSystem => SeriesError::ReciprocalUndefined,
            e => e,
        })?;
    Ok(ReciprocalSeries { matrix_route, substitution_route: invert(&g) })
}

/// Outcome of testing `G(t⁻¹) = (-1)^n G(t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReciprocityReport {
    pub x: String,
    pub y: String,
    pub dimension: usize,
    pub eulerian: bool,
    pub series: SolvedSeries,
    pub reciprocal: ReciprocalSeries,
    pub routes_agree: bool,
    pub holds: bool,
}

impl ReciprocityReport {
    pub fn sign(&self) -> i32 {
        if self.dimension.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// For example `Eulerian, n=2; reciprocity HOLDS (sign +1)`.
    pub fn verdict(&self) -> String {
        format!(
            "{}, n={}; reciprocity {} (sign {:+})",
            if self.eulerian { "Eulerian" } else { "not Eulerian" },
            self.dimension,
            if self.holds { "HOLDS" } else { "does not hold" },
            self.sign()
        )
    }
}

/// Checks reciprocity for a star-invariant substitution. Failure of the
/// identity is a report entry, not an error.
pub fn check_reciprocity(
    complex: &CubicalComplex,
    x: VertexId,
    y: VertexId,
    substitution: &Substitution,
) -> Result<ReciprocityReport, SeriesError> {
    if !substitution.is_star_invariant() {
        return Err(SeriesError::NotStarInvariant);
    }
    let series = growth_series_solved(complex, x, y, substitution, Convention::Forward)?;
    let reciprocal = reciprocal_series(complex, x, y, substitution, Convention::Forward)?;
    let dimension = complex.dimension();
    let signed = if dimension.is_multiple_of(2) { series.function.clone() } else { series.function.neg() };
    let routes_agree = reciprocal.routes_agree();
    let holds = routes_agree && reciprocal.matrix_route.function == signed;
    Ok(ReciprocityReport {
        x: complex.vertex_name(x).into(),
        y: complex.vertex_name(y).into(),
        dimension,
        eulerian: complex.eulerian_status().is_eulerian(),
        series,
        reciprocal,
        routes_agree,
        holds,
    })
}

/// `G_{x,y}` evaluated at a rational point by solving the numeric system.
/// `Ok(None)` when the point is a pole of some matrix entry or the numeric
/// system is singular there.
pub fn evaluate_series(
    complex: &CubicalComplex,
    x: VertexId,
    y: VertexId,
    substitution: &Substitution,
    convention: Convention,
    point: &[BigRational],
) -> Result<Option<BigRational>, SeriesError> {
    let a = automaton(complex, convention)?;
    evaluate_symbolic(&a.transition_matrix(), &a.initial_vector(x), &a.accept_vector(y), substitution, point)
}

fn evaluate_symbolic(
    q: &SymbolicMatrix,
    initial: &[bool],
    accept: &[bool],
    substitution: &Substitution,
    point: &[BigRational],
) -> Result<Option<BigRational>, SeriesError> {
    let m = substitution.specialize(q)?;
    let n = m.rows();
    // Rows of I - Q with denominators cleared, so elimination stays in Z.
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![BigRational::zero(); n];
        row[i] = BigRational::one();
        for (j, cell) in row.iter_mut().enumerate() {
            if m.get(i, j).is_zero() {
                continue;
            }
            match m.get(i, j).evaluate(point) {
                Some(v) => *cell -= v,
                None => return Ok(None),
            }
        }
        rows.push(row);
    }
    let mut a = Matrix::zeros(n, n, BigInt::zero());
    let mut rhs = vec![BigInt::zero(); n];
    for (i, row) in rows.iter().enumerate() {
        let scale = row.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        for (j, c) in row.iter().enumerate() {
            a.set(i, j, (c * &scale).to_integer());
        }
        if accept[i] {
            rhs[i] = scale;
        }
    }
    Ok(solve_fraction_free(&a, &rhs).map(|s| {
        let num = initial.iter().zip(&s.numerators).filter(|(&b, _)| b).fold(BigInt::zero(), |acc, (_, x)| acc + x);
        BigRational::new(num, s.denominator)
    }))
}

/// Reciprocity tested at sample points instead of symbolically.
#[derive(Clone, Debug, PartialEq)]
pub struct PointwiseReciprocity {
    pub dimension: usize,
    pub eulerian: bool,
    /// Points at which all three values were defined.
    pub points_used: usize,
    pub routes_agree: bool,
    pub holds: bool,
}

impl PointwiseReciprocity {
    pub fn verdict(&self) -> String {
        format!(
            "{}, n={}; reciprocity {} (sign {:+}, probabilistic check at {} points)",
            if self.eulerian { "Eulerian" } else { "not Eulerian" },
            self.dimension,
            if self.holds { "HOLDS" } else { "does not hold" },
            if self.dimension.is_multiple_of(2) { 1 } else { -1 },
            self.points_used
        )
    }
}

/// Compares the matrix-route reciprocal at `p`, the growth series at
/// `p⁻¹`, and `(-1)^n` times the growth series at `p`, for each point.
pub fn check_reciprocity_at_points(
    complex: &CubicalComplex,
    x: VertexId,
    y: VertexId,
    substitution: &Substitution,
    points: &[Vec<BigRational>],
) -> Result<PointwiseReciprocity, SeriesError> {
    if !substitution.is_star_invariant() {
        return Err(SeriesError::NotStarInvariant);
    }
    let a = automaton(complex, Convention::Forward)?;
    let q = a.transition_matrix();
    let (b, e) = (a.initial_vector(x), a.accept_vector(y));
    let inverted = substitution.inverted();
    let dimension = complex.dimension();
    let sign = if dimension.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
    let mut used = 0;
    let mut routes_agree = true;
    let mut holds = true;
    for p in points {
        if p.iter().any(|c| c.is_zero()) {
            continue;
        }
        let p_inv: Vec<BigRational> = p.iter().map(|c| c.recip()).collect();
        let (Some(g), Some(matrix), Some(subst)) = (
            evaluate_symbolic(&q, &b, &e, substitution, p)?,
            evaluate_symbolic(&q, &b, &e, &inverted, p)?,
            evaluate_symbolic(&q, &b, &e, substitution, &p_inv)?,
        ) else {
            continue;
        };
        used += 1;
        routes_agree &= matrix == subst;
        holds &= matrix == &sign * &g;
    }
    Ok(PointwiseReciprocity {
        dimension,
        eulerian: complex.eulerian_status().is_eulerian(),
        points_used: used,
        routes_agree,
        holds: holds && routes_agree && used > 0,
    })
}

/// The univariate coefficient list of a multivariate expansion, collected
/// by total degree.
pub fn by_total_degree(expansion: &BTreeMap<Monomial, BigRational>, max_degree: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); max_degree + 1];
    for (m, c) in expansion {
        let d = m.total_degree();
        if (0..=max_degree as i64).contains(&d) {
            out[d as usize] += c;
        }
    }
    out
}

/// A coefficient where automaton path counting and series expansion differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleMismatch {
    pub x: VertexId,
    pub y: VertexId,
    pub monomial: Monomial,
    pub expansion: BigRational,
    pub counted: BigRational,
}

/// Series expansion coefficients, keyed by monomial, zeros omitted.
pub fn expansion(s: &SolvedSeries, max_degree: u32) -> Result<BTreeMap<Monomial, BigRational>, SeriesError> {
    match &s.univariate {
        Some(u) => Ok(u
            .expand(max_degree as usize)?
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (Monomial::from_exponents(vec![k as i32]), c))
            .collect()),
        None => Ok(s.function.expand(max_degree)?.into_iter().filter(|(_, c)| !c.is_zero()).collect()),
    }
}

/// Compares, for every vertex pair, the expansion of the solved series with
/// weighted path counts from the automaton through `max_degree`.
pub fn oracle_mismatches(
    complex: &CubicalComplex,
    substitution: &Substitution,
    convention: Convention,
    max_degree: u32,
) -> Result<Vec<OracleMismatch>, SeriesError> {
    let a = automaton(complex, convention)?;
    let table = growth_series_table(complex, substitution, convention)?;
    let mut out = Vec::new();
    for x in complex.vertices() {
        for y in complex.vertices() {
            let expanded = expansion(&table[x.0][y.0], max_degree)?;
            let counted: BTreeMap<Monomial, BigRational> = a
                .weighted_counts(x, y, substitution, max_degree)?
                .into_iter()
                .map(|(m, c)| (m, BigRational::from_integer(c)))
                .collect();
            let keys: BTreeSet<&Monomial> = expanded.keys().chain(counted.keys()).collect();
            for m in keys {
                let e = expanded.get(m).cloned().unwrap_or_else(BigRational::zero);
                let c = counted.get(m).cloned().unwrap_or_else(BigRational::zero);
                if e != c {
                    out.push(OracleMismatch { x, y, monomial: m.clone(), expansion: e, counted: c });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::*;
    use crate::poly::LaurentPolynomial;
    use alloc::string::ToString;

    fn t(i: usize) -> LaurentPolynomial {
        LaurentPolynomial::var(4, i)
    }

    #[test]
    fn fig1_multivariate() {
        let c = fig1();
        let s = Substitution::per_diagonal(&c).with_vars(["t1", "t2", "t3", "t4"].map(String::from).to_vec());
        let table = growth_series_table(&c, &s, Convention::Forward).unwrap();
        let one = LaurentPolynomial::one(4);
        let den = &(&one - &t(2)) * &(&one - &t(3));
        let top = &one - &(&t(2) * &t(3));
        let xy = RationalFunction::new(&t(0) * &top, den.clone());
        let yx = RationalFunction::new(&t(1) * &top, den.clone());
        let yy = RationalFunction::new(top.clone(), den.clone());
        // 1 - t1 t2 (2 t3 t4 - t3 - t4) / den
        let inner = &(&(&t(2) * &t(3)).scale(&BigRational::from_integer(2.into())) - &t(2)) - &t(3);
        let xx = RationalFunction::new(&den - &(&(&t(0) * &t(1)) * &inner), den.clone());
        assert_eq!(table[0][0].function, xx);
        assert_eq!(table[0][1].function, xy);
        assert_eq!(table[1][0].function, yx);
        assert_eq!(table[1][1].function, yy);
        let rev = growth_series_table(&c, &s, Convention::Reverse).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(rev[i][j].function, table[i][j].function);
            }
        }
    }

    #[test]
    fn fig1_univariate() {
        let c = fig1();
        let (x, y) = (c.vertex("x").unwrap(), c.vertex("y").unwrap());
        let g = |a, b| growth_series_univariate(&c, a, b, Convention::Forward).unwrap().to_string();
        assert_eq!(g(x, x), "(1-t+2t^3)/(1-t)");
        assert_eq!(g(x, y), "(t+t^2)/(1-t)");
        assert_eq!(g(y, x), "(t+t^2)/(1-t)");
        assert_eq!(g(y, y), "(1+t)/(1-t)");
    }

    #[test]
    fn fig1_reciprocity_fails() {
        let c = fig1();
        let (x, y) = (c.vertex("x").unwrap(), c.vertex("y").unwrap());
        let s = Substitution::single_variable(&c);
        let r = check_reciprocity(&c, x, x, &s).unwrap();
        assert!(r.routes_agree);
        assert!(!r.holds);
        assert_eq!(r.verdict(), "not Eulerian, n=1; reciprocity does not hold (sign -1)");
        let yy = reciprocal_series(&c, y, y, &s, Convention::Forward).unwrap();
        assert_eq!(yy.matrix_route.univariate.unwrap().to_string(), "(-1-t)/(1-t)");
        assert_eq!(
            check_reciprocity(&c, x, x, &Substitution::per_diagonal(&c)).unwrap_err(),
            SeriesError::NotStarInvariant
        );
    }

    #[test]
    fn square_series() {
        let c = square();
        let s = Substitution::per_hyperplane(&c);
        let table = growth_series_table(&c, &s, Convention::Forward).unwrap();
        let u = c.vertex("u00").unwrap().0;
        let w = c.vertex("u11").unwrap().0;
        let h = &LaurentPolynomial::var(2, 0) * &LaurentPolynomial::var(2, 1);
        assert_eq!(table[u][w].function, RationalFunction::from_poly(h));
        assert_eq!(table[u][u].function, RationalFunction::from_poly(LaurentPolynomial::one(2)));
    }

    #[test]
    fn pointwise_matches_symbolic() {
        let c = fig1();
        let (x, y) = (c.vertex("x").unwrap(), c.vertex("y").unwrap());
        let s = Substitution::per_hyperplane(&c);
        let g = growth_series(&c, x, y, &s, Convention::Forward).unwrap();
        let p = vec![BigRational::new(1.into(), 3.into()), BigRational::new(2.into(), 7.into())];
        let v = evaluate_series(&c, x, y, &s, Convention::Forward, &p).unwrap().unwrap();
        assert_eq!(Some(v), g.evaluate(&p));
        let r = check_reciprocity_at_points(&c, x, x, &s, &[p]).unwrap();
        assert_eq!(r.points_used, 1);
        assert!(r.routes_agree && !r.holds);
        let e = g.expand(3).unwrap();
        assert_eq!(e.get(&Monomial::from_exponents(vec![1, 1])), Some(&BigRational::from_integer(2.into())));
    }
}
