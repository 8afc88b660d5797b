//! Monomial substitutions for the letters of the alphabet.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::automaton::{star_permutation, Entry, Symbol, SymbolicMatrix};
use crate::complex::{CubicalComplex, Diagonal};
use crate::error::SeriesError;
use crate::linalg::Matrix;
use crate::poly::{LaurentPolynomial, Monomial};
use crate::unipoly::IntLaurent;

/// The built-in substitutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubstitutionKind {
    PerHyperplane,
    PerDiagonal,
    SingleVariable,
}

/// A map from nontrivial diagonals (by state index) to monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    vars: Vec<String>,
    names: Vec<String>,
    star: Vec<usize>,
    images: Vec<Option<Monomial>>,
}

impl Substitution {
    /// A substitution given by `f`, which may leave letters uncovered.
    pub fn from_fn(
        complex: &CubicalComplex,
        vars: Vec<String>,
        mut f: impl FnMut(usize, &Diagonal) -> Option<Monomial>,
    ) -> Self {
        let states = complex.diagonals();
        let images = states
            .iter()
            .enumerate()
            .map(|(k, d)| {
                if d.is_trivial() {
                    return None;
                }
                let m = f(k, d)?;
                assert_eq!(m.nvars(), vars.len(), "monomial over the wrong variable set");
                Some(m)
            })
            .collect();
        Self {
            vars,
            names: states.iter().map(|d| complex.diagonal_name(d)).collect(),
            star: star_permutation(&states),
            images,
        }
    }

    /// `d ↦ Π t_h` over the hyperplane classes `d` crosses.
    pub fn per_hyperplane(complex: &CubicalComplex) -> Self {
        let partition = complex.hyperplane_classes();
        let vars = partition.labels().to_vec();
        Self::from_fn(complex, vars, |_, d| {
            Some(Monomial::from_exponents(complex.weight(&partition, d).into_iter().map(|e| e as i32).collect()))
        })
    }

    /// `d ↦ t^{|d|}`.
    pub fn single_variable(complex: &CubicalComplex) -> Self {
        Self::from_fn(complex, vec!["t".to_string()], |_, d| Some(Monomial::from_exponents(vec![d.dim() as i32])))
    }

    /// Each nontrivial diagonal becomes its own variable, named after it.
    pub fn per_diagonal(complex: &CubicalComplex) -> Self {
        let states = complex.diagonals();
        let letters: Vec<usize> = (0..states.len()).filter(|&k| !states[k].is_trivial()).collect();
        let vars = letters.iter().map(|&k| complex.diagonal_name(&states[k])).collect();
        let n = letters.len();
        Self::from_fn(complex, vars, |k, _| letters.iter().position(|&l| l == k).map(|v| Monomial::var(n, v)))
    }

    pub fn of_kind(complex: &CubicalComplex, kind: SubstitutionKind) -> Self {
        match kind {
            SubstitutionKind::PerHyperplane => Self::per_hyperplane(complex),
            SubstitutionKind::PerDiagonal => Self::per_diagonal(complex),
            SubstitutionKind::SingleVariable => Self::single_variable(complex),
        }
    }

    /// Renames the variables; the count must match.
    pub fn with_vars(mut self, vars: Vec<String>) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        self.vars = vars;
        self
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn image(&self, state: usize) -> Option<&Monomial> {
        self.images.get(state).and_then(|m| m.as_ref())
    }

    pub fn state_count(&self) -> usize {
        self.images.len()
    }

    /// Every image replaced by its inverse.
    pub fn inverted(&self) -> Self {
        let mut out = self.clone();
        for m in out.images.iter_mut().flatten() {
            *m = m.inverse();
        }
        out
    }

    /// `image(d) = image(d*)` for every letter.
    pub fn is_star_invariant(&self) -> bool {
        (0..self.images.len()).all(|k| self.images[k] == self.images[self.star[k]])
    }

    /// For an injective single-variable-per-letter substitution, the
    /// variable permutation induced by `d ↦ d*`.
    pub fn star_variable_permutation(&self) -> Option<Vec<usize>> {
        let var_of = |m: &Monomial| {
            let e = m.exponents();
            let nz: Vec<usize> = (0..e.len()).filter(|&i| e[i] != 0).collect();
            (nz.len() == 1 && e[nz[0]] == 1).then(|| nz[0])
        };
        let mut perm = vec![usize::MAX; self.vars.len()];
        for (k, img) in self.images.iter().enumerate() {
            let Some(m) = img else { continue };
            let from = var_of(m)?;
            let to = var_of(self.images[self.star[k]].as_ref()?)?;
            if perm[from] != usize::MAX && perm[from] != to {
                return None;
            }
            perm[from] = to;
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p == usize::MAX || seen[p] {
                return None;
            }
            seen[p] = true;
        }
        Some(perm)
    }

    fn entry_monomial(&self, e: Entry) -> Result<Monomial, SeriesError> {
        match e.symbol {
            Symbol::Unit => Ok(Monomial::one(self.nvars())),
            Symbol::Letter(l) => self.image(l).cloned().ok_or_else(|| {
                SeriesError::UncoveredSymbol(self.names.get(l).cloned().unwrap_or_else(|| format!("#{l}")))
            }),
        }
    }

    /// Entrywise replacement of symbols by monomials.
    pub fn specialize(&self, m: &SymbolicMatrix) -> Result<Matrix<LaurentPolynomial>, SeriesError> {
        let n = m.size();
        let mut out = Matrix::zeros(n, n, LaurentPolynomial::zero(self.nvars()));
        for (i, j, e) in m.nonzeros() {
            let c = if e.negative { -1 } else { 1 };
            out.set(
                i,
                j,
                LaurentPolynomial::monomial(self.entry_monomial(e)?)
                    .scale(&num_rational::BigRational::from_integer(c.into())),
            );
        }
        Ok(out)
    }

    /// Single-variable specialization into integer Laurent polynomials.
    pub fn specialize_int(&self, m: &SymbolicMatrix) -> Result<Matrix<IntLaurent>, SeriesError> {
        if self.nvars() != 1 {
            return Err(SeriesError::NotUnivariate(self.nvars()));
        }
        let n = m.size();
        let mut out = Matrix::zeros(n, n, IntLaurent::zero());
        for (i, j, e) in m.nonzeros() {
            let exp = self.entry_monomial(e)?.exponents()[0] as i64;
            out.set(i, j, IntLaurent::monomial(if e.negative { -1 } else { 1 }, exp));
        }
        Ok(out)
    }
}
