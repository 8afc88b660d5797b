//! The matrices `D₀, J₀, D, J, [*]` and the identities relating them to `Q₊`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::automaton::{Automaton, Convention, Entry, Symbol, SymbolicMatrix};
use crate::complex::CubicalComplex;
use crate::error::AutomatonError;
use crate::linalg::Matrix;
use crate::poly::LaurentPolynomial;
use crate::substitution::Substitution;

/// `(-1)^{|i|-1}` is negative exactly for even-dimensional diagonals.
fn parity_negative(dim: usize) -> bool {
    dim.is_multiple_of(2)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructuralMatrices {
    pub d0: SymbolicMatrix,
    pub d: SymbolicMatrix,
    pub j0: Matrix<BigInt>,
    pub j: Matrix<BigInt>,
    pub pstar: Matrix<BigInt>,
}

impl StructuralMatrices {
    pub fn build(automaton: &Automaton) -> Self {
        let states = automaton.states();
        let n = states.len();
        let q = automaton.transition_matrix();
        let mut d0 = SymbolicMatrix::zeros(n);
        let mut d = SymbolicMatrix::zeros(n);
        let sign = |k: usize| {
            if parity_negative(states[k].dim()) {
                BigInt::from(-1)
            } else {
                BigInt::one()
            }
        };
        for (k, s) in states.iter().enumerate() {
            if s.is_trivial() {
                d.set(k, k, Some(Entry::signed(false, Symbol::Unit)));
            } else {
                let e = Entry::signed(parity_negative(s.dim()), Symbol::Letter(k));
                d0.set(k, k, Some(e));
                d.set(k, k, Some(e));
            }
        }
        let j0 =
            Matrix::from_fn(n, n, BigInt::zero(), |i, j| if q.get(i, j).is_some() { sign(i) } else { BigInt::zero() });
        let mut j = j0.clone();
        for (k, s) in states.iter().enumerate() {
            if s.is_trivial() {
                j.set(k, k, BigInt::from(-1));
            }
        }
        let star = automaton.star();
        let pstar =
            Matrix::from_fn(n, n, BigInt::zero(), |i, j| if star[i] == j { BigInt::one() } else { BigInt::zero() });
        Self { d0, d, j0, j, pstar }
    }
}

/// Pass/fail with an optional first counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<String>,
}

impl Check {
    fn compare<R: crate::linalg::Domain>(a: &Matrix<R>, b: &Matrix<R>, names: &[String], what: &str) -> Self {
        match a.differences(b).first() {
            None => Self { holds: true, witness: None },
            Some(&(i, j)) => {
                Self { holds: false, witness: Some(format!("{what} differs at ({}, {})", names[i], names[j])) }
            }
        }
    }

    fn all(checks: &[Check]) -> Self {
        match checks.iter().find(|c| !c.holds) {
            None => Self { holds: true, witness: None },
            Some(c) => c.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnSum {
    pub state: String,
    pub vertex: String,
    pub sum: i64,
    /// `χ̄(Lk(α(j)))`.
    pub expected: i64,
}

/// Status of `J · [*]J[*] = I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseStatus {
    Holds,
    Fails,
    /// The complex is not Eulerian; whether the identity happens to hold
    /// anyway is recorded.
    NotApplicable {
        identity_holds: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub factorizations: Check,
    pub star_conjugation: Check,
    pub column_sums: Vec<ColumnSum>,
    pub inverse: InverseStatus,
    pub inverse_witness: Option<String>,
    pub reverse_conjugate: Check,
}

impl StructureReport {
    pub fn column_sums_hold(&self) -> bool {
        self.column_sums.iter().all(|c| c.sum == c.expected)
    }

    /// Items that must hold on every nonpositively curved complex.
    pub fn unconditional_pass(&self) -> bool {
        self.factorizations.holds
            && self.star_conjugation.holds
            && self.column_sums_hold()
            && self.reverse_conjugate.holds
    }

    pub fn passed(&self) -> bool {
        self.unconditional_pass() && self.inverse != InverseStatus::Fails
    }
}

fn to_poly(m: &Matrix<BigInt>, nvars: usize) -> Matrix<LaurentPolynomial> {
    m.map(LaurentPolynomial::zero(nvars), |c| {
        LaurentPolynomial::constant(nvars, num_rational::BigRational::from_integer(c.clone()))
    })
}

pub fn verify_structure(complex: &CubicalComplex) -> Result<StructureReport, AutomatonError> {
    let forward = Automaton::build(complex, Convention::Forward)?;
    let reverse = Automaton::build(complex, Convention::Reverse)?;
    let m = StructuralMatrices::build(&forward);
    let names = forward.state_names();
    let star = forward.star();
    let generic = Substitution::per_diagonal(complex);
    let nv = generic.nvars();
    let spec = |s: &SymbolicMatrix| generic.specialize(s).expect("per-diagonal substitution covers every letter");
    let q = spec(&forward.transition_matrix());
    let (d0, d) = (spec(&m.d0), spec(&m.d));
    let (j0, j) = (to_poly(&m.j0, nv), to_poly(&m.j, nv));
    let factorizations = Check::all(&[
        Check::compare(&q, &d0.mul(&j0), names, "Q vs D0 J0"),
        Check::compare(&q, &d.mul(&j0), names, "Q vs D J0"),
        Check::compare(&q, &d0.mul(&j), names, "Q vs D0 J"),
    ]);
    let p = to_poly(&m.pstar, nv);
    let star_conjugation = Check::all(&[
        Check::compare(&p.mul(&d).mul(&p), &spec(&m.d.star(star)), names, "[*]D[*] vs D*"),
        Check::compare(&p.mul(&d0).mul(&p), &spec(&m.d0.star(star)), names, "[*]D0[*] vs D0*"),
        Check::compare(&m.pstar.mul(&m.pstar), &Matrix::identity(names.len(), BigInt::zero()), names, "[*]^2 vs I"),
    ]);
    let links = complex.links();
    let pj = m.pstar.mul(&m.j);
    let column_sums = forward
        .states()
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let sum = pj.column_sum(k);
            ColumnSum {
                state: names[k].clone(),
                vertex: complex.vertex_name(s.start).into(),
                sum: i64::try_from(sum).expect("column sums are small"),
                expected: links[s.start.0].euler_characteristic() - 1,
            }
        })
        .collect();
    let pjp = pj.mul(&m.pstar);
    let inv = Check::compare(&m.j.mul(&pjp), &Matrix::identity(names.len(), BigInt::zero()), names, "J [*]J[*] vs I");
    let inverse = match (complex.eulerian_status().is_eulerian(), inv.holds) {
        (true, true) => InverseStatus::Holds,
        (true, false) => InverseStatus::Fails,
        (false, h) => InverseStatus::NotApplicable { identity_holds: h },
    };
    let rq = reverse.transition_matrix();
    let conj = forward.transition_matrix().conjugate(star);
    let reverse_conjugate = match rq.nonzeros().chain(conj.nonzeros()).find(|&(i, j, _)| rq.get(i, j) != conj.get(i, j))
    {
        None => Check { holds: true, witness: None },
        Some((i, j, _)) => {
            Check { holds: false, witness: Some(format!("Q- vs [*]Q+[*] differs at ({}, {})", names[i], names[j])) }
        }
    };
    Ok(StructureReport {
        factorizations,
        star_conjugation,
        column_sums,
        inverse,
        inverse_witness: inv.witness,
        reverse_conjugate,
    })
}
