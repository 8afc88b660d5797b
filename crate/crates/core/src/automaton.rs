//! The normal cube path automaton and its symbolic transition matrices.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::complex::{Corner, CubeId, CubicalComplex, Diagonal, VertexId};
use crate::error::AutomatonError;
use crate::link::LinkComplex;
use crate::poly::Monomial;
use crate::substitution::Substitution;

/// Which of the two equivalent transition rules to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    /// `i → j` labelled `i`; initial states start at `x`.
    #[default]
    Forward,
    /// `i → j` labelled `i*`; initial states end at `x`.
    Reverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: usize,
    pub to: usize,
    /// State index of the letter read.
    pub label: usize,
}

/// A matrix entry symbol: the unit, or the letter with the given state index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Unit,
    Letter(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Entry {
    pub negative: bool,
    pub symbol: Symbol,
}

impl Entry {
    pub fn letter(state: usize) -> Self {
        Self { negative: false, symbol: Symbol::Letter(state) }
    }

    pub fn signed(negative: bool, symbol: Symbol) -> Self {
        Self { negative, symbol }
    }
}

/// An `S × S` matrix whose entries are `0` or `±symbol`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMatrix {
    n: usize,
    entries: Vec<Option<Entry>>,
}

impl SymbolicMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![None; n * n] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<Entry> {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Option<Entry>) {
        self.entries[i * self.n + j] = e;
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|e| e.is_some()).count()
    }

    /// Nonzero entries in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize, Entry)> + '_ {
        self.entries.iter().enumerate().filter_map(move |(k, e)| e.map(|e| (k / self.n, k % self.n, e)))
    }

    /// Entrywise `d ↦ d*`; positions are unchanged.
    pub fn star(&self, star: &[usize]) -> Self {
        let mut out = self.clone();
        for e in out.entries.iter_mut().flatten() {
            if let Symbol::Letter(l) = e.symbol {
                e.symbol = Symbol::Letter(star[l]);
            }
        }
        out
    }

    /// `P M P` for the permutation matrix `P` of `star`: entry `(i, j)`
    /// becomes `M[i*][j*]`. Symbols are unchanged.
    pub fn conjugate(&self, star: &[usize]) -> Self {
        let mut out = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(star[i], star[j]));
            }
        }
        out
    }
}

/// The automaton over all diagonals of a nonpositively curved complex.
#[derive(Clone, Debug)]
pub struct Automaton {
    convention: Convention,
    states: Vec<Diagonal>,
    names: Vec<String>,
    star: Vec<usize>,
    vertex_state: Vec<usize>,
    by_name: BTreeMap<String, usize>,
    transitions: Vec<Transition>,
    outgoing: Vec<Vec<(usize, usize)>>,
}

/// Index of each diagonal in the canonical state order.
pub(crate) fn state_index(states: &[Diagonal]) -> BTreeMap<(CubeId, Corner), usize> {
    states.iter().enumerate().map(|(k, d)| ((d.cube, d.corner), k)).collect()
}

/// `state[k*]` for every state `k`.
pub(crate) fn star_permutation(states: &[Diagonal]) -> Vec<usize> {
    let index = state_index(states);
    states.iter().map(|d| index[&(d.cube, d.corner.complement())]).collect()
}

impl Automaton {
    pub fn build(complex: &CubicalComplex, convention: Convention) -> Result<Self, AutomatonError> {
        if !complex.validate_npc().passed() {
            return Err(AutomatonError::InvalidComplex);
        }
        Ok(Self::build_unchecked(complex, convention))
    }

    fn build_unchecked(complex: &CubicalComplex, convention: Convention) -> Self {
        let states = complex.diagonals();
        let names: Vec<String> = states.iter().map(|d| complex.diagonal_name(d)).collect();
        let star = star_permutation(&states);
        let vertex_state: Vec<usize> = (0..complex.vertex_count()).collect();
        let links: Vec<LinkComplex> = complex.links();
        let sigma = |k: usize| {
            let d = &states[k];
            links[d.start.0].simplex_of(d).expect("every diagonal has a simplex at its start")
        };
        let mut transitions = Vec::new();
        for i in 0..states.len() {
            let di = &states[i];
            if di.is_trivial() {
                continue;
            }
            // the vertex shared with the next state, and the simplex whose star must be avoided
            let (shared, avoid) = match convention {
                Convention::Forward => (di.end, star[i]),
                Convention::Reverse => (di.start, i),
            };
            let link = &links[shared.0];
            let label = match convention {
                Convention::Forward => i,
                Convention::Reverse => star[i],
            };
            for j in 0..states.len() {
                let dj = &states[j];
                if dj.is_trivial() {
                    if dj.start == shared {
                        transitions.push(Transition { from: i, to: j, label });
                    }
                    continue;
                }
                let (meet, other) = match convention {
                    Convention::Forward => (dj.start, j),
                    Convention::Reverse => (dj.end, star[j]),
                };
                if meet == shared && !link.star_meets(sigma(avoid), sigma(other)) {
                    transitions.push(Transition { from: i, to: j, label });
                }
            }
        }
        let mut outgoing = vec![Vec::new(); states.len()];
        for t in &transitions {
            outgoing[t.from].push((t.label, t.to));
        }
        let by_name = names.iter().enumerate().map(|(k, n)| (n.clone(), k)).collect();
        Self { convention, states, names, star, vertex_state, by_name, transitions, outgoing }
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn states(&self) -> &[Diagonal] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, k: usize) -> &str {
        &self.names[k]
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    pub fn state_by_name(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    /// `star()[k]` is the index of `k*`.
    pub fn star(&self) -> &[usize] {
        &self.star
    }

    /// State index of the trivial diagonal at `v`.
    pub fn vertex_state(&self, v: VertexId) -> usize {
        self.vertex_state[v.0]
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// `(label, target)` pairs leaving `state`.
    pub fn outgoing(&self, state: usize) -> &[(usize, usize)] {
        &self.outgoing[state]
    }

    /// `Q₊` or `Q₋`: entry `(i, j)` is the label of the transition `i → j`.
    pub fn transition_matrix(&self) -> SymbolicMatrix {
        let mut q = SymbolicMatrix::zeros(self.states.len());
        for t in &self.transitions {
            q.set(t.from, t.to, Some(Entry::letter(t.label)));
        }
        q
    }

    /// `B_α(x)` (forward) or `B_ω(x)` (reverse) as a 0/1 vector.
    pub fn initial_vector(&self, x: VertexId) -> Vec<bool> {
        self.states
            .iter()
            .map(|d| match self.convention {
                Convention::Forward => d.start == x,
                Convention::Reverse => d.end == x,
            })
            .collect()
    }

    /// `E(y)`: the indicator of the trivial state `y`.
    pub fn accept_vector(&self, y: VertexId) -> Vec<bool> {
        let target = self.vertex_state(y);
        (0..self.states.len()).map(|k| k == target).collect()
    }

    fn initial_states(&self, x: VertexId) -> BTreeSet<usize> {
        self.initial_vector(x).iter().enumerate().filter_map(|(k, &b)| b.then_some(k)).collect()
    }

    fn step(&self, current: &BTreeSet<usize>, letter: usize) -> BTreeSet<usize> {
        current.iter().flat_map(|&s| self.outgoing[s].iter()).filter(|(l, _)| *l == letter).map(|&(_, t)| t).collect()
    }

    /// Resolves letter names to state indices.
    pub fn parse_word<S: AsRef<str>>(&self, word: &[S]) -> Result<Vec<usize>, AutomatonError> {
        word.iter()
            .map(|w| {
                let w = w.as_ref();
                let k = self.state_by_name(w).ok_or_else(|| AutomatonError::UnknownLetter(w.into()))?;
                if self.states[k].is_trivial() {
                    return Err(AutomatonError::TrivialLetter(w.into()));
                }
                Ok(k)
            })
            .collect()
    }

    pub fn accepts(&self, x: VertexId, y: VertexId, word: &[usize]) -> bool {
        let mut current = self.initial_states(x);
        for &letter in word {
            current = self.step(&current, letter);
            if current.is_empty() {
                return false;
            }
        }
        current.contains(&self.vertex_state(y))
    }

    pub fn accepts_names<S: AsRef<str>>(
        &self,
        complex: &CubicalComplex,
        x: &str,
        y: &str,
        word: &[S],
    ) -> Result<bool, AutomatonError> {
        let (x, y) = (resolve(complex, x)?, resolve(complex, y)?);
        Ok(self.accepts(x, y, &self.parse_word(word)?))
    }

    /// Accepted words with at most `max_len` letters, by length and then
    /// lexicographically in state order.
    pub fn enumerate_words(&self, x: VertexId, y: VertexId, max_len: usize) -> Vec<Vec<usize>> {
        let target = self.vertex_state(y);
        let mut out = Vec::new();
        let mut frontier: Vec<(Vec<usize>, BTreeSet<usize>)> = vec![(Vec::new(), self.initial_states(x))];
        for len in 0..=max_len {
            for (w, set) in &frontier {
                if set.contains(&target) {
                    out.push(w.clone());
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (w, set) in &frontier {
                let letters: BTreeSet<usize> =
                    set.iter().flat_map(|&s| self.outgoing[s].iter().map(|&(l, _)| l)).collect();
                for l in letters {
                    let mut w2 = w.clone();
                    w2.push(l);
                    next.push((w2, self.step(set, l)));
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        out
    }

    pub fn word_names(&self, word: &[usize]) -> Vec<String> {
        word.iter().map(|&k| self.names[k].clone()).collect()
    }

    /// Sum of weights of accepted words, truncated at total degree
    /// `max_degree`, computed by dynamic programming over paths.
    pub fn weighted_counts(
        &self,
        x: VertexId,
        y: VertexId,
        substitution: &Substitution,
        max_degree: u32,
    ) -> Result<BTreeMap<Monomial, BigInt>, AutomatonError> {
        let mut weights: Vec<Option<(Monomial, usize)>> = vec![None; self.states.len()];
        for (k, d) in self.states.iter().enumerate() {
            if d.is_trivial() {
                continue;
            }
            let m = substitution.image(k).ok_or_else(|| AutomatonError::UnknownLetter(self.names[k].clone()))?;
            if m.is_one() || !m.is_nonnegative() {
                return Err(AutomatonError::NonPositiveWeight(self.names[k].clone()));
            }
            weights[k] = Some((m.clone(), m.total_degree() as usize));
        }
        let max = max_degree as usize;
        let nvars = substitution.nvars();
        let target = self.vertex_state(y);
        let mut buckets: Vec<BTreeMap<(usize, Monomial), BigInt>> = vec![BTreeMap::new(); max + 1];
        for s in self.initial_states(x) {
            buckets[0].insert((s, Monomial::one(nvars)), BigInt::one());
        }
        let mut out: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for d in 0..=max {
            let bucket = core::mem::take(&mut buckets[d]);
            for ((s, m), c) in bucket {
                if s == target {
                    *out.entry(m.clone()).or_insert_with(BigInt::zero) += &c;
                }
                for &(label, to) in &self.outgoing[s] {
                    let (w, deg) = weights[label].as_ref().expect("labels are nontrivial");
                    if d + deg <= max {
                        *buckets[d + deg].entry((to, m.mul(w))).or_insert_with(BigInt::zero) += &c;
                    }
                }
            }
        }
        Ok(out)
    }

    /// DOT rendering; trivial states are double circles.
    pub fn export_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph automaton {{");
        let _ = writeln!(s, "  rankdir=LR;");
        for (k, d) in self.states.iter().enumerate() {
            let shape = if d.is_trivial() { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  \"{}\" [shape={shape}];", escape(&self.names[k]));
        }
        for t in &self.transitions {
            let _ = writeln!(
                s,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                escape(&self.names[t.from]),
                escape(&self.names[t.to]),
                escape(&self.names[t.label])
            );
        }
        s.push_str("}\n");
        s
    }
}

/// `d₁* d₂* …` for a word of state indices.
pub fn star_word(star: &[usize], word: &[usize]) -> Vec<usize> {
    word.iter().map(|&k| star[k]).collect()
}

pub(crate) fn resolve(complex: &CubicalComplex, name: &str) -> Result<VertexId, AutomatonError> {
    complex.vertex_by_name(name).ok_or_else(|| AutomatonError::UnknownVertex(name.into()))
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Checks that consecutive letters of `word` form a normal cube path, using
/// closed stars built from the link's simplices rather than the adjacency
/// shortcut.
pub fn is_normal_path(complex: &CubicalComplex, word: &[Diagonal]) -> bool {
    let links = complex.links();
    word.windows(2).all(|w| {
        let (d, e) = (&w[0], &w[1]);
        if d.end != e.start {
            return false;
        }
        let link = &links[d.end.0];
        let back = link.simplex_of(&d.reverse()).expect("simplex at end");
        let next = link.simplex_of(e).expect("simplex at start");
        let star: BTreeSet<usize> = link
            .simplices()
            .iter()
            .filter(|s| back.iter().all(|v| s.vertices.contains(v)))
            .flat_map(|s| s.vertices.iter().copied())
            .collect();
        next.iter().all(|v| !star.contains(v))
    })
}

impl CubicalComplex {
    /// Vertex lookup with an automaton error.
    pub fn vertex(&self, name: &str) -> Result<VertexId, AutomatonError> {
        resolve(self, name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::fixtures::*;
    use alloc::string::ToString;

    fn names(a: &Automaton, words: &[Vec<usize>]) -> Vec<String> {
        words.iter().map(|w| a.word_names(w).join(" ")).collect()
    }

    #[test]
    fn fig1_forward_matrix() {
        let c = fig1();
        let a = Automaton::build(&c, Convention::Forward).unwrap();
        assert_eq!(a.state_names(), ["x", "y", "a", "a*", "b", "b*"]);
        let q = a.transition_matrix();
        assert_eq!(q.nonzero_count(), 10);
        // rows a, a*, b, b* of the displayed matrix; columns x y a a* b b*
        let expect: [[bool; 6]; 6] = [
            [false; 6],
            [false; 6],
            [false, true, false, false, true, true],
            [true, false, false, false, false, false],
            [false, true, false, true, true, false],
            [false, true, false, true, false, true],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (j, &want) in row.iter().enumerate() {
                assert_eq!(q.get(i, j).is_some(), want, "entry ({i},{j})");
                if let Some(e) = q.get(i, j) {
                    assert_eq!(e.symbol, Symbol::Letter(i));
                }
            }
        }
        assert_eq!(a.export_dot().matches("->").count(), 10);
    }

    #[test]
    fn reverse_is_star_conjugate() {
        for c in [fig1(), square(), cube3()] {
            let f = Automaton::build(&c, Convention::Forward).unwrap();
            let r = Automaton::build(&c, Convention::Reverse).unwrap();
            assert_eq!(r.transition_matrix(), f.transition_matrix().conjugate(f.star()));
            let q = f.transition_matrix();
            assert_eq!(q.star(f.star()).star(f.star()), q);
        }
    }

    #[test]
    fn fig1_words() {
        let c = fig1();
        let a = Automaton::build(&c, Convention::Forward).unwrap();
        assert!(a.accepts_names(&c, "x", "x", &["a", "b", "a*"]).unwrap());
        assert!(!a.accepts_names(&c, "x", "x", &["a", "b", "b*", "a*"]).unwrap());
        assert!(a.accepts_names(&c, "x", "x", &[] as &[&str]).unwrap());
        assert!(!a.accepts_names(&c, "x", "y", &[] as &[&str]).unwrap());
        assert_eq!(a.accepts_names(&c, "x", "x", &["c"]), Err(AutomatonError::UnknownLetter("c".into())));
        assert_eq!(a.accepts_names(&c, "q", "x", &["a"]), Err(AutomatonError::UnknownVertex("q".into())));
        let (x, y) = (c.vertex("x").unwrap(), c.vertex("y").unwrap());
        assert_eq!(names(&a, &a.enumerate_words(x, x, 3)), ["", "a b a*", "a b* a*"]);
        assert_eq!(names(&a, &a.enumerate_words(x, y, 2)), ["a", "a b", "a b*"]);
        let r = Automaton::build(&c, Convention::Reverse).unwrap();
        assert_eq!(r.enumerate_words(x, x, 5), a.enumerate_words(x, x, 5));
        assert_eq!(
            star_word(a.star(), &a.parse_word(&["a", "b", "a*"]).unwrap()),
            a.parse_word(&["a*", "b*", "a"]).unwrap()
        );
    }

    #[test]
    fn square_has_unique_paths() {
        let c = square();
        let a = Automaton::build(&c, Convention::Forward).unwrap();
        for x in c.vertices() {
            for y in c.vertices() {
                let words = a.enumerate_words(x, y, 4);
                assert_eq!(words.len(), 1, "{x:?} -> {y:?}");
            }
        }
        let (u, w) = (c.vertex("u00").unwrap(), c.vertex("u11").unwrap());
        assert_eq!(names(&a, &a.enumerate_words(u, w, 3)), ["s"]);
    }

    #[test]
    fn weighted_counts_fig1() {
        let c = fig1();
        let a = Automaton::build(&c, Convention::Forward).unwrap();
        let t = Substitution::single_variable(&c);
        let (x, y) = (c.vertex("x").unwrap(), c.vertex("y").unwrap());
        let dense = |m: BTreeMap<Monomial, BigInt>, n: usize| {
            let mut v = vec![0i64; n + 1];
            for (k, c) in m {
                v[k.total_degree() as usize] = i64::try_from(c).unwrap();
            }
            v
        };
        assert_eq!(dense(a.weighted_counts(x, x, &t, 5).unwrap(), 5), [1, 0, 0, 2, 2, 2]);
        assert_eq!(dense(a.weighted_counts(y, y, &t, 3).unwrap(), 3), [1, 2, 2, 2]);
        assert_eq!(dense(a.weighted_counts(x, y, &t, 3).unwrap(), 3), [0, 1, 2, 2]);
    }

    #[test]
    fn non_npc_is_rejected() {
        let mut b = crate::complex::ComplexBuilder::new("flagfail");
        for v in ["o", "p1", "p2", "p3", "q12", "q23", "q13"] {
            b.vertex(v);
        }
        b.edge("e1", "o", "p1").edge("e2", "o", "p2").edge("e3", "o", "p3");
        b.edge("f12", "p1", "q12").edge("g12", "p2", "q12");
        b.edge("f23", "p2", "q23").edge("g23", "p3", "q23");
        b.edge("f13", "p1", "q13").edge("g13", "p3", "q13");
        b.cube(2, "s12", ["e2", "f12", "e1", "g12"]);
        b.cube(2, "s23", ["e3", "f23", "e2", "g23"]);
        b.cube(2, "s13", ["e3", "f13", "e1", "g13"]);
        let c = b.build().unwrap();
        assert_eq!(Automaton::build(&c, Convention::Forward).unwrap_err(), AutomatonError::InvalidComplex);
        assert_eq!(AutomatonError::InvalidComplex.to_string(), "complex failed nonpositive curvature validation");
    }
}
