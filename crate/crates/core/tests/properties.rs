use std::collections::BTreeSet;

use cubegrowth_core::automaton::is_normal_path;
use cubegrowth_core::series::{growth_series_table, oracle_mismatches, solve_symbolic};
use cubegrowth_core::structure::InverseStatus;
use cubegrowth_core::{
    verify_structure, Automaton, ComplexBuilder, Convention, Corner, CubeId, CubicalComplex, Substitution,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

/// A connected graph: a random spanning tree plus extra edges, loops allowed.
fn graph(parents: &[(usize, bool)], extra: &[(usize, usize)]) -> CubicalComplex {
    let n = parents.len() + 1;
    let mut b = ComplexBuilder::new("graph");
    for v in 0..n {
        b.vertex(format!("v{v}"));
    }
    for (k, &(p, flip)) in parents.iter().enumerate() {
        let (child, parent) = (k + 1, p % (k + 1));
        let (from, to) = if flip { (child, parent) } else { (parent, child) };
        b.edge(format!("t{k}"), format!("v{from}"), format!("v{to}"));
    }
    for (k, &(a, c)) in extra.iter().enumerate() {
        b.edge(format!("x{k}"), format!("v{}", a % n), format!("v{}", c % n));
    }
    b.build().unwrap()
}

fn arb_graph() -> impl Strategy<Value = CubicalComplex> {
    (prop::collection::vec((0usize..8, any::<bool>()), 0..3), prop::collection::vec((0usize..8, 0usize..8), 0..3))
        .prop_map(|(p, e)| graph(&p, &e))
}

/// An `a × b` grid of unit squares; `order` permutes declarations.
fn grid(a: usize, b: usize, order: &[usize]) -> CubicalComplex {
    let perm = |mut items: Vec<String>| {
        let n = items.len();
        if n > 1 {
            for (i, &o) in order.iter().enumerate() {
                items.swap(i % n, o % n);
            }
        }
        items
    };
    let mut bld = ComplexBuilder::new("grid");
    let verts: Vec<String> = (0..=a).flat_map(|i| (0..=b).map(move |j| format!("v{i}_{j}"))).collect();
    for v in perm(verts) {
        bld.vertex(v);
    }
    let mut edges = Vec::new();
    for i in 0..=a {
        for j in 0..=b {
            if i < a {
                edges.push((format!("h{i}_{j}"), format!("v{i}_{j}"), format!("v{}_{j}", i + 1)));
            }
            if j < b {
                edges.push((format!("u{i}_{j}"), format!("v{i}_{j}"), format!("v{i}_{}", j + 1)));
            }
        }
    }
    let names = perm(edges.iter().map(|e| e.0.clone()).collect());
    for n in names {
        let e = edges.iter().find(|e| e.0 == n).unwrap();
        bld.edge(e.0.clone(), e.1.clone(), e.2.clone());
    }
    let squares: Vec<String> = (0..a).flat_map(|i| (0..b).map(move |j| format!("{i}_{j}"))).collect();
    for s in perm(squares) {
        let (i, j) = s.split_once('_').unwrap();
        let (i, j): (usize, usize) = (i.parse().unwrap(), j.parse().unwrap());
        bld.cube(
            2,
            format!("q{s}"),
            [format!("u{i}_{j}"), format!("u{}_{j}", i + 1), format!("h{i}_{j}"), format!("h{i}_{}", j + 1)],
        );
    }
    bld.build().unwrap()
}

fn class_sets(c: &CubicalComplex) -> BTreeSet<BTreeSet<String>> {
    c.hyperplane_classes()
        .classes()
        .iter()
        .map(|cl| cl.iter().map(|&e| c.cube_name(CubeId::new(1, e)).to_string()).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn diagonal_count_and_involution(c in arb_graph()) {
        let ds = c.diagonals();
        let expected: usize = c.cubes().map(|k| 1usize << k.dim).sum();
        prop_assert_eq!(ds.len(), expected);
        let p = c.hyperplane_classes();
        for d in &ds {
            let r = d.reverse();
            prop_assert_eq!(r.reverse(), *d);
            prop_assert_eq!(d.is_trivial(), r == *d);
            prop_assert_eq!(c.weight(&p, d), c.weight(&p, &r));
        }
    }

    #[test]
    fn reverse_matrix_is_star_conjugate(c in arb_graph()) {
        let f = Automaton::build(&c, Convention::Forward).unwrap();
        let r = Automaton::build(&c, Convention::Reverse).unwrap();
        prop_assert_eq!(r.transition_matrix(), f.transition_matrix().conjugate(f.star()));
        let report = verify_structure(&c).unwrap();
        prop_assert!(report.unconditional_pass(), "{:?}", report);
    }

    #[test]
    fn path_counts_match_expansions(c in arb_graph()) {
        let t = Substitution::single_variable(&c);
        prop_assert_eq!(oracle_mismatches(&c, &t, Convention::Forward, 6).unwrap(), vec![]);
        let fwd = growth_series_table(&c, &t, Convention::Forward).unwrap();
        let rev = growth_series_table(&c, &t, Convention::Reverse).unwrap();
        prop_assert_eq!(&fwd, &rev);
        for x in c.vertices() {
            for y in c.vertices() {
                let u = fwd[x.0][y.0].univariate.as_ref().unwrap();
                let c0 = u.expand(0).unwrap()[0].clone();
                prop_assert_eq!(c0, BigRational::from_integer(BigInt::from(u8::from(x == y))));
            }
        }
    }

    #[test]
    fn forward_and_reverse_counts_agree(c in arb_graph()) {
        let f = Automaton::build(&c, Convention::Forward).unwrap();
        let r = Automaton::build(&c, Convention::Reverse).unwrap();
        let h = Substitution::per_hyperplane(&c);
        prop_assert!(h.is_star_invariant());
        for x in c.vertices() {
            for y in c.vertices() {
                prop_assert_eq!(f.weighted_counts(x, y, &h, 4).unwrap(), r.weighted_counts(x, y, &h, 4).unwrap());
            }
        }
    }

    #[test]
    fn accepted_words_are_normal(c in arb_graph()) {
        let f = Automaton::build(&c, Convention::Forward).unwrap();
        for x in c.vertices() {
            for y in c.vertices() {
                for w in f.enumerate_words(x, y, 4) {
                    let ds: Vec<_> = w.iter().map(|&k| f.states()[k]).collect();
                    prop_assert!(is_normal_path(&c, &ds));
                    if let (Some(first), Some(last)) = (ds.first(), ds.last()) {
                        prop_assert_eq!((first.start, last.end), (x, y));
                    }
                }
            }
        }
    }

    #[test]
    fn star_of_reverse_matrix_gives_same_series(c in arb_graph()) {
        let f = Automaton::build(&c, Convention::Forward).unwrap();
        let r = Automaton::build(&c, Convention::Reverse).unwrap();
        let t = Substitution::single_variable(&c);
        let init: Vec<Vec<bool>> = c.vertices().map(|x| f.initial_vector(x)).collect();
        let rinit: Vec<Vec<bool>> = c.vertices().map(|x| r.initial_vector(x)).collect();
        let acc: Vec<Vec<bool>> = c.vertices().map(|y| f.accept_vector(y)).collect();
        let plus = solve_symbolic(&f.transition_matrix(), &init, &acc, &t).unwrap();
        let minus_star = solve_symbolic(&r.transition_matrix().star(f.star()), &rinit, &acc, &t).unwrap();
        prop_assert_eq!(plus, minus_star);
    }

    #[test]
    fn grids_have_unique_normal_paths(a in 1usize..3, b in 1usize..3, order in prop::collection::vec(0usize..40, 0..6)) {
        let c = grid(a, b, &order);
        prop_assert!(c.validate_npc().passed());
        let f = Automaton::build(&c, Convention::Forward).unwrap();
        let cubes = c.cubes().count();
        for x in c.vertices() {
            for y in c.vertices() {
                let words = f.enumerate_words(x, y, a + b + 1);
                prop_assert_eq!(words.len(), 1);
                prop_assert!(words[0].len() <= cubes);
            }
        }
        prop_assert_eq!(c.hyperplane_classes().class_count(), a + b);
        prop_assert_eq!(class_sets(&c), class_sets(&grid(a, b, &[])));
        for cube in c.cubes() {
            let chis: BTreeSet<i64> = Corner::iter_all(cube.dim)
                .map(|k| c.link_of_cube_at(cube, k).euler_characteristic())
                .collect();
            prop_assert_eq!(chis.len(), 1);
        }
        let s = verify_structure(&c).unwrap();
        prop_assert!(s.unconditional_pass());
        let na = matches!(s.inverse, InverseStatus::NotApplicable { .. });
        prop_assert!(na);
    }
}
