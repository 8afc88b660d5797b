//! One line per acceptance criterion; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cubegrowth::{bundled, bundled_examples};
use cubegrowth_core::series::{check_reciprocity, growth_series_table, growth_series_univariate, oracle_mismatches};
use cubegrowth_core::structure::InverseStatus;
use cubegrowth_core::{
    verify_structure, Automaton, Convention, CubicalComplex, LaurentPolynomial, RationalFunction, Substitution,
    UnivariateRational,
};
use num_bigint::BigInt;
use num_rational::BigRational;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn load(name: &str) -> CubicalComplex {
    bundled(name).unwrap_or_else(|| panic!("missing bundled example {name}"))
}

fn npc_examples() -> Vec<CubicalComplex> {
    bundled_examples().into_iter().map(|(n, _)| load(n)).filter(|c| c.validate_npc().passed()).collect()
}

fn ints(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&k| BigRational::from_integer(BigInt::from(k))).collect()
}

fn fig1_multivariate() -> Outcome {
    let c = load("fig1");
    let start = Instant::now();
    let s = Substitution::per_diagonal(&c);
    let names: Vec<&str> = s.vars().iter().map(String::as_str).collect();
    ensure(names == ["a", "a*", "b", "b*"], || format!("variables {names:?}"))?;
    let table = growth_series_table(&c, &s, Convention::Forward).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    let one = LaurentPolynomial::one(4);
    let t = |i| LaurentPolynomial::var(4, i);
    let den = &(&one - &t(2)) * &(&one - &t(3));
    let top = &one - &(&t(2) * &t(3));
    let two = BigRational::from_integer(2.into());
    let inner = &(&(&t(2) * &t(3)).scale(&two) - &t(2)) - &t(3);
    let expected = [
        [
            RationalFunction::new(&den - &(&(&t(0) * &t(1)) * &inner), den.clone()),
            RationalFunction::new(&t(0) * &top, den.clone()),
        ],
        [RationalFunction::new(&t(1) * &top, den.clone()), RationalFunction::new(top.clone(), den.clone())],
    ];
    let (x, y) = (c.vertex("x").unwrap().0, c.vertex("y").unwrap().0);
    for (i, a) in [x, y].into_iter().enumerate() {
        for (j, b) in [x, y].into_iter().enumerate() {
            ensure(table[a][b].function == expected[i][j], || format!("series ({i},{j}) differs"))?;
        }
    }
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{elapsed:.2?}"))
}

fn fig1_univariate() -> Outcome {
    let c = load("fig1");
    let (x, y) = (c.vertex("x").unwrap(), c.vertex("y").unwrap());
    let cases = [
        (x, x, UnivariateRational::from_ints(&[1, -1, 0, 2], &[1, -1]), [1, 0, 0, 2, 2, 2]),
        (x, y, UnivariateRational::from_ints(&[0, 1, 1], &[1, -1]), [0, 1, 2, 2, 2, 2]),
        (y, x, UnivariateRational::from_ints(&[0, 1, 1], &[1, -1]), [0, 1, 2, 2, 2, 2]),
        (y, y, UnivariateRational::from_ints(&[1, 1], &[1, -1]), [1, 2, 2, 2, 2, 2]),
    ];
    for (a, b, want, prefix) in cases {
        let g = growth_series_univariate(&c, a, b, Convention::Forward).map_err(|e| e.to_string())?;
        ensure(g == want, || format!("{g} != {want}"))?;
        let got = g.expand(5).map_err(|e| e.to_string())?;
        ensure(got == ints(&prefix), || format!("prefix {got:?}"))?;
    }
    Ok("reduced forms and prefixes through degree 5".into())
}

fn genus2_series() -> Outcome {
    let c = load("genus2");
    let start = Instant::now();
    let a = Automaton::build(&c, Convention::Forward).map_err(|e| e.to_string())?;
    let trivial = a.states().iter().filter(|d| d.is_trivial()).count();
    ensure((a.state_count(), trivial) == (52, 4), || format!("{} states, {trivial} trivial", a.state_count()))?;
    let v = |n: &str| c.vertex(n).unwrap();
    let den = [1, 0, -14, 0, 1];
    let cases = [
        ("z", UnivariateRational::from_ints(&[0, 0, 12], &den)),
        ("y", UnivariateRational::from_ints(&[0, 3, 0, 3], &den)),
        ("x", UnivariateRational::from_ints(&[1, 0, -2, 0, 1], &den)),
    ];
    let mut xx = None;
    for (to, want) in cases {
        let g = growth_series_univariate(&c, v("x"), v(to), Convention::Forward).map_err(|e| e.to_string())?;
        ensure(g == want, || format!("G_x{to} = {g}"))?;
        xx = Some(g);
    }
    let elapsed = start.elapsed();
    let got = xx.unwrap().expand(6).map_err(|e| e.to_string())?;
    ensure(got == ints(&[1, 0, 12, 0, 168, 0, 2340]), || format!("expansion {got:?}"))?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{elapsed:.2?}"))
}

fn genus2_reciprocity() -> Outcome {
    let c = load("genus2");
    let s = Substitution::single_variable(&c);
    for x in c.vertices() {
        for y in c.vertices() {
            let r = check_reciprocity(&c, x, y, &s).map_err(|e| e.to_string())?;
            let pair = || format!("{}->{}", c.vertex_name(x), c.vertex_name(y));
            ensure(r.eulerian && r.dimension == 2 && r.sign() == 1, || format!("{}: {}", pair(), r.verdict()))?;
            ensure(r.routes_agree, || format!("{}: routes disagree", pair()))?;
            ensure(r.reciprocal.matrix_route.function == r.series.function, || format!("{}: matrix route", pair()))?;
            ensure(r.reciprocal.substitution_route.function == r.series.function, || {
                format!("{}: substitution route", pair())
            })?;
            ensure(r.holds, pair)?;
        }
    }
    Ok("16 ordered pairs, sign +1".into())
}

fn structure_suite() -> Outcome {
    let mut seen = Vec::new();
    for c in npc_examples() {
        let r = verify_structure(&c).map_err(|e| e.to_string())?;
        ensure(r.unconditional_pass(), || format!("{}: {r:?}", c.name()))?;
        let eulerian = c.eulerian_status().is_eulerian();
        let inverse_ok = matches!(r.inverse, InverseStatus::Holds);
        ensure(inverse_ok == eulerian, || format!("{}: inverse {:?}", c.name(), r.inverse))?;
        seen.push(format!("{}{}", c.name(), if inverse_ok { "+" } else { "" }));
    }
    Ok(seen.join(" "))
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for c in npc_examples() {
        let mut subs = vec![Substitution::single_variable(&c)];
        if Automaton::build(&c, Convention::Forward).map_err(|e| e.to_string())?.state_count() <= 24 {
            subs.push(Substitution::per_hyperplane(&c));
        }
        for s in &subs {
            for conv in [Convention::Forward, Convention::Reverse] {
                let bad = oracle_mismatches(&c, s, conv, 8).map_err(|e| e.to_string())?;
                ensure(bad.is_empty(), || format!("{}: {:?}", c.name(), bad.first()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} tables through degree 8"))
}

fn uniqueness() -> Outcome {
    for name in ["square", "cube3", "tree4"] {
        let c = load(name);
        let a = Automaton::build(&c, Convention::Forward).map_err(|e| e.to_string())?;
        let bound = c.cubes().count();
        for x in c.vertices() {
            for y in c.vertices() {
                let n = a.enumerate_words(x, y, bound).len();
                ensure(n == 1, || format!("{name}: {} words {}->{}", n, c.vertex_name(x), c.vertex_name(y)))?;
            }
        }
    }
    Ok("one word per ordered pair".into())
}

fn negative_control() -> Outcome {
    let out = cubegrowth::cli::run([
        "cubegrowth",
        "reciprocity",
        "--input",
        "fig1",
        "--from",
        "x",
        "--to",
        "x",
        "--vars",
        "single",
    ]);
    ensure(out.code == 0, || format!("exit {}: {}", out.code, out.stderr))?;
    ensure(out.stdout.contains("does not hold"), || out.stdout.clone())?;
    Ok(out.stdout.lines().last().unwrap_or_default().to_string())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("fig1 multivariate series", fig1_multivariate),
        ("fig1 univariate series", fig1_univariate),
        ("genus-2 automaton and series", genus2_series),
        ("genus-2 reciprocity", genus2_reciprocity),
        ("structure suite", structure_suite),
        ("path counts equal expansions", oracle_equivalence),
        ("uniqueness on simply connected inputs", uniqueness),
        ("fig1 negative control", negative_control),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(note) => println!("PASS {} {name} ({note})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
