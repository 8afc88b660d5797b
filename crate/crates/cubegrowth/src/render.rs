//! Text and JSON renderings of series and coefficient tables.

use std::collections::BTreeMap;

use cubegrowth_core::series::SolvedSeries;
use cubegrowth_core::{LaurentPolynomial, Monomial};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

fn exponent_key(m: &Monomial) -> String {
    m.exponents().iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

/// An exact number: a JSON integer when it fits, otherwise a string.
pub fn number_json(c: &BigRational) -> Value {
    if c.is_integer() {
        if let Some(i) = c.to_integer().to_i64() {
            return json!(i);
        }
    }
    Value::String(c.to_string())
}

pub fn poly_json(p: &LaurentPolynomial) -> Value {
    let mut out = Map::new();
    for (m, c) in p.terms() {
        out.insert(exponent_key(m), Value::String(c.to_string()));
    }
    Value::Object(out)
}

/// `{num, den, vars}`, using the reduced form when there is one.
pub fn series_json(s: &SolvedSeries, vars: &[String]) -> Value {
    let (num, den) = match &s.univariate {
        Some(u) => (u.numerator().to_laurent(), u.denominator().to_laurent()),
        None => (s.function.num.clone(), s.function.den.clone()),
    };
    let mut v = json!({"num": poly_json(&num), "den": poly_json(&den), "vars": vars});
    if let Some(u) = &s.univariate {
        v["display"] = Value::String(u.display(&vars[0]));
    }
    v
}

pub fn series_text(s: &SolvedSeries, vars: &[String]) -> String {
    match &s.univariate {
        Some(u) => u.display(&vars[0]),
        None => {
            let (n, d) = (&s.function.num, &s.function.den);
            if d.is_one() {
                n.display(vars)
            } else {
                format!("({})/({})", n.display(vars), d.display(vars))
            }
        }
    }
}

/// Dense list by degree for one variable, otherwise `monomial: coefficient`.
pub fn coefficients_text(coeffs: &BTreeMap<Monomial, BigRational>, vars: &[String], max_degree: u32) -> String {
    if vars.len() == 1 {
        let dense: Vec<String> = (0..=max_degree as i32)
            .map(|k| coeffs.get(&Monomial::from_exponents(vec![k])).map_or_else(|| "0".to_string(), |c| c.to_string()))
            .collect();
        return format!("[{}]\n", dense.join(", "));
    }
    let mut rows: Vec<(&Monomial, &BigRational)> = coeffs.iter().collect();
    rows.sort_by_key(|(m, _)| (m.total_degree(), (*m).clone()));
    rows.iter().map(|(m, c)| format!("{}: {}\n", m.display(vars), c)).collect()
}

pub fn coefficients_json(coeffs: &BTreeMap<Monomial, BigRational>, vars: &[String], max_degree: u32) -> Value {
    if vars.len() == 1 {
        let dense: Vec<Value> = (0..=max_degree as i32)
            .map(|k| coeffs.get(&Monomial::from_exponents(vec![k])).map_or(json!(0), number_json))
            .collect();
        return json!({"vars": vars, "coefficients": dense});
    }
    let mut terms = Map::new();
    for (m, c) in coeffs {
        terms.insert(exponent_key(m), number_json(c));
    }
    json!({"vars": vars, "coefficients": terms})
}
