//! Closed-set case conditions over four real parameters.
//!
//! Conditions are written as text in the same shape they are usually
//! printed (`"|a+d| <= c-b"`, `"b = -1"`) and parsed once into linear
//! forms. Each condition is a conjunction of atoms; a condition set fires
//! when any of its conditions holds.

use std::fmt;

/// A linear form `constant + Σ coef[i] * p[i]` over four parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Lin {
    coef: [f64; 4],
    constant: f64,
}

impl Lin {
    pub fn eval(&self, p: &[f64; 4]) -> f64 {
        let mut acc = self.constant;
        for (c, x) in self.coef.iter().zip(p) {
            if *c != 0.0 {
                acc += c * x;
            }
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Atom {
    /// `lhs <= rhs`
    Le(Lin, Lin),
    /// `|lhs| <= rhs`
    AbsLe(Lin, Lin),
    /// `lhs = rhs`
    Eq(Lin, Lin),
}

impl Atom {
    pub fn holds(&self, p: &[f64; 4]) -> bool {
        match self {
            Atom::Le(l, r) => l.eval(p) <= r.eval(p),
            Atom::AbsLe(l, r) => l.eval(p).abs() <= r.eval(p),
            Atom::Eq(l, r) => l.eval(p) == r.eval(p),
        }
    }

    /// Distance of the parameters from this atom's boundary.
    pub fn boundary_gap(&self, p: &[f64; 4]) -> f64 {
        match self {
            Atom::Le(l, r) | Atom::Eq(l, r) => (r.eval(p) - l.eval(p)).abs(),
            Atom::AbsLe(l, r) => (r.eval(p) - l.eval(p).abs()).abs(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub label: u32,
    pub text: String,
    atoms: Vec<Atom>,
}

impl Condition {
    pub fn holds(&self, p: &[f64; 4]) -> bool {
        self.atoms.iter().all(|a| a.holds(p))
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.label, self.text)
    }
}

/// A disjunction of labelled conditions.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionSet {
    pub params: [&'static str; 4],
    pub conditions: Vec<Condition>,
}

impl ConditionSet {
    /// Parses `(label, [atom, ...])` rows. Panics on malformed text; the
    /// tables are static and covered by tests.
    pub fn parse(params: [&'static str; 4], rows: &[(u32, &[&str])]) -> Self {
        let conditions = rows
            .iter()
            .map(|(label, atoms)| Condition {
                label: *label,
                text: atoms.join(", "),
                atoms: atoms
                    .iter()
                    .map(|s| {
                        parse_atom(s, &params)
                            .unwrap_or_else(|e| panic!("condition ({label}) `{s}`: {e}"))
                    })
                    .collect(),
            })
            .collect();
        ConditionSet { params, conditions }
    }

    pub fn fired(&self, p: &[f64; 4]) -> Vec<u32> {
        self.conditions
            .iter()
            .filter(|c| c.holds(p))
            .map(|c| c.label)
            .collect()
    }

    pub fn any(&self, p: &[f64; 4]) -> bool {
        self.conditions.iter().any(|c| c.holds(p))
    }

    pub fn get(&self, label: u32) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.label == label)
    }

    /// Smallest boundary gap over every atom of every condition.
    pub fn min_boundary_gap(&self, p: &[f64; 4]) -> f64 {
        self.conditions
            .iter()
            .flat_map(|c| c.atoms.iter())
            .map(|a| a.boundary_gap(p))
            .fold(f64::INFINITY, f64::min)
    }
}

fn parse_atom(s: &str, params: &[&str; 4]) -> Result<Atom, String> {
    let (lhs, op, rhs) = if let Some((l, r)) = s.split_once("<=") {
        (l, "<=", r)
    } else if let Some((l, r)) = s.split_once(">=") {
        (l, ">=", r)
    } else if let Some((l, r)) = s.split_once('=') {
        (l, "=", r)
    } else {
        return Err("missing comparison".into());
    };
    let (lhs, rhs) = if op == ">=" { (rhs, lhs) } else { (lhs, rhs) };
    let lhs = lhs.trim();
    let rhs = rhs.trim();
    if let Some(inner) = lhs.strip_prefix('|').and_then(|t| t.strip_suffix('|')) {
        if op == "=" {
            return Err("absolute value only supported with <=".into());
        }
        return Ok(Atom::AbsLe(parse_lin(inner, params)?, parse_lin(rhs, params)?));
    }
    let l = parse_lin(lhs, params)?;
    let r = parse_lin(rhs, params)?;
    Ok(if op == "=" { Atom::Eq(l, r) } else { Atom::Le(l, r) })
}

fn parse_lin(s: &str, params: &[&str; 4]) -> Result<Lin, String> {
    let mut lin = Lin {
        coef: [0.0; 4],
        constant: 0.0,
    };
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty expression".into());
    }
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1.0;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1.0;
            }
            i += 1;
        } else if i > 0 {
            return Err(format!("expected operator at `{}`", &s[i..]));
        }
        let start = i;
        while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
            i += 1;
        }
        let number = if i > start {
            Some(
                s[start..i]
                    .parse::<f64>()
                    .map_err(|e| format!("bad number `{}`: {e}", &s[start..i]))?,
            )
        } else {
            None
        };
        let name_start = i;
        while i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
            i += 1;
        }
        if i > name_start {
            let name = &s[name_start..i];
            let k = params
                .iter()
                .position(|p| *p == name)
                .ok_or_else(|| format!("unknown parameter `{name}`"))?;
            lin.coef[k] += sign * number.unwrap_or(1.0);
        } else if let Some(v) = number {
            lin.constant += sign * v;
        } else {
            return Err(format!("dangling sign in `{s}`"));
        }
    }
    Ok(lin)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: [&str; 4] = ["a", "b", "c", "d"];

    #[test]
    fn parses_linear_forms() {
        let l = parse_lin("2+a+b+2d", &P).unwrap();
        assert_eq!(l.coef, [1.0, 1.0, 0.0, 2.0]);
        assert_eq!(l.constant, 2.0);
        let l = parse_lin("-1-b-d", &P).unwrap();
        assert_eq!(l.coef, [0.0, -1.0, 0.0, -1.0]);
        assert_eq!(l.constant, -1.0);
        assert!(parse_lin("a+e", &P).is_err());
        assert!(parse_lin("a b", &P).is_err());
        assert!(parse_lin("", &P).is_err());
    }

    #[test]
    fn atoms_evaluate_as_written() {
        let p = [0.25, -0.5, 0.75, 0.0];
        assert!(parse_atom("|a+d| <= c-b", &P).unwrap().holds(&p));
        assert!(parse_atom("c >= 0", &P).unwrap().holds(&p));
        assert!(!parse_atom("b >= 0", &P).unwrap().holds(&p));
        assert!(parse_atom("d = 0", &P).unwrap().holds(&p));
        assert!(!parse_atom("-c = 1", &P).unwrap().holds(&p));
        let gap = parse_atom("a <= c", &P).unwrap().boundary_gap(&p);
        assert_eq!(gap, 0.5);
    }

    #[test]
    fn sets_report_fired_labels() {
        let set = ConditionSet::parse(P, &[(1, &["a <= b"]), (2, &["c >= 0", "d = 0"])]);
        assert_eq!(set.fired(&[0.5, 0.0, 0.1, 0.0]), vec![2]);
        assert!(!set.any(&[0.5, 0.0, -0.1, 0.0]));
        assert_eq!(set.get(2).unwrap().to_string(), "(2) c >= 0, d = 0");
    }
}
