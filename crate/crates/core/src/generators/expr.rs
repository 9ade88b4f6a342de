//! User generators: linear combinations of `u^k`, `log u`, `u log u` and `√u`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := number | atom | number '*' atom
//! atom  := 'u' | 'u^' k | 'log(u)' | 'ln(u)' | 'u*log(u)' | 'u*ln(u)' | 'sqrt(u)'
//! number := decimal (e.g. 0.5, 1e-3) | fraction (e.g. 1/2)
//! ```
//!
//! Example: `u*log(u) - u + 1`.

use std::fmt;

use num::{Signed, Zero};

use crate::dist::ExtReal;
use crate::error::{Error, Result};
use crate::exact::Number;
use crate::jet::{Jet, JetScalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    /// `u^k` (`k = 0` is the constant 1).
    Power(u32),
    Log,
    ULog,
    Sqrt,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expression {
    terms: Vec<(Number, Atom)>,
    source: String,
}

impl Expression {
    pub fn parse(source: &str) -> Result<Expression> {
        let compact: String = source.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty generator expression".into()));
        }
        let mut terms = Vec::new();
        for (negative, text) in split_terms(&compact)? {
            let (coef, atom) = parse_term(text)?;
            let coef = if negative { super::builtin::negate(&coef) } else { coef };
            terms.push((coef, atom));
        }
        Ok(Expression { terms, source: source.trim().to_string() })
    }

    pub fn terms(&self) -> &[(Number, Atom)] {
        &self.terms
    }

    pub fn is_exact(&self) -> bool {
        self.terms.iter().all(|(c, _)| c.is_exact())
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.terms
            .iter()
            .map(|(c, atom)| {
                let c = c.to_f64();
                match atom {
                    Atom::Power(k) => c * u.powi(*k as i32),
                    Atom::Log => c * u.ln(),
                    Atom::ULog if u == 0.0 => 0.0,
                    Atom::ULog => c * u * u.ln(),
                    Atom::Sqrt => c * u.sqrt(),
                }
            })
            .sum()
    }

    pub(crate) fn apply<S: JetScalar>(&self, x: &Jet<S>) -> Option<Jet<S>> {
        let mut out = Jet::constant(S::zero());
        for (c, atom) in &self.terms {
            let c = S::from_number(c)?;
            let term = match atom {
                Atom::Power(k) => x.powi(*k as i64)?,
                Atom::Log => x.ln()?,
                Atom::ULog => x * &x.ln()?,
                Atom::Sqrt => x.sqrt()?,
            };
            out = &out + &term.scale(&c);
        }
        Some(out)
    }

    /// Value at `u = 1`, exact when all coefficients are.
    pub fn value_at_one(&self) -> Number {
        let contributes = |atom: &Atom| matches!(atom, Atom::Power(_) | Atom::Sqrt);
        if self.is_exact() {
            let sum = self
                .terms
                .iter()
                .filter(|(_, a)| contributes(a))
                .fold(num::rational::BigRational::zero(), |acc, (c, _)| acc + c.as_exact().unwrap().clone());
            Number::Exact(sum)
        } else {
            Number::Float(self.terms.iter().filter(|(_, a)| contributes(a)).map(|(c, _)| c.to_f64()).sum())
        }
    }

    /// `f(0⁺)`; `None` when it is `−∞`.
    pub fn limit_at_zero(&self) -> Option<ExtReal> {
        let log_coef: f64 = self.coef_sum(|a| matches!(a, Atom::Log));
        if log_coef > 0.0 {
            return None;
        }
        if log_coef < 0.0 {
            return Some(ExtReal::Infinity);
        }
        Some(ExtReal::Finite(self.coef_sum(|a| *a == Atom::Power(0))))
    }

    /// `lim f(u)/u`; `None` when it is `−∞`.
    pub fn slope_at_infinity(&self) -> Option<ExtReal> {
        let top = self
            .terms
            .iter()
            .filter_map(|(c, a)| match a {
                Atom::Power(k) if *k >= 2 && c.to_f64() != 0.0 => Some(*k),
                _ => None,
            })
            .max();
        if let Some(k) = top {
            let lead = self.coef_sum(|a| *a == Atom::Power(k));
            return (lead > 0.0).then_some(ExtReal::Infinity);
        }
        let ulog = self.coef_sum(|a| *a == Atom::ULog);
        if ulog != 0.0 {
            return (ulog > 0.0).then_some(ExtReal::Infinity);
        }
        Some(ExtReal::Finite(self.coef_sum(|a| *a == Atom::Power(1))))
    }

    fn coef_sum(&self, pick: impl Fn(&Atom) -> bool) -> f64 {
        self.terms.iter().filter(|(_, a)| pick(a)).map(|(c, _)| c.to_f64()).sum()
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    let mut negative = false;
    let mut depth = 0i32;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                let exponent_sign = i > 0 && matches!(bytes[i - 1], b'e' | b'E') && i > 1 && bytes[i - 2].is_ascii_digit();
                if exponent_sign {
                    continue;
                }
                if i > start {
                    out.push((negative, &s[start..i]));
                } else if i != 0 {
                    return Err(Error::Parse(format!("dangling operator in `{s}`")));
                }
                negative = b == b'-';
                start = i + 1;
            }
            _ => {}
        }
    }
    if start >= s.len() {
        return Err(Error::Parse(format!("expression `{s}` ends with an operator")));
    }
    out.push((negative, &s[start..]));
    Ok(out)
}

fn parse_atom(s: &str) -> Option<Atom> {
    match s {
        "u" => Some(Atom::Power(1)),
        "log(u)" | "ln(u)" => Some(Atom::Log),
        "u*log(u)" | "u*ln(u)" | "log(u)*u" | "ln(u)*u" => Some(Atom::ULog),
        "sqrt(u)" | "u^(1/2)" | "u^0.5" => Some(Atom::Sqrt),
        _ => s.strip_prefix("u^").and_then(|k| k.parse::<u32>().ok()).map(Atom::Power),
    }
}

fn parse_term(s: &str) -> Result<(Number, Atom)> {
    if let Some(atom) = parse_atom(s) {
        return Ok((Number::exact(1, 1), atom));
    }
    for (i, _) in s.match_indices('*') {
        if let (Ok(c), Some(atom)) = (Number::parse(&s[..i]), parse_atom(&s[i + 1..])) {
            return Ok((c, atom));
        }
    }
    let c = Number::parse(s).map_err(|_| Error::Parse(format!("unrecognized term `{s}`")))?;
    if let Number::Exact(r) = &c {
        if r.is_negative() {
            return Err(Error::Parse(format!("unexpected sign inside term `{s}`")));
        }
    }
    Ok((c, Atom::Power(0)))
}
