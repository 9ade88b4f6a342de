//! Exact rational polynomials and the nonnegativity certificates built on them:
//! the quartic sum-of-squares lemma, the sixth-derivative identity for KL,
//! the bracket polynomial for `D₍α₎`, the `P₁₀` chain and a division search
//! for positivity on `[−1, 2]`.
//!
//! No floating point is used for any decision in this module.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{format_rational, int, ratio, rational_to_f64};

/// Univariate polynomial with exact rational coefficients, ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<BigRational>,
    var: char,
}

impl RationalPoly {
    pub fn new(coeffs: Vec<BigRational>, var: char) -> Self {
        let mut p = RationalPoly { coeffs, var };
        p.trim();
        p
    }

    pub fn zero(var: char) -> Self {
        RationalPoly { coeffs: Vec::new(), var }
    }

    pub fn constant(c: BigRational, var: char) -> Self {
        RationalPoly::new(vec![c], var)
    }

    /// The polynomial `x`.
    pub fn x(var: char) -> Self {
        RationalPoly::new(vec![BigRational::zero(), BigRational::one()], var)
    }

    /// `a + b·x`.
    pub fn linear(a: BigRational, b: BigRational, var: char) -> Self {
        RationalPoly::new(vec![a, b], var)
    }

    /// From integer coefficients, ascending.
    pub fn from_ints(coeffs: &[i64], var: char) -> Self {
        RationalPoly::new(coeffs.iter().map(|&c| int(c)).collect(), var)
    }

    /// From decimal integer strings, ascending; for coefficients beyond `i64`.
    pub fn from_decimal(coeffs: &[&str], var: char) -> Self {
        let parse = |s: &str| BigRational::from_integer(s.parse::<BigInt>().expect("decimal integer literal"));
        RationalPoly::new(coeffs.iter().map(|s| parse(s)).collect(), var)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `xᵏ` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn var(&self) -> char {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalPoly::new(self.coeffs.iter().map(|x| x * c).collect(), self.var)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(RationalPoly::constant(BigRational::one(), self.var), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect();
        RationalPoly::new(coeffs, self.var)
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.derivative())
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + rational_to_f64(c))
    }

    /// `P = Q·A + R` with `deg R < deg A`.
    pub fn quo_rem(&self, divisor: &RationalPoly) -> Result<(RationalPoly, RationalPoly)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = &rem[rem.len() - 1] / &lead;
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quo[k] = c;
            rem.pop();
        }
        Ok((RationalPoly::new(quo, self.var), RationalPoly::new(rem, self.var)))
    }

    /// Replace the variable tag.
    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    /// Coefficients as exact fraction strings, ascending.
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let body = format_rational(&a);
            match k {
                0 => f.write_str(&body)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{body}*")?;
                    }
                    if k == 1 {
                        write!(f, "{}", self.var)?;
                    } else {
                        write!(f, "{}^{k}", self.var)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect(), self.var)
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect(), self.var)
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero(self.var);
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPoly::new(out, self.var)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for RationalPoly {
            type Output = RationalPoly;
            fn $method(self, rhs: RationalPoly) -> RationalPoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// `T(u) = a₄(u + shift1)⁴ + a₂(u + shift2)² + a₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticCertificate {
    pub a4: BigRational,
    pub a2: BigRational,
    pub a0: BigRational,
    pub shift1: BigRational,
    pub shift2: BigRational,
}

impl QuarticCertificate {
    /// Pairs of (name, exact value) in display order.
    pub fn values(&self) -> Vec<(&'static str, String)> {
        vec![
            ("a4", format_rational(&self.a4)),
            ("a2", format_rational(&self.a2)),
            ("a0", format_rational(&self.a0)),
            ("shift1", format_rational(&self.shift1)),
            ("shift2", format_rational(&self.shift2)),
        ]
    }

    pub fn expand(&self, var: char) -> RationalPoly {
        let s1 = RationalPoly::linear(self.shift1.clone(), BigRational::one(), var);
        let s2 = RationalPoly::linear(self.shift2.clone(), BigRational::one(), var);
        &(&s1.pow(4).scale(&self.a4) + &s2.pow(2).scale(&self.a2)) + &RationalPoly::constant(self.a0.clone(), var)
    }
}

impl fmt::Display for QuarticCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.values();
        let parts: Vec<String> = v.iter().map(|(k, x)| format!("{k}={x}")).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuarticOutcome {
    Certified(QuarticCertificate),
    /// The lemma does not apply; this says nothing about the sign of `T`.
    Inconclusive { reason: String },
}

impl QuarticOutcome {
    pub fn certificate(&self) -> Option<&QuarticCertificate> {
        match self {
            QuarticOutcome::Certified(c) => Some(c),
            QuarticOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Quartic sum-of-squares certificate: `a₄ = c₄`, `a₂ = (8c₂c₄ − 3c₃²)/(8c₄)` and
/// `a₀` by the closed form, all required nonnegative.
pub fn quartic_certificate(t: &RationalPoly) -> Result<QuarticOutcome> {
    if t.degree() != Some(4) {
        return Err(Error::Degree(format!("quartic certificate needs degree 4, got {:?}", t.degree())));
    }
    let c: Vec<BigRational> = (0..=4).map(|k| t.coeff(k)).collect();
    let (c0, c1, c2, c3, c4) = (&c[0], &c[1], &c[2], &c[3], &c[4]);
    let k = |n: i64| int(n);
    let d = &k(8) * c2 * c4 - &k(3) * c3 * c3;
    if !d.is_positive() {
        return Ok(QuarticOutcome::Inconclusive {
            reason: format!("8*c2*c4 - 3*c3^2 = {} is not positive", format_rational(&d)),
        });
    }
    if c4.is_negative() {
        return Ok(QuarticOutcome::Inconclusive { reason: format!("a4 = {} is negative", format_rational(c4)) });
    }
    let a2 = &d / (&k(8) * c4);
    let c4_2 = c4 * c4;
    let c4_3 = &c4_2 * c4;
    let c4_4 = &c4_3 * c4;
    let c3_2 = c3 * c3;
    let c3_3 = &c3_2 * c3;
    let c3_4 = &c3_3 * c3;
    let c3_6 = &c3_4 * &c3_2;
    let numerator = &k(2048) * c0 * &c4_4 * c2 - &k(768) * c0 * &c4_3 * &c3_2 - &k(8) * &c3_4 * c2 * c4 + &c3_6
        + &k(64) * &c3_3 * c1 * &c4_2
        - &k(512) * c1 * c1 * &c4_4;
    let a0 = numerator / (&k(256) * &c4_3 * &d);
    let shift1 = c3 / (&k(4) * c4);
    let shift2 = (&k(16) * c1 * &c4_2 - &c3_3) / (&k(4) * c4 * &d);
    if a0.is_negative() {
        return Ok(QuarticOutcome::Inconclusive { reason: format!("a0 = {} is negative", format_rational(&a0)) });
    }
    Ok(QuarticOutcome::Certified(QuarticCertificate { a4: c4.clone(), a2, a0, shift1, shift2 }))
}

/// Exact coefficient comparison of the expanded certificate with `T`.
pub fn verify_quartic_identity(t: &RationalPoly, cert: &QuarticCertificate) -> bool {
    cert.expand(t.var()) == t.clone()
}

/// One checked identity inside a report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub pass: bool,
    pub checks: Vec<IdentityCheck>,
    /// Exact values worth printing, as fraction strings.
    pub values: Vec<(String, String)>,
}

impl IdentityReport {
    fn new(name: &str) -> Self {
        IdentityReport { name: name.to_string(), pass: true, checks: Vec::new(), values: Vec::new() }
    }

    fn check(&mut self, label: &str, pass: bool, detail: impl Into<String>) {
        self.pass &= pass;
        self.checks.push(IdentityCheck { label: label.to_string(), pass, detail: detail.into() });
    }

    fn value(&mut self, name: &str, v: impl Into<String>) {
        self.values.push((name.to_string(), v.into()));
    }
}

fn diff_detail(lhs: &RationalPoly, rhs: &RationalPoly) -> String {
    let d = lhs - rhs;
    if d.is_zero() {
        "exact match".into()
    } else {
        format!("difference {d}")
    }
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// The KL quartic `43904u⁴ − 50960u³ + 44268u² − 34102u + 24565`.
pub fn kl_sixth_quartic() -> RationalPoly {
    RationalPoly::from_ints(&[24565, -34102, 44268, -50960, 43904], 'u')
}

/// Rebuilds `g = f̃AB³ − ½(u−1)²B³ − (1/36)(u−1)⁴A` for `f = −log u`,
/// `A = 1 + (2/3)(u−1)`, `B = 1 + (28/45)(u−1)`, written as `Pa·log u + Pb`,
/// and checks `u⁶g⁽⁶⁾ = (8/91125)·T(u)` with `T` the KL quartic, the vanishing
/// of `g⁽ᵐ⁾(1)` for `m ≤ 5`, and the quartic certificate of `T`.
pub fn kl_sixth_identity() -> IdentityReport {
    let mut report = IdentityReport::new("kl-sixth");
    let t = RationalPoly::linear(int(-1), int(1), 'u');
    let a = &RationalPoly::constant(int(1), 'u') + &t.scale(&ratio(2, 3));
    let b = &RationalPoly::constant(int(1), 'u') + &t.scale(&ratio(28, 45));
    let b3 = b.pow(3);
    let ab3 = &a * &b3;
    // f̃ = (u − 1) − log u.
    let pa = -&ab3;
    let pb = &(&(&t * &ab3) - &(&t.pow(2) * &b3).scale(&ratio(1, 2))) - &(&t.pow(4) * &a).scale(&ratio(1, 36));

    // (Pa log u)⁽ᵐ⁾ = Pa⁽ᵐ⁾ log u + Σⱼ₌₁..ₘ C(m,j) Pa⁽ᵐ⁻ʲ⁾ (−1)ʲ⁻¹ (j−1)! u⁻ʲ.
    let log_free_part = |m: usize, u_power: usize| -> RationalPoly {
        let mut acc = pb.nth_derivative(m).pow(1);
        let u = RationalPoly::x('u');
        acc = &acc * &u.pow(u_power as u32);
        for j in 1..=m {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            let c = int(binomial(m, j) * sign * factorial(j - 1));
            let term = &pa.nth_derivative(m - j) * &u.pow((u_power - j) as u32);
            acc = &acc + &term.scale(&c);
        }
        acc
    };

    let pa_sixth = pa.nth_derivative(6);
    report.check("log terms vanish after six derivatives", pa_sixth.is_zero(), format!("Pa^(6) = {pa_sixth}"));
    let u6_g6 = log_free_part(6, 6);
    let quartic = u6_g6.scale(&ratio(91125, 8));
    let expected = kl_sixth_quartic();
    report.check("u^6 g^(6)(u) * 91125/8 equals the quartic", quartic == expected, diff_detail(&quartic, &expected));
    report.value("quartic", quartic.coefficient_strings().iter().rev().cloned().collect::<Vec<_>>().join(", "));

    let one = int(1);
    let mut at_one = Vec::new();
    for m in 0..=5 {
        // At u = 1, log u = 0 and the u⁻ʲ factors are 1.
        let v = log_free_part(m, m).eval_rational(&one);
        at_one.push(format_rational(&v));
        report.check(&format!("g^({m})(1) = 0"), v.is_zero(), format!("value {}", format_rational(&v)));
    }
    report.value("g^(m)(1), m = 0..5", at_one.join(", "));

    let at_u1 = expected.eval_rational(&one);
    report.check("quartic at u = 1 is positive", at_u1.is_positive(), format_rational(&at_u1));

    match quartic_certificate(&expected) {
        Ok(QuarticOutcome::Certified(cert)) => {
            report.check("quartic certificate expands to the quartic", verify_quartic_identity(&expected, &cert), "");
            for (k, v) in cert.values() {
                report.value(k, v);
            }
        }
        Ok(QuarticOutcome::Inconclusive { reason }) => report.check("quartic certificate", false, reason),
        Err(e) => report.check("quartic certificate", false, e.to_string()),
    }
    report
}

fn alpha_linear(a: i64, b: i64) -> RationalPoly {
    RationalPoly::from_ints(&[a, b], 'a')
}

/// Coefficients `c₀(α) … c₄(α)` of the bracket `T_α(u)`, as polynomials in `α`.
pub fn alpha_bracket_coefficients() -> [RationalPoly; 5] {
    let l = alpha_linear;
    let p = |xs: &[RationalPoly]| xs.iter().fold(RationalPoly::from_ints(&[1], 'a'), |acc, x| &acc * x);
    let s17 = l(17, 11);
    let m28 = l(-28, 11);
    let c0 = -&p(&[l(-5, 1), l(-3, 1), l(-4, 1), s17.pow(3)]);
    let c1 = p(&[l(-3, 1), l(-4, 1), RationalPoly::from_ints(&[-59, -28, 22], 'a'), s17.pow(2)]).scale(&int(2));
    let c2 = -&p(&[s17.clone(), m28.clone(), l(-3, 1), l(2, 1), RationalPoly::from_ints(&[-31, -11, 11], 'a')])
        .scale(&int(6));
    let c3 = p(&[l(3, 1), l(2, 1), RationalPoly::from_ints(&[-65, -16, 22], 'a'), m28.pow(2)]).scale(&int(2));
    let c4 = -&p(&[l(4, 1), l(3, 1), l(2, 1), m28.pow(3)]);
    [c0, c1, c2, c3, c4]
}

/// The bracket `T_α(u)`: for `D₍α₎` the sixth-derivative condition reads
/// `g⁽⁶⁾/f″ = (α+1)(2−α)·T_α(u)/(273375u⁴)`.
pub fn alpha_fourth_bracket(alpha: &BigRational) -> RationalPoly {
    let coeffs = alpha_bracket_coefficients().iter().map(|c| c.eval_rational(alpha)).collect();
    RationalPoly::new(coeffs, 'u')
}

/// `P₁₀(α)` from its coefficient list.
pub fn p10() -> RationalPoly {
    RationalPoly::from_decimal(
        &[
            "41092635382468",
            "113143847999692",
            "94728169651149",
            "-4381425810042",
            "-43681339670379",
            "-14799467270700",
            "4844633801556",
            "3066837388032",
            "54551858544",
            "-168248775872",
            "-20792743232",
        ],
        'a',
    )
}

/// `(2 − α)ᵐ(α + 1)ⁿ`.
pub fn interval_factor(m: u32, n: u32) -> RationalPoly {
    &alpha_linear(2, -1).pow(m) * &alpha_linear(1, 1).pow(n)
}

/// The five-term decomposition of `P₁₀` as (coefficient polynomial, m, n).
pub fn p10_decomposition() -> Vec<(RationalPoly, u32, u32)> {
    let d = |xs: &[&str]| RationalPoly::from_decimal(xs, 'a');
    vec![
        (d(&["300831606416", "189041519104", "20792743232"]), 3, 5),
        (d(&["3335882569236", "1295259115248"]), 2, 4),
        (d(&["7953881034231", "1471491213228"]), 1, 3),
        (d(&["1343948812407"]), 1, 2),
        (d(&["6746792560920", "11252369540556", "4661891728632"]), 0, 0),
    ]
}

/// `P` rebuilt from a decomposition.
pub fn assemble(terms: &[(RationalPoly, u32, u32)], residual: &RationalPoly) -> RationalPoly {
    terms.iter().fold(residual.clone(), |acc, (c, m, n)| &acc + &(c * &interval_factor(*m, *n)))
}

/// Nonnegativity of a polynomial of degree at most 2 on `[lo, hi]`, decided
/// exactly from the endpoints and the vertex.
pub fn low_degree_nonnegative(p: &RationalPoly, lo: &BigRational, hi: &BigRational) -> Option<bool> {
    match p.degree() {
        None => Some(true),
        Some(0) | Some(1) => Some(!p.eval_rational(lo).is_negative() && !p.eval_rational(hi).is_negative()),
        Some(2) => {
            let mut ok = !p.eval_rational(lo).is_negative() && !p.eval_rational(hi).is_negative();
            let vertex = -p.coeff(1) / (int(2) * p.coeff(2));
            if &vertex > lo && &vertex < hi {
                ok &= !p.eval_rational(&vertex).is_negative();
            }
            Some(ok)
        }
        Some(_) => None,
    }
}

fn unit_interval() -> (BigRational, BigRational) {
    (int(-1), int(2))
}

/// Expands the five-term decomposition, compares it with `P₁₀` and checks
/// every coefficient polynomial is nonnegative on `[−1, 2]`.
pub fn verify_p10_identity() -> bool {
    p10_report().pass
}

pub fn p10_report() -> IdentityReport {
    let mut report = IdentityReport::new("p10");
    let terms = p10_decomposition();
    let rebuilt = assemble(&terms, &RationalPoly::zero('a'));
    let target = p10();
    report.check("five-term decomposition expands to P10", rebuilt == target, diff_detail(&rebuilt, &target));
    let (lo, hi) = unit_interval();
    for (i, (c, m, n)) in terms.iter().enumerate() {
        let ok = low_degree_nonnegative(c, &lo, &hi) == Some(true);
        report.check(
            &format!("term {} coefficient nonnegative on [-1, 2]", i + 1),
            ok,
            format!("({c})*(2-a)^{m}*(a+1)^{n}"),
        );
    }
    report.value("P10 constant term", format_rational(&target.coeff(0)));
    report
}

/// Checks the chain for the bracket `T_α`: the closed form of `a₂`, the
/// negativity witness of its cubic factor, `a₀·32a₂(α+4)⁴ = 9P₁₀`, and the
/// coefficient list of `P₁₀`.
pub fn alpha_appendix_chain() -> IdentityReport {
    let mut report = IdentityReport::new("alpha-chain");
    let [c0, c1, c2, c3, c4] = alpha_bracket_coefficients();
    let k = |n: i64| RationalPoly::from_ints(&[n], 'a');
    let cubic = RationalPoly::from_ints(&[-4207, -4257, 552, 980], 'a');
    let d = &(&(&k(8) * &c2) * &c4) - &(&(&k(3) * &c3) * &c3);

    // a₂ = d/(8c₄) = (9/2)·cubic·(α+2)(11α−28)/(α+4), cross-multiplied.
    let lhs = &(&k(2) * &d) * &alpha_linear(4, 1);
    let rhs = &(&(&(&k(72) * &c4) * &cubic) * &alpha_linear(2, 1)) * &alpha_linear(-28, 11);
    report.check("a2 closed form", lhs == rhs, diff_detail(&lhs, &rhs));

    // cubic = −(980α + 1532)(2 − α)(α + 1) − (1143 + 765α).
    let witness = &(-&(&(&alpha_linear(1532, 980) * &alpha_linear(2, -1)) * &alpha_linear(1, 1))) - &alpha_linear(1143, 765);
    let (lo, hi) = unit_interval();
    let witness_negative = alpha_linear(1532, 980).eval_rational(&lo).is_positive()
        && alpha_linear(1143, 765).eval_rational(&lo).is_positive()
        && alpha_linear(1143, 765).eval_rational(&hi).is_positive();
    report.check(
        "cubic negativity witness",
        cubic == witness && witness_negative,
        format!("{}; sign factors positive on [-1, 2]: {witness_negative}", diff_detail(&cubic, &witness)),
    );

    // a₀ = N/(256c₄³d) and a₂ = d/(8c₄), so a₀·32a₂(α+4)⁴ = 9P₁₀ ⇔ N(α+4)⁴ = 576c₄⁴P₁₀.
    let c4_2 = &c4 * &c4;
    let c4_3 = &c4_2 * &c4;
    let c4_4 = &c4_3 * &c4;
    let c3_2 = &c3 * &c3;
    let c3_3 = &c3_2 * &c3;
    let c3_4 = &c3_3 * &c3;
    let n = [
        &(&(&k(2048) * &c0) * &c4_4) * &c2,
        &(&(&k(-768) * &c0) * &c4_3) * &c3_2,
        &(&(&k(-8) * &c3_4) * &c2) * &c4,
        &c3_4 * &c3_2,
        &(&(&k(64) * &c3_3) * &c1) * &c4_2,
        &(&(&k(-512) * &c1) * &c1) * &c4_4,
    ]
    .iter()
    .fold(RationalPoly::zero('a'), |acc, x| &acc + x);
    let lhs = &n * &alpha_linear(4, 1).pow(4);
    let rhs = &(&k(576) * &c4_4) * &p10();
    report.check("a0 * 32 a2 (a+4)^4 = 9 P10", lhs == rhs, if lhs == rhs { "exact match".into() } else { "mismatch".to_string() });

    let listed = p10();
    let expected = [
        "-20792743232",
        "-168248775872",
        "54551858544",
        "3066837388032",
        "4844633801556",
        "-14799467270700",
        "-43681339670379",
        "-4381425810042",
        "94728169651149",
        "113143847999692",
        "41092635382468",
    ];
    let got: Vec<String> = listed.coefficient_strings().into_iter().rev().collect();
    report.check("P10 coefficient list", got == expected, got.join(", "));
    report.value("a2(alpha)", "9/2*(980a^3 + 552a^2 - 4257a - 4207)(a+2)(11a-28)/(a+4)");
    report.value("P10 constant term", format_rational(&listed.coeff(0)));
    report
}

/// `P = Σ cᵢ(2−α)^mᵢ(α+1)^nᵢ + residual`, each `cᵢ` and the residual of
/// degree at most 2 and nonnegative on the interval.
#[derive(Debug, Clone, PartialEq)]
pub struct PositivityDecomposition {
    pub terms: Vec<(RationalPoly, u32, u32)>,
    pub residual: RationalPoly,
}

impl PositivityDecomposition {
    pub fn assemble(&self) -> RationalPoly {
        assemble(&self.terms, &self.residual)
    }
}

/// Sample points for the quick screen: 33 evenly spaced rationals in `[lo, hi]`.
fn sample_points(lo: &BigRational, hi: &BigRational) -> Vec<BigRational> {
    (0..=32).map(|i| lo + (hi - lo) * ratio(i, 32)).collect()
}

fn passes_samples(p: &RationalPoly, samples: &[BigRational]) -> bool {
    samples.iter().all(|x| !p.eval_rational(x).is_negative())
}

/// `c·(2−α)ᵐ(α+1)ⁿ` with `c > 0`, if `p` has that form.
fn pure_product(p: &RationalPoly, max_m: u32, max_n: u32) -> Option<(BigRational, u32, u32)> {
    let deg = p.degree()? as u32;
    for m in 0..=deg.min(max_m) {
        let n = deg - m;
        if n > max_n {
            continue;
        }
        let f = interval_factor(m, n);
        let c = p.leading() / f.leading();
        if c.is_positive() && f.scale(&c) == *p {
            return Some((c, m, n));
        }
    }
    None
}

const MAX_DEPTH: usize = 6;

/// Candidate divisors in search order: totals from `deg − 2` down to 1, then
/// `deg − 1` and `deg`; larger powers of `(2 − α)` first within a total.
fn candidates(deg: u32, max_m: u32, max_n: u32) -> Vec<(u32, u32)> {
    let mut totals: Vec<u32> = (1..=deg.saturating_sub(2)).rev().collect();
    totals.extend([deg.saturating_sub(1), deg].into_iter().filter(|t| *t >= 1 && *t + 2 > deg));
    let mut out = Vec::new();
    for total in totals {
        for m in (0..=total.min(max_m)).rev() {
            let n = total - m;
            if n <= max_n {
                out.push((m, n));
            }
        }
    }
    out
}

fn decompose(
    p: &RationalPoly,
    lo: &BigRational,
    hi: &BigRational,
    samples: &[BigRational],
    max_m: u32,
    max_n: u32,
    depth: usize,
) -> Option<PositivityDecomposition> {
    let zero = RationalPoly::zero(p.var());
    if let Some((c, m, n)) = pure_product(p, max_m, max_n) {
        return Some(PositivityDecomposition { terms: vec![(RationalPoly::constant(c, p.var()), m, n)], residual: zero });
    }
    if let Some(ok) = low_degree_nonnegative(p, lo, hi) {
        return ok.then(|| PositivityDecomposition { terms: Vec::new(), residual: p.clone() });
    }
    if depth >= MAX_DEPTH || !passes_samples(p, samples) {
        return None;
    }
    let deg = p.degree()? as u32;
    for (m, n) in candidates(deg, max_m, max_n) {
        let (q, r) = p.quo_rem(&interval_factor(m, n)).ok()?;
        if !passes_samples(&q, samples) || !passes_samples(&r, samples) {
            continue;
        }
        let Some(qd) = decompose(&q, lo, hi, samples, max_m, max_n, depth + 1) else { continue };
        let Some(rd) = decompose(&r, lo, hi, samples, max_m, max_n, depth + 1) else { continue };
        let mut terms: Vec<(RationalPoly, u32, u32)> =
            qd.terms.into_iter().map(|(c, mi, ni)| (c, mi + m, ni + n)).collect();
        if !qd.residual.is_zero() {
            terms.push((qd.residual, m, n));
        }
        terms.extend(rd.terms);
        return Some(PositivityDecomposition { terms, residual: rd.residual });
    }
    None
}

/// Trial division by `(2−α)ᵐ(α+1)ⁿ`, recursing on quotient and remainder
/// until each piece is a pure interval product or of degree at most 2 with
/// its sign on `[lo, hi]` decided exactly. `None` is not a disproof.
pub fn positivity_division_search(
    p: &RationalPoly,
    interval: (BigRational, BigRational),
    max_m: u32,
    max_n: u32,
) -> Result<Option<PositivityDecomposition>> {
    if max_m > 8 || max_n > 8 {
        return Err(Error::InvalidParameter(format!("max_m = {max_m}, max_n = {max_n}; both must be at most 8")));
    }
    let (lo, hi) = interval;
    if lo >= hi {
        return Err(Error::InvalidParameter("empty interval".into()));
    }
    let samples = sample_points(&lo, &hi);
    let found = decompose(p, &lo, &hi, &samples, max_m, max_n, 0);
    Ok(found.filter(|d| d.assemble() == *p))
}
