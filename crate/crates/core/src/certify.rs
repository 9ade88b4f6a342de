//! Grid certification of the second- and fourth-order sufficient conditions,
//! the derivative-sign lemma, weight admissibility and `h_w` profiles.
//!
//! Every check here is numeric: a pass is reported as `certified_numeric`,
//! never as a proof. Exact certificates live in [`crate::polycert`].

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{DerivativeGrade, Generator, PinskerCoefficients};
use crate::grid::Grid;
use crate::jet::{Jet, ORDER};

/// Default lower bound on the normalized margin.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Tolerance on `|g⁽ᵏ⁾(1)|` in [`derivative_sign_check`].
pub const DERIVATIVE_AT_ONE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    CertifiedNumeric,
    Violated,
    Inconclusive,
}

impl Status {
    /// CLI exit code: 0 certified, 1 violated, 2 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::CertifiedNumeric => 0,
            Status::Violated => 1,
            Status::Inconclusive => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::CertifiedNumeric => "certified_numeric",
            Status::Violated => "violated",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateResult {
    pub condition: String,
    pub subject: String,
    pub status: Status,
    /// Minimum over the grid of `(LHS − RHS)/max(|LHS|, |RHS|, 1)`.
    pub margin: f64,
    pub witness_u: Option<f64>,
    pub grid_spec: String,
    pub points: usize,
    pub tolerance: f64,
    pub grade: DerivativeGrade,
    pub notes: Vec<String>,
}

impl CertificateResult {
    pub fn is_certified(&self) -> bool {
        self.status == Status::CertifiedNumeric
    }
}

struct Scan {
    margin: f64,
    witness: f64,
    failed: usize,
    first_failure: Option<f64>,
}

/// Pointwise normalized margins, reduced to the minimum; ties keep the smaller `u`.
fn scan<F>(grid: &Grid, sides: F) -> Scan
where
    F: Fn(f64) -> Option<(f64, f64)> + Sync,
{
    let evaluated: Vec<(f64, Option<f64>)> = grid
        .points()
        .par_iter()
        .map(|&u| {
            let m = sides(u).and_then(|(lhs, rhs)| {
                let m = (lhs - rhs) / lhs.abs().max(rhs.abs()).max(1.0);
                m.is_finite().then_some(m)
            });
            (u, m)
        })
        .collect();
    let mut out = Scan { margin: f64::INFINITY, witness: f64::NAN, failed: 0, first_failure: None };
    for (u, m) in evaluated {
        match m {
            Some(m) if m < out.margin => {
                out.margin = m;
                out.witness = u;
            }
            Some(_) => {}
            None => {
                out.failed += 1;
                out.first_failure.get_or_insert(u);
            }
        }
    }
    out
}

fn conclude(condition: &str, subject: &str, grid: &Grid, tol: f64, grade: DerivativeGrade, s: Scan) -> CertificateResult {
    let mut notes = Vec::new();
    let status = if s.margin < -tol {
        Status::Violated
    } else if s.failed > 0 || !s.margin.is_finite() {
        notes.push(format!(
            "{} grid points could not be evaluated (first at u = {})",
            s.failed,
            s.first_failure.unwrap_or(f64::NAN)
        ));
        Status::Inconclusive
    } else {
        Status::CertifiedNumeric
    };
    if grade == DerivativeGrade::NumericGrade {
        notes.push("derivatives are finite differences (numeric-grade)".into());
    }
    CertificateResult {
        condition: condition.to_string(),
        subject: subject.to_string(),
        status,
        margin: if s.margin.is_finite() { s.margin } else { 0.0 },
        witness_u: (status == Status::Violated).then_some(s.witness),
        grid_spec: grid.spec().to_string(),
        points: grid.len(),
        tolerance: tol,
        grade,
        notes,
    }
}

fn positive_c2(f: &Generator) -> Result<PinskerCoefficients> {
    let c = f.coefficients()?;
    let c2 = c.c2.to_f64();
    if !(c2 > 0.0) {
        return Err(Error::DegenerateGenerator { name: f.name().to_string(), f2: 2.0 * c2 });
    }
    Ok(c)
}

/// `f̃(u)[1 + (1 − w₂)(u − 1)] ≥ c₂(u − 1)²` on the grid.
pub fn check_second_order_condition(f: &Generator, grid: &Grid, tol: f64) -> Result<CertificateResult> {
    let c = positive_c2(f)?;
    let (c2, w2, _, _) = c.floats();
    let s = scan(grid, |u| {
        let t = u - 1.0;
        Some((f.tilde_value(u) * (1.0 + (1.0 - w2) * t), c2 * t * t))
    });
    Ok(conclude("second-order", f.name(), grid, tol, f.grade(), s))
}

/// `sgn(u − 1)·{(f‴/f″)(u)[1 + (1 − w₂)(u − 1)] + 3(1 − w₂)} ≥ 0` on the grid.
pub fn check_second_order_derivative_condition(f: &Generator, grid: &Grid, tol: f64) -> Result<CertificateResult> {
    if f.max_order() < 3 {
        return Err(Error::InsufficientOrder { name: f.name().to_string(), required: 3, available: f.max_order() });
    }
    let c = positive_c2(f)?;
    let a = 1.0 - c.w2.to_f64();
    let s = scan(grid, |u| {
        let j = f.jet(u)?;
        let (f2, f3) = (j.derivative(2), j.derivative(3));
        if !(f2 > 0.0) {
            return None;
        }
        let t = u - 1.0;
        let sign = if t > 0.0 { 1.0 } else if t < 0.0 { -1.0 } else { 0.0 };
        Some((sign * (f3 / f2 * (1.0 + a * t) + 3.0 * a), 0.0))
    });
    Ok(conclude("second-order-derivative", f.name(), grid, tol, f.grade(), s))
}

/// `(c₂, c₄, 1 − w₂, 1 − w₄)` for the fourth-order checks.
fn fourth_order_parameters(name: &str, c: &PinskerCoefficients) -> Result<(f64, f64, f64, f64)> {
    let (c2, w2, c4, w4) = c.floats();
    if !(c2 > 0.0) {
        return Err(Error::FourthOrderUndefined(format!("{name}: c2 = {} must be positive", c.c2)));
    }
    let w4 = w4.ok_or_else(|| {
        Error::FourthOrderUndefined(format!("{name}: c4 = {} so w4 is undefined; use the second-order checks", c.c4))
    })?;
    Ok((c2, c4, 1.0 - w2, 1.0 - w4))
}

/// `f̃·A·B³ ≥ c₂(u−1)²B³ + c₄(u−1)⁴A` with `A = 1 + (1−w₂)(u−1)`, `B = 1 + (1−w₄)(u−1)`.
pub fn check_fourth_order_condition(f: &Generator, grid: &Grid, tol: f64) -> Result<CertificateResult> {
    let c = f.coefficients()?;
    if !c.c4_positive() {
        return Err(Error::FourthOrderUndefined(format!(
            "{}: c4 = {} is not positive; only the second-order inequality applies",
            f.name(),
            c.c4
        )));
    }
    let (c2, c4, a, b) = fourth_order_parameters(f.name(), &c)?;
    let s = scan(grid, |u| {
        let t = u - 1.0;
        let big_a = 1.0 + a * t;
        let big_b3 = (1.0 + b * t).powi(3);
        let lhs = f.tilde_value(u) * big_a * big_b3;
        let rhs = c2 * t * t * big_b3 + c4 * t.powi(4) * big_a;
        Some((lhs, rhs))
    });
    Ok(conclude("fourth-order", f.name(), grid, tol, f.grade(), s))
}

/// Summands of `g⁽⁶⁾(u)/f″(u)` for `g = f̃AB³ − c₂(u−1)²B³ − c₄(u−1)⁴A`:
///
/// `[f⁽⁶⁾AB³ + 6f⁽⁵⁾B²(a + 3b + 4abt) + 90f⁽⁴⁾bB(a + b + 2abt) + 120f‴b²(3a + b + 4abt)]/f″ + 360ab³`
/// with `a = 1 − w₂`, `b = 1 − w₄`, `t = u − 1`.
fn fourth_order_derivative_terms(derivs: &[f64], a: f64, b: f64, u: f64) -> [f64; 5] {
    let t = u - 1.0;
    let big_a = 1.0 + a * t;
    let big_b = 1.0 + b * t;
    let (f2, f3, f4, f5, f6) = (derivs[2], derivs[3], derivs[4], derivs[5], derivs[6]);
    [
        f6 * big_a * big_b.powi(3) / f2,
        6.0 * f5 * big_b * big_b * (a + 3.0 * b + 4.0 * a * b * t) / f2,
        90.0 * f4 * b * big_b * (a + b + 2.0 * a * b * t) / f2,
        120.0 * f3 * b * b * (3.0 * a + b + 4.0 * a * b * t) / f2,
        360.0 * a * b.powi(3),
    ]
}

/// `g⁽⁶⁾(u)/f″(u)`; see [`fourth_order_derivative_terms`].
pub fn fourth_order_derivative_lhs(derivs: &[f64], a: f64, b: f64, u: f64) -> f64 {
    fourth_order_derivative_terms(derivs, a, b, u).iter().sum()
}

/// The sixth-derivative condition with the generator's own coefficients.
pub fn check_fourth_order_derivative_condition(f: &Generator, grid: &Grid, tol: f64) -> Result<CertificateResult> {
    let c = f.coefficients()?;
    check_fourth_order_derivative_condition_with_coefficients(f, &c, grid, tol)
}

/// As [`check_fourth_order_derivative_condition`] with caller-supplied
/// coefficients, e.g. closed forms that keep `w₄` at `c₄ = 0`.
pub fn check_fourth_order_derivative_condition_with_coefficients(
    f: &Generator,
    c: &PinskerCoefficients,
    grid: &Grid,
    tol: f64,
) -> Result<CertificateResult> {
    if f.max_order() < 6 {
        return Err(Error::InsufficientOrder { name: f.name().to_string(), required: 6, available: f.max_order() });
    }
    let (_, _, a, b) = fourth_order_parameters(f.name(), c)?;
    let s = scan(grid, |u| {
        let d = f.jet(u)?.derivatives();
        if !(d[2] > 0.0) {
            return None;
        }
        // Positive and negative summands on opposite sides, so cancellation
        // is measured against the size of the terms.
        let terms = fourth_order_derivative_terms(&d, a, b, u);
        let pos: f64 = terms.iter().filter(|x| **x > 0.0).sum();
        let neg: f64 = terms.iter().filter(|x| **x < 0.0).sum();
        Some((pos, -neg))
    });
    Ok(conclude("fourth-order-derivative", f.name(), grid, tol, f.grade(), s))
}

/// Result of [`check_weights_admissible`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightsAdmissibility {
    pub admissible: bool,
    pub diagnostics: Vec<String>,
}

/// Both `w₂` and `w₄` must lie in `[0, 1]` for the fourth-order condition to hold.
pub fn check_weights_admissible(c: &PinskerCoefficients) -> WeightsAdmissibility {
    let mut diagnostics = Vec::new();
    if !c.c4_positive() {
        diagnostics.push(format!("c4 = {} is not positive; the fourth-order theorem does not apply", c.c4));
    }
    let w2 = c.w2.to_f64();
    let mut admissible = true;
    if !(0.0..=1.0).contains(&w2) {
        admissible = false;
        diagnostics.push(format!("w2 = {} lies outside [0, 1]", c.w2));
    }
    match &c.w4 {
        None => {
            admissible = false;
            diagnostics.push("w4 is undefined".into());
        }
        Some(w4) if !(0.0..=1.0).contains(&w4.to_f64()) => {
            admissible = false;
            diagnostics.push(format!("w4 = {w4} lies outside [0, 1]"));
        }
        Some(_) => {}
    }
    WeightsAdmissibility { admissible, diagnostics }
}

/// A function of `u` built from generators and polynomials, differentiated
/// through jets up to order 7.
#[derive(Debug, Clone)]
pub enum GExpr {
    Gen(Generator),
    /// Coefficients in ascending powers of `u`.
    Poly(Vec<f64>),
    Add(Box<GExpr>, Box<GExpr>),
    Mul(Box<GExpr>, Box<GExpr>),
    Scale(f64, Box<GExpr>),
}

impl GExpr {
    pub fn add(self, other: GExpr) -> GExpr {
        GExpr::Add(Box::new(self), Box::new(other))
    }

    pub fn mul(self, other: GExpr) -> GExpr {
        GExpr::Mul(Box::new(self), Box::new(other))
    }

    pub fn scale(self, c: f64) -> GExpr {
        GExpr::Scale(c, Box::new(self))
    }

    /// `(1 + s(u − 1))ᵏ` as a polynomial.
    pub fn linear_power(s: f64, k: u32) -> GExpr {
        let base = [1.0 - s, s];
        let mut coeffs = vec![1.0];
        for _ in 0..k {
            let mut next = vec![0.0; coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i] += c * base[0];
                next[i + 1] += c * base[1];
            }
            coeffs = next;
        }
        GExpr::Poly(coeffs)
    }

    /// `(u − 1)ᵏ` as a polynomial.
    pub fn shifted_power(k: u32) -> GExpr {
        let k = k as usize;
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut binom = 1.0;
        for i in 0..=k {
            coeffs.push(if (k - i) % 2 == 0 { binom } else { -binom });
            binom *= (k - i) as f64 / (i + 1) as f64;
        }
        GExpr::Poly(coeffs)
    }

    /// `g = f̃(u)A − c₂(u − 1)²`; `n = 2` in [`derivative_sign_check`].
    pub fn second_order_g(f: &Generator) -> Result<GExpr> {
        let (c2, w2, _, _) = f.coefficients()?.floats();
        let lhs = GExpr::Gen(f.tilde()).mul(GExpr::linear_power(1.0 - w2, 1));
        Ok(lhs.add(GExpr::Poly(vec![-c2, 2.0 * c2, -c2])))
    }

    /// `g = f̃AB³ − c₂(u−1)²B³ − c₄(u−1)⁴A`; `n = 5` in [`derivative_sign_check`].
    pub fn fourth_order_g(f: &Generator) -> Result<GExpr> {
        let c = f.coefficients()?;
        let (c2, c4, a, b) = fourth_order_parameters(f.name(), &c)?;
        let big_a = || GExpr::linear_power(a, 1);
        let big_b3 = || GExpr::linear_power(b, 3);
        let lhs = GExpr::Gen(f.tilde()).mul(big_a()).mul(big_b3());
        let t2 = GExpr::shifted_power(2);
        let t4 = GExpr::shifted_power(4);
        Ok(lhs
            .add(t2.mul(big_b3()).scale(-c2))
            .add(t4.mul(big_a()).scale(-c4)))
    }

    pub fn jet(&self, u: f64) -> Option<Jet<f64>> {
        match self {
            GExpr::Gen(g) => g.jet(u),
            GExpr::Poly(coeffs) => {
                let x = Jet::variable(u);
                let mut acc = Jet::constant(0.0);
                for c in coeffs.iter().rev() {
                    acc = (&acc * &x).add_constant(c);
                }
                Some(acc)
            }
            GExpr::Add(a, b) => Some(&a.jet(u)? + &b.jet(u)?),
            GExpr::Mul(a, b) => Some(&a.jet(u)? * &b.jet(u)?),
            GExpr::Scale(c, a) => Some(a.jet(u)?.scale(c)),
        }
    }

    fn grade(&self) -> DerivativeGrade {
        let numeric = match self {
            GExpr::Gen(g) => g.grade() == DerivativeGrade::NumericGrade,
            GExpr::Poly(_) => false,
            GExpr::Add(a, b) | GExpr::Mul(a, b) => {
                a.grade() == DerivativeGrade::NumericGrade || b.grade() == DerivativeGrade::NumericGrade
            }
            GExpr::Scale(_, a) => a.grade() == DerivativeGrade::NumericGrade,
        };
        if numeric {
            DerivativeGrade::NumericGrade
        } else {
            DerivativeGrade::ClosedForm
        }
    }

    fn min_order(&self) -> usize {
        match self {
            GExpr::Gen(g) if g.max_order() == 0 => 0,
            GExpr::Gen(_) | GExpr::Poly(_) => ORDER,
            GExpr::Add(a, b) | GExpr::Mul(a, b) => a.min_order().min(b.min_order()),
            GExpr::Scale(_, a) => a.min_order(),
        }
    }
}

/// Checks `g(1) = … = g⁽ⁿ⁾(1) = 0` and the sign pattern of `g⁽ⁿ⁺¹⁾` that
/// makes `g ≥ 0`: for even `n`, `g⁽ⁿ⁺¹⁾ ≤ 0` below 1 and `≥ 0` above;
/// for odd `n`, `g⁽ⁿ⁺¹⁾ ≥ 0` everywhere.
pub fn derivative_sign_check(g: &GExpr, n: usize, grid: &Grid, tol: f64) -> Result<CertificateResult> {
    if n == 0 || n + 1 > g.min_order() {
        return Err(Error::InsufficientOrder { name: "g".into(), required: n + 1, available: g.min_order() });
    }
    let subject = format!("g with n = {n}");
    let at_one = g.jet(1.0).ok_or_else(|| Error::Domain("g is not differentiable at u = 1".into()))?;
    for k in 0..=n {
        let d = at_one.derivative(k);
        if d.abs() > DERIVATIVE_AT_ONE_TOLERANCE {
            return Ok(CertificateResult {
                condition: "derivative-sign".into(),
                subject,
                status: Status::Violated,
                margin: -d.abs() / d.abs().max(1.0),
                witness_u: Some(1.0),
                grid_spec: grid.spec().to_string(),
                points: grid.len(),
                tolerance: tol,
                grade: g.grade(),
                notes: vec![format!("derivative of order {k} at u = 1 is {d}, not 0")],
            });
        }
    }
    let s = scan(grid, |u| {
        let d = g.jet(u)?.derivative(n + 1);
        let signed = if n % 2 == 1 || u > 1.0 {
            d
        } else if u < 1.0 {
            -d
        } else {
            0.0
        };
        Some((signed, 0.0))
    });
    Ok(conclude("derivative-sign", &subject, grid, tol, g.grade(), s))
}

/// `h_w(u) = (u−1)²/{f̃(u)[1 + (1−w)(u−1)]}` sampled on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HwProfile {
    pub w: f64,
    pub samples: Vec<(f64, f64)>,
    /// `2/f″(1)`.
    pub limit_at_1: f64,
    pub argmax_u: f64,
    pub max_value: f64,
}

/// Refinement target for the argmax.
pub const ARGMAX_RESOLUTION: f64 = 1e-4;

fn h_w(f: &Generator, limit: f64, w: f64, u: f64) -> f64 {
    let t = u - 1.0;
    if t == 0.0 {
        return limit;
    }
    t * t / (f.tilde_value(u) * (1.0 + (1.0 - w) * t))
}

pub fn h_w_profile(f: &Generator, w: f64, grid: &Grid) -> Result<HwProfile> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::Domain(format!("w = {w} must lie in [0, 1]")));
    }
    let f2 = f.deriv(2, 1.0)?;
    if !(f2 > 0.0) {
        return Err(Error::DegenerateGenerator { name: f.name().to_string(), f2 });
    }
    let limit = 2.0 / f2;
    let samples: Vec<(f64, f64)> = grid.points().iter().map(|&u| (u, h_w(f, limit, w, u))).collect();
    let (best, _) = samples
        .iter()
        .enumerate()
        .filter(|(_, (_, h))| h.is_finite())
        .fold((0, f64::NEG_INFINITY), |acc, (i, (_, h))| if *h > acc.1 { (i, *h) } else { acc });
    let lo = samples[best.saturating_sub(1)].0;
    let hi = samples[(best + 1).min(samples.len() - 1)].0;
    let (argmax_u, max_value) = refine_max(|u| h_w(f, limit, w, u), lo, hi, samples[best]);
    Ok(HwProfile { w, samples, limit_at_1: limit, argmax_u, max_value })
}

/// Dense scan of `[lo, hi]` at spacing below [`ARGMAX_RESOLUTION`] / 10, keeping `start` if nothing beats it.
fn refine_max(h: impl Fn(f64) -> f64, lo: f64, hi: f64, start: (f64, f64)) -> (f64, f64) {
    let steps = (((hi - lo) / (ARGMAX_RESOLUTION / 10.0)).ceil() as usize).clamp(1, 200_000);
    let mut best = start;
    for i in 0..=steps {
        let u = lo + (hi - lo) * i as f64 / steps as f64;
        let v = h(u);
        if v > best.1 {
            best = (u, v);
        }
    }
    best
}
