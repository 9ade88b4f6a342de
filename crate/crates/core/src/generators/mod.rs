//! Convex generators `f` with `f(1) = 0`, their transformations, the built-in
//! catalogue and best-possible Pinsker coefficients derived from `f⁽ᵏ⁾(1)`.

mod builtin;
mod expr;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::Serialize;

use crate::dist::ExtReal;
use crate::error::{Error, Result};
use crate::exact::{int, ratio, Number};
use crate::grid::Grid;
use crate::jet::{Jet, JetScalar, ORDER};

pub use builtin::Builtin;
pub use expr::{Atom, Expression};

/// Highest derivative order the public oracle answers.
pub const MAX_DERIVATIVE_ORDER: usize = 6;

/// Below this distance from 1, `f̃(u)` is summed from its Taylor series at 1.
const TAYLOR_RADIUS: f64 = 1e-3;

/// Names accepted by [`Generator::builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "kl",
    "reverse_kl",
    "chi2",
    "hellinger",
    "triangular",
    "triangular_nu",
    "jeffreys",
    "capacitory",
    "rel_info_alpha",
    "tsallis",
    "cressie_read",
    "total_variation",
];

/// How derivatives are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivativeGrade {
    /// Exact Taylor propagation of closed forms.
    ClosedForm,
    /// Finite differences of a user-supplied function.
    NumericGrade,
}

impl fmt::Display for DerivativeGrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DerivativeGrade::ClosedForm => "closed-form",
            DerivativeGrade::NumericGrade => "numeric-grade",
        })
    }
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Kind {
    Builtin(Builtin),
    Tilde { inner: Box<Generator>, slope: Number },
    Reverse(Box<Generator>),
    Sum(Box<Generator>, Box<Generator>),
    Scaled(Number, Box<Generator>),
    Expr(Expression),
    Numeric { f: ScalarFn, limit_at_zero: ExtReal, slope_at_infinity: ExtReal },
}

impl fmt::Debug for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Builtin(b) => f.debug_tuple("Builtin").field(b).finish(),
            Kind::Tilde { inner, slope } => f.debug_struct("Tilde").field("inner", inner).field("slope", slope).finish(),
            Kind::Reverse(g) => f.debug_tuple("Reverse").field(g).finish(),
            Kind::Sum(a, b) => f.debug_tuple("Sum").field(a).field(b).finish(),
            Kind::Scaled(c, g) => f.debug_tuple("Scaled").field(c).field(g).finish(),
            Kind::Expr(e) => f.debug_tuple("Expr").field(e).finish(),
            Kind::Numeric { .. } => f.write_str("Numeric"),
        }
    }
}

/// Parameters for [`Generator::builtin`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    pub alpha: Option<Number>,
    pub nu: Option<u32>,
}

/// An immutable convex generator.
#[derive(Debug, Clone)]
pub struct Generator {
    name: String,
    kind: Kind,
    convexity_attested: bool,
    at_one: OnceLock<AtOne>,
}

/// Floating-point data at `u = 1`, computed on first use.
#[derive(Debug, Clone)]
struct AtOne {
    slope: f64,
    taylor: Option<Vec<f64>>,
}

impl Generator {
    fn from_builtin(name: impl Into<String>, b: Builtin) -> Generator {
        Generator { name: name.into(), kind: Kind::Builtin(b), convexity_attested: true, at_one: OnceLock::new() }
    }

    pub fn kl() -> Generator {
        Self::from_builtin("kl", Builtin::Kl)
    }

    pub fn reverse_kl() -> Generator {
        Self::from_builtin("reverse_kl", Builtin::ReverseKl)
    }

    pub fn chi2() -> Generator {
        Self::from_builtin("chi2", Builtin::Chi2)
    }

    pub fn hellinger() -> Generator {
        Self::from_builtin("hellinger", Builtin::Hellinger)
    }

    pub fn triangular() -> Generator {
        Self::from_builtin("triangular", Builtin::Triangular)
    }

    pub fn triangular_nu(nu: u32) -> Result<Generator> {
        Ok(Self::from_builtin(format!("triangular_nu(nu={nu})"), Builtin::triangular_nu(nu)?))
    }

    pub fn jeffreys() -> Generator {
        Self::from_builtin("jeffreys", Builtin::Jeffreys)
    }

    pub fn capacitory() -> Generator {
        Self::from_builtin("capacitory", Builtin::Capacitory)
    }

    /// `[α(α−1)]⁻¹ (u^α − 1)`, generating `D₍α₎`.
    pub fn rel_info_alpha(alpha: impl Into<Number>) -> Result<Generator> {
        let alpha = alpha.into();
        Ok(Self::from_builtin(format!("rel_info_alpha(alpha={alpha})"), Builtin::rel_info_alpha(alpha)?))
    }

    /// Tsallis `T_α = α·D₍₁₋α₎`; requires `α > 0` so that the generator stays convex.
    pub fn tsallis(alpha: impl Into<Number>) -> Result<Generator> {
        let alpha = alpha.into();
        if builtin::is_zero_or_one(&alpha) || !builtin::is_positive(&alpha) {
            return Err(Error::InvalidParameter(format!("tsallis alpha = {alpha} must be positive and not 1")));
        }
        let base = Builtin::rel_info_alpha(builtin::one_minus(&alpha))?;
        Ok(Generator {
            name: format!("tsallis(alpha={alpha})"),
            kind: Kind::Scaled(alpha, Box::new(Self::from_builtin("rel_info_alpha", base))),
            convexity_attested: true,
            at_one: OnceLock::new(),
        })
    }

    /// Cressie–Read `CR_λ = D₍₋λ₎`, λ ∉ {0, −1}.
    pub fn cressie_read(lambda: impl Into<Number>) -> Result<Generator> {
        let lambda = lambda.into();
        let b = Builtin::rel_info_alpha(builtin::negate(&lambda))
            .map_err(|_| Error::InvalidParameter(format!("cressie_read lambda = {lambda} must not be 0 or -1")))?;
        Ok(Self::from_builtin(format!("cressie_read(lambda={lambda})"), b))
    }

    pub fn total_variation() -> Generator {
        Self::from_builtin("total_variation", Builtin::TotalVariation)
    }

    /// Catalogue lookup; `alpha` doubles as λ for `cressie_read`.
    pub fn builtin(name: &str, params: &Params) -> Result<Generator> {
        let alpha = || {
            params
                .alpha
                .clone()
                .ok_or_else(|| Error::InvalidParameter(format!("generator `{name}` needs --alpha")))
        };
        match name {
            "kl" => Ok(Self::kl()),
            "reverse_kl" => Ok(Self::reverse_kl()),
            "chi2" => Ok(Self::chi2()),
            "hellinger" => Ok(Self::hellinger()),
            "triangular" => Ok(Self::triangular()),
            "triangular_nu" => {
                let nu = params
                    .nu
                    .ok_or_else(|| Error::InvalidParameter("generator `triangular_nu` needs --nu".into()))?;
                Self::triangular_nu(nu)
            }
            "jeffreys" => Ok(Self::jeffreys()),
            "capacitory" => Ok(Self::capacitory()),
            "rel_info_alpha" => Self::rel_info_alpha(alpha()?),
            "tsallis" => Self::tsallis(alpha()?),
            "cressie_read" => Self::cressie_read(alpha()?),
            "total_variation" => Ok(Self::total_variation()),
            other => Err(Error::UnknownGenerator(other.to_string())),
        }
    }

    /// A user generator from the expression format; rejects `f(1) ≠ 0` and
    /// boundary limits of `−∞`. Convexity is attested by a numeric `f'' ≥ 0`
    /// scan on the standard grid.
    pub fn from_expression(name: impl Into<String>, source: &str) -> Result<Generator> {
        let e = Expression::parse(source)?;
        let at_one = e.value_at_one();
        let vanishes = match &at_one {
            Number::Exact(r) => r.is_zero(),
            Number::Float(x) => x.abs() <= 1e-12,
        };
        if !vanishes {
            return Err(Error::InvalidParameter(format!("f(1) = {at_one}, a generator needs f(1) = 0")));
        }
        if e.limit_at_zero().is_none() || e.slope_at_infinity().is_none() {
            return Err(Error::InvalidParameter(format!("`{source}` tends to -inf at a boundary, not convex")));
        }
        let mut g = Generator { name: name.into(), kind: Kind::Expr(e), convexity_attested: false, at_one: OnceLock::new() };
        g.convexity_attested = g.convex_on(&Grid::standard());
        Ok(g)
    }

    /// A user-supplied function with finite-difference derivatives.
    pub fn numeric(
        name: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        limit_at_zero: ExtReal,
        slope_at_infinity: ExtReal,
    ) -> Result<Generator> {
        let at_one = f(1.0);
        if at_one.abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("f(1) = {at_one}, a generator needs f(1) = 0")));
        }
        let mut g = Generator {
            name: name.into(),
            kind: Kind::Numeric { f: Arc::new(f), limit_at_zero, slope_at_infinity },
            convexity_attested: false,
            at_one: OnceLock::new(),
        };
        g.convexity_attested = g.convex_on(&Grid::log_spaced(1e-3, 1e3, 601).expect("grid"));
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Generator {
        self.name = name.into();
        self
    }

    pub fn convexity_attested(&self) -> bool {
        self.convexity_attested
    }

    pub fn as_builtin(&self) -> Option<&Builtin> {
        match &self.kind {
            Kind::Builtin(b) => Some(b),
            _ => None,
        }
    }

    pub fn grade(&self) -> DerivativeGrade {
        match &self.kind {
            Kind::Numeric { .. } => DerivativeGrade::NumericGrade,
            Kind::Builtin(_) | Kind::Expr(_) => DerivativeGrade::ClosedForm,
            Kind::Tilde { inner, .. } | Kind::Reverse(inner) | Kind::Scaled(_, inner) => inner.grade(),
            Kind::Sum(a, b) => {
                if a.grade() == DerivativeGrade::NumericGrade || b.grade() == DerivativeGrade::NumericGrade {
                    DerivativeGrade::NumericGrade
                } else {
                    DerivativeGrade::ClosedForm
                }
            }
        }
    }

    /// Highest order the derivative oracle supports (0 for non-differentiable generators).
    pub fn max_order(&self) -> usize {
        match &self.kind {
            Kind::Builtin(b) if !b.differentiable() => 0,
            Kind::Builtin(_) | Kind::Expr(_) | Kind::Numeric { .. } => MAX_DERIVATIVE_ORDER,
            Kind::Tilde { inner, .. } | Kind::Reverse(inner) | Kind::Scaled(_, inner) => inner.max_order(),
            Kind::Sum(a, b) => a.max_order().min(b.max_order()),
        }
    }

    pub fn eval(&self, u: f64) -> f64 {
        match &self.kind {
            Kind::Builtin(b) => b.eval(u),
            Kind::Tilde { inner, slope } => inner.eval(u) - slope.to_f64() * (u - 1.0),
            Kind::Reverse(inner) => u * inner.eval(1.0 / u),
            Kind::Sum(a, b) => a.eval(u) + b.eval(u),
            Kind::Scaled(c, inner) => c.to_f64() * inner.eval(u),
            Kind::Expr(e) => e.eval(u),
            Kind::Numeric { f, .. } => f(u),
        }
    }

    /// `f̃(u) = f(u) − f'(1)(u − 1)`, summed from the Taylor series at 1 when
    /// `|u − 1| < 1e-3` to avoid cancellation.
    pub fn tilde_value(&self, u: f64) -> f64 {
        let t = u - 1.0;
        let at_one = self.at_one();
        if t.abs() < TAYLOR_RADIUS {
            if let Some(taylor) = &at_one.taylor {
                let acc = taylor[2..].iter().rev().fold(0.0, |acc, c| acc * t + c);
                return acc * t * t;
            }
        }
        self.eval(u) - at_one.slope * t
    }

    /// `f'(1)` as a float, cached.
    pub fn slope_at_one(&self) -> f64 {
        self.at_one().slope
    }

    fn at_one(&self) -> &AtOne {
        self.at_one.get_or_init(|| {
            let jet = self.jet(1.0);
            let slope = match &jet {
                Some(j) => j.derivative(1),
                None => self.first_derivative_at_one().to_f64(),
            };
            let taylor = jet.map(|j| (0..=ORDER).map(|k| *j.taylor(k)).collect());
            AtOne { slope, taylor }
        })
    }

    pub(crate) fn apply<S: JetScalar>(&self, x: &Jet<S>) -> Option<Jet<S>> {
        match &self.kind {
            Kind::Builtin(b) => b.apply(x),
            Kind::Tilde { inner, slope } => {
                let s = S::from_number(slope)?;
                Some(&inner.apply(x)? - &x.add_constant(&-S::one()).scale(&s))
            }
            Kind::Reverse(inner) => Some(x * &inner.apply(&x.recip()?)?),
            Kind::Sum(a, b) => Some(&a.apply(x)? + &b.apply(x)?),
            Kind::Scaled(c, inner) => Some(inner.apply(x)?.scale(&S::from_number(c)?)),
            Kind::Expr(e) => e.apply(x),
            Kind::Numeric { f, .. } => {
                let y = x.value().to_f64();
                let derivs = finite_difference_derivatives(f.as_ref(), y, ORDER);
                let derivs = derivs
                    .iter()
                    .map(|d| S::from_number(&Number::Float(*d)))
                    .collect::<Option<Vec<S>>>()?;
                Some(x.compose(&derivs))
            }
        }
    }

    /// Taylor jet of `f` at `u` (derivatives through order 7).
    pub fn jet(&self, u: f64) -> Option<Jet<f64>> {
        if self.max_order() == 0 {
            return None;
        }
        self.apply(&Jet::variable(u))
    }

    /// Exact jet at `u = 1` when every ingredient is rational there.
    pub fn exact_jet_at_one(&self) -> Option<Jet<BigRational>> {
        if self.max_order() == 0 {
            return None;
        }
        self.apply(&Jet::variable(BigRational::one()))
    }

    /// `f⁽ᵏ⁾(u)` for `k ≤ 6`.
    pub fn deriv(&self, k: usize, u: f64) -> Result<f64> {
        if k == 0 {
            return Ok(self.eval(u));
        }
        if k > self.max_order() {
            return Err(self.insufficient(k));
        }
        self.jet(u)
            .map(|j| j.derivative(k))
            .ok_or_else(|| Error::Domain(format!("{} has no derivative at u = {u}", self.name)))
    }

    fn insufficient(&self, required: usize) -> Error {
        Error::InsufficientOrder { name: self.name.clone(), required, available: self.max_order() }
    }

    /// `f'(1)`; for non-differentiable generators, the symmetric difference
    /// quotient, which lies between the one-sided derivatives (0 for `|u−1|`).
    pub fn first_derivative_at_one(&self) -> Number {
        if let Some(j) = self.exact_jet_at_one() {
            return Number::Exact(j.derivative(1));
        }
        if let Some(j) = self.jet(1.0) {
            return Number::Float(j.derivative(1));
        }
        let h = 1e-6;
        let d = (self.eval(1.0 + h) - self.eval(1.0 - h)) / (2.0 * h);
        Number::Float(if d.abs() < 1e-9 { 0.0 } else { d })
    }

    /// `f(0⁺)`.
    pub fn limit_at_zero(&self) -> ExtReal {
        match &self.kind {
            Kind::Builtin(b) => b.limit_at_zero(),
            Kind::Tilde { inner, slope } => inner.limit_at_zero() + ExtReal::Finite(slope.to_f64()),
            Kind::Reverse(inner) => inner.slope_at_infinity(),
            Kind::Sum(a, b) => a.limit_at_zero() + b.limit_at_zero(),
            Kind::Scaled(c, inner) => inner.limit_at_zero().scale(c.to_f64()),
            Kind::Expr(e) => e.limit_at_zero().expect("validated at construction"),
            Kind::Numeric { limit_at_zero, .. } => *limit_at_zero,
        }
    }

    /// `lim_{u→∞} f(u)/u`.
    pub fn slope_at_infinity(&self) -> ExtReal {
        match &self.kind {
            Kind::Builtin(b) => b.slope_at_infinity(),
            Kind::Tilde { inner, slope } => inner.slope_at_infinity() + ExtReal::Finite(-slope.to_f64()),
            Kind::Reverse(inner) => inner.limit_at_zero(),
            Kind::Sum(a, b) => a.slope_at_infinity() + b.slope_at_infinity(),
            Kind::Scaled(c, inner) => inner.slope_at_infinity().scale(c.to_f64()),
            Kind::Expr(e) => e.slope_at_infinity().expect("validated at construction"),
            Kind::Numeric { slope_at_infinity, .. } => *slope_at_infinity,
        }
    }

    /// `f̃(u) = f(u) − f'(1)(u − 1)`: same divergence, nonnegative, minimal at 1.
    pub fn tilde(&self) -> Generator {
        let slope = self.first_derivative_at_one();
        Generator {
            name: format!("tilde({})", self.name),
            kind: Kind::Tilde { inner: Box::new(self.clone()), slope },
            convexity_attested: self.convexity_attested,
            at_one: OnceLock::new(),
        }
    }

    /// `f_R(u) = u f(1/u)`, which swaps the arguments of the divergence.
    pub fn reverse(&self) -> Generator {
        Generator {
            name: format!("reverse({})", self.name),
            kind: Kind::Reverse(Box::new(self.clone())),
            convexity_attested: self.convexity_attested,
            at_one: OnceLock::new(),
        }
    }

    /// `f_S = f + f_R`.
    pub fn symmetrize(&self) -> Generator {
        Generator {
            name: format!("symmetrize({})", self.name),
            kind: Kind::Sum(Box::new(self.clone()), Box::new(self.reverse())),
            convexity_attested: self.convexity_attested,
            at_one: OnceLock::new(),
        }
    }

    /// `f''(u) ≥ 0` on every grid point (numeric convexity check).
    pub fn convex_on(&self, grid: &Grid) -> bool {
        if self.max_order() < 2 {
            return self.convexity_attested;
        }
        grid.points().iter().all(|&u| match self.deriv(2, u) {
            Ok(d2) => d2 >= -1e-12 * d2.abs().max(1.0),
            Err(_) => false,
        })
    }

    /// `f⁽ᵏ⁾(1)` for `k = 0..=7`, exact when possible.
    pub fn derivatives_at_one(&self) -> Result<Vec<Number>> {
        if let Some(j) = self.exact_jet_at_one() {
            return Ok(j.derivatives().into_iter().map(Number::Exact).collect());
        }
        let j = self.jet(1.0).ok_or_else(|| self.insufficient(2))?;
        Ok(j.derivatives().into_iter().map(Number::Float).collect())
    }

    /// Best-possible second- and fourth-order coefficients from `f⁽ᵏ⁾(1)`.
    pub fn coefficients(&self) -> Result<PinskerCoefficients> {
        if self.max_order() < 5 {
            return Err(self.insufficient(5));
        }
        let d = self.derivatives_at_one()?;
        let f2 = d[2].to_f64();
        if !(f2 > 0.0) {
            return Err(Error::DegenerateGenerator { name: self.name.clone(), f2 });
        }
        let exact: Option<Vec<BigRational>> = d.iter().map(|n| n.as_exact().cloned()).collect();
        Ok(match exact {
            Some(e) => PinskerCoefficients::from_exact_derivatives(&e[2], &e[3], &e[4], &e[5]),
            None => PinskerCoefficients::from_float_derivatives(f2, d[3].to_f64(), d[4].to_f64(), d[5].to_f64()),
        })
    }

    /// Richardson-extrapolated central difference of `f⁽ᵏ⁾` with step `1e-4·u`.
    fn central_difference(&self, k: usize, u: f64) -> Option<f64> {
        let quotient = |h: f64| -> Option<f64> {
            let up = self.deriv(k, u + h).ok()?;
            let down = self.deriv(k, u - h).ok()?;
            Some((up - down) / (2.0 * h))
        };
        let h = 1e-4 * u;
        Some((4.0 * quotient(h / 2.0)? - quotient(h)?) / 3.0)
    }

    /// Compares oracle order `k` against central differences of order `k − 1`.
    pub fn validate_derivatives(&self, grid: &Grid, tol: f64) -> DerivativeValidation {
        let max = self.max_order();
        let mut orders = Vec::new();
        for k in 1..=max {
            let mut worst = OrderDeviation { order: k, max_deviation: 0.0, worst_u: f64::NAN };
            for &u in grid.points() {
                let (Ok(exact), Some(fd)) = (self.deriv(k, u), self.central_difference(k - 1, u)) else {
                    worst.max_deviation = f64::INFINITY;
                    worst.worst_u = u;
                    continue;
                };
                let dev = (exact - fd).abs() / exact.abs().max(1.0);
                if dev > worst.max_deviation || !dev.is_finite() {
                    worst.max_deviation = if dev.is_finite() { dev } else { f64::INFINITY };
                    worst.worst_u = u;
                }
            }
            orders.push(worst);
        }
        let pass = orders.iter().all(|o| o.max_deviation <= tol);
        DerivativeValidation { generator: self.name.clone(), tol, orders, pass }
    }
}

/// Per-order result of [`Generator::validate_derivatives`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderDeviation {
    pub order: usize,
    /// Mixed (relative above 1, absolute below) deviation.
    pub max_deviation: f64,
    pub worst_u: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivativeValidation {
    pub generator: String,
    pub tol: f64,
    pub orders: Vec<OrderDeviation>,
    pub pass: bool,
}

/// `(c₂, w₂, c₄, w₄)`; `w₄` is `None` exactly when `c₄ = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PinskerCoefficients {
    pub c2: Number,
    pub w2: Number,
    pub c4: Number,
    pub w4: Option<Number>,
}

impl PinskerCoefficients {
    pub fn from_exact_derivatives(
        f2: &BigRational,
        f3: &BigRational,
        f4: &BigRational,
        f5: &BigRational,
    ) -> PinskerCoefficients {
        let c2 = f2 / int(2);
        let w2 = BigRational::one() + f3 / (int(3) * f2);
        let den = int(3) * f4 - int(4) * f3 * f3 / f2;
        let c4 = &den / int(72);
        let w4 = (!den.is_zero()).then(|| {
            let num = int(9) * f5 - int(20) * f3 * f3 * f3 / (f2 * f2);
            BigRational::one() + num / (int(45) * &den)
        });
        PinskerCoefficients {
            c2: Number::Exact(c2),
            w2: Number::Exact(w2),
            c4: Number::Exact(c4),
            w4: w4.map(Number::Exact),
        }
    }

    pub fn from_float_derivatives(f2: f64, f3: f64, f4: f64, f5: f64) -> PinskerCoefficients {
        let den = 3.0 * f4 - 4.0 * f3 * f3 / f2;
        let scale = (3.0 * f4).abs() + (4.0 * f3 * f3 / f2).abs();
        let w4 = (den.abs() > 1e-12 * scale.max(f64::MIN_POSITIVE))
            .then(|| 1.0 + (9.0 * f5 - 20.0 * f3.powi(3) / (f2 * f2)) / (45.0 * den));
        PinskerCoefficients {
            c2: Number::Float(f2 / 2.0),
            w2: Number::Float(1.0 + f3 / (3.0 * f2)),
            c4: Number::Float(den / 72.0),
            w4: w4.map(Number::Float),
        }
    }

    /// `(1/2, (α+1)/3, (α+1)(2−α)/72, (17+11α)/45)` for `D₍α₎`; `w₄` is kept by
    /// continuity at `α ∈ {−1, 2}` where `c₄` vanishes.
    pub fn rel_info_alpha_closed_form(alpha: &Number) -> PinskerCoefficients {
        match alpha {
            Number::Exact(a) => {
                let one = BigRational::one();
                PinskerCoefficients {
                    c2: Number::Exact(ratio(1, 2)),
                    w2: Number::Exact((a + &one) / int(3)),
                    c4: Number::Exact((a + &one) * (int(2) - a) / int(72)),
                    w4: Some(Number::Exact((int(17) + int(11) * a) / int(45))),
                }
            }
            Number::Float(a) => PinskerCoefficients {
                c2: Number::Float(0.5),
                w2: Number::Float((a + 1.0) / 3.0),
                c4: Number::Float((a + 1.0) * (2.0 - a) / 72.0),
                w4: Some(Number::Float((17.0 + 11.0 * a) / 45.0)),
            },
        }
    }

    pub fn is_exact(&self) -> bool {
        self.c2.is_exact() && self.w2.is_exact() && self.c4.is_exact() && self.w4.as_ref().is_none_or(Number::is_exact)
    }

    pub fn c4_positive(&self) -> bool {
        match &self.c4 {
            Number::Exact(r) => r.is_positive(),
            Number::Float(x) => *x > 0.0,
        }
    }

    /// `f'''(1)/f''(1) = 3(w₂ − 1)`.
    pub fn third_over_second(&self) -> f64 {
        3.0 * (self.w2.to_f64() - 1.0)
    }

    pub fn floats(&self) -> (f64, f64, f64, Option<f64>) {
        (self.c2.to_f64(), self.w2.to_f64(), self.c4.to_f64(), self.w4.as_ref().map(Number::to_f64))
    }
}

impl fmt::Display for PinskerCoefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w4 = self.w4.as_ref().map_or_else(|| "undefined".to_string(), |w| w.to_string());
        write!(f, "c2={} w2={} c4={} w4={}", self.c2, self.w2, self.c4, w4)
    }
}

/// Central-difference derivatives of orders `0..=max` (numeric grade).
fn finite_difference_derivatives(f: &(dyn Fn(f64) -> f64 + Send + Sync), x: f64, max: usize) -> Vec<f64> {
    let mut out = vec![f(x)];
    for k in 1..=max {
        let h = x.abs().max(1e-3) * f64::EPSILON.powf(1.0 / (k as f64 + 2.0));
        let mut acc = 0.0;
        let mut binom = 1.0;
        for j in 0..=k {
            let offset = (k as f64 / 2.0 - j as f64) * h;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binom * f(x + offset);
            binom = binom * (k - j) as f64 / (j + 1) as f64;
        }
        out.push(acc / h.powi(k as i32));
    }
    out
}

#[cfg(test)]
mod tests;
