use std::f64::consts::LN_2;

use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::dist::ExtReal;
use crate::error::{Error, Result};
use crate::exact::{int, Number};
use crate::jet::{Jet, JetScalar};

/// Closed-form generators of the catalogue.
#[derive(Debug, Clone, PartialEq)]
pub enum Builtin {
    /// `−log u`, the information divergence `D(P,Q) = Σ p log(p/q)`.
    Kl,
    /// `u log u`.
    ReverseKl,
    /// `(u − 1)²`.
    Chi2,
    /// `½(√u − 1)²`, giving `h²`.
    Hellinger,
    /// `(u − 1)²/(u + 1)`.
    Triangular,
    /// `(u − 1)^{2ν}/(1 + u)^{2ν−1}`.
    TriangularNu(u32),
    /// `(u − 1) log u`.
    Jeffreys,
    /// `u log(2u/(1+u)) + log(2/(1+u))`.
    Capacitory,
    /// `[α(α−1)]⁻¹ (u^α − 1)`, α ∉ {0, 1}.
    RelInfoAlpha(Number),
    /// `|u − 1|`.
    TotalVariation,
}

impl Builtin {
    pub fn rel_info_alpha(alpha: Number) -> Result<Builtin> {
        let a = alpha.to_f64();
        if !a.is_finite() || a == 0.0 || a == 1.0 {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} must be finite and not 0 or 1")));
        }
        Ok(Builtin::RelInfoAlpha(alpha))
    }

    pub fn triangular_nu(nu: u32) -> Result<Builtin> {
        if nu < 2 {
            return Err(Error::InvalidParameter(format!("nu = {nu} must be an integer > 1")));
        }
        Ok(Builtin::TriangularNu(nu))
    }

    pub fn eval(&self, u: f64) -> f64 {
        match self {
            Builtin::Kl => -u.ln(),
            Builtin::ReverseKl => {
                if u == 0.0 {
                    0.0
                } else {
                    u * u.ln()
                }
            }
            Builtin::Chi2 => (u - 1.0) * (u - 1.0),
            Builtin::Hellinger => 0.5 * (u.sqrt() - 1.0).powi(2),
            Builtin::Triangular => (u - 1.0) * (u - 1.0) / (u + 1.0),
            Builtin::TriangularNu(nu) => {
                let n = *nu as i32;
                (u - 1.0).powi(2 * n) / (u + 1.0).powi(2 * n - 1)
            }
            Builtin::Jeffreys => (u - 1.0) * u.ln(),
            Builtin::Capacitory => u * (2.0 * u / (1.0 + u)).ln() + (2.0 / (1.0 + u)).ln(),
            Builtin::RelInfoAlpha(alpha) => {
                let a = alpha.to_f64();
                (u.powf(a) - 1.0) / (a * (a - 1.0))
            }
            Builtin::TotalVariation => (u - 1.0).abs(),
        }
    }

    pub(crate) fn apply<S: JetScalar>(&self, x: &Jet<S>) -> Option<Jet<S>> {
        let one = S::one();
        let xm1 = x.add_constant(&-one.clone());
        let xp1 = x.add_constant(&one);
        Some(match self {
            Builtin::Kl => -&x.ln()?,
            Builtin::ReverseKl => x * &x.ln()?,
            Builtin::Chi2 => &xm1 * &xm1,
            Builtin::Hellinger => {
                let d = x.sqrt()?.add_constant(&-S::one());
                (&d * &d).scale(&(S::one() / S::from_i64(2)))
            }
            Builtin::Triangular => &(&xm1 * &xm1) * &xp1.recip()?,
            Builtin::TriangularNu(nu) => {
                let n = *nu as i64;
                &xm1.powi(2 * n)? * &xp1.powi(-(2 * n - 1))?
            }
            Builtin::Jeffreys => &xm1 * &x.ln()?,
            Builtin::Capacitory => {
                let inv = xp1.recip()?;
                let two = S::from_i64(2);
                let first = x * &(&x.scale(&two) * &inv).ln()?;
                let second = inv.scale(&two).ln()?;
                &first + &second
            }
            Builtin::RelInfoAlpha(alpha) => {
                let a = S::from_number(alpha)?;
                let norm = S::one() / (a.clone() * (a.clone() - S::one()));
                x.pow(&a)?.add_constant(&-S::one()).scale(&norm)
            }
            Builtin::TotalVariation => xm1.abs()?,
        })
    }

    /// `f(0⁺)`.
    pub fn limit_at_zero(&self) -> ExtReal {
        match self {
            Builtin::Kl | Builtin::Jeffreys => ExtReal::Infinity,
            Builtin::ReverseKl => ExtReal::ZERO,
            Builtin::Chi2 | Builtin::Triangular | Builtin::TriangularNu(_) | Builtin::TotalVariation => {
                ExtReal::Finite(1.0)
            }
            Builtin::Hellinger => ExtReal::Finite(0.5),
            Builtin::Capacitory => ExtReal::Finite(LN_2),
            Builtin::RelInfoAlpha(alpha) => {
                let a = alpha.to_f64();
                if a < 0.0 {
                    ExtReal::Infinity
                } else {
                    ExtReal::Finite(-1.0 / (a * (a - 1.0)))
                }
            }
        }
    }

    /// `lim_{u→∞} f(u)/u`.
    pub fn slope_at_infinity(&self) -> ExtReal {
        match self {
            Builtin::Kl => ExtReal::ZERO,
            Builtin::ReverseKl | Builtin::Chi2 | Builtin::Jeffreys => ExtReal::Infinity,
            Builtin::Hellinger => ExtReal::Finite(0.5),
            Builtin::Triangular | Builtin::TriangularNu(_) | Builtin::TotalVariation => ExtReal::Finite(1.0),
            Builtin::Capacitory => ExtReal::Finite(LN_2),
            Builtin::RelInfoAlpha(alpha) => {
                if alpha.to_f64() > 1.0 {
                    ExtReal::Infinity
                } else {
                    ExtReal::ZERO
                }
            }
        }
    }

    pub fn differentiable(&self) -> bool {
        !matches!(self, Builtin::TotalVariation)
    }
}

/// `1 − α` as an exact-or-float number.
pub(crate) fn one_minus(alpha: &Number) -> Number {
    match alpha {
        Number::Exact(r) => Number::Exact(BigRational::one() - r),
        Number::Float(x) => Number::Float(1.0 - x),
    }
}

pub(crate) fn negate(x: &Number) -> Number {
    match x {
        Number::Exact(r) => Number::Exact(-r.clone()),
        Number::Float(v) => Number::Float(-v),
    }
}

pub(crate) fn is_positive(x: &Number) -> bool {
    match x {
        Number::Exact(r) => r.is_positive(),
        Number::Float(v) => *v > 0.0,
    }
}

pub(crate) fn is_zero_or_one(x: &Number) -> bool {
    match x {
        Number::Exact(r) => r.is_zero() || *r == int(1),
        Number::Float(v) => *v == 0.0 || *v == 1.0,
    }
}
