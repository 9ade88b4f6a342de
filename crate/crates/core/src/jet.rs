//! Truncated Taylor arithmetic ("jets") for exact derivative propagation.
//!
//! A [`Jet`] at `x0` stores `f(x0), f'(x0)/1!, …, f⁽ᴺ⁾(x0)/N!`. Sums, products
//! and composition with elementary functions are exact up to order
//! [`ORDER`], so derivative oracles built from jets carry only floating-point
//! rounding, never truncation error. Over [`BigRational`] at `x0 = 1` the same
//! code yields exact derivatives at 1.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::rational::BigRational;
use num::{BigInt, One, Signed, ToPrimitive, Zero};

use crate::exact::{rational_to_f64, Number};

/// Highest derivative order carried by a jet.
pub const ORDER: usize = 7;
const LEN: usize = ORDER + 1;

/// Field operations plus the partial transcendental functions jets need.
pub trait JetScalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_i64(n: i64) -> Self;
    /// `None` when the number has no exact representation in `Self`.
    fn from_number(x: &Number) -> Option<Self>;
    fn ln(&self) -> Option<Self>;
    fn pow(&self, exponent: &Self) -> Option<Self>;
    fn to_f64(&self) -> f64;

    fn powi(&self, n: i64) -> Option<Self> {
        if n < 0 {
            if self.is_zero() {
                return None;
            }
            return Self::one().div(self.clone()).powi(-n);
        }
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        Some(acc)
    }
}

impl JetScalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_number(x: &Number) -> Option<Self> {
        Some(x.to_f64())
    }

    fn ln(&self) -> Option<Self> {
        Some(f64::ln(*self))
    }

    fn pow(&self, exponent: &Self) -> Option<Self> {
        Some(self.powf(*exponent))
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn powi(&self, n: i64) -> Option<Self> {
        Some(f64::powi(*self, n as i32))
    }
}

impl JetScalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_number(x: &Number) -> Option<Self> {
        x.as_exact().cloned()
    }

    /// Only `ln 1 = 0` is rational.
    fn ln(&self) -> Option<Self> {
        self.is_one().then(BigRational::zero)
    }

    /// Rational powers of 1, and integer powers of anything nonzero.
    fn pow(&self, exponent: &Self) -> Option<Self> {
        if self.is_one() {
            return Some(BigRational::one());
        }
        if exponent.is_integer() {
            return exponent.to_integer().to_i64().and_then(|n| JetScalar::powi(self, n));
        }
        None
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Jet<S> {
    coeffs: Vec<S>,
}

impl<S: JetScalar> Jet<S> {
    /// The identity function expanded at `x0`.
    pub fn variable(x0: S) -> Self {
        let mut coeffs = vec![S::zero(); LEN];
        coeffs[0] = x0;
        coeffs[1] = S::one();
        Jet { coeffs }
    }

    pub fn constant(c: S) -> Self {
        let mut coeffs = vec![S::zero(); LEN];
        coeffs[0] = c;
        Jet { coeffs }
    }

    pub fn from_taylor(coeffs: Vec<S>) -> Self {
        let mut coeffs = coeffs;
        coeffs.resize(LEN, S::zero());
        Jet { coeffs }
    }

    pub fn value(&self) -> &S {
        &self.coeffs[0]
    }

    /// Taylor coefficient of order `k`.
    pub fn taylor(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    /// The `k`-th derivative, `k! · taylor(k)`.
    pub fn derivative(&self, k: usize) -> S {
        self.coeffs[k].clone() * factorial::<S>(k)
    }

    pub fn derivatives(&self) -> Vec<S> {
        (0..LEN).map(|k| self.derivative(k)).collect()
    }

    pub fn scale(&self, c: &S) -> Self {
        Jet { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    pub fn add_constant(&self, c: &S) -> Self {
        let mut out = self.clone();
        out.coeffs[0] = out.coeffs[0].clone() + c.clone();
        out
    }

    /// `f ∘ self`, given `f⁽ᵏ⁾` evaluated at `self.value()` for `k = 0..=ORDER`.
    pub fn compose(&self, outer_derivatives: &[S]) -> Self {
        let mut delta = self.clone();
        delta.coeffs[0] = S::zero();
        let mut out = Jet::constant(outer_derivatives[0].clone());
        let mut power = Jet::constant(S::one());
        for (k, d) in outer_derivatives.iter().enumerate().take(LEN).skip(1) {
            power = &power * &delta;
            let c = d.clone() / factorial::<S>(k);
            out = &out + &power.scale(&c);
        }
        out
    }

    pub fn ln(&self) -> Option<Self> {
        let y = self.value().clone();
        if !y.to_f64().is_finite() || y.to_f64() <= 0.0 {
            return None;
        }
        let mut d = Vec::with_capacity(LEN);
        d.push(y.ln()?);
        for k in 1..LEN {
            let sign = if k % 2 == 1 { S::one() } else { -S::one() };
            d.push(sign * factorial::<S>(k - 1) / y.powi(k as i64)?);
        }
        Some(self.compose(&d))
    }

    /// `self^e` for a real exponent (value must be positive).
    pub fn pow(&self, e: &S) -> Option<Self> {
        let y = self.value().clone();
        if y.to_f64() <= 0.0 {
            return None;
        }
        let mut d = Vec::with_capacity(LEN);
        let mut falling = S::one();
        for k in 0..LEN {
            let shifted = e.clone() - S::from_i64(k as i64);
            d.push(falling.clone() * y.pow(&shifted)?);
            falling = falling * shifted;
        }
        Some(self.compose(&d))
    }

    /// `self^n` for an integer `n`; negative `n` needs a nonzero value.
    pub fn powi(&self, n: i64) -> Option<Self> {
        if n >= 0 {
            let mut acc = Jet::constant(S::one());
            for _ in 0..n {
                acc = &acc * self;
            }
            return Some(acc);
        }
        Some(self.recip()?.powi(-n).expect("nonnegative power"))
    }

    pub fn recip(&self) -> Option<Self> {
        let y = self.value().clone();
        if y.is_zero() {
            return None;
        }
        let mut d = Vec::with_capacity(LEN);
        for k in 0..LEN {
            let sign = if k % 2 == 0 { S::one() } else { -S::one() };
            d.push(sign * factorial::<S>(k) / y.powi(k as i64 + 1)?);
        }
        Some(self.compose(&d))
    }

    pub fn sqrt(&self) -> Option<Self> {
        self.pow(&(S::one() / S::from_i64(2)))
    }

    /// `|self|` away from the kink; `None` when the value is exactly zero.
    pub fn abs(&self) -> Option<Self> {
        let v = self.value().to_f64();
        if v > 0.0 {
            Some(self.clone())
        } else if v < 0.0 {
            Some(-self)
        } else {
            None
        }
    }
}

impl Jet<BigRational> {
    pub fn is_exact_zero_through(&self, order: usize) -> bool {
        self.coeffs.iter().take(order + 1).all(|c| c.is_zero())
    }

    pub fn to_f64(&self) -> Jet<f64> {
        Jet { coeffs: self.coeffs.iter().map(rational_to_f64).collect() }
    }

    pub fn any_negative(&self) -> bool {
        self.coeffs.iter().any(|c| c.is_negative())
    }
}

pub fn factorial<S: JetScalar>(k: usize) -> S {
    (1..=k as i64).fold(S::one(), |acc, i| acc * S::from_i64(i))
}

impl<S: JetScalar> Add for &Jet<S> {
    type Output = Jet<S>;
    fn add(self, rhs: &Jet<S>) -> Jet<S> {
        Jet {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }
}

impl<S: JetScalar> Sub for &Jet<S> {
    type Output = Jet<S>;
    fn sub(self, rhs: &Jet<S>) -> Jet<S> {
        Jet {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }
}

impl<S: JetScalar> Mul for &Jet<S> {
    type Output = Jet<S>;
    fn mul(self, rhs: &Jet<S>) -> Jet<S> {
        let mut coeffs = vec![S::zero(); LEN];
        for i in 0..LEN {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..LEN - i {
                coeffs[i + j] = coeffs[i + j].clone() + self.coeffs[i].clone() * rhs.coeffs[j].clone();
            }
        }
        Jet { coeffs }
    }
}

impl<S: JetScalar> Neg for &Jet<S> {
    type Output = Jet<S>;
    fn neg(self) -> Jet<S> {
        Jet { coeffs: self.coeffs.iter().map(|a| -a.clone()).collect() }
    }
}
