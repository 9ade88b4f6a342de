//! `D_f(P,Q) = Σ pᵢ f(qᵢ/pᵢ)` with the zero-mass conventions, named
//! divergences, the Rényi information gain and Hölder-type expectation bounds.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::dist::{mixture, variational_distance, Distribution, ExtReal};
use crate::error::{Error, Result};
use crate::generators::Generator;
use crate::grid::Grid;

/// Relative slack used by [`HolderBoundReport::holds`].
pub const HOLDER_SLACK: f64 = 1e-12;

/// Tolerance on `Σ pᵢ k(qᵢ/pᵢ) = 1`.
pub const WEIGHT_MASS_TOLERANCE: f64 = 1e-9;

/// `D_f(P,Q)`.
///
/// Atoms with `p = q = 0` contribute 0, `p = 0 < q` contributes
/// `q · lim f(u)/u`, and `p > 0 = q` contributes `p · f(0⁺)`. Interior terms are
/// summed as `p · f̃(q/p)`, which is the same total because `Σ (q − p) = 0`
/// but has no cancellation between terms.
pub fn f_divergence(f: &Generator, p: &Distribution, q: &Distribution) -> Result<ExtReal> {
    p.check_aligned(q)?;
    let slope = f.slope_at_one();
    let at_zero = f.limit_at_zero() + ExtReal::Finite(slope);
    let at_infinity = f.slope_at_infinity() + ExtReal::Finite(-slope);
    let mut total = ExtReal::ZERO;
    for (&pi, &qi) in p.weights().iter().zip(q.weights()) {
        let term = match (pi > 0.0, qi > 0.0) {
            (false, false) => ExtReal::ZERO,
            (false, true) => at_infinity.scale(qi),
            (true, false) => at_zero.scale(pi),
            (true, true) => ExtReal::Finite(pi * f.tilde_value(qi / pi)),
        };
        total = total + term;
    }
    Ok(total)
}

/// [`f_divergence`] over many pairs, in parallel, results in input order.
pub fn f_divergence_batch(f: &Generator, pairs: &[(Distribution, Distribution)]) -> Vec<Result<ExtReal>> {
    pairs.par_iter().map(|(p, q)| f_divergence(f, p, q)).collect()
}

/// Information divergence `D(P,Q) = Σ p log(p/q)`.
pub fn kl(p: &Distribution, q: &Distribution) -> Result<ExtReal> {
    f_divergence(&Generator::kl(), p, q)
}

/// `χ² = Σ (q − p)²/p`.
pub fn chi2(p: &Distribution, q: &Distribution) -> Result<ExtReal> {
    f_divergence(&Generator::chi2(), p, q)
}

/// `h² = ½ Σ (√q − √p)²`.
pub fn hellinger2(p: &Distribution, q: &Distribution) -> Result<f64> {
    Ok(f_divergence(&Generator::hellinger(), p, q)?.value())
}

/// `Δ = Σ (q − p)²/(q + p)`.
pub fn triangular(p: &Distribution, q: &Distribution) -> Result<f64> {
    Ok(f_divergence(&Generator::triangular(), p, q)?.value())
}

/// `J = D(P,Q) + D(Q,P)`.
pub fn jeffreys(p: &Distribution, q: &Distribution) -> Result<ExtReal> {
    f_divergence(&Generator::jeffreys(), p, q)
}

/// `C = D(P,M) + D(Q,M)` with `M = (P + Q)/2`.
pub fn capacitory(p: &Distribution, q: &Distribution) -> Result<f64> {
    let m = mixture(p, q, 0.5)?;
    Ok((kl(p, &m)? + kl(q, &m)?).value())
}

/// The same quantity through its single generator.
pub fn capacitory_generator(p: &Distribution, q: &Distribution) -> Result<f64> {
    Ok(f_divergence(&Generator::capacitory(), p, q)?.value())
}

/// `log((4 − V²)/4) + (V/2) log((2 + V)/(2 − V))`, a lower bound for `C` at `V < 2`.
pub fn capacitory_lower_bound(v: f64) -> f64 {
    ((4.0 - v * v) / 4.0).ln() + 0.5 * v * ((2.0 + v) / (2.0 - v)).ln()
}

fn check_renyi_order(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "Renyi order alpha = {alpha} must be positive and not 1 (use kl for the limit)"
        )));
    }
    Ok(())
}

/// `I_α = (α − 1)⁻¹ log[1 − α(1 − α) D₍₁₋α₎(P,Q)]`.
pub fn renyi(alpha: f64, p: &Distribution, q: &Distribution) -> Result<ExtReal> {
    check_renyi_order(alpha)?;
    let g = Generator::rel_info_alpha(1.0 - alpha)?;
    match f_divergence(&g, p, q)? {
        ExtReal::Infinity => Ok(ExtReal::Infinity),
        ExtReal::Finite(d) => {
            let inner = -alpha * (1.0 - alpha) * d;
            if inner <= -1.0 {
                return Ok(ExtReal::Infinity);
            }
            Ok(ExtReal::Finite((inner.ln_1p() / (alpha - 1.0)).max(0.0)))
        }
    }
}

/// `I_α = (α − 1)⁻¹ log Σ p^α q^{1−α}`, evaluated directly.
pub fn renyi_direct(alpha: f64, p: &Distribution, q: &Distribution) -> Result<ExtReal> {
    check_renyi_order(alpha)?;
    p.check_aligned(q)?;
    let mut sum = 0.0;
    for (&pi, &qi) in p.weights().iter().zip(q.weights()) {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            if alpha > 1.0 {
                return Ok(ExtReal::Infinity);
            }
            continue;
        }
        sum += pi.powf(alpha) * qi.powf(1.0 - alpha);
    }
    if sum <= 0.0 {
        return Ok(ExtReal::Infinity);
    }
    Ok(ExtReal::Finite((sum.ln() / (alpha - 1.0)).max(0.0)))
}

/// The weight `k` of the Hölder bound. `r = p·k(q/p)` must be a probability vector.
#[derive(Clone)]
pub enum Weight {
    /// `k(u) = intercept + slope·u`, giving `r = intercept·p + slope·q`.
    Linear { intercept: f64, slope: f64 },
    /// `k(u) = (√u + 1)²/(2(2 − h²(P,Q)))`, which depends on the pair.
    Kraft,
    /// Any other nonnegative `k`; atoms with `p = 0 < q` are rejected.
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Weight::Linear { intercept, slope } => write!(f, "Linear({intercept} + {slope}u)"),
            Weight::Kraft => f.write_str("Kraft"),
            Weight::Custom(_) => f.write_str("Custom"),
        }
    }
}

impl Weight {
    pub fn constant_one() -> Weight {
        Weight::Linear { intercept: 1.0, slope: 0.0 }
    }

    /// `k(u) = w + (1 − w)u`, the mixture `w·p + (1 − w)·q`.
    pub fn mixture(w: f64) -> Weight {
        Weight::Linear { intercept: w, slope: 1.0 - w }
    }

    fn resolve(&self, p: &Distribution, q: &Distribution) -> Result<ResolvedWeight> {
        Ok(match self {
            Weight::Linear { intercept, slope } => ResolvedWeight::Linear(*intercept, *slope),
            Weight::Kraft => ResolvedWeight::Kraft(2.0 * (2.0 - hellinger2(p, q)?)),
            Weight::Custom(k) => ResolvedWeight::Custom(k.clone()),
        })
    }
}

enum ResolvedWeight {
    Linear(f64, f64),
    Kraft(f64),
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl ResolvedWeight {
    fn k(&self, u: f64) -> f64 {
        match self {
            ResolvedWeight::Linear(a, b) => a + b * u,
            ResolvedWeight::Kraft(norm) => (u.sqrt() + 1.0).powi(2) / norm,
            ResolvedWeight::Custom(k) => k(u),
        }
    }

    /// `p·k(q/p)`, with the `p → 0` limit where it exists.
    fn mass(&self, p: f64, q: f64) -> Result<f64> {
        if p > 0.0 {
            return Ok(p * self.k(q / p));
        }
        Ok(match self {
            ResolvedWeight::Linear(_, b) => b * q,
            ResolvedWeight::Kraft(norm) => q / norm,
            ResolvedWeight::Custom(_) if q == 0.0 => 0.0,
            ResolvedWeight::Custom(_) => {
                return Err(Error::Domain("custom weight k needs p > 0 wherever q > 0".into()));
            }
        })
    }
}

/// Both sides of `|E_Q g − E_P g|ⁿ ≤ sup{(u−1)ⁿ/(f̃ kⁿ⁻¹)} · [E_r|g−a|^{n/(n−1)}]ⁿ⁻¹ · D_f`.
///
/// The supremum is taken over grid points inside the hull of the realized
/// ratios `q/p` plus the ratios themselves, so it approximates the true
/// supremum from below.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HolderBoundReport {
    pub n: f64,
    pub a: f64,
    pub lhs: f64,
    pub sup_factor: f64,
    pub sup_argmax_u: f64,
    pub moment_factor: f64,
    pub divergence: ExtReal,
    pub rhs: ExtReal,
    pub holds: bool,
    /// `Σ pᵢ k(qᵢ/pᵢ)`.
    pub weight_mass: f64,
    pub sup_points: usize,
}

/// Evaluates both sides of the Hölder-type bound; `a = None` selects `a = E_r g`.
#[allow(clippy::too_many_arguments)]
pub fn holder_bound(
    f: &Generator,
    weight: &Weight,
    n: f64,
    g: &[f64],
    a: Option<f64>,
    p: &Distribution,
    q: &Distribution,
    grid: &Grid,
) -> Result<HolderBoundReport> {
    p.check_aligned(q)?;
    if g.len() != p.len() {
        return Err(Error::Dimension { left: p.len(), right: g.len() });
    }
    if !(n > 1.0) || !n.is_finite() {
        return Err(Error::Domain(format!("exponent n = {n} must be > 1")));
    }
    let k = weight.resolve(p, q)?;
    let r = p
        .weights()
        .iter()
        .zip(q.weights())
        .map(|(&pi, &qi)| k.mass(pi, qi))
        .collect::<Result<Vec<f64>>>()?;
    let weight_mass: f64 = r.iter().sum();
    if (weight_mass - 1.0).abs() > WEIGHT_MASS_TOLERANCE || r.iter().any(|x| *x < 0.0) {
        return Err(Error::Precondition {
            message: "the weight k must satisfy k >= 0 and sum p k(q/p) = 1".into(),
            computed: weight_mass,
        });
    }

    let lhs = g
        .iter()
        .zip(p.weights().iter().zip(q.weights()))
        .map(|(gi, (pi, qi))| gi * (qi - pi))
        .sum::<f64>()
        .abs()
        .powf(n);
    let a = a.unwrap_or_else(|| g.iter().zip(&r).map(|(gi, ri)| gi * ri).sum());
    let m = n / (n - 1.0);
    let moment = g.iter().zip(&r).map(|(gi, ri)| ri * (gi - a).abs().powf(m)).sum::<f64>();
    let moment_factor = moment.powf(n - 1.0);

    let (sup_factor, sup_argmax_u, sup_points) = sup_ratio(f, &k, n, p, q, grid);
    let divergence = f_divergence(f, p, q)?;
    let rhs = divergence.scale(moment_factor).scale(sup_factor);
    let holds = match rhs {
        ExtReal::Infinity => true,
        ExtReal::Finite(x) => lhs <= x + HOLDER_SLACK * x.abs().max(1.0),
    };
    Ok(HolderBoundReport {
        n,
        a,
        lhs,
        sup_factor,
        sup_argmax_u,
        moment_factor,
        divergence,
        rhs,
        holds,
        weight_mass,
        sup_points,
    })
}

fn sup_ratio(f: &Generator, k: &ResolvedWeight, n: f64, p: &Distribution, q: &Distribution, grid: &Grid) -> (f64, f64, usize) {
    let ratios: Vec<f64> = p
        .weights()
        .iter()
        .zip(q.weights())
        .filter(|(pi, qi)| **pi > 0.0 && **qi > 0.0 && pi != qi)
        .map(|(pi, qi)| qi / pi)
        .collect();
    let zero_ratio = p.weights().iter().zip(q.weights()).any(|(pi, qi)| *pi > 0.0 && *qi == 0.0);
    let infinite_ratio = p.weights().iter().zip(q.weights()).any(|(pi, qi)| *pi == 0.0 && *qi > 0.0);
    let lo = if zero_ratio { 0.0 } else { ratios.iter().copied().fold(f64::INFINITY, f64::min) };
    let hi = if infinite_ratio { f64::INFINITY } else { ratios.iter().copied().fold(0.0, f64::max) };
    let hull = |u: f64| lo.min(1.0) <= u && u <= hi.max(1.0);
    let mut points: Vec<f64> = grid.points().iter().copied().filter(|u| hull(*u)).collect();
    points.extend(&ratios);
    let tilde = f.tilde();

    let ratio = |u: f64| -> f64 {
        let denom = tilde.eval(u) * k.k(u).powf(n - 1.0);
        let num = (u - 1.0).abs().powf(n);
        if denom > 0.0 {
            num / denom
        } else {
            f64::INFINITY
        }
    };
    let mut best = (0.0_f64, f64::NAN);
    let mut count = 0;
    for u in points.into_iter().filter(|u| *u != 1.0) {
        count += 1;
        let value = ratio(u);
        if value > best.0 {
            best = (value, u);
        }
    }
    if zero_ratio {
        count += 1;
        let denom = tilde.limit_at_zero().scale(k.k(0.0).powf(n - 1.0));
        let value = match denom {
            ExtReal::Infinity => 0.0,
            ExtReal::Finite(d) if d > 0.0 => 1.0 / d,
            ExtReal::Finite(_) => f64::INFINITY,
        };
        if value > best.0 {
            best = (value, 0.0);
        }
    }
    (best.0, best.1, count)
}

/// Indicator of `{p ≥ q}` with `a = 1/2`: the bound on `Vⁿ`.
pub fn v_power_bound(
    f: &Generator,
    weight: &Weight,
    n: f64,
    p: &Distribution,
    q: &Distribution,
    grid: &Grid,
) -> Result<HolderBoundReport> {
    let g: Vec<f64> = p
        .weights()
        .iter()
        .zip(q.weights())
        .map(|(pi, qi)| if pi >= qi { 1.0 } else { 0.0 })
        .collect();
    holder_bound(f, weight, n, &g, Some(0.5), p, q, grid)
}

/// `V` alongside a divergence value, for reporting.
pub fn with_variation(f: &Generator, p: &Distribution, q: &Distribution) -> Result<(ExtReal, f64)> {
    Ok((f_divergence(f, p, q)?, variational_distance(p, q)?))
}
