//! Binary-space constructions: tightness sweeps for the best constants,
//! numeric lower envelopes, the per-distribution constant, the Rényi
//! violation search and exploration of the sixth-order conjectures.

use rayon::prelude::*;
use serde::Serialize;

use crate::certify::{CertificateResult, Status};
use crate::dist::{max_partition_spread, Distribution, ExtReal};
use crate::divergence::{f_divergence, renyi};
use crate::error::{Error, Result};
use crate::generators::{DerivativeGrade, Generator};
use crate::grid::Grid;

/// Binary envelopes only bound the infimum over all spaces from above.
pub const ENVELOPE_CAVEAT: &str =
    "binary-space minimum: an upper bound on the infimum over all spaces, equal to it only where binary sufficiency is known";

/// Default `v` values for tightness sweeps.
pub const SWEEP_V: [f64; 5] = [0.2, 0.1, 0.05, 0.02, 0.01];

/// `P = (p, 1 − p)`, `Q = (p + v/2, 1 − p − v/2)`, so that `V(P, Q) = v`.
pub fn binary_pair(p: f64, v: f64) -> Result<(Distribution, Distribution)> {
    if !(p > 0.0 && p < 1.0) || !(v > 0.0 && v < 2.0) || !(p + v / 2.0 < 1.0) {
        return Err(Error::Domain(format!("binary pair needs 0 < p < 1, 0 < v < 2 and p + v/2 < 1; got p = {p}, v = {v}")));
    }
    let q = p + v / 2.0;
    Ok((Distribution::new(vec![p, 1.0 - p])?, Distribution::new(vec![q, 1.0 - q])?))
}

fn binary_divergence(f: &Generator, p: f64, v: f64) -> Result<ExtReal> {
    let (pp, qq) = binary_pair(p, v)?;
    f_divergence(f, &pp, &qq)
}

/// Limit at `h = 0` of a quantity sampled at `(h, value)`, by polynomial
/// extrapolation in `h^exponent` (Neville) through the given points.
pub fn extrapolate_to_zero(points: &[(f64, f64)], exponent: i32) -> f64 {
    let xs: Vec<f64> = points.iter().map(|(h, _)| h.powi(exponent)).collect();
    let mut table: Vec<f64> = points.iter().map(|(_, y)| *y).collect();
    let n = table.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            table[i] = (xi * table[i + 1] - xj * table[i]) / (xi - xj);
        }
    }
    table[0]
}

/// Two-level extrapolation through the three smallest `h`.
fn two_level(rows: &[SweepRow], exponent: i32) -> f64 {
    let mut pts: Vec<(f64, f64)> = rows.iter().filter(|r| r.ratio.is_finite()).map(|r| (r.v, r.ratio)).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    pts.truncate(3);
    match pts.len() {
        0 => f64::NAN,
        1 => pts[0].1,
        _ => extrapolate_to_zero(&pts, exponent),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub v: f64,
    pub p: f64,
    pub divergence: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub generator: String,
    pub order: u32,
    pub rows: Vec<SweepRow>,
    pub limit: f64,
    pub expected: f64,
}

impl SweepTable {
    pub fn relative_error(&self) -> f64 {
        (self.limit - self.expected).abs() / self.expected.abs()
    }
}

fn sweep_rows<P, R>(f: &Generator, v_list: &[f64], p_of: P, ratio_of: R) -> Result<Vec<SweepRow>>
where
    P: Fn(f64) -> f64 + Sync,
    R: Fn(f64, f64) -> f64 + Sync,
{
    v_list
        .par_iter()
        .map(|&v| {
            let p = p_of(v);
            let d = binary_divergence(f, p, v)?.value();
            Ok(SweepRow { v, p, divergence: d, ratio: ratio_of(d, v) })
        })
        .collect()
}

/// `D_f(P, Q_v)/v²` at fixed `p`; the limit is `c₂/[4p(1 − p)]`.
pub fn tightness_sweep_second(f: &Generator, v_list: &[f64], p: f64) -> Result<SweepTable> {
    let c2 = f.coefficients()?.c2.to_f64();
    let rows = sweep_rows(f, v_list, |_| p, |d, v| d / (v * v))?;
    // Odd powers of v survive unless p = 1/2.
    let limit = two_level(&rows, 1);
    Ok(SweepTable { generator: f.name().to_string(), order: 2, rows, limit, expected: c2 / (4.0 * p * (1.0 - p)) })
}

/// `(D_f − c₂v²)/v⁴` along `p = 1/2 + f‴(1)/(6f″(1))·v`; the limit is `c₄`.
pub fn tightness_sweep_fourth(f: &Generator, v_list: &[f64]) -> Result<SweepTable> {
    let c = f.coefficients()?;
    let (c2, _, c4, _) = c.floats();
    if !(c4 > 0.0) {
        return Err(Error::FourthOrderUndefined(format!("{}: c4 = {} is not positive", f.name(), c.c4)));
    }
    let shift = c.third_over_second() / 6.0;
    let rows = sweep_rows(f, v_list, |v| 0.5 + shift * v, |d, v| (d - c2 * v * v) / v.powi(4))?;
    let limit = two_level(&rows, 2);
    Ok(SweepTable { generator: f.name().to_string(), order: 4, rows, limit, expected: c4 })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopePoint {
    pub v: f64,
    pub min_divergence: ExtReal,
    pub argmin_p: f64,
    /// `c₂v² + c₄v⁴`, with `c₄` dropped when it is not positive.
    pub bound_value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeSearch {
    pub coarse_points: usize,
    pub tolerance: f64,
}

impl Default for EnvelopeSearch {
    fn default() -> Self {
        EnvelopeSearch { coarse_points: 512, tolerance: 1e-10 }
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Coarse grid then golden section on the bracketing cells.
fn minimize_on_interval(h: impl Fn(f64) -> f64, lo: f64, hi: f64, search: EnvelopeSearch) -> (f64, f64) {
    let n = search.coarse_points.max(3);
    let xs: Vec<f64> = (1..=n).map(|i| lo + (hi - lo) * i as f64 / (n + 1) as f64).collect();
    let values: Vec<f64> = xs.iter().map(|&x| h(x)).collect();
    let best = (0..n).min_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap_or(0);
    if !values[best].is_finite() {
        return (xs[best], values[best]);
    }
    let mut a = if best == 0 { lo } else { xs[best - 1] };
    let mut b = if best + 1 == n { hi } else { xs[best + 1] };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (h(c), h(d));
    while b - a > search.tolerance {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = h(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = h(d);
        }
    }
    let (x, fx) = if fc < fd { (c, fc) } else { (d, fd) };
    if fx <= values[best] {
        (x, fx)
    } else {
        (xs[best], values[best])
    }
}

fn bound_coefficients(f: &Generator) -> Result<(f64, f64)> {
    let (c2, _, c4, _) = f.coefficients()?.floats();
    Ok((c2, if c4 > 0.0 { c4 } else { 0.0 }))
}

/// Minimum of `D_f` over binary pairs at variational distance `v`.
pub fn lower_envelope(f: &Generator, v: f64, search: EnvelopeSearch) -> Result<EnvelopePoint> {
    if !(v > 0.0 && v < 2.0) {
        return Err(Error::Domain(format!("v = {v} must lie in (0, 2)")));
    }
    let (c2, c4) = bound_coefficients(f)?;
    let h = |p: f64| binary_divergence(f, p, v).map(|d| d.value()).unwrap_or(f64::INFINITY);
    let (argmin_p, min) = minimize_on_interval(h, 0.0, 1.0 - v / 2.0, search);
    Ok(EnvelopePoint {
        v,
        min_divergence: ExtReal::from_f64(min),
        argmin_p,
        bound_value: c2 * v * v + c4 * v.powi(4),
    })
}

/// [`lower_envelope`] over many `v`, in input order.
pub fn lower_envelope_many(f: &Generator, vs: &[f64], search: EnvelopeSearch) -> Result<Vec<EnvelopePoint>> {
    vs.par_iter().map(|&v| lower_envelope(f, v, search)).collect()
}

/// `½v² + v⁴/36 + v⁶/270 + (221/340200)v⁸`.
pub fn topsoe_bound(v: f64) -> f64 {
    let v2 = v * v;
    v2 * (0.5 + v2 * (1.0 / 36.0 + v2 * (1.0 / 270.0 + v2 * 221.0 / 340200.0)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopsoeRow {
    pub v: f64,
    pub envelope: f64,
    pub bound: f64,
    pub margin: f64,
}

/// KL binary envelope against the eighth-order polynomial bound.
pub fn compare_topsoe_bound(v_grid: &[f64]) -> Result<Vec<TopsoeRow>> {
    let kl = Generator::kl();
    let points = lower_envelope_many(&kl, v_grid, EnvelopeSearch::default())?;
    Ok(points
        .into_iter()
        .map(|e| {
            let bound = topsoe_bound(e.v);
            let envelope = e.min_divergence.value();
            TopsoeRow { v: e.v, envelope, bound, margin: envelope - bound }
        })
        .collect())
}

/// `(α/2, (α/36)(1 + 5α − 5α²))`.
pub fn renyi_fourth_coefficients(alpha: f64) -> (f64, f64) {
    (alpha / 2.0, alpha / 36.0 * (1.0 + 5.0 * alpha - 5.0 * alpha * alpha))
}

/// `I_α ≥ (α/2)V² + (α/36)(1 + 5α − 5α²)V⁴` on the given pairs.
pub fn renyi_fourth_check(alpha: f64, pairs: &[(Distribution, Distribution)], label: &str) -> Result<CertificateResult> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha = {alpha} must lie in (0, 1)")));
    }
    let (k2, k4) = renyi_fourth_coefficients(alpha);
    let margins: Vec<Result<(f64, usize)>> = pairs
        .par_iter()
        .enumerate()
        .map(|(i, (p, q))| {
            let v = crate::dist::variational_distance(p, q)?;
            let lhs = renyi(alpha, p, q)?.value();
            let rhs = k2 * v * v + k4 * v.powi(4);
            Ok(((lhs - rhs) / lhs.abs().max(rhs.abs()).max(1.0), i))
        })
        .collect();
    let mut worst = (f64::INFINITY, 0usize);
    for m in margins {
        let (m, i) = m?;
        if m < worst.0 {
            worst = (m, i);
        }
    }
    let tolerance = crate::certify::DEFAULT_TOLERANCE;
    let status = if worst.0 < -tolerance { Status::Violated } else { Status::CertifiedNumeric };
    let mut notes = vec![format!("worst pair index {}", worst.1)];
    if let Some((p, q)) = pairs.get(worst.1) {
        notes.push(format!("P = {:?}, Q = {:?}", p.weights(), q.weights()));
    }
    Ok(CertificateResult {
        condition: "renyi-fourth".into(),
        subject: format!("renyi(alpha={alpha})"),
        status,
        margin: if worst.0.is_finite() { worst.0 } else { 0.0 },
        witness_u: None,
        grid_spec: label.to_string(),
        points: pairs.len(),
        tolerance,
        grade: DerivativeGrade::ClosedForm,
        notes,
    })
}

/// `1/2 + 3√5/10`: above it the `V⁴` coefficient `1 + 5α − 5α²` is negative.
pub fn renyi_violation_threshold() -> f64 {
    0.5 + 0.3 * 5f64.sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenyiWitness {
    pub p: f64,
    pub v: f64,
    pub renyi: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum RenyiSearch {
    Witness(RenyiWitness),
    None,
    /// Nothing found in a range where the inequality is open.
    Inconclusive,
}

/// Relative shortfall required before a pair counts as a witness.
pub const VIOLATION_SLACK: f64 = 1e-9;

/// Searches binary pairs for `I_α < (α/2)V²` over 64 log-spaced `v` in
/// `[0.01, 0.5]` and 256 values of `p` each.
pub fn renyi_violation_search(alpha: f64) -> Result<RenyiSearch> {
    if !(alpha > 0.0) || alpha == 1.0 {
        return Err(Error::Domain(format!("alpha = {alpha} must be positive and different from 1")));
    }
    let vs = Grid::log_spaced(0.01, 0.5, 64)?;
    let best = vs
        .points()
        .par_iter()
        .filter_map(|&v| {
            let hi = 1.0 - v / 2.0;
            (1..=256)
                .filter_map(|i| {
                    let p = hi * i as f64 / 257.0;
                    let (pp, qq) = binary_pair(p, v).ok()?;
                    let r = renyi(alpha, &pp, &qq).ok()?.finite()?;
                    let bound = alpha / 2.0 * v * v;
                    let shortfall = (bound - r) / bound;
                    (shortfall > VIOLATION_SLACK).then_some((shortfall, RenyiWitness { p, v, renyi: r, bound }))
                })
                .max_by(|a, b| a.0.total_cmp(&b.0))
        })
        .collect::<Vec<_>>()
        .into_iter()
        .max_by(|a, b| a.0.total_cmp(&b.0));
    Ok(match best {
        Some((_, w)) => RenyiSearch::Witness(w),
        None if alpha > 1.0 && alpha <= renyi_violation_threshold() => RenyiSearch::Inconclusive,
        None => RenyiSearch::None,
    })
}

/// `c_f(P) = (f″(1)/2)/[4·max_A P(A)(1 − P(A))]`.
pub fn per_p_constant(f: &Generator, p: &Distribution) -> Result<f64> {
    let c2 = f.coefficients()?.c2.to_f64();
    let spread = max_partition_spread(p)?;
    if !(spread > 0.0) {
        return Err(Error::Domain("a point mass has no partition with positive spread".into()));
    }
    Ok(c2 / (4.0 * spread))
}

pub const CONJECTURE_LABEL: &str = "CONJECTURE-EXPLORATION";

/// Sixth-order coefficient and weight in the conjectured bound for `u − 1 − log u`.
pub const LOG6_COEFFICIENT: (i64, i64) = (41, 12150);
pub const LOG6_WEIGHT: (i64, i64) = (23186, 38745);

fn log6_rhs(u: f64) -> (f64, f64) {
    let t = u - 1.0;
    let second = 0.5 * t * t / (1.0 + 2.0 / 3.0 * t);
    let fourth = t.powi(4) / 36.0 / (1.0 + 28.0 / 45.0 * t).powi(3);
    let (cn, cd) = LOG6_COEFFICIENT;
    let (wn, wd) = LOG6_WEIGHT;
    let sixth = cn as f64 / cd as f64 * t.powi(6) / (1.0 + wn as f64 / wd as f64 * t).powi(5);
    (second + fourth, sixth)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub label: &'static str,
    pub name: String,
    pub violation_found: bool,
    pub min_margin: f64,
    pub witness: Option<f64>,
    pub fitted: f64,
    pub target: f64,
    pub rows: Vec<(f64, f64)>,
    pub notes: Vec<String>,
}

/// Grid scan of the conjectured sixth-order inequality for `u − 1 − log u`,
/// plus a fit of the `(u − 1)⁶` coefficient of the fourth-order surplus.
pub fn conjecture_log6(grid: &Grid) -> ConjectureReport {
    let kl = Generator::kl();
    let (min_margin, witness) = grid
        .points()
        .par_iter()
        .map(|&u| {
            let lhs = kl.tilde_value(u);
            let (a, b) = log6_rhs(u);
            let rhs = a + b;
            ((lhs - rhs) / lhs.abs().max(rhs.abs()).max(1.0), u)
        })
        .reduce(|| (f64::INFINITY, f64::NAN), |x, y| if y.0 < x.0 { y } else { x });
    // (u−1−log u − second − fourth)/t⁶ → 41/12150 as t → 0, with an odd t correction.
    let rows: Vec<(f64, f64)> = [0.04, 0.02, 0.01]
        .iter()
        .map(|&t| {
            let avg = [1.0 + t, 1.0 - t]
                .iter()
                .map(|&u| (kl.tilde_value(u) - log6_rhs(u).0) / (u - 1.0f64).powi(6))
                .sum::<f64>()
                / 2.0;
            (t, avg)
        })
        .collect();
    let fitted = extrapolate_to_zero(&rows, 2);
    let tol = crate::certify::DEFAULT_TOLERANCE;
    ConjectureReport {
        label: CONJECTURE_LABEL,
        name: "log6".into(),
        violation_found: min_margin < -tol,
        min_margin,
        witness: (min_margin < -tol).then_some(witness),
        fitted,
        target: LOG6_COEFFICIENT.0 as f64 / LOG6_COEFFICIENT.1 as f64,
        rows,
        notes: vec![format!("grid {}; a clean scan supports but does not prove the inequality", grid.spec())],
    }
}

/// `½∫t²/(1 + 2t/3) p + (1/36)∫t⁴/(1 + 28t/45)³ p` with `t = q/p − 1`.
fn surplus_lhs(p: &Distribution, q: &Distribution) -> f64 {
    p.weights()
        .iter()
        .zip(q.weights())
        .filter(|(pi, _)| **pi > 0.0)
        .map(|(pi, qi)| {
            let t = qi / pi - 1.0;
            pi * (0.5 * t * t / (1.0 + 2.0 / 3.0 * t) + t.powi(4) / 36.0 / (1.0 + 28.0 / 45.0 * t).powi(3))
        })
        .sum()
}

/// Binary infimum of the surplus left side at `V = v`, and the fitted
/// `v⁶` coefficient of its excess over `½v² + v⁴/36`.
pub fn conjecture_surplus(vs: &[f64]) -> Result<ConjectureReport> {
    let rows: Vec<(f64, f64)> = vs
        .par_iter()
        .map(|&v| {
            let h = |p: f64| binary_pair(p, v).map(|(a, b)| surplus_lhs(&a, &b)).unwrap_or(f64::INFINITY);
            let (_, min) = minimize_on_interval(h, 0.0, 1.0 - v / 2.0, EnvelopeSearch::default());
            Ok((v, (min - 0.5 * v * v - v.powi(4) / 36.0) / v.powi(6)))
        })
        .collect::<Result<_>>()?;
    let mut fit_points: Vec<(f64, f64)> = rows.clone();
    fit_points.sort_by(|a, b| a.0.total_cmp(&b.0));
    fit_points.truncate(3);
    let fitted = extrapolate_to_zero(&fit_points, 2);
    Ok(ConjectureReport {
        label: CONJECTURE_LABEL,
        name: "surplus".into(),
        violation_found: false,
        min_margin: rows.iter().map(|(_, g)| *g).fold(f64::INFINITY, f64::min),
        witness: None,
        fitted,
        target: 2.0 / 6075.0,
        rows,
        notes: vec![ENVELOPE_CAVEAT.to_string(), "target is the conjectured coefficient 1/270 - 41/12150".into()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::variational_distance;
    use crate::exact::Number;
    use crate::sampling::PairSampler;

    #[test]
    fn binary_pair_examples() {
        let (p, q) = binary_pair(0.5, 0.5).unwrap();
        assert_eq!(p.weights(), &[0.5, 0.5]);
        assert_eq!(q.weights(), &[0.75, 0.25]);
        let (p, q) = binary_pair(0.3, 1.0).unwrap();
        assert!((q.weights()[0] - 0.8).abs() < 1e-15);
        assert!((variational_distance(&p, &q).unwrap() - 1.0).abs() < 1e-15);
        assert!(binary_pair(0.9, 0.5).is_err());
        assert!(binary_pair(0.5, 2.0).is_err());
    }

    #[test]
    fn extrapolation_is_exact_on_polynomials() {
        let pts: Vec<(f64, f64)> = [0.1, 0.05, 0.02].iter().map(|&h: &f64| (h, 3.0 + 2.0 * h * h - h.powi(4))).collect();
        assert!((extrapolate_to_zero(&pts, 2) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn second_order_sweeps() {
        let kl = Generator::kl();
        let t = tightness_sweep_second(&kl, &SWEEP_V, 0.5).unwrap();
        assert!((t.limit - 0.5).abs() < 1e-3, "{t:?}");
        let chi = tightness_sweep_second(&Generator::chi2(), &SWEEP_V, 0.5).unwrap();
        assert!(chi.rows.iter().all(|r| (r.ratio - 1.0).abs() < 1e-12));
        for p in [0.25, 0.5, 0.75] {
            let t = tightness_sweep_second(&kl, &SWEEP_V, p).unwrap();
            assert!(t.relative_error() < 5e-3, "p = {p}: {t:?}");
        }
        assert!((tightness_sweep_second(&kl, &SWEEP_V, 0.25).unwrap().expected - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn fourth_order_sweeps() {
        for (f, c4) in [
            (Generator::kl(), 1.0 / 36.0),
            (Generator::jeffreys(), 1.0 / 12.0),
            (Generator::rel_info_alpha(Number::exact(1, 2)).unwrap(), 1.0 / 32.0),
        ] {
            let t = tightness_sweep_fourth(&f, &SWEEP_V).unwrap();
            assert!((t.limit - c4).abs() < 0.01 * c4, "{}: {t:?}", f.name());
        }
        let j = tightness_sweep_fourth(&Generator::jeffreys(), &SWEEP_V).unwrap();
        assert!((j.rows[0].p - (0.5 - 0.2 / 4.0)).abs() < 1e-15);
        assert!(tightness_sweep_fourth(&Generator::chi2(), &SWEEP_V).is_err());
    }

    #[test]
    fn envelope_examples() {
        let kl = Generator::kl();
        let e = lower_envelope(&kl, 1.0, EnvelopeSearch::default()).unwrap();
        let bound = 0.5 + 1.0 / 36.0 + 1.0 / 270.0 + 221.0 / 340200.0;
        assert!(e.min_divergence.value() >= bound, "{e:?}");
        let small = lower_envelope(&kl, 0.01, EnvelopeSearch::default()).unwrap();
        assert!((small.min_divergence.value() / 1e-4 - 0.5).abs() < 1e-3);
        assert!(small.argmin_p > 0.0 && small.argmin_p < 1.0 - 0.005);
        assert!(lower_envelope(&kl, 2.0, EnvelopeSearch::default()).is_err());
        // Near v = 2 the KL envelope blows up.
        assert!(lower_envelope(&kl, 1.999, EnvelopeSearch::default()).unwrap().min_divergence.value() > 3.0);
    }

    #[test]
    fn envelope_dominates_fourth_order_bound() {
        let vs: Vec<f64> = (1..=38).map(|i| i as f64 * 0.05).collect();
        for f in [Generator::kl(), Generator::jeffreys(), Generator::rel_info_alpha(Number::exact(1, 2)).unwrap()] {
            for e in lower_envelope_many(&f, &vs, EnvelopeSearch::default()).unwrap() {
                assert!(e.min_divergence.value() >= e.bound_value - 1e-9, "{}: {e:?}", f.name());
            }
        }
    }

    #[test]
    fn topsoe_comparison() {
        // Exact: 1/8 + 1/576 + 1/17280 + 221/87091200.
        let exact = 1.0 / 8.0 + 1.0 / 576.0 + 1.0 / 17280.0 + 221.0 / 87091200.0;
        assert!((topsoe_bound(0.5) - exact).abs() < 1e-15);
        let vs: Vec<f64> = (1..=19).map(|i| i as f64 * 0.1).collect();
        for row in compare_topsoe_bound(&vs).unwrap() {
            assert!(row.margin >= -1e-9, "{row:?}");
        }
    }

    #[test]
    fn renyi_fourth_on_random_pairs() {
        let mut s = PairSampler::new(7);
        let pairs: Vec<_> = (0..10_000).map(|_| s.binary_pair()).collect();
        let r = renyi_fourth_check(0.5, &pairs, "binary seed=7").unwrap();
        assert_eq!(r.status, Status::CertifiedNumeric, "{r:?}");
        let (a, b) = renyi_fourth_coefficients(0.25);
        assert_eq!(a, 0.125);
        assert!((b - 0.25 / 36.0 * 1.9375).abs() < 1e-15);
        let (a, b) = renyi_fourth_coefficients(1.0);
        assert_eq!((a, b), (0.5, 1.0 / 36.0));
    }

    #[test]
    fn renyi_violation_examples() {
        assert!((renyi_violation_threshold() - 1.170820393).abs() < 1e-9);
        match renyi_violation_search(1.3).unwrap() {
            RenyiSearch::Witness(w) => assert!(w.renyi < w.bound),
            other => panic!("expected a witness, got {other:?}"),
        }
        assert_eq!(renyi_violation_search(0.9).unwrap(), RenyiSearch::None);
        assert_eq!(renyi_violation_search(1.1).unwrap(), RenyiSearch::Inconclusive);
    }

    #[test]
    fn per_p_constant_examples() {
        let kl = Generator::kl();
        let c = |w: Vec<f64>| per_p_constant(&kl, &Distribution::new(w).unwrap()).unwrap();
        assert!((c(vec![0.5, 0.5]) - 0.5).abs() < 1e-12);
        assert!((c(vec![0.7, 0.2, 0.1]) - 0.5 / 0.84).abs() < 1e-12);
        assert!((c(vec![0.5, 0.3, 0.2]) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn conjectures() {
        let r = conjecture_log6(&Grid::standard());
        assert!(!r.violation_found, "{r:?}");
        assert!((r.fitted - 41.0 / 12150.0).abs() < 1e-3 * 41.0 / 12150.0, "{r:?}");
        let s = conjecture_surplus(&[0.4, 0.2, 0.1]).unwrap();
        assert!((s.fitted - s.target).abs() < 0.1 * s.target, "{s:?}");
        assert_eq!(s.label, CONJECTURE_LABEL);
    }
}
