//! Finite discrete distributions, total variation and extended reals.

use std::fmt;
use std::io::Read;
use std::ops::{Add, Mul};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Absolute tolerance on the total mass of a [`Distribution`].
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Largest atom count handled by [`max_partition_spread`].
pub const MAX_ENUMERATION_ATOMS: usize = 20;

/// A real number or `+∞`.
///
/// Divergence values are nonnegative; boundary limits of generators
/// (`f(0+)`, `lim f(u)/u`) may be any finite real, so negative finite values
/// are representable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Infinity,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtReal::Infinity)
    }

    pub fn finite(&self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(*x),
            ExtReal::Infinity => None,
        }
    }

    /// As `f64`, with `+∞` mapped to `f64::INFINITY`.
    pub fn value(&self) -> f64 {
        match self {
            ExtReal::Finite(x) => *x,
            ExtReal::Infinity => f64::INFINITY,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == f64::INFINITY {
            ExtReal::Infinity
        } else {
            ExtReal::Finite(x)
        }
    }

    /// Multiplies by a nonnegative weight with `0 · ∞ = 0`.
    pub fn scale(self, weight: f64) -> ExtReal {
        debug_assert!(weight >= 0.0);
        match self {
            ExtReal::Finite(x) => ExtReal::Finite(weight * x),
            ExtReal::Infinity if weight == 0.0 => ExtReal::ZERO,
            ExtReal::Infinity => ExtReal::Infinity,
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
            _ => ExtReal::Infinity,
        }
    }
}

impl Mul<f64> for ExtReal {
    type Output = ExtReal;

    fn mul(self, rhs: f64) -> ExtReal {
        self.scale(rhs)
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.value().partial_cmp(&other.value())
    }
}

impl std::iter::Sum for ExtReal {
    fn sum<I: Iterator<Item = ExtReal>>(iter: I) -> ExtReal {
        iter.fold(ExtReal::ZERO, Add::add)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(x) => write!(f, "{x}"),
            ExtReal::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(x) => serializer.serialize_f64(*x),
            ExtReal::Infinity => serializer.serialize_str("inf"),
        }
    }
}

/// Probability weights over index-aligned atoms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution {
    weights: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Distribution {
    /// Validates nonnegativity and unit mass (within [`SUM_TOLERANCE`]).
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        validate_weights(&weights)?;
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "weights sum to {total}, expected 1 within {SUM_TOLERANCE}"
            )));
        }
        Ok(Distribution { weights, labels: None })
    }

    /// Divides by the total mass instead of requiring it to be 1.
    pub fn renormalized(weights: Vec<f64>) -> Result<Self> {
        validate_weights(&weights)?;
        let total: f64 = weights.iter().sum();
        if total <= 0.0 || !total.is_finite() {
            return Err(Error::InvalidDistribution(format!("total mass {total} cannot be normalized")));
        }
        Ok(Distribution {
            weights: weights.into_iter().map(|w| w / total).collect(),
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.weights.len() {
            return Err(Error::Dimension { left: self.weights.len(), right: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Inline syntax: comma-separated weights, e.g. `0.5,0.3,0.2` or `1/2,1/2`.
    pub fn parse_inline(s: &str) -> Result<Self> {
        let weights = s
            .split(',')
            .map(parse_weight)
            .collect::<Result<Vec<_>>>()?;
        Distribution::new(weights)
    }

    /// CSV with one weight per line; an optional second column is taken as the label.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .comment(Some(b'#'))
            .from_reader(reader);
        let mut weights = Vec::new();
        let mut labels = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(|e| Error::Parse(e.to_string()))?;
            let Some(first) = record.get(0) else { continue };
            if first.trim().is_empty() {
                continue;
            }
            weights.push(parse_weight(first)?);
            if let Some(label) = record.get(1) {
                labels.push(label.trim().to_string());
            }
        }
        let dist = Distribution::new(weights)?;
        if labels.is_empty() {
            Ok(dist)
        } else {
            dist.with_labels(labels)
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub(crate) fn check_aligned(&self, other: &Distribution) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Dimension { left: self.len(), right: other.len() });
        }
        Ok(())
    }
}

fn parse_weight(s: &str) -> Result<f64> {
    let s = s.trim();
    if s.contains('/') {
        return crate::exact::parse_rational(s).map(|r| crate::exact::rational_to_f64(&r));
    }
    s.parse::<f64>().map_err(|_| Error::Parse(format!("bad weight `{s}`")))
}

fn validate_weights(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::InvalidDistribution("at least one atom is required".into()));
    }
    if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w >= 0.0)) {
        return Err(Error::InvalidDistribution(format!("weight {i} is {w}, must be finite and >= 0")));
    }
    Ok(())
}

/// `V(P,Q) = Σ|qᵢ − pᵢ|`, in `[0, 2]`.
pub fn variational_distance(p: &Distribution, q: &Distribution) -> Result<f64> {
    p.check_aligned(q)?;
    Ok(p.weights.iter().zip(&q.weights).map(|(a, b)| (b - a).abs()).sum())
}

/// `sup { P(A)(1 − P(A)) : A ⊆ atoms }` by exhaustive subset enumeration.
///
/// Subsets are visited in Gray-code order so each step adds or removes one atom.
pub fn max_partition_spread(p: &Distribution) -> Result<f64> {
    let n = p.len();
    if n > MAX_ENUMERATION_ATOMS {
        return Err(Error::Capacity { atoms: n, max: MAX_ENUMERATION_ATOMS });
    }
    let w = p.weights();
    let mut mass = 0.0_f64;
    let mut best = 0.0_f64;
    let mut members = 0u32;
    for step in 1u32..(1u32 << n) {
        let bit = step.trailing_zeros() as usize;
        members ^= 1 << bit;
        if members & (1 << bit) != 0 {
            mass += w[bit];
        } else {
            mass -= w[bit];
        }
        best = best.max(mass * (1.0 - mass));
    }
    Ok(best.min(0.25))
}

/// Atomwise `w·p + (1−w)·q`.
pub fn mixture(p: &Distribution, q: &Distribution, w: f64) -> Result<Distribution> {
    p.check_aligned(q)?;
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::Domain(format!("mixture weight {w} outside [0, 1]")));
    }
    let weights = p
        .weights
        .iter()
        .zip(&q.weights)
        .map(|(a, b)| w * a + (1.0 - w) * b)
        .collect();
    // Convex combinations of unit-mass vectors stay within rounding of 1.
    Distribution::renormalized(weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(w: &[f64]) -> Distribution {
        Distribution::new(w.to_vec()).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert!(Distribution::new(vec![]).is_err());
        assert!(Distribution::new(vec![0.5, 0.6]).is_err());
        assert!(Distribution::new(vec![1.2, -0.2]).is_err());
        assert!(Distribution::new(vec![0.5, 0.5 + 5e-13]).is_ok());
        let r = Distribution::renormalized(vec![2.0, 6.0]).unwrap();
        assert_eq!(r.weights(), &[0.25, 0.75]);
        assert!(d(&[1.0]).with_labels(vec!["a".into(), "b".into()]).is_err());
    }

    #[test]
    fn variational_distance_examples() {
        assert_eq!(variational_distance(&d(&[1.0, 0.0]), &d(&[0.0, 1.0])).unwrap(), 2.0);
        assert_eq!(variational_distance(&d(&[0.3, 0.7]), &d(&[0.3, 0.7])).unwrap(), 0.0);
        assert_eq!(variational_distance(&d(&[0.5, 0.5]), &d(&[0.75, 0.25])).unwrap(), 0.5);
        assert!(matches!(
            variational_distance(&d(&[1.0]), &d(&[0.5, 0.5])),
            Err(Error::Dimension { left: 1, right: 2 })
        ));
    }

    #[test]
    fn partition_spread_examples() {
        assert!((max_partition_spread(&d(&[0.5, 0.3, 0.2])).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(max_partition_spread(&d(&[1.0])).unwrap(), 0.0);
        assert!((max_partition_spread(&d(&[0.7, 0.2, 0.1])).unwrap() - 0.21).abs() < 1e-12);
        let many = Distribution::renormalized(vec![1.0; 21]).unwrap();
        assert!(matches!(max_partition_spread(&many), Err(Error::Capacity { atoms: 21, .. })));
        let twenty = Distribution::renormalized(vec![1.0; 20]).unwrap();
        assert!((max_partition_spread(&twenty).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn mixture_examples() {
        let m = mixture(&d(&[1.0, 0.0]), &d(&[0.0, 1.0]), 0.5).unwrap();
        assert_eq!(m.weights(), &[0.5, 0.5]);
        let m = mixture(&d(&[0.4, 0.6]), &d(&[0.4, 0.6]), 0.37).unwrap();
        assert!((m.weights()[0] - 0.4).abs() < 1e-15);
        let m = mixture(&d(&[1.0, 0.0]), &d(&[0.0, 1.0]), 0.25).unwrap();
        assert_eq!(m.weights(), &[0.25, 0.75]);
        assert!(mixture(&d(&[1.0, 0.0]), &d(&[0.0, 1.0]), 1.5).is_err());
    }

    #[test]
    fn parses_inline_and_csv() {
        let p = Distribution::parse_inline("0.5,0.3,0.2").unwrap();
        assert_eq!(p.len(), 3);
        let p = Distribution::parse_inline("1/3, 2/3").unwrap();
        assert!((p.weights()[0] - 1.0 / 3.0).abs() < 1e-16);
        let csv = "# header\n0.25,a\n0.75,b\n";
        let p = Distribution::from_csv(csv.as_bytes()).unwrap();
        assert_eq!(p.weights(), &[0.25, 0.75]);
        assert_eq!(p.labels().unwrap(), &["a".to_string(), "b".to_string()]);
        assert!(Distribution::parse_inline("0.5,x").is_err());
    }

    #[test]
    fn ext_real_arithmetic() {
        assert_eq!(ExtReal::Finite(1.0) + ExtReal::Infinity, ExtReal::Infinity);
        assert_eq!(ExtReal::Infinity * 0.0, ExtReal::ZERO);
        assert!(ExtReal::Finite(3.0) < ExtReal::Infinity);
        assert_eq!(ExtReal::from_f64(f64::INFINITY), ExtReal::Infinity);
    }
}
