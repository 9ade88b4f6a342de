//! One-shot reproduction of every check, bundled into a single document.

use pinsker::certify::{self, Status};
use pinsker::dist::variational_distance;
use pinsker::divergence::{self, capacitory_lower_bound, f_divergence};
use pinsker::envelope::{self, RenyiSearch};
use pinsker::generators::Params;
use pinsker::polycert;
use pinsker::sampling::PairSampler;
use pinsker::{Distribution, Generator, Grid, Number, PinskerCoefficients, Result};

use crate::args::ConjectureName;
use crate::commands::{self, SWEEP_TOLERANCE};
use crate::output::{num, Document, Outcome, Section};

pub const SAMPLES: usize = 10_000;
pub const SAMPLE_SEED: u64 = 20_240_601;
pub const MARGIN_TOLERANCE: f64 = 1e-9;
const MAX_ATOMS: usize = 6;

/// Expected exact `(c2, w2, c4, w4)` strings for one generator.
#[derive(Debug, Clone)]
pub struct CoefficientExpectation {
    pub generator: String,
    pub alpha: Option<String>,
    pub expected: [String; 4],
}

fn expectation(generator: &str, alpha: Option<&str>, e: [&str; 4]) -> CoefficientExpectation {
    CoefficientExpectation {
        generator: generator.into(),
        alpha: alpha.map(Into::into),
        expected: e.map(String::from),
    }
}

pub fn default_coefficient_expectations() -> Vec<CoefficientExpectation> {
    vec![
        expectation("kl", None, ["1/2", "1/3", "1/36", "17/45"]),
        expectation("jeffreys", None, ["1", "1/2", "1/12", "1/2"]),
        expectation("rel_info_alpha", Some("-1"), ["1/2", "0", "0", "2/15"]),
        expectation("rel_info_alpha", Some("-1/2"), ["1/2", "1/6", "5/288", "23/90"]),
        expectation("rel_info_alpha", Some("1/2"), ["1/2", "1/2", "1/32", "1/2"]),
        expectation("rel_info_alpha", Some("3/2"), ["1/2", "5/6", "5/288", "67/90"]),
        expectation("rel_info_alpha", Some("2"), ["1/2", "1", "0", "13/15"]),
    ]
}

fn checks_section(title: &str) -> Section {
    Section::new(title, &["check", "expected", "observed", "pass"])
}

fn check(s: &mut Section, item: impl Into<String>, expected: impl Into<String>, observed: impl Into<String>, pass: bool) {
    if !pass {
        s.raise(Outcome::Violated);
    }
    s.row(vec![item.into(), expected.into(), observed.into(), pass.to_string()]);
}

fn margin(lhs: f64, rhs: f64) -> f64 {
    if lhs.is_infinite() && lhs > 0.0 {
        return f64::INFINITY;
    }
    (lhs - rhs) / lhs.abs().max(rhs.abs()).max(1.0)
}

fn coefficients_of(e: &CoefficientExpectation) -> Result<(PinskerCoefficients, Option<PinskerCoefficients>)> {
    let alpha = e.alpha.as_deref().map(Number::parse).transpose()?;
    let g = Generator::builtin(&e.generator, &Params { alpha: alpha.clone(), nu: None })?;
    let c = g.coefficients()?;
    let closed = match (&c.w4, alpha) {
        (None, Some(a)) => Some(PinskerCoefficients::rel_info_alpha_closed_form(&a)),
        _ => None,
    };
    Ok((c, closed))
}

pub fn coefficient_section(expected: &[CoefficientExpectation]) -> Result<Section> {
    let mut s = checks_section("coefficients");
    s.note("exact rationals; where c4 = 0 the generic w4 is undefined and the closed form (17+11a)/45 is compared");
    for e in expected {
        let (c, closed) = coefficients_of(e)?;
        let w4 = match (&c.w4, &closed) {
            (Some(w), _) => w.to_string(),
            (None, Some(cf)) => cf.w4.as_ref().map_or("undefined".into(), |w| w.to_string()),
            (None, None) => "undefined".into(),
        };
        let observed = [c.c2.to_string(), c.w2.to_string(), c.c4.to_string(), w4];
        let label = match &e.alpha {
            Some(a) => format!("{} alpha={a}", e.generator),
            None => e.generator.clone(),
        };
        check(&mut s, label, e.expected.join(" "), observed.join(" "), observed == e.expected);
    }
    Ok(s)
}

/// `α = i/20` for `i = −20..=40`, without 0 and 1.
pub fn alpha_grid() -> Vec<Number> {
    (-20..=40).filter(|i| *i != 0 && *i != 20).map(|i| Number::exact(i, 20)).collect()
}

fn second_order_section(grid: &Grid) -> Result<Section> {
    let mut s = checks_section("second-order certification");
    s.config("grid", grid.spec()).config("tol", MARGIN_TOLERANCE);
    for name in ["kl", "reverse_kl", "jeffreys", "chi2", "hellinger"] {
        let r = certify::check_second_order_condition(&Generator::builtin(name, &Params::default())?, grid, MARGIN_TOLERANCE)?;
        check(&mut s, name, "certified_numeric", format!("{} margin {}", r.status, num(r.margin)), r.is_certified());
    }
    let (mut certified, mut worst) = (0, f64::INFINITY);
    let alphas = alpha_grid();
    for a in &alphas {
        let r = certify::check_second_order_condition(&Generator::rel_info_alpha(a.clone())?, grid, MARGIN_TOLERANCE)?;
        certified += usize::from(r.is_certified());
        worst = worst.min(r.margin);
    }
    check(
        &mut s,
        "rel_info_alpha, alpha in [-1,2] step 0.05",
        format!("{} certified", alphas.len()),
        format!("{certified} certified, min margin {}", num(worst)),
        certified == alphas.len(),
    );
    let r = certify::check_second_order_condition(&Generator::rel_info_alpha(Number::exact(5, 2))?, grid, MARGIN_TOLERANCE)?;
    check(
        &mut s,
        "rel_info_alpha alpha=5/2",
        "violated with witness",
        format!("{} witness u={}", r.status, r.witness_u.map(num).unwrap_or_default()),
        r.status == Status::Violated && r.witness_u.is_some(),
    );
    Ok(s)
}

/// Minimum normalized margin of `lhs(pair) ≥ rhs(pair)` over seeded random pairs.
fn sampled_margin<F>(pairs: &[(Distribution, Distribution)], mut f: F) -> Result<f64>
where
    F: FnMut(&Distribution, &Distribution) -> Result<(f64, f64)>,
{
    let mut worst = f64::INFINITY;
    for (p, q) in pairs {
        let (l, r) = f(p, q)?;
        worst = worst.min(margin(l, r));
    }
    Ok(worst)
}

pub fn random_pairs(seed: u64) -> Vec<(Distribution, Distribution)> {
    let mut s = PairSampler::new(seed);
    (0..SAMPLES).map(|_| s.pair(MAX_ATOMS)).collect()
}

fn fourth_order_section(grid: &Grid, pairs: &[(Distribution, Distribution)]) -> Result<Section> {
    let mut s = checks_section("fourth-order certification");
    s.config("grid", grid.spec()).config("tol", MARGIN_TOLERANCE).config("samples", SAMPLES).config("seed", SAMPLE_SEED);
    for g in [Generator::kl(), Generator::jeffreys()] {
        let c = g.coefficients()?;
        let r = certify::check_fourth_order_derivative_condition_with_coefficients(&g, &c, grid, MARGIN_TOLERANCE)?;
        check(&mut s, format!("{} sixth-derivative condition", g.name()), "certified_numeric", format!("{} margin {}", r.status, num(r.margin)), r.is_certified());
    }
    let q = polycert::kl_sixth_quartic();
    let cert = polycert::quartic_certificate(&q)?;
    let ok = cert.certificate().is_some_and(|c| polycert::verify_quartic_identity(&q, c));
    check(&mut s, "kl quartic certificate", "nonnegative a4, a2, a0", cert.certificate().map_or("none".into(), |c| c.to_string()), ok);

    let (mut certified, mut worst) = (0, f64::INFINITY);
    let alphas = alpha_grid();
    for a in &alphas {
        let g = Generator::rel_info_alpha(a.clone())?;
        let c = PinskerCoefficients::rel_info_alpha_closed_form(a);
        let r = certify::check_fourth_order_derivative_condition_with_coefficients(&g, &c, grid, MARGIN_TOLERANCE)?;
        certified += usize::from(r.is_certified());
        worst = worst.min(r.margin);
    }
    check(
        &mut s,
        "rel_info_alpha sixth-derivative condition, alpha in [-1,2] step 0.05",
        format!("{} certified", alphas.len()),
        format!("{certified} certified, min margin {}", num(worst)),
        certified == alphas.len(),
    );

    let mut sampled = vec![Generator::kl(), Generator::jeffreys()];
    for a in [Number::exact(-1, 2), Number::exact(1, 2), Number::exact(3, 2)] {
        sampled.push(Generator::rel_info_alpha(a)?);
    }
    for g in &sampled {
        let (c2, _, c4, _) = g.coefficients()?.floats();
        let m = sampled_margin(pairs, |p, q| {
            let v = variational_distance(p, q)?;
            Ok((f_divergence(g, p, q)?.value(), c2 * v * v + c4 * v.powi(4)))
        })?;
        check(&mut s, format!("{}: D >= c2 V^2 + c4 V^4 on random pairs", g.name()), "min margin >= -1e-9", num(m), m >= -MARGIN_TOLERANCE);
    }
    Ok(s)
}

fn identity_section() -> Result<Section> {
    let mut s = checks_section("exact identities");
    for r in [polycert::kl_sixth_identity(), polycert::p10_report(), polycert::alpha_appendix_chain()] {
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.pass).map(|c| c.label.as_str()).collect();
        let observed = if failed.is_empty() { format!("{} checks pass", r.checks.len()) } else { format!("failed: {}", failed.join(", ")) };
        check(&mut s, r.name.clone(), "all checks pass", observed, r.pass);
    }
    let cert = polycert::quartic_certificate(&polycert::kl_sixth_quartic())?;
    let values = cert.certificate().map(|c| c.values()).unwrap_or_default();
    let get = |k: &str| values.iter().find(|(n, _)| *n == k).map(|(_, v)| v.clone()).unwrap_or_default();
    for (k, want) in [("a4", "43904"), ("a2", "88347/4"), ("a0", "10273158845617/723738624"), ("shift1", "-65/224")] {
        let got = get(k);
        check(&mut s, format!("kl quartic {k}"), want, got.clone(), got == want);
    }
    let constant = polycert::p10().coeff(0);
    let c = pinsker::exact::format_rational(&constant);
    check(&mut s, "P10 constant term", "41092635382468", c.clone(), c == "41092635382468");

    let (lo, hi) = (pinsker::exact::int(-1), pinsker::exact::int(2));
    let found = polycert::positivity_division_search(&polycert::p10(), (lo, hi), 8, 8)?;
    let (first, reassembles) = match &found {
        Some(d) => (d.terms.first().map(|(c, m, n)| format!("({c})*(2-a)^{m}*(a+1)^{n}")), d.assemble() == polycert::p10()),
        None => (None, false),
    };
    let want = "(20792743232*a^2 + 189041519104*a + 300831606416)*(2-a)^3*(a+1)^5";
    let got = first.unwrap_or_else(|| "none".into());
    check(&mut s, "division search first term", want, got.clone(), reassembles && got == want);
    Ok(s)
}

fn tightness_section() -> Result<Vec<Section>> {
    let v = &envelope::SWEEP_V;
    let mut out = Vec::new();
    let kl = Generator::kl();
    let mut second = commands::sweep_section(&envelope::tightness_sweep_second(&kl, v, 0.5)?, SWEEP_TOLERANCE);
    second.config("p", 0.5);
    out.push(second);
    let mut fourth = vec![kl, Generator::jeffreys()];
    for a in [Number::exact(1, 2), Number::exact(3, 2)] {
        fourth.push(Generator::rel_info_alpha(a)?);
    }
    for g in &fourth {
        let t = envelope::tightness_sweep_fourth(g, v)?;
        out.push(commands::sweep_section(&t, SWEEP_TOLERANCE));
    }
    Ok(out)
}

fn envelope_section() -> Result<Section> {
    let vs: Vec<f64> = (1..=19).map(|i| i as f64 / 10.0).collect();
    let mut s = checks_section("kl envelope vs eighth-order bound");
    s.note(envelope::ENVELOPE_CAVEAT);
    for r in envelope::compare_topsoe_bound(&vs)? {
        check(&mut s, format!("v={}", num(r.v)), format!(">= {} - 1e-9", num(r.bound)), num(r.envelope), r.margin >= -MARGIN_TOLERANCE);
    }
    Ok(s)
}

fn renyi_section() -> Result<Section> {
    let mut s = checks_section("renyi");
    let mut sampler = PairSampler::new(SAMPLE_SEED);
    let pairs: Vec<_> = (0..SAMPLES).map(|_| sampler.binary_pair()).collect();
    for a in [0.25, 0.5, 0.75] {
        let r = envelope::renyi_fourth_check(a, &pairs, "random binary pairs")?;
        check(&mut s, format!("alpha={a} fourth-order bound"), "certified_numeric", format!("{} margin {}", r.status, num(r.margin)), r.is_certified());
    }
    let found = envelope::renyi_violation_search(1.3)?;
    let observed = match &found {
        RenyiSearch::Witness(w) => format!("witness p={} v={}", num(w.p), num(w.v)),
        RenyiSearch::None => "none".into(),
        RenyiSearch::Inconclusive => "inconclusive".into(),
    };
    check(&mut s, "alpha=1.3 second-order violation", "witness", observed, matches!(found, RenyiSearch::Witness(_)));
    let found = envelope::renyi_violation_search(1.1)?;
    check(&mut s, "alpha=1.1 second-order violation", "inconclusive", format!("{found:?}").to_lowercase(), found == RenyiSearch::Inconclusive);
    Ok(s)
}

/// `Δ_ν` for `k = (1 + u)/2` and the two normalizations of its lower bound.
fn consequences_section(pairs: &[(Distribution, Distribution)]) -> Result<Section> {
    let mut s = checks_section("section-two consequences");
    s.config("samples", SAMPLES).config("seed", SAMPLE_SEED).config("tol", MARGIN_TOLERANCE);
    let m = sampled_margin(pairs, |p, q| {
        let v = variational_distance(p, q)?;
        Ok((divergence::chi2(p, q)?.value(), v * v))
    })?;
    check(&mut s, "chi2 >= V^2", "min margin >= -1e-9", num(m), m >= -MARGIN_TOLERANCE);
    let m = sampled_margin(pairs, |p, q| {
        let v = variational_distance(p, q)?;
        Ok((divergence::triangular(p, q)?, 0.5 * v * v))
    })?;
    check(&mut s, "Delta >= V^2/2", "min margin >= -1e-9", num(m), m >= -MARGIN_TOLERANCE);
    let m = sampled_margin(pairs, |p, q| {
        let v = variational_distance(p, q)?;
        let h = divergence::hellinger2(p, q)?;
        Ok((4.0 * h * (2.0 - h), v * v))
    })?;
    check(&mut s, "4h^2(2-h^2) >= V^2", "min margin >= -1e-9", num(m), m >= -MARGIN_TOLERANCE);
    for nu in [2u32, 3] {
        let g = Generator::triangular_nu(nu)?;
        let scale = 2f64.powi(1 - 2 * nu as i32);
        let m = sampled_margin(pairs, |p, q| {
            let v = variational_distance(p, q)?;
            Ok((f_divergence(&g, p, q)?.value(), scale * v.powi(2 * nu as i32)))
        })?;
        check(&mut s, format!("Delta_{nu} >= 2^(1-2nu) V^(2nu)"), "min margin >= -1e-9", num(m), m >= -MARGIN_TOLERANCE);
    }
    s.note("Delta_nu >= V^(2nu) without the 2^(1-2nu) factor fails, e.g. P=(1/2,1/2), Q=(1,0) gives Delta_2 = 14/27");
    let mut sampler = PairSampler::new(SAMPLE_SEED + 1);
    let binary: Vec<_> = (0..SAMPLES).map(|_| sampler.binary_pair()).collect();
    let m = sampled_margin(&binary, |p, q| {
        let v = variational_distance(p, q)?;
        Ok((divergence::capacitory(p, q)?, if v < 2.0 { capacitory_lower_bound(v) } else { f64::NEG_INFINITY }))
    })?;
    check(&mut s, "capacitory precise bound on binary pairs", "min margin >= -1e-9", num(m), m >= -MARGIN_TOLERANCE);
    Ok(s)
}

fn figure_section() -> Result<Section> {
    let grid = Grid::parse_spec("0.01:100:4001:log")?.refined_near_one(Grid::REFINEMENT_POINTS, Grid::REFINEMENT_HALF_WIDTH);
    let kl = Generator::kl();
    let mut s = checks_section("figure hw argmax");
    s.config("generator", "kl").config("grid", grid.spec()).config("resolution", certify::ARGMAX_RESOLUTION);
    for (w, want) in [(0.2, "less than 1"), (1.0 / 3.0, "at 1"), (0.5, "greater than 1")] {
        let p = certify::h_w_profile(&kl, w, &grid)?;
        let d = p.argmax_u - 1.0;
        let side = if d.abs() <= certify::ARGMAX_RESOLUTION {
            "at 1"
        } else if d > 0.0 {
            "greater than 1"
        } else {
            "less than 1"
        };
        let big = want == "at 1" || p.max_value > 2.0;
        check(
            &mut s,
            format!("w={}", num(w)),
            format!("argmax {want}{}", if want == "at 1" { "" } else { ", max > 2" }),
            format!("argmax {} ({side}), max {}", num(p.argmax_u), num(p.max_value)),
            side == want && big,
        );
    }
    Ok(s)
}

/// Every check in order; `expected` is the coefficient table to compare against.
pub fn report_all(expected: &[CoefficientExpectation]) -> Result<Document> {
    let grid = Grid::standard();
    let pairs = random_pairs(SAMPLE_SEED);
    let mut doc = Document::new("report");
    doc.push(coefficient_section(expected)?);
    doc.push(second_order_section(&grid)?);
    doc.push(fourth_order_section(&grid, &pairs)?);
    doc.push(identity_section()?);
    for s in tightness_section()? {
        doc.push(s);
    }
    doc.push(envelope_section()?);
    doc.push(renyi_section()?);
    doc.push(consequences_section(&pairs)?);
    doc.push(figure_section()?);
    doc.push(commands::conjecture_section(ConjectureName::Log6, "standard", "")?);
    doc.push(commands::conjecture_section(ConjectureName::Surplus, "", "0.4,0.2,0.1")?);
    Ok(doc)
}
