use std::fs::File;
use std::path::Path;

use pinsker::certify::{self, CertificateResult, GExpr, Status};
use pinsker::dist::variational_distance;
use pinsker::divergence::{capacitory_lower_bound, f_divergence, renyi, renyi_direct};
use pinsker::envelope::{self, EnvelopeSearch, RenyiSearch};
use pinsker::generators::Params;
use pinsker::polycert::{self, IdentityReport, QuarticOutcome, RationalPoly};
use pinsker::sampling::PairSampler;
use pinsker::{Distribution, Error, Generator, Grid, Number, PinskerCoefficients, Result};

use crate::args::{CertifyKind, ConjectureName, GeneratorArgs, IdentityName, SweepOrder};
use crate::output::{num, opt_num, Document, Outcome, Section};

pub fn parse_number(s: &str) -> Result<Number> {
    Number::parse(s.trim())
}

pub fn resolve_generator(args: &GeneratorArgs, default: &str) -> Result<Generator> {
    let name = args.generator.as_deref().unwrap_or(if args.expr.is_some() { "expr" } else { default });
    if name == "expr" {
        let src = args.expr.as_deref().ok_or_else(|| Error::InvalidParameter("--generator expr needs --expr".into()))?;
        return Generator::from_expression("expr", src);
    }
    if args.expr.is_some() {
        return Err(Error::InvalidParameter("--expr is only used with --generator expr".into()));
    }
    let alpha = args.alpha.as_deref().map(parse_number).transpose()?;
    Generator::builtin(name, &Params { alpha, nu: args.nu })
}

fn echo_generator(s: &mut Section, g: &Generator, args: &GeneratorArgs) {
    s.config("generator", g.name());
    if let Some(e) = &args.expr {
        s.config("expr", e);
        s.config("convexity_attested", g.convexity_attested());
    }
    s.config("derivatives", g.grade());
}

pub fn load_distribution(s: &str) -> Result<Distribution> {
    let path = Path::new(s);
    if path.is_file() {
        let file = File::open(path).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        return Distribution::from_csv(file);
    }
    Distribution::parse_inline(s)
}

/// `lo:hi:step` (inclusive) or a comma list.
pub fn parse_values(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::Parse(format!("`{s}` is neither lo:hi:step nor a comma list"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 3 {
        let v: Vec<f64> = parts.iter().map(|x| x.trim().parse::<f64>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
        let (lo, hi, step) = (v[0], v[1], v[2]);
        if !(step > 0.0) || hi < lo {
            return Err(bad());
        }
        let n = ((hi - lo) / step + 1e-9).floor() as usize;
        return Ok((0..=n).map(|i| ((lo + step * i as f64) * 1e12).round() / 1e12).collect());
    }
    s.split(',').map(|x| x.trim().parse::<f64>().map_err(|_| bad())).collect()
}

fn coefficient_cells(c: &PinskerCoefficients) -> [String; 4] {
    [
        c.c2.to_string(),
        c.w2.to_string(),
        c.c4.to_string(),
        c.w4.as_ref().map_or_else(|| "undefined".to_string(), ToString::to_string),
    ]
}

pub fn eval(gen: &GeneratorArgs, p: &str, q: &str, tol: f64) -> Result<Document> {
    let (pp, qq) = (load_distribution(p)?, load_distribution(q)?);
    let v = variational_distance(&pp, &qq)?;
    let generators = match (&gen.generator, &gen.expr) {
        (None, None) => ["kl", "reverse_kl", "chi2", "hellinger", "triangular", "jeffreys", "capacitory", "total_variation"]
            .iter()
            .map(|n| Generator::builtin(n, &Params::default()))
            .collect::<Result<Vec<_>>>()?,
        _ => vec![resolve_generator(gen, "kl")?],
    };
    let mut s = Section::new("eval", &["divergence", "value", "V", "bound", "bound_value", "holds"]);
    s.config("p", format!("{:?}", pp.weights())).config("q", format!("{:?}", qq.weights())).config("tol", tol);
    for g in &generators {
        let d = f_divergence(g, &pp, &qq)?;
        let mut check = |label: &str, bound: f64| {
            let holds = d.is_infinite() || d.value() >= bound - tol * bound.abs().max(1.0);
            if !holds {
                s.raise(Outcome::Violated);
            }
            s.row(vec![g.name().into(), d.to_string(), num(v), label.into(), num(bound), holds.to_string()]);
        };
        match g.coefficients() {
            Ok(c) => {
                let (c2, _, c4, _) = c.floats();
                check("c2*V^2", c2 * v * v);
                if c.c4_positive() {
                    check("c2*V^2 + c4*V^4", c2 * v * v + c4 * v.powi(4));
                }
            }
            Err(_) => check("none", 0.0),
        }
        if g.name() == "capacitory" {
            check("log((4-V^2)/4) + (V/2)log((2+V)/(2-V))", capacitory_lower_bound(v));
        }
    }
    let mut doc = Document::new("eval");
    doc.push(s);
    Ok(doc)
}

pub fn coeffs(gen: &GeneratorArgs) -> Result<Document> {
    let g = resolve_generator(gen, "kl")?;
    let c = g.coefficients()?;
    let mut s = Section::new("coefficients", &["generator", "c2", "w2", "c4", "w4", "exact"]);
    echo_generator(&mut s, &g, gen);
    s.note(c.to_string());
    let [c2, w2, c4, w4] = coefficient_cells(&c);
    s.row(vec![g.name().into(), c2, w2, c4, w4, c.is_exact().to_string()]);
    let mut doc = Document::new("coeffs");
    doc.push(s);
    Ok(doc)
}

const CERT_COLUMNS: [&str; 10] =
    ["condition", "generator", "status", "margin", "witness_u", "grid", "points", "tolerance", "grade", "notes"];

fn status_outcome(s: Status) -> Outcome {
    match s {
        Status::CertifiedNumeric => Outcome::Pass,
        Status::Violated => Outcome::Violated,
        Status::Inconclusive => Outcome::Inconclusive,
    }
}

pub fn cert_row(s: &mut Section, r: &CertificateResult) {
    s.raise(status_outcome(r.status));
    s.row(vec![
        r.condition.clone(),
        r.subject.clone(),
        r.status.to_string(),
        num(r.margin),
        opt_num(r.witness_u),
        r.grid_spec.clone(),
        r.points.to_string(),
        num(r.tolerance),
        r.grade.to_string(),
        r.notes.join("; "),
    ]);
}

fn not_applicable_row(s: &mut Section, condition: &str, g: &Generator, e: &Error) {
    s.row(vec![
        condition.into(),
        g.name().into(),
        "not_applicable".into(),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        String::new(),
        g.grade().to_string(),
        e.to_string(),
    ]);
}

/// Where `1 + (1 − w)(u − 1)` vanishes; the fourth-order inequality fails there when `w ∉ [0, 1]`.
fn weight_witness(w: f64) -> Option<f64> {
    (!(0.0..=1.0).contains(&w)).then(|| 1.0 - 1.0 / (1.0 - w))
}

/// Closed-form coefficients keep `w₄` at the ends of the `D₍α₎` range.
fn coefficients_for_sixth(g: &Generator, gen: &GeneratorArgs) -> Result<PinskerCoefficients> {
    if gen.generator.as_deref() == Some("rel_info_alpha") {
        if let Some(a) = &gen.alpha {
            return Ok(PinskerCoefficients::rel_info_alpha_closed_form(&parse_number(a)?));
        }
    }
    g.coefficients()
}

pub fn certify(kind: CertifyKind, gen: &GeneratorArgs, grid_spec: &str, tol: f64) -> Result<Document> {
    let g = resolve_generator(gen, "kl")?;
    let grid = Grid::parse_spec(grid_spec)?;
    let mut s = Section::new("certify", &CERT_COLUMNS);
    echo_generator(&mut s, &g, gen);
    s.config("grid", grid.spec()).config("tol", tol);
    s.note("grid certification is numeric (certified_numeric), not a proof");
    match kind {
        CertifyKind::Second => {
            cert_row(&mut s, &certify::check_second_order_condition(&g, &grid, tol)?);
            cert_row(&mut s, &certify::check_second_order_derivative_condition(&g, &grid, tol)?);
        }
        CertifyKind::Fourth => {
            let c = coefficients_for_sixth(&g, gen)?;
            let adm = certify::check_weights_admissible(&c);
            let (_, w2, _, w4) = c.floats();
            let witness = weight_witness(w2).or_else(|| w4.and_then(weight_witness));
            let status = if adm.admissible { "admissible" } else { "violated" };
            if !adm.admissible {
                s.raise(Outcome::Violated);
            }
            s.row(vec![
                "weights".into(),
                g.name().into(),
                status.into(),
                String::new(),
                opt_num(witness),
                "exact".into(),
                String::new(),
                String::new(),
                g.grade().to_string(),
                format!("w2={} w4={}; {}", c.w2, c.w4.as_ref().map_or("undefined".into(), |w| w.to_string()), adm.diagnostics.join("; ")),
            ]);
            let mut applicable = 0;
            match certify::check_fourth_order_condition(&g, &grid, tol) {
                Ok(r) => {
                    applicable += 1;
                    cert_row(&mut s, &r);
                }
                Err(e) => not_applicable_row(&mut s, "fourth-order", &g, &e),
            }
            match certify::check_fourth_order_derivative_condition_with_coefficients(&g, &c, &grid, tol) {
                Ok(r) => {
                    applicable += 1;
                    cert_row(&mut s, &r);
                }
                Err(e) => not_applicable_row(&mut s, "fourth-order-derivative", &g, &e),
            }
            if applicable == 0 && adm.admissible {
                s.raise(Outcome::Inconclusive);
            }
        }
        CertifyKind::SecondSign => {
            let expr = GExpr::second_order_g(&g)?;
            cert_row(&mut s, &certify::derivative_sign_check(&expr, 2, &grid, tol)?);
        }
        CertifyKind::FourthSign => {
            let expr = GExpr::fourth_order_g(&g)?;
            cert_row(&mut s, &certify::derivative_sign_check(&expr, 5, &grid, tol)?);
        }
    }
    let mut doc = Document::new(format!("certify {}", kind_name(kind)));
    doc.push(s);
    Ok(doc)
}

fn kind_name(kind: CertifyKind) -> &'static str {
    match kind {
        CertifyKind::Second => "second",
        CertifyKind::Fourth => "fourth",
        CertifyKind::SecondSign => "second-sign",
        CertifyKind::FourthSign => "fourth-sign",
    }
}

pub fn identity_section(r: &IdentityReport) -> Section {
    let mut s = Section::new(format!("identity {}", r.name), &["item", "kind", "pass", "value"]);
    s.note("exact rational arithmetic");
    for c in &r.checks {
        s.row(vec![c.label.clone(), "check".into(), c.pass.to_string(), c.detail.clone()]);
    }
    for (k, v) in &r.values {
        s.row(vec![k.clone(), "value".into(), String::new(), v.clone()]);
    }
    if !r.pass {
        s.raise(Outcome::Violated);
    }
    s
}

fn poly_line(name: &str, p: &RationalPoly) -> String {
    format!("{name} (ascending in {}): {}\n", p.var(), p.coefficient_strings().join(" "))
}

/// Identity output, or the plain-text coefficient dump under `--emit-poly`.
pub enum IdentityOutput {
    Table(Document),
    Text(String, Outcome),
}

fn exact_alpha(alpha: Option<&str>) -> Result<num::rational::BigRational> {
    let a = alpha.ok_or_else(|| Error::InvalidParameter("--alpha is required for alpha-bracket".into()))?;
    parse_number(a)?
        .as_exact()
        .cloned()
        .ok_or_else(|| Error::InvalidParameter(format!("--alpha {a} must be an exact rational such as 1/2 or 0.25")))
}

pub fn identity(name: IdentityName, alpha: Option<&str>, emit_poly: bool) -> Result<IdentityOutput> {
    let (section, polys): (Section, Vec<(String, RationalPoly)>) = match name {
        IdentityName::KlSixth => {
            (identity_section(&polycert::kl_sixth_identity()), vec![("quartic".into(), polycert::kl_sixth_quartic())])
        }
        IdentityName::P10 => {
            let mut polys = vec![("P10".to_string(), polycert::p10())];
            for (i, (c, m, n)) in polycert::p10_decomposition().into_iter().enumerate() {
                polys.push((format!("term {} coefficient, times (2-a)^{m}(a+1)^{n}", i + 1), c));
            }
            (identity_section(&polycert::p10_report()), polys)
        }
        IdentityName::AlphaChain => {
            let polys = polycert::alpha_bracket_coefficients()
                .into_iter()
                .enumerate()
                .map(|(i, c)| (format!("c{i}(a)"), c))
                .chain(std::iter::once(("P10".to_string(), polycert::p10())))
                .collect();
            (identity_section(&polycert::alpha_appendix_chain()), polys)
        }
        IdentityName::AlphaBracket => {
            let a = exact_alpha(alpha)?;
            let t = polycert::alpha_fourth_bracket(&a);
            let mut s = Section::new("identity alpha-bracket", &["item", "kind", "pass", "value"]);
            s.config("alpha", pinsker::exact::format_rational(&a));
            s.note("sixth-derivative condition for D_alpha = (alpha+1)(2-alpha) T(u) / (273375 u^4)");
            for (k, c) in t.coefficient_strings().iter().enumerate() {
                s.row(vec![format!("c{k}"), "value".into(), String::new(), c.clone()]);
            }
            match t.degree() {
                Some(4) => match polycert::quartic_certificate(&t)? {
                    QuarticOutcome::Certified(cert) => {
                        let ok = polycert::verify_quartic_identity(&t, &cert);
                        s.row(vec!["quartic certificate".into(), "check".into(), ok.to_string(), cert.to_string()]);
                        if !ok {
                            s.raise(Outcome::Violated);
                        }
                    }
                    QuarticOutcome::Inconclusive { reason } => {
                        s.row(vec!["quartic certificate".into(), "check".into(), "inconclusive".into(), reason]);
                        s.raise(Outcome::Inconclusive);
                    }
                },
                _ => {
                    s.row(vec!["quartic certificate".into(), "check".into(), "inconclusive".into(), "bracket is not quartic".into()]);
                    s.raise(Outcome::Inconclusive);
                }
            }
            (s, vec![("T(u)".into(), t)])
        }
        IdentityName::DivisionSearch => {
            let p = polycert::p10();
            let (lo, hi) = (pinsker::exact::int(-1), pinsker::exact::int(2));
            let found = polycert::positivity_division_search(&p, (lo, hi), 8, 8)?;
            let mut s = Section::new("identity division-search", &["item", "kind", "pass", "value"]);
            s.config("polynomial", "P10").config("interval", "[-1, 2]").config("max_m", 8).config("max_n", 8);
            let mut polys = Vec::new();
            match found {
                Some(d) => {
                    let ok = d.assemble() == p;
                    s.row(vec!["decomposition reassembles P10".into(), "check".into(), ok.to_string(), String::new()]);
                    for (i, (c, m, n)) in d.terms.iter().enumerate() {
                        s.row(vec![format!("term {}", i + 1), "value".into(), String::new(), format!("({c})*(2-a)^{m}*(a+1)^{n}")]);
                        polys.push((format!("term {} coefficient, times (2-a)^{m}(a+1)^{n}", i + 1), c.clone()));
                    }
                    s.row(vec!["residual".into(), "value".into(), String::new(), d.residual.to_string()]);
                    polys.push(("residual".into(), d.residual.clone()));
                    if !ok {
                        s.raise(Outcome::Violated);
                    }
                }
                None => {
                    s.row(vec!["search".into(), "check".into(), "false".into(), "no decomposition found (not a disproof)".into()]);
                    s.raise(Outcome::Inconclusive);
                }
            }
            (s, polys)
        }
    };
    if emit_poly {
        let text: String = polys.iter().map(|(n, p)| poly_line(n, p)).collect();
        return Ok(IdentityOutput::Text(text, section.outcome));
    }
    let mut doc = Document::new("identity");
    doc.push(section);
    Ok(IdentityOutput::Table(doc))
}

pub fn envelope(gen: &GeneratorArgs, v: &str, topsoe: bool, tol: f64) -> Result<Document> {
    let g = resolve_generator(gen, "kl")?;
    let vs = parse_values(v)?;
    if topsoe && g.name() != "kl" {
        return Err(Error::InvalidParameter("--topsoe compares the KL envelope; use --generator kl".into()));
    }
    let mut cols = vec!["v", "min_divergence", "argmin_p", "bound_value", "holds"];
    if topsoe {
        cols.extend(["topsoe_bound", "topsoe_margin"]);
    }
    let mut s = Section::new("envelope", &cols);
    echo_generator(&mut s, &g, gen);
    s.config("v", v).config("coarse_points", 512).config("golden_tolerance", 1e-10).config("tol", tol);
    s.note(envelope::ENVELOPE_CAVEAT);
    s.note("bound_value = c2 v^2 + c4 v^4 (c4 omitted when not positive)");
    for e in envelope::lower_envelope_many(&g, &vs, EnvelopeSearch::default())? {
        let m = e.min_divergence.value();
        let holds = m >= e.bound_value - tol;
        let mut row = vec![num(e.v), e.min_divergence.to_string(), num(e.argmin_p), num(e.bound_value), holds.to_string()];
        if !holds {
            s.raise(Outcome::Violated);
        }
        if topsoe {
            let b = envelope::topsoe_bound(e.v);
            if m - b < -tol {
                s.raise(Outcome::Violated);
            }
            row.extend([num(b), num(m - b)]);
        }
        s.row(row);
    }
    let mut doc = Document::new("envelope");
    doc.push(s);
    Ok(doc)
}

pub fn sweep_section(t: &envelope::SweepTable, tolerance: f64) -> Section {
    let mut s = Section::new(format!("sweep {} {}", if t.order == 2 { "second" } else { "fourth" }, t.generator), &["v", "p", "divergence", "ratio"]);
    s.config("generator", &t.generator).config("order", t.order);
    s.note(format!("extrapolated limit {} vs expected {} (relative error {})", num(t.limit), num(t.expected), num(t.relative_error())));
    for r in &t.rows {
        s.row(vec![num(r.v), num(r.p), num(r.divergence), num(r.ratio)]);
    }
    if !(t.relative_error() <= tolerance) {
        s.raise(Outcome::Inconclusive);
    }
    s
}

pub const SWEEP_TOLERANCE: f64 = 1e-2;

pub fn sweep(order: SweepOrder, gen: &GeneratorArgs, p: f64, v: &str) -> Result<Document> {
    let g = resolve_generator(gen, "kl")?;
    let vs = parse_values(v)?;
    let t = match order {
        SweepOrder::Second => envelope::tightness_sweep_second(&g, &vs, p)?,
        SweepOrder::Fourth => envelope::tightness_sweep_fourth(&g, &vs)?,
    };
    let mut s = sweep_section(&t, SWEEP_TOLERANCE);
    s.config("v", v);
    if order == SweepOrder::Second {
        s.config("p", p);
    } else {
        s.config("p", "1/2 + f'''(1)/(6 f''(1)) v");
    }
    s.config("limit_tolerance", SWEEP_TOLERANCE);
    let mut doc = Document::new("sweep");
    doc.push(s);
    Ok(doc)
}

pub fn renyi_search_section(alpha: f64) -> Result<Section> {
    let mut s = Section::new("renyi violation search", &["alpha", "outcome", "p", "v", "renyi", "alpha_v2_over_2"]);
    s.config("alpha", alpha).config("v_grid", "0.01:0.5:64:log").config("p_points", 256);
    s.note(format!("V^4 coefficient 1+5a-5a^2 turns negative above {}", num(envelope::renyi_violation_threshold())));
    match envelope::renyi_violation_search(alpha)? {
        RenyiSearch::Witness(w) => {
            s.row(vec![num(alpha), "witness".into(), num(w.p), num(w.v), num(w.renyi), num(w.bound)]);
            s.raise(Outcome::Violated);
        }
        RenyiSearch::None => s.row(vec![num(alpha), "none".into(), String::new(), String::new(), String::new(), String::new()]),
        RenyiSearch::Inconclusive => {
            s.row(vec![num(alpha), "inconclusive".into(), String::new(), String::new(), String::new(), String::new()]);
            s.raise(Outcome::Inconclusive);
        }
    }
    Ok(s)
}

pub fn renyi_fourth_section(alpha: f64, samples: usize, seed: u64) -> Result<Section> {
    let mut sampler = PairSampler::new(seed);
    let pairs: Vec<_> = (0..samples).map(|_| sampler.binary_pair()).collect();
    let label = format!("{samples} random binary pairs, seed {seed}");
    let r = envelope::renyi_fourth_check(alpha, &pairs, &label)?;
    let (k2, k4) = envelope::renyi_fourth_coefficients(alpha);
    let mut s = Section::new("renyi fourth-order", &CERT_COLUMNS);
    s.config("alpha", alpha).config("samples", samples).config("seed", seed);
    s.note(format!("I_alpha >= {} V^2 + {} V^4", num(k2), num(k4)));
    cert_row(&mut s, &r);
    Ok(s)
}

pub fn renyi_cmd(alpha: &str, search: bool, p: Option<&str>, q: Option<&str>, samples: usize, seed: u64) -> Result<Document> {
    let a = parse_number(alpha)?.to_f64();
    let mut doc = Document::new("renyi");
    match (p, q) {
        (Some(p), Some(q)) => {
            let (pp, qq) = (load_distribution(p)?, load_distribution(q)?);
            let v = variational_distance(&pp, &qq)?;
            let mut s = Section::new("renyi", &["alpha", "I_alpha", "I_alpha_direct", "V", "second_bound", "fourth_bound"]);
            s.config("p", format!("{:?}", pp.weights())).config("q", format!("{:?}", qq.weights()));
            let (k2, k4) = envelope::renyi_fourth_coefficients(a);
            let fourth = if a > 0.0 && a < 1.0 { num(k2 * v * v + k4 * v.powi(4)) } else { String::new() };
            s.row(vec![
                num(a),
                renyi(a, &pp, &qq)?.to_string(),
                renyi_direct(a, &pp, &qq)?.to_string(),
                num(v),
                num(k2 * v * v),
                fourth,
            ]);
            doc.push(s);
        }
        (None, None) if search => doc.push(renyi_search_section(a)?),
        (None, None) => doc.push(renyi_fourth_section(a, samples, seed)?),
        _ => return Err(Error::InvalidParameter("--p and --q go together".into())),
    }
    Ok(doc)
}

pub fn figure_hw(gen: &GeneratorArgs, w: &str, grid_spec: &str) -> Result<Document> {
    let g = resolve_generator(gen, "kl")?;
    let grid = Grid::parse_spec(grid_spec)?.refined_near_one(Grid::REFINEMENT_POINTS, Grid::REFINEMENT_HALF_WIDTH);
    let mut doc = Document::new("figure hw");
    for w in parse_values(w)? {
        let prof = certify::h_w_profile(&g, w, &grid)?;
        let mut s = Section::new(format!("h_w w={}", num(w)), &["u", "h"]);
        echo_generator(&mut s, &g, gen);
        s.config("w", num(w)).config("grid", grid.spec());
        let side = if (prof.argmax_u - 1.0).abs() <= certify::ARGMAX_RESOLUTION {
            "at 1"
        } else if prof.argmax_u > 1.0 {
            "greater than 1"
        } else {
            "less than 1"
        };
        s.note(format!(
            "argmax_u = {} ({side}), max = {}, limit at 1 = {}",
            num(prof.argmax_u),
            num(prof.max_value),
            num(prof.limit_at_1)
        ));
        for (u, h) in &prof.samples {
            s.row(vec![num(*u), num(*h)]);
        }
        doc.push(s);
    }
    Ok(doc)
}

pub fn conjecture_section(name: ConjectureName, grid_spec: &str, v: &str) -> Result<Section> {
    let report = match name {
        ConjectureName::Log6 => envelope::conjecture_log6(&Grid::parse_spec(grid_spec)?),
        ConjectureName::Surplus => envelope::conjecture_surplus(&parse_values(v)?)?,
    };
    let (x, y) = match name {
        ConjectureName::Log6 => ("t", "sixth_coefficient_estimate"),
        ConjectureName::Surplus => ("v", "v6_gap_coefficient"),
    };
    let mut s = Section::new(format!("{} {}", report.label, report.name), &["label", x, y]);
    s.config("label", report.label);
    match name {
        ConjectureName::Log6 => s.config("grid", grid_spec),
        ConjectureName::Surplus => s.config("v", v),
    };
    s.note(format!("fitted {} vs target {}", num(report.fitted), num(report.target)));
    if name == ConjectureName::Log6 {
        s.note(format!(
            "grid scan: min margin {}, violation found: {}{}",
            num(report.min_margin),
            report.violation_found,
            report.witness.map(|u| format!(" at u = {}", num(u))).unwrap_or_default()
        ));
    }
    for n in &report.notes {
        s.note(n.clone());
    }
    for (a, b) in &report.rows {
        s.row(vec![report.label.to_string(), num(*a), num(*b)]);
    }
    if report.violation_found {
        s.raise(Outcome::Violated);
    } else if name == ConjectureName::Surplus && (report.fitted - report.target).abs() > 0.1 * report.target {
        s.raise(Outcome::Inconclusive);
    }
    Ok(s)
}

pub fn conjecture(name: ConjectureName, grid_spec: &str, v: &str) -> Result<Document> {
    let mut doc = Document::new("conjecture");
    doc.push(conjecture_section(name, grid_spec, v)?);
    Ok(doc)
}
