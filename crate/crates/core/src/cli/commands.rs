use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::machine::{AbOutput, CongOutput, Machine, Point, StarOutput, TropOutput, UltrametricLine};
use super::{AbCmd, CliError, CongCmd, GammaCmd, HomCmd, Report, RingCmd, RingSource, StarCmd, TropCmd, ValCmd};
use crate::gamma::{
    abelianization_correspondence, check_valuation, classify_trop_hom, enumerate_gamma, ideal_semiring, nu_padic,
    solution_set_semiring, GammaError, ValuationMode, ValuationReport, ValuationSample,
};
use crate::linalg::{
    is_ultrametric, least_fixed_point, LinalgError, MatrixFile, StarSemiring, TropMatrix, UltrametricCandidate,
};
use crate::poly::{
    crease_points, parse_expression, power_domain, random_expression, root_crease_check, solution_set, tropicalize,
    Coefficients, Expression, ExpressionRing, PolyError,
};
use crate::rational::{is_prime, parse_q, Q};
use crate::ring::{FiniteRing, Rationals, RingError, RingSpec, RingTables};
use crate::semiring::{
    congruence_closure_indices, quotient_semiring, seed_from_env, seeded_rng, Boolean, MinMax, SemiringError,
    TableSemiring, Tropical, TropicalValue,
};

/// Letters tried as variables when `--vars` is not given.
const DEFAULT_VARS: [&str; 7] = ["x", "y", "z", "w", "t", "u", "v"];

/// Finite exponents searched for p-adic crease points, besides ∞.
const PADIC_WINDOW: std::ops::RangeInclusive<i64> = -3..=3;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn ring_err(e: RingError) -> CliError {
    match e {
        RingError::Format(m) => CliError::Usage(m),
        e => CliError::Domain(e.to_string()),
    }
}

fn gamma_err(e: GammaError) -> CliError {
    match e {
        GammaError::Ring(r) => ring_err(r),
        GammaError::Argument(m) => CliError::Usage(m),
        e => CliError::Domain(e.to_string()),
    }
}

fn poly_err(e: PolyError) -> CliError {
    match e {
        PolyError::TooLarge { .. } => CliError::Domain(e.to_string()),
        e => CliError::Usage(e.to_string()),
    }
}

fn linalg_err(e: LinalgError) -> CliError {
    match e {
        LinalgError::Format(_) | LinalgError::Dimension(..) => CliError::Usage(e.to_string()),
        e => CliError::Domain(e.to_string()),
    }
}

fn semiring_err(e: SemiringError) -> CliError {
    match e {
        SemiringError::Format(m) => CliError::Usage(m),
        e => CliError::Domain(e.to_string()),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn descriptor(spec: &str) -> Result<FiniteRing, CliError> {
    RingSpec::parse(spec).and_then(|s| s.build()).map_err(ring_err)
}

impl RingSource {
    fn count(&self) -> usize {
        [
            self.spec.is_some(),
            self.file.is_some(),
            self.cyclic.is_some(),
            self.field.is_some(),
            self.upper_triangular.is_some(),
            self.matrix.is_some(),
        ]
        .iter()
        .filter(|&&b| b)
        .count()
    }

    /// The ring file text, when the ring comes from a file.
    fn file_text(&self) -> Result<Option<String>, CliError> {
        self.file.as_deref().map(read).transpose()
    }

    fn resolve(&self) -> Result<Option<FiniteRing>, CliError> {
        if self.count() > 1 {
            return Err(usage("give exactly one ring source"));
        }
        let ring = if let Some(spec) = &self.spec {
            descriptor(spec)?
        } else if let Some(text) = self.file_text()? {
            FiniteRing::parse(&text).map_err(ring_err)?
        } else if let Some(n) = self.cyclic {
            FiniteRing::cyclic(n).map_err(ring_err)?
        } else if let Some(q) = self.field {
            FiniteRing::builtin_field(q).map_err(ring_err)?
        } else if let Some(n) = self.upper_triangular {
            FiniteRing::upper_triangular(&descriptor(&self.base)?, n).map_err(ring_err)?
        } else if let Some(n) = self.matrix {
            FiniteRing::matrix_ring(&descriptor(&self.base)?, n).map_err(ring_err)?
        } else {
            return Ok(None);
        };
        Ok(Some(ring))
    }

    fn require(&self) -> Result<FiniteRing, CliError> {
        self.resolve()?.ok_or_else(|| usage("no ring given"))
    }
}

pub(super) fn ring(cmd: &RingCmd) -> Result<Report, CliError> {
    if !cmd.validate {
        let r = cmd.source.require()?;
        return Ok(Report::ok(r.to_text(), Machine::Ring(r)));
    }
    let tables = match cmd.source.file_text()? {
        Some(text) if cmd.source.count() == 1 => RingTables::parse(&text).map_err(ring_err)?,
        _ => RingTables::parse(&cmd.source.require()?.to_text()).map_err(ring_err)?,
    };
    let verdicts = tables.law_verdicts();
    let name = |i: &usize| tables.labels.get(*i).cloned().unwrap_or_else(|| i.to_string());
    let mut human = String::new();
    for (law, w) in &verdicts {
        match w {
            None => writeln!(human, "{law}: yes"),
            Some(w) => writeln!(human, "{law}: no at ({})", w.iter().map(name).collect::<Vec<_>>().join(", ")),
        }
        .expect("writing to a string");
    }
    let failure = verdicts.iter().find(|(_, w)| w.is_some()).map(|(law, _)| format!("ring law `{law}` fails"));
    Ok(Report {
        human,
        machine: Machine::RingLaws(verdicts.into_iter().map(|(l, w)| (l.to_string(), w)).collect()),
        failure,
    })
}

pub(super) fn gamma(cmd: &GammaCmd) -> Result<Report, CliError> {
    let r = cmd.source.require()?;
    let g = enumerate_gamma(&r).map_err(gamma_err)?;
    let human = if cmd.singletons { g.singleton_table_text() } else { g.human_text() };
    Ok(Report::ok(human, Machine::Gamma(g.table())))
}

fn valuation_report(report: ValuationReport) -> Report {
    let mut human = String::new();
    for l in report.lines() {
        let _ = writeln!(human, "{l}");
    }
    let failure = (!report.is_valuation()).then(|| "the valuation axioms fail".to_string());
    Report {
        human,
        machine: Machine::Val(report),
        failure,
    }
}

/// The prime of a `padic:<p>` selector.
fn padic_prime(selector: &str) -> Result<Option<u64>, CliError> {
    let Some(p) = selector.strip_prefix("padic:") else { return Ok(None) };
    let p: u64 = p.parse().map_err(|_| usage(format!("bad prime in `{selector}`")))?;
    if !is_prime(p) {
        return Err(usage(format!("{p} is not prime")));
    }
    Ok(Some(p))
}

pub(super) fn val(cmd: &ValCmd) -> Result<Report, CliError> {
    if let Some(p) = padic_prime(&cmd.valuation)? {
        if cmd.source.count() > 0 {
            return Err(usage("p-adic valuations are checked on the rationals; drop the ring"));
        }
        let sample = ValuationSample::sampled(&Rationals, seed_from_env(), cmd.cases);
        let nu = |x: &Q| nu_padic(p, x).expect("p is prime");
        return Ok(valuation_report(check_valuation(
            &Rationals,
            &Tropical,
            nu,
            &sample,
            ValuationMode::Multiplicative,
        )));
    }
    let r = cmd.source.require()?;
    let all: Vec<usize> = (0..r.size()).collect();
    let report = match cmd.valuation.as_str() {
        "universal" => {
            let g = enumerate_gamma(&r).map_err(gamma_err)?;
            let sample = ValuationSample::exhaustive(all);
            check_valuation(&r, &g, |a| g.nu(*a), &sample, ValuationMode::Multiplicative)
        }
        "ideal" => {
            let s = ideal_semiring(&r);
            let sample = ValuationSample::exhaustive(all);
            check_valuation(&r, &s, |a| s.nu(*a), &sample, ValuationMode::Multiplicative)
        }
        "solution" => {
            let vars = vec!["x".to_string()];
            let ring = ExpressionRing::new(&r, vars.clone()).expect("finite rings have negation");
            let pool: Vec<usize> = all.iter().copied().filter(|&a| a != r.zero_index()).collect();
            let mut rng = seeded_rng(seed_from_env());
            let mut draw = || random_expression(&mut rng, &r, &pool, &vars, 3, 2);
            let pairs: Vec<_> = (0..cmd.cases).map(|_| (draw(), draw())).collect();
            let elements = pairs.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
            let sample = ValuationSample { elements, pairs };
            let s = solution_set_semiring(r.size());
            check_valuation(
                &ring,
                &s,
                |f| solution_set(&r, f, &all).expect("one variable"),
                &sample,
                ValuationMode::Multiplicative,
            )
        }
        other => {
            return Err(usage(format!(
                "unknown valuation `{other}`; expected universal, ideal, solution or padic:<p>"
            )))
        }
    };
    Ok(valuation_report(report))
}

fn default_vars<C: Coefficients>(c: &C) -> Vec<String> {
    DEFAULT_VARS
        .iter()
        .filter(|v| c.element(v).is_none() && c.integer(v).is_none())
        .map(|v| v.to_string())
        .collect()
}

fn parse_input<C: Coefficients>(
    c: &C,
    text: &str,
    vars: &Option<Vec<String>>,
) -> Result<Expression<C::Elem>, CliError> {
    match vars {
        Some(v) => parse_expression(text, c, v, false).map_err(poly_err),
        None => Ok(parse_expression(text, c, &default_vars(c), false).map_err(poly_err)?.drop_unused_vars()),
    }
}

fn trop_output<C, S, F>(
    c: &C,
    s: &S,
    nu: F,
    f: &Expression<C::Elem>,
    domain: &[S::Elem],
    root_domain: Option<&[C::Elem]>,
) -> Result<TropOutput, CliError>
where
    C: Coefficients,
    S: Coefficients,
    F: Fn(&C::Elem) -> S::Elem,
{
    let t = tropicalize(f, s, &nu);
    let points = power_domain(domain, f.vars().len()).map_err(poly_err)?;
    let crease = crease_points(s, &t.expr, &points).map_err(poly_err)?;
    let in_s = |p: &Vec<S::Elem>| -> Point { p.iter().map(|x| s.label(x)).collect() };
    let in_c = |p: &Vec<C::Elem>| -> Point { p.iter().map(|x| c.label(x)).collect() };
    let roots = match root_domain {
        Some(elems) => {
            let rep = root_crease_check(c, s, f, &nu, elems).map_err(poly_err)?;
            Some((rep.roots.iter().map(in_c).collect(), rep.violations.iter().map(in_c).collect()))
        }
        None => None,
    };
    Ok(TropOutput {
        vars: f.vars().to_vec(),
        trop: t.expr.to_text(s),
        degenerate: t.degenerate,
        crease: crease.iter().map(in_s).collect(),
        roots,
    })
}

fn point_list(points: &[Point]) -> String {
    points
        .iter()
        .map(|p| if p.len() == 1 { p[0].clone() } else { format!("({})", p.join(", ")) })
        .collect::<Vec<_>>()
        .join(", ")
}

fn line(out: &mut String, key: &str, value: &str) {
    if value.is_empty() {
        let _ = writeln!(out, "{key}:");
    } else {
        let _ = writeln!(out, "{key}: {value}");
    }
}

fn trop_human(t: &TropOutput) -> String {
    let mut out = String::new();
    line(&mut out, "tropicalization", &t.trop);
    if t.degenerate {
        line(&mut out, "degenerate", "yes");
    }
    line(&mut out, "crease points", &point_list(&t.crease));
    if let Some((roots, bad)) = &t.roots {
        line(&mut out, "roots", &point_list(roots));
        if bad.is_empty() {
            line(&mut out, "roots crease", "yes");
        } else {
            line(&mut out, "roots crease", &format!("no at {}", point_list(bad)));
        }
    }
    out
}

pub(super) fn trop(cmd: &TropCmd) -> Result<Report, CliError> {
    let text = match (&cmd.expr, &cmd.expr_file) {
        (Some(e), None) => e.clone(),
        (None, Some(path)) => read(path)?.trim().to_string(),
        _ => return Err(usage("give the expression either inline or with --expr-file")),
    };
    let ring = match (&cmd.ring, &cmd.ring_file) {
        (Some(spec), None) => Some(descriptor(spec)?),
        (None, Some(path)) => Some(FiniteRing::parse(&read(path)?).map_err(ring_err)?),
        (None, None) => None,
        _ => return Err(usage("give at most one of --ring and --ring-file")),
    };
    let out = if let Some(p) = padic_prime(&cmd.valuation)? {
        if ring.is_some() || cmd.roots || cmd.full_gamma {
            return Err(usage("p-adic tropicalization takes rational expressions, without --ring, --roots or --full-gamma"));
        }
        let f = parse_input(&Rationals, &text, &cmd.vars)?;
        let domain: Vec<TropicalValue> =
            PADIC_WINDOW.map(TropicalValue::int).chain([TropicalValue::Infinity]).collect();
        trop_output(&Rationals, &Tropical, |x| nu_padic(p, x).expect("p is prime"), &f, &domain, None)?
    } else if cmd.valuation == "universal" {
        let r = ring.ok_or_else(|| usage("the universal valuation needs --ring or --ring-file"))?;
        let g = enumerate_gamma(&r).map_err(gamma_err)?;
        let f = parse_input(&r, &text, &cmd.vars)?;
        let elems = r.display_order();
        let domain: Vec<usize> = if cmd.full_gamma {
            (0..g.size()).collect()
        } else {
            let mut d: Vec<usize> = Vec::new();
            for &a in &elems {
                let k = g.nu_index(a);
                if !d.contains(&k) {
                    d.push(k);
                }
            }
            d
        };
        trop_output(&r, &g, |a| g.nu_index(*a), &f, &domain, cmd.roots.then_some(elems.as_slice()))?
    } else {
        return Err(usage(format!("unknown valuation `{}`; expected universal or padic:<p>", cmd.valuation)));
    };
    let failure = match &out.roots {
        Some((_, bad)) if !bad.is_empty() => Some("some roots do not valuate to crease points".to_string()),
        _ => None,
    };
    Ok(Report {
        human: trop_human(&out),
        machine: Machine::Trop(out),
        failure,
    })
}

pub(super) fn hom(cmd: &HomCmd) -> Result<Report, CliError> {
    let mut assignment = BTreeMap::new();
    for a in &cmd.assignments {
        let (p, c) = a.split_once('=').ok_or_else(|| usage(format!("expected `p=c`, got `{a}`")))?;
        let p: u64 = p.trim().parse().map_err(|_| usage(format!("bad prime `{p}`")))?;
        let c = parse_q(c.trim()).map_err(|e| usage(format!("bad value `{c}`: {e}")))?;
        if assignment.insert(p, c).is_some() {
            return Err(usage(format!("prime {p} is assigned twice")));
        }
    }
    let h = classify_trop_hom(&assignment).map_err(|e| usage(e.to_string()))?;
    Ok(Report::ok(format!("{h}\n"), Machine::Hom(h)))
}

fn closure<S: StarSemiring>(s: &S, m: &TropMatrix<S::Elem>) -> Result<TropMatrix<S::Elem>, CliError> {
    least_fixed_point(s, m).map_err(linalg_err)
}

fn ultrametric_line(m: &TropMatrix<TropicalValue>) -> UltrametricLine {
    match UltrametricCandidate::new(m.clone()) {
        Err(e) => UltrametricLine::NotDistance(e.to_string()),
        Ok(d) => match is_ultrametric(&d).witness {
            None => UltrametricLine::Yes,
            Some((i, j, k)) => UltrametricLine::No(i, j, k),
        },
    }
}

fn ultrametric_human(which: &str, v: &UltrametricLine) -> String {
    match v {
        UltrametricLine::Yes => format!("{which} ultrametric: yes\n"),
        UltrametricLine::No(i, j, k) => format!("{which} ultrametric: no, witness ({i}, {j}, {k})\n"),
        UltrametricLine::NotDistance(why) => format!("{which} ultrametric: no, not a distance matrix ({why})\n"),
    }
}

pub(super) fn star(cmd: &StarCmd) -> Result<Report, CliError> {
    let input = MatrixFile::parse(&read(&cmd.file)?).map_err(linalg_err)?;
    let out = match &input {
        MatrixFile::MinMax(m) => {
            let x = closure(&MinMax, m)?;
            let verdicts = (ultrametric_line(m), ultrametric_line(&x));
            StarOutput {
                closure: MatrixFile::MinMax(x),
                ultrametric: Some(verdicts),
            }
        }
        MatrixFile::Tropical(m) => StarOutput {
            closure: MatrixFile::Tropical(closure(&Tropical, m)?),
            ultrametric: None,
        },
        MatrixFile::Boolean(m) => StarOutput {
            closure: MatrixFile::Boolean(closure(&Boolean, m)?),
            ultrametric: None,
        },
    };
    let mut human = out.closure.to_text();
    if let Some((a, b)) = &out.ultrametric {
        human.push_str(&ultrametric_human("input", a));
        human.push_str(&ultrametric_human("closure", b));
    }
    Ok(Report::ok(human, Machine::Star(out)))
}

pub(super) fn ab(cmd: &AbCmd) -> Result<Report, CliError> {
    let r = cmd.source.require()?;
    let rep = abelianization_correspondence(&r).map_err(gamma_err)?;
    let out = AbOutput {
        ab_gamma_size: rep.ab_gamma_size,
        gamma_ab_size: rep.gamma_ab_size,
        isomorphic: rep.isomorphic,
    };
    Ok(Report {
        human: format!("{}\n", rep.line()),
        machine: Machine::Ab(out),
        failure: rep.failure,
    })
}

fn element_index(t: &TableSemiring, token: &str) -> Result<usize, CliError> {
    let token = token.trim();
    t.labels()
        .iter()
        .position(|l| l == token)
        .or_else(|| token.parse().ok().filter(|&i| i < t.size()))
        .ok_or_else(|| usage(format!("no element `{token}`")))
}

pub(super) fn cong(cmd: &CongCmd) -> Result<Report, CliError> {
    let t = TableSemiring::parse(&read(&cmd.file)?).map_err(semiring_err)?;
    let mut pairs = Vec::with_capacity(cmd.pairs.len());
    for p in &cmd.pairs {
        let (a, b) = p.split_once('=').ok_or_else(|| usage(format!("expected `a=b`, got `{p}`")))?;
        pairs.push((element_index(&t, a)?, element_index(&t, b)?));
    }
    let c = congruence_closure_indices(&t, &pairs);
    let quotient = quotient_semiring(&t, &c).map_err(semiring_err)?;
    let classes = c.classes();
    let mut human = format!("classes: {}\n", classes.len());
    for k in &classes {
        let names: Vec<&str> = k.iter().map(|&i| t.labels()[i].as_str()).collect();
        let _ = writeln!(human, "{{{}}}", names.join(", "));
    }
    human.push_str("quotient:\n");
    human.push_str(&quotient.to_text());
    Ok(Report::ok(human, Machine::Cong(CongOutput { classes, quotient })))
}
