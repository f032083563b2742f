//! Machine-readable output: a schema line `valuon-machine <version> <kind>`
//! followed by the kind's line-based body. Every body parses back into the
//! value it was printed from.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::gamma::{GammaTable, HomClassification, InvalidRelation, ValuationMode, ValuationReport};
use crate::linalg::MatrixFile;
use crate::rational::parse_q;
use crate::ring::FiniteRing;
use crate::semiring::TableSemiring;

pub const SCHEMA_VERSION: u32 = 1;

/// A point of a crease or root list, one label per variable.
pub type Point = Vec<String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Machine {
    Ring(FiniteRing),
    RingLaws(Vec<(String, Option<Vec<usize>>)>),
    Gamma(GammaTable),
    Val(ValuationReport),
    Trop(TropOutput),
    Hom(HomClassification),
    Star(StarOutput),
    Ab(AbOutput),
    Cong(CongOutput),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropOutput {
    pub vars: Vec<String>,
    pub trop: String,
    pub degenerate: bool,
    pub crease: Vec<Point>,
    /// Present when roots were asked for, with the roots whose valuation
    /// is not a crease point.
    pub roots: Option<(Vec<Point>, Vec<Point>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UltrametricLine {
    Yes,
    No(usize, usize, usize),
    /// Not a symmetric zero-diagonal distance matrix.
    NotDistance(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarOutput {
    pub closure: MatrixFile,
    /// Input and closure verdicts, for minmax matrices.
    pub ultrametric: Option<(UltrametricLine, UltrametricLine)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbOutput {
    pub ab_gamma_size: usize,
    pub gamma_ab_size: usize,
    pub isomorphic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongOutput {
    pub classes: Vec<Vec<usize>>,
    pub quotient: TableSemiring,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn nums(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// `key: value`, or `key:` alone for an empty value.
fn kv(out: &mut String, key: &str, value: &str) {
    if value.is_empty() {
        let _ = writeln!(out, "{key}:");
    } else {
        let _ = writeln!(out, "{key}: {value}");
    }
}

fn points_text(points: &[Point]) -> String {
    points.iter().map(|p| p.join(", ")).collect::<Vec<_>>().join(" | ")
}

impl UltrametricLine {
    fn text(&self) -> String {
        match self {
            UltrametricLine::Yes => "yes".into(),
            UltrametricLine::No(i, j, k) => format!("no {i} {j} {k}"),
            UltrametricLine::NotDistance(why) => format!("invalid {why}"),
        }
    }

    fn parse(s: &str) -> Result<Self, String> {
        if s == "yes" {
            return Ok(UltrametricLine::Yes);
        }
        if let Some(why) = s.strip_prefix("invalid ") {
            return Ok(UltrametricLine::NotDistance(why.to_string()));
        }
        let w = s
            .strip_prefix("no ")
            .map(parse_nums)
            .transpose()?
            .filter(|w| w.len() == 3)
            .ok_or_else(|| format!("bad ultrametric verdict `{s}`"))?;
        Ok(UltrametricLine::No(w[0], w[1], w[2]))
    }
}

impl Machine {
    pub fn kind(&self) -> &'static str {
        match self {
            Machine::Ring(_) => "ring",
            Machine::RingLaws(_) => "ring-laws",
            Machine::Gamma(_) => "gamma",
            Machine::Val(_) => "val",
            Machine::Trop(_) => "trop",
            Machine::Hom(_) => "hom",
            Machine::Star(_) => "star",
            Machine::Ab(_) => "ab",
            Machine::Cong(_) => "cong",
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("valuon-machine {SCHEMA_VERSION} {}\n", self.kind());
        match self {
            Machine::Ring(r) => out.push_str(&r.to_text()),
            Machine::RingLaws(laws) => {
                for (law, w) in laws {
                    match w {
                        None => writeln!(out, "{law}: yes"),
                        Some(w) => writeln!(out, "{law}: no {}", nums(w)),
                    }
                    .expect("writing to a string");
                }
            }
            Machine::Gamma(t) => out.push_str(&t.to_text()),
            Machine::Val(rep) => {
                let mode = match rep.mode {
                    ValuationMode::Multiplicative => "multiplicative",
                    ValuationMode::Supermultiplicative => "supermultiplicative",
                };
                let _ = writeln!(out, "mode: {mode}");
                for l in rep.lines() {
                    let _ = writeln!(out, "{l}");
                }
            }
            Machine::Trop(t) => {
                kv(&mut out, "vars", &t.vars.join(" "));
                kv(&mut out, "trop", &t.trop);
                kv(&mut out, "degenerate", yes_no(t.degenerate));
                kv(&mut out, "crease", &points_text(&t.crease));
                if let Some((roots, bad)) = &t.roots {
                    kv(&mut out, "roots", &points_text(roots));
                    kv(&mut out, "violations", &points_text(bad));
                }
            }
            Machine::Hom(h) => {
                let _ = writeln!(out, "{h}");
            }
            Machine::Star(s) => {
                out.push_str(&s.closure.to_text());
                if let Some((input, closed)) = &s.ultrametric {
                    let _ = writeln!(out, "input-ultrametric: {}", input.text());
                    let _ = writeln!(out, "closure-ultrametric: {}", closed.text());
                }
            }
            Machine::Ab(a) => {
                let _ = writeln!(out, "{} {} isomorphic: {}", a.ab_gamma_size, a.gamma_ab_size, yes_no(a.isomorphic));
            }
            Machine::Cong(c) => {
                let classes: Vec<String> = c.classes.iter().map(|k| nums(k)).collect();
                let _ = writeln!(out, "classes: {}", classes.join(" | "));
                out.push_str(&c.quotient.to_text());
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let (header, body) = text.split_once('\n').unwrap_or((text, ""));
        let mut words = header.split_whitespace();
        if words.next() != Some("valuon-machine") {
            return Err("missing the `valuon-machine` schema line".into());
        }
        let version = words.next().and_then(|v| v.parse::<u32>().ok());
        if version != Some(SCHEMA_VERSION) {
            return Err(format!("unsupported schema version in `{header}`"));
        }
        let kind = words.next().ok_or("schema line lacks a kind")?;
        let lines: Vec<&str> = body.lines().collect();
        Ok(match kind {
            "ring" => Machine::Ring(FiniteRing::parse(body).map_err(|e| e.to_string())?),
            "ring-laws" => Machine::RingLaws(lines.iter().map(|l| parse_law(l)).collect::<Result<_, _>>()?),
            "gamma" => Machine::Gamma(GammaTable::parse(body).map_err(|e| e.to_string())?),
            "val" => Machine::Val(parse_val(&lines)?),
            "trop" => Machine::Trop(parse_trop(&lines)?),
            "hom" => Machine::Hom(parse_hom(lines.first().copied().unwrap_or_default())?),
            "star" => Machine::Star(parse_star(&lines)?),
            "ab" => Machine::Ab(parse_ab(lines.first().copied().unwrap_or_default())?),
            "cong" => Machine::Cong(parse_cong(body)?),
            other => return Err(format!("unknown kind `{other}`")),
        })
    }
}

fn parse_nums(s: &str) -> Result<Vec<usize>, String> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| format!("bad index `{t}`")))
        .collect()
}

fn parse_yes_no(s: &str) -> Result<bool, String> {
    match s {
        "yes" => Ok(true),
        "no" => Ok(false),
        _ => Err(format!("expected yes or no, got `{s}`")),
    }
}

/// The value of a `key: value` line.
fn field<'a>(line: Option<&&'a str>, key: &str) -> Result<&'a str, String> {
    let line = line.ok_or_else(|| format!("missing `{key}:` line"))?;
    line.strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .map(|r| r.strip_prefix(' ').unwrap_or(r))
        .ok_or_else(|| format!("expected `{key}:`, got `{line}`"))
}

fn parse_law(line: &str) -> Result<(String, Option<Vec<usize>>), String> {
    let (law, verdict) = line.rsplit_once(": ").ok_or_else(|| format!("bad law line `{line}`"))?;
    let w = match verdict {
        "yes" => None,
        v => Some(parse_nums(v.strip_prefix("no ").ok_or_else(|| format!("bad verdict `{v}`"))?)?),
    };
    Ok((law.to_string(), w))
}

/// Splits `(a, b)` at its top-level comma.
fn split_pair(s: &str) -> Result<(String, String), String> {
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("expected a pair, got `{s}`"))?;
    let mut depth = 0i32;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 && inner[i + 1..].starts_with(' ') => {
                return Ok((inner[..i].to_string(), inner[i + 2..].to_string()));
            }
            _ => {}
        }
    }
    Err(format!("expected a pair, got `{s}`"))
}

fn parse_val(lines: &[&str]) -> Result<ValuationReport, String> {
    let mut it = lines.iter();
    let mode = match field(it.next(), "mode")? {
        "multiplicative" => ValuationMode::Multiplicative,
        "supermultiplicative" => ValuationMode::Supermultiplicative,
        m => return Err(format!("unknown mode `{m}`")),
    };
    let single = |v: &str| -> Result<Option<String>, String> {
        match v {
            "yes" => Ok(None),
            v => v
                .strip_prefix("no at ")
                .map(|w| Some(w.to_string()))
                .ok_or_else(|| format!("bad verdict `{v}`")),
        }
    };
    let pair = |v: &str| -> Result<Option<(String, String)>, String> {
        match v {
            "yes" => Ok(None),
            v => split_pair(v.strip_prefix("no at ").ok_or_else(|| format!("bad verdict `{v}`"))?).map(Some),
        }
    };
    let report = ValuationReport {
        mode,
        unital: single(field(it.next(), "unital")?)?,
        multiplicative: pair(field(it.next(), "multiplicative")?)?,
        superadditive: pair(field(it.next(), "superadditive")?)?,
        supermultiplicative: pair(field(it.next(), "supermultiplicative")?)?,
        nondegenerate: single(field(it.next(), "nondegenerate")?)?,
    };
    if parse_yes_no(field(it.next(), "valuation")?)? != report.is_valuation() {
        return Err("overall verdict disagrees with the axiom lines".into());
    }
    Ok(report)
}

fn parse_points(s: &str) -> Vec<Point> {
    if s.is_empty() {
        return Vec::new();
    }
    s.split(" | ").map(|p| p.split(", ").map(str::to_string).collect()).collect()
}

fn parse_trop(lines: &[&str]) -> Result<TropOutput, String> {
    let mut it = lines.iter();
    let vars = field(it.next(), "vars")?.split_whitespace().map(str::to_string).collect();
    let trop = field(it.next(), "trop")?.to_string();
    let degenerate = parse_yes_no(field(it.next(), "degenerate")?)?;
    let crease = parse_points(field(it.next(), "crease")?);
    let roots = match it.next() {
        None => None,
        line => {
            let roots = parse_points(field(line, "roots")?);
            Some((roots, parse_points(field(it.next(), "violations")?)))
        }
    };
    Ok(TropOutput {
        vars,
        trop,
        degenerate,
        crease,
        roots,
    })
}

pub(crate) fn parse_hom(line: &str) -> Result<HomClassification, String> {
    let bad = || format!("bad classification `{line}`");
    if line == "trivial" {
        return Ok(HomClassification::Trivial);
    }
    if let Some(rest) = line.strip_prefix("p-adic p=") {
        let (p, scale) = rest.split_once(" scale=").ok_or_else(bad)?;
        return Ok(HomClassification::PAdic {
            p: p.parse().map_err(|_| bad())?,
            scale: parse_q(scale).map_err(|_| bad())?,
        });
    }
    let rel = line
        .strip_prefix("invalid: min(c_")
        .and_then(|r| r.strip_suffix(") must be 0"))
        .ok_or_else(bad)?;
    let (p, q) = rel.split_once(',').ok_or_else(bad)?;
    let p: u64 = p.parse().map_err(|_| bad())?;
    Ok(HomClassification::Invalid(match q {
        "0" => InvalidRelation::Negative(p),
        q => InvalidRelation::TwoPrimes(p, q.strip_prefix("c_").and_then(|q| q.parse().ok()).ok_or_else(bad)?),
    }))
}

fn parse_star(lines: &[&str]) -> Result<StarOutput, String> {
    let mut verdicts = BTreeMap::new();
    let mut matrix = String::new();
    for l in lines {
        match l.split_once(": ") {
            Some((k @ ("input-ultrametric" | "closure-ultrametric"), v)) => {
                verdicts.insert(k, UltrametricLine::parse(v)?);
            }
            _ => {
                matrix.push_str(l);
                matrix.push('\n');
            }
        }
    }
    let closure = MatrixFile::parse(&matrix).map_err(|e| e.to_string())?;
    let ultrametric = match (verdicts.remove("input-ultrametric"), verdicts.remove("closure-ultrametric")) {
        (Some(a), Some(b)) => Some((a, b)),
        (None, None) => None,
        _ => return Err("ultrametric verdicts come in pairs".into()),
    };
    Ok(StarOutput { closure, ultrametric })
}

fn parse_ab(line: &str) -> Result<AbOutput, String> {
    let bad = || format!("bad correspondence line `{line}`");
    let (sizes, iso) = line.split_once(" isomorphic: ").ok_or_else(bad)?;
    let (a, b) = sizes.split_once(' ').ok_or_else(bad)?;
    Ok(AbOutput {
        ab_gamma_size: a.parse().map_err(|_| bad())?,
        gamma_ab_size: b.parse().map_err(|_| bad())?,
        isomorphic: parse_yes_no(iso)?,
    })
}

fn parse_cong(body: &str) -> Result<CongOutput, String> {
    let (first, rest) = body.split_once('\n').unwrap_or((body, ""));
    let classes = field(Some(&first), "classes")?
        .split(" | ")
        .map(parse_nums)
        .collect::<Result<_, _>>()?;
    let quotient = TableSemiring::parse(rest).map_err(|e| e.to_string())?;
    Ok(CongOutput { classes, quotient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn hom_lines_round_trip() {
        for h in [
            HomClassification::Trivial,
            HomClassification::PAdic { p: 3, scale: q(1, 2) },
            HomClassification::Invalid(InvalidRelation::TwoPrimes(2, 5)),
            HomClassification::Invalid(InvalidRelation::Negative(7)),
        ] {
            assert_eq!(parse_hom(&h.to_string()), Ok(h.clone()));
            let m = Machine::Hom(h);
            assert_eq!(Machine::parse(&m.to_text()), Ok(m));
        }
    }

    #[test]
    fn pairs_split_at_top_level() {
        assert_eq!(split_pair("([1, 2], x)"), Ok(("[1, 2]".into(), "x".into())));
        assert_eq!(split_pair("((1,0), (0,1))"), Ok(("(1,0)".into(), "(0,1)".into())));
        assert!(split_pair("x").is_err());
    }

    #[test]
    fn schema_line_is_checked() {
        assert!(Machine::parse("valuon-machine 2 hom\ntrivial\n").is_err());
        assert!(Machine::parse("hom\ntrivial\n").is_err());
        assert!(Machine::parse("valuon-machine 1 nope\n").is_err());
    }

    #[test]
    fn trop_round_trip() {
        let t = TropOutput {
            vars: vec!["z".into()],
            trop: "x_j".into(),
            degenerate: false,
            crease: vec![],
            roots: Some((vec![vec!["1".into()]], vec![])),
        };
        let m = Machine::Trop(t);
        assert_eq!(Machine::parse(&m.to_text()), Ok(m));
    }
}
