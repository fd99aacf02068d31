//! Serialization and display of PBW vectors and series.
//!
//! Rationals are written as `"p/q"` strings (or `"p"` for integers). A
//! coefficient is a list of `{"lambda": [[symbol, power], …], "value": "p/q"}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pbw::{GammaIndex, PBWVector};
use crate::polyseries::{Monomial, SeriesElement};
use crate::scalar::{parse_rational, Affine, LambdaPoly};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    Json,
    Latex,
    #[default]
    Text,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CoefficientTermJson {
    pub lambda: Vec<(usize, u32)>,
    pub value: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct PbwTermJson {
    pub index: Vec<(usize, usize, u32)>,
    pub coeff: Vec<CoefficientTermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ExponentJson {
    pub constant: String,
    pub linear: Vec<(usize, String)>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SeriesTermJson {
    pub off: Vec<(usize, usize, u32)>,
    pub sub: Vec<(usize, ExponentJson)>,
    pub coeff: Vec<CoefficientTermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SeriesJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
    pub terms: Vec<SeriesTermJson>,
}

fn parse_error(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn coefficient_to_json(c: &LambdaPoly) -> Vec<CoefficientTermJson> {
    c.terms()
        .map(|(exps, value)| CoefficientTermJson {
            lambda: exps
                .iter()
                .enumerate()
                .filter(|&(_, &e)| e > 0)
                .map(|(i, &e)| (i + 1, e))
                .collect(),
            value: value.to_string(),
        })
        .collect()
}

pub fn coefficient_from_json(terms: &[CoefficientTermJson], n: usize) -> Result<LambdaPoly> {
    let mut poly = LambdaPoly::zero();
    for term in terms {
        let mut exps = vec![0u32; n.saturating_sub(1)];
        for &(symbol, power) in &term.lambda {
            if symbol == 0 || symbol >= n {
                return Err(parse_error(format!("symbol l{symbol} outside 1..{}", n - 1)));
            }
            exps[symbol - 1] += power;
        }
        poly.add_term(exps, parse_rational(&term.value)?);
    }
    Ok(poly)
}

pub fn pbw_to_json_value(v: &PBWVector) -> Vec<PbwTermJson> {
    v.sorted_terms()
        .into_iter()
        .map(|(a, c)| PbwTermJson {
            index: a.entries().map(|((i, j), e)| (i, j, e)).collect(),
            coeff: coefficient_to_json(c),
        })
        .collect()
}

/// A JSON array with one compact element per line.
pub fn json_lines<T: Serialize>(items: &[T]) -> String {
    if items.is_empty() {
        return "[]".into();
    }
    let lines: Vec<String> = items
        .iter()
        .map(|t| format!("  {}", serde_json::to_string(t).expect("plain data serializes")))
        .collect();
    format!("[\n{}\n]", lines.join(",\n"))
}

pub fn pbw_to_json(v: &PBWVector) -> String {
    json_lines(&pbw_to_json_value(v))
}

/// Reads a PBW vector of `sl(n)` from its JSON form.
pub fn pbw_from_json(text: &str, n: usize) -> Result<PBWVector> {
    let terms: Vec<PbwTermJson> = serde_json::from_str(text).map_err(|e| parse_error(e.to_string()))?;
    let mut v = PBWVector::zero(n);
    for term in terms {
        let mut a = GammaIndex::zero();
        for (i, j) in term.index.iter().map(|&(i, j, _)| (i, j)) {
            if j == 0 || j >= i || i > n {
                return Err(parse_error(format!("E_{{{i},{j}}} is not a lowering generator of sl({n})")));
            }
        }
        for &(i, j, e) in &term.index {
            a.add(i, j, e);
        }
        v.add_term(a, coefficient_from_json(&term.coeff, n)?);
    }
    Ok(v)
}

fn exponent_to_json(e: &Affine) -> ExponentJson {
    ExponentJson {
        constant: e.constant_part().to_string(),
        linear: e.linear_part().iter().map(|(&i, c)| (i, c.to_string())).collect(),
    }
}

fn exponent_from_json(e: &ExponentJson, n: usize) -> Result<Affine> {
    let mut linear = Vec::new();
    for (symbol, c) in &e.linear {
        if *symbol == 0 || *symbol >= n {
            return Err(parse_error(format!("symbol l{symbol} outside 1..{}", n - 1)));
        }
        linear.push((*symbol, parse_rational(c)?));
    }
    Ok(Affine::new(parse_rational(&e.constant)?, linear))
}

fn sorted_series_terms(f: &SeriesElement) -> Vec<(&Monomial, &LambdaPoly)> {
    let mut terms: Vec<_> = f.terms().collect();
    terms.sort_by(|a, b| a.0.off_degree().cmp(&b.0.off_degree()).then_with(|| a.0.cmp(b.0)));
    terms
}

pub fn series_to_json_value(f: &SeriesElement, complete: Option<bool>) -> SeriesJson {
    SeriesJson {
        n: f.n(),
        complete,
        terms: sorted_series_terms(f)
            .into_iter()
            .map(|(m, c)| SeriesTermJson {
                off: m.off_exponents().iter().map(|(&(i, j), &e)| (i, j, e)).collect(),
                sub: m.sub_exponents().iter().map(|(&i, e)| (i, exponent_to_json(e))).collect(),
                coeff: coefficient_to_json(c),
            })
            .collect(),
    }
}

pub fn series_to_json(f: &SeriesElement, complete: Option<bool>) -> String {
    let value = series_to_json_value(f, complete);
    let flag = match value.complete {
        Some(c) => format!("\"complete\": {c}, "),
        None => String::new(),
    };
    format!("{{\"n\": {}, {flag}\"terms\": {}}}", value.n, json_lines(&value.terms))
}

/// Reads a series and its optional completeness flag.
pub fn series_from_json(text: &str) -> Result<(SeriesElement, Option<bool>)> {
    let parsed: SeriesJson = serde_json::from_str(text).map_err(|e| parse_error(e.to_string()))?;
    let n = parsed.n;
    if n < 2 {
        return Err(parse_error("n must be at least 2"));
    }
    let mut f = SeriesElement::zero(n);
    for term in &parsed.terms {
        let mut m = Monomial::one();
        for &(i, j, e) in &term.off {
            if j == 0 || j + 1 >= i || i > n {
                return Err(parse_error(format!("x_{{{i},{j}}} is not an off-subdiagonal variable")));
            }
            for _ in 0..e {
                m = m.times_var(i, j);
            }
        }
        for (i, e) in &term.sub {
            if *i == 0 || *i >= n {
                return Err(parse_error(format!("x_{{{},{i}}} outside sl({n})", i + 1)));
            }
            m = m.times_sub_power(*i, &exponent_from_json(e, n)?);
        }
        f.add_term(m, coefficient_from_json(&term.coeff, n)?);
    }
    Ok((f, parsed.complete))
}

/// Joins `coefficient · body` terms into a signed sum.
fn join_terms(parts: Vec<(String, String)>, render_coeff: impl Fn(&str, bool) -> String) -> String {
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (coeff, body)) in parts.into_iter().enumerate() {
        let compound = coeff.contains(" + ") || coeff.contains(" - ");
        let (negative, magnitude) = match coeff.strip_prefix('-') {
            Some(rest) if !compound => (true, rest.to_string()),
            _ => (false, coeff),
        };
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if body.is_empty() {
            out.push_str(&magnitude);
        } else if magnitude == "1" {
            out.push_str(&body);
        } else {
            out.push_str(&render_coeff(&magnitude, compound));
            out.push_str(&body);
        }
    }
    out
}

fn text_coeff(c: &str, compound: bool) -> String {
    if compound {
        format!("({c}) ")
    } else {
        format!("{c} ")
    }
}

fn latex_coeff(c: &str, compound: bool) -> String {
    if compound {
        format!("\\left({c}\\right)")
    } else {
        c.to_string()
    }
}

fn pbw_body_text(a: &GammaIndex) -> String {
    let mut parts: Vec<String> = a
        .entries()
        .map(|((i, j), e)| if e == 1 { format!("E{i}{j}") } else { format!("E{i}{j}^{e}") })
        .collect();
    parts.push("v".into());
    parts.join(" ")
}

fn pbw_body_latex(a: &GammaIndex) -> String {
    let mut s: String = a
        .entries()
        .map(|((i, j), e)| if e == 1 { format!("E_{{{i},{j}}}") } else { format!("E_{{{i},{j}}}^{{{e}}}") })
        .collect();
    s.push_str("v_\\lambda");
    s
}

pub fn pbw_to_text(v: &PBWVector) -> String {
    let parts = v
        .sorted_terms()
        .into_iter()
        .map(|(a, c)| (c.to_string(), pbw_body_text(a)))
        .collect();
    join_terms(parts, text_coeff)
}

pub fn pbw_to_latex(v: &PBWVector) -> String {
    let parts = v
        .sorted_terms()
        .into_iter()
        .map(|(a, c)| (c.to_latex(), pbw_body_latex(a)))
        .collect();
    join_terms(parts, latex_coeff)
}

fn series_body_text(m: &Monomial) -> String {
    let mut factors = Vec::new();
    for (i, e) in m.sub_exponents() {
        let name = format!("x{}{}", i + 1, i);
        factors.push(match e.as_natural() {
            Some(1) => name,
            Some(k) => format!("{name}^{k}"),
            None => format!("{name}^({e})"),
        });
    }
    for (&(i, j), &e) in m.off_exponents() {
        factors.push(if e == 1 { format!("x{i}{j}") } else { format!("x{i}{j}^{e}") });
    }
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join(" ")
    }
}

fn series_body_latex(m: &Monomial) -> String {
    let mut s = String::new();
    for (i, e) in m.sub_exponents() {
        s.push_str(&format!("x_{{{},{i}}}", i + 1));
        if e.as_natural() != Some(1) {
            s.push_str(&format!("^{{{}}}", e.to_poly().to_latex()));
        }
    }
    for (&(i, j), &e) in m.off_exponents() {
        s.push_str(&format!("x_{{{i},{j}}}"));
        if e != 1 {
            s.push_str(&format!("^{{{e}}}"));
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

pub fn series_to_text(f: &SeriesElement) -> String {
    let parts = sorted_series_terms(f)
        .into_iter()
        .map(|(m, c)| {
            let body = series_body_text(m);
            (c.to_string(), if body == "1" { String::new() } else { body })
        })
        .collect();
    join_terms(parts, text_coeff)
}

pub fn series_to_latex(f: &SeriesElement) -> String {
    let parts = sorted_series_terms(f)
        .into_iter()
        .map(|(m, c)| {
            let body = series_body_latex(m);
            (c.to_latex(), if body == "1" { String::new() } else { body })
        })
        .collect();
    join_terms(parts, latex_coeff)
}

pub fn render_pbw(v: &PBWVector, format: Format) -> String {
    match format {
        Format::Json => pbw_to_json(v),
        Format::Latex => pbw_to_latex(v),
        Format::Text => pbw_to_text(v),
    }
}

pub fn render_series(f: &SeriesElement, complete: bool, format: Format) -> String {
    match format {
        Format::Json => series_to_json(f, Some(complete)),
        Format::Latex => series_to_latex(f),
        Format::Text => series_to_text(f),
    }
}
