//! Plain-text form: `# key=value` header lines, then one `coefficient i j k l` per term.

use super::{couple_with, CoupledSpec, HamiltonianSpec, InteractionNorm, Term};
use crate::error::{Error, Result};
use crate::majorana::Side;
use std::fmt::Write;

pub fn spec_to_text(spec: &HamiltonianSpec) -> String {
    let mut s = String::new();
    writeln!(s, "# n_fermions={}", spec.n_fermions()).unwrap();
    writeln!(s, "# side={}", spec.side().name()).unwrap();
    write_terms(&mut s, spec);
    s
}

pub fn coupled_to_text(spec: &CoupledSpec) -> String {
    let mut s = String::new();
    writeln!(s, "# n_fermions={}", spec.n_fermions()).unwrap();
    writeln!(s, "# side=left").unwrap();
    writeln!(s, "# mu={}", spec.mu).unwrap();
    writeln!(s, "# norm={}", spec.norm.name()).unwrap();
    write_terms(&mut s, &spec.left);
    s
}

fn write_terms(s: &mut String, spec: &HamiltonianSpec) {
    for t in spec.terms() {
        let [a, b, c, d] = t.support;
        // Display of f64 is the shortest string that parses back to the same bits
        writeln!(s, "{} {a} {b} {c} {d}", t.coefficient).unwrap();
    }
}

struct Parsed {
    terms: Vec<Term>,
    n_fermions: Option<usize>,
    side: Side,
    mu: Option<f64>,
    norm: InteractionNorm,
}

fn parse(text: &str) -> Result<Parsed> {
    let mut p = Parsed {
        terms: Vec::new(),
        n_fermions: None,
        side: Side::Single,
        mu: None,
        norm: InteractionNorm::default(),
    };
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let err = |message: String| Error::Parse { line, message };
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(header) = trimmed.strip_prefix('#') {
            let Some((key, value)) = header.trim().split_once('=') else {
                continue;
            };
            let value = value.trim();
            match key.trim() {
                "n_fermions" => {
                    p.n_fermions = Some(value.parse().map_err(|e| err(format!("{e}")))?)
                }
                "side" => p.side = value.parse().map_err(|e| err(format!("{e}")))?,
                "mu" => p.mu = Some(value.parse().map_err(|e| err(format!("{e}")))?),
                "norm" => p.norm = value.parse().map_err(|e| err(format!("{e}")))?,
                _ => {}
            }
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(err(format!("expected 5 fields, found {}", fields.len())));
        }
        let coefficient: f64 = fields[0]
            .parse()
            .map_err(|e| err(format!("coefficient: {e}")))?;
        let mut support = [0usize; 4];
        for (slot, f) in support.iter_mut().zip(&fields[1..]) {
            *slot = f.parse().map_err(|e| err(format!("index: {e}")))?;
        }
        p.terms.push(Term::new(coefficient, support));
    }
    Ok(p)
}

pub fn spec_from_text(text: &str) -> Result<HamiltonianSpec> {
    let p = parse(text)?;
    let n = p
        .n_fermions
        .unwrap_or_else(|| p.terms.iter().flat_map(|t| t.support).max().unwrap_or(0));
    HamiltonianSpec::new(p.terms, n, p.side)
}

pub fn coupled_from_text(text: &str) -> Result<CoupledSpec> {
    let p = parse(text)?;
    let mu =
        p.mu.ok_or_else(|| Error::InvalidConfig("missing `# mu=` header".into()))?;
    let norm = p.norm;
    let left = spec_from_text(text)?;
    couple_with(&left.with_side(Side::Left), mu, norm)
}
