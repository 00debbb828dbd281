//! Text formats for covector sets and hyperplane arrangements.
//!
//! Covector file: first line lists the element labels, an optional
//! `g <label>` line designates the affine element, every further line is a
//! sign string. Arrangement file: a `dim d` line, then `label a1 .. ad b`
//! per hyperplane `a · x = b`, with integer or `p/q` coefficients. Both
//! formats allow `#` comments and blank lines.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::om::CovectorSet;
use crate::realization::{format_rational, parse_rational, realize, Arrangement, Hyperplane};
use crate::signvec::{parse_for, GroundSet};

/// Meaningful lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

pub fn parse_covector_file(source_name: &str, text: &str) -> Result<CovectorSet> {
    let mut lines = content_lines(text).peekable();
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(source_name, 1, "missing label line"))?;
    let mut ground = GroundSet::new(header.split_whitespace()).map_err(|e| Error::parse(source_name, 1, e.to_string()))?;
    if let Some(&(n, line)) = lines.peek() {
        if let Some(rest) = line.strip_prefix("g ") {
            ground = ground
                .with_g(rest.trim())
                .map_err(|e| Error::parse(source_name, n, e.to_string()))?;
            lines.next();
        }
    }
    let mut seen = HashSet::new();
    let mut covectors = Vec::new();
    for (n, line) in lines {
        let x = parse_for(&ground, line).map_err(|e| Error::parse(source_name, n, e.to_string()))?;
        if !seen.insert(x) {
            return Err(Error::parse(source_name, n, format!("duplicate covector {x}")));
        }
        covectors.push(x);
    }
    CovectorSet::new(ground, covectors)
}

pub fn format_covector_file(om: &CovectorSet) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", om.ground().labels().join(" "));
    if let Some(g) = om.ground().g_index() {
        let _ = writeln!(s, "g {}", om.ground().label(g));
    }
    for x in om.iter() {
        let _ = writeln!(s, "{x}");
    }
    s
}

pub fn parse_arrangement_file(source_name: &str, text: &str) -> Result<Arrangement> {
    let mut lines = content_lines(text);
    let (n, header) = lines
        .next()
        .ok_or_else(|| Error::parse(source_name, 1, "missing `dim d` line"))?;
    let dim: usize = header
        .strip_prefix("dim")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| Error::parse(source_name, n, "expected `dim d`"))?;
    let mut hyperplanes = Vec::new();
    for (n, line) in lines {
        let mut parts = line.split_whitespace();
        let label = parts.next().expect("nonempty line").to_string();
        let nums: Vec<_> = parts
            .map(parse_rational)
            .collect::<Result<_>>()
            .map_err(|e| Error::parse(source_name, n, e.to_string()))?;
        if nums.len() != dim + 1 {
            return Err(Error::parse(
                source_name,
                n,
                format!("expected {} numbers after the label, found {}", dim + 1, nums.len()),
            ));
        }
        let mut normal = nums;
        let offset = normal.pop().expect("dim + 1 >= 1");
        hyperplanes.push(Hyperplane { label, normal, offset });
        // validate each prefix so the error points at the offending line
        Arrangement::new(dim, hyperplanes.clone()).map_err(|e| Error::parse(source_name, n, e.to_string()))?;
    }
    if hyperplanes.is_empty() {
        return Err(Error::parse(source_name, n, "no hyperplanes"));
    }
    Arrangement::new(dim, hyperplanes).map_err(|e| Error::parse(source_name, n, e.to_string()))
}

pub fn format_arrangement_file(arr: &Arrangement) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "dim {}", arr.dim());
    for h in arr.hyperplanes() {
        let nums: Vec<String> = h.normal.iter().chain([&h.offset]).map(format_rational).collect();
        let _ = writeln!(s, "{} {}", h.label, nums.join(" "));
    }
    s
}

/// An input file of either kind.
#[derive(Debug, Clone)]
pub enum Input {
    Arrangement(Arrangement),
    Covectors(CovectorSet),
}

impl Input {
    /// Arrangement files are recognized by their `dim` header.
    pub fn parse(source_name: &str, text: &str) -> Result<Input> {
        let first = content_lines(text).next().map(|(_, l)| l);
        if first.is_some_and(|l| l.split_whitespace().next() == Some("dim")) {
            parse_arrangement_file(source_name, text).map(Input::Arrangement)
        } else {
            parse_covector_file(source_name, text).map(Input::Covectors)
        }
    }

    pub fn read(path: &Path) -> Result<Input> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
        Input::parse(&path.display().to_string(), &text)
    }

    pub fn arrangement(&self) -> Option<&Arrangement> {
        match self {
            Input::Arrangement(a) => Some(a),
            Input::Covectors(_) => None,
        }
    }

    /// The covector set, realizing an arrangement if needed. `g` overrides
    /// or supplies the affine element.
    pub fn covectors(&self, g: Option<&str>) -> Result<CovectorSet> {
        let om = match self {
            Input::Arrangement(a) => realize(a)?,
            Input::Covectors(c) => c.clone(),
        };
        match g {
            Some(label) => {
                let ground = om.ground().clone().with_g(label)?;
                om.with_ground(ground)
            }
            None => Ok(om),
        }
    }
}
