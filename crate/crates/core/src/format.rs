//! Plain-text file formats.
//!
//! Lines starting with `#` and blank lines are ignored everywhere.
//!
//! Matroid: the ground-set labels on one line, separated by whitespace, then
//! one circuit per line as comma-separated labels.
//!
//! Oriented matroid: a matroid block, then a `[signed-circuits]` section
//! and a `[signed-cocircuits]` section holding one sign-vector string per
//! line. One signing per `±` pair is enough; the opposites are implied.
//! Either section may be missing.
//!
//! Lines: three integers per line.
//!
//! Digraph: the vertex count, then one arc per line as `tail head label`
//! with vertices numbered from 1.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::digraph::{Digraph, FarkasCertificate};
use crate::error::{Error, Result};
use crate::matroid::{Matroid, ValidationOptions};
use crate::oriented::{CircuitSignature, SignaturePair};
use crate::realizations::{Line, LineSet};
use crate::signed::{GroundSet, SignVector};

const CIRCUITS: &str = "[signed-circuits]";
const COCIRCUITS: &str = "[signed-cocircuits]";

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn at_line(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { .. } => e,
        other => parse_error(line, other.to_string()),
    }
}

/// Meaningful lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_matroid_lines(lines: &[(usize, &str)], opts: ValidationOptions) -> Result<Matroid> {
    let (&(first, labels), rest) = lines
        .split_first()
        .ok_or_else(|| parse_error(1, "missing ground-set line"))?;
    let ground = GroundSet::new(labels.split_whitespace()).map_err(at_line(first))?;
    let mut circuits = Vec::with_capacity(rest.len());
    for &(no, l) in rest {
        let set = ground
            .set_of(l.split(',').map(str::trim))
            .map_err(at_line(no))?;
        circuits.push(set);
    }
    Matroid::with_options(&ground, circuits, opts)
}

pub fn parse_matroid(text: &str, opts: ValidationOptions) -> Result<Matroid> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    parse_matroid_lines(&lines, opts)
}

fn push_matroid(out: &mut String, m: &Matroid) {
    out.push_str(&m.ground().labels().join(" "));
    out.push('\n');
    for c in m.circuits() {
        let labels: Vec<&str> = c.iter().map(|e| m.ground().label(e)).collect();
        out.push_str(&labels.join(","));
        out.push('\n');
    }
}

pub fn emit_matroid(m: &Matroid) -> String {
    let mut out = String::new();
    push_matroid(&mut out, m);
    out
}

/// A parsed oriented-matroid file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmFile {
    pub matroid: Matroid,
    pub circuits: Option<CircuitSignature>,
    pub cocircuits: Option<CircuitSignature>,
}

impl OmFile {
    /// The pair, if both signatures are present.
    pub fn pair(&self) -> Result<SignaturePair> {
        match (&self.circuits, &self.cocircuits) {
            (Some(c), Some(u)) => SignaturePair::new(c.clone(), u.clone()),
            (None, _) => Err(parse_error(1, "file has no [signed-circuits] section")),
            (_, None) => Err(parse_error(1, "file has no [signed-cocircuits] section")),
        }
    }
}

impl From<SignaturePair> for OmFile {
    fn from(p: SignaturePair) -> Self {
        OmFile {
            matroid: p.matroid().clone(),
            circuits: Some(p.circuits().clone()),
            cocircuits: Some(p.cocircuits().clone()),
        }
    }
}

fn parse_section(lines: &[(usize, &str)], matroid: &Matroid, header: usize) -> Result<CircuitSignature> {
    let n = matroid.len();
    let mut reps = Vec::with_capacity(lines.len());
    for &(no, l) in lines {
        let len = l.chars().count();
        if len != n {
            return Err(parse_error(
                no,
                format!("sign vector `{l}` has {len} entries, ground set has {n}"),
            ));
        }
        reps.push(SignVector::parse(l).map_err(at_line(no))?);
    }
    CircuitSignature::from_representatives(matroid, reps).map_err(at_line(header))
}

pub fn parse_om(text: &str, opts: ValidationOptions) -> Result<OmFile> {
    let lines: Vec<(usize, &str)> = content_lines(text).collect();
    let mut sections: Vec<(usize, &str, usize)> = Vec::new();
    for (i, &(no, l)) in lines.iter().enumerate() {
        if l.starts_with('[') {
            if l != CIRCUITS && l != COCIRCUITS {
                return Err(parse_error(no, format!("unknown section `{l}`")));
            }
            if sections.iter().any(|s| s.1 == l) {
                return Err(parse_error(no, format!("repeated section `{l}`")));
            }
            sections.push((no, l, i));
        }
    }
    let block_end = sections.first().map_or(lines.len(), |s| s.2);
    let matroid = parse_matroid_lines(&lines[..block_end], opts)?;
    let dual = matroid.dual();
    let mut circuits = None;
    let mut cocircuits = None;
    for (k, &(no, name, i)) in sections.iter().enumerate() {
        let end = sections.get(k + 1).map_or(lines.len(), |s| s.2);
        let body = &lines[i + 1..end];
        if name == CIRCUITS {
            circuits = Some(parse_section(body, &matroid, no)?);
        } else {
            cocircuits = Some(parse_section(body, &dual, no)?);
        }
    }
    Ok(OmFile {
        matroid,
        circuits,
        cocircuits,
    })
}

pub fn emit_om(file: &OmFile) -> String {
    let mut out = String::new();
    push_matroid(&mut out, &file.matroid);
    let n = file.matroid.len();
    for (header, sig) in [(CIRCUITS, &file.circuits), (COCIRCUITS, &file.cocircuits)] {
        if let Some(sig) = sig {
            out.push_str(header);
            out.push('\n');
            for r in sig.representatives() {
                out.push_str(&r.to_sign_string(n));
                out.push('\n');
            }
        }
    }
    out
}

pub fn emit_pair(pair: &SignaturePair) -> String {
    emit_om(&OmFile::from(pair.clone()))
}

pub fn parse_lines(text: &str) -> Result<LineSet> {
    let mut lines = Vec::new();
    for (no, l) in content_lines(text) {
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(parse_error(no, format!("expected three integers, found {}", parts.len())));
        }
        let mut v: [BigInt; 3] = Default::default();
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| parse_error(no, format!("`{p}` is not an integer")))?;
        }
        lines.push(Line::from_integer_vector(v).map_err(at_line(no))?);
    }
    LineSet::new(lines)
}

pub fn emit_lines(q: &LineSet) -> String {
    let mut out = String::new();
    for l in q.lines() {
        writeln!(out, "{l}").expect("writing to a string");
    }
    out
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut lines = content_lines(text);
    let (first, count) = lines
        .next()
        .ok_or_else(|| parse_error(1, "missing vertex-count line"))?;
    let vertices: usize = count
        .parse()
        .map_err(|_| parse_error(first, format!("`{count}` is not a vertex count")))?;
    let mut arcs = Vec::new();
    let mut last = first;
    for (no, l) in lines {
        last = no;
        let parts: Vec<&str> = l.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(parse_error(no, "expected `tail head label`"));
        }
        let vertex = |p: &str| -> Result<usize> {
            match p.parse::<usize>() {
                Ok(v) if (1..=vertices).contains(&v) => Ok(v - 1),
                _ => Err(parse_error(no, format!("`{p}` is not a vertex in 1..={vertices}"))),
            }
        };
        arcs.push((vertex(parts[0])?, vertex(parts[1])?, parts[2].to_string()));
    }
    Digraph::new(vertices, arcs).map_err(at_line(last))
}

pub fn emit_digraph(d: &Digraph) -> String {
    let mut out = format!("{}\n", d.vertex_count());
    for (a, &(t, h)) in d.arcs().iter().enumerate() {
        writeln!(out, "{} {} {}", t + 1, h + 1, d.ground().label(a)).expect("writing to a string");
    }
    out
}

pub fn emit_certificate(d: &Digraph, c: &FarkasCertificate) -> String {
    let labels: Vec<&str> = c.arcs.iter().map(|a| d.ground().label(a)).collect();
    format!(
        "kind: {}\narcs: {}\nsigns: {}\n",
        c.kind.name(),
        labels.join(","),
        c.orientation
    )
}
