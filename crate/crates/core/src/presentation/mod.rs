//! Quivers, paths, relations and the textual presentation format.
//!
//! Paths compose left to right: `a*b` traverses `a` first, so
//! `target(a) == source(b)` is required.

mod dsl;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

pub use dsl::{parse_source, SourceFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Location {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiagnosticCode {
    SyntaxError,
    UnknownName,
    DuplicateName,
    NonComposablePath,
    NonParallelRelation,
    NonAdmissibleRelation,
    ZeroCoefficient,
    EmptyRelation,
    Disconnected,
    BadField,
}

impl DiagnosticCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticCode::SyntaxError => "SyntaxError",
            DiagnosticCode::UnknownName => "UnknownName",
            DiagnosticCode::DuplicateName => "DuplicateName",
            DiagnosticCode::NonComposablePath => "NonComposablePath",
            DiagnosticCode::NonParallelRelation => "NonParallelRelation",
            DiagnosticCode::NonAdmissibleRelation => "NonAdmissibleRelation",
            DiagnosticCode::ZeroCoefficient => "ZeroCoefficient",
            DiagnosticCode::EmptyRelation => "EmptyRelation",
            DiagnosticCode::Disconnected => "Disconnected",
            DiagnosticCode::BadField => "BadField",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub message: String,
    pub location: Option<Location>,
}

impl Diagnostic {
    pub fn new(code: DiagnosticCode, message: impl Into<String>, location: Option<Location>) -> Self {
        Diagnostic {
            code,
            message: message.into(),
            location,
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.location {
            Some(loc) => write!(f, "{} at {}: {}", self.code.as_str(), loc, self.message),
            None => write!(f, "{}: {}", self.code.as_str(), self.message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn source(&self, w: &PathWord) -> usize {
        match w {
            PathWord::Trivial(v) => *v,
            PathWord::Arrows(a) => self.arrows[a[0]].source,
        }
    }

    pub fn target(&self, w: &PathWord) -> usize {
        match w {
            PathWord::Trivial(v) => *v,
            PathWord::Arrows(a) => self.arrows[*a.last().unwrap()].target,
        }
    }

    /// First adjacent pair `(i, i+1)` of arrows that fails to compose.
    pub fn first_break(&self, arrows: &[usize]) -> Option<usize> {
        arrows
            .windows(2)
            .position(|w| self.arrows[w[0]].target != self.arrows[w[1]].source)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
            parent[x] = y;
        }
        let root = find(&mut parent, 0);
        (1..n).all(|v| find(&mut parent, v) == root)
    }

    pub fn format_word(&self, w: &PathWord) -> String {
        match w {
            PathWord::Trivial(v) => format!("e_{}", self.vertices[*v]),
            PathWord::Arrows(a) => a
                .iter()
                .map(|&i| self.arrows[i].name.as_str())
                .collect::<Vec<_>>()
                .join("*"),
        }
    }
}

/// A path: a trivial path at a vertex, or a nonempty arrow sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathWord {
    Trivial(usize),
    Arrows(Vec<usize>),
}

impl PathWord {
    /// Number of arrows; trivial paths have length 0.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        match self {
            PathWord::Trivial(_) => 0,
            PathWord::Arrows(a) => a.len(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, PathWord::Trivial(_))
    }

    pub fn arrows(&self) -> &[usize] {
        match self {
            PathWord::Trivial(_) => &[],
            PathWord::Arrows(a) => a,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationExpr {
    /// `Σ coeff·path = 0`, terms sorted by path, coefficients nonzero.
    pub terms: Vec<(Scalar, PathWord)>,
    pub location: Option<Location>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<RelationExpr>,
    pub allow_disconnected: bool,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    pub allow_disconnected: bool,
}

/// Parses and validates a presentation. On failure the first diagnostic is returned.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    parse_presentation_with(text, ParseOptions::default())
}

pub fn parse_presentation_with(text: &str, opts: ParseOptions) -> Result<Presentation> {
    let source = parse_source(text)?;
    let (pres, diags) = source.check(opts);
    match pres {
        Some(p) if diags.is_empty() => Ok(p),
        _ => Err(Error::Presentation(
            diags.into_iter().next().expect("failed check carries a diagnostic"),
        )),
    }
}

/// All diagnostics for a source text; a syntax error yields a single diagnostic.
pub fn diagnose(text: &str, opts: ParseOptions) -> Vec<Diagnostic> {
    match parse_source(text) {
        Err(Error::Syntax {
            line,
            col,
            expected,
        }) => vec![Diagnostic::new(
            DiagnosticCode::SyntaxError,
            format!("expected {expected}"),
            Some(Location { line, col }),
        )],
        Err(e) => vec![Diagnostic::new(DiagnosticCode::SyntaxError, e.to_string(), None)],
        Ok(src) => src.check(opts).1,
    }
}

/// Checks every structural invariant of an already-built presentation.
pub fn validate(pres: &Presentation) -> Vec<Diagnostic> {
    use DiagnosticCode::*;
    let q = &pres.quiver;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for v in &q.vertices {
        if !seen.insert(v) {
            out.push(Diagnostic::new(DuplicateName, format!("vertex `{v}` declared twice"), None));
        }
    }
    let mut seen = HashSet::new();
    for a in &q.arrows {
        if !seen.insert(&a.name) {
            out.push(Diagnostic::new(
                DuplicateName,
                format!("arrow `{}` declared twice", a.name),
                None,
            ));
        }
        if a.source >= q.vertices.len() || a.target >= q.vertices.len() {
            out.push(Diagnostic::new(
                UnknownName,
                format!("arrow `{}` has an undeclared endpoint", a.name),
                None,
            ));
            return out;
        }
    }
    for (ri, rel) in pres.relations.iter().enumerate() {
        let loc = rel.location;
        if rel.terms.is_empty() {
            out.push(Diagnostic::new(EmptyRelation, format!("relation {ri} has no terms"), loc));
            continue;
        }
        let mut ends = None;
        for (c, w) in &rel.terms {
            if *c == 0 {
                out.push(Diagnostic::new(
                    ZeroCoefficient,
                    format!("relation {ri} has a zero coefficient"),
                    loc,
                ));
            }
            if w.len() < 2 {
                out.push(Diagnostic::new(
                    NonAdmissibleRelation,
                    format!("relation {ri}: term `{}` has length < 2", q.format_word(w)),
                    loc,
                ));
                continue;
            }
            if w.arrows().iter().any(|&a| a >= q.arrows.len()) {
                out.push(Diagnostic::new(UnknownName, format!("relation {ri}: unknown arrow"), loc));
                continue;
            }
            if let Some(i) = q.first_break(w.arrows()) {
                let a = &q.arrows[w.arrows()[i]];
                let b = &q.arrows[w.arrows()[i + 1]];
                out.push(Diagnostic::new(
                    NonComposablePath,
                    format!(
                        "relation {ri}: `{}` ends at `{}` but `{}` starts at `{}`",
                        a.name, q.vertices[a.target], b.name, q.vertices[b.source]
                    ),
                    loc,
                ));
                continue;
            }
            let e = (q.source(w), q.target(w));
            match ends {
                None => ends = Some(e),
                Some(prev) if prev != e => {
                    out.push(Diagnostic::new(
                        NonParallelRelation,
                        format!("relation {ri} mixes paths with different endpoints"),
                        loc,
                    ));
                }
                _ => {}
            }
        }
    }
    if !pres.allow_disconnected && !q.is_connected() {
        out.push(Diagnostic::new(Disconnected, "quiver is not connected", None));
    }
    out
}

impl Presentation {
    pub fn validate(&self) -> Vec<Diagnostic> {
        validate(self)
    }

    /// Parses a single path such as `a*b1` or `e_c`.
    pub fn parse_word(&self, text: &str) -> Result<PathWord> {
        let text = text.trim();
        let q = &self.quiver;
        if let Some(v) = text.strip_prefix("e_") {
            if let Some(i) = q.vertex_index(v) {
                if q.arrow_index(text).is_none() {
                    return Ok(PathWord::Trivial(i));
                }
            }
        }
        let mut arrows = Vec::new();
        for part in text.split('*') {
            let name = part.trim();
            let idx = q.arrow_index(name).ok_or_else(|| {
                Error::Presentation(Diagnostic::new(
                    DiagnosticCode::UnknownName,
                    format!("unknown arrow `{name}`"),
                    None,
                ))
            })?;
            arrows.push(idx);
        }
        if let Some(i) = q.first_break(&arrows) {
            return Err(Error::Presentation(Diagnostic::new(
                DiagnosticCode::NonComposablePath,
                format!(
                    "`{}` does not compose with `{}`",
                    q.arrows[arrows[i]].name,
                    q.arrows[arrows[i + 1]].name
                ),
                None,
            )));
        }
        Ok(PathWord::Arrows(arrows))
    }

    /// Parses a linear combination such as `a*a - 2*b1*b2 + e_c`. The literal
    /// `1` stands for the sum of all trivial paths.
    pub fn parse_element(&self, text: &str) -> Result<Vec<(Scalar, PathWord)>> {
        dsl::parse_element(self, text)
    }

    /// Same presentation with arrows redeclared in the given order:
    /// new arrow `i` is old arrow `order[i]`.
    pub fn with_arrow_order(&self, order: &[usize]) -> Presentation {
        let n = self.quiver.arrows.len();
        assert_eq!(order.len(), n, "permutation length");
        let mut old_to_new = vec![usize::MAX; n];
        for (new, &old) in order.iter().enumerate() {
            old_to_new[old] = new;
        }
        assert!(old_to_new.iter().all(|&x| x != usize::MAX), "not a permutation");
        let arrows = order.iter().map(|&o| self.quiver.arrows[o].clone()).collect();
        let remap = |w: &PathWord| match w {
            PathWord::Trivial(v) => PathWord::Trivial(*v),
            PathWord::Arrows(a) => PathWord::Arrows(a.iter().map(|&x| old_to_new[x]).collect()),
        };
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let mut terms: Vec<_> = r.terms.iter().map(|(c, w)| (*c, remap(w))).collect();
                terms.sort_by(|a, b| a.1.cmp(&b.1));
                RelationExpr {
                    terms,
                    location: r.location,
                }
            })
            .collect();
        Presentation {
            name: self.name.clone(),
            field: self.field.clone(),
            quiver: Quiver {
                vertices: self.quiver.vertices.clone(),
                arrows,
            },
            relations,
            allow_disconnected: self.allow_disconnected,
        }
    }

    /// Renders the presentation in the input format.
    pub fn emit(&self) -> String {
        let q = &self.quiver;
        let mut s = String::new();
        s.push_str(&format!("algebra {} over {} {{\n", self.name, self.field.spec()));
        s.push_str(&format!("  vertices {};\n", q.vertices.join(", ")));
        s.push_str("  arrows {\n");
        for a in &q.arrows {
            s.push_str(&format!(
                "    {}: {} -> {};\n",
                a.name, q.vertices[a.source], q.vertices[a.target]
            ));
        }
        s.push_str("  }\n  relations {\n");
        for r in &self.relations {
            s.push_str(&format!("    {} = 0;\n", self.format_combination(&r.terms)));
        }
        s.push_str("  }\n}\n");
        s
    }

    pub fn format_combination(&self, terms: &[(Scalar, PathWord)]) -> String {
        let f = &self.field;
        let mut s = String::new();
        for (i, (c, w)) in terms.iter().enumerate() {
            let word = self.quiver.format_word(w);
            let neg = f.neg(*c);
            let (sign, mag) = if f.is_prime_field() && neg < *c {
                ("-", neg)
            } else {
                ("+", *c)
            };
            if i == 0 {
                if sign == "-" {
                    s.push_str("- ");
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            if mag != 1 {
                s.push_str(&format!("{}*", f.format(mag)));
            }
            s.push_str(&word);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// Collects `Σ c·w`, merging equal words and dropping zeros; output sorted by word.
pub(crate) fn normalize_terms(
    field: &Field,
    terms: impl IntoIterator<Item = (Scalar, PathWord)>,
) -> Vec<(Scalar, PathWord)> {
    let mut acc: BTreeMap<PathWord, Scalar> = BTreeMap::new();
    for (c, w) in terms {
        let e = acc.entry(w).or_insert(0);
        *e = field.add(*e, c);
    }
    acc.into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(w, c)| (c, w))
        .collect()
}

pub(crate) fn name_table(names: &[String]) -> HashMap<&str, usize> {
    let mut m = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        m.entry(n.as_str()).or_insert(i);
    }
    m
}

#[cfg(test)]
mod tests;
