//! Lexer and recursive-descent parser for the presentation format:
//!
//! ```text
//! algebra Omega2 over GF(2) {
//!   vertices c, b;
//!   arrows { a: c -> c; b1: c -> b; b2: b -> c; }
//!   relations {
//!     a*b1*b2 + b1*b2*a = 0;
//!     a*a = a*b1*b2;
//!     b2*b1;            // absent right-hand side means "= 0"
//!   }
//! }
//! ```

use std::collections::HashSet;

use super::{
    name_table, normalize_terms, Arrow, Diagnostic, DiagnosticCode, Location, ParseOptions,
    PathWord, Presentation, Quiver, RelationExpr,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(&'static str),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    loc: Location,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let loc = Location { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(s),
                loc,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            let v = s.parse::<u64>().map_err(|_| Error::Syntax {
                line: loc.line,
                col: loc.col,
                expected: "an integer that fits in 64 bits".into(),
            })?;
            out.push(Token {
                tok: Tok::Int(v),
                loc,
            });
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Token {
                tok: Tok::Sym("->"),
                loc,
            });
            i += 2;
            col += 2;
            continue;
        }
        let sym = match c {
            '{' => "{",
            '}' => "}",
            '(' => "(",
            ')' => ")",
            ';' => ";",
            ':' => ":",
            ',' => ",",
            '*' => "*",
            '+' => "+",
            '-' => "-",
            '=' => "=",
            '^' => "^",
            _ => {
                return Err(Error::Syntax {
                    line,
                    col,
                    expected: format!("a token, found `{c}`"),
                })
            }
        };
        out.push(Token {
            tok: Tok::Sym(sym),
            loc,
        });
        i += 1;
        col += 1;
    }
    out.push(Token {
        tok: Tok::Eof,
        loc: Location { line, col },
    });
    Ok(out)
}

#[derive(Debug, Clone)]
pub(super) struct FieldAst {
    p: u64,
    e: u64,
    modulus: Option<Vec<i64>>,
    loc: Location,
}

#[derive(Debug, Clone)]
struct ArrowAst {
    name: String,
    source: (String, Location),
    target: (String, Location),
    loc: Location,
}

#[derive(Debug, Clone)]
enum CoeffAst {
    Int(i64),
    Poly(Vec<i64>),
}

#[derive(Debug, Clone)]
struct TermAst {
    coeff: CoeffAst,
    path: Vec<(String, Location)>,
    loc: Location,
}

#[derive(Debug, Clone)]
struct RelationAst {
    lhs: Vec<TermAst>,
    rhs: Vec<TermAst>,
    loc: Location,
}

/// Syntax tree of a presentation file, before name resolution.
#[derive(Debug, Clone)]
pub struct SourceFile {
    pub name: String,
    field: FieldAst,
    vertices: Vec<(String, Location)>,
    arrows: Vec<ArrowAst>,
    relations: Vec<RelationAst>,
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn loc(&self) -> Location {
        self.toks[self.pos].loc
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        let loc = self.loc();
        Err(Error::Syntax {
            line: loc.line,
            col: loc.col,
            expected: expected.to_string(),
        })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.fail(&format!("`{s}`"))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => self.fail(&format!("`{kw}`")),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Location)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let loc = self.loc();
                self.bump();
                Ok((s, loc))
            }
            _ => self.fail(what),
        }
    }

    fn int(&mut self, what: &str) -> Result<u64> {
        match self.peek() {
            &Tok::Int(v) => {
                self.bump();
                Ok(v)
            }
            _ => self.fail(what),
        }
    }

    fn file(&mut self) -> Result<SourceFile> {
        self.expect_keyword("algebra")?;
        let (name, _) = self.ident("an algebra name")?;
        self.expect_keyword("over")?;
        let field = self.field()?;
        self.expect_sym("{")?;
        self.expect_keyword("vertices")?;
        let mut vertices = vec![self.ident("a vertex name")?];
        loop {
            self.eat_sym(",");
            if self.is_sym(";") || matches!(self.peek(), Tok::Ident(s) if s == "arrows") {
                break;
            }
            vertices.push(self.ident("a vertex name or `;`")?);
        }
        self.expect_sym(";")?;
        self.expect_keyword("arrows")?;
        self.expect_sym("{")?;
        let mut arrows = Vec::new();
        while !self.is_sym("}") {
            let (name, loc) = self.ident("an arrow name or `}`")?;
            self.expect_sym(":")?;
            let source = self.ident("a source vertex")?;
            self.expect_sym("->")?;
            let target = self.ident("a target vertex")?;
            self.expect_sym(";")?;
            arrows.push(ArrowAst {
                name,
                source,
                target,
                loc,
            });
        }
        self.expect_sym("}")?;
        self.expect_keyword("relations")?;
        self.expect_sym("{")?;
        let mut relations = Vec::new();
        while !self.is_sym("}") {
            let loc = self.loc();
            let lhs = self.expr()?;
            let rhs = if self.eat_sym("=") { self.expr()? } else { Vec::new() };
            self.expect_sym(";")?;
            relations.push(RelationAst { lhs, rhs, loc });
        }
        self.expect_sym("}")?;
        self.expect_sym("}")?;
        if *self.peek() != Tok::Eof {
            return self.fail("end of input");
        }
        Ok(SourceFile {
            name,
            field,
            vertices,
            arrows,
            relations,
        })
    }

    fn field(&mut self) -> Result<FieldAst> {
        let loc = self.loc();
        self.expect_keyword("GF")?;
        self.expect_sym("(")?;
        let p = self.int("a prime")?;
        let mut e = 1;
        let mut modulus = None;
        if self.eat_sym("^") {
            e = self.int("an extension degree")?;
            if self.eat_sym(",") {
                modulus = Some(self.poly(&["x", "t"])?);
            }
        }
        self.expect_sym(")")?;
        Ok(FieldAst { p, e, modulus, loc })
    }

    /// Polynomial in a single variable; coefficients lowest degree first.
    fn poly(&mut self, vars: &[&str]) -> Result<Vec<i64>> {
        let mut coeffs: Vec<i64> = Vec::new();
        let mut sign = if self.eat_sym("-") { -1 } else { 1 };
        loop {
            let mut c: i64 = 1;
            let mut has_coeff = false;
            if let Tok::Int(v) = *self.peek() {
                self.bump();
                c = v as i64;
                has_coeff = true;
                self.eat_sym("*");
            }
            let mut deg = 0usize;
            let is_var = matches!(self.peek(), Tok::Ident(s) if vars.contains(&s.as_str()));
            if is_var {
                self.bump();
                deg = 1;
                if self.eat_sym("^") {
                    deg = self.int("an exponent")? as usize;
                }
            } else if !has_coeff {
                return self.fail(&format!("a polynomial term in {}", vars.join("/")));
            }
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, 0);
            }
            coeffs[deg] += sign * c;
            if self.eat_sym("+") {
                sign = 1;
            } else if self.is_sym("-") && !matches!(self.peek_at(1), Tok::Sym(">")) {
                self.bump();
                sign = -1;
            } else {
                break;
            }
        }
        Ok(coeffs)
    }

    fn expr(&mut self) -> Result<Vec<TermAst>> {
        if let Tok::Int(0) = self.peek() {
            if !matches!(self.peek_at(1), Tok::Sym("*")) {
                self.bump();
                return Ok(Vec::new());
            }
        }
        let mut terms = Vec::new();
        let mut negate = self.eat_sym("-");
        loop {
            let mut t = self.term()?;
            if negate {
                t.coeff = match t.coeff {
                    CoeffAst::Int(v) => CoeffAst::Int(-v),
                    CoeffAst::Poly(p) => CoeffAst::Poly(p.into_iter().map(|c| -c).collect()),
                };
            }
            terms.push(t);
            if self.eat_sym("+") {
                negate = false;
            } else if self.eat_sym("-") {
                negate = true;
            } else {
                break;
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<TermAst> {
        let loc = self.loc();
        let coeff = match self.peek() {
            &Tok::Int(v) => {
                self.bump();
                self.expect_sym("*")?;
                CoeffAst::Int(v as i64)
            }
            Tok::Sym("(") => {
                self.bump();
                let p = self.poly(&["t"])?;
                self.expect_sym(")")?;
                self.expect_sym("*")?;
                CoeffAst::Poly(p)
            }
            _ => CoeffAst::Int(1),
        };
        let mut path = vec![self.ident("an arrow name")?];
        while self.eat_sym("*") {
            path.push(self.ident("an arrow name")?);
        }
        Ok(TermAst { coeff, path, loc })
    }
}

pub fn parse_source(text: &str) -> Result<SourceFile> {
    let toks = lex(text)?;
    Parser { toks, pos: 0 }.file()
}

fn coeff_value(field: &Field, c: &CoeffAst) -> Scalar {
    match c {
        CoeffAst::Int(v) => field.from_int(*v),
        CoeffAst::Poly(p) => field.from_poly(p),
    }
}

impl SourceFile {
    /// Resolves names and checks every invariant. Returns the presentation
    /// only when no diagnostics were produced.
    pub fn check(&self, opts: ParseOptions) -> (Option<Presentation>, Vec<Diagnostic>) {
        use DiagnosticCode::*;
        let mut diags = Vec::new();

        let fa = &self.field;
        let spec = if fa.p > u32::MAX as u64 || fa.e > 32 {
            Err(Error::BadField(format!("GF({}^{}) is too large", fa.p, fa.e)))
        } else {
            let modulus = fa.modulus.as_ref().map(|m| {
                let p = fa.p as i64;
                let mut m: Vec<u32> = m.iter().map(|c| c.rem_euclid(p) as u32).collect();
                m.resize(m.len().max(fa.e as usize + 1), 0);
                m
            });
            FieldSpec::extension(fa.p as u32, fa.e as u32, modulus)
        };
        let field = match spec {
            Ok(s) => Field::new(s),
            Err(e) => {
                let msg = match e {
                    Error::BadField(m) => m,
                    other => other.to_string(),
                };
                diags.push(Diagnostic::new(BadField, msg, Some(fa.loc)));
                return (None, diags);
            }
        };

        let mut seen = HashSet::new();
        for (v, loc) in &self.vertices {
            if !seen.insert(v.as_str()) {
                diags.push(Diagnostic::new(
                    DuplicateName,
                    format!("vertex `{v}` declared twice"),
                    Some(*loc),
                ));
            }
        }
        let vertex_names: Vec<String> = self.vertices.iter().map(|(v, _)| v.clone()).collect();
        let vtab = name_table(&vertex_names);

        let mut seen = HashSet::new();
        let mut arrows = Vec::new();
        for a in &self.arrows {
            if !seen.insert(a.name.as_str()) {
                diags.push(Diagnostic::new(
                    DuplicateName,
                    format!("arrow `{}` declared twice", a.name),
                    Some(a.loc),
                ));
            }
            let mut resolve = |(name, loc): &(String, Location)| match vtab.get(name.as_str()) {
                Some(&i) => Some(i),
                None => {
                    diags.push(Diagnostic::new(
                        UnknownName,
                        format!("unknown vertex `{name}`"),
                        Some(*loc),
                    ));
                    None
                }
            };
            let s = resolve(&a.source);
            let t = resolve(&a.target);
            if let (Some(source), Some(target)) = (s, t) {
                arrows.push(Arrow {
                    name: a.name.clone(),
                    source,
                    target,
                });
            }
        }
        if arrows.len() != self.arrows.len() {
            return (None, diags);
        }
        let quiver = Quiver {
            vertices: vertex_names.clone(),
            arrows,
        };
        let arrow_names: Vec<String> = quiver.arrows.iter().map(|a| a.name.clone()).collect();
        let atab = name_table(&arrow_names);

        let mut relations = Vec::new();
        for rel in &self.relations {
            let mut ok = true;
            let mut terms = Vec::new();
            let sides = rel
                .lhs
                .iter()
                .map(|t| (false, t))
                .chain(rel.rhs.iter().map(|t| (true, t)));
            for (negate, t) in sides {
                let mut idx = Vec::new();
                for (name, loc) in &t.path {
                    match atab.get(name.as_str()) {
                        Some(&i) => idx.push(i),
                        None => {
                            let is_trivial = name
                                .strip_prefix("e_")
                                .is_some_and(|v| vtab.contains_key(v));
                            if is_trivial {
                                diags.push(Diagnostic::new(
                                    NonAdmissibleRelation,
                                    format!("trivial path `{name}` is not allowed in relations"),
                                    Some(*loc),
                                ));
                            } else {
                                diags.push(Diagnostic::new(
                                    UnknownName,
                                    format!("unknown arrow `{name}`"),
                                    Some(*loc),
                                ));
                            }
                            ok = false;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                if let Some(i) = quiver.first_break(&idx) {
                    let a = &quiver.arrows[idx[i]];
                    let b = &quiver.arrows[idx[i + 1]];
                    diags.push(Diagnostic::new(
                        NonComposablePath,
                        format!(
                            "`{}` ends at `{}` but `{}` starts at `{}`",
                            a.name, quiver.vertices[a.target], b.name, quiver.vertices[b.source]
                        ),
                        Some(t.path[i + 1].1),
                    ));
                    ok = false;
                    continue;
                }
                if idx.len() < 2 {
                    diags.push(Diagnostic::new(
                        NonAdmissibleRelation,
                        format!("term `{}` has length < 2", t.path[0].0),
                        Some(t.loc),
                    ));
                    ok = false;
                    continue;
                }
                let mut c = coeff_value(&field, &t.coeff);
                if negate {
                    c = field.neg(c);
                }
                terms.push((c, PathWord::Arrows(idx)));
            }
            if !ok {
                continue;
            }
            let ends: HashSet<(usize, usize)> = terms
                .iter()
                .map(|(_, w)| (quiver.source(w), quiver.target(w)))
                .collect();
            if ends.len() > 1 {
                diags.push(Diagnostic::new(
                    NonParallelRelation,
                    "relation mixes paths with different endpoints",
                    Some(rel.loc),
                ));
                continue;
            }
            let terms = normalize_terms(&field, terms);
            if terms.is_empty() {
                diags.push(Diagnostic::new(
                    EmptyRelation,
                    "relation cancels to 0 = 0",
                    Some(rel.loc),
                ));
                continue;
            }
            relations.push(RelationExpr {
                terms,
                location: Some(rel.loc),
            });
        }

        let pres = Presentation {
            name: self.name.clone(),
            field,
            quiver,
            relations,
            allow_disconnected: opts.allow_disconnected,
        };
        if !opts.allow_disconnected && !pres.quiver.is_connected() {
            diags.push(Diagnostic::new(Disconnected, "quiver is not connected", None));
        }
        if diags.is_empty() {
            (Some(pres), diags)
        } else {
            (None, diags)
        }
    }
}

/// Element expression over a presentation: terms may be trivial paths `e_v`
/// or the literal `1` (sum of all trivial paths).
pub(super) fn parse_element(pres: &Presentation, text: &str) -> Result<Vec<(Scalar, PathWord)>> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let field = &pres.field;
    let mut terms = Vec::new();
    if let Tok::Int(0) = p.peek() {
        if matches!(p.peek_at(1), Tok::Eof) {
            return Ok(Vec::new());
        }
    }
    let mut negate = p.eat_sym("-");
    loop {
        let loc = p.loc();
        let mut coeff = CoeffAst::Int(1);
        let mut unit = false;
        match p.peek().clone() {
            Tok::Int(v) => {
                p.bump();
                coeff = CoeffAst::Int(v as i64);
                if !p.eat_sym("*") {
                    unit = true;
                }
            }
            Tok::Sym("(") => {
                p.bump();
                coeff = CoeffAst::Poly(p.poly(&["t"])?);
                p.expect_sym(")")?;
                if !p.eat_sym("*") {
                    unit = true;
                }
            }
            _ => {}
        }
        let mut c = coeff_value(field, &coeff);
        if negate {
            c = field.neg(c);
        }
        if unit {
            for v in 0..pres.quiver.vertices.len() {
                terms.push((c, PathWord::Trivial(v)));
            }
        } else {
            let mut names = vec![p.ident("a path")?.0];
            while p.eat_sym("*") {
                names.push(p.ident("an arrow name")?.0);
            }
            let word = pres.parse_word(&names.join("*")).map_err(|e| match e {
                Error::Presentation(mut d) => {
                    d.location = Some(loc);
                    Error::Presentation(d)
                }
                other => other,
            })?;
            terms.push((c, word));
        }
        if p.eat_sym("+") {
            negate = false;
        } else if p.eat_sym("-") {
            negate = true;
        } else {
            break;
        }
    }
    if *p.peek() != Tok::Eof {
        return p.fail("end of element expression");
    }
    Ok(normalize_terms(field, terms))
}
