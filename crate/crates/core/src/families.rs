//! Generators for the derived normal forms of domestic and
//! representation-finite symmetric algebras.
//!
//! Every generator writes DSL source and parses it, so family instances go
//! through exactly the same validation as user input. Arrows are declared
//! α first, then β, γ, σ, each by index.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::presentation::{parse_presentation, Presentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    Lambda,
    Gamma,
    Tpqr,
    Tpq,
    Tstar,
    Omega,
    N,
    D,
    Dprime,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInfo {
    pub family: Family,
    pub params: &'static [&'static str],
    pub constraint: &'static str,
    pub note: Option<&'static str>,
}

impl fmt::Display for FamilyInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.family.name(), self.constraint)?;
        if let Some(note) = self.note {
            write!(f, ", {note}")?;
        }
        Ok(())
    }
}

const CATALOGUE: [FamilyInfo; 10] = [
    FamilyInfo {
        family: Family::A,
        params: &["p", "q"],
        constraint: "1 ≤ p ≤ q",
        note: None,
    },
    FamilyInfo {
        family: Family::Lambda,
        params: &["m"],
        constraint: "m ≥ 2",
        note: None,
    },
    FamilyInfo {
        family: Family::Gamma,
        params: &["n"],
        constraint: "n ≥ 1",
        note: None,
    },
    FamilyInfo {
        family: Family::Tpqr,
        params: &["p", "q", "r"],
        constraint: "2 ≤ p ≤ q ≤ r",
        note: None,
    },
    FamilyInfo {
        family: Family::Tpq,
        params: &["p", "q"],
        constraint: "1 ≤ p ≤ q",
        note: None,
    },
    FamilyInfo {
        family: Family::Tstar,
        params: &["r"],
        constraint: "r ≥ 2",
        note: None,
    },
    FamilyInfo {
        family: Family::Omega,
        params: &["n"],
        constraint: "n ≥ 1",
        note: Some("symmetric only in characteristic 2"),
    },
    FamilyInfo {
        family: Family::N,
        params: &["n", "m"],
        constraint: "m, n ≥ 1",
        note: None,
    },
    FamilyInfo {
        family: Family::D,
        params: &["m"],
        constraint: "m ≥ 2",
        note: Some("nonstandard in characteristic 2"),
    },
    FamilyInfo {
        family: Family::Dprime,
        params: &["m"],
        constraint: "m ≥ 2",
        note: None,
    },
];

pub fn list_families() -> &'static [FamilyInfo] {
    &CATALOGUE
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::Lambda => "Lambda",
            Family::Gamma => "Gamma",
            Family::Tpqr => "Tpqr",
            Family::Tpq => "Tpq",
            Family::Tstar => "Tstar",
            Family::Omega => "Omega",
            Family::N => "N",
            Family::D => "D",
            Family::Dprime => "Dprime",
        }
    }

    pub fn info(self) -> &'static FamilyInfo {
        CATALOGUE.iter().find(|i| i.family == self).unwrap()
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        CATALOGUE
            .iter()
            .map(|i| i.family)
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<_> = CATALOGUE.iter().map(|i| i.family.name()).collect();
                Error::BadParameters(format!(
                    "unknown family `{s}` (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub params: BTreeMap<String, u32>,
    pub field: FieldSpec,
}

impl FamilySpec {
    pub fn new(family: Family, params: &[(&str, u32)], field: FieldSpec) -> Result<FamilySpec> {
        let spec = FamilySpec {
            family,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            field,
        };
        spec.check()?;
        Ok(spec)
    }

    /// Parses `Omega(n=2)` or `A(p=1,q=2)`.
    pub fn parse(text: &str, field: FieldSpec) -> Result<FamilySpec> {
        let text = text.trim();
        let (name, rest) = match text.find('(') {
            Some(i) if text.ends_with(')') => (&text[..i], &text[i + 1..text.len() - 1]),
            _ => (text, ""),
        };
        let family: Family = name.trim().parse()?;
        let params = parse_params(rest)?;
        let spec = FamilySpec {
            family,
            params,
            field,
        };
        spec.check()?;
        Ok(spec)
    }

    fn get(&self, k: &str) -> u32 {
        self.params[k]
    }

    fn check(&self) -> Result<()> {
        let info = self.family.info();
        let bad = |why: String| {
            Err(Error::BadParameters(format!(
                "{}: {why} (requires {})",
                self.family.name(),
                info.constraint
            )))
        };
        for k in self.params.keys() {
            if !info.params.contains(&k.as_str()) {
                return bad(format!("unexpected parameter `{k}`"));
            }
        }
        for k in info.params {
            if !self.params.contains_key(*k) {
                return bad(format!("missing parameter `{k}`"));
            }
        }
        let v = |k: &str| self.get(k);
        let ok = match self.family {
            Family::A | Family::Tpq => 1 <= v("p") && v("p") <= v("q"),
            Family::Lambda | Family::D | Family::Dprime => v("m") >= 2,
            Family::Gamma | Family::Omega => v("n") >= 1,
            Family::Tpqr => 2 <= v("p") && v("p") <= v("q") && v("q") <= v("r"),
            Family::Tstar => v("r") >= 2,
            Family::N => v("n") >= 1 && v("m") >= 1,
        };
        if ok {
            Ok(())
        } else {
            bad("parameters out of range".into())
        }
    }

    /// Identifier-safe algebra name, e.g. `Omega_2`.
    pub fn algebra_name(&self) -> String {
        let mut s = self.family.name().to_string();
        for k in self.family.info().params {
            let _ = write!(s, "_{}", self.params[*k]);
        }
        s
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self
            .family
            .info()
            .params
            .iter()
            .map(|k| format!("{k}={}", self.params[*k]))
            .collect();
        write!(f, "{}({})", self.family.name(), params.join(","))
    }
}

/// Parses `k=v,k=v`.
pub fn parse_params(text: &str) -> Result<BTreeMap<String, u32>> {
    let mut out = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::BadParameters(format!("expected key=value, got `{item}`")))?;
        let v: u32 = v
            .trim()
            .parse()
            .map_err(|_| Error::BadParameters(format!("`{item}`: value is not a count")))?;
        if out.insert(k.trim().to_string(), v).is_some() {
            return Err(Error::BadParameters(format!("parameter `{}` given twice", k.trim())));
        }
    }
    Ok(out)
}

struct Builder {
    vertices: Vec<String>,
    arrows: Vec<(String, String, String)>,
    relations: Vec<String>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            vertices: vec!["c".into()],
            arrows: Vec::new(),
            relations: Vec::new(),
        }
    }

    /// Oriented cycle `c → v1 → … → v_{len-1} → c` with arrows `{arrow}1..{arrow}len`.
    fn cycle(&mut self, arrow: &str, vertex: &str, len: u32) {
        self.path(arrow, vertex, len, "c", "c");
    }

    /// Path `from → … → to` with `len` arrows and fresh intermediate vertices.
    fn path(&mut self, arrow: &str, vertex: &str, len: u32, from: &str, to: &str) {
        let mut prev = from.to_string();
        for i in 1..=len {
            let next = if i == len {
                to.to_string()
            } else {
                let v = format!("{vertex}{i}");
                self.vertices.push(v.clone());
                v
            };
            self.arrows.push((format!("{arrow}{i}"), prev, next.clone()));
            prev = next;
        }
    }

    fn zero(&mut self, w: String) {
        self.relations.push(format!("{w} = 0"));
    }

    fn equal(&mut self, l: String, r: String) {
        self.relations.push(format!("{l} = {r}"));
    }

    fn emit(&self, name: &str, field: &FieldSpec) -> String {
        let mut s = format!("algebra {name} over {field} {{\n");
        let _ = writeln!(s, "  vertices {};", self.vertices.join(", "));
        s.push_str("  arrows {\n");
        for (a, from, to) in &self.arrows {
            let _ = writeln!(s, "    {a}: {from} -> {to};");
        }
        s.push_str("  }\n  relations {\n");
        for r in &self.relations {
            let _ = writeln!(s, "    {r};");
        }
        s.push_str("  }\n}\n");
        s
    }
}

/// `x_i * x_{i+1} * … * x_j` (1-based, inclusive); empty if `i > j`.
fn run(x: &str, i: u32, j: u32) -> Vec<String> {
    (i..=j).map(|k| format!("{x}{k}")).collect()
}

fn word(parts: &[Vec<String>]) -> String {
    parts.concat().join("*")
}

/// `x_i … x_len  y  x_1 … x_{i-1} x_i` for a cycle `x` of length `len`
/// passing once through the detour `y`.
fn around(x: &str, i: u32, len: u32, detour: &[String]) -> String {
    word(&[
        run(x, i, len),
        detour.to_vec(),
        run(x, 1, i - 1),
        vec![format!("{x}{i}")],
    ])
}

/// DSL source for a family instance.
pub fn family_dsl(spec: &FamilySpec) -> Result<String> {
    spec.check()?;
    let mut b = Builder::new();
    let g = |k: &str| spec.get(k);
    match spec.family {
        Family::A => {
            let (p, q) = (g("p"), g("q"));
            b.cycle("a", "x", p);
            b.cycle("b", "y", q);
            let (al, be) = (run("a", 1, p), run("b", 1, q));
            b.equal(word(&[al.clone(), be.clone()]), word(&[be.clone(), al.clone()]));
            b.zero(format!("a{p}*a1"));
            b.zero(format!("b{q}*b1"));
            for i in 2..p {
                b.zero(around("a", i, p, &be));
            }
            for j in 2..q {
                b.zero(around("b", j, q, &al));
            }
        }
        Family::Lambda => {
            let m = g("m");
            b.cycle("a", "x", 1);
            b.cycle("b", "y", m);
            let be = run("b", 1, m);
            b.equal("a1*a1".into(), word(&[be.clone(), be.clone()]));
            b.zero("a1*b1".into());
            b.zero(format!("b{m}*a1"));
            for j in 2..m {
                b.zero(around("b", j, m, &be));
            }
        }
        Family::Gamma => {
            let n = g("n");
            b.cycle("a", "x", 2);
            b.cycle("b", "y", 2);
            b.cycle("g", "z", n);
            let ga = run("g", 1, n);
            let ga2 = word(&[ga.clone(), ga.clone()]);
            b.equal("a1*a2".into(), ga2.clone());
            b.equal("b1*b2".into(), ga2);
            b.zero("a2*g1".into());
            b.zero("b2*g1".into());
            b.zero(format!("g{n}*a1"));
            b.zero(format!("g{n}*b1"));
            b.zero("a2*b1".into());
            b.zero("b2*a1".into());
            for j in 2..n {
                b.zero(around("g", j, n, &ga));
            }
        }
        Family::Tpqr => {
            let (p, q, r) = (g("p"), g("q"), g("r"));
            b.cycle("a", "x", p);
            b.cycle("b", "y", q);
            b.cycle("g", "z", r);
            let (al, be, ga) = (run("a", 1, p), run("b", 1, q), run("g", 1, r));
            b.equal(word(&[al]), word(std::slice::from_ref(&be)));
            b.equal(word(&[be]), word(&[ga]));
            for (x, lx) in [("a", p), ("b", q), ("g", r)] {
                for (y, _) in [("a", p), ("b", q), ("g", r)] {
                    if x != y {
                        b.zero(format!("{x}{lx}*{y}1"));
                    }
                }
            }
            for (x, lx) in [("a", p), ("b", q), ("g", r)] {
                for i in 2..lx {
                    b.zero(around(x, i, lx, &[]));
                }
            }
        }
        Family::Tpq => {
            let (p, q) = (g("p"), g("q"));
            b.vertices = vec!["t".into(), "u".into()];
            b.path("a", "x", p, "t", "u");
            b.path("b", "y", q, "t", "u");
            b.arrows.push(("g".into(), "u".into(), "t".into()));
            b.arrows.push(("s".into(), "u".into(), "t".into()));
            let (al, be) = (run("a", 1, p), run("b", 1, q));
            let (gm, sg) = (vec!["g".to_string()], vec!["s".to_string()]);
            b.equal(word(&[al.clone(), gm.clone()]), word(&[be.clone(), sg.clone()]));
            b.equal(word(&[gm.clone(), al]), word(&[sg.clone(), be]));
            b.zero(format!("a{p}*s"));
            b.zero("s*a1".into());
            b.zero(format!("b{q}*g"));
            b.zero("g*b1".into());
            for i in 2..p {
                b.zero(around("a", i, p, &gm));
            }
            for j in 2..q {
                b.zero(around("b", j, q, &sg));
            }
        }
        Family::Tstar => {
            let r = g("r");
            b.cycle("a", "x", 2);
            b.cycle("b", "y", 2);
            b.cycle("g", "z", r);
            let s_target = if r == 2 { "c".to_string() } else { "z2".to_string() };
            b.vertices.push("w".into());
            b.arrows.push(("s1".into(), "c".into(), "w".into()));
            b.arrows.push(("s2".into(), "w".into(), s_target));
            let ga = word(&[run("g", 1, r)]);
            b.equal("a1*a2".into(), ga.clone());
            b.equal("b1*b2".into(), ga);
            b.equal("g1*g2".into(), "s1*s2".into());
            for w in [
                format!("g{r}*a1"),
                "b2*a1".into(),
                format!("g{r}*b1"),
                "a2*b1".into(),
                "a2*g1".into(),
                "a2*s1".into(),
                "b2*g1".into(),
                "b2*s1".into(),
                "a2*a1*a2".into(),
                "b2*b1*b2".into(),
                word(&[run("g", 2, r), vec!["s1".into()]]),
                word(&[vec!["s2".into()], run("g", 3, r), vec!["g1".into()]]),
            ] {
                b.zero(w);
            }
            for k in 3..r {
                b.zero(around("g", k, r, &[]));
            }
            if r == 2 {
                // σ2 ends at c only when r = 2; these paths must vanish as
                // γ_r α_1 and γ_r β_1 do
                b.zero("s2*a1".into());
                b.zero("s2*b1".into());
            }
        }
        Family::Omega => {
            let n = g("n");
            b.cycle("a", "x", 1);
            b.cycle("b", "y", n);
            let be = run("b", 1, n);
            b.relations.push(format!(
                "{} + {} = 0",
                word(&[vec!["a1".into()], be.clone()]),
                word(&[be.clone(), vec!["a1".into()]])
            ));
            b.equal("a1*a1".into(), word(&[vec!["a1".into()], be]));
            b.zero(format!("b{n}*b1"));
            for j in 2..n {
                b.zero(around("b", j, n, &["a1".to_string()]));
            }
        }
        Family::N => {
            let (n, m) = (g("n"), g("m"));
            b.vertices = (1..=n).map(|i| format!("v{i}")).collect();
            for i in 1..=n {
                let next = i % n + 1;
                b.arrows.push((format!("a{i}"), format!("v{i}"), format!("v{next}")));
            }
            for i in 1..=n {
                let rot = word(&[run("a", i, n), run("a", 1, i - 1)]);
                let mut parts = vec![rot; m as usize];
                parts.push(format!("a{i}"));
                b.zero(parts.join("*"));
            }
        }
        Family::D | Family::Dprime => {
            let m = g("m");
            b.cycle("a", "x", 1);
            b.cycle("b", "y", m);
            b.equal("a1*a1".into(), word(&[run("b", 1, m)]));
            let lo = if spec.family == Family::D {
                b.equal(format!("b{m}*b1"), format!("b{m}*a1*b1"));
                1
            } else {
                b.zero(format!("b{m}*b1"));
                2
            };
            let hi = if spec.family == Family::D { m } else { m - 1 };
            for i in lo..=hi {
                b.zero(around("b", i, m, &["a1".to_string()]));
            }
        }
    }
    Ok(b.emit(&spec.algebra_name(), &spec.field))
}

pub fn family(spec: &FamilySpec) -> Result<Presentation> {
    let text = family_dsl(spec)?;
    parse_presentation(&text).map_err(|e| {
        Error::InvariantViolation(format!("generated presentation for {spec} is invalid: {e}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn catalogue() {
        let c = list_families();
        assert_eq!(c.len(), 10);
        let lines: Vec<String> = c.iter().map(ToString::to_string).collect();
        assert!(lines.contains(&"Omega: n ≥ 1, symmetric only in characteristic 2".to_string()));
        assert!(lines.contains(&"Tpqr: 2 ≤ p ≤ q ≤ r".to_string()));
    }

    #[test]
    fn parameter_validation() {
        assert!(FamilySpec::new(Family::A, &[("p", 2), ("q", 1)], gf2()).is_err());
        assert!(FamilySpec::new(Family::Lambda, &[("m", 1)], gf2()).is_err());
        assert!(FamilySpec::new(Family::Tpqr, &[("p", 1), ("q", 2), ("r", 2)], gf2()).is_err());
        assert!(FamilySpec::new(Family::Omega, &[("m", 1)], gf2()).is_err());
        assert!(FamilySpec::new(Family::N, &[("n", 1)], gf2()).is_err());
        let err = FamilySpec::new(Family::Tstar, &[("r", 1)], gf2()).unwrap_err();
        assert!(err.to_string().contains("r ≥ 2"), "{err}");
    }

    #[test]
    fn parse_spec_strings() {
        let s = FamilySpec::parse("Omega(n=2)", gf2()).unwrap();
        assert_eq!(s.family, Family::Omega);
        assert_eq!(s.to_string(), "Omega(n=2)");
        let s = FamilySpec::parse("a(q=2, p=1)", gf2()).unwrap();
        assert_eq!(s.to_string(), "A(p=1,q=2)");
        assert_eq!(s.algebra_name(), "A_1_2");
        assert!(FamilySpec::parse("Sigma(n=2)", gf2()).is_err());
        assert!(FamilySpec::parse("Omega(n=two)", gf2()).is_err());
    }

    #[test]
    fn a12_relations() {
        let p = family(&FamilySpec::new(Family::A, &[("p", 1), ("q", 2)], gf2()).unwrap()).unwrap();
        let rels: Vec<String> = p
            .relations
            .iter()
            .map(|r| p.format_combination(&r.terms))
            .collect();
        assert_eq!(rels.len(), 3);
        assert!(rels.iter().any(|r| r == "a1*a1"), "{rels:?}");
        assert!(rels.iter().any(|r| r == "b2*b1"), "{rels:?}");
    }

    #[test]
    fn tstar_r2_sigma_targets_center() {
        let text = family_dsl(&FamilySpec::new(Family::Tstar, &[("r", 2)], gf2()).unwrap()).unwrap();
        assert!(text.contains("s2: w -> c;"), "{text}");
        let text = family_dsl(&FamilySpec::new(Family::Tstar, &[("r", 3)], gf2()).unwrap()).unwrap();
        assert!(text.contains("s2: w -> z2;"), "{text}");
    }
}
