//! End-to-end analysis of an input algebra and its canonical serializations.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::families::{family, family_dsl, FamilySpec};
use crate::field::{FieldSpec, Scalar};
use crate::form::{canonical_form, custom_form, SymmetrizingForm};
use crate::kulshammer::{compare, reynolds_sequence, ReynoldsReport, Verdict, DEFAULT_MAX_N};
use crate::normalform::{build_algebra, AlgebraTable, DEFAULT_DEGREE_BOUND};
use crate::presentation::{parse_presentation, Presentation};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Where an algebra comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    File(PathBuf),
    Source(String),
    Family(FamilySpec),
}

impl Input {
    pub fn provenance(&self) -> String {
        match self {
            Input::File(p) => format!("file:{}", p.display()),
            Input::Source(_) => "source".into(),
            Input::Family(f) => format!("family:{f} over {}", f.field),
        }
    }

    pub fn source(&self) -> Result<String> {
        match self {
            Input::File(p) => std::fs::read_to_string(p)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", p.display()))),
            Input::Source(s) => Ok(s.clone()),
            Input::Family(f) => family_dsl(f),
        }
    }

    pub fn presentation(&self) -> Result<Presentation> {
        match self {
            Input::Family(f) => family(f),
            _ => parse_presentation(&self.source()?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub max_n: u32,
    pub degree_bound: usize,
    /// Explicit ψ values `word = coefficient`; empty selects the canonical form.
    pub psi: Vec<(String, i64)>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            max_n: DEFAULT_MAX_N,
            degree_bound: DEFAULT_DEGREE_BOUND,
            psi: Vec::new(),
        }
    }
}

pub struct Analysis {
    pub table: AlgebraTable,
    pub form: SymmetrizingForm,
    pub report: ReynoldsReport,
}

pub fn symmetrizing_form(table: &AlgebraTable, psi: &[(String, i64)]) -> Result<SymmetrizingForm> {
    if psi.is_empty() {
        return canonical_form(table);
    }
    let mut values: Vec<(usize, Scalar)> = Vec::new();
    for (w, c) in psi {
        let word = table.presentation().parse_word(w)?;
        let i = table.basis_index(&word).ok_or_else(|| {
            Error::BadParameters(format!("ψ word `{w}` is not a basis word of the algebra"))
        })?;
        values.push((i, table.field().from_int(*c)));
    }
    custom_form(table, &values)
}

pub fn analyze_presentation(pres: &Presentation, opts: &AnalysisOptions) -> Result<Analysis> {
    let table = build_algebra(pres, opts.degree_bound)?;
    let form = symmetrizing_form(&table, &opts.psi)?;
    let report = reynolds_sequence(&table, &form, opts.max_n)?;
    Ok(Analysis {
        table,
        form,
        report,
    })
}

pub fn analyze(input: &Input, opts: &AnalysisOptions) -> Result<Analysis> {
    analyze_presentation(&input.presentation()?, opts)
}

/// The canonical JSON payload: sorted keys, integers only.
pub fn report_json(r: &ReynoldsReport) -> Value {
    let rows: Vec<Value> = r
        .rows
        .iter()
        .map(|row| json!({"n": row.n, "dim_T": row.dim_t, "dim_T_perp": row.dim_t_perp}))
        .collect();
    json!({
        "name": r.name,
        "field": {"p": r.p, "e": r.e},
        "dim": r.dim,
        "dim_center": r.dim_center,
        "dim_socle": r.dim_socle,
        "dim_commutator": r.dim_commutator,
        "reynolds": rows,
        "stabilized_at": r.stabilized_at,
    })
}

pub fn canonical_json(r: &ReynoldsReport) -> String {
    serde_json::to_string(&report_json(r)).expect("JSON values always serialize")
}

/// Run metadata kept apart from the canonical payload.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisMeta {
    pub version: &'static str,
    pub provenance: String,
    pub field: String,
    pub elapsed_ms: u128,
}

impl AnalysisMeta {
    pub fn new(input: &Input, field: &FieldSpec, started: Instant) -> Self {
        AnalysisMeta {
            version: VERSION,
            provenance: input.provenance(),
            field: field.to_string(),
            elapsed_ms: started.elapsed().as_millis(),
        }
    }
}

pub fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Distinguished { witness_n, dims } => json!({
            "verdict": "distinguished",
            "witness_n": witness_n,
            "dims": [dims.0, dims.1],
        }),
        Verdict::Inconclusive => json!({
            "verdict": "inconclusive",
            "witness_n": null,
            "dims": null,
        }),
    }
}

pub fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Distinguished { witness_n, dims } => format!(
            "DISTINGUISHED at n={witness_n} ({} ≠ {}): not derived equivalent",
            dims.0, dims.1
        ),
        Verdict::Inconclusive => {
            "INCONCLUSIVE: the sequences of generalized Reynolds ideals agree".into()
        }
    }
}

pub fn report_text(r: &ReynoldsReport, field: &FieldSpec) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "algebra {} over {field}", r.name);
    let _ = writeln!(s, "  dim A            {}", r.dim);
    let _ = writeln!(s, "  dim Z(A)         {}", r.dim_center);
    let _ = writeln!(s, "  dim soc(A)       {}", r.dim_socle);
    let _ = writeln!(s, "  dim K(A)         {}", r.dim_commutator);
    let _ = writeln!(s, "  dim soc(A)∩Z(A)  {}", r.dim_socle_center);
    let _ = writeln!(s, "  {:>3}  {:>8}  {:>10}", "n", "dim T_n", "dim T_n^⊥");
    for row in &r.rows {
        let _ = writeln!(s, "  {:>3}  {:>8}  {:>10}", row.n, row.dim_t, row.dim_t_perp);
    }
    match r.stabilized_at {
        Some(n) => {
            let _ = writeln!(s, "  stabilized at n = {n}");
        }
        None => {
            let _ = writeln!(s, "  not stabilized within the computed range");
        }
    }
    s
}

/// Analyzes both inputs concurrently and compares their sequences.
pub fn compare_inputs(
    a: &Input,
    b: &Input,
    opts: &AnalysisOptions,
) -> Result<(ReynoldsReport, ReynoldsReport, Verdict)> {
    let (ra, rb) = std::thread::scope(|s| {
        let ha = s.spawn(|| analyze(a, opts).map(|x| x.report));
        let hb = s.spawn(|| analyze(b, opts).map(|x| x.report));
        (
            ha.join().expect("analysis thread panicked"),
            hb.join().expect("analysis thread panicked"),
        )
    });
    let (ra, rb) = (ra?, rb?);
    let v = compare(&ra, &rb)?;
    Ok((ra, rb, v))
}
