use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use kuls_core::error::{Error, Result};
use kuls_core::families::{list_families, parse_params, Family, FamilySpec};
use kuls_core::field::FieldSpec;
use kuls_core::kulshammer::{brute_force_kuelshammer, kuelshammer_space, DEFAULT_MAX_N};
use kuls_core::normalform::{build_algebra, DEFAULT_DEGREE_BOUND};
use kuls_core::presentation::{diagnose, ParseOptions};
use kuls_core::report::{
    analyze, canonical_json, compare_inputs, report_text, verdict_json, verdict_text,
    AnalysisMeta, AnalysisOptions, Input,
};

#[derive(Parser)]
#[command(name = "kuls", version, about = "Generalized Reynolds ideals of symmetric quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a presentation file and list its diagnostics.
    Parse {
        file: PathBuf,
        #[arg(long)]
        allow_disconnected: bool,
    },
    /// Compute the Reynolds ideal sequence of one algebra.
    Invariants(InvariantsArgs),
    /// Compare the Reynolds ideal sequences of two algebras.
    Compare(CompareArgs),
    /// Check the linear-algebra T_n against exhaustive enumeration.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        budget: u128,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
        degree_bound: usize,
    },
    /// List the built-in families and their parameter ranges.
    Families,
}

#[derive(Args)]
struct FieldArgs {
    /// Prime field GF(P).
    #[arg(long = "char", value_name = "P", conflicts_with = "field")]
    characteristic: Option<u32>,
    /// Field as GF(p), GF(p,e) or GF(p^e).
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    max_n: u32,
    #[arg(long, default_value_t = DEFAULT_DEGREE_BOUND)]
    degree_bound: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct InvariantsArgs {
    /// Presentation file (omit when using --family).
    file: Option<PathBuf>,
    #[arg(long, conflicts_with = "file")]
    family: Option<String>,
    /// Family parameters, e.g. p=1,q=2.
    #[arg(long, requires = "family", default_value = "")]
    params: String,
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Explicit symmetrizing functional on socle words, e.g. a*b=1.
    #[arg(long, value_name = "WORD=COEFF,...")]
    psi: Option<String>,
    /// Print the DSL source of the input and stop.
    #[arg(long)]
    emit_dsl: bool,
}

#[derive(Args)]
struct CompareArgs {
    /// File path or family spec such as Omega(n=2).
    first: String,
    second: String,
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    pipeline: PipelineArgs,
}

fn parse_field(text: &str) -> Result<FieldSpec> {
    let bad = || Error::BadField(format!("cannot read field `{text}` (expected GF(p), GF(p,e) or GF(p^e))"));
    let inner = text
        .trim()
        .strip_prefix("GF(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(bad)?;
    let parts: Vec<&str> = inner.split([',', '^']).map(str::trim).collect();
    let nums: Vec<u32> = parts
        .iter()
        .map(|s| s.parse().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    match nums[..] {
        [p] => FieldSpec::prime(p),
        [p, e] => FieldSpec::extension(p, e, None),
        _ => Err(bad()),
    }
}

impl FieldArgs {
    fn spec(&self) -> Result<Option<FieldSpec>> {
        match (&self.characteristic, &self.field) {
            (Some(p), _) => FieldSpec::prime(*p).map(Some),
            (None, Some(f)) => parse_field(f).map(Some),
            (None, None) => Ok(None),
        }
    }
}

impl PipelineArgs {
    fn options(&self, psi: Vec<(String, i64)>) -> AnalysisOptions {
        AnalysisOptions {
            max_n: self.max_n,
            degree_bound: self.degree_bound,
            psi,
        }
    }
}

fn family_input(name: &str, params: &str, field: Option<FieldSpec>) -> Result<Input> {
    let field = field.ok_or_else(|| {
        Error::Usage("a family input needs --char P or --field GF(...)".into())
    })?;
    let family: Family = name.parse()?;
    let params = parse_params(params)?;
    let pairs: Vec<(&str, u32)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    Ok(Input::Family(FamilySpec::new(family, &pairs, field)?))
}

fn file_input(path: &Path, field: &Option<FieldSpec>) -> Result<Input> {
    if field.is_some() {
        return Err(Error::Usage(
            "--char/--field only apply to family inputs; a file declares its own field".into(),
        ));
    }
    Ok(Input::File(path.to_path_buf()))
}

/// A path to an existing file, otherwise a family spec like `Omega(n=2)`.
fn resolve_input(text: &str, field: &Option<FieldSpec>) -> Result<Input> {
    let path = Path::new(text);
    if path.is_file() {
        return file_input(path, field);
    }
    if !text.contains('(') {
        return Err(Error::Usage(format!(
            "`{text}` is neither a readable file nor a family spec like Omega(n=2)"
        )));
    }
    let field = field.clone().ok_or_else(|| {
        Error::Usage("a family input needs --char P or --field GF(...)".into())
    })?;
    Ok(Input::Family(FamilySpec::parse(text, field)?))
}

fn parse_psi(text: &str) -> Result<Vec<(String, i64)>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (w, c) = item
                .rsplit_once('=')
                .ok_or_else(|| Error::Usage(format!("--psi expects WORD=COEFF, got `{item}`")))?;
            let c: i64 = c
                .trim()
                .parse()
                .map_err(|_| Error::Usage(format!("--psi coefficient in `{item}` is not an integer")))?;
            Ok((w.trim().to_string(), c))
        })
        .collect()
}

fn print_json(v: &impl serde::Serialize) {
    println!("{}", serde_json::to_string(v).expect("serializable"));
}

fn cmd_parse(file: &Path, allow_disconnected: bool) -> Result<ExitCode> {
    let text = Input::File(file.to_path_buf()).source()?;
    let diags = diagnose(&text, ParseOptions { allow_disconnected });
    if diags.is_empty() {
        println!("{}: ok", file.display());
        return Ok(ExitCode::SUCCESS);
    }
    for d in &diags {
        println!("{}: {d}", file.display());
    }
    Ok(ExitCode::from(1))
}

fn cmd_invariants(args: &InvariantsArgs) -> Result<ExitCode> {
    let field = args.field.spec()?;
    let input = match (&args.file, &args.family) {
        (Some(path), None) => file_input(path, &field)?,
        (None, Some(name)) => family_input(name, &args.params, field)?,
        _ => return Err(Error::Usage("give a presentation FILE or --family NAME".into())),
    };
    if args.emit_dsl {
        print!("{}", input.source()?);
        return Ok(ExitCode::SUCCESS);
    }
    let psi = args.psi.as_deref().map(parse_psi).transpose()?.unwrap_or_default();
    let started = Instant::now();
    let analysis = analyze(&input, &args.pipeline.options(psi))?;
    let field = analysis.table.field().spec().clone();
    let meta = AnalysisMeta::new(&input, &field, started);
    if args.pipeline.json {
        println!("{}", canonical_json(&analysis.report));
        eprintln!("{}", serde_json::to_string(&meta).expect("serializable"));
    } else {
        print!("{}", report_text(&analysis.report, &field));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(args: &CompareArgs) -> Result<ExitCode> {
    let field = args.field.spec()?;
    let a = resolve_input(&args.first, &field)?;
    let b = resolve_input(&args.second, &field)?;
    let (ra, rb, verdict) = compare_inputs(&a, &b, &args.pipeline.options(Vec::new()))?;
    if args.pipeline.json {
        print_json(&verdict_json(&verdict));
    } else {
        let seq = |r: &kuls_core::kulshammer::ReynoldsReport| {
            r.rows.iter().map(|x| x.dim_t_perp.to_string()).collect::<Vec<_>>().join(" ⊇ ")
        };
        println!("{}: dim T_n^⊥ = {}", ra.name, seq(&ra));
        println!("{}: dim T_n^⊥ = {}", rb.name, seq(&rb));
        println!("{}", verdict_text(&verdict));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(file: &Path, n: u32, budget: u128, degree_bound: usize) -> Result<ExitCode> {
    let pres = Input::File(file.to_path_buf()).presentation()?;
    let table = build_algebra(&pres, degree_bound)?;
    let brute = brute_force_kuelshammer(&table, n, budget)?;
    let linear = kuelshammer_space(&table, n);
    if linear != brute {
        return Err(Error::InvariantViolation(format!(
            "T_{n}: semilinear kernel has dim {} but enumeration gives dim {}",
            linear.dim(),
            brute.dim()
        )));
    }
    println!("T_{n}({}): dim {} by both methods", table.name(), linear.dim());
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Parse {
            file,
            allow_disconnected,
        } => cmd_parse(&file, allow_disconnected),
        Command::Invariants(args) => cmd_invariants(&args),
        Command::Compare(args) => cmd_compare(&args),
        Command::Oracle {
            file,
            n,
            budget,
            degree_bound,
        } => cmd_oracle(&file, n, budget, degree_bound),
        Command::Families => {
            for info in list_families() {
                println!("{info}  (params: {})", info.params.join(", "));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    // usage errors exit 1; 2 is reserved for internal invariant violations
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            if e.is_internal() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
