use clap::{Args, Parser, Subcommand, ValueEnum};
use crystal_core::groups::lie::{build_restricted_enveloping, RestrictedLieInput};
use crystal_core::groups::{build_function_algebra, build_group_algebra, build_monoid_bialgebra, FiniteGroup, FiniteMonoid};
use crystal_core::pairing::PairingData;
use crystal_core::report::{
    analyze, analyze_enveloping, analyze_group, analyze_pairing, validate_report, AnalysisReport, GroupHints,
    GroupPipeline, PipelineOptions,
};
use crystal_core::rees::DEFAULT_WINDOW_CAP;
use crystal_core::{Error, FieldSpec, HopfAlgebraData, Result};
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "crystal", version, about = "Crystal duality for finite-dimensional Hopf algebras")]
struct Cli {
    /// Write the report as JSON to this file instead of markdown on stdout
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Seed for the randomized law checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Bound on n for the prime functor
    #[arg(long, global = true)]
    max_n: Option<usize>,
    #[arg(long, global = true, default_value_t = DEFAULT_WINDOW_CAP)]
    window_cap: usize,
    /// Number of inputs processed concurrently
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the declared axioms of each input
    Validate { paths: Vec<PathBuf> },
    /// Run the full pipeline on each input
    Analyze { paths: Vec<PathBuf> },
    /// Build k[G] or A_k(G) and run a group pipeline
    Group(GroupArgs),
    /// Validate a pairing and check the orthogonality identities
    Pair { paths: Vec<PathBuf> },
}

#[derive(Args)]
struct GroupArgs {
    /// Group JSON file, or family parameters (p, then exponents or n) when --family is given
    args: Vec<String>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated exponents for Zp_powers
    #[arg(long)]
    exponents: Option<String>,
    /// Field: a prime p for GF(p), or 0 / Q for the rationals
    #[arg(long)]
    field: Option<String>,
    #[arg(long, value_enum, default_value_t = PipelineArg::Crystal)]
    pipeline: PipelineArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum PipelineArg {
    Crystal,
    Jennings,
    Dual,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn parse_field(s: &str) -> Result<FieldSpec> {
    let t = s.trim().trim_start_matches("GF(").trim_end_matches(')');
    match t {
        "Q" | "QQ" | "0" => Ok(FieldSpec::rationals()),
        _ => {
            let p: u64 = t.parse().map_err(|_| Error::Format(format!("bad field {s}")))?;
            FieldSpec::new(p).map_err(|e| Error::InvalidInput(e.to_string()))
        }
    }
}

fn field_of(v: &Value) -> Result<FieldSpec> {
    let ch = v["field"]["char"].as_u64().ok_or_else(|| Error::Format("missing field.char".into()))?;
    FieldSpec::new(ch).map_err(|e| Error::Format(e.to_string()))
}

enum Input {
    Algebra(HopfAlgebraData),
    Enveloping(Box<crystal_core::groups::lie::RestrictedEnveloping>),
}

impl Input {
    fn algebra(&self) -> &HopfAlgebraData {
        match self {
            Input::Algebra(h) => h,
            Input::Enveloping(e) => &e.algebra,
        }
    }
}

/// Structure-constant JSON, or a `restricted_lie`, `group` or `monoid` description.
fn load_input(v: &Value) -> Result<Input> {
    if v.get("restricted_lie").is_some() {
        let g = RestrictedLieInput::from_json(v)?;
        return Ok(Input::Enveloping(Box::new(build_restricted_enveloping(&g)?)));
    }
    if let Some(g) = v.get("group") {
        let group = FiniteGroup::from_json(g)?;
        let field = field_of(v)?;
        return Ok(Input::Algebra(match v.get("algebra").and_then(|a| a.as_str()) {
            Some("function_algebra") => build_function_algebra(&group, field),
            None | Some("group_algebra") => build_group_algebra(&group, field),
            Some(other) => return Err(Error::Format(format!("unknown algebra {other}"))),
        }));
    }
    if let Some(m) = v.get("monoid") {
        let table: Vec<Vec<usize>> = serde_json::from_value(m["table"].clone()).map_err(|e| Error::Format(e.to_string()))?;
        let labels: Vec<String> = match m.get("labels") {
            Some(l) => serde_json::from_value(l.clone()).map_err(|e| Error::Format(e.to_string()))?,
            None => (0..table.len()).map(|i| format!("m{i}")).collect(),
        };
        return Ok(Input::Algebra(build_monoid_bialgebra(&FiniteMonoid::new(table, labels)?, field_of(v)?)));
    }
    Ok(Input::Algebra(HopfAlgebraData::from_json(v)?))
}

fn name_of(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn load_pairing(path: &Path) -> Result<PairingData> {
    let v = read_json(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let side = |key: &str| -> Result<HopfAlgebraData> {
        match &v[key] {
            Value::String(f) => Ok(load_input(&read_json(&base.join(f))?)?.algebra().clone()),
            Value::Object(_) => Ok(load_input(&v[key])?.algebra().clone()),
            _ => Err(Error::Format(format!("pairing needs {key}"))),
        }
    };
    PairingData::from_json(side("left")?, side("right")?, &v)
}

fn run_one(cmd: &Command, path: &Path, opts: &PipelineOptions) -> Result<AnalysisReport> {
    let name = name_of(path);
    match cmd {
        Command::Validate { .. } => Ok(validate_report(load_input(&read_json(path)?)?.algebra(), &name)),
        Command::Analyze { .. } => match load_input(&read_json(path)?)? {
            Input::Algebra(h) => analyze(&h, &name, opts),
            Input::Enveloping(e) => analyze_enveloping(&e, &name, opts),
        },
        Command::Pair { .. } => analyze_pairing(&load_pairing(path)?, &name),
        Command::Group(_) => unreachable!("group runs without a path list"),
    }
}

/// Runs every input, `jobs` at a time, keeping the input order.
fn run_many(cmd: &Command, paths: &[PathBuf], opts: &PipelineOptions, jobs: usize) -> Vec<Result<AnalysisReport>> {
    let mut out = Vec::with_capacity(paths.len());
    for chunk in paths.chunks(jobs.max(1)) {
        let results: Vec<Result<AnalysisReport>> = std::thread::scope(|s| {
            let handles: Vec<_> = chunk.iter().map(|p| s.spawn(move || run_one(cmd, p, opts))).collect();
            handles
                .into_iter()
                .map(|h| h.join().unwrap_or_else(|_| Err(Error::InternalConsistency("worker panicked".into()))))
                .collect()
        });
        out.extend(results);
    }
    out
}

fn group_input(a: &GroupArgs) -> Result<(FiniteGroup, String, GroupHints, Option<usize>)> {
    let Some(family) = &a.family else {
        let path = a.args.first().ok_or_else(|| Error::Format("group needs a JSON file or --family".into()))?;
        let path = Path::new(path);
        let v = read_json(path)?;
        let g = FiniteGroup::from_json(v.get("group").unwrap_or(&v))?;
        let p = v.get("p").and_then(|x| x.as_u64()).map(|x| x as usize);
        return Ok((g, name_of(path), GroupHints::default(), p));
    };
    let mut rest = a.args.iter();
    let mut p = a.p;
    let mut n = a.n;
    let mut exps = a.exponents.clone();
    let number = |s: &String| s.parse::<usize>().map_err(|_| Error::Format(format!("bad number {s}")));
    let takes_p = matches!(family.as_str(), "Zp_powers" | "Zp_semidirect_Zp2");
    if takes_p && p.is_none() {
        p = rest.next().map(number).transpose()?;
    }
    if family == "Zp_powers" && exps.is_none() {
        exps = rest.next().cloned();
    }
    if !takes_p && n.is_none() {
        n = rest.next().map(number).transpose()?;
    }
    if let Some(x) = rest.next() {
        return Err(Error::Format(format!("unexpected argument {x}")));
    }
    let exps: Option<Vec<u32>> = exps
        .map(|e| {
            e.split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Format(format!("bad exponent {x}"))))
                .collect::<Result<Vec<_>>>()
        })
        .transpose()?;
    let mut spec = serde_json::json!({ "family": family });
    if let Some(p) = p {
        spec["p"] = p.into();
    }
    if let Some(n) = n {
        spec["n"] = n.into();
    }
    if let Some(e) = &exps {
        spec["exponents"] = e.clone().into();
    }
    let g = FiniteGroup::from_json(&spec)?;
    let mut hints = GroupHints::default();
    if let (true, Some(e)) = (family == "Zp_powers", &exps) {
        let gens = (1..=e.len())
            .map(|i| g.index_of(&format!("g{i}")).ok_or_else(|| Error::InternalConsistency("missing generator".into())))
            .collect::<Result<Vec<_>>>()?;
        hints.cyclic_generators = Some((gens, e.clone()));
    }
    let mut name = family.clone();
    for (k, v) in [("p", p), ("n", n)] {
        if let Some(v) = v {
            name.push_str(&format!(" {k}={v}"));
        }
    }
    if let Some(e) = &exps {
        name.push_str(&format!(" exponents={e:?}"));
    }
    Ok((g, name, hints, p))
}

fn run_group(a: &GroupArgs, opts: &PipelineOptions) -> Result<AnalysisReport> {
    let (g, name, hints, p) = group_input(a)?;
    let field = match (&a.field, p) {
        (Some(f), _) => parse_field(f)?,
        (None, Some(p)) => FieldSpec::new(p as u64).map_err(|e| Error::InvalidInput(e.to_string()))?,
        (None, None) => FieldSpec::gf(2),
    };
    let pipeline = match a.pipeline {
        PipelineArg::Crystal => GroupPipeline::Crystal,
        PipelineArg::Jennings => GroupPipeline::Jennings,
        PipelineArg::Dual => GroupPipeline::Dual,
    };
    analyze_group(&g, &name, field, pipeline, &hints, opts)
}

fn emit(reports: &[AnalysisReport], json: Option<&Path>) -> Result<()> {
    match json {
        Some(path) => {
            let text = if reports.len() == 1 {
                reports[0].to_json()
            } else {
                serde_json::to_string_pretty(reports).map_err(|e| Error::Format(e.to_string()))?
            };
            std::fs::write(path, text + "\n").map_err(|e| Error::Format(format!("{}: {e}", path.display())))
        }
        None => {
            let md: Vec<String> = reports.iter().map(|r| r.to_markdown()).collect();
            print!("{}", md.join("\n"));
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = PipelineOptions {
        max_n: cli.max_n,
        window_cap: cli.window_cap,
        seed: cli.seed,
        ..Default::default()
    };
    let results = match &cli.command {
        Command::Group(a) => vec![run_group(a, &opts)],
        Command::Validate { paths } | Command::Analyze { paths } | Command::Pair { paths } => {
            if paths.is_empty() {
                eprintln!("error: no input files");
                return ExitCode::from(2);
            }
            run_many(&cli.command, paths, &opts, cli.jobs)
        }
    };
    let mut code = 0u8;
    let mut reports = Vec::new();
    for r in results {
        match r {
            Ok(rep) => {
                if !rep.passed() {
                    code = code.max(1);
                }
                reports.push(rep);
            }
            Err(e) => {
                eprintln!("error: {e}");
                code = code.max(e.exit_code() as u8);
            }
        }
    }
    if let Err(e) = emit(&reports, cli.json.as_deref()) {
        eprintln!("error: {e}");
        code = code.max(2);
    }
    ExitCode::from(code)
}
