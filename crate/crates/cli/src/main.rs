use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use dsb::criteria::{apply_rules, Invariants};
use dsb::dsb::{graded_kernel_profile, splitting_type, GradedProfile, SplittingReport};
use dsb::linear::{base_divisor_search, chordal_form, decompose, plane_criterion, LinStabVerdict, PlaneMap};
use dsb::repro::{check_fixture, fixtures, section8_counterexample, slope3_family, DEFAULT_SEED};
use dsb::{Error, Form, LinearSeriesP1};

/// Dual span bundles and stability verdicts for linear series.
///
/// INPUT arguments accept a file path, inline JSON, or `-` for stdin.
#[derive(Debug, Parser)]
#[command(name = "dsb", version)]
struct Cli {
    /// Also write the JSON result to this file.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Splitting type, slope and verdicts of the dual span bundle of a series.
    Split { input: String },
    /// Recomputes the graded profile recorded in a `split` result.
    VerifySplit { input: String },
    /// Linear stability of a plane map or a series.
    Linstab {
        input: String,
        /// Search base divisors up to this degree instead of the default dispatch.
        #[arg(long)]
        max_base_degree: Option<usize>,
    },
    /// Chordal gcd and singular analysis of a plane map.
    Chordal { input: String },
    /// Runs the criteria engine on curve and series invariants.
    Certify { input: String },
    /// Regenerates the worked examples.
    Reproduce {
        #[command(subcommand)]
        which: Reproduce,
    },
    /// Lists the golden fixtures.
    Fixtures {
        /// Recompute every fixture and report mismatches.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Subcommand)]
enum Reproduce {
    /// Linearly stable net with unstable dual span bundle.
    Section8 {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Family member with slope −3.
    Slope3 {
        #[arg(long)]
        k: i64,
    },
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn to_json(&self) -> Value {
        match self {
            Failure::Core(Error::Validation(v)) => json!({
                "error": "validation",
                "name": variant_name(v),
                "message": v.to_string(),
            }),
            Failure::Core(e) => json!({ "error": e.kind(), "message": e.to_string() }),
            Failure::Input(m) => json!({ "error": "input", "message": m }),
        }
    }
}

fn variant_name<T: std::fmt::Debug>(v: &T) -> String {
    let s = format!("{v:?}");
    s.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

struct Outcome {
    value: Value,
    decided: bool,
}

fn read_input(arg: &str) -> Result<Value, Failure> {
    let text = match arg.trim_start().chars().next() {
        Some('{') | Some('[') => arg.to_string(),
        _ if arg == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Input(e.to_string()))?;
            s
        }
        _ => fs::read_to_string(arg).map_err(|e| Failure::Input(format!("{arg}: {e}")))?,
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("malformed JSON: {e}")))
}

#[derive(Deserialize)]
struct SeriesInput {
    d: usize,
    basis: Vec<Form>,
}

#[derive(Deserialize)]
struct MapInput {
    forms: Vec<Form>,
    #[serde(default)]
    birational: Option<bool>,
}

fn parse<T: for<'de> Deserialize<'de>>(v: Value, what: &str) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::Input(format!("not a {what}: {e}")))
}

fn series_from(v: Value) -> Result<LinearSeriesP1, Failure> {
    let s: SeriesInput = parse(v, "series")?;
    Ok(LinearSeriesP1::new(s.d, s.basis)?)
}

fn map_from(v: Value) -> Result<PlaneMap, Failure> {
    let m: MapInput = parse(v, "plane map")?;
    let forms: [Form; 3] = m
        .forms
        .try_into()
        .map_err(|_| Failure::Input("a plane map has exactly three forms".into()))?;
    let phi = PlaneMap::new(forms)?;
    Ok(match m.birational {
        Some(b) => phi.with_birational_flag(b),
        None => phi,
    })
}

fn to_value<T: serde::Serialize>(t: &T) -> Result<Value, Failure> {
    serde_json::to_value(t).map_err(|e| Failure::Core(Error::Json(e)))
}

fn split(input: Value) -> Result<Outcome, Failure> {
    let v = series_from(input)?;
    let profile = graded_kernel_profile(&v);
    let report = SplittingReport::new(splitting_type(&v)?);
    let mut value = to_value(&report)?;
    value["series"] = to_value(&v)?;
    value["profile"] = to_value(&profile)?;
    Ok(Outcome { value, decided: true })
}

fn verify_split(input: Value) -> Result<Outcome, Failure> {
    #[derive(Deserialize)]
    struct Recorded {
        series: Value,
        twists: Vec<usize>,
        profile: Vec<usize>,
    }
    let rec: Recorded = parse(input, "split result")?;
    let v = series_from(rec.series)?;
    let profile = graded_kernel_profile(&v);
    let from_twists = GradedProfile::of_twists(&rec.twists, v.d());
    let profile_matches = profile.0 == rec.profile;
    let twists_match = from_twists == profile;
    if !(profile_matches && twists_match) {
        return Err(Failure::Input(format!(
            "profile mismatch: recomputed {:?}, recorded {:?}, implied by twists {:?}",
            profile.0, rec.profile, from_twists.0
        )));
    }
    Ok(Outcome {
        value: json!({ "profile_matches": true, "twists_match": true, "profile": profile.0 }),
        decided: true,
    })
}

fn linstab(input: Value, max_base_degree: Option<usize>) -> Result<Outcome, Failure> {
    let verdict: LinStabVerdict = if input.get("forms").is_some() {
        let phi = map_from(input)?;
        match max_base_degree {
            Some(n) => base_divisor_search(&phi.series()?, n)?,
            None if phi.birational_flag() != Some(false) && decompose(&phi)?.is_birational() => plane_criterion(&phi)?,
            None => {
                let v = phi.series()?;
                base_divisor_search(&v, v.d() - 1)?
            }
        }
    } else {
        let v = series_from(input)?;
        match max_base_degree {
            Some(n) => base_divisor_search(&v, n)?,
            None => dsb::linear::linear_verdict(&v)?,
        }
    };
    Ok(Outcome {
        decided: verdict.status.is_decided(),
        value: to_value(&verdict)?,
    })
}

fn chordal(input: Value) -> Result<Outcome, Failure> {
    let phi = map_from(input)?;
    Ok(Outcome {
        value: to_value(&chordal_form(&phi)?)?,
        decided: true,
    })
}

fn certify(input: Value) -> Result<Outcome, Failure> {
    let inv: Invariants = parse(input, "invariants tuple")?;
    let report = apply_rules(&inv.curve, &inv.series)?;
    Ok(Outcome {
        decided: report.is_decided(),
        value: to_value(&report)?,
    })
}

fn reproduce(which: Reproduce) -> Result<Outcome, Failure> {
    match which {
        Reproduce::Section8 { degree, seed } => {
            let rep = section8_counterexample(degree, seed)?;
            Ok(Outcome {
                decided: rep.linear.status.is_decided(),
                value: to_value(&rep)?,
            })
        }
        Reproduce::Slope3 { k } => {
            let rep = slope3_family(k)?;
            Ok(Outcome {
                decided: rep.engine.is_decided(),
                value: to_value(&rep)?,
            })
        }
    }
}

fn list_fixtures(check: bool) -> Result<Outcome, Failure> {
    let all = fixtures()?;
    if !check {
        return Ok(Outcome {
            value: to_value(&all)?,
            decided: true,
        });
    }
    let checks = all.iter().map(check_fixture).collect::<Result<Vec<_>, _>>()?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
    if !failed.is_empty() {
        return Err(Failure::Input(format!("fixtures disagree with golden data: {}", failed.join(", "))));
    }
    Ok(Outcome {
        value: to_value(&checks)?,
        decided: true,
    })
}

fn execute(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Split { input } => split(read_input(&input)?),
        Command::VerifySplit { input } => verify_split(read_input(&input)?),
        Command::Linstab { input, max_base_degree } => linstab(read_input(&input)?, max_base_degree),
        Command::Chordal { input } => chordal(read_input(&input)?),
        Command::Certify { input } => certify(read_input(&input)?),
        Command::Reproduce { which } => reproduce(which),
        Command::Fixtures { check } => list_fixtures(check),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match execute(cli.command) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.value).expect("JSON values serialize") + "\n";
            print!("{text}");
            if let Some(path) = cli.output {
                if let Err(e) = fs::write(&path, &text) {
                    eprintln!("{}", json!({ "error": "io", "message": format!("{}: {e}", path.display()) }));
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(if out.decided { 0 } else { 2 })
        }
        Err(f) => {
            eprintln!("{}", f.to_json());
            ExitCode::from(1)
        }
    }
}
