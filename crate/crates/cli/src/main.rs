use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use orbchar::chern_gauss_bonnet::{default_tolerance, run_scenario, CgbError, Steps, DEFAULT_GRID};
use orbchar::euler_calculus::{integrate, ConstructibleFunction, DefinableSpace};
use orbchar::euler_ring::configure_iso_cap;
use orbchar::group_engine::{GroupPresentation, DEFAULT_ISO_CAP};
use orbchar::groupoid_invariants::{chi_es, chi_gamma, chi_gamma_es, chi_un, GroupoidModel};
use orbchar::selftest::{self, Fault, SelftestConfig, DEFAULT_SEED};

const THREADS_VAR: &str = "ORBCHAR_THREADS";

#[derive(Parser, Debug)]
#[command(name = "orbchar", version, about = "Euler characteristics of orbit space groupoids")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Largest group order compared by brute-force isomorphism.
    #[arg(long, default_value_t = DEFAULT_ISO_CAP, global = true)]
    iso_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Euler characteristic of a stratified space, and the integral of an
    /// optional `integrand` object mapping stratum labels to values.
    Chi {
        space: PathBuf,
    },
    /// Universal, Gamma-, Euler-Satake and Gamma-Euler-Satake characteristics
    /// of a groupoid model.
    Invariants {
        model: PathBuf,
        /// `Z`, `Z^k`, `Z/n`, `1`, or a presentation JSON file.
        #[arg(long, default_value = "Z")]
        gamma: String,
    },
    /// Runs a Gauss-Bonnet quadrature scenario.
    Gb {
        scenario: String,
        /// Quadrature nodes per sphere-bundle direction.
        #[arg(long, default_value_t = DEFAULT_GRID as u32, value_parser = clap::value_parser!(u32).range(4..=4096))]
        grid: u32,
        /// Allowed absolute error; defaults to a per-scenario value.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Runs the seeded property suite.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Random cases per property.
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<FaultArg>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FaultArg {
    FlipEulerSign,
}

/// How a run ended, mapped onto the exit status.
enum Failure {
    /// Bad flags, unreadable files, unknown names.
    Usage(String),
    /// Input that does not validate, or a computation or check that failed.
    Invalid(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Usage(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Invalid(m) => m,
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("orbchar: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: Cli) -> Outcome {
    configure_threads()?;
    configure_iso_cap(cli.iso_cap).map_err(|e| Failure::Usage(e.to_string()))?;
    match cli.command {
        Command::Chi { space } => cmd_chi(&space, cli.format),
        Command::Invariants { model, gamma } => cmd_invariants(&model, &gamma, cli.format),
        Command::Gb { scenario, grid, tol } => cmd_gb(&scenario, grid as usize, tol, cli.format),
        Command::Selftest {
            seed,
            cases,
            inject_fault,
        } => cmd_selftest(seed, cases, inject_fault, cli.format),
    }
}

fn configure_threads() -> Outcome {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("{THREADS_VAR} must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot size the thread pool: {e}")))
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("{}: malformed JSON: {e}", path.display())))
}

fn emit(format: Format, report: &Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).expect("reports serialize")),
        Format::Text => print!("{}", text()),
    }
}

fn integer_json(n: &BigInt) -> Value {
    i64::try_from(n).map(Value::from).unwrap_or_else(|_| Value::from(n.to_string()))
}

fn parse_rational(v: &Value) -> Option<BigRational> {
    match v {
        Value::Number(n) => n.as_i64().map(|i| BigRational::from_integer(i.into())),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

fn cmd_chi(path: &Path, format: Format) -> Outcome {
    let value = read_json(path)?;
    let invalid = |e: &dyn std::fmt::Display| Failure::Invalid(format!("{}: {e}", path.display()));
    let space = DefinableSpace::from_json(&value).map_err(|e| invalid(&e))?;
    let chi = space.euler_char();

    let integral = match value.get("integrand") {
        None | Some(Value::Null) => None,
        Some(Value::Object(entries)) => {
            let mut f = ConstructibleFunction::<BigRational>::new();
            for (label, v) in entries {
                let x = parse_rational(v)
                    .ok_or_else(|| invalid(&format!("integrand value for `{label}` is not an integer or fraction")))?;
                f.set(label.clone(), x);
            }
            Some(integrate(&f, &space).map_err(|e| invalid(&e))?)
        }
        Some(_) => return Err(invalid(&"`integrand` must be an object keyed by stratum label")),
    };

    let strata: Vec<Value> = space
        .strata()
        .iter()
        .map(|s| json!({"label": s.label, "chi": integer_json(&s.cells.euler_char())}))
        .collect();
    let mut report = json!({"euler_characteristic": integer_json(&chi), "strata": strata});
    if let Some(i) = &integral {
        report["integral"] = Value::from(i.to_string());
    }
    emit(format, &report, || {
        let mut out = format!("chi = {chi}\n");
        for s in space.strata() {
            out += &format!("  {}: {}\n", s.label, s.cells.euler_char());
        }
        if let Some(i) = &integral {
            out += &format!("integral = {i}\n");
        }
        out
    });
    Ok(())
}

/// Either a shorthand or a presentation file, and how to label it in reports.
fn parse_gamma(arg: &str) -> Result<(GroupPresentation, Value), Failure> {
    if let Ok(p) = GroupPresentation::parse_shorthand(arg) {
        return Ok((p, Value::from(arg.trim())));
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(Failure::Usage(format!(
            "--gamma `{arg}` is neither Z, Z^k, Z/n, 1 nor an existing presentation file"
        )));
    }
    let value = read_json(path)?;
    let p = GroupPresentation::from_json(&value)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    Ok((p, value))
}

fn cmd_invariants(path: &Path, gamma_arg: &str, format: Format) -> Outcome {
    let (gamma, gamma_label) = parse_gamma(gamma_arg)?;
    let value = read_json(path)?;
    let model = GroupoidModel::from_json(&value).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;

    let unsupported = |e: orbchar::groupoid_invariants::GroupoidError| Failure::Invalid(e.to_string());
    let un = chi_un(&model);
    let gamma_value = chi_gamma(&model, &gamma).map_err(unsupported)?;
    let es = chi_es(&model);
    let gamma_es = chi_gamma_es(&model, &gamma).map_err(unsupported)?;

    let report = json!({
        "gamma": gamma_label,
        "chi_un": un.to_string(),
        "chi_un_terms": un.to_json()["terms"],
        "chi_gamma": integer_json(&gamma_value),
        "chi_es": es.to_string(),
        "chi_gamma_es": gamma_es.to_string(),
    });
    emit(format, &report, || {
        let shown = match &gamma_label {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        format!(
            "gamma         {shown}\nchi_un        {un}\nchi_gamma     {gamma_value}\nchi_es        {es}\nchi_gamma_es  {gamma_es}\n"
        )
    });
    Ok(())
}

fn cmd_gb(scenario: &str, grid: usize, tol: Option<f64>, format: Format) -> Outcome {
    let tol = tol.unwrap_or_else(|| default_tolerance(scenario));
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Failure::Usage(format!("--tol must be a non-negative number, got {tol}")));
    }
    let report = run_scenario(scenario, grid, &Steps::default()).map_err(|e| match e {
        CgbError::UnknownScenario { .. } => Failure::Usage(e.to_string()),
        other => Failure::Invalid(other.to_string()),
    })?;
    let ok = report.within(tol);
    let mut j = report.to_json();
    j["tolerance"] = json!(tol);
    j["ok"] = json!(ok);
    emit(format, &j, || {
        format!(
            "{}: {:.6} (expected {}, |error| {:.3e}, grid {}, tolerance {})\n",
            report.scenario, report.value, report.expected, report.abs_error, report.grid, tol
        )
    });
    if ok {
        Ok(())
    } else {
        Err(Failure::Invalid(format!(
            "{}: |error| {:.3e} exceeds tolerance {tol}",
            report.scenario, report.abs_error
        )))
    }
}

fn cmd_selftest(seed: u64, cases: usize, fault: Option<FaultArg>, format: Format) -> Outcome {
    let config = SelftestConfig {
        seed,
        cases,
        fault: fault.map(|FaultArg::FlipEulerSign| Fault::FlipEulerSign),
    };
    let report = selftest::run(&config);
    emit(format, &report.to_json(), || {
        let mut out = format!("seed {}\n", report.seed);
        for p in &report.properties {
            let status = if p.failed == 0 { "PASS" } else { "FAIL" };
            out += &format!("{status} {} ({}/{})\n", p.name, p.passed, p.passed + p.failed);
            if let Some(first) = &p.first_failure {
                out += &format!("     first failure: {first}\n");
            }
        }
        out
    });
    if report.all_passed() {
        Ok(())
    } else {
        let names: Vec<&str> = report.violated().map(|p| p.name).collect();
        Err(Failure::Invalid(format!("violated: {}", names.join(", "))))
    }
}
