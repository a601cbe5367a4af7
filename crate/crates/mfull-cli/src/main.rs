use clap::{Parser, Subcommand, ValueEnum};
use mfull::scenario::{self, FieldSpec, Report, SuiteParams};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "mfull", version, about = "Homological checks over weighted-graded quotient rings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a ring and print its presentation and Hilbert data.
    Ring {
        /// Scenario file whose [ring] section is used.
        file: Option<String>,
        /// Semigroup generators, e.g. 4,5,6.
        #[arg(long, conflicts_with_all = ["file", "vars"])]
        semigroup: Option<String>,
        /// Extra free variables for a semigroup ring, e.g. u:1.
        #[arg(long, requires = "semigroup")]
        extra: Option<String>,
        /// Variable names, e.g. x,y,z.
        #[arg(long, conflicts_with = "file")]
        vars: Option<String>,
        #[arg(long, requires = "vars")]
        weights: Option<String>,
        /// Comma separated relations, e.g. "x*z-y^2, x*y-z^2".
        #[arg(long, requires = "vars")]
        relations: Option<String>,
        #[arg(long, value_parser = field)]
        field: Option<FieldSpec>,
        #[arg(long, default_value_t = 24)]
        degrees: usize,
    },
    /// Run a scenario file (or a built-in scenario by name).
    Check {
        file: String,
        #[arg(long, value_parser = field)]
        field: Option<FieldSpec>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run a property suite.
    Suite {
        name: String,
        #[arg(long, default_value_t = 8)]
        bound: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_parser = field, default_value = "q")]
        field: FieldSpec,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Run every built-in example scenario and the Jorgensen suite.
    Examples {
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Print a report for a scenario file, built-in scenario, or `suite:NAME`.
    Report {
        target: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, value_parser = field)]
        field: Option<FieldSpec>,
    },
    /// List built-in scenarios and suites.
    List,
}

fn field(s: &str) -> Result<FieldSpec, String> {
    FieldSpec::parse(s).ok_or_else(|| format!("expected q or p:PRIME, got {s}"))
}

fn source(target: &str) -> Result<(String, String), String> {
    if let Some(t) = scenario::builtin(target) {
        return Ok((t.to_string(), target.to_string()));
    }
    let text = std::fs::read_to_string(target).map_err(|e| format!("{target}: {e}"))?;
    let name = std::path::Path::new(target).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| target.into());
    Ok((text, name))
}

fn emit(r: &Report, f: Format) {
    match f {
        Format::Table => print!("{}", r.to_table()),
        Format::Json => println!("{}", r.to_json()),
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    let err = |e: mfull::error::Error| e.to_string();
    match cli.cmd {
        Cmd::Ring { file, semigroup, extra, vars, weights, relations, field, degrees } => {
            let (text, name) = if let Some(f) = file {
                source(&f)?
            } else {
                let mut t = String::from("[ring]\n");
                if let Some(s) = semigroup {
                    t += &format!("semigroup = {s}\n");
                    if let Some(e) = extra {
                        t += &format!("extra = {e}\n");
                    }
                } else if let Some(v) = vars {
                    t += &format!("vars = {v}\n");
                    if let Some(w) = weights {
                        t += &format!("weights = {w}\n");
                    }
                    if let Some(r) = relations {
                        t += &format!("relations = {r}\n");
                    }
                } else {
                    return Err("give a scenario file, --semigroup or --vars".into());
                }
                (t, "ring".into())
            };
            let v = scenario::ring_summary(&text, &name, field, degrees).map_err(err)?;
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
            Ok(0)
        }
        Cmd::Check { file, field, format } => {
            let (text, name) = source(&file)?;
            let r = scenario::run_scenario(&text, &name, field).map_err(err)?;
            emit(&r, format);
            Ok(r.exit_code())
        }
        Cmd::Suite { name, bound, seed, field, format } => {
            let p = SuiteParams { bound, seed, field, ..SuiteParams::default() };
            let r = scenario::theorem_suite(&name, &p).map_err(err)?;
            emit(&r, format);
            Ok(r.exit_code())
        }
        Cmd::Examples { format } => {
            let mut code = 0;
            for n in scenario::builtin_names().into_iter().filter(|n| n.starts_with("example-")) {
                let r = scenario::run_scenario(scenario::builtin(n).unwrap(), n, None).map_err(err)?;
                emit(&r, format);
                code = code.max(r.exit_code());
            }
            let r = scenario::jorgensen_suite().map_err(err)?;
            emit(&r, format);
            Ok(code.max(r.exit_code()))
        }
        Cmd::Report { target, format, field } => {
            let r = match target.strip_prefix("suite:") {
                Some(s) => {
                    let p = SuiteParams { field: field.unwrap_or(FieldSpec::Q), ..SuiteParams::default() };
                    scenario::theorem_suite(s, &p).map_err(err)?
                }
                None => {
                    let (text, name) = source(&target)?;
                    scenario::run_scenario(&text, &name, field).map_err(err)?
                }
            };
            emit(&r, format);
            Ok(r.exit_code())
        }
        Cmd::List => {
            println!("scenarios: {}", scenario::builtin_names().join(" "));
            println!("suites: {}", scenario::suite_names().join(" "));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(c) => ExitCode::from(c as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
