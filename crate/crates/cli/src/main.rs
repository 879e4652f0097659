use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qk_cli::acceptance;
use qk_cli::commands::{self, Faults, Report};
use qk_cli::input::{self, read_json};
use qk_cli::CliError;
use qk_core::ifunction::GrassmannDatum;
use qk_core::localization::LocalizationInput;
use qk_core::ring::{int, Rational};
use qk_core::toric::ToricGitDatum;

/// Exact quantum K-theory of toric GIT quotients.
#[derive(Parser)]
#[command(name = "qk", version)]
struct Cli {
    /// Write the JSON report here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Built-in example, e.g. "pn 2", "wps 1 2", "bz2", "p1xp1", "blp2", "cremona".
    #[arg(long)]
    example: Option<String>,
    /// Problem file.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Batyrev relations and, for weighted projective spaces, the presentation ring.
    Present {
        #[command(flatten)]
        source: Source,
        /// Energy cap for the listed relations.
        #[arg(long)]
        cap: Option<String>,
        #[arg(long, hide = true, default_value_t = 0)]
        perturb_batyrev: u32,
    },
    /// Truncated I-function coefficients.
    Ifun {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        cap: Option<String>,
        /// Jet order in the insertion coordinates.
        #[arg(long)]
        jet: Option<u32>,
        /// Also expand each coefficient at z = 0 to this order.
        #[arg(long)]
        zorder: Option<i64>,
        /// Abelianized Grassmannian G(r, n) instead of a toric datum.
        #[arg(long, num_args = 2, value_names = ["R", "N"])]
        grass: Option<Vec<usize>>,
        /// Scale of the trace form, or "none".
        #[arg(long)]
        killing: Option<String>,
    },
    /// Atiyah-Segal Euler characteristic from fixed-point data.
    Chi {
        #[command(flatten)]
        source: Source,
        /// Character of the line bundle, with --example.
        #[arg(long)]
        psi: Option<String>,
        /// One-parameter subgroup; a generic one is chosen when absent.
        #[arg(long)]
        one_ps: Option<String>,
    },
    /// Sweep a polarization family and accumulate wall-crossing terms.
    Wallcross {
        #[command(flatten)]
        source: Source,
        /// "O", a character "1,0", or a combination "2:1,0; -1:0,1".
        #[arg(long, default_value = "O")]
        class: String,
        /// Family start, overriding the example or file.
        #[arg(long)]
        from: Option<String>,
        /// Family end.
        #[arg(long)]
        to: Option<String>,
    },
    /// Abelianized Grassmannian I-function coefficients.
    Grass {
        /// "grass <r> <n>".
        #[arg(long)]
        example: Option<String>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        /// Largest degree.
        #[arg(long, default_value_t = 2)]
        cap: i64,
        #[arg(long)]
        killing: Option<String>,
        /// Check the index-bundle chain at this degree vector.
        #[arg(long)]
        eulind: Option<String>,
    },
    /// Balanced-weight test and the Delta(z) factor.
    CrepantCheck {
        /// Comma separated, e.g. "2x3,-2x3" or "1@1/2,-1".
        #[arg(long)]
        weights: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the acceptance criteria.
    Acceptance {
        /// Criterion id or tag, e.g. "4" or "wallcross".
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, hide = true, default_value_t = 0)]
        perturb_batyrev: u32,
    },
}

fn toric_datum(source: &Source, kind: &str) -> Result<(ToricGitDatum, Option<Value>), CliError> {
    match (&source.example, &source.json) {
        (Some(_), None) => Ok((input::family(source.example.as_deref(), None)?.datum, None)),
        (None, Some(path)) => {
            let doc = read_json(path)?;
            let v = input::payload(&doc, kind)?;
            let datum = ToricGitDatum::from_json(v.get("datum").unwrap_or(v))?;
            Ok((datum, Some(doc)))
        }
        _ => Err(CliError::Usage("give exactly one of --example <name> or --json <path>".into())),
    }
}

/// Flag value, else the problem file option, else the default.
fn rational_option(flag: &Option<String>, doc: &Option<Value>, key: &str, default: i64) -> Result<Rational, CliError> {
    if let Some(s) = flag {
        return input::parse_cap(s);
    }
    match doc.as_ref().and_then(|d| input::option(d, key)) {
        Some(Value::String(s)) => input::parse_cap(s),
        Some(Value::Number(n)) => n.as_i64().map(int).ok_or_else(|| CliError::Usage(format!("bad {key}"))),
        Some(v) => Err(CliError::Usage(format!("bad {key}: {v}"))),
        None => Ok(int(default)),
    }
}

fn int_option(flag: Option<i64>, doc: &Option<Value>, key: &str) -> Result<Option<i64>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match doc.as_ref().and_then(|d| input::option(d, key)) {
        None => Ok(None),
        Some(v) => v.as_i64().map(Some).ok_or_else(|| CliError::Usage(format!("bad {key}: {v}"))),
    }
}

fn grassmannian(r: usize, n: usize, killing: &Option<String>) -> Result<GrassmannDatum, CliError> {
    let g = GrassmannDatum::new(r, n)?;
    Ok(match killing {
        Some(k) => g.with_killing(input::parse_killing(k)?),
        None => g,
    })
}

fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Present { source, cap, perturb_batyrev } => {
            let (datum, doc) = toric_datum(source, "present")?;
            let cap = rational_option(cap, &doc, "cap", 1)?;
            commands::present(&datum, &cap, Faults { batyrev_shift: *perturb_batyrev })
        }
        Command::Ifun { source, cap, jet, zorder, grass, killing } => {
            if let Some(rn) = grass {
                let g = grassmannian(rn[0], rn[1], killing)?;
                let cap = cap.as_deref().map(input::parse_ints).transpose()?.and_then(|v| v.first().copied());
                return commands::grass(&g, cap.unwrap_or(2), None);
            }
            let (datum, doc) = toric_datum(source, "ifun")?;
            let cap = rational_option(cap, &doc, "cap", 2)?;
            let jet = int_option(jet.map(i64::from), &doc, "jet")?.unwrap_or(0);
            let jet = u32::try_from(jet).map_err(|_| CliError::Usage(format!("bad jet order {jet}")))?;
            let zorder = int_option(*zorder, &doc, "zorder")?;
            commands::ifun(&datum, &cap, jet, zorder)
        }
        Command::Chi { source, psi, one_ps } => {
            let mut li = match (&source.example, &source.json) {
                (Some(name), None) => {
                    let datum = input::family(Some(name), None)?.datum;
                    let psi = match psi {
                        Some(p) => input::parse_ints(p)?,
                        None => vec![0; datum.rank()],
                    };
                    LocalizationInput::from_datum(&datum, &psi, vec![])?
                }
                (None, Some(path)) => {
                    let doc = read_json(path)?;
                    let mut li = LocalizationInput::from_json(input::payload(&doc, "chi")?)?;
                    if let Some(v) = input::option(&doc, "one_ps") {
                        li.one_ps = input::ints(v)?;
                    }
                    li
                }
                _ => return Err(CliError::Usage("give exactly one of --example <name> or --json <path>".into())),
            };
            if let Some(a) = one_ps {
                li.one_ps = input::parse_ints(a)?;
            }
            commands::chi(&li)
        }
        Command::Wallcross { source, class, from, to } => {
            let doc = source.json.as_deref().map(read_json).transpose()?;
            let mut family = input::family(source.example.as_deref(), doc.as_ref().map(|d| (d, "wallcross")))?;
            if let Some(f) = from {
                family.theta_minus = input::parse_rationals(f)?;
            }
            if let Some(t) = to {
                family.theta_plus = input::parse_rationals(t)?;
            }
            let r = family.datum.rank();
            let class = match doc.as_ref().and_then(|d| input::payload(d, "wallcross").ok()).and_then(|v| v.get("class")) {
                Some(v) if class == "O" => input::class_from_json(v, r)?,
                _ => input::parse_class(class, r)?,
            };
            commands::wallcross(&family, &class)
        }
        Command::Grass { example, r, n, cap, killing, eulind } => {
            let g = match (example, r, n) {
                (Some(name), None, None) => input::grass_example(name)
                    .unwrap_or_else(|| Err(CliError::Usage(format!("'{name}' is not a Grassmannian example"))))?,
                (None, Some(r), Some(n)) => GrassmannDatum::new(*r, *n)?,
                _ => return Err(CliError::Usage("give --example \"grass <r> <n>\" or both --r and --n".into())),
            };
            let g = match killing {
                Some(k) => g.with_killing(input::parse_killing(k)?),
                None => g,
            };
            let dv = eulind.as_deref().map(input::parse_ints).transpose()?;
            commands::grass(&g, *cap, dv.as_deref())
        }
        Command::CrepantCheck { weights, json } => {
            let spec = match (weights, json) {
                (Some(w), None) => w.clone(),
                (None, Some(path)) => {
                    let doc = read_json(path)?;
                    input::payload(&doc, "crepant")?["weights"]
                        .as_str()
                        .ok_or_else(|| CliError::Usage("crepant problem needs a \"weights\" string".into()))?
                        .to_string()
                }
                _ => return Err(CliError::Usage("give exactly one of --weights or --json".into())),
            };
            commands::crepant(&input::parse_weights(&spec)?)
        }
        Command::Acceptance { filter, perturb_batyrev } => {
            let verdicts = acceptance::run(filter.as_deref(), Faults { batyrev_shift: *perturb_batyrev });
            if verdicts.is_empty() {
                return Err(CliError::Usage(format!("no criterion matches '{}'", filter.as_deref().unwrap_or(""))));
            }
            let text: String = verdicts.iter().map(|v| v.line() + "\n").collect();
            let failed: Vec<&str> = verdicts.iter().filter(|v| !v.outcome.pass).map(|v| v.id).collect();
            let failure = (!failed.is_empty()).then(|| format!("criteria failed: {}", failed.join(", ")));
            let mut json = acceptance::summary_json(&verdicts);
            json["command"] = json!("acceptance");
            Ok(Report { json, text, failure })
        }
    }
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn main() -> ExitCode {
    // Status 2 is reserved for failed checks, so argument errors exit with 1.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = run(&cli.command).and_then(|report| {
        print!("{}", report.text);
        if let Some(path) = &cli.out {
            write_out(path, &report.json_text())?;
        }
        match report.failure {
            Some(msg) => Err(CliError::Check(msg)),
            None => Ok(()),
        }
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            // A report that was already written stays; only input errors replace it.
            if let (Some(path), false) = (&cli.out, matches!(e, CliError::Check(_))) {
                let doc = json!({"error": {"code": e.code(), "message": e.to_string()}});
                let _ = write_out(path, &(serde_json::to_string_pretty(&doc).expect("values serialize") + "\n"));
            }
            ExitCode::from(e.exit_status() as u8)
        }
    }
}
