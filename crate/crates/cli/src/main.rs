use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use grpalg::pipeline::{self, RunConfig};
use grpalg::{io, Error, ErrorClass};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "grpalg", version, about = "Exact rational group algebra computations")]
struct Cli {
    /// Group file (permutation generators or JSON Cayley table) or `builtin:NAME`.
    #[arg(long, global = true)]
    group: Option<String>,
    /// Declared pairs file; skips subgroup enumeration and verifies every claim.
    #[arg(long, global = true)]
    pairs: Option<PathBuf>,
    /// Subgroup enumeration cap.
    #[arg(long, global = true, default_value_t = grpalg::group::DEFAULT_SUBGROUP_CAP)]
    cap: usize,
    /// Chain search budget, in step checks.
    #[arg(long, global = true, default_value_t = grpalg::shoda::DEFAULT_CHAIN_BUDGET)]
    budget: usize,
    /// Group closure cap.
    #[arg(long, global = true, default_value_t = grpalg::group::DEFAULT_CLOSURE_CAP)]
    closure_cap: usize,
    /// Height bound for the norm equation search.
    #[arg(long, global = true, default_value_t = grpalg::component::DEFAULT_MAX_HEIGHT)]
    height: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report into this directory instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group-level queries.
    Group {
        #[command(subcommand)]
        what: GroupCommand,
    },
    /// Shoda pair classification.
    Shoda {
        #[command(subcommand)]
        what: ShodaCommand,
    },
    /// Simple components and their dimensions.
    Wedderburn,
    /// Complete sets of orthogonal primitive idempotents.
    Idempotents,
    /// Matrix units of every split component.
    MatrixUnits,
    /// Certified unit generators of the integral group ring.
    Units,
    /// Re-check a bundle of idempotents, matrix units or units.
    Verify { bundle: PathBuf },
    /// Regression corpus.
    Corpus {
        #[command(subcommand)]
        what: CorpusCommand,
    },
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    Info,
}

#[derive(Subcommand, Debug)]
enum ShodaCommand {
    List,
}

#[derive(Subcommand, Debug)]
enum CorpusCommand {
    Run {
        /// Include the order-1000 instance.
        #[arg(long)]
        slow: bool,
    },
}

fn exit_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Input => 2,
        ErrorClass::Budget => 3,
        ErrorClass::Invariant => 4,
        ErrorClass::Unsupported => 5,
    }
}

fn class_name(class: ErrorClass) -> &'static str {
    match class {
        ErrorClass::Input => "input",
        ErrorClass::Budget => "budget",
        ErrorClass::Invariant => "invariant",
        ErrorClass::Unsupported => "unsupported",
    }
}

fn config(cli: &Cli) -> RunConfig {
    RunConfig {
        subgroup_cap: cli.cap,
        closure_cap: cli.closure_cap,
        height_budget: cli.height,
        chain_budget: cli.budget,
        ..RunConfig::default()
    }
}

fn run(cli: &Cli) -> grpalg::Result<(&'static str, Value)> {
    let mut cfg = config(cli);
    cfg.validate()?;
    if let Command::Corpus { what: CorpusCommand::Run { slow } } = &cli.command {
        return Ok(("corpus", pipeline::corpus_run(&cfg, *slow)?));
    }
    let source = cli.group.as_deref().ok_or_else(|| Error::ParameterInvalid("--group is required".into()))?;
    let group = io::load_group(source, cfg.closure_cap)?;
    if let Some(p) = &cli.pairs {
        cfg.declared_pairs = Some(io::load_pairs(&group, p)?);
    }
    Ok(match &cli.command {
        Command::Group { what: GroupCommand::Info } => ("group_info", pipeline::group_info_json(&group, &cfg)?),
        Command::Shoda { what: ShodaCommand::List } => ("shoda", pipeline::classify(&group, &cfg)?.to_json()),
        Command::Wedderburn => ("wedderburn", pipeline::analyze(&group, &cfg)?.wedderburn_json()?),
        Command::Idempotents => ("idempotents", pipeline::analyze(&group, &cfg)?.idempotents_json()?),
        Command::MatrixUnits => ("matrix_units", pipeline::analyze(&group, &cfg)?.matrix_units_json()?),
        Command::Units => ("units", pipeline::analyze(&group, &cfg)?.units_json()?),
        Command::Verify { bundle } => {
            let text = std::fs::read_to_string(bundle).map_err(|e| Error::Parse(format!("cannot read bundle: {e}")))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            ("verify", pipeline::verify_bundle(&group, &v)?)
        }
        Command::Corpus { .. } => unreachable!("handled above"),
    })
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if x.is_object() || x.is_array() && x.as_array().is_some_and(|a| a.iter().any(|y| y.is_object() || y.is_array())) {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(x, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(x)));
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                out.push_str(&format!("{pad}- [{i}]\n"));
                render_text(x, indent + 1, out);
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n",
        Format::Text => {
            let mut s = String::new();
            render_text(v, 0, &mut s);
            s
        }
    }
}

fn emit(cli: &Cli, name: &str, v: &Value) -> std::io::Result<()> {
    let body = render(v, cli.format);
    match &cli.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let ext = if cli.format == Format::Json { "json" } else { "txt" };
            std::fs::write(Path::new(dir).join(format!("{name}.{ext}")), body)
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((name, v)) => match emit(&cli, name, &v) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            let class = e.class();
            let v = json!({"error": {"class": class_name(class), "reason": e.reason(), "message": e.to_string()}});
            print!("{}", render(&v, cli.format));
            eprintln!("error: {e}");
            ExitCode::from(exit_code(class))
        }
    }
}
