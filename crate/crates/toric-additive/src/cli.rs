//! Command-line dispatch. [`run`] returns the process exit code: 0 on
//! success, 1 for usage or parse errors, 2 for invalid fans, 3 for internal
//! inconsistencies and failed verifications.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::json;
use toric_additive_core::additive::classify;
use toric_additive_core::builtins::{builtin, BUILTIN_NAMES};
use toric_additive_core::roots::all_roots;
use toric_additive_core::{Error, Fan2};

use crate::document::{fan_rays, maximal_cones, root_lists, verification_report, ClassificationDocument};
use crate::input::{build, example_document, read_document, FanDocument, InputError};
use crate::render;
use crate::sweep::{self, Level, SweepConfig};

pub const SEED_ENV: &str = "TORIC_ADDITIVE_SEED";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Check that the rays form a complete fan
    Validate,
    /// List the Demazure roots
    Roots,
    /// Classify additive actions
    Classify,
    /// Print the representative actions
    Actions,
    /// Run the verification checks
    Verify,
    /// Draw the fan and its roots as SVG
    Render,
    /// List built-in fans, or print one
    Examples,
    /// Check every small complete fan
    Sweep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "toric-additive", version, about = "Additive actions on complete toric surfaces")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Built-in fan name or path to a fan file
    pub fan: Option<String>,
    /// Fan file: JSON document or one `x y` ray per line (`-` for stdin)
    #[arg(long, short, conflicts_with_all = ["example", "fan"])]
    pub input: Option<PathBuf>,
    /// Built-in fan (p1xp1, example2, p2, f1, p112, f:A)
    #[arg(long, short, conflicts_with = "fan")]
    pub example: Option<String>,
    #[arg(long, short, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Half-width of the brute-force root box
    #[arg(long = "box", default_value_t = 10, value_name = "B")]
    pub box_size: i64,
    /// Seed for randomized retries; overridden by TORIC_ADDITIVE_SEED
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write output here instead of stdout
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Append the verification report to `classify`
    #[arg(long)]
    pub verify: bool,
    /// Divide non-primitive rays by their content
    #[arg(long)]
    pub normalize_rays: bool,
    /// Sweep: coordinate bound for rays
    #[arg(long, default_value_t = 3)]
    pub bound: i64,
    /// Sweep: fewest rays
    #[arg(long, default_value_t = 3)]
    pub min_rays: usize,
    /// Sweep: most rays
    #[arg(long, default_value_t = 6)]
    pub max_rays: usize,
    /// Sweep: skip the polynomial checks
    #[arg(long)]
    pub structure_only: bool,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure {
            code: e.exit_code(),
            message: e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => 1,
            _ => 3,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Output text plus exit code.
struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    crate::json::to_string(v)
}

fn seed(cli: &Cli) -> Result<u64, Failure> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Failure {
            code: 1,
            message: format!("{SEED_ENV} must be an unsigned integer, found {v:?}"),
        }),
        Err(_) => Ok(cli.seed),
    }
}

fn load(cli: &Cli) -> Result<FanDocument, Failure> {
    if let Some(p) = &cli.input {
        return Ok(read_document(p)?);
    }
    if let Some(name) = &cli.example {
        return Ok(example_document(name)?);
    }
    match &cli.fan {
        Some(f) if builtin(f).is_some() => Ok(example_document(f)?),
        Some(f) => Ok(read_document(f.as_ref())?),
        None => Err(Failure {
            code: 1,
            message: String::from("no fan given: pass a built-in name, --example NAME or --input FILE"),
        }),
    }
}

fn load_fan(cli: &Cli) -> Result<(FanDocument, Fan2), Failure> {
    let doc = load(cli)?;
    let fan = build(&doc, cli.normalize_rays)?;
    Ok((doc, fan))
}

fn validate(cli: &Cli) -> Result<Output, Failure> {
    let doc = load(cli)?;
    match build(&doc, cli.normalize_rays) {
        Ok(fan) => Ok(Output::ok(match cli.format {
            Format::Json => to_json(&json!({
                "valid": true,
                "name": doc.name,
                "rays": fan_rays(&fan),
                "maximal_cones": maximal_cones(&fan),
            })),
            Format::Text => format!(
                "valid: {} rays, {} maximal cones\n{}{}",
                fan.num_rays(),
                fan.maximal_cones().len(),
                render::rays_text(doc.name.as_deref(), &fan_rays(&fan)),
                render::cones_text(&maximal_cones(&fan)),
            ),
        })),
        Err(e) if cli.format == Format::Json => Ok(Output {
            text: to_json(&json!({ "valid": false, "name": doc.name, "error": e.to_string() })),
            code: e.exit_code(),
        }),
        Err(e) => Err(e.into()),
    }
}

fn roots(cli: &Cli) -> Result<Output, Failure> {
    let (doc, fan) = load_fan(cli)?;
    let rs = all_roots(&fan)?;
    let lists = root_lists(&rs);
    let pair = |v: &toric_additive_core::CharVec| [v[0], v[1]];
    let semisimple: Vec<[i64; 2]> = rs.semisimple.iter().map(pair).collect();
    let unipotent: Vec<[i64; 2]> = rs.unipotent.iter().map(pair).collect();
    let positive: Option<Vec<[i64; 2]>> = rs.positive.as_ref().map(|p| p.iter().map(pair).collect());
    let u = rs.regular_vector.as_ref().map(|u| [u[0], u[1]]);
    Ok(Output::ok(match cli.format {
        Format::Json => to_json(&json!({
            "name": doc.name,
            "rays": fan_rays(&fan),
            "count": rs.len(),
            "roots": lists,
            "semisimple": semisimple,
            "unipotent": unipotent,
            "regular_vector": u,
            "positive": positive,
        })),
        Format::Text => {
            let mut s = render::rays_text(doc.name.as_deref(), &fan_rays(&fan));
            s += &render::roots_text(&lists, &semisimple, &unipotent);
            if let Some(u) = u {
                s += &format!("u = ({}, {})\n", u[0], u[1]);
            }
            s
        }
    }))
}

fn classification(cli: &Cli, with_report: bool) -> Result<(ClassificationDocument, i32), Failure> {
    let (doc, fan) = load_fan(cli)?;
    let c = classify(&fan)?;
    let mut out = ClassificationDocument::new(doc.name, &c);
    let mut code = 0;
    if with_report {
        let report = verification_report(&c, cli.box_size, seed(cli)?);
        if !report.all_passed {
            code = 3;
        }
        out.verification = Some(report);
    }
    Ok((out, code))
}

fn classify_cmd(cli: &Cli) -> Result<Output, Failure> {
    let (doc, code) = classification(cli, cli.verify)?;
    let text = match cli.format {
        Format::Json => to_json(&doc),
        Format::Text => render::classification_text(&doc),
    };
    Ok(Output { text, code })
}

fn actions(cli: &Cli) -> Result<Output, Failure> {
    let (doc, _) = classification(cli, false)?;
    Ok(Output::ok(match cli.format {
        Format::Json => to_json(&json!({
            "name": doc.name,
            "admits_action": doc.admits_action,
            "num_classes": doc.num_classes,
            "actions": doc.actions,
        })),
        Format::Text => match &doc.actions {
            None => String::from("no additive action\n"),
            Some(a) => {
                let mut s = String::from("normalized action:\n");
                s += &render::action_text(&a.normalized);
                if let Some(nn) = &a.non_normalized {
                    s += "non-normalized action:\n";
                    s += &render::action_text(nn);
                }
                s
            }
        },
    }))
}

fn verify(cli: &Cli) -> Result<Output, Failure> {
    let (doc, code) = classification(cli, true)?;
    let report = doc.verification.expect("report requested");
    let text = match cli.format {
        Format::Json => to_json(&report),
        Format::Text => render::report_text(&report),
    };
    Ok(Output { text, code })
}

fn render_cmd(cli: &Cli) -> Result<Output, Failure> {
    let (doc, _) = classification(cli, false)?;
    Ok(Output::ok(render::svg(&doc)))
}

fn examples(cli: &Cli) -> Result<Output, Failure> {
    if cli.fan.is_none() && cli.example.is_none() && cli.input.is_none() {
        return Ok(Output::ok(match cli.format {
            Format::Json => to_json(&BUILTIN_NAMES),
            Format::Text => BUILTIN_NAMES.iter().map(|n| format!("{n}\n")).collect(),
        }));
    }
    let doc = load(cli)?;
    Ok(Output::ok(match cli.format {
        Format::Json => to_json(&doc),
        Format::Text => doc.rays.iter().map(|r| format!("{} {}\n", r[0], r[1])).collect(),
    }))
}

fn sweep_cmd(cli: &Cli) -> Result<Output, Failure> {
    let config = SweepConfig {
        bound: cli.bound,
        min_rays: cli.min_rays,
        max_rays: cli.max_rays,
        box_size: cli.box_size,
        seed: seed(cli)?,
        level: if cli.structure_only { Level::Structure } else { Level::Full },
    };
    let report = sweep::run(&config);
    let code = if report.total_violations() == 0 { 0 } else { 3 };
    let text = match cli.format {
        Format::Json => to_json(&json!({ "config": config, "report": report })),
        Format::Text => {
            let mut s = format!(
                "fans: {}\nadmitting: {}\nwide: {}\n",
                report.fans, report.admitting, report.wide
            );
            for (d, n) in &report.by_d {
                s += &format!("non-wide with d = {d}: {n}\n");
            }
            for (name, n) in &report.checked {
                s += &format!("{name}: {n} checked, {} violations\n", report.violations_of(name));
            }
            for e in &report.examples {
                s += &format!("violation {e}\n");
            }
            s += &format!("time: {:.2}s\n", report.seconds);
            s
        }
    };
    Ok(Output { text, code })
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Validate => validate(cli),
        Command::Roots => roots(cli),
        Command::Classify => classify_cmd(cli),
        Command::Actions => actions(cli),
        Command::Verify => verify(cli),
        Command::Render => render_cmd(cli),
        Command::Examples => examples(cli),
        Command::Sweep => sweep_cmd(cli),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let out = match dispatch(&cli) {
        Ok(o) => o,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &out.text),
        None => stdout.write_all(out.text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write output: {e}");
        return 1;
    }
    out.code
}
