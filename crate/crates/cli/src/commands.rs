//! Command-line surface and dispatch.
//!
//! Every command produces an [`Outcome`]. Exit code 0 means success or a
//! passing check, 1 a failing check, 2 an error. Checks and errors finish
//! with a single JSON status line.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use growthkit::catalog::{self, AlgorithmSpec};
use growthkit::duality::{self, check_inversion_duality, check_transpose_duality};
use growthkit::exec::Strategy;
use growthkit::growth::{extract_p, extract_q, invert_growth, run_growth};
use growthkit::oracle;
use growthkit::{Channel, Correspondence, InsertionDiagram, Instantiation, Shape};

use crate::render::{self, Format};
use crate::{parse_gp, records, CliError};

#[derive(Debug, Parser)]
#[command(
    name = "growthkit",
    version,
    about = "Growth diagrams for weighted dual graded graphs"
)]
pub struct Cli {
    /// Run checks on the calling thread only.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in algorithms.
    List,
    /// Grow a diagram and print P and Q.
    Run {
        #[arg(long, short)]
        algorithm: String,
        /// Compact form, e.g. "6o 4o 7 5 2 3 1o".
        #[arg(long, short, allow_hyphen_values = true)]
        perm: String,
        #[arg(long, short, default_value = "text")]
        format: Format,
        /// Also print the whole growth diagram.
        #[arg(long, short)]
        diagram: bool,
    },
    /// Recover the permutation from a P and Q tableau pair.
    Invert {
        #[arg(long, short)]
        algorithm: String,
        #[arg(long)]
        p: PathBuf,
        #[arg(long)]
        q: PathBuf,
    },
    /// Re-render a growth diagram saved as records.
    Render {
        #[arg(long)]
        records: PathBuf,
        #[arg(long, short, default_value = "text")]
        format: Format,
    },
    /// Structural checks: weights, diagrams, bijectivity, dualities.
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// Weight equation for one or all built-in instantiations.
    Weights {
        #[arg(long, short, default_value = "all")]
        instantiation: String,
        #[arg(long, default_value_t = 10)]
        max_size: usize,
    },
    /// The three insertion diagram constraints.
    Diagram {
        /// Diagram in text form; needs --instantiation or --algorithm.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, short)]
        instantiation: Option<String>,
        #[arg(long, short)]
        algorithm: Option<String>,
        /// One shape; without it every shape up to --max-size is checked.
        #[arg(long, short, allow_hyphen_values = true)]
        shape: Option<String>,
        #[arg(long, default_value_t = 10)]
        max_size: usize,
    },
    /// Exhaustive bijectivity at size n.
    Bijection {
        #[arg(long, short)]
        algorithm: String,
        #[arg(long, short)]
        n: u32,
    },
    /// Inverse growth undoes growth on every gp up to size n.
    Roundtrip {
        #[arg(long, short)]
        algorithm: String,
        #[arg(long, short)]
        n: u32,
    },
    /// Restricted diagrams agree with grown subwords up to size n.
    Restriction {
        #[arg(long, short)]
        algorithm: String,
        #[arg(long, short)]
        n: u32,
    },
    /// A declared duality between two algorithms, exhaustively up to n.
    Duality {
        #[arg(long, short, value_enum)]
        kind: DualityKind,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, short)]
        n: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DualityKind {
    Inversion,
    Transpose,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            ..Default::default()
        }
    }

    fn check(mut stdout: String, check: &str, pass: bool, detail: serde_json::Value) -> Self {
        let status = if pass { "pass" } else { "fail" };
        let line = json!({ "status": status, "check": check, "detail": detail });
        let _ = writeln!(stdout, "{line}");
        Outcome {
            stdout,
            stderr: String::new(),
            code: if pass { 0 } else { 1 },
        }
    }

    fn error(e: &CliError) -> Self {
        let line = json!({ "status": "error", "kind": e.kind(), "reason": e.to_string() });
        Outcome {
            stdout: String::new(),
            stderr: format!("{line}\n"),
            code: 2,
        }
    }
}

pub fn execute(cli: Cli) -> Outcome {
    let strategy = if cli.sequential {
        Strategy::Sequential
    } else {
        Strategy::default()
    };
    dispatch(cli.command, strategy).unwrap_or_else(|e| Outcome::error(&e))
}

/// Parses arguments (without the program name) and runs them.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once("growthkit".into()).chain(args.into_iter().map(Into::into));
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                return Outcome::ok(text);
            }
            let reason = text.lines().next().unwrap_or_default();
            let reason = reason.trim_start_matches("error: ").to_string();
            let mut out = Outcome::error(&CliError::Usage(reason));
            out.stderr.insert_str(0, &text);
            out
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn dispatch(command: Command, strategy: Strategy) -> Result<Outcome, CliError> {
    match command {
        Command::List => Ok(Outcome::ok(list())),
        Command::Run {
            algorithm,
            perm,
            format,
            diagram,
        } => run(&algorithm, &perm, format, diagram),
        Command::Invert { algorithm, p, q } => invert(&algorithm, &p, &q),
        Command::Render { records, format } => {
            let (name, g) = records::read_growth(&read(&records)?)?;
            let alg = catalog::get(&name)?;
            g.check(alg.as_ref())?;
            Ok(Outcome::ok(render::render_growth(&g, &alg, format)))
        }
        Command::Verify(v) => verify(v, strategy),
    }
}

fn list() -> String {
    let mut out = String::new();
    for alg in catalog::list_algorithms() {
        let inst = alg.instantiation();
        let _ = writeln!(
            out,
            "{:<20} {:<9} r={} {}",
            alg.name(),
            inst.geometry.name(),
            inst.r,
            inst.name
        );
    }
    out
}

fn run(name: &str, perm: &str, format: Format, diagram: bool) -> Result<Outcome, CliError> {
    let alg = catalog::get(name)?;
    let gp = parse_gp(perm, alg.instantiation().r)?;
    let g = run_growth(alg.as_ref(), &gp)?;
    let (p, q) = (extract_p(&g), extract_q(&g));
    let palette = alg.palette();
    let mut out = String::new();
    match format {
        Format::Text => {
            let _ = writeln!(out, "algorithm: {}", alg.name());
            let _ = writeln!(out, "input: {gp}");
            out.push_str("P:\n");
            out.push_str(&render::render_tableau(
                &p,
                palette,
                Channel::Ascending,
                "P",
                format,
            ));
            out.push_str("Q:\n");
            out.push_str(&render::render_tableau(
                &q,
                palette,
                Channel::Descending,
                "Q",
                format,
            ));
            if diagram {
                out.push_str("diagram:\n");
                out.push_str(&render::render_growth(&g, &alg, format));
            }
        }
        Format::Records | Format::Latex => {
            out.push_str(&render::render_tableau(
                &p,
                palette,
                Channel::Ascending,
                "P",
                format,
            ));
            out.push_str(&render::render_tableau(
                &q,
                palette,
                Channel::Descending,
                "Q",
                format,
            ));
            if diagram {
                out.push_str(&render::render_growth(&g, &alg, format));
            }
        }
    }
    Ok(Outcome::ok(out))
}

fn invert(name: &str, p: &Path, q: &Path) -> Result<Outcome, CliError> {
    let alg = catalog::get(name)?;
    let geometry = alg.instantiation().geometry;
    let p = render::parse_tableau(&read(p)?, geometry, alg.palette(), Channel::Ascending)?;
    let q = render::parse_tableau(&read(q)?, geometry, alg.palette(), Channel::Descending)?;
    let gp = invert_growth(alg.as_ref(), &p, &q)?;
    Ok(Outcome::ok(format!("{gp}\n")))
}

fn instantiation(name: &str) -> Result<Instantiation, CliError> {
    Instantiation::builtin(name)
        .ok_or_else(|| CliError::Usage(format!("unknown instantiation {name:?}")))
}

fn verify(v: Verify, strategy: Strategy) -> Result<Outcome, CliError> {
    match v {
        Verify::Weights {
            instantiation: name,
            max_size,
        } => {
            let insts = if name == "all" {
                Instantiation::builtins()
            } else {
                vec![instantiation(&name)?]
            };
            let mut out = String::new();
            let mut failed = Vec::new();
            for inst in insts {
                let rep = inst.verify_instantiation(max_size);
                let status = if rep.failures.is_empty() {
                    "ok"
                } else {
                    "FAIL"
                };
                let _ = writeln!(out, "{:<22} {:>4} shapes  {status}", rep.name, rep.checked);
                for f in &rep.failures {
                    let _ = writeln!(out, "  {f}");
                }
                if !rep.failures.is_empty() {
                    failed.push(rep.name);
                }
            }
            let pass = failed.is_empty();
            Ok(Outcome::check(
                out,
                "weights",
                pass,
                json!({ "max_size": max_size, "failed": failed }),
            ))
        }
        Verify::Diagram {
            file,
            instantiation: inst_name,
            algorithm,
            shape,
            max_size,
        } => verify_diagram(file, inst_name, algorithm, shape, max_size),
        Verify::Bijection { algorithm, n } => {
            let alg = catalog::get(&algorithm)?;
            let rep = oracle::check_bijection_with(&alg, n, strategy);
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{} n={}: {} inputs, {} distinct images, {} same-shape pairs",
                rep.algorithm, rep.n, rep.inputs, rep.distinct_images, rep.expected_pairs
            );
            let _ = writeln!(
                out,
                "sum f1*f2 = {}, n!*r^n = {}",
                rep.identity_lhs, rep.identity_rhs
            );
            for f in &rep.failures {
                let _ = writeln!(out, "  {f}");
            }
            let detail = json!({
                "algorithm": rep.algorithm,
                "n": n,
                "inputs": rep.inputs,
                "distinct_images": rep.distinct_images,
                "expected_pairs": rep.expected_pairs,
                "failures": rep.failures,
            });
            Ok(Outcome::check(out, "bijection", rep.ok(), detail))
        }
        Verify::Roundtrip { algorithm, n } => {
            let alg = catalog::get(&algorithm)?;
            let rep = oracle::check_roundtrip(&alg, n, strategy);
            Ok(sweep("roundtrip", &algorithm, n, rep))
        }
        Verify::Restriction { algorithm, n } => {
            let alg = catalog::get(&algorithm)?;
            let rep = oracle::check_restriction(&alg, n, strategy);
            Ok(sweep("restriction", &algorithm, n, rep))
        }
        Verify::Duality { kind, a, b, n } => {
            let (sa, sb) = (catalog::get(&a)?, catalog::get(&b)?);
            let rep = match kind {
                DualityKind::Inversion => {
                    let rule = duality::inversion_rule(&a, &b).ok_or_else(|| {
                        CliError::Usage(format!("no inversion duality declared for {a} and {b}"))
                    })?;
                    check_inversion_duality(&sa, &sb, &rule, n, strategy)?
                }
                DualityKind::Transpose => {
                    let (f, g) = duality::transpose_maps(&a, &b).ok_or_else(|| {
                        CliError::Usage(format!("no transpose duality declared for {a} and {b}"))
                    })?;
                    check_transpose_duality(&sa, &sb, &f, &g, n, strategy)?
                }
            };
            let check = match kind {
                DualityKind::Inversion => "inversion-duality",
                DualityKind::Transpose => "transpose-duality",
            };
            let mut out = format!(
                "{a} / {b} up to n={n}: {} checked, {} failures\n",
                rep.checked, rep.failures
            );
            for c in &rep.counterexamples {
                let _ = writeln!(out, "  {c}");
            }
            let detail = json!({
                "a": a, "b": b, "n": n,
                "checked": rep.checked,
                "failures": rep.failures,
                "counterexamples": rep.counterexamples,
            });
            Ok(Outcome::check(out, check, rep.ok(), detail))
        }
    }
}

fn sweep(check: &str, algorithm: &str, n: u32, rep: oracle::SweepReport) -> Outcome {
    let mut out = format!(
        "{algorithm} up to n={n}: {} checked, {} failures\n",
        rep.checked,
        rep.failures.len()
    );
    for f in &rep.failures {
        let _ = writeln!(out, "  {f}");
    }
    let detail =
        json!({ "algorithm": algorithm, "n": n, "checked": rep.checked, "failures": rep.failures });
    Outcome::check(out, check, rep.ok(), detail)
}

fn verify_diagram(
    file: Option<PathBuf>,
    inst_name: Option<String>,
    algorithm: Option<String>,
    shape: Option<String>,
    max_size: usize,
) -> Result<Outcome, CliError> {
    let alg: Option<std::sync::Arc<AlgorithmSpec>> =
        algorithm.as_deref().map(catalog::get).transpose()?;
    let inst = match (&inst_name, &alg) {
        (Some(n), _) => instantiation(n)?,
        (None, Some(a)) => a.instantiation().clone(),
        (None, None) => {
            return Err(CliError::Usage(
                "verify diagram needs --instantiation or --algorithm".to_string(),
            ))
        }
    };
    let diagrams: Vec<InsertionDiagram> = match (&file, &alg) {
        (Some(path), _) => vec![InsertionDiagram::parse_text(&read(path)?, inst.geometry)?],
        (None, Some(a)) => {
            let shapes = match &shape {
                Some(s) => vec![Shape::parse(inst.geometry, s)
                    .map_err(|e| CliError::Usage(format!("bad shape {s:?}: {e}")))?],
                None => Shape::all_up_to(inst.geometry, max_size),
            };
            shapes.iter().map(|s| (*a.diagram(s)).clone()).collect()
        }
        (None, None) => {
            return Err(CliError::Usage(
                "verify diagram needs --file or --algorithm".to_string(),
            ))
        }
    };
    let mut out = String::new();
    let mut bad = Vec::new();
    for d in &diagrams {
        let rep = d.validate(&inst);
        for v in &rep.violations {
            let _ = writeln!(out, "shape {}: {v}", d.shape());
        }
        if !rep.ok() {
            bad.push(d.shape().to_string());
        }
    }
    let _ = writeln!(
        out,
        "{} diagrams checked against {}, {} invalid",
        diagrams.len(),
        inst.name,
        bad.len()
    );
    let pass = bad.is_empty();
    Ok(Outcome::check(
        out,
        "diagram",
        pass,
        json!({ "instantiation": inst.name, "checked": diagrams.len(), "invalid_shapes": bad }),
    ))
}
