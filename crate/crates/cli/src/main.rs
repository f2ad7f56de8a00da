use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sphercat_core::ar::{ar_triangle, quiver_window};
use sphercat_core::dg::{decompose, truncation_registry, Truncation};
use sphercat_core::oracle::hom_table;
use sphercat_core::tstructure::{
    canonical_spec, coheart_window, heart_window, orthogonality_check, sparseness_evidence,
    thick_closure_window, Kind,
};
use sphercat_core::verify::{closed_vs_oracle, serre_duality, sphericity};
use sphercat_core::{
    backend_registry, AlgebraDescriptor, DgModule, HomBackend, Indec, PrimeField, Report, Window,
};

#[derive(Parser, Debug)]
#[command(
    name = "sphercat",
    version,
    about = "Computations in the category generated by a w-spherical object"
)]
struct Cli {
    /// Degree of the spherical object (T has degree w - 1).
    #[arg(long, allow_negative_numbers = true)]
    w: i64,

    #[arg(long, default_value_t = 32003)]
    prime: u64,

    #[arg(long, default_value_t = -8, allow_negative_numbers = true)]
    i_min: i64,

    #[arg(long, default_value_t = 8, allow_negative_numbers = true)]
    i_max: i64,

    #[arg(long, default_value_t = 6)]
    r_max: usize,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
    Text,
}

#[derive(Args, Debug)]
struct BackendChoice {
    /// Shorthand for `--backend oracle`.
    #[arg(long, conflicts_with = "backend")]
    oracle: bool,

    #[arg(long)]
    backend: Option<String>,
}

impl BackendChoice {
    fn name(&self) -> &str {
        if self.oracle {
            "oracle"
        } else {
            self.backend.as_deref().unwrap_or("closed")
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// dim Hom(t, u)
    Homdim {
        #[arg(long, allow_hyphen_values = true)]
        t: Indec,
        #[arg(long, allow_hyphen_values = true)]
        u: Indec,
        #[command(flatten)]
        backend: BackendChoice,
    },
    /// dim Hom(t, Σ^n u) for n in a range `a..b` (inclusive)
    Homtable {
        #[arg(long, allow_hyphen_values = true)]
        t: Indec,
        #[arg(long, allow_hyphen_values = true)]
        u: Indec,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        range: (i64, i64),
        #[command(flatten)]
        backend: BackendChoice,
    },
    /// Krull-Schmidt decomposition of a module file
    Decompose {
        #[arg(long)]
        module: PathBuf,
    },
    /// AR triangle ending at t
    ArTriangle {
        #[arg(long, allow_hyphen_values = true)]
        t: Indec,
    },
    /// AR quiver restricted to the window
    Quiver,
    /// Truncation triangle of a module file
    Truncate {
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        threshold: i64,
        /// smart, hard or split; chosen from the sign of d when omitted
        #[arg(long)]
        strategy: Option<String>,
    },
    /// Canonical (co-)t-structure, its (co-)heart, and optional checks
    Canonical {
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        backend: BackendChoice,
    },
    /// Evidence sweeps
    Evidence {
        #[command(subcommand)]
        kind: EvidenceKind,
    },
    /// Verification sweeps over the window
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Saturation of a seed under shifts and AR meshes
    Closure {
        #[arg(long, allow_hyphen_values = true)]
        seed: Indec,
    },
}

#[derive(Subcommand, Debug)]
enum EvidenceKind {
    Sparseness,
}

#[derive(Subcommand, Debug)]
enum VerifyKind {
    ClosedVsOracle,
    SerreDuality {
        #[command(flatten)]
        backend: BackendChoice,
    },
    Sphericity {
        #[arg(long, default_value_t = 12)]
        bound: i64,
        #[command(flatten)]
        backend: BackendChoice,
    },
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a: i64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: i64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

struct Ctx {
    w: i64,
    field: PrimeField,
    window: Window,
    format: Format,
}

impl Ctx {
    fn algebra(&self) -> AlgebraDescriptor {
        AlgebraDescriptor::new(self.w, self.field)
    }

    fn load(&self, path: &PathBuf) -> anyhow::Result<DgModule> {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let m = DgModule::from_json_str(&text)
            .with_context(|| format!("parsing {}", path.display()))?;
        if m.algebra().w() != self.w {
            bail!(
                "{} has w = {}, but --w is {}",
                path.display(),
                m.algebra().w(),
                self.w
            );
        }
        Ok(m)
    }

    fn formats(&self, allowed: &[Format]) -> anyhow::Result<()> {
        if !allowed.contains(&self.format) {
            bail!(
                "--format {:?} is not available for this command",
                self.format
            );
        }
        Ok(())
    }
}

/// What a command hands back to `main`: the text to print and whether a
/// verification passed.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, ok: true }
    }
}

fn labels_text(labels: &[Indec]) -> String {
    if labels.is_empty() {
        "0".to_string()
    } else {
        labels
            .iter()
            .map(|t| format!("{},{}", t.shift, t.width))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

fn report_output(ctx: &Ctx, reports: &[Report]) -> Output {
    let ok = reports.iter().all(Report::passed);
    let text = match ctx.format {
        Format::Json if reports.len() == 1 => reports[0].to_json(),
        Format::Json => pretty(&serde_json::to_value(reports).expect("reports serialize")),
        _ => reports
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Output { text, ok }
}

fn pick_backend<'a>(
    reg: &'a sphercat_core::registry::Registry<dyn HomBackend>,
    choice: &BackendChoice,
) -> anyhow::Result<&'a dyn HomBackend> {
    Ok(reg.get(choice.name())?)
}

fn run(cli: Cli) -> anyhow::Result<Output> {
    let ctx = Ctx {
        w: cli.w,
        field: PrimeField::new(cli.prime)?,
        window: Window::new(cli.i_min, cli.i_max, cli.r_max)?,
        format: cli.format,
    };
    let backends = backend_registry(ctx.field);
    let w = ctx.w;

    match cli.command {
        Command::Homdim { t, u, backend } => {
            ctx.formats(&[Format::Text, Format::Json])?;
            let b = pick_backend(&backends, &backend)?;
            let dim = b.hom_dim(w, t, u)?;
            Ok(Output::ok(match ctx.format {
                Format::Json => {
                    pretty(&json!({"w": w, "t": t, "u": u, "backend": b.name(), "dim": dim}))
                }
                _ => dim.to_string(),
            }))
        }
        Command::Homtable {
            t,
            u,
            range: (a, b),
            backend,
        } => {
            ctx.formats(&[Format::Text, Format::Json, Format::Csv])?;
            let rows: Vec<(i64, usize)> = if backend.name() == "oracle" {
                let alg = ctx.algebra();
                let src = DgModule::indecomposable(alg, t);
                let tgt = DgModule::indecomposable(alg, u);
                hom_table(&src, &tgt, a, b)?.into_iter().collect()
            } else {
                let bk = pick_backend(&backends, &backend)?;
                (a..=b)
                    .map(|n| Ok((n, bk.hom_dim(w, t, u.suspend(n))?)))
                    .collect::<sphercat_core::Result<_>>()?
            };
            Ok(Output::ok(match ctx.format {
                Format::Json => pretty(&json!({
                    "w": w, "t": t, "u": u,
                    "dims": rows.iter().map(|(n, d)| json!({"n": n, "dim": d})).collect::<Vec<_>>(),
                })),
                Format::Csv => std::iter::once("n,dim".to_string())
                    .chain(rows.iter().map(|(n, d)| format!("{n},{d}")))
                    .collect::<Vec<_>>()
                    .join("\n"),
                _ => rows
                    .iter()
                    .map(|(n, d)| format!("{n} {d}"))
                    .collect::<Vec<_>>()
                    .join("\n"),
            }))
        }
        Command::Decompose { module } => {
            ctx.formats(&[Format::Text, Format::Json])?;
            let labels = decompose(&ctx.load(&module)?)?;
            Ok(Output::ok(match ctx.format {
                Format::Json => pretty(&json!({"w": w, "summands": labels})),
                _ => labels_text(&labels),
            }))
        }
        Command::ArTriangle { t } => {
            ctx.formats(&[Format::Text, Format::Json])?;
            let tri = ar_triangle(w, t);
            Ok(Output::ok(match ctx.format {
                Format::Json => pretty(&serde_json::to_value(&tri)?),
                _ => format!(
                    "{} -> {} -> {}",
                    tri.start,
                    tri.middle
                        .iter()
                        .map(|m| m.to_string())
                        .collect::<Vec<_>>()
                        .join(" ⊕ "),
                    tri.end
                ),
            }))
        }
        Command::Quiver => {
            let q = quiver_window(w, &ctx.window);
            Ok(Output::ok(match ctx.format {
                Format::Dot | Format::Text => q.to_dot(),
                Format::Json => pretty(&serde_json::to_value(&q)?),
                Format::Csv => {
                    std::iter::once("from_i,from_r,to_i,to_r".to_string())
                        .chain(q.arrows.iter().map(|(a, b)| {
                            format!("{},{},{},{}", a.shift, a.width, b.shift, b.width)
                        }))
                        .collect::<Vec<_>>()
                        .join("\n")
                }
            }))
        }
        Command::Truncate {
            module,
            threshold,
            strategy,
        } => {
            ctx.formats(&[Format::Text, Format::Json])?;
            let m = ctx.load(&module)?;
            let reg = truncation_registry();
            let strat: &dyn Truncation = match &strategy {
                Some(name) => reg.get(name)?,
                None => reg
                    .find(|s| s.supports(&m.algebra()))
                    .expect("every sign of d has a truncation"),
            };
            let (sub, quot) = strat.truncate(&m, threshold)?;
            Ok(Output::ok(match ctx.format {
                Format::Json => pretty(&json!({
                    "strategy": strat.name(),
                    "threshold": threshold,
                    "sub": serde_json::to_value(sub.to_json())?,
                    "quot": serde_json::to_value(quot.to_json())?,
                })),
                _ => format!(
                    "strategy {}\nsub:  {}\nquot: {}",
                    strat.name(),
                    labels_text(&decompose(&sub)?),
                    labels_text(&decompose(&quot)?)
                ),
            }))
        }
        Command::Canonical { check, backend } => {
            ctx.formats(&[Format::Text, Format::Json])?;
            let spec = canonical_spec(w);
            let (what, core) = match spec.kind {
                Kind::T => ("heart", heart_window(&spec, &ctx.window)),
                Kind::Cot => ("co-heart", coheart_window(&spec, &ctx.window)),
            };
            let core: Vec<Indec> = core.into_iter().collect();
            if !check {
                return Ok(Output::ok(match ctx.format {
                    Format::Json => {
                        pretty(&json!({"name": spec.name, "kind": spec.kind, what: core}))
                    }
                    _ => format!("{}\n{what}: {}", spec.name, labels_text(&core)),
                }));
            }
            let b = pick_backend(&backends, &backend)?;
            let reports = vec![
                spec.closure_check(&ctx.window),
                orthogonality_check(w, &spec, &ctx.window, b)?,
            ];
            Ok(report_output(&ctx, &reports))
        }
        Command::Evidence {
            kind: EvidenceKind::Sparseness,
        } => {
            ctx.formats(&[Format::Text, Format::Json])?;
            let ev = sparseness_evidence(w, &ctx.window)?;
            let ok = ev.report.passed();
            let text = match ctx.format {
                Format::Json => pretty(&serde_json::to_value(&ev)?),
                _ => {
                    let mut s = ev.report.to_string();
                    s.push_str(&format!("\n{} witnesses", ev.witnesses.len()));
                    for b in &ev.baseline {
                        s.push_str(&format!("\nbaseline {}: dim End = {}", b.label, b.dim));
                    }
                    s
                }
            };
            Ok(Output { text, ok })
        }
        Command::Verify { kind } => {
            ctx.formats(&[Format::Text, Format::Json])?;
            let report = match kind {
                VerifyKind::ClosedVsOracle => closed_vs_oracle(w, &ctx.window, ctx.field)?,
                VerifyKind::SerreDuality { backend } => {
                    serre_duality(w, &ctx.window, pick_backend(&backends, &backend)?)?
                }
                VerifyKind::Sphericity { bound, backend } => {
                    sphericity(w, -bound, bound, pick_backend(&backends, &backend)?)?
                }
            };
            Ok(report_output(&ctx, &[report]))
        }
        Command::Closure { seed } => {
            ctx.formats(&[Format::Text, Format::Json])?;
            let c = thick_closure_window(w, seed, &ctx.window);
            let ok = c.covers_interior();
            let text = match ctx.format {
                Format::Json => pretty(&serde_json::to_value(&c)?),
                _ => {
                    let mut s = format!(
                        "reached {} labels; interior {} labels; missing {}",
                        c.reached.len(),
                        c.interior.len(),
                        c.missing.len()
                    );
                    if let Some(note) = &c.note {
                        s.push_str(&format!("\nnote: {note}"));
                    }
                    if !c.missing.is_empty() {
                        s.push_str(&format!("\nmissing: {}", labels_text(&c.missing)));
                    }
                    s
                }
            };
            Ok(Output { text, ok })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = writeln!(io::stdout().lock(), "{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
