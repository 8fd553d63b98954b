//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::algebra::{validate, AlgebraSpec, MetricAlgebra};
use crate::catalog::{catalog_get, catalog_list, CatalogEntry};
use crate::curvature::classify;
use crate::decompose::{
    build_strong_isometry, compare_decompositions, decompose, filtration,
    flat_riemannian_structure, DecomposeOptions, Decomposition, IsometryOutcome, DEFAULT_BUDGET,
};
use crate::error::{Error, Result};
use crate::format::{parse_spec, serialize_spec};
use crate::ideals::ann_report;
use crate::report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "strongideal", version, about = "Exact analysis of metric Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Input documents; several files are analyzed independently.
    #[arg(long, global = true, num_args = 1.., value_name = "FILE")]
    pub input: Vec<PathBuf>,
    /// Built-in catalog entry instead of an input file.
    #[arg(long, global = true, value_name = "NAME")]
    pub catalog: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for the idempotent search (decimal or 0x-prefixed hex).
    #[arg(long, global = true, default_value = "0xC0FFEE", value_parser = parse_seed)]
    pub seed: u64,
    /// Random combinations tried per commutant before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check antisymmetry, Jacobi and the metric.
    Validate,
    /// Levi-Civita connection table.
    Connection,
    /// Nonzero curvature components.
    Curvature,
    /// Ricci tensor and Einstein constant.
    Ricci,
    /// Flat, Ricci-flat, Einstein, bi-invariant, nilpotency class, Killing form.
    Classify,
    /// Ann_R, Ann, the span of all ∇_X Y, and the case tag.
    Ann,
    /// Decomposition into indecomposable nondegenerate strong ideals.
    Decompose {
        /// Re-verify a stored decomposition (or the freshly computed one
        /// after a JSON round trip); exits 3 on failure.
        #[arg(long, num_args = 0..=1, value_name = "FILE")]
        recheck: Option<Option<PathBuf>>,
    },
    /// Chain of strong ideals with abelian quotients, plus the flat split.
    Filtration,
    /// Match two decompositions and check the induced map.
    Compare(PairArgs),
    /// Strong isometry between two orthogonal decompositions.
    Isometry(PairArgs),
    /// Built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// First decomposition (decompose JSON output); computed if omitted.
    #[arg(long, value_name = "FILE")]
    pub first: Option<PathBuf>,
    /// Second decomposition; defaults to the catalog entry's listed one.
    #[arg(long, value_name = "FILE")]
    pub against: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    /// Print an entry; with `--format json` this is the input document itself.
    Show { name: String },
}

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let r = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    r.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

/// One loaded input.
struct Source {
    spec: AlgebraSpec,
    entry: Option<CatalogEntry>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_decomposition(path: &Path, alg: &MetricAlgebra) -> Result<Decomposition> {
    let v = read_json(path)?;
    let d = report::parse_decomposition(&v)?;
    if d.factors.iter().chain(&d.g0).any(|s| s.ambient_dim() != alg.dim()) {
        return Err(Error::Dimension("stored decomposition has the wrong dimension".into()));
    }
    d.verify(alg)?;
    Ok(d)
}

fn jacobi_warnings(spec: &AlgebraSpec, err: &mut dyn Write) {
    let names = spec.basis_names();
    for f in validate(spec).jacobi_failures {
        let (i, j, k) = f.triple;
        let _ = writeln!(
            err,
            "warning: {}: Jacobi identity fails on ({}, {}, {})",
            spec.name(),
            names[i],
            names[j],
            names[k]
        );
    }
}

fn pair(
    src: &Source,
    alg: &MetricAlgebra,
    args: &PairArgs,
    opts: &DecomposeOptions,
) -> Result<(Decomposition, Decomposition)> {
    let first = match &args.first {
        Some(p) => load_decomposition(p, alg)?,
        None => decompose(alg, opts)?,
    };
    let second = match (&args.against, &src.entry) {
        (Some(p), _) => load_decomposition(p, alg)?,
        (None, Some(entry)) => entry.listed_decomposition(opts)?.ok_or_else(|| {
            Error::Precondition(format!("{} has no listed decomposition; use --against", entry.name))
        })?,
        (None, None) => {
            return Err(Error::Precondition("--against is required for file inputs".into()))
        }
    };
    Ok((first, second))
}

fn analyze(cmd: &Command, src: &Source, common: &Common, err: &mut dyn Write) -> Result<Value> {
    let spec = &src.spec;
    jacobi_warnings(spec, err);
    let opts = DecomposeOptions { budget: common.budget, seed: common.seed };
    if let Command::Validate = cmd {
        let r = validate(spec);
        let v = report::validation(spec.name(), spec.basis_names(), spec.metric(), &r);
        return if r.is_usable() {
            Ok(v)
        } else {
            Err(Error::Precondition(format!("{} is not usable\n{}", spec.name(), report::to_text(&v))))
        };
    }
    let alg = MetricAlgebra::new(spec.clone())?;
    Ok(match cmd {
        Command::Validate | Command::Catalog { .. } => unreachable!("handled by the caller"),
        Command::Connection => report::connection(&alg),
        Command::Curvature => report::curvature(&alg),
        Command::Ricci => report::ricci(&alg, &classify(alg.gamma(), spec)),
        Command::Classify => report::classification(&alg, &classify(alg.gamma(), spec)),
        Command::Ann => report::ann(&alg, &ann_report(alg.gamma(), alg.metric())),
        Command::Decompose { recheck } => match recheck {
            Some(Some(path)) => {
                let d = load_decomposition(path, &alg)?;
                report::decomposition(&alg, &d)
            }
            Some(None) => {
                let v = report::decomposition(&alg, &decompose(&alg, &opts)?);
                let text = serde_json::to_string(&v).expect("reports serialize");
                let back: Value = serde_json::from_str(&text).expect("reports parse");
                report::parse_decomposition(&back)?.verify(&alg)?;
                v
            }
            None => report::decomposition(&alg, &decompose(&alg, &opts)?),
        },
        Command::Filtration => {
            report::filtration(&alg, &filtration(&alg)?, &flat_riemannian_structure(&alg)?)
        }
        Command::Compare(args) => {
            let (a, b) = pair(src, &alg, args, &opts)?;
            report::comparison(&alg, &a, &b, &compare_decompositions(&a, &b, &alg)?)
        }
        Command::Isometry(args) => {
            let (a, b) = pair(src, &alg, args, &opts)?;
            match build_strong_isometry(&a, &b, &alg)? {
                IsometryOutcome::Isometry(iso) => report::isometry(&alg, Some(&iso), None),
                IsometryOutcome::Unsupported(why) => report::isometry(&alg, None, Some(&why)),
            }
        }
    })
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => report::to_text(v),
    }
}

fn catalog_command(action: &CatalogAction, format: Format) -> Result<String> {
    match action {
        CatalogAction::List => Ok(match format {
            Format::Json => render(&serde_json::json!(catalog_list()), format),
            Format::Text => catalog_list().iter().map(|n| format!("{n}\n")).collect(),
        }),
        CatalogAction::Show { name } => {
            let entry = catalog_get(name)?;
            Ok(match format {
                Format::Json => serialize_spec(&entry.spec),
                Format::Text => format!(
                    "{}document:\n{}",
                    report::to_text(&report::catalog_entry(&entry)),
                    serialize_spec(&entry.spec)
                ),
            })
        }
    }
}

fn load_sources(common: &Common) -> Vec<Result<Source>> {
    match (&common.catalog, common.input.is_empty()) {
        (Some(_), false) => vec![Err(Error::Parse("use either --input or --catalog".into()))],
        (Some(name), true) => vec![catalog_get(name).map(|e| Source { spec: e.spec.clone(), entry: Some(e) })],
        (None, false) => common
            .input
            .iter()
            .map(|p| {
                let text = read(p)?;
                let spec = parse_spec(&text)
                    .map_err(|e| match e {
                        Error::Parse(m) => Error::Parse(format!("{}: {m}", p.display())),
                        other => other,
                    })?;
                Ok(Source { spec, entry: None })
            })
            .collect(),
        (None, true) => vec![Err(Error::Parse("an --input file or --catalog entry is required".into()))],
    }
}

/// Runs the tool; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let common = &cli.common;

    let (payload, code) = match &cli.command {
        Command::Catalog { action } => match catalog_command(action, common.format) {
            Ok(s) => (s, 0),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                (String::new(), e.exit_code())
            }
        },
        cmd => {
            let sources = load_sources(common);
            // analyses are independent, so run them side by side and keep input order
            let results: Vec<(Result<Value>, Vec<u8>)> = std::thread::scope(|s| {
                let handles: Vec<_> = sources
                    .iter()
                    .map(|src| {
                        s.spawn(move || {
                            let mut diag = Vec::new();
                            let r = match src {
                                Ok(src) => analyze(cmd, src, common, &mut diag),
                                Err(e) => Err(e.clone()),
                            };
                            (r, diag)
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("analysis thread panicked")).collect()
            });
            let mut code = 0;
            let mut values = Vec::new();
            for (r, diag) in results {
                let _ = err.write_all(&diag);
                match r {
                    Ok(v) => values.push(v),
                    Err(e) => {
                        let _ = writeln!(err, "error: {e}");
                        if code == 0 {
                            code = e.exit_code();
                        }
                    }
                }
            }
            let payload = match (values.len(), common.format) {
                (0, _) => String::new(),
                (1, f) if sources.len() == 1 => render(&values[0], f),
                (_, Format::Json) => render(&Value::Array(values), Format::Json),
                (_, Format::Text) => values.iter().map(report::to_text).collect::<Vec<_>>().join("\n"),
            };
            (payload, code)
        }
    };

    let written = match &common.output {
        Some(path) if !payload.is_empty() => std::fs::write(path, &payload),
        Some(_) => Ok(()),
        None => out.write_all(payload.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return 1;
    }
    code
}
