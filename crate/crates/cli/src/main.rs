use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use spin7_core::algebra::{load_algebra, AlgebraSpec, LieAlgebra8};
use spin7_core::corpus;
use spin7_core::exterior::norm_sq;
use spin7_core::geometry::Geometry;
use spin7_core::scalar::parse_scalar;
use spin7_core::spin7::{project_lambda2, project_lambda3, project_lambda4, Spin7Form};
use spin7_core::suite::{full_report, SolitonData};
use spin7_core::{Covector, KForm};

#[derive(Parser)]
#[command(name = "spin7", version, about = "Spin(7)-structures with torsion on 8-dimensional Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every identity check on one geometry and emit the report.
    Verify {
        #[command(flatten)]
        structure: StructureArgs,
        /// Corpus name or path to an algebra JSON file.
        #[arg(long)]
        algebra: String,
        /// Comma-separated frame components of df; exact forms like "sqrt(2)/2" are accepted.
        #[arg(long)]
        soliton_df: Option<String>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Split a form into its Spin(7)-irreducible parts.
    Decompose {
        /// Path to a form JSON file.
        form: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        degree: u8,
        #[command(flatten)]
        structure: StructureArgs,
    },
    /// List the shipped algebras and structures.
    Corpus,
}

#[derive(clap::Args)]
struct StructureArgs {
    /// canonical, phi_t, remark_b, or a path to a 4-form JSON file.
    #[arg(long, default_value = "canonical")]
    structure: String,
    /// Parameter of the phi_t family.
    #[arg(long)]
    t: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Distinguishes bad input (exit 2) from failing checks (exit 1).
enum Outcome {
    Passed,
    ChecksFailed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Passed) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> anyhow::Result<Outcome> {
    match cmd {
        Command::Verify { structure, algebra, soliton_df, out, tolerance, format } => {
            verify(&algebra, &structure, soliton_df.as_deref(), out.as_deref(), tolerance, format)
        }
        Command::Decompose { form, degree, structure } => decompose(&form, degree as usize, &structure),
        Command::Corpus => {
            for line in corpus::corpus_listing() {
                println!("{line}");
            }
            Ok(Outcome::Passed)
        }
    }
}

fn load_algebra_arg(arg: &str) -> anyhow::Result<(String, LieAlgebra8)> {
    if corpus::algebra_json(arg).is_some() {
        return Ok((arg.to_string(), corpus::corpus_algebra(arg)?));
    }
    let path = Path::new(arg);
    let text =
        fs::read_to_string(path).with_context(|| format!("'{arg}' is neither a corpus algebra nor a readable file"))?;
    let spec = AlgebraSpec::parse(&text).with_context(|| format!("parsing {arg}"))?;
    let alg = load_algebra(&spec).with_context(|| format!("loading {arg}"))?;
    Ok((spec.name.clone(), alg))
}

fn load_structure(args: &StructureArgs) -> anyhow::Result<(String, KForm)> {
    match args.structure.as_str() {
        "canonical" => Ok(("canonical".into(), corpus::canonical_form())),
        "remark_b" => Ok(("remark_b".into(), corpus::remark_b())),
        "phi_t" => {
            let Some(t) = args.t else { bail!("--structure phi_t needs --t") };
            if !corpus::is_corpus_t(t) {
                eprintln!("warning: t = {t} is outside the shipped values 0, pi/4, 3pi/4");
            }
            Ok((format!("phi_t={t}"), corpus::phi_t(t)))
        }
        file => {
            let text = fs::read_to_string(file).with_context(|| format!("reading structure {file}"))?;
            let phi = KForm::parse_json(&text).with_context(|| format!("parsing {file}"))?;
            if phi.degree() != 4 {
                bail!("{file}: expected a 4-form, got degree {}", phi.degree());
            }
            let name = Path::new(file).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok((name, phi))
        }
    }
}

fn parse_df(src: &str) -> anyhow::Result<SolitonData> {
    let vals = src.split(',').map(|s| parse_scalar(s.trim())).collect::<Result<Vec<f64>, _>>()?;
    let Ok(a) = <[f64; 8]>::try_from(vals.as_slice()) else {
        bail!("--soliton-df needs 8 components, got {}", vals.len())
    };
    Ok(SolitonData { f_gradient: Covector::from_array(a) })
}

fn verify(
    algebra: &str,
    structure: &StructureArgs,
    df: Option<&str>,
    out: Option<&Path>,
    tol: f64,
    format: Format,
) -> anyhow::Result<Outcome> {
    let (alg_name, alg) = load_algebra_arg(algebra)?;
    let (phi_name, phi) = load_structure(structure)?;
    let soliton = df.map(parse_df).transpose()?;
    let geom = Geometry::new(format!("{alg_name}/{phi_name}"), &alg, &phi)?;
    let report = full_report(&geom, soliton.as_ref(), tol)?;
    let body = match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    match out {
        Some(p) => fs::write(p, &body).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{body}"),
    }
    let failed = report.failures().count();
    eprintln!("{}: {} entries, {failed} failed", report.geometry_id, report.entries.len());
    Ok(if report.all_passed() { Outcome::Passed } else { Outcome::ChecksFailed })
}

fn decompose(path: &Path, degree: usize, structure: &StructureArgs) -> anyhow::Result<Outcome> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let form = KForm::parse_json(&text)?;
    if form.degree() != degree {
        bail!("{} holds a {}-form, not degree {degree}", path.display(), form.degree());
    }
    let (_, phi) = load_structure(structure)?;
    let phi = Spin7Form::new(phi)?;
    let parts: Vec<(&str, KForm)> = match degree {
        2 => {
            let (p7, p21) = project_lambda2(&form, &phi)?;
            vec![("7", p7), ("21", p21)]
        }
        3 => {
            let (p8, p48, _) = project_lambda3(&form, &phi)?;
            vec![("8", p8), ("48", p48)]
        }
        _ => {
            let [p1, p7, p27, p35] = project_lambda4(&form, &phi)?;
            vec![("1", p1), ("7", p7), ("27", p27), ("35", p35)]
        }
    };
    let mut sum = KForm::zero(degree);
    for (label, p) in &parts {
        let p = p.pruned(1e-12);
        println!("Lambda^{degree}_{label}: norm^2 = {:.12}", norm_sq(&p, phi.metric()) + 0.0);
        for (idx, c) in p.terms() {
            println!("  {:+.12} e_{}", c, idx.to_vec().iter().map(|i| i.to_string()).collect::<String>());
        }
        sum = &sum + &p;
    }
    println!("reassembly residual: {:.3e}", sum.distance(&form));
    Ok(Outcome::Passed)
}
