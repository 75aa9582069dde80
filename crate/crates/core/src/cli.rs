//! Command-line front end of `hkg-canon`.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::error::{Error, Result};
use crate::io::{export_ideal, fidelity_listing, parse_curve_file, variable_name, ExportOptions, Format};
use crate::lattice::Lattice;
use crate::oracle::{deg2_kernel_basis, deg3_generation_check, quotient_dim_check, span_compare, DEFAULT_DEG3_CEILING};
use crate::relations::{assemble_j, phi_class_map, survivors, G0Mode, Ideal, Origin};
use crate::function_field::kernel_membership;
use crate::tower::Tower;

#[derive(Debug, Parser)]
#[command(name = "hkg-canon", version, about = "Canonical ideals of HKG curve towers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Jumps, genera, semigroup generators and Petri gates.
    Info(CommonArgs),
    /// Monomial basis of holomorphic differentials.
    Basis(CommonArgs),
    /// Quadratic generators with their origin.
    Ideal(IdealArgs),
    /// Certify the generators against the canonical map.
    Verify(VerifyArgs),
    /// Write the generators for a computer algebra system.
    Export(IdealArgs),
}

#[derive(Debug, clap::Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub curve: PathBuf,
    /// plain, json, singular or macaulay2
    #[arg(long, default_value = "plain")]
    pub format: String,
}

#[derive(Debug, clap::Args)]
pub struct IdealArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// List each equal-sum binomial with both signs.
    #[arg(long)]
    pub paper_fidelity: bool,
    /// Coefficients in 0..p instead of the balanced range.
    #[arg(long)]
    pub canonical_coeffs: bool,
    /// One binomial per extra decomposition instead of all pairs.
    #[arg(long)]
    pub star: bool,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Also check generation in degree 3.
    #[arg(long)]
    pub deg3: bool,
    #[arg(long, default_value_t = DEFAULT_DEG3_CEILING)]
    pub deg3_ceiling: usize,
    #[arg(long)]
    pub star: bool,
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let mut out = Outcome::default();
    let result = match &cli.command {
        Command::Info(a) => info(a, &mut out),
        Command::Basis(a) => basis(a, &mut out),
        Command::Ideal(a) => ideal(a, false, &mut out),
        Command::Export(a) => ideal(a, true, &mut out),
        Command::Verify(a) => verify(a, &mut out),
    };
    if let Err(e) = result {
        out.stdout.clear();
        let _ = writeln!(out.stderr, "error: {e}");
        out.code = e.exit_code();
    }
    out
}

fn load(args: &CommonArgs) -> Result<(Format, Tower)> {
    let format: Format = args.format.parse()?;
    let tower = parse_curve_file(&args.curve)?;
    Ok((format, tower))
}

fn scripted(format: Format) -> Result<()> {
    match format {
        Format::Singular | Format::Macaulay2 => Err(Error::Precondition(
            "singular and macaulay2 output is only available for ideal and export".to_string(),
        )),
        _ => Ok(()),
    }
}

fn info(args: &CommonArgs, out: &mut Outcome) -> Result<()> {
    let (format, tower) = load(args)?;
    scripted(format)?;
    let report = tower.petri_report();
    if format == Format::Json {
        let gates: Vec<_> = report
            .gates
            .iter()
            .map(|g| json!({"step": g.step, "gate": g.gate.name(), "passed": g.passed, "detail": g.detail}))
            .collect();
        let v = json!({
            "p": tower.p(),
            "height": tower.height(),
            "step_degrees": (1..=tower.height()).map(|i| tower.step_degree(i)).collect::<Vec<_>>(),
            "jumps": tower.jumps(),
            "genus_sequence": tower.genus_sequence(),
            "genus": tower.genus(),
            "semigroup_generators": tower.semigroup_generators(),
            "petri": {"verdict": report.verdict, "gates": gates},
        });
        out.stdout = format!("{}\n", serde_json::to_string_pretty(&v).expect("json"));
        return Ok(());
    }
    let s = &mut out.stdout;
    let degrees: Vec<u32> = (1..=tower.height()).map(|i| tower.step_degree(i)).collect();
    let _ = writeln!(s, "p: {}", tower.p());
    let _ = writeln!(s, "height: {}", tower.height());
    let _ = writeln!(s, "step degrees: {}", join(&degrees));
    let _ = writeln!(s, "jumps: {}", join(tower.jumps()));
    let _ = writeln!(s, "genus sequence: {}", join(tower.genus_sequence()));
    let _ = writeln!(s, "genus: {}", tower.genus());
    let _ = writeln!(s, "semigroup generators: {}", join(tower.semigroup_generators()));
    let _ = write!(s, "{report}");
    if !s.ends_with('\n') {
        s.push('\n');
    }
    Ok(())
}

fn basis(args: &CommonArgs, out: &mut Outcome) -> Result<()> {
    let (format, tower) = load(args)?;
    scripted(format)?;
    let lat = Lattice::new(tower)?;
    if format == Format::Json {
        let items: Vec<_> = lat
            .basis()
            .iter()
            .map(|t| json!({"exps": t.coords(), "norm": lat.norm(t), "name": variable_name(t)}))
            .collect();
        let v = json!({"genus": lat.genus(), "basis": items, "norm_classes": lat.class_count()});
        out.stdout = format!("{}\n", serde_json::to_string_pretty(&v).expect("json"));
        return Ok(());
    }
    for t in lat.basis() {
        let _ = writeln!(out.stdout, "{t}\tnorm {}\t{}", lat.norm(t), variable_name(t));
    }
    Ok(())
}

fn g0_mode(star: bool) -> G0Mode {
    if star {
        G0Mode::Star
    } else {
        G0Mode::AllPairs
    }
}

fn report_skips(ideal: &Ideal, out: &mut Outcome) {
    for d in &ideal.diagnostics {
        let _ = writeln!(out.stderr, "note: {d}");
    }
}

fn ideal(args: &IdealArgs, export: bool, out: &mut Outcome) -> Result<()> {
    let (format, tower) = load(&args.common)?;
    let lat = Lattice::new(tower)?;
    let ideal = assemble_j(&lat, g0_mode(args.star))?;
    report_skips(&ideal, out);
    let opts = ExportOptions {
        canonical_coeffs: args.canonical_coeffs,
    };
    let forms = if args.paper_fidelity {
        fidelity_listing(&lat, &ideal)
    } else {
        ideal.forms()
    };
    if export || format != Format::Plain || args.paper_fidelity {
        out.stdout = export_ideal(&lat, &forms, format, opts);
        return Ok(());
    }
    for g in &ideal.generators {
        let line = export_ideal(&lat, std::slice::from_ref(&g.form), Format::Plain, opts);
        let label = match &g.origin {
            Origin::G0 { sum } => format!("G0 {sum}"),
            Origin::Gvi { v, step } => format!("G{v},{step}"),
        };
        let _ = write!(out.stdout, "{label}\t{line}");
    }
    Ok(())
}

fn verify(args: &VerifyArgs, out: &mut Outcome) -> Result<()> {
    let (format, tower) = load(&args.common)?;
    scripted(format)?;
    let lat = Lattice::new(tower)?;
    let ideal = assemble_j(&lat, g0_mode(args.star))?;
    report_skips(&ideal, out);
    let j = ideal.forms();

    let in_kernel = j.iter().filter(|q| kernel_membership(lat.tower(), q)).count();
    let kernel = deg2_kernel_basis(&lat);
    let span = span_compare(&lat, &j, &kernel);
    let quotient = quotient_dim_check(&lat, &j)?;
    let phi = survivors(&lat, &j).and_then(|s| phi_class_map(&lat, &s).map(|m| m.len()));
    let deg3 = args.deg3.then(|| deg3_generation_check(&lat, &j, args.deg3_ceiling));

    let pass = in_kernel == j.len()
        && span.equal
        && quotient.pass
        && phi.is_ok()
        && deg3.as_ref().is_none_or(|d| d.passed());
    out.code = if pass { 0 } else { 2 };

    if format == Format::Json {
        let mut v = json!({
            "genus": lat.genus(),
            "generators": j.len(),
            "kernel_membership": {"in_kernel": in_kernel, "total": j.len()},
            "span_compare": {"dim_j": span.dim_j, "dim_kernel": span.dim_kernel, "equal": span.equal},
            "quotient": {"survivors": quotient.survivors, "classes": quotient.classes,
                         "bound": quotient.bound, "pass": quotient.pass},
            "phi": match &phi {
                Ok(n) => json!({"bijective": true, "classes": n}),
                Err(e) => json!({"bijective": false, "error": e.to_string()}),
            },
            "pass": pass,
        });
        if let Some(d) = &deg3 {
            v["deg3"] = match d {
                crate::oracle::Deg3Outcome::Checked { kernel_dim, span_dim, passed } => {
                    json!({"kernel_dim": kernel_dim, "span_dim": span_dim, "passed": passed})
                }
                crate::oracle::Deg3Outcome::Skipped { entries, ceiling } => {
                    json!({"skipped": true, "entries": entries, "ceiling": ceiling})
                }
            };
        }
        out.stdout = format!("{}\n", serde_json::to_string_pretty(&v).expect("json"));
        return Ok(());
    }
    let s = &mut out.stdout;
    let _ = writeln!(s, "kernel membership: {in_kernel}/{} generators", j.len());
    let _ = writeln!(s, "span compare: {span}");
    let _ = writeln!(s, "quotient check: {quotient}");
    match &phi {
        Ok(n) => {
            let _ = writeln!(s, "phi: bijection onto {n} norm classes");
        }
        Err(e) => {
            let _ = writeln!(s, "phi: FAIL ({e})");
        }
    }
    if let Some(d) = &deg3 {
        let _ = writeln!(s, "deg3: {d}");
    }
    let _ = writeln!(s, "verdict: {}", if pass { "pass" } else { "FAIL" });
    Ok(())
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}
