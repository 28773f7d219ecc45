//! Command line front end for the exact orbifold engine.

mod model;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use stringy_mckay::catalog::{self, CatalogEntry, EntryKind};
use stringy_mckay::orbifold::{
    compare_k_equivalent, diagonal_orthant_fan, sector_sum, verify_mckay, wps_fan,
    ComparisonReport, OrbifoldModel, Sector, VerificationReport,
};
use stringy_mckay::resolve::crepant_resolution;
use stringy_mckay::toric::Fan;
use stringy_mckay::{Error, Int, MotivicClass, DEFAULT_CAP};

#[derive(Parser)]
#[command(
    name = "stringy-mckay",
    version,
    about = "Exact stringy invariants of quotient and toric orbifolds"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Cap on group closures and lattice point enumerations
    /// (default: STRINGY_MCKAY_CAP or 20000).
    #[arg(long, global = true)]
    cap: Option<u64>,

    /// Accept results with fractional exponents instead of stopping.
    #[arg(long, global = true)]
    allow_fractional: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Aligned human readable lines.
    Table,
    /// Stable `key = value` lines.
    Kv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the twisted sector decomposition of a model.
    Sectors { model: PathBuf },
    /// Print the orbifold (stringy) E-polynomial of a model.
    Stringy { model: PathBuf },
    /// Print a crepant resolution of the model's fan as fan text.
    Resolve { model: PathBuf },
    /// Compare the orbifold E-polynomial against a crepant resolution.
    Verify { model: PathBuf },
    /// Compare the stringy E-polynomials of two fan models on the same rays.
    Compare { left: PathBuf, right: PathBuf },
    /// Compute every built-in catalog entry.
    Catalog,
    /// Recompute the built-in catalog and diff it against pinned values.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            // A closed pipe downstream is not our failure.
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<(String, ExitCode), Error> {
    let cap = effective_cap(cli);
    match &cli.command {
        Command::Sectors { model } => {
            let model = load_model(model, cap)?;
            let sectors = model.sectors(cap)?;
            let sum = sector_sum(&sectors)?;
            check_fractional(cli, &sum)?;
            Ok((render_sectors(cli.format, &sectors, &sum)?, ExitCode::SUCCESS))
        }
        Command::Stringy { model } => {
            let model = load_model(model, cap)?;
            let epoly = model.orbifold_epoly(cap)?;
            check_fractional(cli, &epoly)?;
            Ok((render_epoly(cli.format, &epoly), ExitCode::SUCCESS))
        }
        Command::Resolve { model } => {
            let model = load_model(model, cap)?;
            let fan = model_fan(&model)?;
            let resolved = crepant_resolution(&fan, cap)?;
            Ok((resolved.render_text(), ExitCode::SUCCESS))
        }
        Command::Verify { model } => {
            let model = load_model(model, cap)?;
            let report = verify_mckay(&model, cap)?;
            check_fractional(cli, &report.orbifold_epoly)?;
            let code = if report.equal == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
            Ok((render_verification(cli.format, &report), code))
        }
        Command::Compare { left, right } => {
            let left = model_fan(&load_model(left, cap)?)?;
            let right = model_fan(&load_model(right, cap)?)?;
            let report = compare_k_equivalent(&left, &right, cap)?;
            check_fractional(cli, &report.stringy_left)?;
            let code = if report.equal { ExitCode::SUCCESS } else { ExitCode::from(1) };
            Ok((render_comparison(cli.format, &report), code))
        }
        Command::Catalog => Ok((render_catalog(cli.format, cap)?, ExitCode::SUCCESS)),
        Command::Selftest => {
            let lines = catalog::selftest(cap)?;
            let failures = lines.iter().filter(|l| !l.ok).count();
            let mut out = String::new();
            for line in &lines {
                let mark = if line.ok { "ok" } else { "FAIL" };
                let _ = writeln!(out, "{mark} {} {}", line.name, line.detail);
            }
            let _ = writeln!(out, "selftest: {} entries, {failures} failures", lines.len());
            let code = if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) };
            Ok((out, code))
        }
    }
}

fn effective_cap(cli: &Cli) -> u64 {
    if let Some(cap) = cli.cap {
        return cap;
    }
    if let Ok(raw) = std::env::var("STRINGY_MCKAY_CAP") {
        if let Ok(cap) = raw.trim().parse::<u64>() {
            return cap;
        }
    }
    DEFAULT_CAP
}

fn load_model(path: &Path, cap: u64) -> Result<OrbifoldModel<Int>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidElement(format!("cannot read {}: {e}", path.display())))?;
    model::parse_model(&text, cap)
}

/// The fan a model resolves through: the orthant fan for a diagonal group,
/// the fan itself for a toric model, the quotient fan for weights.
fn model_fan(model: &OrbifoldModel<Int>) -> Result<Fan<Int>, Error> {
    match model {
        OrbifoldModel::LocalQuotient(g) => diagonal_orthant_fan(g),
        OrbifoldModel::Toric(f) => Ok(f.clone()),
        OrbifoldModel::WeightedProjective(w) => wps_fan(w),
    }
}

fn check_fractional(cli: &Cli, class: &MotivicClass<Int>) -> Result<(), Error> {
    if cli.allow_fractional {
        return Ok(());
    }
    match class.min_fractional_exponent() {
        None => Ok(()),
        Some(e) => Err(Error::NonIntegralClass(format!(
            "{e}; pass --allow-fractional to accept fractional exponents"
        ))),
    }
}

fn render_sectors(
    format: Format,
    sectors: &[Sector<Int>],
    sum: &MotivicClass<Int>,
) -> Result<String, Error> {
    let mut out = String::new();
    match format {
        Format::Kv => {
            let _ = writeln!(out, "count = {}", sectors.len());
            for (i, s) in sectors.iter().enumerate() {
                let _ = writeln!(out, "sector = {i}");
                let _ = writeln!(out, "label = {}", s.label);
                let _ = writeln!(out, "fixed = {}", s.fixed);
                let _ = writeln!(out, "shift = {}", s.shift);
                let _ = writeln!(out, "contribution = {}", s.contribution()?);
            }
            let _ = writeln!(out, "sum = {sum}");
        }
        Format::Table => {
            let _ = writeln!(out, "label | fixed | shift | contribution");
            for s in sectors {
                let _ = writeln!(
                    out,
                    "{} | {} | {} | {}",
                    s.label,
                    s.fixed,
                    s.shift,
                    s.contribution()?
                );
            }
            let _ = writeln!(out, "sum: {sum}");
        }
    }
    Ok(out)
}

fn render_epoly(format: Format, epoly: &MotivicClass<Int>) -> String {
    let mut out = String::new();
    match format {
        Format::Kv => {
            let _ = writeln!(out, "epoly = {epoly}");
            let _ = writeln!(out, "chi = {}", epoly.euler_characteristic());
            if let Some(e) = epoly.min_fractional_exponent() {
                let _ = writeln!(out, "fractional = {e}");
            }
        }
        Format::Table => {
            let _ = writeln!(out, "E-polynomial: {epoly}");
            let _ = writeln!(out, "Euler characteristic: {}", epoly.euler_characteristic());
            if let Some(e) = epoly.min_fractional_exponent() {
                let _ = writeln!(out, "smallest fractional exponent: {e}");
            }
        }
    }
    out
}

fn render_verification(format: Format, report: &VerificationReport<Int>) -> String {
    let eres = report
        .resolution_epoly
        .as_ref()
        .map_or_else(|| "skipped".to_string(), |e| e.to_string());
    let chi_res = report
        .euler_resolution()
        .map_or_else(|| "skipped".to_string(), |c| c.to_string());
    let equal = match report.equal {
        Some(true) => "true",
        Some(false) => "false",
        None => "skipped",
    };
    let mut out = String::new();
    match format {
        Format::Kv => {
            let _ = writeln!(out, "eorb = {}", report.orbifold_epoly);
            let _ = writeln!(out, "chi_orb = {}", report.euler_orbifold());
            let _ = writeln!(out, "eres = {eres}");
            let _ = writeln!(out, "chi_res = {chi_res}");
            let _ = writeln!(out, "equal = {equal}");
            if let Some(sl) = report.special_linear {
                let _ = writeln!(out, "sl = {sl}");
            }
            if let Some(e) = &report.fractional_exponent {
                let _ = writeln!(out, "fractional = {e}");
            }
            for note in &report.notes {
                let _ = writeln!(out, "note = {note}");
            }
        }
        Format::Table => {
            let _ = writeln!(out, "orbifold:   {}", report.orbifold_epoly);
            let _ = writeln!(out, "resolution: {eres}");
            let _ = writeln!(out, "equal:      {equal}");
            let _ = writeln!(out, "Euler characteristics: {} / {chi_res}", report.euler_orbifold());
            if let Some(sl) = report.special_linear {
                let _ = writeln!(out, "special linear: {sl}");
            }
            if let Some(e) = &report.fractional_exponent {
                let _ = writeln!(out, "fractional exponent: {e}");
            }
            for note in &report.notes {
                let _ = writeln!(out, "note: {note}");
            }
        }
    }
    out
}

fn render_comparison(format: Format, report: &ComparisonReport<Int>) -> String {
    let mut out = String::new();
    match format {
        Format::Kv => {
            let _ = writeln!(out, "eleft = {}", report.stringy_left);
            let _ = writeln!(out, "eright = {}", report.stringy_right);
            let _ = writeln!(out, "chi_left = {}", report.stringy_left.euler_characteristic());
            let _ = writeln!(out, "chi_right = {}", report.stringy_right.euler_characteristic());
            let _ = writeln!(out, "equal = {}", report.equal);
        }
        Format::Table => {
            let _ = writeln!(out, "left:  {}", report.stringy_left);
            let _ = writeln!(out, "right: {}", report.stringy_right);
            let _ = writeln!(out, "equal: {}", report.equal);
        }
    }
    out
}

fn evaluate_entry(entry: &CatalogEntry, cap: u64) -> Result<(String, &'static str), Error> {
    match &entry.kind {
        EntryKind::Model(model) => {
            let report = verify_mckay(model, cap)?;
            let equal = match report.equal {
                Some(true) => "true",
                Some(false) => "false",
                None => "skipped",
            };
            Ok((report.orbifold_epoly.to_string(), equal))
        }
        EntryKind::Compare(left, right) => {
            let report = compare_k_equivalent(left, right, cap)?;
            Ok((
                report.stringy_left.to_string(),
                if report.equal { "true" } else { "false" },
            ))
        }
    }
}

fn render_catalog(format: Format, cap: u64) -> Result<String, Error> {
    let entries = catalog::builtin();
    // Entries are independent; evaluate them in parallel but buffer the
    // results so the output order and bytes never depend on scheduling.
    let results: Vec<Result<(String, &'static str), Error>> = std::thread::scope(|scope| {
        let handles: Vec<_> = entries
            .iter()
            .map(|entry| scope.spawn(move || evaluate_entry(entry, cap)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut out = String::new();
    for (entry, result) in entries.iter().zip(results) {
        let (epoly, equal) = result?;
        match format {
            Format::Kv => {
                let _ = writeln!(out, "name = {}", entry.name);
                let _ = writeln!(out, "epoly = {epoly}");
                let _ = writeln!(out, "equal = {equal}");
            }
            Format::Table => {
                let _ = writeln!(out, "{} | {epoly} | {equal}", entry.name);
            }
        }
    }
    Ok(out)
}
