use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use spjuggle::afflag::{check_chain, check_symplectic_chain, phi, AfflagError};
use spjuggle::exactalg::{oracle_report, random_gsp_element, AlgError, QuiverPoint};
use spjuggle::export::{hasse_dot, stats_csv_row, CSV_HEADER};
use spjuggle::golden;
use spjuggle::mutations::MutationError;
use spjuggle::patterns::{enumerate_jp, enumerate_symplectic, is_symplectic, PatternError};
use spjuggle::poset::{build_poset, check_conjecture, OrderKind, PosetError};
use spjuggle::stats::{golden_mismatches, statistics};
use spjuggle::Exec;

#[derive(Parser, Debug)]
#[command(
    name = "spjuggle",
    version,
    about = "Cells of cyclic quiver Grassmannians and their symplectic loci"
)]
struct Cli {
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Shape {
    /// Rank of the subrepresentation.
    #[arg(short)]
    k: usize,
    /// Ambient dimension (number of vertices).
    #[arg(short)]
    n: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print juggling patterns as JSON lines, in canonical order.
    Enumerate {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        symplectic: bool,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Euler characteristics, Poincaré polynomials and top cells.
    Stats {
        #[command(flatten)]
        shape: Shape,
        /// Compare with the embedded reference tables.
        #[arg(long)]
        golden: bool,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Closure order of the cells and its Hasse diagram.
    Poset {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        symplectic: bool,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Compare mutation counts with exact orbit ranks.
    VerifyOracle {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        symplectic: bool,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Check the lattice chains attached to coordinate and random points.
    VerifyAfflag {
        #[command(flatten)]
        shape: Shape,
        /// Truncation depth of the lattice model.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        truncation: u64,
        /// Random points of symplectic cells to test in addition.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
    /// Is the order on symplectic patterns generated by symplectic moves?
    Conjecture {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal assertion: {0}")]
    Internal(MutationError),
    #[error(transparent)]
    Other(#[from] anyhow::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Other(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<PatternError> for CliError {
    fn from(e: PatternError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<MutationError> for CliError {
    fn from(e: MutationError) -> Self {
        match e {
            MutationError::Pattern(p) => p.into(),
            e @ (MutationError::UnpairedMove { .. } | MutationError::NoProblemFound { .. }) => {
                CliError::Internal(e)
            }
            e => CliError::Other(e.into()),
        }
    }
}

impl From<PosetError> for CliError {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::Mutation(m) => m.into(),
            e => CliError::Other(e.into()),
        }
    }
}

impl From<AlgError> for CliError {
    fn from(e: AlgError) -> Self {
        match e {
            AlgError::Mutation(m) => m.into(),
            AlgError::Pattern(p) => p.into(),
            AlgError::OddSize(_) => CliError::Usage(e.to_string()),
            e => CliError::Other(e.into()),
        }
    }
}

impl From<AfflagError> for CliError {
    fn from(e: AfflagError) -> Self {
        match e {
            AfflagError::Alg(a) => a.into(),
            AfflagError::OddAmbient(_) => CliError::Usage(e.to_string()),
            e => CliError::Other(e.into()),
        }
    }
}

/// Writes next to the target and renames, so readers never see a partial file.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let name = path
        .file_name()
        .ok_or_else(|| CliError::Usage(format!("not a file path: {}", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.tmp", name.to_string_lossy()));
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))?;
    Ok(())
}

fn write_json(path: &Option<PathBuf>, value: &impl serde::Serialize) -> Result<(), CliError> {
    if let Some(path) = path {
        let text = serde_json::to_string_pretty(value).context("serializing report")?;
        write_atomic(path, &(text + "\n"))?;
    }
    Ok(())
}

fn require_symplectic_shape(s: Shape) -> Result<(), CliError> {
    if s.n % 2 != 0 || 2 * s.k > s.n {
        return Err(CliError::Usage(format!(
            "symplectic patterns need an even ambient dimension and 2k <= n (got k={}, n={})",
            s.k, s.n
        )));
    }
    Ok(())
}

fn enumerate(
    shape: Shape,
    symplectic: bool,
    json: &Option<PathBuf>,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let patterns = if symplectic {
        require_symplectic_shape(shape)?;
        enumerate_symplectic(shape.k, shape.n)?
    } else {
        enumerate_jp(shape.k, shape.n)?.collect()
    };
    let mut text = String::new();
    for p in &patterns {
        text.push_str(&serde_json::to_string(p).context("serializing pattern")?);
        text.push('\n');
    }
    match json {
        Some(path) => write_atomic(path, &text)?,
        None => out.write_all(text.as_bytes()).context("writing patterns")?,
    }
    eprintln!("{} patterns", patterns.len());
    Ok(())
}

fn stats(
    shape: Shape,
    check_golden: bool,
    csv: &Option<PathBuf>,
    json: &Option<PathBuf>,
    exec: Exec,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let s = statistics(shape.k, shape.n, exec)?;
    writeln!(out, "{CSV_HEADER}").context("writing stats")?;
    writeln!(out, "{}", stats_csv_row(&s)).context("writing stats")?;
    if let Some(w) = &s.warning {
        eprintln!("WARNING: {w}");
    }
    if let Some(path) = csv {
        write_atomic(path, &format!("{CSV_HEADER}\n{}\n", stats_csv_row(&s)))?;
    }
    write_json(json, &s)?;
    if check_golden {
        let entry = golden::lookup(shape.k, shape.n).ok_or_else(|| {
            CliError::Usage(format!(
                "no reference data for k={}, n={}",
                shape.k, shape.n
            ))
        })?;
        let diff = golden_mismatches(&s, entry);
        if !diff.is_empty() {
            return Err(CliError::Verification(format!(
                "differs from reference in {}",
                diff.join(", ")
            )));
        }
        writeln!(out, "golden: match").context("writing stats")?;
    }
    Ok(())
}

fn poset(
    shape: Shape,
    symplectic: bool,
    dot: &Option<PathBuf>,
    json: &Option<PathBuf>,
    exec: Exec,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let kind = if symplectic {
        require_symplectic_shape(shape)?;
        OrderKind::Symplectic
    } else {
        OrderKind::Full
    };
    let p = build_poset(shape.k, shape.n, kind, exec)?;
    writeln!(out, "{} nodes, {} edges", p.len(), p.hasse.len()).context("writing summary")?;
    if let Some(path) = dot {
        write_atomic(path, &hasse_dot(&p))?;
    }
    write_json(
        json,
        &json!({
            "kind": p.kind,
            "k": p.k,
            "n": p.n,
            "patterns": p.patterns,
            "dims": p.dims,
            "hasse": p.hasse,
        }),
    )
}

fn verify_oracle(
    shape: Shape,
    symplectic: bool,
    json: &Option<PathBuf>,
    exec: Exec,
    out: &mut impl Write,
) -> Result<(), CliError> {
    if symplectic {
        require_symplectic_shape(shape)?;
    }
    let rows = oracle_report(shape.k, shape.n, symplectic, exec)?;
    write_json(json, &rows)?;
    let bad: Vec<_> = rows.iter().filter(|r| !r.agree).collect();
    for r in &bad {
        writeln!(
            out,
            "disagree: {} mutations={} orbit={}",
            r.pattern, r.dim_comb, r.dim_oracle
        )
        .context("writing report")?;
    }
    writeln!(out, "{}/{} agree", rows.len() - bad.len(), rows.len()).context("writing report")?;
    if bad.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "{} disagreements",
            bad.len()
        )))
    }
}

#[allow(clippy::too_many_arguments)]
fn verify_afflag(
    shape: Shape,
    truncation: usize,
    samples: usize,
    seed: u64,
    json: &Option<PathBuf>,
    exec: Exec,
    out: &mut impl Write,
) -> Result<(), CliError> {
    if shape.n % 2 != 0 {
        return Err(CliError::Usage(format!(
            "the lattice model needs an even ambient dimension (got n={})",
            shape.n
        )));
    }
    let patterns: Vec<_> = enumerate_jp(shape.k, shape.n)?.collect();
    let rows = exec.try_map(&patterns, |p| -> Result<_, CliError> {
        let chain = phi(&QuiverPoint::coordinate(p), truncation)?;
        Ok((
            check_chain(&chain).ok(),
            is_symplectic(p)?,
            check_symplectic_chain(&chain)?,
        ))
    })?;
    let chain_ok = rows.iter().filter(|r| r.0).count();
    let agree = rows.iter().filter(|r| r.1 == r.2).count();
    writeln!(out, "chains valid: {chain_ok}/{}", rows.len()).context("writing report")?;
    writeln!(out, "self-dual <=> symplectic: {agree}/{}", rows.len()).context("writing report")?;

    let mut sample_rows = Vec::new();
    if samples > 0 && 2 * shape.k <= shape.n {
        let sp = enumerate_symplectic(shape.k, shape.n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let p = &sp[rng.gen_range(0..sp.len())];
            let g = random_gsp_element(shape.n, &mut rng)?;
            let point = QuiverPoint::coordinate(p).act(&g);
            let chain = phi(&point, truncation)?;
            sample_rows.push((
                p.clone(),
                point.is_isotropic()?,
                check_chain(&chain).ok(),
                check_symplectic_chain(&chain)?,
            ));
        }
        let valid = sample_rows.iter().filter(|r| r.1 && r.2).count();
        let dual = sample_rows.iter().filter(|r| r.3).count();
        writeln!(
            out,
            "samples (seed {seed}): {valid}/{samples} isotropic with valid chains, {dual}/{samples} self-dual"
        )
        .context("writing report")?;
    }

    write_json(
        json,
        &json!({
            "k": shape.k,
            "n": shape.n,
            "truncation": truncation,
            "seed": seed,
            "coordinate_points": patterns.iter().zip(&rows).map(|(p, r)| json!({
                "pattern": p,
                "chain_ok": r.0,
                "symplectic": r.1,
                "self_dual": r.2,
            })).collect::<Vec<_>>(),
            "samples": sample_rows.iter().map(|r| json!({
                "pattern": r.0,
                "isotropic": r.1,
                "chain_ok": r.2,
                "self_dual": r.3,
            })).collect::<Vec<_>>(),
        }),
    )?;

    let mut failures = Vec::new();
    if chain_ok != rows.len() {
        failures.push(format!("{} invalid chains", rows.len() - chain_ok));
    }
    if agree != rows.len() {
        failures.push(format!(
            "self-duality differs from symplecticity on {} patterns",
            rows.len() - agree
        ));
    }
    if sample_rows.iter().any(|r| !(r.1 && r.2 && r.3)) {
        failures.push("some sampled points failed".to_string());
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failures.join("; ")))
    }
}

fn conjecture(
    shape: Shape,
    json: &Option<PathBuf>,
    exec: Exec,
    out: &mut impl Write,
) -> Result<(), CliError> {
    require_symplectic_shape(shape)?;
    let report = check_conjecture(shape.k, shape.n, exec)?;
    write_json(json, &report)?;
    for (lower, upper) in &report.counterexamples {
        writeln!(out, "not generated: {lower} <= {upper}").context("writing report")?;
    }
    writeln!(
        out,
        "{} comparable pairs, {} counterexamples",
        report.pairs_checked,
        report.counterexamples.len()
    )
    .context("writing report")?;
    if report.counterexamples.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "{} counterexamples",
            report.counterexamples.len()
        )))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Enumerate {
            shape,
            symplectic,
            json,
        } => enumerate(shape, symplectic, &json, &mut out),
        Command::Stats {
            shape,
            golden,
            csv,
            json,
        } => stats(shape, golden, &csv, &json, exec, &mut out),
        Command::Poset {
            shape,
            symplectic,
            dot,
            json,
        } => poset(shape, symplectic, &dot, &json, exec, &mut out),
        Command::VerifyOracle {
            shape,
            symplectic,
            json,
        } => verify_oracle(shape, symplectic, &json, exec, &mut out),
        Command::VerifyAfflag {
            shape,
            truncation,
            samples,
            seed,
            json,
        } => verify_afflag(
            shape,
            truncation as usize,
            samples,
            seed,
            &json,
            exec,
            &mut out,
        ),
        Command::Conjecture { shape, json } => conjecture(shape, &json, exec, &mut out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
