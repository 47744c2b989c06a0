//! The `ample-germs` command line.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2
//! on unreadable or invalid input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use crate::action::{germ_groupoid, ActionError};
use crate::algebra::{FiniteInverseSemigroup, Semilattice};
use crate::convolution::{check_tight_representation, rho, unit_cover, ConvolutionAlgebra, ConvolutionError, CoverMode};
use crate::corpus::corpus;
use crate::groupoid::{
    abstract_table, enumerate_bisections, singleton_semigroup, Bisection, BisectionSemigroup, FiniteGroupoid,
    GroupoidError, DEFAULT_MAX_CANDIDATES,
};
use crate::io::{parse_document, parse_groupoid, parse_semigroup_with, print_groupoid, print_semigroup, IoError};
use crate::reconstruction::{
    brute_force_iso, canonical_iso, enumerate_bases, reconstruct, stone_check, IsoError, ReconstructionError,
    DEFAULT_MAX_ARROWS,
};
use crate::spectrum::{enumerate_filters, tight_spectrum, ultrafilters, Filter, SpectrumError};

#[derive(Debug, Parser)]
#[command(name = "ample-germs", version, about = "Rebuild finite groupoids from inverse semigroups of their slices")]
pub struct Cli {
    /// Write a JSON summary of the run to this path.
    #[arg(long, global = true, value_name = "PATH")]
    summary: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, clap::Args)]
struct SemigroupInput {
    /// Semigroup document.
    file: PathBuf,
    /// Adjoin a fresh zero before validating.
    #[arg(long)]
    adjoin_zero: bool,
}

#[derive(Debug, Clone, clap::Args)]
struct SliceOptions {
    /// Use `{∅} ∪ {{γ}}` instead of every bisection.
    #[arg(long)]
    singletons: bool,
    /// Search-node bound when enumerating bisections.
    #[arg(long, default_value_t = DEFAULT_MAX_CANDIDATES)]
    max_bisections: usize,
    /// Seed for the element shuffle of the abstract table.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a groupoid or semigroup document and print its statistics.
    Validate {
        file: PathBuf,
        #[arg(long)]
        adjoin_zero: bool,
    },
    /// Print filters, ultrafilters, tight points and the basic sets of a semigroup.
    Spectrum(SemigroupInput),
    /// Print the bisection semigroup of a groupoid and its abstract table.
    Ample {
        file: PathBuf,
        #[command(flatten)]
        slices: SliceOptions,
    },
    /// Print the germ groupoid of a semigroup as a groupoid document.
    Reconstruct(SemigroupInput),
    /// Reconstruct a groupoid from its abstract table and compare with the original.
    CheckIso {
        file: PathBuf,
        #[command(flatten)]
        slices: SliceOptions,
        /// Arrow bound for the isomorphism search.
        #[arg(long, default_value_t = DEFAULT_MAX_ARROWS)]
        max_arrows: usize,
    },
    /// Check that indicator functions of bisections form a tight representation.
    RepCheck {
        file: PathBuf,
        #[command(flatten)]
        slices: SliceOptions,
        /// Compare against every cover of up to four members, not only minimal ones.
        #[arg(long)]
        audit_covers: bool,
    },
    /// Check the points-versus-tight-filters correspondence for every basis on few points.
    StoneCheck {
        #[arg(long, default_value_t = 4)]
        max_points: usize,
    },
    /// List the built-in groupoids, or write them as documents.
    Corpus {
        #[arg(long, value_name = "DIR")]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: IoError },
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Convolution(#[from] ConvolutionError),
    #[error("{0}")]
    Usage(String),
    #[error("writing output: {0}")]
    Output(#[from] std::io::Error),
}

struct Outcome {
    passed: bool,
    details: Value,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run(args: impl IntoIterator<Item = impl Into<OsString> + Clone>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    let name = command_name(&cli.command);
    let (code, summary) = match execute(&cli.command, out) {
        Ok(outcome) => {
            let status = if outcome.passed { "pass" } else { "fail" };
            (i32::from(!outcome.passed), json!({ "command": name, "status": status, "details": outcome.details }))
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            (2, json!({ "command": name, "status": "error", "error": e.to_string() }))
        }
    };
    if let Some(path) = &cli.summary {
        let text = serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return 2;
        }
    }
    code
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Spectrum(_) => "spectrum",
        Command::Ample { .. } => "ample",
        Command::Reconstruct(_) => "reconstruct",
        Command::CheckIso { .. } => "check-iso",
        Command::RepCheck { .. } => "rep-check",
        Command::StoneCheck { .. } => "stone-check",
        Command::Corpus { .. } => "corpus",
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

fn load_groupoid(path: &Path) -> Result<FiniteGroupoid, CliError> {
    parse_groupoid(&read(path)?).map_err(|source| CliError::Parse { path: path.to_path_buf(), source })
}

fn load_semigroup(input: &SemigroupInput) -> Result<FiniteInverseSemigroup, CliError> {
    parse_semigroup_with(&read(&input.file)?, input.adjoin_zero)
        .map_err(|source| CliError::Parse { path: input.file.clone(), source })
}

fn slices(g: &FiniteGroupoid, options: &SliceOptions) -> Result<Vec<Bisection>, CliError> {
    if options.singletons {
        Ok(singleton_semigroup(g))
    } else {
        Ok(enumerate_bisections(g, options.max_bisections)?)
    }
}

fn execute(command: &Command, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let mut text = String::new();
    let outcome = match command {
        Command::Validate { file, adjoin_zero } => validate(file, *adjoin_zero, &mut text)?,
        Command::Spectrum(input) => spectrum(&load_semigroup(input)?, &mut text)?,
        Command::Ample { file, slices: options } => ample(&load_groupoid(file)?, options, &mut text)?,
        Command::Reconstruct(input) => {
            let germs = reconstruct(&load_semigroup(input)?)?;
            text.push_str(&print_groupoid(germs.groupoid()));
            let g = germs.groupoid();
            Outcome { passed: true, details: json!({ "units": g.unit_count(), "arrows": g.len() }) }
        }
        Command::CheckIso { file, slices: options, max_arrows } => check_iso(&load_groupoid(file)?, options, *max_arrows, &mut text)?,
        Command::RepCheck { file, slices: options, audit_covers } => {
            rep_check(&load_groupoid(file)?, options, *audit_covers, &mut text)?
        }
        Command::StoneCheck { max_points } => stone(*max_points, &mut text)?,
        Command::Corpus { out_dir } => list_corpus(out_dir.as_deref(), &mut text)?,
    };
    out.write_all(text.as_bytes())?;
    Ok(outcome)
}

fn validate(file: &Path, adjoin_zero: bool, text: &mut String) -> Result<Outcome, CliError> {
    let source = read(file)?;
    let parse_error = |source| CliError::Parse { path: file.to_path_buf(), source };
    let kind = parse_document(&source).map_err(parse_error)?.kind;
    if kind == "groupoid" {
        let g = parse_groupoid(&source).map_err(parse_error)?;
        let loops = (0..g.len()).filter(|&a| !g.is_unit(a) && g.source(a) == g.range(a)).count();
        let pairs = g.composable_pairs().count();
        let _ = writeln!(text, "groupoid: {} units, {} arrows, {} composable pairs, {} non-unit loops", g.unit_count(), g.len(), pairs, loops);
        return Ok(Outcome {
            passed: true,
            details: json!({ "kind": "groupoid", "units": g.unit_count(), "arrows": g.len(), "composable_pairs": pairs }),
        });
    }
    let s = parse_semigroup_with(&source, adjoin_zero).map_err(parse_error)?;
    let _ = writeln!(
        text,
        "semigroup: {} elements, {} idempotents, zero {}",
        s.len(),
        s.idempotents().len(),
        s.name(s.zero())
    );
    Ok(Outcome {
        passed: true,
        details: json!({ "kind": "semigroup", "elements": s.len(), "idempotents": s.idempotents().len() }),
    })
}

fn filter_names(s: &FiniteInverseSemigroup, e: &Semilattice, f: &Filter) -> String {
    let names: Vec<&str> = f.members().iter().map(|slot| s.name(e.element(slot))).collect();
    format!("{{{}}}", names.join(", "))
}

fn spectrum(s: &FiniteInverseSemigroup, text: &mut String) -> Result<Outcome, CliError> {
    let e = Semilattice::from_semigroup(s);
    let filters = enumerate_filters(&e);
    let ultra = ultrafilters(&e);
    let tight = tight_spectrum(&e)?;
    let _ = writeln!(text, "filters ({}):", filters.len());
    for f in &filters {
        let _ = writeln!(text, "  {}", filter_names(s, &e, f));
    }
    let _ = writeln!(text, "ultrafilters ({}):", ultra.len());
    for f in &ultra {
        let _ = writeln!(text, "  {}", filter_names(s, &e, f));
    }
    let _ = writeln!(text, "tight points ({}):", tight.len());
    for (p, phi) in tight.points().iter().enumerate() {
        let _ = writeln!(text, "  p{p} = {}", filter_names(s, &e, &phi.support()));
    }
    let _ = writeln!(text, "basic sets:");
    for slot in 0..e.len() {
        let points: Vec<String> = tight.basic_set(slot).iter().map(|p| format!("p{p}")).collect();
        let _ = writeln!(text, "  D({}) = {{{}}}", s.name(e.element(slot)), points.join(", "));
    }
    Ok(Outcome {
        passed: true,
        details: json!({ "filters": filters.len(), "ultrafilters": ultra.len(), "tight_points": tight.len() }),
    })
}

fn ample(g: &FiniteGroupoid, options: &SliceOptions, text: &mut String) -> Result<Outcome, CliError> {
    let collection = slices(g, options)?;
    let concrete = BisectionSemigroup::new(g, collection.clone())?;
    let _ = writeln!(text, "# {} bisections", collection.len());
    for (i, b) in concrete.bisections().iter().enumerate() {
        let _ = writeln!(text, "# {} = {}", concrete.semigroup().name(i), b.describe(g));
    }
    let table = abstract_table(g, &collection, options.seed)?;
    text.push_str(&print_semigroup(&table.semigroup));
    Ok(Outcome {
        passed: true,
        details: json!({
            "bisections": collection.len(),
            "idempotents": concrete.semigroup().idempotents().len(),
            "seed": options.seed,
        }),
    })
}

fn check_iso(g: &FiniteGroupoid, options: &SliceOptions, max_arrows: usize, text: &mut String) -> Result<Outcome, CliError> {
    let collection = slices(g, options)?;
    let table = abstract_table(g, &collection, options.seed)?;
    let germs = reconstruct(&table.semigroup)?;
    let rebuilt = germs.groupoid();
    let _ = writeln!(text, "reconstructed: {} units, {} arrows", rebuilt.unit_count(), rebuilt.len());
    let canonical = canonical_iso(g, &germs, &table.audit);
    let searched = brute_force_iso(rebuilt, g, max_arrows);
    let verdict = |r: &Result<_, IsoError>| match r {
        Ok(_) => "pass".to_string(),
        Err(e) => format!("fail ({e})"),
    };
    let _ = writeln!(text, "canonical isomorphism: {}", verdict(&canonical));
    if let Ok(iso) = &canonical {
        for a in 0..rebuilt.len() {
            let _ = writeln!(text, "  {} -> {}", rebuilt.name(a), g.name(iso.apply(a)));
        }
    }
    let _ = writeln!(text, "independent search: {}", verdict(&searched));
    Ok(Outcome {
        passed: canonical.is_ok() && searched.is_ok(),
        details: json!({
            "elements": table.semigroup.len(),
            "units": rebuilt.unit_count(),
            "arrows": rebuilt.len(),
            "canonical": verdict(&canonical),
            "search": verdict(&searched),
        }),
    })
}

fn rep_check(g: &FiniteGroupoid, options: &SliceOptions, audit: bool, text: &mut String) -> Result<Outcome, CliError> {
    let collection = slices(g, options)?;
    let concrete = BisectionSemigroup::new(g, collection)?;
    let alg = ConvolutionAlgebra::new(g);
    let mode = if audit { CoverMode::Audit } else { CoverMode::Minimal };
    let report = check_tight_representation(&alg, concrete.semigroup(), |k| rho(&alg, concrete.bisection(k)), mode)?;
    let flag = |b: bool| if b { "pass" } else { "fail" };
    let _ = writeln!(text, "multiplicativity: {}", flag(report.multiplicativity));
    let _ = writeln!(text, "star: {}", flag(report.star));
    let _ = writeln!(text, "zero: {}", flag(report.zero));
    let _ = writeln!(text, "idempotents: {}", flag(report.idempotents));
    let _ = writeln!(text, "join laws: {}", flag(report.join_laws));
    let _ = writeln!(text, "tightness: {} ({} instances)", flag(report.tightness_witnesses.is_empty()), report.instances);
    for f in &report.failures {
        let _ = writeln!(text, "  {f}");
    }
    let table = abstract_table(g, concrete.bisections(), options.seed)?;
    let germs = germ_groupoid(&table.semigroup)?;
    let cover = match unit_cover(&germs) {
        Ok(cover) => cover.iter().map(|&e| table.semigroup.name(e).to_string()).collect(),
        Err(ConvolutionError::EmptySpectrum) => Vec::new(),
        Err(e) => return Err(e.into()),
    };
    let _ = writeln!(text, "unit cover: [{}]", cover.join(", "));
    Ok(Outcome {
        passed: report.passed(),
        details: json!({
            "elements": concrete.semigroup().len(),
            "instances": report.instances,
            "failures": report.failures,
            "unit_cover": cover,
        }),
    })
}

fn stone(max_points: usize, text: &mut String) -> Result<Outcome, CliError> {
    if max_points > 4 {
        return Err(CliError::Usage("--max-points is limited to 4".into()));
    }
    let mut passed = true;
    let mut per_size = Vec::new();
    for n in 0..=max_points {
        let bases = enumerate_bases(n);
        let mut failures = 0;
        for space in &bases {
            match stone_check(space) {
                Ok(_) => {}
                Err(ReconstructionError::CheckFailed { clause, witness }) => {
                    failures += 1;
                    let _ = writeln!(text, "  |X| = {n}: {clause} fails: {witness}");
                }
                Err(e) => return Err(CliError::Usage(e.to_string())),
            }
        }
        passed &= failures == 0;
        let _ = writeln!(text, "|X| = {n}: {} bases, {} failures", bases.len(), failures);
        per_size.push(json!({ "points": n, "bases": bases.len(), "failures": failures }));
    }
    Ok(Outcome { passed, details: json!(per_size) })
}

fn list_corpus(out_dir: Option<&Path>, text: &mut String) -> Result<Outcome, CliError> {
    let instances = corpus();
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
    }
    for inst in &instances {
        let g = &inst.groupoid;
        let _ = writeln!(text, "{}: {} units, {} arrows", inst.name, g.unit_count(), g.len());
        if let Some(dir) = out_dir {
            std::fs::write(dir.join(format!("{}.groupoid", inst.name)), print_groupoid(g))?;
        }
    }
    let names: Vec<&str> = instances.iter().map(|i| i.name.as_str()).collect();
    Ok(Outcome { passed: true, details: json!({ "instances": names }) })
}
