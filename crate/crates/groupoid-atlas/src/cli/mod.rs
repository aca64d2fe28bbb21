//! Command line front end: loads a spec file, builds the atlas, runs
//! one computation, and prints a report whose results block is
//! byte-stable for identical input. Timing goes to stderr so the
//! stable block stays stable.

pub mod spec;

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{ArgGroup, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Zero;
use sha2::{Digest, Sha256};

use crate::algebra::{GroupPresentation, TietzeBudget};
use crate::atlas::{atlas_properties, validate_atlas, Atlas};
use crate::fundamental::{
    check_p_iso_hypotheses, p_induced, path_components, pi1_strong_with_budget,
    pi1_weak_with_budget,
};
use crate::homology::{chain_complex, homology_of_chain_complex, j_map_analysis};
use crate::nerve::{strong_nerve_with_budget, weak_nerve_with_budget, DEFAULT_DIM_BUDGET};

use spec::AtlasSpecFile;

/// Failures grouped by exit code: 1 parse, 2 validation, 3 budget.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Validation(String),
    Budget(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Validation(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse: {m}"),
            CliError::Validation(m) => write!(f, "validation: {m}"),
            CliError::Budget(m) => write!(f, "budget: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "gatlas", version, about = "invariants of finite groupoid atlases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the atlas axioms and print the predicate table.
    Validate { file: PathBuf },
    /// Count path components.
    Pi0 { file: PathBuf },
    /// Present a fundamental group at a base point.
    #[command(group = ArgGroup::new("engine").required(true).args(["weak", "strong", "both"]))]
    Pi1 {
        file: PathBuf,
        #[arg(long)]
        weak: bool,
        #[arg(long)]
        strong: bool,
        /// Both engines plus the generator images of the projection.
        #[arg(long)]
        both: bool,
        #[arg(long)]
        base: Option<String>,
    },
    /// Count nerve cells per dimension, optionally exporting them.
    Nerve {
        file: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, conflicts_with = "strong")]
        weak: bool,
        #[arg(long)]
        strong: bool,
        #[arg(long, value_parser = ["dot", "json"])]
        export: Option<String>,
    },
    /// Integer homology up to the truncation bound.
    Homology {
        file: PathBuf,
        #[arg(long = "max-dim")]
        max_dim: Option<usize>,
    },
    /// Kernel analysis of the chain-level gluing map.
    Jmap { file: PathBuf },
    /// Compare the projection-induced map on abelianized groups.
    PCheck {
        file: PathBuf,
        #[arg(long)]
        base: Option<String>,
    },
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let kind = e.kind();
            let _ = e.print();
            return if matches!(kind, ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                0
            } else {
                1
            };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    }
}

struct Loaded {
    file: AtlasSpecFile,
    atlas: Atlas,
    digest: String,
    started: Instant,
}

struct Budgets {
    cells: usize,
    tietze: TietzeBudget,
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let started = Instant::now();
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let digest: String =
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let file = AtlasSpecFile::parse(text)?;
    let atlas = file.build_atlas()?;
    Ok(Loaded { file, atlas, digest, started })
}

fn ensure_valid(atlas: &Atlas) -> Result<(), CliError> {
    let report = validate_atlas(atlas);
    if report.is_valid() {
        Ok(())
    } else {
        let list: Vec<String> =
            report.failures().iter().map(|c| c.clause.clone()).collect();
        Err(CliError::Validation(format!("atlas fails: {}", list.join("; "))))
    }
}

fn resolve_budgets(loaded: &Loaded) -> Result<Budgets, CliError> {
    let opts = &loaded.file.options;
    let mut cells = opts.max_cells_per_dim.unwrap_or(DEFAULT_DIM_BUDGET);
    let mut tietze = TietzeBudget::default();
    if let Some(l) = opts.tietze_max_length {
        tietze.max_total_length = l;
    }
    if let Some(p) = opts.tietze_max_passes {
        tietze.max_passes = p;
    }
    if let Ok(raw) = std::env::var("GATLAS_BUDGET") {
        for part in raw.split(',').filter(|s| !s.trim().is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| CliError::Parse(format!("GATLAS_BUDGET entry {part:?} lacks =")))?;
            let value: usize = value.trim().parse().map_err(|_| {
                CliError::Parse(format!("GATLAS_BUDGET value for {} is not a number", key.trim()))
            })?;
            match key.trim() {
                "cells" => cells = value,
                "length" => tietze.max_total_length = value,
                "passes" => tietze.max_passes = value,
                other => {
                    return Err(CliError::Parse(format!("unknown GATLAS_BUDGET key: {other:?}")))
                }
            }
        }
    }
    Ok(Budgets { cells, tietze })
}

fn resolve_point(atlas: &Atlas, text: &str) -> Result<usize, CliError> {
    if let Some(p) = atlas.point_labels().iter().position(|l| l == text) {
        return Ok(p);
    }
    if let Ok(i) = text.parse::<usize>() {
        if i < atlas.point_count() {
            return Ok(i);
        }
    }
    Err(CliError::Validation(format!("no point {text:?} in the atlas")))
}

fn resolve_base(loaded: &Loaded, flag: &Option<String>) -> Result<usize, CliError> {
    if let Some(text) = flag.as_ref().or(loaded.file.options.base_point.as_ref()) {
        return resolve_point(&loaded.atlas, text);
    }
    if loaded.atlas.point_count() == 0 {
        return Err(CliError::Validation("the atlas has no points".into()));
    }
    Ok(0)
}

fn emit(loaded: &Loaded, command: String, lines: Vec<String>, code: i32) -> i32 {
    println!("command: {command}");
    println!("input: sha256:{}", loaded.digest);
    let pipeline = &loaded.file.options.pipeline;
    let pipe =
        if pipeline.is_empty() { "(none)".to_string() } else { pipeline.join(", ") };
    println!("pipeline: {pipe}");
    println!("results:");
    for line in lines {
        println!("  {line}");
    }
    eprintln!("timing: {} ms", loaded.started.elapsed().as_millis());
    code
}

fn execute(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Pi0 { file } => cmd_pi0(&file),
        Command::Pi1 { file, weak, strong, both, base } => {
            cmd_pi1(&file, weak, strong, both, &base)
        }
        Command::Nerve { file, dim, weak, strong, export } => {
            cmd_nerve(&file, dim, weak, strong, &export)
        }
        Command::Homology { file, max_dim } => cmd_homology(&file, max_dim),
        Command::Jmap { file } => cmd_jmap(&file),
        Command::PCheck { file, base } => cmd_p_check(&file, &base),
    }
}

fn cmd_validate(path: &Path) -> Result<i32, CliError> {
    let loaded = load(path)?;
    let report = validate_atlas(&loaded.atlas);
    let props = atlas_properties(&loaded.atlas);
    let mut lines = vec![format!("valid: {}", report.is_valid())];
    lines.push("clauses:".into());
    for clause in &report.clauses {
        lines.push(format!(
            "  {}: {}",
            clause.clause,
            if clause.passed { "pass" } else { "FAIL" }
        ));
        for w in &clause.witnesses {
            lines.push(format!("    witness: {w}"));
        }
    }
    lines.push("predicates:".into());
    lines.push(format!("  covered: {}", props.covered));
    lines.push(format!("  irreducible: {}", props.irreducible));
    lines.push(format!("  good: {}", props.good));
    lines.push(format!("  regular: {}", props.regular));
    lines.push(format!("  has_infimum: {}", props.has_infimum));
    lines.push(format!("  frames_filtered: {}", props.frames_filtered));
    let code = if report.is_valid() { 0 } else { 2 };
    Ok(emit(&loaded, "validate".into(), lines, code))
}

fn cmd_pi0(path: &Path) -> Result<i32, CliError> {
    let loaded = load(path)?;
    ensure_valid(&loaded.atlas)?;
    let pc = path_components(&loaded.atlas);
    let mut lines = vec![format!("components: {}", pc.count())];
    for (i, comp) in pc.components.iter().enumerate() {
        lines.push(format!(
            "component {i}: size {}, representative {}",
            comp.len(),
            loaded.atlas.point_label(comp[0]),
        ));
    }
    Ok(emit(&loaded, "pi0".into(), lines, 0))
}

fn describe_group(prefix: &str, p: &GroupPresentation) -> Vec<String> {
    let mut lines = vec![
        format!("{prefix} presentation: {p}"),
        format!("{prefix} generators: {}", p.generators.len()),
        format!("{prefix} relators: {}", p.relators.len()),
        format!("{prefix} abelianization: {}", p.abelian_invariants()),
    ];
    match p.detected_free_rank() {
        Some(0) => lines.push(format!("{prefix} group: trivial (detected)")),
        Some(r) => lines.push(format!("{prefix} group: free of rank {r} (detected)")),
        None => {}
    }
    lines
}

fn cmd_pi1(
    path: &Path,
    weak: bool,
    strong: bool,
    both: bool,
    base: &Option<String>,
) -> Result<i32, CliError> {
    let loaded = load(path)?;
    ensure_valid(&loaded.atlas)?;
    let budgets = resolve_budgets(&loaded)?;
    let point = resolve_base(&loaded, base)?;
    let label = loaded.atlas.point_label(point).to_string();
    let mut lines = vec![format!("base: {label} (point {point})")];
    let mode = if both {
        "--both"
    } else if strong {
        "--strong"
    } else {
        "--weak"
    };
    if weak || both {
        let p = pi1_weak_with_budget(&loaded.atlas, point, &budgets.tietze)
            .map_err(from_atlas)?;
        lines.extend(describe_group("weak", &p));
    }
    if strong || both {
        let p = pi1_strong_with_budget(&loaded.atlas, point, &budgets.tietze)
            .map_err(from_atlas)?;
        lines.extend(describe_group("strong", &p));
    }
    if both {
        let cmp = p_induced(&loaded.atlas, point).map_err(from_atlas)?;
        lines.push("p generator images (abelianized):".into());
        for (j, name) in cmp.strong.generators.iter().enumerate() {
            lines.push(format!("  {name} -> {}", column_image(&cmp, j)));
        }
        lines.push(format!("p surjective on abelianizations: {}", cmp.surjective_abelianized));
        lines.push(format!("p iso on abelianizations: {}", cmp.iso_abelianized));
    }
    let command = format!("pi1 {mode} --base {label}");
    Ok(emit(&loaded, command, lines, 0))
}

fn column_image(cmp: &crate::fundamental::ProjectionComparison, j: usize) -> String {
    let mut terms = Vec::new();
    for (i, name) in cmp.weak.generators.iter().enumerate() {
        let e = cmp.matrix.get(i, j);
        if e.is_zero() {
            continue;
        }
        if *e == BigInt::from(1) {
            terms.push(name.clone());
        } else if *e == BigInt::from(-1) {
            terms.push(format!("{name}^-1"));
        } else {
            terms.push(format!("{name}^{e}"));
        }
    }
    if terms.is_empty() {
        "1".into()
    } else {
        terms.join(" ")
    }
}

fn cmd_nerve(
    path: &Path,
    dim: Option<usize>,
    weak: bool,
    strong: bool,
    export: &Option<String>,
) -> Result<i32, CliError> {
    let _ = strong;
    let loaded = load(path)?;
    ensure_valid(&loaded.atlas)?;
    let budgets = resolve_budgets(&loaded)?;
    let k = dim.or(loaded.file.options.truncation).unwrap_or(4);
    let kind = if weak { "weak" } else { "strong" };
    let complex = if weak {
        weak_nerve_with_budget(&loaded.atlas, k, budgets.cells).map_err(from_atlas)?.complex
    } else {
        strong_nerve_with_budget(&loaded.atlas, k, budgets.cells).map_err(from_atlas)?.complex
    };
    let mut lines = vec![format!("kind: {kind}"), format!("truncation: {k}")];
    for (d, cells) in complex.cells.iter().enumerate() {
        lines.push(format!("dim {d}: {} cells", cells.len()));
    }
    let mut command = format!("nerve --dim {k} --{kind}");
    match export.as_deref() {
        Some("dot") => {
            command.push_str(" --export dot");
            lines.push("export dot:".into());
            lines.extend(complex.to_dot("nerve").lines().map(String::from));
        }
        Some("json") => {
            command.push_str(" --export json");
            lines.push("export json:".into());
            lines.push(complex.to_json());
        }
        _ => {}
    }
    Ok(emit(&loaded, command, lines, 0))
}

fn cmd_homology(path: &Path, max_dim: Option<usize>) -> Result<i32, CliError> {
    let loaded = load(path)?;
    ensure_valid(&loaded.atlas)?;
    let budgets = resolve_budgets(&loaded)?;
    let k = max_dim.or(loaded.file.options.truncation).unwrap_or(4);
    if k == 0 {
        return Err(CliError::Validation("the truncation bound must be positive".into()));
    }
    let nerve =
        strong_nerve_with_budget(&loaded.atlas, k, budgets.cells).map_err(from_atlas)?;
    let cc = chain_complex(&nerve.complex).map_err(from_atlas)?;
    let result = homology_of_chain_complex(&cc);
    let mut lines = vec![
        format!("truncation: {k}"),
        format!("valid dimensions: 0 through {}", k - 1),
    ];
    for (n, g) in result.groups.iter().enumerate() {
        lines.push(format!("H_{n} = {g}"));
    }
    lines.push(format!("json: {}", result.to_json()));
    Ok(emit(&loaded, format!("homology --max-dim {k}"), lines, 0))
}

fn cmd_jmap(path: &Path) -> Result<i32, CliError> {
    let loaded = load(path)?;
    ensure_valid(&loaded.atlas)?;
    let k = loaded.file.options.truncation.unwrap_or(2);
    let report = j_map_analysis(&loaded.atlas, k).map_err(from_atlas)?;
    let mut lines = vec![
        format!("truncation: {k}"),
        format!("multiplicity free: {}", report.multiplicity_free),
    ];
    for d in &report.dims {
        lines.push(format!(
            "dim {}: {} classes, matrix {} x {}, kernel rank {}",
            d.dim,
            d.classes.len(),
            d.matrix.rows(),
            d.matrix.cols(),
            d.kernel_rank,
        ));
    }
    lines.push(format!("injective: {}", report.injective));
    lines.push(format!("all index relations acyclic: {}", report.all_acyclic));
    lines.push(format!("index criterion agrees: {}", report.verdict_matches));
    Ok(emit(&loaded, "jmap".into(), lines, 0))
}

fn cmd_p_check(path: &Path, base: &Option<String>) -> Result<i32, CliError> {
    let loaded = load(path)?;
    ensure_valid(&loaded.atlas)?;
    let point = resolve_base(&loaded, base)?;
    let label = loaded.atlas.point_label(point).to_string();
    let cmp = p_induced(&loaded.atlas, point).map_err(from_atlas)?;
    let hyp = check_p_iso_hypotheses(&loaded.atlas);
    let lines = vec![
        format!("base: {label} (point {point})"),
        format!("weak abelianization: {}", cmp.weak_invariants),
        format!("strong abelianization: {}", cmp.strong_invariants),
        format!("p surjective on abelianizations: {}", cmp.surjective_abelianized),
        format!("p iso on abelianizations: {}", cmp.iso_abelianized),
        format!("hypothesis infimum: {}", hyp.has_infimum),
        format!("hypothesis locals simply connected: {}", hyp.locals_simply_connected),
        format!("hypothesis frames filtered: {}", hyp.frames_filtered),
        format!("hypotheses guarantee the isomorphism: {}", hyp.satisfied()),
    ];
    Ok(emit(&loaded, format!("p-check --base {label}"), lines, 0))
}

fn from_atlas(e: crate::atlas::AtlasError) -> CliError {
    match e {
        crate::atlas::AtlasError::TooLarge(m) => CliError::Budget(m),
        other => CliError::Validation(other.to_string()),
    }
}
