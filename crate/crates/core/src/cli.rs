//! The `tdembed` command line: JSON in, JSON out, fixed exit codes.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use crate::design::{
    check_orthogonal, find_transversals, latin_to_td, loop_operation, validate_latin_square, validate_td,
    DesignError, LatinSquare, LoopTable, Orthogonality, TdViolation, TransversalDesign,
};
use crate::embedding::{
    classify, compute_dg, construct_additive, construct_multiplicative, construct_semidirect, extend_to_max_td,
    extract_group, transversal_points, verify_embedding, EmbeddedTD, EmbeddingError, EmbeddingViolation, Frame,
};
use crate::exactalg::{AlgebraError, Field};
use crate::groupcat::{additive_group, catalog, GeneratedGroup, GroupError, CATALOG_NAMES, NAMED_ONLY};
use crate::oracle::{brute_transversal_points, points_json, search_td_on_frame, OracleError, PGSpace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tdembed", version, about = "Transversal designs embedded in projective spaces over skew fields")]
pub struct Cli {
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Named finite groups.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Embedded transversal designs.
    #[command(subcommand)]
    Embed(EmbedCmd),
    /// Latin squares, MOLS and transversal designs.
    #[command(subcommand)]
    Design(DesignCmd),
    /// The loop of a design.
    #[command(subcommand)]
    Loop(LoopCmd),
    /// Exhaustive searches in small PG(d, q).
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Debug, Subcommand)]
pub enum CatalogCmd {
    List,
    Gen { name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructionType {
    Additive,
    Multiplicative,
    Semidirect,
}

#[derive(Debug, Subcommand)]
pub enum EmbedCmd {
    Construct {
        #[arg(long = "type", value_enum)]
        kind: ConstructionType,
        /// A group JSON file, a catalog name, or `additive:<descriptor>`
        /// for all of a finite field.
        #[arg(long)]
        group: String,
        /// Projective dimension; additive constructions infer it.
        #[arg(long)]
        dim: Option<usize>,
    },
    Verify { file: PathBuf },
    /// Verification plus the flat dimension, properness and loop conclusions.
    Classify { file: PathBuf },
    TransversalPoints {
        file: PathBuf,
        /// Cross-check against every point of PG(d, q).
        #[arg(long)]
        brute: bool,
    },
    Extend { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum DesignCmd {
    /// Accepts a Latin square, a list of squares, or a TD.
    Validate { file: PathBuf },
    Transversals {
        file: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    MolsCheck { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum LoopCmd {
    /// Cayley table of the loop on part 0 of an embedding or TD file.
    Extract(LoopArgs),
}

#[derive(Debug, Args)]
pub struct LoopArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub one1: Option<usize>,
    #[arg(long)]
    pub one2: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FrameArg {
    Concurrent,
    Triangle,
}

#[derive(Debug, Subcommand)]
pub enum OracleCmd {
    Scan {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, value_enum)]
        frame: FrameArg,
        #[arg(long)]
        n: usize,
    },
}

/// A failure with its exit code and JSON body.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub report: Json,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INPUT,
            report: json!({ "error": "input", "message": msg.into() }),
        }
    }

    fn invalid(kind: &str, msg: impl Into<String>, witness: Json) -> Failure {
        Failure {
            code: EXIT_INVALID,
            report: json!({ "valid": false, "error": kind, "message": msg.into(), "witness": witness }),
        }
    }
}

fn td_witness(v: &TdViolation) -> Json {
    match v {
        TdViolation::Malformed(s) => json!({ "kind": "malformed", "detail": s }),
        TdViolation::PairUncovered(a, b) => json!({ "kind": "pair_uncovered", "pair": [a, b] }),
        TdViolation::PairCoveredTwice(a, b) => json!({ "kind": "pair_covered_twice", "pair": [a, b] }),
        TdViolation::PartAndBlock(a, b) => json!({ "kind": "part_and_block", "pair": [a, b] }),
        TdViolation::BlockMissesPart { block, part } => {
            json!({ "kind": "block_misses_part", "block": block, "part": part })
        }
        TdViolation::BadTransversalPartition(s) => json!({ "kind": "bad_transversal_partition", "detail": s }),
    }
}

fn algebra_failure(e: &AlgebraError) -> Failure {
    Failure::input(e.to_string())
}

fn group_failure(e: &GroupError) -> Failure {
    match e {
        GroupError::SearchSpaceTooLarge(_) => Failure {
            code: EXIT_UNSUPPORTED,
            report: json!({ "error": "unsupported_size", "message": e.to_string() }),
        },
        GroupError::Certification(v) => Failure::invalid("certification", e.to_string(), json!(v.to_string())),
        _ => Failure::input(e.to_string()),
    }
}

fn design_failure(e: &DesignError) -> Failure {
    match e {
        DesignError::InvalidTd(v) => Failure::invalid("td", e.to_string(), td_witness(v)),
        DesignError::NotOrthogonal { a, b, first, second } => Failure::invalid(
            "not_orthogonal",
            e.to_string(),
            json!({ "squares": [a, b], "cells": [[first.0, first.1], [second.0, second.1]] }),
        ),
        DesignError::PointNotInPart { .. } | DesignError::NotBlockSize3(_) => Failure::input(e.to_string()),
        _ => Failure::invalid("latin", e.to_string(), Json::Null),
    }
}

fn embedding_failure(e: &EmbeddingError) -> Failure {
    use EmbeddingError as E;
    match e {
        E::Algebra(a) => algebra_failure(a),
        E::Group(g) => group_failure(g),
        E::Design(d) => design_failure(d),
        E::Invalid(EmbeddingViolation::Td(v)) => Failure::invalid("td", e.to_string(), td_witness(v)),
        E::Invalid(v) => Failure::invalid(v.code(), e.to_string(), v.to_json()),
        E::PairCoverage(v) => Failure::invalid("pair_coverage", e.to_string(), td_witness(v)),
        E::LoopMismatch | E::PatternMismatch(_) | E::NotTransversal(_) | E::NothingToExtend => {
            Failure::invalid(error_code(e), e.to_string(), Json::Null)
        }
        _ => Failure {
            code: EXIT_INPUT,
            report: json!({ "error": error_code(e), "message": e.to_string() }),
        },
    }
}

fn error_code(e: &EmbeddingError) -> &'static str {
    use EmbeddingError as E;
    match e {
        E::Geometry(_) => "geometry",
        E::Algebra(_) => "algebra",
        E::Group(_) => "group",
        E::Design(_) => "design",
        E::SingularMatrix => "singular_matrix",
        E::CharZeroConcurrentImpossible => "char_zero_concurrent_impossible",
        E::GroupTooSmall(_) => "group_too_small",
        E::DimensionTooSmall(_) => "dimension_too_small",
        E::WrongGroupKind { .. } => "wrong_group_kind",
        E::DimensionMismatch { .. } => "dimension_mismatch",
        E::NonStandardFrame => "non_standard_frame",
        E::PatternMismatch(_) => "pattern_mismatch",
        E::LoopMismatch => "loop_mismatch",
        E::Invalid(_) => "invalid",
        E::PointOnPartHyperplane(_) => "point_on_part_hyperplane",
        E::WrongClassification { .. } => "wrong_classification",
        E::NothingToExtend => "nothing_to_extend",
        E::InfiniteField(_) => "infinite_field",
        E::PairCoverage(_) => "pair_coverage",
        E::NotTransversal(_) => "not_transversal",
        E::Decode(_) => "decode",
    }
}

fn oracle_failure(e: &OracleError) -> Failure {
    match e {
        OracleError::UnsupportedSize { .. } | OracleError::SearchSpaceTooLarge(_) => Failure {
            code: EXIT_UNSUPPORTED,
            report: json!({ "error": "unsupported_size", "message": e.to_string() }),
        },
        OracleError::Mismatch(_) => Failure::input(e.to_string()),
        OracleError::Embedding(inner) => embedding_failure(inner),
    }
}

impl From<EmbeddingError> for Failure {
    fn from(e: EmbeddingError) -> Failure {
        embedding_failure(&e)
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Failure {
        oracle_failure(&e)
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Failure {
        group_failure(&e)
    }
}

impl From<DesignError> for Failure {
    fn from(e: DesignError) -> Failure {
        design_failure(&e)
    }
}

fn read_json(path: &Path) -> Result<Json, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_embedding(path: &Path) -> Result<EmbeddedTD, Failure> {
    EmbeddedTD::from_json(&read_json(path)?).map_err(|e| Failure::input(e.to_string()))
}

fn load_group(spec: &str) -> Result<GeneratedGroup, Failure> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok(GeneratedGroup::from_json(&read_json(path)?)?);
    }
    if let Some(desc) = spec.strip_prefix("additive:") {
        let field = Field::parse(desc).map_err(|e| algebra_failure(&e))?;
        let Some(els) = field.elements() else {
            return Err(GroupError::CharZeroNoFiniteAdditiveSubgroup.into());
        };
        let gens: Vec<_> = els.into_iter().filter(|x| !x.is_zero()).map(|x| vec![x]).collect();
        return Ok(additive_group(&field, 1, &gens)?);
    }
    Ok(catalog(spec)?)
}

fn loop_json(lp: &LoopTable) -> Json {
    json!({
        "elements": lp.elements,
        "identity": lp.identity,
        "one2": lp.one2,
        "one3": lp.one3,
        "table": lp.table,
        "associative": lp.associative,
        "abelian": lp.abelian,
    })
}

fn squares_from(v: &Json) -> Result<Vec<Vec<Vec<usize>>>, Failure> {
    let cells = |s: &Json| -> Result<Vec<Vec<usize>>, Failure> {
        let c = s.get("cells").ok_or_else(|| Failure::input("square without \"cells\""))?;
        serde_json::from_value(c.clone()).map_err(|e| Failure::input(e.to_string()))
    };
    match v {
        Json::Array(items) => items.iter().map(cells).collect(),
        _ => Ok(vec![cells(v)?]),
    }
}

fn latin_squares(v: &Json) -> Result<Vec<LatinSquare>, Failure> {
    let raw = squares_from(v)?;
    raw.into_iter()
        .enumerate()
        .map(|(i, cells)| {
            validate_latin_square(&cells).map_err(|e| {
                Failure::invalid("latin", e.to_string(), json!({ "square": i }))
            })?;
            Ok(LatinSquare::new(cells)?)
        })
        .collect()
}

fn design_validate(v: &Json) -> Result<Json, Failure> {
    if v.get("blocks").is_some() {
        let td: TransversalDesign = serde_json::from_value(v.clone()).map_err(|e| Failure::input(e.to_string()))?;
        validate_td(&td).map_err(|w| Failure::invalid("td", w.to_string(), td_witness(&w)))?;
        return Ok(json!({ "valid": true, "kind": "td", "k": td.k, "n": td.n, "has_T": td.t.is_some() }));
    }
    let squares = latin_squares(v)?;
    if v.is_array() {
        mols_report(&squares)
    } else {
        Ok(json!({ "valid": true, "kind": "latin_square", "n": squares[0].n() }))
    }
}

fn mols_report(squares: &[LatinSquare]) -> Result<Json, Failure> {
    for (a, sa) in squares.iter().enumerate() {
        for (b, sb) in squares.iter().enumerate().skip(a + 1) {
            if let Orthogonality::Collision { first, second } = check_orthogonal(sa, sb)? {
                return Err(design_failure(&DesignError::NotOrthogonal { a, b, first, second }));
            }
        }
    }
    Ok(json!({
        "valid": true,
        "kind": "mols",
        "count": squares.len(),
        "n": squares.first().map(LatinSquare::n),
    }))
}

fn transversal_report(e: &EmbeddedTD, brute: bool) -> Result<Json, Failure> {
    let formula = transversal_points(e)?;
    let ex = extract_group(e, None, None)?;
    let dg = compute_dg(&ex.group)?;
    let mut report = json!({
        "count": formula.len(),
        "group_order": ex.group.order(),
        "dg": dg.to_json(),
        "points": points_json(&formula),
    });
    if brute {
        let q = e.field.order().ok_or_else(|| Failure {
            code: EXIT_UNSUPPORTED,
            report: json!({ "error": "unsupported_size", "message": "brute force needs a finite field" }),
        })?;
        let space = PGSpace::enumerate(q, e.d)?;
        let found = brute_transversal_points(&space, e)?;
        let mut a = formula.clone();
        let mut b = found.clone();
        a.sort();
        b.sort();
        let agree = a == b;
        report["brute"] = json!({ "count": found.len(), "agree": agree });
        if !agree {
            return Err(Failure::invalid(
                "formula_mismatch",
                "formula and brute-force transversal point sets differ",
                json!({ "formula": points_json(&formula), "brute": points_json(&found) }),
            ));
        }
    }
    Ok(report)
}

fn loop_extract(args: &LoopArgs) -> Result<Json, Failure> {
    let v = read_json(&args.file)?;
    let td = if v.get("descriptor").is_some() {
        let e = EmbeddedTD::from_json(&v).map_err(|e| Failure::input(e.to_string()))?;
        verify_embedding(&e).map_err(|w| embedding_failure(&EmbeddingError::Invalid(w)))?;
        e.td
    } else if v.get("blocks").is_some() {
        serde_json::from_value(v).map_err(|e| Failure::input(e.to_string()))?
    } else {
        let squares = latin_squares(&v)?;
        let [ls] = squares.as_slice() else {
            return Err(Failure::input("expected one Latin square"));
        };
        latin_to_td(ls, None)?
    };
    Ok(loop_json(&loop_operation(&td, args.one1, args.one2)?))
}

fn dispatch(command: &Command) -> Result<Json, Failure> {
    match command {
        Command::Catalog(CatalogCmd::List) => Ok(json!({ "presets": CATALOG_NAMES, "named_only": NAMED_ONLY })),
        Command::Catalog(CatalogCmd::Gen { name }) => {
            let g = catalog(name)?;
            let mut out = g.to_json();
            out["order"] = json!(g.order());
            Ok(out)
        }
        Command::Embed(EmbedCmd::Construct { kind, group, dim }) => {
            let g = load_group(group)?;
            let need_dim = || dim.ok_or_else(|| Failure::input("--dim is required for this construction"));
            let e = match kind {
                ConstructionType::Additive => {
                    let e = construct_additive(&g)?;
                    if dim.is_some_and(|d| d != e.d) {
                        return Err(Failure::input(format!("additive construction lives in dimension {}", e.d)));
                    }
                    e
                }
                ConstructionType::Multiplicative => construct_multiplicative(&g, need_dim()?)?,
                ConstructionType::Semidirect => construct_semidirect(&g, need_dim()?)?,
            };
            Ok(e.to_json())
        }
        Command::Embed(EmbedCmd::Verify { file }) => {
            let e = read_embedding(file)?;
            let r = verify_embedding(&e).map_err(|w| embedding_failure(&EmbeddingError::Invalid(w)))?;
            let mut out = r.to_json();
            out["valid"] = json!(true);
            Ok(out)
        }
        Command::Embed(EmbedCmd::Classify { file }) => Ok(classify(&read_embedding(file)?)?.to_json()),
        Command::Embed(EmbedCmd::TransversalPoints { file, brute }) => transversal_report(&read_embedding(file)?, *brute),
        Command::Embed(EmbedCmd::Extend { file }) => Ok(extend_to_max_td(&read_embedding(file)?)?.to_json()),
        Command::Design(DesignCmd::Validate { file }) => design_validate(&read_json(file)?),
        Command::Design(DesignCmd::Transversals { file, limit }) => {
            let squares = latin_squares(&read_json(file)?)?;
            let [ls] = squares.as_slice() else {
                return Err(Failure::input("expected one Latin square"));
            };
            let ts = find_transversals(ls, *limit);
            Ok(json!({
                "n": ls.n(),
                "count": ts.len(),
                "transversals": ts.iter().map(|t| &t.sigma).collect::<Vec<_>>(),
            }))
        }
        Command::Design(DesignCmd::MolsCheck { file }) => mols_report(&latin_squares(&read_json(file)?)?),
        Command::Loop(LoopCmd::Extract(args)) => loop_extract(args),
        Command::Oracle(OracleCmd::Scan { q, d, frame, n }) => {
            let space = PGSpace::enumerate(*q, *d)?;
            let frame = match frame {
                FrameArg::Concurrent => Frame::Concurrent,
                FrameArg::Triangle => Frame::Triangle,
            };
            Ok(search_td_on_frame(&space, frame, *n)?.to_json())
        }
    }
}

/// Runs one command and returns the exit code with its JSON report.
pub fn run(cli: &Cli) -> (i32, Json) {
    let go = || match dispatch(&cli.command) {
        Ok(report) => (EXIT_OK, report),
        Err(f) => (f.code, f.report),
    };
    match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(go),
            Err(e) => (EXIT_INPUT, json!({ "error": "input", "message": e.to_string() })),
        },
        None => go(),
    }
}

/// Parses `args` (program name first) and runs them; a parse failure is
/// returned as clap's message.
pub fn run_args<I, T>(args: I) -> Result<(i32, Json), String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| e.to_string())?;
    Ok(run(&cli))
}

/// Parses `args`, runs, and writes the report. Returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let (code, report) = run(&cli);
    let mut text = serde_json::to_string_pretty(&report).expect("json");
    text.push('\n');
    match &cli.output {
        Some(path) if code == EXIT_OK => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("{}: {e}", path.display());
                return EXIT_INPUT;
            }
        }
        _ => print!("{text}"),
    }
    if code != EXIT_OK {
        if let Some(msg) = report.get("message").and_then(Json::as_str) {
            eprintln!("error: {msg}");
        }
    }
    code
}
