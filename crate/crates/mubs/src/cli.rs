//! Command-line surface: construction, solving, scanning, verification,
//! and the relation-independence check, in text or JSON.
//!
//! Exit codes are disjoint by meaning: 0 success or valid, 1 a
//! verification failure, 2 an input error, 3 an empty solution set.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::document::{DocumentError, SeedsDoc, TableDocument};
use crate::galois::{FieldCtx, FieldElement};
use crate::pauli::{verify_mub, MubReport, PauliOp};
use crate::phase_space::{build_table, MubTable, Point, SeedParams};
use crate::solver::{independence_check, scan_all, solve_system, FixedFive, Solution};

#[derive(Debug, Parser)]
#[command(
    name = "mubs",
    version,
    about = "Exact two-qubit MUB catalog over GF(4)"
)]
pub struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,

    /// Field modulus polynomial
    #[arg(long, global = true, default_value = "x^2+x+1")]
    pub poly: String,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the seed entries a12, a22, b22 given the other five
    Solve(SolveArgs),
    /// Build the 5x3 operator table from a full seed assignment
    Table(TableArgs),
    /// Compute the exact joint eigenbasis of every table row
    Bases(TableArgs),
    /// Verify a table document: commutation, partition, unbiasedness
    Verify(VerifyArgs),
    /// Sweep every choice of the five fixed entries and catalog the tables
    Scan(ScanArgs),
    /// Check that the four generating relations carry all fifteen, minimally
    Independence,
}

/// The five fixed entries. Entry names index row and column of the
/// seed pair: a11 is the a-part of row 1, column 1; b12 is the b-part
/// of row 1, column 2.
#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub a11: String,
    #[arg(long)]
    pub b11: String,
    #[arg(long)]
    pub a21: String,
    #[arg(long)]
    pub b21: String,
    #[arg(long)]
    pub b12: String,
}

/// A full seed assignment (eight entries) or a document to read the
/// table from.
#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, conflicts_with = "input", requires_all = ["b11", "a12", "b12", "a21", "b21", "a22", "b22"])]
    pub a11: Option<String>,
    #[arg(long)]
    pub b11: Option<String>,
    #[arg(long)]
    pub a12: Option<String>,
    #[arg(long)]
    pub b12: Option<String>,
    #[arg(long)]
    pub a21: Option<String>,
    #[arg(long)]
    pub b21: Option<String>,
    #[arg(long)]
    pub a22: Option<String>,
    #[arg(long)]
    pub b22: Option<String>,
    /// Read the table from a JSON document instead
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// JSON document to verify
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Write every distinct valid table as NNN.json into this directory
    #[arg(long, conflicts_with = "fixed")]
    pub dump: Option<PathBuf>,
    /// Restrict to one choice, e.g. "a11=u2,b11=u,a21=u,b21=u,b12=u2"
    #[arg(long)]
    pub fixed: Option<String>,
}

struct CliError {
    message: String,
    code: i32,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        CliError::input(e.to_string())
    }
}

/// Runs a parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match execute(cli) {
        Ok((output, code)) => {
            print!("{output}");
            code
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn execute(cli: Cli) -> Result<(String, i32), CliError> {
    let ctx = match FieldCtx::from_poly_str(&cli.poly) {
        Ok(ctx) if ctx == FieldCtx::gf4() => ctx,
        Ok(_) => {
            return Err(CliError::input(format!(
                "only the field x^2+x+1 is supported, got {}",
                cli.poly
            )))
        }
        Err(e) => return Err(CliError::input(e.to_string())),
    };
    match cli.command {
        Command::Solve(args) => {
            let fixed = parse_fixed(ctx, &args)?;
            Ok(render_solve(&fixed, cli.json))
        }
        Command::Table(args) => {
            let (table, seeds) = load_table(ctx, &args)?;
            if cli.json {
                Ok((
                    TableDocument::from_table(&table, seeds.as_ref()).to_json(),
                    0,
                ))
            } else {
                Ok((render_table(&table, seeds.as_ref()), 0))
            }
        }
        Command::Bases(args) => {
            let (table, seeds) = load_table(ctx, &args)?;
            Ok(render_bases(&table, seeds.as_ref(), cli.json))
        }
        Command::Verify(args) => {
            let doc = read_document(&args.input)?;
            let (table, seeds) = doc.to_table()?;
            let report = verify_mub(&table);
            let code = i32::from(!report.valid);
            if cli.json {
                let out = TableDocument::from_table(&table, seeds.as_ref())
                    .with_verdicts(&report)
                    .to_json();
                Ok((out, code))
            } else {
                Ok((render_report(&table, &report), code))
            }
        }
        Command::Scan(args) => {
            if let Some(assignment) = &args.fixed {
                let fixed = FixedFive::parse(assignment)
                    .map_err(|e| CliError::input(format!("--fixed: {e}")))?;
                return Ok(render_solve(&fixed, cli.json));
            }
            render_scan(args.dump.as_deref(), cli.json)
        }
        Command::Independence => Ok(render_independence(cli.json)),
    }
}

fn parse_element(ctx: FieldCtx, flag: &str, value: &str) -> Result<FieldElement, CliError> {
    ctx.parse_element(value)
        .map_err(|_| CliError::input(format!("invalid element literal '{value}' for --{flag}")))
}

fn parse_fixed(ctx: FieldCtx, args: &SolveArgs) -> Result<FixedFive, CliError> {
    Ok(FixedFive::new(
        parse_element(ctx, "a11", &args.a11)?,
        parse_element(ctx, "b11", &args.b11)?,
        parse_element(ctx, "a21", &args.a21)?,
        parse_element(ctx, "b21", &args.b21)?,
        parse_element(ctx, "b12", &args.b12)?,
    )
    .expect("parsed elements share the GF(4) context"))
}

fn read_document(path: &Path) -> Result<TableDocument, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(TableDocument::from_json(&text)?)
}

fn load_table(ctx: FieldCtx, args: &TableArgs) -> Result<(MubTable, Option<SeedParams>), CliError> {
    if let Some(path) = &args.input {
        let doc = read_document(path)?;
        return Ok(doc.to_table()?);
    }
    let flags = [
        ("a11", &args.a11),
        ("b11", &args.b11),
        ("a12", &args.a12),
        ("b12", &args.b12),
        ("a21", &args.a21),
        ("b21", &args.b21),
        ("a22", &args.a22),
        ("b22", &args.b22),
    ];
    let mut parsed = Vec::with_capacity(8);
    for (flag, value) in flags {
        let value = value
            .as_deref()
            .ok_or_else(|| CliError::input(format!("--{flag} is required without --input")))?;
        parsed.push(parse_element(ctx, flag, value)?);
    }
    let seeds = SeedParams::new(
        parsed[0], parsed[1], parsed[2], parsed[3], parsed[4], parsed[5], parsed[6], parsed[7],
    )
    .expect("parsed elements share the GF(4) context");
    Ok((build_table(&seeds), Some(seeds)))
}

fn point_cell(p: Point) -> String {
    format!("{:<7}", p.to_string())
}

fn table_lines(table: &MubTable, out: &mut String) {
    for (r, row) in table.rows().iter().enumerate() {
        let names: Vec<String> = row.iter().map(|p| PauliOp::at_point(*p).name()).collect();
        let _ = writeln!(
            out,
            "row {}: {} {} {} | {}",
            r + 1,
            point_cell(row[0]),
            point_cell(row[1]),
            point_cell(row[2]),
            names.join(" ")
        );
    }
}

fn render_table(table: &MubTable, seeds: Option<&SeedParams>) -> String {
    let mut out = String::new();
    if let Some(s) = seeds {
        let _ = writeln!(out, "seeds: {s}");
    }
    table_lines(table, &mut out);
    let v = table.validity();
    let flags: Vec<&str> = v
        .rows_commute
        .iter()
        .map(|&b| if b { "yes" } else { "NO" })
        .collect();
    let _ = writeln!(out, "rows commute: {}", flags.join(" "));
    let _ = writeln!(
        out,
        "partition: {}",
        if v.partition { "ok" } else { "FAIL" }
    );
    let _ = writeln!(out, "valid: {}", if v.is_valid() { "yes" } else { "no" });
    out
}

// ---------------------------------------------------------------- solve

#[derive(Serialize)]
struct SolutionJson {
    label: String,
    a12: String,
    a22: String,
    b22: String,
    valid: bool,
    table: TableDocument,
}

#[derive(Serialize)]
struct SolveJson {
    fixed: FixedJson,
    solutions: Vec<SolutionJson>,
}

#[derive(Serialize)]
struct FixedJson {
    a11: String,
    b11: String,
    a21: String,
    b21: String,
    b12: String,
}

fn render_solve(fixed: &FixedFive, json: bool) -> (String, i32) {
    let solutions = solve_system(fixed);
    let any_valid = solutions.iter().any(|s| s.validity.is_valid());
    let code = if any_valid { 0 } else { 3 };
    if json {
        let out = SolveJson {
            fixed: FixedJson {
                a11: fixed.a11.to_string(),
                b11: fixed.b11.to_string(),
                a21: fixed.a21.to_string(),
                b21: fixed.b21.to_string(),
                b12: fixed.b12.to_string(),
            },
            solutions: solutions
                .iter()
                .map(|s| SolutionJson {
                    label: s.label.clone(),
                    a12: s.triple.a12.to_string(),
                    a22: s.triple.a22.to_string(),
                    b22: s.triple.b22.to_string(),
                    valid: s.validity.is_valid(),
                    table: TableDocument::from_table(&s.table, Some(&s.seeds)),
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&out).expect("solve output serializes");
        text.push('\n');
        return (text, code);
    }
    let mut out = String::new();
    let _ = writeln!(out, "fixed: {fixed}");
    let _ = writeln!(out, "solutions: {}", solutions.len());
    for s in &solutions {
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "solution {}: {} [{}]",
            s.label,
            s.triple,
            if s.validity.is_valid() {
                "valid"
            } else {
                "invalid"
            }
        );
        render_solution_table(s, &mut out);
    }
    (out, code)
}

fn render_solution_table(s: &Solution, out: &mut String) {
    for (r, row) in s.table.rows().iter().enumerate() {
        let names: Vec<String> = row.iter().map(|p| PauliOp::at_point(*p).name()).collect();
        let commute_note = if s.validity.rows_commute[r] {
            ""
        } else {
            "  <- does not commute"
        };
        let _ = writeln!(
            out,
            "  row {}: {} {} {} | {}{}",
            r + 1,
            point_cell(row[0]),
            point_cell(row[1]),
            point_cell(row[2]),
            names.join(" "),
            commute_note
        );
    }
    if !s.validity.partition {
        let report = s.table.partition_check();
        for (p, rows) in &report.duplicates {
            let rows: Vec<String> = rows.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "  duplicate {} in rows {}", p, rows.join(","));
        }
        for r in &report.zero_rows {
            let _ = writeln!(out, "  origin entry in row {r}");
        }
    }
}

// ---------------------------------------------------------------- bases

fn render_bases(table: &MubTable, seeds: Option<&SeedParams>, json: bool) -> (String, i32) {
    let report = verify_mub(table);
    let all_rows_have_bases = report.rows.iter().all(|r| r.basis.is_some());
    let code = i32::from(!all_rows_have_bases);
    if json {
        let doc = TableDocument::from_table(table, seeds).with_verdicts(&report);
        return (doc.to_json(), code);
    }
    let mut out = String::new();
    if let Some(s) = seeds {
        let _ = writeln!(out, "seeds: {s}");
    }
    for row in &report.rows {
        let class = match row.class {
            Some(c) => c.to_string(),
            None => "no joint basis".to_owned(),
        };
        let _ = writeln!(
            out,
            "row {}: {} | {}",
            row.row,
            row.operators.join(" "),
            class
        );
        match &row.basis {
            Some(basis) => {
                for v in basis {
                    let _ = writeln!(out, "  {v}");
                }
            }
            None => {
                let pairs: Vec<String> = report.rows[row.row - 1]
                    .noncommuting
                    .iter()
                    .map(|(p, q)| format!("{p}&{q}"))
                    .collect();
                let _ = writeln!(out, "  noncommuting: {}", pairs.join(" "));
            }
        }
    }
    (out, code)
}

// ---------------------------------------------------------------- verify

fn render_report(table: &MubTable, report: &MubReport) -> String {
    let mut out = String::new();
    table_lines(table, &mut out);
    for row in &report.rows {
        let mut line = format!(
            "row {}: commute {}",
            row.row,
            if row.commute_predicate { "yes" } else { "NO" }
        );
        if !row.noncommuting.is_empty() {
            let pairs: Vec<String> = row
                .noncommuting
                .iter()
                .map(|(p, q)| format!("{p}&{q}"))
                .collect();
            let _ = write!(line, " ({})", pairs.join(" "));
        }
        let _ = write!(
            line,
            " | orthonormal {} | {}",
            if row.orthonormal { "yes" } else { "NO" },
            match row.class {
                Some(c) => c.to_string(),
                None => "-".to_owned(),
            }
        );
        let _ = writeln!(out, "{line}");
    }
    let _ = writeln!(
        out,
        "commutation agreement: {}",
        if report.commutation_agreement {
            "yes"
        } else {
            "NO"
        }
    );
    let _ = writeln!(
        out,
        "partition: {}",
        if report.partition.ok { "ok" } else { "FAIL" }
    );
    for (p, rows) in &report.partition.duplicates {
        let rows: Vec<String> = rows.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "  duplicate {} in rows {}", p, rows.join(","));
    }
    for r in &report.partition.zero_rows {
        let _ = writeln!(out, "  origin entry in row {r}");
    }
    let quarter_pairs = report.overlaps.iter().filter(|o| o.all_quarter).count();
    let _ = writeln!(
        out,
        "overlaps 1/4: {}/{} row pairs",
        quarter_pairs,
        report.overlaps.len()
    );
    let _ = writeln!(
        out,
        "signature: {} separable, {} entangled, {} anomalous",
        report.signature.separable, report.signature.entangled, report.signature.anomalous
    );
    let _ = writeln!(out, "valid: {}", if report.valid { "yes" } else { "no" });
    out
}

// ---------------------------------------------------------------- scan

#[derive(Serialize)]
struct ScanJson {
    fixed_count: usize,
    total_solutions: usize,
    valid_tables: usize,
    invalid_tables: usize,
    histogram: std::collections::BTreeMap<usize, usize>,
    distinct_tables: usize,
    distinct_valid_tables: usize,
    tables: Vec<TableDocument>,
}

fn render_scan(dump: Option<&Path>, json: bool) -> Result<(String, i32), CliError> {
    let catalog = scan_all();
    let docs: Vec<TableDocument> = catalog
        .valid_canonical
        .iter()
        .map(|t| TableDocument::from_table(t, None).with_verdicts(&verify_mub(t)))
        .collect();
    if let Some(dir) = dump {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::input(format!("cannot create {}: {e}", dir.display())))?;
        for (k, doc) in docs.iter().enumerate() {
            let path = dir.join(format!("{k:03}.json"));
            std::fs::write(&path, doc.to_json())
                .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
        }
    }
    if json {
        let out = ScanJson {
            fixed_count: catalog.fixed_count,
            total_solutions: catalog.total_solutions,
            valid_tables: catalog.valid_tables,
            invalid_tables: catalog.invalid_tables,
            histogram: catalog.histogram,
            distinct_tables: catalog.distinct_tables,
            distinct_valid_tables: catalog.distinct_valid_tables,
            tables: docs,
        };
        let mut text = serde_json::to_string_pretty(&out).expect("scan output serializes");
        text.push('\n');
        return Ok((text, 0));
    }
    let mut out = String::new();
    let _ = writeln!(out, "fixed fives: {}", catalog.fixed_count);
    let _ = writeln!(out, "solutions: {}", catalog.total_solutions);
    let _ = writeln!(out, "valid tables: {}", catalog.valid_tables);
    let _ = writeln!(out, "invalid tables: {}", catalog.invalid_tables);
    let _ = writeln!(out, "distinct tables: {}", catalog.distinct_tables);
    let _ = writeln!(
        out,
        "distinct valid tables: {}",
        catalog.distinct_valid_tables
    );
    let _ = writeln!(out, "solutions per fixed five (count: fives):");
    for (count, fives) in &catalog.histogram {
        let _ = writeln!(out, "  {count}: {fives}");
    }
    if let Some(dir) = dump {
        let _ = writeln!(out, "dumped {} tables to {}", docs.len(), dir.display());
    }
    Ok((out, 0))
}

// ---------------------------------------------------------------- independence

#[derive(Serialize)]
struct WitnessJson {
    dropped: usize,
    seeds: SeedsDoc,
    violated: Vec<usize>,
}

#[derive(Serialize)]
struct IndependenceJson {
    assignments_checked: usize,
    implication_holds: bool,
    minimal: bool,
    witnesses: Vec<WitnessJson>,
}

fn render_independence(json: bool) -> (String, i32) {
    let report = independence_check();
    let minimal = report.witnesses.len() == 4;
    let code = i32::from(!(report.implication_holds && minimal));
    if json {
        let out = IndependenceJson {
            assignments_checked: report.assignments_checked,
            implication_holds: report.implication_holds,
            minimal,
            witnesses: report
                .witnesses
                .iter()
                .map(|w| {
                    let [a11, b11, a12, b12, a21, b21, a22, b22] =
                        w.seeds.as_array().map(|e| e.to_string());
                    WitnessJson {
                        dropped: w.dropped,
                        seeds: SeedsDoc {
                            a11,
                            b11,
                            a12,
                            b12,
                            a21,
                            b21,
                            a22,
                            b22,
                        },
                        violated: w.violated.clone(),
                    }
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&out).expect("independence output serializes");
        text.push('\n');
        return (text, code);
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} assignments; 4 \u{21d2} 15: {}; minimal: {}",
        report.assignments_checked,
        if report.implication_holds {
            "holds"
        } else {
            "FAILS"
        },
        if minimal { "yes" } else { "no" }
    );
    for w in &report.witnesses {
        let violated: Vec<String> = w.violated.iter().map(|k| format!("A{k}")).collect();
        let _ = writeln!(
            out,
            "drop A{}: seeds {} violate {}",
            w.dropped,
            w.seeds,
            violated.join(" ")
        );
    }
    (out, code)
}
