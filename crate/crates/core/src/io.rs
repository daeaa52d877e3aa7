//! Dataset ingestion, report rendering and the command-line front end.
//!
//! Input files are CSV with a `dmu` name column followed by columns whose
//! headers carry an `in:` or `out:` prefix:
//!
//! ```text
//! dmu,in:x1,in:x2,out:y
//! A,4,1,1
//! ```

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::error::DeaError;
use crate::fixture;
use crate::models::{radial_evaluate, Dataset, Model, Point, Tolerances};
use crate::rts::{assign_group, bcc_projection, DmuGroup, ProjectionKind, RtsAnalysis, RtsClass, RtsResult};

pub const TOLERANCE_ENV: &str = "DEA_TOLERANCE";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InputError {
    #[error("empty dataset")]
    EmptyDataset,
    #[error("malformed CSV at line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("first column header must be `dmu`, found {0:?}")]
    MissingNameColumn(String),
    #[error("column {column} header {header:?} lacks an `in:` or `out:` prefix")]
    MissingPrefix { column: usize, header: String },
    #[error("need at least one `in:` and one `out:` column")]
    MissingRole,
    #[error("row {row}, column {column}: {value:?} is not a number")]
    NonNumeric { row: usize, column: String, value: String },
    #[error("row {row}, column {column}: value {value} is negative or not finite")]
    InvalidValue { row: usize, column: String, value: f64 },
    #[error("row {row}: duplicate DMU name {name:?}")]
    DuplicateName { row: usize, name: String },
    #[error("row {row}: expected {expected} fields, found {found}")]
    RowLength { row: usize, expected: usize, found: usize },
    #[error(transparent)]
    Dea(#[from] DeaError),
}

/// A parsed input file. Rows are numbered from 1 (the first data row).
#[derive(Debug, Clone, PartialEq)]
pub struct InputTable {
    pub names: Vec<String>,
    pub input_labels: Vec<String>,
    pub output_labels: Vec<String>,
    pub inputs: Vec<Vec<f64>>,
    pub outputs: Vec<Vec<f64>>,
}

impl InputTable {
    pub fn into_dataset(self) -> Result<Dataset, InputError> {
        Ok(Dataset::new(self.names, self.inputs, self.outputs)?)
    }

    pub fn from_dataset(dataset: &Dataset, input_labels: Vec<String>, output_labels: Vec<String>) -> Self {
        Self {
            names: dataset.names().to_vec(),
            input_labels,
            output_labels,
            inputs: dataset.units().iter().map(|p| p.inputs.clone()).collect(),
            outputs: dataset.units().iter().map(|p| p.outputs.clone()).collect(),
        }
    }

    /// Writes the table back in the input format. Columns are grouped, inputs first.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header = std::iter::once("dmu".to_string())
            .chain(self.input_labels.iter().map(|l| format!("in:{l}")))
            .chain(self.output_labels.iter().map(|l| format!("out:{l}")));
        w.write_record(header).expect("in-memory write");
        for ((name, x), y) in self.names.iter().zip(&self.inputs).zip(&self.outputs) {
            let row = std::iter::once(name.clone()).chain(x.iter().chain(y).map(|v| v.to_string()));
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    }
}

enum Role {
    Input,
    Output,
}

pub fn parse_csv(text: &str) -> Result<InputTable, InputError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).flexible(true).from_reader(text.as_bytes());
    let csv_err = |e: csv::Error| InputError::Csv {
        line: e.position().map(|p| p.line()).unwrap_or(0),
        message: e.to_string(),
    };
    let header = reader.headers().map_err(csv_err)?.clone();
    let first = header.get(0).unwrap_or("");
    if first != "dmu" {
        return Err(InputError::MissingNameColumn(first.to_string()));
    }
    let mut roles = Vec::new();
    let (mut input_labels, mut output_labels) = (Vec::new(), Vec::new());
    for (column, h) in header.iter().enumerate().skip(1) {
        if let Some(label) = h.strip_prefix("in:") {
            roles.push(Role::Input);
            input_labels.push(label.to_string());
        } else if let Some(label) = h.strip_prefix("out:") {
            roles.push(Role::Output);
            output_labels.push(label.to_string());
        } else {
            return Err(InputError::MissingPrefix { column: column + 1, header: h.to_string() });
        }
    }
    if input_labels.is_empty() || output_labels.is_empty() {
        return Err(InputError::MissingRole);
    }

    let mut table = InputTable {
        names: Vec::new(),
        input_labels,
        output_labels,
        inputs: Vec::new(),
        outputs: Vec::new(),
    };
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(csv_err)?;
        if record.len() != header.len() {
            return Err(InputError::RowLength { row, expected: header.len(), found: record.len() });
        }
        let name = record[0].to_string();
        if table.names.contains(&name) {
            return Err(InputError::DuplicateName { row, name });
        }
        let (mut x, mut y) = (Vec::new(), Vec::new());
        for ((cell, role), column) in record.iter().skip(1).zip(&roles).zip(header.iter().skip(1)) {
            let value: f64 = cell.parse().map_err(|_| InputError::NonNumeric {
                row,
                column: column.to_string(),
                value: cell.to_string(),
            })?;
            if !value.is_finite() || value < 0.0 {
                return Err(InputError::InvalidValue { row, column: column.to_string(), value });
            }
            match role {
                Role::Input => x.push(value),
                Role::Output => y.push(value),
            }
        }
        table.names.push(name);
        table.inputs.push(x);
        table.outputs.push(y);
    }
    if table.names.is_empty() {
        return Err(InputError::EmptyDataset);
    }
    Ok(table)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub tolerances: Tolerances,
    pub format: Format,
    pub with_mpss: bool,
    pub dmu: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { tolerances: Tolerances::default(), format: Format::Table, with_mpss: false, dmu: None }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        let t = &self.tolerances;
        let all = [("feasibility", t.lp.feasibility), ("classification", t.classification), ("support", t.support)];
        match all.iter().find(|(_, v)| !(v.is_finite() && *v > 0.0)) {
            Some((name, v)) => Err(format!("{name} tolerance must be positive, got {v}")),
            None => Ok(()),
        }
    }
}

fn fmt4(v: f64) -> String {
    format!("{v:.4}")
}

fn fmt_point4(p: &Point) -> String {
    let x: Vec<_> = p.inputs.iter().map(|v| fmt4(*v)).collect();
    let y: Vec<_> = p.outputs.iter().map(|v| fmt4(*v)).collect();
    format!("({}; {})", x.join(", "), y.join(", "))
}

/// `x1;x2|y1`, full precision.
fn encode_point(p: &Point) -> String {
    let join = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";");
    format!("{}|{}", join(&p.inputs), join(&p.outputs))
}

fn decode_point(s: &str) -> Option<Point> {
    let (x, y) = s.split_once('|')?;
    let parse = |t: &str| -> Option<Vec<f64>> {
        if t.is_empty() {
            return Some(Vec::new());
        }
        t.split(';').map(|v| v.parse().ok()).collect()
    };
    Some(Point::new(parse(x)?, parse(y)?))
}

fn point_json(p: &Point) -> Value {
    json!({ "inputs": p.inputs, "outputs": p.outputs })
}

/// Flat, format-neutral view of an [`RtsResult`] used by the json and csv renderers.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRecord {
    pub dmu: String,
    pub group: DmuGroup,
    pub theta_bcc: f64,
    pub theta_ccr: Option<f64>,
    pub lambda_sum: Option<f64>,
    pub rts: Option<RtsClass>,
    pub grs: Vec<(String, f64)>,
    pub projection: Option<(ProjectionKind, Point)>,
    pub nearest_mpss: Option<Point>,
    pub diagnostics: Vec<String>,
}

impl From<&RtsResult> for ReportRecord {
    fn from(r: &RtsResult) -> Self {
        Self {
            dmu: r.dmu.clone(),
            group: r.group,
            theta_bcc: r.theta_bcc,
            theta_ccr: r.theta_ccr,
            lambda_sum: r.lambda_sum,
            rts: r.rts,
            grs: r.grs.clone(),
            projection: r.evaluation_point.clone().map(|p| (r.projection, p)),
            nearest_mpss: r.nearest_mpss.clone(),
            diagnostics: r.diagnostics.clone(),
        }
    }
}

const REPORT_COLUMNS: [&str; 10] = [
    "dmu",
    "group",
    "theta_bcc",
    "theta_ccr",
    "lambda_sum",
    "rts",
    "grs",
    "projection",
    "nearest_mpss",
    "diagnostics",
];

impl ReportRecord {
    pub fn to_json(&self) -> Value {
        json!({
            "dmu": self.dmu,
            "group": self.group.name(),
            "theta_bcc": self.theta_bcc,
            "theta_ccr": self.theta_ccr,
            "lambda_sum": self.lambda_sum,
            "rts": self.rts.map(RtsClass::name),
            "grs": self.grs.iter().map(|(n, w)| json!({ n.as_str(): w })).collect::<Vec<_>>(),
            "projection": self.projection.as_ref().map(|(kind, p)| {
                let mut v = point_json(p);
                v["kind"] = json!(kind.name());
                v
            }),
            "nearest_mpss": self.nearest_mpss.as_ref().map(point_json),
            "diagnostics": self.diagnostics,
        })
    }

    fn to_csv_fields(&self) -> Vec<String> {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        vec![
            self.dmu.clone(),
            self.group.name().to_string(),
            self.theta_bcc.to_string(),
            opt(self.theta_ccr),
            opt(self.lambda_sum),
            self.rts.map(|r| r.name().to_string()).unwrap_or_default(),
            self.grs.iter().map(|(n, w)| format!("{n}:{w}")).collect::<Vec<_>>().join(";"),
            self.projection.as_ref().map(|(k, p)| format!("{}:{}", k.name(), encode_point(p))).unwrap_or_default(),
            self.nearest_mpss.as_ref().map(encode_point).unwrap_or_default(),
            self.diagnostics.join(" || "),
        ]
    }

    fn from_csv_fields(f: &csv::StringRecord) -> Option<Self> {
        let opt = |s: &str| -> Option<Option<f64>> {
            if s.is_empty() {
                Some(None)
            } else {
                s.parse().ok().map(Some)
            }
        };
        let grs = if f[6].is_empty() {
            Vec::new()
        } else {
            f[6].split(';')
                .map(|pair| {
                    let (n, w) = pair.rsplit_once(':')?;
                    Some((n.to_string(), w.parse().ok()?))
                })
                .collect::<Option<Vec<_>>>()?
        };
        let projection = if f[7].is_empty() {
            None
        } else {
            let (kind, p) = f[7].split_once(':')?;
            Some((ProjectionKind::from_name(kind)?, decode_point(p)?))
        };
        Some(Self {
            dmu: f[0].to_string(),
            group: DmuGroup::from_name(&f[1])?,
            theta_bcc: f[2].parse().ok()?,
            theta_ccr: opt(&f[3])?,
            lambda_sum: opt(&f[4])?,
            rts: if f[5].is_empty() { None } else { Some(RtsClass::from_name(&f[5])?) },
            grs,
            projection,
            nearest_mpss: if f[8].is_empty() { None } else { Some(decode_point(&f[8])?) },
            diagnostics: if f[9].is_empty() { Vec::new() } else { f[9].split(" || ").map(String::from).collect() },
        })
    }
}

/// Parses the csv produced by [`render_report`].
pub fn parse_report_csv(text: &str) -> Result<Vec<ReportRecord>, InputError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| InputError::Csv { line: i as u64 + 2, message: e.to_string() })?;
        if record.len() != REPORT_COLUMNS.len() {
            return Err(InputError::RowLength { row: i + 1, expected: REPORT_COLUMNS.len(), found: record.len() });
        }
        let parsed = ReportRecord::from_csv_fields(&record).ok_or_else(|| InputError::Csv {
            line: i as u64 + 2,
            message: "unrecognized report field".into(),
        })?;
        out.push(parsed);
    }
    Ok(out)
}

fn write_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

/// Aligns whitespace-separated columns.
fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().enumerate().map(|(c, s)| format!("{:<w$}", s, w = widths[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn render_report(results: &[RtsResult], format: Format) -> String {
    let records: Vec<ReportRecord> = results.iter().map(ReportRecord::from).collect();
    match format {
        Format::Json => {
            let doc: Vec<Value> = records.iter().map(ReportRecord::to_json).collect();
            serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n"
        }
        Format::Csv => write_csv(&REPORT_COLUMNS, records.iter().map(ReportRecord::to_csv_fields)),
        Format::Table => {
            let with_mpss = results.iter().any(|r| r.nearest_mpss.is_some());
            let mut header: Vec<String> =
                ["DMU", "group", "theta_bcc", "slack_sum", "theta_ccr", "lambda_sum", "RTS", "GRS", "projection"]
                    .map(String::from)
                    .to_vec();
            if with_mpss {
                header.push("nearest_mpss".into());
            }
            let mut rows = vec![header];
            let dash = || "--".to_string();
            for r in results {
                let grs = if r.grs.is_empty() {
                    dash()
                } else {
                    r.grs.iter().map(|(n, w)| format!("{n}:{}", fmt4(*w))).collect::<Vec<_>>().join(",")
                };
                let projection = match (&r.evaluation_point, r.projection) {
                    (_, ProjectionKind::Observed) => dash(),
                    (Some(p), _) => fmt_point4(p),
                    (None, _) => dash(),
                };
                let mut row = vec![
                    r.dmu.clone(),
                    match r.group {
                        DmuGroup::BccEfficient => dash(),
                        g => g.name().to_string(),
                    },
                    fmt4(r.theta_bcc),
                    fmt4(r.slack_sum),
                    r.theta_ccr.map(fmt4).unwrap_or_else(dash),
                    r.lambda_sum.map(fmt4).unwrap_or_else(dash),
                    r.rts.map(|c| c.code().to_string()).unwrap_or_else(|| "?".into()),
                    grs,
                    projection,
                ];
                if with_mpss {
                    row.push(r.nearest_mpss.as_ref().map(fmt_point4).unwrap_or_else(dash));
                }
                rows.push(row);
            }
            let mut out = align(&rows);
            for r in results {
                for d in &r.diagnostics {
                    let _ = writeln!(out, "{}: {}", r.dmu, d);
                }
            }
            out
        }
    }
}

/// One row of the `efficiency` command.
#[derive(Debug, Clone, PartialEq)]
pub struct EfficiencyRow {
    pub dmu: String,
    pub theta: f64,
    pub slack_sum: f64,
    pub lambda_sum: f64,
    pub efficient: bool,
    pub projection: Point,
    /// set for the BCC model only
    pub group: Option<DmuGroup>,
}

pub fn efficiency_rows(dataset: &Dataset, model: Model, tol: &Tolerances) -> Result<Vec<EfficiencyRow>, DeaError> {
    dataset
        .units()
        .iter()
        .enumerate()
        .map(|(j, unit)| {
            let o = radial_evaluate(dataset, unit, model, tol)?;
            Ok(EfficiencyRow {
                dmu: dataset.name(j).to_string(),
                theta: o.theta,
                slack_sum: o.slack_sum,
                lambda_sum: o.lambda_sum,
                efficient: o.is_efficient,
                projection: bcc_projection(unit, &o, tol)?,
                group: (model == Model::Bcc).then(|| assign_group(&o, tol)),
            })
        })
        .collect()
}

pub fn render_efficiency(rows: &[EfficiencyRow], input_labels: &[String], output_labels: &[String], format: Format) -> String {
    let proj_labels: Vec<String> =
        input_labels.iter().chain(output_labels).map(|l| format!("proj:{l}")).collect();
    match format {
        Format::Json => {
            let doc: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "dmu": r.dmu,
                        "theta": r.theta,
                        "slack_sum": r.slack_sum,
                        "lambda_sum": r.lambda_sum,
                        "efficient": r.efficient,
                        "projection": point_json(&r.projection),
                        "group": r.group.map(DmuGroup::name),
                    })
                })
                .collect();
            serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n"
        }
        Format::Csv => {
            let mut header = vec!["dmu", "theta", "slack_sum", "lambda_sum", "efficient"];
            header.extend(proj_labels.iter().map(String::as_str));
            header.push("group");
            write_csv(
                &header,
                rows.iter().map(|r| {
                    let mut f = vec![
                        r.dmu.clone(),
                        r.theta.to_string(),
                        r.slack_sum.to_string(),
                        r.lambda_sum.to_string(),
                        r.efficient.to_string(),
                    ];
                    f.extend(r.projection.inputs.iter().chain(&r.projection.outputs).map(|v| v.to_string()));
                    f.push(r.group.map(|g| g.name().to_string()).unwrap_or_default());
                    f
                }),
            )
        }
        Format::Table => {
            let mut header: Vec<String> = vec!["DMU".into(), "theta".into(), "slack_sum".into()];
            header.extend(input_labels.iter().chain(output_labels).cloned());
            header.push("group".into());
            let mut table = vec![header];
            for r in rows {
                let mut row = vec![r.dmu.clone(), fmt4(r.theta), fmt4(r.slack_sum)];
                if r.efficient {
                    row.extend(std::iter::repeat_n("--".to_string(), proj_labels.len()));
                } else {
                    row.extend(r.projection.inputs.iter().chain(&r.projection.outputs).map(|v| fmt4(*v)));
                }
                row.push(match r.group {
                    None | Some(DmuGroup::BccEfficient) => "--".into(),
                    Some(g) => g.name().to_string(),
                });
                table.push(row);
            }
            align(&table)
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "dea-rts", about = "Returns-to-scale measurement with the CCR envelopment model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// LP feasibility tolerance
    #[arg(long)]
    tol_feasibility: Option<f64>,
    /// Classification tolerance (overrides DEA_TOLERANCE)
    #[arg(long)]
    tol_classification: Option<f64>,
    /// Support tolerance for reference-set weights
    #[arg(long)]
    tol_support: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Ccr,
    Bcc,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Radial efficiency scores, slack sums and projections
    Efficiency {
        #[arg(long, value_enum, default_value_t = ModelArg::Bcc)]
        model: ModelArg,
        #[arg(long)]
        input: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Group, global reference set and returns-to-scale class of every unit
    Rts {
        #[arg(long)]
        input: String,
        #[arg(long)]
        with_mpss: bool,
        /// Only report this unit
        #[arg(long)]
        dmu: Option<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Global reference set of one unit with witness weights
    Grs {
        #[arg(long)]
        input: String,
        #[arg(long)]
        dmu: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Nearest most productive scale size of one unit
    Mpss {
        #[arg(long)]
        input: String,
        #[arg(long)]
        dmu: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run every report on the built-in six-unit example
    Demo {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        Self { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self { code, stdout: String::new(), stderr }
    }
}

/// Runs the CLI with `args` (including the program name). `env_tolerance`
/// is the value of `DEA_TOLERANCE`, if set.
///
/// Exit codes: 0 success, 1 usage or data error, 2 solver or classification
/// diagnostics.
pub fn run_command<I, T>(args: I, env_tolerance: Option<&str>) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CommandOutput::ok(text),
                _ => CommandOutput::fail(1, text),
            };
        }
    };
    match dispatch(cli, env_tolerance) {
        Ok(out) => out,
        Err(Failure::Data(msg)) => CommandOutput::fail(1, format!("error: {msg}\n")),
        Err(Failure::Internal(msg)) => CommandOutput::fail(2, format!("error: {msg}\n")),
    }
}

enum Failure {
    Data(String),
    Internal(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<DeaError> for Failure {
    fn from(e: DeaError) -> Self {
        match e {
            DeaError::InvalidDataset(_) | DeaError::UnknownDmu(_) => Failure::Data(e.to_string()),
            _ => Failure::Internal(e.to_string()),
        }
    }
}

fn config(common: &CommonArgs, env_tolerance: Option<&str>) -> Result<RunConfig, Failure> {
    let mut cfg = RunConfig { format: common.format, ..RunConfig::default() };
    if let Some(raw) = env_tolerance {
        cfg.tolerances.classification = raw
            .trim()
            .parse()
            .map_err(|_| Failure::Data(format!("{TOLERANCE_ENV}={raw:?} is not a number")))?;
    }
    if let Some(v) = common.tol_classification {
        cfg.tolerances.classification = v;
    }
    if let Some(v) = common.tol_feasibility {
        cfg.tolerances.lp.feasibility = v;
    }
    if let Some(v) = common.tol_support {
        cfg.tolerances.support = v;
    }
    cfg.validate().map_err(Failure::Data)?;
    Ok(cfg)
}

fn load(path: &str) -> Result<(InputTable, Dataset), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Data(format!("cannot read {path}: {e}")))?;
    let table = parse_csv(&text)?;
    let dataset = table.clone().into_dataset()?;
    Ok((table, dataset))
}

fn lookup(dataset: &Dataset, name: &str) -> Result<usize, Failure> {
    dataset.index_of(name).ok_or_else(|| DeaError::UnknownDmu(name.to_string()).into())
}

fn has_errors(results: &[RtsResult]) -> bool {
    results.iter().any(|r| r.rts.is_none() || r.diagnostics.iter().any(|d| d.starts_with("error")))
}

fn report(results: Vec<RtsResult>, format: Format) -> CommandOutput {
    let code = if has_errors(&results) { 2 } else { 0 };
    CommandOutput { code, stdout: render_report(&results, format), stderr: String::new() }
}

fn dispatch(cli: Cli, env_tolerance: Option<&str>) -> Result<CommandOutput, Failure> {
    match cli.command {
        Command::Efficiency { model, input, common } => {
            let cfg = config(&common, env_tolerance)?;
            let (table, dataset) = load(&input)?;
            let model = match model {
                ModelArg::Ccr => Model::Ccr,
                ModelArg::Bcc => Model::Bcc,
            };
            let rows = efficiency_rows(&dataset, model, &cfg.tolerances)?;
            Ok(CommandOutput::ok(render_efficiency(&rows, &table.input_labels, &table.output_labels, cfg.format)))
        }
        Command::Rts { input, with_mpss, dmu, common } => {
            let mut cfg = config(&common, env_tolerance)?;
            cfg.with_mpss = with_mpss;
            cfg.dmu = dmu;
            let (_, dataset) = load(&input)?;
            let analysis = RtsAnalysis::new(&dataset, cfg.tolerances)?;
            let results = match &cfg.dmu {
                Some(name) => vec![analysis.classify_dmu(lookup(&dataset, name)?, cfg.with_mpss)?],
                None => analysis.classify_all(cfg.with_mpss),
            };
            Ok(report(results, cfg.format))
        }
        Command::Grs { input, dmu, common } => {
            let cfg = config(&common, env_tolerance)?;
            let (_, dataset) = load(&input)?;
            let o = lookup(&dataset, &dmu)?;
            let analysis = RtsAnalysis::new(&dataset, cfg.tolerances)?;
            let me = analysis.maximal_element(o)?;
            let weights: Vec<(String, f64)> =
                me.weights().into_iter().map(|(j, w)| (dataset.name(j).to_string(), w)).collect();
            Ok(CommandOutput::ok(render_grs(&dmu, &weights, cfg.format)))
        }
        Command::Mpss { input, dmu, common } => {
            let cfg = config(&common, env_tolerance)?;
            let (_, dataset) = load(&input)?;
            let o = lookup(&dataset, &dmu)?;
            let result = RtsAnalysis::new(&dataset, cfg.tolerances)?.classify_dmu(o, true)?;
            let stdout = match cfg.format {
                Format::Table => {
                    let mpss = result.nearest_mpss.as_ref().expect("stage 3 ran");
                    let rts = result.rts.expect("stage 2 ran");
                    format!("{dmu}: RTS {rts}, nearest MPSS {}\n", fmt_point4(mpss))
                }
                f => render_report(&[result], f),
            };
            Ok(CommandOutput::ok(stdout))
        }
        Command::Demo { common } => {
            let cfg = config(&common, env_tolerance)?;
            let table = parse_csv(fixture::SIX_UNITS_CSV)?;
            let dataset = table.clone().into_dataset()?;
            let results = RtsAnalysis::new(&dataset, cfg.tolerances)?.classify_all(true);
            if cfg.format != Format::Table {
                return Ok(report(results, cfg.format));
            }
            let bcc = efficiency_rows(&dataset, Model::Bcc, &cfg.tolerances)?;
            let mut out = String::new();
            out.push_str("Input data\n");
            let mut rows = vec![std::iter::once("DMU".to_string())
                .chain(table.input_labels.iter().chain(&table.output_labels).cloned())
                .collect::<Vec<_>>()];
            for (j, u) in dataset.units().iter().enumerate() {
                rows.push(
                    std::iter::once(dataset.name(j).to_string())
                        .chain(u.inputs.iter().chain(&u.outputs).map(|v| v.to_string()))
                        .collect(),
                );
            }
            out.push_str(&align(&rows));
            out.push_str("\nBCC model\n");
            out.push_str(&render_efficiency(&bcc, &table.input_labels, &table.output_labels, Format::Table));
            out.push_str("\nReturns to scale\n");
            out.push_str(&render_report(&results, Format::Table));
            let code = if has_errors(&results) { 2 } else { 0 };
            Ok(CommandOutput { code, stdout: out, stderr: String::new() })
        }
    }
}

pub fn render_grs(dmu: &str, weights: &[(String, f64)], format: Format) -> String {
    match format {
        Format::Table => {
            let names: Vec<&str> = weights.iter().map(|(n, _)| n.as_str()).collect();
            let mut out = format!("{dmu}: {{{}}}\n", names.join(", "));
            for (n, w) in weights {
                let _ = writeln!(out, "  {n}  {}", fmt4(*w));
            }
            out
        }
        Format::Json => {
            let grs: Vec<Value> = weights.iter().map(|(n, w)| json!({ n.as_str(): w })).collect();
            serde_json::to_string_pretty(&json!({ "dmu": dmu, "grs": grs })).expect("json values serialize") + "\n"
        }
        Format::Csv => write_csv(
            &["dmu", "grs"],
            [vec![dmu.to_string(), weights.iter().map(|(n, w)| format!("{n}:{w}")).collect::<Vec<_>>().join(";")]],
        ),
    }
}
