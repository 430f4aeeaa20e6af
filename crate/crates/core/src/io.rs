//! Table and group file formats, report envelopes and text rendering.
//!
//! Tables come in two forms. JSON: `{"name": .., "order": n, "zero": 0,
//! "table": [[..]]}`. Plaintext: the order on the first line, then one row
//! per line, entries separated by single spaces, LF line endings.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::FieldSpec;
use crate::error::{Error, Result};
use crate::modifications::{parse_builtin_group, GroupTable};
use crate::semigroup::{CayleyTable, ElementSet};
use crate::verifier::{CorpusSummary, EquivalenceReport, LemmaReport, LemmaStatus, VerifyConfig};

pub const SCHEMA: u32 = 1;
pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub order: usize,
    pub zero: usize,
    pub table: Vec<Vec<usize>>,
}

impl TableFile {
    pub fn from_table(table: &CayleyTable) -> Self {
        TableFile {
            name: table.name().map(str::to_string),
            order: table.order(),
            zero: 0,
            table: table.rows(),
        }
    }

    pub fn into_table(self) -> Result<CayleyTable> {
        if self.zero != 0 {
            return Err(Error::Parse(format!("zero must be 0, found {}", self.zero)));
        }
        if self.order != self.table.len() {
            return Err(Error::Parse(format!(
                "order {} but {} rows",
                self.order,
                self.table.len()
            )));
        }
        let table = CayleyTable::new(self.table)?;
        Ok(match self.name {
            Some(name) => table.with_name(name),
            None => table,
        })
    }
}

fn parse_plain_rows(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let order: usize = header
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad order line {header:?}")))?;
    let rows = lines
        .map(|line| {
            line.split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad entry {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != order {
        return Err(Error::Parse(format!(
            "order {order} but {} rows",
            rows.len()
        )));
    }
    Ok(rows)
}

pub fn parse_table_plain(text: &str) -> Result<CayleyTable> {
    CayleyTable::new(parse_plain_rows(text)?)
}

pub fn parse_table_json(text: &str) -> Result<CayleyTable> {
    serde_json::from_str::<TableFile>(text)?.into_table()
}

/// JSON when the first non-blank character is `{`, plaintext otherwise.
pub fn parse_table(text: &str) -> Result<CayleyTable> {
    if text.trim_start().starts_with('{') {
        parse_table_json(text)
    } else {
        parse_table_plain(text)
    }
}

pub fn table_to_plain(table: &CayleyTable) -> String {
    let mut out = format!("{}\n", table.order());
    for row in table.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn table_to_json(table: &CayleyTable) -> String {
    let mut out = serde_json::to_string(&TableFile::from_table(table)).expect("serializable");
    out.push('\n');
    out
}

/// Reads a table file; files without a stored name take the file stem.
pub fn read_table(path: &Path) -> Result<CayleyTable> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let table = parse_table(&text)?;
    if table.name().is_some() {
        return Ok(table);
    }
    let stem = path.file_stem().map_or_else(
        || path.display().to_string(),
        |s| s.to_string_lossy().into_owned(),
    );
    Ok(table.with_name(stem))
}

/// Writes JSON for a `.json` extension and plaintext otherwise.
pub fn write_table(path: &Path, table: &CayleyTable) -> Result<()> {
    let text = match path.extension().and_then(|e| e.to_str()) {
        Some("json") => table_to_json(table),
        _ => table_to_plain(table),
    };
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
struct GroupFile {
    name: Option<String>,
    order: usize,
    table: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

/// Group tables from a file carry no zero; elements are named by index
/// unless labels are given.
pub fn parse_group_text(text: &str, default_name: &str) -> Result<GroupTable> {
    if text.trim_start().starts_with('{') {
        let file: GroupFile = serde_json::from_str(text)?;
        if file.order != file.table.len() {
            return Err(Error::Parse(format!(
                "order {} but {} rows",
                file.order,
                file.table.len()
            )));
        }
        let name = file.name.unwrap_or_else(|| default_name.to_string());
        GroupTable::from_table(file.table, name, file.labels)
    } else {
        GroupTable::from_table(parse_plain_rows(text)?, default_name, None)
    }
}

/// `C4`, `D3`, `Q8`, `C2xC2`, or `file:<path>`.
pub fn parse_group_spec(spec: &str) -> Result<GroupTable> {
    match spec.strip_prefix("file:") {
        Some(path) => {
            let path = Path::new(path);
            let text = fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let stem = path
                .file_stem()
                .map_or("group".into(), |s| s.to_string_lossy().into_owned());
            parse_group_text(&text, &stem)
        }
        None => parse_builtin_group(spec),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Caps {
    pub qf_dim_cap: usize,
    pub parastrophic_dim_cap: usize,
    pub ideal_cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunInfo {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: Option<u64>,
    pub caps: Caps,
    pub fields: Vec<FieldSpec>,
}

impl RunInfo {
    pub fn new(config: &VerifyConfig, seed: Option<u64>, budget: Option<usize>) -> Self {
        RunInfo {
            tool: TOOL,
            version: VERSION,
            seed,
            caps: Caps {
                qf_dim_cap: config.qf_dim_cap,
                parastrophic_dim_cap: config.parastrophic_dim_cap,
                ideal_cap: config.ideal_cap,
                budget,
            },
            fields: config.fields.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report<T: Serialize> {
    pub schema: u32,
    pub provenance: RunInfo,
    #[serde(flatten)]
    pub body: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(provenance: RunInfo, body: T) -> Self {
        Report {
            schema: SCHEMA,
            provenance,
            body,
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }
}

pub fn error_json(error: &Error) -> String {
    let value = serde_json::json!({
        "schema": SCHEMA,
        "error": { "kind": error.kind(), "message": error.to_string() },
    });
    format!("{value}\n")
}

fn set_text(set: &ElementSet) -> String {
    let items: Vec<String> = set.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn opt_text<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |v| v.to_string())
}

pub fn render_analysis(
    table: &CayleyTable,
    eq: &EquivalenceReport,
    lemmas: &LemmaReport,
) -> String {
    let s = table.structure();
    let mut out = String::new();
    let _ = writeln!(out, "name: {}", eq.name);
    let _ = writeln!(out, "order: {}", table.order());
    let _ = writeln!(out, "identity: {}", opt_text(s.identity));
    let _ = writeln!(out, "units: {}", set_text(&s.units));
    let _ = writeln!(out, "complement: {}", set_text(&s.complement));
    let _ = writeln!(out, "nilpotency index: {}", opt_text(s.nilpotency_index));
    let _ = writeln!(
        out,
        "socle: {}",
        s.socle.as_ref().map_or("-".into(), set_text)
    );
    let _ = writeln!(out, "in hypothesis: {}", eq.in_hypothesis);
    let _ = write!(out, "(i) semigroup QF: {}", eq.cond_i);
    if let (Some(side), Some(ideal)) = (eq.qf_witness.failing_side, &eq.qf_witness.failing_ideal) {
        let double = eq
            .qf_witness
            .double_annihilator
            .as_ref()
            .map_or("-".into(), set_text);
        let _ = write!(
            out,
            "  [{side} ideal {} has double annihilator {double}]",
            set_text(ideal)
        );
    }
    out.push('\n');
    let _ = writeln!(
        out,
        "(ii) socle is the least nonzero left and right ideal: {}",
        eq.cond_ii
    );
    let _ = writeln!(
        out,
        "    socle is the least nonzero two-sided ideal: {}",
        eq.least_two_sided
    );
    match &eq.cond_iii_skipped {
        Some(reason) => {
            let _ = writeln!(out, "(iii) socle functional: skipped ({reason})");
        }
        None => {
            for (field, v) in &eq.cond_iii {
                let a = eq.socle_witness.get(field).copied().flatten();
                let _ = writeln!(
                    out,
                    "(iii) socle functional over {field}: {v} (witness {})",
                    opt_text(a)
                );
            }
        }
    }
    let _ = writeln!(
        out,
        "(iv) GF(2) algebra QF: {}",
        eq.cond_iv.map_or("skipped".into(), |v| v.to_string())
    );
    if let Some(p) = &eq.parastrophic {
        let _ = writeln!(out, "parastrophic GF(2): {}", p.is_frobenius());
    }
    for (name, status) in lemmas.statuses() {
        let _ = writeln!(out, "{name}: {}", status_text(status));
    }
    for a in &eq.anomalies {
        let _ = writeln!(out, "anomaly: {a}");
    }
    out
}

fn status_text(status: &LemmaStatus) -> String {
    match status {
        LemmaStatus::Holds => "holds".into(),
        LemmaStatus::Fails { detail, elements } => format!("fails ({detail}; {elements:?})"),
        LemmaStatus::NotApplicable { reason } => format!("n/a ({reason})"),
    }
}

pub fn render_summary(summary: &CorpusSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "members            {}", summary.members);
    let _ = writeln!(out, "in hypothesis      {}", summary.in_hypothesis);
    let _ = writeln!(out, "out of hypothesis  {}", summary.out_of_hypothesis);
    let _ = writeln!(out, "quasi-Frobenius    {}", summary.quasi_frobenius);
    let _ = writeln!(out, "not QF             {}", summary.not_quasi_frobenius);
    let _ = writeln!(out, "GF(2) oracle runs  {}", summary.brute_checked);
    let _ = writeln!(out, "subsets checked    {}", summary.subsets_checked);
    let _ = writeln!(
        out,
        "two-sided (ii) off {}",
        summary.two_sided_disagreements
    );
    let _ = writeln!(out, "errors             {}", summary.errors.len());
    let _ = writeln!(
        out,
        "anomalies          {} in hypothesis, {} outside",
        summary.in_hypothesis_anomalies, summary.out_of_hypothesis_anomalies
    );
    if let Some(o) = &summary.outside_normalizer {
        let _ = writeln!(
            out,
            "witness outside normalizer: {} tried, {} associative, {} of those QF",
            o.triples, o.associative, o.associative_qf
        );
    }
    for a in &summary.anomalies {
        let class = if a.in_hypothesis {
            "IN-HYPOTHESIS"
        } else {
            "outside"
        };
        let _ = writeln!(out, "  [{class}] {}: {}", a.member, a.message);
    }
    for e in &summary.errors {
        let _ = writeln!(out, "  [error] {}: {} ({})", e.member, e.message, e.kind);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn plaintext_is_bit_exact() {
        assert_eq!(table_to_plain(&fixtures::fx3()), "3\n0 0 0\n0 1 2\n0 2 0\n");
        assert_eq!(
            parse_table_plain("3\n0 0 0\n0 1 2\n0 2 0\n")
                .unwrap()
                .rows(),
            fixtures::fx3().rows()
        );
    }

    #[test]
    fn json_round_trip_keeps_name() {
        let t = fixtures::fx5();
        let back = parse_table(&table_to_json(&t)).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.name(), t.name());
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(
            parse_table_json(r#"{"order":2,"zero":1,"table":[[0,0],[0,1]]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            parse_table_plain("2\n0 0\n"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(parse_table_plain("x\n"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_table_plain("3\n0 0 0\n0 1 2\n0 0 1\n"),
            Err(Error::NotAssociative { .. })
        ));
    }

    #[test]
    fn group_files() {
        let g = parse_group_text("2\n0 1\n1 0\n", "z2").unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.element("1").unwrap(), 1);
        let g = parse_group_text(
            r#"{"order":2,"table":[[0,1],[1,0]],"labels":["e","t"]}"#,
            "z2",
        )
        .unwrap();
        assert_eq!(g.element("t").unwrap(), 1);
        assert!(matches!(
            parse_group_text("2\n0 1\n0 1\n", "bad"),
            Err(Error::NotAGroup(_))
        ));
    }

    #[test]
    fn error_objects() {
        let text = error_json(&Error::EmptyTable);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema"], 1);
        assert!(v["error"]["kind"].is_string());
    }
}
