//! Text formats for schemes and groups, table rendering and report documents.
//!
//! Scheme files hold a header line `n rank` followed by `n` rows of `n`
//! relation labels in `[0, rank)`. Group files hold a header line `order`
//! followed by the Cayley table. In both, `#` starts a comment.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::chartable::{CharacterTable, INTEGRALITY_TOL};
use crate::classify::ClassificationReport;
use crate::closed::ClosedSubset;
use crate::error::{Result, SchemeError};
use crate::group::GroupSpec;
use crate::scheme::Scheme;

/// Largest denominator tried when printing a value as a fraction.
pub const MAX_DISPLAY_DENOMINATOR: i64 = 12;
/// Significant digits kept for floating values in report documents.
pub const REPORT_DIGITS: usize = 12;

struct Token {
    line: usize,
    column: usize,
    text: String,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> SchemeError {
    SchemeError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Non-empty lines as token lists, with comments removed.
fn tokenize(text: &str) -> Vec<Vec<Token>> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start: Option<(usize, usize)> = None;
        let chars: Vec<(usize, char)> = content.char_indices().collect();
        for (col, &(byte, c)) in chars.iter().enumerate() {
            if c.is_whitespace() {
                if let Some((b, k)) = start.take() {
                    tokens.push(Token {
                        line: i + 1,
                        column: k + 1,
                        text: content[b..byte].to_string(),
                    });
                }
            } else if start.is_none() {
                start = Some((byte, col));
            }
        }
        if let Some((b, k)) = start {
            tokens.push(Token {
                line: i + 1,
                column: k + 1,
                text: content[b..].to_string(),
            });
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

fn number(token: &Token) -> Result<usize> {
    token
        .text
        .parse()
        .map_err(|_| syntax(token.line, token.column, format!("expected a non-negative integer, found {:?}", token.text)))
}

fn end_line(text: &str) -> usize {
    text.lines().count() + 1
}

/// Reads `rows` lines of exactly `width` integers below `bound`.
fn matrix_body(text: &str, lines: &[Vec<Token>], rows: usize, width: usize, bound: usize) -> Result<Vec<Vec<usize>>> {
    if lines.len() < rows {
        return Err(syntax(
            end_line(text),
            1,
            format!("expected {rows} rows, found {}", lines.len()),
        ));
    }
    if let Some(extra) = lines.get(rows) {
        return Err(syntax(extra[0].line, extra[0].column, format!("unexpected row after {rows} rows")));
    }
    let mut matrix = Vec::with_capacity(rows);
    for tokens in lines {
        if tokens.len() != width {
            let t = tokens.get(width).unwrap_or(&tokens[tokens.len() - 1]);
            return Err(syntax(
                t.line,
                t.column,
                format!("expected {width} entries, found {}", tokens.len()),
            ));
        }
        let mut row = Vec::with_capacity(width);
        for t in tokens {
            let v = number(t)?;
            if v >= bound {
                return Err(syntax(t.line, t.column, format!("entry {v} is not below {bound}")));
            }
            row.push(v);
        }
        matrix.push(row);
    }
    Ok(matrix)
}

/// Parses a scheme file. Labels are swapped so that the diagonal relation
/// becomes `0`; the result is then validated.
pub fn parse_scheme(text: &str) -> Result<Scheme> {
    let lines = tokenize(text);
    let Some(header) = lines.first() else {
        return Err(SchemeError::EmptyInput);
    };
    if header.len() != 2 {
        let t = header.get(2).unwrap_or(&header[0]);
        return Err(syntax(t.line, t.column, "header must be `n rank`"));
    }
    let n = number(&header[0])?;
    let rank = number(&header[1])?;
    if n == 0 {
        return Err(SchemeError::EmptyInput);
    }
    let mut matrix = matrix_body(text, &lines[1..], n, n, rank)?;
    let diagonal = matrix[0][0];
    if diagonal != 0 {
        for v in matrix.iter_mut().flatten() {
            if *v == diagonal {
                *v = 0;
            } else if *v == 0 {
                *v = diagonal;
            }
        }
    }
    let scheme = Scheme::validate(&matrix)?;
    if scheme.rank() != rank {
        return Err(syntax(
            header[1].line,
            header[1].column,
            format!("header declares rank {rank} but {} relations occur", scheme.rank()),
        ));
    }
    Ok(scheme)
}

pub fn serialize_scheme(scheme: &Scheme) -> String {
    let mut out = format!("{} {}\n", scheme.n(), scheme.rank());
    for row in scheme.relation_matrix() {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Turns a bare relation matrix, as printed in published classification
/// tables, into a scheme file by prepending the `n rank` header.
pub fn transcribe_bare_matrix(text: &str) -> Result<String> {
    let lines = tokenize(text);
    let n = lines.len();
    if n == 0 {
        return Err(SchemeError::EmptyInput);
    }
    let matrix = matrix_body(text, &lines, n, n, usize::MAX)?;
    let rank = matrix.iter().flatten().max().map_or(0, |m| m + 1);
    let mut body = format!("{n} {rank}\n");
    for tokens in &lines {
        let row: Vec<&str> = tokens.iter().map(|t| t.text.as_str()).collect();
        body.push_str(&row.join(" "));
        body.push('\n');
    }
    parse_scheme(&body).map(|s| serialize_scheme(&s))
}

pub fn parse_group(text: &str) -> Result<GroupSpec> {
    let lines = tokenize(text);
    let Some(header) = lines.first() else {
        return Err(SchemeError::EmptyInput);
    };
    if header.len() != 1 {
        return Err(syntax(header[1].line, header[1].column, "header must be `order`"));
    }
    let order = number(&header[0])?;
    if order == 0 {
        return Err(SchemeError::EmptyInput);
    }
    GroupSpec::new(matrix_body(text, &lines[1..], order, order, order)?)
}

pub fn serialize_group(group: &GroupSpec) -> String {
    let mut out = format!("{}\n", group.order());
    for row in group.table() {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn format_real(x: f64) -> String {
    for q in 1..=MAX_DISPLAY_DENOMINATOR {
        let p = (x * q as f64).round();
        if (x * q as f64 - p).abs() < INTEGRALITY_TOL {
            let p = p as i64;
            return match (p, q) {
                (0, _) => "0".to_string(),
                (_, 1) => p.to_string(),
                _ => format!("{p}/{q}"),
            };
        }
    }
    format!("{x:.6}")
}

/// Renders a value as an integer, a fraction with denominator at most 12,
/// or six decimals; non-real values as `a+bi`.
pub fn format_value(z: Complex64) -> String {
    let re = format_real(z.re);
    if z.im.abs() < INTEGRALITY_TOL {
        return re;
    }
    let magnitude = format_real(z.im.abs());
    let imaginary = if magnitude == "1" { "i".to_string() } else { format!("{magnitude}i") };
    let sign = if z.im < 0.0 { "-" } else { "+" };
    if re == "0" {
        if z.im < 0.0 {
            format!("-{imaginary}")
        } else {
            imaginary
        }
    } else {
        format!("{re}{sign}{imaginary}")
    }
}

/// The table with one column per `σ_s` and a final multiplicity column.
pub fn format_character_table(table: &CharacterTable) -> String {
    let rank = table.row(0).values.len();
    let mut grid: Vec<Vec<String>> = Vec::with_capacity(table.len() + 1);
    let mut header = vec![String::new()];
    header.extend((0..rank).map(|s| format!("s{s}")));
    header.push("m".to_string());
    grid.push(header);
    for (i, row) in table.rows().iter().enumerate() {
        let mut line = vec![format!("chi_{}", i + 1)];
        line.extend(row.values.iter().map(|&v| format_value(v)));
        line.push(row.multiplicity.to_string());
        grid.push(line);
    }
    let widths: Vec<usize> = (0..rank + 2)
        .map(|c| grid.iter().map(|l| l[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for line in &grid {
        let mut text = format!("{:<w$}", line[0], w = widths[0]);
        for c in 1..=rank {
            text.push_str(&format!("  {:>w$}", line[c], w = widths[c]));
        }
        text.push_str(&format!(" | {:>w$}", line[rank + 1], w = widths[rank + 1]));
        out.push_str(text.trim_end());
        out.push('\n');
    }
    out
}

/// `x` rounded to [`REPORT_DIGITS`] significant digits.
pub fn round_significant(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let rounded: f64 = format!("{:.*e}", REPORT_DIGITS - 1, x).parse().expect("formatted float parses");
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeSummary {
    pub n: usize,
    pub rank: usize,
    pub valencies: Vec<usize>,
    pub stars: Vec<usize>,
    pub commutative: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowDocument {
    pub degree: usize,
    pub multiplicity: usize,
    /// `[re, im]` per relation.
    pub values: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub scheme: SchemeSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character_table: Option<Vec<RowDocument>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_subsets: Option<Vec<ClosedSubset>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationReport>,
}

impl ReportDocument {
    pub fn new(scheme: &Scheme) -> ReportDocument {
        ReportDocument {
            scheme: SchemeSummary {
                n: scheme.n(),
                rank: scheme.rank(),
                valencies: scheme.valencies().to_vec(),
                stars: scheme.stars().to_vec(),
                commutative: scheme.is_commutative(),
            },
            character_table: None,
            closed_subsets: None,
            classification: None,
        }
    }

    pub fn with_table(mut self, table: &CharacterTable) -> ReportDocument {
        self.character_table = Some(
            table
                .rows()
                .iter()
                .map(|r| RowDocument {
                    degree: r.degree,
                    multiplicity: r.multiplicity,
                    values: r
                        .values
                        .iter()
                        .map(|v| [round_significant(v.re), round_significant(v.im)])
                        .collect(),
                })
                .collect(),
        );
        self
    }

    pub fn with_subsets(mut self, subsets: Vec<ClosedSubset>) -> ReportDocument {
        self.closed_subsets = Some(subsets);
        self
    }

    pub fn with_classification(mut self, report: ClassificationReport) -> ReportDocument {
        self.classification = Some(report);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report documents serialize")
    }

    pub fn from_json(text: &str) -> Result<ReportDocument> {
        serde_json::from_str(text).map_err(|e| syntax(e.line(), e.column(), e.to_string()))
    }
}
