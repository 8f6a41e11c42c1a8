//! Text formats: the line-oriented `.psoset` structure files, operation
//! tables as csv/markdown grids, and DOT export of the relation.
//!
//! A `.psoset` file is diffable and hand-editable:
//!
//! ```text
//! # comment
//! elements: 0 m 1
//! bottom: 0
//! top: 1
//! rel: 0 < m, m < 1, 0 < 1
//! ```
//!
//! `bottom:` and `top:` are declarations that get validated, not edges;
//! every strict pair must appear on a `rel:` line.

use std::fmt;

use thiserror::Error;

use crate::optable::{OpTable, OpTableError};
use crate::psoset::{Elem, Psoset, PsosetError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    Semantic { line: usize, source: PsosetError },
    #[error("{0}")]
    Structure(String),
    #[error("declared bottom `{0}` is not below all elements")]
    BadBottom(String),
    #[error("declared top `{0}` is not above all elements")]
    BadTop(String),
    #[error("table error: {0}")]
    Table(#[from] OpTableError),
}

/// Output grid format for operation tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

impl std::str::FromStr for TableFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "markdown" => Ok(TableFormat::Markdown),
            other => Err(format!("unknown table format `{other}`, expected csv or markdown")),
        }
    }
}

impl fmt::Display for TableFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableFormat::Csv => "csv",
            TableFormat::Markdown => "markdown",
        })
    }
}

/// A parsed structure file: the psoset plus any declared bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedPsoset {
    pub psoset: Psoset,
    pub bottom: Option<Elem>,
    pub top: Option<Elem>,
}

fn column_of(line: &str, token: &str) -> usize {
    line.find(token).map(|i| i + 1).unwrap_or(1)
}

/// Parses the `.psoset` format.
pub fn parse_psoset(text: &str) -> Result<ParsedPsoset, ParseError> {
    let mut labels: Option<(Vec<String>, usize)> = None;
    let mut bottom: Option<(String, usize)> = None;
    let mut top: Option<(String, usize)> = None;
    let mut pairs: Vec<(String, String, usize, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim_end();
        if line.trim().is_empty() {
            continue;
        }
        let Some((key, rest)) = line.split_once(':') else {
            return Err(ParseError::Syntax {
                line: lineno,
                column: 1,
                message: format!("expected `key: ...`, got `{}`", line.trim()),
            });
        };
        match key.trim() {
            "elements" => {
                if labels.is_some() {
                    return Err(ParseError::Syntax {
                        line: lineno,
                        column: 1,
                        message: "duplicate `elements:` line".into(),
                    });
                }
                let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                if list.is_empty() {
                    return Err(ParseError::Syntax {
                        line: lineno,
                        column: column_of(raw, ":") + 1,
                        message: "`elements:` needs at least one label".into(),
                    });
                }
                for l in &list {
                    if l.contains(['<', ',', ':']) {
                        return Err(ParseError::Syntax {
                            line: lineno,
                            column: column_of(raw, l),
                            message: format!("label `{l}` contains a reserved character"),
                        });
                    }
                }
                labels = Some((list, lineno));
            }
            "bottom" => bottom = Some((rest.trim().to_string(), lineno)),
            "top" => top = Some((rest.trim().to_string(), lineno)),
            "rel" => {
                for piece in rest.split(',') {
                    if piece.trim().is_empty() {
                        continue;
                    }
                    let Some((x, y)) = piece.split_once('<') else {
                        return Err(ParseError::Syntax {
                            line: lineno,
                            column: column_of(raw, piece.trim()),
                            message: format!("expected `x < y`, got `{}`", piece.trim()),
                        });
                    };
                    let (x, y) = (x.trim(), y.trim());
                    if x.is_empty() || y.is_empty() {
                        return Err(ParseError::Syntax {
                            line: lineno,
                            column: column_of(raw, "<"),
                            message: "relation pair is missing a side".into(),
                        });
                    }
                    let column = column_of(raw, x);
                    pairs.push((x.to_string(), y.to_string(), lineno, column));
                }
            }
            other => {
                return Err(ParseError::Syntax {
                    line: lineno,
                    column: 1,
                    message: format!("unknown directive `{other}:`"),
                });
            }
        }
    }

    let Some((labels, _)) = labels else {
        return Err(ParseError::Structure("missing `elements:` line".into()));
    };
    for (x, y, line, column) in &pairs {
        for name in [x, y] {
            if !labels.contains(name) {
                return Err(ParseError::Syntax {
                    line: *line,
                    column: *column,
                    message: format!("unknown element `{name}`"),
                });
            }
        }
    }
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let pair_refs: Vec<(&str, &str)> = pairs.iter().map(|(x, y, _, _)| (x.as_str(), y.as_str())).collect();
    let psoset = Psoset::build(&refs, &pair_refs).map_err(|source| {
        let line = match &source {
            PsosetError::Antisymmetry(x, y) => pairs
                .iter()
                .find(|(a, b, _, _)| (a == x && b == y) || (a == y && b == x))
                .map(|&(_, _, l, _)| l)
                .unwrap_or(1),
            _ => 1,
        };
        ParseError::Semantic { line, source }
    })?;

    let resolve = |decl: &Option<(String, usize)>| -> Result<Option<Elem>, ParseError> {
        match decl {
            None => Ok(None),
            Some((name, line)) => psoset
                .index_of(name)
                .map(Some)
                .ok_or_else(|| ParseError::Syntax {
                    line: *line,
                    column: 1,
                    message: format!("unknown element `{name}`"),
                }),
        }
    };
    let bottom = resolve(&bottom)?;
    let top = resolve(&top)?;
    if let Some(b) = bottom {
        if !(0..psoset.len()).all(|x| psoset.leq(b, x)) {
            return Err(ParseError::BadBottom(psoset.label(b).to_string()));
        }
    }
    if let Some(t) = top {
        if !(0..psoset.len()).all(|x| psoset.leq(x, t)) {
            return Err(ParseError::BadTop(psoset.label(t).to_string()));
        }
    }
    Ok(ParsedPsoset {
        psoset,
        bottom,
        top,
    })
}

/// Serializes back to the `.psoset` format; `parse_psoset` of the result
/// reproduces the input structure exactly.
pub fn serialize_psoset(p: &Psoset, bottom: Option<Elem>, top: Option<Elem>) -> String {
    let mut out = String::new();
    out.push_str("elements:");
    for l in p.labels() {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    if let Some(b) = bottom {
        out.push_str(&format!("bottom: {}\n", p.label(b)));
    }
    if let Some(t) = top {
        out.push_str(&format!("top: {}\n", p.label(t)));
    }
    for chunk in p.strict_pairs().chunks(8) {
        let rendered: Vec<String> = chunk
            .iter()
            .map(|&(x, y)| format!("{} < {}", p.label(x), p.label(y)))
            .collect();
        out.push_str(&format!("rel: {}\n", rendered.join(", ")));
    }
    out
}

/// DOT digraph of the relation: a solid directed edge for every strict
/// pair, a dashed undirected edge for every incomparable pair connected
/// by a chain in either direction. No transitive reduction is applied:
/// with a non-transitive relation, dropping a pair would lose it.
pub fn export_dot(p: &Psoset) -> String {
    let mut out = String::from("digraph psoset {\n  rankdir=BT;\n");
    for l in p.labels() {
        out.push_str(&format!("  \"{l}\";\n"));
    }
    for (x, y) in p.strict_pairs() {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", p.label(x), p.label(y)));
    }
    for x in 0..p.len() {
        for y in (x + 1)..p.len() {
            if p.incomparable(x, y) && (p.reachable(x, y) || p.reachable(y, x)) {
                out.push_str(&format!(
                    "  \"{}\" -> \"{}\" [style=dashed, dir=none];\n",
                    p.label(x),
                    p.label(y)
                ));
            }
        }
    }
    out.push_str("}\n");
    out
}

/// Renders an operation table as a grid with a label header row and
/// column. The corner cell is empty.
pub fn export_table(p: &Psoset, v: &OpTable, format: TableFormat) -> String {
    let headers: Vec<&str> = v.carrier().iter().map(|&e| p.label(e)).collect();
    match format {
        TableFormat::Csv => {
            let mut out = String::new();
            out.push(',');
            out.push_str(&headers.join(","));
            out.push('\n');
            for &x in v.carrier() {
                out.push_str(p.label(x));
                for &y in v.carrier() {
                    out.push(',');
                    out.push_str(p.label(v.value(x, y)));
                }
                out.push('\n');
            }
            out
        }
        TableFormat::Markdown => {
            let mut out = String::new();
            out.push_str("|   |");
            for h in &headers {
                out.push_str(&format!(" {h} |"));
            }
            out.push('\n');
            out.push_str("|---|");
            for _ in &headers {
                out.push_str("---|");
            }
            out.push('\n');
            for &x in v.carrier() {
                out.push_str(&format!("| {} |", p.label(x)));
                for &y in v.carrier() {
                    out.push_str(&format!(" {} |", p.label(v.value(x, y))));
                }
                out.push('\n');
            }
            out
        }
    }
}

/// Parses a csv grid (the `export_table` csv shape) back into a table
/// over the given psoset.
pub fn parse_table(p: &Psoset, text: &str) -> Result<OpTable, ParseError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let Some((hidx, header)) = lines.next() else {
        return Err(ParseError::Structure("empty table".into()));
    };
    let mut cells = header.split(',');
    let corner = cells.next().unwrap_or("");
    if !corner.trim().is_empty() {
        return Err(ParseError::Syntax {
            line: hidx + 1,
            column: 1,
            message: "the corner cell of the header must be empty".into(),
        });
    }
    let resolve = |name: &str, line: usize, raw: &str| -> Result<Elem, ParseError> {
        p.index_of(name.trim()).ok_or_else(|| ParseError::Syntax {
            line,
            column: column_of(raw, name.trim()),
            message: format!("unknown element `{}`", name.trim()),
        })
    };
    let mut carrier = Vec::new();
    for name in cells {
        carrier.push(resolve(name, hidx + 1, header)?);
    }
    let positions: Vec<usize> = sorted_positions(&carrier);
    let k = carrier.len();
    let mut grid = vec![0; k * k];
    let mut row_count = 0;
    for (lidx, line) in lines {
        let mut cells = line.split(',');
        let row_label = cells.next().unwrap_or("");
        let row_elem = resolve(row_label, lidx + 1, line)?;
        if row_count >= k || carrier[row_count] != row_elem {
            return Err(ParseError::Syntax {
                line: lidx + 1,
                column: 1,
                message: format!(
                    "row label `{}` does not match the header order",
                    row_label.trim()
                ),
            });
        }
        let mut col = 0;
        for cell in cells {
            if col >= k {
                return Err(ParseError::Syntax {
                    line: lidx + 1,
                    column: column_of(line, cell.trim()),
                    message: "too many cells in row".into(),
                });
            }
            grid[positions[row_count] * k + positions[col]] = resolve(cell, lidx + 1, line)?;
            col += 1;
        }
        if col != k {
            return Err(ParseError::Syntax {
                line: lidx + 1,
                column: line.len(),
                message: format!("row has {col} cells, expected {k}"),
            });
        }
        row_count += 1;
    }
    if row_count != k {
        return Err(ParseError::Structure(format!(
            "table has {row_count} rows, expected {k}"
        )));
    }
    let mut sorted = carrier.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != carrier.len() {
        return Err(ParseError::Structure("duplicate header label".into()));
    }
    Ok(OpTable::new(sorted, grid)?)
}

/// Position of each carrier element in its sorted order.
fn sorted_positions(carrier: &[Elem]) -> Vec<usize> {
    let mut sorted = carrier.to_vec();
    sorted.sort_unstable();
    carrier
        .iter()
        .map(|e| sorted.binary_search(e).expect("element present"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optable::OpTable;
    use crate::trellis::BoundedTrellis;

    const CHAIN: &str = "elements: 0 m 1\nbottom: 0\ntop: 1\nrel: 0 < m, m < 1, 0 < 1\n";

    fn chain3() -> BoundedTrellis {
        BoundedTrellis::from_psoset(parse_psoset(CHAIN).unwrap().psoset).unwrap()
    }

    #[test]
    fn parse_and_serialize_round_trip() {
        let parsed = parse_psoset(CHAIN).unwrap();
        let text = serialize_psoset(&parsed.psoset, parsed.bottom, parsed.top);
        let again = parse_psoset(&text).unwrap();
        assert_eq!(parsed, again);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# a chain\n\nelements: a b  # trailing\nrel: a < b\n";
        let parsed = parse_psoset(text).unwrap();
        assert_eq!(parsed.psoset.labels(), &["a".to_string(), "b".to_string()]);
    }

    #[test]
    fn misdeclared_bottom_is_rejected() {
        let text = "elements: 0 m 1\nbottom: m\nrel: 0 < m, m < 1, 0 < 1\n";
        assert_eq!(
            parse_psoset(text).unwrap_err(),
            ParseError::BadBottom("m".into())
        );
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        let text = "elements: a b\nrel: a b\n";
        match parse_psoset(text).unwrap_err() {
            ParseError::Syntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column >= 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn antisymmetry_error_names_the_line_of_the_pair() {
        let text = "elements: p q\nrel: p < q\nrel: q < p\n";
        match parse_psoset(text).unwrap_err() {
            ParseError::Semantic { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn chain_meet_table_renders_the_expected_csv() {
        let t = chain3();
        let v = OpTable::meet_table(&t);
        assert_eq!(
            export_table(t.psoset(), &v, TableFormat::Csv),
            ",0,m,1\n0,0,0,0\nm,0,m,m\n1,0,m,1\n"
        );
    }

    #[test]
    fn csv_export_reparses_to_the_same_table() {
        let t = chain3();
        let v = OpTable::meet_table(&t);
        let text = export_table(t.psoset(), &v, TableFormat::Csv);
        let back = parse_table(t.psoset(), &text).unwrap();
        assert_eq!(v, back);
    }

    #[test]
    fn dot_export_of_a_chain_has_three_solid_edges_and_no_dashes() {
        let t = chain3();
        let dot = export_dot(t.psoset());
        assert_eq!(dot.matches(" -> ").count(), 3);
        assert!(!dot.contains("dashed"));
    }

    #[test]
    fn unknown_format_string_is_an_error() {
        assert!("".parse::<TableFormat>().is_err());
        assert!("tsv".parse::<TableFormat>().is_err());
        assert_eq!("csv".parse::<TableFormat>(), Ok(TableFormat::Csv));
    }
}
