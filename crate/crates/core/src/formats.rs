//! Line formats shared by the library and the command-line tool.
//!
//! Every output stream starts with [`HEADER`]. Labeled records and verdicts
//! are JSON lines; landscape records are `;`-separated with comma-joined rows.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::terminality::{Method, TerminalityVerdict, Witness};
use crate::weights::{StandardWeightMatrix, WeightMatrix};

pub const HEADER: &str = "#terminal-fano v1";
pub const LANDSCAPE_COLUMNS: &str = "a;b;prob_terminal;fano_index;A;B";

pub fn write_header<W: Write + ?Sized>(out: &mut W) -> Result<()> {
    writeln!(out, "{HEADER}")?;
    Ok(())
}

/// A matrix together with its verdict, one JSON object per line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictLine {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub terminal: bool,
    pub method: Method,
    pub witness: Option<Witness>,
}

impl VerdictLine {
    pub fn new(w: &StandardWeightMatrix, v: &TerminalityVerdict) -> Self {
        VerdictLine {
            a: w.a().to_vec(),
            b: w.b().to_vec(),
            terminal: v.terminal,
            method: v.method,
            witness: v.witness.clone(),
        }
    }
}

fn join(xs: &[i64]) -> String {
    xs.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

/// One landscape CSV row (without trailing newline).
pub fn landscape_row(w: &StandardWeightMatrix, prob: f64, ell: i64, growth_a: f64, growth_b: f64) -> String {
    format!("{};{};{};{};{};{}", join(w.a()), join(w.b()), prob, ell, growth_a, growth_b)
}

/// A parsed landscape row.
#[derive(Clone, Debug, PartialEq)]
pub struct LandscapeRow {
    pub matrix: WeightMatrix,
    pub prob_terminal: f64,
    pub fano_index: i64,
    pub growth_a: f64,
    pub growth_b: f64,
}

pub fn parse_landscape_row(line: &str) -> Result<LandscapeRow> {
    let fields: Vec<&str> = line.split(';').collect();
    if fields.len() != 6 {
        return Err(Error::Parse(format!("expected 6 fields, found {}", fields.len())));
    }
    let float = |s: &str| s.parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
    Ok(LandscapeRow {
        matrix: format!("{};{}", fields[0], fields[1]).parse()?,
        prob_terminal: float(fields[2])?,
        fano_index: fields[3].parse().map_err(|e| Error::Parse(format!("{:?}: {e}", fields[3])))?,
        growth_a: float(fields[4])?,
        growth_b: float(fields[5])?,
    })
}

/// Parses one input line: either the text form or a JSON object with `a` and `b`.
pub fn parse_matrix_line(line: &str) -> Result<WeightMatrix> {
    let line = line.trim();
    if line.starts_with('{') {
        Ok(serde_json::from_str(line)?)
    } else {
        line.parse()
    }
}

/// Weight matrices from a line stream, tagged with 1-based line numbers.
///
/// Blank lines and lines starting with `#` are skipped. A read error ends
/// the stream after being yielded.
pub fn read_matrices<R: BufRead>(input: R) -> impl Iterator<Item = (usize, Result<WeightMatrix>)> {
    input.lines().enumerate().filter_map(|(k, line)| {
        let line_no = k + 1;
        match line {
            Err(e) => Some((line_no, Err(Error::Io(e)))),
            Ok(l) if l.trim().is_empty() || l.starts_with('#') => None,
            Ok(l) => Some((line_no, parse_matrix_line(&l))),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terminality::terminal_prop1;
    use crate::weights::standardize;

    #[test]
    fn verdict_line_shape() {
        let w = standardize(&"1,1,0,0,0;0,0,1,1,2".parse().unwrap()).unwrap();
        let line = serde_json::to_string(&VerdictLine::new(&w, &terminal_prop1(&w).unwrap())).unwrap();
        assert!(line.starts_with(r#"{"a":[1,1,0,0,0],"b":[0,0,1,1,2],"terminal":false,"method":"prop1","witness":"#));
        let back: VerdictLine = serde_json::from_str(&line).unwrap();
        assert!(!back.terminal);
    }

    #[test]
    fn landscape_round_trip() {
        let w = standardize(&"1,1,0,0;0,0,1,1".parse().unwrap()).unwrap();
        let row = landscape_row(&w, 1.0, 2, 4f64.ln(), -0.45);
        assert_eq!(row.split(';').count(), 6);
        let back = parse_landscape_row(&row).unwrap();
        assert_eq!(back.matrix, *w.as_matrix());
        assert_eq!(back.growth_a, 4f64.ln());
        assert!(parse_landscape_row("1,2;3").is_err());
    }

    #[test]
    fn reads_mixed_input() {
        let text = format!("{HEADER}\n1,1,0,0;0,0,1,1\n\n{{\"a\":[1,1,0,0],\"b\":[0,1,1,1]}}\nbogus\n");
        let got: Vec<_> = read_matrices(text.as_bytes()).collect();
        assert_eq!(got.len(), 3);
        assert_eq!(got[0].0, 2);
        assert!(got[1].1.is_ok());
        assert_eq!(got[2].0, 5);
        assert!(got[2].1.is_err());
    }
}
