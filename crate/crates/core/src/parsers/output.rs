//! `LineId,EventTemplate` parser output files.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::corpus::Template;
use crate::error::{Error, Result};
use crate::metrics::ParseResult;

/// Reads a parser output; rows must carry line ids 1..=`expected_len` in order.
pub fn read_parse_result<R: Read>(reader: R, expected_len: usize) -> Result<ParseResult> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Format(format!("parser output header: {e}")))?
        .clone();
    let col = |n: &str| headers.iter().position(|h| h.trim() == n);
    let template_col = col("EventTemplate")
        .ok_or_else(|| Error::Format("missing column `EventTemplate`".into()))?;
    let line_col = col("LineId");

    let mut templates = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row_no = i as u64 + 1;
        let row = row.map_err(|e| Error::Parse {
            row: row_no,
            message: e.to_string(),
        })?;
        if let Some(c) = line_col {
            let id: usize = row[c].trim().parse().map_err(|_| Error::Parse {
                row: row_no,
                message: format!("invalid LineId {:?}", &row[c]),
            })?;
            if id != i + 1 {
                return Err(Error::Parse {
                    row: row_no,
                    message: format!("expected LineId {}, found {id}", i + 1),
                });
            }
        }
        let t = Template::new(&row[template_col]).map_err(|e| Error::Parse {
            row: row_no,
            message: e.to_string(),
        })?;
        templates.push(t);
    }
    if templates.len() != expected_len {
        return Err(Error::Shape {
            predicted: templates.len(),
            truth: expected_len,
        });
    }
    Ok(ParseResult::new(templates))
}

pub fn load_parse_result(path: impl AsRef<Path>, expected_len: usize) -> Result<ParseResult> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_parse_result(file, expected_len).map_err(|e| e.context(path.display().to_string()))
}

pub fn write_parse_result<W: Write>(result: &ParseResult, writer: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| Error::Format(format!("writing parser output: {e}"));
    wtr.write_record(["LineId", "EventTemplate"]).map_err(io)?;
    for (i, t) in result.templates.iter().enumerate() {
        wtr.write_record([(i + 1).to_string().as_str(), t.as_str()])
            .map_err(io)?;
    }
    wtr.flush().map_err(|e| Error::io("", e))
}

pub fn save_parse_result(result: &ParseResult, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_parse_result(result, file)
}
