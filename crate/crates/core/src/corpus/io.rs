//! Structured (`LineId,Content,EventTemplate[,Source]`) and raw dataset files.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::dataset::{Dataset, LogRecord};
use super::template::Template;
use crate::error::{Error, Result};

/// Derives a dataset name from a file name: everything before the first `_`
/// or `.`, so `Apache_2k.log_structured.csv` becomes `Apache`.
pub fn dataset_name_from_path(path: &Path) -> String {
    let file = path
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default();
    let stem = file.split(['_', '.']).next().unwrap_or_default();
    if stem.is_empty() {
        "dataset".to_string()
    } else {
        stem.to_string()
    }
}

pub fn load_structured(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    load_structured_named(path, &dataset_name_from_path(path))
}

pub fn load_structured_named(path: impl AsRef<Path>, name: &str) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_structured(file, name).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })
}

/// Reads structured records from any reader; see [`load_structured`].
pub fn read_structured<R: std::io::Read>(reader: R, name: &str) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(reader);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    let column = |n: &str| headers.iter().position(|h| h.trim() == n);
    let content_col =
        column("Content").ok_or_else(|| Error::Format("missing column `Content`".into()))?;
    let template_col = column("EventTemplate")
        .ok_or_else(|| Error::Format("missing column `EventTemplate`".into()))?;
    let line_col = column("LineId");
    let source_col = column("Source");

    let mut records = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row.map_err(csv_error)?;
        let row_no = i as u64 + 1;
        let position = i + 1;
        let line_id = match line_col {
            Some(c) => row[c].trim().parse::<usize>().map_err(|_| Error::Parse {
                row: row_no,
                message: format!("invalid LineId {:?}", &row[c]),
            })?,
            None => position,
        };
        if line_id != position {
            return Err(Error::Parse {
                row: row_no,
                message: format!("LineId {line_id} breaks the contiguous 1..N sequence"),
            });
        }
        let source = source_col
            .map(|c| row[c].to_string())
            .filter(|s| !s.is_empty())
            .unwrap_or_else(|| name.to_string());
        let record = LogRecord::new(
            line_id,
            &row[content_col],
            Template::parse_optional(&row[template_col]),
            source,
        )
        .map_err(|e| Error::Parse {
            row: row_no,
            message: e.to_string(),
        })?;
        records.push(record);
    }
    Dataset::new(name, records)
}

fn csv_error(e: csv::Error) -> Error {
    let row = e.position().map(|p| p.record()).unwrap_or(0);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io {
            path: Default::default(),
            source: io,
        },
        kind => Error::Parse {
            row,
            message: format!("{kind:?}"),
        },
    }
}

/// Reads one message per non-empty line; blank lines are skipped.
pub fn load_raw(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut lines = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if !line.trim().is_empty() {
            lines.push(line.to_string());
        }
    }
    Dataset::from_lines(&dataset_name_from_path(path), lines)
}

/// Writes the structured format. A `Source` column is added only when some
/// record's source differs from the dataset name (e.g. after mixing).
pub fn write_dataset(ds: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_structured(ds, file).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })
}

pub fn write_structured<W: Write>(ds: &Dataset, writer: W) -> Result<()> {
    let with_source = ds.records.iter().any(|r| r.source != ds.name);
    let mut wtr = csv::Writer::from_writer(writer);
    let mut header = vec!["LineId", "Content", "EventTemplate"];
    if with_source {
        header.push("Source");
    }
    wtr.write_record(&header).map_err(csv_error)?;
    for r in &ds.records {
        let line_id = r.line_id.to_string();
        let template = r.ground_truth.as_ref().map(Template::as_str).unwrap_or("");
        let mut row = vec![line_id.as_str(), r.content.as_str(), template];
        if with_source {
            row.push(&r.source);
        }
        wtr.write_record(&row).map_err(csv_error)?;
    }
    wtr.flush().map_err(|e| Error::io("", e))?;
    Ok(())
}
