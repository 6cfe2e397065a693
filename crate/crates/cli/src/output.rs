use std::io::Write;

use clap::ValueEnum;
use serde::Serialize;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One JSON object per line.
    Json,
    /// Header row plus one row per record.
    Csv,
    /// Aligned human-readable lines.
    Text,
}

/// Writes `rows` in `format`. CSV always starts with `header`, even when
/// there are no rows; `text` renders each row with `line`.
pub fn emit<W: Write, R: Serialize>(
    out: &mut W,
    format: Format,
    header: &[&str],
    rows: &[R],
    line: impl Fn(&R) -> String,
) -> Result<(), Failure> {
    match format {
        Format::Json => {
            for row in rows {
                serde_json::to_writer(&mut *out, row)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(&mut *out);
            w.write_record(header)?;
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for row in rows {
                writeln!(out, "{}", line(row))?;
            }
        }
    }
    Ok(())
}
