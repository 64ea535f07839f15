//! NDJSON and CSV readers/writers for sensor frames.
//!
//! CSV rows carry the sample lists packed into one field, separated by `;`:
//!
//! ```text
//! position,window_start,g,fft_v,fft_g,state
//! P1,2023-01-01T00:00:00Z,0.1;-0.2;0.05,1.2;0.8,3.1;2.2,Nr
//! ```

use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::frame::SensorFrame;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    Ndjson,
    Csv,
}

impl DataFormat {
    /// `.csv` selects CSV; anything else is read as NDJSON.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => DataFormat::Csv,
            _ => DataFormat::Ndjson,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRecord {
    position: String,
    window_start: String,
    g: String,
    fft_v: String,
    fft_g: String,
    state: String,
}

/// Streams frames to `sink` one at a time, validating each.
///
/// The callback receives the 1-based source line of the record. Returns the
/// number of frames read.
pub fn for_each_frame<R, F>(reader: R, format: DataFormat, mut sink: F) -> Result<usize>
where
    R: BufRead,
    F: FnMut(usize, SensorFrame) -> Result<()>,
{
    let mut count = 0;
    let mut emit = |line: usize, frame: SensorFrame| -> Result<()> {
        frame.validate().map_err(|reason| Error::InvalidFrame { row: line, reason })?;
        count += 1;
        sink(line, frame)
    };
    match format {
        DataFormat::Ndjson => {
            for (i, line) in reader.lines().enumerate() {
                let line_no = i + 1;
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let frame: SensorFrame =
                    serde_json::from_str(&line).map_err(|e| Error::Parse { line: line_no, message: e.to_string() })?;
                emit(line_no, frame)?;
            }
        }
        DataFormat::Csv => {
            let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
            let headers = rdr.headers().map_err(|e| Error::Parse { line: 1, message: e.to_string() })?.clone();
            for record in rdr.records() {
                let csv_error = |e: csv::Error| {
                    let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
                    Error::Parse { line, message: e.to_string() }
                };
                let record = record.map_err(csv_error)?;
                let line_no = record.position().map(|p| p.line() as usize).unwrap_or(0);
                let parsed: CsvRecord = record
                    .deserialize(Some(&headers))
                    .map_err(|e| Error::Parse { line: line_no, message: e.to_string() })?;
                let frame = csv_to_frame(&parsed).map_err(|message| Error::Parse { line: line_no, message })?;
                emit(line_no, frame)?;
            }
        }
    }
    Ok(count)
}

pub fn read_frames<R: BufRead>(reader: R, format: DataFormat) -> Result<Vec<SensorFrame>> {
    let mut frames = Vec::new();
    for_each_frame(reader, format, |_, f| {
        frames.push(f);
        Ok(())
    })?;
    Ok(frames)
}

fn parse_samples(field: &str, name: &str) -> std::result::Result<Vec<f64>, String> {
    if field.trim().is_empty() {
        return Ok(Vec::new());
    }
    field.split(';').map(|s| s.trim().parse::<f64>().map_err(|e| format!("{name}: bad sample {s:?}: {e}"))).collect()
}

fn csv_to_frame(r: &CsvRecord) -> std::result::Result<SensorFrame, String> {
    Ok(SensorFrame {
        position: r.position.parse().map_err(|e: Error| e.to_string())?,
        window_start: r.window_start.parse().map_err(|e| format!("window_start {:?}: {e}", r.window_start))?,
        g: parse_samples(&r.g, "g")?,
        fft_v: parse_samples(&r.fft_v, "fft_v")?,
        fft_g: parse_samples(&r.fft_g, "fft_g")?,
        state_label: r.state.parse().map_err(|e: Error| e.to_string())?,
    })
}

fn pack(samples: &[f64]) -> String {
    samples.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

pub fn write_ndjson<W: Write>(mut w: W, frames: &[SensorFrame]) -> Result<()> {
    for frame in frames {
        serde_json::to_writer(&mut w, frame)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_csv<W: Write>(w: W, frames: &[SensorFrame]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    for f in frames {
        wtr.serialize(CsvRecord {
            position: f.position.to_string(),
            window_start: f.window_start.to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            g: pack(&f.g),
            fft_v: pack(&f.fft_v),
            fft_g: pack(&f.fft_g),
            state: f.state_label.code().to_string(),
        })
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    }
    wtr.flush()?;
    Ok(())
}
