//! Sensor frame ingestion, RMS summaries and per-state interval extraction.

mod frame;
mod ingest;
mod intervals;
mod rms;

pub use frame::{summarize_frame, FrameSummary, Position, SensorFrame};
pub use ingest::{for_each_frame, read_frames, write_csv, write_ndjson, DataFormat};
pub use intervals::{
    class_distribution, extract_intervals, extract_intervals_per_position, ClassCounts, IntervalAccumulator,
    StateIntervalTable, StateIntervals, INTERVAL_SCHEMA,
};
pub use rms::rms;
