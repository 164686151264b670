//! Corpus ingestion, the batch genus pipeline, persisted records and
//! summary statistics.

mod ingest;
mod records;
mod stats;

pub use ingest::{ingest_path, ingest_reader, ingest_str, IngestReport, IngestedField, LineError};
pub use records::{read_records, run_pipeline, screen, write_records, FieldRecord};
pub use stats::{render_report_text, stats, SignatureStats, StatsReport};
