use std::io::{BufRead, Write};

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ingest::IngestedField;
use crate::error::{Error, Result};
use crate::genus::{genus_number, norm_euclidean_screen, CyclicityVerdict};
use crate::polycore::IntPoly;

/// One field after the pipeline. Certificate columns are all `None` when
/// `error` is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub poly: IntPoly,
    #[serde(with = "bigint_string")]
    pub disc: BigInt,
    pub i: u8,
    pub t: Option<usize>,
    pub ramification_product: Option<Vec<u64>>,
    pub cyclic: Option<bool>,
    pub genus: Option<u64>,
    pub flags: Vec<String>,
    pub error: Option<String>,
    pub error_detail: Option<String>,
    pub source: String,
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

impl FieldRecord {
    fn certify(field: IngestedField) -> FieldRecord {
        let mut rec = FieldRecord {
            poly: field.poly,
            disc: field.disc,
            i: field.signature_i,
            t: None,
            ramification_product: None,
            cyclic: None,
            genus: None,
            flags: field.flags,
            error: None,
            error_detail: None,
            source: field.source,
        };
        match genus_number(&rec.poly) {
            Ok(cert) => {
                if let CyclicityVerdict::Cyclic { sample_bound, .. } = cert.cyclicity {
                    rec.flags.push(format!("cyclic-sampled:{sample_bound}"));
                }
                rec.t = Some(cert.t);
                rec.ramification_product = Some(cert.ramification_product);
                rec.cyclic = Some(cert.cyclic);
                rec.genus = Some(cert.genus_number);
            }
            Err(e) => {
                rec.error = Some(e.marker().to_string());
                rec.error_detail = Some(e.to_string());
            }
        }
        rec
    }

    pub fn is_certified(&self) -> bool {
        self.error.is_none() && self.genus.is_some()
    }

    fn sort_key(&self) -> (BigInt, &[BigInt]) {
        (self.disc.abs(), self.poly.coeffs())
    }
}

/// Certifies every field on a pool of `workers` threads and returns the
/// records ordered by `(|disc|, coefficients)`.
pub fn run_pipeline(fields: Vec<IngestedField>, workers: usize) -> Result<Vec<FieldRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))?;
    let mut out: Vec<FieldRecord> = pool.install(|| fields.into_par_iter().map(FieldRecord::certify).collect());
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(out)
}

pub fn write_records(records: &[FieldRecord], mut w: impl Write) -> Result<()> {
    for r in records {
        let line = serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?;
        writeln!(w, "{line}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records(r: impl BufRead) -> Result<Vec<FieldRecord>> {
    let mut out = Vec::new();
    for (n, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line).map_err(|e| Error::Parse(format!("record line {}: {e}", n + 1)))?;
        out.push(rec);
    }
    Ok(out)
}

/// Certified records whose fields pass the norm-Euclidean screen. Each
/// must have genus number one; anything else is a consistency error.
pub fn screen(records: &[FieldRecord]) -> Result<Vec<FieldRecord>> {
    let mut out = Vec::new();
    for r in records.iter().filter(|r| r.is_certified()) {
        // A field whose local computation fails cannot be screened in.
        if !norm_euclidean_screen(&r.poly).unwrap_or(false) {
            continue;
        }
        if r.genus != Some(1) {
            return Err(Error::Consistency(format!(
                "{} passes the screen with genus number {:?}",
                r.poly, r.genus
            )));
        }
        out.push(r.clone());
    }
    Ok(out)
}
