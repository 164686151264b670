use std::collections::{BTreeMap, HashMap};
use std::io::BufRead;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polycore::arith::small_primes;
use crate::polycore::{
    discriminant, factor_shape_mod_p, is_irreducible_over_q, sturm_real_root_count, IntPoly, Irreducibility,
};

/// Primes whose factorization shapes fingerprint a field for duplicate
/// detection.
const FINGERPRINT_PRIMES: usize = 10;

/// Discriminant and factorization shapes at the fingerprint primes.
type Fingerprint = (BigInt, Vec<Vec<(usize, usize)>>);

/// A validated corpus entry awaiting its certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestedField {
    pub poly: IntPoly,
    pub disc: BigInt,
    pub signature_i: u8,
    pub source: String,
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineError {
    pub source: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct IngestReport {
    pub fields: Vec<IngestedField>,
    pub errors: Vec<LineError>,
    /// Lines dropped as exact repeats of an earlier polynomial.
    pub duplicates: usize,
}

fn validate(line: &str, source: String) -> Result<IngestedField> {
    let poly = IntPoly::parse(line)?;
    if poly.degree() != 5 || !poly.is_monic() {
        return Err(Error::InvalidInput(format!("{poly} is not a monic quintic")));
    }
    let mut flags = Vec::new();
    match is_irreducible_over_q(&poly)? {
        Irreducibility::Irreducible(_) => {}
        Irreducibility::Reducible(w) => {
            return Err(Error::InvalidInput(format!("{poly} is reducible ({w:?})")));
        }
        Irreducibility::Inconclusive { .. } => flags.push("irreducibility-inconclusive".to_string()),
    }
    let disc = discriminant(&poly)?;
    let real = sturm_real_root_count(&poly)?;
    Ok(IngestedField {
        poly,
        disc,
        signature_i: ((5 - real) / 2) as u8,
        source,
        flags,
    })
}

fn fingerprint(f: &IngestedField) -> Result<Fingerprint> {
    let shapes = small_primes()
        .iter()
        .take(FINGERPRINT_PRIMES)
        .map(|&p| factor_shape_mod_p(&f.poly, p))
        .collect::<Result<Vec<_>>>()?;
    Ok((f.disc.clone(), shapes))
}

/// Parses corpus text: one `c0,c1,c2,c3,c4,c5` per line, `#` comments and
/// blank lines ignored. Bad lines are collected; more than half failing is
/// an error for the whole input.
pub fn ingest_reader(reader: impl BufRead, name: &str) -> Result<IngestReport> {
    let mut report = IngestReport::default();
    let mut seen: HashMap<IntPoly, usize> = HashMap::new();
    let mut attempted = 0usize;
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        attempted += 1;
        let source = format!("{name}:{}", n + 1);
        match validate(content, source.clone()) {
            Ok(field) => {
                if let Some(&i) = seen.get(&field.poly) {
                    report.fields[i].flags.push(format!("dedup:{source}"));
                    report.duplicates += 1;
                } else {
                    seen.insert(field.poly.clone(), report.fields.len());
                    report.fields.push(field);
                }
            }
            Err(e) => report.errors.push(LineError {
                source,
                message: e.to_string(),
            }),
        }
    }
    if attempted > 0 && 2 * report.errors.len() > attempted {
        return Err(Error::Parse(format!(
            "{} of {attempted} lines in {name} failed; first: {}: {}",
            report.errors.len(),
            report.errors[0].source,
            report.errors[0].message
        )));
    }
    flag_suspects(&mut report.fields)?;
    Ok(report)
}

/// Marks distinct polynomials that agree in discriminant and splitting
/// shapes, which may define the same field.
fn flag_suspects(fields: &mut [IngestedField]) -> Result<()> {
    let mut groups: BTreeMap<Fingerprint, Vec<usize>> = BTreeMap::new();
    for (i, f) in fields.iter().enumerate() {
        groups.entry(fingerprint(f)?).or_default().push(i);
    }
    for members in groups.values().filter(|m| m.len() > 1) {
        for &i in members {
            for &j in members.iter().filter(|&&j| j != i) {
                let other = fields[j].source.clone();
                fields[i].flags.push(format!("duplicate-suspect:{other}"));
            }
        }
    }
    Ok(())
}

pub fn ingest_str(text: &str, name: &str) -> Result<IngestReport> {
    ingest_reader(text.as_bytes(), name)
}

pub fn ingest_path(path: &Path) -> Result<IngestReport> {
    let file = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    ingest_reader(std::io::BufReader::new(file), &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_and_rejects() {
        let r = ingest_str("-1,-1,0,0,0,1\n0,0,0,0,0,1\n-11,0,0,0,0,1\n", "t").unwrap();
        assert_eq!(r.fields.len(), 2);
        assert_eq!(r.fields[0].poly, IntPoly::parse("x^5 - x - 1").unwrap());
        assert_eq!(r.fields[0].signature_i, 2);
        assert_eq!(r.errors.len(), 1);
        assert_eq!(r.errors[0].source, "t:2");
    }

    #[test]
    fn comments_and_duplicates() {
        let text = "# header\n\n-1,-1,0,0,0,1  # trailing\n-1,-1,0,0,0,1\n";
        let r = ingest_str(text, "t").unwrap();
        assert_eq!(r.fields.len(), 1);
        assert_eq!(r.duplicates, 1);
        assert_eq!(r.fields[0].flags, vec!["dedup:t:4".to_string()]);
        assert_eq!(r.fields[0].source, "t:3");
    }

    #[test]
    fn suspects_flagged() {
        // x -> x + 1 gives the same field and discriminant.
        let f = IntPoly::parse("x^5 - x - 1").unwrap();
        let g = f.shift(&BigInt::from(1));
        let text = format!("{}\n{}\n", f.to_coeff_list(), g.to_coeff_list());
        let r = ingest_str(&text, "t").unwrap();
        assert_eq!(r.fields.len(), 2);
        assert_eq!(r.fields[0].flags, vec!["duplicate-suspect:t:2".to_string()]);
        assert_eq!(r.fields[1].flags, vec!["duplicate-suspect:t:1".to_string()]);
    }

    #[test]
    fn mostly_bad_input_fails() {
        assert!(matches!(ingest_str("x\ny\n-1,-1,0,0,0,1\n", "t"), Err(Error::Parse(_))));
        assert!(ingest_str("x\n-1,-1,0,0,0,1\n", "t").is_ok());
        assert!(ingest_str("", "t").unwrap().fields.is_empty());
    }
}
