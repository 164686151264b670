use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Value};

use super::records::FieldRecord;
use crate::densities::{average_genus_constant, genus_one_density, round_decimal, CertifiedValue};

/// Decimal digits used for the predicted constants shown in reports.
const PREDICTION_DIGITS: u32 = 9;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureStats {
    /// `None` for the row aggregating every signature.
    pub i: Option<u8>,
    pub total: usize,
    pub genus_one: usize,
    pub histogram: BTreeMap<u64, usize>,
}

impl SignatureStats {
    fn new(i: Option<u8>) -> Self {
        SignatureStats {
            i,
            total: 0,
            genus_one: 0,
            histogram: BTreeMap::new(),
        }
    }

    fn add(&mut self, g: u64) {
        self.total += 1;
        if g == 1 {
            self.genus_one += 1;
        }
        *self.histogram.entry(g).or_default() += 1;
    }

    /// Mean genus number over every counted field.
    pub fn mean(&self) -> Option<BigRational> {
        (self.total > 0).then(|| {
            let sum: BigInt = self.histogram.iter().map(|(&g, &c)| BigInt::from(g) * c).sum();
            BigRational::new(sum, BigInt::from(self.total))
        })
    }

    pub fn genus_one_fraction(&self) -> Option<BigRational> {
        (self.total > 0).then(|| BigRational::new(self.genus_one.into(), self.total.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatsReport {
    pub x_cap: Option<BigInt>,
    /// Rows for `i = 0, 1, 2`, then the aggregate row.
    pub rows: Vec<SignatureStats>,
    /// Records skipped because the pipeline reported an error.
    pub errored: usize,
    pub predicted_genus_one: Option<CertifiedValue>,
    pub predicted_average: Option<CertifiedValue>,
}

impl StatsReport {
    pub fn is_empty(&self) -> bool {
        self.rows.last().is_none_or(|r| r.total == 0)
    }

    pub fn to_json(&self) -> Value {
        let q = |x: Option<BigRational>| x.map(|v| v.to_string());
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "i": r.i,
                    "total": r.total,
                    "genus_one": r.genus_one,
                    "histogram": r.histogram.iter().map(|(g, c)| (g.to_string(), *c)).collect::<BTreeMap<_, _>>(),
                    "mean": q(r.mean()),
                    "genus_one_fraction": q(r.genus_one_fraction()),
                })
            })
            .collect();
        let pred = |v: &Option<CertifiedValue>| {
            v.as_ref().map(|v| {
                json!({
                    "low": round_decimal(&v.low(), PREDICTION_DIGITS + 2),
                    "high": round_decimal(&v.high(), PREDICTION_DIGITS + 2),
                    "rounded": v.rounds_to(6),
                })
            })
        };
        json!({
            "empty": self.is_empty(),
            "x_cap": self.x_cap.as_ref().map(|x| x.to_string()),
            "errored": self.errored,
            "rows": rows,
            "predicted_genus_one": pred(&self.predicted_genus_one),
            "predicted_average": pred(&self.predicted_average),
        })
    }
}

/// Aggregates certified records with `|disc| <= x_cap`. The mean runs over
/// all counted fields, not only those of genus number one.
pub fn stats(records: &[FieldRecord], x_cap: Option<&BigInt>) -> StatsReport {
    let mut rows: Vec<SignatureStats> = (0..3).map(|i| SignatureStats::new(Some(i))).collect();
    let mut all = SignatureStats::new(None);
    let mut errored = 0;
    for r in records {
        if x_cap.is_some_and(|x| r.disc.abs() > *x) {
            continue;
        }
        match (r.is_certified(), r.genus) {
            (true, Some(g)) => {
                rows[r.i.min(2) as usize].add(g);
                all.add(g);
            }
            _ => errored += 1,
        }
    }
    rows.push(all);
    StatsReport {
        x_cap: x_cap.cloned(),
        rows,
        errored,
        predicted_genus_one: genus_one_density(PREDICTION_DIGITS).ok(),
        predicted_average: average_genus_constant(PREDICTION_DIGITS).ok(),
    }
}

fn decimal(x: Option<BigRational>) -> String {
    x.map(|v| round_decimal(&v, 6)).unwrap_or_else(|| "-".into())
}

pub fn render_report_text(report: &StatsReport) -> String {
    let mut s = String::new();
    if report.is_empty() {
        let _ = writeln!(s, "empty report: no certified records");
    }
    if let Some(x) = &report.x_cap {
        let _ = writeln!(s, "|disc| <= {x}");
    }
    let pred = |v: &Option<CertifiedValue>| v.as_ref().and_then(|v| v.rounds_to(6)).unwrap_or_else(|| "-".into());
    let _ = writeln!(
        s,
        "{:<5} {:>8} {:>8} {:>12} {:>12} {:>12} {:>12}  histogram",
        "i", "total", "g=1", "g=1 frac", "predicted", "mean g", "predicted"
    );
    for r in &report.rows {
        let label = r.i.map(|i| i.to_string()).unwrap_or_else(|| "all".into());
        let hist: Vec<String> = r.histogram.iter().map(|(g, c)| format!("{g}:{c}")).collect();
        let _ = writeln!(
            s,
            "{:<5} {:>8} {:>8} {:>12} {:>12} {:>12} {:>12}  {}",
            label,
            r.total,
            r.genus_one,
            decimal(r.genus_one_fraction()),
            pred(&report.predicted_genus_one),
            decimal(r.mean()),
            pred(&report.predicted_average),
            hist.join(" ")
        );
    }
    if report.errored > 0 {
        let _ = writeln!(s, "{} records with errors skipped", report.errored);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::IntPoly;

    fn rec(disc: i64, i: u8, g: u64) -> FieldRecord {
        FieldRecord {
            poly: IntPoly::parse("x^5 - x - 1").unwrap(),
            disc: disc.into(),
            i,
            t: Some(0),
            ramification_product: Some(vec![]),
            cyclic: Some(false),
            genus: Some(g),
            flags: vec![],
            error: None,
            error_detail: None,
            source: String::new(),
        }
    }

    #[test]
    fn mean_and_histogram() {
        let r = stats(&[rec(10, 0, 1), rec(20, 0, 1), rec(30, 0, 5)], None);
        let row = &r.rows[0];
        assert_eq!(row.mean(), Some(BigRational::new(7.into(), 3.into())));
        assert_eq!(row.histogram, BTreeMap::from([(1, 2), (5, 1)]));
        assert_eq!(row.histogram.values().sum::<usize>(), row.total);
        assert_eq!(r.rows[3].total, 3);
        assert!(!r.is_empty());
    }

    #[test]
    fn cap_below_everything() {
        let r = stats(&[rec(10, 0, 1)], Some(&BigInt::from(5)));
        assert!(r.is_empty());
        assert!(render_report_text(&r).starts_with("empty report"));
        assert_eq!(r.to_json()["empty"], Value::Bool(true));
    }

    #[test]
    fn errors_are_skipped() {
        let mut bad = rec(10, 1, 1);
        bad.genus = None;
        bad.error = Some("factorization-timeout".into());
        let r = stats(&[bad, rec(-7, 1, 25)], None);
        assert_eq!((r.errored, r.rows[1].total), (1, 1));
    }

    #[test]
    fn prediction_column() {
        let r = stats(&[rec(10, 2, 1)], None);
        let text = render_report_text(&r);
        assert!(text.contains("0.999935"), "{text}");
        assert_eq!(r.to_json()["predicted_genus_one"]["rounded"], Value::from("0.999935"));
    }
}
