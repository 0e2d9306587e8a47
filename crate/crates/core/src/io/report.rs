use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::metrics::{ConfusionCounts, MetricsReport, Scores};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::invalid(format!(
                "unknown report format {other:?}, expected json or csv"
            ))),
        }
    }
}

fn fixed(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.4}")).unwrap_or_default()
}

fn json_number(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.4}")).unwrap_or_else(|| "null".into())
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialise")
}

fn json_scores(out: &mut String, s: &Scores) {
    let _ = write!(
        out,
        "\"dice\": {}, \"sensitivity\": {}, \"precision\": {}",
        json_number(s.dice),
        json_number(s.sensitivity),
        json_number(s.precision)
    );
}

fn json_counts(out: &mut String, c: &ConfusionCounts) {
    let _ = write!(
        out,
        ", \"tp\": {}, \"fp\": {}, \"tn\": {}, \"fn\": {}",
        c.tp, c.fp, c.tn, c.fn_
    );
}

/// Nested `per_image` / `per_subject` / `average` objects; every score is
/// printed with four decimals and undefined scores are `null`.
pub fn report_to_json(report: &MetricsReport) -> String {
    let mut out = String::from("{\n  \"per_image\": [");
    for (k, img) in report.per_image.iter().enumerate() {
        out.push_str(if k == 0 { "\n    {" } else { ",\n    {" });
        let _ = write!(
            out,
            "\"subject\": {}, \"id\": {}, ",
            json_string(&img.subject),
            json_string(&img.id)
        );
        json_scores(&mut out, &img.scores);
        json_counts(&mut out, &img.counts);
        out.push('}');
    }
    out.push_str("\n  ],\n  \"per_subject\": [");
    for (k, s) in report.per_subject.iter().enumerate() {
        out.push_str(if k == 0 { "\n    {" } else { ",\n    {" });
        let _ = write!(out, "\"id\": {}, ", json_string(&s.id));
        json_scores(&mut out, &s.scores);
        json_counts(&mut out, &s.counts);
        out.push('}');
    }
    out.push_str("\n  ],\n  \"average\": {");
    json_scores(&mut out, &report.average);
    out.push_str("}\n}\n");
    out
}

/// One row per image, then per subject, then the average, distinguished by
/// the `scope` column. Undefined scores are empty cells.
pub fn report_to_csv(report: &MetricsReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record([
        "scope",
        "subject",
        "id",
        "dice",
        "sensitivity",
        "precision",
        "tp",
        "fp",
        "tn",
        "fn",
    ])
    .map_err(io)?;
    let counts = |c: &ConfusionCounts| [c.tp.to_string(), c.fp.to_string(), c.tn.to_string(), c.fn_.to_string()];
    for img in &report.per_image {
        let [tp, fp, tn, fn_] = counts(&img.counts);
        w.write_record([
            "image".into(),
            img.subject.clone(),
            img.id.clone(),
            fixed(img.scores.dice),
            fixed(img.scores.sensitivity),
            fixed(img.scores.precision),
            tp,
            fp,
            tn,
            fn_,
        ])
        .map_err(io)?;
    }
    for s in &report.per_subject {
        let [tp, fp, tn, fn_] = counts(&s.counts);
        w.write_record([
            "subject".into(),
            s.id.clone(),
            String::new(),
            fixed(s.scores.dice),
            fixed(s.scores.sensitivity),
            fixed(s.scores.precision),
            tp,
            fp,
            tn,
            fn_,
        ])
        .map_err(io)?;
    }
    let a = &report.average;
    w.write_record([
        "average",
        "",
        "",
        &fixed(a.dice),
        &fixed(a.sensitivity),
        &fixed(a.precision),
        "",
        "",
        "",
        "",
    ])
    .map_err(io)?;
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn write_report(report: &MetricsReport, path: impl AsRef<Path>, format: ReportFormat) -> Result<()> {
    let text = match format {
        ReportFormat::Json => report_to_json(report),
        ReportFormat::Csv => report_to_csv(report)?,
    };
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> MetricsReport {
        let c = |tp, fp, tn, fn_| ConfusionCounts { tp, fp, tn, fn_ };
        MetricsReport::from_counts([
            ("s1", "a", c(8, 1, 10, 2)),
            ("s1", "b", c(0, 0, 5, 0)),
            ("s2", "c", c(4, 0, 9, 3)),
        ])
    }

    #[test]
    fn json_is_fixed_point_with_nulls() {
        let mut report = sample();
        report.average.dice = Some(0.8223);
        let text = report_to_json(&report);
        assert!(text.contains("\"dice\": 0.8223"));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v["per_image"][1]["precision"].is_null());
        assert_eq!(v["per_image"].as_array().unwrap().len(), 3);
        assert_eq!(v["per_subject"][1]["id"], "s2");
        assert!(text.contains("\"sensitivity\": 0.8000"));
    }

    #[test]
    fn csv_parses_back() {
        let report = sample();
        let text = report_to_csv(&report).unwrap();
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
        assert_eq!(rows.len(), 3 + 2 + 1);
        let parse = |s: &str| (!s.is_empty()).then(|| s.parse::<f64>().unwrap());
        for (row, img) in rows.iter().zip(&report.per_image) {
            assert_eq!(&row[0], "image");
            for (cell, want) in [
                (&row[3], img.scores.dice),
                (&row[4], img.scores.sensitivity),
                (&row[5], img.scores.precision),
            ] {
                match (parse(cell), want) {
                    (Some(a), Some(b)) => assert!((a - b).abs() <= 5e-5),
                    (None, None) => {}
                    other => panic!("mismatch {other:?}"),
                }
            }
        }
        assert_eq!(&rows[5][0], "average");
        assert!((parse(&rows[5][3]).unwrap() - report.average.dice.unwrap()).abs() <= 5e-5);
    }

    #[test]
    fn format_names() {
        assert_eq!("JSON".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
