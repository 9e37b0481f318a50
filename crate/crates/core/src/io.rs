//! File formats: production logs, quality tables, fit rows, and report
//! tables. All CSVs carry fixed headers and locale-independent numbers.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::bayes::{BayesFactors, BiasClass, FitRow, Report};
use crate::model::{ModelParams, ProductionRecord, QualityTable, VariantId};

pub const LOG_HEADER: &str = "society,round,game,order,concept,director,matcher,variant";
pub const QUALITY_HEADER: &str = "variant,quality";
pub const FITS_HEADER: &str = "society,concept,memory_size,conformity,content,log_likelihood,bf_conformity,bf_content,bf_any,class";

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{path}:{line}: {message}")]
    Malformed {
        path: String,
        line: usize,
        message: String,
    },
}

fn malformed(path: &Path, line: usize, message: impl Into<String>) -> IoError {
    IoError::Malformed {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

/// Formats with 6 significant digits, decimal point, no locale dependence.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{:.*}", decimals, x)
}

pub fn write_log_csv(path: &Path, log: &[ProductionRecord]) -> Result<(), IoError> {
    let mut out = String::with_capacity(log.len() * 32 + 64);
    out.push_str(LOG_HEADER);
    out.push('\n');
    for r in log {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.society, r.round, r.game, r.order, r.concept, r.director, r.matcher, r.variant
        )
        .expect("string write");
    }
    fs::write(path, out)?;
    Ok(())
}

fn parse_field<T: std::str::FromStr>(
    path: &Path,
    line: usize,
    field: &str,
    name: &str,
) -> Result<T, IoError> {
    field
        .parse()
        .map_err(|_| malformed(path, line, format!("invalid {name}: '{field}'")))
}

pub fn read_log_csv(path: &Path) -> Result<Vec<ProductionRecord>, IoError> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == LOG_HEADER => {}
        _ => {
            return Err(malformed(
                path,
                1,
                format!("expected header '{LOG_HEADER}'"),
            ))
        }
    }
    let mut log = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 8 {
            return Err(malformed(
                path,
                line_no,
                format!("expected 8 fields, got {}", fields.len()),
            ));
        }
        let variant =
            VariantId::new(fields[7]).map_err(|e| malformed(path, line_no, e.to_string()))?;
        log.push(ProductionRecord {
            society: parse_field(path, line_no, fields[0], "society")?,
            round: parse_field(path, line_no, fields[1], "round")?,
            game: parse_field(path, line_no, fields[2], "game")?,
            order: parse_field(path, line_no, fields[3], "order")?,
            concept: parse_field(path, line_no, fields[4], "concept")?,
            director: parse_field(path, line_no, fields[5], "director")?,
            matcher: parse_field(path, line_no, fields[6], "matcher")?,
            variant,
        });
    }
    log.sort_by_key(|r| r.order);
    Ok(log)
}

pub fn write_quality_csv(path: &Path, quality: &QualityTable) -> Result<(), IoError> {
    let mut out = String::new();
    out.push_str(QUALITY_HEADER);
    out.push('\n');
    for (variant, q) in quality.iter() {
        writeln!(out, "{},{}", variant, fmt_sig(q)).expect("string write");
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn read_quality_csv(path: &Path) -> Result<QualityTable, IoError> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == QUALITY_HEADER => {}
        _ => {
            return Err(malformed(
                path,
                1,
                format!("expected header '{QUALITY_HEADER}'"),
            ))
        }
    }
    let mut quality = QualityTable::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.is_empty() {
            continue;
        }
        let (token, value) = line
            .split_once(',')
            .ok_or_else(|| malformed(path, line_no, "expected 2 fields"))?;
        let variant = VariantId::new(token).map_err(|e| malformed(path, line_no, e.to_string()))?;
        let q: f64 = parse_field(path, line_no, value, "quality")?;
        quality
            .insert(variant, q)
            .map_err(|e| malformed(path, line_no, e.to_string()))?;
    }
    Ok(quality)
}

/// Writes the true parameters plus the resolved run configuration as
/// commented metadata.
pub fn write_truth_txt(
    path: &Path,
    truth: &ModelParams,
    resolved_config: &str,
) -> Result<(), IoError> {
    let mut out = String::new();
    writeln!(out, "memory_size = {}", truth.memory_size()).unwrap();
    writeln!(out, "conformity = {}", fmt_sig(truth.conformity())).unwrap();
    writeln!(out, "content = {}", fmt_sig(truth.content())).unwrap();
    writeln!(out, "innovation = {}", fmt_sig(truth.innovation())).unwrap();
    out.push_str("# resolved configuration\n");
    for line in resolved_config.lines() {
        writeln!(out, "# {line}").unwrap();
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn write_fits_csv(path: &Path, rows: &[FitRow]) -> Result<(), IoError> {
    let mut out = String::new();
    out.push_str(FITS_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.society,
            r.concept,
            r.memory_size,
            fmt_sig(r.conformity),
            fmt_sig(r.content),
            fmt_sig(r.log_likelihood),
            fmt_sig(r.bayes.bf_conformity),
            fmt_sig(r.bayes.bf_content),
            fmt_sig(r.bayes.bf_any),
            r.class
        )
        .expect("string write");
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn read_fits_csv(path: &Path) -> Result<Vec<FitRow>, IoError> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == FITS_HEADER => {}
        _ => {
            return Err(malformed(
                path,
                1,
                format!("expected header '{FITS_HEADER}'"),
            ))
        }
    }
    let mut rows = Vec::new();
    for (idx, line) in lines {
        let line_no = idx + 1;
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return Err(malformed(
                path,
                line_no,
                format!("expected 10 fields, got {}", fields.len()),
            ));
        }
        let parse_bf = |field: &str, name: &str| -> Result<f64, IoError> {
            match field {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                _ => parse_field(path, line_no, field, name),
            }
        };
        rows.push(FitRow {
            society: parse_field(path, line_no, fields[0], "society")?,
            concept: parse_field(path, line_no, fields[1], "concept")?,
            memory_size: parse_field(path, line_no, fields[2], "memory_size")?,
            conformity: parse_field(path, line_no, fields[3], "conformity")?,
            content: parse_field(path, line_no, fields[4], "content")?,
            log_likelihood: parse_bf(fields[5], "log_likelihood")?,
            bayes: BayesFactors {
                bf_conformity: parse_bf(fields[6], "bf_conformity")?,
                bf_content: parse_bf(fields[7], "bf_content")?,
                bf_any: parse_bf(fields[8], "bf_any")?,
            },
            class: BiasClass::parse(fields[9]).ok_or_else(|| {
                malformed(path, line_no, format!("unknown class '{}'", fields[9]))
            })?,
        });
    }
    Ok(rows)
}

/// Writes the Fig.-2-shaped report: three histogram tables, class counts, and
/// a text summary.
pub fn write_report_files(dir: &Path, report: &Report) -> Result<(), IoError> {
    let mut hist_memory = String::from("memory_size,count\n");
    for &(m, count) in &report.memory_hist {
        writeln!(hist_memory, "{m},{count}").unwrap();
    }
    fs::write(dir.join("hist_memory.csv"), hist_memory)?;

    let mut hist_conformity = String::from("conformity,count\n");
    for &(a, count) in &report.conformity_hist {
        writeln!(hist_conformity, "{},{}", fmt_sig(a), count).unwrap();
    }
    fs::write(dir.join("hist_conformity.csv"), hist_conformity)?;

    let mut hist_content = String::from("content,count\n");
    for &(b, count) in &report.content_hist {
        writeln!(hist_content, "{},{}", fmt_sig(b), count).unwrap();
    }
    fs::write(dir.join("hist_content.csv"), hist_content)?;

    let mut classes = String::from("class,count,percent\n");
    for &(class, count, pct) in &report.class_counts {
        writeln!(classes, "{},{},{}", class, count, fmt_sig(pct)).unwrap();
    }
    fs::write(dir.join("classes.csv"), classes)?;

    fs::write(dir.join("summary.txt"), render_summary(report))?;
    Ok(())
}

pub fn render_summary(report: &Report) -> String {
    let mut out = String::new();
    writeln!(out, "data_structures = {}", report.n_structures).unwrap();
    writeln!(
        out,
        "median_bf_conformity = {}",
        fmt_sig(report.median_bf_conformity)
    )
    .unwrap();
    writeln!(
        out,
        "median_bf_content = {}",
        fmt_sig(report.median_bf_content)
    )
    .unwrap();
    writeln!(out, "median_bf_any = {}", fmt_sig(report.median_bf_any)).unwrap();
    writeln!(
        out,
        "pct_content_positive = {}",
        fmt_sig(report.pct_content_positive)
    )
    .unwrap();
    for &(class, count, pct) in &report.class_counts {
        writeln!(out, "class_{} = {} ({}%)", class, count, fmt_sig(pct)).unwrap();
    }
    out
}
