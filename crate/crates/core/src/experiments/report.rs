//! CSV, JSON and plot-data output for experiment reports.
//!
//! Plot data is one file per series with `x y` lines, ready for gnuplot or
//! any two-column reader.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::{CorollaryScan, Lemma1Report, Theorem3Report, Theorem4Report};
use crate::error::Result;

/// A report that flattens to a table.
pub trait Tabular: Serialize {
    fn header(&self) -> Vec<&'static str>;
    fn records(&self) -> Vec<Vec<String>>;
    /// Named `(x, y)` series for plotting.
    fn series(&self) -> Vec<(String, Vec<(f64, f64)>)>;
    /// Comment line written above the CSV header.
    fn preamble(&self) -> Option<String> {
        None
    }
}

fn num(v: f64) -> String {
    format!("{v:e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

pub fn write_csv<T: Tabular>(report: &T, mut w: impl Write) -> Result<()> {
    if let Some(line) = report.preamble() {
        writeln!(w, "# {line}")?;
    }
    let mut out = csv::Writer::from_writer(w);
    out.write_record(report.header())?;
    for r in report.records() {
        out.write_record(r)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize>(report: &T, mut w: impl Write) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, report)?;
    writeln!(w)?;
    Ok(())
}

/// Writes `<dir>/<prefix>_<series>.dat` for every series; returns the paths.
pub fn write_plot_data<T: Tabular>(report: &T, dir: &Path, prefix: &str) -> Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for (name, points) in report.series() {
        let path = dir.join(format!("{prefix}_{name}.dat"));
        let mut f = std::io::BufWriter::new(std::fs::File::create(&path)?);
        for (x, y) in points {
            writeln!(f, "{x} {y}")?;
        }
        f.flush()?;
        paths.push(path);
    }
    Ok(paths)
}

impl Tabular for Theorem3Report {
    fn header(&self) -> Vec<&'static str> {
        vec!["n", "m", "k", "l", "lhs", "rhs1", "rhs2", "rhs3", "rhs4", "rhs5", "rhs", "ratio"]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                let mut rec = vec![r.n.to_string(), r.m.to_string(), r.k.to_string(), r.l.to_string(), num(r.lhs)];
                rec.extend(r.rhs_terms.iter().map(|&t| num(t)));
                rec.push(num(r.rhs));
                rec.push(num(r.ratio));
                rec
            })
            .collect()
    }

    fn series(&self) -> Vec<(String, Vec<(f64, f64)>)> {
        let diag: Vec<_> = self.rows.iter().filter(|r| r.n == r.m).collect();
        vec![
            ("lhs".into(), diag.iter().map(|r| (r.n as f64, r.lhs)).collect()),
            ("rhs".into(), diag.iter().map(|r| (r.n as f64, r.rhs)).collect()),
            ("ratio".into(), diag.iter().map(|r| (r.n as f64, r.ratio)).collect()),
        ]
    }
}

impl Tabular for CorollaryScan {
    fn header(&self) -> Vec<&'static str> {
        vec![
            "k", "scale", "hyp1", "hyp2", "hyp2_first", "hyp12", "hyp_total", "error_on_scale", "error_off_scale",
        ]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.k.to_string(),
                    r.scale.to_string(),
                    opt(r.hyp1),
                    opt(r.hyp2),
                    opt(r.hyp2_first),
                    opt(r.hyp12),
                    opt(r.hyp_total),
                    num(r.error_on_scale),
                    opt(r.error_off_scale),
                ]
            })
            .collect()
    }

    fn series(&self) -> Vec<(String, Vec<(f64, f64)>)> {
        let pick = |f: fn(&super::CorollaryRow) -> Option<f64>| {
            self.rows
                .iter()
                .filter_map(|r| f(r).map(|v| (r.scale as f64, v)))
                .collect::<Vec<_>>()
        };
        vec![
            ("hyp_total".into(), pick(|r| r.hyp_total)),
            ("hyp12".into(), pick(|r| r.hyp12)),
            ("error_on_scale".into(), pick(|r| Some(r.error_on_scale))),
            ("error_off_scale".into(), pick(|r| r.error_off_scale)),
        ]
    }
}

impl Tabular for Theorem4Report {
    fn preamble(&self) -> Option<String> {
        Some(format!(
            "{}; truncation j <= {}; tail bound {:e}",
            self.note, self.truncation, self.tail_bound
        ))
    }

    fn header(&self) -> Vec<&'static str> {
        vec!["k", "degree", "error1", "probe", "lower_bound", "tail_bound", "modulus", "modulus_product"]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    r.k.to_string(),
                    r.degree.to_string(),
                    num(r.error1),
                    num(r.probe),
                    num(r.lower_bound),
                    num(self.tail_bound),
                    num(r.modulus),
                    num(r.modulus_product),
                ]
            })
            .collect()
    }

    fn series(&self) -> Vec<(String, Vec<(f64, f64)>)> {
        let pick = |f: fn(&super::Theorem4Row) -> f64| {
            self.rows.iter().map(|r| (r.degree as f64, f(r))).collect::<Vec<_>>()
        };
        vec![
            ("error1".into(), pick(|r| r.error1)),
            ("lower_bound".into(), pick(|r| r.lower_bound)),
            ("modulus_product".into(), pick(|r| r.modulus_product)),
        ]
    }
}

impl Tabular for Lemma1Report {
    fn header(&self) -> Vec<&'static str> {
        vec!["n", "ratio", "max_ratio"]
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| vec![r.n.to_string(), num(r.ratio), num(r.max_ratio)])
            .collect()
    }

    fn series(&self) -> Vec<(String, Vec<(f64, f64)>)> {
        vec![("ratio".into(), self.rows.iter().map(|r| (r.n as f64, r.ratio)).collect())]
    }
}
