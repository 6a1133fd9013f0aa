//! Output rendering. Everything here is a pure function of its inputs so the
//! same run always produces the same bytes.

use std::fmt::Write;

use clap::ValueEnum;
use pathlap::{Digraph, LaplacianReport, ReductionStep, SweepResult};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// Eigenvalues below this fraction of `max(1, lambda_max)` are under the
/// eigensolver's convergence threshold and are printed as 0.
const NOISE_FLOOR: f64 = 1e-12;

/// Rounds to 12 significant digits. Negative zero becomes zero.
pub fn significant(x: f64) -> f64 {
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

fn rendered_spectrum(eigenvalues: &[f64]) -> Vec<f64> {
    let largest = eigenvalues.last().copied().unwrap_or(0.0);
    let floor = NOISE_FLOOR * largest.max(1.0);
    eigenvalues
        .iter()
        .map(|&x| if x.abs() < floor { 0.0 } else { significant(x) })
        .collect()
}

#[derive(Serialize)]
struct Record {
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    dimension: usize,
    omega_dim: usize,
    betti: usize,
    eigenvalues: Vec<f64>,
    fiedler: Option<f64>,
}

impl Record {
    fn new(delta: Option<f64>, r: &LaplacianReport) -> Self {
        Record {
            delta,
            dimension: r.dimension,
            omega_dim: r.omega_dim,
            betti: r.betti,
            eigenvalues: rendered_spectrum(&r.spectrum.eigenvalues),
            fiedler: r.fiedler().map(significant),
        }
    }

    fn csv_row(&self, out: &mut String) {
        if let Some(d) = self.delta {
            write!(out, "{d},").unwrap();
        }
        write!(out, "{},{},{},", self.dimension, self.omega_dim, self.betti).unwrap();
        if let Some(f) = self.fiedler {
            write!(out, "{f}").unwrap();
        }
        for x in &self.eigenvalues {
            write!(out, ",{x}").unwrap();
        }
        out.push('\n');
    }
}

#[derive(Serialize)]
struct GraphSummary {
    vertices: usize,
    edges: usize,
}

impl GraphSummary {
    fn of(g: &Digraph) -> Self {
        GraphSummary {
            vertices: g.num_vertices(),
            edges: g.num_edges(),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output is serializable");
    text.push('\n');
    text
}

fn csv_header(out: &mut String, g: Option<&Digraph>, steps: Option<&[ReductionStep]>) {
    writeln!(out, "# schema_version={SCHEMA_VERSION}").unwrap();
    if let Some(g) = g {
        writeln!(
            out,
            "# vertices={} edges={}",
            g.num_vertices(),
            g.num_edges()
        )
        .unwrap();
    }
    if let Some(steps) = steps {
        writeln!(out, "# reductions={}", steps.len()).unwrap();
    }
}

pub fn spectra(
    format: OutputFormat,
    g: &Digraph,
    reports: &[LaplacianReport],
    steps: Option<&[ReductionStep]>,
) -> String {
    let records: Vec<Record> = reports.iter().map(|r| Record::new(None, r)).collect();
    match format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                schema_version: u32,
                graph: GraphSummary,
                #[serde(skip_serializing_if = "Option::is_none")]
                reductions: Option<&'a [ReductionStep]>,
                records: Vec<Record>,
            }
            to_json(&Doc {
                schema_version: SCHEMA_VERSION,
                graph: GraphSummary::of(g),
                reductions: steps,
                records,
            })
        }
        OutputFormat::Csv => {
            let mut out = String::new();
            csv_header(&mut out, Some(g), steps);
            out.push_str("n,omega_dim,betti,fiedler,eigenvalues\n");
            for r in &records {
                r.csv_row(&mut out);
            }
            out
        }
    }
}

/// Distances at which rows are emitted: the critical thresholds, or `k`
/// evenly spaced values from 0 to the largest threshold.
fn sample_points(result: &SweepResult, grid: Option<usize>) -> Vec<f64> {
    let Some(k) = grid else {
        return result.thresholds.clone();
    };
    let top = result.thresholds.last().copied().unwrap_or(0.0);
    (0..k)
        .map(|i| {
            if i + 1 == k {
                top
            } else {
                top * i as f64 / (k - 1) as f64
            }
        })
        .collect()
}

pub fn persist(format: OutputFormat, result: &SweepResult, grid: Option<usize>) -> String {
    let mut records = Vec::new();
    for delta in sample_points(result, grid) {
        let reports = result.at(delta).expect("0 is always a threshold");
        for r in reports {
            records.push(Record::new(Some(delta), &r.laplacian));
        }
    }
    match format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                schema_version: u32,
                keep_isolated: bool,
                thresholds: &'a [f64],
                records: Vec<Record>,
            }
            to_json(&Doc {
                schema_version: SCHEMA_VERSION,
                keep_isolated: result.keep_isolated,
                thresholds: &result.thresholds,
                records,
            })
        }
        OutputFormat::Csv => {
            let mut out = String::new();
            csv_header(&mut out, None, None);
            out.push_str("delta,n,omega_dim,betti,fiedler,eigenvalues\n");
            for r in &records {
                r.csv_row(&mut out);
            }
            out
        }
    }
}

#[derive(Serialize)]
pub struct InfoRow {
    pub dimension: usize,
    pub allowed_paths: usize,
    pub omega_dim: usize,
}

pub fn info(
    format: OutputFormat,
    g: &Digraph,
    rows: &[InfoRow],
    steps: Option<&[ReductionStep]>,
) -> String {
    match format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                schema_version: u32,
                graph: GraphSummary,
                #[serde(skip_serializing_if = "Option::is_none")]
                reductions: Option<&'a [ReductionStep]>,
                records: &'a [InfoRow],
            }
            to_json(&Doc {
                schema_version: SCHEMA_VERSION,
                graph: GraphSummary::of(g),
                reductions: steps,
                records: rows,
            })
        }
        OutputFormat::Csv => {
            let mut out = String::new();
            csv_header(&mut out, Some(g), steps);
            out.push_str("n,allowed_paths,omega_dim\n");
            for r in rows {
                writeln!(out, "{},{},{}", r.dimension, r.allowed_paths, r.omega_dim).unwrap();
            }
            out
        }
    }
}
