//! JSON, CSV and ASCII renderings. Every function is a pure function of its
//! input, so output bytes depend only on the run's inputs and seed.

use std::collections::BTreeMap;
use std::fmt::Write;

use clap::ValueEnum;
use qsim_core::measure::BlochVector;
use qsim_core::protocols::{SweepResult, TeleportReport};
use qsim_core::{Histogram, Processor};
use serde::Serialize;

/// Widest ASCII bar, reached at probability 1.
const BAR_WIDTH: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Ascii,
}

#[derive(Serialize)]
pub struct BlochEntry {
    pub qubit: usize,
    #[serde(flatten)]
    pub vector: BlochVector,
}

impl From<(usize, BlochVector)> for BlochEntry {
    fn from((qubit, vector): (usize, BlochVector)) -> Self {
        Self { qubit, vector }
    }
}

#[derive(Serialize)]
pub struct SimulateOutput {
    pub circuit: String,
    pub processor: Processor,
    pub device: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<&'static str>,
    pub measured: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probabilities: Option<BTreeMap<String, f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram: Option<Histogram>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bloch: Vec<BlochEntry>,
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn bar(fraction: f64) -> String {
    "#".repeat((fraction.clamp(0.0, 1.0) * BAR_WIDTH as f64).round() as usize)
}

fn ascii_probabilities(out: &mut String, probs: &BTreeMap<String, f64>) {
    let width = probs.keys().map(String::len).max().unwrap_or(0).max(7);
    writeln!(out, "{:<width$}  {:>11}", "outcome", "probability").unwrap();
    for (k, &p) in probs {
        writeln!(out, "{k:<width$}  {p:>11.6}  {}", bar(p)).unwrap();
    }
}

fn ascii_histogram(out: &mut String, h: &Histogram) {
    let width = h
        .probabilities
        .keys()
        .map(String::len)
        .max()
        .unwrap_or(0)
        .max(7);
    writeln!(
        out,
        "{:<width$}  {:>8}  {:>9}",
        "outcome", "count", "frequency"
    )
    .unwrap();
    for (k, f) in h.frequencies() {
        writeln!(
            out,
            "{k:<width$}  {:>8}  {f:>9.6}  {}",
            h.counts[&k],
            bar(f)
        )
        .unwrap();
    }
}

fn ascii_bloch(out: &mut String, bloch: &[BlochEntry]) {
    for b in bloch {
        let v = &b.vector;
        writeln!(
            out,
            "bloch q{}: x={:+.6} y={:+.6} z={:+.6} theta={:.6} phi={:.6} |r|={:.6}",
            b.qubit, v.x, v.y, v.z, v.theta, v.phi, v.purity_norm
        )
        .unwrap();
    }
}

fn csv_bloch(out: &mut String, bloch: &[BlochEntry]) {
    out.push_str("qubit,x,y,z,theta,phi,purity_norm\n");
    for b in bloch {
        let v = &b.vector;
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            b.qubit, v.x, v.y, v.z, v.theta, v.phi, v.purity_norm
        )
        .unwrap();
    }
}

pub fn simulate(o: &SimulateOutput, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => return json(o),
        Format::Csv => {
            if let Some(p) = &o.probabilities {
                out.push_str("outcome,probability\n");
                for (k, v) in p {
                    writeln!(out, "{k},{v}").unwrap();
                }
            }
            if let Some(h) = &o.histogram {
                out.push_str("outcome,count,probability\n");
                for (k, p) in &h.probabilities {
                    writeln!(out, "{k},{},{p}", h.counts.get(k).copied().unwrap_or(0)).unwrap();
                }
            }
            if !o.bloch.is_empty() {
                if !out.is_empty() {
                    out.push('\n');
                }
                csv_bloch(&mut out, &o.bloch);
            }
        }
        Format::Ascii => {
            write!(
                out,
                "{} on {} processor, device {}",
                o.circuit, o.processor, o.device
            )
            .unwrap();
            match &o.histogram {
                Some(h) => {
                    writeln!(out, ", {} shots, seed {} ({})", h.shots, h.seed, h.rng).unwrap()
                }
                None => out.push('\n'),
            }
            if !o.measured.is_empty() {
                let qs: Vec<String> = o.measured.iter().map(|q| format!("q{q}")).collect();
                writeln!(out, "measured {}\n", qs.join(" ")).unwrap();
            }
            if let Some(p) = &o.probabilities {
                ascii_probabilities(&mut out, p);
            }
            if let Some(h) = &o.histogram {
                ascii_histogram(&mut out, h);
            }
            ascii_bloch(&mut out, &o.bloch);
        }
    }
    out
}

#[derive(Serialize)]
struct TeleportOutput<'a> {
    state: &'a str,
    device: &'a str,
    seed: u64,
    #[serde(flatten)]
    report: &'a TeleportReport,
}

#[derive(Serialize)]
struct TeleportExactOutput<'a> {
    state: &'a str,
    processor: Processor,
    device: &'a str,
    seed: u64,
    probabilities: &'a BTreeMap<String, f64>,
    branches: &'a [qsim_core::protocols::BranchReport],
}

pub fn teleport(
    r: &TeleportReport,
    state: &str,
    device: &str,
    exact: bool,
    format: Format,
) -> String {
    let seed = r.histogram.seed;
    let mut out = String::new();
    match format {
        Format::Json if exact => {
            return json(&TeleportExactOutput {
                state,
                processor: r.processor,
                device,
                seed,
                probabilities: &r.probabilities,
                branches: &r.branches,
            })
        }
        Format::Json => {
            return json(&TeleportOutput {
                state,
                device,
                seed,
                report: r,
            })
        }
        Format::Csv => {
            if exact {
                out.push_str("outcome,probability\n");
                for (k, p) in &r.probabilities {
                    writeln!(out, "{k},{p}").unwrap();
                }
            } else {
                out.push_str("outcome,count,probability\n");
                for (k, p) in &r.probabilities {
                    writeln!(
                        out,
                        "{k},{},{p}",
                        r.histogram.counts.get(k).copied().unwrap_or(0)
                    )
                    .unwrap();
                }
            }
            out.push_str("\nm,n,probability,correction,fidelity\n");
            for b in &r.branches {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    b.m, b.n, b.probability, b.correction, b.fidelity
                )
                .unwrap();
            }
        }
        Format::Ascii => {
            write!(
                out,
                "teleport {state} on {} processor, device {device}",
                r.processor
            )
            .unwrap();
            if exact {
                out.push('\n');
            } else {
                writeln!(
                    out,
                    ", {} shots, seed {seed} ({})",
                    r.histogram.shots, r.histogram.rng
                )
                .unwrap();
            }
            out.push_str("outcomes read q0 q1 q2; Alice holds q0 and q2, Bob holds q1\n\n");
            if exact {
                ascii_probabilities(&mut out, &r.probabilities);
            } else {
                ascii_histogram(&mut out, &r.histogram);
            }
            out.push_str("\nAlice (q0 q2)  probability  correction  fidelity\n");
            for b in &r.branches {
                writeln!(
                    out,
                    "{}{:<13}  {:>11.6}  {:<10}  {:.6}",
                    b.m, b.n, b.probability, b.correction, b.fidelity
                )
                .unwrap();
            }
        }
    }
    out
}

/// `p0` against `n`, one row per point.
pub fn sweep_plot(r: &SweepResult) -> String {
    let mut out = format!("p0 on q{} (bar width {BAR_WIDTH} = 1.0)\n", r.qubit);
    for p in &r.points {
        writeln!(out, "{:>4} {:.4} |{}", p.n, p.p0, bar(p.p0)).unwrap();
    }
    out
}
