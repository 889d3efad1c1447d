//! Report types and their text rendering. The text and JSON forms carry the
//! same fields; vertices are labelled from 1 in both.

use std::fmt::{self, Write as _};

use anyhow::Result;
use serde::{Serialize, Serializer};

use pcm_core::io::fmt17;
use pcm_core::{Char4Witness, EfficiencyReport, SurveyRow, SweepReport, WellBehavedClass};

pub enum VectorSource {
    Perron,
    GeometricMean,
    File(String),
}

impl fmt::Display for VectorSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Perron => f.write_str("perron"),
            Self::GeometricMean => f.write_str("geomean"),
            Self::File(p) => write!(f, "file {p}"),
        }
    }
}

impl Serialize for VectorSource {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub order: usize,
    pub eigenvalue: f64,
    pub perron_vector: Vec<f64>,
    pub residual: f64,
    pub vector_source: VectorSource,
    pub vector: Vec<f64>,
    pub edge_tolerance: f64,
    pub efficiency: EfficiencyReport,
    pub well_behaved: WellBehavedClass,
    pub subvector_profile: Option<Vec<bool>>,
}

fn vector(v: &[f64]) -> String {
    v.iter().map(|&x| fmt17(x)).collect::<Vec<_>>().join(" ")
}

fn vertices(v: &[usize]) -> String {
    if v.is_empty() {
        return "none".into();
    }
    v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let e = &self.efficiency;
        let mut s = String::new();
        let _ = writeln!(s, "order: {}", self.order);
        let _ = writeln!(s, "eigenvalue: {}", fmt17(self.eigenvalue));
        let _ = writeln!(s, "perron vector: {}", vector(&self.perron_vector));
        let _ = writeln!(s, "residual: {:e}", self.residual);
        let _ = writeln!(s, "vector source: {}", self.vector_source);
        let _ = writeln!(s, "vector: {}", vector(&self.vector));
        let _ = writeln!(s, "edge tolerance: {:e}", self.edge_tolerance);
        let _ = writeln!(s, "efficient: {}", yes_no(e.efficient));
        let _ = writeln!(s, "strongly connected components: {}", e.scc_count);
        let comps: Vec<String> =
            e.condensation.iter().map(|c| format!("{{{}}}", vertices(c).replace(' ', ","))).collect();
        let _ = writeln!(s, "condensation: {}", comps.join(" -> "));
        let _ = writeln!(s, "sinks: {}", vertices(&e.sinks));
        let _ = writeln!(s, "sources: {}", vertices(&e.sources));
        let _ = writeln!(s, "adjacency:");
        for i in 0..e.digraph.order() {
            let row: Vec<&str> =
                (0..e.digraph.order()).map(|j| if e.digraph.has_edge(i, j) { "1" } else { "0" }).collect();
            let _ = writeln!(s, "  {}", row.join(" "));
        }
        let wb = &self.well_behaved;
        let _ = writeln!(s, "well-behaved: {}", wb.kind);
        let _ = writeln!(s, "row-sum gap: {}", fmt17(wb.gap));
        if let Some(b) = wb.boundary_value {
            let _ = writeln!(s, "boundary value: {}", fmt17(b));
        }
        if let Some(p) = &self.subvector_profile {
            let marks: Vec<String> =
                p.iter().enumerate().map(|(i, &ok)| format!("{}:{}", i + 1, yes_no(ok))).collect();
            let _ = writeln!(s, "subvector profile: {}", marks.join(" "));
        }
        s
    }
}

pub fn char4_text(w: &Char4Witness) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "inefficient: {}", yes_no(w.inefficient));
    let _ = writeln!(s, "sinks: {}", vertices(&w.sink_vertices));
    let _ = writeln!(s, "diagonal: {}", vector(&w.diagonal));
    let _ = writeln!(
        s,
        "dominating row: {}",
        w.dominating_row.map_or("none".to_string(), |i| (i + 1).to_string())
    );
    let _ = writeln!(s, "B:");
    let b = &w.constant_row_sum_form;
    for i in 0..b.order() {
        let _ = writeln!(s, "  {}", vector(b.row(i)));
    }
    s
}

pub fn survey_text(rows: &[SurveyRow]) -> String {
    let mut s = format!(
        "{:>4} {:>9} {:>11} {:>7} {:>7} {:>24}\n",
        "dim", "samples", "inefficient", "sinks", "sources", "mean_lambda_gap"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:>4} {:>9} {:>11} {:>7} {:>7} {:>24}",
            r.dim,
            r.samples,
            r.inefficient_count,
            r.sink_count,
            r.source_count,
            fmt17(r.mean_lambda_gap)
        );
    }
    s
}

pub fn sweep_text(r: &SweepReport) -> Result<String> {
    let mut s = String::new();
    let _ = writeln!(s, "property: {}", r.property);
    let _ = writeln!(s, "samples: {}", r.samples);
    let _ = writeln!(s, "checked: {}", r.checked);
    let _ = writeln!(s, "passed: {}", yes_no(r.passed));
    if let Some(c) = &r.counterexample {
        let _ = writeln!(s, "counterexample:");
        s.push_str(&serde_json::to_string_pretty(c)?);
        s.push('\n');
    }
    Ok(s)
}
