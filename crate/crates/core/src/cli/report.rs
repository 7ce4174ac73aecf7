use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::compgroup::ComponentGroupReport;
use crate::twistcent::{Stratum, TwistTuple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumJson {
    pub twist: Vec<u32>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub case: String,
    pub dim: usize,
    pub order: u32,
    pub centralizer_dim: usize,
    pub strata: Vec<StratumJson>,
    pub invariant_factors: Vec<u64>,
    pub iso_label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerJson {
    pub case: String,
    pub dim: usize,
    pub order: u32,
    pub centralizer_dim: usize,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl StratumJson {
    pub fn from_stratum(s: &Stratum) -> Self {
        StratumJson {
            twist: s.twist.0.clone(),
            dim: s.dim(),
            witness: s.witness.as_ref().map(ToString::to_string),
        }
    }
}

impl ReportJson {
    pub fn new(case: &str, report: &ComponentGroupReport) -> Self {
        ReportJson {
            case: case.to_string(),
            dim: report.n,
            order: report.field_order,
            centralizer_dim: report.centralizer_dim,
            strata: report
                .strata
                .iter()
                .map(StratumJson::from_stratum)
                .collect(),
            invariant_factors: report.invariant_factors.clone(),
            iso_label: report.iso_label.clone(),
        }
    }
}

pub fn twist_set(twists: &[TwistTuple]) -> String {
    let inner: Vec<String> = twists.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

/// Renders a component-group report; strata appear in lexicographic order.
pub fn emit_report(case: &str, report: &ComponentGroupReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&ReportJson::new(case, report))
                .expect("plain data serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "case: {case}").unwrap();
            writeln!(out, "dim: {}", report.n).unwrap();
            writeln!(out, "order: {}", report.field_order).unwrap();
            writeln!(out, "twist order: {}", report.m).unwrap();
            writeln!(out, "centralizer dim: {}", report.centralizer_dim).unwrap();
            writeln!(out, "strata:").unwrap();
            for s in &report.strata {
                write!(out, "  {} dim {} {}", s.twist, s.dim(), s.status().as_str()).unwrap();
                if let Some(w) = &s.witness {
                    write!(out, " {w}").unwrap();
                }
                out.push('\n');
            }
            writeln!(
                out,
                "nonempty twists: {}",
                twist_set(&report.nonempty_twists)
            )
            .unwrap();
            let gens: Vec<String> = report
                .subgroup_generators
                .iter()
                .map(ToString::to_string)
                .collect();
            writeln!(out, "generators: {}", gens.join(" ")).unwrap();
            writeln!(out, "invariant factors: {:?}", report.invariant_factors).unwrap();
            writeln!(out, "component group: {}", report.iso_label).unwrap();
            out
        }
    }
}

/// Renders the untwisted stratum alone.
pub fn emit_centralizer(case: &str, n: usize, order: u32, s: &Stratum, format: Format) -> String {
    let basis: Vec<String> = s.space.basis().iter().map(ToString::to_string).collect();
    let witness = s.witness.as_ref().map(ToString::to_string);
    match format {
        Format::Json => {
            let j = CentralizerJson {
                case: case.to_string(),
                dim: n,
                order,
                centralizer_dim: s.dim(),
                basis,
                witness,
            };
            let mut out = serde_json::to_string_pretty(&j).expect("plain data serializes");
            out.push('\n');
            out
        }
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "case: {case}").unwrap();
            writeln!(out, "dim: {n}").unwrap();
            writeln!(out, "order: {order}").unwrap();
            writeln!(out, "centralizer dim: {}", s.dim()).unwrap();
            writeln!(out, "basis:").unwrap();
            for b in &basis {
                writeln!(out, "  {b}").unwrap();
            }
            match witness {
                Some(w) => writeln!(out, "invertible element: {w}").unwrap(),
                None => writeln!(out, "invertible element: none").unwrap(),
            }
            out
        }
    }
}
