use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::compgroup::{component_group_with, ComponentGroupReport};
use crate::cyclofield::CycField;
use crate::families::{build_family, FamilyError, FamilyId, FamilySpec};
use crate::twistcent::WitnessSearch;

use super::report::{twist_set, Format, StratumJson};

/// One built-in regression case with its published answer.
#[derive(Clone, Debug)]
pub struct PaperCase {
    pub name: &'static str,
    pub specs: Vec<FamilySpec>,
    pub expected_label: String,
    pub expected_centralizer_dim: usize,
}

pub fn paper_cases() -> Vec<PaperCase> {
    let f = CycField::new(3).expect("order 3");
    let z = f.gen();
    let five = f.from_int(5);
    let case = |name, specs, label: &str, dim| PaperCase {
        name,
        specs,
        expected_label: label.to_string(),
        expected_centralizer_dim: dim,
    };
    vec![
        case(
            "principal-series-generic",
            vec![FamilySpec::principal_series(f.from_int(2), f.from_int(3)).unwrap()],
            "trivial",
            3,
        ),
        case(
            "principal-series-cube-root",
            vec![FamilySpec::principal_series(z.clone(), z.pow(2)).unwrap()],
            "Z/3Z",
            3,
        ),
        case("steinberg3", vec![FamilySpec::steinberg3(&f)], "trivial", 1),
        case(
            "dihedral-chi",
            vec![FamilySpec::with_chi(FamilyId::DihedralChi, five.clone()).unwrap()],
            "trivial",
            2,
        ),
        case(
            "tetrahedral-octahedral-chi",
            vec![
                FamilySpec::with_chi(FamilyId::TetrahedralChi, five.clone()).unwrap(),
                FamilySpec::with_chi(FamilyId::OctahedralChi, five.clone()).unwrap(),
            ],
            "trivial",
            2,
        ),
        case(
            "steinberg2-chi",
            vec![FamilySpec::steinberg2_chi(five).unwrap()],
            "trivial",
            2,
        ),
    ]
}

#[derive(Clone, Debug)]
pub struct SuiteRow {
    pub case: String,
    /// One report per family in the case, all computed with the same seed.
    pub reports: Vec<ComponentGroupReport>,
    pub expected_label: String,
    pub expected_centralizer_dim: usize,
    pub matches: bool,
}

impl SuiteRow {
    pub fn report(&self) -> &ComponentGroupReport {
        &self.reports[0]
    }
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub seed: u64,
    pub rows: Vec<SuiteRow>,
}

impl SuiteResult {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteRowJson {
    pub case: String,
    pub dim: usize,
    pub order: u32,
    pub centralizer_dim: usize,
    pub strata: Vec<StratumJson>,
    pub invariant_factors: Vec<u64>,
    pub iso_label: String,
    pub expected_label: String,
    pub matches_paper: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteJson {
    pub seed: u64,
    pub cases: Vec<SuiteRowJson>,
    pub all_match: bool,
}

/// Runs the six built-in cases. `overrides` replaces expected labels by case
/// name.
pub fn run_paper_suite(
    seed: u64,
    search: &WitnessSearch,
    overrides: &BTreeMap<String, String>,
) -> Result<SuiteResult, FamilyError> {
    run_suite(paper_cases(), seed, search, overrides)
}

pub fn run_suite(
    cases: Vec<PaperCase>,
    seed: u64,
    search: &WitnessSearch,
    overrides: &BTreeMap<String, String>,
) -> Result<SuiteResult, FamilyError> {
    let mut rows = Vec::new();
    for case in cases {
        let mut reports = Vec::new();
        for spec in &case.specs {
            let gens = build_family(spec)?;
            reports.push(component_group_with(&gens, seed, search)?);
        }
        let expected_label = overrides
            .get(case.name)
            .cloned()
            .unwrap_or(case.expected_label);
        let first = &reports[0];
        // sibling families must agree stratum by stratum
        let consistent = reports.iter().all(|r| {
            r.centralizer_dim == first.centralizer_dim
                && r.nonempty_twists == first.nonempty_twists
                && r.invariant_factors == first.invariant_factors
        });
        let matches = consistent
            && first.iso_label == expected_label
            && first.centralizer_dim == case.expected_centralizer_dim;
        rows.push(SuiteRow {
            case: case.name.to_string(),
            reports,
            expected_label,
            expected_centralizer_dim: case.expected_centralizer_dim,
            matches,
        });
    }
    Ok(SuiteResult { seed, rows })
}

pub fn emit_suite(result: &SuiteResult, format: Format) -> String {
    match format {
        Format::Json => {
            let json = SuiteJson {
                seed: result.seed,
                cases: result
                    .rows
                    .iter()
                    .map(|row| {
                        let r = row.report();
                        SuiteRowJson {
                            case: row.case.clone(),
                            dim: r.n,
                            order: r.field_order,
                            centralizer_dim: r.centralizer_dim,
                            strata: r.strata.iter().map(StratumJson::from_stratum).collect(),
                            invariant_factors: r.invariant_factors.clone(),
                            iso_label: r.iso_label.clone(),
                            expected_label: row.expected_label.clone(),
                            matches_paper: row.matches,
                        }
                    })
                    .collect(),
                all_match: result.all_match(),
            };
            let mut s = serde_json::to_string_pretty(&json).expect("plain data serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let header = [
                "case",
                "centralizer_dim",
                "nonempty_twists",
                "iso_label",
                "matches-paper",
            ];
            let body: Vec<[String; 5]> = result
                .rows
                .iter()
                .map(|row| {
                    let r = row.report();
                    [
                        row.case.clone(),
                        r.centralizer_dim.to_string(),
                        twist_set(&r.nonempty_twists),
                        r.iso_label.clone(),
                        if row.matches { "yes" } else { "no" }.to_string(),
                    ]
                })
                .collect();
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for line in &body {
                for (w, cell) in widths.iter_mut().zip(line) {
                    *w = (*w).max(cell.len());
                }
            }
            let mut out = String::new();
            let mut push_line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                writeln!(out, "{}", padded.join(" | ").trim_end()).unwrap();
            };
            push_line(header.to_vec());
            for line in &body {
                push_line(line.iter().map(String::as_str).collect());
            }
            out
        }
    }
}
