//! Per-triangulation summaries and census totals.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::angle::{enumerate_taut_angle_structures, strict_angle_structure};
use crate::error::ParseError;
use crate::lp::Rational;
use crate::qmatch::{diagonal_colour_check, vertical_only_solution};
use crate::quad::{QuadId, TauConvention};
use crate::taut::{
    check_stacking_order, find_taut_structures, find_veering_colouring, one_sided_degrees, Colour,
};
use crate::triangulation::{orient, parse_tgl, Triangulation};

#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    /// Solve the strict angle structure LP.
    pub strict: bool,
    /// Run the stacking, diagonal colour and vertical-solution checks on
    /// veering structures.
    pub checks: bool,
    pub convention: TauConvention,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            strict: true,
            checks: true,
            convention: TauConvention::Standard,
        }
    }
}

impl ReportOptions {
    /// Only what the census totals need.
    pub fn counts_only() -> Self {
        ReportOptions {
            strict: false,
            checks: false,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub taut_angle_structures: usize,
    pub with_taut: usize,
    pub with_veering: usize,
    pub taut_and_veering: usize,
}

impl Counts {
    fn add(&mut self, other: &Counts) {
        self.taut_angle_structures += other.taut_angle_structures;
        self.with_taut += other.with_taut;
        self.with_veering += other.with_veering;
        self.taut_and_veering += other.taut_and_veering;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub index: usize,
    /// `pi` edge pair per tetrahedron, e.g. `e02,e13`.
    pub taut_angle: Vec<String>,
    pub veering: bool,
    pub taut: bool,
    pub strict: Option<bool>,
    /// Edge colours indexed by edge class, when veering.
    pub colours: Option<Vec<Colour>>,
    pub one_sided_degrees: Vec<[usize; 2]>,
    pub stacking_order: Option<bool>,
    pub diagonal_colours: Option<bool>,
    pub vertical_solution: Option<bool>,
    pub flags: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrictSummary {
    pub slack: String,
    /// Angles in units of `pi`, keyed by quad label.
    pub angles: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub name: String,
    pub tet_count: usize,
    pub edge_degrees: Vec<usize>,
    pub link_euler_characteristics: Vec<i64>,
    /// Tetrahedra whose vertices were relabelled by `(2 3)` to orient.
    pub relabelled: Vec<usize>,
    pub structures: Vec<StructureReport>,
    pub counts: Counts,
    pub strict_witness: Option<StrictSummary>,
    pub warnings: Vec<String>,
}

fn show(r: &Rational) -> String {
    r.to_string()
}

/// Runs the whole pipeline on an oriented triangulation.
pub fn veering_report(name: &str, tri: &Triangulation, options: ReportOptions) -> Report {
    let witness = options
        .strict
        .then(|| strict_angle_structure(tri))
        .flatten();
    let strict = options.strict.then_some(witness.is_some());
    let mut counts = Counts::default();
    let mut structures = Vec::new();
    for (index, s) in enumerate_taut_angle_structures(tri).into_iter().enumerate() {
        let colouring = find_veering_colouring(tri, &s, options.convention)
            .expect("enumerated structures are valid");
        let taut_structures =
            find_taut_structures(tri, &s).expect("enumerated structures are valid");
        let taut = !taut_structures.is_empty();
        let veering = colouring.is_some();
        counts.taut_angle_structures += 1;
        counts.with_taut += taut as usize;
        counts.with_veering += veering as usize;
        counts.taut_and_veering += (taut && veering) as usize;
        let one_sided = (0..tri.edge_count())
            .map(|e| {
                let (a, b) = one_sided_degrees(tri, &s, e).expect("two pi angles per edge");
                [a, b]
            })
            .collect();
        let mut report = StructureReport {
            index,
            taut_angle: s.pair_labels(),
            veering,
            taut,
            strict,
            colours: colouring.as_ref().map(|c| c.colours.clone()),
            one_sided_degrees: one_sided,
            stacking_order: None,
            diagonal_colours: None,
            vertical_solution: None,
            flags: Vec::new(),
        };
        if let Some(col) = &colouring {
            for &e in &col.undemanded {
                report
                    .flags
                    .push(format!("edge {e} has no colour demand; coloured red"));
            }
            if options.checks {
                if let Some(ts) = taut_structures.first() {
                    report.stacking_order = check_stacking_order(tri, ts, col).ok();
                }
                report.diagonal_colours = diagonal_colour_check(tri, col).ok();
                report.vertical_solution =
                    vertical_only_solution(tri, &s).ok().map(|x| x.is_some());
            }
        }
        structures.push(report);
    }
    let links = tri.vertex_links();
    let warnings = links
        .iter()
        .filter(|l| !l.is_torus())
        .map(|l| {
            format!(
                "vertex {} has link with Euler characteristic {}",
                l.id, l.euler_characteristic
            )
        })
        .collect();
    Report {
        name: name.to_owned(),
        tet_count: tri.tet_count(),
        edge_degrees: tri.edge_degrees(),
        link_euler_characteristics: links.iter().map(|l| l.euler_characteristic).collect(),
        relabelled: Vec::new(),
        structures,
        counts,
        strict_witness: witness.map(|w| StrictSummary {
            slack: show(&w.slack),
            angles: (0..w.assignment.len())
                .map(|i| {
                    (
                        QuadId::from_index(i).label(),
                        show(w.assignment.get(QuadId::from_index(i))),
                    )
                })
                .collect(),
        }),
        warnings,
    }
}

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
}

/// Parses and orients TGL text, then reports on it.
pub fn report_text(name: &str, text: &str, options: ReportOptions) -> Result<Report, ParseError> {
    let oriented = orient(&parse_tgl(text)?)?;
    let mut report = veering_report(name, &oriented.triangulation, options);
    report.relabelled = oriented.flipped().collect();
    Ok(report)
}

/// Deterministic JSON: object keys sorted, two-space indentation.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("reports serialise");
    serde_json::to_string_pretty(&v).expect("reports serialise")
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub triangulations: usize,
    #[serde(flatten)]
    pub counts: Counts,
    /// Per file: name and its counts, sorted by name.
    pub manifolds: Vec<(String, Counts)>,
    /// Files that could not be read or parsed.
    pub errors: Vec<String>,
}

/// The `.tgl` files of `dir`, sorted by name.
pub fn census_files(dir: &Path) -> io::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "tgl"))
        .collect();
    files.sort();
    Ok(files)
}

fn label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Totals over every `.tgl` file in `dir`, processed in parallel. Files
/// that fail to load are logged and listed, and do not stop the run.
pub fn census_dir(dir: &Path, options: ReportOptions) -> io::Result<CensusSummary> {
    let files = census_files(dir)?;
    let results: Vec<Result<(String, Counts), InputError>> = files
        .par_iter()
        .map(|path| {
            let text = fs::read_to_string(path).map_err(|source| InputError::Io {
                path: path.clone(),
                source,
            })?;
            let name = label(path);
            let report =
                report_text(&name, &text, options).map_err(|source| InputError::Parse {
                    path: path.clone(),
                    source,
                })?;
            Ok((name, report.counts))
        })
        .collect();
    let mut summary = CensusSummary::default();
    for r in results {
        match r {
            Ok((name, counts)) => {
                summary.triangulations += 1;
                summary.counts.add(&counts);
                summary.manifolds.push((name, counts));
            }
            Err(e) => {
                log::warn!("skipping {e}");
                summary.errors.push(e.to_string());
            }
        }
    }
    Ok(summary)
}
