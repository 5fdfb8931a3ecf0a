//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use num_traits::{One, Signed, Zero};
use veering::angle::{AngleAssignment, TautAngleStructure};
use veering::lp::Rational;
use veering::quad::{QuadSlot, TET_EDGES};
use veering::{orient, parse_tgl, QMatchingSystem, Triangulation};

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

pub fn fixture_text(name: &str) -> String {
    fs::read_to_string(data_dir().join(format!("{name}.tgl")))
        .unwrap_or_else(|e| panic!("fixture {name}: {e}"))
}

/// Parsed and oriented fixture.
pub fn fixture(name: &str) -> Triangulation {
    orient(&parse_tgl(&fixture_text(name)).unwrap())
        .unwrap()
        .triangulation
}

/// Known non-fibred rows: name and `pi` edge pairs per tetrahedron.
pub const KNOWN_ROWS: [(&str, &[&str]); 10] = [
    (
        "s227",
        &[
            "e02,e13", "e01,e23", "e01,e23", "e02,e13", "e03,e12", "e03,e12",
        ],
    ),
    (
        "s438",
        &[
            "e02,e13", "e02,e13", "e02,e13", "e02,e13", "e02,e13", "e01,e23",
        ],
    ),
    (
        "s772",
        &[
            "e02,e13", "e01,e23", "e01,e23", "e01,e23", "e01,e23", "e02,e13",
        ],
    ),
    (
        "s773",
        &[
            "e02,e13", "e01,e23", "e01,e23", "e01,e23", "e01,e23", "e02,e13",
        ],
    ),
    (
        "s779",
        &[
            "e02,e13", "e01,e23", "e01,e23", "e01,e23", "e01,e23", "e02,e13",
        ],
    ),
    (
        "v3128",
        &[
            "e02,e13", "e02,e13", "e02,e13", "e02,e13", "e02,e13", "e02,e13", "e01,e23",
        ],
    ),
    (
        "v3243",
        &[
            "e01,e23", "e02,e13", "e02,e13", "e02,e13", "e02,e13", "e01,e23", "e02,e13",
        ],
    ),
    (
        "v3244",
        &[
            "e01,e23", "e03,e12", "e03,e12", "e03,e12", "e03,e12", "e01,e23", "e03,e12",
        ],
    ),
    (
        "v3377",
        &[
            "e02,e13", "e02,e13", "e02,e13", "e02,e13", "e02,e13", "e01,e23", "e02,e13",
        ],
    ),
    (
        "v3526",
        &[
            "e01,e23", "e03,e12", "e03,e12", "e02,e13", "e02,e13", "e03,e12", "e01,e23",
        ],
    ),
];

pub fn known_row(name: &str) -> TautAngleStructure {
    let (_, row) = KNOWN_ROWS.iter().find(|(n, _)| *n == name).unwrap();
    TautAngleStructure::from_pair_labels(row).unwrap()
}

pub fn census_bundle() -> PathBuf {
    data_dir().join("census/orientable_cusped_le7.tgl")
}

/// Splits a `% name`-separated bundle into `(name, text)` blocks.
pub fn split_bundle(text: &str) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    for line in text.lines() {
        if let Some(name) = line.strip_prefix('%') {
            out.push((name.trim().to_owned(), String::new()));
        } else if let Some((_, body)) = out.last_mut() {
            body.push_str(line);
            body.push('\n');
        }
    }
    out
}

pub fn census_entries() -> Vec<(String, String)> {
    split_bundle(&fs::read_to_string(census_bundle()).unwrap())
}

/// Writes each bundle entry to `<name>.tgl` in `dir`.
pub fn write_census(dir: &Path) -> usize {
    let entries = census_entries();
    for (name, body) in &entries {
        fs::write(dir.join(format!("{name}.tgl")), body).unwrap();
    }
    entries.len()
}

/// Every choice of `pi` slot per tetrahedron, kept when each edge class
/// collects exactly two `pi` angles. Counts are taken over the six edges of
/// each tetrahedron directly.
pub fn brute_force_taut(tri: &Triangulation) -> Vec<Vec<QuadSlot>> {
    let n = tri.tet_count();
    let mut out = Vec::new();
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut digits = vec![0usize; n];
        let mut c = code;
        for d in digits.iter_mut().rev() {
            *d = c % 3;
            c /= 3;
        }
        let mut counts = vec![0; tri.edge_count()];
        for (t, &d) in digits.iter().enumerate() {
            for (k, &(a, b)) in TET_EDGES.iter().enumerate() {
                // Edges k and 5-k are opposite; slot d pairs edge d with 5-d.
                if k == d || k == 5 - d {
                    counts[tri.edge_of(t, a, b)] += 1;
                }
            }
        }
        if counts.iter().all(|&c| c == 2) {
            out.push(digits.into_iter().map(QuadSlot::from_index).collect());
        }
    }
    out
}

/// Rank by fraction-free (Bareiss) elimination over the integers.
pub fn bareiss_rank(matrix: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for j in c + 1..cols {
                m[r][j] = (m[rank][c] * m[r][j] - m[r][c] * m[rank][j]) / prev;
            }
            m[r][c] = 0;
        }
        prev = m[rank][c];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Tetrahedron and edge sums, checked by direct substitution.
pub fn satisfies_angle_equations(tri: &Triangulation, a: &AngleAssignment) -> bool {
    let n = tri.tet_count();
    if a.len() != 3 * n {
        return false;
    }
    let tets_ok = a
        .values()
        .chunks(3)
        .all(|c| c.iter().sum::<Rational>().is_one());
    let mut edge_sums = vec![Rational::zero(); tri.edge_count()];
    for t in 0..n {
        for &(x, y) in &TET_EDGES {
            let slot = QuadSlot::dual_to(x, y);
            edge_sums[tri.edge_of(t, x, y)] += &a.values()[3 * t + slot.index()];
        }
    }
    let two = Rational::from_integer(2.into());
    tets_ok && edge_sums.iter().all(|s| *s == two)
}

pub fn strictly_between_zero_and_one(a: &AngleAssignment) -> bool {
    a.values()
        .iter()
        .all(|v| v.is_positive() && *v < Rational::one())
}

/// `true` when every column of the matrix sums to zero.
pub fn columns_balance(q: &QMatchingSystem) -> bool {
    q.column_sums().iter().all(|&s| s == 0)
}
