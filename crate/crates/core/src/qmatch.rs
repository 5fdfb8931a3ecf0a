//! Quadrilateral matching equations and the vertical-solution test.
//!
//! Each corner of a quad `q` facing an edge contributes `+1` to the
//! coordinate of `tau(q)` and `-1` to that of `tau^2(q)` in the edge's row.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::angle::{strict_angle_structure, AngleAssignment, TautAngleStructure};
use crate::error::StructureError;
use crate::lp::{rat, LinearProgram, Rational};
use crate::quad::{QuadId, TauConvention};
use crate::taut::{Colour, VeeringColouring};
use crate::triangulation::Triangulation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatchingSystem {
    /// `matrix[edge][quad index]`.
    pub matrix: Vec<Vec<i64>>,
}

pub fn build_q_system(tri: &Triangulation) -> QMatchingSystem {
    build_q_system_with(tri, TauConvention::Standard)
}

pub fn build_q_system_with(tri: &Triangulation, convention: TauConvention) -> QMatchingSystem {
    let cols = tri.quad_count();
    let matrix = (0..tri.edge_count())
        .map(|e| {
            let mut row = vec![0i64; cols];
            for q in tri.quad_sequence(e).facing {
                let plus = q.tau_with(convention);
                row[plus.index()] += 1;
                row[plus.tau_with(convention).index()] -= 1;
            }
            row
        })
        .collect();
    QMatchingSystem { matrix }
}

impl QMatchingSystem {
    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    pub fn column_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.cols()];
        for row in &self.matrix {
            for (s, v) in sums.iter_mut().zip(row) {
                *s += v;
            }
        }
        sums
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Rational>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&v| rat(v)).collect())
            .collect();
        let cols = self.cols();
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank][c].clone();
            for r in 0..m.len() {
                if r == rank || m[r][c].is_zero() {
                    continue;
                }
                let f = &m[r][c] / &pivot;
                let pivot_row = m[rank].clone();
                for (x, p) in m[r][c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= &f * p;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn kernel_dimension(&self) -> usize {
        self.cols() - self.rank()
    }

    pub fn apply(&self, x: &[Rational]) -> Vec<Rational> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .filter(|(c, _)| **c != 0)
                    .map(|(&c, v)| rat(c) * v)
                    .sum()
            })
            .collect()
    }

    /// Tab-separated grid with a header of quad labels and `e<k>` row labels.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.cols() {
            write!(out, "\t{}", QuadId::from_index(i).label()).unwrap();
        }
        out.push('\n');
        for (e, row) in self.matrix.iter().enumerate() {
            write!(out, "e{e}").unwrap();
            for v in row {
                write!(out, "\t{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuadClass {
    /// The `pi` quad.
    Horizontal,
    /// `tau` of the `pi` quad.
    Vertical1,
    /// `tau^2` of the `pi` quad.
    Vertical2,
}

impl QuadClass {
    pub fn is_vertical(self) -> bool {
        self != QuadClass::Horizontal
    }
}

/// Class of every quad, indexed by [`QuadId::index`].
pub fn classify_quads(
    tri: &Triangulation,
    taut: &TautAngleStructure,
) -> Result<Vec<QuadClass>, StructureError> {
    taut.validate(tri)?;
    let mut out = vec![QuadClass::Horizontal; tri.quad_count()];
    for t in 0..tri.tet_count() {
        let h = taut.pi_quad(t);
        out[h.tau().index()] = QuadClass::Vertical1;
        out[h.tau().tau().index()] = QuadClass::Vertical2;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSolution {
    pub x: Vec<Rational>,
}

impl QSolution {
    pub fn support(&self) -> Vec<QuadId> {
        (0..self.x.len())
            .filter(|&i| !self.x[i].is_zero())
            .map(QuadId::from_index)
            .collect()
    }

    pub fn solves(&self, system: &QMatchingSystem) -> bool {
        self.x.len() == system.cols()
            && !self.x.iter().any(Signed::is_negative)
            && system.apply(&self.x).iter().all(Zero::is_zero)
    }
}

/// `chi*(x) = -sum alpha(q) x_q`, with angles in units of `pi`.
pub fn formal_euler(alpha: &AngleAssignment, x: &QSolution) -> Result<Rational, StructureError> {
    if alpha.len() != x.x.len() {
        return Err(StructureError::DimensionMismatch {
            expected: alpha.len(),
            got: x.x.len(),
        });
    }
    Ok(-alpha
        .values()
        .iter()
        .zip(&x.x)
        .map(|(a, v)| a * v)
        .sum::<Rational>())
}

/// A non-negative solution with coordinates summing to 1, supported where
/// `allowed` is true.
pub fn normalised_solution(system: &QMatchingSystem, allowed: &[bool]) -> Option<QSolution> {
    let vars: Vec<usize> = (0..system.cols()).filter(|&i| allowed[i]).collect();
    let mut lp = LinearProgram::new(vars.len());
    for row in &system.matrix {
        let coeffs: Vec<(usize, Rational)> = vars
            .iter()
            .enumerate()
            .filter(|(_, &q)| row[q] != 0)
            .map(|(k, &q)| (k, rat(row[q])))
            .collect();
        if !coeffs.is_empty() {
            lp.add_equality(coeffs, Rational::zero());
        }
    }
    lp.add_equality(
        (0..vars.len()).map(|k| (k, Rational::one())),
        Rational::one(),
    );
    let y = lp.find_feasible()?;
    let mut x = vec![Rational::zero(); system.cols()];
    for (k, &q) in vars.iter().enumerate() {
        x[q] = y[k].clone();
    }
    Some(QSolution { x })
}

/// A non-negative solution supported on vertical quads, if there is one.
pub fn vertical_only_solution(
    tri: &Triangulation,
    taut: &TautAngleStructure,
) -> Result<Option<QSolution>, StructureError> {
    let classes = classify_quads(tri, taut)?;
    let allowed: Vec<bool> = classes.iter().map(|c| c.is_vertical()).collect();
    Ok(normalised_solution(&build_q_system(tri), &allowed))
}

/// False only if there is no vertical solution and yet no strict angle
/// structure either.
pub fn strictness_cross_check(
    tri: &Triangulation,
    taut: &TautAngleStructure,
) -> Result<bool, StructureError> {
    if vertical_only_solution(tri, taut)?.is_some() {
        return Ok(true);
    }
    Ok(strict_angle_structure(tri).is_some())
}

/// For every red edge and every 0-angle quad facing it from a tetrahedron
/// whose two `pi` edges are red, both neighbours of that quad in the edge's
/// sequence carry `pi`; likewise with blue.
pub fn diagonal_colour_check(
    tri: &Triangulation,
    colouring: &VeeringColouring,
) -> Result<bool, StructureError> {
    let taut = &colouring.structure;
    if !colouring.undemanded.is_empty() || !colouring.satisfies_demands(tri) {
        return Err(StructureError::NotVeering(
            "colouring does not meet every tetrahedron's demands".into(),
        ));
    }
    let diagonal_colour = |t: usize| -> Option<Colour> {
        let [(a, b), (c, d)] = taut.slots()[t].dual_edges();
        let x = colouring.colour(tri.edge_of(t, a, b));
        (x == colouring.colour(tri.edge_of(t, c, d))).then_some(x)
    };
    for (e, class) in tri.edge_classes().iter().enumerate() {
        let k = class.degree();
        let colour = colouring.colour(e);
        for (i, corner) in class.corners.iter().enumerate() {
            let q = corner.facing_quad();
            if taut.is_pi(q) || diagonal_colour(q.tet) != Some(colour) {
                continue;
            }
            let prev = class.corners[(i + k - 1) % k].facing_quad();
            let next = class.corners[(i + 1) % k].facing_quad();
            if !taut.is_pi(prev) || !taut.is_pi(next) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::enumerate_taut_angle_structures;
    use crate::taut::find_veering_colouring;
    use crate::triangulation::{orient, parse_tgl};

    fn m004() -> Triangulation {
        let text = "tets 2
0 : 1 0123 1 1320 1 3210 1 3102
1 : 0 0123 0 3210 0 2130 0 3021
";
        orient(&parse_tgl(text).unwrap()).unwrap().triangulation
    }

    #[test]
    fn columns_sum_to_zero() {
        let q = build_q_system(&m004());
        assert_eq!((q.rows(), q.cols()), (2, 6));
        assert!(q.column_sums().iter().all(|&s| s == 0));
        assert!(q.matrix.iter().flatten().all(|v| v.abs() <= 2));
    }

    #[test]
    fn text_export() {
        let text = build_q_system(&m004()).to_text();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "\t0:Q01_23\t0:Q02_13\t0:Q03_12\t1:Q01_23\t1:Q02_13\t1:Q03_12"
        );
        assert!(lines.next().unwrap().starts_with("e0\t"));
        assert!(lines.next().unwrap().starts_with("e1\t"));
        assert!(lines.next().is_none());
    }

    #[test]
    fn quad_classes_per_tetrahedron() {
        let tri = m004();
        for s in enumerate_taut_angle_structures(&tri) {
            let classes = classify_quads(&tri, &s).unwrap();
            for t in classes.chunks(3) {
                let mut sorted = t.to_vec();
                sorted.sort_by_key(|c| *c as u8);
                assert_eq!(
                    sorted,
                    [
                        QuadClass::Horizontal,
                        QuadClass::Vertical1,
                        QuadClass::Vertical2
                    ]
                );
            }
        }
    }

    #[test]
    fn formal_euler_values() {
        let tri = m004();
        let s = &enumerate_taut_angle_structures(&tri)[0];
        let alpha = s.assignment();
        let mut x = vec![Rational::zero(); 6];
        assert_eq!(
            formal_euler(&alpha, &QSolution { x: x.clone() }).unwrap(),
            rat(0)
        );
        x[s.pi_quad(0).tau().index()] = rat(3);
        assert_eq!(
            formal_euler(&alpha, &QSolution { x: x.clone() }).unwrap(),
            rat(0)
        );
        x[s.pi_quad(1).index()] = rat(1);
        assert_eq!(formal_euler(&alpha, &QSolution { x }).unwrap(), rat(-1));
        assert!(formal_euler(&alpha, &QSolution { x: vec![] }).is_err());
    }

    #[test]
    fn veering_m004_has_no_vertical_solution() {
        let tri = m004();
        let mut seen = 0;
        for s in enumerate_taut_angle_structures(&tri) {
            if let Some(col) = find_veering_colouring(&tri, &s, TauConvention::Standard).unwrap() {
                seen += 1;
                assert_eq!(vertical_only_solution(&tri, &s).unwrap(), None);
                assert!(strictness_cross_check(&tri, &s).unwrap());
                assert!(diagonal_colour_check(&tri, &col).unwrap());
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn unrestricted_solutions_solve_the_system() {
        let tri = m004();
        let q = build_q_system(&tri);
        let all = vec![true; q.cols()];
        if let Some(x) = normalised_solution(&q, &all) {
            assert!(x.solves(&q));
        }
    }
}
