//! Generalised, taut, semi and strict angle structures.
//!
//! Angles are attached to quads (equivalently, to the pair of opposite edges
//! a quad is dual to) and measured in units of `pi`: each tetrahedron's three
//! angles sum to 1 and the angles around each edge sum to 2.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::StructureError;
use crate::lp::{rat, LinearProgram, LpOutcome, Rational};
use crate::perm::Perm4;
use crate::quad::{QuadId, QuadSlot, TET_EDGES};
use crate::triangulation::Triangulation;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleAssignment {
    values: Vec<Rational>,
}

impl AngleAssignment {
    /// Values indexed by [`QuadId::index`].
    pub fn new(values: Vec<Rational>) -> Self {
        AngleAssignment { values }
    }

    pub fn uniform(tet_count: usize, value: Rational) -> Self {
        AngleAssignment {
            values: vec![value; 3 * tet_count],
        }
    }

    /// Builds an assignment from a per-quad map; every quad of every
    /// tetrahedron must be present.
    pub fn from_map(
        tet_count: usize,
        map: &BTreeMap<QuadId, Rational>,
    ) -> Result<Self, StructureError> {
        let mut values = Vec::with_capacity(3 * tet_count);
        for i in 0..3 * tet_count {
            let q = QuadId::from_index(i);
            let v = map
                .get(&q)
                .ok_or_else(|| StructureError::MissingQuad(q.label()))?;
            values.push(v.clone());
        }
        Ok(AngleAssignment { values })
    }

    pub fn get(&self, q: QuadId) -> &Rational {
        &self.values[q.index()]
    }

    pub fn set(&mut self, q: QuadId, value: Rational) {
        self.values[q.index()] = value;
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> Option<&Rational> {
        self.values.iter().min()
    }

    fn check_len(&self, tri: &Triangulation) -> Result<(), StructureError> {
        if self.values.len() != tri.quad_count() {
            return Err(StructureError::DimensionMismatch {
                expected: tri.quad_count(),
                got: self.values.len(),
            });
        }
        Ok(())
    }
}

/// True iff the tetrahedron sums are all 1 and the edge sums are all 2.
pub fn is_generalised_angle_structure(
    tri: &Triangulation,
    angles: &AngleAssignment,
) -> Result<bool, StructureError> {
    angles.check_len(tri)?;
    let one = Rational::one();
    for t in 0..tri.tet_count() {
        let sum: Rational = QuadSlot::ALL
            .iter()
            .map(|&s| angles.get(QuadId::new(t, s)))
            .sum();
        if sum != one {
            return Ok(false);
        }
    }
    let two = rat(2);
    for e in 0..tri.edge_count() {
        let sum: Rational = tri
            .quad_sequence(e)
            .facing
            .iter()
            .map(|&q| angles.get(q))
            .sum();
        if sum != two {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleClass {
    Invalid,
    Generalised,
    Semi,
    Taut,
    Strict,
}

impl fmt::Display for AngleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AngleClass::Invalid => "invalid",
            AngleClass::Generalised => "generalised",
            AngleClass::Semi => "semi",
            AngleClass::Taut => "taut",
            AngleClass::Strict => "strict",
        })
    }
}

/// Classifies by the range of the values, after the linear conditions.
/// A taut structure is reported as `Taut` rather than `Semi`.
pub fn semi_angle_check(
    tri: &Triangulation,
    angles: &AngleAssignment,
) -> Result<AngleClass, StructureError> {
    if !is_generalised_angle_structure(tri, angles)? {
        return Ok(AngleClass::Invalid);
    }
    let one = Rational::one();
    let values = angles.values();
    Ok(if values.iter().all(|v| v.is_positive() && *v < one) {
        AngleClass::Strict
    } else if values.iter().all(|v| v.is_zero() || v.is_one()) {
        AngleClass::Taut
    } else if values.iter().all(|v| !v.is_negative() && *v <= one) {
        AngleClass::Semi
    } else {
        AngleClass::Generalised
    })
}

/// A taut angle structure: one quad per tetrahedron carries angle `pi`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TautAngleStructure {
    pi_quads: Vec<QuadSlot>,
}

impl TautAngleStructure {
    /// No validation; see [`TautAngleStructure::validate`].
    pub fn from_slots(pi_quads: Vec<QuadSlot>) -> Self {
        TautAngleStructure { pi_quads }
    }

    /// Parses edge-pair labels such as `["e02,e13", "e01,e23"]`.
    pub fn from_pair_labels<S: AsRef<str>>(labels: &[S]) -> Option<Self> {
        labels
            .iter()
            .map(|s| QuadSlot::from_pair_label(s.as_ref()))
            .collect::<Option<Vec<_>>>()
            .map(Self::from_slots)
    }

    pub fn tet_count(&self) -> usize {
        self.pi_quads.len()
    }

    pub fn slots(&self) -> &[QuadSlot] {
        &self.pi_quads
    }

    pub fn pi_quad(&self, tet: usize) -> QuadId {
        QuadId::new(tet, self.pi_quads[tet])
    }

    pub fn is_pi(&self, q: QuadId) -> bool {
        self.pi_quads[q.tet] == q.slot
    }

    pub fn pair_labels(&self) -> Vec<String> {
        self.pi_quads
            .iter()
            .map(|s| s.pair_label().to_owned())
            .collect()
    }

    pub fn assignment(&self) -> AngleAssignment {
        let values = (0..3 * self.pi_quads.len())
            .map(|i| {
                if self.is_pi(QuadId::from_index(i)) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        AngleAssignment::new(values)
    }

    /// Number of `pi` angles at each edge class.
    pub fn pi_counts(&self, tri: &Triangulation) -> Vec<usize> {
        let mut counts = vec![0; tri.edge_count()];
        for (t, slot) in self.pi_quads.iter().enumerate() {
            for (a, b) in slot.dual_edges() {
                counts[tri.edge_of(t, a, b)] += 1;
            }
        }
        counts
    }

    /// Follows a vertex relabelling of the triangulation.
    pub fn relabel(&self, relabelling: &[Perm4]) -> Self {
        TautAngleStructure {
            pi_quads: self
                .pi_quads
                .iter()
                .zip(relabelling)
                .map(|(s, p)| s.relabel(*p))
                .collect(),
        }
    }

    pub fn validate(&self, tri: &Triangulation) -> Result<(), StructureError> {
        if self.pi_quads.len() != tri.tet_count() {
            return Err(StructureError::DimensionMismatch {
                expected: tri.tet_count(),
                got: self.pi_quads.len(),
            });
        }
        if let Some((edge, &count)) = self
            .pi_counts(tri)
            .iter()
            .enumerate()
            .find(|(_, &c)| c != 2)
        {
            return Err(StructureError::InvalidTaut(format!(
                "edge {edge} has {count} pi angles"
            )));
        }
        Ok(())
    }

    pub fn is_valid(&self, tri: &Triangulation) -> bool {
        self.validate(tri).is_ok()
    }
}

impl fmt::Display for TautAngleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.pair_labels();
        write!(f, "[{}]", labels.join(" | "))
    }
}

/// All taut angle structures, in lexicographic order of the per-tetrahedron
/// slot indices.
///
/// Depth-first over tetrahedra in index order. An edge is abandoned as soon
/// as it has more than two `pi` angles or can no longer reach two.
pub fn enumerate_taut_angle_structures(tri: &Triangulation) -> Vec<TautAngleStructure> {
    let n = tri.tet_count();
    let edges = tri.edge_count();
    // contribution[t][slot] = edge classes (with multiplicity) given pi.
    let contribution: Vec<[[usize; 2]; 3]> = (0..n)
        .map(|t| {
            QuadSlot::ALL.map(|s| {
                let [(a, b), (c, d)] = s.dual_edges();
                [tri.edge_of(t, a, b), tri.edge_of(t, c, d)]
            })
        })
        .collect();
    // Upper bound on pi angles an edge can still collect from tetrahedra t..n.
    let mut potential = vec![vec![0u32; edges]; n + 1];
    for t in (0..n).rev() {
        let mut here = potential[t + 1].clone();
        let mut best = vec![0u32; edges];
        for slot in &contribution[t] {
            let mut local = vec![0u32; edges];
            for &e in slot {
                local[e] += 1;
            }
            for e in 0..edges {
                best[e] = best[e].max(local[e]);
            }
        }
        for e in 0..edges {
            here[e] += best[e];
        }
        potential[t] = here;
    }

    struct Search<'a> {
        contribution: &'a [[[usize; 2]; 3]],
        potential: &'a [Vec<u32>],
        counts: Vec<u32>,
        chosen: Vec<QuadSlot>,
        out: Vec<TautAngleStructure>,
    }

    impl Search<'_> {
        fn feasible(&self, t: usize) -> bool {
            self.counts
                .iter()
                .zip(&self.potential[t])
                .all(|(&c, &p)| c <= 2 && c + p >= 2)
        }

        fn go(&mut self, t: usize) {
            if t == self.contribution.len() {
                if self.counts.iter().all(|&c| c == 2) {
                    self.out
                        .push(TautAngleStructure::from_slots(self.chosen.clone()));
                }
                return;
            }
            for slot in QuadSlot::ALL {
                let edges = self.contribution[t][slot.index()];
                for &e in &edges {
                    self.counts[e] += 1;
                }
                if self.feasible(t + 1) {
                    self.chosen.push(slot);
                    self.go(t + 1);
                    self.chosen.pop();
                }
                for &e in &edges {
                    self.counts[e] -= 1;
                }
            }
        }
    }

    let mut search = Search {
        contribution: &contribution,
        potential: &potential,
        counts: vec![0; edges],
        chosen: Vec::with_capacity(n),
        out: Vec::new(),
    };
    if search.feasible(0) {
        search.go(0);
    }
    search.out
}

/// A strict angle structure and its smallest angle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictWitness {
    pub assignment: AngleAssignment,
    pub slack: Rational,
}

/// Looks for a strict angle structure by maximising the smallest angle.
///
/// Variables are `alpha(q) = t + s_q` with `s_q >= 0` and `t = t+ - t-`.
/// The optimum `t*` is positive exactly when a strict structure exists,
/// and the optimal vertex is then returned as the witness.
pub fn strict_angle_structure(tri: &Triangulation) -> Option<StrictWitness> {
    let quads = tri.quad_count();
    let (t_plus, t_minus) = (quads, quads + 1);
    let mut lp = LinearProgram::new(quads + 2);
    for t in 0..tri.tet_count() {
        let coeffs = QuadSlot::ALL
            .iter()
            .map(|&s| (QuadId::new(t, s).index(), rat(1)))
            .chain([(t_plus, rat(3)), (t_minus, rat(-3))]);
        lp.add_equality(coeffs, rat(1));
    }
    for e in 0..tri.edge_count() {
        let seq = tri.quad_sequence(e);
        let k = seq.facing.len() as i64;
        let coeffs = seq
            .facing
            .iter()
            .map(|q| (q.index(), rat(1)))
            .chain([(t_plus, rat(k)), (t_minus, rat(-k))]);
        lp.add_equality(coeffs, rat(2));
    }
    lp.set_objective([(t_plus, rat(1)), (t_minus, rat(-1))]);
    let LpOutcome::Optimal { value, solution } = lp.maximize() else {
        return None;
    };
    if !value.is_positive() {
        return None;
    }
    let values: Vec<Rational> = solution[..quads].iter().map(|s| s + &value).collect();
    let assignment = AngleAssignment::new(values);
    let slack = assignment.min().cloned().unwrap_or_else(Rational::zero);
    Some(StrictWitness { assignment, slack })
}

/// Every tetrahedron edge pair in `TET_EDGES` order with its angle, for display.
pub fn tet_angles(angles: &AngleAssignment, tet: usize) -> [(String, Rational); 6] {
    TET_EDGES.map(|(a, b)| {
        let q = QuadId::new(tet, QuadSlot::dual_to(a, b));
        (format!("e{a}{b}"), angles.get(q).clone())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::ratio;
    use crate::triangulation::{orient, parse_tgl};

    const M004: &str = "tets 2
0 : 1 0123 1 1320 1 3210 1 3102
1 : 0 0123 0 3210 0 2130 0 3021
";

    fn m004() -> Triangulation {
        orient(&parse_tgl(M004).unwrap()).unwrap().triangulation
    }

    #[test]
    fn thirds_on_degree_six_edges() {
        let tri = m004();
        let thirds = AngleAssignment::uniform(2, ratio(1, 3));
        assert!(is_generalised_angle_structure(&tri, &thirds).unwrap());
        assert_eq!(semi_angle_check(&tri, &thirds).unwrap(), AngleClass::Strict);
    }

    #[test]
    fn wrong_length_is_an_error() {
        let tri = m004();
        let short = AngleAssignment::uniform(1, ratio(1, 3));
        assert_eq!(
            is_generalised_angle_structure(&tri, &short),
            Err(StructureError::DimensionMismatch {
                expected: 6,
                got: 3
            })
        );
    }

    #[test]
    fn missing_quad_is_an_error() {
        let mut map = BTreeMap::new();
        for i in 0..5 {
            map.insert(QuadId::from_index(i), ratio(1, 3));
        }
        assert_eq!(
            AngleAssignment::from_map(2, &map),
            Err(StructureError::MissingQuad("1:Q03_12".into()))
        );
    }

    #[test]
    fn taut_structures_are_generalised() {
        let tri = m004();
        let all = enumerate_taut_angle_structures(&tri);
        assert!(!all.is_empty());
        for s in &all {
            assert!(s.is_valid(&tri));
            let a = s.assignment();
            assert_eq!(semi_angle_check(&tri, &a).unwrap(), AngleClass::Taut);
        }
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, all);
    }

    #[test]
    fn strict_witness_for_m004() {
        let tri = m004();
        let w = strict_angle_structure(&tri).expect("m004 has a strict structure");
        assert!(w.slack.is_positive());
        assert!(is_generalised_angle_structure(&tri, &w.assignment).unwrap());
        assert_eq!(
            semi_angle_check(&tri, &w.assignment).unwrap(),
            AngleClass::Strict
        );
        // Regular ideal tetrahedra are the max-min point here.
        assert_eq!(w.slack, ratio(1, 3));
    }

    #[test]
    fn pair_label_round_trip() {
        let s = TautAngleStructure::from_pair_labels(&["e02,e13", "e03,e12"]).unwrap();
        assert_eq!(s.slots(), &[QuadSlot::Q02_13, QuadSlot::Q03_12]);
        assert_eq!(s.pair_labels(), vec!["e02,e13", "e03,e12"]);
        assert!(TautAngleStructure::from_pair_labels(&["e02,e12"]).is_none());
    }
}
