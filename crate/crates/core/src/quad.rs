//! Normal quadrilateral types and the orientation-induced 3-cycle on them.
//!
//! Each tetrahedron carries three quadrilateral types, one for each pair of
//! opposite edges. The slot `Q0a_bc` is the quad disjoint from the edges
//! `{0,a}` and `{b,c}`; in pair notation it is written `e0a,ebc`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::perm::Perm4;

/// The six edges of a tetrahedron, in the order used for edge indices.
pub const TET_EDGES: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index of the tetrahedron edge `{a, b}` in [`TET_EDGES`].
pub fn tet_edge_index(a: u8, b: u8) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not a tetrahedron edge: {{{a},{b}}}"),
    }
}

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum QuadSlot {
    Q01_23,
    Q02_13,
    Q03_12,
}

impl QuadSlot {
    pub const ALL: [QuadSlot; 3] = [QuadSlot::Q01_23, QuadSlot::Q02_13, QuadSlot::Q03_12];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> QuadSlot {
        Self::ALL[i]
    }

    /// The pair of opposite edges this quad is disjoint from.
    pub fn dual_edges(self) -> [(u8, u8); 2] {
        match self {
            QuadSlot::Q01_23 => [(0, 1), (2, 3)],
            QuadSlot::Q02_13 => [(0, 2), (1, 3)],
            QuadSlot::Q03_12 => [(0, 3), (1, 2)],
        }
    }

    /// The quad dual to the tetrahedron edge `{a, b}`.
    pub fn dual_to(a: u8, b: u8) -> QuadSlot {
        let other = if a == 0 || b == 0 {
            a.max(b)
        } else {
            6 - a - b
        };
        match other {
            1 => QuadSlot::Q01_23,
            2 => QuadSlot::Q02_13,
            3 => QuadSlot::Q03_12,
            _ => panic!("not a tetrahedron edge: {{{a},{b}}}"),
        }
    }

    /// Where this slot goes when the tetrahedron's vertices are renamed by `perm`.
    pub fn relabel(self, perm: Perm4) -> QuadSlot {
        let (a, b) = self.dual_edges()[0];
        QuadSlot::dual_to(perm.apply(a), perm.apply(b))
    }

    pub fn label(self) -> &'static str {
        match self {
            QuadSlot::Q01_23 => "Q01_23",
            QuadSlot::Q02_13 => "Q02_13",
            QuadSlot::Q03_12 => "Q03_12",
        }
    }

    /// Edge-pair notation, e.g. `e02,e13`.
    pub fn pair_label(self) -> &'static str {
        match self {
            QuadSlot::Q01_23 => "e01,e23",
            QuadSlot::Q02_13 => "e02,e13",
            QuadSlot::Q03_12 => "e03,e12",
        }
    }

    /// Accepts `e02,e13`, `e13,e02`, `e02 e13` and the slot names.
    pub fn from_pair_label(s: &str) -> Option<QuadSlot> {
        let s = s.trim();
        if let Some(slot) = Self::ALL.into_iter().find(|q| q.label() == s) {
            return Some(slot);
        }
        let cleaned: String = s.chars().filter(|c| c.is_ascii_digit()).collect();
        let digits: Vec<u8> = cleaned.bytes().map(|b| b - b'0').collect();
        if digits.len() != 4 {
            return None;
        }
        let mut sorted = digits.clone();
        sorted.sort_unstable();
        if sorted != [0, 1, 2, 3] || digits[0] == digits[1] {
            return None;
        }
        let slot = QuadSlot::dual_to(digits[0], digits[1]);
        (slot == QuadSlot::dual_to(digits[2], digits[3])).then_some(slot)
    }
}

impl fmt::Display for QuadSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Which of the two cyclic orders on the three slots is taken as `tau`.
///
/// `Standard` is `Q01_23 -> Q02_13 -> Q03_12 -> Q01_23`. Switching to
/// `Reversed` exchanges red and blue everywhere.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub enum TauConvention {
    #[default]
    Standard,
    Reversed,
}

impl TauConvention {
    pub fn step(self, slot: QuadSlot) -> QuadSlot {
        let shift = match self {
            TauConvention::Standard => 1,
            TauConvention::Reversed => 2,
        };
        QuadSlot::from_index((slot.index() + shift) % 3)
    }

    pub fn flipped(self) -> Self {
        match self {
            TauConvention::Standard => TauConvention::Reversed,
            TauConvention::Reversed => TauConvention::Standard,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct QuadId {
    pub tet: usize,
    pub slot: QuadSlot,
}

impl QuadId {
    pub fn new(tet: usize, slot: QuadSlot) -> Self {
        QuadId { tet, slot }
    }

    /// Column index `3 * tet + slot`.
    pub fn index(self) -> usize {
        3 * self.tet + self.slot.index()
    }

    pub fn from_index(i: usize) -> Self {
        QuadId::new(i / 3, QuadSlot::from_index(i % 3))
    }

    pub fn tau(self) -> Self {
        self.tau_with(TauConvention::Standard)
    }

    pub fn tau_with(self, convention: TauConvention) -> Self {
        QuadId::new(self.tet, convention.step(self.slot))
    }

    pub fn label(self) -> String {
        format!("{}:{}", self.tet, self.slot.label())
    }
}

impl fmt::Display for QuadId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.tet, self.slot)
    }
}

/// The orientation-induced 3-cycle on quad types, `Q01_23 -> Q02_13 -> Q03_12`.
pub fn tau(q: QuadId) -> QuadId {
    q.tau()
}
