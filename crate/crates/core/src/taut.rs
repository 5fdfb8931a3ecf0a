//! Taut structures (face coorientations) and veering colourings on top of a
//! taut angle structure.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::angle::TautAngleStructure;
use crate::error::StructureError;
use crate::perm::Perm4;
use crate::quad::{QuadSlot, TauConvention};
use crate::triangulation::Triangulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Colour {
    /// Right-veering.
    #[serde(rename = "R")]
    Red,
    /// Left-veering.
    #[serde(rename = "B")]
    Blue,
}

impl Colour {
    pub fn swapped(self) -> Self {
        match self {
            Colour::Red => Colour::Blue,
            Colour::Blue => Colour::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Colour::Red => 'R',
            Colour::Blue => 'B',
        }
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Slots whose dual edges a tetrahedron with the given `pi` slot forces to be
/// blue and red respectively.
pub fn demanded_slots(pi: QuadSlot, convention: TauConvention) -> (QuadSlot, QuadSlot) {
    let blue = convention.step(pi);
    (blue, convention.step(blue))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VeeringColouring {
    pub structure: TautAngleStructure,
    pub convention: TauConvention,
    /// Indexed by edge class.
    pub colours: Vec<Colour>,
    /// Edges no tetrahedron placed a demand on; coloured red.
    pub undemanded: Vec<usize>,
}

impl VeeringColouring {
    pub fn colour(&self, edge: usize) -> Colour {
        self.colours[edge]
    }

    /// Colour string such as `RRBB`, indexed by edge class.
    pub fn word(&self) -> String {
        self.colours.iter().map(|c| c.letter()).collect()
    }

    /// The same colouring with one edge's colour exchanged.
    pub fn swapped_at(&self, edge: usize) -> Self {
        let mut out = self.clone();
        out.colours[edge] = out.colours[edge].swapped();
        out
    }

    /// True if every tetrahedron's demands are met.
    pub fn satisfies_demands(&self, tri: &Triangulation) -> bool {
        self.colours.len() == tri.edge_count()
            && demands(tri, &self.structure, self.convention).all(|(e, c)| self.colours[e] == c)
    }
}

fn demands<'a>(
    tri: &'a Triangulation,
    taut: &'a TautAngleStructure,
    convention: TauConvention,
) -> impl Iterator<Item = (usize, Colour)> + 'a {
    taut.slots().iter().enumerate().flat_map(move |(t, &pi)| {
        let (blue, red) = demanded_slots(pi, convention);
        let paint = move |slot: QuadSlot, colour| {
            slot.dual_edges()
                .map(move |(a, b)| (tri.edge_of(t, a, b), colour))
        };
        paint(blue, Colour::Blue)
            .into_iter()
            .chain(paint(red, Colour::Red))
    })
}

/// The veering colouring of `taut`, if the per-tetrahedron demands agree.
pub fn find_veering_colouring(
    tri: &Triangulation,
    taut: &TautAngleStructure,
    convention: TauConvention,
) -> Result<Option<VeeringColouring>, StructureError> {
    taut.validate(tri)?;
    let mut colours: Vec<Option<Colour>> = vec![None; tri.edge_count()];
    for (e, c) in demands(tri, taut, convention) {
        match colours[e] {
            None => colours[e] = Some(c),
            Some(have) if have != c => return Ok(None),
            Some(_) => {}
        }
    }
    let undemanded: Vec<usize> = (0..colours.len())
        .filter(|&e| colours[e].is_none())
        .collect();
    Ok(Some(VeeringColouring {
        structure: taut.clone(),
        convention,
        colours: colours
            .into_iter()
            .map(|c| c.unwrap_or(Colour::Red))
            .collect(),
        undemanded,
    }))
}

/// A coorientation of the faces: per tetrahedron, which faces point inwards.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TautStructure {
    structure: TautAngleStructure,
    inward: Vec<[bool; 4]>,
}

impl TautStructure {
    pub fn new(structure: TautAngleStructure, inward: Vec<[bool; 4]>) -> Self {
        TautStructure { structure, inward }
    }

    pub fn angle_structure(&self) -> &TautAngleStructure {
        &self.structure
    }

    /// Whether face `face` of `tet` points into `tet`.
    pub fn is_inward(&self, tet: usize, face: u8) -> bool {
        self.inward[tet][face as usize]
    }

    pub fn inward_faces(&self) -> &[[bool; 4]] {
        &self.inward
    }

    /// Diagonal shared by the two outward faces.
    pub fn top_diagonal(&self, tet: usize) -> (u8, u8) {
        self.pair(tet, true)
    }

    /// Diagonal shared by the two inward faces.
    pub fn bottom_diagonal(&self, tet: usize) -> (u8, u8) {
        self.pair(tet, false)
    }

    // Faces opposite the vertices of a diagonal point the same way; the
    // diagonal is on top when those faces are the inward ones.
    fn pair(&self, tet: usize, inward: bool) -> (u8, u8) {
        let mut v = (0..4u8).filter(|&f| self.inward[tet][f as usize] == inward);
        (v.next().unwrap(), v.next().unwrap())
    }

    pub fn reversed(&self) -> Self {
        TautStructure {
            structure: self.structure.clone(),
            inward: self.inward.iter().map(|f| f.map(|b| !b)).collect(),
        }
    }

    /// One sign per glued pair of faces, `+` when the coorientation points
    /// into the tetrahedron with the smaller `(tet, face)` key.
    pub fn face_signs(&self, tri: &Triangulation) -> Vec<((usize, u8), bool)> {
        let mut out = Vec::with_capacity(tri.face_count());
        for t in 0..tri.tet_count() {
            for f in 0..4u8 {
                let g = tri.gluing(t, f);
                if (t, f) < (g.tet, g.perm.apply(f)) {
                    out.push(((t, f), self.is_inward(t, f)));
                }
            }
        }
        out
    }

    pub fn validate(&self, tri: &Triangulation) -> Result<(), StructureError> {
        self.structure.validate(tri)?;
        if self.inward.len() != tri.tet_count() {
            return Err(StructureError::DimensionMismatch {
                expected: tri.tet_count(),
                got: self.inward.len(),
            });
        }
        for t in 0..tri.tet_count() {
            if self.inward[t].iter().filter(|&&b| b).count() != 2 {
                return Err(StructureError::InvalidTaut(format!(
                    "tetrahedron {t} does not have two inward faces"
                )));
            }
            let (a, b) = self.top_diagonal(t);
            if QuadSlot::dual_to(a, b) != self.structure.slots()[t] {
                return Err(StructureError::Incompatible(format!(
                    "tetrahedron {t} has its flat diagonals on the wrong quad"
                )));
            }
            for f in 0..4u8 {
                let g = tri.gluing(t, f);
                if self.is_inward(t, f) == self.is_inward(g.tet, g.perm.apply(f)) {
                    return Err(StructureError::InvalidTaut(format!(
                        "face {f} of tetrahedron {t} points the same way on both sides"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn inward_for(slot: QuadSlot, flip: bool) -> [bool; 4] {
    let [(a, b), _] = slot.dual_edges();
    let mut out = [flip; 4];
    out[a as usize] = !flip;
    out[b as usize] = !flip;
    out
}

/// All coorientations inducing `taut`, sorted. Each connected component
/// contributes a factor of two (the global reversal) when one exists.
pub fn find_taut_structures(
    tri: &Triangulation,
    taut: &TautAngleStructure,
) -> Result<Vec<TautStructure>, StructureError> {
    taut.validate(tri)?;
    let n = tri.tet_count();
    let slots = taut.slots();
    let mut flip: Vec<Option<bool>> = vec![None; n];
    let mut component = vec![0usize; n];
    let mut components = 0;
    for root in 0..n {
        if flip[root].is_some() {
            continue;
        }
        flip[root] = Some(false);
        component[root] = components;
        let mut queue = VecDeque::from([root]);
        while let Some(t) = queue.pop_front() {
            let here = inward_for(slots[t], flip[t].unwrap());
            for f in 0..4u8 {
                let g = tri.gluing(t, f);
                let far = g.perm.apply(f) as usize;
                let want = inward_for(slots[g.tet], false)[far] == here[f as usize];
                match flip[g.tet] {
                    None => {
                        flip[g.tet] = Some(want);
                        component[g.tet] = components;
                        queue.push_back(g.tet);
                    }
                    Some(have) if have != want => return Ok(Vec::new()),
                    Some(_) => {}
                }
            }
        }
        components += 1;
    }
    let base: Vec<bool> = flip.into_iter().map(Option::unwrap).collect();
    let mut out: Vec<TautStructure> = (0..1u64 << components.min(20))
        .map(|mask| {
            let inward = (0..n)
                .map(|t| inward_for(slots[t], base[t] ^ (mask >> component[t] & 1 == 1)))
                .collect();
            TautStructure::new(taut.clone(), inward)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Positions in the walk around `edge` whose facing quad carries `pi`.
fn pi_positions(
    tri: &Triangulation,
    taut: &TautAngleStructure,
    edge: usize,
) -> Result<(usize, usize), StructureError> {
    let corners = &tri.edge_classes()[edge].corners;
    let pis: Vec<usize> = (0..corners.len())
        .filter(|&i| taut.is_pi(corners[i].facing_quad()))
        .collect();
    match pis[..] {
        [i, j] => Ok((i, j)),
        _ => Err(StructureError::PiCount {
            edge,
            count: pis.len(),
        }),
    }
}

/// Lengths of the two runs of 0-angle corners between the `pi` corners,
/// starting after the first `pi` corner in walk order.
pub fn one_sided_degrees(
    tri: &Triangulation,
    taut: &TautAngleStructure,
    edge: usize,
) -> Result<(usize, usize), StructureError> {
    let (i, j) = pi_positions(tri, taut, edge)?;
    let k = tri.edge_classes()[edge].degree();
    Ok((j - i - 1, k - (j - i) - 1))
}

/// Vertices of a taut tetrahedron in counterclockwise order seen from above,
/// starting at the smaller top vertex. Which of the two candidate squares is
/// counterclockwise is tied to the `tau` convention through the parity of
/// the vertex sequence.
pub fn ccw_square(top: (u8, u8), bottom: (u8, u8), convention: TauConvention) -> [u8; 4] {
    let (x, y) = top;
    let (p, r) = bottom;
    let candidate = [x, p, y, r];
    let odd = Perm4::new(candidate)
        .expect("diagonals partition 0123")
        .is_odd();
    if odd == (convention == TauConvention::Reversed) {
        candidate
    } else {
        [x, r, y, p]
    }
}

/// Colour of the 0-angle edge `{a, b}` of `tet` read off from which way the
/// third vertex moves, going from the lower face on the edge to the upper
/// one. Red if it moves from left to right. `None` for the diagonals.
pub fn handedness(
    ts: &TautStructure,
    tet: usize,
    a: u8,
    b: u8,
    convention: TauConvention,
) -> Option<Colour> {
    let bottom = ts.bottom_diagonal(tet);
    let square = ccw_square(ts.top_diagonal(tet), bottom, convention);
    let pos = |v: u8| square.iter().position(|&w| w == v).unwrap();
    let (ia, ib) = (pos(a), pos(b));
    let start = if (ia + 1) % 4 == ib {
        ia
    } else if (ib + 1) % 4 == ia {
        ib
    } else {
        return None;
    };
    let left = square[(start + 3) % 4];
    let lower_third = if bottom.0 == a || bottom.0 == b {
        bottom.1
    } else {
        bottom.0
    };
    Some(if lower_third == left {
        Colour::Red
    } else {
        Colour::Blue
    })
}

/// Edge colours read from the stacking geometry of `ts`; `None` if two
/// tetrahedra disagree about an edge.
pub fn colours_from_stacking(
    tri: &Triangulation,
    ts: &TautStructure,
    convention: TauConvention,
) -> Option<Vec<Colour>> {
    let mut colours = Vec::with_capacity(tri.edge_count());
    for class in tri.edge_classes() {
        let mut seen: Option<Colour> = None;
        for c in &class.corners {
            let (a, b) = c.ends();
            if let Some(col) = handedness(ts, c.tet, a, b, convention) {
                if seen.is_some_and(|s| s != col) {
                    return None;
                }
                seen = Some(col);
            }
        }
        colours.push(seen.unwrap_or(Colour::Red));
    }
    Some(colours)
}

/// Checks that on each side of every edge the tetrahedra stack upwards from
/// the one where the edge is the top diagonal to the one where it is the
/// bottom diagonal, and that their third vertices sweep in the direction the
/// edge's colour predicts.
pub fn check_stacking_order(
    tri: &Triangulation,
    ts: &TautStructure,
    colouring: &VeeringColouring,
) -> Result<bool, StructureError> {
    if ts.angle_structure() != &colouring.structure {
        return Err(StructureError::Incompatible(
            "taut structure and colouring use different taut angle structures".into(),
        ));
    }
    if colouring.colours.len() != tri.edge_count() {
        return Err(StructureError::DimensionMismatch {
            expected: tri.edge_count(),
            got: colouring.colours.len(),
        });
    }
    ts.validate(tri)?;
    for (e, class) in tri.edge_classes().iter().enumerate() {
        let (i, j) = pi_positions(tri, ts.angle_structure(), e)?;
        let k = class.degree();
        let is_top = |idx: usize| {
            let c = &class.corners[idx];
            let (a, b) = c.ends();
            let (x, y) = ts.top_diagonal(c.tet);
            (a.min(b), a.max(b)) == (x.min(y), x.max(y))
        };
        if is_top(i) == is_top(j) {
            return Ok(false);
        }
        // Walking forward from corner i, a side climbs iff it leaves the
        // tetrahedron where the edge is on top.
        for (from, len, climbs) in [(i, j - i - 1, is_top(i)), (j, k - (j - i) - 1, is_top(j))] {
            for step in 1..=len {
                let c = &class.corners[(from + step) % k];
                let up = ts.is_inward(c.tet, c.entry_face()) && !ts.is_inward(c.tet, c.exit_face());
                let down =
                    !ts.is_inward(c.tet, c.entry_face()) && ts.is_inward(c.tet, c.exit_face());
                if !(if climbs { up } else { down }) {
                    return Ok(false);
                }
                let (a, b) = c.ends();
                if handedness(ts, c.tet, a, b, colouring.convention) != Some(colouring.colours[e]) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
