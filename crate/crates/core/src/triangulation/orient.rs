use std::collections::VecDeque;

use crate::error::TriangulationError;
use crate::perm::Perm4;

use super::Triangulation;

/// A coherently oriented copy of a triangulation together with the vertex
/// relabelling applied to each tetrahedron.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Oriented {
    pub triangulation: Triangulation,
    /// `relabelling[t]` sends old vertex labels of `t` to new ones.
    pub relabelling: Vec<Perm4>,
}

impl Oriented {
    pub fn flipped(&self) -> impl Iterator<Item = usize> + '_ {
        self.relabelling
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_identity())
            .map(|(t, _)| t)
    }
}

/// Relabelling used on tetrahedra whose orientation has to be reversed.
pub const FLIP: Perm4 = Perm4::SWAP_23;

/// Makes every face pairing odd by swapping vertices 2 and 3 of some
/// tetrahedra. The lowest-numbered tetrahedron of each component keeps its
/// labels, so an already oriented input comes back unchanged.
pub fn orient(tri: &Triangulation) -> Result<Oriented, TriangulationError> {
    let n = tri.tet_count();
    let mut flip: Vec<Option<bool>> = vec![None; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if flip[root].is_some() {
            continue;
        }
        flip[root] = Some(false);
        queue.push_back(root);
        while let Some(t) = queue.pop_front() {
            let here = flip[t].unwrap();
            for f in 0..4 {
                let g = tri.gluing(t, f);
                // An even gluing joins tetrahedra of opposite orientation.
                let want = here ^ !g.perm.is_odd();
                match flip[g.tet] {
                    None => {
                        flip[g.tet] = Some(want);
                        queue.push_back(g.tet);
                    }
                    Some(have) if have != want => return Err(TriangulationError::NonOrientable),
                    Some(_) => {}
                }
            }
        }
    }
    let relabelling: Vec<Perm4> = flip
        .into_iter()
        .map(|f| {
            if f == Some(true) {
                FLIP
            } else {
                Perm4::IDENTITY
            }
        })
        .collect();
    let triangulation = if relabelling.iter().all(|p| p.is_identity()) {
        tri.clone()
    } else {
        tri.relabel(&relabelling)?
    };
    debug_assert!(triangulation.is_oriented());
    Ok(Oriented {
        triangulation,
        relabelling,
    })
}
