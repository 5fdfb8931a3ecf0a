//! Layered triangulations of once-punctured torus bundles.
//!
//! The fibre is `(R^2 \ Z^2) / Z^2` triangulated by three edges of slopes
//! `M(1,0)`, `M(0,1)`, `M(1,1)` for some `M` in `SL(2, Z)`. Each letter of
//! the word multiplies `M` on the right by `R = [[1,1],[0,1]]` or
//! `L = [[1,0],[1,1]]`, which is one diagonal exchange, realised by one
//! tetrahedron. The last layer is glued back to the first through the
//! product of the letters.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::angle::TautAngleStructure;
use crate::error::WordError;
use crate::perm::Perm4;
use crate::quad::QuadSlot;
use crate::triangulation::{orient, Gluing, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    R,
    L,
}

impl Letter {
    fn matrix(self) -> Mat {
        match self {
            Letter::R => [[1, 1], [0, 1]],
            Letter::L => [[1, 0], [1, 1]],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonodromyWord(Vec<Letter>);

impl MonodromyWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        let word = MonodromyWord(letters);
        if !word.0.contains(&Letter::R) || !word.0.contains(&Letter::L) {
            return Err(WordError::Degenerate(word.to_string()));
        }
        Ok(word)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cyclic rotation by `k` letters.
    pub fn rotated(&self, k: usize) -> Self {
        let mut v = self.0.clone();
        let len = v.len();
        v.rotate_left(k % len);
        MonodromyWord(v)
    }

    /// Every word of the given length using both letters, in lexicographic
    /// order with `L < R`.
    pub fn all_of_length(len: usize) -> Vec<MonodromyWord> {
        (0..1u64 << len)
            .filter_map(|bits| {
                let letters = (0..len)
                    .map(|i| {
                        if bits >> (len - 1 - i) & 1 == 1 {
                            Letter::R
                        } else {
                            Letter::L
                        }
                    })
                    .collect();
                MonodromyWord::new(letters).ok()
            })
            .collect()
    }
}

impl FromStr for MonodromyWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .trim()
            .chars()
            .enumerate()
            .map(|(position, c)| match c {
                'R' | 'r' => Ok(Letter::R),
                'L' | 'l' => Ok(Letter::L),
                letter => Err(WordError::BadLetter { letter, position }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        MonodromyWord::new(letters)
    }
}

impl fmt::Display for MonodromyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::R => "R",
                Letter::L => "L",
            })?;
        }
        Ok(())
    }
}

/// Deterministic word of the given length containing both letters. Draws
/// from ChaCha8 seeded with `seed`, redrawing until both letters appear.
pub fn random_word(length: usize, seed: u64) -> Result<MonodromyWord, WordError> {
    if length < 2 {
        return Err(WordError::TooShort(length));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let letters = (0..length)
            .map(|_| {
                if rng.random::<bool>() {
                    Letter::R
                } else {
                    Letter::L
                }
            })
            .collect();
        if let Ok(w) = MonodromyWord::new(letters) {
            return Ok(w);
        }
    }
}

type Mat = [[i64; 2]; 2];
type Vec2 = [i64; 2];

fn mul(a: Mat, b: Mat) -> Mat {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn apply(m: Mat, v: Vec2) -> Vec2 {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

/// Inverse of a determinant-one matrix.
fn inverse(m: Mat) -> Mat {
    [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]]
}

fn sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

/// Lattice positions of the four vertices of a layer's tetrahedron. The
/// bottom diagonal `13` is the edge being removed and the top diagonal `02`
/// the one replacing it.
fn layer_vertices(before: Mat, letter: Letter) -> [Vec2; 4] {
    let (f, g) = match letter {
        Letter::R => (apply(before, [1, 0]), apply(before, [1, 1])),
        Letter::L => (apply(before, [1, 1]), apply(before, [0, 1])),
    };
    [[0, 0], f, [f[0] + g[0], f[1] + g[1]], g]
}

const TOP_FACES: [u8; 2] = [1, 3];
const BOTTOM_FACES: [u8; 2] = [0, 2];

fn face_vertices(face: u8) -> [u8; 3] {
    let mut out = [0; 3];
    for (k, v) in (0..4).filter(|&v| v != face).enumerate() {
        out[k] = v;
    }
    out
}

/// The gluing from `face` of a tetrahedron with vertex positions `upper`
/// onto a face of `lower`, if the two lattice triangles agree up to
/// translation.
fn match_face(
    face: u8,
    upper: &[Vec2; 4],
    lower_faces: &[u8],
    lower: &[Vec2; 4],
) -> Option<(u8, Perm4)> {
    let src = face_vertices(face);
    for &lf in lower_faces {
        let dst = face_vertices(lf);
        for p in Perm4::all().filter(|p| p.apply(face) == lf) {
            let shift = sub(lower[p.apply(src[0]) as usize], upper[src[0] as usize]);
            let fits = src
                .iter()
                .all(|&v| sub(lower[p.apply(v) as usize], upper[v as usize]) == shift);
            if fits && dst.iter().all(|&d| src.iter().any(|&v| p.apply(v) == d)) {
                return Some((lf, p));
            }
        }
    }
    None
}

/// The layered triangulation of the bundle with monodromy `word`, oriented,
/// together with its layered taut angle structure (the two diagonals of
/// each tetrahedron carry `pi`).
pub fn layered_ptb(word: &MonodromyWord) -> (Triangulation, TautAngleStructure) {
    let n = word.len();
    let mut before = [[1, 0], [0, 1]];
    let mut layers = Vec::with_capacity(n);
    for &letter in word.letters() {
        layers.push(layer_vertices(before, letter));
        before = mul(before, letter.matrix());
    }
    let back = inverse(before);
    let mut gluings = vec![[Gluing::new(0, Perm4::IDENTITY); 4]; n];
    for k in 0..n {
        let next = (k + 1) % n;
        let upper = if next == 0 {
            layers[k].map(|v| apply(back, v))
        } else {
            layers[k]
        };
        for face in TOP_FACES {
            let (lf, p) = match_face(face, &upper, &BOTTOM_FACES, &layers[next])
                .expect("consecutive layers share their faces");
            gluings[k][face as usize] = Gluing::new(next, p);
            gluings[next][lf as usize] = Gluing::new(k, p.inverse());
        }
    }
    let tri = Triangulation::new(gluings).expect("layered gluings are consistent");
    let taut = TautAngleStructure::from_slots(vec![QuadSlot::Q02_13; n]);
    let oriented = orient(&tri).expect("bundles are orientable");
    let taut = taut.relabel(&oriented.relabelling);
    (oriented.triangulation, taut)
}
