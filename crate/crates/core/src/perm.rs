use std::fmt;
use std::str::FromStr;

/// A permutation of the four vertices `{0, 1, 2, 3}` of a tetrahedron.
///
/// Stored as its image list, so `Perm4([1, 0, 2, 3])` sends `0 -> 1` and `1 -> 0`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Perm4([u8; 4]);

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4([0, 1, 2, 3]);
    pub const SWAP_23: Perm4 = Perm4([0, 1, 3, 2]);

    /// Returns `None` unless `images` is a bijection of `{0, 1, 2, 3}`.
    pub fn new(images: [u8; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &i in &images {
            if i > 3 || seen[i as usize] {
                return None;
            }
            seen[i as usize] = true;
        }
        Some(Perm4(images))
    }

    pub fn transposition(a: u8, b: u8) -> Self {
        let mut images = [0, 1, 2, 3];
        images.swap(a as usize, b as usize);
        Perm4(images)
    }

    /// All 24 permutations in lexicographic order of their image lists.
    pub fn all() -> impl Iterator<Item = Perm4> {
        (0..4u8).flat_map(|a| {
            (0..4u8).flat_map(move |b| {
                (0..4u8).flat_map(move |c| (0..4u8).filter_map(move |d| Perm4::new([a, b, c, d])))
            })
        })
    }

    #[inline]
    pub fn apply(self, i: u8) -> u8 {
        self.0[i as usize]
    }

    pub fn images(self) -> [u8; 4] {
        self.0
    }

    pub fn inverse(self) -> Self {
        let mut inv = [0u8; 4];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm4(inv)
    }

    /// `self.compose(other)` is `x -> self(other(x))`.
    pub fn compose(self, other: Perm4) -> Self {
        Perm4([
            self.apply(other.0[0]),
            self.apply(other.0[1]),
            self.apply(other.0[2]),
            self.apply(other.0[3]),
        ])
    }

    pub fn is_odd(self) -> bool {
        let mut inversions = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 1
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }
}

impl Default for Perm4 {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a}{b}{c}{d}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` is not a permutation of 0123")]
pub struct BadPermutation(pub String);

impl FromStr for Perm4 {
    type Err = BadPermutation;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        if bytes.len() != 4 {
            return Err(BadPermutation(s.to_owned()));
        }
        let mut images = [0u8; 4];
        for (slot, &b) in images.iter_mut().zip(bytes) {
            if !b.is_ascii_digit() {
                return Err(BadPermutation(s.to_owned()));
            }
            *slot = b - b'0';
        }
        Perm4::new(images).ok_or_else(|| BadPermutation(s.to_owned()))
    }
}
