use core::fmt;

/// A permutation of the vertex labels `{0,1,2,3}` of a tetrahedron.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(pub [u8; 4]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2, 3]);

    /// Builds a permutation from images, returning `None` unless they are a
    /// rearrangement of `0..4`.
    pub fn new(images: [u8; 4]) -> Option<Perm> {
        let mut seen = [false; 4];
        for &x in &images {
            if x > 3 || seen[x as usize] {
                return None;
            }
            seen[x as usize] = true;
        }
        Some(Perm(images))
    }

    #[inline]
    pub fn apply(self, i: u8) -> u8 {
        self.0[i as usize]
    }

    pub fn inverse(self) -> Perm {
        let mut out = [0u8; 4];
        for i in 0..4u8 {
            out[self.0[i as usize] as usize] = i;
        }
        Perm(out)
    }

    /// `self.compose(other)` maps `i` to `self(other(i))`.
    pub fn compose(self, other: Perm) -> Perm {
        let mut out = [0u8; 4];
        for i in 0..4 {
            out[i] = self.0[other.0[i] as usize];
        }
        Perm(out)
    }

    pub fn is_odd(self) -> bool {
        let mut inv = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                if self.0[i] > self.0[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 1
    }

    pub fn sign(self) -> i64 {
        if self.is_odd() {
            -1
        } else {
            1
        }
    }

    /// All 24 permutations in lexicographic order of their image arrays.
    pub fn all() -> [Perm; 24] {
        let mut out = [Perm::IDENTITY; 24];
        let mut n = 0;
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        if let Some(p) = Perm::new([a, b, c, d]) {
                            out[n] = p;
                            n += 1;
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// The six edges of a tetrahedron as sorted vertex pairs.
pub const EDGES: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index into [`EDGES`] of the edge joining `a` and `b`.
pub fn edge_index(a: u8, b: u8) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not an edge: {a}{b}"),
    }
}

/// Opposite-edge pair containing edge `{a,b}`: 0 for 01/23, 1 for 02/13,
/// 2 for 03/12. Quad type `k` is the one disjoint from pair `k`.
pub fn pair(a: u8, b: u8) -> usize {
    match edge_index(a, b) {
        0 | 5 => 0,
        1 | 4 => 1,
        _ => 2,
    }
}

/// The two vertices of a tetrahedron other than `a` and `b`, increasing.
pub fn complement(a: u8, b: u8) -> (u8, u8) {
    let mut rest = (0..4u8).filter(|&v| v != a && v != b);
    (rest.next().unwrap(), rest.next().unwrap())
}

/// The quad of type `k` written as two vertex pairs `({0,k+1}, rest)`.
pub fn quad_split(k: usize) -> ((u8, u8), (u8, u8)) {
    let b = k as u8 + 1;
    ((0, b), complement(0, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twenty_four_perms_with_twelve_odd() {
        let all = Perm::all();
        assert_eq!(all.iter().filter(|p| p.is_odd()).count(), 12);
        for p in all {
            assert_eq!(p.compose(p.inverse()), Perm::IDENTITY);
        }
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Perm::new([0, 1, 1, 3]).is_none());
        assert!(Perm::new([0, 1, 2, 4]).is_none());
    }

    #[test]
    fn pairs_and_quads_are_disjoint() {
        for k in 0..3 {
            let ((a, b), (c, d)) = quad_split(k);
            assert_ne!(pair(a, c), k);
            assert_ne!(pair(a, d), k);
            assert_eq!(pair(a, b), k);
            assert_eq!(pair(c, d), k);
        }
    }
}
