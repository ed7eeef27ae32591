//! Orientation double cover.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::triangulation::{Gluing, Tetrahedron, Triangulation};

/// Corner-level covering data: cover tet `k` lies over base tet
/// `base[k]`, with identical vertex labels, and `deck[k]` is the other lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Covering {
    pub base: Vec<usize>,
    pub deck: Vec<usize>,
}

/// Lifts `(tet, sheet)` to cover tet `tet + sheet * t`. A gluing stays on
/// its sheet when its permutation is odd and switches sheets otherwise.
pub fn double_cover(tri: &Triangulation) -> Result<(Triangulation, Covering)> {
    if crate::skeleton::orientation(tri).is_some() {
        return Err(Error::AlreadyOrientable);
    }
    let t = tri.size();
    let mut tets = Vec::with_capacity(2 * t);
    for sheet in 0..2 {
        for tet in &tri.tets {
            let mut gluings = [None; 4];
            for (f, g) in tet.gluings.iter().enumerate() {
                if let Some(g) = g {
                    let s = if g.perm.is_odd() { sheet } else { 1 - sheet };
                    gluings[f] = Some(Gluing {
                        tet: g.tet + s * t,
                        perm: g.perm,
                    });
                }
            }
            tets.push(Tetrahedron { gluings });
        }
    }
    let base = (0..2 * t).map(|k| k % t).collect();
    let deck = (0..2 * t).map(|k| (k + t) % (2 * t)).collect();
    let mut name = tri.name.clone();
    name.push_str("-cover");
    Ok((Triangulation::new(name, tets), Covering { base, deck }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;
    use crate::skeleton::skeleton_summary;

    #[test]
    fn gieseking_cover_counts() {
        let (c, cov) = double_cover(&census::gieseking()).unwrap();
        assert!(c.validate().is_valid());
        let s = skeleton_summary(&c).unwrap();
        assert_eq!((s.t, s.e, s.v), (2, 2, 1));
        assert!(s.orientable);
        for k in 0..2 {
            assert_eq!(cov.deck[cov.deck[k]], k);
            assert_ne!(cov.deck[k], k);
        }
    }

    #[test]
    fn orientable_input_is_rejected() {
        assert_eq!(
            double_cover(&census::figure_eight()).unwrap_err(),
            Error::AlreadyOrientable
        );
    }
}
