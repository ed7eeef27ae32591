use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::perm::{Perm, EDGES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tetrahedron {
    /// Entry `i` glues the face opposite vertex `i`. `None` leaves it open.
    pub gluings: [Option<Gluing>; 4],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub name: String,
    pub tets: Vec<Tetrahedron>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotInvolution { tet: usize, face: u8 },
    SelfGlued { tet: usize, face: u8 },
    NotClosed { tet: usize, face: u8 },
    EdgeReversal { tet: usize, edge: (u8, u8) },
    Empty,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NotInvolution { tet, face } => {
                write!(f, "not an involution (tet {tet}, face {face})")
            }
            Violation::SelfGlued { tet, face } => {
                write!(f, "self-glued face (tet {tet}, face {face})")
            }
            Violation::NotClosed { tet, face } => {
                write!(f, "not closed (tet {tet}, face {face})")
            }
            Violation::EdgeReversal { tet, edge } => {
                write!(f, "edge reversal (tet {tet}, edge {}{})", edge.0, edge.1)
            }
            Violation::Empty => write!(f, "no tetrahedra"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl Triangulation {
    pub fn new(name: impl Into<String>, tets: Vec<Tetrahedron>) -> Self {
        Triangulation {
            name: name.into(),
            tets,
        }
    }

    /// Builds a closed triangulation from `(tet, perm)` pairs.
    pub fn from_table(name: impl Into<String>, table: &[[(usize, [u8; 4]); 4]]) -> Self {
        let tets = table
            .iter()
            .map(|row| Tetrahedron {
                gluings: core::array::from_fn(|f| {
                    let (tet, p) = row[f];
                    Some(Gluing {
                        tet,
                        perm: Perm::new(p).expect("permutation"),
                    })
                }),
            })
            .collect();
        Triangulation::new(name, tets)
    }

    pub fn size(&self) -> usize {
        self.tets.len()
    }

    /// Gluing of `face` of `tet`. Panics on an open face, so only use on
    /// validated triangulations.
    #[inline]
    pub fn gluing(&self, tet: usize, face: u8) -> Gluing {
        self.tets[tet].gluings[face as usize].expect("closed triangulation")
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.tets.is_empty() {
            violations.push(Violation::Empty);
        }
        let t = self.tets.len();
        for (a, tet) in self.tets.iter().enumerate() {
            for f in 0..4u8 {
                let Some(g) = tet.gluings[f as usize] else {
                    violations.push(Violation::NotClosed { tet: a, face: f });
                    continue;
                };
                let f2 = g.perm.apply(f);
                if g.tet == a && f2 == f {
                    violations.push(Violation::SelfGlued { tet: a, face: f });
                    continue;
                }
                let back = if g.tet < t {
                    self.tets[g.tet].gluings[f2 as usize]
                } else {
                    None
                };
                let ok = matches!(back, Some(b) if b.tet == a && b.perm == g.perm.inverse());
                if !ok {
                    violations.push(Violation::NotInvolution { tet: a, face: f });
                }
            }
        }
        if violations.is_empty() {
            if let Err(e) = crate::skeleton::edge_walks(self) {
                violations.push(e);
            }
        }
        ValidationReport { violations }
    }

    /// Disjoint union, with `other`'s tetrahedra appended after ours.
    pub fn disjoint_union(&self, other: &Triangulation) -> Triangulation {
        let off = self.tets.len();
        let mut tets = self.tets.clone();
        for tet in &other.tets {
            let mut g = tet.gluings;
            for x in g.iter_mut().flatten() {
                x.tet += off;
            }
            tets.push(Tetrahedron { gluings: g });
        }
        let mut name = self.name.clone();
        name.push('+');
        name.push_str(&other.name);
        Triangulation::new(name, tets)
    }

    /// Relabels: new tet `i` is old tet `order[i]`, and old vertex `v` of old
    /// tet `order[i]` becomes `relabel[i](v)`.
    pub fn relabeled(&self, order: &[usize], relabel: &[Perm]) -> Triangulation {
        let mut new_of_old = alloc::vec![0usize; order.len()];
        for (i, &o) in order.iter().enumerate() {
            new_of_old[o] = i;
        }
        let tets = order
            .iter()
            .enumerate()
            .map(|(i, &o)| {
                let r = relabel[i];
                let mut gluings = [None; 4];
                for f in 0..4u8 {
                    if let Some(g) = self.tets[o].gluings[f as usize] {
                        let j = new_of_old[g.tet];
                        let perm = relabel[j].compose(g.perm).compose(r.inverse());
                        gluings[r.apply(f) as usize] = Some(Gluing { tet: j, perm });
                    }
                }
                Tetrahedron { gluings }
            })
            .collect();
        Triangulation::new(self.name.clone(), tets)
    }
}

/// Convenience iterator over all `(tet, edge)` incidences.
pub fn edge_incidences(t: usize) -> impl Iterator<Item = (usize, (u8, u8))> {
    (0..t).flat_map(|k| EDGES.iter().map(move |&e| (k, e)))
}
