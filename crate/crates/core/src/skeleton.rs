use alloc::vec;
use alloc::vec::Vec;

use crate::perm::{complement, edge_index, Perm, EDGES};
use crate::triangulation::{Triangulation, Violation};

/// One step of the walk around an edge: the edge `a→b` of `tet`, entered
/// through the face opposite `x` and left through the face opposite `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Incidence {
    pub tet: usize,
    pub a: u8,
    pub b: u8,
    pub x: u8,
    pub y: u8,
}

impl Incidence {
    pub fn next(self, tri: &Triangulation) -> Incidence {
        let g = tri.gluing(self.tet, self.y);
        let p = g.perm;
        Incidence {
            tet: g.tet,
            a: p.apply(self.a),
            b: p.apply(self.b),
            x: p.apply(self.y),
            y: p.apply(self.x),
        }
    }

    /// Whether `(a, b, x, y)` is an even rearrangement of `(0, 1, 2, 3)`.
    pub fn is_even(self) -> bool {
        !Perm([self.a, self.b, self.x, self.y]).is_odd()
    }

    pub fn edge(self) -> usize {
        edge_index(self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeClass {
    pub id: usize,
    pub walk: Vec<Incidence>,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.walk.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClass {
    pub id: usize,
    pub corners: Vec<(usize, u8)>,
}

/// Walks around every edge. Each walk starts at the least unvisited
/// `(tet, a<b)` incidence, oriented so `(a,b,x,y)` is even.
pub fn edge_walks(tri: &Triangulation) -> Result<Vec<EdgeClass>, Violation> {
    let t = tri.size();
    let mut seen = vec![[false; 6]; t];
    let mut out = Vec::new();
    for tet in 0..t {
        for &(a, b) in EDGES.iter() {
            if seen[tet][edge_index(a, b)] {
                continue;
            }
            let (c, d) = complement(a, b);
            let (x, y) = if Perm([a, b, c, d]).is_odd() {
                (d, c)
            } else {
                (c, d)
            };
            let start = Incidence { tet, a, b, x, y };
            let mut walk = Vec::new();
            let mut cur = start;
            loop {
                let e = cur.edge();
                if seen[cur.tet][e] {
                    return Err(Violation::EdgeReversal {
                        tet: cur.tet,
                        edge: EDGES[e],
                    });
                }
                seen[cur.tet][e] = true;
                walk.push(cur);
                cur = cur.next(tri);
                if cur == start {
                    break;
                }
            }
            out.push(EdgeClass {
                id: out.len(),
                walk,
            });
        }
    }
    Ok(out)
}

pub fn edge_classes(tri: &Triangulation) -> Result<Vec<EdgeClass>, crate::Error> {
    edge_walks(tri).map_err(|_| crate::Error::EdgeReversal)
}

pub fn vertex_classes(tri: &Triangulation) -> Vec<VertexClass> {
    let t = tri.size();
    let mut id = vec![[usize::MAX; 4]; t];
    let mut out = Vec::new();
    for tet in 0..t {
        for v in 0..4u8 {
            if id[tet][v as usize] != usize::MAX {
                continue;
            }
            let cls = out.len();
            let mut corners = Vec::new();
            let mut stack = vec![(tet, v)];
            id[tet][v as usize] = cls;
            while let Some((k, w)) = stack.pop() {
                corners.push((k, w));
                for f in 0..4u8 {
                    if f == w {
                        continue;
                    }
                    if let Some(g) = tri.tets[k].gluings[f as usize] {
                        let w2 = g.perm.apply(w);
                        if id[g.tet][w2 as usize] == usize::MAX {
                            id[g.tet][w2 as usize] = cls;
                            stack.push((g.tet, w2));
                        }
                    }
                }
            }
            corners.sort();
            out.push(VertexClass { id: cls, corners });
        }
    }
    out
}

/// Per-tet orientation signs (`+1` for tet 0) if the gluings admit a
/// coherent orientation, i.e. every gluing is odd after the signs are applied.
pub fn orientation(tri: &Triangulation) -> Option<Vec<i8>> {
    let t = tri.size();
    let mut sign = vec![0i8; t];
    for root in 0..t {
        if sign[root] != 0 {
            continue;
        }
        sign[root] = 1;
        let mut stack = vec![root];
        while let Some(k) = stack.pop() {
            for f in 0..4u8 {
                let Some(g) = tri.tets[k].gluings[f as usize] else {
                    continue;
                };
                let want = if g.perm.is_odd() { sign[k] } else { -sign[k] };
                if sign[g.tet] == 0 {
                    sign[g.tet] = want;
                    stack.push(g.tet);
                } else if sign[g.tet] != want {
                    return None;
                }
            }
        }
    }
    Some(sign)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonSummary {
    pub t: usize,
    pub e: usize,
    pub v: usize,
    pub f: usize,
    pub v_o: usize,
    pub v_n: usize,
    pub chi: i64,
    pub orientable: bool,
    pub orientation: Option<Vec<i8>>,
}

/// Precomputed combinatorics of a valid closed triangulation.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub edges: Vec<EdgeClass>,
    pub vertices: Vec<VertexClass>,
    /// `edge_of[tet][edge_index]` is the edge class id.
    pub edge_of: Vec<[usize; 6]>,
    /// `vertex_of[tet][v]` is the vertex class id.
    pub vertex_of: Vec<[usize; 4]>,
    pub orientation: Option<Vec<i8>>,
}

impl Skeleton {
    pub fn new(tri: &Triangulation) -> Result<Skeleton, crate::Error> {
        let rep = tri.validate();
        if !rep.is_valid() {
            return Err(crate::Error::Invalid(alloc::format!("{rep}")));
        }
        let edges = edge_classes(tri)?;
        let vertices = vertex_classes(tri);
        let mut edge_of = vec![[0usize; 6]; tri.size()];
        for e in &edges {
            for inc in &e.walk {
                edge_of[inc.tet][inc.edge()] = e.id;
            }
        }
        let mut vertex_of = vec![[0usize; 4]; tri.size()];
        for v in &vertices {
            for &(k, w) in &v.corners {
                vertex_of[k][w as usize] = v.id;
            }
        }
        Ok(Skeleton {
            edges,
            vertices,
            edge_of,
            vertex_of,
            orientation: orientation(tri),
        })
    }

    pub fn summary(&self, tri: &Triangulation) -> SkeletonSummary {
        let t = tri.size();
        let e = self.edges.len();
        let v = self.vertices.len();
        let v_n = (0..v)
            .filter(|&i| !crate::link::build_link(tri, self, i).orientable)
            .count();
        SkeletonSummary {
            t,
            e,
            v,
            f: 2 * t,
            v_o: v - v_n,
            v_n,
            chi: v as i64 - e as i64 + t as i64,
            orientable: self.orientation.is_some(),
            orientation: self.orientation.clone(),
        }
    }
}

pub fn skeleton_summary(tri: &Triangulation) -> Result<SkeletonSummary, crate::Error> {
    Ok(Skeleton::new(tri)?.summary(tri))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;

    #[test]
    fn gieseking_has_one_edge_of_degree_six() {
        let tri = census::gieseking();
        let edges = edge_classes(&tri).unwrap();
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].degree(), 6);
        assert_eq!(vertex_classes(&tri).len(), 1);
    }

    #[test]
    fn union_of_two_copies_doubles_classes() {
        let g = census::gieseking();
        let u = g.disjoint_union(&g);
        let edges = edge_classes(&u).unwrap();
        assert_eq!(edges.len(), 2);
        assert!(edges.iter().all(|e| e.degree() == 6));
        assert_eq!(vertex_classes(&u).len(), 2);
    }

    #[test]
    fn gieseking_summary() {
        let s = skeleton_summary(&census::gieseking()).unwrap();
        assert_eq!((s.t, s.e, s.v, s.f, s.chi), (1, 1, 1, 2, 1));
        assert!(!s.orientable);
        assert_eq!((s.v_o, s.v_n), (0, 1));
    }

    #[test]
    fn walks_start_even_and_close() {
        let tri = census::figure_eight();
        for e in edge_classes(&tri).unwrap() {
            assert!(e.walk[0].is_even());
            assert_eq!(e.walk.last().unwrap().next(&tri), e.walk[0]);
        }
    }
}
