//! Admissibility, Haken sums, triangle coordinates filled in over the vertex
//! links, and the compact core of a spun-normal surface.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::boundary::{qmodulus, Boundary, BoundaryClass};
use crate::error::{Error, Result};
use crate::linalg::{Int, Rat};
use crate::link::{build_link, Dsu, LinkSurface};
use crate::perm::{pair, quad_split};
use crate::qmatch::QMatrix;
use crate::skeleton::Skeleton;
use crate::triangulation::Triangulation;

/// Nonnegative with at most one nonzero quad type per tet.
pub fn is_admissible(n: &[Int]) -> bool {
    n.len().is_multiple_of(3)
        && n.iter().all(|x| !x.is_negative())
        && n.chunks(3)
            .all(|c| c.iter().filter(|x| !x.is_zero()).count() <= 1)
}

pub fn to_integral(v: &[Rat]) -> Result<Vec<Int>> {
    v.iter()
        .map(|x| {
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::NotIntegral)
            }
        })
        .collect()
}

fn check(b: &QMatrix, n: &[Int]) -> Result<()> {
    if n.len() != b.ncols {
        return Err(Error::Length {
            expected: b.ncols,
            got: n.len(),
        });
    }
    if !b.contains(n) {
        return Err(Error::NotInQ);
    }
    if !is_admissible(n) {
        return Err(Error::NotAdmissible);
    }
    Ok(())
}

pub fn haken_sum(b: &QMatrix, n: &[Int], l: &[Int]) -> Result<Vec<Int>> {
    check(b, n)?;
    check(b, l)?;
    let s: Vec<Int> = n.iter().zip(l).map(|(x, y)| x + y).collect();
    if !is_admissible(&s) {
        return Err(Error::IncompatibleSupports);
    }
    Ok(s)
}

/// `(12t, 6t)`: any, and two-sided, families of disjoint non-parallel
/// non-vertex-linking normal surfaces.
pub fn kneser_haken_bounds(t: usize) -> (usize, usize) {
    (12 * t, 6 * t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub vertex: usize,
    pub triangle: usize,
    pub side: u8,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleFill {
    /// Triangle count at each corner of each tet.
    pub fill: Vec<[i64; 4]>,
    pub k: i64,
    pub k_min: i64,
    pub discrepancies: Vec<Discrepancy>,
}

impl TriangleFill {
    pub fn is_exact(&self) -> bool {
        self.discrepancies.iter().all(|d| d.value == 0)
    }

    /// Triangle then quad coordinates, seven per tet.
    pub fn standard_vector(&self, n: &[Int]) -> Vec<Int> {
        let mut out = Vec::new();
        for (t, f) in self.fill.iter().enumerate() {
            out.extend(f.iter().map(|&x| Int::from(x)));
            out.extend(n[3 * t..3 * t + 3].iter().cloned());
        }
        out
    }
}

fn small(x: &Int) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::Internal("coordinate too large".into()))
}

pub fn triangle_fill(
    tri: &Triangulation,
    sk: &Skeleton,
    b: &QMatrix,
    n: &[Int],
    k: i64,
) -> Result<TriangleFill> {
    triangle_fill_rooted(tri, sk, b, n, k, &vec![0; sk.vertices.len()])
}

/// As [`triangle_fill`] with the spanning tree of link `v` grown from
/// triangle `roots[v]`.
pub fn triangle_fill_rooted(
    tri: &Triangulation,
    sk: &Skeleton,
    b: &QMatrix,
    n: &[Int],
    k: i64,
    roots: &[usize],
) -> Result<TriangleFill> {
    check(b, n)?;
    if k < 1 {
        return Err(Error::Invalid("padding must be positive".into()));
    }
    let q: Vec<i64> = n.iter().map(small).collect::<Result<_>>()?;
    let mut fill = vec![[0i64; 4]; tri.size()];
    let mut discrepancies = Vec::new();
    let mut widest = 0;
    for v in 0..sk.vertices.len() {
        let l = build_link(tri, sk, v);
        let root = roots.get(v).copied().unwrap_or(0) % l.len();
        let rel = propagate(&l, &q, root, v, &mut discrepancies);
        widest = widest.max(rel.iter().map(|x| x.abs()).max().unwrap_or(0));
        let lo = *rel.iter().min().unwrap();
        for (kk, &(t, i)) in l.triangles.iter().enumerate() {
            fill[t][i as usize] = rel[kk] - lo + k;
        }
    }
    Ok(TriangleFill {
        fill,
        k,
        k_min: widest + 1,
        discrepancies,
    })
}

fn propagate(
    l: &LinkSurface,
    q: &[i64],
    root: usize,
    v: usize,
    out: &mut Vec<Discrepancy>,
) -> Vec<i64> {
    let n = l.len();
    let mut rel = vec![0i64; n];
    let mut seen = vec![false; n];
    let mut tree = vec![[false; 4]; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(a) = queue.pop_front() {
        let i = l.triangles[a].1;
        for s in (0..4u8).filter(|&s| s != i) {
            let (b, s2) = l.cross(a, s);
            if !seen[b] {
                seen[b] = true;
                tree[a][s as usize] = true;
                tree[b][s2 as usize] = true;
                rel[b] = rel[a] + q[qmodulus(l, a, s)] - q[qmodulus(l, b, s2)];
                queue.push_back(b);
            }
        }
    }
    for a in 0..n {
        let i = l.triangles[a].1;
        for s in (0..4u8).filter(|&s| s != i) {
            let (b, s2) = l.cross(a, s);
            if tree[a][s as usize] || (b, s2) < (a, s) {
                continue;
            }
            let value = rel[a] + q[qmodulus(l, a, s)] - q[qmodulus(l, b, s2)] - rel[b];
            out.push(Discrepancy {
                vertex: v,
                triangle: a,
                side: s,
                value,
            });
        }
    }
    rel
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreSurface {
    /// `None` when the surface spins into a link of negative Euler
    /// characteristic.
    pub chi: Option<i64>,
    /// Euler characteristic of the glued complex, whatever the links.
    pub cell_chi: i64,
    pub orientable: bool,
    /// Traced boundary circles per vertex class.
    pub boundary_circles: Vec<(usize, usize)>,
    /// `d` from ν at spun torus links.
    pub boundary_d: Vec<(usize, Int)>,
    pub spin_set: Vec<usize>,
    pub quads: usize,
    pub triangles: usize,
    pub k: i64,
}

impl CoreSurface {
    pub fn boundary_total(&self) -> usize {
        self.boundary_circles.iter().map(|&(_, c)| c).sum()
    }
}

/// Arc slot of a disc side: tet, face, vertex cut off, position counted from
/// the end away from that vertex.
type Slot = (usize, u8, u8, i64);

struct Disc {
    corners: Vec<(u8, u8)>,
    slots: Vec<Slot>,
}

fn edge(a: u8, b: u8) -> (u8, u8) {
    (a.min(b), a.max(b))
}

fn discs(tri: &Triangulation, n: &[i64], fill: &[[i64; 4]]) -> (Vec<Disc>, usize, usize) {
    let mut out = Vec::new();
    let (mut nq, mut nt) = (0, 0);
    for t in 0..tri.size() {
        let qs = &n[3 * t..3 * t + 3];
        for i in 0..4u8 {
            let ks: Vec<u8> = (0..4u8).filter(|&c| c != i).collect();
            let cnt = fill[t][i as usize];
            for m in 0..cnt {
                let mut corners = Vec::new();
                let mut slots = Vec::new();
                for s in 0..3 {
                    let u = ks[s];
                    let j = ks[(s + 2) % 3];
                    corners.push(edge(i, u));
                    let q = qs[pair(i, j)];
                    slots.push((t, j, i, q + cnt - 1 - m));
                }
                out.push(Disc { corners, slots });
                nt += 1;
            }
        }
        for (kind, &q) in qs.iter().enumerate() {
            let ((a, b), (c, d)) = quad_split(kind);
            for m in 0..q {
                let pos = |w: u8| if w == a || w == b { q - 1 - m } else { m };
                out.push(Disc {
                    corners: vec![edge(a, c), edge(a, d), edge(b, d), edge(b, c)],
                    slots: vec![
                        (t, b, a, pos(a)),
                        (t, c, d, pos(d)),
                        (t, a, b, pos(b)),
                        (t, d, c, pos(c)),
                    ],
                });
                nq += 1;
            }
        }
    }
    (out, nq, nt)
}

pub fn reconstruct_core(
    tri: &Triangulation,
    sk: &Skeleton,
    bd: &Boundary,
    n: &[Int],
    k: i64,
) -> Result<CoreSurface> {
    let f = triangle_fill(tri, sk, &bd.qmatrix, n, k)?;
    reconstruct_from_fill(tri, sk, bd, n, &f)
}

pub fn reconstruct_from_fill(
    tri: &Triangulation,
    sk: &Skeleton,
    bd: &Boundary,
    n: &[Int],
    f: &TriangleFill,
) -> Result<CoreSurface> {
    let spin_set = bd.spin_set(n);
    for &v in &spin_set {
        if bd.frames[v].link.chi > 0 {
            return Err(Error::PositiveChiSpin(v));
        }
    }
    let q: Vec<i64> = n.iter().map(small).collect::<Result<_>>()?;
    let (ds, quads, triangles) = discs(tri, &q, &f.fill);

    let mut at: BTreeMap<Slot, (usize, usize)> = BTreeMap::new();
    for (di, d) in ds.iter().enumerate() {
        for (s, &slot) in d.slots.iter().enumerate() {
            at.insert(slot, (di, s));
        }
    }
    let base: Vec<usize> = ds
        .iter()
        .scan(0, |acc, d| {
            let b = *acc;
            *acc += d.corners.len();
            Some(b)
        })
        .collect();
    let npts = base
        .last()
        .map_or(0, |&b| b + ds.last().unwrap().corners.len());
    let mut pts = Dsu::new(npts);
    // Orientation constraints: (other disc, flip).
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); ds.len()];
    let mut open: Vec<(usize, usize, usize)> = Vec::new();
    let mut edges = 0usize;
    for (&(t, j, a, pos), &(di, s)) in &at {
        let g = tri.gluing(t, j);
        let p = g.perm;
        let other: Slot = (g.tet, p.apply(j), p.apply(a), pos);
        match at.get(&other) {
            None => {
                let d = &ds[di];
                let m = d.corners.len();
                open.push((
                    base[di] + s,
                    base[di] + (s + 1) % m,
                    sk.vertex_of[t][a as usize],
                ));
                edges += 1;
            }
            Some(&(dj, s2)) => {
                if other < (t, j, a, pos) {
                    continue;
                }
                edges += 1;
                let (da, db) = (&ds[di], &ds[dj]);
                let (c0, c1) = (da.corners[s], da.corners[(s + 1) % da.corners.len()]);
                let mapped = |e: (u8, u8)| edge(p.apply(e.0), p.apply(e.1));
                let m2 = db.corners.len();
                let (e0, e1) = (db.corners[s2], db.corners[(s2 + 1) % m2]);
                let same = mapped(c0) == e0 && mapped(c1) == e1;
                debug_assert!(same || (mapped(c0) == e1 && mapped(c1) == e0));
                if same {
                    pts.union(base[di] + s, base[dj] + s2);
                    pts.union(
                        base[di] + (s + 1) % da.corners.len(),
                        base[dj] + (s2 + 1) % m2,
                    );
                } else {
                    pts.union(base[di] + s, base[dj] + (s2 + 1) % m2);
                    pts.union(base[di] + (s + 1) % da.corners.len(), base[dj] + s2);
                }
                adj[di].push((dj, same));
                adj[dj].push((di, same));
            }
        }
    }
    let mut roots: Vec<usize> = (0..npts).map(|x| pts.find(x)).collect();
    roots.sort_unstable();
    roots.dedup();
    let cell_chi = roots.len() as i64 - edges as i64 + ds.len() as i64;

    let mut o = vec![0i8; ds.len()];
    let mut orientable = true;
    for r in 0..ds.len() {
        if o[r] != 0 {
            continue;
        }
        o[r] = 1;
        let mut stack = vec![r];
        while let Some(x) = stack.pop() {
            for &(y, same) in &adj[x] {
                let want = if same { -o[x] } else { o[x] };
                if o[y] == 0 {
                    o[y] = want;
                    stack.push(y);
                } else if o[y] != want {
                    orientable = false;
                }
            }
        }
    }

    let mut circles = Dsu::new(npts);
    let mut used = vec![false; npts];
    let mut vertex_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    for &(x, y, v) in &open {
        let (rx, ry) = (pts.find(x), pts.find(y));
        circles.union(rx, ry);
        used[rx] = true;
        used[ry] = true;
        vertex_of_root.insert(rx, v);
    }
    let mut per_vertex: BTreeMap<usize, usize> = BTreeMap::new();
    let mut counted = BTreeMap::new();
    for (&r, &v) in &vertex_of_root {
        let c = circles.find(r);
        if counted.insert(c, ()).is_none() {
            *per_vertex.entry(v).or_insert(0) += 1;
        }
    }
    let boundary_circles = (0..sk.vertices.len())
        .map(|v| (v, per_vertex.get(&v).copied().unwrap_or(0)))
        .collect();

    let mut boundary_d = Vec::new();
    for &v in &spin_set {
        if let BoundaryClass::Orientable(c) = bd.boundary_class(n, v)? {
            if c.len() == 2 {
                boundary_d.push((v, c[0].gcd(&c[1])));
            }
        }
    }
    let chi = if spin_set.iter().any(|&v| bd.frames[v].link.chi < 0) {
        None
    } else {
        Some(cell_chi)
    };
    Ok(CoreSurface {
        chi,
        cell_chi,
        orientable,
        boundary_circles,
        boundary_d,
        spin_set,
        quads,
        triangles,
        k: f.k,
    })
}

/// Reconstruction at the smallest padding that keeps torus cusps stable.
pub fn reconstruct_default(
    tri: &Triangulation,
    sk: &Skeleton,
    bd: &Boundary,
    n: &[Int],
) -> Result<CoreSurface> {
    let f = triangle_fill(tri, sk, &bd.qmatrix, n, 1)?;
    reconstruct_core(tri, sk, bd, n, f.k_min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;
    use crate::linalg::vec_big;
    use crate::qmatch::{compatibility_matrix, qmatching_matrix};

    #[test]
    fn admissibility() {
        assert!(is_admissible(&vec_big(&[2, 0, 0, 0, 0, 1])));
        assert!(!is_admissible(&vec_big(&[1, 1, 0, 0, 0, 0])));
        assert!(!is_admissible(&vec_big(&[-1, 0, 0, 0, 0, 0])));
        assert!(is_admissible(&vec_big(&[0, 0, 0])));
    }

    #[test]
    fn bounds() {
        assert_eq!(kneser_haken_bounds(1), (12, 6));
        assert_eq!(kneser_haken_bounds(2), (24, 12));
    }

    #[test]
    fn zero_gives_stacked_links() {
        let tri = census::figure_eight();
        let sk = Skeleton::new(&tri).unwrap();
        let bd = Boundary::new(&tri, &sk).unwrap();
        let z = vec![Int::zero(); 6];
        let f = triangle_fill(&tri, &sk, &bd.qmatrix, &z, 3).unwrap();
        assert!(f.fill.iter().all(|c| c.iter().all(|&x| x == 3)));
        assert!(f.is_exact());
        let s = reconstruct_core(&tri, &sk, &bd, &z, 3).unwrap();
        assert_eq!(s.chi, Some(0));
        assert!(s.orientable);
        assert_eq!(s.boundary_total(), 0);
    }

    #[test]
    fn fill_solves_compatibility_when_exact() {
        let tri = census::figure_eight();
        let sk = Skeleton::new(&tri).unwrap();
        let b = qmatching_matrix(&tri, &sk);
        let z = vec![Int::zero(); 6];
        let f = triangle_fill(&tri, &sk, &b, &z, 2).unwrap();
        let x = f.standard_vector(&z);
        for row in compatibility_matrix(&tri) {
            assert!(crate::linalg::dot_i64(&row, &x).is_zero());
        }
    }

    #[test]
    fn errors() {
        let tri = census::figure_eight();
        let sk = Skeleton::new(&tri).unwrap();
        let b = qmatching_matrix(&tri, &sk);
        assert_eq!(
            triangle_fill(&tri, &sk, &b, &vec_big(&[1, 0, 0, 0, 0, 0]), 1).unwrap_err(),
            Error::NotInQ
        );
        let r = vec![Rat::new(1.into(), 2.into())];
        assert_eq!(to_integral(&r).unwrap_err(), Error::NotIntegral);
    }
}
