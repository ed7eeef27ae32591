//! Q-matching equations, the solution space Q(T), and the standard normal
//! coordinate system with its projection onto quadrilateral coordinates.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, Int};
use crate::perm::{pair, EDGES};
use crate::skeleton::{EdgeClass, Skeleton};
use crate::triangulation::Triangulation;

/// Per-tet ordering of the three quad types. `order[k]` is the reference
/// quad index placed at aligned position `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TetLabeling {
    pub order: Vec<[usize; 3]>,
    /// Orientation sign of each tet, `+1` throughout when unoriented.
    pub parity: Vec<i8>,
}

impl TetLabeling {
    /// Reference order for positive tets and `(q, q'', q')` for negative
    /// ones, so every tet sees the same cyclic convention.
    pub fn new(sk: &Skeleton, t: usize) -> TetLabeling {
        let parity = sk.orientation.clone().unwrap_or_else(|| vec![1; t]);
        let order = parity
            .iter()
            .map(|&p| if p > 0 { [0, 1, 2] } else { [0, 2, 1] })
            .collect();
        TetLabeling { order, parity }
    }

    pub fn to_aligned<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (k, ord) in self.order.iter().enumerate() {
            for pos in 0..3 {
                out[3 * k + pos] = v[3 * k + ord[pos]].clone();
            }
        }
        out
    }

    pub fn from_aligned<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (k, ord) in self.order.iter().enumerate() {
            for pos in 0..3 {
                out[3 * k + ord[pos]] = v[3 * k + pos].clone();
            }
        }
        out
    }
}

/// Total slope of every quad type around an edge. At each step of the walk
/// the quad pairing `a` with the vertex on the exit face counts `+1` and the
/// quad pairing `a` with the vertex on the entry face counts `-1`.
pub fn edge_slope_row(t: usize, e: &EdgeClass) -> Vec<i64> {
    let mut row = vec![0i64; 3 * t];
    for inc in &e.walk {
        row[3 * inc.tet + pair(inc.a, inc.x)] += 1;
        row[3 * inc.tet + pair(inc.a, inc.y)] -= 1;
    }
    row
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub rows: Vec<Vec<i64>>,
    /// Edge class of each row.
    pub edges: Vec<usize>,
    pub ncols: usize,
}

impl QMatrix {
    pub fn big(&self) -> Vec<Vec<Int>> {
        linalg::to_big(&self.rows)
    }

    pub fn rank(&self) -> usize {
        linalg::rank_i64(&self.rows, self.ncols)
    }

    pub fn aligned(&self, lab: &TetLabeling) -> Vec<Vec<i64>> {
        self.rows.iter().map(|r| lab.to_aligned(r)).collect()
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        v.len() == self.ncols && self.rows.iter().all(|r| linalg::dot_i64(r, v).is_zero())
    }
}

pub fn qmatching_matrix(tri: &Triangulation, sk: &Skeleton) -> QMatrix {
    let t = tri.size();
    QMatrix {
        rows: sk.edges.iter().map(|e| edge_slope_row(t, e)).collect(),
        edges: sk.edges.iter().map(|e| e.id).collect(),
        ncols: 3 * t,
    }
}

/// Rational basis of Q(T) as primitive integer vectors, sorted.
pub fn kernel_basis(b: &QMatrix) -> Vec<Vec<Int>> {
    let mut k = linalg::kernel_basis(&b.big(), b.ncols);
    k.sort();
    k
}

/// Lattice basis of the integer points of Q(T).
pub fn integer_kernel_basis(b: &QMatrix) -> Vec<Vec<Int>> {
    linalg::integer_kernel_basis(&b.big(), b.ncols)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub rank_b: usize,
    pub dim_q: usize,
    pub v_o_minus_e_plus_3t: i64,
    pub chi_plus_2t_minus_v_n: i64,
    pub e_minus_v_o: i64,
    pub rank_ok: bool,
    pub dim_ok: bool,
}

pub fn dimension_report(tri: &Triangulation, sk: &Skeleton) -> DimensionReport {
    let s = sk.summary(tri);
    let b = qmatching_matrix(tri, sk);
    let rank_b = b.rank();
    let dim_q = kernel_basis(&b).len();
    let (t, e, v_o, v_n) = (s.t as i64, s.e as i64, s.v_o as i64, s.v_n as i64);
    let f1 = v_o - e + 3 * t;
    let f2 = s.chi + 2 * t - v_n;
    DimensionReport {
        rank_b,
        dim_q,
        v_o_minus_e_plus_3t: f1,
        chi_plus_2t_minus_v_n: f2,
        e_minus_v_o: e - v_o,
        rank_ok: rank_b as i64 == e - v_o,
        dim_ok: dim_q as i64 == f1 && dim_q as i64 == f2,
    }
}

/// Offset of triangle coordinate `i` in the 7t normal coordinates.
pub fn tri_coord(tet: usize, i: u8) -> usize {
    7 * tet + i as usize
}

/// Offset of quad coordinate `k` in the 7t normal coordinates.
pub fn quad_coord(tet: usize, k: usize) -> usize {
    7 * tet + 4 + k
}

/// Matching of normal arcs across every face pairing: for the arc around
/// vertex `i` on face `j`, triangles at `i` plus quads of type `pair(i, j)`
/// must agree on both sides.
pub fn compatibility_matrix(tri: &Triangulation) -> Vec<Vec<i64>> {
    let t = tri.size();
    let mut rows = Vec::new();
    for a in 0..t {
        for j in 0..4u8 {
            let g = tri.gluing(a, j);
            let j2 = g.perm.apply(j);
            if (g.tet, j2) < (a, j) {
                continue;
            }
            for i in (0..4u8).filter(|&i| i != j) {
                let mut row = vec![0i64; 7 * t];
                let i2 = g.perm.apply(i);
                row[tri_coord(a, i)] += 1;
                row[quad_coord(a, pair(i, j))] += 1;
                row[tri_coord(g.tet, i2)] -= 1;
                row[quad_coord(g.tet, pair(i2, j2))] -= 1;
                rows.push(row);
            }
        }
    }
    rows
}

pub fn tetrahedral_solution(t: usize, tet: usize) -> Vec<i64> {
    let mut v = vec![0i64; 7 * t];
    for i in 0..4u8 {
        v[tri_coord(tet, i)] = 1;
    }
    for k in 0..3 {
        v[quad_coord(tet, k)] = -1;
    }
    v
}

/// Sum over the preimages `{a,b}` of the edge of `t_a + t_b - q_pair(a,b)`.
pub fn edge_solution(t: usize, e: &EdgeClass) -> Vec<i64> {
    let mut v = vec![0i64; 7 * t];
    for inc in &e.walk {
        v[tri_coord(inc.tet, inc.a)] += 1;
        v[tri_coord(inc.tet, inc.b)] += 1;
        v[quad_coord(inc.tet, pair(inc.a, inc.b))] -= 1;
    }
    v
}

/// Tetrahedral solutions followed by edge solutions.
pub fn canonical_c_basis(tri: &Triangulation, sk: &Skeleton) -> Vec<Vec<i64>> {
    let t = tri.size();
    let mut out: Vec<Vec<i64>> = (0..t).map(|k| tetrahedral_solution(t, k)).collect();
    out.extend(sk.edges.iter().map(|e| edge_solution(t, e)));
    out
}

/// Normal coordinates of the vertex link `v`: one triangle per corner.
pub fn vertex_link_vector(tri: &Triangulation, sk: &Skeleton, v: usize) -> Vec<i64> {
    let mut out = vec![0i64; 7 * tri.size()];
    for &(k, i) in &sk.vertices[v].corners {
        out[tri_coord(k, i)] += 1;
    }
    out
}

pub fn project_pr(tri: &Triangulation, x: &[Int]) -> Result<Vec<Int>> {
    let t = tri.size();
    if x.len() != 7 * t {
        return Err(Error::Length {
            expected: 7 * t,
            got: x.len(),
        });
    }
    let c = compatibility_matrix(tri);
    if !c.iter().all(|r| linalg::dot_i64(r, x).is_zero()) {
        return Err(Error::NotInC);
    }
    Ok((0..t)
        .flat_map(|k| (0..3).map(move |q| quad_coord(k, q)))
        .map(|i| x[i].clone())
        .collect())
}

/// All incidences of an edge index within a tet, for display.
pub fn edge_name(e: usize) -> (u8, u8) {
    EDGES[e]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;

    fn setup(tri: &Triangulation) -> (Skeleton, QMatrix) {
        let sk = Skeleton::new(tri).unwrap();
        let b = qmatching_matrix(tri, &sk);
        (sk, b)
    }

    #[test]
    fn gieseking_row_is_one_one_minus_two() {
        let tri = census::gieseking();
        let (_, b) = setup(&tri);
        assert_eq!(b.rows.len(), 1);
        // The single edge has degree six, so every slope is counted twice.
        let mut r = b.rows[0].clone();
        r.sort();
        assert!(r == vec![-4, 2, 2] || r == vec![-2, -2, 4], "{r:?}");
        let p = crate::linalg::primitive(&crate::linalg::vec_big(&r));
        assert!(
            p == crate::linalg::vec_big(&[-2, 1, 1]) || p == crate::linalg::vec_big(&[-1, -1, 2])
        );
    }

    #[test]
    fn figure_eight_rows_are_negatives() {
        let tri = census::figure_eight();
        let (sk, b) = setup(&tri);
        assert_eq!(b.rows.len(), 2);
        let r0: Vec<i64> = b.rows[0].iter().map(|x| -x).collect();
        assert_eq!(r0, b.rows[1]);
        let lab = TetLabeling::new(&sk, 2);
        for row in b.aligned(&lab) {
            for blk in row.chunks(3) {
                let mut s = blk.to_vec();
                s.sort();
                assert!(s == vec![-1, -1, 2] || s == vec![-2, 1, 1]);
            }
        }
    }

    #[test]
    fn dimension_formulas() {
        for tri in [census::gieseking(), census::figure_eight()] {
            let sk = Skeleton::new(&tri).unwrap();
            let d = dimension_report(&tri, &sk);
            assert!(d.rank_ok && d.dim_ok, "{d:?}");
        }
    }

    #[test]
    fn canonical_basis_spans_c() {
        for tri in [census::gieseking(), census::figure_eight()] {
            let sk = Skeleton::new(&tri).unwrap();
            let c = compatibility_matrix(&tri);
            let basis = canonical_c_basis(&tri, &sk);
            for w in &basis {
                assert!(c
                    .iter()
                    .all(|r| r.iter().zip(w).map(|(a, b)| a * b).sum::<i64>() == 0));
            }
            let t = tri.size();
            assert_eq!(linalg::rank_i64(&basis, 7 * t), t + sk.edges.len());
            assert_eq!(7 * t - linalg::rank_i64(&c, 7 * t), t + sk.edges.len());
        }
    }

    #[test]
    fn pr_of_link_is_zero() {
        let tri = census::figure_eight();
        let sk = Skeleton::new(&tri).unwrap();
        let v = linalg::vec_big(&vertex_link_vector(&tri, &sk, 0));
        assert!(project_pr(&tri, &v).unwrap().iter().all(|x| x.is_zero()));
        let w = linalg::vec_big(&tetrahedral_solution(2, 1));
        assert_eq!(
            project_pr(&tri, &w).unwrap(),
            linalg::vec_big(&[0, 0, 0, -1, -1, -1])
        );
    }
}
