//! Induced triangulations of vertex links, their dual graphs, homology and
//! intersection numbers of dual cycles.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{self, Int};
use crate::perm::Perm;
use crate::skeleton::{Incidence, Skeleton};
use crate::triangulation::Triangulation;

/// A closed path in the dual graph: at each step leave `tri` through `side`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DualCycle {
    pub steps: Vec<(usize, u8)>,
}

#[derive(Clone, Debug)]
pub struct LinkSurface {
    pub vertex: usize,
    /// Triangle `k` is the corner `(tet, i)`.
    pub triangles: Vec<(usize, u8)>,
    /// `adj[k][j]` is the triangle and side glued to side `j` of triangle `k`.
    /// Side `j` lies on the face opposite `j`; the entry at `j == i` is unused.
    pub adj: Vec<[(usize, u8); 4]>,
    /// Gluing permutation across side `j` of triangle `k`.
    pub glue: Vec<[Perm; 4]>,
    /// Link vertex of the corner of triangle `k` on tet edge `{i, c}`.
    pub corner_vertex: Vec<[usize; 4]>,
    /// Link edge carried by side `j` of triangle `k`.
    pub side_edge: Vec<[usize; 4]>,
    /// `+1` when the positive direction of side `(k, j)` is the edge's
    /// reference direction.
    pub side_sign: Vec<[i8; 4]>,
    pub n_vertices: usize,
    pub n_edges: usize,
    pub chi: i64,
    pub orientable: bool,
    /// Per triangle orientation sign; meaningful only when orientable.
    pub orientation: Vec<i8>,
    index: Vec<[usize; 4]>,
}

/// Endpoints, as tet vertex labels, of side `j` of the triangle at corner
/// `i`, in the order induced by increasing labels `k1 → k2 → k3 → k1`.
pub fn side_dir(i: u8, j: u8) -> (u8, u8) {
    let ks: Vec<u8> = (0..4u8).filter(|&k| k != i).collect();
    let pos = ks.iter().position(|&k| k == j).unwrap();
    let u = ks[(pos + 1) % 3];
    let v = ks[(pos + 2) % 3];
    (u, v)
}

pub(crate) struct Dsu(Vec<usize>);

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.0[a.max(b)] = a.min(b);
        true
    }
}

pub fn build_link(tri: &Triangulation, sk: &Skeleton, v: usize) -> LinkSurface {
    let triangles = sk.vertices[v].corners.clone();
    let mut index = vec![[usize::MAX; 4]; tri.size()];
    for (k, &(t, i)) in triangles.iter().enumerate() {
        index[t][i as usize] = k;
    }
    let n = triangles.len();
    let mut adj = vec![[(usize::MAX, 0u8); 4]; n];
    let mut glue = vec![[Perm::IDENTITY; 4]; n];
    for (k, &(t, i)) in triangles.iter().enumerate() {
        for j in (0..4u8).filter(|&j| j != i) {
            let g = tri.gluing(t, j);
            adj[k][j as usize] = (index[g.tet][g.perm.apply(i) as usize], g.perm.apply(j));
            glue[k][j as usize] = g.perm;
        }
    }

    let mut vd = Dsu::new(4 * n);
    for (k, &(_, i)) in triangles.iter().enumerate() {
        for j in (0..4u8).filter(|&j| j != i) {
            let (b, _) = adj[k][j as usize];
            let p = glue[k][j as usize];
            for c in (0..4u8).filter(|&c| c != i && c != j) {
                vd.union(4 * k + c as usize, 4 * b + p.apply(c) as usize);
            }
        }
    }
    let mut vid = BTreeMap::new();
    let mut corner_vertex = vec![[usize::MAX; 4]; n];
    for (k, &(_, i)) in triangles.iter().enumerate() {
        for c in (0..4u8).filter(|&c| c != i) {
            let r = vd.find(4 * k + c as usize);
            let next = vid.len();
            corner_vertex[k][c as usize] = *vid.entry(r).or_insert(next);
        }
    }

    let mut side_edge = vec![[usize::MAX; 4]; n];
    let mut side_sign = vec![[0i8; 4]; n];
    let mut n_edges = 0;
    for (k, &(_, i)) in triangles.iter().enumerate() {
        for j in (0..4u8).filter(|&j| j != i) {
            if side_edge[k][j as usize] != usize::MAX {
                continue;
            }
            side_edge[k][j as usize] = n_edges;
            side_sign[k][j as usize] = 1;
            let (b, j2) = adj[k][j as usize];
            let p = glue[k][j as usize];
            let (u, w) = side_dir(i, j);
            let ib = triangles[b].1;
            side_edge[b][j2 as usize] = n_edges;
            side_sign[b][j2 as usize] = if side_dir(ib, j2) == (p.apply(u), p.apply(w)) {
                1
            } else {
                -1
            };
            n_edges += 1;
        }
    }

    let n_vertices = vid.len();
    let chi = n_vertices as i64 - n_edges as i64 + n as i64;

    let (orientable, orientation) = match &sk.orientation {
        Some(o) => (
            true,
            triangles
                .iter()
                .map(|&(t, i)| if i % 2 == 0 { -o[t] } else { o[t] })
                .collect(),
        ),
        None => propagate_orientation(&triangles, &adj, &side_sign),
    };

    LinkSurface {
        vertex: v,
        triangles,
        adj,
        glue,
        corner_vertex,
        side_edge,
        side_sign,
        n_vertices,
        n_edges,
        chi,
        orientable,
        orientation,
        index,
    }
}

// Neighbouring triangles are coherent when they traverse the shared edge in
// opposite directions.
fn propagate_orientation(
    triangles: &[(usize, u8)],
    adj: &[[(usize, u8); 4]],
    side_sign: &[[i8; 4]],
) -> (bool, Vec<i8>) {
    let n = triangles.len();
    let mut o = vec![0i8; n];
    let mut ok = true;
    for root in 0..n {
        if o[root] != 0 {
            continue;
        }
        o[root] = 1;
        let mut stack = vec![root];
        while let Some(k) = stack.pop() {
            let i = triangles[k].1;
            for j in (0..4u8).filter(|&j| j != i) {
                let (b, j2) = adj[k][j as usize];
                let want = -o[k] * side_sign[k][j as usize] * side_sign[b][j2 as usize];
                if o[b] == 0 {
                    o[b] = want;
                    stack.push(b);
                } else if o[b] != want {
                    ok = false;
                }
            }
        }
    }
    (ok, o)
}

impl LinkSurface {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Triangle index of corner `(tet, i)` if it belongs to this link.
    pub fn triangle_of(&self, tet: usize, i: u8) -> Option<usize> {
        self.index
            .get(tet)
            .map(|r| r[i as usize])
            .filter(|&k| k != usize::MAX)
    }

    pub fn cross(&self, k: usize, side: u8) -> (usize, u8) {
        self.adj[k][side as usize]
    }

    /// `(chi, orientable, genus or crosscap number)`.
    pub fn invariants(&self) -> (i64, bool, i64) {
        if self.orientable {
            (self.chi, true, (2 - self.chi) / 2)
        } else {
            (self.chi, false, 2 - self.chi)
        }
    }

    pub fn genus(&self) -> usize {
        if self.orientable {
            ((2 - self.chi) / 2) as usize
        } else {
            (2 - self.chi) as usize
        }
    }

    /// Checks that `c` is a closed walk through the dual graph.
    pub fn check_cycle(&self, c: &DualCycle) -> Result<()> {
        if c.steps.is_empty() {
            return Err(Error::BadCurve("empty".into()));
        }
        for (n, &(k, s)) in c.steps.iter().enumerate() {
            if k >= self.len() || s > 3 || s == self.triangles[k].1 {
                return Err(Error::BadCurve(alloc::format!(
                    "step {n} is not a side of a link triangle"
                )));
            }
            let (b, _) = self.cross(k, s);
            let next = c.steps[(n + 1) % c.steps.len()].0;
            if b != next {
                return Err(Error::BadCurve(alloc::format!(
                    "step {n} does not lead to step {}",
                    (n + 1) % c.steps.len()
                )));
            }
        }
        Ok(())
    }

    /// Removes immediate backtracks, cyclically.
    pub fn reduce(&self, c: &DualCycle) -> DualCycle {
        let mut st: Vec<(usize, u8)> = Vec::new();
        for &step in &c.steps {
            if let Some(&last) = st.last() {
                if self.cross(last.0, last.1) == step {
                    st.pop();
                    continue;
                }
            }
            st.push(step);
        }
        while st.len() >= 2 {
            let last = *st.last().unwrap();
            if self.cross(last.0, last.1) == st[0] {
                st.pop();
                st.remove(0);
            } else {
                break;
            }
        }
        DualCycle { steps: st }
    }

    pub fn reverse(&self, c: &DualCycle) -> DualCycle {
        let steps = c
            .steps
            .iter()
            .rev()
            .map(|&(k, s)| self.cross(k, s))
            .collect();
        DualCycle { steps }
    }

    /// The loop around the link vertex at corner `c` of triangle `k`.
    pub fn small_circle(&self, tri: &Triangulation, k: usize, c: u8) -> DualCycle {
        let (t, i) = self.triangles[k];
        let (x, y) = crate::perm::complement(i, c);
        let start = Incidence {
            tet: t,
            a: i,
            b: c,
            x,
            y,
        };
        let mut cur = start;
        let mut steps = Vec::new();
        loop {
            steps.push((self.triangle_of(cur.tet, cur.a).unwrap(), cur.y));
            cur = cur.next(tri);
            if cur == start {
                break;
            }
        }
        DualCycle { steps }
    }

    /// The primal 1-chain (coefficients per link edge, in reference
    /// direction) obtained by sliding `c` into the 1-skeleton.
    pub fn push_to_primal(&self, c: &DualCycle) -> Vec<i64> {
        let c = self.reduce(c);
        let mut chain = vec![0i64; self.n_edges];
        let n = c.steps.len();
        if n == 0 {
            return chain;
        }
        let corner = |idx: usize| -> u8 {
            let (k, s) = c.steps[idx];
            let (pk, ps) = c.steps[(idx + n - 1) % n];
            let (_, entry) = self.cross(pk, ps);
            let i = self.triangles[k].1;
            (0..4u8).find(|&x| x != i && x != entry && x != s).unwrap()
        };
        for idx in 0..n {
            let (k, s) = c.steps[idx];
            let here = corner(idx);
            let there = corner((idx + 1) % n);
            let p = self.glue[k][s as usize];
            if p.apply(here) == there {
                continue;
            }
            let i = self.triangles[k].1;
            let dir = if side_dir(i, s).0 == here { 1 } else { -1 };
            chain[self.side_edge[k][s as usize]] += dir * self.side_sign[k][s as usize] as i64;
        }
        chain
    }

    /// Algebraic intersection of a primal chain with a dual cycle.
    pub fn chain_dot(&self, chain: &[i64], c: &DualCycle) -> i64 {
        c.steps
            .iter()
            .map(|&(k, s)| {
                let e = self.side_edge[k][s as usize];
                -chain[e] * self.side_sign[k][s as usize] as i64 * self.orientation[k] as i64
            })
            .sum()
    }

    /// Algebraic intersection number of two dual cycles on an orientable link.
    pub fn intersection(&self, a: &DualCycle, b: &DualCycle) -> i64 {
        self.chain_dot(&self.push_to_primal(a), b)
    }

    /// Boundary matrices of the cellular chain complex, with edges in
    /// reference direction and triangles oriented by increasing labels.
    pub fn boundary_maps(&self) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
        let mut d1 = vec![vec![0i64; self.n_edges]; self.n_vertices];
        let mut d2 = vec![vec![0i64; self.len()]; self.n_edges];
        let mut done = vec![false; self.n_edges];
        for (k, &(_, i)) in self.triangles.iter().enumerate() {
            for j in (0..4u8).filter(|&j| j != i) {
                let e = self.side_edge[k][j as usize];
                let sg = self.side_sign[k][j as usize] as i64;
                d2[e][k] += sg;
                if sg == 1 && !done[e] {
                    done[e] = true;
                    let (u, w) = side_dir(i, j);
                    d1[self.corner_vertex[k][w as usize]][e] += 1;
                    d1[self.corner_vertex[k][u as usize]][e] -= 1;
                }
            }
        }
        (d1, d2)
    }

    /// `(rank of H1, torsion coefficients)`.
    pub fn homology(&self) -> (usize, Vec<Int>) {
        let (d1, d2) = self.boundary_maps();
        let r1 = linalg::rank_i64(&d1, self.n_edges);
        let sn = linalg::smith_diagonal(&linalg::to_big(&d2), self.len());
        let b1 = self.n_edges - r1 - sn.len();
        let tors = sn.into_iter().filter(|d| *d != Int::from(1)).collect();
        (b1, tors)
    }

    /// Tree–cotree basis of H1: a breadth-first dual spanning tree from
    /// triangle 0, a primal spanning forest on the remaining edges, and one
    /// cycle per leftover edge.
    pub fn h1_cycle_basis(&self) -> Result<Vec<DualCycle>> {
        if !self.orientable {
            return Err(Error::NonOrientableLink);
        }
        let n = self.len();
        let mut parent: Vec<Option<(usize, u8)>> = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut in_tree = vec![false; self.n_edges];
        let mut queue = alloc::collections::VecDeque::new();
        depth[0] = 0;
        queue.push_back(0);
        while let Some(k) = queue.pop_front() {
            let i = self.triangles[k].1;
            for j in (0..4u8).filter(|&j| j != i) {
                let (b, _) = self.cross(k, j);
                if depth[b] == usize::MAX {
                    depth[b] = depth[k] + 1;
                    parent[b] = Some((k, j));
                    in_tree[self.side_edge[k][j as usize]] = true;
                    queue.push_back(b);
                }
            }
        }
        let mut forest = Dsu::new(self.n_vertices);
        let mut rep = vec![None; self.n_edges];
        for (k, &(_, i)) in self.triangles.iter().enumerate() {
            for j in (0..4u8).filter(|&j| j != i) {
                let e = self.side_edge[k][j as usize];
                if rep[e].is_none() {
                    rep[e] = Some((k, j));
                }
            }
        }
        let mut out = Vec::new();
        for e in 0..self.n_edges {
            if in_tree[e] {
                continue;
            }
            let (k, j) = rep[e].unwrap();
            let (u, w) = side_dir(self.triangles[k].1, j);
            if forest.union(
                self.corner_vertex[k][u as usize],
                self.corner_vertex[k][w as usize],
            ) {
                continue;
            }
            out.push(self.tree_cycle(&parent, &depth, k, j));
        }
        Ok(out)
    }

    // Crosses side `j` of `k`, then returns through the tree.
    fn tree_cycle(
        &self,
        parent: &[Option<(usize, u8)>],
        depth: &[usize],
        k: usize,
        j: u8,
    ) -> DualCycle {
        let (b, _) = self.cross(k, j);
        let (mut x, mut y) = (b, k);
        let mut up = Vec::new();
        let mut down = Vec::new();
        while x != y {
            if depth[x] >= depth[y] {
                let (p, s) = parent[x].unwrap();
                up.push(self.cross(p, s));
                x = p;
            } else {
                let (p, s) = parent[y].unwrap();
                down.push((p, s));
                y = p;
            }
        }
        let mut steps = vec![(k, j)];
        steps.extend(up);
        steps.extend(down.into_iter().rev());
        DualCycle { steps }
    }

    /// Matrix of pairwise intersection numbers.
    pub fn intersection_matrix(&self, cycles: &[DualCycle]) -> Vec<Vec<i64>> {
        let chains: Vec<Vec<i64>> = cycles.iter().map(|c| self.push_to_primal(c)).collect();
        chains
            .iter()
            .map(|ch| cycles.iter().map(|c| self.chain_dot(ch, c)).collect())
            .collect()
    }

    /// Whether the cycles, slid into the 1-skeleton, are independent in
    /// H1 with integer coefficients and span its free part.
    pub fn spans_free_homology(&self, cycles: &[DualCycle]) -> bool {
        let (_, d2) = self.boundary_maps();
        let mut cols: Vec<Vec<i64>> = linalg::transpose(&linalg::to_big(&d2), self.len())
            .into_iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect();
        let base_rank = linalg::rank_i64(&cols, self.n_edges);
        cols.extend(cycles.iter().map(|c| self.push_to_primal(c)));
        let (b1, _) = self.homology();
        linalg::rank_i64(&cols, self.n_edges) == base_rank + cycles.len() && cycles.len() == b1
    }
}

/// Whether a square integer matrix is unimodular.
pub fn is_unimodular(m: &[Vec<i64>]) -> bool {
    let d = linalg::determinant(&linalg::to_big(m));
    d == Int::from(1) || d == Int::from(-1)
}
