//! The ν functional on vertex-link curves, boundary classes, slopes on torus
//! links and the two intersection pairings on Q(T).

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cover;
use crate::error::{Error, Result};
use crate::linalg::{self, Int, Rat};
use crate::link::{build_link, DualCycle, LinkSurface};
use crate::perm::pair;
use crate::qmatch::{qmatching_matrix, QMatrix, TetLabeling};
use crate::skeleton::Skeleton;
use crate::triangulation::Triangulation;

/// Global quad coordinate carried by side `side` of link triangle `k`: the
/// quad type with the same arc type on that face.
pub fn qmodulus(l: &LinkSurface, k: usize, side: u8) -> usize {
    let (t, i) = l.triangles[k];
    3 * t + pair(i, side)
}

/// Crossing from `a` into `b` adds the modulus seen from `b` and subtracts
/// the modulus seen from `a`.
pub fn nu_functional(l: &LinkSurface, ncols: usize, c: &DualCycle) -> Vec<i64> {
    let mut f = vec![0i64; ncols];
    for &(k, s) in &c.steps {
        let (b, s2) = l.cross(k, s);
        f[qmodulus(l, b, s2)] += 1;
        f[qmodulus(l, k, s)] -= 1;
    }
    f
}

/// Sign fixing the orientation convention of the pairing `⋆` relative to the
/// link orientation induced with normals pointing toward the vertex.
pub const STAR_SIGN: i64 = -1;

#[derive(Clone, Debug)]
pub struct SymplecticPair {
    /// Coefficients over the tree–cotree basis.
    pub mu: Vec<Int>,
    pub lambda: Vec<Int>,
    pub nu_mu: Vec<Int>,
    pub nu_lambda: Vec<Int>,
}

#[derive(Clone, Debug)]
pub struct CoverData {
    pub link: LinkSurface,
    /// Deck involution on triangles of the cover link.
    pub sigma: Vec<usize>,
    /// Base triangle under each cover triangle.
    pub projection: Vec<usize>,
    pub basis: Vec<DualCycle>,
    pub intersections: Vec<Vec<i64>>,
    /// Action on homology: `σ(γ_k) = Σ_m action[k][m] γ_m`.
    pub action: Vec<Vec<Int>>,
    /// Coefficient vectors spanning the `+1` and `-1` eigenlattices.
    pub invariant: Vec<Vec<Int>>,
    pub anti: Vec<Vec<Int>>,
    /// Pushed-down functionals on Q(T).
    pub nu_invariant: Vec<Vec<Int>>,
    pub nu_anti: Vec<Vec<Int>>,
}

#[derive(Clone, Debug)]
pub enum FrameKind {
    Orientable {
        basis: Vec<DualCycle>,
        intersections: Vec<Vec<i64>>,
        functionals: Vec<Vec<Int>>,
        symplectic: Vec<SymplecticPair>,
    },
    NonOrientable(CoverData),
}

#[derive(Clone, Debug)]
pub struct VertexFrame {
    pub vertex: usize,
    pub link: LinkSurface,
    pub kind: FrameKind,
}

impl VertexFrame {
    /// Rows of the ν map at this vertex.
    pub fn rows(&self) -> Vec<Vec<Int>> {
        match &self.kind {
            FrameKind::Orientable { functionals, .. } => functionals.clone(),
            FrameKind::NonOrientable(c) => {
                c.nu_invariant.iter().chain(&c.nu_anti).cloned().collect()
            }
        }
    }
}

pub struct Boundary {
    pub frames: Vec<VertexFrame>,
    pub qmatrix: QMatrix,
    pub labeling: TetLabeling,
    pub oriented: bool,
}

fn form(j: &[Vec<Int>], x: &[Int], y: &[Int]) -> Int {
    let jy = linalg::mat_vec(j, y);
    linalg::dot(x, &jy)
}

/// Integral symplectic basis `(a_i, b_i)` with `ι(a_i, b_i) = 1` for a
/// unimodular skew form.
pub fn symplectic_basis(j: &[Vec<Int>]) -> Option<Vec<(Vec<Int>, Vec<Int>)>> {
    let n = j.len();
    let mut gens: Vec<Vec<Int>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| if i == k { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    loop {
        let basis = linalg::lattice_basis(&gens, n);
        if basis.is_empty() {
            break;
        }
        let a = basis[0].clone();
        let row: Vec<Int> = basis.iter().map(|r| form(j, &a, r)).collect();
        let (g, c) = linalg::bezout(&row);
        if !g.is_one() {
            return None;
        }
        let mut b = vec![Int::zero(); n];
        for (r, cr) in basis.iter().zip(&c) {
            for (x, y) in b.iter_mut().zip(r) {
                *x += cr * y;
            }
        }
        gens = basis
            .iter()
            .map(|r| {
                let rb = form(j, r, &b);
                let ra = form(j, r, &a);
                r.iter()
                    .zip(&a)
                    .zip(&b)
                    .map(|((x, ai), bi)| x - &rb * ai + &ra * bi)
                    .collect()
            })
            .collect();
        out.push((a, b));
    }
    Some(out)
}

fn combine(coeffs: &[Int], fs: &[Vec<Int>], ncols: usize) -> Vec<Int> {
    let mut out = vec![Int::zero(); ncols];
    for (c, f) in coeffs.iter().zip(fs) {
        for (o, x) in out.iter_mut().zip(f) {
            *o += c * x;
        }
    }
    out
}

fn int_inverse(j: &[Vec<i64>]) -> Result<Vec<Vec<Int>>> {
    let inv = linalg::inverse(&linalg::to_rat(&linalg::to_big(j)))
        .ok_or_else(|| Error::Internal("singular intersection form".into()))?;
    inv.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| {
                    if x.is_integer() {
                        Ok(x.to_integer())
                    } else {
                        Err(Error::Internal(
                            "intersection form is not unimodular".into(),
                        ))
                    }
                })
                .collect()
        })
        .collect()
}

fn orientable_frame(l: &LinkSurface, ncols: usize) -> Result<FrameKind> {
    let basis = l.h1_cycle_basis()?;
    let intersections = l.intersection_matrix(&basis);
    let functionals: Vec<Vec<Int>> = basis
        .iter()
        .map(|c| linalg::vec_big(&nu_functional(l, ncols, c)))
        .collect();
    let jb = linalg::to_big(&intersections);
    let sp = symplectic_basis(&jb)
        .ok_or_else(|| Error::Internal("intersection form is not unimodular".into()))?;
    let symplectic = sp
        .into_iter()
        .map(|(a, b)| SymplecticPair {
            nu_mu: combine(&a, &functionals, ncols),
            nu_lambda: combine(&b, &functionals, ncols),
            mu: a,
            lambda: b,
        })
        .collect();
    Ok(FrameKind::Orientable {
        basis,
        intersections,
        functionals,
        symplectic,
    })
}

fn push_down(f: &[i64], t: usize) -> Vec<Int> {
    (0..3 * t).map(|i| Int::from(f[i] + f[i + 3 * t])).collect()
}

fn nonorientable_frame(
    tri: &Triangulation,
    sk: &Skeleton,
    v: usize,
    cov: &(Triangulation, cover::Covering, Skeleton),
) -> Result<FrameKind> {
    let t = tri.size();
    let (ctri, covering, csk) = cov;
    let (t0, i0) = sk.vertices[v].corners[0];
    let cv = csk.vertex_of[t0][i0 as usize];
    let link = build_link(ctri, csk, cv);
    if link.len() != 2 * sk.vertices[v].corners.len() || !link.orientable {
        return Err(Error::Internal(
            "cover link is not the orientation double cover".into(),
        ));
    }
    let base_link = build_link(tri, sk, v);
    let sigma: Vec<usize> = link
        .triangles
        .iter()
        .map(|&(ct, i)| link.triangle_of(covering.deck[ct], i).unwrap())
        .collect();
    let projection: Vec<usize> = link
        .triangles
        .iter()
        .map(|&(ct, i)| base_link.triangle_of(covering.base[ct], i).unwrap())
        .collect();
    for k in 0..link.len() {
        let i = link.triangles[k].1;
        for j in (0..4u8).filter(|&j| j != i) {
            let (b, j2) = link.cross(k, j);
            if link.cross(sigma[k], j) != (sigma[b], j2) {
                return Err(Error::Internal(
                    "deck involution does not commute with gluings".into(),
                ));
            }
        }
    }
    let basis = link.h1_cycle_basis()?;
    let n = basis.len();
    let intersections = link.intersection_matrix(&basis);
    let jinv = int_inverse(&intersections)?;
    let mut action = Vec::with_capacity(n);
    for c in &basis {
        let sc = DualCycle {
            steps: c.steps.iter().map(|&(k, s)| (sigma[k], s)).collect(),
        };
        let chain = link.push_to_primal(&sc);
        let row: Vec<Int> = basis
            .iter()
            .map(|b| Int::from(link.chain_dot(&chain, b)))
            .collect();
        let coeffs: Vec<Int> = (0..n)
            .map(|m| (0..n).map(|j| &row[j] * &jinv[j][m]).sum())
            .collect();
        action.push(coeffs);
        let fa = push_down(&nu_functional(&link, 6 * t, c), t);
        let fb = push_down(&nu_functional(&link, 6 * t, &sc), t);
        if fa != fb {
            return Err(Error::Internal("ν is not σ-symmetric".into()));
        }
    }
    // σ acts on coefficient columns by the transpose of `action`.
    let st = linalg::transpose(&action, n);
    let shifted = |s: i64| -> Vec<Vec<Int>> {
        st.iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, x)| if r == c { x - Int::from(s) } else { x.clone() })
                    .collect()
            })
            .collect()
    };
    let invariant = linalg::integer_kernel_basis(&shifted(1), n);
    let mut anti = linalg::integer_kernel_basis(&shifted(-1), n);
    let functionals: Vec<Vec<Int>> = basis
        .iter()
        .map(|c| push_down(&nu_functional(&link, 6 * t, c), t))
        .collect();
    if invariant.len() == 1 && anti.len() == 1 {
        let jb = linalg::to_big(&intersections);
        if form(&jb, &invariant[0], &anti[0]).is_negative() {
            anti[0] = anti[0].iter().map(|x| -x).collect();
        }
    }
    let nu_invariant = invariant
        .iter()
        .map(|c| combine(c, &functionals, 3 * t))
        .collect();
    let nu_anti = anti
        .iter()
        .map(|c| combine(c, &functionals, 3 * t))
        .collect();
    Ok(FrameKind::NonOrientable(CoverData {
        link,
        sigma,
        projection,
        basis,
        intersections,
        action,
        invariant,
        anti,
        nu_invariant,
        nu_anti,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryClass {
    /// `(-ν(λ_1), ν(μ_1), …)` over the symplectic basis.
    Orientable(Vec<Int>),
    /// ν on the σ-invariant classes, the coefficients in H1 of the link
    /// with real coefficients.
    NonOrientable(Vec<Int>),
}

impl BoundaryClass {
    pub fn is_zero(&self) -> bool {
        match self {
            BoundaryClass::Orientable(v) | BoundaryClass::NonOrientable(v) => {
                v.iter().all(|x| x.is_zero())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slope {
    Empty,
    Curves { p: Int, q: Int, d: Int },
}

/// Slope and curve count from the values of ν on a framing `(λ, μ)`.
pub fn slope_from_values(nu_lambda: &Int, nu_mu: &Int) -> Slope {
    if nu_lambda.is_zero() && nu_mu.is_zero() {
        return Slope::Empty;
    }
    let d = nu_mu.abs().gcd(&nu_lambda.abs());
    Slope::Curves {
        p: -nu_lambda / &d,
        q: nu_mu / &d,
        d,
    }
}

impl Boundary {
    pub fn new(tri: &Triangulation, sk: &Skeleton) -> Result<Boundary> {
        let t = tri.size();
        let qmatrix = qmatching_matrix(tri, sk);
        let links: Vec<LinkSurface> = (0..sk.vertices.len())
            .map(|v| build_link(tri, sk, v))
            .collect();
        let cov = if links.iter().any(|l| !l.orientable) {
            let (c, covering) = cover::double_cover(tri)?;
            let csk = Skeleton::new(&c)?;
            Some((c, covering, csk))
        } else {
            None
        };
        let mut frames = Vec::new();
        for (v, link) in links.into_iter().enumerate() {
            let kind = if link.orientable {
                orientable_frame(&link, 3 * t)?
            } else {
                nonorientable_frame(tri, sk, v, cov.as_ref().unwrap())?
            };
            frames.push(VertexFrame {
                vertex: v,
                link,
                kind,
            });
        }
        Ok(Boundary {
            frames,
            qmatrix,
            labeling: TetLabeling::new(sk, t),
            oriented: sk.orientation.is_some(),
        })
    }

    pub fn ncols(&self) -> usize {
        self.qmatrix.ncols
    }

    /// All ν rows, vertex by vertex.
    pub fn nu_rows(&self) -> Vec<Vec<Int>> {
        self.frames.iter().flat_map(|f| f.rows()).collect()
    }

    fn check(&self, n: &[Int]) -> Result<()> {
        if n.len() != self.ncols() {
            return Err(Error::Length {
                expected: self.ncols(),
                got: n.len(),
            });
        }
        if !self.qmatrix.contains(n) {
            return Err(Error::NotInQ);
        }
        Ok(())
    }

    pub fn boundary_class(&self, n: &[Int], v: usize) -> Result<BoundaryClass> {
        self.check(n)?;
        Ok(match &self.frames[v].kind {
            FrameKind::Orientable { symplectic, .. } => BoundaryClass::Orientable(
                symplectic
                    .iter()
                    .flat_map(|p| [-linalg::dot(&p.nu_lambda, n), linalg::dot(&p.nu_mu, n)])
                    .collect(),
            ),
            FrameKind::NonOrientable(c) => BoundaryClass::NonOrientable(
                c.nu_invariant.iter().map(|f| linalg::dot(f, n)).collect(),
            ),
        })
    }

    /// Vertices where ν does not vanish.
    pub fn spin_set(&self, n: &[Int]) -> Vec<usize> {
        self.frames
            .iter()
            .filter(|f| f.rows().iter().any(|r| !linalg::dot(r, n).is_zero()))
            .map(|f| f.vertex)
            .collect()
    }

    /// `ν(N) ⋆ ν(L)` summed over vertices, from symplectic bases.
    pub fn star(&self, n: &[Int], l: &[Int]) -> Result<Rat> {
        if !self.oriented {
            return Err(Error::NonOrientable);
        }
        self.check(n)?;
        self.check(l)?;
        let mut s = Int::zero();
        for f in &self.frames {
            if let FrameKind::Orientable { symplectic, .. } = &f.kind {
                for p in symplectic {
                    s += linalg::dot(&p.nu_mu, n) * linalg::dot(&p.nu_lambda, l)
                        - linalg::dot(&p.nu_lambda, n) * linalg::dot(&p.nu_mu, l);
                }
            }
        }
        Ok(Rat::new(s * Int::from(STAR_SIGN), Int::from(2)))
    }

    /// ν functionals of user supplied framing cycles on a torus link.
    pub fn framing(
        &self,
        v: usize,
        lambda: &DualCycle,
        mu: &DualCycle,
    ) -> Result<(Vec<Int>, Vec<Int>)> {
        let f = &self.frames[v];
        if !(f.link.orientable && f.link.chi == 0) {
            return Err(Error::NonTorusLink(v));
        }
        f.link.check_cycle(lambda)?;
        f.link.check_cycle(mu)?;
        if f.link.intersection(lambda, mu).abs() != 1 {
            return Err(Error::DegenerateFraming);
        }
        let nl = linalg::vec_big(&nu_functional(&f.link, self.ncols(), lambda));
        let nm = linalg::vec_big(&nu_functional(&f.link, self.ncols(), mu));
        Ok((nl, nm))
    }

    /// Slope at a torus link, against the given framing functionals or the
    /// tool's symplectic basis.
    pub fn torus_slope(
        &self,
        n: &[Int],
        v: usize,
        framing: Option<&(Vec<Int>, Vec<Int>)>,
    ) -> Result<Slope> {
        self.check(n)?;
        let f = &self.frames[v];
        let (nl, nm) = match (framing, &f.kind) {
            (Some((fl, fm)), _) => (linalg::dot(fl, n), linalg::dot(fm, n)),
            (None, FrameKind::Orientable { symplectic, .. }) if symplectic.len() == 1 => (
                linalg::dot(&symplectic[0].nu_lambda, n),
                linalg::dot(&symplectic[0].nu_mu, n),
            ),
            _ => return Err(Error::NonTorusLink(v)),
        };
        Ok(slope_from_values(&nl, &nm))
    }
}

/// The block-diagonal skew form on Q(T) in orientation-aligned order.
pub fn pairing(n: &[Int], l: &[Int], lab: &TetLabeling, oriented: bool) -> Result<Rat> {
    if !oriented {
        return Err(Error::NonOrientable);
    }
    let na = lab.to_aligned(n);
    let la = lab.to_aligned(l);
    let mut s = Int::zero();
    for k in 0..na.len() / 3 {
        for a in 0..3 {
            s += &na[3 * k + a] * &la[3 * k + (a + 1) % 3];
            s -= &na[3 * k + a] * &la[3 * k + (a + 2) % 3];
        }
    }
    Ok(Rat::from_integer(s))
}
