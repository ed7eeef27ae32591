//! Extreme rays of solution cones by the double description method, and the
//! admissible part of the projective solution space.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::boundary::Boundary;
use crate::error::{Error, Result};
use crate::linalg::{self, Int, Rat};
use crate::qmatch::QMatrix;
use crate::skeleton::SkeletonSummary;

/// `{x : E x = 0, x ≥ 0, x_i = 0 off the support}` in dimension `dim`.
#[derive(Clone, Debug)]
pub struct RationalCone {
    pub dim: usize,
    pub equalities: Vec<Vec<Int>>,
    pub support: Option<Vec<bool>>,
}

struct Ray {
    y: Vec<Int>,
    zeros: Vec<bool>,
}

fn eval(a: &[Int], y: &[Int]) -> Int {
    linalg::dot(a, y)
}

/// Double description on `{y : a_c · y ≥ 0}` for a full-rank system.
fn dd(constraints: &[Vec<Int>], d: usize) -> Vec<Vec<Int>> {
    let m = constraints.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&c| (constraints[c].iter().filter(|x| !x.is_zero()).count(), c));

    let mut chosen = Vec::new();
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for &c in &order {
        let mut trial = rows.clone();
        trial.push(constraints[c].clone());
        if linalg::rank(&trial, d) == trial.len() {
            rows = trial;
            chosen.push(c);
            if chosen.len() == d {
                break;
            }
        }
    }
    let inv = linalg::inverse(&linalg::to_rat(&rows)).expect("independent rows");
    let mut rays: Vec<Ray> = (0..d)
        .map(|col| {
            let v: Vec<Rat> = (0..d).map(|r| inv[r][col].clone()).collect();
            let y = linalg::primitive_rat(&v);
            let zeros = (0..m)
                .map(|c| chosen.contains(&c) && eval(&constraints[c], &y).is_zero())
                .collect();
            Ray { y, zeros }
        })
        .collect();
    let mut done: Vec<bool> = (0..m).map(|c| chosen.contains(&c)).collect();

    for &c in order.iter().filter(|c| !chosen.contains(c)) {
        let a = &constraints[c];
        let vals: Vec<Int> = rays.iter().map(|r| eval(a, &r.y)).collect();
        let mut next: Vec<Ray> = Vec::new();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        for &p in &pos {
            for &q in &neg {
                let common: Vec<usize> = (0..m)
                    .filter(|&k| done[k] && rays[p].zeros[k] && rays[q].zeros[k])
                    .collect();
                if common.len() + 2 < d {
                    continue;
                }
                let blocked = (0..rays.len())
                    .any(|r| r != p && r != q && common.iter().all(|&k| rays[r].zeros[k]));
                if blocked {
                    continue;
                }
                let y: Vec<Int> = rays[q]
                    .y
                    .iter()
                    .zip(&rays[p].y)
                    .map(|(yq, yp)| &vals[p] * yq - &vals[q] * yp)
                    .collect();
                let y = linalg::primitive(&y);
                let mut zeros: Vec<bool> = (0..m).map(|k| common.contains(&k)).collect();
                zeros[c] = true;
                next.push(Ray { y, zeros });
            }
        }
        for (i, mut r) in rays.into_iter().enumerate() {
            if !vals[i].is_negative() {
                r.zeros[c] = vals[i].is_zero();
                next.push(r);
            }
        }
        rays = next;
        done[c] = true;
    }
    rays.into_iter().map(|r| r.y).collect()
}

/// Primitive integer extreme rays, deduplicated and sorted.
pub fn extreme_rays(cone: &RationalCone) -> Vec<Vec<Int>> {
    let n = cone.dim;
    let free: Vec<usize> = match &cone.support {
        Some(s) => (0..n).filter(|&i| s[i]).collect(),
        None => (0..n).collect(),
    };
    let m = free.len();
    if m == 0 {
        return Vec::new();
    }
    let eqs: Vec<Vec<Int>> = cone
        .equalities
        .iter()
        .map(|r| free.iter().map(|&i| r[i].clone()).collect())
        .collect();
    let kernel = linalg::kernel_basis(&eqs, m);
    let d = kernel.len();
    if d == 0 {
        return Vec::new();
    }
    let constraints: Vec<Vec<Int>> = (0..m)
        .map(|c| kernel.iter().map(|k| k[c].clone()).collect())
        .collect();
    let mut out: Vec<Vec<Int>> = dd(&constraints, d)
        .into_iter()
        .map(|y| {
            let mut x = vec![Int::zero(); n];
            for (c, &i) in free.iter().enumerate() {
                x[i] = linalg::dot(&constraints[c], &y);
            }
            linalg::primitive(&x)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Smallest integer point on the ray through a nonnegative rational vector.
pub fn minimal_representative(v: &[Rat]) -> Result<Vec<Int>> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    Ok(linalg::primitive_rat(v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfComponent {
    /// Chosen quad type per tet.
    pub support: Vec<usize>,
    pub rays: Vec<Vec<Int>>,
    pub dim: i64,
    pub dim_ker: i64,
    /// Projective dimension of the linear span of the rays cut by `ker ν`.
    /// Can exceed `dim_ker` when the cut misses the positive orthant.
    pub dim_span_ker: i64,
    pub maximal: bool,
}

fn support_mask(choice: &[usize]) -> Vec<bool> {
    let mut s = vec![false; 3 * choice.len()];
    for (k, &q) in choice.iter().enumerate() {
        s[3 * k + q] = true;
    }
    s
}

fn dim_of(rays: &[Vec<Int>], n: usize) -> i64 {
    linalg::rank(rays, n) as i64 - 1
}

fn dim_span_ker(rays: &[Vec<Int>], nu_rows: &[Vec<Int>], n: usize) -> i64 {
    let image: Vec<Vec<Int>> = nu_rows
        .iter()
        .map(|f| rays.iter().map(|r| linalg::dot(f, r)).collect())
        .collect();
    dim_of(rays, n) - linalg::rank(&image, rays.len()) as i64
}

/// One component per distinct nonempty ray set over the `3^t` admissible
/// supports; maximal means not strictly contained in another ray set.
pub fn pf_components(b: &QMatrix, nu_rows: &[Vec<Int>]) -> Vec<PfComponent> {
    let n = b.ncols;
    let t = n / 3;
    let eqs = b.big();
    let mut with_nu = eqs.clone();
    with_nu.extend(nu_rows.iter().cloned());
    let mut comps: Vec<PfComponent> = Vec::new();
    let total = 3usize.pow(t as u32);
    for code in 0..total {
        let mut choice = vec![0usize; t];
        let mut c = code;
        for k in (0..t).rev() {
            choice[k] = c % 3;
            c /= 3;
        }
        let support = Some(support_mask(&choice));
        let rays = extreme_rays(&RationalCone {
            dim: n,
            equalities: eqs.clone(),
            support: support.clone(),
        });
        if rays.is_empty() || comps.iter().any(|x| x.rays == rays) {
            continue;
        }
        let kr = extreme_rays(&RationalCone {
            dim: n,
            equalities: with_nu.clone(),
            support,
        });
        comps.push(PfComponent {
            support: choice,
            dim: dim_of(&rays, n),
            dim_ker: dim_of(&kr, n),
            dim_span_ker: dim_span_ker(&rays, nu_rows, n),
            rays,
            maximal: true,
        });
    }
    let sets: Vec<Vec<Vec<Int>>> = comps.iter().map(|c| c.rays.clone()).collect();
    for (i, c) in comps.iter_mut().enumerate() {
        c.maximal = !sets.iter().enumerate().any(|(j, s)| {
            j != i && s.len() > sets[i].len() && sets[i].iter().all(|r| s.contains(r))
        });
    }
    comps
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub support: Vec<usize>,
    pub dim: i64,
    pub lower: i64,
    pub upper: i64,
    pub dim_ker: i64,
    pub within_t: bool,
    pub lower_ok: bool,
    pub upper_ok: bool,
    /// Upper bound with `dim_span_ker` in place of `dim_ker`.
    pub upper_span: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub checks: Vec<BoundCheck>,
    /// Bounds evaluated at `dim ∅ = -1` when there is no component.
    pub empty: Option<BoundCheck>,
}

impl BoundsReport {
    pub fn violations(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| !(c.within_t && c.lower_ok && c.upper_ok))
            .count()
    }
}

fn bound_check(
    s: &SkeletonSummary,
    support: Vec<usize>,
    dim: i64,
    dim_ker: i64,
    dim_span_ker: i64,
) -> BoundCheck {
    let (chi, v_n, t) = (s.chi, s.v_n as i64, s.t as i64);
    let (lower, base) = if s.orientable {
        (chi - 1, chi)
    } else {
        (chi - v_n - 1, 2 * chi - v_n)
    };
    let upper = base + dim_ker;
    BoundCheck {
        support,
        dim,
        lower,
        upper,
        dim_ker,
        within_t: dim < t,
        lower_ok: lower <= dim,
        upper_ok: dim <= upper,
        upper_span: base + dim_span_ker,
    }
}

pub fn bounds_report(s: &SkeletonSummary, comps: &[PfComponent]) -> BoundsReport {
    let checks: Vec<BoundCheck> = comps
        .iter()
        .filter(|c| c.maximal)
        .map(|c| bound_check(s, c.support.clone(), c.dim, c.dim_ker, c.dim_span_ker))
        .collect();
    let empty = if comps.is_empty() {
        Some(bound_check(s, Vec::new(), -1, -1, -1))
    } else {
        None
    };
    BoundsReport { checks, empty }
}

/// Convenience wrapper computing components together with ν rows.
pub fn pf_components_for(bd: &Boundary) -> Vec<PfComponent> {
    pf_components(&bd.qmatrix, &bd.nu_rows())
}
