//! The acceptance checks on the bundled examples, runnable from the command
//! line.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spunnorm_core::boundary::{pairing, Boundary, FrameKind, Slope};
use spunnorm_core::census;
use spunnorm_core::cover::double_cover;
use spunnorm_core::iso::are_isomorphic;
use spunnorm_core::linalg::{self, Int};
use spunnorm_core::polytope::{bounds_report, extreme_rays, pf_components_for, RationalCone};
use spunnorm_core::qmatch::{
    self, canonical_c_basis, compatibility_matrix, integer_kernel_basis, kernel_basis,
    qmatching_matrix,
};
use spunnorm_core::skeleton::Skeleton;
use spunnorm_core::surface::{reconstruct_core, triangle_fill};
use spunnorm_core::Triangulation;

use crate::bundled::{self, FIG8_CLASSES};

pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn seed() -> u64 {
    std::env::var("SPUNNORM_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

#[derive(Debug, Clone)]
pub struct Check {
    pub id: usize,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn big(v: &[i64]) -> Vec<Int> {
    linalg::vec_big(v)
}

fn neg(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| -x).collect()
}

fn vanishes_on_q(b: &[Vec<Int>], f: &[Int]) -> bool {
    linalg::in_row_space(b, f)
}

fn same_on_q(b: &[Vec<Int>], f: &[Int], g: &[Int]) -> bool {
    let d: Vec<Int> = f.iter().zip(g).map(|(x, y)| x - y).collect();
    vanishes_on_q(b, &d)
}

/// Random valid closed triangulations with one to four tets.
pub fn corpus(seed: u64, count: usize) -> Vec<Triangulation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| census::random_valid(&mut rng, 1 + i % 4))
        .collect()
}

fn c1(f: &Triangulation) -> Result<String, String> {
    let sk = Skeleton::new(f).map_err(|e| e.to_string())?;
    let b = qmatching_matrix(f, &sk);
    let rank = b.rank();
    let dim = kernel_basis(&b).len();
    let eq = big(&bundled::FIG8_EQUATION);
    let rows_ok = b.rows.iter().all(|r| {
        let r = bundled::to_reference(&big(r));
        r == eq || r == neg(&eq)
    });
    if rank == 1 && dim == 5 && rows_ok {
        Ok(format!("rank 1, dim Q 5, dim PQ 4, rows {:?}", b.rows))
    } else {
        Err(format!("rank {rank}, dim Q {dim}, rows {:?}", b.rows))
    }
}

fn c2(f: &Triangulation) -> Result<String, String> {
    let sk = Skeleton::new(f).map_err(|e| e.to_string())?;
    let bd = Boundary::new(f, &sk).map_err(|e| e.to_string())?;
    let curves = bundled::figure_eight_curves();
    let lam = curves.get("lambda").map_err(|e| e.to_string())?;
    let mu = curves.get("mu").map_err(|e| e.to_string())?;
    let framing = bd.framing(0, &lam, &mu).map_err(|e| e.to_string())?;
    let comps = pf_components_for(&bd);
    let rays: Vec<Vec<Int>> = comps
        .iter()
        .filter(|c| c.maximal)
        .flat_map(|c| c.rays.clone())
        .collect();
    if rays.len() != 4 {
        return Err(format!("{} classes", rays.len()));
    }
    let mut matched = 0;
    for class in &FIG8_CLASSES {
        let want = bundled::from_reference(&big(&class.vector));
        if !rays.contains(&want) {
            return Err(format!("class {:?} missing", class.vector));
        }
        let nl = linalg::dot(&framing.0, &want);
        let nm = linalg::dot(&framing.1, &want);
        let slope = bd
            .torus_slope(&want, 0, Some(&framing))
            .map_err(|e| e.to_string())?;
        let ok = nl == BigInt::from(class.nu_lambda)
            && nm == BigInt::from(class.nu_mu)
            && matches!(&slope, Slope::Curves { p, q, d } if *p == q * BigInt::from(class.slope) && q.abs() == BigInt::from(1) && *d == BigInt::from(1));
        if !ok {
            return Err(format!(
                "class {:?}: nu(lambda) {nl}, nu(mu) {nm}, {slope:?}",
                class.vector
            ));
        }
        matched += 1;
    }
    Ok(format!(
        "{matched} classes with slopes -4, 4, -4, 4 and d = 1"
    ))
}

fn c3(f: &Triangulation) -> Result<String, String> {
    let sk = Skeleton::new(f).map_err(|e| e.to_string())?;
    let bd = Boundary::new(f, &sk).map_err(|e| e.to_string())?;
    for class in &FIG8_CLASSES {
        let n = bundled::from_reference(&big(&class.vector));
        let k_min = triangle_fill(f, &sk, &bd.qmatrix, &n, 1)
            .map_err(|e| e.to_string())?
            .k_min;
        for k in [k_min, k_min + 1, k_min + 3] {
            let s = reconstruct_core(f, &sk, &bd, &n, k).map_err(|e| e.to_string())?;
            if s.chi != Some(-1) || s.orientable || s.boundary_total() != 1 {
                return Err(format!("class {:?} at K={k}: {s:?}", class.vector));
            }
        }
    }
    Ok("4 once-punctured Klein bottles at K_min, K_min+1, K_min+3".into())
}

fn all_supports(t: usize) -> Vec<Vec<bool>> {
    (0..3usize.pow(t as u32))
        .map(|mut code| {
            let mut s = vec![false; 3 * t];
            for k in (0..t).rev() {
                s[3 * k + code % 3] = true;
                code /= 3;
            }
            s
        })
        .collect()
}

fn c4(f: &Triangulation) -> Result<String, String> {
    let sk = Skeleton::new(f).map_err(|e| e.to_string())?;
    let bd = Boundary::new(f, &sk).map_err(|e| e.to_string())?;
    let mut eqs = bd.qmatrix.big();
    eqs.extend(bd.nu_rows());
    for s in all_supports(f.size()) {
        let r = extreme_rays(&RationalCone {
            dim: bd.ncols(),
            equalities: eqs.clone(),
            support: Some(s),
        });
        if !r.is_empty() {
            return Err(format!("admissible closed solution {:?}", r[0]));
        }
    }
    Ok("only 0 is admissible in ker nu".into())
}

fn c5(g: &Triangulation) -> Result<String, String> {
    let sk = Skeleton::new(g).map_err(|e| e.to_string())?;
    let bd = Boundary::new(g, &sk).map_err(|e| e.to_string())?;
    let b = bd.qmatrix.big();
    if b.len() != 1 {
        return Err(format!("{} rows", b.len()));
    }
    let p = linalg::primitive(&b[0]);
    let eq = big(&bundled::GIESEKING_EQUATION);
    if p != eq && p != neg(&eq) {
        return Err(format!("equation {p:?}"));
    }
    let dim_pq = kernel_basis(&bd.qmatrix).len() as i64 - 1;
    let comps = pf_components_for(&bd);
    let FrameKind::NonOrientable(c) = &bd.frames[0].kind else {
        return Err("link is orientable".into());
    };
    let anti_zero = c.nu_anti.iter().all(|f| vanishes_on_q(&b, f));
    let mu = big(&bundled::GIESEKING_MU);
    let mu_ok = c.nu_invariant.len() == 1
        && (same_on_q(&b, &c.nu_invariant[0], &mu) || same_on_q(&b, &c.nu_invariant[0], &neg(&mu)));
    let values: Vec<Int> = integer_kernel_basis(&bd.qmatrix)
        .iter()
        .map(|n| linalg::dot(&c.nu_invariant[0], n))
        .collect();
    let index = linalg::gcd_all(&values);
    if dim_pq == 1 && comps.is_empty() && anti_zero && mu_ok && index == BigInt::from(2) {
        Ok(format!(
            "dim PQ 1, PF empty, nu(mu) {:?}, image index {index}",
            c.nu_invariant[0]
        ))
    } else {
        Err(format!(
            "dim PQ {dim_pq}, {} components, anti zero {anti_zero}, mu {:?}, index {index}",
            comps.len(),
            c.nu_invariant
        ))
    }
}

fn c6(g: &Triangulation, f: &Triangulation) -> Result<String, String> {
    let (c, _) = double_cover(g).map_err(|e| e.to_string())?;
    let sk = Skeleton::new(&c).map_err(|e| e.to_string())?;
    let s = sk.summary(&c);
    let l = spunnorm_core::link::build_link(&c, &sk, 0);
    let dim = kernel_basis(&qmatching_matrix(&c, &sk)).len();
    let iso = are_isomorphic(&c, f).is_some();
    if s.orientable
        && s.t == 2
        && s.e == 2
        && s.v == 1
        && l.orientable
        && l.chi == 0
        && dim == 5
        && iso
    {
        Ok("orientable, t=2 e=2 v=1, torus link, dim Q 5, isomorphic to the bundled file".into())
    } else {
        Err(format!(
            "{s:?} link chi {} dim {dim} isomorphic {iso}",
            l.chi
        ))
    }
}

fn c7(tris: &[Triangulation]) -> Result<String, String> {
    for tri in tris {
        let sk = Skeleton::new(tri).map_err(|e| e.to_string())?;
        let s = sk.summary(tri);
        let b = qmatching_matrix(tri, &sk);
        let d = qmatch::dimension_report(tri, &sk);
        let (t, e, v_o, v_n) = (s.t as i64, s.e as i64, s.v_o as i64, s.v_n as i64);
        let ok = d.rank_b as i64 == e - v_o
            && d.dim_q as i64 == 3 * t - e + v_o
            && d.dim_q as i64 == s.chi + 2 * t - v_n
            && b.rows.iter().all(|r| r.iter().sum::<i64>() == 0);
        if !ok {
            return Err(format!("{}: {s:?} {d:?}", tri.name));
        }
    }
    Ok(format!("{} triangulations", tris.len()))
}

/// Dimensions of the linear maps around Q(T).
pub fn linear_maps(tri: &Triangulation) -> Result<String, String> {
    let sk = Skeleton::new(tri).map_err(|e| e.to_string())?;
    let s = sk.summary(tri);
    let bd = Boundary::new(tri, &sk).map_err(|e| e.to_string())?;
    let (t, e, v) = (s.t, s.e, s.v);
    let compat = linalg::to_big(&compatibility_matrix(tri));
    let dim_c = 7 * t - linalg::rank(&compat, 7 * t);
    let cb = canonical_c_basis(tri, &sk);
    let cb_big = linalg::to_big(&cb);
    let indep = linalg::rank(&cb_big, 7 * t) == cb.len();
    let images: Vec<Vec<Int>> = cb_big
        .iter()
        .map(|x| qmatch::project_pr(tri, x))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let dim_pr = linalg::rank(&images, 3 * t);
    let in_q = images.iter().all(|x| bd.qmatrix.contains(x));
    let nu = bd.nu_rows();
    let in_ker = images
        .iter()
        .all(|x| nu.iter().all(|f| linalg::dot(f, x).is_zero()));
    let q = kernel_basis(&bd.qmatrix);
    let restricted: Vec<Vec<Int>> = nu
        .iter()
        .map(|f| q.iter().map(|x| linalg::dot(f, x)).collect())
        .collect();
    let dim_im_nu = linalg::rank(&restricted, q.len());
    let dim_ker_nu = q.len() - dim_im_nu;
    let ok = dim_c == t + e
        && cb.len() == t + e
        && indep
        && dim_pr == t + e - v
        && in_q
        && in_ker
        && dim_ker_nu == dim_pr
        && dim_im_nu as i64 == 2 * s.chi - s.v_n as i64;
    let msg = format!(
        "{}: dim C {dim_c}, basis independent {indep}, dim im pr {dim_pr}, im pr in Q {in_q}, in ker nu {in_ker}, dim ker nu {dim_ker_nu}, dim im nu {dim_im_nu}",
        tri.name
    );
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c9(f: &Triangulation, seed: u64) -> Result<String, String> {
    let sk = Skeleton::new(f).map_err(|e| e.to_string())?;
    let bd = Boundary::new(f, &sk).map_err(|e| e.to_string())?;
    let basis = integer_kernel_basis(&bd.qmatrix);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample: Vec<Vec<Int>> = (0..20)
        .map(|_| {
            let mut v = vec![Int::zero(); bd.ncols()];
            for k in &basis {
                let c = BigInt::from(rng.gen_range(-5i64..=5));
                for (x, y) in v.iter_mut().zip(k) {
                    *x += &c * y;
                }
            }
            v
        })
        .collect();
    for a in &sample {
        for b in &sample {
            let x = pairing(a, b, &bd.labeling, bd.oriented).map_err(|e| e.to_string())?;
            let y = bd.star(a, b).map_err(|e| e.to_string())?;
            if x != y {
                return Err(format!("{a:?} {b:?}: {x} vs {y}"));
            }
        }
    }
    let n1 = bundled::from_reference(&big(&FIG8_CLASSES[0].vector));
    let n2 = bundled::from_reference(&big(&FIG8_CLASSES[1].vector));
    let v = pairing(&n1, &n2, &bd.labeling, true).map_err(|e| e.to_string())?;
    let w = bd.star(&n1, &n2).map_err(|e| e.to_string())?;
    if v == w && v == BigInt::from(4).into() {
        Ok("400 pairs agree, <N1,N2> = 4".into())
    } else {
        Err(format!("<N1,N2> = {v}, star {w}"))
    }
}

fn c10(tris: &[Triangulation]) -> Result<String, String> {
    let mut checks = 0;
    for (i, tri) in tris.iter().enumerate() {
        let sk = Skeleton::new(tri).map_err(|e| e.to_string())?;
        let s = sk.summary(tri);
        let bd = Boundary::new(tri, &sk).map_err(|e| e.to_string())?;
        let comps = pf_components_for(&bd);
        let r = bounds_report(&s, &comps);
        for c in &r.checks {
            checks += 1;
            if !(c.within_t && c.lower_ok && c.upper_ok) {
                return Err(format!("{}: {c:?}", tri.name));
            }
        }
        // The first two are the figure-eight and Gieseking files.
        if i == 0 && !(r.checks.len() == 4 && r.checks.iter().all(|c| c.dim == 0 && c.lower == 0)) {
            return Err(format!("figure-eight components {:?}", r.checks));
        }
        if i == 1
            && !(r.checks.is_empty()
                && r.empty
                    .as_ref()
                    .is_some_and(|e| e.lower == -1 && e.dim == -1 && e.upper_ok))
        {
            return Err(format!("gieseking {:?}", r.empty));
        }
    }
    Ok(format!("{checks} maximal components within bounds"))
}

/// Extreme rays from every set of tight coordinates that cuts the solution
/// space down to a line.
pub fn brute_force_rays(eqs: &[Vec<Int>], n: usize, support: Option<&[bool]>) -> Vec<Vec<Int>> {
    let allowed: Vec<usize> = (0..n).filter(|&i| support.is_none_or(|s| s[i])).collect();
    let mut base = eqs.to_vec();
    for i in (0..n).filter(|i| !allowed.contains(i)) {
        let mut e = vec![Int::zero(); n];
        e[i] = 1.into();
        base.push(e);
    }
    let m = allowed.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        let mut rows = base.clone();
        for (b, &i) in allowed.iter().enumerate() {
            if mask & (1 << b) != 0 {
                let mut e = vec![Int::zero(); n];
                e[i] = 1.into();
                rows.push(e);
            }
        }
        let k = linalg::kernel_basis(&rows, n);
        if k.len() != 1 {
            continue;
        }
        let mut r = k[0].clone();
        if r.iter().any(|x| x.is_negative()) {
            r = neg(&r);
        }
        if r.iter().all(|x| !x.is_negative()) {
            out.push(linalg::primitive(&r));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn c11(tris: &[Triangulation]) -> Result<String, String> {
    let mut cones = 0;
    for tri in tris.iter().filter(|t| t.size() <= 3) {
        let sk = Skeleton::new(tri).map_err(|e| e.to_string())?;
        let b = qmatching_matrix(tri, &sk);
        let eqs = b.big();
        let mut supports: Vec<Option<Vec<bool>>> = vec![None];
        supports.extend(all_supports(tri.size()).into_iter().map(Some));
        for s in supports {
            let dd = extreme_rays(&RationalCone {
                dim: b.ncols,
                equalities: eqs.clone(),
                support: s.clone(),
            });
            let bf = brute_force_rays(&eqs, b.ncols, s.as_deref());
            cones += 1;
            if dd != bf {
                return Err(format!("{}: {dd:?} vs {bf:?}", tri.name));
            }
        }
    }
    Ok(format!("{cones} cones agree"))
}

pub fn run(seed: u64) -> Vec<Check> {
    let f = bundled::figure_eight();
    let g = bundled::gieseking();
    let mut tris = vec![f.clone(), g.clone()];
    tris.extend(corpus(seed, 50));
    let results: Vec<(&'static str, Result<String, String>)> = vec![
        ("figure-eight matching equation", c1(&f)),
        ("figure-eight admissible classes", c2(&f)),
        ("figure-eight surface reconstruction", c3(&f)),
        ("figure-eight closed surfaces", c4(&f)),
        ("gieseking", c5(&g)),
        ("double cover", c6(&g, &f)),
        ("dimension formulas", c7(&tris)),
        (
            "linear maps",
            linear_maps(&f).and_then(|a| linear_maps(&g).map(|b| format!("{a}; {b}"))),
        ),
        ("pairing consistency", c9(&f, seed)),
        ("dimension bounds", c10(&tris)),
        ("double description against brute force", c11(&tris)),
    ];
    results
        .into_iter()
        .enumerate()
        .map(|(i, (title, r))| {
            let pass = r.is_ok();
            let detail = r.unwrap_or_else(|e| e);
            Check {
                id: i + 1,
                title,
                pass,
                detail,
            }
        })
        .collect()
}
