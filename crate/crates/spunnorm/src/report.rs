//! One function per subcommand. Each builds a JSON value and a text rendering
//! of the same numbers.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use spunnorm_core::boundary::{pairing, Boundary, BoundaryClass, FrameKind, Slope};
use spunnorm_core::cover::double_cover;
use spunnorm_core::linalg::{self, Int};
use spunnorm_core::polytope::{bounds_report, extreme_rays, pf_components_for, RationalCone};
use spunnorm_core::qmatch::{dimension_report, kernel_basis};
use spunnorm_core::skeleton::Skeleton;
use spunnorm_core::surface::{reconstruct_core, triangle_fill, CoreSurface};
use spunnorm_core::{Error, Triangulation};

use crate::format::{parse_curves, parse_triangulation, write_triangulation, FormatError};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub struct Output {
    pub text: String,
    pub json: Value,
}

pub fn num(x: &Int) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn nums(v: &[Int]) -> Value {
    Value::Array(v.iter().map(num).collect())
}

fn tuple<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

pub fn read(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

/// Parse and validate.
pub fn load(path: &str) -> CliResult<Triangulation> {
    let tri = parse_triangulation(&read(path)?)?;
    let report = tri.validate();
    if !report.is_valid() {
        return Err(CliError::Input(format!("{path}: {report}")));
    }
    Ok(tri)
}

pub fn parse_csv(s: &str) -> CliResult<Vec<Int>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::Input(format!("not an integer: {x:?}")))
        })
        .collect()
}

fn coord(j: usize) -> String {
    format!("q{}_{}", j / 3, j % 3)
}

/// `0 = a x + b y ...` with content removed and the leading sign positive.
pub fn equation(row: &[i64]) -> String {
    let mut p = linalg::primitive(&linalg::vec_big(row));
    if p.iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        p.iter_mut().for_each(|x| *x = -x.clone());
    }
    let mut s = String::from("0 =");
    let mut first = true;
    for (j, c) in p.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let sign = if c.is_negative() {
            "-"
        } else if first {
            ""
        } else {
            "+"
        };
        let mag = c.abs();
        let mag = if mag == BigInt::from(1) {
            String::new()
        } else {
            format!("{mag} ")
        };
        if first {
            let _ = write!(s, " {}{}{}", sign, mag, coord(j));
        } else {
            let _ = write!(s, " {} {}{}", sign, mag, coord(j));
        }
        first = false;
    }
    s
}

pub fn info(tri: &Triangulation) -> CliResult<Output> {
    let sk = Skeleton::new(tri)?;
    let s = sk.summary(tri);
    let mut text = format!("triangulation {:?}: valid\n", tri.name);
    let _ = writeln!(
        text,
        "t={} e={} v={} f={} v_o={} v_n={} chi={} orientable={}",
        s.t, s.e, s.v, s.f, s.v_o, s.v_n, s.chi, s.orientable
    );
    let degrees: Vec<usize> = sk.edges.iter().map(|e| e.degree()).collect();
    let _ = writeln!(text, "edge degrees {}", tuple(&degrees));
    let mut links = Vec::new();
    for v in 0..sk.vertices.len() {
        let l = spunnorm_core::link::build_link(tri, &sk, v);
        let (b1, torsion) = l.homology();
        let torsion: Vec<Int> = torsion;
        let _ = writeln!(
            text,
            "vertex {v}: link triangles={} chi={} orientable={} genus={} H1=Z^{}{}",
            l.len(),
            l.chi,
            l.orientable,
            l.genus(),
            b1,
            torsion
                .iter()
                .map(|t| format!(" + Z/{t}"))
                .collect::<String>()
        );
        links.push(json!({
            "vertex": v, "triangles": l.len(), "chi": l.chi, "orientable": l.orientable,
            "genus": l.genus(), "b1": b1, "torsion": nums(&torsion),
        }));
    }
    let json = json!({
        "name": tri.name, "t": s.t, "e": s.e, "v": s.v, "f": s.f, "v_o": s.v_o, "v_n": s.v_n,
        "chi": s.chi, "orientable": s.orientable, "orientation": s.orientation,
        "edge_degrees": degrees, "links": links,
    });
    Ok(Output { text, json })
}

pub fn qmatch(tri: &Triangulation) -> CliResult<Output> {
    let sk = Skeleton::new(tri)?;
    let b = spunnorm_core::qmatch::qmatching_matrix(tri, &sk);
    let d = dimension_report(tri, &sk);
    let ech = linalg::echelon(&b.big(), b.ncols);
    let independent: Vec<Vec<i64>> = ech
        .rows
        .iter()
        .map(|r| {
            linalg::primitive(r)
                .iter()
                .map(|x| x.to_i64().unwrap())
                .collect()
        })
        .collect();
    let mut text = String::from("matrix B:\n");
    for (r, e) in b.rows.iter().zip(&b.edges) {
        let _ = writeln!(text, "  edge {e}: {}", tuple(r));
    }
    let _ = writeln!(text, "independent equations:");
    for r in &independent {
        let _ = writeln!(text, "  {}", equation(r));
    }
    let _ = writeln!(
        text,
        "rank B={} (e-v_o={}) dim Q={} dim PQ={} (3t-e+v_o={}, chi+2t-v_n={}) rank_ok={} dim_ok={}",
        d.rank_b,
        d.e_minus_v_o,
        d.dim_q,
        d.dim_q as i64 - 1,
        d.v_o_minus_e_plus_3t,
        d.chi_plus_2t_minus_v_n,
        d.rank_ok,
        d.dim_ok
    );
    let json = json!({
        "matrix": b.rows, "edges": b.edges, "equations": independent,
        "rank": d.rank_b, "dim_q": d.dim_q, "dim_pq": d.dim_q as i64 - 1,
        "e_minus_v_o": d.e_minus_v_o, "v_o_minus_e_plus_3t": d.v_o_minus_e_plus_3t,
        "chi_plus_2t_minus_v_n": d.chi_plus_2t_minus_v_n, "rank_ok": d.rank_ok, "dim_ok": d.dim_ok,
    });
    Ok(Output { text, json })
}

fn vectors(title: &str, key: &str, vs: &[Vec<Int>]) -> Output {
    let mut text = format!("{title} ({}):\n", vs.len());
    for v in vs {
        let _ = writeln!(text, "  {}", tuple(v));
    }
    Output {
        text,
        json: json!({ "count": vs.len(), key: vs.iter().map(|v| nums(v)).collect::<Vec<_>>() }),
    }
}

pub fn kernel(tri: &Triangulation) -> CliResult<Output> {
    let sk = Skeleton::new(tri)?;
    let b = spunnorm_core::qmatch::qmatching_matrix(tri, &sk);
    Ok(vectors("basis of Q(T)", "basis", &kernel_basis(&b)))
}

pub fn vertices(tri: &Triangulation) -> CliResult<Output> {
    let sk = Skeleton::new(tri)?;
    let b = spunnorm_core::qmatch::qmatching_matrix(tri, &sk);
    let rays = extreme_rays(&RationalCone {
        dim: b.ncols,
        equalities: b.big(),
        support: None,
    });
    Ok(vectors("extreme rays of PQ(T)", "rays", &rays))
}

pub struct Framing {
    pub lambda: Vec<Int>,
    pub mu: Vec<Int>,
    pub vertex: usize,
}

pub fn load_framing(path: &str, bd: &Boundary) -> CliResult<Framing> {
    let c = parse_curves(&read(path)?)?;
    if c.vertex >= bd.frames.len() {
        return Err(CliError::Input(format!("no vertex {}", c.vertex)));
    }
    let (lambda, mu) = bd.framing(c.vertex, &c.get("lambda")?, &c.get("mu")?)?;
    Ok(Framing {
        lambda,
        mu,
        vertex: c.vertex,
    })
}

/// Lines and JSON for ∂ at every vertex.
fn boundary_data(
    bd: &Boundary,
    n: &[Int],
    framing: Option<&Framing>,
) -> CliResult<(String, Value)> {
    let mut text = String::new();
    let mut out = Vec::new();
    for f in &bd.frames {
        let v = f.vertex;
        let class = bd.boundary_class(n, v)?;
        let torus = f.link.orientable && f.link.chi == 0;
        if torus {
            let fr = framing
                .filter(|fr| fr.vertex == v)
                .map(|fr| (fr.lambda.clone(), fr.mu.clone()));
            let basis = if fr.is_some() {
                "curves file"
            } else {
                "tool basis, not canonical"
            };
            let (nl, nm) = match &fr {
                Some((l, m)) => (linalg::dot(l, n), linalg::dot(m, n)),
                None => match &f.kind {
                    FrameKind::Orientable { symplectic, .. } => (
                        linalg::dot(&symplectic[0].nu_lambda, n),
                        linalg::dot(&symplectic[0].nu_mu, n),
                    ),
                    _ => unreachable!(),
                },
            };
            let slope = bd.torus_slope(n, v, fr.as_ref())?;
            match &slope {
                Slope::Empty => {
                    let _ = writeln!(text, "vertex {v}: no boundary");
                }
                Slope::Curves { p, q, d } => {
                    let _ = writeln!(
                        text,
                        "vertex {v}: slope {p}/{q} (p={p}, q={q}), curves d={d}"
                    );
                }
            }
            let _ = writeln!(text, "  nu(lambda)={nl} nu(mu)={nm} [{basis}]");
            let s = match &slope {
                Slope::Empty => Value::Null,
                Slope::Curves { p, q, d } => json!({"p": num(p), "q": num(q), "d": num(d)}),
            };
            out.push(json!({"vertex": v, "kind": "torus", "basis": basis, "nu_lambda": num(&nl), "nu_mu": num(&nm), "slope": s}));
            continue;
        }
        match &class {
            _ if class.is_zero() => {
                let _ = writeln!(text, "vertex {v}: no boundary");
            }
            BoundaryClass::Orientable(c) => {
                let _ = writeln!(
                    text,
                    "vertex {v}: class {} [tool basis, not canonical]",
                    tuple(c)
                );
            }
            BoundaryClass::NonOrientable(c) => {
                let _ = writeln!(text, "vertex {v}: lambda' coefficients {}", tuple(c));
            }
        }
        let (kind, c) = match &class {
            BoundaryClass::Orientable(c) => ("orientable", c),
            BoundaryClass::NonOrientable(c) => ("non-orientable", c),
        };
        out.push(json!({"vertex": v, "kind": kind, "class": nums(c)}));
    }
    Ok((text, Value::Array(out)))
}

pub fn boundary(tri: &Triangulation, n: &[Int], curves: Option<&str>) -> CliResult<Output> {
    let sk = Skeleton::new(tri)?;
    let bd = Boundary::new(tri, &sk)?;
    let framing = curves.map(|c| load_framing(c, &bd)).transpose()?;
    let (text, vs) = boundary_data(&bd, n, framing.as_ref())?;
    let spin = bd.spin_set(n);
    let text = format!("{text}spins into {}\n", tuple(&spin));
    Ok(Output {
        text,
        json: json!({"solution": nums(n), "vertices": vs, "spin_set": spin}),
    })
}

fn surface_line(s: &CoreSurface) -> String {
    let chi = s.chi.map_or("n/a".to_string(), |c| c.to_string());
    let b: Vec<String> = s
        .boundary_circles
        .iter()
        .map(|(v, c)| format!("({v},{c})"))
        .collect();
    let spins: Vec<String> = s.spin_set.iter().map(|v| v.to_string()).collect();
    format!(
        "surface: chi={chi} orientable={} boundary=[{}] spins_into=[{}]",
        s.orientable,
        b.join(","),
        spins.join(",")
    )
}

fn surface_json(s: &CoreSurface) -> Value {
    json!({
        "chi": s.chi, "orientable": s.orientable,
        "boundary": s.boundary_circles, "spins_into": s.spin_set,
        "boundary_d": s.boundary_d.iter().map(|(v, d)| json!([v, num(d)])).collect::<Vec<_>>(),
        "quads": s.quads, "triangles": s.triangles, "padding": s.k,
    })
}

pub fn surface(tri: &Triangulation, n: &[Int], padding: Option<i64>) -> CliResult<Output> {
    let sk = Skeleton::new(tri)?;
    let bd = Boundary::new(tri, &sk)?;
    let fill = triangle_fill(tri, &sk, &bd.qmatrix, n, 1)?;
    let k = padding.unwrap_or(fill.k_min);
    let s = reconstruct_core(tri, &sk, &bd, n, k)?;
    let text = format!(
        "{}\npadding K={} (K_min={}) quads={} triangles={}\n",
        surface_line(&s),
        k,
        fill.k_min,
        s.quads,
        s.triangles
    );
    let mut json = surface_json(&s);
    json["k_min"] = json!(fill.k_min);
    Ok(Output { text, json })
}

pub fn admissible(tri: &Triangulation, curves: Option<&str>) -> CliResult<Output> {
    let sk = Skeleton::new(tri)?;
    let s = sk.summary(tri);
    let bd = Boundary::new(tri, &sk)?;
    let framing = curves.map(|c| load_framing(c, &bd)).transpose()?;
    let comps = pf_components_for(&bd);
    let report = bounds_report(&s, &comps);
    let mut text = String::new();
    let mut cj = Vec::new();
    let classes: usize = comps.iter().filter(|c| c.maximal).count();
    let _ = writeln!(
        text,
        "{} admissible components ({} maximal)",
        comps.len(),
        classes
    );
    for (i, c) in comps.iter().enumerate() {
        let _ = writeln!(
            text,
            "component {i}: support {} dim {} maximal {}",
            tuple(&c.support),
            c.dim,
            c.maximal
        );
        let mut rays = Vec::new();
        for r in &c.rays {
            let _ = writeln!(text, "  ray {}", tuple(r));
            let (bt, bj) = boundary_data(&bd, r, framing.as_ref())?;
            for line in bt.lines() {
                let _ = writeln!(text, "    {line}");
            }
            let sj = match reconstruct_core(
                tri,
                &sk,
                &bd,
                r,
                triangle_fill(tri, &sk, &bd.qmatrix, r, 1)?.k_min,
            ) {
                Ok(surf) => {
                    let _ = writeln!(text, "    {}", surface_line(&surf));
                    surface_json(&surf)
                }
                Err(e) => {
                    let _ = writeln!(text, "    surface: {e}");
                    json!(e.to_string())
                }
            };
            rays.push(json!({"ray": nums(r), "boundary": bj, "surface": sj}));
        }
        cj.push(json!({
            "support": c.support, "dim": c.dim, "rays": c.rays.iter().map(|r| nums(r)).collect::<Vec<_>>(),
            "maximal": c.maximal, "dim_ker_nu": c.dim_ker, "dim_span_ker_nu": c.dim_span_ker, "details": rays,
        }));
    }
    let mut bounds = Vec::new();
    for b in report.checks.iter().chain(report.empty.iter()) {
        let _ = writeln!(
            text,
            "bounds for support {}: {} <= dim {} <= {} (dim R cap ker = {}), within t-1: {}, ok: {}, span upper {}",
            tuple(&b.support),
            b.lower,
            b.dim,
            b.upper,
            b.dim_ker,
            b.within_t,
            b.lower_ok && b.upper_ok,
            b.upper_span
        );
        bounds.push(json!({
            "support": b.support, "dim": b.dim, "lower": b.lower, "upper": b.upper, "dim_ker_nu": b.dim_ker,
            "within_t": b.within_t, "lower_ok": b.lower_ok, "upper_ok": b.upper_ok, "upper_span": b.upper_span,
        }));
    }
    Ok(Output {
        text,
        json: json!({"components": cj, "bounds": bounds}),
    })
}

pub fn pairing_cmd(tri: &Triangulation, a: &[Int], b: &[Int]) -> CliResult<Output> {
    let sk = Skeleton::new(tri)?;
    let bd = Boundary::new(tri, &sk)?;
    let star = bd.star(a, b)?;
    let c = pairing(a, b, &bd.labeling, bd.oriented)?;
    let text = format!(
        "<a,b> = {c} (block form)\nnu(a)*nu(b) = {star} (boundary curves)\nagree: {}\n",
        c == star
    );
    Ok(Output {
        text,
        json: json!({"block": c.to_string(), "boundary": star.to_string(), "agree": c == star}),
    })
}

pub fn doublecover(tri: &Triangulation, out: &str) -> CliResult<Output> {
    let (c, _) = double_cover(tri)?;
    std::fs::write(out, write_triangulation(&c))
        .map_err(|e| CliError::Input(format!("{out}: {e}")))?;
    let s = Skeleton::new(&c)?.summary(&c);
    let text = format!(
        "wrote {out}: t={} e={} v={} chi={} orientable={}\n",
        s.t, s.e, s.v, s.chi, s.orientable
    );
    Ok(Output {
        text,
        json: json!({"out": out, "t": s.t, "e": s.e, "v": s.v, "chi": s.chi, "orientable": s.orientable}),
    })
}
