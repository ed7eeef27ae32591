//! The bundled Gieseking and figure-eight examples, how they are generated,
//! and the reference data they are checked against.

use num_bigint::BigInt;
use spunnorm_core::boundary::{nu_functional, Boundary};
use spunnorm_core::census;
use spunnorm_core::linalg::{self, Int};
use spunnorm_core::link::{DualCycle, LinkSurface};
use spunnorm_core::skeleton::Skeleton;
use spunnorm_core::Triangulation;

use crate::format::{
    parse_curves, parse_triangulation, write_curves, write_triangulation, CurveFile, NamedCurve,
};

pub const GIESEKING_JSON: &str = include_str!("../data/gieseking.json");
pub const FIG8_JSON: &str = include_str!("../data/fig8.json");
pub const FIG8_CURVES_JSON: &str = include_str!("../data/fig8_curves.json");

/// Reference coordinate `j` of the figure-eight file is tool coordinate
/// `FIG8_ORDER[j]`. Per tet this is a cyclic shift of the
/// orientation-aligned order.
pub const FIG8_ORDER: [usize; 6] = [2, 0, 1, 4, 3, 5];

/// Framing functionals in reference order.
pub const FIG8_LAMBDA: [i64; 6] = [2, 2, -4, 0, 0, 0];
pub const FIG8_MU: [i64; 6] = [0, -1, 1, -1, 0, 1];

/// The single matching equation in reference order, up to sign.
pub const FIG8_EQUATION: [i64; 6] = [1, 1, -2, 1, 1, -2];

pub struct Fig8Class {
    pub vector: [i64; 6],
    pub nu_mu: i64,
    pub nu_lambda: i64,
    pub slope: i64,
}

/// The four admissible classes in reference order.
pub const FIG8_CLASSES: [Fig8Class; 4] = [
    Fig8Class {
        vector: [2, 0, 0, 0, 0, 1],
        nu_mu: 1,
        nu_lambda: 4,
        slope: -4,
    },
    Fig8Class {
        vector: [0, 2, 0, 0, 0, 1],
        nu_mu: -1,
        nu_lambda: 4,
        slope: 4,
    },
    Fig8Class {
        vector: [0, 0, 1, 2, 0, 0],
        nu_mu: -1,
        nu_lambda: -4,
        slope: -4,
    },
    Fig8Class {
        vector: [0, 0, 1, 0, 2, 0],
        nu_mu: 1,
        nu_lambda: -4,
        slope: 4,
    },
];

pub const GIESEKING_EQUATION: [i64; 3] = [1, 1, -2];
/// ν of the orientation-reversing core curve of the Klein bottle.
pub const GIESEKING_MU: [i64; 3] = [0, -2, 2];

pub fn to_reference<T: Clone>(v: &[T]) -> Vec<T> {
    FIG8_ORDER.iter().map(|&i| v[i].clone()).collect()
}

pub fn from_reference<T: Clone + Default>(v: &[T]) -> Vec<T> {
    let mut out = vec![T::default(); 6];
    for (j, &i) in FIG8_ORDER.iter().enumerate() {
        out[i] = v[j].clone();
    }
    out
}

pub fn gieseking() -> Triangulation {
    parse_triangulation(GIESEKING_JSON).expect("bundled file parses")
}

pub fn figure_eight() -> Triangulation {
    parse_triangulation(FIG8_JSON).expect("bundled file parses")
}

pub fn figure_eight_curves() -> CurveFile {
    parse_curves(FIG8_CURVES_JSON).expect("bundled file parses")
}

/// Simple closed dual cycles up to `max_len` steps, shortest first.
pub fn simple_cycles(l: &LinkSurface, max_len: usize) -> Vec<DualCycle> {
    fn walk(
        l: &LinkSurface,
        start: usize,
        path: &mut Vec<(usize, u8)>,
        on: &mut Vec<bool>,
        max_len: usize,
        out: &mut Vec<DualCycle>,
    ) {
        let k = path.last().map_or(start, |&(k, s)| l.cross(k, s).0);
        let i = l.triangles[k].1;
        for s in (0..4u8).filter(|&s| s != i) {
            let (b, _) = l.cross(k, s);
            path.push((k, s));
            if b == start {
                out.push(DualCycle {
                    steps: path.clone(),
                });
            } else if b > start && !on[b] && path.len() < max_len {
                on[b] = true;
                walk(l, start, path, on, max_len, out);
                on[b] = false;
            }
            path.pop();
        }
    }
    let mut out = Vec::new();
    for start in 0..l.len() {
        let mut on = vec![false; l.len()];
        on[start] = true;
        walk(l, start, &mut Vec::new(), &mut on, max_len, &mut out);
    }
    out.sort_by(|a, b| {
        a.steps
            .len()
            .cmp(&b.steps.len())
            .then_with(|| a.steps.cmp(&b.steps))
    });
    out
}

/// Shortest dual cycles realising the target framing functionals on Q(T),
/// with intersection number one.
pub fn search_framing(
    tri: &Triangulation,
    target_lambda: &[Int],
    target_mu: &[Int],
    max_len: usize,
) -> Option<CurveFile> {
    let sk = Skeleton::new(tri).ok()?;
    let bd = Boundary::new(tri, &sk).ok()?;
    let l = &bd.frames[0].link;
    let rows = bd.qmatrix.big();
    let matches = |target: &[Int]| -> Vec<DualCycle> {
        simple_cycles(l, max_len)
            .into_iter()
            .filter(|c| {
                let f = linalg::vec_big(&nu_functional(l, bd.ncols(), c));
                let diff: Vec<Int> = f.iter().zip(target).map(|(a, b)| a - b).collect();
                linalg::in_row_space(&rows, &diff)
            })
            .collect()
    };
    let ls = matches(target_lambda);
    let ms = matches(target_mu);
    for a in &ls {
        for b in &ms {
            if l.intersection(a, b).abs() == 1 {
                return Some(CurveFile {
                    vertex: 0,
                    curves: vec![
                        NamedCurve {
                            name: "lambda".into(),
                            steps: a.steps.clone(),
                        },
                        NamedCurve {
                            name: "mu".into(),
                            steps: b.steps.clone(),
                        },
                    ],
                });
            }
        }
    }
    None
}

/// The three bundled files, regenerated from scratch.
pub fn generate() -> Result<[(&'static str, String); 3], String> {
    let g = census::gieseking();
    let f = census::figure_eight();
    let lam: Vec<BigInt> = from_reference(&FIG8_LAMBDA)
        .into_iter()
        .map(BigInt::from)
        .collect();
    let mu: Vec<BigInt> = from_reference(&FIG8_MU)
        .into_iter()
        .map(BigInt::from)
        .collect();
    let curves = search_framing(&f, &lam, &mu, 8).ok_or("no framing curves found")?;
    Ok([
        ("gieseking.json", write_triangulation(&g)),
        ("fig8.json", write_triangulation(&f)),
        ("fig8_curves.json", write_curves(&curves)),
    ])
}
