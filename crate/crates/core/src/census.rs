//! Small generated triangulations: exhaustive one-tetrahedron search and
//! random closed gluings.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::perm::Perm;
use crate::skeleton::Skeleton;
use crate::triangulation::{Gluing, Tetrahedron, Triangulation};

/// Every valid closed triangulation with one tetrahedron, in a fixed order.
pub fn one_tet_closed() -> Vec<Triangulation> {
    let matchings: [[(u8, u8); 2]; 3] = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];
    let mut out = Vec::new();
    for m in matchings {
        for p in Perm::all()
            .into_iter()
            .filter(|p| p.apply(m[0].0) == m[0].1)
        {
            for q in Perm::all()
                .into_iter()
                .filter(|q| q.apply(m[1].0) == m[1].1)
            {
                let mut g = [None; 4];
                g[m[0].0 as usize] = Some(Gluing { tet: 0, perm: p });
                g[m[0].1 as usize] = Some(Gluing {
                    tet: 0,
                    perm: p.inverse(),
                });
                g[m[1].0 as usize] = Some(Gluing { tet: 0, perm: q });
                g[m[1].1 as usize] = Some(Gluing {
                    tet: 0,
                    perm: q.inverse(),
                });
                let tri = Triangulation::new("one-tet", alloc::vec![Tetrahedron { gluings: g }]);
                if tri.validate().is_valid() {
                    out.push(tri);
                }
            }
        }
    }
    out
}

/// The one-tetrahedron triangulation with a single edge and a Klein bottle
/// vertex link, in canonical labelling.
pub fn gieseking() -> Triangulation {
    let found = one_tet_closed()
        .into_iter()
        .find(|tri| {
            let sk = Skeleton::new(tri).expect("valid");
            if sk.edges.len() != 1 || sk.vertices.len() != 1 {
                return false;
            }
            let l = crate::link::build_link(tri, &sk, 0);
            l.chi == 0 && !l.orientable
        })
        .expect("search finds a Klein bottle link");
    let mut tri = crate::iso::canonical_form(&found);
    tri.name = "gieseking".into();
    tri
}

/// Orientable double cover of [`gieseking`], canonically relabelled.
pub fn figure_eight() -> Triangulation {
    let (cover, _) = crate::cover::double_cover(&gieseking()).expect("non-orientable");
    let mut tri = crate::iso::canonical_form(&cover);
    tri.name = "figure-eight".into();
    tri
}

/// A two-tetrahedron closed triangulation all of whose vertex links are
/// spheres, found by search over gluings between the two tetrahedra.
pub fn two_tet_spheres() -> Triangulation {
    for tgt in Perm::all() {
        for p0 in Perm::all()
            .into_iter()
            .filter(|p| p.apply(0) == tgt.apply(0))
        {
            let mut choices = [p0; 4];
            if search_faces(tgt, &mut choices, 1) {
                let tri = bipartite(&choices);
                let mut tri = crate::iso::canonical_form(&tri);
                tri.name = "two-tet-spheres".into();
                return tri;
            }
        }
    }
    panic!("no sphere-link example");
}

fn bipartite(perms: &[Perm; 4]) -> Triangulation {
    let mut a = [None; 4];
    let mut b = [None; 4];
    for f in 0..4u8 {
        let p = perms[f as usize];
        a[f as usize] = Some(Gluing { tet: 1, perm: p });
        b[p.apply(f) as usize] = Some(Gluing {
            tet: 0,
            perm: p.inverse(),
        });
    }
    Triangulation::new(
        "two-tet",
        alloc::vec![Tetrahedron { gluings: a }, Tetrahedron { gluings: b }],
    )
}

fn search_faces(tgt: Perm, choices: &mut [Perm; 4], f: usize) -> bool {
    if f == 4 {
        let tri = bipartite(choices);
        let Ok(sk) = Skeleton::new(&tri) else {
            return false;
        };
        return (0..sk.vertices.len()).all(|v| crate::link::build_link(&tri, &sk, v).chi == 2);
    }
    for p in Perm::all()
        .into_iter()
        .filter(|p| p.apply(f as u8) == tgt.apply(f as u8))
    {
        choices[f] = p;
        if search_faces(tgt, choices, f + 1) {
            return true;
        }
    }
    false
}

/// A uniformly random closed face pairing on `t` tetrahedra. The result may
/// fail validation (edge reversal); callers discard those.
pub fn random_gluing<R: Rng + ?Sized>(rng: &mut R, t: usize) -> Triangulation {
    let mut faces: Vec<(usize, u8)> = (0..t).flat_map(|k| (0..4u8).map(move |f| (k, f))).collect();
    faces.shuffle(rng);
    let mut tets = alloc::vec![Tetrahedron { gluings: [None; 4] }; t];
    for pair in faces.chunks(2) {
        let (a, fa) = pair[0];
        let (b, fb) = pair[1];
        let cands: Vec<Perm> = Perm::all()
            .into_iter()
            .filter(|p| p.apply(fa) == fb)
            .collect();
        let p = cands[rng.gen_range(0..cands.len())];
        tets[a].gluings[fa as usize] = Some(Gluing { tet: b, perm: p });
        tets[b].gluings[fb as usize] = Some(Gluing {
            tet: a,
            perm: p.inverse(),
        });
    }
    Triangulation::new(alloc::format!("random-{t}"), tets)
}

/// Draws random gluings until one validates.
pub fn random_valid<R: Rng + ?Sized>(rng: &mut R, t: usize) -> Triangulation {
    loop {
        let tri = random_gluing(rng, t);
        if tri.validate().is_valid() {
            return tri;
        }
    }
}
