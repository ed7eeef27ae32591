//! Combinatorial isomorphism of triangulations and canonical relabelling.

use alloc::vec;
use alloc::vec::Vec;

use crate::perm::Perm;
use crate::triangulation::Triangulation;

/// A relabelling carrying one triangulation onto another: tet `i` of the
/// source goes to tet `tet_map[i]` with vertices relabelled by `perms[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    pub tet_map: Vec<usize>,
    pub perms: Vec<Perm>,
}

impl Isomorphism {
    pub fn identity(t: usize) -> Self {
        Isomorphism {
            tet_map: (0..t).collect(),
            perms: vec![Perm::IDENTITY; t],
        }
    }

    /// Checks that this map carries every gluing of `a` to a gluing of `b`.
    pub fn verify(&self, a: &Triangulation, b: &Triangulation) -> bool {
        if a.size() != b.size() || self.tet_map.len() != a.size() {
            return false;
        }
        let mut hit = vec![false; b.size()];
        for &k in &self.tet_map {
            if k >= b.size() || hit[k] {
                return false;
            }
            hit[k] = true;
        }
        for i in 0..a.size() {
            let ri = self.perms[i];
            for f in 0..4u8 {
                let ga = a.tets[i].gluings[f as usize];
                let gb = b.tets[self.tet_map[i]].gluings[ri.apply(f) as usize];
                match (ga, gb) {
                    (None, None) => {}
                    (Some(ga), Some(gb)) => {
                        let want = self.perms[ga.tet].compose(ga.perm).compose(ri.inverse());
                        if gb.tet != self.tet_map[ga.tet] || gb.perm != want {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
        }
        true
    }
}

/// Searches for an isomorphism `a → b`.
pub fn are_isomorphic(a: &Triangulation, b: &Triangulation) -> Option<Isomorphism> {
    if a.size() != b.size() {
        return None;
    }
    let t = a.size();
    let mut map = vec![usize::MAX; t];
    let mut perms = vec![Perm::IDENTITY; t];
    let mut used = vec![false; t];
    if extend(a, b, &mut map, &mut perms, &mut used) {
        let iso = Isomorphism {
            tet_map: map,
            perms,
        };
        debug_assert!(iso.verify(a, b));
        Some(iso)
    } else {
        None
    }
}

fn extend(
    a: &Triangulation,
    b: &Triangulation,
    map: &mut [usize],
    perms: &mut [Perm],
    used: &mut [bool],
) -> bool {
    let Some(seed) = map.iter().position(|&m| m == usize::MAX) else {
        return true;
    };
    for target in 0..b.size() {
        if used[target] {
            continue;
        }
        for p in Perm::all() {
            let saved_map = map.to_vec();
            let saved_used = used.to_vec();
            let saved_perms = perms.to_vec();
            if propagate(a, b, seed, target, p, map, perms, used) && extend(a, b, map, perms, used)
            {
                return true;
            }
            map.copy_from_slice(&saved_map);
            used.copy_from_slice(&saved_used);
            perms.copy_from_slice(&saved_perms);
        }
    }
    false
}

#[allow(clippy::too_many_arguments)]
fn propagate(
    a: &Triangulation,
    b: &Triangulation,
    seed: usize,
    target: usize,
    p: Perm,
    map: &mut [usize],
    perms: &mut [Perm],
    used: &mut [bool],
) -> bool {
    map[seed] = target;
    perms[seed] = p;
    used[target] = true;
    let mut stack = vec![seed];
    while let Some(i) = stack.pop() {
        let ri = perms[i];
        for f in 0..4u8 {
            let ga = a.tets[i].gluings[f as usize];
            let gb = b.tets[map[i]].gluings[ri.apply(f) as usize];
            let (ga, gb) = match (ga, gb) {
                (None, None) => continue,
                (Some(x), Some(y)) => (x, y),
                _ => return false,
            };
            let rj = gb.perm.compose(ri).compose(ga.perm.inverse());
            if map[ga.tet] == usize::MAX {
                if used[gb.tet] {
                    return false;
                }
                map[ga.tet] = gb.tet;
                perms[ga.tet] = rj;
                used[gb.tet] = true;
                stack.push(ga.tet);
            } else if map[ga.tet] != gb.tet || perms[ga.tet] != rj {
                return false;
            }
        }
    }
    true
}

/// Tetrahedra grouped into connected components, each sorted.
pub fn components(tri: &Triangulation) -> Vec<Vec<usize>> {
    let t = tri.size();
    let mut comp = vec![usize::MAX; t];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for s in 0..t {
        if comp[s] != usize::MAX {
            continue;
        }
        let c = out.len();
        comp[s] = c;
        let mut members = vec![s];
        let mut stack = vec![s];
        while let Some(k) = stack.pop() {
            for g in tri.tets[k].gluings.iter().flatten() {
                if comp[g.tet] == usize::MAX {
                    comp[g.tet] = c;
                    members.push(g.tet);
                    stack.push(g.tet);
                }
            }
        }
        members.sort();
        out.push(members);
    }
    out
}

type Code = Vec<(usize, u8)>;

fn perm_code(p: Perm) -> u8 {
    Perm::all().iter().position(|&q| q == p).unwrap() as u8
}

/// Relabels a connected component breadth first from `(seed, p)`, making each
/// newly reached tetrahedron's gluing from its discoverer the identity.
fn relabel_from(tri: &Triangulation, seed: usize, p: Perm) -> (Vec<usize>, Vec<Perm>, Code) {
    let t = tri.size();
    let mut index = vec![usize::MAX; t];
    let mut order = vec![seed];
    let mut rel = vec![p];
    index[seed] = 0;
    let mut code = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let old = order[head];
        let r = rel[head];
        for nf in 0..4u8 {
            let f = r.inverse().apply(nf);
            match tri.tets[old].gluings[f as usize] {
                None => code.push((usize::MAX, 0)),
                Some(g) => {
                    if index[g.tet] == usize::MAX {
                        index[g.tet] = order.len();
                        order.push(g.tet);
                        rel.push(r.compose(g.perm.inverse()));
                    }
                    let j = index[g.tet];
                    let np = rel[j].compose(g.perm).compose(r.inverse());
                    code.push((j, perm_code(np)));
                }
            }
        }
        head += 1;
    }
    (order, rel, code)
}

/// A relabelling that depends only on the isomorphism class.
pub fn canonical_form(tri: &Triangulation) -> Triangulation {
    let mut parts: Vec<(Code, Vec<usize>, Vec<Perm>)> = Vec::new();
    for comp in components(tri) {
        let mut best: Option<(Code, Vec<usize>, Vec<Perm>)> = None;
        for &s in &comp {
            for p in Perm::all() {
                let (order, rel, code) = relabel_from(tri, s, p);
                if best.as_ref().is_none_or(|b| code < b.0) {
                    best = Some((code, order, rel));
                }
            }
        }
        parts.push(best.unwrap());
    }
    parts.sort_by(|x, y| (x.1.len(), &x.0).cmp(&(y.1.len(), &y.0)));
    let mut order = Vec::new();
    let mut rel = Vec::new();
    for (_, o, r) in parts {
        order.extend(o);
        rel.extend(r);
    }
    let mut out = tri.relabeled(&order, &rel);
    out.name = tri.name.clone();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;

    #[test]
    fn reflexive_with_identity_witness() {
        let f8 = census::figure_eight();
        let iso = are_isomorphic(&f8, &f8).unwrap();
        assert!(iso.verify(&f8, &f8));
        assert_eq!(iso, Isomorphism::identity(2));
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        assert!(are_isomorphic(&census::gieseking(), &census::figure_eight()).is_none());
    }

    #[test]
    fn canonical_form_is_invariant() {
        let f8 = census::figure_eight();
        let r = [
            Perm::new([3, 1, 0, 2]).unwrap(),
            Perm::new([1, 2, 3, 0]).unwrap(),
        ];
        let other = f8.relabeled(&[1, 0], &r);
        assert_eq!(canonical_form(&other).tets, f8.tets);
        let iso = are_isomorphic(&other, &f8).unwrap();
        assert!(iso.verify(&other, &f8));
    }

    #[test]
    fn disconnected_match() {
        let g = census::gieseking();
        let f8 = census::figure_eight();
        let a = g.disjoint_union(&f8);
        let b = f8.disjoint_union(&g);
        assert!(are_isomorphic(&a, &b).is_some());
        assert_eq!(canonical_form(&a).tets, canonical_form(&b).tets);
    }
}
