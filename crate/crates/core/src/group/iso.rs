//! Isomorphism search by generator-image backtracking.

use std::collections::VecDeque;

use super::{FiniteGroup, GroupOps, EXHAUSTIVE_LIMIT};

/// Greedy generating set: repeatedly add the element outside the current
/// subgroup that generates the largest subgroup together with it.
pub fn small_generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = g.subgroup_closure(&[]);
    while current.order() < g.order() {
        let best = (0..g.order())
            .filter(|&x| !current.contains(x))
            .map(|x| {
                let mut trial = gens.clone();
                trial.push(x);
                (g.subgroup_closure(&trial).order(), x)
            })
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .expect("proper subgroup has an outside element");
        gens.push(best.1);
        current = g.subgroup_closure(&gens);
    }
    gens
}

fn fingerprints(g: &FiniteGroup) -> Vec<(usize, usize, usize)> {
    let classes = g.conjugacy_classes();
    let mut size = vec![0; g.order()];
    for c in &classes {
        for &m in &c.members {
            size[m] = c.size();
        }
    }
    (0..g.order())
        .map(|x| {
            let sq = g.mul(x, x);
            (g.element_order(x), size[x], g.element_order(sq))
        })
        .collect()
}

/// Extends images of `gens[..k]` along the Cayley graph; fails on any
/// inconsistency. Returns the partial map on the generated subgroup.
fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    map[g.identity()] = h.identity();
    used[h.identity()] = true;
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let img = h.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[img] {
                    return None;
                }
                map[y] = img;
                used[img] = true;
                queue.push_back(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}

/// Returns an isomorphism `g -> h` as an element map, verified exhaustively,
/// or `None`. Both groups must have order at most 512.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    assert!(g.order() <= EXHAUSTIVE_LIMIT, "isomorphism search limited to order {EXHAUSTIVE_LIMIT}");
    let fg = fingerprints(g);
    let fh = fingerprints(h);
    let (mut sg, mut sh) = (fg.clone(), fh.clone());
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return None;
    }
    let gens = small_generating_set(g);
    let candidates: Vec<Vec<usize>> =
        gens.iter().map(|&s| (0..h.order()).filter(|&t| fh[t] == fg[s]).collect()).collect();
    let mut images = Vec::with_capacity(gens.len());
    let map = search(g, h, &gens, &candidates, &mut images)?;
    for a in 0..g.order() {
        for b in 0..g.order() {
            assert_eq!(map[g.mul(a, b)], h.mul(map[a], map[b]), "isomorphism search returned a non-homomorphism");
        }
    }
    Some(map)
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    cands: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let k = images.len();
    if k == gens.len() {
        let map = extend(g, h, gens, images)?;
        return map.iter().all(|&m| m != usize::MAX).then_some(map);
    }
    for &t in &cands[k] {
        images.push(t);
        if extend(g, h, &gens[..=k], images).is_some() {
            if let Some(m) = search(g, h, gens, cands, images) {
                return Some(m);
            }
        }
        images.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating_group, build_affine_group, build_galois_field, cyclic_group, dihedral_group};

    #[test]
    fn generating_sets_generate() {
        for g in [alternating_group(6).unwrap(), dihedral_group(5).unwrap(), cyclic_group(12).unwrap()] {
            let gens = small_generating_set(&g);
            assert_eq!(g.subgroup_closure(&gens).order(), g.order());
            assert!(gens.len() <= 2);
        }
        assert!(small_generating_set(&FiniteGroup::trivial()).is_empty());
    }

    #[test]
    fn z4_is_not_klein() {
        let z4 = cyclic_group(4).unwrap();
        let v4 = dihedral_group(2).unwrap();
        assert!(is_isomorphic(&z4, &v4).is_none());
        assert!(is_isomorphic(&z4, &z4).is_some());
    }

    #[test]
    fn affine_q4_is_a4() {
        let g = build_affine_group(&build_galois_field(4).unwrap()).unwrap();
        let a4 = alternating_group(4).unwrap();
        let map = is_isomorphic(&g, &a4).expect("AGL(1,4) is A4");
        let mut sorted = map.clone();
        sorted.sort();
        assert_eq!(sorted, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn d4_vs_q8() {
        let d4 = dihedral_group(4).unwrap();
        let q8 = crate::group::quaternion_group();
        assert_eq!(q8.order(), 8);
        assert!(is_isomorphic(&d4, &q8).is_none());
    }
}
