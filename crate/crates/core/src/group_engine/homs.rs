//! `Hom(Γ, G)` for a finitely presented `Γ` and a finite `G`, and orbit
//! counting under simultaneous conjugation.

use std::collections::HashMap;

use rayon::prelude::*;

use super::group::FiniteGroup;
use super::presentation::GroupPresentation;

/// All homomorphisms `Γ → G`, each given by the images of the generators.
/// Sorted lexicographically and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSet {
    pub group: FiniteGroup,
    pub presentation: GroupPresentation,
    pub homs: Vec<Vec<usize>>,
}

impl HomSet {
    pub fn len(&self) -> usize {
        self.homs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.homs.is_empty()
    }
}

fn evaluate(group: &FiniteGroup, word: &[i32], images: &[usize]) -> usize {
    word.iter().fold(group.identity(), |acc, &l| {
        let g = images[l.unsigned_abs() as usize - 1];
        group.mul(acc, if l > 0 { g } else { group.inv(g) })
    })
}

/// Relators bucketed by the last generator they mention, so each one is
/// checked as soon as its generators are all assigned.
fn relators_by_depth(p: &GroupPresentation) -> Vec<Vec<&[i32]>> {
    let mut buckets = vec![Vec::new(); p.generator_count()];
    for w in p.relators() {
        if let Some(max) = w.iter().map(|l| l.unsigned_abs() as usize).max() {
            buckets[max - 1].push(w.as_slice());
        }
    }
    buckets
}

fn dfs(
    group: &FiniteGroup,
    checks: &[Vec<&[i32]>],
    images: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let depth = images.len();
    if depth == checks.len() {
        out.push(images.clone());
        return;
    }
    for g in group.elements() {
        images.push(g);
        if checks[depth]
            .iter()
            .all(|w| evaluate(group, w, images) == group.identity())
        {
            dfs(group, checks, images, out);
        }
        images.pop();
    }
}

/// Enumerates `Hom(Γ, G)` by depth-first search over generator images,
/// pruning with every relator whose generators are already assigned. The
/// first generator's value is split across threads; the output is in
/// lexicographic order regardless.
pub fn enumerate_homs(presentation: &GroupPresentation, group: &FiniteGroup) -> HomSet {
    let checks = relators_by_depth(presentation);
    let homs: Vec<Vec<usize>> = group
        .elements()
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut images = vec![first];
            if checks[0]
                .iter()
                .all(|w| evaluate(group, w, &images) == group.identity())
            {
                dfs(group, &checks, &mut images, &mut out);
            }
            out
        })
        .flatten()
        .collect();
    HomSet {
        group: group.clone(),
        presentation: presentation.clone(),
        homs,
    }
}

fn conjugate_tuple(group: &FiniteGroup, tuple: &[usize], h: usize) -> Vec<usize> {
    tuple.iter().map(|&x| group.conjugate(x, h)).collect()
}

/// Number of orbits of `G` acting on the hom set by simultaneous
/// conjugation, found by marking orbits explicitly.
pub fn conj_orbit_count(set: &HomSet) -> usize {
    let index: HashMap<&[usize], usize> = set
        .homs
        .iter()
        .enumerate()
        .map(|(i, t)| (t.as_slice(), i))
        .collect();
    let mut marked = vec![false; set.homs.len()];
    let mut orbits = 0;
    for start in 0..set.homs.len() {
        if marked[start] {
            continue;
        }
        orbits += 1;
        for h in set.group.elements() {
            let image = conjugate_tuple(&set.group, &set.homs[start], h);
            let j = index[image.as_slice()];
            marked[j] = true;
        }
    }
    orbits
}

/// Orbit count by Burnside's lemma: the average number of tuples fixed by a
/// group element. Independent of [`conj_orbit_count`].
pub fn burnside_orbit_count(set: &HomSet) -> usize {
    let g = &set.group;
    let fixed: usize = g
        .elements()
        .map(|h| {
            set.homs
                .iter()
                .filter(|t| t.iter().all(|&x| g.mul(h, x) == g.mul(x, h)))
                .count()
        })
        .sum();
    assert_eq!(fixed % g.order(), 0, "Burnside sum must be divisible by |G|");
    fixed / g.order()
}
