//! Brute-force isomorphism testing for small multiplication-table groups.

use std::collections::VecDeque;

use super::group::FiniteGroup;
use super::GroupError;

/// Default largest order accepted by [`is_isomorphic`].
pub const DEFAULT_ISO_CAP: usize = 64;

/// Isomorphism-invariant summary used to prune searches: for each element,
/// the pair (element order, centralizer size), sorted.
pub fn fingerprint(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let mut profile: Vec<(usize, usize)> = g
        .elements()
        .map(|x| (g.element_order(x), g.centralizer_size(x)))
        .collect();
    profile.sort_unstable();
    profile
}

/// A small generating set: repeatedly adds the highest-order element not yet
/// in the generated subgroup.
pub fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut by_order: Vec<usize> = g.elements().collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut gens = Vec::new();
    let mut member = g.generated_subgroup(&gens);
    for x in by_order {
        if !member[x] {
            gens.push(x);
            member = g.generated_subgroup(&gens);
        }
    }
    gens
}

/// Whether a multiplication-table isomorphism `G → H` exists.
///
/// Both orders must be at most `cap`; larger groups need explicit labels.
pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<bool, GroupError> {
    for order in [g.order(), h.order()] {
        if order > cap {
            return Err(GroupError::OrderAboveCap { order, cap });
        }
    }
    Ok(find_isomorphism(g, h).is_some())
}

/// An explicit isomorphism as an element map `G → H`, if one exists.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() || g.is_abelian() != h.is_abelian() {
        return None;
    }
    if fingerprint(g) != fingerprint(h) {
        return None;
    }
    let gens = generating_set(g);
    let key = |grp: &FiniteGroup, x: usize| (grp.element_order(x), grp.centralizer_size(x));
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let k = key(g, s);
            h.elements().filter(|&y| key(h, y) == k).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search(g, h, &gens, &candidates, &mut images)
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = images.len();
    if depth == gens.len() {
        return extend(g, h, gens, images).filter(|m| m.iter().all(|&y| y != usize::MAX));
    }
    for &y in &candidates[depth] {
        images.push(y);
        // Prune as soon as the partial assignment fails to extend consistently.
        if extend(g, h, &gens[..=depth], images).is_some() {
            if let Some(found) = search(g, h, gens, candidates, images) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

/// Extends `gens[i] ↦ images[i]` along the Cayley graph of `⟨gens⟩`.
/// Returns `None` if the extension is not a well-defined injective
/// homomorphism on that subgroup; unreached elements map to `usize::MAX`.
fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = vec![false; h.order()];
    map[g.identity()] = h.identity();
    used[h.identity()] = true;
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(images) {
            let xs = g.mul(x, s);
            let target = h.mul(map[x], t);
            if map[xs] == usize::MAX {
                if used[target] {
                    return None;
                }
                used[target] = true;
                map[xs] = target;
                queue.push_back(xs);
            } else if map[xs] != target {
                return None;
            }
        }
    }
    Some(map)
}
