//! Splitting a finite group into directly indecomposable factors.
//!
//! Finite groups satisfy Krull–Schmidt, so the multiset of indecomposable
//! factors is an isomorphism invariant. The ring of group symbols relies on
//! this to give products that exceed the fusion cap a canonical form.

use std::collections::{HashMap, HashSet};

use super::group::FiniteGroup;

type Mask = Vec<u64>;

fn mask_from(member: &[bool]) -> Mask {
    let mut m = vec![0u64; member.len().div_ceil(64)];
    for (i, _) in member.iter().enumerate().filter(|(_, &b)| b) {
        m[i / 64] |= 1 << (i % 64);
    }
    m
}

fn mask_len(m: &Mask) -> usize {
    m.iter().map(|w| w.count_ones() as usize).sum()
}

fn mask_elements(m: &Mask) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &word) in m.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            out.push(w * 64 + b);
            bits &= bits - 1;
        }
    }
    out
}

/// All normal subgroups, as element masks. Every normal subgroup is a join
/// of normal closures of single conjugacy classes, and the join of two
/// normal subgroups is their product set.
fn normal_subgroups(g: &FiniteGroup) -> Vec<Mask> {
    let class_closures: Vec<Vec<usize>> = g
        .conjugacy_classes()
        .into_iter()
        .map(|class| mask_elements(&mask_from(&g.generated_subgroup(&class))))
        .collect();
    let trivial = mask_from(&g.generated_subgroup(&[]));
    let mut seen: HashSet<Mask> = HashSet::from([trivial.clone()]);
    let mut found = vec![trivial];
    let mut frontier = 0;
    while frontier < found.len() {
        let base = mask_elements(&found[frontier]);
        frontier += 1;
        for closure in &class_closures {
            let mut member = vec![false; g.order()];
            for &a in &base {
                for &b in closure {
                    member[g.mul(a, b)] = true;
                }
            }
            let joined = mask_from(&member);
            if seen.insert(joined.clone()) {
                found.push(joined);
            }
        }
    }
    found
}

/// Cyclic prime-power factors of an abelian group, read off from how many
/// elements have order dividing each prime power.
fn abelian_factors(g: &FiniteGroup) -> Vec<FiniteGroup> {
    let orders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
    let mut n = g.order();
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        if !n.is_multiple_of(p) {
            p += 1;
            continue;
        }
        while n.is_multiple_of(p) {
            n /= p;
        }
        // rank[k] = number of cyclic p-factors of order at least p^k.
        let mut log_count = vec![0u32];
        let mut pk = 1;
        loop {
            pk *= p;
            let count = orders.iter().filter(|&&o| pk % o == 0).count();
            let log = count.ilog(p);
            if log == *log_count.last().unwrap() {
                break;
            }
            log_count.push(log);
        }
        let rank: Vec<u32> = log_count.windows(2).map(|w| w[1] - w[0]).collect();
        for k in 0..rank.len() {
            let exactly = rank[k] - rank.get(k + 1).copied().unwrap_or(0);
            for _ in 0..exactly {
                out.push(FiniteGroup::cyclic(p.pow(k as u32 + 1)));
            }
        }
    }
    out.sort_by_key(FiniteGroup::order);
    out
}

/// A nontrivial internal direct decomposition `G = N × M`, if one exists.
pub fn split(g: &FiniteGroup) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.order();
    if n < 4 {
        return None;
    }
    let normals = normal_subgroups(g);
    let mut by_order: HashMap<usize, Vec<&Mask>> = HashMap::new();
    for m in &normals {
        by_order.entry(mask_len(m)).or_default().push(m);
    }
    let mut orders: Vec<usize> = by_order.keys().copied().filter(|&k| k > 1 && k < n).collect();
    orders.sort_unstable();
    for k in orders {
        let Some(complements) = by_order.get(&(n / k)) else {
            continue;
        };
        for a in &by_order[&k] {
            for b in complements {
                let meet: usize = a
                    .iter()
                    .zip(b.iter())
                    .map(|(x, y)| (x & y).count_ones() as usize)
                    .sum();
                if meet == 1 {
                    return Some((mask_elements(a), mask_elements(b)));
                }
            }
        }
    }
    None
}

/// Directly indecomposable factors of `g`, smallest first. The trivial group
/// has no factors.
pub fn indecomposable_factors(g: &FiniteGroup) -> Vec<FiniteGroup> {
    if g.is_trivial() {
        return Vec::new();
    }
    if g.is_abelian() {
        return abelian_factors(g);
    }
    match split(g) {
        None => vec![g.clone()],
        Some((a, b)) => {
            let mut out = indecomposable_factors(&g.subgroup(format!("{}:N", g.name()), &a));
            out.extend(indecomposable_factors(&g.subgroup(format!("{}:M", g.name()), &b)));
            out.sort_by_key(FiniteGroup::order);
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_engine::catalog::by_name;

    fn factor_orders(name: &str) -> Vec<usize> {
        indecomposable_factors(&by_name(name).unwrap())
            .iter()
            .map(FiniteGroup::order)
            .collect()
    }

    #[test]
    fn cyclic_groups_split_into_prime_powers() {
        assert_eq!(factor_orders("Z/6"), vec![2, 3]);
        assert_eq!(factor_orders("Z/12"), vec![3, 4]);
        assert_eq!(factor_orders("Z/8"), vec![8]);
        assert_eq!(factor_orders("Z/1"), Vec::<usize>::new());
    }

    #[test]
    fn known_decompositions() {
        assert_eq!(factor_orders("Z/2 x Z/2 x Z/2"), vec![2, 2, 2]);
        assert_eq!(factor_orders("S3"), vec![6]);
        assert_eq!(factor_orders("Q8"), vec![8]);
        assert_eq!(factor_orders("D6"), vec![2, 6]);
        assert_eq!(factor_orders("A4"), vec![12]);
        assert_eq!(factor_orders("Dic3"), vec![12]);
        assert_eq!(factor_orders("S3 x Q8"), vec![6, 8]);
        assert_eq!(factor_orders("Z/4 x Z/2 x Z/8 x Z/3"), vec![2, 3, 4, 8]);
        assert_eq!(factor_orders("D4 x Z/2 x Z/2"), vec![2, 2, 8]);
    }

    #[test]
    fn nonabelian_split_agrees_with_abelian_route() {
        // Run the generic splitter on abelian input and compare orders.
        let g = by_name("Z/2 x Z/6").unwrap();
        let (a, b) = split(&g).unwrap();
        assert_eq!(a.len() * b.len(), 12);
    }
}
