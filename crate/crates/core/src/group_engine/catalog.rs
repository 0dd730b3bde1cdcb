//! Bundled finite groups: every group of order at most 12, plus a few larger
//! ones, under stable names.

use super::group::{direct_product, FiniteGroup};
use super::GroupError;

fn named_product(name: &str, factors: &[FiniteGroup]) -> FiniteGroup {
    let mut acc = FiniteGroup::trivial();
    for f in factors {
        acc = direct_product(&acc, f).expect("catalog products are small");
    }
    acc.with_name(name)
}

/// All 24 isomorphism classes of groups of order ≤ 12, in a fixed order
/// (by order, then as listed here).
pub fn small_groups() -> Vec<FiniteGroup> {
    let z = FiniteGroup::cyclic;
    vec![
        z(1),
        z(2),
        z(3),
        z(4),
        named_product("Z/2 x Z/2", &[z(2), z(2)]),
        z(5),
        z(6),
        FiniteGroup::symmetric(3),
        z(7),
        z(8),
        named_product("Z/4 x Z/2", &[z(4), z(2)]),
        named_product("Z/2 x Z/2 x Z/2", &[z(2), z(2), z(2)]),
        FiniteGroup::dihedral(4),
        FiniteGroup::dicyclic(2),
        z(9),
        named_product("Z/3 x Z/3", &[z(3), z(3)]),
        z(10),
        FiniteGroup::dihedral(5),
        z(11),
        z(12),
        named_product("Z/2 x Z/6", &[z(2), z(6)]),
        FiniteGroup::alternating(4),
        FiniteGroup::dihedral(6),
        FiniteGroup::dicyclic(3),
    ]
}

/// [`small_groups`] followed by a handful of larger groups.
pub fn bundled() -> Vec<FiniteGroup> {
    let mut all = small_groups();
    all.extend([
        FiniteGroup::cyclic(16),
        named_product("Z/4 x Z/4", &[FiniteGroup::cyclic(4), FiniteGroup::cyclic(4)]),
        FiniteGroup::dihedral(8),
        FiniteGroup::symmetric(4),
        FiniteGroup::alternating(5),
    ]);
    all
}

/// Resolves a group name.
///
/// Accepts `Z/n`, `Dn` (dihedral of order `2n`), `Dicn`, `Q8`, `Sn`, `An`,
/// `1`/`trivial`, any bundled name, and products `A x B x ...` of these.
pub fn by_name(name: &str) -> Result<FiniteGroup, GroupError> {
    let name = name.trim();
    if let Some(g) = bundled().into_iter().find(|g| g.name() == name) {
        return Ok(g);
    }
    if name.contains(" x ") {
        let factors = name
            .split(" x ")
            .map(by_name)
            .collect::<Result<Vec<_>, _>>()?;
        let mut acc = FiniteGroup::trivial();
        for f in &factors {
            acc = direct_product(&acc, f)?;
        }
        return Ok(acc.with_name(name));
    }
    let unknown = || GroupError::UnknownGroup(name.to_owned());
    let number = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    if name == "1" || name == "trivial" || name == "e" {
        return Ok(FiniteGroup::trivial());
    }
    if let Some(n) = name.strip_prefix("Z/") {
        let n = number(n)?;
        return if (1..=super::group::MAX_GROUP_ORDER).contains(&n) {
            Ok(FiniteGroup::cyclic(n))
        } else {
            Err(unknown())
        };
    }
    if let Some(n) = name.strip_prefix("Dic") {
        let n = number(n)?;
        return if (1..=64).contains(&n) { Ok(FiniteGroup::dicyclic(n)) } else { Err(unknown()) };
    }
    if let Some(n) = name.strip_prefix('D') {
        let n = number(n)?;
        return if (1..=128).contains(&n) { Ok(FiniteGroup::dihedral(n)) } else { Err(unknown()) };
    }
    if let Some(n) = name.strip_prefix('S') {
        let n = number(n)?;
        return if (1..=6).contains(&n) { Ok(FiniteGroup::symmetric(n)) } else { Err(unknown()) };
    }
    if let Some(n) = name.strip_prefix('A') {
        let n = number(n)?;
        return if (1..=6).contains(&n) { Ok(FiniteGroup::alternating(n)) } else { Err(unknown()) };
    }
    Err(unknown())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_engine::iso::is_isomorphic;

    #[test]
    fn small_groups_are_pairwise_distinct() {
        let groups = small_groups();
        assert_eq!(groups.len(), 24);
        for (i, a) in groups.iter().enumerate() {
            for b in &groups[..i] {
                assert!(!is_isomorphic(a, b, 64).unwrap(), "{} ≅ {}", a.name(), b.name());
            }
        }
    }

    #[test]
    fn names_resolve() {
        assert_eq!(by_name("S3").unwrap().order(), 6);
        assert_eq!(by_name("Z/5").unwrap().order(), 5);
        assert_eq!(by_name("D4").unwrap().order(), 8);
        assert_eq!(by_name("Q8").unwrap().order(), 8);
        assert_eq!(by_name("Z/2 x S3").unwrap().order(), 12);
        assert_eq!(by_name("trivial").unwrap().order(), 1);
        assert!(by_name("Z/0").is_err());
        assert!(by_name("PSL(2,7)").is_err());
    }
}
