use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde_json::{json, Value};

use super::GroupError;

/// Largest group order any construction in this crate will build.
pub const MAX_GROUP_ORDER: usize = 4096;

/// A finite group given by its multiplication table.
///
/// Elements are the indices `0..order`; `mul(a, b)` reads `table[a][b]`.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl Hash for FiniteGroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state);
        self.table.hash(state);
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

impl FiniteGroup {
    /// Validates a square table as a group law.
    ///
    /// Checks run in the order: shape, associativity, identity, inverses, so
    /// a table that fails several axioms reports the first of these.
    pub fn from_table(name: impl Into<String>, rows: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_GROUP_ORDER {
            return Err(GroupError::OrderTooLarge {
                order: n,
                max: MAX_GROUP_ORDER,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare {
                    row: r,
                    len: row.len(),
                    expected: n,
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange { row: r, col: c, value: v });
                }
            }
            table.extend_from_slice(row);
        }
        let m = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![0; n];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&y| m(x, y) == identity && m(y, x) == identity)
                .ok_or(GroupError::NoInverse { element: x })?;
        }
        Ok(Self {
            name: name.into(),
            order: n,
            table,
            identity,
            inverse,
        })
    }

    /// Builds a group from a table known to be a group law.
    pub(crate) fn from_flat_unchecked(name: String, order: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let m = |a: usize, b: usize| table[a * order + b];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| m(e, x) == x))
            .expect("group law has an identity");
        let inverse = (0..order)
            .map(|x| {
                (0..order)
                    .find(|&y| m(x, y) == identity)
                    .expect("group law has inverses")
            })
            .collect();
        Self {
            name,
            order,
            table,
            identity,
            inverse,
        }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n`, with element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!((1..=MAX_GROUP_ORDER).contains(&n), "cyclic order out of range");
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_flat_unchecked(format!("Z/{n}"), n, table)
    }

    /// Symmetries of the regular `n`-gon, order `2n`. Element `i + n·e` is
    /// `r^i s^e`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1, "dihedral degree must be positive");
        let order = 2 * n;
        let mut table = vec![0; order * order];
        for x in 0..order {
            let (a, e) = (x % n, x / n);
            for y in 0..order {
                let (b, f) = (y % n, y / n);
                let rot = if e == 0 { (a + b) % n } else { (a + n - b) % n };
                table[x * order + y] = rot + n * ((e + f) % 2);
            }
        }
        Self::from_flat_unchecked(format!("D{n}"), order, table)
    }

    /// Dicyclic group of order `4n`: `⟨a, x | a^{2n}, x² = a^n, x a x⁻¹ = a⁻¹⟩`.
    /// Element `k + 2n·e` is `a^k x^e`.
    pub fn dicyclic(n: usize) -> Self {
        assert!(n >= 1, "dicyclic degree must be positive");
        let m = 2 * n;
        let order = 2 * m;
        let mut table = vec![0; order * order];
        for p in 0..order {
            let (k, e) = (p % m, p / m);
            for q in 0..order {
                let (l, f) = (q % m, q / m);
                let value = match (e, f) {
                    (0, _) => (k + l) % m + m * f,
                    (_, 0) => (k + m - l) % m + m,
                    _ => (k + m - l + n) % m,
                };
                table[p * order + q] = value;
            }
        }
        let name = if n == 2 { "Q8".to_owned() } else { format!("Dic{n}") };
        Self::from_flat_unchecked(name, order, table)
    }

    /// Closure of a set of permutations of `0..degree` under composition.
    /// Elements are indexed in lexicographic order of their images, so the
    /// identity permutation is element 0.
    pub fn from_permutations(name: impl Into<String>, generators: &[Vec<usize>]) -> Result<Self, GroupError> {
        let degree = generators.first().map_or(0, Vec::len);
        for g in generators {
            let mut seen = g.clone();
            seen.sort_unstable();
            if g.len() != degree || seen != (0..degree).collect::<Vec<_>>() {
                return Err(GroupError::InvalidPermutation(format!("{g:?}")));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = BTreeSet::new();
        elements.insert(identity.clone());
        let mut queue = VecDeque::from([identity]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q: Vec<usize> = (0..degree).map(|i| p[g[i]]).collect();
                if elements.insert(q.clone()) {
                    if elements.len() > MAX_GROUP_ORDER {
                        return Err(GroupError::OrderTooLarge {
                            order: elements.len(),
                            max: MAX_GROUP_ORDER,
                        });
                    }
                    queue.push_back(q);
                }
            }
        }
        let elements: Vec<Vec<usize>> = elements.into_iter().collect();
        let index = |p: &Vec<usize>| elements.binary_search(p).expect("closed under composition");
        let order = elements.len();
        let mut table = vec![0; order * order];
        for (i, p) in elements.iter().enumerate() {
            for (j, q) in elements.iter().enumerate() {
                let pq: Vec<usize> = (0..degree).map(|x| p[q[x]]).collect();
                table[i * order + j] = index(&pq);
            }
        }
        Ok(Self::from_flat_unchecked(name.into(), order, table))
    }

    pub fn symmetric(k: usize) -> Self {
        assert!((1..=6).contains(&k), "symmetric degree out of range");
        let mut gens = vec![];
        if k >= 2 {
            let mut swap: Vec<usize> = (0..k).collect();
            swap.swap(0, 1);
            let cycle: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
            gens.push(swap);
            gens.push(cycle);
        } else {
            gens.push(vec![0]);
        }
        Self::from_permutations(format!("S{k}"), &gens).expect("valid permutations")
    }

    pub fn alternating(k: usize) -> Self {
        assert!((1..=6).contains(&k), "alternating degree out of range");
        let gens: Vec<Vec<usize>> = if k < 3 {
            vec![(0..k).collect()]
        } else {
            (2..k)
                .map(|t| {
                    let mut p: Vec<usize> = (0..k).collect();
                    p[0] = 1;
                    p[1] = t;
                    p[t] = 0;
                    p
                })
                .collect()
        };
        Self::from_permutations(format!("A{k}"), &gens).expect("valid permutations")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `h g h⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(h, g), self.inverse[h])
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for g in 0..self.order {
            if class_of[g] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class: Vec<usize> = (0..self.order).map(|h| self.conjugate(g, h)).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                class_of[x] = id;
            }
            classes.push(class);
        }
        classes
    }

    pub fn class_count(&self) -> usize {
        self.conjugacy_classes().len()
    }

    pub fn centralizer_size(&self, g: usize) -> usize {
        (0..self.order)
            .filter(|&h| self.mul(g, h) == self.mul(h, g))
            .count()
    }

    /// Membership mask of the subgroup generated by `generators`.
    pub fn generated_subgroup(&self, generators: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in generators {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        member
    }

    /// The subgroup on `elements` (which must be closed), reindexed in the
    /// given order.
    pub fn subgroup(&self, name: impl Into<String>, elements: &[usize]) -> Self {
        let mut index = vec![usize::MAX; self.order];
        for (i, &e) in elements.iter().enumerate() {
            index[e] = i;
        }
        let k = elements.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in elements {
            for &b in elements {
                let ab = index[self.mul(a, b)];
                assert!(ab != usize::MAX, "subgroup elements are not closed");
                table.push(ab);
            }
        }
        Self::from_flat_unchecked(name.into(), k, table)
    }

    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "table": self.rows()})
    }

    pub fn from_json(value: &Value) -> Result<Self, GroupError> {
        let name = value
            .get("name")
            .and_then(Value::as_str)
            .unwrap_or("G")
            .to_owned();
        let rows = value
            .get("table")
            .and_then(Value::as_array)
            .ok_or_else(|| GroupError::Json("group needs a `table` array".into()))?;
        let rows = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| GroupError::Json("table rows must be arrays".into()))?
                    .iter()
                    .map(|v| {
                        v.as_u64()
                            .map(|x| x as usize)
                            .ok_or_else(|| GroupError::Json("table entries must be non-negative integers".into()))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_table(name, rows)
    }
}

/// `G × H` with element `(g, h)` at index `g·|H| + h`, named `"G x H"`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let order = g
        .order
        .checked_mul(h.order)
        .filter(|&o| o <= MAX_GROUP_ORDER)
        .ok_or(GroupError::OrderTooLarge {
            order: g.order.saturating_mul(h.order),
            max: MAX_GROUP_ORDER,
        })?;
    let mut table = vec![0; order * order];
    for x in 0..order {
        let (a, b) = (x / h.order, x % h.order);
        for y in 0..order {
            let (c, d) = (y / h.order, y % h.order);
            table[x * order + y] = g.mul(a, c) * h.order + h.mul(b, d);
        }
    }
    Ok(FiniteGroup::from_flat_unchecked(
        format!("{} x {}", g.name, h.name),
        order,
        table,
    ))
}
