use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::group_engine::catalog;
use crate::group_engine::decompose::indecomposable_factors;
use crate::group_engine::iso::{find_isomorphism, fingerprint};
use crate::group_engine::{direct_product, FiniteGroup, DEFAULT_ISO_CAP};

use super::atom::FiniteAtom;
use super::RingError;

struct Entry {
    group: Arc<FiniteGroup>,
    label: Arc<str>,
    fingerprint: Vec<(usize, usize)>,
    /// Indecomposable factor atoms, sorted. `[self]` for indecomposables.
    factors: Vec<FiniteAtom>,
    /// Over-cap groups are identified by label only.
    explicit: bool,
}

#[derive(Default)]
struct Inner {
    entries: Vec<Entry>,
    fused: HashMap<Vec<FiniteAtom>, FiniteAtom>,
}

/// Canonical labels for finite groups up to isomorphism.
///
/// Groups of order at most `cap` are compared by brute-force isomorphism;
/// larger ones are keyed by their name. Lookups take a read lock; insertion
/// takes the write lock and re-checks for a concurrent insert.
pub struct AtomRegistry {
    cap: usize,
    inner: RwLock<Inner>,
}

static GLOBAL: OnceLock<AtomRegistry> = OnceLock::new();

/// The process-wide registry, seeded with the bundled catalog so common
/// groups get stable ids and names.
pub fn registry() -> &'static AtomRegistry {
    GLOBAL.get_or_init(|| AtomRegistry::seeded(DEFAULT_ISO_CAP))
}

/// Sets the fusion/isomorphism cap of the global registry. Must run before
/// the registry is first used, unless the requested cap equals the current.
pub fn configure_iso_cap(cap: usize) -> Result<(), RingError> {
    let reg = GLOBAL.get_or_init(|| AtomRegistry::seeded(cap));
    if reg.cap == cap {
        Ok(())
    } else {
        Err(RingError::CapAlreadyConfigured {
            current: reg.cap,
            requested: cap,
        })
    }
}

impl AtomRegistry {
    fn seeded(cap: usize) -> Self {
        let reg = Self {
            cap,
            inner: RwLock::new(Inner::default()),
        };
        for g in catalog::bundled() {
            reg.canonicalize(&g);
        }
        reg
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// The canonical atom of `g`, or `None` for the trivial group.
    pub fn canonicalize(&self, g: &FiniteGroup) -> Option<FiniteAtom> {
        self.canonicalize_with(g, None)
    }

    fn canonicalize_with(&self, g: &FiniteGroup, known_factors: Option<Vec<FiniteAtom>>) -> Option<FiniteAtom> {
        if g.is_trivial() {
            return None;
        }
        if g.order() > self.cap {
            return Some(self.explicit_atom(g));
        }
        let print = fingerprint(g);
        if let Some(hit) = self.lookup(g, &print, 0) {
            return Some(hit);
        }
        let factors = match known_factors {
            Some(f) => f,
            None => {
                let parts = indecomposable_factors(g);
                if parts.len() <= 1 {
                    Vec::new()
                } else {
                    let mut atoms: Vec<FiniteAtom> = parts
                        .iter()
                        .filter_map(|p| self.canonicalize(p))
                        .flat_map(|a| self.factors(&a))
                        .collect();
                    atoms.sort();
                    atoms
                }
            }
        };
        let mut inner = self.inner.write().expect("registry lock");
        if let Some(hit) = Self::scan(&inner, g, &print, 0) {
            return Some(hit);
        }
        let id = inner.entries.len() as u32;
        let label: Arc<str> = Arc::from(g.name());
        let atom = FiniteAtom::new(g.order(), id, label.clone());
        let factors = if factors.is_empty() { vec![atom.clone()] } else { factors };
        if factors.len() > 1 {
            inner.fused.insert(factors.clone(), atom.clone());
        }
        inner.entries.push(Entry {
            group: Arc::new(g.clone()),
            label,
            fingerprint: print,
            factors,
            explicit: false,
        });
        Some(atom)
    }

    fn lookup(&self, g: &FiniteGroup, print: &[(usize, usize)], from: usize) -> Option<FiniteAtom> {
        let inner = self.inner.read().expect("registry lock");
        Self::scan(&inner, g, print, from)
    }

    fn scan(inner: &Inner, g: &FiniteGroup, print: &[(usize, usize)], from: usize) -> Option<FiniteAtom> {
        inner.entries[from..]
            .iter()
            .enumerate()
            .find(|(_, e)| {
                !e.explicit
                    && e.group.order() == g.order()
                    && e.fingerprint == print
                    && find_isomorphism(&e.group, g).is_some()
            })
            .map(|(i, e)| FiniteAtom::new(g.order(), (from + i) as u32, e.label.clone()))
    }

    fn explicit_atom(&self, g: &FiniteGroup) -> FiniteAtom {
        let find = |inner: &Inner| {
            inner
                .entries
                .iter()
                .position(|e| e.explicit && &*e.label == g.name() && e.group.order() == g.order())
                .map(|i| FiniteAtom::new(g.order(), i as u32, inner.entries[i].label.clone()))
        };
        if let Some(hit) = find(&self.inner.read().expect("registry lock")) {
            return hit;
        }
        let mut inner = self.inner.write().expect("registry lock");
        if let Some(hit) = find(&inner) {
            return hit;
        }
        let id = inner.entries.len() as u32;
        let label: Arc<str> = Arc::from(g.name());
        let atom = FiniteAtom::new(g.order(), id, label.clone());
        inner.entries.push(Entry {
            group: Arc::new(g.clone()),
            label,
            fingerprint: Vec::new(),
            factors: vec![atom.clone()],
            explicit: true,
        });
        atom
    }

    /// Indecomposable factors of a registered atom.
    pub fn factors(&self, atom: &FiniteAtom) -> Vec<FiniteAtom> {
        self.inner.read().expect("registry lock").entries[atom.id() as usize]
            .factors
            .clone()
    }

    /// The representative multiplication table of an atom.
    pub fn group(&self, atom: &FiniteAtom) -> Arc<FiniteGroup> {
        self.inner.read().expect("registry lock").entries[atom.id() as usize]
            .group
            .clone()
    }

    /// The single atom isomorphic to the product of sorted indecomposable
    /// `factors`. Callers keep the total order within the cap.
    pub(crate) fn fuse(&self, factors: &[FiniteAtom]) -> Option<FiniteAtom> {
        match factors {
            [] => return None,
            [single] => return Some(single.clone()),
            _ => {}
        }
        if let Some(hit) = self.inner.read().expect("registry lock").fused.get(factors) {
            return Some(hit.clone());
        }
        let mut product = FiniteGroup::trivial();
        let mut names = Vec::with_capacity(factors.len());
        for f in factors {
            product = direct_product(&product, &self.group(f)).expect("fused order is within the cap");
            names.push(f.label().to_owned());
        }
        let product = product.with_name(names.join(" x "));
        let atom = self
            .canonicalize_with(&product, Some(factors.to_vec()))
            .expect("nontrivial product");
        self.inner
            .write()
            .expect("registry lock")
            .fused
            .insert(factors.to_vec(), atom.clone());
        Some(atom)
    }
}
