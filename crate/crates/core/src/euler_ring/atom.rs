use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// A registry-canonical finite group class. Ordered by `(order, id)`.
#[derive(Clone)]
pub struct FiniteAtom {
    order: usize,
    id: u32,
    label: Arc<str>,
}

impl FiniteAtom {
    pub(crate) fn new(order: usize, id: u32, label: Arc<str>) -> Self {
        Self { order, id, label }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl PartialEq for FiniteAtom {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for FiniteAtom {}

impl Hash for FiniteAtom {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.id.hash(state);
    }
}

impl PartialOrd for FiniteAtom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FiniteAtom {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.order, self.id).cmp(&(other.order, other.id))
    }
}

impl fmt::Debug for FiniteAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.label, self.id)
    }
}

/// Connected or non-finite catalog groups that appear as ring atoms.
/// A torus atom carries its rank; `T^a · T^b` normalizes to `T^(a+b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieAtom {
    Torus(u32),
    SU2,
    SO3,
    O2,
}

impl fmt::Display for LieAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieAtom::Torus(n) => write!(f, "T^{n}"),
            LieAtom::SU2 => f.write_str("SU2"),
            LieAtom::SO3 => f.write_str("SO3"),
            LieAtom::O2 => f.write_str("O2"),
        }
    }
}

/// A generator `T^[G]` of the ring. Finite atoms sort before Lie atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupAtom {
    Finite(FiniteAtom),
    Lie(LieAtom),
}

impl GroupAtom {
    pub fn label(&self) -> String {
        match self {
            GroupAtom::Finite(a) => a.label().to_owned(),
            GroupAtom::Lie(l) => l.to_string(),
        }
    }
}

impl fmt::Display for GroupAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}
