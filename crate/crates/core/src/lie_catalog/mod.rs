//! A small catalog of compact Lie groups: tori, `SU(2)`, `SO(3)`, `O(2)`,
//! finite groups and products of these, each with baked Cartan data that
//! model the conjugacy-class space `Ad_G∖G` as a cell complex.

mod cartan;
mod smith;
mod weights;

use std::fmt;

use serde_json::Value;
use thiserror::Error;

use crate::euler_ring::{LieAtom, RingElement};
use crate::group_engine::{catalog, FiniteGroup, GroupError};

pub use cartan::{cartan_data, chi_ad, component_count, component_group, conj_class_space, CartanDatum};
pub use smith::{smith_diagonal, Abelianization};
pub use weights::{es_weight, gamma_es_weight, gamma_weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("cannot parse group descriptor `{0}`")]
    Parse(String),
    #[error("{what} is not supported for isotropy {descriptor} with source group {gamma}")]
    Unsupported {
        what: &'static str,
        descriptor: String,
        gamma: String,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A compact Lie group from the catalog.
///
/// Construct products through [`LieGroupDescriptor::product`], which
/// flattens nested products, sorts the factors and collapses singletons.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LieGroupDescriptor {
    Finite(FiniteGroup),
    Torus(u32),
    SU2,
    SO3,
    O2,
    Product(Vec<LieGroupDescriptor>),
}

impl LieGroupDescriptor {
    pub fn finite(g: FiniteGroup) -> Self {
        Self::Finite(g)
    }

    pub fn trivial() -> Self {
        Self::Finite(FiniteGroup::trivial())
    }

    pub fn product(factors: impl IntoIterator<Item = LieGroupDescriptor>) -> Self {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                Self::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        flat.sort_by_cached_key(Self::sort_key);
        match flat.len() {
            0 => Self::trivial(),
            1 => flat.pop().expect("one factor"),
            _ => Self::Product(flat),
        }
    }

    fn sort_key(&self) -> (u8, String) {
        let rank = match self {
            Self::Finite(_) => 0,
            Self::Torus(_) => 1,
            Self::SU2 => 2,
            Self::SO3 => 3,
            Self::O2 => 4,
            Self::Product(_) => 5,
        };
        (rank, self.to_string())
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            Self::Finite(g) => g.is_trivial(),
            Self::Product(fs) => fs.iter().all(Self::is_trivial),
            _ => false,
        }
    }

    /// The ring symbol `T^[G]`.
    pub fn ring_element(&self) -> RingElement {
        match self {
            Self::Finite(g) => RingElement::finite(g),
            Self::Torus(n) => RingElement::lie(LieAtom::Torus(*n)),
            Self::SU2 => RingElement::lie(LieAtom::SU2),
            Self::SO3 => RingElement::lie(LieAtom::SO3),
            Self::O2 => RingElement::lie(LieAtom::O2),
            Self::Product(fs) => fs
                .iter()
                .fold(RingElement::one(), |acc, f| &acc * &f.ring_element()),
        }
    }

    /// Parses `T^n`, `SU2`, `SO3`, `O2`, `finite:<name>`, a bare finite
    /// group name, or `prod(A, B, ...)`.
    pub fn parse(text: &str) -> Result<Self, LieError> {
        let s = text.trim();
        let bad = || LieError::Parse(text.to_owned());
        match s {
            "SU2" | "SU(2)" => return Ok(Self::SU2),
            "SO3" | "SO(3)" => return Ok(Self::SO3),
            "O2" | "O(2)" => return Ok(Self::O2),
            "T" => return Ok(Self::Torus(1)),
            _ => {}
        }
        if let Some(rank) = s.strip_prefix("T^") {
            let n: u32 = rank.trim().parse().map_err(|_| bad())?;
            return if n == 0 { Ok(Self::trivial()) } else { Ok(Self::Torus(n)) };
        }
        if let Some(inner) = s.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
            let parts = split_top_level(inner).ok_or_else(bad)?;
            let factors = parts
                .into_iter()
                .map(Self::parse)
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(Self::product(factors));
        }
        let name = s.strip_prefix("finite:").unwrap_or(s);
        catalog::by_name(name).map(Self::Finite).map_err(|_| bad())
    }

    /// JSON form: a descriptor string, `{"finite": <group>}`,
    /// `{"torus": n}` or `{"product": [...]}`.
    pub fn from_json(value: &Value) -> Result<Self, LieError> {
        match value {
            Value::String(s) => Self::parse(s),
            Value::Object(map) if map.len() == 1 => {
                let (key, inner) = map.iter().next().expect("one entry");
                match key.as_str() {
                    "finite" => Ok(Self::Finite(FiniteGroup::from_json(inner)?)),
                    "torus" => match inner.as_u64() {
                        Some(0) => Ok(Self::trivial()),
                        Some(n) if n <= u64::from(u32::MAX) => Ok(Self::Torus(n as u32)),
                        _ => Err(LieError::Parse(value.to_string())),
                    },
                    "product" => {
                        let items = inner
                            .as_array()
                            .ok_or_else(|| LieError::Parse(value.to_string()))?;
                        let factors = items.iter().map(Self::from_json).collect::<Result<Vec<_>, _>>()?;
                        Ok(Self::product(factors))
                    }
                    _ => Err(LieError::Parse(value.to_string())),
                }
            }
            _ => Err(LieError::Parse(value.to_string())),
        }
    }

    /// Catalog entries and bundled finite groups serialize as strings;
    /// other finite groups carry their table.
    pub fn to_json(&self) -> Value {
        match self {
            Self::Finite(g) if catalog::by_name(g.name()).is_ok_and(|c| &c == g) => {
                Value::String(self.to_string())
            }
            Self::Finite(g) => serde_json::json!({"finite": g.to_json()}),
            Self::Product(fs) => serde_json::json!({"product": fs.iter().map(Self::to_json).collect::<Vec<_>>()}),
            _ => Value::String(self.to_string()),
        }
    }
}

fn split_top_level(s: &str) -> Option<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    parts.push(&s[start..]);
    if parts.iter().any(|p| p.trim().is_empty()) {
        return None;
    }
    Some(parts)
}

impl fmt::Display for LieGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(g) => write!(f, "finite:{}", g.name()),
            Self::Torus(n) => write!(f, "T^{n}"),
            Self::SU2 => f.write_str("SU2"),
            Self::SO3 => f.write_str("SO3"),
            Self::O2 => f.write_str("O2"),
            Self::Product(fs) => {
                f.write_str("prod(")?;
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trips() {
        for s in ["T^3", "SU2", "SO3", "O2", "finite:S3", "prod(finite:Z/2, SU2)"] {
            let d = LieGroupDescriptor::parse(s).unwrap();
            assert_eq!(d.to_string(), s);
            assert_eq!(LieGroupDescriptor::from_json(&d.to_json()).unwrap(), d);
        }
        assert_eq!(
            LieGroupDescriptor::parse("Z/5").unwrap(),
            LieGroupDescriptor::Finite(FiniteGroup::cyclic(5))
        );
        assert!(LieGroupDescriptor::parse("prod(SU2,").is_err());
        assert!(LieGroupDescriptor::parse("Sp(1)").is_err());
    }

    #[test]
    fn products_flatten_and_sort() {
        let p = LieGroupDescriptor::parse("prod(SU2, prod(T^1, Z/3))").unwrap();
        assert_eq!(p.to_string(), "prod(finite:Z/3, T^1, SU2)");
        assert_eq!(LieGroupDescriptor::product([LieGroupDescriptor::O2]), LieGroupDescriptor::O2);
    }

    #[test]
    fn custom_tables_serialize_with_the_table() {
        let g = FiniteGroup::cyclic(3).with_name("rot3");
        let d = LieGroupDescriptor::Finite(g);
        let j = d.to_json();
        assert!(j.get("finite").is_some());
        assert_eq!(LieGroupDescriptor::from_json(&j).unwrap(), d);
        assert_eq!(
            LieGroupDescriptor::from_json(&serde_json::json!({"torus": 2})).unwrap(),
            LieGroupDescriptor::Torus(2)
        );
    }

    #[test]
    fn ring_symbols() {
        let d = LieGroupDescriptor::parse("prod(Z/2, Z/3, T^1, T^1)").unwrap();
        assert_eq!(d.ring_element().to_string(), "T[Z/6]*T[T^2]");
    }
}
