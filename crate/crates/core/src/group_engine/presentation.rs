use std::fmt;

use serde_json::{json, Value};

use super::GroupError;

/// A finitely presented group `⟨a_1..a_k | r_1, ..., r_m⟩`.
///
/// Relators are words of signed 1-based generator indices: `[1, 2, -1, -2]`
/// is `a b a⁻¹ b⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupPresentation {
    generators: usize,
    relators: Vec<Vec<i32>>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relators: Vec<Vec<i32>>) -> Result<Self, GroupError> {
        if generators == 0 {
            return Err(GroupError::InvalidPresentation(
                "at least one generator is required (use ⟨a | a⟩ for the trivial group)".into(),
            ));
        }
        for word in &relators {
            for &letter in word {
                if letter == 0 || letter.unsigned_abs() as usize > generators {
                    return Err(GroupError::InvalidPresentation(format!(
                        "letter {letter} outside ±1..±{generators}"
                    )));
                }
            }
        }
        Ok(Self {
            generators,
            relators,
        })
    }

    /// Free group on `k` generators.
    pub fn free(k: usize) -> Self {
        Self::new(k, vec![]).expect("k ≥ 1")
    }

    /// `Z`, the free group on one generator.
    pub fn integers() -> Self {
        Self::free(1)
    }

    /// `Z^k` with all commutator relators.
    pub fn free_abelian(k: usize) -> Self {
        let mut relators = Vec::new();
        for i in 1..=k as i32 {
            for j in i + 1..=k as i32 {
                relators.push(vec![i, j, -i, -j]);
            }
        }
        Self::new(k, relators).expect("k ≥ 1")
    }

    /// `Z/n = ⟨a | a^n⟩`.
    pub fn cyclic(n: usize) -> Self {
        Self::new(1, vec![vec![1; n]]).expect("one generator")
    }

    /// The trivial group, presented as `⟨a | a⟩`.
    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Parses `Z`, `Z^k`, `Z/n` and `1`/`trivial`.
    pub fn parse_shorthand(text: &str) -> Result<Self, GroupError> {
        let t = text.trim();
        let bad = || GroupError::InvalidPresentation(format!("unrecognised group shorthand `{t}`"));
        match t {
            "Z" => Ok(Self::integers()),
            "1" | "trivial" => Ok(Self::trivial()),
            _ => {
                if let Some(k) = t.strip_prefix("Z^") {
                    let k: usize = k.parse().map_err(|_| bad())?;
                    if k == 0 {
                        return Ok(Self::trivial());
                    }
                    Ok(Self::free_abelian(k))
                } else if let Some(n) = t.strip_prefix("Z/") {
                    let n: usize = n.parse().map_err(|_| bad())?;
                    if n == 0 {
                        return Ok(Self::integers());
                    }
                    Ok(Self::cyclic(n))
                } else {
                    Err(bad())
                }
            }
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Vec<i32>] {
        &self.relators
    }

    /// Exact test for `Γ ≅ Z`: a single generator whose relators all have
    /// exponent sum zero.
    pub fn is_infinite_cyclic(&self) -> bool {
        self.generators == 1 && self.relators.iter().all(|w| w.iter().map(|&l| l.signum()).sum::<i32>() == 0)
    }

    /// Relator-by-generator matrix of exponent sums; its Smith form gives the
    /// abelianization.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|word| {
                let mut row = vec![0i64; self.generators];
                for &l in word {
                    row[l.unsigned_abs() as usize - 1] += i64::from(l.signum());
                }
                row
            })
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({"generators": self.generators, "relators": self.relators})
    }

    pub fn from_json(value: &Value) -> Result<Self, GroupError> {
        let generators = value
            .get("generators")
            .and_then(Value::as_u64)
            .ok_or_else(|| GroupError::Json("presentation needs integer `generators`".into()))?;
        let relators = match value.get("relators") {
            None => vec![],
            Some(v) => v
                .as_array()
                .ok_or_else(|| GroupError::Json("`relators` must be an array".into()))?
                .iter()
                .map(|w| {
                    w.as_array()
                        .ok_or_else(|| GroupError::Json("each relator must be an array".into()))?
                        .iter()
                        .map(|l| {
                            l.as_i64()
                                .and_then(|x| i32::try_from(x).ok())
                                .ok_or_else(|| GroupError::Json("relator letters must be integers".into()))
                        })
                        .collect::<Result<Vec<i32>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?,
        };
        Self::new(generators as usize, relators)
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{} generators | ", self.generators)?;
        for (i, w) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w:?}")?;
        }
        f.write_str("⟩")
    }
}
