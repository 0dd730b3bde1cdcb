use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::group_engine::FiniteGroup;
use crate::scalar::Scalar;

use super::atom::{FiniteAtom, GroupAtom, LieAtom};
use super::registry::registry;
use super::RingError;

/// A product of atoms in canonical form: finite part first (one fused atom
/// when its order is within the cap, otherwise its indecomposable factors),
/// then Lie atoms with all tori merged into one.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    atoms: Vec<GroupAtom>,
}

impl Monomial {
    /// `T^[e] = 1`.
    pub fn one() -> Self {
        Self::default()
    }

    pub fn is_one(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[GroupAtom] {
        &self.atoms
    }

    /// Normalizes an arbitrary multiset of atoms.
    pub fn from_atoms(atoms: impl IntoIterator<Item = GroupAtom>) -> Self {
        let reg = registry();
        let mut finite: Vec<FiniteAtom> = Vec::new();
        let mut torus_rank = 0u32;
        let mut lie = Vec::new();
        for atom in atoms {
            match atom {
                GroupAtom::Finite(a) => finite.extend(reg.factors(&a)),
                GroupAtom::Lie(LieAtom::Torus(n)) => torus_rank += n,
                GroupAtom::Lie(other) => lie.push(other),
            }
        }
        finite.sort();
        let total = finite
            .iter()
            .try_fold(1usize, |acc, a| acc.checked_mul(a.order()));
        let mut out: Vec<GroupAtom> = match total {
            Some(order) if order <= reg.cap() => reg.fuse(&finite).into_iter().map(GroupAtom::Finite).collect(),
            _ => finite.into_iter().map(GroupAtom::Finite).collect(),
        };
        if torus_rank > 0 {
            lie.push(LieAtom::Torus(torus_rank));
        }
        lie.sort();
        out.extend(lie.into_iter().map(GroupAtom::Lie));
        Self { atoms: out }
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Self::from_atoms(self.atoms.iter().chain(&other.atoms).cloned())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < self.atoms.len() {
            let mut j = i;
            while j < self.atoms.len() && self.atoms[j] == self.atoms[i] {
                j += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "T[{}]", self.atoms[i])?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// An element of the ring of group symbols: an integer combination of
/// canonical monomials, with no zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RingElement {
    terms: BTreeMap<Monomial, BigInt>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(n: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(), n.into())
    }

    pub fn term(m: Monomial, coefficient: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(m, coefficient);
        }
        Self { terms }
    }

    pub fn atom(atom: GroupAtom) -> Self {
        Self::term(Monomial::from_atoms([atom]), BigInt::from(1))
    }

    /// `T^[G]` for a finite group; the trivial group gives `1`.
    pub fn finite(g: &FiniteGroup) -> Self {
        match registry().canonicalize(g) {
            Some(a) => Self::atom(GroupAtom::Finite(a)),
            None => Self::one(),
        }
    }

    pub fn lie(atom: LieAtom) -> Self {
        Self::atom(GroupAtom::Lie(atom))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The coefficient of `1`.
    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::one())
    }

    fn accumulate(&mut self, m: Monomial, c: BigInt) {
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn scaled(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Evaluates a ring homomorphism given by its values on atoms:
    /// `Σ c · Π r(atom)`, with the empty product mapped to the target unit.
    pub fn apply_hom<V: Scalar>(
        &self,
        mut r: impl FnMut(&GroupAtom) -> Option<V>,
    ) -> Result<V, RingError> {
        let mut total = V::zero();
        for (m, c) in &self.terms {
            let mut value = V::one();
            for atom in m.atoms() {
                let image = r(atom).ok_or_else(|| RingError::MissingAtom(atom.label()))?;
                value = value.times(&image);
            }
            total = total.plus(&value.scale(c));
        }
        Ok(total)
    }

    pub fn apply_hom_map<V: Scalar>(&self, r: &HashMap<GroupAtom, V>) -> Result<V, RingError> {
        self.apply_hom(|a| r.get(a).cloned())
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .display_order()
            .into_iter()
            .map(|(m, c)| {
                let coefficient = match c.to_i64() {
                    Some(small) => json!(small),
                    None => json!(c.to_string()),
                };
                let atoms: Vec<String> = m.atoms().iter().map(GroupAtom::label).collect();
                json!({"coefficient": coefficient, "atoms": atoms})
            })
            .collect();
        json!({"terms": terms, "text": self.to_string()})
    }

    /// Non-constant terms in descending monomial order, then the constant.
    fn display_order(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut out: Vec<_> = self.terms.iter().rev().filter(|(m, _)| !m.is_one()).collect();
        if let Some(c) = self.terms.get(&Monomial::one()) {
            out.push((self.terms.keys().next().expect("constant present"), c));
        }
        out
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.display_order().into_iter().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(m.clone(), c.clone());
        }
        out
    }
}

impl Add for RingElement {
    type Output = RingElement;
    fn add(self, rhs: RingElement) -> RingElement {
        &self + &rhs
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self + &(-rhs)
    }
}

impl Sub for RingElement {
    type Output = RingElement;
    fn sub(self, rhs: RingElement) -> RingElement {
        &self - &rhs
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.accumulate(a.times(b), x * y);
            }
        }
        out
    }
}

impl Mul for RingElement {
    type Output = RingElement;
    fn mul(self, rhs: RingElement) -> RingElement {
        &self * &rhs
    }
}

impl Scalar for RingElement {
    fn zero() -> Self {
        RingElement::zero()
    }
    fn one() -> Self {
        RingElement::one()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn from_integer(n: &BigInt) -> Self {
        RingElement::constant(n.clone())
    }
    fn scale(&self, n: &BigInt) -> Self {
        self.scaled(n)
    }
}
