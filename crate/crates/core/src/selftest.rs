//! A seeded property suite over random spaces, groups, ring elements and
//! groupoid models.

use num_bigint::BigInt;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::euler_calculus::{disjoint_union, product, CellVector, DefinableSpace, Stratum};
use crate::euler_ring::{LieAtom, RingElement};
use crate::group_engine::{burnside_orbit_count, catalog, conj_orbit_count, enumerate_homs, FiniteGroup, GroupPresentation};
use crate::groupoid_invariants::{chi_es, chi_gamma, chi_gamma_es, chi_un, r_es, r_gamma, GroupoidModel, GroupoidStratum};
use crate::lie_catalog::LieGroupDescriptor;

pub const DEFAULT_SEED: u64 = 0x0bc4_a5e1;

/// A deliberate bug, to check that the suite notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Report `−χ` wherever the suite computes an Euler characteristic.
    FlipEulerSign,
}

#[derive(Debug, Clone)]
pub struct SelftestConfig {
    pub seed: u64,
    pub cases: usize,
    pub fault: Option<Fault>,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            cases: 100,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl PropertyResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            passed: 0,
            failed: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.failed == 0)
    }

    pub fn violated(&self) -> impl Iterator<Item = &PropertyResult> {
        self.properties.iter().filter(|p| p.failed > 0)
    }

    pub fn to_json(&self) -> Value {
        let props: Vec<Value> = self
            .properties
            .iter()
            .map(|p| {
                json!({
                    "property": p.name,
                    "passed": p.passed,
                    "failed": p.failed,
                    "first_failure": p.first_failure,
                })
            })
            .collect();
        json!({"seed": self.seed, "ok": self.all_passed(), "properties": props})
    }
}

/// Random inputs shared by the suite and by the acceptance checks.
pub mod generators {
    use super::*;

    pub fn cells<R: Rng>(rng: &mut R, max_dim: usize) -> CellVector {
        let mut c = CellVector::new();
        for d in 0..=max_dim {
            if rng.random_bool(0.6) {
                c.add(d, &rng.random_range(0u32..6).into());
            }
        }
        c
    }

    pub fn space<R: Rng>(rng: &mut R, max_dim: usize, max_strata: usize) -> DefinableSpace {
        let k = rng.random_range(1..=max_strata);
        let strata = (0..k)
            .map(|i| Stratum {
                label: format!("s{i}"),
                cells: cells(rng, max_dim),
            })
            .collect();
        DefinableSpace::new(strata).expect("distinct labels")
    }

    /// Groups of order at most `max_order` from the bundled catalog.
    pub fn finite_groups(max_order: usize) -> Vec<FiniteGroup> {
        catalog::bundled()
            .into_iter()
            .filter(|g| g.order() <= max_order)
            .collect()
    }

    /// A random ring element whose finite atoms come from `groups`.
    pub fn ring_element<R: Rng>(rng: &mut R, groups: &[FiniteGroup]) -> RingElement {
        let terms = rng.random_range(0..4);
        let mut x = RingElement::zero();
        for _ in 0..terms {
            let factors = rng.random_range(0..3);
            let mut m = RingElement::one();
            for _ in 0..factors {
                let atom = match rng.random_range(0..6) {
                    0 => RingElement::lie(LieAtom::Torus(rng.random_range(1..3))),
                    1 => RingElement::lie(*[LieAtom::SU2, LieAtom::SO3, LieAtom::O2].choose(rng).expect("nonempty")),
                    _ => RingElement::finite(groups.choose(rng).expect("nonempty")),
                };
                m = &m * &atom;
            }
            x = &x + &m.scaled(&BigInt::from(rng.random_range(-3i64..=3)));
        }
        x
    }

    /// Isotropy groups whose `χ_Γ` weights are computable for every `Γ`
    /// when `any_gamma`, and for `Γ = Z` otherwise.
    pub fn isotropy<R: Rng>(rng: &mut R, groups: &[FiniteGroup], any_gamma: bool) -> LieGroupDescriptor {
        let lie_choices = if any_gamma { 1 } else { 4 };
        let pick = |rng: &mut R| match rng.random_range(0..(6 + lie_choices)) {
            0..=1 => LieGroupDescriptor::trivial(),
            2..=5 => LieGroupDescriptor::Finite(groups.choose(rng).expect("nonempty").clone()),
            6 => LieGroupDescriptor::Torus(rng.random_range(1..3)),
            7 => LieGroupDescriptor::SU2,
            8 => LieGroupDescriptor::SO3,
            _ => LieGroupDescriptor::O2,
        };
        if rng.random_bool(0.2) {
            LieGroupDescriptor::product([pick(rng), pick(rng)].into_iter().filter(|d| !d.is_trivial()))
        } else {
            pick(rng)
        }
    }

    pub fn model<R: Rng>(rng: &mut R, groups: &[FiniteGroup], any_gamma: bool) -> GroupoidModel {
        let k = rng.random_range(1..=4);
        let strata = (0..k)
            .map(|i| GroupoidStratum::new(format!("x{i}"), cells(rng, 3), isotropy(rng, groups, any_gamma)))
            .collect();
        GroupoidModel::new(strata).expect("distinct labels")
    }

    /// A random two-part split of the model's labels.
    pub fn split<R: Rng>(rng: &mut R, model: &GroupoidModel) -> (Vec<String>, Vec<String>) {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for l in model.labels() {
            if rng.random_bool(0.5) {
                a.push(l.to_owned());
            } else {
                b.push(l.to_owned());
            }
        }
        (a, b)
    }
}

struct Suite {
    rng: ChaCha8Rng,
    cases: usize,
    fault: Option<Fault>,
}

impl Suite {
    fn chi(&self, c: &CellVector) -> BigInt {
        self.adjust(c.euler_char())
    }

    fn chi_space(&self, s: &DefinableSpace) -> BigInt {
        self.adjust(s.euler_char())
    }

    fn adjust(&self, x: BigInt) -> BigInt {
        match self.fault {
            Some(Fault::FlipEulerSign) => -x,
            None => x,
        }
    }

    fn cell_properties(&mut self) -> Vec<PropertyResult> {
        let mut add = PropertyResult::new("cell additivity");
        let mut mul = PropertyResult::new("cell multiplicativity");
        let mut sign = PropertyResult::new("open cell sign");
        for _ in 0..self.cases {
            let a = generators::space(&mut self.rng, 4, 3);
            let b = generators::space(&mut self.rng, 4, 3);
            let (ca, cb) = (self.chi_space(&a), self.chi_space(&b));
            let u = self.chi_space(&disjoint_union(&a, &b));
            add.record(u == &ca + &cb, || format!("χ(A ⊔ B) = {u}, χ(A) + χ(B) = {}", &ca + &cb));
            let p = self.chi_space(&product(&a, &b));
            mul.record(p == &ca * &cb, || format!("χ(A × B) = {p}, χ(A)·χ(B) = {}", &ca * &cb));
        }
        for d in 0..=6 {
            let c = self.chi(&CellVector::open_cell(d));
            let expected = BigInt::from(if d % 2 == 0 { 1 } else { -1 });
            sign.record(c == expected, || format!("χ(open {d}-cell) = {c}"));
        }
        vec![add, mul, sign]
    }

    fn burnside(&mut self) -> PropertyResult {
        let mut r = PropertyResult::new("Burnside cross-check");
        let gammas = [
            GroupPresentation::integers(),
            GroupPresentation::free_abelian(2),
            GroupPresentation::cyclic(2),
            GroupPresentation::cyclic(3),
        ];
        for g in catalog::small_groups() {
            for gamma in &gammas {
                let homs = enumerate_homs(gamma, &g);
                let (a, b) = (conj_orbit_count(&homs), burnside_orbit_count(&homs));
                r.record(a == b, || format!("{} with Γ = {gamma}: orbits {a}, Burnside {b}", g.name()));
            }
        }
        r
    }

    fn ring(&mut self) -> Vec<PropertyResult> {
        let groups = generators::finite_groups(16);
        let mut axioms = PropertyResult::new("ring axioms");
        let mut confluence = PropertyResult::new("confluence");
        for _ in 0..self.cases {
            let a = generators::ring_element(&mut self.rng, &groups);
            let b = generators::ring_element(&mut self.rng, &groups);
            let c = generators::ring_element(&mut self.rng, &groups);
            let ok = &a + &b == &b + &a
                && &a * &b == &b * &a
                && &(&a * &b) * &c == &a * &(&b * &c)
                && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
                && (&a + &(-&a)).is_zero()
                && &a * &RingElement::one() == a;
            axioms.record(ok, || format!("a = {a}, b = {b}, c = {c}"));

            // The same product of atoms, multiplied in two orders.
            let atoms: Vec<RingElement> = (0..3)
                .map(|_| RingElement::finite(groups.choose(&mut self.rng).expect("nonempty")))
                .collect();
            let left = atoms.iter().fold(RingElement::one(), |acc, x| &acc * x);
            let right = atoms.iter().rev().fold(RingElement::one(), |acc, x| &acc * x);
            confluence.record(left == right, || format!("{left} ≠ {right}"));
        }
        vec![axioms, confluence]
    }

    fn invariants(&mut self) -> Vec<PropertyResult> {
        let groups = generators::finite_groups(8);
        let z = GroupPresentation::integers();
        let z2 = GroupPresentation::free_abelian(2);
        let mut additivity = PropertyResult::new("invariant additivity");
        let mut multiplicativity = PropertyResult::new("invariant multiplicativity");
        let mut universal_z = PropertyResult::new("universality Γ = Z");
        let mut universal_z2 = PropertyResult::new("universality Γ = Z²");
        let mut universal_es = PropertyResult::new("Euler–Satake universality");
        let flip = self.fault == Some(Fault::FlipEulerSign);
        let scale = |x: &BigInt| if flip { -x } else { x.clone() };
        let scale_q = |x: num_rational::BigRational| if flip { -x } else { x };
        let cases = self.cases;
        for i in 0..cases {
            let any_gamma = i % 2 == 1;
            let gamma = if any_gamma { &z2 } else { &z };
            let m = generators::model(&mut self.rng, &groups, any_gamma);
            let (a, b) = generators::split(&mut self.rng, &m);
            let (ma, mb) = (
                m.restrict(a.iter().map(String::as_str)).expect("own labels"),
                m.restrict(b.iter().map(String::as_str)).expect("own labels"),
            );
            let g = |x: &GroupoidModel| chi_gamma(x, gamma).map(|v| scale(&v)).expect("supported isotropy");
            let ok = g(&m) == g(&ma) + g(&mb)
                && chi_un(&m) == &chi_un(&ma) + &chi_un(&mb)
                && chi_es(&m) == chi_es(&ma) + chi_es(&mb)
                && chi_gamma_es(&m, gamma).ok() == Some(chi_gamma_es(&ma, gamma).unwrap() + chi_gamma_es(&mb, gamma).unwrap());
            additivity.record(ok, || format!("model {} with Γ = {gamma}", m.to_json()));

            let h = generators::model(&mut self.rng, &groups, any_gamma);
            let mh = m.product(&h);
            let ok = g(&mh) == g(&m) * g(&h)
                && chi_un(&mh) == &chi_un(&m) * &chi_un(&h)
                && scale_q(chi_es(&mh)) == scale_q(chi_es(&m)) * scale_q(chi_es(&h));
            multiplicativity.record(ok, || format!("models {} and {}", m.to_json(), h.to_json()));

            let via_ring = chi_un(&m).apply_hom(|atom| r_gamma(atom, gamma)).map(|v| scale(&v));
            let direct = g(&m);
            let target = if any_gamma { &mut universal_z2 } else { &mut universal_z };
            target.record(via_ring.as_ref() == Ok(&direct), || {
                format!("χ_Γ = {direct}, r_Γ(χ^un) = {via_ring:?} for {}", m.to_json())
            });

            let es_ring = chi_un(&m).apply_hom(|atom| Some(r_es(atom))).expect("total");
            universal_es.record(es_ring == chi_es(&m), || format!("model {}", m.to_json()));
        }
        vec![additivity, multiplicativity, universal_z, universal_z2, universal_es]
    }
}

/// Runs the whole suite. Identical configurations give identical reports.
pub fn run(config: &SelftestConfig) -> SelftestReport {
    let mut suite = Suite {
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        cases: config.cases,
        fault: config.fault,
    };
    let mut properties = suite.cell_properties();
    properties.push(suite.burnside());
    properties.extend(suite.ring());
    properties.extend(suite.invariants());
    SelftestReport {
        seed: config.seed,
        properties,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_run_passes_and_is_reproducible() {
        let config = SelftestConfig {
            cases: 20,
            ..SelftestConfig::default()
        };
        let a = run(&config);
        assert!(a.all_passed(), "{:?}", a.violated().collect::<Vec<_>>());
        assert_eq!(a.to_json(), run(&config).to_json());
    }

    #[test]
    fn flipped_sign_is_caught() {
        let report = run(&SelftestConfig {
            cases: 20,
            fault: Some(Fault::FlipEulerSign),
            ..SelftestConfig::default()
        });
        let violated: Vec<&str> = report.violated().map(|p| p.name).collect();
        assert!(violated.contains(&"cell multiplicativity"), "{violated:?}");
        assert!(violated.contains(&"open cell sign"), "{violated:?}");
    }
}
