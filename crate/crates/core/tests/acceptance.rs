//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orbchar::chern_gauss_bonnet::{
    assemble_phi, gb1_su2_check, phi_surface, phi_three, run_scenario, Form, Steps, DEFAULT_GRID,
};
use orbchar::euler_calculus::{disjoint_union, product, CellVector, DefinableSpace};
use orbchar::euler_ring::RingElement;
use orbchar::group_engine::{
    burnside_orbit_count, catalog, conj_orbit_count, direct_product, enumerate_homs, FiniteGroup, GroupPresentation,
};
use orbchar::groupoid_invariants::{
    chi_es, chi_gamma, chi_un, r_es, r_gamma, GroupoidModel, GroupoidStratum,
};
use orbchar::lie_catalog::{chi_ad, LieGroupDescriptor};
use orbchar::selftest::generators;

const SEED: u64 = 0x5eed_2024;

struct Verdict {
    ok: bool,
    detail: String,
}

impl Verdict {
    fn new() -> Self {
        Self {
            ok: true,
            detail: String::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.ok {
            self.ok = false;
            self.detail = what();
        }
    }
}

fn criterion(name: &str, budget: Duration, body: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let mut v = body();
    let elapsed = start.elapsed();
    if elapsed > budget {
        v.check(false, || format!("took {elapsed:.2?}, budget {budget:.0?}"));
    }
    let status = if v.ok { "PASS" } else { "FAIL" };
    if v.ok {
        println!("{status} {name} ({elapsed:.2?})");
    } else {
        println!("{status} {name} ({elapsed:.2?}): {}", v.detail);
    }
    v.ok
}

// Oracles written against the raw definitions, independent of the library's
// own evaluation paths.

fn chi_of_cells(c: &CellVector) -> BigInt {
    c.iter()
        .map(|(d, n)| {
            let n = BigInt::from(n.clone());
            if d % 2 == 0 {
                n
            } else {
                -n
            }
        })
        .sum()
}

fn chi_of_space(s: &DefinableSpace) -> BigInt {
    s.strata().iter().map(|x| chi_of_cells(&x.cells)).sum()
}

fn power(g: &FiniteGroup, x: usize, n: usize) -> usize {
    (0..n).fold(g.identity(), |acc, _| g.mul(acc, x))
}

/// Homomorphisms from `gamma` to `g` as image tuples, by brute force over
/// the only source shapes the criteria use.
fn hom_tuples(gamma: &str, g: &FiniteGroup) -> Vec<Vec<usize>> {
    let all: Vec<usize> = g.elements().collect();
    match gamma {
        "Z" => all.iter().map(|&x| vec![x]).collect(),
        "Z^2" => all
            .iter()
            .flat_map(|&x| all.iter().map(move |&y| (x, y)))
            .filter(|&(x, y)| g.mul(x, y) == g.mul(y, x))
            .map(|(x, y)| vec![x, y])
            .collect(),
        _ => {
            let n: usize = gamma.strip_prefix("Z/").and_then(|n| n.parse().ok()).expect("Z/n");
            all.iter()
                .filter(|&&x| power(g, x, n) == g.identity())
                .map(|&x| vec![x])
                .collect()
        }
    }
}

/// `|Hom(Γ, G)/G|` via Burnside: the average number of tuples fixed by
/// conjugation.
fn oracle_orbits(gamma: &str, g: &FiniteGroup) -> usize {
    let tuples = hom_tuples(gamma, g);
    let fixed: usize = g
        .elements()
        .map(|x| {
            tuples
                .iter()
                .filter(|t| t.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
                .count()
        })
        .sum();
    assert_eq!(fixed % g.order(), 0);
    fixed / g.order()
}

fn oracle_class_count(g: &FiniteGroup) -> usize {
    let mut seen = vec![false; g.order()];
    let mut classes = 0;
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        classes += 1;
        for h in g.elements() {
            seen[g.mul(g.mul(h, x), g.inv(h))] = true;
        }
    }
    classes
}

fn random_finite_model(rng: &mut ChaCha8Rng, groups: &[FiniteGroup]) -> GroupoidModel {
    let k = rng.random_range(1..=4);
    let strata = (0..k)
        .map(|i| {
            let iso = if rng.random_bool(0.25) {
                LieGroupDescriptor::trivial()
            } else {
                LieGroupDescriptor::Finite(groups[rng.random_range(0..groups.len())].clone())
            };
            GroupoidStratum::new(format!("x{i}"), generators::cells(rng, 3), iso)
        })
        .collect();
    GroupoidModel::new(strata).expect("distinct labels")
}

fn stratum_group(s: &GroupoidStratum) -> Option<&FiniteGroup> {
    match &s.isotropy {
        LieGroupDescriptor::Finite(g) => Some(g),
        _ => None,
    }
}

#[allow(clippy::needless_range_loop)]
fn random_forms(rng: &mut ChaCha8Rng, n: usize, dim: usize, degree: u32) -> Vec<Vec<Form>> {
    let mut m = vec![vec![Form::zero(dim); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let mut f = Form::zero(dim);
            for mask in 0..(1u32 << dim) {
                if mask.count_ones() == degree {
                    f.set(mask, rng.random_range(-2.0..2.0));
                }
            }
            m[j][i] = f.scaled(-1.0);
            m[i][j] = f;
        }
    }
    m
}

fn main() {
    let mut all_ok = true;

    all_ok &= criterion("cell Euler characteristic axioms", Duration::from_secs(1), || {
        let mut v = Verdict::new();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        for i in 0..500 {
            let a = generators::space(&mut rng, 4, 4);
            let b = generators::space(&mut rng, 4, 4);
            let (ca, cb) = (chi_of_space(&a), chi_of_space(&b));
            v.check(a.euler_char() == ca, || format!("pair {i}: χ(A) disagrees with the cell count"));
            v.check(disjoint_union(&a, &b).euler_char() == &ca + &cb, || format!("pair {i}: additivity"));
            v.check(product(&a, &b).euler_char() == &ca * &cb, || format!("pair {i}: multiplicativity"));
        }
        for d in 0..=6 {
            let expected = if d % 2 == 0 { 1 } else { -1 };
            v.check(CellVector::open_cell(d).euler_char() == BigInt::from(expected), || {
                format!("open {d}-cell")
            });
        }
        v
    });

    all_ok &= criterion("homomorphism orbit counts match Burnside", Duration::from_secs(10), || {
        let mut v = Verdict::new();
        let sources = ["Z", "Z^2", "Z/2", "Z/3"];
        for g in generators::finite_groups(12) {
            for s in sources {
                let homs = enumerate_homs(&GroupPresentation::parse_shorthand(s).unwrap(), &g);
                let expected = oracle_orbits(s, &g);
                v.check(conj_orbit_count(&homs) == expected, || {
                    format!("({}, {s}): {} vs oracle {expected}", g.name(), conj_orbit_count(&homs))
                });
                v.check(burnside_orbit_count(&homs) == expected, || format!("({}, {s}): Burnside", g.name()));
            }
        }
        let s3 = catalog::by_name("S3").unwrap();
        for (s, anchor) in [("Z", 3), ("Z^2", 8), ("Z/2", 2)] {
            let got = conj_orbit_count(&enumerate_homs(&GroupPresentation::parse_shorthand(s).unwrap(), &s3));
            v.check(got == anchor, || format!("(S3, {s}) = {got}, expected {anchor}"));
        }
        v
    });

    all_ok &= criterion("group-symbol ring axioms and confluence", Duration::from_secs(5), || {
        let mut v = Verdict::new();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
        let groups = generators::finite_groups(16);
        let xs: Vec<RingElement> = (0..1000).map(|_| generators::ring_element(&mut rng, &groups)).collect();
        for (i, w) in xs.windows(3).enumerate() {
            let (a, b, c) = (&w[0], &w[1], &w[2]);
            v.check(&(a * b) * c == a * &(b * c), || format!("associativity at {i}"));
            v.check(a * b == b * a, || format!("commutativity at {i}"));
            v.check(a * &(b + c) == &(a * b) + &(a * c), || format!("distributivity at {i}"));
            v.check(&(a + b) + c == a + &(b + c), || format!("additive associativity at {i}"));
            v.check(a * &RingElement::one() == *a, || format!("unit at {i}"));
            v.check((a + &(-a)).is_zero(), || format!("additive inverse at {i}"));
        }
        for i in 0..1000 {
            let g = &groups[rng.random_range(0..groups.len())];
            let h = &groups[rng.random_range(0..groups.len())];
            if g.order() * h.order() > 64 {
                continue;
            }
            let direct = RingElement::finite(&direct_product(g, h).unwrap());
            let symbolic = &RingElement::finite(g) * &RingElement::finite(h);
            v.check(direct == symbolic, || {
                format!("case {i}: T[{} x {}] normalizes two ways", g.name(), h.name())
            });
        }
        let t = |n| RingElement::finite(&FiniteGroup::cyclic(n));
        v.check(&t(2) * &t(3) == t(6), || "T[Z/2]·T[Z/3] ≠ T[Z/6]".into());
        v
    });

    all_ok &= criterion("universality of the ring-valued characteristic", Duration::from_secs(30), || {
        let mut v = Verdict::new();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
        let groups = generators::finite_groups(12);
        for i in 0..200 {
            let model = random_finite_model(&mut rng, &groups);
            let un = chi_un(&model);
            for s in ["Z", "Z^2"] {
                let gamma = GroupPresentation::parse_shorthand(s).unwrap();
                let direct = chi_gamma(&model, &gamma).unwrap();
                let via_ring: BigInt = un.apply_hom(|a| r_gamma(a, &gamma)).unwrap();
                let oracle: BigInt = model
                    .strata()
                    .iter()
                    .map(|st| {
                        let weight = stratum_group(st).map_or(1, |g| oracle_orbits(s, g));
                        chi_of_cells(&st.cells) * BigInt::from(weight)
                    })
                    .sum();
                v.check(direct == via_ring && direct == oracle, || {
                    format!("model {i}, Γ = {s}: direct {direct}, ring {via_ring}, oracle {oracle}")
                });
            }
            let es = chi_es(&model);
            let es_ring: BigRational = un.apply_hom(|a| Some(r_es(a))).unwrap();
            let es_oracle: BigRational = model
                .strata()
                .iter()
                .map(|st| {
                    let order = stratum_group(st).map_or(1, FiniteGroup::order);
                    BigRational::new(chi_of_cells(&st.cells), BigInt::from(order))
                })
                .sum();
            v.check(es == es_ring && es == es_oracle, || {
                format!("model {i}: χ_ES direct {es}, ring {es_ring}, oracle {es_oracle}")
            });
        }
        v
    });

    all_ok &= criterion("Cartan catalog values", Duration::from_secs(10), || {
        let mut v = Verdict::new();
        for (g, expected) in [
            (LieGroupDescriptor::SU2, 1),
            (LieGroupDescriptor::SO3, 1),
            (LieGroupDescriptor::O2, 2),
        ] {
            let got = chi_ad(&g);
            v.check(got == BigInt::from(expected), || format!("χ_ad({g}) = {got}, expected {expected}"));
        }
        for n in 1..=4 {
            let got = chi_ad(&LieGroupDescriptor::Torus(n));
            v.check(got == BigInt::from(0), || format!("χ_ad(T^{n}) = {got}"));
        }
        for f in catalog::bundled() {
            let expected = oracle_class_count(&f);
            let got = chi_ad(&LieGroupDescriptor::Finite(f.clone()));
            v.check(got == BigInt::from(expected), || {
                format!("χ_ad({}) = {got}, {expected} classes", f.name())
            });
        }
        v
    });

    all_ok &= criterion("teardrop with a Z/5 cone point", Duration::from_secs(5), || {
        let mut v = Verdict::new();
        let model = GroupoidModel::teardrop(5);
        let un = chi_un(&model);
        let expected_un = &RingElement::finite(&FiniteGroup::cyclic(5)) + &RingElement::one();
        v.check(un == expected_un, || format!("χ_un = {un}"));
        v.check(un.to_string() == "T[Z/5] + 1", || format!("rendered as {un}"));
        let z = chi_gamma(&model, &GroupPresentation::integers()).unwrap();
        v.check(z == BigInt::from(6), || format!("χ_Z = {z}"));
        let es = chi_es(&model);
        v.check(es == BigRational::new(6.into(), 5.into()), || format!("χ_ES = {es}"));
        v
    });

    for (scenario, expected) in [("point-in-r2", 1.0), ("circle-in-r2", 0.0), ("s2-in-r3", 2.0)] {
        all_ok &= criterion(&format!("Gauss-Bonnet {scenario}"), Duration::from_secs(60), || {
            let mut v = Verdict::new();
            match run_scenario(scenario, DEFAULT_GRID, &Steps::default()) {
                Ok(r) => {
                    v.check(r.expected == expected, || format!("expected value {}", r.expected));
                    v.check(r.within(0.02), || format!("value {} off by {:.3e}", r.value, r.abs_error));
                }
                Err(e) => v.check(false, || e.to_string()),
            }
            v
        });
    }

    all_ok &= criterion("Gauss-Bonnet for the loop characteristic of SU(2)", Duration::from_secs(300), || {
        let mut v = Verdict::new();
        match gb1_su2_check(DEFAULT_GRID, &Steps::default()) {
            Ok(c) => {
                v.check(c.chi == BigInt::from(1), || format!("combinatorial χ_Z = {}", c.chi));
                v.check((c.value - 1.0).abs() <= 0.05, || format!("quadrature value {}", c.value));
                v.check(c.torus.abs() <= 0.05, || format!("torus term {}", c.torus));
                v.check((c.plus_one - 1.0).abs() <= 0.05, || format!("+1 term {}", c.plus_one));
                v.check((c.minus_one - 1.0).abs() <= 0.05, || format!("-1 term {}", c.minus_one));
            }
            Err(e) => v.check(false, || e.to_string()),
        }
        v
    });

    all_ok &= criterion("closed-form transgression forms in ranks 2 and 3", Duration::from_secs(10), || {
        let mut v = Verdict::new();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
        for case in 0..200 {
            let dim = rng.random_range(1..=5);
            let w = random_forms(&mut rng, 2, dim, 1);
            let o = random_forms(&mut rng, 2, dim, 2);
            let d = assemble_phi(&w, &o).unwrap().minus(&phi_surface(&w)).max_abs();
            v.check(d <= 1e-12, || format!("rank 2, case {case}: deviation {d:.3e}"));

            let dim = rng.random_range(2..=5);
            let w = random_forms(&mut rng, 3, dim, 1);
            let o = random_forms(&mut rng, 3, dim, 2);
            let d = assemble_phi(&w, &o).unwrap().minus(&phi_three(&w, &o)).max_abs();
            v.check(d <= 1e-12, || format!("rank 3, case {case}: deviation {d:.3e}"));
        }
        v
    });

    if !all_ok {
        std::process::exit(1);
    }
}
