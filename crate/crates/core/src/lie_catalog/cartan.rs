use num_bigint::{BigInt, BigUint};

use crate::euler_calculus::{product_label, CellVector, DefinableSpace, Stratum};
use crate::group_engine::{direct_product, FiniteGroup, GroupError};

use super::LieGroupDescriptor;

/// One piece `W_S∖S*` of the class space, for one conjugacy class `c` of
/// the component group.
///
/// `S` is a Cartan subgroup meeting the component class `c`: its identity
/// component is a torus of rank `torus_rank` and `S/S°` has order
/// `cyclic_order`. For products the datum is the factorwise product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    pub component_class: String,
    pub torus_rank: u32,
    pub cyclic_order: u64,
    pub weyl_order: u64,
    pub class_space_cells: CellVector,
}

impl CartanDatum {
    fn connected(rank: u32, weyl_order: u64, cells: CellVector) -> Self {
        Self {
            component_class: "identity".into(),
            torus_rank: rank,
            cyclic_order: 1,
            weyl_order,
            class_space_cells: cells,
        }
    }

    fn times(&self, other: &CartanDatum) -> CartanDatum {
        CartanDatum {
            component_class: product_label(&self.component_class, &other.component_class),
            torus_rank: self.torus_rank + other.torus_rank,
            cyclic_order: self.cyclic_order * other.cyclic_order,
            weyl_order: self.weyl_order * other.weyl_order,
            class_space_cells: self.class_space_cells.convolve(&other.class_space_cells),
        }
    }
}

fn torus_cells(rank: u32) -> CellVector {
    (0..rank).fold(CellVector::point(), |acc, _| acc.convolve(&CellVector::circle()))
}

/// For a finite group every class `c = [g]` gives `S = ⟨g⟩`, whose
/// generators lying in `c` form a single `N(S)`-orbit.
fn finite_data(g: &FiniteGroup) -> Vec<CartanDatum> {
    g.conjugacy_classes()
        .iter()
        .enumerate()
        .map(|(i, class)| {
            let rep = class[0];
            let members = g.generated_subgroup(&[rep]);
            let normalizer = g
                .elements()
                .filter(|&x| members[g.conjugate(rep, x)])
                .count();
            let order = g.element_order(rep);
            CartanDatum {
                component_class: format!("c{i}"),
                torus_rank: 0,
                cyclic_order: order as u64,
                weyl_order: (normalizer / order) as u64,
                class_space_cells: CellVector::point(),
            }
        })
        .collect()
}

/// Cartan data, one entry per conjugacy class of the component group.
pub fn cartan_data(g: &LieGroupDescriptor) -> Vec<CartanDatum> {
    match g {
        LieGroupDescriptor::Finite(f) => finite_data(f),
        LieGroupDescriptor::Torus(n) => vec![CartanDatum::connected(*n, 1, torus_cells(*n))],
        // W = Z/2 acts on the maximal circle by inversion; the quotient is
        // an arc with two fixed endpoints.
        LieGroupDescriptor::SU2 | LieGroupDescriptor::SO3 => {
            vec![CartanDatum::connected(1, 2, CellVector::closed_interval())]
        }
        LieGroupDescriptor::O2 => vec![
            CartanDatum::connected(1, 2, CellVector::closed_interval()),
            // Every reflection r generates S = {1, r}; N(S) = {±1, ±r}.
            CartanDatum {
                component_class: "reflection".into(),
                torus_rank: 0,
                cyclic_order: 2,
                weyl_order: 2,
                class_space_cells: CellVector::point(),
            },
        ],
        LieGroupDescriptor::Product(fs) => {
            let mut factors = fs.iter().map(cartan_data);
            let first = factors.next().unwrap_or_else(|| finite_data(&FiniteGroup::trivial()));
            factors.fold(first, |acc, data| {
                acc.iter()
                    .flat_map(|a| data.iter().map(move |b| a.times(b)))
                    .collect()
            })
        }
    }
}

/// `Ad_G∖G` as the disjoint union of the class spaces of all data.
pub fn conj_class_space(g: &LieGroupDescriptor) -> DefinableSpace {
    let strata = cartan_data(g)
        .into_iter()
        .map(|d| Stratum {
            label: d.component_class,
            cells: d.class_space_cells,
        })
        .collect();
    DefinableSpace::new(strata).expect("component classes are distinct")
}

/// `χ(Ad_G∖G)`.
pub fn chi_ad(g: &LieGroupDescriptor) -> BigInt {
    match g {
        LieGroupDescriptor::Finite(f) => f.class_count().into(),
        LieGroupDescriptor::Product(fs) => fs.iter().map(chi_ad).product(),
        _ => conj_class_space(g).euler_char(),
    }
}

/// `G°∖G`.
pub fn component_group(g: &LieGroupDescriptor) -> Result<FiniteGroup, GroupError> {
    match g {
        LieGroupDescriptor::Finite(f) => Ok(f.clone()),
        LieGroupDescriptor::Torus(_) | LieGroupDescriptor::SU2 | LieGroupDescriptor::SO3 => {
            Ok(FiniteGroup::trivial())
        }
        LieGroupDescriptor::O2 => Ok(FiniteGroup::cyclic(2)),
        LieGroupDescriptor::Product(fs) => fs
            .iter()
            .try_fold(FiniteGroup::trivial(), |acc, f| direct_product(&acc, &component_group(f)?)),
    }
}

/// `|G°∖G|`, without building the group.
pub fn component_count(g: &LieGroupDescriptor) -> BigUint {
    match g {
        LieGroupDescriptor::Finite(f) => f.order().into(),
        LieGroupDescriptor::Torus(_) | LieGroupDescriptor::SU2 | LieGroupDescriptor::SO3 => 1u32.into(),
        LieGroupDescriptor::O2 => 2u32.into(),
        LieGroupDescriptor::Product(fs) => fs.iter().map(component_count).product(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_engine::{catalog, conj_orbit_count, enumerate_homs, GroupPresentation};

    fn d(s: &str) -> LieGroupDescriptor {
        LieGroupDescriptor::parse(s).unwrap()
    }

    #[test]
    fn connected_entries() {
        let su2 = cartan_data(&d("SU2"));
        assert_eq!(su2.len(), 1);
        assert_eq!(su2[0].weyl_order, 2);
        assert_eq!(su2[0].class_space_cells, CellVector::from_counts(&[(0, 2), (1, 1)]));
        assert_eq!(chi_ad(&d("SU2")), 1.into());
        assert_eq!(chi_ad(&d("SO3")), 1.into());
        let t3 = cartan_data(&d("T^3"));
        assert_eq!((t3.len(), t3[0].weyl_order, t3[0].torus_rank), (1, 1, 3));
        assert_eq!(t3[0].class_space_cells.count(3), 1u32.into());
        assert_eq!(chi_ad(&d("T^3")), 0.into());
    }

    #[test]
    fn o2_has_two_pieces() {
        let data = cartan_data(&d("O2"));
        assert_eq!(data.len(), 2);
        assert_eq!(data[1].component_class, "reflection");
        assert_eq!(conj_class_space(&d("O2")).euler_char(), 2.into());
        assert_eq!(component_group(&d("O2")).unwrap().order(), 2);
    }

    #[test]
    fn finite_entries_match_class_counts() {
        let z = GroupPresentation::integers();
        for g in catalog::small_groups() {
            let desc = LieGroupDescriptor::Finite(g.clone());
            let data = cartan_data(&desc);
            assert!(data.iter().all(|c| c.weyl_order >= 1));
            let homs = enumerate_homs(&z, &g);
            assert_eq!(chi_ad(&desc), conj_orbit_count(&homs).into(), "{}", g.name());
            assert_eq!(conj_class_space(&desc).euler_char(), chi_ad(&desc));
        }
        let s3 = cartan_data(&d("S3"));
        // Identity: S trivial, W = S3. Transpositions: S = Z/2 self-normalizing.
        // 3-cycles: S = A3, N = S3.
        let w: Vec<u64> = s3.iter().map(|c| c.weyl_order).collect();
        assert_eq!(w, vec![6, 1, 2]);
    }

    #[test]
    fn products_multiply() {
        let p = d("prod(SU2, Z/2)");
        assert_eq!(chi_ad(&p), 2.into());
        assert_eq!(conj_class_space(&p).euler_char(), 2.into());
        assert_eq!(cartan_data(&p).len(), 2);
        assert_eq!(component_count(&d("prod(O2, S3)")), 12u32.into());
        assert_eq!(component_group(&d("prod(O2, S3)")).unwrap().order(), 12);
        assert_eq!(component_group(&d("T^3")).unwrap().order(), 1);
    }
}
