mod common;

use common::complex;
use dashu_int::IBig;
use macx_core::bounds::cat_bounds;
use macx_core::cochain::Cochain;
use macx_core::koszul::koszul_tor_oracle;
use macx_core::tor::{cup_length, real_mac_profile, Analyzer, Product, TorClass};
use macx_core::{Error, SimplicialComplex, VertexSet};
use proptest::prelude::*;

fn trim<T: Clone + PartialEq + Default>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    while v.len() > 1 && v.last() == Some(&T::default()) {
        v.pop();
    }
    v
}

fn all_classes(a: &Analyzer) -> Vec<TorClass> {
    let ground = a.complex().vertex_set();
    ground
        .subsets()
        .filter(|s| !s.is_empty())
        .flat_map(|s| a.classes(s))
        .collect()
}

/// Whether two products name the same class; zero counts as equal to zero.
fn same_product(a: &Analyzer, x: &Product, y: &Product) -> bool {
    match (x, y) {
        (Product::Class(x), Product::Class(y)) => a.same_class(x, y).unwrap(),
        (x, y) => x.is_zero() && y.is_zero(),
    }
}

fn negated(c: &TorClass) -> TorClass {
    TorClass {
        rep: c.rep.scaled(&-IBig::ONE),
        ..c.clone()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn hochster_matches_koszul(k in complex(1, 6)) {
        let h = Analyzer::new(&k).hochster_decomposition().unwrap();
        let t = koszul_tor_oracle(&k).unwrap();
        prop_assert_eq!(trim(&h.total_betti()), trim(&t.ranks));
        prop_assert_eq!(trim(&h.total_torsion()), trim(&t.torsion));
    }

    #[test]
    fn products_ignore_the_representative(k in complex(2, 6), seed in any::<u64>()) {
        let a = Analyzer::new(&k);
        let classes = all_classes(&a);
        let mut rng = seed;
        let mut next = || {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (rng >> 33) as i64 % 5 - 2
        };
        for x in &classes {
            let c = a.cohomology(x.subset);
            let len = c.chain.rank(x.degree - 1);
            let shift = Cochain { home: c.home, degree: x.degree - 1, coefficients: (0..len).map(|_| IBig::from(next())).collect() };
            let moved = TorClass { rep: x.rep.add(&c.coboundary_of(&shift)), ..x.clone() };
            prop_assert!(a.same_class(x, &moved).unwrap());
            for y in &classes {
                let before = a.cup_product(x, y).unwrap();
                let after = a.cup_product(&moved, y).unwrap();
                prop_assert!(same_product(&a, &before, &after), "{:?} * {:?}", x, y);
            }
        }
    }

    #[test]
    fn products_commute_up_to_sign(k in complex(2, 6)) {
        let a = Analyzer::new(&k);
        let classes = all_classes(&a);
        for x in &classes {
            for y in &classes {
                let xy = a.cup_product(x, y).unwrap();
                let yx = a.cup_product(y, x).unwrap();
                if !x.subset.is_disjoint(y.subset) {
                    prop_assert!(matches!(xy, Product::StructuralZero));
                    continue;
                }
                let yx = match (x.total_degree() * y.total_degree() % 2, yx) {
                    (1, Product::Class(c)) => Product::Class(negated(&c)),
                    (_, p) => p,
                };
                prop_assert!(same_product(&a, &xy, &yx), "{:?} * {:?}", x, y);
            }
        }
    }

    #[test]
    fn cup_length_within_bounds(k in complex(1, 7)) {
        match real_mac_profile(&k) {
            Err(Error::Acyclic) => {}
            Err(e) => prop_assert!(false, "{e}"),
            Ok(profile) => {
                let c = cup_length(&k).unwrap().length;
                prop_assert!(c <= profile.bound());
                let report = cat_bounds(&k, None).unwrap();
                if let (Some(lo), Some(hi)) = (report.best_lower, report.best_upper) {
                    prop_assert!(lo <= hi);
                }
            }
        }
    }

    #[test]
    fn cup_length_is_superadditive_on_joins(k in complex(1, 5), l in complex(1, 5)) {
        let (ck, cl) = (cup_length(&k), cup_length(&l));
        let (Ok(ck), Ok(cl)) = (ck, cl) else { return Ok(()) };
        prop_assert!(cup_length(&k.join(&l)).unwrap().length >= ck.length + cl.length);
    }
}

#[test]
fn joins_of_low_spheres_have_additive_cup_length() {
    let spheres = [
        macx_core::fixtures::s0(),
        SimplicialComplex::polygon(3),
        SimplicialComplex::polygon(4),
        SimplicialComplex::polygon(5),
        macx_core::fixtures::bipyramid(),
        macx_core::fixtures::octahedron(),
    ];
    for (i, k) in spheres.iter().enumerate() {
        for l in &spheres[i..] {
            if k.n() + l.n() > 12 {
                continue;
            }
            let sum = cup_length(k).unwrap().length + cup_length(l).unwrap().length;
            assert_eq!(cup_length(&k.join(l)).unwrap().length, sum, "{k:?} * {l:?}");
        }
    }
}

#[test]
fn overlapping_supports_multiply_to_zero() {
    let k = macx_core::fixtures::octahedron();
    let a = Analyzer::new(&k);
    let x = &a.classes(VertexSet::from_labels([1, 2]))[0];
    let y = &a.classes(VertexSet::from_labels([1, 2, 3, 4]))[0];
    assert!(matches!(
        a.cup_product(x, y).unwrap(),
        Product::StructuralZero
    ));
}

#[test]
fn products_above_the_dimension_vanish() {
    let points = SimplicialComplex::simplex(4).skeleton(0);
    let a = Analyzer::new(&points);
    let x = &a.classes(VertexSet::from_labels([1, 2]))[0];
    let y = &a.classes(VertexSet::from_labels([3, 4]))[0];
    assert!(matches!(a.cup_product(x, y).unwrap(), Product::Zero { .. }));
}
