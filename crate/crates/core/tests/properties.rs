use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sym2_core::autos::automorphism_group;
use sym2_core::cohomology::{coboundary, is_cocycle, Cochain, GModule};
use sym2_core::group::{cyclic, dihedral, direct_product, symmetric, FiniteGroup};
use sym2_core::groupoid::{assemble_invariants, GroupoidSpec};
use sym2_core::perm::{classifying_cocycle, decide, sym_invariants, Method};
use sym2_core::two_group::verify_coherence;
use sym2_core::Error;

fn small_group(kind: u8, n: usize) -> FiniteGroup {
    match kind % 4 {
        0 => cyclic(n).unwrap(),
        1 => dihedral(n.max(2)).unwrap(),
        2 => symmetric(n.min(4)).unwrap(),
        _ => direct_product(&cyclic(2).unwrap(), &cyclic(n).unwrap()).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_axioms(kind in 0u8..4, n in 1usize..9, x in 0usize..64, y in 0usize..64, w in 0usize..64) {
        let g = small_group(kind, n);
        let (x, y, w) = (x % g.order(), y % g.order(), w % g.order());
        let e = g.identity();
        prop_assert_eq!(g.mul(e, x), x);
        prop_assert_eq!(g.mul(x, e), x);
        prop_assert_eq!(g.mul(x, g.inv(x)), e);
        prop_assert_eq!(g.mul(g.mul(x, y), w), g.mul(x, g.mul(y, w)));
    }

    #[test]
    fn coboundary_squares_to_zero(n in 2usize..7, degree in 0usize..3, seed: u64) {
        let acting = Arc::new(dihedral(n).unwrap());
        let coeff = Arc::new(cyclic(2).unwrap());
        let m = Arc::new(GModule::trivial(acting, coeff).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = Cochain::random(m, degree, &mut rng).unwrap();
        let dc = coboundary(&c).unwrap();
        prop_assert!(coboundary(&dc).unwrap().is_zero());
        prop_assert!(is_cocycle(&dc));
    }

    #[test]
    fn dihedral_cocycles_are_coherent(n in 3usize..13) {
        let z = classifying_cocycle(&dihedral(n).unwrap()).unwrap();
        prop_assert!(is_cocycle(&z));
        let inv = sym_invariants(&dihedral(n).unwrap()).unwrap();
        prop_assert!(verify_coherence(&inv.presentation).passed());
    }

    #[test]
    fn outer_action_on_center_is_well_defined(kind in 0u8..4, n in 2usize..9) {
        let g = small_group(kind, n);
        let outer = automorphism_group(&g).unwrap();
        let center = g.center();
        for class in outer.classes() {
            for &z in &center {
                let img = outer.aut_element(class[0]).apply(z);
                prop_assert!(class.iter().all(|&a| outer.aut_element(a).apply(z) == img));
                prop_assert!(center.contains(&img));
            }
        }
    }

    #[test]
    fn assembly_is_order_independent(perm in Just(["2×dihedral:4", "1×cyclic:3", "1×symmetric:3"]).prop_shuffle()) {
        let shuffled = GroupoidSpec::parse(&perm.join(", ")).unwrap();
        let sorted = GroupoidSpec::parse("2×dihedral:4, 1×cyclic:3, 1×symmetric:3").unwrap();
        prop_assert_eq!(&shuffled.components, &sorted.components);
        let a = assemble_invariants(&shuffled).unwrap();
        prop_assert_eq!(a.presentation.pi0().order(), 2 * 2 * 2 * 2);
        prop_assert_eq!(a.presentation.pi1().coeff().order(), 2 * 2 * 3);
    }
}

fn quaternion() -> FiniteGroup {
    // index 4*s + u for sign s and unit u in 1, i, j, k
    let unit = [[(0, 0), (0, 1), (0, 2), (0, 3)], [(0, 1), (1, 0), (0, 3), (1, 2)], [(0, 2), (1, 3), (1, 0), (0, 1)], [(0, 3), (0, 2), (1, 1), (1, 0)]];
    let rows = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (s, u) = unit[a % 4][b % 4];
                    4 * ((s + a / 4 + b / 4) % 2) + u
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(rows).unwrap()
}

#[test]
fn deciders_agree_on_corpus() {
    let mut corpus: Vec<(String, FiniteGroup)> = (4..=12).map(|n| (format!("D{n}"), dihedral(n).unwrap())).collect();
    corpus.push(("Q8".into(), quaternion()));
    corpus.push(("Z2×Z4".into(), direct_product(&cyclic(2).unwrap(), &cyclic(4).unwrap()).unwrap()));
    corpus.push(("S3×Z2".into(), direct_product(&symmetric(3).unwrap(), &cyclic(2).unwrap()).unwrap()));
    for (name, g) in corpus {
        let inv = sym_invariants(&g).unwrap();
        let reference = decide(&inv, Method::Coboundary).unwrap().split.unwrap();
        match decide(&inv, Method::SectionSearch) {
            Ok(v) => assert_eq!(v.split, Some(reference), "{name} section search"),
            Err(Error::BudgetExhausted(_)) => {}
            Err(e) => panic!("{name}: {e}"),
        }
        let w = decide(&inv, Method::NonsplitWitness).unwrap();
        if let Some(s) = w.split {
            assert_eq!(s, reference, "{name} witness");
        }
    }
}

#[test]
fn quaternion_table_is_a_group() {
    let q = quaternion();
    assert_eq!(q.center().len(), 2);
    assert_eq!(automorphism_group(&q).unwrap().out().order(), 6);
}
