use sym2_core::autos::is_isomorphic;
use sym2_core::group::{cyclic, symmetric};
use sym2_core::groupoid::{assemble_invariants, is_split_finite_type, normalize, GroupoidSpec, RawTerm};
use sym2_core::perm::coproduct::{isomorphism_classes, self_equivalences};

#[test]
fn normalize_merges_isomorphic_terms() {
    let spec = GroupoidSpec::parse("1×cyclic:2, 1×symmetric:2, 3×dihedral:3, symmetric:3").unwrap();
    assert_eq!(spec.components.len(), 2);
    assert_eq!(spec.components[0].multiplicity, 2);
    assert_eq!(spec.components[0].sources, vec!["cyclic:2".to_string(), "symmetric:2".to_string()]);
    assert_eq!(spec.components[1].multiplicity, 4);
    assert!(is_isomorphic(&spec.components[1].group, &symmetric(3).unwrap()).is_some());
}

#[test]
fn normalize_is_idempotent() {
    let spec = GroupoidSpec::parse("2×cyclic:4, 1×dihedral:4").unwrap();
    let terms = spec
        .components
        .iter()
        .rev()
        .map(|c| RawTerm { multiplicity: c.multiplicity, group: c.group.clone(), source: c.sources.join("+") })
        .collect();
    let again = normalize(terms);
    assert_eq!(spec.components.len(), again.components.len());
    for (a, b) in spec.components.iter().zip(&again.components) {
        assert_eq!((a.multiplicity, &a.group), (b.multiplicity, &b.group));
    }
}

#[test]
fn brute_force_pi0_matches_assembly() {
    let z2 = cyclic(2).unwrap();
    let eqs = self_equivalences(&z2, 2).unwrap();
    let (_, classes) = isomorphism_classes(&z2, &eqs).unwrap();
    let a = assemble_invariants(&GroupoidSpec::parse("2×cyclic:2").unwrap()).unwrap();
    assert_eq!(classes.order(), a.presentation.pi0().order());
    assert!(is_isomorphic(&classes, a.presentation.pi0()).is_some());
}

#[test]
fn finite_type_verdicts() {
    let v = is_split_finite_type(&GroupoidSpec::parse("2×dihedral:4, 1×dihedral:6").unwrap()).unwrap();
    assert!(v.split);
    assert_eq!(v.global_split, Some(true));
    let v = is_split_finite_type(&GroupoidSpec::parse("1×cyclic:3, 1×dihedral:8").unwrap()).unwrap();
    assert!(!v.split);
}
