mod common;

use artk_core::parabolic::{
    bounded_closure, check_property, contains_element, same_subgroup, subset, HandleCatalog, Intersection, ParabolicHandle,
    Property, Verdict,
};
use artk_core::{Coxeter, CoxeterElement, Error};
use common::fixture;

fn catalog(f: &str) -> HandleCatalog {
    HandleCatalog::for_engine(&Coxeter::new(fixture(f))).unwrap()
}

#[test]
fn subset_agrees_with_element_sets_on_a3() {
    let cat = catalog("a3.graph");
    let engine = cat.engine().clone();
    let short: Vec<CoxeterElement> = engine.cayley_ball(Some(3)).unwrap().elements;
    let mut handles = Vec::new();
    for x in engine.graph().all().subsets() {
        for g in &short {
            handles.push(ParabolicHandle::new(&engine, g, x).unwrap());
        }
    }
    handles.sort();
    handles.dedup();
    for p in &handles {
        for q in &handles {
            let by_sets = cat.element_set(p).unwrap().is_subset(cat.element_set(q).unwrap());
            assert_eq!(subset(&engine, p, q).unwrap(), by_sets);
        }
    }
}

#[test]
fn membership_matches_element_sets() {
    for f in ["i2-3.graph", "i2-5.graph", "a3.graph"] {
        let cat = catalog(f);
        let group = cat.group();
        for (i, h) in cat.handles().iter().enumerate() {
            for (j, w) in group.elements().iter().enumerate() {
                assert_eq!(contains_element(cat.engine(), h, w).unwrap(), cat.set(i).contains(j));
            }
        }
    }
}

#[test]
fn subset_is_antisymmetric_on_sets() {
    let cat = catalog("i2-4.graph");
    let e = cat.engine();
    for (i, p) in cat.handles().iter().enumerate() {
        for (j, q) in cat.handles().iter().enumerate() {
            if same_subgroup(e, p, q).unwrap() {
                assert_eq!(cat.set(i), cat.set(j));
            }
        }
    }
}

#[test]
fn a3_intersections_are_parabolic() {
    let cat = catalog("a3.graph");
    let handles: Vec<_> = cat.distinct().map(|(_, h)| h.clone()).collect();
    for p in &handles {
        for q in &handles {
            assert!(matches!(cat.intersect(p, q).unwrap(), Intersection::Parabolic(_)));
        }
        assert_eq!(cat.intersect(p, p).unwrap(), Intersection::Parabolic(p.clone()));
    }
}

#[test]
fn closure_contains_b_and_is_least() {
    let cat = catalog("a3.graph");
    let group = cat.group();
    for a in 0..group.len() {
        let b = [group.element(a).clone()];
        let trace = cat.parabolic_closure(&b).unwrap();
        let set = cat.element_set(&trace.result).unwrap();
        assert!(set.contains(a));
        for (i, _) in cat.distinct() {
            if cat.set(i).contains(a) {
                assert!(set.is_subset(cat.set(i)));
            }
        }
        assert!(trace.chain.windows(2).all(|w| subset(cat.engine(), &w[1], &w[0]).unwrap()));
    }
}

#[test]
fn property_scans() {
    let a3 = Coxeter::new(fixture("a3.graph"));
    for p in Property::ALL {
        let report = check_property(&a3, p).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.level, "coxeter-shadow");
    }
    let path = Coxeter::new(fixture("path-abc-22.graph"));
    assert_eq!(check_property(&path, Property::Int).unwrap().verdict, Verdict::Pass);
    assert!(matches!(check_property(&path, Property::IntPlusPlus), Err(e) if e.is_cap()));
    let json = serde_json::to_value(check_property(&a3, Property::IntPlusPlus).unwrap()).unwrap();
    assert_eq!(json["property"], "Int++");
    assert_eq!(json["verdict"], "pass");
    assert!(json.get("counterexample").is_none());
}

#[test]
fn cardinality_lemma_on_dihedral_groups() {
    for m in 2..=6 {
        let report = catalog(&format!("i2-{m}.graph")).verify_cardinality_lemma();
        assert!(report.counterexamples.is_empty(), "I2({m})");
        assert!(report.nested_pairs > 0);
    }
}

#[test]
fn bounded_closure_on_infinite_group() {
    let engine = Coxeter::new(fixture("path-abc-22.graph"));
    let ac = engine.reduce(&engine.parse_word("a c").unwrap()).unwrap();
    let res = bounded_closure(&engine, &[ac], 2).unwrap();
    // a·c has infinite order, so no rank-one handle contains it
    assert!(!res.certified);
    assert_eq!(res.handle.base(), engine.graph().parse_subset("a c").unwrap());
    assert!(matches!(HandleCatalog::for_engine(&engine), Err(Error::CapExceeded { .. })));
}
