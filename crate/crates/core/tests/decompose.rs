mod common;

use artk_core::decompose::{decompose, DecompositionTree, Strategy};
use common::fixture;

#[test]
fn square_star_link() {
    let g = fixture("square-2345.graph");
    let tree = decompose(&g, Strategy::StarLink);
    assert_eq!(tree.render(&g), "(<v,w> *_<v> <v,y>) *_<w,y> (<w,x> *_<x> <x,y>)");
    let leaves: Vec<String> = tree.leaves().iter().map(|&x| g.format_subset(x)).collect();
    assert_eq!(leaves, ["{v,w}", "{v,y}", "{w,x}", "{x,y}"]);
    assert!(tree.is_valid(&g));
    assert_eq!(tree.vertex_set(), g.all());
    let DecompositionTree::Amalgam { pivot, .. } = &tree else { panic!("not complete") };
    assert_eq!((g.name(pivot.0), g.name(pivot.1)), ("v", "x"));
}

#[test]
fn square_two_deletion() {
    let g = fixture("square-2345.graph");
    let tree = decompose(&g, Strategy::TwoDeletion);
    assert!(tree.is_valid(&g));
    assert!(tree.leaves().iter().all(|&x| g.is_free_of_infinity(x)));
}

#[test]
fn json_shape() {
    let g = fixture("path-abc-22.graph");
    let json = decompose(&g, Strategy::StarLink).to_json(&g);
    assert_eq!(json["pivot"], serde_json::json!(["a", "c"]));
    assert_eq!(json["over"], serde_json::json!(["b"]));
    assert_eq!(json["left"]["leaf"], serde_json::json!(["a", "b"]));
}
