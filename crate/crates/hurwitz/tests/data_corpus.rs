//! Validation of the committed group files in `data/`: the degree-56 Belyi
//! pair, the degree-28 fiber group extracted from it, the 27-lines Weyl
//! group, and the degree-36 symplectic action.

use std::path::PathBuf;

use hurwitz::io::{read_group_file, read_type_file, write_group_file};
use hurwitz::wreath::{extract_fiber_tuple, wreath_block_system, BelyiTriple};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

const SP6_ORDER: u128 = 1_451_520;
const WE6_ORDER: u128 = 51_840;

/// Extract the degree-28 fiber tuple from the degree-56 pair.
fn extracted_fiber() -> hurwitz::nielsen::GeneratingTuple {
    let pair = read_group_file(&data("psp62_wreath56.grp")).expect("read degree-56 pair");
    assert_eq!(pair.degree(), 56);
    let gens = pair.gens();
    assert_eq!(gens.len(), 2, "expected exactly the two printed generators");
    let triple = BelyiTriple::from_pair(gens[0].clone(), gens[1].clone()).expect("product triple");
    let types: Vec<String> = triple.entries().iter().map(|p| p.cycle_type().to_string()).collect();
    assert_eq!(types, ["14^4", "2^24.1^8", "4^6.2^16"]);
    let blocks = wreath_block_system(&triple, 2).expect("two blocks of 28");
    assert_eq!(blocks.len(), 2);
    assert!(blocks.iter().all(|b| b.len() == 28));
    extract_fiber_tuple(&triple, &blocks).expect("fiber tuple")
}

#[test]
fn wreath56_pair_extracts_fiber_tuple_with_expected_types() {
    let tuple = extracted_fiber();
    assert_eq!(tuple.len(), 4);
    let mut types: Vec<String> = tuple.cycle_types().iter().map(|t| t.to_string()).collect();
    types.sort();
    let mut expected =
        vec!["2^6.1^16".to_string(), "2^12.1^4".into(), "2^12.1^4".into(), "7^4".into()];
    expected.sort();
    assert_eq!(types, expected);
    assert_eq!(tuple.group().order().unwrap(), SP6_ORDER);
    assert_eq!(tuple.genus().unwrap(), 0);
}

/// Writes `data/psp62_deg28.grp` from the extraction and reports the class
/// sizes needed by the ramification-type file. Run explicitly:
/// `cargo test -p hurwitz --test data_corpus regenerate -- --ignored --nocapture`
#[test]
#[ignore]
fn regenerate_degree28_group_file() {
    let tuple = extracted_fiber();
    let group = tuple.group();
    write_group_file(
        &data("psp62_deg28.grp"),
        28,
        tuple.entries(),
        "Degree-28 fiber tuple of the degree-56 Belyi pair: PSp6(2) in its\n\
         2-transitive action on 28 points; group order 1451520.  The four\n\
         generators multiply to the identity and have cycle structures\n\
         7^4, 2^12.1^4, 2^12.1^4, 2^6.1^16.",
    )
    .expect("write group file");
    for ty in ["2^6.1^16", "2^12.1^4", "7^4"] {
        let classes = group.classes_of_type(&ty.parse().unwrap()).expect("classes");
        let sizes: Vec<usize> = classes.iter().map(|(_, s)| *s).collect();
        println!("type {ty}: class sizes {sizes:?}");
    }
}

#[test]
fn degree28_group_file_is_consistent_with_extraction() {
    let group = read_group_file(&data("psp62_deg28.grp")).expect("read degree-28 group");
    assert_eq!(group.degree(), 28);
    assert!(group.is_transitive());
    assert_eq!(group.order().unwrap(), SP6_ORDER);
    let tuple = extracted_fiber();
    assert_eq!(tuple.group().order().unwrap(), group.order().unwrap());
}

#[test]
fn degree28_type_file_resolves_all_classes() {
    let ty = read_type_file(&data("psp62_deg28.rty")).expect("resolve type file");
    assert_eq!(ty.group().order().unwrap(), SP6_ORDER);
    let sizes: Vec<usize> = ty.classes().iter().map(|c| c.size).collect();
    assert_eq!(sizes, [63, 3780, 3780, 207360]);
}

#[test]
fn we6_group_file_and_rigid_type_resolve() {
    let group = read_group_file(&data("w_e6_27lines.grp")).expect("read 27-lines group");
    assert_eq!(group.degree(), 27);
    assert!(group.is_transitive());
    assert_eq!(group.order().unwrap(), WE6_ORDER);

    // the 6^4.3 type splits into three classes; only size=720 pins it down
    let ambiguous = group.resolve_class(&"6^4.3".parse().unwrap(), None, None);
    assert!(matches!(ambiguous, Err(hurwitz::error::Error::AmbiguousClass(_))));

    let ty = read_type_file(&data("w_e6_rigid.rty")).expect("resolve rigid type");
    let sizes: Vec<usize> = ty.classes().iter().map(|c| c.size).collect();
    assert_eq!(sizes, [36, 36, 540, 720]);
}

#[test]
fn sp62_deg36_group_file_has_expected_order() {
    let group = read_group_file(&data("sp62_deg36.grp")).expect("read degree-36 group");
    assert_eq!(group.degree(), 36);
    assert!(group.is_transitive());
    assert_eq!(group.order().unwrap(), SP6_ORDER);
}
