mod common;

use fuzzy_mlp::data::{self, encode_target, load_bundled, load_csv, lookup, parse_csv, DatasetDescriptor};
use fuzzy_mlp::fuzzifier::FuzzifierModel;
use std::collections::BTreeSet;

fn raw(name: &str) -> &'static str {
    data::bundled_fixture(name).unwrap()
}

#[test]
fn iris_shape() {
    let iris = load_bundled("iris").unwrap();
    assert_eq!((iris.len(), iris.n(), iris.class_count()), (150, 4, 3));
    assert_eq!(iris.dropped_rows, 0);
    for k in 0..3 {
        assert_eq!(iris.classes.iter().filter(|&&c| c == k).count(), 50);
    }
    assert!(iris.targets.iter().all(|&t| t > 0.0 && t < 1.0));
    for (&t, &k) in iris.targets.iter().zip(&iris.classes) {
        assert_eq!(t, encode_target(k, 3).unwrap());
    }
}

#[test]
fn bcw_drops_rows_with_missing_values() {
    let expected_drops = raw("bcw").lines().filter(|l| l.split(',').any(|f| f == "?")).count();
    assert_eq!(expected_drops, 16);
    let bcw = load_bundled("bcw").unwrap();
    assert_eq!(bcw.dropped_rows, expected_drops);
    assert_eq!(bcw.len(), 683);
    assert_eq!(bcw.n(), 9);
    assert_eq!(bcw.class_labels, vec!["2", "4"]);
}

#[test]
fn sepal_length_range_matches_a_direct_scan() {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for line in raw("iris").lines() {
        let v: f64 = line.split(',').next().unwrap().parse().unwrap();
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let iris = load_bundled("iris").unwrap();
    let model = FuzzifierModel::fit(&iris.x).unwrap();
    let p = model.params(0).unwrap();
    assert_eq!((p.a(), p.b()), (lo, hi));
    assert_eq!((lo, hi), (4.3, 7.9));
}

#[test]
fn fuzzified_rows_match_scalar_recomputation() {
    let wine = load_bundled("wine").unwrap();
    let model = FuzzifierModel::fit(&wine.x).unwrap();
    assert!(model.constant_columns().is_empty());
    for row in [0, 59, 130, 177] {
        let fuzzy = model.fuzzify(&wine.x[row]).unwrap();
        for (j, &value) in fuzzy.iter().enumerate() {
            let column: Vec<f64> = wine.x.iter().map(|r| r[j]).collect();
            let a = column.iter().copied().fold(f64::INFINITY, f64::min);
            let b = column.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            assert!((value - common::s_curve(wine.x[row][j], a, b)).abs() < 1e-15);
        }
    }
}

#[test]
fn glass_and_wine_layouts() {
    let glass = load_bundled("glass").unwrap();
    assert_eq!((glass.len(), glass.n(), glass.class_count()), (214, 9, 7));
    // the id column is dropped: first row starts with the refractive index
    assert_eq!(glass.x[0][0], 1.52101);
    // type 4 never occurs in the data but is part of the label domain
    assert!(!glass.classes.contains(&3));

    let wine = load_bundled("wine").unwrap();
    assert_eq!((wine.len(), wine.n(), wine.class_count()), (178, 13, 3));
    assert_eq!(wine.x[0][12], 1065.0);
}

#[test]
fn loading_is_deterministic_and_path_based_loading_agrees() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("glass.data");
    std::fs::write(&path, raw("glass")).unwrap();
    let descriptor = lookup("glass").unwrap();
    let from_file = load_csv(&path, &descriptor).unwrap();
    assert_eq!(from_file, load_csv(&path, &descriptor).unwrap());
    assert_eq!(from_file, load_bundled("glass").unwrap());
    assert!(load_csv(&dir.path().join("missing.data"), &descriptor).is_err());
}

#[test]
fn header_and_custom_descriptor() {
    let descriptor = DatasetDescriptor {
        name: "custom".into(),
        pattern_count: 3,
        attribute_count_incl_target: 3,
        class_count: 2,
        target_column: 0,
        categorical_columns: BTreeSet::from([2]),
        id_columns: BTreeSet::from([3]),
        has_header: true,
        class_labels: None,
        fixture: None,
    };
    let text = "label,x,colour,id\nyes,1.5,red,10\nno,2.5,blue,11\nyes,0.5,red,12\n";
    let set = parse_csv(text.as_bytes(), &descriptor).unwrap();
    assert_eq!(set.class_labels, vec!["no", "yes"]);
    assert_eq!(set.x, vec![vec![1.5, 0.0], vec![2.5, 1.0], vec![0.5, 0.0]]);
    assert_eq!(set.classes, vec![1, 0, 1]);
}

#[test]
fn soybean_layout_from_synthetic_rows() {
    // two rows in soybean-small layout: 35 integer attributes then the class
    let row = |class: &str| {
        let mut fields: Vec<String> = (0..35).map(|i| (i % 3).to_string()).collect();
        fields.push(class.into());
        fields.join(",")
    };
    let text = format!("{}\n{}\n", row("D1"), row("D4"));
    let set = parse_csv(text.as_bytes(), &lookup("soybean").unwrap()).unwrap();
    assert_eq!(set.n(), 35);
    assert_eq!(set.classes, vec![0, 3]);
    assert_eq!(set.targets, vec![0.2, 0.8]);
}
