use schur_wasm::api;
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn bounds_are_canonicalized() {
    let a = parse(api::bounds("4,3,3").unwrap());
    let b = parse(api::bounds("3,3,4").unwrap());
    assert_eq!(a, b);
    assert_eq!(a["spec"]["ks"], serde_json::json!([3, 3, 4]));
    assert!(api::bounds("3,2").is_err());
    assert!(api::bounds("").is_err());
}

#[test]
fn witness_round_trips_through_verify() {
    let w = parse(api::witness("case2", 4).unwrap());
    assert_eq!(w["coloring"]["n"], 27);
    let ks = w["spec"]["ks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let v = parse(api::verify(&w["coloring"].to_string(), &ks).unwrap());
    assert_eq!(v["valid"], true);
    assert!(api::witness("case3", 5).is_err());
    assert!(api::witness("case1", 4).is_err());
}

#[test]
fn verify_reports_the_first_solution() {
    let v = parse(api::verify(r#"{"n":4,"r":2,"colors":[1,2,2,2]}"#, "3,3").unwrap());
    assert_eq!(v["valid"], false);
    assert_eq!(v["solution"], serde_json::json!({"color": 2, "xs": [2, 2, 4]}));
    assert!(api::verify(r#"{"n":4"#, "3,3").is_err());
}

#[test]
fn matrix_has_one_color_per_edge() {
    let m = parse(api::difference_matrix(r#"{"n":3,"r":2,"colors":[1,2,1]}"#).unwrap());
    assert_eq!(m["m"], 4);
    // Edges 01 02 03 12 13 23 get colors of 1 2 3 1 2 1.
    assert_eq!(m["colors"], serde_json::json!([1, 2, 1, 1, 2, 1]));
}
