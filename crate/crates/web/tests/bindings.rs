use freefactor_web::{antipodality, core_graph, injectivity_radius, membership};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn core_graph_of_a_conjugate_pair() {
    let v = parse(core_graph(2, "a,baB", true));
    assert_eq!(v["rank"], 2);
    assert_eq!(v["vertices"], 2);
    assert_eq!(v["edges"].as_array().unwrap().len(), 3);
    assert_eq!(v["base"], 0);
    let v = parse(core_graph(2, "baB", false));
    assert_eq!(v["vertices"], 1);
    assert!(v["base"].is_null());
}

#[test]
fn membership_and_errors() {
    assert_eq!(parse(membership(2, "a,bb", "bbaBB"))["member"], true);
    assert_eq!(parse(membership(2, "a,bb", "b"))["member"], false);
    let v = parse(membership(2, "a", "c"));
    assert!(v["error"].as_str().unwrap().contains("exceeds rank"));
    assert!(parse(core_graph(2, "aA", true))["error"].is_string());
}

#[test]
fn antipodal_pairs() {
    assert_eq!(
        parse(antipodality(3, "a,b", "cac", "af"))["antipodal"],
        false
    );
    assert_eq!(
        parse(antipodality(3, "a,b", "bca", "af"))["antipodal"],
        true
    );
    assert_eq!(
        parse(antipodality(3, "a,b", "Abca", "of"))["antipodal"],
        true
    );
    assert!(parse(antipodality(3, "a,b", "c", "xx"))["error"].is_string());
}

#[test]
fn girth_growth() {
    let v = parse(injectivity_radius(3, "a", 6));
    let g: Vec<u64> = v["girths"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect();
    assert_eq!(g, vec![1, 1, 1, 3, 5, 9, 17]);
    assert!(parse(injectivity_radius(3, "a", 50))["error"].is_string());
}
