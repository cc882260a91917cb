use ultralip_web::{free_norm, free_norm_report, validate, werner, werner_report};

const U4: &str = "space 4\n0 a b c\n0 1 1 1\n1 0 1/4 1\n1 1/4 0 1\n1 1 1 0\n";

#[test]
fn validate_space_text() {
    let out = validate(U4);
    assert!(out.contains("is_ultrametric  true"));
    assert!(out.contains("min_distance    1/4"));
    assert!(validate("space 2\nx").starts_with("error: "));
}

#[test]
fn free_norm_both_routes() {
    let out = free_norm_report(U4, "a:1, b:-1").unwrap();
    assert!(out.contains("lp      1/4\n"));
    assert!(out.contains("tree    1/4\n"));
    assert!(out.contains("certificate verified"));
    assert!(free_norm(U4, "z:1").starts_with("error: "));
    assert!(free_norm(U4, "a").starts_with("error: "));
}

#[test]
fn werner_reproduced() {
    let out = werner_report(4).unwrap();
    assert!(out.contains("‖F‖         1\n"));
    assert!(out.contains("‖F-QF‖      2\n"));
    assert!(out.contains("reproduced  true"));
    assert!(werner(0).starts_with("error: "));
}
