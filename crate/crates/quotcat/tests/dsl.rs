use quotcat::build::build_world;
use quotcat::dsl::{parse_scenario, print_scenario};
use quotcat::fixtures::{fixture, FIXTURES};
use quotcat::CliError;

#[test]
fn fixtures_round_trip() {
    for (name, text) in FIXTURES {
        let s = parse_scenario(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = print_scenario(&s);
        assert_eq!(parse_scenario(&printed).unwrap(), s, "{name}");
        assert_eq!(print_scenario(&parse_scenario(&printed).unwrap()), printed, "{name}");
    }
}

#[test]
fn fixtures_build() {
    for (name, _) in FIXTURES {
        let w = build_world(&fixture(name).unwrap()).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(!w.universe.is_empty(), "{name}");
        assert!(w.subcat.is_some(), "{name}");
    }
}

#[test]
fn n3_closure_is_deduplicated() {
    let w = build_world(&fixture("n3-closure").unwrap()).unwrap();
    assert_eq!(w.universe_names(), ["S1", "S2", "S3"]);
}

fn parse_err(text: &str) -> CliError {
    parse_scenario(text).expect_err("should not parse")
}

#[test]
fn unknown_module_reports_position() {
    let e = parse_err("field p=2\nquiver vertices=1\nmodule S = simple 1\nsubcat M = [S, T]\n");
    match e {
        CliError::UnknownName { line, name, .. } => {
            assert_eq!(line, 4);
            assert_eq!(name, "T");
        }
        other => panic!("{other}"),
    }
}

#[test]
fn bad_vertex_is_rejected() {
    let e = parse_err("field p=2\nquiver vertices=2\narrow a: 1 -> 3\n");
    assert!(matches!(e, CliError::Parse { line: 3, .. }), "{e}");
}

#[test]
fn cycle_without_bound_is_rejected() {
    let s = parse_scenario("field p=2\nquiver vertices=1\narrow x: 1 -> 1\n").unwrap();
    assert!(matches!(build_world(&s), Err(CliError::Scenario(_))));
}

#[test]
fn wrong_matrix_shape_is_rejected() {
    let s = parse_scenario("field p=2\nquiver vertices=2\narrow a: 1 -> 2\nmodule X = matrices [1, 1] { a = [[1, 0]] }\n").unwrap();
    let e = build_world(&s).unwrap_err();
    assert!(e.to_string().contains("1x1"), "{e}");
}

#[test]
fn non_module_matrices_are_rejected() {
    let s = parse_scenario(
        "field p=2\nquiver vertices=2\narrow a: 1 -> 2\narrow b: 2 -> 1\nbound 2\nmodule X = matrices [1, 1] { a = [[1]]; b = [[1]] }\n",
    )
    .unwrap();
    assert!(build_world(&s).is_err());
}
