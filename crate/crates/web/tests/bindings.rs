use chase_web::{dual_document, list_paths, run_document};

const SQUARE: &str = "quiver S { vertices: 4  arrows: a 0 1, b 1 3, c 0 2, d 2 3 }\nquery commerge S\n";

#[test]
fn run_reports_verdict_and_exit() {
    assert_eq!(run_document(SQUARE, true), "INVALID p=[a,b] q=[c,d]\nexit 1");
    assert_eq!(run_document(SQUARE, false), "INVALID p=[0,2] q=[1,3]\nexit 1");
}

#[test]
fn parse_errors_come_back_as_text() {
    let out = run_document("quiver Q { vertices: -1 }", false);
    assert!(out.starts_with("line 1, column 22: out of range"), "{out}");
    assert!(out.ends_with("exit 3"));
}

#[test]
fn eval_has_no_files() {
    let out = run_document("query eval f in terminal", false);
    assert!(out.contains("not available in the browser"));
}

#[test]
fn paths_of_square_and_loop() {
    let out = list_paths(SQUARE, "S");
    assert!(out.starts_with("S: 10 paths\n"), "{out}");
    assert!(out.contains("  0->3 [a,b]\n"));
    let looped = list_paths("quiver L { vertices: 1  arrows: l 0 0 }", "");
    assert_eq!(looped, "L: 2 paths up to length 1\n  0->0 []\n  0->0 [l]\n");
    assert!(list_paths(SQUARE, "Nope").starts_with("no quiver"));
}

#[test]
fn dual_twice_is_identity() {
    let once = dual_document(SQUARE);
    assert!(once.starts_with("quiver S { vertices: 4  arrows: a 1 0"));
    let printed = chase_core::dsl::parse(SQUARE).unwrap().to_string();
    assert_eq!(dual_document(&once), printed);
}
