use drsl::normalize::normalize_kb;
use drsl::oracle::{generate_random_kb, GeneratorProfile};
use drsl::semantics::build_rc_structure;
use drsl::standpoint::Reasoner;
use drsl::syntax::{parse_kb, print_kb};

const SEED_ZERO: &str = include_str!("data/seed0.drsl");
const TOMATO: &str = include_str!("../../../kbs/tomato.drsl");

#[test]
fn seed_zero_is_stable() {
    let kb = generate_random_kb(0, &GeneratorProfile::default());
    assert_eq!(print_kb(&kb), SEED_ZERO);
}

#[test]
fn bundled_tomato_file_answers_as_expected() {
    let kb = parse_kb(TOMATO).unwrap();
    let r = Reasoner::new(normalize_kb(&kb));
    let ask = |q: &str| r.ask(&r.parse_query(q).unwrap()).unwrap().verdict;
    assert!(ask("tomato ~> vegetable"));
    assert!(!ask("[L] (tomato -> !fruit)"));
    assert!(ask("[C] (tomato ~> vegetable)"));
    assert!(ask("<C> (tomato ~> savoury)"));
    assert!(ask("L <= C"));
    assert!(!ask("C <= L"));
    let rc = build_rc_structure(&normalize_kb(&kb)).unwrap();
    assert_eq!(rc.structure.pi, ["pi_B", "pi_C", "pi_L"]);
    assert!(rc.structure.check_model(&kb).unwrap());
}

#[test]
fn diamond_adds_a_precisification() {
    let kb = parse_kb(&format!("{TOMATO}<L> (sweet & tomato)\n")).unwrap();
    let rc = build_rc_structure(&normalize_kb(&kb)).unwrap();
    assert_eq!(rc.structure.pi, ["pi_B", "pi_C", "pi_L", "pi_L^1"]);
    assert!(rc.structure.check_model(&kb).unwrap());
    // With tomato strictly true, `tomato ~> savoury` and the legal rule leave no
    // finite valuation in the new precisification.
    assert_eq!(rc.structure.invalid_precisifications(), ["pi_L^1"]);
    assert_eq!(rc.diagnostics.len(), 1);
}
