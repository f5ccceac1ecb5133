mod support;

use multistruct::problem::parse_problem;
use multistruct::report::run_analysis;
use multistruct::scalar::FieldSpec;
use support::{graded, oracle, GOLDEN};

fn monomial_problem(vars: &str, gens: &str, field: &str) -> String {
    format!("field {field}\nvars {vars}\nideal {gens}\n")
}

#[test]
fn oracle_reproduces_golden_numbers() {
    let o = support::golden_oracle();
    assert_eq!(o.m, 3);
    assert_eq!(o.powers, [6, 5, 3, 1, 0]);
    assert_eq!(o.annihilator, [6, 5, 4, 2, 0]);
    assert_eq!(o.double_annihilator, [6, 5, 3, 2, 0]);
    assert_eq!(o.socle_dim, 2);
}

#[test]
fn engine_matches_oracle_on_monomial_algebras() {
    let cases: &[(&str, &str, usize, &[Vec<u32>])] = &[
        ("x, y", "x^3; x*y; y^4", 2, &[vec![3, 0], vec![1, 1], vec![0, 4]]),
        ("x, y", "x^2; y^2", 2, &[vec![2, 0], vec![0, 2]]),
        ("x, y", "x^2; x*y; y^2", 2, &[vec![2, 0], vec![1, 1], vec![0, 2]]),
        ("x", "x^5", 1, &[vec![5]]),
        ("x, y", "x^4; x^2*y; y^3", 2, &[vec![4, 0], vec![2, 1], vec![0, 3]]),
        ("x, y, z", "x^2; y^2; z^2; x*y*z", 3, &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2], vec![1, 1, 1]]),
        ("x, y, z", "x^2; y^2; z^3; x*z; y*z^2", 3, &[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 3], vec![1, 0, 1], vec![0, 1, 2]]),
    ];
    for (vars, gens, n, mono) in cases {
        let o = oracle(*n, mono);
        for field in ["32003", "2", "Q"] {
            let p = parse_problem(&monomial_problem(vars, gens, field)).unwrap();
            let r = run_analysis(&p).unwrap();
            assert_eq!(r.m, o.m, "{gens} over {field}");
            assert_eq!(r.chain_dims.powers, o.powers, "{gens} over {field}");
            assert_eq!(r.chain_dims.annihilator, o.annihilator, "{gens} over {field}");
            assert_eq!(r.chain_dims.double_annihilator, o.double_annihilator, "{gens} over {field}");
            assert_eq!(r.structure_type.dims_b, graded(&o.powers));
            assert_eq!(r.structure_type.dims_a, graded(&o.double_annihilator));
            assert_eq!(r.structure_type.dims_m, graded(&o.annihilator));
            assert_eq!(r.verdict.socle_dim, o.socle_dim);
            assert_eq!(r.verdict.criterion_gorenstein, o.socle_dim == 1, "{gens} over {field}");
        }
    }
}

#[test]
fn golden_example() {
    let r = run_analysis(&parse_problem(GOLDEN).unwrap()).unwrap();
    assert_eq!((r.dim_b, r.m), (6, 3));
    assert_eq!(r.structure_type.dims_b, [1, 2, 2, 1]);
    assert_eq!(r.structure_type.dims_a, [1, 2, 1, 2]);
    assert_eq!(r.structure_type.dims_m, [1, 1, 2, 2]);
    assert!(r.filtrations_pairwise_distinct);
    assert!(!r.verdict.cond_a.holds);
    assert_eq!(r.verdict.socle_dim, 2);
    assert!(!r.verdict.criterion_gorenstein && r.verdict.agrees);
}

#[test]
fn golden_report_file() {
    let r = run_analysis(&parse_problem(GOLDEN).unwrap()).unwrap().without_timing();
    let expected = include_str!("data/golden_report.json");
    assert_eq!(r.to_json() + "\n", expected);
}

#[test]
fn field_override_keeps_dimension_data() {
    let p = parse_problem(GOLDEN).unwrap();
    let base = run_analysis(&p).unwrap().dimension_data();
    for f in [FieldSpec::Prime(2), FieldSpec::Rationals, FieldSpec::Prime(3)] {
        assert_eq!(run_analysis(&p.with_field(f)).unwrap().dimension_data(), base);
    }
}
