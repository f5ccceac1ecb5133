//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! The process exits nonzero when any criterion fails, except for failures
//! listed in `DOCUMENTED_FAILURES`, which are still printed as FAIL.

mod support;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use multistruct::batch::{inputs_from_specs, run_batch, BatchInput, BatchOptions, BatchSummary};
use multistruct::groebner::{normal_form, s_polynomial, GroebnerBasis};
use multistruct::linalg::{Matrix, Subspace};
use multistruct::poly::{Monomial, Polynomial};
use multistruct::problem::{parse_problem, ProblemFile};
use multistruct::report::{present_problem, run_analysis, StructureReport};
use multistruct::scalar::{Field, FieldSpec, PrimeField};
use multistruct::structure::Hypothesis;

const SEED: u64 = 1;
const CORPUS: &str = "ci:count=200+monomial:count=200+random:count=100";

/// Property ids whose falsification is recorded as a known counterexample.
/// The affected criterion still prints FAIL.
const DOCUMENTED_FAILURES: &[&str] = &["symmetric_pieces_coincide"];

struct Outcome {
    passed: bool,
    documented: bool,
    detail: String,
}

impl Outcome {
    fn of(passed: bool, detail: String) -> Self {
        Self {
            passed,
            documented: false,
            detail,
        }
    }
}

fn reports(s: &BatchSummary) -> impl Iterator<Item = (&str, &StructureReport)> {
    s.entries
        .iter()
        .filter_map(|e| e.report.as_ref().map(|r| (e.name.as_str(), r)))
}

fn theorem_equivalence(inputs: &[BatchInput], s: &BatchSummary, seconds: f64) -> Outcome {
    let mut shape_ok = true;
    for input in inputs {
        let p = input.problem.as_ref().expect("generated problems parse");
        shape_ok &= (1..=3).contains(&p.vars.len()) && p.field == FieldSpec::Prime(32003);
    }
    let dims_ok = reports(s).all(|(_, r)| r.dim_b <= 150);
    let agree = reports(s)
        .filter(|(_, r)| r.verdict.criterion_gorenstein == r.verdict.oracle_gorenstein)
        .count();
    let kinds = ["ci-", "monomial-", "random-"].map(|k| s.entries.iter().filter(|e| e.name.starts_with(k)).count());
    let passed = s.total >= 500 && kinds == [200, 200, 100] && shape_ok && dims_ok && agree == s.total && seconds < 60.0;
    Outcome::of(
        passed,
        format!(
            "{agree}/{} agree (ci {}, monomial {}, random {}), errors {}, {} gorenstein, {seconds:.1}s",
            s.total, kinds[0], kinds[1], kinds[2], s.errors, s.gorenstein
        ),
    )
}

fn golden() -> Outcome {
    let o = support::golden_oracle();
    let (ob, oa, om) = (
        support::graded(&o.powers),
        support::graded(&o.double_annihilator),
        support::graded(&o.annihilator),
    );
    let r = run_analysis(&parse_problem(support::GOLDEN).unwrap()).unwrap();
    let t = &r.structure_type;
    let passed = r.dim_b == 6
        && o.powers[0] == 6
        && r.m == 3
        && o.m == 3
        && t.dims_b == ob
        && t.dims_a == oa
        && t.dims_m == om
        && ob == [1, 2, 2, 1]
        && oa == [1, 2, 1, 2]
        && om == [1, 1, 2, 2]
        && r.filtrations_pairwise_distinct
        && !r.verdict.criterion_gorenstein
        && !r.verdict.cond_a.holds
        && r.verdict.socle_dim == 2
        && o.socle_dim == 2;
    Outcome::of(
        passed,
        format!(
            "dim {} m {} B {:?} A {:?} M {:?}, (a) {}, socle {} (oracle {})",
            r.dim_b,
            r.m,
            t.dims_b,
            t.dims_a,
            t.dims_m,
            if r.verdict.cond_a.holds { "holds" } else { "fails" },
            r.verdict.socle_dim,
            o.socle_dim
        ),
    )
}

fn complete_intersections(s: &BatchSummary) -> Outcome {
    let ci: Vec<_> = reports(s).filter(|(n, _)| n.starts_with("ci-")).collect();
    let good = ci
        .iter()
        .filter(|(_, r)| r.verdict.criterion_gorenstein && r.verdict.cond_c.pairings.iter().all(|p| p.bijective))
        .count();
    Outcome::of(good == 200 && ci.len() == 200, format!("{good}/{} gorenstein with bijective pairings", ci.len()))
}

fn property_battery(s: &BatchSummary) -> (Outcome, Vec<String>) {
    // id -> (applicable, falsified, first witness)
    let mut table: BTreeMap<String, (usize, usize, Option<String>)> = BTreeMap::new();
    for (name, r) in reports(s) {
        for p in &r.properties {
            let e = table.entry(p.id.clone()).or_default();
            if p.applicable {
                e.0 += 1;
            }
            if p.falsified() {
                e.1 += 1;
                if e.2.is_none() {
                    e.2 = Some(format!("{name}: {}", p.witness.clone().unwrap_or_default()));
                }
            }
        }
    }
    let failing: Vec<&String> = table.iter().filter(|(_, v)| v.1 > 0).map(|(k, _)| k).collect();
    let lines = table
        .iter()
        .map(|(id, (applicable, falsified, witness))| {
            let mut line = format!("    {id}: {falsified} falsified of {applicable} applicable");
            if let Some(w) = witness {
                line.push_str(&format!(" (first: {w})"));
            }
            line
        })
        .collect();
    let documented = !failing.is_empty() && failing.iter().all(|id| DOCUMENTED_FAILURES.contains(&id.as_str()));
    let outcome = Outcome {
        passed: failing.is_empty(),
        documented,
        detail: if failing.is_empty() {
            format!("{} properties, no falsifications", table.len())
        } else {
            format!("falsified: {}", failing.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(", "))
        },
    };
    (outcome, lines)
}

fn characteristic_robustness(inputs: &[BatchInput]) -> Outcome {
    // A coefficient other than ±1 can vanish or stop being a unit mod 2,
    // which changes the ideal itself, so such presentations are skipped.
    let integral = |p: &ProblemFile| {
        p.generators
            .iter()
            .all(|g| g.terms().iter().all(|(_, c)| c.is_integer() && c.numer().magnitude().is_one()))
    };
    let mut chosen = vec![parse_problem(support::GOLDEN).unwrap()];
    let mut skipped = 0;
    for prefix in ["monomial-", "ci-"] {
        let candidates: Vec<&ProblemFile> = inputs
            .iter()
            .filter(|i| i.name.starts_with(prefix))
            .map(|i| i.problem.as_ref().unwrap())
            .collect();
        let taken: Vec<usize> = (0..candidates.len()).filter(|&k| integral(candidates[k])).take(10).collect();
        skipped += taken.last().map_or(0, |&last| last + 1 - taken.len());
        chosen.extend(taken.into_iter().map(|k| candidates[k].clone()));
    }
    let mut mismatches = Vec::new();
    for (k, p) in chosen.iter().enumerate() {
        let data: Vec<_> = [FieldSpec::Prime(32003), FieldSpec::Prime(2), FieldSpec::Rationals]
            .into_iter()
            .map(|f| run_analysis(&p.with_field(f)).map(|r| r.dimension_data()))
            .collect();
        let same = data.iter().all(|d| d.is_ok()) && data.windows(2).all(|w| w[0] == w[1]);
        if !same {
            mismatches.push(format!("#{k} ({})", p.rendered_generators().join("; ")));
        }
    }
    Outcome::of(
        mismatches.is_empty() && chosen.len() == 21,
        format!(
            "{}/{} identical over F_32003, F_2, Q ({skipped} skipped for coefficients other than ±1){}",
            chosen.len() - mismatches.len(),
            chosen.len(),
            if mismatches.is_empty() { String::new() } else { format!("; differ: {}", mismatches.join(", ")) }
        ),
    )
}

fn random_poly(rng: &mut ChaCha8Rng, f: PrimeField, n: usize) -> Polynomial<PrimeField> {
    let terms = (0..rng.gen_range(0..6))
        .map(|_| {
            let m = Monomial::new((0..n).map(|_| rng.gen_range(0..5)).collect()).unwrap();
            (m, f.from_i64(rng.gen_range(-50..50)))
        })
        .collect();
    Polynomial::from_terms(f, n, terms)
}

fn engine_suites(inputs: &[BatchInput], s: &BatchSummary) -> Outcome {
    let f = PrimeField::new(32003).unwrap();
    let bases: Vec<GroebnerBasis<PrimeField>> = inputs
        .iter()
        .map(|i| present_problem(f, i.problem.as_ref().unwrap()).unwrap().groebner_basis().clone())
        .collect();

    let mut spairs = (0, 0);
    for gb in &bases {
        let g = gb.generators();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                spairs.0 += 1;
                if normal_form(&s_polynomial(&g[i], &g[j]).unwrap(), g).unwrap().is_zero() {
                    spairs.1 += 1;
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut nf_ok = 0;
    for k in 0..10_000 {
        let gb = &bases[k % bases.len()];
        let n = gb.nvars();
        let (p, q) = (random_poly(&mut rng, f, n), random_poly(&mut rng, f, n));
        let (a, b) = (f.from_i64(rng.gen_range(-9..9)), f.from_i64(rng.gen_range(-9..9)));
        let np = gb.normal_form(&p).unwrap();
        let nq = gb.normal_form(&q).unwrap();
        let idempotent = gb.normal_form(&np).unwrap() == np;
        let combo = p.scale(&a).add(&q.scale(&b)).unwrap();
        let linear = gb.normal_form(&combo).unwrap() == np.scale(&a).add(&nq.scale(&b)).unwrap();
        let in_ideal = gb.contains(&p.sub(&np).unwrap()).unwrap();
        if idempotent && linear && in_ideal {
            nf_ok += 1;
        }
    }

    let small = PrimeField::new(3).unwrap();
    let mut linalg_ok = 0;
    for _ in 0..10_000 {
        let ambient = rng.gen_range(1..=7);
        let (cu, cw) = (rng.gen_range(0..=ambient + 1), rng.gen_range(0..=ambient + 1));
        let mut random_rows = |count: usize| -> Vec<Vec<u64>> {
            (0..count)
                .map(|_| (0..ambient).map(|_| rng.gen_range(0..3)).collect())
                .collect()
        };
        let (ru, rw) = (random_rows(cu), random_rows(cw));
        let u = Subspace::from_spanning(small, ambient, ru.clone());
        let w = Subspace::from_spanning(small, ambient, rw);
        let grassmann = u.sum(&w).unwrap().dim() + u.intersect(&w).unwrap().dim() == u.dim() + w.dim();
        // Another spanning set of U, obtained by an invertible row mix.
        let mixed = mix_rows(&ru, small);
        let (r1, _) = Matrix::from_rows(small, ambient, ru).rref();
        let (r2, _) = Matrix::from_rows(small, ambient, mixed).rref();
        if grassmann && r1 == r2 {
            linalg_ok += 1;
        }
    }

    let closure_ok = reports(s)
        .filter(|(_, r)| r.properties.iter().any(|p| p.id == "double_annihilator_closure" && p.holds))
        .count();
    let analyzed = reports(s).count();

    let passed = spairs.0 == spairs.1 && nf_ok == 10_000 && linalg_ok == 10_000 && closure_ok == analyzed;
    Outcome::of(
        passed,
        format!(
            "s-pairs {}/{} reduce to 0, normal form {nf_ok}/10000, rref+grassmann {linalg_ok}/10000, closure {closure_ok}/{analyzed}",
            spairs.1, spairs.0
        ),
    )
}

/// Replaces each row by itself plus a multiple of the next row, going from
/// the last row up, which is an invertible transformation.
fn mix_rows(rows: &[Vec<u64>], f: PrimeField) -> Vec<Vec<u64>> {
    let mut out = rows.to_vec();
    for i in (0..out.len().saturating_sub(1)).rev() {
        let next = out[i + 1].clone();
        for (a, b) in out[i].iter_mut().zip(next) {
            *a = f.add(a, &f.mul(&2, &b));
        }
    }
    out.reverse();
    out
}

fn determinism(inputs: &[BatchInput], first: &BatchSummary) -> Outcome {
    let again = inputs_from_specs(CORPUS, SEED).unwrap();
    let same_inputs = again.len() == inputs.len()
        && again
            .iter()
            .zip(inputs)
            .all(|(a, b)| a.name == b.name && a.problem == b.problem);
    let second = run_batch(
        &again,
        &BatchOptions {
            jobs: 2,
            keep_going: true,
            ..Default::default()
        },
    )
    .unwrap();
    let (a, b) = (first.to_json(), second.to_json());
    Outcome::of(
        same_inputs && a == b,
        format!("corpus regenerated identically: {same_inputs}, {} bytes of JSON, identical: {}", a.len(), a == b),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let inputs = inputs_from_specs(CORPUS, SEED).expect("corpus generation");
    let summary = run_batch(
        &inputs,
        &BatchOptions {
            keep_going: true,
            ..Default::default()
        },
    )
    .expect("batch");
    let seconds = start.elapsed().as_secs_f64();

    let (battery, battery_lines) = property_battery(&summary);
    let results = [
        ("1 theorem equivalence on 500 algebras", theorem_equivalence(&inputs, &summary, seconds)),
        ("2 golden example against exhaustive oracle", golden()),
        ("3 complete intersections are gorenstein", complete_intersections(&summary)),
        ("4 property battery under hypotheses", battery),
        ("5 characteristic robustness", characteristic_robustness(&inputs)),
        ("6 engine suites", engine_suites(&inputs, &summary)),
        ("7 batch determinism", determinism(&inputs, &summary)),
    ];

    let mut undocumented = 0;
    for (name, o) in &results {
        let status = if o.passed { "PASS" } else { "FAIL" };
        let note = if !o.passed && o.documented { " [documented counterexample]" } else { "" };
        println!("{status} criterion {name}: {}{note}", o.detail);
        if name.starts_with('4') {
            for l in &battery_lines {
                println!("{l}");
            }
        }
        if !o.passed && !o.documented {
            undocumented += 1;
        }
    }
    let hyp: BTreeMap<&str, Hypothesis> = reports(&summary)
        .flat_map(|(_, r)| r.properties.iter().map(|p| (p.id.as_str(), p.hypothesis)))
        .collect();
    let conditional: Vec<&str> = hyp.iter().filter(|(_, h)| **h != Hypothesis::None).map(|(k, _)| *k).collect();
    println!("conditional properties: {}", conditional.join(", "));

    if undocumented == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
