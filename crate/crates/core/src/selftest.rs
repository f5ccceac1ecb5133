//! A quick built-in invariant suite, run by `multistruct selftest`.

use crate::batch::{inputs_from_specs, run_batch, BatchOptions};
use crate::groebner::{normal_form, s_polynomial};
use crate::problem::parse_problem;
use crate::report::{present_problem, run_analysis};
use crate::scalar::PrimeField;
use crate::structure::Hypothesis;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, run: impl FnOnce() -> Result<String, String>) -> SelfCheck {
    match run() {
        Ok(detail) => SelfCheck {
            name,
            passed: true,
            detail,
        },
        Err(detail) => SelfCheck {
            name,
            passed: false,
            detail,
        },
    }
}

pub fn run_selftest(seed: u64) -> Vec<SelfCheck> {
    let mut out = Vec::new();

    out.push(check("golden example", || {
        let p = parse_problem("field 32003\nvars x, y\nideal x^3; x*y; y^4").map_err(|e| e.to_string())?;
        let r = run_analysis(&p).map_err(|e| e.to_string())?;
        let t = &r.structure_type;
        let ok = r.dim_b == 6
            && r.m == 3
            && t.dims_b == [1, 2, 2, 1]
            && t.dims_a == [1, 2, 1, 2]
            && t.dims_m == [1, 1, 2, 2]
            && !r.verdict.cond_a.holds
            && r.verdict.socle_dim == 2
            && r.verdict.agrees;
        let detail = format!("dim {} m {} type {:?} {:?} {:?}", r.dim_b, r.m, t.dims_b, t.dims_a, t.dims_m);
        if ok {
            Ok(detail)
        } else {
            Err(detail)
        }
    }));

    let specs = format!("ci:count=20,seed={seed}+monomial:count=20,seed={seed}+random:count=20,seed={seed}");
    let inputs = inputs_from_specs(&specs, seed);

    let summary = inputs.as_ref().map_err(|e| e.to_string()).and_then(|inputs| {
        let opts = BatchOptions {
            keep_going: true,
            ..Default::default()
        };
        run_batch(inputs, &opts).map_err(|e| e.to_string())
    });

    out.push(check("criterion agrees with socle", || {
        let s = summary.as_ref().map_err(Clone::clone)?;
        let detail = format!("{} of {} agree, {} errors", s.agrees, s.total, s.errors);
        if s.agrees == s.total {
            Ok(detail)
        } else {
            Err(detail)
        }
    }));

    out.push(check("complete intersections are gorenstein", || {
        let s = summary.as_ref().map_err(Clone::clone)?;
        let ci: Vec<_> = s.entries.iter().filter(|e| e.name.starts_with("ci-")).collect();
        let good = ci
            .iter()
            .filter(|e| {
                e.report
                    .as_ref()
                    .is_some_and(|r| r.verdict.criterion_gorenstein && r.verdict.cond_c.holds)
            })
            .count();
        let detail = format!("{good} of {}", ci.len());
        if good == ci.len() {
            Ok(detail)
        } else {
            Err(detail)
        }
    }));

    for (name, conditional) in [("property battery, general", false), ("property battery, conditional", true)] {
        out.push(check(name, || {
            let s = summary.as_ref().map_err(Clone::clone)?;
            let mut failing: Vec<String> = Vec::new();
            let mut instances = 0;
            for e in &s.entries {
                let Some(r) = &e.report else { continue };
                let ids: Vec<&str> = r
                    .properties
                    .iter()
                    .filter(|p| p.falsified() && (p.hypothesis != Hypothesis::None) == conditional)
                    .map(|p| p.id.as_str())
                    .collect();
                if !ids.is_empty() {
                    instances += 1;
                }
                for id in ids {
                    if !failing.iter().any(|f| f == id) {
                        failing.push(id.to_string());
                    }
                }
            }
            if failing.is_empty() {
                Ok("no falsifications".into())
            } else {
                Err(format!("{instances} of {} instances falsify {}", s.analyzed, failing.join(", ")))
            }
        }));
    }

    out.push(check("s-polynomials reduce to zero", || {
        let inputs = inputs.as_ref().map_err(|e| e.to_string())?;
        let field = PrimeField::new(32003).map_err(|e| e.to_string())?;
        let mut pairs = 0;
        for input in inputs {
            let p = input.problem.as_ref().map_err(|e| e.to_string())?;
            let alg = present_problem(field, p).map_err(|e| e.to_string())?;
            let g = alg.groebner_basis().generators();
            for i in 0..g.len() {
                for j in i + 1..g.len() {
                    let s = s_polynomial(&g[i], &g[j]).map_err(|e| e.to_string())?;
                    if !normal_form(&s, g).map_err(|e| e.to_string())?.is_zero() {
                        return Err(format!("{}: pair ({i}, {j}) does not reduce", input.name));
                    }
                    pairs += 1;
                }
            }
        }
        Ok(format!("{pairs} pairs"))
    }));

    out
}
