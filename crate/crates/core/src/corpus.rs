//! Seeded generation of local Artinian test algebras.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial, VarSet};
use crate::problem::ProblemFile;
use crate::report::present_problem_dims;
use crate::scalar::{FieldSpec, Rationals};

/// Consecutive rejected candidates before generation gives up.
pub const MAX_CONSECUTIVE_FAILURES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusKind {
    /// `f_i = x_i^(d_i) + ...` with the tail in the later variables, a
    /// regular sequence supported at the origin.
    Ci,
    /// Pure powers of every variable plus random mixed monomials.
    Monomial,
    /// Monomials plus random binomials, filtered for locality.
    Random,
}

impl CorpusKind {
    pub fn name(self) -> &'static str {
        match self {
            CorpusKind::Ci => "ci",
            CorpusKind::Monomial => "monomial",
            CorpusKind::Random => "random",
        }
    }
}

impl fmt::Display for CorpusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorpusKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ci" | "complete-intersection" | "completeintersection" => Ok(CorpusKind::Ci),
            "monomial" => Ok(CorpusKind::Monomial),
            "random" => Ok(CorpusKind::Random),
            _ => Err(spec_error(format!("unknown corpus kind `{s}`"))),
        }
    }
}

fn spec_error(message: String) -> Error {
    Error::Parse {
        line: 1,
        column: 1,
        message,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: CorpusKind,
    pub min_vars: usize,
    pub max_vars: usize,
    pub min_degree: u32,
    pub max_degree: u32,
    pub count: usize,
    pub seed: u64,
    pub max_dim: usize,
    pub field: FieldSpec,
}

impl GenSpec {
    pub fn new(kind: CorpusKind, count: usize, seed: u64) -> Self {
        let (min_degree, max_degree) = match kind {
            CorpusKind::Ci => (2, 4),
            CorpusKind::Monomial => (2, 5),
            CorpusKind::Random => (2, 4),
        };
        Self {
            kind,
            min_vars: 1,
            max_vars: 3,
            min_degree,
            max_degree,
            count,
            seed,
            max_dim: 150,
            field: FieldSpec::default(),
        }
    }

    pub fn with_vars(mut self, min: usize, max: usize) -> Self {
        self.min_vars = min;
        self.max_vars = max;
        self
    }

    pub fn with_degrees(mut self, min: u32, max: u32) -> Self {
        self.min_degree = min;
        self.max_degree = max;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.min_vars == 0 || self.min_vars > self.max_vars {
            return Err(spec_error("variable range must satisfy 1 <= min <= max".into()));
        }
        if self.min_degree == 0 || self.min_degree > self.max_degree {
            return Err(spec_error("degree range must satisfy 1 <= min <= max".into()));
        }
        if self.count == 0 {
            return Err(spec_error("count must be at least 1".into()));
        }
        Ok(())
    }
}

/// `kind:count=C,seed=S,vars=A-B,deg=A-B,maxdim=D,field=F`; every key is
/// optional and the seed defaults to 0.
impl FromStr for GenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GenSpec::parse_with_seed(s, 0)
    }
}

impl GenSpec {
    /// Parses the text form, using `default_seed` when no `seed=` key is given.
    pub fn parse_with_seed(s: &str, default_seed: u64) -> Result<Self> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut spec = GenSpec::new(kind.trim().parse()?, 1, default_seed);
        for item in rest.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| spec_error(format!("expected key=value, found `{item}`")))?;
            let bad = || spec_error(format!("invalid value for `{key}`: `{value}`"));
            let range = |v: &str| -> Result<(u64, u64)> {
                let (a, b) = v.split_once('-').unwrap_or((v, v));
                Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
            };
            match key {
                "count" => spec.count = value.parse().map_err(|_| bad())?,
                "seed" => spec.seed = value.parse().map_err(|_| bad())?,
                "maxdim" => spec.max_dim = value.parse().map_err(|_| bad())?,
                "field" => spec.field = value.parse()?,
                "vars" => {
                    let (a, b) = range(value)?;
                    (spec.min_vars, spec.max_vars) = (a as usize, b as usize);
                }
                "deg" => {
                    let (a, b) = range(value)?;
                    let a = u32::try_from(a).map_err(|_| bad())?;
                    let b = u32::try_from(b).map_err(|_| bad())?;
                    (spec.min_degree, spec.max_degree) = (a, b);
                }
                _ => return Err(spec_error(format!("unknown key `{key}`"))),
            }
        }
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:count={},seed={},vars={}-{},deg={}-{},maxdim={},field={}",
            self.kind,
            self.count,
            self.seed,
            self.min_vars,
            self.max_vars,
            self.min_degree,
            self.max_degree,
            self.max_dim,
            self.field
        )
    }
}

fn coefficient(rng: &mut ChaCha8Rng) -> BigRational {
    let c: i64 = *[-3, -2, -1, 1, 1, 2, 3].choose(rng).expect("nonempty");
    BigRational::from_integer(c.into())
}

fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, degree: u32, allowed: &[usize]) -> Monomial {
    let mut exps = vec![0u32; nvars];
    for _ in 0..degree {
        exps[*allowed.choose(rng).expect("nonempty")] += 1;
    }
    Monomial::new(exps).expect("small exponents")
}

fn ci_candidate(rng: &mut ChaCha8Rng, spec: &GenSpec, n: usize) -> Vec<Polynomial<Rationals>> {
    (0..n)
        .map(|i| {
            let d = rng.gen_range(spec.min_degree..=spec.max_degree);
            let mut terms = vec![(Monomial::var(n, i, d), BigRational::from_integer(1.into()))];
            if i + 1 < n {
                let own_and_later: Vec<usize> = (i..n).collect();
                for _ in 0..rng.gen_range(0..=2) {
                    let deg = rng.gen_range(1..=d);
                    let mut m = random_monomial(rng, n, deg, &own_and_later);
                    if m.exponents()[i + 1..].iter().all(|&e| e == 0) {
                        // keep the tail inside the ideal of the later variables
                        let j = rng.gen_range(i + 1..n);
                        let mut e = m.exponents().to_vec();
                        e[i] -= 1;
                        e[j] += 1;
                        m = Monomial::new(e).expect("small exponents");
                    }
                    if m != terms[0].0 {
                        terms.push((m, coefficient(rng)));
                    }
                }
            }
            Polynomial::from_terms(Rationals, n, terms)
        })
        .collect()
}

fn pure_powers(rng: &mut ChaCha8Rng, spec: &GenSpec, n: usize) -> (Vec<u32>, Vec<Polynomial<Rationals>>) {
    let a: Vec<u32> = (0..n)
        .map(|_| rng.gen_range(spec.min_degree..=spec.max_degree))
        .collect();
    let gens = (0..n)
        .map(|i| Polynomial::term(Rationals, Monomial::var(n, i, a[i]), BigRational::from_integer(1.into())))
        .collect();
    (a, gens)
}

fn mixed_monomials(rng: &mut ChaCha8Rng, a: &[u32], count: usize) -> Vec<Monomial> {
    let n = a.len();
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for _ in 0..count {
        let exps: Vec<u32> = a.iter().map(|&ai| rng.gen_range(0..ai)).collect();
        let support = exps.iter().filter(|&&e| e > 0).count();
        if support >= 2 {
            out.push(Monomial::new(exps).expect("small exponents"));
        }
    }
    out
}

fn monomial_candidate(rng: &mut ChaCha8Rng, spec: &GenSpec, n: usize) -> Vec<Polynomial<Rationals>> {
    let (a, mut gens) = pure_powers(rng, spec, n);
    let extra = rng.gen_range(0..=3);
    for m in mixed_monomials(rng, &a, extra) {
        gens.push(Polynomial::term(Rationals, m, BigRational::from_integer(1.into())));
    }
    gens
}

fn random_candidate(rng: &mut ChaCha8Rng, spec: &GenSpec, n: usize) -> Vec<Polynomial<Rationals>> {
    let (a, powers) = pure_powers(rng, spec, n);
    let mut gens: Vec<_> = powers.into_iter().filter(|_| rng.gen_bool(0.7)).collect();
    let all: Vec<usize> = (0..n).collect();
    for _ in 0..rng.gen_range(1..=3) {
        let d1 = rng.gen_range(1..=spec.max_degree);
        let m1 = random_monomial(rng, n, d1, &all);
        // an occasional constant term exercises the locality filter
        let m2 = if rng.gen_bool(0.1) {
            Monomial::one(n)
        } else {
            let d2 = rng.gen_range(1..=spec.max_degree);
            random_monomial(rng, n, d2, &all)
        };
        if m1 == m2 {
            continue;
        }
        gens.push(Polynomial::from_terms(
            Rationals,
            n,
            vec![(m1, coefficient(rng)), (m2, coefficient(rng))],
        ));
    }
    let extra = rng.gen_range(0..=1);
    for m in mixed_monomials(rng, &a, extra) {
        gens.push(Polynomial::term(Rationals, m, BigRational::from_integer(1.into())));
    }
    gens
}

/// Checks that a candidate presents a nonzero local algebra of bounded
/// dimension over the spec's field.
fn acceptable(p: &ProblemFile, max_dim: usize) -> bool {
    match present_problem_dims(p) {
        Ok((dim, local)) => local && dim >= 1 && dim <= max_dim,
        Err(_) => false,
    }
}

/// Generates `spec.count` problems, deterministically from `spec.seed`.
pub fn generate_corpus(spec: &GenSpec) -> Result<Vec<ProblemFile>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    let mut failures = 0;
    while out.len() < spec.count {
        let n = rng.gen_range(spec.min_vars..=spec.max_vars);
        let gens = match spec.kind {
            CorpusKind::Ci => ci_candidate(&mut rng, spec, n),
            CorpusKind::Monomial => monomial_candidate(&mut rng, spec, n),
            CorpusKind::Random => random_candidate(&mut rng, spec, n),
        };
        let candidate = ProblemFile::new(spec.field, VarSet::standard(n), gens);
        if acceptable(&candidate, spec.max_dim) {
            out.push(candidate);
            failures = 0;
        } else {
            failures += 1;
            if failures >= MAX_CONSECUTIVE_FAILURES {
                return Err(Error::GenerationExhausted(failures));
            }
        }
    }
    Ok(out)
}

/// File name for the `index`-th member of a corpus.
pub fn corpus_file_name(kind: CorpusKind, index: usize) -> String {
    format!("{kind}-{index:04}.problem")
}
