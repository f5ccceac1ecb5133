//! End-to-end analysis of a problem file and the versioned report schema.

use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, present_algebra, AlgebraPresentation};
use crate::ideal::Ideal;
use crate::linalg::InducedMap;
use crate::problem::{Mode, ProblemFile};
use crate::scalar::{Field, FieldSpec, PrimeField, Rationals};
use crate::structure::{analyze_structure, PropertyCheck, StructureAnalysis, StructureType, TheoremVerdict};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub field: String,
    pub vars: Vec<String>,
    pub generators: Vec<String>,
    pub mode: Mode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDims {
    pub powers: Vec<usize>,
    pub annihilator: Vec<usize>,
    pub double_annihilator: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSummary {
    pub rank: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl From<InducedMap> for MapSummary {
    fn from(m: InducedMap) -> Self {
        Self {
            rank: m.rank,
            domain_dim: m.domain_dim,
            codomain_dim: m.codomain_dim,
            injective: m.injective,
            surjective: m.surjective,
        }
    }
}

impl MapSummary {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSummary {
    pub index: usize,
    pub b_to_a: MapSummary,
    pub a_to_m: MapSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingSummary {
    pub index: usize,
    pub map: MapSummary,
    /// Rows indexed by a basis of `A_ℓ`, entries rendered in the field.
    pub matrix: Vec<Vec<String>>,
}

/// Minimal generators of each filtration ideal, lifted to the polynomial
/// ring. Each lifted set together with the input generators generates the
/// corresponding ideal of the ambient ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedLifts {
    pub powers: Vec<Vec<String>>,
    pub annihilator: Vec<Vec<String>>,
    pub double_annihilator: Vec<Vec<String>>,
    pub socle: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub schema_version: u32,
    pub input: InputEcho,
    pub dim_b: usize,
    pub m: usize,
    /// `m = 0`: the algebra is the residue field.
    pub trivial_multiplicity: bool,
    /// Over a one-point support the symbolic powers of the maximal ideal are
    /// its ordinary powers, so the first filtration is computed as `I^ℓ`.
    pub symbolic_powers_are_powers: bool,
    pub groebner_basis: Vec<String>,
    pub standard_monomials: Vec<String>,
    pub chain_dims: ChainDims,
    pub structure_type: StructureType,
    pub filtrations_pairwise_distinct: bool,
    pub quasiprimitive: bool,
    pub morphisms: Vec<MorphismSummary>,
    pub pairings: Vec<PairingSummary>,
    pub verdict: TheoremVerdict,
    pub properties: Vec<PropertyCheck>,
    pub falsifications: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedded: Option<EmbeddedLifts>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl StructureReport {
    pub fn has_falsification(&self) -> bool {
        !self.falsifications.is_empty()
    }

    pub fn without_timing(mut self) -> Self {
        self.timing_ms = None;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The dimension data that must not depend on the coefficient field.
    pub fn dimension_data(&self) -> DimensionData {
        DimensionData {
            dim_b: self.dim_b,
            m: self.m,
            chain_dims: self.chain_dims.clone(),
            structure_type: self.structure_type.clone(),
            morphism_ranks: self
                .morphisms
                .iter()
                .map(|m| (m.b_to_a.rank, m.a_to_m.rank))
                .collect(),
            pairing_ranks: self.pairings.iter().map(|p| p.map.rank).collect(),
            socle_dim: self.verdict.socle_dim,
            criterion_gorenstein: self.verdict.criterion_gorenstein,
        }
    }

    /// Human-readable summary.
    pub fn render_text(&self, with_properties: bool) -> String {
        let mut s = String::new();
        let v = &self.verdict;
        let _ = writeln!(s, "field       {}", self.input.field);
        let _ = writeln!(s, "vars        {}", self.input.vars.join(", "));
        let _ = writeln!(s, "ideal       {}", self.input.generators.join("; "));
        let _ = writeln!(s, "groebner    {}", self.groebner_basis.join("; "));
        let _ = writeln!(s, "dim B       {}", self.dim_b);
        let _ = writeln!(s, "m           {}{}", self.m, if self.trivial_multiplicity { " (multiplicity 1)" } else { "" });
        let _ = writeln!(s, "I^l         {:?}", self.chain_dims.powers);
        let _ = writeln!(s, "I_l         {:?}", self.chain_dims.annihilator);
        let _ = writeln!(s, "J_l         {:?}", self.chain_dims.double_annihilator);
        let _ = writeln!(s, "type B      {:?}", self.structure_type.dims_b);
        let _ = writeln!(s, "type A      {:?}", self.structure_type.dims_a);
        let _ = writeln!(s, "type M      {:?}", self.structure_type.dims_m);
        for m in &self.morphisms {
            let _ = writeln!(
                s,
                "l={:<3} B->A rank {}/{}->{}   A->M rank {}/{}->{}",
                m.index,
                m.b_to_a.rank,
                m.b_to_a.domain_dim,
                m.b_to_a.codomain_dim,
                m.a_to_m.rank,
                m.a_to_m.domain_dim,
                m.a_to_m.codomain_dim
            );
        }
        for p in &v.cond_c.pairings {
            let _ = writeln!(
                s,
                "pairing l={:<3} rank {} ({} -> {}){}",
                p.index,
                p.rank,
                p.dim_source,
                p.dim_target,
                if p.bijective { " bijective" } else { "" }
            );
        }
        let _ = writeln!(
            s,
            "(a) {}  dim A_m = {}, dim M_m = {}",
            mark(v.cond_a.holds),
            v.cond_a.dim_a_top,
            v.cond_a.dim_m_top
        );
        let _ = writeln!(s, "(b) {}  J_m = I_m", mark(v.cond_b));
        let _ = writeln!(s, "(c) {}  all pairings bijective", mark(v.cond_c.holds));
        let _ = writeln!(s, "criterion   {}", gorenstein_word(v.criterion_gorenstein));
        let _ = writeln!(s, "socle dim   {} ({})", v.socle_dim, gorenstein_word(v.oracle_gorenstein));
        let _ = writeln!(s, "agrees      {}", v.agrees);
        if with_properties {
            for p in &self.properties {
                let status = match (p.applicable, p.holds) {
                    (false, _) => "n/a ",
                    (true, true) => "ok  ",
                    (true, false) => "FAIL",
                };
                let _ = write!(s, "property    {status} {}", p.id);
                if let Some(w) = &p.witness {
                    let _ = write!(s, " [{w}]");
                }
                s.push('\n');
            }
        }
        if let Some(e) = &self.embedded {
            for (name, chain) in [("I^l", &e.powers), ("I_l", &e.annihilator), ("J_l", &e.double_annihilator)] {
                for (l, gens) in chain.iter().enumerate() {
                    let _ = writeln!(s, "lift {name} l={l}: {}", render_gens(gens));
                }
            }
            let _ = writeln!(s, "lift socle: {}", render_gens(&e.socle));
        }
        for f in &self.falsifications {
            let _ = writeln!(s, "FALSIFIED   {f}");
        }
        s
    }
}

fn render_gens(gens: &[String]) -> String {
    if gens.is_empty() {
        "(0)".into()
    } else {
        format!("({})", gens.join(", "))
    }
}

fn mark(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn gorenstein_word(b: bool) -> &'static str {
    if b {
        "Gorenstein"
    } else {
        "not Gorenstein"
    }
}

/// Field-independent part of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionData {
    pub dim_b: usize,
    pub m: usize,
    pub chain_dims: ChainDims,
    pub structure_type: StructureType,
    pub morphism_ranks: Vec<(usize, usize)>,
    pub pairing_ranks: Vec<usize>,
    pub socle_dim: usize,
    pub criterion_gorenstein: bool,
}

/// Computes a Gröbner basis and presents `k[x]/J` over `field`.
pub fn present_problem<F: Field>(field: F, p: &ProblemFile) -> Result<Arc<AlgebraPresentation<F>>> {
    let gens = p
        .generators
        .iter()
        .map(|g| g.map_field(field))
        .collect::<Result<Vec<_>>>()?;
    let gb = buchberger(field, p.vars.len(), &gens)?;
    Ok(Arc::new(present_algebra(&gb, &p.vars)?))
}

/// Dimension and locality of the presented algebra over the problem's field.
pub fn present_problem_dims(p: &ProblemFile) -> Result<(usize, bool)> {
    fn go<F: Field>(field: F, p: &ProblemFile) -> Result<(usize, bool)> {
        let alg = present_problem(field, p)?;
        Ok((alg.dim(), alg.is_local()))
    }
    match p.field {
        FieldSpec::Prime(q) => go(PrimeField::new(q)?, p),
        FieldSpec::Rationals => go(Rationals, p),
    }
}

/// Runs the whole pipeline on a problem over its declared field. Math-domain
/// failures are returned as [`Error::Rejected`] carrying the generators.
pub fn run_analysis(p: &ProblemFile) -> Result<StructureReport> {
    let start = Instant::now();
    let result = match p.field {
        FieldSpec::Prime(q) => PrimeField::new(q).and_then(|f| analyze_in(f, p)),
        FieldSpec::Rationals => analyze_in(Rationals, p),
    };
    let mut report = result.map_err(|e| Error::Rejected {
        generators: p.rendered_generators().join("; "),
        source: Box::new(e),
    })?;
    report.timing_ms = Some((start.elapsed().as_secs_f64() * 1e6).round() / 1e3);
    Ok(report)
}

/// Runs the pipeline over a specific field and returns the raw analysis.
pub fn analyze_problem<F: Field>(field: F, p: &ProblemFile) -> Result<StructureAnalysis<F>> {
    let alg = present_problem(field, p)?;
    if alg.is_zero_ring() {
        return Err(Error::ZeroRing);
    }
    analyze_structure(alg)
}

fn lift_all<F: Field>(ideals: &[Ideal<F>], alg: &AlgebraPresentation<F>) -> Vec<Vec<String>> {
    ideals
        .iter()
        .map(|i| i.lift_generators().iter().map(|g| g.render(alg.vars())).collect())
        .collect()
}

fn analyze_in<F: Field>(field: F, p: &ProblemFile) -> Result<StructureReport> {
    let a = analyze_problem(field, p)?;
    let alg = &a.algebra;
    let vars = alg.vars();
    let f = &a.filtrations;

    let pairings = a
        .pairings
        .iter()
        .map(|pr| PairingSummary {
            index: pr.index,
            map: pr.map.into(),
            matrix: pr
                .matrix
                .row_vecs()
                .iter()
                .map(|row| row.iter().map(|c| field.render(c)).collect())
                .collect(),
        })
        .collect();

    let embedded = (p.mode == Mode::Embedded).then(|| EmbeddedLifts {
        powers: lift_all(&f.powers.members, alg),
        annihilator: lift_all(&f.annihilator.members, alg),
        double_annihilator: lift_all(&f.double_annihilator.members, alg),
        socle: lift_all(std::slice::from_ref(&a.socle), alg).remove(0),
    });

    Ok(StructureReport {
        schema_version: SCHEMA_VERSION,
        input: InputEcho {
            field: p.field.to_string(),
            vars: p.vars.names().to_vec(),
            generators: p.rendered_generators(),
            mode: p.mode,
        },
        dim_b: alg.dim(),
        m: a.m(),
        trivial_multiplicity: a.m() == 0,
        symbolic_powers_are_powers: true,
        groebner_basis: alg.groebner_basis().generators().iter().map(|g| g.render(vars)).collect(),
        standard_monomials: alg.standard_monomials().iter().map(|m| m.render(vars)).collect(),
        chain_dims: ChainDims {
            powers: f.powers.dims(),
            annihilator: f.annihilator.dims(),
            double_annihilator: f.double_annihilator.dims(),
        },
        structure_type: a.structure_type.clone(),
        filtrations_pairwise_distinct: a.structure_type.pairwise_distinct(),
        quasiprimitive: a.structure_type.is_quasiprimitive(),
        morphisms: a
            .morphisms
            .iter()
            .map(|m| MorphismSummary {
                index: m.index,
                b_to_a: m.b_to_a.into(),
                a_to_m: m.a_to_m.into(),
            })
            .collect(),
        pairings,
        verdict: a.verdict.clone(),
        properties: a.properties.clone(),
        falsifications: a.falsifications(),
        embedded,
        timing_ms: None,
    })
}
