//! The three canonical filtrations of a local Artinian algebra `B` with
//! maximal ideal `I`, their graded objects, and the duality criterion for
//! the Gorenstein property.
//!
//! Conventions, with `m` the largest exponent such that `I^m ≠ 0`:
//!
//! * powers: `I^ℓ`. Over a one-point support the maximal ideal is the only
//!   associated prime, so the symbolic powers `I^(ℓ)` coincide with `I^ℓ`.
//! * annihilator chain: `I_ℓ = 0 : I^(m+1-ℓ)`.
//! * double annihilator chain: `J_ℓ = 0 : (0 : I^ℓ)`.
//!
//! All chains run over `ℓ = 0..=m+1`, from `B` down to `0`. Graded pieces are
//! `B_ℓ = I^ℓ/I^(ℓ+1)`, `A_ℓ = J_ℓ/J_(ℓ+1)` and `M_ℓ = I_ℓ/I_(ℓ+1)`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::AlgebraPresentation;
use crate::ideal::{locality_check, socle, Ideal};
use crate::linalg::{induced_map_rank, InducedMap, Matrix, Subspace};
use crate::scalar::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ChainKind {
    Powers,
    Annihilator,
    DoubleAnnihilator,
}

#[derive(Clone, Debug)]
pub struct IdealChain<F: Field> {
    pub kind: ChainKind,
    pub members: Vec<Ideal<F>>,
}

impl<F: Field> IdealChain<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.members.iter().map(Ideal::dim).collect()
    }

    pub fn graded_dims(&self) -> Vec<usize> {
        self.members.windows(2).map(|w| w[0].dim() - w[1].dim()).collect()
    }

    fn check_endpoints(&self) -> Result<()> {
        let first = self.members.first().is_some_and(Ideal::is_unit);
        let last = self.members.last().is_some_and(Ideal::is_zero);
        if first && last {
            Ok(())
        } else {
            Err(Error::InternalInvariantViolation(format!(
                "{:?} chain does not run from B to 0",
                self.kind
            )))
        }
    }
}

#[derive(Clone, Debug)]
pub struct Filtrations<F: Field> {
    pub m: usize,
    pub powers: IdealChain<F>,
    pub annihilator: IdealChain<F>,
    pub double_annihilator: IdealChain<F>,
}

impl<F: Field> Filtrations<F> {
    pub fn chains(&self) -> [&IdealChain<F>; 3] {
        [&self.powers, &self.annihilator, &self.double_annihilator]
    }
}

/// Builds `I^ℓ`, `I_ℓ` and `J_ℓ` for `ℓ = 0..=m+1`.
pub fn build_filtrations<F: Field>(alg: &Arc<AlgebraPresentation<F>>, m: usize) -> Result<Filtrations<F>> {
    let maximal = Ideal::maximal(alg);
    let mut powers = Vec::with_capacity(m + 2);
    powers.push(Ideal::unit(alg));
    for l in 1..=m + 1 {
        let next = powers[l - 1].product(&maximal)?;
        powers.push(next);
    }
    // annihilator[ℓ] = 0 : I^(m+1-ℓ)
    let annihilator = (0..=m + 1)
        .map(|l| powers[m + 1 - l].annihilator())
        .collect::<Result<Vec<_>>>()?;
    // double[ℓ] = 0 : (0 : I^ℓ) = 0 : annihilator[m+1-ℓ]
    let double = (0..=m + 1)
        .map(|l| annihilator[m + 1 - l].annihilator())
        .collect::<Result<Vec<_>>>()?;
    let f = Filtrations {
        m,
        powers: IdealChain {
            kind: ChainKind::Powers,
            members: powers,
        },
        annihilator: IdealChain {
            kind: ChainKind::Annihilator,
            members: annihilator,
        },
        double_annihilator: IdealChain {
            kind: ChainKind::DoubleAnnihilator,
            members: double,
        },
    };
    for c in f.chains() {
        c.check_endpoints()?;
    }
    Ok(f)
}

/// A subquotient `numerator / denominator` of consecutive chain members.
#[derive(Clone, Debug)]
pub struct GradedPiece<F: Field> {
    pub index: usize,
    pub numerator: Ideal<F>,
    pub denominator: Ideal<F>,
    pub dim: usize,
    /// Vectors of the numerator completing a basis of the denominator.
    pub reps: Vec<Vec<F::Elem>>,
}

pub fn graded_pieces<F: Field>(chain: &IdealChain<F>) -> Result<Vec<GradedPiece<F>>> {
    chain
        .members
        .windows(2)
        .enumerate()
        .map(|(index, w)| {
            let (num, den) = (&w[0], &w[1]);
            if !num.contains(den)? {
                return Err(Error::InternalInvariantViolation(format!(
                    "{:?} chain is not decreasing at {index}",
                    chain.kind
                )));
            }
            let reps = num.space().complement_reps(den.space());
            let dim = num.dim() - den.dim();
            debug_assert_eq!(reps.len(), dim);
            Ok(GradedPiece {
                index,
                numerator: num.clone(),
                denominator: den.clone(),
                dim,
                reps,
            })
        })
        .collect()
}

/// Graded dimensions of `B(Y)`, `A(Y)` and `M(Y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureType {
    pub dims_b: Vec<usize>,
    pub dims_a: Vec<usize>,
    pub dims_m: Vec<usize>,
}

impl StructureType {
    pub fn from_filtrations<F: Field>(f: &Filtrations<F>, dim_b: usize) -> Result<Self> {
        let t = StructureType {
            dims_b: f.powers.graded_dims(),
            dims_a: f.double_annihilator.graded_dims(),
            dims_m: f.annihilator.graded_dims(),
        };
        for (name, v) in [("B", &t.dims_b), ("A", &t.dims_a), ("M", &t.dims_m)] {
            let total: usize = v.iter().sum();
            if total != dim_b {
                return Err(Error::InternalInvariantViolation(format!(
                    "graded pieces of {name}(Y) sum to {total}, expected {dim_b}"
                )));
            }
            if v.first() != Some(&1) {
                return Err(Error::InternalInvariantViolation(format!(
                    "degree-0 piece of {name}(Y) is not the residue field"
                )));
            }
        }
        Ok(t)
    }

    /// Every graded piece of `A` and `M` is one-dimensional.
    pub fn is_quasiprimitive(&self) -> bool {
        self.dims_a.iter().chain(&self.dims_m).all(|&d| d == 1)
    }

    pub fn pairwise_distinct(&self) -> bool {
        self.dims_b != self.dims_a && self.dims_a != self.dims_m && self.dims_b != self.dims_m
    }
}

/// Ranks of the canonical maps `B_ℓ -> A_ℓ -> M_ℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CanonicalMorphisms {
    pub index: usize,
    pub b_to_a: InducedMap,
    pub a_to_m: InducedMap,
}

pub fn canonical_morphisms<F: Field>(f: &Filtrations<F>) -> Result<Vec<CanonicalMorphisms>> {
    let alg = f.powers.members[0].algebra();
    let id = Matrix::identity(alg.field(), alg.dim());
    (0..=f.m)
        .map(|l| {
            let (p, j, i) = (&f.powers.members, &f.double_annihilator.members, &f.annihilator.members);
            let b_to_a = induced_map_rank(&id, p[l].space(), p[l + 1].space(), j[l].space(), j[l + 1].space())?;
            let a_to_m = induced_map_rank(&id, j[l].space(), j[l + 1].space(), i[l].space(), i[l + 1].space())?;
            Ok(CanonicalMorphisms {
                index: l,
                b_to_a,
                a_to_m,
            })
        })
        .collect()
}

/// The multiplication pairing `A_ℓ -> Hom(M_(m-ℓ), M_m)`.
#[derive(Clone, Debug)]
pub struct Pairing<F: Field> {
    pub index: usize,
    /// Row `i` lists the `M_m`-coordinates of `a_i * x_j` for each
    /// representative `x_j` of `M_(m-ℓ)` in turn.
    pub matrix: Matrix<F>,
    pub map: InducedMap,
}

pub fn pairing_map<F: Field>(l: usize, f: &Filtrations<F>, m_pieces: &[GradedPiece<F>]) -> Result<Pairing<F>> {
    let m = f.m;
    let alg = f.powers.members[0].algebra().clone();
    let field = alg.field();
    let n = alg.dim();
    let (j, i) = (&f.double_annihilator.members, &f.annihilator.members);
    let top = &i[m];
    if top.is_zero() {
        return Err(Error::DegenerateTarget);
    }
    // Representative independence on the M side: J_ℓ * I_(m+1-ℓ) ⊆ I_(m+1) = 0.
    if !j[l].product(&i[m + 1 - l])?.is_zero() {
        return Err(Error::NotWellDefined(format!(
            "J_{l} does not annihilate I_{}",
            m + 1 - l
        )));
    }
    let xs = &m_pieces[m - l].reps;
    let k = xs.len();
    let columns: Vec<Vec<F::Elem>> = (0..n)
        .map(|c| {
            let e = alg.basis_vector(c);
            xs.iter().flat_map(|x| alg.mul(&e, x)).collect()
        })
        .collect();
    let stacked = Matrix::from_columns(field, n * k, &columns);
    let map = induced_map_rank(
        &stacked,
        j[l].space(),
        j[l + 1].space(),
        &top.space().power(k),
        &Subspace::zero(field, n * k),
    )?;

    let a_reps = j[l].space().complement_reps(j[l + 1].space());
    let rows: Vec<Vec<F::Elem>> = a_reps
        .iter()
        .map(|a| {
            xs.iter()
                .flat_map(|x| top.space().coordinates(&alg.mul(a, x)))
                .collect()
        })
        .collect();
    let matrix = Matrix::from_rows(field, k * top.dim(), rows);
    debug_assert_eq!(matrix.rank(), map.rank);
    Ok(Pairing { index: l, matrix, map })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionA {
    pub holds: bool,
    pub dim_a_top: usize,
    pub dim_m_top: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingRank {
    pub index: usize,
    pub rank: usize,
    pub dim_source: usize,
    pub dim_target: usize,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionC {
    pub holds: bool,
    pub pairings: Vec<PairingRank>,
}

/// Outcome of the duality criterion next to the socle oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremVerdict {
    pub cond_a: ConditionA,
    pub cond_b: bool,
    pub cond_c: ConditionC,
    pub criterion_gorenstein: bool,
    pub socle_dim: usize,
    pub oracle_gorenstein: bool,
    pub agrees: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    None,
    Gorenstein,
    Quasiprimitive,
}

/// One entry of the property battery. A check whose hypothesis holds but
/// whose conclusion fails is a falsification event.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub id: String,
    pub hypothesis: Hypothesis,
    pub applicable: bool,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl PropertyCheck {
    pub fn falsified(&self) -> bool {
        self.applicable && !self.holds
    }
}

/// Everything computed for one algebra.
#[derive(Clone, Debug)]
pub struct StructureAnalysis<F: Field> {
    pub algebra: Arc<AlgebraPresentation<F>>,
    pub filtrations: Filtrations<F>,
    pub b_pieces: Vec<GradedPiece<F>>,
    pub a_pieces: Vec<GradedPiece<F>>,
    pub m_pieces: Vec<GradedPiece<F>>,
    pub structure_type: StructureType,
    pub morphisms: Vec<CanonicalMorphisms>,
    pub pairings: Vec<Pairing<F>>,
    pub socle: Ideal<F>,
    pub verdict: TheoremVerdict,
    pub properties: Vec<PropertyCheck>,
}

impl<F: Field> StructureAnalysis<F> {
    pub fn m(&self) -> usize {
        self.filtrations.m
    }

    pub fn falsifications(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .properties
            .iter()
            .filter(|p| p.falsified())
            .map(|p| match &p.witness {
                Some(w) => format!("{}: {w}", p.id),
                None => p.id.clone(),
            })
            .collect();
        if !self.verdict.agrees {
            out.push(format!(
                "theorem: criterion says {}, socle dimension is {}",
                self.verdict.criterion_gorenstein, self.verdict.socle_dim
            ));
        }
        out
    }
}

/// Runs the full pipeline on a presented algebra.
pub fn analyze_structure<F: Field>(alg: Arc<AlgebraPresentation<F>>) -> Result<StructureAnalysis<F>> {
    let m = locality_check(&alg)?;
    let filtrations = build_filtrations(&alg, m)?;
    let b_pieces = graded_pieces(&filtrations.powers)?;
    let a_pieces = graded_pieces(&filtrations.double_annihilator)?;
    let m_pieces = graded_pieces(&filtrations.annihilator)?;
    let structure_type = StructureType::from_filtrations(&filtrations, alg.dim())?;
    let morphisms = canonical_morphisms(&filtrations)?;
    let pairings = (0..=m)
        .map(|l| pairing_map(l, &filtrations, &m_pieces))
        .collect::<Result<Vec<_>>>()?;
    let socle = socle(&alg)?;

    let (i, j) = (&filtrations.annihilator.members, &filtrations.double_annihilator.members);
    let cond_a = ConditionA {
        holds: a_pieces[m].dim == 1 && m_pieces[m].dim == 1,
        dim_a_top: a_pieces[m].dim,
        dim_m_top: m_pieces[m].dim,
    };
    let cond_b = j[m] == i[m];
    let ranks: Vec<PairingRank> = pairings
        .iter()
        .map(|p| PairingRank {
            index: p.index,
            rank: p.map.rank,
            dim_source: p.map.domain_dim,
            dim_target: p.map.codomain_dim,
            bijective: p.map.bijective(),
        })
        .collect();
    let cond_c = ConditionC {
        holds: ranks.iter().all(|r| r.bijective),
        pairings: ranks,
    };
    let criterion = cond_a.holds && cond_b && cond_c.holds;
    let oracle = socle.dim() == 1;
    let verdict = TheoremVerdict {
        cond_a,
        cond_b,
        cond_c,
        criterion_gorenstein: criterion,
        socle_dim: socle.dim(),
        oracle_gorenstein: oracle,
        agrees: criterion == oracle,
    };

    let mut analysis = StructureAnalysis {
        algebra: alg,
        filtrations,
        b_pieces,
        a_pieces,
        m_pieces,
        structure_type,
        morphisms,
        pairings,
        socle,
        verdict,
        properties: Vec::new(),
    };
    analysis.properties = property_battery(&analysis)?;
    Ok(analysis)
}

/// Evaluates the duality criterion on a presented algebra.
pub fn theorem_check<F: Field>(alg: Arc<AlgebraPresentation<F>>) -> Result<TheoremVerdict> {
    Ok(analyze_structure(alg)?.verdict)
}

struct Battery {
    checks: Vec<PropertyCheck>,
}

impl Battery {
    fn push(&mut self, id: &str, hypothesis: Hypothesis, applicable: bool, failures: Vec<String>) {
        let holds = failures.is_empty();
        self.checks.push(PropertyCheck {
            id: id.to_string(),
            hypothesis,
            applicable,
            holds,
            witness: failures.into_iter().next(),
        });
    }
}

/// Evaluates the structural properties of the filtrations. Failures are
/// returned as data, never as errors.
pub fn property_battery<F: Field>(a: &StructureAnalysis<F>) -> Result<Vec<PropertyCheck>> {
    let m = a.m();
    let n = a.algebra.dim();
    let f = &a.filtrations;
    let (p, i, j) = (
        &f.powers.members,
        &f.annihilator.members,
        &f.double_annihilator.members,
    );
    let gorenstein = a.verdict.oracle_gorenstein;
    let t = &a.structure_type;
    let mut battery = Battery { checks: Vec::new() };

    // Ideal-level inclusions I^ℓ ⊆ J_ℓ ⊆ I_ℓ.
    let mut fails = Vec::new();
    for l in 0..=m + 1 {
        if !j[l].contains(&p[l])? || !i[l].contains(&j[l])? {
            fails.push(format!(
                "l={l}: dims I^l={}, J_l={}, I_l={}",
                p[l].dim(),
                j[l].dim(),
                i[l].dim()
            ));
        }
    }
    battery.push("inclusions", Hypothesis::None, true, fails);

    let mut fails = Vec::new();
    for chain in f.chains() {
        for (l, w) in chain.members.windows(2).enumerate() {
            if w[0].dim() <= w[1].dim() {
                fails.push(format!("{:?} chain stalls at l={l}", chain.kind));
            }
        }
    }
    battery.push("chains_strictly_decrease", Hypothesis::None, true, fails);

    // A(Y) is a graded algebra and M(Y) a graded A(Y)-module.
    let mut fails = Vec::new();
    for l1 in 0..=m + 1 {
        for l2 in 0..=m + 1 - l1 {
            if !j[l1 + l2].contains(&j[l1].product(&j[l2])?)? {
                fails.push(format!("J_{l1} * J_{l2} not in J_{}", l1 + l2));
            }
            if !i[l1 + l2].contains(&j[l1].product(&i[l2])?)? {
                fails.push(format!("J_{l1} * I_{l2} not in I_{}", l1 + l2));
            }
        }
    }
    battery.push("graded_multiplication", Hypothesis::None, true, fails);

    // Multiplications A_l1 x A_l2 -> A_(l1+l2) and A_l1 x M_l2 -> M_(l1+l2)
    // are never zero for l1 + l2 <= m.
    let alg = &a.algebra;
    let mut fails = Vec::new();
    for l1 in 0..=m {
        for l2 in 0..=m - l1 {
            let s = l1 + l2;
            let nonzero_aa = a.a_pieces[l1]
                .reps
                .iter()
                .any(|x| a.a_pieces[l2].reps.iter().any(|y| !j[s + 1].contains_element(&alg.mul(x, y))));
            if !nonzero_aa {
                fails.push(format!("A_{l1} x A_{l2} -> A_{s} is zero"));
            }
            let nonzero_am = a.a_pieces[l1]
                .reps
                .iter()
                .any(|x| a.m_pieces[l2].reps.iter().any(|y| !i[s + 1].contains_element(&alg.mul(x, y))));
            if !nonzero_am {
                fails.push(format!("A_{l1} x M_{l2} -> M_{s} is zero"));
            }
        }
    }
    battery.push("nonzero_multiplication", Hypothesis::None, true, fails);

    // 0 -> M_ℓ -> O_(X_(ℓ+1)) -> O_(X_ℓ) -> 0 and the same for A_ℓ.
    let mut fails = Vec::new();
    for l in 0..=m {
        if n - i[l + 1].dim() != (n - i[l].dim()) + t.dims_m[l] {
            fails.push(format!("M_{l} breaks length additivity"));
        }
        if n - j[l + 1].dim() != (n - j[l].dim()) + t.dims_a[l] {
            fails.push(format!("A_{l} breaks length additivity"));
        }
    }
    battery.push("exact_sequences", Hypothesis::None, true, fails);

    // Linkage 0 : I_ℓ = J_(m+1-ℓ) and 0 : J_ℓ = I_(m+1-ℓ).
    let mut fails = Vec::new();
    for l in 0..=m + 1 {
        if i[l].annihilator()? != j[m + 1 - l] {
            fails.push(format!("0 : I_{l} differs from J_{}", m + 1 - l));
        }
        if j[l].annihilator()? != i[m + 1 - l] {
            fails.push(format!("0 : J_{l} differs from I_{}", m + 1 - l));
        }
    }
    battery.push("linkage", Hypothesis::None, true, fails);

    // 0 : (0 : (0 : a)) = 0 : a and a ⊆ 0 : (0 : a) on every filtration ideal.
    let mut fails = Vec::new();
    for chain in f.chains() {
        for (l, ideal) in chain.members.iter().enumerate() {
            let once = ideal.annihilator()?;
            let twice = once.annihilator()?;
            if !twice.contains(ideal)? || twice.annihilator()? != once {
                fails.push(format!("{:?} member {l}", chain.kind));
            }
        }
    }
    battery.push("double_annihilator_closure", Hypothesis::None, true, fails);

    // Gorenstein consequences.
    let mut fails = Vec::new();
    for l in 0..=m + 1 {
        if (n - i[m + 1 - l].dim()) + (n - j[l].dim()) != n {
            fails.push(format!("length(B/I_{}) + length(B/J_{l}) != {n}", m + 1 - l));
        }
    }
    battery.push("linkage_length", Hypothesis::Gorenstein, gorenstein, fails);

    let mut fails = Vec::new();
    for chain in f.chains() {
        for (l, ideal) in chain.members.iter().enumerate() {
            let ann = ideal.annihilator()?;
            if ideal.dim() + ann.dim() != n {
                fails.push(format!(
                    "{:?} member {l}: {} + {} != {n}",
                    chain.kind,
                    ideal.dim(),
                    ann.dim()
                ));
            }
        }
    }
    battery.push("annihilator_duality", Hypothesis::Gorenstein, gorenstein, fails);

    let fails = (0..=m)
        .filter(|&l| t.dims_a[l] != t.dims_m[m - l])
        .map(|l| format!("dim A_{l} = {} but dim M_{} = {}", t.dims_a[l], m - l, t.dims_m[m - l]))
        .collect();
    battery.push("rank_duality", Hypothesis::Gorenstein, gorenstein, fails);

    let fails = (0..=m)
        .filter(|&l| a.morphisms[l].a_to_m.bijective() != (t.dims_a[l] == t.dims_a[m - l]))
        .map(|l| {
            format!(
                "A_{l} -> M_{l} bijective = {}, dim A_{l} = {}, dim A_{} = {}",
                a.morphisms[l].a_to_m.bijective(),
                t.dims_a[l],
                m - l,
                t.dims_a[m - l]
            )
        })
        .collect();
    battery.push("symmetric_pieces_coincide", Hypothesis::Gorenstein, gorenstein, fails);

    // Quasiprimitive structures: the three filtrations coincide.
    let quasi = t.is_quasiprimitive();
    let fails = (0..=m + 1)
        .filter(|&l| p[l] != j[l] || j[l] != i[l])
        .map(|l| format!("chains differ at l={l}"))
        .collect();
    battery.push("quasiprimitive_chains_equal", Hypothesis::Quasiprimitive, quasi, fails);

    Ok(battery.checks)
}
