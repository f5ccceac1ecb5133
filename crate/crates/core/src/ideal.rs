//! Ideals of a finite-dimensional algebra `B`, stored as subspaces of its
//! coordinate space: products, colon ideals, socle, and lifts back to the
//! ambient polynomial ring.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::AlgebraPresentation;
use crate::linalg::{Matrix, Subspace};
use crate::poly::Polynomial;
use crate::scalar::Field;

/// A subspace of `B` closed under multiplication by every variable.
#[derive(Clone, Debug)]
pub struct Ideal<F: Field> {
    alg: Arc<AlgebraPresentation<F>>,
    space: Subspace<F>,
}

impl<F: Field> PartialEq for Ideal<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg) && self.space == other.space
    }
}

impl<F: Field> Eq for Ideal<F> {}

impl<F: Field> Ideal<F> {
    /// Wraps a subspace, checking closure under the variables.
    pub fn new(alg: Arc<AlgebraPresentation<F>>, space: Subspace<F>) -> Result<Self> {
        if space.ambient_dim() != alg.dim() {
            return Err(Error::AmbientMismatch(space.ambient_dim(), alg.dim()));
        }
        for v in space.basis() {
            for k in 0..alg.nvars() {
                if !space.contains_vector(&alg.mul_var(k, v)) {
                    return Err(Error::InternalInvariantViolation(
                        "subspace is not closed under multiplication".into(),
                    ));
                }
            }
        }
        Ok(Self { alg, space })
    }

    pub fn zero(alg: &Arc<AlgebraPresentation<F>>) -> Self {
        Self {
            space: Subspace::zero(alg.field(), alg.dim()),
            alg: alg.clone(),
        }
    }

    pub fn unit(alg: &Arc<AlgebraPresentation<F>>) -> Self {
        Self {
            space: Subspace::full(alg.field(), alg.dim()),
            alg: alg.clone(),
        }
    }

    /// Smallest ideal containing `gens`, by saturation under the variables.
    pub fn generated(alg: &Arc<AlgebraPresentation<F>>, gens: impl IntoIterator<Item = Vec<F::Elem>>) -> Self {
        let mut space = Subspace::zero(alg.field(), alg.dim());
        let mut pending: Vec<Vec<F::Elem>> = gens.into_iter().collect();
        while let Some(v) = pending.pop() {
            if space.insert(v.clone()) {
                for k in 0..alg.nvars() {
                    pending.push(alg.mul_var(k, &v));
                }
            }
        }
        Self {
            alg: alg.clone(),
            space,
        }
    }

    /// The ideal generated by the variables.
    pub fn maximal(alg: &Arc<AlgebraPresentation<F>>) -> Self {
        Self::generated(alg, (0..alg.nvars()).map(|k| alg.variable(k)))
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation<F>> {
        &self.alg
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.dim() == self.alg.dim()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        self.space.contains(&other.space)
    }

    pub fn contains_element(&self, v: &[F::Elem]) -> bool {
        self.space.contains_vector(v)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            alg: self.alg.clone(),
            space: self.space.sum(&other.space)?,
        })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            alg: self.alg.clone(),
            space: self.space.intersect(&other.space)?,
        })
    }

    /// `m * self`, the span of variable multiples.
    pub fn times_maximal(&self) -> Subspace<F> {
        let alg = &self.alg;
        Subspace::from_spanning(
            alg.field(),
            alg.dim(),
            self.space
                .basis()
                .iter()
                .flat_map(|v| (0..alg.nvars()).map(move |k| alg.mul_var(k, v))),
        )
    }

    /// A generating set. In a local algebra these are minimal generators
    /// (a basis of `self / m*self`); otherwise the full basis is returned.
    pub fn generators(&self) -> Vec<Vec<F::Elem>> {
        if self.alg.is_local() {
            self.space.complement_reps(&self.times_maximal())
        } else {
            self.space.basis().to_vec()
        }
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let ga = self.generators();
        let gb = other.generators();
        let prods: Vec<Vec<F::Elem>> = ga
            .iter()
            .flat_map(|a| gb.iter().map(move |b| self.alg.mul(a, b)))
            .collect();
        Ok(Self::generated(&self.alg, prods))
    }

    pub fn power(&self, e: usize) -> Result<Self> {
        let mut acc = Self::unit(&self.alg);
        for _ in 0..e {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `self : other = { f : f * other ⊆ self }`.
    pub fn colon(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let alg = &self.alg;
        let f = alg.field();
        let mut kernel = Subspace::full(f, alg.dim());
        for g in other.generators() {
            let images: Vec<Vec<F::Elem>> = kernel
                .basis()
                .iter()
                .map(|k| self.space.reduce(&alg.mul(&g, k)))
                .collect();
            let relations = Matrix::from_columns(f, alg.dim(), &images).kernel();
            let next = relations.basis().iter().map(|c| {
                let mut v = alg.zero();
                for (ct, kt) in c.iter().zip(kernel.basis()) {
                    if f.is_zero(ct) {
                        continue;
                    }
                    for (vi, ki) in v.iter_mut().zip(kt) {
                        *vi = f.add(vi, &f.mul(ct, ki));
                    }
                }
                v
            });
            kernel = Subspace::from_spanning(f, alg.dim(), next.collect::<Vec<_>>());
            if kernel.dim() == self.dim() {
                break;
            }
        }
        Ideal::new(alg.clone(), kernel)
    }

    /// The annihilator `0 : self`.
    pub fn annihilator(&self) -> Result<Self> {
        Ideal::zero(&self.alg).colon(self)
    }

    /// Polynomials whose images generate this ideal, in standard monomials;
    /// redundant generators are discarded.
    pub fn lift_generators(&self) -> Vec<Polynomial<F>> {
        let mut gens = self.generators();
        let mut i = 0;
        while i < gens.len() {
            let others = gens
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone());
            if Ideal::generated(&self.alg, others).contains_element(&gens[i]) {
                gens.remove(i);
            } else {
                i += 1;
            }
        }
        gens.iter().map(|g| self.alg.lift(g)).collect()
    }
}

/// The socle `0 : m`; one-dimensional exactly for Gorenstein local algebras.
pub fn socle<F: Field>(alg: &Arc<AlgebraPresentation<F>>) -> Result<Ideal<F>> {
    ensure_local(alg)?;
    Ideal::maximal(alg).annihilator()
}

fn ensure_local<F: Field>(alg: &AlgebraPresentation<F>) -> Result<()> {
    if alg.is_zero_ring() {
        return Err(Error::ZeroRing);
    }
    if let Some(v) = alg.non_nilpotent_variable() {
        return Err(Error::NotLocal { variable: v.to_string() });
    }
    Ok(())
}

/// Verifies locality and returns the largest `m` with `m^ℓ ≠ 0`, computed by
/// repeated ideal products.
pub fn locality_check<F: Field>(alg: &Arc<AlgebraPresentation<F>>) -> Result<usize> {
    ensure_local(alg)?;
    let maximal = Ideal::maximal(alg);
    let mut power = maximal.clone();
    let mut m = 0;
    while !power.is_zero() {
        m += 1;
        power = power.product(&maximal)?;
        if m > alg.dim() {
            return Err(Error::InternalInvariantViolation("powers of m never vanish".into()));
        }
    }
    Ok(m)
}
