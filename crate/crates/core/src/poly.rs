//! Sparse multivariate polynomials under degree-reverse-lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Ordered, duplicate-free variable names. The first name is the largest
/// variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarSet {
    names: Vec<String>,
}

impl VarSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Parse {
                line: 0,
                column: 0,
                message: "at least one variable is required".into(),
            });
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("duplicate variable `{n}`"),
                });
            }
        }
        Ok(Self { names })
    }

    /// `x1, ..., xn`, or `x, y, z` for up to three variables.
    pub fn standard(n: usize) -> Self {
        let names = if n <= 3 {
            ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=n).map(|i| format!("x{i}")).collect()
        };
        Self { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector with cached total degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self {
            exps: vec![0; nvars],
            degree: 0,
        }
    }

    pub fn new(exps: Vec<u32>) -> Result<Self> {
        let degree = exps
            .iter()
            .try_fold(0u32, |acc, &e| acc.checked_add(e))
            .ok_or(Error::ExponentOverflow)?;
        Ok(Self { exps, degree })
    }

    pub fn var(nvars: usize, index: usize, power: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = power;
        Self {
            exps,
            degree: power,
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Monomial::new(exps)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// If this is a pure power `x_i^e` with `e > 0`, returns `i`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, e) in self.exps.iter().enumerate() {
            if *e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn render(&self, vars: &VarSet) -> String {
        if self.is_one() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (e, name) in self.exps.iter().zip(vars.names()) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    /// Degree-reverse-lexicographic: higher degree wins; on ties the monomial
    /// with the smaller exponent at the last differing variable is larger.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; terms strictly descending, no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial<F: Field> {
    field: F,
    nvars: usize,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&VarSet::standard(self.nvars)))
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(field: F, nvars: usize) -> Self {
        Self {
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: F, nvars: usize, c: F::Elem) -> Self {
        Self::term(field, Monomial::one(nvars), c)
    }

    pub fn one(field: F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn term(field: F, m: Monomial, c: F::Elem) -> Self {
        let nvars = m.nvars();
        let terms = if field.is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Self {
            field,
            nvars,
            terms,
        }
    }

    pub fn var(field: F, nvars: usize, index: usize) -> Self {
        Self::term(field, Monomial::var(nvars, index, 1), field.one())
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(field: F, nvars: usize, mut terms: Vec<(Monomial, F::Elem)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !field.is_zero(c));
        Self {
            field,
            nvars,
            terms: out,
        }
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn leading_term(&self) -> Result<(&Monomial, &F::Elem)> {
        self.terms
            .first()
            .map(|(m, c)| (m, c))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nvars != other.nvars {
            return Err(Error::VarSetMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let f = self.field;
        let mut acc = Vec::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.push((ma.mul(mb)?, f.mul(ca, cb)));
            }
        }
        Ok(Self::from_terms(f, self.nvars, acc))
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Self {
            field: f,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field;
        if f.is_zero(c) {
            return Self::zero(f, self.nvars);
        }
        Self {
            field: f,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), f.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Result<Self> {
        let f = self.field;
        if f.is_zero(c) {
            return Ok(Self::zero(f, self.nvars));
        }
        let terms = self
            .terms
            .iter()
            .map(|(a, b)| Ok((a.mul(m)?, f.mul(b, c))))
            .collect::<Result<Vec<_>>>()?;
        // Multiplying by a monomial preserves the order.
        Ok(Self {
            field: f,
            nvars: self.nvars,
            terms,
        })
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// `self - c * m * g`, merged in one pass.
    pub(crate) fn sub_scaled(&self, c: &F::Elem, m: &Monomial, g: &Self) -> Result<Self> {
        let shifted = g.mul_term(m, c)?;
        Ok(self.merge(&shifted, true))
    }

    fn merge(&self, other: &Self, subtract: bool) -> Self {
        let f = self.field;
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    let c = if subtract { f.neg(c) } else { c.clone() };
                    out.push((m.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let (m, a) = &self.terms[i];
                    let b = &other.terms[j].1;
                    let c = if subtract { f.sub(a, b) } else { f.add(a, b) };
                    if !f.is_zero(&c) {
                        out.push((m.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Self {
            field: f,
            nvars: self.nvars,
            terms: out,
        }
    }

    /// Moves coefficients into another field.
    pub fn map_field<G: Field>(&self, target: G) -> Result<Polynomial<G>>
    where
        F: Field<Elem = num_rational::BigRational>,
    {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), target.from_rational(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_terms(target, self.nvars, terms))
    }

    /// Surface syntax, e.g. `x^3 + x*y - 2/3*y^4`.
    pub fn render(&self, vars: &VarSet) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let f = self.field;
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut coeff = f.render(c);
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&coeff);
            } else if coeff == "1" {
                out.push_str(&m.render(vars));
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&m.render(vars));
            }
        }
        out
    }
}
