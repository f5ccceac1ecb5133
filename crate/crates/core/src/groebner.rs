//! Buchberger's algorithm, normal forms, and the finite-dimensional
//! presentation of a zero-dimensional quotient `S/J`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Monomial, Polynomial, VarSet};
use crate::scalar::Field;

/// A reduced Gröbner basis: monic, interreduced, sorted by increasing
/// leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis<F: Field> {
    field: F,
    nvars: usize,
    generators: Vec<Polynomial<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators
            .iter()
            .any(|g| g.leading_monomial().is_some_and(Monomial::is_one))
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.generators.iter().filter_map(|g| g.leading_monomial())
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        normal_form(f, &self.generators)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Fully reduced remainder of `f` modulo `divisors` (leading coefficients
/// need not be 1).
pub fn normal_form<F: Field>(f: &Polynomial<F>, divisors: &[Polynomial<F>]) -> Result<Polynomial<F>> {
    let field = f.field();
    let mut p = f.clone();
    let mut rest: Vec<(Monomial, F::Elem)> = Vec::new();
    while let Some((m, c)) = p.terms().first().cloned() {
        let divisor = divisors
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match divisor {
            Some(g) => {
                let (lm, lc) = g.leading_term()?;
                let q = field.div(&c, lc)?;
                p = p.sub_scaled(&q, &lm.quotient_of(&m), g)?;
            }
            None => {
                rest.push((m.clone(), c.clone()));
                p = p.sub(&Polynomial::term(field, m, c))?;
            }
        }
    }
    Ok(Polynomial::from_terms(field, f.nvars(), rest))
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> Result<Polynomial<F>> {
    let field = f.field();
    let (mf, cf) = f.leading_term()?;
    let (mg, cg) = g.leading_term()?;
    let lcm = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&lcm), &field.inv(cf)?)?;
    let b = g.mul_term(&mg.quotient_of(&lcm), &field.inv(cg)?)?;
    a.sub(&b)
}

/// Buchberger with the normal selection strategy (smallest lcm degree
/// first, ties by pair creation order) and the coprime criterion. The
/// result is the reduced basis, sorted by increasing leading monomial.
pub fn buchberger<F: Field>(field: F, nvars: usize, generators: &[Polynomial<F>]) -> Result<GroebnerBasis<F>> {
    for g in generators {
        if g.field() != field {
            return Err(Error::FieldMismatch);
        }
        if g.nvars() != nvars {
            return Err(Error::VarSetMismatch);
        }
    }
    let mut basis: Vec<Polynomial<F>> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(Polynomial::monic)
        .collect();

    if basis.iter().any(|g| g.leading_monomial().is_some_and(Monomial::is_one)) {
        return Ok(GroebnerBasis {
            field,
            nvars,
            generators: vec![Polynomial::one(field, nvars)],
        });
    }

    let mut queue = BinaryHeap::new();
    let mut counter = 0usize;
    let mut push_pair = |queue: &mut BinaryHeap<_>, basis: &[Polynomial<F>], i: usize, j: usize| {
        let lcm = basis[i]
            .leading_monomial()
            .expect("nonzero")
            .lcm(basis[j].leading_monomial().expect("nonzero"));
        queue.push(Reverse((lcm.degree(), counter, i, j)));
        counter += 1;
    };
    for j in 0..basis.len() {
        for i in 0..j {
            push_pair(&mut queue, &basis, i, j);
        }
    }

    while let Some(Reverse((_, _, i, j))) = queue.pop() {
        let (li, lj) = (
            basis[i].leading_monomial().expect("nonzero"),
            basis[j].leading_monomial().expect("nonzero"),
        );
        if li.is_coprime(lj) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j])?;
        let h = normal_form(&s, &basis)?;
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if h.leading_monomial().is_some_and(Monomial::is_one) {
            return Ok(GroebnerBasis {
                field,
                nvars,
                generators: vec![Polynomial::one(field, nvars)],
            });
        }
        basis.push(h);
        let new = basis.len() - 1;
        for k in 0..new {
            push_pair(&mut queue, &basis, k, new);
        }
    }

    Ok(GroebnerBasis {
        field,
        nvars,
        generators: reduce_basis(basis)?,
    })
}

/// Minimalizes and interreduces a Gröbner basis.
fn reduce_basis<F: Field>(basis: Vec<Polynomial<F>>) -> Result<Vec<Polynomial<F>>> {
    let mut minimal: Vec<Polynomial<F>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().expect("nonzero");
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let hm = h.leading_monomial().expect("nonzero");
            j != i && hm.divides(lm) && (hm != lm || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial<F>> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        reduced.push(normal_form(&minimal[i], &others)?.monic());
    }
    reduced.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    Ok(reduced)
}

/// `B = S/J` as a vector space with multiplication.
///
/// Coordinates are indexed by the standard monomials in increasing
/// degrevlex order, so index 0 is the monomial 1.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation<F: Field> {
    field: F,
    vars: VarSet,
    gb: GroebnerBasis<F>,
    standard: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Sparse columns of multiplication by each variable.
    var_columns: Vec<Vec<Vec<(usize, F::Elem)>>>,
    /// `products[tri(i, j)] = b_i * b_j` for `i <= j`, sparse.
    products: Vec<Vec<(usize, F::Elem)>>,
    non_nilpotent: Option<usize>,
}

/// Builds the standard-monomial presentation of `S/J`.
pub fn present_algebra<F: Field>(gb: &GroebnerBasis<F>, vars: &VarSet) -> Result<AlgebraPresentation<F>> {
    let field = gb.field();
    let n = gb.nvars();
    if vars.len() != n {
        return Err(Error::VarSetMismatch);
    }
    if gb.is_unit_ideal() {
        return Ok(AlgebraPresentation {
            field,
            vars: vars.clone(),
            gb: gb.clone(),
            standard: Vec::new(),
            index: HashMap::new(),
            var_columns: vec![Vec::new(); n],
            products: Vec::new(),
            non_nilpotent: None,
        });
    }
    let leading: Vec<&Monomial> = gb.leading_monomials().collect();
    for v in 0..n {
        if !leading.iter().any(|m| m.pure_power_var() == Some(v)) {
            return Err(Error::NotZeroDimensional {
                variable: vars.names()[v].clone(),
            });
        }
    }

    // Standard monomials form an order ideal; grow it from 1.
    let is_standard = |m: &Monomial| !leading.iter().any(|l| l.divides(m));
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut frontier = vec![Monomial::one(n)];
    seen.insert(Monomial::one(n));
    while let Some(m) = frontier.pop() {
        for v in 0..n {
            let next = m.mul(&Monomial::var(n, v, 1))?;
            if is_standard(&next) && seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let mut standard: Vec<Monomial> = seen.into_iter().collect();
    standard.sort();
    let index: HashMap<Monomial, usize> = standard.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let dim = standard.len();

    let coords = |p: &Polynomial<F>| -> Vec<(usize, F::Elem)> {
        let mut v: Vec<(usize, F::Elem)> = p
            .terms()
            .iter()
            .map(|(m, c)| (index[m], c.clone()))
            .collect();
        v.sort_by_key(|(i, _)| *i);
        v
    };

    let mut var_columns = Vec::with_capacity(n);
    for v in 0..n {
        let xv = Monomial::var(n, v, 1);
        let mut cols = Vec::with_capacity(dim);
        for b in &standard {
            let prod = Polynomial::term(field, b.mul(&xv)?, field.one());
            cols.push(coords(&gb.normal_form(&prod)?));
        }
        var_columns.push(cols);
    }

    let mut alg = AlgebraPresentation {
        field,
        vars: vars.clone(),
        gb: gb.clone(),
        standard,
        index,
        var_columns,
        products: Vec::new(),
        non_nilpotent: None,
    };
    alg.build_product_table();
    alg.non_nilpotent = (0..n).find(|&v| !alg.var_is_nilpotent(v));
    Ok(alg)
}

impl<F: Field> AlgebraPresentation<F> {
    pub fn field(&self) -> F {
        self.field
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.standard.is_empty()
    }

    /// True when every variable acts nilpotently, i.e. the algebra is local
    /// with maximal ideal generated by the variables.
    pub fn is_local(&self) -> bool {
        !self.is_zero_ring() && self.non_nilpotent.is_none()
    }

    pub fn non_nilpotent_variable(&self) -> Option<&str> {
        self.non_nilpotent.map(|v| self.vars.names()[v].as_str())
    }

    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Dense matrix of multiplication by the `v`-th variable.
    pub fn mult_matrix(&self, v: usize) -> Matrix<F> {
        let dim = self.dim();
        let mut m = Matrix::zeros(self.field, dim, dim);
        for (j, col) in self.var_columns[v].iter().enumerate() {
            for (i, c) in col {
                m.set(*i, j, c.clone());
            }
        }
        m
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn unit(&self) -> Vec<F::Elem> {
        self.basis_vector(0)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    /// Image of the `v`-th variable.
    pub fn variable(&self, v: usize) -> Vec<F::Elem> {
        self.mul_var(v, &self.unit())
    }

    pub fn mul_var(&self, v: usize, x: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let mut out = self.zero();
        for (j, xj) in x.iter().enumerate() {
            if f.is_zero(xj) {
                continue;
            }
            for (i, c) in &self.var_columns[v][j] {
                out[*i] = f.add(&out[*i], &f.mul(c, xj));
            }
        }
        out
    }

    fn tri(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let n = self.dim();
        i * n - i * (i + 1) / 2 + j
    }

    fn build_product_table(&mut self) {
        let f = self.field;
        let n = self.dim();
        let nv = self.nvars();
        // Each b_i (i > 0) is x_v * b_p for an earlier standard monomial b_p.
        let parents: Vec<Option<(usize, usize)>> = self
            .standard
            .iter()
            .map(|m| {
                let v = m.exponents().iter().position(|e| *e > 0)?;
                let p = Monomial::var(nv, v, 1).quotient_of(m);
                Some((v, self.index[&p]))
            })
            .collect();
        let mut table: Vec<Vec<(usize, F::Elem)>> = Vec::with_capacity(n * (n + 1) / 2);
        let mut dense = vec![f.zero(); n];
        for i in 0..n {
            for j in i..n {
                let entry = match parents[i] {
                    None => vec![(j, f.one())],
                    Some((v, p)) => {
                        let src = &table[self.tri(p, j)];
                        let mut touched = Vec::new();
                        for (k, c) in src {
                            for (r, m) in &self.var_columns[v][*k] {
                                if f.is_zero(&dense[*r]) {
                                    touched.push(*r);
                                }
                                dense[*r] = f.add(&dense[*r], &f.mul(c, m));
                            }
                        }
                        touched.sort_unstable();
                        touched.dedup();
                        let mut out = Vec::with_capacity(touched.len());
                        for r in touched {
                            let val = std::mem::replace(&mut dense[r], f.zero());
                            if !f.is_zero(&val) {
                                out.push((r, val));
                            }
                        }
                        out
                    }
                };
                table.push(entry);
            }
        }
        self.products = table;
    }

    /// Product of two elements in coordinates.
    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let mut out = self.zero();
        let nz_b: Vec<usize> = (0..b.len()).filter(|&j| !f.is_zero(&b[j])).collect();
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for &j in &nz_b {
                let c = f.mul(ai, &b[j]);
                for (k, t) in &self.products[self.tri(i, j)] {
                    out[*k] = f.add(&out[*k], &f.mul(&c, t));
                }
            }
        }
        out
    }

    fn var_is_nilpotent(&self, v: usize) -> bool {
        let f = self.field;
        let mut x = self.unit();
        for _ in 0..self.dim() {
            x = self.mul_var(v, &x);
            if x.iter().all(|e| f.is_zero(e)) {
                return true;
            }
        }
        false
    }

    /// Coordinates of the image of a polynomial.
    pub fn element_of(&self, p: &Polynomial<F>) -> Result<Vec<F::Elem>> {
        let nf = self.gb.normal_form(p)?;
        let mut v = self.zero();
        for (m, c) in nf.terms() {
            let i = self
                .index_of(m)
                .ok_or_else(|| Error::InternalInvariantViolation("normal form left the standard basis".into()))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// The polynomial `sum v_i b_i` in standard monomials.
    pub fn lift(&self, v: &[F::Elem]) -> Polynomial<F> {
        let terms = v
            .iter()
            .zip(&self.standard)
            .filter(|(c, _)| !self.field.is_zero(c))
            .map(|(c, m)| (m.clone(), c.clone()))
            .collect();
        Polynomial::from_terms(self.field, self.nvars(), terms)
    }
}
