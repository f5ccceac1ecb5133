//! Dense exact linear algebra: echelon forms, kernels and a subspace lattice.
//!
//! Vectors are plain `Vec<F::Elem>`; matrices act on column vectors.
//! Every [`Subspace`] keeps its basis in reduced row-echelon form, which is
//! canonical, so equality of subspaces is equality of bases.

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Self {
            field,
            rows: nrows,
            cols,
            data,
        }
    }

    /// Matrix whose j-th column is `columns[j]`.
    pub fn from_columns(field: F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        m
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn apply(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in matrix-vector product");
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let idx = i * out.cols + j;
                        out.data[idx] = f.add(&out.data[idx], &f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// Reduced row-echelon form and rank. Columns are scanned left to right
    /// and the first row at or below the current one with a nonzero entry
    /// becomes the pivot row.
    pub fn rref(&self) -> (Matrix<F>, usize) {
        let (m, pivots) = self.rref_with_pivots();
        (m, pivots.len())
    }

    pub fn rref_with_pivots(&self) -> (Matrix<F>, Vec<usize>) {
        let f = self.field;
        let mut rows = self.row_vecs();
        for r in rows.iter_mut() {
            f.condition_row(r);
        }
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..self.cols {
            if next == rows.len() {
                break;
            }
            let Some(found) = (next..rows.len()).find(|&r| !f.is_zero(&rows[r][col])) else {
                continue;
            };
            rows.swap(next, found);
            let inv = f.inv(&rows[next][col]).expect("pivot is nonzero");
            for e in rows[next].iter_mut() {
                *e = f.mul(e, &inv);
            }
            let pivot_row = rows[next].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == next || f.is_zero(&row[col]) {
                    continue;
                }
                eliminate(f, row, &pivot_row, col);
            }
            pivots.push(col);
            next += 1;
        }
        let out = Matrix::from_rows(f, self.cols, rows);
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace<F> {
        let f = self.field;
        let (r, pivots) = self.rref_with_pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        Subspace::from_spanning(f, self.cols, basis)
    }
}

/// `row -= row[col] * pivot_row`, with `pivot_row[col] = 1`.
#[inline]
fn eliminate<F: Field>(f: F, row: &mut [F::Elem], pivot_row: &[F::Elem], col: usize) {
    let c = row[col].clone();
    for (e, p) in row.iter_mut().zip(pivot_row).skip(col) {
        if !f.is_zero(p) {
            *e = f.sub_mul(e, &c, p);
        }
    }
}

/// A linear subspace of `F^n` with a canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Self {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        let rows = Matrix::identity(field, ambient).row_vecs();
        Self {
            field,
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_spanning(field: F, ambient: usize, vectors: impl IntoIterator<Item = Vec<F::Elem>>) -> Self {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_rows(self.field, self.ambient, self.rows.clone())
    }

    /// Remainder of `v` after eliminating every pivot column; zero iff `v`
    /// lies in the subspace. Linear in `v`.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = self.field;
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !f.is_zero(&v[p]) {
                eliminate(f, &mut v, row, p);
            }
        }
        v
    }

    pub fn contains_vector(&self, v: &[F::Elem]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector outside ambient space");
        let f = self.field;
        self.reduce(v).iter().all(|e| f.is_zero(e))
    }

    /// Coordinates of a member vector in the RREF basis.
    pub fn coordinates(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Adds `v` to the span, keeping RREF. Returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector outside ambient space");
        let f = self.field;
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|e| !f.is_zero(e)) else {
            return false;
        };
        let inv = f.inv(&r[p]).expect("pivot is nonzero");
        for e in r.iter_mut().skip(p) {
            *e = f.mul(e, &inv);
        }
        for row in self.rows.iter_mut() {
            if !f.is_zero(&row[p]) {
                eliminate(f, row, &r, p);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, r);
        self.pivots.insert(at, p);
        true
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v.clone());
        }
        Ok(s)
    }

    /// Zassenhaus: row-reduce `[a | a; b | 0]`; rows with zero left half
    /// span the intersection in their right half.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let f = self.field;
        let n = self.ambient;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(f, n));
        }
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for v in &self.rows {
            let mut r = v.clone();
            r.extend(v.iter().cloned());
            rows.push(r);
        }
        for v in &other.rows {
            let mut r = v.clone();
            r.extend(std::iter::repeat(f.zero()).take(n));
            rows.push(r);
        }
        let (m, pivots) = Matrix::from_rows(f, 2 * n, rows).rref_with_pivots();
        let vectors = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= n)
            .map(|(i, _)| m.row(i)[n..].to_vec());
        Ok(Self::from_spanning(f, n, vectors))
    }

    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.dim() <= self.dim() && other.rows.iter().all(|v| self.contains_vector(v)))
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self == other)
    }

    /// Image under a linear map.
    pub fn image(&self, map: &Matrix<F>) -> Self {
        Self::from_spanning(self.field, map.rows(), self.rows.iter().map(|v| map.apply(v)))
    }

    /// Basis vectors of `self` completing a basis of `sub` (which must be
    /// contained in `self`), chosen greedily in RREF order.
    pub fn complement_reps(&self, sub: &Self) -> Vec<Vec<F::Elem>> {
        let mut span = sub.clone();
        let mut reps = Vec::new();
        for v in &self.rows {
            if span.insert(v.clone()) {
                reps.push(v.clone());
            }
        }
        reps
    }

    /// Direct sum of `copies` copies inside `F^(n * copies)`.
    pub fn power(&self, copies: usize) -> Self {
        let f = self.field;
        let n = self.ambient;
        let mut rows = Vec::with_capacity(self.dim() * copies);
        let mut pivots = Vec::with_capacity(self.dim() * copies);
        for k in 0..copies {
            for (v, &p) in self.rows.iter().zip(&self.pivots) {
                let mut r = vec![f.zero(); n * copies];
                r[k * n..(k + 1) * n].clone_from_slice(v);
                rows.push(r);
                pivots.push(k * n + p);
            }
        }
        Self {
            field: f,
            ambient: n * copies,
            rows,
            pivots,
        }
    }
}

/// Rank data for a map induced on subquotients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub rank: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl InducedMap {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Rank of the map `dom_sub/dom_mod -> cod_sub/cod_mod` induced by `f`.
/// All containment hypotheses are checked.
pub fn induced_map_rank<F: Field>(
    f: &Matrix<F>,
    dom_sub: &Subspace<F>,
    dom_mod: &Subspace<F>,
    cod_sub: &Subspace<F>,
    cod_mod: &Subspace<F>,
) -> Result<InducedMap> {
    dom_sub.check_ambient(dom_mod)?;
    cod_sub.check_ambient(cod_mod)?;
    if f.cols() != dom_sub.ambient_dim() {
        return Err(Error::AmbientMismatch(f.cols(), dom_sub.ambient_dim()));
    }
    if f.rows() != cod_sub.ambient_dim() {
        return Err(Error::AmbientMismatch(f.rows(), cod_sub.ambient_dim()));
    }
    if !dom_sub.contains(dom_mod)? {
        return Err(Error::NotWellDefined("domain modulus is not a subspace of the domain".into()));
    }
    if !cod_sub.contains(cod_mod)? {
        return Err(Error::NotWellDefined(
            "codomain modulus is not a subspace of the codomain".into(),
        ));
    }
    let image = dom_sub.image(f);
    if !cod_sub.contains(&image)? {
        return Err(Error::NotWellDefined("f(domain) is not contained in the codomain".into()));
    }
    if !cod_mod.contains(&dom_mod.image(f))? {
        return Err(Error::NotWellDefined(
            "f(domain modulus) is not contained in the codomain modulus".into(),
        ));
    }
    let rank = image.sum(cod_mod)?.dim() - cod_mod.dim();
    let domain_dim = dom_sub.dim() - dom_mod.dim();
    let codomain_dim = cod_sub.dim() - cod_mod.dim();
    Ok(InducedMap {
        rank,
        domain_dim,
        codomain_dim,
        injective: rank == domain_dim,
        surjective: rank == codomain_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_rational, PrimeField, Rationals};
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        Rationals.from_i64(n)
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Rationals> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            Rationals,
            cols,
            rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(),
        )
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(Rationals, 3);
        assert_eq!(id.rref(), (id.clone(), 3));

        let (r, rank) = qm(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(rank, 1);
        assert_eq!(r, qm(&[&[1, 2], &[0, 0]]));

        let z = Matrix::zeros(Rationals, 2, 3);
        assert_eq!(z.rref(), (z.clone(), 0));
    }

    #[test]
    fn rref_rescales_fractions() {
        let m = Matrix::from_rows(
            Rationals,
            2,
            vec![
                vec![parse_rational("1/3").unwrap(), parse_rational("2/9").unwrap()],
                vec![q(3), q(2)],
            ],
        );
        let (r, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r.row(0), &[q(1), parse_rational("2/3").unwrap()]);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(Rationals, 3).kernel().is_zero());
        assert_eq!(
            Matrix::zeros(Rationals, 3, 3).kernel(),
            Subspace::full(Rationals, 3)
        );
        let k = qm(&[&[1, 1]]).kernel();
        assert_eq!(k.basis(), &[vec![q(1), q(-1)]]);
    }

    #[test]
    fn subspace_lattice_examples() {
        let e1 = Subspace::from_spanning(Rationals, 2, [vec![q(1), q(0)]]);
        let e2 = Subspace::from_spanning(Rationals, 2, [vec![q(0), q(1)]]);
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(Rationals, 2));
        assert_eq!(e1.intersect(&e1).unwrap(), e1);
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        assert!(e1.intersect(&e2).unwrap().is_zero());
        assert!(matches!(
            e1.sum(&Subspace::zero(Rationals, 3)),
            Err(Error::AmbientMismatch(2, 3))
        ));
    }

    #[test]
    fn induced_map_examples() {
        let full = Subspace::full(Rationals, 2);
        let zero = Subspace::zero(Rationals, 2);
        let id = Matrix::identity(Rationals, 2);
        let m = induced_map_rank(&id, &full, &zero, &full, &zero).unwrap();
        assert!(m.bijective());
        assert_eq!(m.rank, 2);

        let z = Matrix::zeros(Rationals, 2, 2);
        let m = induced_map_rank(&z, &full, &zero, &full, &zero).unwrap();
        assert_eq!(m.rank, 0);
        assert!(!m.injective);

        // Identity cannot send the whole space into a line.
        let line = Subspace::from_spanning(Rationals, 2, [vec![q(1), q(0)]]);
        assert!(matches!(
            induced_map_rank(&id, &full, &zero, &line, &zero),
            Err(Error::NotWellDefined(_))
        ));
    }

    #[test]
    fn induced_map_on_quotients() {
        // k^3 / <e3> -> k^3 / <e2, e3> via identity: rank 1.
        let f = Rationals;
        let full = Subspace::full(f, 3);
        let e3 = Subspace::from_spanning(f, 3, [vec![q(0), q(0), q(1)]]);
        let e23 = Subspace::from_spanning(f, 3, [vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        let m = induced_map_rank(&Matrix::identity(f, 3), &full, &e3, &full, &e23).unwrap();
        assert_eq!((m.rank, m.domain_dim, m.codomain_dim), (1, 2, 1));
        assert!(m.surjective && !m.injective);
    }

    fn arb_matrix(p: u64, max: usize) -> impl Strategy<Value = Matrix<PrimeField>> {
        (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(0..p, r * c).prop_map(move |data| {
                let f = PrimeField::new(p).unwrap();
                let rows = data.chunks(c).map(|ch| ch.to_vec()).collect();
                Matrix::from_rows(f, c, rows)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix(5, 6)) {
            prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
            for v in m.kernel().basis() {
                prop_assert!(m.apply(v).iter().all(|e| *e == 0));
            }
        }

        #[test]
        fn rref_is_canonical(m in arb_matrix(3, 5), seed in 0u64..1000) {
            // Re-spanning the row space by shuffled combinations gives the same basis.
            let f = m.field();
            let s = Subspace::from_spanning(f, m.cols(), m.row_vecs());
            let rows = m.row_vecs();
            let mut mixed = Vec::new();
            for (i, r) in rows.iter().enumerate() {
                let mut v = r.clone();
                let other = &rows[(i + 1 + seed as usize) % rows.len()];
                for (a, b) in v.iter_mut().zip(other) {
                    *a = f.add(a, &f.mul(&(seed % 3), b));
                }
                mixed.push(v);
            }
            mixed.extend(rows.iter().rev().cloned());
            prop_assert_eq!(Subspace::from_spanning(f, m.cols(), mixed), s.clone());
            let (r, rank) = m.rref();
            prop_assert_eq!(Subspace::from_spanning(f, m.cols(), r.row_vecs()), s.clone());
            prop_assert_eq!(rank, s.dim());
        }

        #[test]
        fn grassmann_identity((a, b) in (1usize..=6).prop_flat_map(|c| {
            let side = move || (1usize..=6).prop_flat_map(move |r| {
                proptest::collection::vec(0..3u64, r * c).prop_map(move |d| d.chunks(c).map(<[u64]>::to_vec).collect::<Vec<_>>())
            });
            (side(), side())
        })) {
            let f = PrimeField::new(3).unwrap();
            let cols = a[0].len();
            let sa = Subspace::from_spanning(f, cols, a);
            let sb = Subspace::from_spanning(f, cols, b);
            let sum = sa.sum(&sb).unwrap();
            let cap = sa.intersect(&sb).unwrap();
            prop_assert_eq!(sum.dim() + cap.dim(), sa.dim() + sb.dim());
            prop_assert!(sa.contains(&cap).unwrap() && sb.contains(&cap).unwrap());
            prop_assert!(sum.contains(&sa).unwrap() && sum.contains(&sb).unwrap());
        }
    }
}
