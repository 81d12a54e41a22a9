//! Dense exact linear algebra over a [`Field`].
//!
//! Matrices act on column vectors: the matrix of a map `A -> B` has
//! `dim B` rows and `dim A` columns. Pivoting is always leftmost-nonzero so
//! every basis, quotient and representative produced here is deterministic.

use crate::error::LinalgError;
use crate::field::Field;

/// Row-major dense matrix of field elements.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Build from row vectors; every row must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn from_i64<F: Field<Elem = E>>(field: &F, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
            cols,
        )
    }

    /// Build from columns; every column must have `rows` entries.
    pub fn from_columns<F: Field<Elem = E>>(field: &F, columns: &[Vec<E>], rows: usize) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged matrix columns");
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &E {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, field: &F) -> bool {
        self.data.iter().all(|v| field.is_zero(v))
    }

    /// Keep only the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn scaled<F: Field<Elem = E>>(&self, field: &F, s: &E) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| field.mul(s, v)).collect(),
        }
    }

    /// `self * v` for a column vector `v`.
    pub fn apply<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let support: Vec<usize> = (0..v.len()).filter(|&j| !field.is_zero(&v[j])).collect();
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let mut acc = field.zero();
                for &j in &support {
                    if !field.is_zero(&row[j]) {
                        acc = field.add(&acc, &field.mul(&row[j], &v[j]));
                    }
                }
                acc
            })
            .collect()
    }
}

/// Matrix product `a * b`, skipping zero entries.
pub fn mat_mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "product shape mismatch");
    let mut out = Matrix::zeros(field, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if field.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let bkj = b.get(k, j);
                if field.is_zero(bkj) {
                    continue;
                }
                let cur = out.get(i, j);
                let next = field.add(cur, &field.mul(aik, bkj));
                out.set(i, j, next);
            }
        }
    }
    out
}

/// Result of [`rref`]: the reduced matrix (same shape as the input, zero rows
/// last) and its pivot columns.
#[derive(Debug, Clone, PartialEq)]
pub struct RowEchelon<E> {
    pub matrix: Matrix<E>,
    pub pivots: Vec<usize>,
}

impl<E> RowEchelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn nonzero_support<F: Field>(field: &F, row: &[F::Elem]) -> Vec<usize> {
    (0..row.len())
        .filter(|&j| !field.is_zero(&row[j]))
        .collect()
}

/// In-place elimination on row vectors. With `reduce_above` the result is
/// fully reduced; otherwise it is only in row-echelon form. Returns pivots.
fn eliminate<F: Field>(
    field: &F,
    rows: &mut [Vec<F::Elem>],
    cols: usize,
    reduce_above: bool,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(found) = (r..rows.len()).find(|&i| !field.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, found);
        if !field.is_one(&rows[r][c]) {
            let inv = field.inv(&rows[r][c]);
            for v in rows[r].iter_mut().skip(c) {
                if !field.is_zero(v) {
                    *v = field.mul(v, &inv);
                }
            }
        }
        let support = nonzero_support(field, &rows[r]);
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, below) = tail.split_first_mut().expect("pivot row exists");
        let above: &mut [Vec<F::Elem>] = if reduce_above { head } else { &mut [] };
        for row in below.iter_mut().chain(above.iter_mut()) {
            if field.is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                field.sub_mul_assign(&mut row[j], &factor, &pivot_row[j]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row-echelon form with leftmost-nonzero pivoting.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> RowEchelon<F::Elem> {
    let mut rows = m.row_vecs();
    let pivots = eliminate(field, &mut rows, m.cols, true);
    RowEchelon {
        matrix: Matrix::from_rows(rows, m.cols),
        pivots,
    }
}

/// Rank of `m` (forward elimination only).
pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    // Eliminate along the shorter side.
    if m.rows > m.cols {
        let mut rows = m.transpose().row_vecs();
        eliminate(field, &mut rows, m.rows, false).len()
    } else {
        let mut rows = m.row_vecs();
        eliminate(field, &mut rows, m.cols, false).len()
    }
}

/// A linear subspace of `F^n` held as a reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<E> {
    ambient_dim: usize,
    basis: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full<F: Field<Elem = E>>(field: &F, ambient_dim: usize) -> Self {
        let basis = Matrix::identity(field, ambient_dim).row_vecs();
        Subspace {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// The span of the given vectors.
    pub fn span<F: Field<Elem = E>>(field: &F, ambient_dim: usize, vectors: Vec<Vec<E>>) -> Self {
        let mut rows = vectors;
        for r in &rows {
            assert_eq!(r.len(), ambient_dim, "spanning vector has wrong length");
        }
        let pivots = eliminate(field, &mut rows, ambient_dim, true);
        rows.truncate(pivots.len());
        Subspace {
            ambient_dim,
            basis: rows,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtract basis multiples so `v` vanishes on every pivot column.
    /// Afterwards `v` is zero iff it was in the subspace.
    pub fn reduce<F: Field<Elem = E>>(&self, field: &F, v: &mut [E]) {
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if field.is_zero(&v[p]) {
                continue;
            }
            let factor = v[p].clone();
            for (j, x) in row.iter().enumerate().skip(p) {
                if !field.is_zero(x) {
                    field.sub_mul_assign(&mut v[j], &factor, x);
                }
            }
        }
    }

    pub fn contains<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|x| field.is_zero(x))
    }

    pub fn contains_subspace<F: Field<Elem = E>>(&self, field: &F, other: &Subspace<E>) -> bool {
        other.basis.iter().all(|v| self.contains(field, v))
    }

    /// `self + other`.
    pub fn join<F: Field<Elem = E>>(&self, field: &F, other: &Subspace<E>) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(field, self.ambient_dim, vectors)
    }

    /// `self ∩ other`, computed from the kernel of `[A^T | -B^T]`.
    pub fn intersect<F: Field<Elem = E>>(&self, field: &F, other: &Subspace<E>) -> Self {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Subspace::zero(self.ambient_dim);
        }
        // Columns are the basis vectors of both spaces (second block negated).
        let mut stacked = Matrix::zeros(field, self.ambient_dim, a + b);
        for (i, v) in self.basis.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                stacked.set(r, i, x.clone());
            }
        }
        for (i, v) in other.basis.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                stacked.set(r, a + i, field.neg(x));
            }
        }
        let kernel = kernel_basis(field, &stacked);
        let vectors = kernel
            .basis
            .iter()
            .map(|coeffs| {
                let mut v = vec![field.zero(); self.ambient_dim];
                for (i, c) in coeffs.iter().take(a).enumerate() {
                    if field.is_zero(c) {
                        continue;
                    }
                    for (j, x) in self.basis[i].iter().enumerate() {
                        v[j] = field.add(&v[j], &field.mul(c, x));
                    }
                }
                v
            })
            .collect();
        Subspace::span(field, self.ambient_dim, vectors)
    }
}

/// Basis of `{v : m v = 0}`.
pub fn kernel_basis<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    let ech = rref(field, m);
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &ech.pivots {
        is_pivot[p] = true;
    }
    let vectors = (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); n];
            v[f] = field.one();
            for (i, &p) in ech.pivots.iter().enumerate() {
                v[p] = field.neg(ech.matrix.get(i, f));
            }
            v
        })
        .collect();
    Subspace::span(field, n, vectors)
}

/// Column space of `m` as a subspace of `F^{rows}`.
pub fn image<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Subspace<F::Elem> {
    Subspace::span(field, m.rows, m.transpose().row_vecs())
}

/// Projection of the ambient space onto the quotient by a relation subspace.
///
/// Quotient coordinates are the non-pivot coordinates after reducing against
/// the relations, so the kernel of [`QuotientMap::project`] is exactly the
/// relation subspace and the ambient basis vectors at non-pivot positions map
/// to the standard basis of the quotient.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMap<E> {
    relations: Subspace<E>,
    free: Vec<usize>,
    slot: Vec<Option<usize>>,
}

impl<E: Clone + PartialEq> QuotientMap<E> {
    pub fn ambient_dim(&self) -> usize {
        self.relations.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn relations(&self) -> &Subspace<E> {
        &self.relations
    }

    /// Ambient coordinates whose images form the quotient basis.
    pub fn basis_coordinates(&self) -> &[usize] {
        &self.free
    }

    /// Quotient slot of an ambient coordinate if it is a basis coordinate.
    pub fn slot(&self, ambient: usize) -> Option<usize> {
        self.slot[ambient]
    }

    pub fn project<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        let mut w = v.to_vec();
        self.relations.reduce(field, &mut w);
        self.free.iter().map(|&j| w[j].clone()).collect()
    }

    /// Image of the ambient basis vector `e_j`.
    pub fn project_unit<F: Field<Elem = E>>(&self, field: &F, j: usize) -> Vec<E> {
        if let Some(s) = self.slot[j] {
            let mut out = vec![field.zero(); self.dim()];
            out[s] = field.one();
            return out;
        }
        let mut e = vec![field.zero(); self.ambient_dim()];
        e[j] = field.one();
        self.project(field, &e)
    }

    /// Matrix of the projection (`dim` rows, `ambient_dim` columns).
    pub fn matrix<F: Field<Elem = E>>(&self, field: &F) -> Matrix<E> {
        let cols: Vec<Vec<E>> = (0..self.ambient_dim())
            .map(|j| self.project_unit(field, j))
            .collect();
        Matrix::from_columns(field, &cols, self.dim())
    }
}

pub fn quotient_coordinates<F: Field>(
    _field: &F,
    relations: Subspace<F::Elem>,
) -> QuotientMap<F::Elem> {
    let n = relations.ambient_dim;
    let mut slot = vec![None; n];
    let mut is_pivot = vec![false; n];
    for &p in &relations.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    for (s, &j) in free.iter().enumerate() {
        slot[j] = Some(s);
    }
    QuotientMap {
        relations,
        free,
        slot,
    }
}

/// One cohomology group of a cochain complex with chosen representatives.
#[derive(Debug, Clone, PartialEq)]
pub struct CohomologyGroup<E> {
    pub dim: usize,
    /// Cocycles completing the coboundaries to a basis of the cocycles.
    pub representatives: Vec<Vec<E>>,
    pub cocycles: Subspace<E>,
    pub coboundaries: Subspace<E>,
}

/// Validate a cochain complex: `maps[i]` goes from term `i` to term `i+1`.
pub fn check_complex<F: Field>(
    field: &F,
    dims: &[usize],
    maps: &[Matrix<F::Elem>],
) -> Result<(), LinalgError> {
    if maps.len() + 1 != dims.len() && !(dims.is_empty() && maps.is_empty()) {
        return Err(LinalgError::DimensionMismatch(format!(
            "{} terms need {} maps, got {}",
            dims.len(),
            dims.len().saturating_sub(1),
            maps.len()
        )));
    }
    for (i, m) in maps.iter().enumerate() {
        if m.cols != dims[i] || m.rows != dims[i + 1] {
            return Err(LinalgError::DimensionMismatch(format!(
                "map {i} is {}x{}, expected {}x{}",
                m.rows,
                m.cols,
                dims[i + 1],
                dims[i]
            )));
        }
    }
    for i in 0..maps.len().saturating_sub(1) {
        if !mat_mul(field, &maps[i + 1], &maps[i]).is_zero(field) {
            return Err(LinalgError::CompositionNotZero { position: i });
        }
    }
    Ok(())
}

/// Cohomology dimensions of `0 -> C^0 -> C^1 -> ... -> 0` (ranks only).
pub fn complex_cohomology_dims<F: Field>(
    field: &F,
    dims: &[usize],
    maps: &[Matrix<F::Elem>],
) -> Result<Vec<usize>, LinalgError> {
    check_complex(field, dims, maps)?;
    let ranks: Vec<usize> = maps.iter().map(|m| rank(field, m)).collect();
    Ok(dims
        .iter()
        .enumerate()
        .map(|(n, &d)| {
            let out = ranks.get(n).copied().unwrap_or(0);
            let inc = if n == 0 { 0 } else { ranks[n - 1] };
            d - out - inc
        })
        .collect())
}

/// Cohomology of a cochain complex with deterministic representatives.
pub fn complex_cohomology<F: Field>(
    field: &F,
    dims: &[usize],
    maps: &[Matrix<F::Elem>],
) -> Result<Vec<CohomologyGroup<F::Elem>>, LinalgError> {
    check_complex(field, dims, maps)?;
    Ok((0..dims.len())
        .map(|n| {
            let cocycles = match maps.get(n) {
                Some(m) => kernel_basis(field, m),
                None => Subspace::full(field, dims[n]),
            };
            let coboundaries = if n == 0 {
                Subspace::zero(dims[0])
            } else {
                image(field, &maps[n - 1])
            };
            let mut span = coboundaries.clone();
            let mut representatives = Vec::new();
            for v in cocycles.basis() {
                if !span.contains(field, v) {
                    representatives.push(v.clone());
                    span = span.join(field, &Subspace::span(field, dims[n], vec![v.clone()]));
                }
            }
            CohomologyGroup {
                dim: representatives.len(),
                representatives,
                cocycles,
                coboundaries,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn rref_identity_and_zero() {
        let q = Rationals;
        let id = Matrix::identity(&q, 2);
        let e = rref(&q, &id);
        assert_eq!(e.matrix, id);
        assert_eq!(e.pivots, vec![0, 1]);
        let z = Matrix::zeros(&q, 3, 4);
        let e = rref(&q, &z);
        assert_eq!(e.matrix, z);
        assert!(e.pivots.is_empty());
    }

    #[test]
    fn rref_rank_one_by_hand() {
        // [[1,2],[2,4]] -> [[1,2],[0,0]]
        let q = Rationals;
        let m = Matrix::from_i64(&q, &[vec![1, 2], vec![2, 4]]);
        let e = rref(&q, &m);
        assert_eq!(e.rank(), 1);
        assert_eq!(e.matrix, Matrix::from_i64(&q, &[vec![1, 2], vec![0, 0]]));
        assert_eq!(rank(&q, &m), 1);
    }

    #[test]
    fn rref_with_fractions() {
        let q = Rationals;
        let m = Matrix::from_i64(&q, &[vec![2, 1, 0], vec![4, 3, 1]]);
        let e = rref(&q, &m);
        // [[1,0,-1/2],[0,1,1]]
        assert_eq!(e.pivots, vec![0, 1]);
        assert_eq!(e.matrix.get(0, 2), &q.inv(&q.from_i64(-2)));
        assert_eq!(e.matrix.get(1, 2), &q.one());
    }

    #[test]
    fn kernel_cases() {
        let q = Rationals;
        assert_eq!(kernel_basis(&q, &Matrix::identity(&q, 3)).dim(), 0);
        assert_eq!(kernel_basis(&q, &Matrix::zeros(&q, 3, 3)).dim(), 3);
        // [[1,1]] over F2: brute force over all 4 vectors.
        let f2 = PrimeField::new(2);
        let m = Matrix::from_i64(&f2, &[vec![1, 1]]);
        let k = kernel_basis(&f2, &m);
        let brute: Vec<Vec<u64>> = (0..4u64)
            .map(|b| vec![b & 1, (b >> 1) & 1])
            .filter(|v| (v[0] + v[1]) % 2 == 0 && v.iter().any(|&x| x != 0))
            .collect();
        assert_eq!(brute, vec![vec![1, 1]]);
        assert_eq!(k.basis(), &[vec![1, 1]]);
    }

    #[test]
    fn quotient_cases() {
        let q = Rationals;
        let qm = quotient_coordinates(&q, Subspace::zero(3));
        assert_eq!(qm.dim(), 3);
        assert_eq!(qm.matrix(&q), Matrix::identity(&q, 3));
        let qm = quotient_coordinates(&q, Subspace::full(&q, 3));
        assert_eq!(qm.dim(), 0);
        // span{e1 - e2}: both basis vectors map to the same generator.
        let rel = Subspace::span(&q, 2, vec![vec![q.one(), q.from_i64(-1)]]);
        let qm = quotient_coordinates(&q, rel.clone());
        assert_eq!(qm.dim(), 1);
        assert_eq!(qm.project_unit(&q, 0), qm.project_unit(&q, 1));
        // kernel of the projection is exactly the relation subspace
        let k = kernel_basis(&q, &qm.matrix(&q));
        assert_eq!(k, rel);
    }

    #[test]
    fn intersection_of_planes() {
        let q = Rationals;
        let u = Subspace::span(
            &q,
            3,
            vec![
                vec![q.one(), q.zero(), q.zero()],
                vec![q.zero(), q.one(), q.zero()],
            ],
        );
        let w = Subspace::span(
            &q,
            3,
            vec![
                vec![q.zero(), q.one(), q.zero()],
                vec![q.zero(), q.zero(), q.one()],
            ],
        );
        let i = u.intersect(&q, &w);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&q, &[q.zero(), q.one(), q.zero()]));
        assert_eq!(u.join(&q, &w).dim(), 3);
    }

    #[test]
    fn cohomology_trivial_complexes() {
        let q = Rationals;
        let maps = vec![Matrix::zeros(&q, 2, 1), Matrix::zeros(&q, 1, 2)];
        assert_eq!(
            complex_cohomology_dims(&q, &[1, 2, 1], &maps).unwrap(),
            vec![1, 2, 1]
        );
        let maps = vec![Matrix::identity(&q, 1)];
        assert_eq!(
            complex_cohomology_dims(&q, &[1, 1], &maps).unwrap(),
            vec![0, 0]
        );
    }

    #[test]
    fn six_cycle_graph() {
        // Coboundary C^0 (6 vertices) -> C^1 (6 edges) of a hexagon.
        let q = Rationals;
        let mut d = vec![vec![0i64; 6]; 6];
        for e in 0..6 {
            d[e][e] = -1;
            d[e][(e + 1) % 6] = 1;
        }
        let m = Matrix::from_i64(&q, &d);
        // Oracle: rank of d by brute force over F_3 combinations is 5.
        let f3 = PrimeField::new(3);
        let m3 = Matrix::from_i64(&f3, &d);
        let mut images = std::collections::HashSet::new();
        for code in 0..3usize.pow(6) {
            let v: Vec<u64> = (0..6)
                .map(|i| ((code / 3usize.pow(i)) % 3) as u64)
                .collect();
            images.insert(m3.apply(&f3, &v));
        }
        assert_eq!(images.len(), 3usize.pow(5));
        let h = complex_cohomology(&q, &[6, 6], &[m]).unwrap();
        assert_eq!(h[0].dim, 1);
        assert_eq!(h[1].dim, 1);
        assert_eq!(h[1].representatives.len(), 1);
    }

    #[test]
    fn composition_checked() {
        let q = Rationals;
        let maps = vec![Matrix::identity(&q, 1), Matrix::identity(&q, 1)];
        assert_eq!(
            complex_cohomology_dims(&q, &[1, 1, 1], &maps),
            Err(LinalgError::CompositionNotZero { position: 0 })
        );
    }
}
