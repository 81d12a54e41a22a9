//! Order complexes of finite posets and their cohomology.
//!
//! An n-cell is a strictly increasing chain `b_0 < ... < b_n`, stored as the
//! sorted tuple of its element ids (ids increase along the order). The
//! coboundary is `d = Σ_x u_x`, where `u_x` inserts `x` into a chain at
//! position `j` with sign `(-1)^j`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{ComplexError, PosetError};
use crate::field::Field;
use crate::linalg::{complex_cohomology, rank, CohomologyGroup, Matrix};
use crate::poset::{ElemId, RankedPoset, SubPoset, SubPosetKind};

#[derive(Debug, Clone)]
pub struct OrderComplex {
    elements: Vec<ElemId>,
    /// Comparability inside `elements`, by position.
    less: Vec<Vec<bool>>,
    cells: Vec<Vec<Vec<ElemId>>>,
    index: Vec<HashMap<Vec<ElemId>, usize>>,
}

/// Cohomology dimensions of a complex, by degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyProfile {
    /// Nonzero dimensions only.
    pub dims: BTreeMap<i64, usize>,
    pub reduced: bool,
    /// `Σ (-1)^i dim H̃^i`, derived from the unreduced dims when needed.
    pub euler_reduced: i64,
}

impl CohomologyProfile {
    fn from_dims(start: i64, dims: &[usize], reduced: bool) -> Self {
        let map: BTreeMap<i64, usize> = dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, &d)| (start + i as i64, d))
            .collect();
        let mut euler: i64 = map
            .iter()
            .map(|(&n, &d)| {
                if n.rem_euclid(2) == 0 {
                    d as i64
                } else {
                    -(d as i64)
                }
            })
            .sum();
        if !reduced {
            euler -= 1;
        }
        CohomologyProfile {
            dims: map,
            reduced,
            euler_reduced: euler,
        }
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    /// Degrees with nonzero cohomology.
    pub fn support(&self) -> Vec<i64> {
        self.dims.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }
}

impl OrderComplex {
    /// Order complex of `elements` with the order inherited from `p`.
    pub fn build(p: &RankedPoset, elements: &[ElemId]) -> Self {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        let m = elements.len();
        let less: Vec<Vec<bool>> = (0..m)
            .map(|i| (0..m).map(|j| p.lt(elements[i], elements[j])).collect())
            .collect();
        let mut cells: Vec<Vec<Vec<ElemId>>> = Vec::new();
        // Chains by position, extended upward in lexicographic order.
        let mut layer: Vec<Vec<usize>> = (0..m).map(|i| vec![i]).collect();
        while !layer.is_empty() {
            cells.push(
                layer
                    .iter()
                    .map(|c| c.iter().map(|&i| elements[i]).collect())
                    .collect(),
            );
            let mut next = Vec::new();
            for c in &layer {
                let last = *c.last().expect("chains are nonempty");
                for j in last + 1..m {
                    if less[last][j] {
                        let mut e = c.clone();
                        e.push(j);
                        next.push(e);
                    }
                }
            }
            layer = next;
        }
        let index = cells
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
            .collect();
        let complex = OrderComplex {
            elements,
            less,
            cells,
            index,
        };
        complex.assert_d_squared_zero();
        complex
    }

    pub fn of_subposet(s: &SubPoset<'_>) -> Self {
        OrderComplex::build(s.parent(), s.elements())
    }

    /// Parent ids of the vertices, ascending.
    pub fn elements(&self) -> &[ElemId] {
        &self.elements
    }

    /// Top dimension, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self, n: usize) -> &[Vec<ElemId>] {
        self.cells.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn num_cells(&self, n: usize) -> usize {
        self.cells(n).len()
    }

    /// Cell counts by dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn cell_index(&self, n: usize, cell: &[ElemId]) -> Option<usize> {
        self.index.get(n).and_then(|m| m.get(cell).copied())
    }

    /// `χ̃ = -1 + Σ (-1)^n #cells_n`.
    pub fn euler_from_cells(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n % 2 == 0 {
                    c.len() as i64
                } else {
                    -(c.len() as i64)
                }
            })
            .sum::<i64>()
            - 1
    }

    fn position(&self, x: ElemId) -> usize {
        self.elements
            .binary_search(&x)
            .expect("vertex of the complex")
    }

    /// Nonzero entries of `d(cell)` as `(row, ±1)` pairs, in row order.
    fn coboundary_column(&self, n: usize, cell: &[ElemId]) -> Vec<(usize, i64)> {
        let pos: Vec<usize> = cell.iter().map(|&x| self.position(x)).collect();
        let mut out = Vec::new();
        for x in 0..self.elements.len() {
            // Insertion slot j: everything before is below x, everything after above.
            let j = pos.iter().take_while(|&&q| q < x).count();
            if pos.get(j) == Some(&x) {
                continue;
            }
            let fits = pos[..j].iter().all(|&q| self.less[q][x])
                && pos[j..].iter().all(|&q| self.less[x][q]);
            if !fits {
                continue;
            }
            let mut coface: Vec<ElemId> = cell.to_vec();
            coface.insert(j, self.elements[x]);
            let row = self.index[n + 1][&coface];
            out.push((row, if j % 2 == 0 { 1 } else { -1 }));
        }
        out.sort_unstable();
        out
    }

    fn assert_d_squared_zero(&self) {
        for n in 0..self.cells.len().saturating_sub(2) {
            for cell in &self.cells[n] {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for (r, s) in self.coboundary_column(n, cell) {
                    for (r2, s2) in self.coboundary_column(n + 1, &self.cells[n + 1][r]) {
                        *acc.entry(r2).or_insert(0) += s * s2;
                    }
                }
                assert!(acc.values().all(|&v| v == 0), "d∘d ≠ 0 on an order complex");
            }
        }
    }

    /// `d^n : C^n -> C^{n+1}` as a `#cells_{n+1} × #cells_n` matrix.
    pub fn coboundary<F: Field>(&self, field: &F, n: usize) -> Matrix<F::Elem> {
        let rows = self.num_cells(n + 1);
        let cols = self.num_cells(n);
        let mut m = Matrix::zeros(field, rows, cols);
        for (c, cell) in self.cells(n).iter().enumerate() {
            for (r, s) in self.coboundary_column(n, cell) {
                m.set(r, c, field.from_i64(s));
            }
        }
        m
    }

    /// The augmentation `F -> C^0`, `1 ↦ Σ` of all vertices.
    pub fn augmentation<F: Field>(&self, field: &F) -> Matrix<F::Elem> {
        let n0 = self.num_cells(0);
        Matrix::from_rows((0..n0).map(|_| vec![field.one()]).collect(), 1)
    }

    /// Term dims and maps of the cochain complex, starting in degree `-1`
    /// when reduced and `0` otherwise.
    pub fn cochain_complex<F: Field>(
        &self,
        field: &F,
        reduced: bool,
    ) -> (i64, Vec<usize>, Vec<Matrix<F::Elem>>) {
        let mut dims = Vec::new();
        let mut maps = Vec::new();
        if reduced {
            dims.push(1);
            maps.push(self.augmentation(field));
        }
        for n in 0..self.cells.len() {
            dims.push(self.num_cells(n));
            if n + 1 < self.cells.len() {
                maps.push(self.coboundary(field, n));
            }
        }
        if reduced && self.cells.is_empty() {
            maps.clear();
        }
        (if reduced { -1 } else { 0 }, dims, maps)
    }

    pub fn cohomology<F: Field>(&self, field: &F, reduced: bool) -> CohomologyProfile {
        let (start, dims, maps) = self.cochain_complex(field, reduced);
        CohomologyProfile::from_dims(start, &dims_from_ranks(field, &dims, &maps), reduced)
    }

    pub fn reduced_cohomology<F: Field>(&self, field: &F) -> CohomologyProfile {
        self.cohomology(field, true)
    }

    /// Unreduced cohomology groups with representatives, degree `n` at index `n`.
    pub fn cohomology_groups<F: Field>(&self, field: &F) -> Vec<CohomologyGroup<F::Elem>> {
        let (_, dims, maps) = self.cochain_complex(field, false);
        complex_cohomology(field, &dims, &maps).expect("order complex coboundaries compose to zero")
    }

    /// For each cell of `sub`, its index here; errors if `sub` is not a
    /// subcomplex.
    pub fn embedding(&self, sub: &OrderComplex) -> Result<Vec<Vec<usize>>, ComplexError> {
        sub.cells
            .iter()
            .enumerate()
            .map(|(n, cs)| {
                cs.iter()
                    .map(|c| {
                        self.cell_index(n, c).ok_or_else(|| {
                            ComplexError::NotSubcomplex(c.iter().map(|x| x.to_string()).collect())
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Cohomology of the cochains of `self` vanishing on `sub`.
    pub fn relative_cohomology<F: Field>(
        &self,
        field: &F,
        sub: &OrderComplex,
    ) -> Result<CohomologyProfile, ComplexError> {
        let (dims, maps) = self.relative_complex(field, sub)?;
        Ok(CohomologyProfile::from_dims(
            0,
            &dims_from_ranks(field, &dims, &maps),
            false,
        ))
    }

    /// Dims and maps of `C(Y, Z)` on the cells of `Y` outside `Z`.
    pub fn relative_complex<F: Field>(
        &self,
        field: &F,
        sub: &OrderComplex,
    ) -> Result<(Vec<usize>, Vec<Matrix<F::Elem>>), ComplexError> {
        let emb = self.embedding(sub)?;
        let keep: Vec<Vec<usize>> = (0..self.cells.len())
            .map(|n| {
                let mut inside = vec![false; self.num_cells(n)];
                if let Some(e) = emb.get(n) {
                    for &i in e {
                        inside[i] = true;
                    }
                }
                (0..inside.len()).filter(|&i| !inside[i]).collect()
            })
            .collect();
        let dims: Vec<usize> = keep.iter().map(Vec::len).collect();
        let maps = (0..self.cells.len().saturating_sub(1))
            .map(|n| self.coboundary(field, n).submatrix(&keep[n + 1], &keep[n]))
            .collect();
        Ok((dims, maps))
    }
}

fn dims_from_ranks<F: Field>(field: &F, dims: &[usize], maps: &[Matrix<F::Elem>]) -> Vec<usize> {
    let ranks: Vec<usize> = maps.iter().map(|m| rank(field, m)).collect();
    (0..dims.len())
        .map(|n| {
            let out = ranks.get(n).copied().unwrap_or(0);
            let inc = if n == 0 { 0 } else { ranks[n - 1] };
            dims[n] - out - inc
        })
        .collect()
}

/// Reduced cohomology of `Δ((a, b))`.
pub fn interval_space_profile<F: Field>(
    p: &RankedPoset,
    a: ElemId,
    b: ElemId,
    field: &F,
) -> Result<CohomologyProfile, PosetError> {
    let open = p.subposet(SubPosetKind::OpenInterval { low: a, high: b })?;
    Ok(OrderComplex::of_subposet(&open).reduced_cohomology(field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, PrimeField, Rationals};
    use crate::poset::{generate, parse};

    fn gen(s: &str) -> RankedPoset {
        generate(&s.parse().unwrap(), 0).unwrap()
    }

    #[test]
    fn empty_complex() {
        let p = gen("chain:1");
        let c = OrderComplex::build(&p, &[]);
        assert!(c.is_empty());
        let h = c.reduced_cohomology(&Rationals);
        assert_eq!(h.dim(-1), 1);
        assert_eq!(h.euler_reduced, -1);
        assert_eq!(c.euler_from_cells(), -1);
    }

    #[test]
    fn antichain_of_two() {
        let p = parse("a > *\nb > *").unwrap();
        let c = OrderComplex::build(&p, &[1, 2]);
        assert_eq!(c.f_vector(), vec![2]);
        let h = c.reduced_cohomology(&Rationals);
        assert_eq!(h.support(), vec![0]);
        assert_eq!(h.dim(0), 1);
        let u = c.cohomology(&Rationals, false);
        assert_eq!(u.dim(0), 2);
        assert_eq!(u.euler_reduced, 1);
    }

    #[test]
    fn insertion_signs() {
        // Chain a < b < c: d(b) = c - a... from the insertion rule:
        // inserting a before b gives +1, inserting c after b gives -1.
        let p = gen("chain:3");
        let c = OrderComplex::build(&p, &[1, 2, 3]);
        let d0 = c.coboundary(&Rationals, 0);
        let q = Rationals;
        let col_b = c.cell_index(0, &[2]).unwrap();
        let ab = c.cell_index(1, &[1, 2]).unwrap();
        let bc = c.cell_index(1, &[2, 3]).unwrap();
        assert_eq!(*d0.get(ab, col_b), q.from_i64(1));
        assert_eq!(*d0.get(bc, col_b), q.from_i64(-1));
        // Middle insertion into (a, c) has sign -1.
        let d1 = c.coboundary(&q, 1);
        let ac = c.cell_index(1, &[1, 3]).unwrap();
        let abc = c.cell_index(2, &[1, 2, 3]).unwrap();
        assert_eq!(*d1.get(abc, ac), q.from_i64(-1));
        assert_eq!(*d1.get(abc, ab), q.from_i64(1));
        assert_eq!(*d1.get(abc, bc), q.from_i64(1));
    }

    /// Brute-force the image sizes of a coboundary over F_p by enumerating
    /// every cochain, giving rank = log_p |image|.
    fn brute_rank(m: &Matrix<u64>, p: u64) -> usize {
        let cols = m.cols();
        let mut images = std::collections::HashSet::new();
        let total = p.pow(cols as u32);
        for code in 0..total {
            let mut v = Vec::with_capacity(cols);
            let mut c = code;
            for _ in 0..cols {
                v.push(c % p);
                c /= p;
            }
            images.insert(m.apply(&PrimeField::new(p), &v));
        }
        let mut r = 0;
        let mut size = 1;
        while size < images.len() {
            size *= p as usize;
            r += 1;
        }
        r
    }

    #[test]
    fn hexagon_from_b3() {
        let b3 = gen("boolean:3");
        let top = b3.maximal_elements()[0];
        let open = b3
            .subposet(SubPosetKind::OpenInterval { low: 0, high: top })
            .unwrap();
        let c = OrderComplex::of_subposet(&open);
        assert_eq!(c.f_vector(), vec![6, 6]);
        let f2 = PrimeField::new(2);
        let d0 = c.coboundary(&f2, 0);
        let r = brute_rank(&d0, 2);
        assert_eq!(r, 5);
        // H̃^0 = 6 - 1 - 5 = 0 and H̃^1 = 6 - 5 = 1.
        let h = c.reduced_cohomology(&f2);
        assert_eq!(h.dim(0), 0);
        assert_eq!(h.dim(1), 1);
        assert_eq!(h.support(), vec![1]);
        let hq = interval_space_profile(&b3, 0, top, &Rationals).unwrap();
        assert_eq!(hq, h);
    }

    #[test]
    fn cone_is_acyclic() {
        let b3 = gen("boolean:3");
        let all: Vec<ElemId> = b3.non_star().collect();
        let c = OrderComplex::build(&b3, &all);
        assert!(c.reduced_cohomology(&Rationals).is_zero());
        assert_eq!(c.euler_from_cells(), 0);
    }

    #[test]
    fn sphere_from_simplex_boundary() {
        let s = gen("simplex_boundary:3");
        let all: Vec<ElemId> = s.non_star().collect();
        let c = OrderComplex::build(&s, &all);
        for spec in [FieldSpec::RATIONALS, FieldSpec::F2] {
            let h = crate::dispatch_field!(spec, f => c.reduced_cohomology(&f));
            assert_eq!(h.support(), vec![2]);
            assert_eq!(h.dim(2), 1);
            assert_eq!(h.euler_reduced, c.euler_from_cells());
        }
    }

    #[test]
    fn short_interval_is_empty() {
        let b3 = gen("boolean:3");
        let a = b3.id("s1").unwrap();
        let h = interval_space_profile(&b3, 0, a, &Rationals).unwrap();
        assert_eq!(h.support(), vec![-1]);
        assert!(interval_space_profile(&b3, a, 0, &Rationals).is_err());
    }

    #[test]
    fn relative_of_cone_over_sphere() {
        // Y = cone over S^2, Z = S^2: H^n(Y, Z) = H̃^{n-1}(S^2).
        let h = hat(&gen("simplex_boundary:3"));
        let y_el: Vec<ElemId> = h.non_star().collect();
        let z_el: Vec<ElemId> = y_el.iter().copied().filter(|&x| h.rank(x) < 4).collect();
        let y = OrderComplex::build(&h, &y_el);
        let z = OrderComplex::build(&h, &z_el);
        let rel = y.relative_cohomology(&Rationals, &z).unwrap();
        assert_eq!(rel.support(), vec![3]);
        assert!(z.relative_cohomology(&Rationals, &y).is_err());
    }

    fn hat(p: &RankedPoset) -> RankedPoset {
        crate::poset::hat(p).unwrap()
    }
}
