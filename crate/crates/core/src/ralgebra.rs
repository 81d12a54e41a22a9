//! The quadratic algebra `R` of a ranked poset.
//!
//! `R` has a generator `r_x` for every `x ≠ *`, with `r_x r_y = 0` unless `x`
//! covers `y`, and `r_x · Σ_{x→y, y≠*} r_y = 0`. Products of non-covers vanish,
//! so `R` is spanned by chain monomials `r_{b_1} ⋯ r_{b_j}` with each `b_i`
//! covering `b_{i+1}`. All relations are homogeneous in the top and bottom
//! ranks, so `R` splits into blocks `R(n, k)` spanned by chains from rank
//! `n + 1` down to rank `k + 1`, each a quotient of its chain span.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::PosetError;
use crate::field::{Field, FieldSpec};
use crate::linalg::{
    complex_cohomology, complex_cohomology_dims, quotient_coordinates, CohomologyGroup, Matrix,
    QuotientMap, Subspace,
};
use crate::order_complex::OrderComplex;
use crate::poset::{ElemId, RankedPoset};
use crate::series::TruncatedSeries;

/// `r_{b_1} ⋯ r_{b_j}` for a cover chain `b_1 → ⋯ → b_j`, top first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChainMonomial(pub Vec<ElemId>);

impl ChainMonomial {
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn head(&self) -> ElemId {
        self.0[0]
    }

    pub fn last(&self) -> ElemId {
        *self.0.last().expect("monomials are nonempty")
    }

    pub fn display(&self, p: &RankedPoset) -> String {
        p.names_of(&self.0).join("·")
    }
}

/// Cover chains (top first, no star) from rank `top` down to rank `bottom`,
/// in lexicographic order of ids.
pub fn cover_chains(p: &RankedPoset, top: usize, bottom: usize) -> Vec<Vec<ElemId>> {
    assert!(bottom >= 1 && bottom <= top.max(1), "bad rank range");
    let mut out = Vec::new();
    let mut stack: Vec<Vec<ElemId>> = p
        .elements_of_rank(top)
        .into_iter()
        .rev()
        .map(|x| vec![x])
        .collect();
    while let Some(c) = stack.pop() {
        let last = *c.last().expect("nonempty");
        if p.rank(last) == bottom {
            out.push(c);
            continue;
        }
        let lows: Vec<ElemId> = p.generator_covers(last).collect();
        for &y in lows.iter().rev() {
            let mut e = c.clone();
            e.push(y);
            stack.push(e);
        }
    }
    out
}

/// Monomials spanning `R(n, k)` and the relations among them.
///
/// Each relation is a sum of monomials with coefficient 1, returned as
/// indices into the monomial list. For each monomial position `x = b_i` with
/// a successor, the relation `u · r_x Σ_{x→y} r_y · w` is emitted once, where
/// `u = b_1 ⋯ b_{i-1}`, `w = b_{i+2} ⋯` and `y` must cover the head of `w`.
pub fn relation_spanners(
    p: &RankedPoset,
    n: usize,
    k: usize,
) -> (Vec<Vec<ElemId>>, Vec<Vec<usize>>) {
    assert!(k <= n, "R(n, k) needs k <= n");
    if n + 1 > p.max_rank() {
        return (Vec::new(), Vec::new());
    }
    let monomials = cover_chains(p, n + 1, k + 1);
    let index: HashMap<&[ElemId], usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    let mut seen: HashSet<(&[ElemId], &[ElemId])> = HashSet::new();
    let mut spanners = Vec::new();
    for m in &monomials {
        for i in 0..m.len().saturating_sub(1) {
            let (prefix, suffix) = (&m[..=i], &m[i + 2..]);
            if !seen.insert((prefix, suffix)) {
                continue;
            }
            let x = m[i];
            let mut terms: Vec<usize> = p
                .generator_covers(x)
                .filter(|&y| suffix.first().map_or(true, |&h| p.covers(y, h)))
                .map(|y| {
                    let mut c = prefix.to_vec();
                    c.push(y);
                    c.extend_from_slice(suffix);
                    index[c.as_slice()]
                })
                .collect();
            terms.sort_unstable();
            spanners.push(terms);
        }
    }
    (monomials, spanners)
}

/// One block `R(n, k)` with its chain basis and quotient.
#[derive(Debug, Clone)]
pub struct RnkSpace<E> {
    pub n: usize,
    pub k: usize,
    monomials: Vec<Vec<ElemId>>,
    index: HashMap<Vec<ElemId>, usize>,
    quotient: QuotientMap<E>,
}

impl<E: Clone + PartialEq> RnkSpace<E> {
    pub fn build<F: Field<Elem = E>>(p: &RankedPoset, n: usize, k: usize, field: &F) -> Self {
        let (monomials, spanners) = relation_spanners(p, n, k);
        let dim = monomials.len();
        let vectors = spanners
            .iter()
            .map(|terms| {
                let mut v = vec![field.zero(); dim];
                for &t in terms {
                    v[t] = field.add(&v[t], &field.one());
                }
                v
            })
            .collect();
        let quotient = quotient_coordinates(field, Subspace::span(field, dim, vectors));
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        RnkSpace {
            n,
            k,
            monomials,
            index,
            quotient,
        }
    }

    /// Dimension of the quotient.
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn monomials(&self) -> &[Vec<ElemId>] {
        &self.monomials
    }

    pub fn relations_dim(&self) -> usize {
        self.quotient.relations().dim()
    }

    pub fn quotient(&self) -> &QuotientMap<E> {
        &self.quotient
    }

    /// Monomials whose classes form the quotient basis.
    pub fn basis_monomials(&self) -> Vec<&[ElemId]> {
        self.quotient
            .basis_coordinates()
            .iter()
            .map(|&j| self.monomials[j].as_slice())
            .collect()
    }

    pub fn monomial_index(&self, chain: &[ElemId]) -> Option<usize> {
        self.index.get(chain).copied()
    }

    /// Quotient coordinates of a chain; `None` if the chain is not one of
    /// the spanning monomials (its class is then zero or of another block).
    pub fn class_of<F: Field<Elem = E>>(&self, field: &F, chain: &[ElemId]) -> Option<Vec<E>> {
        self.monomial_index(chain)
            .map(|j| self.quotient.project_unit(field, j))
    }

    /// Quotient coordinates of a vector in monomial coordinates.
    pub fn project<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Vec<E> {
        self.quotient.project(field, v)
    }
}

/// All blocks `R(n, k)`, `0 ≤ k ≤ n ≤ maxrank - 1`, over one field.
#[derive(Debug, Clone)]
pub struct RAlgebra<F: Field> {
    poset: RankedPoset,
    field: F,
    blocks: BTreeMap<(usize, usize), RnkSpace<F::Elem>>,
}

impl<F: Field> RAlgebra<F> {
    pub fn new(p: &RankedPoset, field: F) -> Self {
        let top = p.max_rank();
        let keys: Vec<(usize, usize)> = (0..top)
            .flat_map(|n| (0..=n).map(move |k| (n, k)))
            .collect();
        let blocks = keys
            .par_iter()
            .map(|&(n, k)| ((n, k), RnkSpace::build(p, n, k, &field)))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        RAlgebra {
            poset: p.clone(),
            field,
            blocks,
        }
    }

    pub fn poset(&self) -> &RankedPoset {
        &self.poset
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Number of ranks above the star; blocks have `n < top()`.
    pub fn top(&self) -> usize {
        self.poset.max_rank()
    }

    pub fn block(&self, n: usize, k: usize) -> Option<&RnkSpace<F::Elem>> {
        self.blocks.get(&(n, k))
    }

    pub fn dim(&self, n: usize, k: usize) -> usize {
        self.block(n, k).map_or(0, RnkSpace::dim)
    }

    /// Left multiplication by `Σ_{rk y = n+2} r_y` from `R(n, k)` to
    /// `R(n+1, k)`, in quotient coordinates.
    pub fn d_gamma_matrix(&self, n: usize, k: usize) -> Matrix<F::Elem> {
        let f = &self.field;
        let Some(src) = self.block(n, k) else {
            return Matrix::zeros(f, self.dim(n + 1, k), 0);
        };
        let Some(dst) = self.block(n + 1, k) else {
            return Matrix::zeros(f, 0, src.dim());
        };
        let columns: Vec<Vec<F::Elem>> = src
            .basis_monomials()
            .into_iter()
            .map(|m| {
                let mut v = vec![f.zero(); dst.monomials.len()];
                for &y in self.poset.upper_covers(m[0]) {
                    let mut c = vec![y];
                    c.extend_from_slice(m);
                    let j = dst.index[&c];
                    v[j] = f.add(&v[j], &f.one());
                }
                dst.project(f, &v)
            })
            .collect();
        Matrix::from_columns(f, &columns, dst.dim())
    }

    /// `R(k,k) → R(k+1,k) → ⋯ → R(top-1, k)`, optionally preceded by
    /// `F → R(k,k)`, `1 ↦ Σ_{rk y = k+1} r_y`.
    pub fn complex(&self, k: usize, augmented: bool) -> (Vec<usize>, Vec<Matrix<F::Elem>>) {
        let f = &self.field;
        let mut dims = Vec::new();
        let mut maps = Vec::new();
        if augmented {
            dims.push(1);
            let d = self.dim(k, k);
            maps.push(Matrix::from_columns(f, &[vec![f.one(); d]], d));
        }
        for n in k..self.top() {
            dims.push(self.dim(n, k));
            if n + 1 < self.top() {
                maps.push(self.d_gamma_matrix(n, k));
            }
        }
        (dims, maps)
    }

    /// Cohomology groups of the column `k`, entry `i` in degree `n = k + i`.
    pub fn cohomology_groups(&self, k: usize) -> Vec<CohomologyGroup<F::Elem>> {
        let (dims, maps) = self.complex(k, false);
        complex_cohomology(&self.field, &dims, &maps).expect("d_Γ squares to zero")
    }

    pub fn internal_cohomology(&self) -> InternalCohomologyTable {
        let f = &self.field;
        let entries = (0..self.top())
            .into_par_iter()
            .flat_map_iter(|k| {
                let (dims, maps) = self.complex(k, false);
                let plain = complex_cohomology_dims(f, &dims, &maps).expect("d_Γ squares to zero");
                let (adims, amaps) = self.complex(k, true);
                let aug = complex_cohomology_dims(f, &adims, &amaps)
                    .expect("augmented d_Γ squares to zero");
                (k..self.top())
                    .map(|n| InternalCohomologyEntry {
                        n,
                        k,
                        dim: plain[n - k],
                        augmented_dim: aug[n - k + 1],
                    })
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        let mut entries = entries;
        entries.sort_by_key(|e| (e.n, e.k));
        InternalCohomologyTable {
            field: f.spec(),
            entries,
        }
    }

    /// `1 + Σ_m (Σ_{n-k+1=m} dim R(n,k)) t^m`
    pub fn hilbert(&self) -> TruncatedSeries {
        let mut s = TruncatedSeries::one();
        for (&(n, k), b) in &self.blocks {
            s.add_term(n - k + 1, b.dim() as i128);
        }
        s
    }

    /// Quotient coordinates of a chain monomial in its block.
    pub fn class_of(&self, chain: &[ElemId]) -> Option<(usize, usize, Vec<F::Elem>)> {
        let (top, bottom) = (self.poset.rank(chain[0]), self.poset.rank(*chain.last()?));
        if bottom == 0 || top == 0 {
            return None;
        }
        let (n, k) = (top - 1, bottom - 1);
        let v = self.block(n, k)?.class_of(&self.field, chain)?;
        Some((n, k, v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InternalCohomologyEntry {
    pub n: usize,
    pub k: usize,
    pub dim: usize,
    pub augmented_dim: usize,
}

/// `dim H_Γ(n, k)` and its augmented variant for `0 ≤ k ≤ n < maxrank`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InternalCohomologyTable {
    pub field: FieldSpec,
    pub entries: Vec<InternalCohomologyEntry>,
}

impl InternalCohomologyTable {
    fn entry(&self, n: usize, k: usize) -> Option<&InternalCohomologyEntry> {
        self.entries.iter().find(|e| e.n == n && e.k == k)
    }

    /// Zero outside the table.
    pub fn dim(&self, n: usize, k: usize) -> usize {
        self.entry(n, k).map_or(0, |e| e.dim)
    }

    pub fn augmented_dim(&self, n: usize, k: usize) -> usize {
        self.entry(n, k).map_or(0, |e| e.augmented_dim)
    }
}

pub fn rnk_space<F: Field>(p: &RankedPoset, n: usize, k: usize, field: &F) -> RnkSpace<F::Elem> {
    RnkSpace::build(p, n, k, field)
}

pub fn hilbert_r<F: Field>(p: &RankedPoset, field: F) -> TruncatedSeries {
    RAlgebra::new(p, field).hilbert()
}

pub fn d_gamma_matrix<F: Field>(p: &RankedPoset, n: usize, k: usize, field: F) -> Matrix<F::Elem> {
    RAlgebra::new(p, field).d_gamma_matrix(n, k)
}

pub fn internal_cohomology<F: Field>(p: &RankedPoset, field: F) -> InternalCohomologyTable {
    RAlgebra::new(p, field).internal_cohomology()
}

/// Whether `H_{Γ^{>k}}(n, j) = H_Γ(n + k, j + k)` for every entry of the
/// truncation's table.
pub fn rank_shift_check<F: Field>(p: &RankedPoset, k: usize, field: F) -> bool {
    let full = internal_cohomology(p, field.clone());
    let trunc = internal_cohomology(&p.truncation(k), field);
    let top = p.max_rank();
    trunc.entries.len() == (0..top.saturating_sub(k)).map(|n| n + 1).sum::<usize>()
        && trunc
            .entries
            .iter()
            .all(|e| e.dim == full.dim(e.n + k, e.k + k))
}

/// The two sides of a dimension identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionComparison {
    pub left: usize,
    pub right: usize,
}

impl DimensionComparison {
    pub fn agrees(&self) -> bool {
        self.left == self.right
    }
}

/// For `rk v = d + 1` and `0 ≤ k ≤ d - 1`: `dim R_{Γ_v}(d, k)` against
/// `dim H̃^{d-k-1}` of the order complex of `{y < v : rk y > k, y ≠ *}`.
pub fn top_block_dimension_check<F: Field>(
    p: &RankedPoset,
    v: ElemId,
    k: usize,
    field: &F,
) -> Result<DimensionComparison, PosetError> {
    let rv = p.rank(v);
    if v == p.star() || rv < 2 || k + 2 > rv {
        return Err(PosetError::RankOutOfRange(format!(
            "need rk(v) = d + 1 and 0 <= k <= d - 1, got rk('{}') = {rv}, k = {k}",
            p.element_name(v)
        )));
    }
    let d = rv - 1;
    let gv = p.lower_interval(v);
    let left = RnkSpace::build(&gv, d, k, field).dim();
    let elems: Vec<ElemId> = p
        .non_star()
        .filter(|&y| p.lt(y, v) && p.rank(y) > k)
        .collect();
    let right = OrderComplex::build(p, &elems)
        .reduced_cohomology(field)
        .dim(d as i64 - k as i64 - 1);
    Ok(DimensionComparison { left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::linalg::{mat_mul, rank};
    use crate::poset::{generate, parse};

    fn gen(s: &str) -> RankedPoset {
        generate(&s.parse().unwrap(), 3).unwrap()
    }

    #[test]
    fn spanners_by_hand() {
        let c = gen("chain:2");
        let (m, s) = relation_spanners(&c, 1, 0);
        assert_eq!(m, vec![vec![2, 1]]);
        assert_eq!(s, vec![vec![0]]);
        assert_eq!(RnkSpace::build(&c, 1, 0, &Rationals).dim(), 0);
        let b2 = gen("boolean:2");
        let (m, s) = relation_spanners(&b2, 1, 0);
        assert_eq!(m.len(), 2);
        assert_eq!(s, vec![vec![0, 1]]);
        assert_eq!(RnkSpace::build(&b2, 1, 0, &Rationals).dim(), 1);
        for n in 0..3 {
            assert!(relation_spanners(&gen("boolean:3"), n, n).1.is_empty());
        }
    }

    #[test]
    fn hilbert_series_by_hand() {
        assert_eq!(hilbert_r(&gen("chain:2"), Rationals).coeffs(), &[1, 2]);
        assert_eq!(hilbert_r(&gen("boolean:2"), Rationals).coeffs(), &[1, 3, 1]);
        assert_eq!(
            hilbert_r(&gen("chain:0"), Rationals),
            TruncatedSeries::one()
        );
        let b3 = gen("boolean:3");
        assert_eq!(hilbert_r(&b3, Rationals).coeff(1), b3.len() as i128 - 1);
    }

    #[test]
    fn chain_cohomology_and_dgamma() {
        let c = gen("chain:2");
        let r = RAlgebra::new(&c, Rationals);
        let d = r.d_gamma_matrix(0, 0);
        assert_eq!((d.rows(), d.cols()), (0, 1));
        let t = r.internal_cohomology();
        assert_eq!(t.dim(0, 0), 1);
        assert_eq!(t.dim(1, 1), 1);
        assert_eq!(t.dim(1, 0), 0);
        // The augmented complex kills the class of r_{c1} in H(0,0).
        assert_eq!(t.augmented_dim(0, 0), 0);
        assert_eq!(t.augmented_dim(1, 1), 0);
    }

    #[test]
    fn d_squared_zero_on_b3() {
        let b3 = gen("boolean:3");
        for spec in [FieldSpec::RATIONALS, FieldSpec::F2] {
            crate::dispatch_field!(spec, f => {
                let r = RAlgebra::new(&b3, f.clone());
                for k in 0..3 {
                    for n in k..2 {
                        let a = r.d_gamma_matrix(n, k);
                        let b = r.d_gamma_matrix(n + 1, k);
                        assert!(mat_mul(&f, &b, &a).is_zero(&f));
                    }
                }
            });
        }
    }

    #[test]
    fn rank_shift() {
        let b4 = gen("boolean:4");
        assert!(rank_shift_check(&b4, 0, Rationals));
        assert!(rank_shift_check(&b4, 1, Rationals));
        assert!(rank_shift_check(
            &gen("sphere_cross_interval_hat"),
            1,
            PrimeField::new(2)
        ));
    }

    #[test]
    fn top_block_dimension_small_cases() {
        let c = gen("chain:4");
        let top = c.maximal_elements()[0];
        // r_v r_{c3} = 0, and the complex is the single point c3.
        let r = top_block_dimension_check(&c, top, 2, &Rationals).unwrap();
        assert_eq!(r, DimensionComparison { left: 0, right: 0 });
        // k = 0: the chain c1 < c2 < c3 is contractible, and r_v R(2, 0) = 0.
        let r = top_block_dimension_check(&c, top, 0, &Rationals).unwrap();
        assert_eq!(r, DimensionComparison { left: 0, right: 0 });
        let b3 = gen("boolean:3");
        let top = b3.maximal_elements()[0];
        let r = top_block_dimension_check(&b3, top, 0, &Rationals).unwrap();
        assert!(r.agrees());
        assert_eq!(r.left, 1);
        assert!(top_block_dimension_check(&b3, top, 2, &Rationals).is_err());
    }

    /// Dimension of the degree-m part of the full tensor quotient
    /// `T(V) / (I_2)` built from words, with no use of chain monomials.
    fn tensor_quotient_dims<F: Field>(p: &RankedPoset, field: &F, max_deg: usize) -> Vec<usize> {
        let gens: Vec<ElemId> = p.non_star().collect();
        let g = gens.len();
        let slot = |x: ElemId| gens.iter().position(|&y| y == x).unwrap();
        // Quadratic relations as vectors in V⊗V (index a*g + b).
        let mut quad: Vec<Vec<i64>> = Vec::new();
        for &x in &gens {
            for &y in &gens {
                if !p.covers(x, y) {
                    let mut v = vec![0; g * g];
                    v[slot(x) * g + slot(y)] = 1;
                    quad.push(v);
                }
            }
            let mut v = vec![0; g * g];
            let mut any = false;
            for y in p.generator_covers(x) {
                v[slot(x) * g + slot(y)] = 1;
                any = true;
            }
            if any {
                quad.push(v);
            }
        }
        let mut dims = vec![1];
        for m in 1..=max_deg {
            let size = g.pow(m as u32);
            if m == 1 {
                dims.push(g);
                continue;
            }
            let mut rows: Vec<Vec<F::Elem>> = Vec::new();
            for i in 0..m - 1 {
                let left = g.pow(i as u32);
                let right = g.pow((m - 2 - i) as u32);
                for l in 0..left {
                    for r in 0..right {
                        for q in &quad {
                            let mut v = vec![field.zero(); size];
                            for (ab, &c) in q.iter().enumerate() {
                                if c != 0 {
                                    v[(l * g * g + ab) * right + r] = field.from_i64(c);
                                }
                            }
                            rows.push(v);
                        }
                    }
                }
            }
            let rk = if rows.is_empty() {
                0
            } else {
                rank(field, &Matrix::from_rows(rows, size))
            };
            dims.push(size - rk);
        }
        dims
    }

    #[test]
    fn blocks_match_tensor_quotient() {
        let posets = vec![
            gen("chain:3"),
            gen("boolean:2"),
            gen("simplex_boundary:2"),
            parse("a > *\nb > *\nc > a\nc > b\nd > a\ne > c\ne > d").unwrap(),
            parse("a > *\nb > *\nc > a\nd > a\nd > b\ne > c\ne > d").unwrap(),
        ];
        let f = PrimeField::new(101);
        for p in posets {
            assert!(p.len() <= 7);
            let h = hilbert_r(&p, f);
            let top = p.max_rank() + 1;
            let t = tensor_quotient_dims(&p, &f, top);
            for (m, &d) in t.iter().enumerate() {
                assert_eq!(h.coeff(m), d as i128, "degree {m} of {}", p.to_text());
            }
        }
    }
}
