//! `Ext_R^{i,j}(F, F)` from a minimal graded free resolution of the trivial
//! module, built one internal degree at a time.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::field::{Field, FieldSpec};
use crate::linalg::{kernel_basis, Matrix, Subspace};
use crate::poset::RankedPoset;
use crate::ralgebra::RAlgebra;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtBounds {
    pub max_hdeg: usize,
    /// Cap on internal degrees. Without one every degree that can carry a
    /// generator is visited, so the table is exact up to `max_hdeg`.
    pub max_internal_deg: Option<usize>,
    /// Refuse once a graded piece of a free module exceeds this dimension.
    pub max_module_dim: usize,
    /// Refuse once a matrix for one graded piece would exceed this many entries.
    pub max_matrix_entries: usize,
}

impl Default for ExtBounds {
    fn default() -> Self {
        ExtBounds {
            max_hdeg: 4,
            max_internal_deg: None,
            max_module_dim: 20_000,
            max_matrix_entries: 4_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtEntry {
    pub i: usize,
    pub j: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtTable {
    pub field: FieldSpec,
    pub max_hdeg: usize,
    /// Nonzero entries, ordered by `(i, j)`.
    pub entries: Vec<ExtEntry>,
    /// Whether the internal degrees were capped below the exact bound.
    pub truncated: bool,
}

impl ExtTable {
    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.entries
            .iter()
            .find(|e| e.i == i && e.j == j)
            .map_or(0, |e| e.dim)
    }

    /// `Ext^{i,j} = 0` whenever `i ≠ j`, up to `max_hdeg`.
    pub fn diagonal_vanishing(&self) -> bool {
        self.entries.iter().all(|e| e.i == e.j)
    }

    pub fn off_diagonal(&self) -> Vec<ExtEntry> {
        self.entries
            .iter()
            .copied()
            .filter(|e| e.i != e.j)
            .collect()
    }
}

type Sparse<E> = Vec<(usize, E)>;

/// Counts of each rank `1..=top` among the letters of a word.
type Multidegree = Vec<u8>;

/// The block `R(n, k)`, whose words use each rank in `k+1..=n+1` once.
type Block = (usize, usize);

/// `R` as a multigraded algebra. The relations are homogeneous in the ranks
/// of the letters and a word is nonzero only if its ranks drop one at a time,
/// so `R_μ` is a single block when `μ` is an interval and zero otherwise.
struct GradedAlgebra<E> {
    dims: HashMap<Block, usize>,
    /// `products[(A, B)][x][y]`: `x ∈ A` times `y ∈ B`, for `B` just below `A`.
    products: HashMap<(Block, Block), Vec<Vec<Sparse<E>>>>,
}

impl<E: Clone + PartialEq> GradedAlgebra<E> {
    fn new<F: Field<Elem = E>>(p: &RankedPoset, field: &F) -> Self {
        let r = RAlgebra::new(p, field.clone());
        let top = p.max_rank();
        let mut dims = HashMap::new();
        for n in 0..top {
            for k in 0..=n {
                dims.insert((n, k), r.dim(n, k));
            }
        }
        let mut products = HashMap::new();
        for n1 in 1..top {
            for k1 in 1..=n1 {
                for k2 in 0..k1 {
                    let (a, b) = ((n1, k1), (k1 - 1, k2));
                    let (ba, bb) = (r.block(a.0, a.1).unwrap(), r.block(b.0, b.1).unwrap());
                    let target = r.block(n1, k2).unwrap();
                    let table: Vec<Vec<Sparse<E>>> = ba
                        .basis_monomials()
                        .into_iter()
                        .map(|c1| {
                            bb.basis_monomials()
                                .into_iter()
                                .map(|c2| {
                                    if !p.covers(*c1.last().unwrap(), c2[0]) {
                                        return Vec::new();
                                    }
                                    target
                                        .class_of(field, &[c1, c2].concat())
                                        .expect("concatenated chain lies in its block")
                                        .into_iter()
                                        .enumerate()
                                        .filter(|(_, c)| !field.is_zero(c))
                                        .collect()
                                })
                                .collect()
                        })
                        .collect();
                    products.insert((a, b), table);
                }
            }
        }
        GradedAlgebra { dims, products }
    }

    /// `Ok(None)` for degree zero, `Ok(Some(block))` for an interval, `Err`
    /// when `R_μ = 0`.
    fn block_of(&self, mu: &[u8]) -> Result<Option<Block>, ()> {
        let Some(lo) = mu.iter().position(|&c| c != 0) else {
            return Ok(None);
        };
        let hi = mu.iter().rposition(|&c| c != 0).unwrap();
        if mu[lo..=hi].iter().all(|&c| c == 1) {
            Ok(Some((hi, lo)))
        } else {
            Err(())
        }
    }

    fn dim(&self, b: Option<Block>) -> usize {
        b.map_or(1, |b| self.dims[&b])
    }
}

fn sub(mu: &[u8], nu: &[u8]) -> Option<Multidegree> {
    mu.iter().zip(nu).map(|(&a, &b)| a.checked_sub(b)).collect()
}

fn total(mu: &[u8]) -> usize {
    mu.iter().map(|&c| c as usize).sum()
}

/// Generators of one free module, with their images one step down as
/// sparse vectors sorted by position.
struct Stage<E> {
    degrees: Vec<Multidegree>,
    images: Vec<Sparse<E>>,
}

type Layout = (Vec<(usize, Option<Block>, usize)>, usize);

impl<E> Stage<E> {
    /// `(g, block of μ - deg g, offset)` for each generator contributing to
    /// the degree-`μ` piece, and that piece's dimension.
    fn layout(&self, alg: &GradedAlgebra<impl Clone + PartialEq>, mu: &[u8]) -> Layout {
        let mut parts = Vec::new();
        let mut size = 0;
        for (g, d) in self.degrees.iter().enumerate() {
            let Some(rest) = sub(mu, d) else { continue };
            let Ok(b) = alg.block_of(&rest) else { continue };
            parts.push((g, b, size));
            size += alg.dim(b);
        }
        (parts, size)
    }
}

struct Echelon<E> {
    rows: Vec<(usize, Vec<E>)>,
}

impl<E: Clone + PartialEq> Echelon<E> {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    /// Insert `v` if it is independent of the rows so far; report whether it was.
    fn insert<F: Field<Elem = E>>(&mut self, field: &F, v: &[E]) -> bool {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if field.is_zero(&w[*p]) {
                continue;
            }
            let f = w[*p].clone();
            for (j, x) in row.iter().enumerate().skip(*p) {
                if !field.is_zero(x) {
                    field.sub_mul_assign(&mut w[j], &f, x);
                }
            }
        }
        let Some(p) = w.iter().position(|x| !field.is_zero(x)) else {
            return false;
        };
        let inv = field.inv(&w[p]);
        for x in w.iter_mut().skip(p) {
            *x = field.mul(x, &inv);
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, w));
        true
    }
}

/// Columns of the degree-`μ` piece of `d_i : P_i -> P_{i-1}`, using the
/// generators of `stage` of degree strictly below `μ` when `proper`.
fn differential<F: Field>(
    field: &F,
    alg: &GradedAlgebra<F::Elem>,
    stage: &Stage<F::Elem>,
    prev: &Stage<F::Elem>,
    mu: &[u8],
    proper: bool,
) -> Vec<Vec<F::Elem>> {
    let (targets, size) = prev.layout(alg, mu);
    let offset_of: HashMap<usize, usize> = targets.iter().map(|&(h, _, o)| (h, o)).collect();
    let (parts, _) = stage.layout(alg, mu);
    let mut layouts: HashMap<Multidegree, Vec<(usize, Option<Block>, usize)>> = HashMap::new();
    let mut columns = Vec::new();
    for (g, a, _) in parts {
        if proper && a.is_none() {
            continue;
        }
        // image(g) lives in (P_{i-1})_{deg g}; multiply each component by x.
        let sources = layouts
            .entry(stage.degrees[g].clone())
            .or_insert_with(|| prev.layout(alg, &stage.degrees[g]).0);
        for x in 0..alg.dim(a) {
            let mut col = vec![field.zero(); size];
            for (pos, c) in &stage.images[g] {
                let s = sources.partition_point(|&(_, _, off)| off <= *pos) - 1;
                let (h, b, off) = sources[s];
                let Some(&t0) = offset_of.get(&h) else {
                    continue;
                };
                let y = pos - off;
                match (a, b) {
                    (None, _) => {
                        col[t0 + y] = field.add(&col[t0 + y], c);
                    }
                    (Some(_), None) => {
                        col[t0 + x] = field.add(&col[t0 + x], c);
                    }
                    (Some(a), Some(b)) => {
                        let Some(table) = alg.products.get(&(a, b)) else {
                            continue;
                        };
                        for (z, e) in &table[x][y] {
                            col[t0 + z] = field.add(&col[t0 + z], &field.mul(c, e));
                        }
                    }
                }
            }
            columns.push(col);
        }
    }
    columns
}

/// Betti numbers of the minimal resolution of `F` over `R`, which are the
/// dimensions of `Ext^{i,j}`. The resolution is built one multidegree at a
/// time, in order of total degree.
pub fn ext_table<F: Field>(
    p: &RankedPoset,
    field: &F,
    bounds: ExtBounds,
) -> Result<ExtTable, AnalysisError> {
    let alg = GradedAlgebra::new(p, field);
    let top = p.max_rank();
    let blocks: Vec<Block> = alg.dims.keys().copied().collect();
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    counts.insert((0, 0), 1);
    let mut truncated = false;
    let mut stages: Vec<Stage<F::Elem>> = vec![Stage {
        degrees: vec![vec![0; top]],
        images: vec![vec![(0, field.one())]],
    }];
    for i in 1..=bounds.max_hdeg {
        let prev = &stages[i - 1];
        let prev_prev = (i >= 2).then(|| &stages[i - 2]);
        let mut degrees: BTreeSet<(usize, Multidegree)> = BTreeSet::new();
        for d in &prev.degrees {
            for &(n, k) in &blocks {
                let mut mu = d.clone();
                mu[k..=n].iter_mut().for_each(|c| *c += 1);
                degrees.insert((total(&mu), mu));
            }
        }
        let mut stage = Stage {
            degrees: Vec::new(),
            images: Vec::new(),
        };
        for (j, mu) in degrees {
            if bounds.max_internal_deg.is_some_and(|cap| j > cap) {
                truncated = true;
                continue;
            }
            let prev_dim = prev.layout(&alg, &mu).1;
            let cur_dim = stage.layout(&alg, &mu).1;
            let rows = prev_prev.map_or(0, |pp| pp.layout(&alg, &mu).1);
            if prev_dim.max(cur_dim) > bounds.max_module_dim {
                return Err(AnalysisError::BoundsExceeded(format!(
                    "free module piece of dimension {} at homological degree {i}, internal degree {j} (limit {})",
                    prev_dim.max(cur_dim),
                    bounds.max_module_dim
                )));
            }
            let entries = prev_dim.saturating_mul(rows.max(cur_dim));
            if entries > bounds.max_matrix_entries {
                return Err(AnalysisError::BoundsExceeded(format!(
                    "matrix with {entries} entries at homological degree {i}, internal degree {j} (limit {})",
                    bounds.max_matrix_entries
                )));
            }
            // Kernel of d_{i-1} in degree μ; d_0 is the augmentation, zero
            // in positive degree.
            let kernel = match prev_prev {
                Some(pp) => {
                    let cols = differential(field, &alg, prev, pp, &mu, false);
                    if rows == 0 {
                        Subspace::full(field, prev_dim)
                    } else {
                        kernel_basis(field, &Matrix::from_columns(field, &cols, rows))
                    }
                }
                None => Subspace::full(field, prev_dim),
            };
            let mut span = Echelon::new();
            for c in differential(field, &alg, &stage, prev, &mu, true) {
                span.insert(field, &c);
            }
            let mut fresh = 0;
            for v in kernel.basis() {
                if span.insert(field, v) {
                    stage.degrees.push(mu.clone());
                    stage.images.push(
                        v.iter()
                            .enumerate()
                            .filter(|(_, c)| !field.is_zero(c))
                            .map(|(j, c)| (j, c.clone()))
                            .collect(),
                    );
                    fresh += 1;
                }
            }
            if fresh > 0 {
                *counts.entry((i, j)).or_insert(0) += fresh;
            }
        }
        stages.push(stage);
    }
    Ok(ExtTable {
        field: field.spec(),
        max_hdeg: bounds.max_hdeg,
        entries: counts
            .into_iter()
            .map(|((i, j), dim)| ExtEntry { i, j, dim })
            .collect(),
        truncated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual_koszul::dual_dims;
    use crate::field::{PrimeField, Rationals};
    use crate::poset::{generate, parse};

    fn gen(s: &str) -> RankedPoset {
        generate(&s.parse().unwrap(), 0).unwrap()
    }

    #[test]
    fn chain_of_rank_two() {
        // R = F<a, b>/(a a, a b, b b, b a ... ) leaves r_a, r_b with all
        // products zero, so Ext is the free algebra's dual: 2^i on the diagonal.
        let c = gen("chain:2");
        let t = ext_table(&c, &Rationals, ExtBounds::default()).unwrap();
        assert!(t.diagonal_vanishing());
        for i in 0..=4 {
            assert_eq!(t.dim(i, i), 1 << i);
        }
    }

    #[test]
    fn koszul_diagonal_matches_dual() {
        for s in ["boolean:2", "boolean:3", "simplex_boundary:2"] {
            let p = gen(s);
            let t = ext_table(&p, &PrimeField::new(2), ExtBounds::default()).unwrap();
            assert!(t.diagonal_vanishing(), "{s}: {:?}", t.off_diagonal());
            let d = dual_dims(&p, 4);
            for i in 0..=4 {
                assert_eq!(t.dim(i, i) as u128, d[i], "{s} at {i}");
            }
            assert_eq!(t.dim(1, 1), p.len() - 1);
        }
    }

    #[test]
    fn non_koszul_has_off_diagonal_classes() {
        // Uniform, but (*, X) is a circle: two faces cone off two of its
        // three edges.
        let p = parse(
            "a > *\nb > *\nc > *\ne1 > a\ne1 > b\ne2 > b\ne2 > c\ne3 > a\ne3 > c\n\
             f1 > e1\nf1 > e2\nf2 > e2\nf2 > e3\nX > f1\nX > f2",
        )
        .unwrap();
        for spec in [FieldSpec::RATIONALS, FieldSpec::F2] {
            let t =
                crate::dispatch_field!(spec, f => ext_table(&p, &f, ExtBounds::default())).unwrap();
            assert_eq!(t.dim(0, 0), 1);
            assert_eq!(t.dim(1, 1), 9);
            assert_eq!(t.dim(3, 4), 1);
            assert!(!t.diagonal_vanishing());
        }
    }

    #[test]
    fn non_uniform_can_have_diagonal_ext() {
        let p = parse("p > *\nq > *\nu > p\nv > q\nx > u\nx > v").unwrap();
        let t = ext_table(&p, &Rationals, ExtBounds::default()).unwrap();
        assert_eq!(t.dim(1, 1), 5);
        assert!(t.diagonal_vanishing());
    }

    #[test]
    fn guard() {
        let b = gen("boolean:4");
        let bounds = ExtBounds {
            max_module_dim: 50,
            ..ExtBounds::default()
        };
        assert!(matches!(
            ext_table(&b, &PrimeField::new(2), bounds),
            Err(AnalysisError::BoundsExceeded(_))
        ));
    }
}
