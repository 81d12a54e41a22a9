//! The cochain map `Φ_Γ : C^n(Y) -> R(n, 0)` with `Y = Δ(Γ ∖ {*})`, sending a
//! cell `(b_0 < ⋯ < b_n)` to the class of `r_{b_n} ⋯ r_{b_0}` when
//! `rk b_i = i + 1` for every `i`, and to zero otherwise.

use serde::{Deserialize, Serialize};

use crate::dual_koszul::{cm_check, require_uniform};
use crate::error::AnalysisError;
use crate::field::{Field, FieldSpec};
use crate::linalg::{mat_mul, rank, Matrix, Subspace};
use crate::order_complex::OrderComplex;
use crate::poset::{ElemId, RankedPoset};
use crate::ralgebra::RAlgebra;

/// `Φ^n` for every degree `n` of `Y`, as `dim R(n,0) × #cells_n` matrices.
#[derive(Debug, Clone)]
pub struct PhiMatrices<E> {
    pub field: FieldSpec,
    pub matrices: Vec<Matrix<E>>,
    /// `rank Φ^n = dim R(n, 0)`
    pub surjective: Vec<bool>,
}

impl<E> PhiMatrices<E> {
    pub fn degree(&self, n: usize) -> Option<&Matrix<E>> {
        self.matrices.get(n)
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective.iter().all(|&s| s)
    }
}

fn is_rank_chain(p: &RankedPoset, cell: &[ElemId]) -> bool {
    cell.iter().enumerate().all(|(i, &b)| p.rank(b) == i + 1)
}

fn phi_matrix<F: Field>(r: &RAlgebra<F>, y: &OrderComplex, n: usize) -> Matrix<F::Elem> {
    let f = r.field();
    let p = r.poset();
    let rows = r.dim(n, 0);
    let cells = y.cells(n);
    let columns: Vec<Vec<F::Elem>> = cells
        .iter()
        .map(|cell| {
            if rows == 0 || !is_rank_chain(p, cell) {
                return vec![f.zero(); rows];
            }
            let chain: Vec<ElemId> = cell.iter().rev().copied().collect();
            r.block(n, 0)
                .and_then(|b| b.class_of(f, &chain))
                .expect("a rank chain is a monomial of R(n, 0)")
        })
        .collect();
    Matrix::from_columns(f, &columns, rows)
}

fn order_complex_of(p: &RankedPoset) -> OrderComplex {
    let elems: Vec<ElemId> = p.non_star().collect();
    OrderComplex::build(p, &elems)
}

fn build_from<F: Field>(r: &RAlgebra<F>, y: &OrderComplex) -> PhiMatrices<F::Elem> {
    let f = r.field();
    let degrees = y.dim().map_or(0, |d| d + 1);
    let matrices: Vec<Matrix<F::Elem>> = (0..degrees).map(|n| phi_matrix(r, y, n)).collect();
    let surjective = matrices
        .iter()
        .enumerate()
        .map(|(n, m)| m.cols() == 0 && r.dim(n, 0) == 0 || rank(f, m) == r.dim(n, 0))
        .collect();
    PhiMatrices {
        field: f.spec(),
        matrices,
        surjective,
    }
}

pub fn build_phi<F: Field>(p: &RankedPoset, field: &F) -> PhiMatrices<F::Elem> {
    let r = RAlgebra::new(p, field.clone());
    build_from(&r, &order_complex_of(p))
}

/// `Φ^{n+1} d_Y^n = (-1)^{n+1} d_Γ^n Φ^n` for every `n`, as matrices.
pub fn cochain_sign_check<F: Field>(p: &RankedPoset, field: &F) -> bool {
    let r = RAlgebra::new(p, field.clone());
    let y = order_complex_of(p);
    let phi = build_from(&r, &y);
    let empty = |n: usize| Matrix::zeros(field, r.dim(n, 0), 0);
    (0..phi.matrices.len()).all(|n| {
        let next = phi
            .matrices
            .get(n + 1)
            .cloned()
            .unwrap_or_else(|| empty(n + 1));
        let left = mat_mul(field, &next, &y.coboundary(field, n));
        let sign = field.from_i64(if n % 2 == 0 { -1 } else { 1 });
        let right = mat_mul(field, &r.d_gamma_matrix(n, 0), &phi.matrices[n]).scaled(field, &sign);
        left == right
    })
}

/// `H^n(Y)` against `H_Γ(n, 0)` and the rank of the map `Φ` induces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeComparison {
    pub n: usize,
    pub order_complex_dim: usize,
    pub internal_dim: usize,
    pub induced_rank: usize,
}

impl DegreeComparison {
    pub fn is_isomorphism(&self) -> bool {
        self.order_complex_dim == self.internal_dim && self.induced_rank == self.internal_dim
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiIsoReport {
    pub field: FieldSpec,
    pub degrees: Vec<DegreeComparison>,
}

impl QuasiIsoReport {
    pub fn is_quasi_isomorphism(&self) -> bool {
        self.degrees.iter().all(DegreeComparison::is_isomorphism)
    }
}

fn compare_degrees<F: Field>(p: &RankedPoset, field: &F) -> Vec<DegreeComparison> {
    let r = RAlgebra::new(p, field.clone());
    let y = order_complex_of(p);
    let phi = build_from(&r, &y);
    let hy = y.cohomology_groups(field);
    let hr = r.cohomology_groups(0);
    let degrees = hy.len().max(hr.len());
    (0..degrees)
        .map(|n| {
            let order_complex_dim = hy.get(n).map_or(0, |g| g.dim);
            let internal_dim = hr.get(n).map_or(0, |g| g.dim);
            let induced_rank = match (hy.get(n), hr.get(n)) {
                (Some(gy), Some(gr)) => {
                    let images: Vec<Vec<F::Elem>> = gy
                        .representatives
                        .iter()
                        .map(|v| phi.matrices[n].apply(field, v))
                        .collect();
                    let ambient = r.dim(n, 0);
                    let joined = gr
                        .coboundaries
                        .join(field, &Subspace::span(field, ambient, images));
                    joined.dim() - gr.coboundaries.dim()
                }
                _ => 0,
            };
            DegreeComparison {
                n,
                order_complex_dim,
                internal_dim,
                induced_rank,
            }
        })
        .collect()
}

/// Compares `H^n(Y)` with `H_Γ(n, 0)` through `Φ` in every degree. Needs `Γ`
/// uniform and Cohen-Macaulay over `field`.
pub fn quasi_iso_check<F: Field>(
    p: &RankedPoset,
    field: &F,
) -> Result<QuasiIsoReport, AnalysisError> {
    require_uniform(p)?;
    let cm = cm_check(p, field);
    if let Some(w) = cm.witness {
        return Err(AnalysisError::HypothesisNotMet(format!(
            "not Cohen-Macaulay over {}: ({}, {}) has reduced cohomology in degree {}",
            field.spec(),
            w.a,
            w.b,
            w.degree
        )));
    }
    Ok(QuasiIsoReport {
        field: field.spec(),
        degrees: compare_degrees(p, field),
    })
}

/// Checks for a cyclic uniform `Γ` with top `x` of rank `d + 1`, where
/// `Γ' = Γ ∖ {x}` and `Z = Δ(Γ' ∖ {*})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopDegreeReport {
    pub field: FieldSpec,
    pub top: String,
    pub d: usize,
    /// `Φ_{Γ'}` in degree `d - 1`; absent when `d = 0`.
    pub restricted: Option<DegreeComparison>,
    /// `dim H̃^{d-1}(Z)`
    pub reduced_dim: usize,
    /// `dim R_Γ(d, 0)`
    pub target_dim: usize,
    /// Rank of `β ↦ r_x Φ_{Γ'}(β)` on `C^{d-1}(Z)`.
    pub multiplication_rank: usize,
    /// Whether that map vanishes on reduced coboundaries.
    pub kills_coboundaries: bool,
}

impl TopDegreeReport {
    pub fn holds(&self) -> bool {
        self.restricted.is_none_or(|c| c.is_isomorphism())
            && self.kills_coboundaries
            && self.multiplication_rank == self.target_dim
            && self.reduced_dim == self.target_dim
    }
}

pub fn top_degree_checks<F: Field>(
    p: &RankedPoset,
    field: &F,
) -> Result<TopDegreeReport, AnalysisError> {
    require_uniform(p)?;
    let x = match p.maximal_elements()[..] {
        [x] if x != p.star() => x,
        _ => {
            return Err(AnalysisError::HypothesisNotMet(
                "not cyclic: needs a unique maximal element above *".into(),
            ))
        }
    };
    let d = p.rank(x) - 1;
    let r = RAlgebra::new(p, field.clone());
    let target_dim = r.dim(d, 0);
    let report =
        |restricted, reduced_dim, multiplication_rank, kills_coboundaries| TopDegreeReport {
            field: field.spec(),
            top: p.element_name(x).to_string(),
            d,
            restricted,
            reduced_dim,
            target_dim,
            multiplication_rank,
            kills_coboundaries,
        };
    if d == 0 {
        // Z is empty: H̃^{-1}(∅) = F, and the empty cell goes to r_x.
        return Ok(report(None, 1, usize::from(target_dim > 0), true));
    }
    let below: Vec<ElemId> = p.non_star().filter(|&y| y != x).collect();
    let z = OrderComplex::build(p, &below);
    let cells = z.cells(d - 1);
    let columns: Vec<Vec<F::Elem>> = cells
        .iter()
        .map(|cell| {
            if !is_rank_chain(p, cell) {
                return vec![field.zero(); target_dim];
            }
            let mut chain = vec![x];
            chain.extend(cell.iter().rev());
            r.block(d, 0)
                .and_then(|b| b.class_of(field, &chain))
                .expect("x covers every element of rank d")
        })
        .collect();
    let m = Matrix::from_columns(field, &columns, target_dim);
    let into_top = if d == 1 {
        z.augmentation(field)
    } else {
        z.coboundary(field, d - 2)
    };
    let kills = mat_mul(field, &m, &into_top).is_zero(field);
    let reduced_dim = z.reduced_cohomology(field).dim(d as i64 - 1);
    let gamma_prime = p.without(&[x]).map_err(AnalysisError::Poset)?;
    let restricted = compare_degrees(&gamma_prime, field)
        .into_iter()
        .find(|c| c.n == d - 1)
        .unwrap_or(DegreeComparison {
            n: d - 1,
            order_complex_dim: 0,
            internal_dim: 0,
            induced_rank: 0,
        });
    Ok(report(
        Some(restricted),
        reduced_dim,
        rank(field, &m),
        kills,
    ))
}
