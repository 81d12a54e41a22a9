//! Hilbert-series formulas, numerical Koszulity and Koszul verdicts.
//!
//! For `a ≠ *` and `1 ≤ i ≤ rk(a)`, `Γ_{a,i}` is the set of `w < a`, `w ≠ *`,
//! with `rk(a) - rk(w) ≤ i - 1`; its order complex has dimension `i - 2`.
//! The pair `(a, i)` is good when `χ̃(Δ(Γ_{a,i}))` equals
//! `(-1)^{i-2} dim H̃^{i-2}(Δ(Γ_{a,i}))`, i.e. when the top degree carries all
//! of the reduced cohomology up to sign.

mod dual;
mod ext;
mod verdict;

pub use dual::{dual_dims, dual_dims_tensor, DEFAULT_TENSOR_BOUND};
pub use ext::{ext_table, ExtBounds, ExtEntry, ExtTable};
pub use verdict::{
    cm_check, koszul_verdict, koszul_via_recursion, numerically_koszul, CmVerdict, CmWitness,
    KoszulVerdict, NumericalVerdict, RecursionVerdict, RecursionWitness,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::field::Field;
use crate::order_complex::OrderComplex;
use crate::poset::{RankedPoset, SubPosetKind};
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub v: String,
    pub i: usize,
    pub chi_reduced: i64,
    /// `dim H̃^{i-2}(Δ(Γ_{v,i}))`
    pub top_cohomology_dim: usize,
    pub good: bool,
}

impl PairReport {
    fn sign(&self) -> i64 {
        if self.i % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `(-1)^{i-2} dim H̃^{i-2}`
    pub fn signed_top(&self) -> i64 {
        self.sign() * self.top_cohomology_dim as i64
    }

    /// Contribution `(-1)^{i-2} dim H̃^{i-2} - χ̃` to the defect.
    pub fn defect(&self) -> i64 {
        self.signed_top() - self.chi_reduced
    }
}

pub(crate) fn require_uniform(p: &RankedPoset) -> Result<(), AnalysisError> {
    let u = p.is_uniform();
    match u.witness {
        Some(w) if !u.uniform => Err(AnalysisError::NotUniform {
            witness: w.element,
            classes: w.classes.len(),
        }),
        _ => Ok(()),
    }
}

/// One report per pair `(a, i)`, ordered by element id then level.
pub fn pair_reports<F: Field>(p: &RankedPoset, field: &F) -> Vec<PairReport> {
    let pairs: Vec<(usize, usize)> = p
        .non_star()
        .flat_map(|a| (1..=p.rank(a)).map(move |i| (a, i)))
        .collect();
    pairs
        .par_iter()
        .map(|&(a, i)| {
            let window = p
                .subposet(SubPosetKind::RankWindow { top: a, level: i })
                .expect("level within 1..=rk(a)");
            let h = OrderComplex::of_subposet(&window).reduced_cohomology(field);
            let top = h.dim(i as i64 - 2);
            let sign = if i % 2 == 0 { 1 } else { -1 };
            PairReport {
                v: p.element_name(a).to_string(),
                i,
                chi_reduced: h.euler_reduced,
                top_cohomology_dim: top,
                good: h.euler_reduced == sign * top as i64,
            }
        })
        .collect()
}

fn hs1_from(pairs: &[PairReport]) -> TruncatedSeries {
    let mut s = TruncatedSeries::one();
    for r in pairs {
        s.add_term(r.i, r.chi_reduced as i128);
    }
    s
}

fn hs2_from(pairs: &[PairReport]) -> TruncatedSeries {
    let mut s = TruncatedSeries::one();
    for r in pairs {
        s.add_term(r.i, r.signed_top() as i128);
    }
    s
}

/// `1 + Σ_i Σ_{rk a ≥ i} χ̃(Δ(Γ_{a,i})) t^i`, the inverse Hilbert series of
/// the dual.
pub fn hs1_formula<F: Field>(p: &RankedPoset, field: &F) -> Result<TruncatedSeries, AnalysisError> {
    require_uniform(p)?;
    Ok(hs1_from(&pair_reports(p, field)))
}

/// `1 + Σ_i Σ_{rk a ≥ i} (-1)^{i-2} dim H̃^{i-2}(Δ(Γ_{a,i})) t^i`, the
/// Hilbert series of `R` at `-t`.
pub fn hs2_formula<F: Field>(p: &RankedPoset, field: &F) -> Result<TruncatedSeries, AnalysisError> {
    require_uniform(p)?;
    Ok(hs2_from(&pair_reports(p, field)))
}

/// The numerical Koszul defect and every pair report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NkdReport {
    pub nkd: TruncatedSeries,
    pub hs1: TruncatedSeries,
    pub hs2: TruncatedSeries,
    pub pairs: Vec<PairReport>,
}

impl NkdReport {
    pub fn bad_pairs(&self) -> impl Iterator<Item = &PairReport> {
        self.pairs.iter().filter(|r| !r.good)
    }
}

/// `Σ_{(v,i) bad} [(-1)^{i-2} dim H̃^{i-2} - χ̃] t^i`, checked against
/// `hs2 - hs1`.
pub fn nkd<F: Field>(p: &RankedPoset, field: &F) -> Result<NkdReport, AnalysisError> {
    require_uniform(p)?;
    let pairs = pair_reports(p, field);
    let mut series = TruncatedSeries::zero();
    for r in pairs.iter().filter(|r| !r.good) {
        series.add_term(r.i, r.defect() as i128);
    }
    let hs1 = hs1_from(&pairs);
    let hs2 = hs2_from(&pairs);
    if hs2.sub(&hs1) != series {
        return Err(AnalysisError::InternalInconsistency(format!(
            "defect {series} differs from HS2 - HS1 = {}",
            hs2.sub(&hs1)
        )));
    }
    Ok(NkdReport {
        nkd: series,
        hs1,
        hs2,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poset::{generate, parse, wedge};
    use crate::ralgebra::hilbert_r;

    fn gen(s: &str) -> RankedPoset {
        generate(&s.parse().unwrap(), 0).unwrap()
    }

    #[test]
    fn formulas_by_hand() {
        let b2 = gen("boolean:2");
        assert_eq!(hs1_formula(&b2, &Rationals).unwrap().coeffs(), &[1, -3, 1]);
        assert_eq!(hs2_formula(&b2, &Rationals).unwrap().coeffs(), &[1, -3, 1]);
        let c2 = gen("chain:2");
        assert_eq!(hs2_formula(&c2, &Rationals).unwrap().coeffs(), &[1, -2]);
        assert_eq!(
            hs2_formula(&c2, &Rationals).unwrap(),
            hilbert_r(&c2, Rationals).at_neg_t()
        );
        // Inverse of HS1 for B2 reproduces the dual dims.
        let inv = hs1_formula(&b2, &Rationals)
            .unwrap()
            .inverse_trunc(3)
            .unwrap();
        assert_eq!(inv.coeffs(), &[1, 3, 8, 21]);
    }

    #[test]
    fn level_one_pairs() {
        let b3 = gen("boolean:3");
        let pairs = pair_reports(&b3, &Rationals);
        let ones: Vec<&PairReport> = pairs.iter().filter(|r| r.i == 1).collect();
        assert_eq!(ones.len(), 7);
        assert!(ones
            .iter()
            .all(|r| r.chi_reduced == -1 && r.top_cohomology_dim == 1 && r.good));
        assert!(pairs.iter().filter(|r| r.i <= 3).all(|r| r.good));
    }

    #[test]
    fn defect_of_boolean_and_sphere_cross_interval() {
        for n in 1..=4 {
            let b = gen(&format!("boolean:{n}"));
            assert!(nkd(&b, &Rationals).unwrap().nkd.is_zero());
        }
        let s = gen("sphere_cross_interval_hat");
        for f2 in [false, true] {
            let r = if f2 {
                nkd(&s, &PrimeField::new(2))
            } else {
                nkd(&s, &Rationals)
            }
            .unwrap();
            assert_eq!(r.nkd, TruncatedSeries::monomial(-1, 5));
            let bad: Vec<(&str, usize)> = r.bad_pairs().map(|b| (b.v.as_str(), b.i)).collect();
            assert_eq!(bad, vec![("X", 5)]);
        }
    }

    #[test]
    fn not_uniform_is_rejected() {
        let p = parse("p > *\nq > *\nu > p\nv > q\nx > u\nx > v").unwrap();
        assert!(matches!(
            nkd(&p, &Rationals),
            Err(AnalysisError::NotUniform { .. })
        ));
    }

    #[test]
    fn wedge_adds_defects() {
        let s = gen("sphere_cross_interval_hat");
        let b = gen("boolean:3");
        let w = wedge(&s, &b, s.elements_of_rank(1)[0], b.id("s1").unwrap()).unwrap();
        let total = nkd(&w, &Rationals).unwrap().nkd;
        let sum = nkd(&s, &Rationals)
            .unwrap()
            .nkd
            .add(&nkd(&b, &Rationals).unwrap().nkd);
        assert_eq!(total, sum);
    }
}
