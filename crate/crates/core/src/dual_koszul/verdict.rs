use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{dual_dims, nkd, require_uniform};
use crate::error::AnalysisError;
use crate::field::{Field, FieldSpec};
use crate::order_complex::interval_space_profile;
use crate::poset::{ElemId, RankedPoset};
use crate::ralgebra::RAlgebra;
use crate::series::TruncatedSeries;

/// First interval `(a, b)` with reduced cohomology off its top degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmWitness {
    pub a: String,
    pub b: String,
    pub degree: i64,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmVerdict {
    pub field: FieldSpec,
    pub cm: bool,
    pub witness: Option<CmWitness>,
}

/// Whether every open interval `(a, b)`, star included as `a`, has reduced
/// cohomology only in degree `rk b - rk a - 2`.
pub fn cm_check<F: Field>(p: &RankedPoset, field: &F) -> CmVerdict {
    let pairs: Vec<(ElemId, ElemId)> = p
        .elements()
        .flat_map(|a| {
            p.elements()
                .filter(move |&b| p.lt(a, b))
                .map(move |b| (a, b))
        })
        .collect();
    let failures: Vec<Option<CmWitness>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let h = interval_space_profile(p, a, b, field).expect("a < b");
            let top = p.rank(b) as i64 - p.rank(a) as i64 - 2;
            h.dims
                .iter()
                .find(|(&n, _)| n != top)
                .map(|(&n, &d)| CmWitness {
                    a: p.element_name(a).to_string(),
                    b: p.element_name(b).to_string(),
                    degree: n,
                    dim: d,
                })
        })
        .collect();
    let witness = failures.into_iter().flatten().next();
    CmVerdict {
        field: field.spec(),
        cm: witness.is_none(),
        witness,
    }
}

/// A nonzero `H_{Γ_x}(n, k)` with `0 ≤ k < n ≤ rk(x) - 3`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionWitness {
    pub x: String,
    pub n: usize,
    pub k: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionVerdict {
    pub field: FieldSpec,
    pub koszul: bool,
    pub witness: Option<RecursionWitness>,
}

/// Koszulity through the lower intervals: `Γ` is Koszul iff every `Γ_x` is,
/// and a cyclic `Γ_x` with `rk x = d + 1` whose proper lower intervals are
/// Koszul is Koszul iff `H_{Γ_x}(n, k) = 0` for `0 ≤ k < n ≤ d - 2`.
/// Elements are visited in increasing rank so the first failure is minimal.
pub fn koszul_via_recursion<F: Field>(
    p: &RankedPoset,
    field: &F,
) -> Result<RecursionVerdict, AnalysisError> {
    require_uniform(p)?;
    let tops: Vec<ElemId> = p.non_star().filter(|&x| p.rank(x) >= 3).collect();
    let results: Vec<Option<RecursionWitness>> = tops
        .par_iter()
        .map(|&x| {
            let d = p.rank(x) - 1;
            let table = RAlgebra::new(&p.lower_interval(x), field.clone()).internal_cohomology();
            for n in 1..=d.saturating_sub(2) {
                for k in 0..n {
                    let dim = table.dim(n, k);
                    if dim != 0 {
                        return Some(RecursionWitness {
                            x: p.element_name(x).to_string(),
                            n,
                            k,
                            dim,
                        });
                    }
                }
            }
            None
        })
        .collect();
    let witness = results.into_iter().flatten().next();
    Ok(RecursionVerdict {
        field: field.spec(),
        koszul: witness.is_none(),
        witness,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericalVerdict {
    pub field: FieldSpec,
    pub numerically_koszul: bool,
    pub nkd: TruncatedSeries,
    /// `H(R, -t) · H(R^!, t)` modulo `t^{certified_degree + 1}`.
    pub product: TruncatedSeries,
    /// The identity is only checked up to this degree.
    pub certified_degree: usize,
}

/// `NKD ≡ 0`, cross-checked against `H(R, -t) · H(R^!, t) ≡ 1` modulo
/// `t^{N+1}`; `N` defaults to `maxrank + 2`.
pub fn numerically_koszul<F: Field>(
    p: &RankedPoset,
    field: &F,
    truncation: Option<usize>,
) -> Result<NumericalVerdict, AnalysisError> {
    require_uniform(p)?;
    let min = p.max_rank() + 2;
    let n = truncation.unwrap_or(min);
    if n < min {
        return Err(AnalysisError::HypothesisNotMet(format!(
            "truncation degree {n} is below maxrank + 2 = {min}"
        )));
    }
    let report = nkd(p, field)?;
    let hr = RAlgebra::new(p, field.clone()).hilbert();
    let dual = TruncatedSeries::new(dual_dims(p, n).into_iter().map(|d| d as i128).collect());
    let product = hr.at_neg_t().mul_trunc(&dual, n);
    let by_defect = report.nkd.is_zero();
    let by_product = product == TruncatedSeries::one();
    if by_defect != by_product {
        return Err(AnalysisError::InternalInconsistency(format!(
            "NKD = {} but H(R,-t)·H(R^!,t) = {product} mod t^{}",
            report.nkd,
            n + 1
        )));
    }
    Ok(NumericalVerdict {
        field: field.spec(),
        numerically_koszul: by_defect,
        nkd: report.nkd,
        product,
        certified_degree: n,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulVerdict {
    pub field: FieldSpec,
    pub uniform: bool,
    pub cm: CmVerdict,
    /// `uniform ∧ cm`
    pub koszul_via_cm: bool,
    /// Only for uniform posets.
    pub recursion: Option<RecursionVerdict>,
    pub numerical: Option<NumericalVerdict>,
}

impl KoszulVerdict {
    pub fn koszul(&self) -> bool {
        self.koszul_via_cm
    }
}

/// All applicable verdicts; fails if the CM and recursion criteria disagree.
pub fn koszul_verdict<F: Field>(
    p: &RankedPoset,
    field: &F,
    with_numerical: bool,
) -> Result<KoszulVerdict, AnalysisError> {
    let uniform = p.is_uniform().uniform;
    let cm = cm_check(p, field);
    let koszul_via_cm = uniform && cm.cm;
    let (recursion, numerical) = if uniform {
        let r = koszul_via_recursion(p, field)?;
        if r.koszul != koszul_via_cm {
            return Err(AnalysisError::InternalInconsistency(format!(
                "CM criterion says {koszul_via_cm}, recursion says {}",
                r.koszul
            )));
        }
        let n = if with_numerical {
            Some(numerically_koszul(p, field, None)?)
        } else {
            None
        };
        (Some(r), n)
    } else {
        (None, None)
    };
    Ok(KoszulVerdict {
        field: field.spec(),
        uniform,
        cm,
        koszul_via_cm,
        recursion,
        numerical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poset::{generate, parse, wedge};

    fn gen(s: &str) -> RankedPoset {
        generate(&s.parse().unwrap(), 0).unwrap()
    }

    #[test]
    fn boolean_and_chain_are_koszul() {
        for s in [
            "boolean:1",
            "boolean:2",
            "boolean:3",
            "boolean:4",
            "chain:5",
        ] {
            let p = gen(s);
            for spec in [FieldSpec::RATIONALS, FieldSpec::F2] {
                let v = crate::dispatch_field!(spec, f => koszul_verdict(&p, &f, true)).unwrap();
                assert!(v.cm.cm, "{s}");
                assert!(v.koszul());
                assert!(v.recursion.unwrap().koszul);
                assert!(v.numerical.unwrap().numerically_koszul);
            }
        }
    }

    #[test]
    fn sphere_cross_interval_is_not_koszul() {
        let s = gen("sphere_cross_interval_hat");
        let cm = cm_check(&s, &Rationals);
        assert_eq!(
            cm.witness,
            Some(CmWitness {
                a: "*".into(),
                b: "X".into(),
                degree: 2,
                dim: 1
            })
        );
        let r = koszul_via_recursion(&s, &PrimeField::new(2)).unwrap();
        assert!(!r.koszul);
        assert_eq!(r.witness.unwrap().x, "X");
        let n = numerically_koszul(&s, &Rationals, None).unwrap();
        assert!(!n.numerically_koszul);
        assert_eq!(n.nkd, TruncatedSeries::monomial(-1, 5));
        assert_eq!(n.certified_degree, 7);
        assert!(numerically_koszul(&s, &Rationals, Some(3)).is_err());
    }

    #[test]
    fn non_uniform() {
        let p = parse("p > *\nq > *\nu > p\nv > q\nx > u\nx > v").unwrap();
        let v = koszul_verdict(&p, &Rationals, true).unwrap();
        assert!(!v.uniform);
        assert!(!v.koszul());
        assert!(v.recursion.is_none());
        // (*, x) is two disjoint points joined by nothing: H̃^0 ≠ 0 off degree 1.
        assert!(!v.cm.cm);
        assert!(matches!(
            koszul_via_recursion(&p, &Rationals),
            Err(AnalysisError::NotUniform { .. })
        ));
    }

    #[test]
    fn wedge_of_cm_posets() {
        let b = gen("boolean:3");
        let a = b.id("s1").unwrap();
        let w = wedge(&b, &b, a, a).unwrap();
        let v = koszul_verdict(&w, &Rationals, true).unwrap();
        assert_eq!(v.cm.cm, v.recursion.unwrap().koszul);
    }
}
