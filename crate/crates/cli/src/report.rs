//! The machine-readable report. Every subcommand fills the sections it
//! computes and leaves the rest out.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use koszulkit::dual_koszul::{CmVerdict, ExtTable, KoszulVerdict, PairReport};
use koszulkit::field::FieldSpec;
use koszulkit::order_complex::CohomologyProfile;
use koszulkit::phi::{QuasiIsoReport, TopDegreeReport};
use koszulkit::poset::{RankedPoset, Uniformity};
use koszulkit::ralgebra::InternalCohomologyTable;
use koszulkit::series::TruncatedSeries;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSummary {
    pub name: String,
    /// SHA-256 of the canonical text form.
    pub sha256: String,
    pub elements: usize,
    pub covers: usize,
    pub max_rank: usize,
    /// Element count per rank, star included.
    pub rank_profile: Vec<usize>,
}

impl PosetSummary {
    pub fn of(p: &RankedPoset) -> Self {
        PosetSummary {
            name: p.name().unwrap_or("unnamed").to_string(),
            sha256: hex::encode(Sha256::digest(p.to_text().as_bytes())),
            elements: p.len(),
            covers: p.num_covers(),
            max_rank: p.max_rank(),
            rank_profile: p.rank_profile(),
        }
    }
}

/// A polynomial or truncated series, as text and as ascending coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Series {
    pub text: String,
    pub coeffs: Vec<i128>,
}

impl From<&TruncatedSeries> for Series {
    fn from(s: &TruncatedSeries) -> Self {
        Series {
            text: s.to_string(),
            coeffs: s.coeffs().to_vec(),
        }
    }
}

/// A computation that ran, or the reason it did not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum Check<T> {
    Done(T),
    Skipped(String),
}

impl<T> Check<T> {
    pub fn done(&self) -> Option<&T> {
        match self {
            Check::Done(t) => Some(t),
            Check::Skipped(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoSection {
    pub uniform: Uniformity,
    pub cyclic: bool,
    pub pure: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSection {
    /// Which complex: `proper part` or `open interval (A, B)`.
    pub target: String,
    /// Elements spanning the subcomplex of a relative computation.
    pub relative_to: Option<Vec<String>>,
    pub f_vector: Vec<usize>,
    pub cohomology: CohomologyProfile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulSection {
    pub verdict: KoszulVerdict,
    pub ext: Option<ExtTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSection {
    pub max_degree: usize,
    pub direct: Series,
    pub direct_at_neg_t: Series,
    pub hs1: Check<Series>,
    pub hs2: Check<Series>,
    /// Dual dimensions in degrees `0..=max_degree`.
    pub dual_dims: Vec<u128>,
    /// The same dimensions by brute force over tensor words.
    pub dual_dims_tensor: Check<Vec<u128>>,
    /// `H(R, -t) · H(R^!, t)` modulo `t^{max_degree + 1}`.
    pub product: Series,
}

impl HilbertSection {
    pub fn hs2_matches(&self) -> Option<bool> {
        self.hs2.done().map(|s| *s == self.direct_at_neg_t)
    }

    pub fn hs1_inverse_matches(&self) -> Option<bool> {
        self.hs1.done().map(|s| {
            TruncatedSeries::new(s.coeffs.clone())
                .inverse_trunc(self.max_degree)
                .is_some_and(|inv| {
                    (0..=self.max_degree).all(|i| inv.coeff(i) == self.dual_dims[i] as i128)
                })
        })
    }

    pub fn tensor_matches(&self) -> Option<bool> {
        self.dual_dims_tensor.done().map(|t| *t == self.dual_dims)
    }

    pub fn product_is_one(&self) -> bool {
        self.product.coeffs == [1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NkdSection {
    pub nkd: Series,
    pub hs1: Series,
    pub hs2: Series,
    pub pairs: Vec<PairReport>,
}

impl NkdSection {
    pub fn bad_pairs(&self) -> impl Iterator<Item = &PairReport> {
        self.pairs.iter().filter(|r| !r.good)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiSection {
    pub sign_identity: bool,
    pub surjective: bool,
    pub quasi_isomorphism: Check<QuasiIsoReport>,
    /// One report per maximal element `x`, on `[*, x]`.
    pub top_degree: Check<Vec<TopDegreeReport>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageTiming {
    pub stage: String,
    pub micros: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub command: String,
    pub poset: PosetSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub info: Option<InfoSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub internal_cohomology: Option<InternalCohomologyTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cm: Option<CmVerdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub koszul: Option<KoszulSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<HilbertSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nkd: Option<NkdSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<PhiSection>,
    /// Present only when timings were requested, so that plain reports are
    /// byte-identical across runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<StageTiming>>,
}

impl AnalysisReport {
    pub fn new(command: &str, p: &RankedPoset) -> Self {
        AnalysisReport {
            schema: SCHEMA,
            command: command.to_string(),
            poset: PosetSummary::of(p),
            field: None,
            info: None,
            internal_cohomology: None,
            order: None,
            cm: None,
            koszul: None,
            hilbert: None,
            nkd: None,
            phi: None,
            timings: None,
        }
    }

    /// Verdicts in this report that come out negative, for `--assert`.
    pub fn assertion_failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Some(i) = &self.info {
            if !i.uniform.uniform {
                out.push("not uniform".to_string());
            }
        }
        if let Some(c) = &self.cm {
            if !c.cm {
                out.push(format!("not Cohen-Macaulay over {}", c.field));
            }
        }
        if let Some(k) = &self.koszul {
            if !k.verdict.koszul() {
                out.push(format!("not Koszul over {}", k.verdict.field));
            }
        }
        if let Some(h) = &self.hilbert {
            if h.hs2_matches() == Some(false) {
                out.push("HS2 differs from H(R, -t)".to_string());
            }
            if h.hs1_inverse_matches() == Some(false) {
                out.push("1/HS1 differs from the dual dimensions".to_string());
            }
            if h.tensor_matches() == Some(false) {
                out.push("the two dual-dimension routes disagree".to_string());
            }
        }
        if let Some(n) = &self.nkd {
            if !n.nkd.coeffs.is_empty() {
                out.push(format!("NKD = {}", n.nkd.text));
            }
        }
        if let Some(ph) = &self.phi {
            if !ph.sign_identity {
                out.push("sign identity fails".to_string());
            }
            if !ph.surjective {
                out.push("Φ is not surjective".to_string());
            }
            if let Check::Done(q) = &ph.quasi_isomorphism {
                if !q.is_quasi_isomorphism() {
                    out.push("Φ is not a quasi-isomorphism".to_string());
                }
            }
            if let Check::Done(ts) = &ph.top_degree {
                for t in ts.iter().filter(|t| !t.holds()) {
                    out.push(format!("top-degree checks fail at '{}'", t.top));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
