//! One function per analysis subcommand. Each returns a finished report.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::Instant;

use koszulkit::dispatch_field;
use koszulkit::dual_koszul::{
    cm_check, dual_dims, dual_dims_tensor, ext_table, hs1_formula, hs2_formula, koszul_verdict,
    nkd as nkd_report, ExtBounds, DEFAULT_TENSOR_BOUND,
};
use koszulkit::error::AnalysisError;
use koszulkit::field::{Field, FieldSpec};
use koszulkit::order_complex::OrderComplex;
use koszulkit::phi::{build_phi, cochain_sign_check, quasi_iso_check, top_degree_checks};
use koszulkit::poset::{parse, ElemId, RankedPoset, SubPosetKind};
use koszulkit::ralgebra::RAlgebra;
use koszulkit::series::TruncatedSeries;

use crate::error::CliError;
use crate::report::*;

pub const DEFAULT_MAX_CELLS: u128 = 2_000_000;

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub field: FieldSpec,
    /// Refuse posets whose order complex has more cells than this.
    pub max_cells: u128,
    /// Word bound for the tensor cross-check of the dual dimensions.
    pub max_tensor: u128,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            field: FieldSpec::RATIONALS,
            max_cells: DEFAULT_MAX_CELLS,
            max_tensor: DEFAULT_TENSOR_BOUND,
            timings: false,
        }
    }
}

struct Stages {
    enabled: bool,
    list: Vec<StageTiming>,
}

impl Stages {
    fn new(opts: &Options) -> Self {
        Stages {
            enabled: opts.timings,
            list: Vec::new(),
        }
    }

    fn run<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        if self.enabled {
            self.list.push(StageTiming {
                stage: stage.to_string(),
                micros: t.elapsed().as_micros() as u64,
            });
        }
        out
    }

    fn finish(self) -> Option<Vec<StageTiming>> {
        self.enabled.then_some(self.list)
    }
}

/// Read and parse a poset file; unnamed posets take the file stem.
pub fn load(path: &Path) -> Result<RankedPoset, CliError> {
    let text = read(path)?;
    let p = parse(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(name_from_path(p, path))
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

pub fn name_from_path(p: RankedPoset, path: &Path) -> RankedPoset {
    if p.name().is_some() {
        return p;
    }
    match path.file_stem().and_then(|s| s.to_str()) {
        Some(stem) => p.with_name(stem),
        None => p,
    }
}

/// Number of chains among the non-star elements, saturating.
pub fn count_cells(p: &RankedPoset) -> u128 {
    let mut ending: Vec<u128> = vec![0; p.len()];
    let mut total: u128 = 0;
    // Ids increase along the order, so every y < x is already done.
    for x in p.non_star() {
        let below = p
            .non_star()
            .take_while(|&y| y < x)
            .filter(|&y| p.lt(y, x))
            .fold(0u128, |acc, y| acc.saturating_add(ending[y]));
        ending[x] = below.saturating_add(1);
        total = total.saturating_add(ending[x]);
    }
    total
}

fn guard_cells(p: &RankedPoset, opts: &Options) -> Result<(), CliError> {
    let cells = count_cells(p);
    if cells > opts.max_cells {
        return Err(CliError::Guard(format!(
            "the order complex has {cells} cells, above --max-cells {}",
            opts.max_cells
        )));
    }
    Ok(())
}

fn id(p: &RankedPoset, name: &str) -> Result<ElemId, CliError> {
    Ok(p.id(name)?)
}

pub fn info(p: &RankedPoset, opts: &Options) -> AnalysisReport {
    let mut st = Stages::new(opts);
    let mut r = AnalysisReport::new("info", p);
    r.info = Some(st.run("flags", || InfoSection {
        uniform: p.is_uniform(),
        cyclic: p.is_cyclic(),
        pure: p.is_pure(),
    }));
    r.timings = st.finish();
    r
}

pub fn cohomology(p: &RankedPoset, opts: &Options) -> Result<AnalysisReport, CliError> {
    guard_cells(p, opts)?;
    let mut st = Stages::new(opts);
    let mut r = AnalysisReport::new("cohomology", p);
    r.field = Some(opts.field);
    r.internal_cohomology = Some(st.run(
        "internal cohomology",
        || dispatch_field!(opts.field, f => RAlgebra::new(p, f).internal_cohomology()),
    ));
    r.timings = st.finish();
    Ok(r)
}

pub fn order(
    p: &RankedPoset,
    interval: Option<(&str, &str)>,
    relative: Option<&RankedPoset>,
    opts: &Options,
) -> Result<AnalysisReport, CliError> {
    guard_cells(p, opts)?;
    let (target, elements): (String, Vec<ElemId>) = match interval {
        None => ("proper part".into(), p.non_star().collect()),
        Some((a, b)) => {
            let (low, high) = (id(p, a)?, id(p, b)?);
            let open = p.subposet(SubPosetKind::OpenInterval { low, high })?;
            (
                format!("open interval ({a}, {b})"),
                open.elements().to_vec(),
            )
        }
    };
    let inside: BTreeSet<ElemId> = elements.iter().copied().collect();
    let sub = match relative {
        None => None,
        Some(s) => {
            let mut ids = Vec::new();
            for x in s.non_star() {
                let name = s.element_name(x);
                let y = id(p, name)?;
                if !inside.contains(&y) {
                    return Err(CliError::Input(format!(
                        "'{name}' is not a vertex of the {target}"
                    )));
                }
                ids.push(y);
            }
            ids.sort_unstable();
            Some(ids)
        }
    };
    let mut st = Stages::new(opts);
    let mut r = AnalysisReport::new("order", p);
    r.field = Some(opts.field);
    let y = st.run("order complex", || OrderComplex::build(p, &elements));
    let cohomology = st.run("cohomology", || -> Result<_, CliError> {
        dispatch_field!(opts.field, f => match &sub {
            None => Ok(y.reduced_cohomology(&f)),
            Some(ids) => {
                let z = OrderComplex::build(p, ids);
                y.relative_cohomology(&f, &z)
                    .map_err(|e| CliError::Input(e.to_string()))
            }
        })
    })?;
    r.order = Some(OrderSection {
        target,
        relative_to: sub.map(|ids| p.names_of(&ids)),
        f_vector: y.f_vector(),
        cohomology,
    });
    r.timings = st.finish();
    Ok(r)
}

pub fn cm(p: &RankedPoset, opts: &Options) -> Result<AnalysisReport, CliError> {
    guard_cells(p, opts)?;
    let mut st = Stages::new(opts);
    let mut r = AnalysisReport::new("cm", p);
    r.field = Some(opts.field);
    r.cm = Some(st.run("cm", || dispatch_field!(opts.field, f => cm_check(p, &f))));
    r.timings = st.finish();
    Ok(r)
}

/// Every applicable verdict. Oracle disagreement is an error, as is an Ext
/// table whose diagonal vanishing contradicts the verdict on a uniform poset.
pub fn koszul(
    p: &RankedPoset,
    ext: Option<usize>,
    opts: &Options,
) -> Result<AnalysisReport, CliError> {
    guard_cells(p, opts)?;
    let mut st = Stages::new(opts);
    let mut r = AnalysisReport::new("koszul", p);
    r.field = Some(opts.field);
    let verdict = st.run(
        "verdicts",
        || dispatch_field!(opts.field, f => koszul_verdict(p, &f, true)),
    )?;
    let ext = match ext {
        None => None,
        Some(n) => {
            let bounds = ExtBounds {
                max_hdeg: n,
                ..ExtBounds::default()
            };
            let table = st.run(
                "ext",
                || dispatch_field!(opts.field, f => ext_table(p, &f, bounds)),
            )?;
            if verdict.uniform && table.diagonal_vanishing() != verdict.koszul() {
                return Err(AnalysisError::InternalInconsistency(format!(
                    "Ext is {}diagonal up to degree {n} but the CM criterion says {}",
                    if table.diagonal_vanishing() {
                        ""
                    } else {
                        "not "
                    },
                    if verdict.koszul() {
                        "Koszul"
                    } else {
                        "not Koszul"
                    },
                ))
                .into());
            }
            Some(table)
        }
    };
    r.koszul = Some(KoszulSection { verdict, ext });
    r.timings = st.finish();
    Ok(r)
}

fn uniform_only<T>(result: Result<T, AnalysisError>) -> Result<Check<T>, CliError> {
    match result {
        Ok(t) => Ok(Check::Done(t)),
        Err(e @ AnalysisError::NotUniform { .. }) | Err(e @ AnalysisError::HypothesisNotMet(_)) => {
            Ok(Check::Skipped(e.to_string()))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn hilbert(
    p: &RankedPoset,
    max_degree: Option<usize>,
    opts: &Options,
) -> Result<AnalysisReport, CliError> {
    guard_cells(p, opts)?;
    let n = max_degree.unwrap_or(p.max_rank() + 2);
    let mut st = Stages::new(opts);
    let mut r = AnalysisReport::new("hilbert", p);
    r.field = Some(opts.field);
    let direct = st.run(
        "direct series",
        || dispatch_field!(opts.field, f => RAlgebra::new(p, f).hilbert()),
    );
    let (hs1, hs2) = st.run(
        "pair formulas",
        || dispatch_field!(opts.field, f => (hs1_formula(p, &f), hs2_formula(p, &f))),
    );
    let dual = st.run("dual dims", || dual_dims(p, n));
    let tensor = st.run("dual dims by tensor words", || {
        match dual_dims_tensor(p, n, opts.max_tensor) {
            Ok(d) => Check::Done(d),
            Err(e) => Check::Skipped(e.to_string()),
        }
    });
    let dual_series = TruncatedSeries::new(dual.iter().map(|&d| d as i128).collect());
    let product = direct.at_neg_t().mul_trunc(&dual_series, n);
    r.hilbert = Some(HilbertSection {
        max_degree: n,
        direct: (&direct).into(),
        direct_at_neg_t: (&direct.at_neg_t()).into(),
        hs1: match uniform_only(hs1)? {
            Check::Done(s) => Check::Done((&s).into()),
            Check::Skipped(m) => Check::Skipped(m),
        },
        hs2: match uniform_only(hs2)? {
            Check::Done(s) => Check::Done((&s).into()),
            Check::Skipped(m) => Check::Skipped(m),
        },
        dual_dims: dual,
        dual_dims_tensor: tensor,
        product: (&product).into(),
    });
    r.timings = st.finish();
    Ok(r)
}

pub fn nkd(p: &RankedPoset, opts: &Options) -> Result<AnalysisReport, CliError> {
    guard_cells(p, opts)?;
    let mut st = Stages::new(opts);
    let mut r = AnalysisReport::new("nkd", p);
    r.field = Some(opts.field);
    let rep = st.run(
        "pairs",
        || dispatch_field!(opts.field, f => nkd_report(p, &f)),
    )?;
    r.nkd = Some(NkdSection {
        nkd: (&rep.nkd).into(),
        hs1: (&rep.hs1).into(),
        hs2: (&rep.hs2).into(),
        pairs: rep.pairs,
    });
    r.timings = st.finish();
    Ok(r)
}

fn phi_section<F: Field>(p: &RankedPoset, f: &F, st: &mut Stages) -> Result<PhiSection, CliError> {
    let sign_identity = st.run("sign identity", || cochain_sign_check(p, f));
    let surjective = st.run("surjectivity", || build_phi(p, f).is_surjective());
    let quasi_isomorphism = uniform_only(st.run("quasi-isomorphism", || quasi_iso_check(p, f)))?;
    let tops: Vec<ElemId> = p
        .maximal_elements()
        .into_iter()
        .filter(|&x| x != p.star())
        .collect();
    let top_degree = if tops.is_empty() {
        Check::Skipped("no element above *".into())
    } else {
        uniform_only(st.run("top degree", || {
            tops.iter()
                .map(|&x| top_degree_checks(&p.lower_interval(x), f))
                .collect::<Result<Vec<_>, _>>()
        }))?
    };
    Ok(PhiSection {
        sign_identity,
        surjective,
        quasi_isomorphism,
        top_degree,
    })
}

pub fn phi(p: &RankedPoset, opts: &Options) -> Result<AnalysisReport, CliError> {
    guard_cells(p, opts)?;
    let mut st = Stages::new(opts);
    let mut r = AnalysisReport::new("phi", p);
    r.field = Some(opts.field);
    r.phi = Some(dispatch_field!(opts.field, f => phi_section(p, &f, &mut st))?);
    r.timings = st.finish();
    Ok(r)
}
