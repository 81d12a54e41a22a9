//! Plain-text rendering of reports.

use std::fmt::Write;

use koszulkit::phi::DegreeComparison;

use crate::report::*;

fn mark(ok: bool) -> &'static str {
    if ok {
        "✓"
    } else {
        "✗"
    }
}

fn yes(ok: bool) -> &'static str {
    if ok {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

pub fn render(r: &AnalysisReport, augmented: bool) -> String {
    let mut out = String::new();
    let o = &mut out;
    if let Some(i) = &r.info {
        info(o, r, i);
    }
    if let Some(t) = &r.internal_cohomology {
        writeln!(o, "H_Γ(n, k) over {}, rows n, columns k", t.field).unwrap();
        grid(o, t.entries.iter().map(|e| (e.n, e.k, e.dim)));
        if augmented {
            writeln!(o, "augmented complexes").unwrap();
            grid(o, t.entries.iter().map(|e| (e.n, e.k, e.augmented_dim)));
        }
    }
    if let Some(s) = &r.order {
        order(o, r, s);
    }
    if let Some(c) = &r.cm {
        writeln!(o, "Cohen-Macaulay over {}: {}", c.field, yes(c.cm)).unwrap();
        if let Some(w) = &c.witness {
            writeln!(
                o,
                "witness: ({}, {}) has H̃^{} of dimension {}",
                w.a, w.b, w.degree, w.dim
            )
            .unwrap();
        }
    }
    if let Some(k) = &r.koszul {
        koszul(o, k);
    }
    if let Some(h) = &r.hilbert {
        hilbert(o, h);
    }
    if let Some(n) = &r.nkd {
        nkd(o, n);
    }
    if let Some(p) = &r.phi {
        phi(o, p);
    }
    if let Some(ts) = &r.timings {
        for t in ts {
            writeln!(o, "time {}: {:.3} ms", t.stage, t.micros as f64 / 1000.0).unwrap();
        }
    }
    out
}

fn info(o: &mut String, r: &AnalysisReport, i: &InfoSection) {
    let s = &r.poset;
    writeln!(o, "poset {} (sha256 {})", s.name, &s.sha256[..16]).unwrap();
    writeln!(
        o,
        "elements {}, covers {}, max rank {}",
        s.elements, s.covers, s.max_rank
    )
    .unwrap();
    writeln!(o, "ranks: {}", join(&s.rank_profile)).unwrap();
    match &i.uniform.witness {
        Some(w) if !i.uniform.uniform => {
            let classes: Vec<String> = w
                .classes
                .iter()
                .map(|c| format!("{{{}}}", c.join(", ")))
                .collect();
            writeln!(
                o,
                "uniform: no (lower covers of '{}' fall into {})",
                w.element,
                classes.join(" | ")
            )
            .unwrap();
        }
        _ => writeln!(o, "uniform: yes").unwrap(),
    }
    writeln!(o, "cyclic: {}", yes(i.cyclic)).unwrap();
    writeln!(o, "pure: {}", yes(i.pure)).unwrap();
}

fn grid(o: &mut String, cells: impl Iterator<Item = (usize, usize, usize)>) {
    let cells: Vec<(usize, usize, usize)> = cells.collect();
    let Some(rows) = cells.iter().map(|c| c.0).max() else {
        writeln!(o, "  (empty)").unwrap();
        return;
    };
    write!(o, "n\\k").unwrap();
    for k in 0..=rows {
        write!(o, " {k:>4}").unwrap();
    }
    writeln!(o).unwrap();
    for n in 0..=rows {
        write!(o, "{n:>3}").unwrap();
        for k in 0..=n {
            let d = cells
                .iter()
                .find(|c| c.0 == n && c.1 == k)
                .map_or(0, |c| c.2);
            write!(o, " {d:>4}").unwrap();
        }
        writeln!(o).unwrap();
    }
}

fn order(o: &mut String, r: &AnalysisReport, s: &OrderSection) {
    let field = r.field.map(|f| f.to_string()).unwrap_or_default();
    writeln!(o, "order complex of the {}", s.target).unwrap();
    writeln!(o, "f-vector: {}", join(&s.f_vector)).unwrap();
    let (label, what) = match &s.relative_to {
        Some(z) => (
            "H",
            format!("relative to the complex on {{{}}}", z.join(", ")),
        ),
        None => ("H̃", "reduced".to_string()),
    };
    writeln!(o, "{what} cohomology over {field}:").unwrap();
    if s.cohomology.dims.is_empty() {
        writeln!(o, "  all zero").unwrap();
    }
    for (n, d) in &s.cohomology.dims {
        writeln!(o, "  {label}^{n} = {d}").unwrap();
    }
}

fn koszul(o: &mut String, k: &KoszulSection) {
    let v = &k.verdict;
    let mut reasons = vec![format!("CM {}", mark(v.cm.cm))];
    match &v.recursion {
        Some(rec) => reasons.push(format!("recursion {}", mark(rec.koszul))),
        None => reasons.push("not uniform".into()),
    }
    if let Some(t) = &k.ext {
        reasons.push(format!("Ext {}", mark(t.diagonal_vanishing())));
    }
    writeln!(
        o,
        "Koszul over {}: {} ({})",
        v.field,
        yes(v.koszul()),
        reasons.join(", ")
    )
    .unwrap();
    if let Some(w) = &v.cm.witness {
        writeln!(
            o,
            "CM witness: ({}, {}) has H̃^{} of dimension {}",
            w.a, w.b, w.degree, w.dim
        )
        .unwrap();
    }
    if let Some(w) = v.recursion.as_ref().and_then(|r| r.witness.as_ref()) {
        writeln!(
            o,
            "recursion witness: H(n={}, k={}) of [*, {}] has dimension {}",
            w.n, w.k, w.x, w.dim
        )
        .unwrap();
    }
    if let Some(nv) = &v.numerical {
        writeln!(
            o,
            "numerically Koszul: {} (NKD = {}, checked to degree {})",
            yes(nv.numerically_koszul),
            nv.nkd,
            nv.certified_degree
        )
        .unwrap();
    }
    if let Some(t) = &k.ext {
        writeln!(
            o,
            "Ext^{{i,j}} up to i = {}{}:",
            t.max_hdeg,
            if t.truncated {
                " (internal degrees capped)"
            } else {
                ""
            }
        )
        .unwrap();
        for e in &t.entries {
            let tag = if e.i == e.j { "" } else { "  off-diagonal" };
            writeln!(o, "  ({}, {}) = {}{tag}", e.i, e.j, e.dim).unwrap();
        }
    }
}

fn check_text<T>(c: &Check<T>, ok: impl Fn(&T) -> String) -> String {
    match c {
        Check::Done(t) => ok(t),
        Check::Skipped(why) => format!("skipped ({why})"),
    }
}

fn hilbert(o: &mut String, h: &HilbertSection) {
    writeln!(o, "H(R, t)  = {}", h.direct.text).unwrap();
    writeln!(o, "H(R, -t) = {}", h.direct_at_neg_t.text).unwrap();
    writeln!(
        o,
        "HS2      = {}",
        check_text(&h.hs2, |s| format!(
            "{}  (equals H(R, -t): {})",
            s.text,
            yes(h.hs2_matches() == Some(true))
        ))
    )
    .unwrap();
    writeln!(
        o,
        "HS1      = {}",
        check_text(&h.hs1, |s| format!(
            "{}  (1/HS1 equals the dual dims: {})",
            s.text,
            yes(h.hs1_inverse_matches() == Some(true))
        ))
    )
    .unwrap();
    writeln!(
        o,
        "dual dims to degree {}: {}",
        h.max_degree,
        join(&h.dual_dims)
    )
    .unwrap();
    writeln!(
        o,
        "tensor-word route: {}",
        check_text(&h.dual_dims_tensor, |_| format!(
            "agrees: {}",
            yes(h.tensor_matches() == Some(true))
        ))
    )
    .unwrap();
    writeln!(
        o,
        "H(R, -t)·H(R^!, t) mod t^{} = {}  (≡ 1: {})",
        h.max_degree + 1,
        h.product.text,
        yes(h.product_is_one())
    )
    .unwrap();
}

fn nkd(o: &mut String, n: &NkdSection) {
    let bad: Vec<String> = n
        .bad_pairs()
        .map(|b| format!("({},{})", b.v, b.i))
        .collect();
    let bad = if bad.is_empty() {
        "none".to_string()
    } else {
        bad.join(" ")
    };
    writeln!(o, "NKD = {}; bad pairs: {bad}", n.nkd.text).unwrap();
    writeln!(o, "HS1 = {}", n.hs1.text).unwrap();
    writeln!(o, "HS2 = {}", n.hs2.text).unwrap();
    writeln!(o, "{:>12} {:>3} {:>6} {:>6}  good", "v", "i", "χ̃", "top").unwrap();
    for p in &n.pairs {
        writeln!(
            o,
            "{:>12} {:>3} {:>6} {:>6}  {}",
            p.v,
            p.i,
            p.chi_reduced,
            p.top_cohomology_dim,
            mark(p.good)
        )
        .unwrap();
    }
}

fn degree_line(c: &DegreeComparison) -> String {
    format!(
        "n = {}: H^n(Y) = {}, H_Γ(n, 0) = {}, induced rank {} {}",
        c.n,
        c.order_complex_dim,
        c.internal_dim,
        c.induced_rank,
        mark(c.is_isomorphism())
    )
}

fn phi(o: &mut String, p: &PhiSection) {
    writeln!(o, "sign identity Φ d_Y = ±d_Γ Φ: {}", mark(p.sign_identity)).unwrap();
    writeln!(o, "Φ surjective in every degree: {}", mark(p.surjective)).unwrap();
    match &p.quasi_isomorphism {
        Check::Done(q) => {
            writeln!(
                o,
                "quasi-isomorphism over {}: {}",
                q.field,
                mark(q.is_quasi_isomorphism())
            )
            .unwrap();
            for c in &q.degrees {
                writeln!(o, "  {}", degree_line(c)).unwrap();
            }
        }
        Check::Skipped(why) => writeln!(o, "quasi-isomorphism: skipped ({why})").unwrap(),
    }
    match &p.top_degree {
        Check::Done(ts) => {
            for t in ts {
                writeln!(
                    o,
                    "top degree at '{}' (d = {}): {}; dim H̃^{{d-1}}(Z) = {}, dim R(d, 0) = {}, multiplication rank {}",
                    t.top,
                    t.d,
                    mark(t.holds()),
                    t.reduced_dim,
                    t.target_dim,
                    t.multiplication_rank
                )
                .unwrap();
                if let Some(c) = &t.restricted {
                    writeln!(o, "  restricted Φ, {}", degree_line(c)).unwrap();
                }
            }
        }
        Check::Skipped(why) => writeln!(o, "top degree: skipped ({why})").unwrap(),
    }
}
