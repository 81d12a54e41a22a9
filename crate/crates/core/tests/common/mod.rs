//! Corpus shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use koszulkit::poset::{generate, hat, prism, wedge, ElemId, RankedPoset};

pub fn gen(spec: &str, seed: u64) -> RankedPoset {
    generate(&spec.parse().expect("valid generator spec"), seed).expect("generator succeeds")
}

pub fn parse(text: &str) -> RankedPoset {
    koszulkit::poset::parse(text).expect("valid poset text")
}

/// Uniform, but `(*, X)` is a circle: two faces cone off two of its three edges.
pub fn pinwheel() -> RankedPoset {
    parse(
        "poset pinwheel\n\
         a > *\nb > *\nc > *\n\
         e1 > a\ne1 > b\ne2 > b\ne2 > c\ne3 > a\ne3 > c\n\
         f1 > e1\nf1 > e2\nf2 > e2\nf2 > e3\nX > f1\nX > f2",
    )
}

/// Like [`pinwheel`] with a third face, each face covering two edges.
pub fn triangle_of_faces() -> RankedPoset {
    parse(
        "poset triangle_of_faces\n\
         a > *\nb > *\nc > *\n\
         e1 > a\ne1 > b\ne2 > b\ne2 > c\ne3 > a\ne3 > c\n\
         f1 > e1\nf1 > e2\nf2 > e2\nf2 > e3\nf3 > e3\nf3 > e1\n\
         X > f1\nX > f2\nX > f3",
    )
}

fn first_atom(p: &RankedPoset) -> ElemId {
    p.elements_of_rank(1)[0]
}

pub fn wedge_at_atoms(a: &RankedPoset, b: &RankedPoset) -> RankedPoset {
    wedge(a, b, first_atom(a), first_atom(b)).expect("both posets have atoms")
}

/// Two cubes sharing a square, with a top adjoined: a cyclic CM poset of rank 5.
pub fn two_cubes_hat() -> RankedPoset {
    let segment = gen("boolean:2", 0);
    let path = wedge_at_atoms(&segment, &segment);
    let cubes = prism(&prism(&path).unwrap()).unwrap();
    hat(&cubes).unwrap().with_name("two_cubes_hat")
}

/// Adds one atom covered by `e` and `f`.
pub fn bridge(p: &RankedPoset, e: ElemId, f: ElemId) -> RankedPoset {
    let mut covers: Vec<(String, String)> = p
        .cover_pairs()
        .into_iter()
        .map(|(u, l)| (p.element_name(u).to_string(), p.element_name(l).to_string()))
        .collect();
    covers.push(("bridge".into(), "*".into()));
    covers.push((p.element_name(e).into(), "bridge".into()));
    covers.push((p.element_name(f).into(), "bridge".into()));
    RankedPoset::from_covers(Some(format!("bridge({})", p.name().unwrap_or("?"))), covers)
        .expect("an atom under two rank-2 elements keeps the poset ranked")
}

/// Rank-2 pairs with no common upper bound of rank 4.
pub fn far_rank_two_pairs(p: &RankedPoset) -> Vec<(ElemId, ElemId)> {
    let twos = p.elements_of_rank(2);
    let fours = p.elements_of_rank(4);
    let mut out = Vec::new();
    for (i, &e) in twos.iter().enumerate() {
        for &f in &twos[i + 1..] {
            if !fours.iter().any(|&c| p.lt(e, c) && p.lt(f, c)) {
                out.push((e, f));
            }
        }
    }
    out
}

const NAMED: &[&str] = &[
    "boolean:1",
    "boolean:2",
    "boolean:3",
    "boolean:4",
    "chain:1",
    "chain:2",
    "chain:3",
    "chain:4",
    "chain:5",
    "chain:6",
    "simplex_boundary:1",
    "simplex_boundary:2",
    "simplex_boundary:3",
    "simplex_boundary:4",
    "hat(simplex_boundary:1)",
    "hat(simplex_boundary:2)",
    "hat(simplex_boundary:3)",
    "hat(simplex_boundary:4)",
    "prism(simplex_boundary:1)",
    "prism(simplex_boundary:2)",
    "prism(simplex_boundary:3)",
    "prism(boolean:2)",
    "prism(boolean:3)",
    "prism(prism(boolean:2))",
    "hat(prism(simplex_boundary:2))",
    "hat(prism(boolean:2))",
    "hat(prism(boolean:3))",
    "hat(prism(prism(simplex_boundary:2)))",
    "sphere_cross_interval_hat",
];

const WEDGE_PARTS: &[&str] = &[
    "boolean:2",
    "boolean:3",
    "chain:2",
    "chain:3",
    "hat(simplex_boundary:2)",
    "simplex_boundary:2",
];

/// Level shapes for random posets, at most 25 elements above `*`.
const SHAPES: &[&[usize]] = &[
    &[2, 2],
    &[3, 3],
    &[2, 3, 2],
    &[3, 3, 2],
    &[3, 4, 3],
    &[2, 3, 3, 1],
    &[3, 3, 3, 2],
    &[3, 4, 4, 2],
    &[4, 5, 4, 2],
    &[2, 3, 3, 2, 1],
    &[3, 4, 4, 3, 1],
    &[3, 4, 5, 4, 2],
    &[4, 5, 5, 4, 2],
    &[3, 3, 3, 3, 2, 1],
    &[3, 4, 4, 4, 3, 2],
];

const DENSITIES: &[f64] = &[0.35, 0.6, 0.9];

fn random_spec(shape: &[usize], density: f64, uniform: bool) -> String {
    let levels: Vec<String> = shape.iter().map(|l| l.to_string()).collect();
    let tail = if uniform { ":uniform" } else { "" };
    format!("random:{}:{density}{tail}", levels.join(","))
}

/// The generated corpus: named families, wedges, hand-built examples, and
/// seeded random posets (mostly uniform).
pub fn corpus() -> Vec<RankedPoset> {
    let mut out: Vec<RankedPoset> = NAMED.iter().map(|s| gen(s, 0)).collect();
    out.push(pinwheel());
    out.push(triangle_of_faces());
    out.push(two_cubes_hat());
    for (i, a) in WEDGE_PARTS.iter().enumerate() {
        for b in &WEDGE_PARTS[i..] {
            let w = wedge_at_atoms(&gen(a, 0), &gen(b, 0));
            out.push(w.with_name(&format!("wedge({a},{b})")));
        }
    }
    let w = wedge_at_atoms(&pinwheel(), &gen("boolean:3", 0));
    out.push(w.with_name("wedge(pinwheel,boolean:3)"));
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for (s, shape) in SHAPES.iter().enumerate() {
        for (d, &density) in DENSITIES.iter().enumerate() {
            for seed in 0..4u64 {
                let spec = random_spec(shape, density, true);
                if let Ok(p) = generate(&spec.parse().unwrap(), seed + 100 * (s * 3 + d) as u64) {
                    if seen.insert(p.to_text()) {
                        out.push(p.with_name(&format!("{spec}@{seed}")));
                    }
                }
            }
        }
        let spec = random_spec(shape, 0.4, false);
        if let Ok(p) = generate(&spec.parse().unwrap(), 7 + s as u64) {
            out.push(p.with_name(&format!("{spec}@7")));
        }
    }
    out
}

/// Lower intervals `Γ_x`, `rk x ≥ 2`, of the uniform posets in `posets`,
/// deduplicated, together with the cyclic members themselves.
pub fn cyclic_family(posets: &[RankedPoset]) -> Vec<RankedPoset> {
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut out = Vec::new();
    for p in posets.iter().filter(|p| p.is_uniform().uniform) {
        for x in p.non_star().filter(|&x| p.rank(x) >= 2) {
            let g = p.lower_interval(x);
            if seen.insert(g.to_text()) {
                let name = format!("{}[{}]", p.name().unwrap_or("?"), p.element_name(x));
                out.push(g.with_name(&name));
            }
        }
    }
    out
}
