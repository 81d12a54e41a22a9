//! Graded dimensions of the quadratic dual `R^!`.
//!
//! The orthogonal complement of the relations of `R` is spanned by the
//! binomials `e_x ⊗ (e_y - e_z)` for non-star covers `y`, `z` of `x`. A
//! quotient of the tensor algebra by binomials of this shape has one basis
//! element per class of words under the moves "replace the letter after `x`
//! by another non-star cover of `x`", independently of the field.

use std::collections::BTreeMap;

use crate::error::AnalysisError;
use crate::poset::{ElemId, RankedPoset, UnionFind};

/// Default cap on `m^n` word coordinates for [`dual_dims_tensor`].
pub const DEFAULT_TENSOR_BOUND: u128 = 5_000_000;

/// Classes of words of length `n` for `n = 0..=max_degree`, counted by
/// grouping classes by the set of last letters they contain.
///
/// A class of words `u` with last-letter set `L` splits the words `u·a` into
/// components of the letters under "`a`, `z` are both non-star covers of
/// some `x ∈ L`"; each component is a class whose last-letter set is that
/// component.
pub fn dual_dims(p: &RankedPoset, max_degree: usize) -> Vec<u128> {
    let letters: Vec<ElemId> = p.non_star().collect();
    let m = letters.len();
    let mut dims = vec![1u128];
    if max_degree == 0 {
        return dims;
    }
    dims.push(m as u128);
    let mut states: BTreeMap<Vec<ElemId>, u128> = letters.iter().map(|&x| (vec![x], 1)).collect();
    let mut components_of: BTreeMap<Vec<ElemId>, Vec<Vec<ElemId>>> = BTreeMap::new();
    for _ in 2..=max_degree {
        let mut next: BTreeMap<Vec<ElemId>, u128> = BTreeMap::new();
        for (set, count) in &states {
            let comps = components_of
                .entry(set.clone())
                .or_insert_with(|| letter_components(p, set));
            for c in comps.iter() {
                let e = next.entry(c.clone()).or_insert(0);
                *e = e.checked_add(*count).expect("dual dimension overflow");
            }
        }
        dims.push(
            next.values()
                .try_fold(0u128, |a, &b| a.checked_add(b))
                .expect("dual dimension overflow"),
        );
        states = next;
    }
    dims
}

fn letter_components(p: &RankedPoset, last: &[ElemId]) -> Vec<Vec<ElemId>> {
    let n = p.len();
    let mut uf = UnionFind::new(n);
    for &x in last {
        let covers: Vec<ElemId> = p.generator_covers(x).collect();
        for w in covers.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let mut groups: BTreeMap<usize, Vec<ElemId>> = BTreeMap::new();
    for x in p.non_star() {
        groups.entry(uf.find(x)).or_default().push(x);
    }
    groups.into_values().collect()
}

/// The same dimensions from an explicit union-find over all `m^n` words.
/// Refuses once `m^n` exceeds `bound`.
pub fn dual_dims_tensor(
    p: &RankedPoset,
    max_degree: usize,
    bound: u128,
) -> Result<Vec<u128>, AnalysisError> {
    let letters: Vec<ElemId> = p.non_star().collect();
    let m = letters.len();
    let slot = |x: ElemId| x - 1;
    // First non-star cover of each letter, the hub its other covers join.
    let covers: Vec<Vec<usize>> = letters
        .iter()
        .map(|&x| p.generator_covers(x).map(slot).collect())
        .collect();
    let mut dims = vec![1u128];
    for n in 1..=max_degree {
        let size = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if size > bound {
            return Err(AnalysisError::DegreeTooLarge {
                degree: n,
                coordinates: size,
                bound,
            });
        }
        let size = size as usize;
        let mut uf = UnionFind::new(size);
        let mut digits = vec![0usize; n];
        let mut components = size;
        for w in 0..size {
            let mut c = w;
            for d in digits.iter_mut().rev() {
                *d = c % m;
                c /= m;
            }
            for i in 0..n.saturating_sub(1) {
                let cs = &covers[digits[i]];
                let next = digits[i + 1];
                if cs.len() > 1 && cs.contains(&next) && next != cs[0] {
                    let place = m.pow((n - 2 - i) as u32);
                    let other = w - next * place + cs[0] * place;
                    if uf.union(w, other) {
                        components -= 1;
                    }
                }
            }
        }
        dims.push(components as u128);
    }
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, PrimeField, Rationals};
    use crate::linalg::{rank, Matrix};
    use crate::poset::{generate, parse};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn gen(s: &str, seed: u64) -> RankedPoset {
        generate(&s.parse().unwrap(), seed).unwrap()
    }

    /// `m^n - rank` of the span of `V^{⊗i} ⊗ e_x ⊗ (e_y - e_z) ⊗ V^{⊗(n-2-i)}`
    /// with `y`, `z` consecutive in the given cover order.
    fn span_rank_dims<F: Field>(
        p: &RankedPoset,
        field: &F,
        max_degree: usize,
        order: &dyn Fn(ElemId) -> Vec<ElemId>,
    ) -> Vec<u128> {
        let m = p.len() - 1;
        let mut quad: Vec<Vec<(usize, i64)>> = Vec::new();
        for x in p.non_star() {
            let cs = order(x);
            for w in cs.windows(2) {
                quad.push(vec![
                    ((x - 1) * m + w[0] - 1, 1),
                    ((x - 1) * m + w[1] - 1, -1),
                ]);
            }
        }
        let mut dims = vec![1u128];
        for n in 1..=max_degree {
            let size = m.pow(n as u32);
            let mut rows: Vec<Vec<F::Elem>> = Vec::new();
            for i in 0..n.saturating_sub(1) {
                let right = m.pow((n - 2 - i) as u32);
                for l in 0..m.pow(i as u32) {
                    for r in 0..right {
                        for q in &quad {
                            let mut v = vec![field.zero(); size];
                            for &(ab, c) in q {
                                v[(l * m * m + ab) * right + r] = field.from_i64(c);
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
            dims.push((size - rk) as u128);
        }
        dims
    }

    #[test]
    fn by_hand() {
        assert_eq!(dual_dims(&gen("chain:2", 0), 3), vec![1, 2, 4, 8]);
        assert_eq!(dual_dims(&gen("boolean:2", 0), 3), vec![1, 3, 8, 21]);
        assert_eq!(dual_dims(&gen("boolean:3", 0), 1), vec![1, 7]);
        assert_eq!(dual_dims(&gen("chain:0", 0), 2), vec![1, 0, 0]);
    }

    #[test]
    fn tensor_route_agrees_and_guards() {
        for s in ["chain:3", "boolean:2", "boolean:3", "simplex_boundary:2"] {
            let p = gen(s, 0);
            assert_eq!(
                dual_dims_tensor(&p, 4, DEFAULT_TENSOR_BOUND).unwrap(),
                dual_dims(&p, 4)
            );
        }
        let p = gen("boolean:4", 0);
        assert!(matches!(
            dual_dims_tensor(&p, 8, DEFAULT_TENSOR_BOUND),
            Err(AnalysisError::DegreeTooLarge { degree: 6, .. })
        ));
    }

    #[test]
    fn explicit_span_rank_in_two_orders() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let posets = vec![
            gen("chain:2", 0),
            gen("boolean:2", 0),
            gen("boolean:3", 0),
            parse("a > *\nb > *\nc > a\nc > b\nd > a\nd > b").unwrap(),
        ];
        for p in posets {
            let deg = if p.len() > 5 { 3 } else { 4 };
            let sorted = |x: ElemId| p.generator_covers(x).collect::<Vec<_>>();
            let shuffled: Vec<Vec<ElemId>> = p
                .elements()
                .map(|x| {
                    let mut c = sorted(x);
                    c.shuffle(&mut rng);
                    c
                })
                .collect();
            let a = span_rank_dims(&p, &Rationals, deg, &sorted);
            let b = span_rank_dims(&p, &PrimeField::new(2), deg, &|x| shuffled[x].clone());
            assert_eq!(a, b);
            assert_eq!(a, dual_dims(&p, deg));
        }
    }
}
