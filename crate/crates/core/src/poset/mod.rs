//! Finite ranked posets with a distinguished minimum `*`.
//!
//! Elements are interned to integer ids ordered by `(rank, name)`, so `x < y`
//! always implies `id(x) < id(y)` and the star is id 0. Everything downstream
//! (chain enumeration, matrix layouts, witnesses) relies on that ordering.

mod generate;
mod text;

pub use generate::{generate, hat, prism, random_ranked, GeneratorSpec, RandomParams};
pub use text::parse;

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::PosetError;

pub type ElemId = usize;

/// Name of the minimum in files and reports.
pub const STAR: &str = "*";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedPoset {
    name: Option<String>,
    names: Vec<String>,
    ranks: Vec<usize>,
    lower: Vec<Vec<ElemId>>,
    upper: Vec<Vec<ElemId>>,
    /// `below[x][y]` is true iff `y < x`.
    below: Vec<Vec<bool>>,
    index: HashMap<String, ElemId>,
}

/// Outcome of the uniformity check, with the first failing element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Uniformity {
    pub uniform: bool,
    pub witness: Option<UniformityWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniformityWitness {
    pub element: String,
    /// Equivalence classes of the lower covers of `element`.
    pub classes: Vec<Vec<String>>,
}

pub(crate) fn valid_name(s: &str) -> bool {
    s == STAR || (!s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_'))
}

/// Minimal union-find used for classes and components.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

impl RankedPoset {
    /// Build and validate a poset from `(upper, lower)` cover pairs given by
    /// name. The star is always present, even with no covers.
    pub fn from_covers<I, S>(name: Option<String>, covers: I) -> Result<Self, PosetError>
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let mut lower_by_name: HashMap<String, BTreeSet<String>> = HashMap::new();
        lower_by_name.insert(STAR.to_string(), BTreeSet::new());
        for (u, l) in covers {
            let (u, l) = (u.into(), l.into());
            for n in [&u, &l] {
                if !valid_name(n) {
                    return Err(PosetError::Parse {
                        line: 0,
                        message: format!("invalid element name '{n}'"),
                    });
                }
            }
            if u == l {
                return Err(PosetError::NotRanked(format!("'{u}' cannot cover itself")));
            }
            if u == STAR {
                return Err(PosetError::NotRanked(format!(
                    "'*' must be the minimum but covers '{l}'"
                )));
            }
            lower_by_name.entry(l.clone()).or_default();
            lower_by_name.entry(u).or_default().insert(l);
        }

        let mut minimal: Vec<String> = lower_by_name
            .iter()
            .filter(|(n, low)| n.as_str() != STAR && low.is_empty())
            .map(|(n, _)| n.clone())
            .collect();
        if !minimal.is_empty() {
            minimal.sort();
            minimal.insert(0, STAR.to_string());
            return Err(PosetError::NoUniqueMinimum(minimal));
        }

        // Every element must reach the star going down.
        let mut upper_by_name: HashMap<&str, Vec<&str>> = HashMap::new();
        for (u, lows) in &lower_by_name {
            for l in lows {
                upper_by_name
                    .entry(l.as_str())
                    .or_default()
                    .push(u.as_str());
            }
        }
        let mut reached: BTreeSet<&str> = BTreeSet::new();
        let mut stack = vec![STAR];
        while let Some(x) = stack.pop() {
            if reached.insert(x) {
                if let Some(ups) = upper_by_name.get(x) {
                    stack.extend(ups.iter().copied());
                }
            }
        }
        let mut unreached: Vec<&String> = lower_by_name
            .keys()
            .filter(|n| !reached.contains(n.as_str()))
            .collect();
        unreached.sort();
        if let Some(n) = unreached.first() {
            return Err(PosetError::DanglingElement((*n).clone()));
        }

        // Ranks by memoized descent; a cycle or two lower covers of
        // different rank means no rank function exists.
        let mut rank_of: HashMap<&str, usize> = HashMap::new();
        rank_of.insert(STAR, 0);
        let mut names_sorted: Vec<&String> = lower_by_name.keys().collect();
        names_sorted.sort();
        for start in names_sorted {
            if rank_of.contains_key(start.as_str()) {
                continue;
            }
            let mut on_stack: BTreeSet<&str> = BTreeSet::new();
            let mut work: Vec<(&str, bool)> = vec![(start.as_str(), false)];
            while let Some((x, expanded)) = work.pop() {
                if rank_of.contains_key(x) {
                    continue;
                }
                if expanded {
                    let lows = &lower_by_name[x];
                    let mut r: Option<(usize, &str)> = None;
                    for l in lows {
                        let rl = rank_of[l.as_str()];
                        match r {
                            None => r = Some((rl, l)),
                            Some((r0, l0)) if r0 != rl => {
                                return Err(PosetError::NotRanked(format!(
                                    "'{x}' covers '{l0}' (rank {r0}) and '{l}' (rank {rl})"
                                )));
                            }
                            _ => {}
                        }
                    }
                    rank_of.insert(x, r.expect("non-star element has a lower cover").0 + 1);
                    on_stack.remove(x);
                    continue;
                }
                if !on_stack.insert(x) {
                    return Err(PosetError::NotRanked(format!("cycle through '{x}'")));
                }
                work.push((x, true));
                for l in &lower_by_name[x] {
                    if !rank_of.contains_key(l.as_str()) {
                        if on_stack.contains(l.as_str()) {
                            return Err(PosetError::NotRanked(format!("cycle through '{l}'")));
                        }
                        work.push((l.as_str(), false));
                    }
                }
            }
        }

        let mut order: Vec<(usize, &String)> = lower_by_name
            .keys()
            .map(|n| (rank_of[n.as_str()], n))
            .collect();
        order.sort();
        let names: Vec<String> = order.iter().map(|(_, n)| (*n).clone()).collect();
        let ranks: Vec<usize> = order.iter().map(|(r, _)| *r).collect();
        let index: HashMap<String, ElemId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let n = names.len();
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for (u, lows) in &lower_by_name {
            let ui = index[u];
            for l in lows {
                let li = index[l];
                lower[ui].push(li);
                upper[li].push(ui);
            }
        }
        for v in lower.iter_mut().chain(upper.iter_mut()) {
            v.sort_unstable();
        }
        let mut below = vec![vec![false; n]; n];
        for x in 0..n {
            for &l in &lower[x] {
                below[x][l] = true;
                let (done, rest) = below.split_at_mut(x);
                for (y, flag) in done[l].iter().enumerate() {
                    if *flag {
                        rest[0][y] = true;
                    }
                }
            }
        }
        Ok(RankedPoset {
            name,
            names,
            ranks,
            lower,
            upper,
            below,
            index,
        })
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Number of elements, star included.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// A poset always contains its star, so this is never true; provided
    /// for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn star(&self) -> ElemId {
        0
    }

    pub fn elements(&self) -> std::ops::Range<ElemId> {
        0..self.len()
    }

    pub fn non_star(&self) -> std::ops::Range<ElemId> {
        1..self.len()
    }

    pub fn element_name(&self, x: ElemId) -> &str {
        &self.names[x]
    }

    pub fn names_of(&self, xs: &[ElemId]) -> Vec<String> {
        xs.iter().map(|&x| self.names[x].clone()).collect()
    }

    pub fn id(&self, name: &str) -> Result<ElemId, PosetError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| PosetError::UnknownElement(name.to_string()))
    }

    pub fn rank(&self, x: ElemId) -> usize {
        self.ranks[x]
    }

    pub fn max_rank(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    /// Lower covers of `x` (the star appears for rank-1 elements).
    pub fn lower_covers(&self, x: ElemId) -> &[ElemId] {
        &self.lower[x]
    }

    pub fn upper_covers(&self, x: ElemId) -> &[ElemId] {
        &self.upper[x]
    }

    /// Lower covers other than the star.
    pub fn generator_covers(&self, x: ElemId) -> impl Iterator<Item = ElemId> + '_ {
        self.lower[x].iter().copied().filter(|&y| y != 0)
    }

    pub fn covers(&self, upper: ElemId, lower: ElemId) -> bool {
        self.lower[upper].binary_search(&lower).is_ok()
    }

    /// `x < y`
    pub fn lt(&self, x: ElemId, y: ElemId) -> bool {
        self.below[y][x]
    }

    pub fn le(&self, x: ElemId, y: ElemId) -> bool {
        x == y || self.lt(x, y)
    }

    pub fn comparable(&self, x: ElemId, y: ElemId) -> bool {
        self.lt(x, y) || self.lt(y, x)
    }

    pub fn elements_of_rank(&self, r: usize) -> Vec<ElemId> {
        self.elements().filter(|&x| self.ranks[x] == r).collect()
    }

    pub fn maximal_elements(&self) -> Vec<ElemId> {
        self.elements()
            .filter(|&x| self.upper[x].is_empty())
            .collect()
    }

    /// All cover pairs `(upper, lower)` sorted by `(rank(U), U, L)`.
    pub fn cover_pairs(&self) -> Vec<(ElemId, ElemId)> {
        let mut out = Vec::new();
        for u in self.elements() {
            for &l in &self.lower[u] {
                out.push((u, l));
            }
        }
        out
    }

    pub fn num_covers(&self) -> usize {
        self.lower.iter().map(Vec::len).sum()
    }

    /// `S_x(k)`: elements `y <= x` with `rk(y) = rk(x) - k`.
    pub fn s_set(&self, x: ElemId, k: usize) -> Result<Vec<ElemId>, PosetError> {
        let rx = self.ranks[x];
        if k > rx {
            return Err(PosetError::RankOutOfRange(format!(
                "k = {k} exceeds rank {rx} of '{}'",
                self.names[x]
            )));
        }
        Ok(self
            .elements()
            .filter(|&y| self.ranks[y] + k == rx && self.le(y, x))
            .collect())
    }

    /// Classes of the relation "share a lower cover" on the lower covers of
    /// `x`, generated transitively. The star counts as a common lower cover.
    pub fn lower_cover_classes(&self, x: ElemId) -> Vec<Vec<ElemId>> {
        let covers = &self.lower[x];
        let mut uf = UnionFind::new(covers.len());
        for i in 0..covers.len() {
            for j in i + 1..covers.len() {
                let (a, b) = (covers[i], covers[j]);
                if self.lower[a]
                    .iter()
                    .any(|c| self.lower[b].binary_search(c).is_ok())
                {
                    uf.union(i, j);
                }
            }
        }
        let mut classes: Vec<Vec<ElemId>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for i in 0..covers.len() {
            let r = uf.find(i);
            let s = *slot.entry(r).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[s].push(covers[i]);
        }
        classes
    }

    pub fn is_uniform(&self) -> Uniformity {
        for x in self.non_star() {
            let classes = self.lower_cover_classes(x);
            if classes.len() > 1 {
                return Uniformity {
                    uniform: false,
                    witness: Some(UniformityWitness {
                        element: self.names[x].clone(),
                        classes: classes.iter().map(|c| self.names_of(c)).collect(),
                    }),
                };
            }
        }
        Uniformity {
            uniform: true,
            witness: None,
        }
    }

    /// A single maximal element.
    pub fn is_cyclic(&self) -> bool {
        self.maximal_elements().len() == 1
    }

    /// All maximal elements share one rank.
    pub fn is_pure(&self) -> bool {
        let maxes = self.maximal_elements();
        maxes.iter().all(|&m| self.ranks[m] == self.ranks[maxes[0]])
    }

    /// Connected components of the comparability graph on `elements`.
    pub fn comparability_components(&self, elements: &[ElemId]) -> usize {
        let mut uf = UnionFind::new(elements.len());
        let mut count = elements.len();
        for i in 0..elements.len() {
            for j in i + 1..elements.len() {
                if self.comparable(elements[i], elements[j]) && uf.union(i, j) {
                    count -= 1;
                }
            }
        }
        count
    }

    /// Number of elements of each rank, from rank 0 up.
    pub fn rank_profile(&self) -> Vec<usize> {
        let mut out = vec![0; self.max_rank() + 1];
        for &r in &self.ranks {
            out[r] += 1;
        }
        out
    }

    /// Subposet on `elements` with inherited order; `minimum` becomes the new
    /// star. Covers are recomputed inside the subset.
    pub fn induced(&self, elements: &[ElemId], minimum: ElemId) -> Result<RankedPoset, PosetError> {
        let mut set: Vec<ElemId> = elements.to_vec();
        set.sort_unstable();
        set.dedup();
        if set.binary_search(&minimum).is_err() {
            return Err(PosetError::BadInterval("minimum not in subset".into()));
        }
        let rename = |x: ElemId| -> String {
            if x == minimum {
                STAR.to_string()
            } else {
                self.names[x].clone()
            }
        };
        let mut covers = Vec::new();
        for &u in &set {
            if u == minimum {
                continue;
            }
            if !self.lt(minimum, u) {
                return Err(PosetError::BadInterval(format!(
                    "'{}' is not above the chosen minimum",
                    self.names[u]
                )));
            }
            for &l in &set {
                if !self.lt(l, u) {
                    continue;
                }
                let between = set.iter().any(|&w| self.lt(l, w) && self.lt(w, u));
                if !between {
                    covers.push((rename(u), rename(l)));
                }
            }
        }
        RankedPoset::from_covers(None, covers)
    }

    /// `[a, b]` with `a` as the new star.
    pub fn closed_interval(&self, a: ElemId, b: ElemId) -> Result<RankedPoset, PosetError> {
        if !self.le(a, b) {
            return Err(PosetError::BadInterval(format!(
                "'{}' is not below '{}'",
                self.names[a], self.names[b]
            )));
        }
        let elems: Vec<ElemId> = self
            .elements()
            .filter(|&x| self.le(a, x) && self.le(x, b))
            .collect();
        self.induced(&elems, a)
    }

    /// `Γ_x = [*, x]`.
    pub fn lower_interval(&self, x: ElemId) -> RankedPoset {
        self.closed_interval(0, x)
            .expect("star is below every element")
    }

    /// `Γ^{>k}`: elements of rank above `k` plus the star.
    pub fn truncation(&self, k: usize) -> RankedPoset {
        let elems: Vec<ElemId> = self
            .elements()
            .filter(|&x| x == 0 || self.ranks[x] > k)
            .collect();
        self.induced(&elems, 0)
            .expect("truncation of a ranked poset is ranked")
    }

    /// The poset with the listed elements removed (they must be maximal,
    /// or at least not needed by anything that stays).
    pub fn without(&self, removed: &[ElemId]) -> Result<RankedPoset, PosetError> {
        let elems: Vec<ElemId> = self.elements().filter(|x| !removed.contains(x)).collect();
        self.induced(&elems, 0)
    }

    pub fn subposet(&self, kind: SubPosetKind) -> Result<SubPoset<'_>, PosetError> {
        let elements: Vec<ElemId> = match kind {
            SubPosetKind::LowerInterval { top } => {
                self.elements().filter(|&y| self.le(y, top)).collect()
            }
            SubPosetKind::ClosedInterval { low, high } => {
                if !self.le(low, high) {
                    return Err(PosetError::BadInterval(format!(
                        "'{}' is not below '{}'",
                        self.names[low], self.names[high]
                    )));
                }
                self.elements()
                    .filter(|&y| self.le(low, y) && self.le(y, high))
                    .collect()
            }
            SubPosetKind::OpenInterval { low, high } => {
                if !self.lt(low, high) {
                    return Err(PosetError::BadInterval(format!(
                        "'{}' is not strictly below '{}'",
                        self.names[low], self.names[high]
                    )));
                }
                self.elements()
                    .filter(|&y| self.lt(low, y) && self.lt(y, high))
                    .collect()
            }
            SubPosetKind::Truncation { k } => self
                .elements()
                .filter(|&y| y == 0 || self.ranks[y] > k)
                .collect(),
            SubPosetKind::RankWindow { top, level } => {
                let r = self.ranks[top];
                if level == 0 || level > r {
                    return Err(PosetError::BadInterval(format!(
                        "level {level} outside 1..={r} for '{}'",
                        self.names[top]
                    )));
                }
                self.non_star()
                    .filter(|&w| self.lt(w, top) && r - self.ranks[w] < level)
                    .collect()
            }
        };
        Ok(SubPoset {
            parent: self,
            kind,
            elements,
        })
    }

    /// Serialize in the poset text format, covers sorted by `(rank(U), U, L)`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(n) = &self.name {
            out.push_str(&format!("poset {n}\n"));
        }
        for (u, l) in self.cover_pairs() {
            out.push_str(&format!("{} > {}\n", self.names[u], self.names[l]));
        }
        out
    }
}

/// Which subposet of a ranked poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubPosetKind {
    /// `Γ_x = [*, x]`
    LowerInterval { top: ElemId },
    /// `[a, b]`; as a ranked poset, `a` is the new star.
    ClosedInterval { low: ElemId, high: ElemId },
    /// `(a, b)`
    OpenInterval { low: ElemId, high: ElemId },
    /// `Γ^{>k}` (star included)
    Truncation { k: usize },
    /// `Γ_{a,i} = { w < a : rk(a) - rk(w) <= i - 1 }` (star excluded)
    RankWindow { top: ElemId, level: usize },
}

/// An element subset of a parent poset with the inherited order.
#[derive(Debug, Clone)]
pub struct SubPoset<'a> {
    parent: &'a RankedPoset,
    kind: SubPosetKind,
    elements: Vec<ElemId>,
}

impl<'a> SubPoset<'a> {
    pub fn parent(&self) -> &'a RankedPoset {
        self.parent
    }

    pub fn kind(&self) -> SubPosetKind {
        self.kind
    }

    /// Parent ids, ascending.
    pub fn elements(&self) -> &[ElemId] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Rank inside the subposet; for truncations this is `rk(a) - k`.
    pub fn rank(&self, x: ElemId) -> usize {
        match self.kind {
            SubPosetKind::Truncation { k } if x != 0 => self.parent.rank(x) - k,
            SubPosetKind::ClosedInterval { low, .. } => self.parent.rank(x) - self.parent.rank(low),
            _ => self.parent.rank(x),
        }
    }

    pub fn comparability_components(&self) -> usize {
        self.parent.comparability_components(&self.elements)
    }

    /// Re-intern as a standalone ranked poset. Only kinds with a minimum
    /// qualify.
    pub fn to_ranked(&self) -> Result<RankedPoset, PosetError> {
        match self.kind {
            SubPosetKind::LowerInterval { .. } | SubPosetKind::Truncation { .. } => {
                self.parent.induced(&self.elements, 0)
            }
            SubPosetKind::ClosedInterval { low, .. } => self.parent.induced(&self.elements, low),
            _ => Err(PosetError::BadInterval(
                "open intervals and rank windows have no minimum".into(),
            )),
        }
    }
}

/// `Γ ∨_{(v,v')} Ω`: disjoint union with the stars identified and the rank-1
/// elements `v`, `v'` identified. Colliding names from `o` get a `_w` suffix.
pub fn wedge(
    g: &RankedPoset,
    o: &RankedPoset,
    v: ElemId,
    v2: ElemId,
) -> Result<RankedPoset, PosetError> {
    if g.rank(v) != 1 {
        return Err(PosetError::RankNotOne(g.element_name(v).to_string()));
    }
    if o.rank(v2) != 1 {
        return Err(PosetError::RankNotOne(o.element_name(v2).to_string()));
    }
    let mut taken: BTreeSet<String> = g.names.iter().cloned().collect();
    let mut rename: Vec<String> = Vec::with_capacity(o.len());
    for x in o.elements() {
        let n = if x == 0 {
            STAR.to_string()
        } else if x == v2 {
            g.element_name(v).to_string()
        } else {
            let mut n = o.element_name(x).to_string();
            while taken.contains(&n) {
                n.push_str("_w");
            }
            taken.insert(n.clone());
            n
        };
        rename.push(n);
    }
    let mut covers: Vec<(String, String)> = g
        .cover_pairs()
        .into_iter()
        .map(|(u, l)| (g.names[u].clone(), g.names[l].clone()))
        .collect();
    covers.extend(
        o.cover_pairs()
            .into_iter()
            .map(|(u, l)| (rename[u].clone(), rename[l].clone())),
    );
    let name = match (g.name(), o.name()) {
        (Some(a), Some(b)) => Some(format!("{a}_wedge_{b}")),
        _ => None,
    };
    RankedPoset::from_covers(name, covers)
}
