//! Generators for the standard families and for random corpora.
//!
//! Specs are written as short strings: `chain:3`, `boolean:4`,
//! `simplex_boundary:3`, `prism(simplex_boundary:2)`, `hat(chain:2)`,
//! `sphere_cross_interval_hat` and `random:2,3,3:0.5[:uniform]`, where the
//! comma list gives the number of elements of each rank from 1 upward.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ElemId, RankedPoset, STAR};
use crate::error::PosetError;

const MAX_BOOLEAN: usize = 10;
const MAX_SIMPLEX: usize = 8;
const MAX_ELEMENTS: usize = 5000;
const RANDOM_ATTEMPTS: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct RandomParams {
    /// Element count at each rank, starting at rank 1.
    pub levels: Vec<usize>,
    /// Probability of each candidate lower cover.
    pub density: f64,
    pub uniform: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Chain(usize),
    Boolean(usize),
    SimplexBoundary(usize),
    Prism(Box<GeneratorSpec>),
    Hat(Box<GeneratorSpec>),
    SphereCrossIntervalHat,
    Random(RandomParams),
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Chain(n) => write!(f, "chain:{n}"),
            GeneratorSpec::Boolean(n) => write!(f, "boolean:{n}"),
            GeneratorSpec::SimplexBoundary(n) => write!(f, "simplex_boundary:{n}"),
            GeneratorSpec::Prism(inner) => write!(f, "prism({inner})"),
            GeneratorSpec::Hat(inner) => write!(f, "hat({inner})"),
            GeneratorSpec::SphereCrossIntervalHat => write!(f, "sphere_cross_interval_hat"),
            GeneratorSpec::Random(p) => {
                let levels: Vec<String> = p.levels.iter().map(|l| l.to_string()).collect();
                write!(f, "random:{}:{}", levels.join(","), p.density)?;
                if p.uniform {
                    write!(f, ":uniform")?;
                }
                Ok(())
            }
        }
    }
}

fn bad(msg: impl Into<String>) -> PosetError {
    PosetError::BadParams(msg.into())
}

fn parse_count(s: &str, what: &str) -> Result<usize, PosetError> {
    s.trim().parse().map_err(|_| {
        bad(format!(
            "{what}: expected a non-negative integer, got '{s}'"
        ))
    })
}

impl FromStr for GeneratorSpec {
    type Err = PosetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        for (prefix, wrap) in [
            (
                "prism(",
                GeneratorSpec::Prism as fn(Box<GeneratorSpec>) -> GeneratorSpec,
            ),
            ("hat(", GeneratorSpec::Hat),
        ] {
            if let Some(rest) = s.strip_prefix(prefix) {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| bad(format!("unbalanced parentheses in '{s}'")))?;
                return Ok(wrap(Box::new(inner.parse()?)));
            }
        }
        let (kind, args) = s.split_once(':').unwrap_or((s, ""));
        match kind {
            "chain" => Ok(GeneratorSpec::Chain(parse_count(args, "chain")?)),
            "boolean" => Ok(GeneratorSpec::Boolean(parse_count(args, "boolean")?)),
            "simplex_boundary" => Ok(GeneratorSpec::SimplexBoundary(parse_count(
                args,
                "simplex_boundary",
            )?)),
            "sphere_cross_interval_hat" if args.is_empty() => {
                Ok(GeneratorSpec::SphereCrossIntervalHat)
            }
            "random" => {
                let mut parts = args.split(':');
                let levels = parts
                    .next()
                    .filter(|l| !l.is_empty())
                    .ok_or_else(|| bad("random: missing level sizes"))?
                    .split(',')
                    .map(|l| parse_count(l, "random level"))
                    .collect::<Result<Vec<_>, _>>()?;
                let density: f64 = match parts.next() {
                    Some(d) => d
                        .parse()
                        .map_err(|_| bad(format!("random: bad density '{d}'")))?,
                    None => 0.5,
                };
                let uniform = match parts.next() {
                    None => false,
                    Some("uniform") => true,
                    Some(o) => return Err(bad(format!("random: unknown flag '{o}'"))),
                };
                if parts.next().is_some() {
                    return Err(bad("random: too many fields"));
                }
                Ok(GeneratorSpec::Random(RandomParams {
                    levels,
                    density,
                    uniform,
                }))
            }
            _ => Err(bad(format!("unknown generator '{s}'"))),
        }
    }
}

/// Build the poset described by `spec`. The seed only affects `random`.
pub fn generate(spec: &GeneratorSpec, seed: u64) -> Result<RankedPoset, PosetError> {
    let p = match spec {
        GeneratorSpec::Chain(n) => chain(*n)?,
        GeneratorSpec::Boolean(n) => boolean(*n)?,
        GeneratorSpec::SimplexBoundary(n) => simplex_boundary(*n)?,
        GeneratorSpec::Prism(inner) => prism(&generate(inner, seed)?)?,
        GeneratorSpec::Hat(inner) => hat(&generate(inner, seed)?)?,
        GeneratorSpec::SphereCrossIntervalHat => hat(&prism(&simplex_boundary(3)?)?)?,
        GeneratorSpec::Random(params) => random_ranked(params, seed)?,
    };
    Ok(p.with_name(spec.to_string()))
}

fn chain(n: usize) -> Result<RankedPoset, PosetError> {
    if n > MAX_ELEMENTS {
        return Err(bad(format!("chain length {n} above {MAX_ELEMENTS}")));
    }
    let name = |i: usize| {
        if i == 0 {
            STAR.to_string()
        } else {
            format!("c{i}")
        }
    };
    RankedPoset::from_covers(None, (1..=n).map(|i| (name(i), name(i - 1))))
}

fn subset_name(prefix: &str, set: &[usize]) -> String {
    if set.is_empty() {
        return STAR.to_string();
    }
    let parts: Vec<String> = set.iter().map(|i| i.to_string()).collect();
    format!("{prefix}{}", parts.join("_"))
}

/// Covers of the lattice of subsets of `ground` whose size lies in
/// `1..=max_size`; the empty set is the star.
fn subset_covers(prefix: &str, ground: &[usize], max_size: usize) -> Vec<(String, String)> {
    let mut covers = Vec::new();
    let n = ground.len();
    for mask in 1u32..(1u32 << n) {
        if mask.count_ones() as usize > max_size {
            continue;
        }
        let set: Vec<usize> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| ground[i])
            .collect();
        for drop in 0..set.len() {
            let mut lower = set.clone();
            lower.remove(drop);
            covers.push((subset_name(prefix, &set), subset_name(prefix, &lower)));
        }
    }
    covers
}

fn boolean(n: usize) -> Result<RankedPoset, PosetError> {
    if n > MAX_BOOLEAN {
        return Err(bad(format!("boolean rank {n} above {MAX_BOOLEAN}")));
    }
    let ground: Vec<usize> = (1..=n).collect();
    RankedPoset::from_covers(None, subset_covers("s", &ground, n))
}

/// Face poset of the boundary of the n-simplex on vertices `0..=n`, plus star.
fn simplex_boundary(n: usize) -> Result<RankedPoset, PosetError> {
    if n > MAX_SIMPLEX {
        return Err(bad(format!("simplex dimension {n} above {MAX_SIMPLEX}")));
    }
    let ground: Vec<usize> = (0..=n).collect();
    RankedPoset::from_covers(None, subset_covers("f", &ground, n))
}

/// Face poset of `K × [0,1]` from the face poset of `K`: each cell `c` gives
/// the cells `c_0`, `c_1` of the same rank and `c_I` one rank higher.
pub fn prism(p: &RankedPoset) -> Result<RankedPoset, PosetError> {
    if 3 * p.len() > MAX_ELEMENTS {
        return Err(bad("prism input too large"));
    }
    let mut covers = Vec::new();
    let nm = |x: ElemId, s: &str| format!("{}_{s}", p.element_name(x));
    for c in p.non_star() {
        let lows: Vec<ElemId> = p.generator_covers(c).collect();
        for e in ["0", "1"] {
            if lows.is_empty() {
                covers.push((nm(c, e), STAR.to_string()));
            }
            for &l in &lows {
                covers.push((nm(c, e), nm(l, e)));
            }
            covers.push((nm(c, "I"), nm(c, e)));
        }
        for &l in &lows {
            covers.push((nm(c, "I"), nm(l, "I")));
        }
    }
    RankedPoset::from_covers(None, covers)
}

/// Adjoin a new top `X` above every maximal element of a pure poset.
pub fn hat(p: &RankedPoset) -> Result<RankedPoset, PosetError> {
    if !p.is_pure() {
        return Err(bad("hat needs a pure poset"));
    }
    let mut top = "X".to_string();
    let mut i = 1;
    while p.id(&top).is_ok() {
        top = format!("X{i}");
        i += 1;
    }
    let mut covers: Vec<(String, String)> = p
        .cover_pairs()
        .into_iter()
        .map(|(u, l)| (p.element_name(u).to_string(), p.element_name(l).to_string()))
        .collect();
    for m in p.maximal_elements() {
        covers.push((top.clone(), p.element_name(m).to_string()));
    }
    RankedPoset::from_covers(None, covers)
}

/// Random ranked poset built level by level. Each element of rank `r >= 2`
/// takes every element of rank `r - 1` as a lower cover with probability
/// `density`, and at least one. With `uniform`, candidates are restricted to
/// elements sharing a lower cover with those already chosen, which keeps the
/// lower covers in one class.
pub fn random_ranked(params: &RandomParams, seed: u64) -> Result<RankedPoset, PosetError> {
    if !(params.density > 0.0 && params.density <= 1.0) {
        return Err(bad(format!("density {} outside (0, 1]", params.density)));
    }
    if params.levels.iter().sum::<usize>() > MAX_ELEMENTS {
        return Err(bad("too many elements"));
    }
    if params.levels.iter().skip(1).any(|&l| l > 0) && params.levels.contains(&0) {
        return Err(bad("empty level below a non-empty one"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_ATTEMPTS {
        let p = random_attempt(params, &mut rng)?;
        if !params.uniform || p.is_uniform().uniform {
            return Ok(p);
        }
    }
    Err(bad("no uniform poset found with these parameters"))
}

fn random_attempt(params: &RandomParams, rng: &mut ChaCha8Rng) -> Result<RankedPoset, PosetError> {
    let name = |r: usize, i: usize| format!("r{r}_{i}");
    let mut covers: Vec<(String, String)> = Vec::new();
    // lower[r][i] = indices (in level r-1) of the lower covers of element i.
    let mut lower: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
    for (idx, &count) in params.levels.iter().enumerate() {
        let r = idx + 1;
        let mut level = Vec::with_capacity(count);
        for i in 0..count {
            if r == 1 {
                covers.push((name(1, i), STAR.to_string()));
                level.push(Vec::new());
                continue;
            }
            let prev = &lower[r - 1];
            let below = prev.len();
            let mut chosen: Vec<usize> = Vec::new();
            if params.uniform {
                let mut order: Vec<usize> = (0..below).collect();
                order.shuffle(rng);
                chosen.push(order[0]);
                let mut rejected = vec![false; below];
                loop {
                    let mut grew = false;
                    for &cand in &order {
                        if chosen.contains(&cand) || rejected[cand] {
                            continue;
                        }
                        let linked = r == 2
                            || chosen
                                .iter()
                                .any(|&c| prev[c].iter().any(|l| prev[cand].contains(l)));
                        if !linked {
                            continue;
                        }
                        if rng.gen_bool(params.density) {
                            chosen.push(cand);
                            grew = true;
                        } else {
                            rejected[cand] = true;
                        }
                    }
                    if !grew {
                        break;
                    }
                }
            } else {
                for cand in 0..below {
                    if rng.gen_bool(params.density) {
                        chosen.push(cand);
                    }
                }
                if chosen.is_empty() {
                    chosen.push(rng.gen_range(0..below));
                }
            }
            chosen.sort_unstable();
            for &c in &chosen {
                covers.push((name(r, i), name(r - 1, c)));
            }
            level.push(chosen);
        }
        lower.push(level);
    }
    RankedPoset::from_covers(None, covers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(s: &str) -> RankedPoset {
        generate(&s.parse().unwrap(), 7).unwrap()
    }

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "chain:3",
            "boolean:4",
            "simplex_boundary:2",
            "prism(simplex_boundary:3)",
            "hat(prism(chain:1))",
            "sphere_cross_interval_hat",
            "random:2,3,3:0.5",
            "random:3,3:0.25:uniform",
        ] {
            let spec: GeneratorSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("boolean".parse::<GeneratorSpec>().is_err());
        assert!("prism(chain:2".parse::<GeneratorSpec>().is_err());
        assert!("random:2:0.5:wild".parse::<GeneratorSpec>().is_err());
        assert!("torus".parse::<GeneratorSpec>().is_err());
    }

    #[test]
    fn family_sizes() {
        let b3 = gen("boolean:3");
        assert_eq!(b3.len(), 8);
        assert_eq!(b3.rank_profile(), vec![1, 3, 3, 1]);
        assert_eq!(gen("chain:4").rank_profile(), vec![1; 5]);
        assert_eq!(gen("simplex_boundary:3").rank_profile(), vec![1, 4, 6, 4]);
        let pr = gen("prism(simplex_boundary:3)");
        assert_eq!(pr.rank_profile(), vec![1, 8, 16, 14, 4]);
        let s = gen("sphere_cross_interval_hat");
        assert_eq!(s.len(), 44);
        assert_eq!(s.rank(s.id("X").unwrap()), 5);
        assert!(s.is_cyclic());
        let c = gen("chain:2");
        assert_eq!(hat(&c).unwrap().max_rank(), 3);
        let mixed = crate::poset::parse("a > *\nb > *\nc > a").unwrap();
        assert!(hat(&mixed).is_err());
        assert!(generate(&GeneratorSpec::Boolean(11), 0).is_err());
    }

    #[test]
    fn prism_of_an_edge_is_a_square() {
        let edge = gen("simplex_boundary:1");
        assert_eq!(edge.rank_profile(), vec![1, 2]);
        // Two points times an interval: two disjoint segments.
        assert_eq!(prism(&edge).unwrap().rank_profile(), vec![1, 4, 2]);
        // A segment (two vertices and the edge) gives the full square cell.
        let seg = crate::poset::parse("a > *\nb > *\ne > a\ne > b").unwrap();
        assert_eq!(prism(&seg).unwrap().rank_profile(), vec![1, 4, 4, 1]);
    }

    #[test]
    fn hat_avoids_name_clash() {
        let p = crate::poset::parse("X > *").unwrap();
        let h = hat(&p).unwrap();
        assert!(h.id("X1").is_ok());
        assert_eq!(h.max_rank(), 2);
    }

    #[test]
    fn random_is_reproducible_and_uniform_on_request() {
        let spec: GeneratorSpec = "random:3,4,4,3:0.4:uniform".parse().unwrap();
        for seed in 0..30 {
            let a = generate(&spec, seed).unwrap();
            let b = generate(&spec, seed).unwrap();
            assert_eq!(a, b);
            assert!(a.is_uniform().uniform);
            assert_eq!(a.rank_profile(), vec![1, 3, 4, 4, 3]);
        }
        assert!(generate(&"random:2:0".parse().unwrap(), 0).is_err());
    }
}
