//! Definitional independence checks and small random instances shared by the
//! integration tests. Nothing here calls into the library's own
//! independence code.

#![allow(dead_code)]

use matroid_cost::families::random::{random_intervals, random_multigraph};
use matroid_cost::{Descriptor, Matroid};
use rand::seq::SliceRandom;
use rand::Rng;

/// Connected components of the subgraph spanned by the chosen edges, as
/// (vertex count, edge count) pairs, found by depth-first search.
fn components(edges: &[(usize, usize)], set: &[usize]) -> Vec<(usize, usize)> {
    let mut adjacency: std::collections::HashMap<usize, Vec<usize>> = Default::default();
    for &e in set {
        let (u, v) = edges[e];
        adjacency.entry(u).or_default().push(e);
        adjacency.entry(v).or_default().push(e);
    }
    let mut visited = std::collections::HashSet::new();
    let mut used = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut starts: Vec<usize> = adjacency.keys().copied().collect();
    starts.sort_unstable();
    for start in starts {
        if !visited.insert(start) {
            continue;
        }
        let (mut vertices, mut count) = (1, 0);
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for &e in &adjacency[&x] {
                if used.insert(e) {
                    count += 1;
                }
                let (u, v) = edges[e];
                let y = if u == x { v } else { u };
                if visited.insert(y) {
                    vertices += 1;
                    stack.push(y);
                }
            }
        }
        out.push((vertices, count));
    }
    out
}

/// A forest has exactly `vertices - 1` edges in every component.
pub fn is_forest(edges: &[(usize, usize)], set: &[usize]) -> bool {
    components(edges, set).iter().all(|&(v, e)| e + 1 == v)
}

/// Every component has at most one cycle.
pub fn is_pseudoforest(edges: &[(usize, usize)], set: &[usize]) -> bool {
    components(edges, set).iter().all(|&(v, e)| e <= v)
}

/// Kuhn's augmenting-path matching of elements to positions.
pub fn is_matchable(positions: usize, intervals: &[(usize, usize)], set: &[usize]) -> bool {
    fn augment(
        e: usize,
        intervals: &[(usize, usize)],
        owner: &mut [Option<usize>],
        tried: &mut [bool],
    ) -> bool {
        let (a, b) = intervals[e];
        for p in a..=b {
            if tried[p] {
                continue;
            }
            tried[p] = true;
            if owner[p].is_none_or(|o| augment(o, intervals, owner, tried)) {
                owner[p] = Some(e);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; positions + 1];
    set.iter().all(|&e| {
        let mut tried = vec![false; positions + 1];
        augment(e, intervals, &mut owner, &mut tried)
    })
}

/// Subsets of `set` with at most `k` elements.
pub fn small_subsets(set: &[usize], k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << set.len())
        .filter(|mask| mask.count_ones() as usize <= k)
        .map(|mask| {
            set.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect()
}

fn minus(set: &[usize], removed: &[usize]) -> Vec<usize> {
    set.iter().copied().filter(|e| !removed.contains(e)).collect()
}

/// `set` is independent in the l-relaxation of `base` iff removing some at
/// most `l` of its elements leaves a `base`-independent set.
pub fn relaxed(base: &Descriptor, l: usize, set: &[usize]) -> bool {
    small_subsets(set, l)
        .iter()
        .any(|removed| definitional(base, &minus(set, removed)))
}

/// `set` is independent in free(S) ∨ U(m) iff it splits into a part inside
/// `S` and at most `m` other elements.
pub fn union_independent(free_part: &[usize], m: usize, set: &[usize]) -> bool {
    small_subsets(set, m)
        .iter()
        .any(|taken| minus(set, taken).iter().all(|e| free_part.contains(e)))
}

/// Independence straight from each family's definition.
pub fn definitional(d: &Descriptor, set: &[usize]) -> bool {
    match d {
        Descriptor::Partition { parts, capacities } => parts
            .iter()
            .zip(capacities)
            .all(|(part, &cap)| set.iter().filter(|e| part.contains(e)).count() <= cap),
        Descriptor::Graphic { edges, .. } => is_forest(edges, set),
        Descriptor::Bicircular { edges, .. } => is_pseudoforest(edges, set),
        Descriptor::Transversal {
            positions,
            intervals,
        } => is_matchable(*positions, intervals, set),
        Descriptor::Uniform { r, .. } => set.len() <= *r,
        Descriptor::Free { .. } => true,
        Descriptor::Truncate { r, base } => set.len() <= *r && definitional(base, set),
        Descriptor::LRelax { l, base } => relaxed(base, *l, set),
        Descriptor::FreeUniformUnion { m, free_part, .. } => union_independent(free_part, *m, set),
        Descriptor::RankHard {
            m,
            eps_times_m,
            truncated,
            secret,
        } => {
            let cap = if *truncated { 2 * m - eps_times_m } else { 2 * m };
            set.len() <= cap && union_independent(secret, *m, set)
        }
        Descriptor::PartitionHard {
            m,
            alpha,
            truncated,
            parts,
        } => {
            let slack = m / alpha;
            let cap = if *truncated { m + slack - 1 } else { m + slack };
            let base = Descriptor::Partition {
                parts: parts.clone(),
                capacities: vec![1; parts.len()],
            };
            set.len() <= cap && relaxed(&base, slack, set)
        }
    }
}

pub fn mask_set(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

/// Atomic families that can be l-relaxed.
pub const RELAXABLE: [&str; 6] = ["partition", "graphic", "bicircular", "uniform", "free", "union"];
pub const ATOMIC: [&str; 7] = ["partition", "graphic", "bicircular", "transversal", "uniform", "free", "union"];
pub const ALL_KINDS: [&str; 11] = [
    "partition",
    "graphic",
    "bicircular",
    "transversal",
    "uniform",
    "free",
    "union",
    "truncate",
    "l_relax",
    "rank_hard",
    "partition_hard",
];

fn random_parts<R: Rng>(n: usize, rng: &mut R) -> (Vec<Vec<usize>>, Vec<usize>) {
    let k = rng.random_range(1..=n.max(1));
    let mut parts = vec![Vec::new(); k];
    for e in 0..n {
        parts[rng.random_range(0..k)].push(e);
    }
    let caps = (0..k).map(|_| rng.random_range(0..=3)).collect();
    (parts, caps)
}

/// A random instance of `kind` on exactly `n` elements. `loopless` keeps
/// every single element independent.
pub fn random_instance<R: Rng>(kind: &str, n: usize, loopless: bool, rng: &mut R) -> Descriptor {
    match kind {
        "partition" => {
            let (parts, mut capacities) = random_parts(n, rng);
            if loopless {
                capacities.iter_mut().for_each(|c| *c = (*c).max(1));
            }
            Descriptor::Partition { parts, capacities }
        }
        "graphic" | "bicircular" => {
            let vertices = rng.random_range(2..=(n / 2 + 2));
            let edges = random_multigraph(vertices, n, !loopless && rng.random_bool(0.3), rng);
            if kind == "graphic" {
                Descriptor::Graphic { vertices, edges }
            } else {
                Descriptor::Bicircular { vertices, edges }
            }
        }
        "transversal" => {
            let positions = rng.random_range(1..=n.max(1));
            Descriptor::Transversal {
                positions,
                intervals: random_intervals(n, positions, rng),
            }
        }
        "uniform" => Descriptor::Uniform {
            n,
            r: rng.random_range(usize::from(loopless)..=n.max(1)),
        },
        "free" => Descriptor::Free { n },
        "union" => {
            let free_part = (0..n).filter(|_| rng.random_bool(0.4)).collect();
            Descriptor::FreeUniformUnion {
                n,
                m: rng.random_range(usize::from(loopless)..=n.div_ceil(2)),
                free_part,
            }
        }
        "truncate" => {
            let base = ATOMIC[rng.random_range(0..ATOMIC.len())];
            Descriptor::Truncate {
                r: rng.random_range(usize::from(loopless)..=n),
                base: Box::new(random_instance(base, n, loopless, rng)),
            }
        }
        "l_relax" => {
            let base = RELAXABLE[rng.random_range(0..RELAXABLE.len())];
            Descriptor::LRelax {
                l: rng.random_range(usize::from(loopless)..=3),
                base: Box::new(random_instance(base, n, loopless, rng)),
            }
        }
        "rank_hard" => {
            let m = (n / 3).max(2);
            let mut all: Vec<usize> = (0..3 * m).collect();
            all.shuffle(rng);
            let mut secret = all[..m].to_vec();
            secret.sort_unstable();
            Descriptor::RankHard {
                m,
                eps_times_m: rng.random_range(1..m),
                truncated: rng.random_bool(0.5),
                secret,
            }
        }
        "partition_hard" => {
            let (m, alpha) = [(1, 1), (2, 1), (2, 2), (3, 1), (3, 3), (4, 2)]
                .into_iter()
                .rfind(|&(m, a)| (a + 1) * m <= n.max(2))
                .unwrap_or((1, 1));
            let mut all: Vec<usize> = (0..(alpha + 1) * m).collect();
            all.shuffle(rng);
            let parts = all
                .chunks(alpha + 1)
                .map(|c| {
                    let mut c = c.to_vec();
                    c.sort_unstable();
                    c
                })
                .collect();
            Descriptor::PartitionHard {
                m,
                alpha,
                truncated: rng.random_bool(0.5),
                parts,
            }
        }
        other => panic!("unknown kind {other}"),
    }
}

/// Ground-set size of a descriptor as built.
pub fn ground_size(d: &Descriptor) -> usize {
    d.build().expect("valid descriptor").ground_size()
}
