//! Seeded random instance generators.

use rand::Rng;

use super::{ConvexTransversalMatroid, Edge, Interval, PartitionMatroid};

/// `edges` uniformly random endpoints over `vertices`; parallel edges are
/// kept, self-loops only when `allow_loops`.
pub fn random_multigraph<R: Rng + ?Sized>(
    vertices: usize,
    edges: usize,
    allow_loops: bool,
    rng: &mut R,
) -> Vec<Edge> {
    assert!(vertices >= 1 && (allow_loops || vertices >= 2));
    (0..edges)
        .map(|_| loop {
            let u = rng.random_range(0..vertices);
            let v = rng.random_range(0..vertices);
            if allow_loops || u != v {
                break (u, v);
            }
        })
        .collect()
}

/// `pairs` disjoint pairs of parallel edges: edges `2i` and `2i + 1` both
/// join vertices `2i` and `2i + 1`. Every circuit has exactly two elements.
pub fn parallel_pairs(pairs: usize) -> (usize, Vec<Edge>) {
    let edges = (0..pairs)
        .flat_map(|i| [(2 * i, 2 * i + 1), (2 * i, 2 * i + 1)])
        .collect();
    (2 * pairs, edges)
}

/// A partition matroid on `n` elements with `parts` nonempty-or-empty
/// random parts and capacities drawn from `min_cap..=max_cap`.
pub fn random_partition<R: Rng + ?Sized>(
    n: usize,
    parts: usize,
    min_cap: usize,
    max_cap: usize,
    rng: &mut R,
) -> PartitionMatroid {
    assert!(parts >= 1 && min_cap <= max_cap);
    let part_of = (0..n).map(|_| rng.random_range(0..parts)).collect();
    let capacities = (0..parts)
        .map(|_| rng.random_range(min_cap..=max_cap))
        .collect();
    PartitionMatroid::from_assignment(part_of, capacities).expect("generated parts are valid")
}

/// Random intervals inside `[1, positions]`.
pub fn random_intervals<R: Rng + ?Sized>(n: usize, positions: usize, rng: &mut R) -> Vec<Interval> {
    (0..n)
        .map(|_| {
            let a = rng.random_range(1..=positions);
            let b = rng.random_range(a..=positions);
            (a, b)
        })
        .collect()
}

pub fn random_transversal<R: Rng + ?Sized>(
    n: usize,
    positions: usize,
    rng: &mut R,
) -> ConvexTransversalMatroid {
    ConvexTransversalMatroid::new(positions, random_intervals(n, positions, rng))
        .expect("generated intervals are valid")
}
