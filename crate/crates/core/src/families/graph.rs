use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::oracle::Matroid;
use crate::ElementId;

/// An undirected edge; `u == v` is a self-loop.
pub type Edge = (usize, usize);

/// Union-find over the vertices touched by one query. Vertices are
/// compressed on first sight so the work is proportional to the query, not
/// to the whole graph.
struct QueryForest {
    index: HashMap<usize, usize>,
    parent: Vec<usize>,
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

impl QueryForest {
    fn with_capacity(edges: usize) -> Self {
        Self {
            index: HashMap::with_capacity(2 * edges),
            parent: Vec::with_capacity(2 * edges),
            vertices: Vec::with_capacity(2 * edges),
            edges: Vec::with_capacity(2 * edges),
        }
    }

    fn vertex(&mut self, v: usize) -> usize {
        let next = self.parent.len();
        let id = *self.index.entry(v).or_insert(next);
        if id == next {
            self.parent.push(id);
            self.vertices.push(1);
            self.edges.push(0);
        }
        id
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Adds an edge and returns the root of its component and whether the
    /// endpoints were already connected.
    fn add_edge(&mut self, (u, v): Edge) -> (usize, bool) {
        let a = self.vertex(u);
        let b = self.vertex(v);
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.edges[ra] += 1;
            return (ra, true);
        }
        let (big, small) = if self.vertices[ra] >= self.vertices[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big;
        self.vertices[big] += self.vertices[small];
        self.edges[big] += self.edges[small] + 1;
        (big, false)
    }

    fn roots(&mut self) -> Vec<usize> {
        (0..self.parent.len())
            .filter(|&x| self.parent[x] == x)
            .collect()
    }
}

fn check_edges(vertices: usize, edges: &[Edge]) -> Result<()> {
    match edges
        .iter()
        .position(|&(u, v)| u >= vertices || v >= vertices)
    {
        Some(i) => Err(Error::Parameter(format!(
            "edge {i} has an endpoint outside 0..{vertices}"
        ))),
        None => Ok(()),
    }
}

/// Graphic (cycle) matroid of a multigraph: a set of edges is independent
/// iff it is a forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphicMatroid {
    vertices: usize,
    edges: Vec<Edge>,
}

impl GraphicMatroid {
    pub fn new(vertices: usize, edges: Vec<Edge>) -> Result<Self> {
        check_edges(vertices, &edges)?;
        Ok(Self { vertices, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

impl Matroid for GraphicMatroid {
    fn ground_size(&self) -> usize {
        self.edges.len()
    }

    fn is_independent(&self, set: &[ElementId]) -> bool {
        let mut forest = QueryForest::with_capacity(set.len());
        set.iter()
            .all(|&e| !forest.add_edge(self.edges[e]).1)
    }

    fn subset_rank(&self, set: &[ElementId]) -> Option<usize> {
        let mut forest = QueryForest::with_capacity(set.len());
        for &e in set {
            forest.add_edge(self.edges[e]);
        }
        let components = forest.roots().len();
        Some(forest.parent.len() - components)
    }
}

/// Bicircular matroid: a set of edges is independent iff every component
/// of the edge-induced subgraph has at most one cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicircularMatroid {
    vertices: usize,
    edges: Vec<Edge>,
}

impl BicircularMatroid {
    pub fn new(vertices: usize, edges: Vec<Edge>) -> Result<Self> {
        check_edges(vertices, &edges)?;
        Ok(Self { vertices, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
}

impl Matroid for BicircularMatroid {
    fn ground_size(&self) -> usize {
        self.edges.len()
    }

    fn is_independent(&self, set: &[ElementId]) -> bool {
        let mut forest = QueryForest::with_capacity(set.len());
        for &e in set {
            let (root, _) = forest.add_edge(self.edges[e]);
            if forest.edges[root] > forest.vertices[root] {
                return false;
            }
        }
        true
    }

    fn subset_rank(&self, set: &[ElementId]) -> Option<usize> {
        let mut forest = QueryForest::with_capacity(set.len());
        for &e in set {
            forest.add_edge(self.edges[e]);
        }
        let roots = forest.roots();
        Some(
            roots
                .into_iter()
                .map(|r| forest.edges[r].min(forest.vertices[r]))
                .sum(),
        )
    }
}
