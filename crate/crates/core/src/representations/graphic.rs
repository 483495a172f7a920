use crate::dsu::UnionFind;
use crate::error::{MatroidError, Result};
use crate::ground::{ElementSet, GroundSet, MAX_ELEMENTS};
use crate::oracle::Independence;
use crate::representations::BinaryRep;

/// An undirected multigraph whose edges are the matroid elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphRep {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    names: Vec<String>,
}

impl GraphRep {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, String)>) -> Result<Self> {
        if edges.len() > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge(edges.len()));
        }
        let mut ends = Vec::with_capacity(edges.len());
        let mut names = Vec::with_capacity(edges.len());
        for (u, v, name) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(MatroidError::Domain(format!(
                    "edge {name} ({u},{v}) leaves the vertex range 0..{vertex_count}"
                )));
            }
            ends.push((u, v));
            names.push(name);
        }
        // Validates name uniqueness.
        GroundSet::new(names.clone())?;
        Ok(GraphRep {
            vertex_count,
            edges: ends,
            names,
        })
    }

    /// Edges named `e1..em` in the given order.
    pub fn numbered(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        GraphRep::new(
            vertex_count,
            edges
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| (u, v, format!("e{}", i + 1)))
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet::new(self.names.clone()).expect("names validated at construction")
    }

    /// True iff the edges in `set` form a forest.
    pub fn is_acyclic(&self, set: ElementSet) -> bool {
        let mut uf = UnionFind::new(self.vertex_count);
        set.iter().all(|e| {
            let (u, v) = self.edges[e];
            uf.union(u, v)
        })
    }
}

impl Independence for GraphRep {
    fn len(&self) -> usize {
        self.edges.len()
    }

    fn is_independent(&self, set: ElementSet) -> bool {
        self.is_acyclic(set)
    }
}

/// Vertex-edge incidence matrix over GF(2). Self-loops become zero columns.
pub fn graphic_to_binary(g: &GraphRep) -> Result<BinaryRep> {
    let columns = g
        .edges
        .iter()
        .map(|&(u, v)| if u == v { 0 } else { (1u64 << u) | (1u64 << v) })
        .collect();
    BinaryRep::new(g.vertex_count, columns)
}
