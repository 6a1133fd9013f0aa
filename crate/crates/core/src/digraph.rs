//! Simple directed graphs, weighted and geometric digraphs, and the
//! distance-based sub-digraph at a filtration threshold.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type Edge = (VertexId, VertexId);

/// A simple digraph: no self-loops, no parallel edges. Opposite edges
/// `(u, v)` and `(v, u)` may coexist.
///
/// Vertices and edges are kept sorted so that every basis derived from the
/// graph is ordered by vertex id.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Digraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<Edge>,
}

impl Digraph {
    /// Builds a digraph, rejecting self-loops, duplicate edges and edges whose
    /// endpoints are not declared vertices.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let vertices: BTreeSet<_> = vertices.into_iter().collect();
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidDigraph(format!("self-loop on vertex {u}")));
            }
            if !vertices.contains(&u) || !vertices.contains(&v) {
                return Err(Error::InvalidDigraph(format!(
                    "edge ({u}, {v}) has an undeclared endpoint"
                )));
            }
            if !set.insert((u, v)) {
                return Err(Error::InvalidDigraph(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(Digraph {
            vertices,
            edges: set,
        })
    }

    /// Builds a digraph whose vertex set is exactly the set of edge endpoints.
    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let edges: Vec<Edge> = edges.into_iter().collect();
        let vertices: Vec<VertexId> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        Self::new(vertices, edges)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&(u, v))
    }

    /// Out-neighbours of `v` in ascending order.
    pub fn out_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.edges
            .range((v, VertexId::MIN)..=(v, VertexId::MAX))
            .map(|&(_, w)| w)
    }

    /// In-neighbours of `v` in ascending order.
    pub fn in_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.edges
            .iter()
            .filter(move |&&(_, w)| w == v)
            .map(|&(u, _)| u)
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_neighbors(v).count()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_neighbors(v).count()
    }

    /// Total degree, ignoring direction.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// The digraph with `v` and every incident edge removed.
    pub fn without_vertex(&self, v: VertexId) -> Digraph {
        let mut out = self.clone();
        out.vertices.remove(&v);
        out.edges.retain(|&(a, b)| a != v && b != v);
        out
    }

    /// The digraph with every degree-0 vertex removed.
    pub fn without_isolated(&self) -> Digraph {
        let touched: BTreeSet<VertexId> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        Digraph {
            vertices: touched,
            edges: self.edges.clone(),
        }
    }

    /// True when `self` is a sub-digraph of `other` (vertex and edge containment).
    pub fn is_subgraph_of(&self, other: &Digraph) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }

    /// Weakly connected component label for every vertex, labels being the
    /// smallest vertex id in the component.
    pub fn weak_components(&self) -> BTreeMap<VertexId, VertexId> {
        let mut parent: BTreeMap<VertexId, VertexId> =
            self.vertices.iter().map(|&v| (v, v)).collect();
        fn find(parent: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
            let mut root = v;
            while parent[&root] != root {
                root = parent[&root];
            }
            let mut cur = v;
            while parent[&cur] != root {
                let next = parent[&cur];
                parent.insert(cur, root);
                cur = next;
            }
            root
        }
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                let (lo, hi) = if ru < rv { (ru, rv) } else { (rv, ru) };
                parent.insert(hi, lo);
            }
        }
        let keys: Vec<VertexId> = parent.keys().copied().collect();
        keys.into_iter()
            .map(|v| (v, find(&mut parent, v)))
            .collect()
    }

    pub fn num_weak_components(&self) -> usize {
        self.weak_components()
            .iter()
            .filter(|(v, root)| v == root)
            .count()
    }
}

/// A digraph with a non-negative finite length attached to every edge.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WeightedDigraph {
    base: Digraph,
    weights: BTreeMap<Edge, f64>,
}

impl WeightedDigraph {
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        weighted_edges: impl IntoIterator<Item = (Edge, f64)>,
    ) -> Result<Self> {
        let weighted_edges: Vec<(Edge, f64)> = weighted_edges.into_iter().collect();
        for &((u, v), w) in &weighted_edges {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidDigraph(format!(
                    "edge ({u}, {v}) has invalid weight {w}"
                )));
            }
        }
        let base = Digraph::new(vertices, weighted_edges.iter().map(|&(e, _)| e))?;
        Ok(WeightedDigraph {
            base,
            weights: weighted_edges.into_iter().collect(),
        })
    }

    pub fn digraph(&self) -> &Digraph {
        &self.base
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<f64> {
        self.weights.get(&(u, v)).copied()
    }

    pub fn weighted_edges(&self) -> impl Iterator<Item = (Edge, f64)> + '_ {
        self.weights.iter().map(|(&e, &w)| (e, w))
    }

    pub fn max_weight(&self) -> Option<f64> {
        self.weights.values().copied().reduce(f64::max)
    }

    /// `G^delta`: every edge of weight `<= delta`. With `keep_isolated`
    /// false, vertices left without edges are dropped.
    pub fn subgraph_at(&self, delta: f64, keep_isolated: bool) -> Digraph {
        let edges: BTreeSet<Edge> = self
            .weights
            .iter()
            .filter(|(_, &w)| w <= delta)
            .map(|(&e, _)| e)
            .collect();
        let full = Digraph {
            vertices: self.base.vertices.clone(),
            edges,
        };
        if keep_isolated {
            full
        } else {
            full.without_isolated()
        }
    }

    /// Critical thresholds: 0 followed by the distinct edge weights in
    /// ascending order. Every distinct `G^delta` is reached exactly once.
    pub fn filtration_thresholds(&self) -> Vec<f64> {
        let mut values: Vec<f64> = std::iter::once(0.0)
            .chain(self.weights.values().copied())
            .collect();
        values.sort_by(f64::total_cmp);
        values.dedup();
        values
    }
}

/// A weighted digraph whose vertices sit in R^3 and whose edge weights are
/// the Euclidean lengths of the edges.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricDigraph {
    coordinates: BTreeMap<VertexId, [f64; 3]>,
    weighted: WeightedDigraph,
}

impl GeometricDigraph {
    pub fn new(
        coordinates: impl IntoIterator<Item = (VertexId, [f64; 3])>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let coordinates: BTreeMap<VertexId, [f64; 3]> = coordinates.into_iter().collect();
        if let Some((v, _)) = coordinates
            .iter()
            .find(|(_, p)| p.iter().any(|c| !c.is_finite()))
        {
            return Err(Error::InvalidDigraph(format!(
                "vertex {v} has a non-finite coordinate"
            )));
        }
        let mut weighted_edges = Vec::new();
        for (u, v) in edges {
            let (Some(a), Some(b)) = (coordinates.get(&u), coordinates.get(&v)) else {
                return Err(Error::InvalidDigraph(format!(
                    "edge ({u}, {v}) has an endpoint without coordinates"
                )));
            };
            weighted_edges.push(((u, v), euclidean(a, b)));
        }
        let weighted = WeightedDigraph::new(coordinates.keys().copied(), weighted_edges)?;
        Ok(GeometricDigraph {
            coordinates,
            weighted,
        })
    }

    pub fn coordinates(&self, v: VertexId) -> Option<[f64; 3]> {
        self.coordinates.get(&v).copied()
    }

    pub fn weighted(&self) -> &WeightedDigraph {
        &self.weighted
    }

    pub fn into_weighted(self) -> WeightedDigraph {
        self.weighted
    }
}

pub fn euclidean(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
