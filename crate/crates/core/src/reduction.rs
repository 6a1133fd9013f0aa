//! Vertex removals with a known effect on path homology.
//!
//! * source fan: `v` has no in-edges, out-neighbours `w_0, .., w_k` and
//!   `w_0 → w_i` for every `i ≥ 1`. Removing `v` preserves homology.
//! * sink fan: the mirror image, `w_i → w_0` for every in-neighbour `w_i`.
//! * transit: `v` has exactly one in-edge `j → v` and one out-edge `v → i`,
//!   `i ≠ j`. Removing `v` changes `β_0`/`β_1` according to how `j` and `i`
//!   relate in the remaining digraph (see [`TransitClause`]).

use serde::Serialize;

use crate::digraph::{Digraph, Edge, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionKind {
    SourceFan,
    SinkFan,
    Transit,
}

/// How the endpoints `j → v → i` of a transit vertex relate after `v` is removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransitClause {
    /// `j → i`, or `j → w → i` for some `w`: the new 1-cycle is already a
    /// boundary. `β_0` and `β_1` are unchanged.
    Filled,
    /// Same weak component otherwise: `β_1` drops by one, `β_0` unchanged.
    SameComponent,
    /// Different components: `β_1` unchanged, `β_0` grows by one.
    Disconnected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub kind: ReductionKind,
    pub removed_vertex: VertexId,
    pub removed_edges: Vec<Edge>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<TransitClause>,
}

fn removal(
    g: &Digraph,
    v: VertexId,
    kind: ReductionKind,
    clause: Option<TransitClause>,
) -> (Digraph, ReductionStep) {
    let removed_edges: Vec<Edge> = g.edges().filter(|&(a, b)| a == v || b == v).collect();
    (
        g.without_vertex(v),
        ReductionStep {
            kind,
            removed_vertex: v,
            removed_edges,
            clause,
        },
    )
}

/// Removes a source `v` whose out-neighbours include a hub `w_0` with
/// `w_0 → w` for every other out-neighbour `w`.
pub fn try_source_fan(g: &Digraph, v: VertexId) -> Option<(Digraph, ReductionStep)> {
    if !g.contains_vertex(v) || g.in_degree(v) > 0 {
        return None;
    }
    let targets: Vec<VertexId> = g.out_neighbors(v).collect();
    let hub_exists = targets
        .iter()
        .any(|&hub| targets.iter().all(|&w| w == hub || g.has_edge(hub, w)));
    if targets.is_empty() || !hub_exists {
        return None;
    }
    Some(removal(g, v, ReductionKind::SourceFan, None))
}

/// Removes a sink `v` whose in-neighbours include a hub `w_0` with
/// `w → w_0` for every other in-neighbour `w`.
pub fn try_sink_fan(g: &Digraph, v: VertexId) -> Option<(Digraph, ReductionStep)> {
    if !g.contains_vertex(v) || g.out_degree(v) > 0 {
        return None;
    }
    let sources: Vec<VertexId> = g.in_neighbors(v).collect();
    let hub_exists = sources
        .iter()
        .any(|&hub| sources.iter().all(|&w| w == hub || g.has_edge(w, hub)));
    if sources.is_empty() || !hub_exists {
        return None;
    }
    Some(removal(g, v, ReductionKind::SinkFan, None))
}

/// Removes a vertex with exactly one in-edge and one out-edge to distinct
/// neighbours, classifying the effect on homology.
pub fn try_transit(g: &Digraph, v: VertexId) -> Option<(Digraph, ReductionStep)> {
    if !g.contains_vertex(v) {
        return None;
    }
    let ins: Vec<VertexId> = g.in_neighbors(v).collect();
    let outs: Vec<VertexId> = g.out_neighbors(v).collect();
    let ([from], [to]) = (ins.as_slice(), outs.as_slice()) else {
        return None;
    };
    let (from, to) = (*from, *to);
    if from == to {
        return None;
    }
    let rest = g.without_vertex(v);
    let filled = rest.has_edge(from, to) || rest.out_neighbors(from).any(|w| rest.has_edge(w, to));
    let clause = if filled {
        TransitClause::Filled
    } else {
        let labels = rest.weak_components();
        if labels[&from] == labels[&to] {
            TransitClause::SameComponent
        } else {
            TransitClause::Disconnected
        }
    };
    Some(removal(g, v, ReductionKind::Transit, Some(clause)))
}

/// Applies source-fan and sink-fan removals greedily, lowest vertex id
/// first, until none applies. Only homology-preserving removals are used,
/// so every Betti number of the result equals that of `g`. The fixpoint is
/// not canonical.
pub fn reduce(g: &Digraph) -> (Digraph, Vec<ReductionStep>) {
    let mut current = g.clone();
    let mut log = Vec::new();
    'outer: loop {
        let vertices: Vec<VertexId> = current.vertices().collect();
        for v in vertices {
            if let Some((next, step)) =
                try_source_fan(&current, v).or_else(|| try_sink_fan(&current, v))
            {
                current = next;
                log.push(step);
                continue 'outer;
            }
        }
        return (current, log);
    }
}
