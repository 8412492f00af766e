use serde::Serialize;

use super::canon::canonical_form;
use super::{Edge, LabeledGraph};
use crate::error::{Error, Result};

/// One connected component of a fiber product over the rose.
#[derive(Clone, Debug, Serialize)]
pub struct PullbackComponent {
    pub graph: LabeledGraph,
    /// The component contains the pair of basepoints; its basepoint is set
    /// to that pair.
    pub contains_base: bool,
    pub nontrivial: bool,
}

/// Fiber product of two folded graphs, split into components. Components
/// are listed in order of their least vertex pair.
pub fn pullback(g1: &LabeledGraph, g2: &LabeledGraph) -> Result<Vec<PullbackComponent>> {
    if !g1.is_folded() || !g2.is_folded() {
        return Err(Error::NotFolded);
    }
    if g1.rank != g2.rank {
        return Err(Error::RankMismatch {
            expected: g1.rank,
            got: g2.rank,
        });
    }
    let v2 = g2.vertices;
    let pair = |a: usize, b: usize| a * v2 + b;
    let total = g1.vertices * v2;
    let mut edges = Vec::new();
    for e in &g1.edges {
        for f in g2.edges.iter().filter(|f| f.label == e.label) {
            edges.push(Edge {
                src: pair(e.src, f.src),
                dst: pair(e.dst, f.dst),
                label: e.label,
            });
        }
    }

    let mut comp = vec![usize::MAX; total];
    let mut adj = vec![Vec::new(); total];
    for e in &edges {
        adj[e.src].push(e.dst);
        adj[e.dst].push(e.src);
    }
    let mut count = 0;
    for s in 0..total {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = count;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = count;
                    stack.push(w);
                }
            }
        }
        count += 1;
    }

    let based = match (g1.base, g2.base) {
        (Some(a), Some(b)) => Some(pair(a, b)),
        _ => None,
    };
    let mut local = vec![0; total];
    let mut sizes = vec![0; count];
    for v in 0..total {
        local[v] = sizes[comp[v]];
        sizes[comp[v]] += 1;
    }
    let mut comp_edges = vec![Vec::new(); count];
    for e in &edges {
        comp_edges[comp[e.src]].push(Edge {
            src: local[e.src],
            dst: local[e.dst],
            label: e.label,
        });
    }
    let mut out = Vec::with_capacity(count);
    for (c, es) in comp_edges.into_iter().enumerate() {
        let base = based.filter(|&b| comp[b] == c).map(|b| local[b]);
        let graph = LabeledGraph::raw(g1.rank, sizes[c], es, base);
        let nontrivial = graph.cycle_rank() > 0;
        out.push(PullbackComponent {
            graph: if base.is_some() {
                canonical_form(&graph)
            } else {
                graph
            },
            contains_base: base.is_some(),
            nontrivial,
        });
    }
    Ok(out)
}
