use std::collections::VecDeque;

use super::{Edge, LabeledGraph};

/// BFS visiting order from `root`, exploring slots in order. Only
/// meaningful for folded connected graphs.
fn bfs_order(t: &[Vec<Option<usize>>], root: usize) -> Vec<usize> {
    let mut pos = vec![usize::MAX; t.len()];
    let mut order = vec![root];
    pos[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for w in t[v].iter().flatten() {
            if pos[*w] == usize::MAX {
                pos[*w] = order.len();
                order.push(*w);
                queue.push_back(*w);
            }
        }
    }
    order
}

fn relabeled(g: &LabeledGraph, order: &[usize]) -> Vec<Edge> {
    let mut pos = vec![0; g.vertices];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let mut edges: Vec<Edge> = g
        .edges
        .iter()
        .map(|e| Edge {
            src: pos[e.src],
            dst: pos[e.dst],
            label: e.label,
        })
        .collect();
    edges.sort();
    edges
}

fn best_root(g: &LabeledGraph, t: &[Vec<Option<usize>>]) -> (usize, Vec<Edge>) {
    let mut best: Option<(usize, Vec<Edge>)> = None;
    for r in 0..g.vertices {
        let edges = relabeled(g, &bfs_order(t, r));
        if best.as_ref().is_none_or(|(_, b)| edges < *b) {
            best = Some((r, edges));
        }
    }
    best.expect("at least one vertex")
}

/// Renumbers a folded graph by BFS from the basepoint, or from the root
/// giving the least edge list when unpointed.
pub(crate) fn canonical_form(g: &LabeledGraph) -> LabeledGraph {
    let Ok(t) = g.transitions() else {
        return g.clone();
    };
    let (edges, base) = match g.base {
        Some(b) => (relabeled(g, &bfs_order(&t, b)), Some(0)),
        None => (best_root(g, &t).1, None),
    };
    LabeledGraph::raw(g.rank, g.vertices, edges, base)
}

/// A hashable key equal for two folded graphs exactly when they are
/// isomorphic (respecting basepoints if the graph has one).
pub fn canonical_code(g: &LabeledGraph) -> Vec<u32> {
    let c = canonical_form(g);
    let mut code = vec![
        c.vertices as u32,
        c.edges.len() as u32,
        u32::from(c.base.is_some()),
    ];
    for e in &c.edges {
        code.extend([e.src as u32, e.dst as u32, e.label as u32]);
    }
    code
}

/// Label- and orientation-preserving isomorphism between folded graphs,
/// as a map from vertices of `g1` to vertices of `g2`.
pub fn iso(g1: &LabeledGraph, g2: &LabeledGraph, respect_basepoint: bool) -> Option<Vec<usize>> {
    if g1.rank != g2.rank || g1.vertices != g2.vertices || g1.edges.len() != g2.edges.len() {
        return None;
    }
    let t1 = g1.transitions().ok()?;
    let t2 = g2.transitions().ok()?;
    let (r1, roots2): (usize, Vec<usize>) = if respect_basepoint {
        (g1.base?, vec![g2.base?])
    } else {
        (0, (0..g2.vertices).collect())
    };
    let o1 = bfs_order(&t1, r1);
    if o1.len() != g1.vertices {
        return None;
    }
    let e1 = relabeled(g1, &o1);
    for r2 in roots2 {
        let o2 = bfs_order(&t2, r2);
        if o2.len() != g2.vertices {
            return None;
        }
        if relabeled(g2, &o2) == e1 {
            let mut map = vec![0; g1.vertices];
            for (a, b) in o1.iter().zip(&o2) {
                map[*a] = *b;
            }
            return Some(map);
        }
    }
    None
}
