use std::collections::HashMap;

use super::canon::canonical_form;
use super::{Edge, LabeledGraph};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

/// Stallings folding to an immersion, returned in canonical numbering.
pub fn fold(g: &LabeledGraph) -> LabeledGraph {
    let mut uf = UnionFind::new(g.vertices);
    loop {
        let mut merged = false;
        // (vertex, label, outgoing?) -> far endpoint
        let mut seen: HashMap<(usize, usize, bool), usize> = HashMap::new();
        for e in &g.edges {
            let s = uf.find(e.src);
            let d = uf.find(e.dst);
            for (key, far) in [((s, e.label, true), d), ((d, e.label, false), s)] {
                match seen.get(&key) {
                    Some(&other) => {
                        if uf.union(other, far) {
                            merged = true;
                        }
                    }
                    None => {
                        seen.insert(key, far);
                    }
                }
            }
        }
        if !merged {
            break;
        }
    }
    let (count, index) = compact(&mut uf, g.vertices);
    let mut edges: Vec<Edge> = g
        .edges
        .iter()
        .map(|e| Edge {
            src: index[uf.find(e.src)],
            dst: index[uf.find(e.dst)],
            label: e.label,
        })
        .collect();
    edges.sort();
    edges.dedup();
    let base = g.base.map(|b| index[uf.find(b)]);
    let out = LabeledGraph::raw(g.rank, count, edges, base);
    debug_assert!(out.folded);
    canonical_form(&out)
}

fn compact(uf: &mut UnionFind, n: usize) -> (usize, Vec<usize>) {
    let mut index = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        let r = uf.find(v);
        if index[r] == usize::MAX {
            index[r] = count;
            count += 1;
        }
    }
    (count, index)
}

/// All pairs of distinct edges that could be folded together.
pub fn fold_pairs(g: &LabeledGraph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..g.edges.len() {
        for j in i + 1..g.edges.len() {
            let (a, b) = (g.edges[i], g.edges[j]);
            if a.label == b.label && (a.src == b.src || a.dst == b.dst) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Folds one elementary pair at a time. `choose` receives the number of
/// available pairs and returns the index of the one to fold, so callers
/// can randomize the order. The result is not renumbered.
pub fn fold_by<F: FnMut(usize) -> usize>(g: &LabeledGraph, mut choose: F) -> LabeledGraph {
    let mut cur = g.clone();
    loop {
        let pairs = fold_pairs(&cur);
        if pairs.is_empty() {
            cur.folded = true;
            return cur;
        }
        let k = choose(pairs.len()) % pairs.len();
        let (i, j) = pairs[k];
        let (a, b) = (cur.edges[i], cur.edges[j]);
        let (keep, drop) = if a.src == b.src {
            (a.dst.min(b.dst), a.dst.max(b.dst))
        } else {
            (a.src.min(b.src), a.src.max(b.src))
        };
        let map = |v: usize| {
            if v == drop && keep != drop {
                keep
            } else if v > drop && keep != drop {
                v - 1
            } else {
                v
            }
        };
        let mut edges = Vec::with_capacity(cur.edges.len() - 1);
        for (k, e) in cur.edges.iter().enumerate() {
            if k != j {
                edges.push(Edge {
                    src: map(e.src),
                    dst: map(e.dst),
                    label: e.label,
                });
            }
        }
        let vertices = if keep == drop {
            cur.vertices
        } else {
            cur.vertices - 1
        };
        cur = LabeledGraph::raw(cur.rank, vertices, edges, cur.base.map(map));
    }
}
