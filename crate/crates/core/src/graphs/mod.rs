//! Labeled graphs over the rose `R_n`: construction, Stallings folding,
//! cores, pullbacks, canonical forms and girth.

mod canon;
mod fold;
mod io;
mod pullback;
mod tracked;

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{Letter, Word};

pub use canon::{canonical_code, iso};
pub use fold::{fold, fold_by, fold_pairs};
pub use pullback::{pullback, PullbackComponent};
pub use tracked::{basis_automorphism, invert_images};

/// A directed edge `src --a_label--> dst`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: usize,
}

/// A finite graph whose edges are labeled by basis letters `1..=rank`.
/// Vertices are `0..vertex_count()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledGraph {
    rank: usize,
    vertices: usize,
    edges: Vec<Edge>,
    base: Option<usize>,
    folded: bool,
}

/// Slot of a letter in the per-vertex transition table: label ascending,
/// forward before inverse.
pub(crate) fn slot(l: Letter) -> usize {
    2 * (l.index() - 1) + usize::from(l.is_inverse())
}

impl LabeledGraph {
    /// Builds a graph, checking labels, endpoints and connectivity.
    pub fn new(
        rank: usize,
        vertices: usize,
        edges: Vec<Edge>,
        base: Option<usize>,
    ) -> Result<LabeledGraph> {
        if vertices == 0 {
            return Err(Error::Precondition(
                "a graph needs at least one vertex".into(),
            ));
        }
        for e in &edges {
            if e.label == 0 || e.label > rank {
                return Err(Error::LetterOutOfRange {
                    index: e.label,
                    rank,
                });
            }
            if e.src >= vertices {
                return Err(Error::NoSuchVertex(e.src));
            }
            if e.dst >= vertices {
                return Err(Error::NoSuchVertex(e.dst));
            }
        }
        if let Some(b) = base {
            if b >= vertices {
                return Err(Error::NoSuchVertex(b));
            }
        }
        let mut g = LabeledGraph {
            rank,
            vertices,
            edges,
            base,
            folded: false,
        };
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        g.folded = g.check_folded();
        Ok(g)
    }

    pub(crate) fn raw(
        rank: usize,
        vertices: usize,
        edges: Vec<Edge>,
        base: Option<usize>,
    ) -> LabeledGraph {
        let mut g = LabeledGraph {
            rank,
            vertices,
            edges,
            base,
            folded: false,
        };
        g.folded = g.check_folded();
        g
    }

    /// One vertex, the basepoint, and no edges: the trivial subgroup.
    pub fn point(rank: usize) -> LabeledGraph {
        LabeledGraph::raw(rank, 1, Vec::new(), Some(0))
    }

    /// The rose `R_n`.
    pub fn rose(rank: usize) -> LabeledGraph {
        let edges = (1..=rank)
            .map(|l| Edge {
                src: 0,
                dst: 0,
                label: l,
            })
            .collect();
        LabeledGraph::raw(rank, 1, edges, Some(0))
    }

    /// A based loop subdivided into the letters of `w`. Non-cyclically
    /// reduced words give lollipops.
    pub fn word_loop(rank: usize, w: &Word) -> LabeledGraph {
        if w.is_empty() {
            return LabeledGraph::point(rank);
        }
        let len = w.len();
        let mut edges = Vec::with_capacity(len);
        for (k, l) in w.letters().iter().enumerate() {
            let a = k;
            let b = if k + 1 == len { 0 } else { k + 1 };
            edges.push(if l.is_inverse() {
                Edge {
                    src: b,
                    dst: a,
                    label: l.index(),
                }
            } else {
                Edge {
                    src: a,
                    dst: b,
                    label: l.index(),
                }
            });
        }
        LabeledGraph::raw(rank, len, edges, Some(0))
    }

    /// Wedge of based loops on `words` (empty words contribute nothing).
    pub fn bouquet(rank: usize, words: &[Word]) -> LabeledGraph {
        words.iter().fold(LabeledGraph::point(rank), |g, w| {
            g.wedge(&LabeledGraph::word_loop(rank, w))
                .expect("both based")
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn base(&self) -> Option<usize> {
        self.base
    }

    pub fn is_folded(&self) -> bool {
        self.folded
    }

    /// `E − V + 1`, the rank of the fundamental group.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + 1 - self.vertices
    }

    pub fn with_base(&self, base: Option<usize>) -> Result<LabeledGraph> {
        if let Some(b) = base {
            if b >= self.vertices {
                return Err(Error::NoSuchVertex(b));
            }
        }
        let mut g = self.clone();
        g.base = base;
        Ok(g)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.src == v) + usize::from(e.dst == v))
            .sum()
    }

    fn is_connected(&self) -> bool {
        let adj = self.undirected();
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertices
    }

    fn check_folded(&self) -> bool {
        let mut table = vec![false; self.vertices * 2 * self.rank];
        for e in &self.edges {
            let out = e.src * 2 * self.rank + 2 * (e.label - 1);
            let inn = e.dst * 2 * self.rank + 2 * (e.label - 1) + 1;
            if table[out] || table[inn] {
                return false;
            }
            table[out] = true;
            table[inn] = true;
        }
        true
    }

    /// Undirected adjacency: `(neighbour, edge index)` per vertex.
    pub(crate) fn undirected(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertices];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.src].push((e.dst, i));
            if e.src != e.dst {
                adj[e.dst].push((e.src, i));
            }
        }
        adj
    }

    /// Transition table of a folded graph, indexed by vertex then slot.
    pub fn transitions(&self) -> Result<Vec<Vec<Option<usize>>>> {
        if !self.folded {
            return Err(Error::NotFolded);
        }
        let mut t = vec![vec![None; 2 * self.rank]; self.vertices];
        for e in &self.edges {
            t[e.src][2 * (e.label - 1)] = Some(e.dst);
            t[e.dst][2 * (e.label - 1) + 1] = Some(e.src);
        }
        Ok(t)
    }

    /// Reads `w` from `v` in a folded graph; `None` if it falls off.
    pub fn trace(&self, v: usize, w: &Word) -> Result<Option<usize>> {
        let t = self.transitions()?;
        Ok(trace_in(&t, v, w))
    }

    /// Label of a shortest path from `root` to every vertex, following the
    /// slot order (so the result is canonical for folded graphs).
    pub fn path_labels(&self, root: usize) -> Vec<Option<Word>> {
        let mut adj: Vec<Vec<(Letter, usize)>> = vec![Vec::new(); self.vertices];
        for e in &self.edges {
            adj[e.src].push((Letter::gen(e.label), e.dst));
            adj[e.dst].push((Letter::new(e.label, true), e.src));
        }
        for a in &mut adj {
            a.sort_by_key(|&(l, w)| (slot(l), w));
        }
        let mut out: Vec<Option<Word>> = vec![None; self.vertices];
        out[root] = Some(Word::identity());
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let here = out[v].clone().expect("visited");
            for &(l, w) in &adj[v] {
                if out[w].is_none() {
                    out[w] = Some(&here * &Word::from_letters([l]));
                    queue.push_back(w);
                }
            }
        }
        out
    }

    /// Free basis of the fundamental group at `root`: one generator per
    /// edge outside a BFS spanning tree.
    pub fn basis_at(&self, root: usize) -> Vec<Word> {
        let paths = self.path_labels(root);
        let tree = self.spanning_tree(root);
        let mut gens = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if tree[i] {
                continue;
            }
            let p = paths[e.src].as_ref().expect("connected");
            let q = paths[e.dst].as_ref().expect("connected");
            gens.push(&(p * &Word::gen(e.label)) * &q.inverse());
        }
        gens
    }

    fn spanning_tree(&self, root: usize) -> Vec<bool> {
        let mut adj: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); self.vertices];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.src].push((2 * (e.label - 1), e.dst, i));
            adj[e.dst].push((2 * (e.label - 1) + 1, e.src, i));
        }
        for a in &mut adj {
            a.sort();
        }
        let mut in_tree = vec![false; self.edges.len()];
        let mut seen = vec![false; self.vertices];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(_, w, i) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    in_tree[i] = true;
                    queue.push_back(w);
                }
            }
        }
        in_tree
    }

    /// Disjoint union with basepoints identified.
    pub fn wedge(&self, other: &LabeledGraph) -> Result<LabeledGraph> {
        let b1 = self.base.ok_or(Error::MissingBasepoint)?;
        let b2 = other.base.ok_or(Error::MissingBasepoint)?;
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: other.rank,
            });
        }
        let offset = self.vertices;
        let map = |v: usize| {
            if v == b2 {
                b1
            } else if v < b2 {
                offset + v
            } else {
                offset + v - 1
            }
        };
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge {
            src: map(e.src),
            dst: map(e.dst),
            label: e.label,
        }));
        Ok(LabeledGraph::raw(
            self.rank,
            self.vertices + other.vertices - 1,
            edges,
            Some(b1),
        ))
    }

    /// Quotient identifying `v0` with `v1`.
    pub fn identify(&self, v0: usize, v1: usize) -> Result<LabeledGraph> {
        for v in [v0, v1] {
            if v >= self.vertices {
                return Err(Error::NoSuchVertex(v));
            }
        }
        if v0 == v1 {
            return Err(Error::Precondition(
                "identify needs two distinct vertices".into(),
            ));
        }
        let (keep, drop) = (v0.min(v1), v0.max(v1));
        let map = |v: usize| {
            if v == drop {
                keep
            } else if v > drop {
                v - 1
            } else {
                v
            }
        };
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                src: map(e.src),
                dst: map(e.dst),
                label: e.label,
            })
            .collect();
        let mut g = LabeledGraph::raw(self.rank, self.vertices - 1, edges, self.base.map(map));
        g.folded = false;
        Ok(g)
    }

    /// Vertices surviving repeated removal of valence-one vertices other
    /// than `keep`.
    pub fn core_vertices(&self, keep: Option<usize>) -> Vec<bool> {
        self.prune(keep).0
    }

    fn prune(&self, keep: Option<usize>) -> (Vec<bool>, Vec<bool>) {
        let mut alive_v = vec![true; self.vertices];
        let mut alive_e = vec![true; self.edges.len()];
        let mut deg: Vec<usize> = (0..self.vertices).map(|v| self.degree(v)).collect();
        let adj = self.undirected();
        let mut stack: Vec<usize> = (0..self.vertices).filter(|&v| deg[v] <= 1).collect();
        while let Some(v) = stack.pop() {
            if !alive_v[v] || Some(v) == keep || deg[v] > 1 {
                continue;
            }
            alive_v[v] = false;
            for &(w, i) in &adj[v] {
                if alive_e[i] {
                    alive_e[i] = false;
                    deg[w] -= 1;
                    deg[v] -= 1;
                    if deg[w] <= 1 {
                        stack.push(w);
                    }
                }
            }
        }
        (alive_v, alive_e)
    }

    /// Pointed core: strip valence-one vertices other than the basepoint.
    /// Unpointed core: strip all of them and forget the basepoint.
    pub fn core(&self, pointed: bool) -> Result<LabeledGraph> {
        if !self.folded {
            return Err(Error::NotFolded);
        }
        let keep = if pointed {
            Some(self.base.ok_or(Error::MissingBasepoint)?)
        } else {
            None
        };
        let (alive_v, alive_e) = self.prune(keep);
        let mut index = vec![usize::MAX; self.vertices];
        let mut count = 0;
        for v in 0..self.vertices {
            if alive_v[v] {
                index[v] = count;
                count += 1;
            }
        }
        if count == 0 {
            return Err(Error::EmptyCore);
        }
        let edges = self
            .edges
            .iter()
            .zip(&alive_e)
            .filter(|(_, &a)| a)
            .map(|(e, _)| Edge {
                src: index[e.src],
                dst: index[e.dst],
                label: e.label,
            })
            .collect();
        let base = keep.map(|b| index[b]);
        let g = LabeledGraph::raw(self.rank, count, edges, base);
        Ok(canon::canonical_form(&g))
    }

    /// Length of a shortest cycle in the underlying undirected graph.
    pub fn girth(&self) -> Result<usize> {
        let adj = self.undirected();
        let mut best: Option<usize> = None;
        for (i, e) in self.edges.iter().enumerate() {
            let len = if e.src == e.dst {
                Some(1)
            } else {
                bfs_distance_avoiding(&adj, e.src, e.dst, i).map(|d| d + 1)
            };
            if let Some(l) = len {
                best = Some(best.map_or(l, |b| b.min(l)));
            }
        }
        best.ok_or(Error::Acyclic)
    }

    /// Largest distance between two vertices, ignoring orientation.
    pub fn diameter(&self) -> usize {
        let adj = self.undirected();
        (0..self.vertices)
            .map(|s| {
                let d = bfs_all(&adj, s);
                d.into_iter().flatten().max().unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    /// Least vertex carrying a one-edge loop labeled `a_label`.
    pub fn has_basis_loop(&self, label: usize) -> Option<usize> {
        self.edges
            .iter()
            .filter(|e| e.label == label && e.src == e.dst)
            .map(|e| e.src)
            .min()
    }

    /// Longest directed path in the subgraph of `label`-edges, or `None` if
    /// that subgraph has a cycle.
    pub fn longest_label_path(&self, label: usize) -> Option<usize> {
        let mut next = vec![None; self.vertices];
        let mut has_pred = vec![false; self.vertices];
        for e in self.edges.iter().filter(|e| e.label == label) {
            next[e.src] = Some(e.dst);
            has_pred[e.dst] = true;
        }
        let mut best = 0;
        let mut covered = 0;
        for s in (0..self.vertices).filter(|&v| !has_pred[v]) {
            let mut len = 0;
            let mut v = s;
            covered += 1;
            while let Some(w) = next[v] {
                len += 1;
                covered += 1;
                v = w;
                if len > self.vertices {
                    return None;
                }
            }
            best = best.max(len);
        }
        if covered < self.vertices {
            None
        } else {
            Some(best)
        }
    }
}

pub fn trace_in(t: &[Vec<Option<usize>>], v: usize, w: &Word) -> Option<usize> {
    let mut cur = v;
    for &l in w.letters() {
        cur = t[cur][slot(l)]?;
    }
    Some(cur)
}

fn bfs_all(adj: &[Vec<(usize, usize)>], s: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("visited");
        for &(w, _) in &adj[v] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

fn bfs_distance_avoiding(
    adj: &[Vec<(usize, usize)>],
    s: usize,
    t: usize,
    skip: usize,
) -> Option<usize> {
    let mut dist = vec![None; adj.len()];
    dist[s] = Some(0);
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("visited");
        if v == t {
            return Some(d);
        }
        for &(w, i) in &adj[v] {
            if i != skip && dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 26).unwrap()
    }

    fn folded(rank: usize, words: &[&str]) -> LabeledGraph {
        let ws: Vec<Word> = words
            .iter()
            .map(|s| Word::parse(s, rank).unwrap())
            .collect();
        fold(&LabeledGraph::bouquet(rank, &ws))
    }

    #[test]
    fn rose_shapes() {
        for n in 1..=10 {
            let r = LabeledGraph::rose(n);
            assert_eq!(r.vertex_count(), 1);
            assert_eq!(r.edge_count(), n);
            assert!(r.is_folded());
        }
    }

    #[test]
    fn wedge_of_loops() {
        let a = LabeledGraph::word_loop(2, &w("a"));
        let b = LabeledGraph::word_loop(2, &w("b"));
        let fig8 = a.wedge(&b).unwrap();
        assert!(iso(&fig8, &LabeledGraph::rose(2), true).is_some());
        assert!(iso(&a.wedge(&LabeledGraph::point(2)).unwrap(), &a, true).is_some());
        let aa = a.wedge(&a).unwrap();
        assert!(!aa.is_folded());
        assert!(iso(&fold(&aa), &a, true).is_some());
        let unbased = a.with_base(None).unwrap();
        assert!(matches!(unbased.wedge(&b), Err(Error::MissingBasepoint)));
    }

    #[test]
    fn core_modes() {
        let lolli = folded(2, &["bAB"]);
        assert_eq!(lolli.core(true).unwrap().edge_count(), 2);
        let un = lolli.core(false).unwrap();
        assert_eq!(un.edge_count(), 1);
        assert_eq!(un.base(), None);
        let tree = folded(2, &["ab"]).identify(0, 0);
        assert!(tree.is_err());
        let path = LabeledGraph::new(
            2,
            2,
            vec![Edge {
                src: 0,
                dst: 1,
                label: 1,
            }],
            Some(0),
        )
        .unwrap();
        assert!(matches!(path.core(false), Err(Error::EmptyCore)));
        assert_eq!(path.core(true).unwrap().vertex_count(), 1);
        let r = LabeledGraph::rose(3);
        assert_eq!(
            r.core(true).unwrap(),
            r.core(false).unwrap().with_base(Some(0)).unwrap()
        );
    }

    #[test]
    fn identify_makes_loops() {
        let edge = LabeledGraph::new(
            2,
            2,
            vec![Edge {
                src: 0,
                dst: 1,
                label: 1,
            }],
            Some(0),
        )
        .unwrap();
        let loop_a = fold(&edge.identify(0, 1).unwrap());
        assert_eq!(loop_a.vertex_count(), 1);
        assert!(iso(&loop_a, &LabeledGraph::word_loop(2, &w("a")), true).is_some());
        assert!(matches!(edge.identify(0, 5), Err(Error::NoSuchVertex(5))));
        let ab = LabeledGraph::new(
            2,
            3,
            vec![
                Edge {
                    src: 0,
                    dst: 1,
                    label: 1,
                },
                Edge {
                    src: 1,
                    dst: 2,
                    label: 2,
                },
            ],
            Some(0),
        )
        .unwrap();
        let wedge = ab.identify(0, 2).unwrap();
        assert_eq!(wedge.vertex_count(), 2);
        assert_eq!(wedge.cycle_rank(), 1);
    }

    #[test]
    fn girth_examples() {
        assert_eq!(LabeledGraph::rose(3).girth().unwrap(), 1);
        let comm = folded(2, &["abAB"]);
        assert_eq!(comm.girth().unwrap(), 4);
        let tree = LabeledGraph::new(
            2,
            2,
            vec![Edge {
                src: 0,
                dst: 1,
                label: 1,
            }],
            Some(0),
        )
        .unwrap();
        assert!(matches!(tree.girth(), Err(Error::Acyclic)));
    }

    #[test]
    fn basis_loops() {
        let r = LabeledGraph::rose(3);
        for i in 1..=3 {
            assert_eq!(r.has_basis_loop(i), Some(0));
        }
        assert_eq!(folded(2, &["aa"]).has_basis_loop(1), None);
        let g = folded(3, &["acbCA", "c"]).core(false).unwrap();
        let b = g.has_basis_loop(2).unwrap();
        let c = g.has_basis_loop(3).unwrap();
        assert_ne!(b, c);
    }

    #[test]
    fn basis_reads_back() {
        let g = folded(3, &["a", "bab", "cBc"]);
        let basis = g.basis_at(0);
        assert_eq!(basis.len(), 3);
        for b in &basis {
            assert_eq!(g.trace(0, b).unwrap(), Some(0));
        }
    }

    #[test]
    fn longest_runs() {
        let g = folded(3, &["bbab", "c"]);
        assert_eq!(g.longest_label_path(2), Some(3));
        assert_eq!(folded(2, &["b"]).longest_label_path(2), None);
        assert_eq!(folded(2, &["bb"]).longest_label_path(2), None);
    }
}
