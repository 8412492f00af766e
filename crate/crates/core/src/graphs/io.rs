use std::fmt::Write as _;

use super::{Edge, LabeledGraph};
use crate::error::{Error, Result};

impl LabeledGraph {
    /// Text form: a header `n=<rank> base=<vertex|none>` followed by one
    /// `src dst label` line per edge.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "n={} base={}\n",
            self.rank,
            self.base.map_or("none".to_string(), |b| b.to_string())
        );
        for e in &self.edges {
            let _ = writeln!(s, "{} {} {}", e.src, e.dst, e.label);
        }
        s
    }

    /// Parses [`LabeledGraph::to_text`] output. Blank lines and `#`
    /// comments are skipped; the vertex count is one more than the largest
    /// id mentioned.
    pub fn parse(text: &str) -> Result<LabeledGraph> {
        let mut header: Option<(usize, Option<usize>)> = None;
        let mut edges = Vec::new();
        let mut max_v = 0;
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::GraphParse {
                line: line_no,
                message,
            };
            if header.is_none() {
                let mut rank = None;
                let mut base = None;
                for field in line.split_whitespace() {
                    match field.split_once('=') {
                        Some(("n", v)) => {
                            rank = Some(
                                v.parse::<usize>()
                                    .map_err(|_| err(format!("bad rank '{v}'")))?,
                            )
                        }
                        Some(("base", "none")) => base = Some(None),
                        Some(("base", v)) => {
                            base = Some(Some(
                                v.parse::<usize>()
                                    .map_err(|_| err(format!("bad basepoint '{v}'")))?,
                            ))
                        }
                        _ => return Err(err(format!("unexpected header field '{field}'"))),
                    }
                }
                let rank = rank.ok_or_else(|| err("header lacks n=<rank>".into()))?;
                let base = base.ok_or_else(|| err("header lacks base=<vertex|none>".into()))?;
                if let Some(b) = base {
                    max_v = max_v.max(b);
                }
                header = Some((rank, base));
                continue;
            }
            let nums: Vec<&str> = line.split_whitespace().collect();
            if nums.len() != 3 {
                return Err(err(format!("expected 'src dst label', found '{line}'")));
            }
            let mut vals = [0usize; 3];
            for (slot, s) in vals.iter_mut().zip(&nums) {
                *slot = s.parse().map_err(|_| err(format!("not a number: '{s}'")))?;
            }
            let rank = header.expect("set above").0;
            if vals[2] == 0 || vals[2] > rank {
                return Err(err(format!("label {} outside 1..={rank}", vals[2])));
            }
            max_v = max_v.max(vals[0]).max(vals[1]);
            edges.push(Edge {
                src: vals[0],
                dst: vals[1],
                label: vals[2],
            });
        }
        let (rank, base) = header.ok_or(Error::GraphParse {
            line: 1,
            message: "empty input".into(),
        })?;
        LabeledGraph::new(rank, max_v + 1, edges, base)
    }

    /// Graphviz rendering; the basepoint is drawn as a double circle.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph {name} {{\n  node [shape=circle];\n");
        for v in 0..self.vertices {
            let shape = if Some(v) == self.base {
                " [shape=doublecircle]"
            } else {
                ""
            };
            let _ = writeln!(s, "  {v}{shape};");
        }
        for e in &self.edges {
            let _ = writeln!(s, "  {} -> {} [label=\"a_{}\"];", e.src, e.dst, e.label);
        }
        s.push_str("}\n");
        s
    }
}
