//! Splitting `A_Γ` along a non-edge until every factor is free of infinity.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Vertex, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// `A_S = A_{st(s)} *_{A_{lk(s)}} A_{S∖{s}}`
    StarLink,
    /// `A_S = A_{S∖{s}} *_{A_{S∖{s,t}}} A_{S∖{t}}`
    TwoDeletion,
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "star-link" => Ok(Strategy::StarLink),
            "two-deletion" => Ok(Strategy::TwoDeletion),
            _ => Err(Error::Invalid(format!("unknown strategy `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionTree {
    Leaf(VertexSet),
    Amalgam {
        left: Box<DecompositionTree>,
        right: Box<DecompositionTree>,
        over: VertexSet,
        pivot: (Vertex, Vertex),
    },
}

/// ShortLex-first pair of distinct vertices of `x` that are not joined by an edge.
pub fn first_nonedge(graph: &LabeledGraph, x: VertexSet) -> Option<(Vertex, Vertex)> {
    let vs: Vec<Vertex> = x.iter().collect();
    for (i, &s) in vs.iter().enumerate() {
        for &t in &vs[i + 1..] {
            if !graph.is_edge(s, t) {
                return Some((s, t));
            }
        }
    }
    None
}

pub fn decompose(graph: &LabeledGraph, strategy: Strategy) -> DecompositionTree {
    decompose_subset(graph, graph.all(), strategy)
}

pub fn decompose_subset(graph: &LabeledGraph, x: VertexSet, strategy: Strategy) -> DecompositionTree {
    let Some((s, t)) = first_nonedge(graph, x) else {
        return DecompositionTree::Leaf(x);
    };
    let (left, right, over) = match strategy {
        Strategy::StarLink => (
            graph.star(s).intersection(x),
            x.without(s),
            graph.link(s).intersection(x),
        ),
        Strategy::TwoDeletion => (x.without(s), x.without(t), x.without(s).without(t)),
    };
    DecompositionTree::Amalgam {
        left: Box::new(decompose_subset(graph, left, strategy)),
        right: Box::new(decompose_subset(graph, right, strategy)),
        over,
        pivot: (s, t),
    }
}

impl DecompositionTree {
    /// The vertex set of the factor this node represents.
    pub fn vertex_set(&self) -> VertexSet {
        match self {
            DecompositionTree::Leaf(x) => *x,
            DecompositionTree::Amalgam { left, right, .. } => left.vertex_set().union(right.vertex_set()),
        }
    }

    pub fn leaves(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<VertexSet>) {
        match self {
            DecompositionTree::Leaf(x) => out.push(*x),
            DecompositionTree::Amalgam { left, right, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
            }
        }
    }

    /// Checks that leaves are free of infinity and every node splits as
    /// `left ∪ right = parent`, `left ∩ right = over`.
    pub fn is_valid(&self, graph: &LabeledGraph) -> bool {
        match self {
            DecompositionTree::Leaf(x) => graph.is_free_of_infinity(*x),
            DecompositionTree::Amalgam { left, right, over, .. } => {
                left.vertex_set().intersection(right.vertex_set()) == *over
                    && left.is_valid(graph)
                    && right.is_valid(graph)
            }
        }
    }

    pub fn render(&self, graph: &LabeledGraph) -> String {
        Render { tree: self, graph, top: true }.to_string()
    }

    pub fn to_json(&self, graph: &LabeledGraph) -> Value {
        match self {
            DecompositionTree::Leaf(x) => json!({ "leaf": graph.subset_names(*x) }),
            DecompositionTree::Amalgam { left, right, over, pivot } => json!({
                "pivot": [graph.name(pivot.0), graph.name(pivot.1)],
                "over": graph.subset_names(*over),
                "left": left.to_json(graph),
                "right": right.to_json(graph),
            }),
        }
    }
}

struct Render<'a> {
    tree: &'a DecompositionTree,
    graph: &'a LabeledGraph,
    top: bool,
}

fn angle(graph: &LabeledGraph, x: VertexSet) -> String {
    format!("<{}>", graph.subset_names(x).join(","))
}

impl fmt::Display for Render<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tree {
            DecompositionTree::Leaf(x) => f.write_str(&angle(self.graph, *x)),
            DecompositionTree::Amalgam { left, right, over, .. } => {
                let child = |t| Render { tree: t, graph: self.graph, top: false };
                if !self.top {
                    f.write_str("(")?;
                }
                write!(f, "{} *_{} {}", child(left), angle(self.graph, *over), child(right))?;
                if !self.top {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_is_a_leaf() {
        let g = LabeledGraph::parse("vertices: a b c\nedges: a b 3, b c 3, a c 2").unwrap();
        assert_eq!(decompose(&g, Strategy::StarLink), DecompositionTree::Leaf(g.all()));
        assert_eq!(decompose(&g, Strategy::StarLink).render(&g), "<a,b,c>");
    }

    #[test]
    fn free_product() {
        let g = LabeledGraph::parse("vertices: v w").unwrap();
        let t = decompose(&g, Strategy::StarLink);
        assert_eq!(t.render(&g), "<v> *_<> <w>");
        assert_eq!(decompose(&g, Strategy::TwoDeletion).render(&g), "<w> *_<> <v>");
        assert!(t.is_valid(&g));
    }

    #[test]
    fn two_deletion_on_a_path() {
        let g = LabeledGraph::parse("vertices: a b c\nedges: a b 2, b c 2").unwrap();
        let t = decompose(&g, Strategy::TwoDeletion);
        assert_eq!(t.render(&g), "<b,c> *_<b> <a,b>");
        assert!(t.is_valid(&g));
        assert_eq!(t.vertex_set(), g.all());
    }
}
