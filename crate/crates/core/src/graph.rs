//! Edge-labeled simplicial graphs.
//!
//! A [`LabeledGraph`] is the single source of truth for both the Artin group
//! `A_Γ` and the Coxeter group `W_Γ`. A missing edge means the label is `∞`
//! (no relation between the two generators). The declaration order of the
//! vertices is fixed at parse time and drives every ShortLex comparison in
//! the crate.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Upper bound on the number of vertices; subsets are stored as `u64` masks.
pub const MAX_VERTICES: usize = 64;

/// Index of a vertex in its graph's declaration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub u8);

impl Vertex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of vertices of one graph, as a bit mask over declaration order.
///
/// `Ord` is ShortLex: smaller sets first, then lexicographic on the sorted
/// vertex indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The first `n` vertices.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: Vertex) -> Self {
        VertexSet(1u64 << v.0)
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 >> v.0 & 1 == 1
    }

    pub fn with(self, v: Vertex) -> Self {
        VertexSet(self.0 | 1u64 << v.0)
    }

    pub fn without(self, v: Vertex) -> Self {
        VertexSet(self.0 & !(1u64 << v.0))
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Vertices in ascending (declaration) order.
    pub fn iter(self) -> impl Iterator<Item = Vertex> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            Some(Vertex(i as u8))
        })
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(VertexSet(cur))
        })
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, VertexSet::with)
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub a: Vertex,
    pub b: Vertex,
    pub label: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    // 0 encodes a missing edge (label ∞)
    labels: Vec<Vec<u32>>,
    edges: Vec<Edge>,
}

impl LabeledGraph {
    /// Builds a graph from vertex names and `(a, b, m)` edges.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S, u64)]) -> Result<Self> {
        let mut g = GraphBuilder::default();
        for v in vertices {
            g.vertex(v.as_ref())?;
        }
        for (a, b, m) in edges {
            g.edge(a.as_ref(), b.as_ref(), *m)?;
        }
        Ok(g.finish())
    }

    /// The dihedral graph `I₂(m)`: two vertices `v`, `w` joined by an edge labeled `m`.
    pub fn dihedral(m: u32) -> Self {
        Self::new(&["v", "w"], &[("v", "w", m as u64)]).expect("valid dihedral graph")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut builder: Option<GraphBuilder> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, rest) = content.split_once(':').ok_or_else(|| Error::Syntax {
                line,
                message: format!("expected `key: value`, got `{content}`"),
            })?;
            match key.trim() {
                "vertices" => {
                    if builder.is_some() {
                        return Err(Error::Syntax {
                            line,
                            message: "`vertices:` declared twice".into(),
                        });
                    }
                    let mut b = GraphBuilder::default();
                    for name in rest.split_whitespace() {
                        b.vertex(name)?;
                    }
                    builder = Some(b);
                }
                "edge" | "edges" => {
                    let b = builder.as_mut().ok_or(Error::MissingVertices)?;
                    for item in rest.split(',') {
                        let item = item.trim();
                        if item.is_empty() {
                            continue;
                        }
                        let toks: Vec<&str> = item.split_whitespace().collect();
                        let [a, c, m] = toks[..] else {
                            return Err(Error::Syntax {
                                line,
                                message: format!("expected `a b m`, got `{item}`"),
                            });
                        };
                        let m: u64 = m.parse().map_err(|_| Error::Syntax {
                            line,
                            message: format!("label `{m}` is not a positive integer"),
                        })?;
                        b.edge(a, c, m)?;
                    }
                }
                other => {
                    return Err(Error::Syntax {
                        line,
                        message: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        builder.map(GraphBuilder::finish).ok_or(Error::MissingVertices)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.names.len()).map(|i| Vertex(i as u8))
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Edge label `m({a,b})`, or `None` for a non-edge (label ∞) and for `a == b`.
    pub fn label(&self, a: Vertex, b: Vertex) -> Option<u32> {
        match self.labels[a.index()][b.index()] {
            0 => None,
            m => Some(m),
        }
    }

    pub fn is_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.label(a, b).is_some()
    }

    /// Edges in declaration order, endpoints as declared.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        self.vertices().filter(|&w| self.is_edge(v, w)).collect()
    }

    /// `st(v)`: `v` together with its neighbours.
    pub fn star(&self, v: Vertex) -> VertexSet {
        self.neighbors(v).with(v)
    }

    /// `lk(v) = st(v) \ {v}`.
    pub fn link(&self, v: Vertex) -> VertexSet {
        self.star(v).without(v)
    }

    /// The induced subgraph `⟨X⟩`. Vertex order and names are inherited.
    pub fn induced_subgraph(&self, x: VertexSet) -> LabeledGraph {
        let mut b = GraphBuilder::default();
        for v in x.iter() {
            b.vertex(self.name(v)).expect("names are unique");
        }
        for e in &self.edges {
            if x.contains(e.a) && x.contains(e.b) {
                b.edge(self.name(e.a), self.name(e.b), e.label as u64)
                    .expect("edge of a valid graph");
            }
        }
        b.finish()
    }

    /// Maps a vertex of `induced_subgraph(x)` back to this graph.
    pub fn lift_from_induced(&self, x: VertexSet, v: Vertex) -> Vertex {
        x.iter().nth(v.index()).expect("vertex of the induced subgraph")
    }

    pub fn is_free_of_infinity(&self, x: VertexSet) -> bool {
        let vs: Vec<Vertex> = x.iter().collect();
        vs.iter()
            .enumerate()
            .all(|(i, &a)| vs[i + 1..].iter().all(|&b| self.is_edge(a, b)))
    }

    pub fn is_complete(&self) -> bool {
        self.is_free_of_infinity(self.all())
    }

    /// All pairs `{s,t}` with `s < t` that are not edges, in ShortLex order.
    pub fn nonedge_pairs(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for a in self.vertices() {
            for b in self.vertices().filter(|&b| b > a) {
                if !self.is_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Every clique (free-of-infinity subset), `∅` included, sorted ShortLex.
    pub fn enumerate_cliques(&self) -> Vec<VertexSet> {
        let mut out = vec![VertexSet::EMPTY];
        let mut frontier = vec![VertexSet::EMPTY];
        // extend each clique only by vertices above its maximum, so each is produced once
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for c in frontier {
                let start = c.iter().last().map_or(0, |v| v.index() + 1);
                for w in (start..self.len()).map(|i| Vertex(i as u8)) {
                    if c.iter().all(|u| self.is_edge(u, w)) {
                        next.push(c.with(w));
                    }
                }
            }
            out.extend(next.iter().copied());
            frontier = next;
        }
        out.sort();
        out
    }

    pub fn parse_subset(&self, text: &str) -> Result<VertexSet> {
        let mut set = VertexSet::EMPTY;
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            let tok = tok.trim_matches(|c| c == '{' || c == '}');
            if tok.is_empty() {
                continue;
            }
            set = set.with(self.vertex(tok)?);
        }
        Ok(set)
    }

    pub fn subset_names(&self, x: VertexSet) -> Vec<String> {
        x.iter().map(|v| self.name(v).to_string()).collect()
    }

    /// `{a,b}` style rendering; `{}` for the empty set.
    pub fn format_subset(&self, x: VertexSet) -> String {
        format!("{{{}}}", self.subset_names(x).join(","))
    }

    /// The defining presentation of `A_Γ`, relations in edge declaration order.
    pub fn artin_presentation(&self) -> String {
        let rels: Vec<String> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (self.name(e.a), self.name(e.b));
                let lhs = alternating(a, b, e.label as usize);
                let rhs = alternating(b, a, e.label as usize);
                format!("{lhs}={rhs}")
            })
            .collect();
        present(&self.names, &rels)
    }

    /// The defining presentation of `W_Γ`.
    pub fn coxeter_presentation(&self) -> String {
        let mut rels: Vec<String> = self.names.iter().map(|v| format!("{v}^2")).collect();
        rels.extend(self.edges.iter().map(|e| {
            format!("({}{})^{}", self.name(e.a), self.name(e.b), e.label)
        }));
        present(&self.names, &rels)
    }

    /// Canonical text form, accepted by [`LabeledGraph::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("vertices: {}\n", self.names.join(" "));
        for e in &self.edges {
            s.push_str(&format!("edge: {} {} {}\n", self.name(e.a), self.name(e.b), e.label));
        }
        s
    }

    /// Short stable fingerprint of [`LabeledGraph::to_text`].
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.to_text().as_bytes());
        hex::encode(&digest[..8])
    }
}

impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn alternating(a: &str, b: &str, m: usize) -> String {
    (0..m).map(|i| if i % 2 == 0 { a } else { b }).collect()
}

fn present(gens: &[String], rels: &[String]) -> String {
    if rels.is_empty() {
        format!("<{}>", gens.join(","))
    } else {
        format!("<{} | {}>", gens.join(","), rels.join(", "))
    }
}

#[derive(Default)]
struct GraphBuilder {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    edges: Vec<(Vertex, Vertex, u32)>,
}

impl GraphBuilder {
    fn vertex(&mut self, name: &str) -> Result<()> {
        if self.index.contains_key(name) {
            return Err(Error::DuplicateVertex(name.to_string()));
        }
        if self.names.len() == MAX_VERTICES {
            return Err(Error::TooManyVertices {
                max: MAX_VERTICES,
                got: MAX_VERTICES + 1,
            });
        }
        self.index.insert(name.to_string(), Vertex(self.names.len() as u8));
        self.names.push(name.to_string());
        Ok(())
    }

    fn edge(&mut self, a: &str, b: &str, m: u64) -> Result<()> {
        let va = *self.index.get(a).ok_or_else(|| Error::UnknownVertex(a.into()))?;
        let vb = *self.index.get(b).ok_or_else(|| Error::UnknownVertex(b.into()))?;
        if va == vb {
            return Err(Error::LoopEdge(a.into()));
        }
        if m < 2 || m > u32::MAX as u64 {
            return Err(Error::InvalidLabel {
                a: a.into(),
                b: b.into(),
                label: m,
            });
        }
        if self
            .edges
            .iter()
            .any(|&(x, y, _)| (x, y) == (va, vb) || (x, y) == (vb, va))
        {
            return Err(Error::DuplicateEdge(a.into(), b.into()));
        }
        self.edges.push((va, vb, m as u32));
        Ok(())
    }

    fn finish(self) -> LabeledGraph {
        let n = self.names.len();
        let mut labels = vec![vec![0u32; n]; n];
        let edges = self
            .edges
            .into_iter()
            .map(|(a, b, m)| {
                labels[a.index()][b.index()] = m;
                labels[b.index()][a.index()] = m;
                Edge { a, b, label: m }
            })
            .collect();
        LabeledGraph {
            names: self.names,
            index: self.index,
            labels,
            edges,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = "vertices: v w x y\nedges: v w 2, w x 3, x y 4, y v 5\n";

    fn path_abc() -> LabeledGraph {
        LabeledGraph::parse("vertices: a b c\nedge: a b 2\nedge: b c 2").unwrap()
    }

    fn set(g: &LabeledGraph, s: &str) -> VertexSet {
        g.parse_subset(s).unwrap()
    }

    #[test]
    fn parses_worked_square() {
        let g = LabeledGraph::parse(SQUARE).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.edges().len(), 4);
        let (v, x, y) = (g.vertex("v").unwrap(), g.vertex("x").unwrap(), g.vertex("y").unwrap());
        assert_eq!(g.label(y, v), Some(5));
        assert_eq!(g.label(v, x), None);
        assert_eq!(
            g.artin_presentation(),
            "<v,w,x,y | vw=wv, wxw=xwx, xyxy=yxyx, yvyvy=vyvyv>"
        );
    }

    #[test]
    fn parse_errors() {
        assert_eq!(LabeledGraph::parse("vertices: a a"), Err(Error::DuplicateVertex("a".into())));
        assert_eq!(
            LabeledGraph::parse("vertices: a b\nedge: a c 2"),
            Err(Error::UnknownVertex("c".into()))
        );
        assert!(matches!(
            LabeledGraph::parse("vertices: a b\nedge: a b 1"),
            Err(Error::InvalidLabel { label: 1, .. })
        ));
        assert_eq!(
            LabeledGraph::parse("vertices: a b\nedge: a a 2"),
            Err(Error::LoopEdge("a".into()))
        );
        assert!(matches!(
            LabeledGraph::parse("vertices: a b\nedge: a b 2\nedge: b a 3"),
            Err(Error::DuplicateEdge(..))
        ));
        assert_eq!(LabeledGraph::parse("# nothing\n"), Err(Error::MissingVertices));
        assert!(matches!(
            LabeledGraph::parse("vertices: a b\nedge: a b"),
            Err(Error::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn single_vertex_and_comments() {
        let g = LabeledGraph::parse("# one vertex\nvertices: a   # trailing\n").unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.edges().is_empty());
        assert_eq!(LabeledGraph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn star_and_link() {
        let g = path_abc();
        let b = g.vertex("b").unwrap();
        assert_eq!(g.link(b), set(&g, "a c"));
        assert_eq!(g.star(b), set(&g, "a b c"));

        let iso = LabeledGraph::parse("vertices: p q").unwrap();
        assert!(iso.link(Vertex(0)).is_empty());

        let tri = LabeledGraph::parse("vertices: u v w\nedges: u v 3, v w 3, u w 2").unwrap();
        assert_eq!(tri.star(Vertex(0)), tri.all());
    }

    #[test]
    fn induced_subgraphs() {
        let g = LabeledGraph::parse(SQUARE).unwrap();
        let vw = g.induced_subgraph(set(&g, "v w"));
        assert_eq!(vw.to_text(), "vertices: v w\nedge: v w 2\n");
        assert!(g.induced_subgraph(VertexSet::EMPTY).is_empty());
        assert_eq!(g.induced_subgraph(g.all()), g);
    }

    #[test]
    fn cliques() {
        let g = path_abc();
        let names: Vec<String> = g
            .enumerate_cliques()
            .into_iter()
            .map(|c| g.format_subset(c))
            .collect();
        assert_eq!(names, ["{}", "{a}", "{b}", "{c}", "{a,b}", "{b,c}"]);

        let one = LabeledGraph::parse("vertices: a").unwrap();
        assert_eq!(one.enumerate_cliques().len(), 2);

        let sq = LabeledGraph::parse(SQUARE).unwrap();
        let brute = sq.all().subsets().filter(|&x| sq.is_free_of_infinity(x)).count();
        assert_eq!(brute, 9);
        assert_eq!(sq.enumerate_cliques().len(), brute);
    }

    #[test]
    fn free_of_infinity() {
        let g = LabeledGraph::parse(SQUARE).unwrap();
        assert!(!g.is_free_of_infinity(set(&g, "v x")));
        let pairs: Vec<String> = g
            .nonedge_pairs()
            .into_iter()
            .map(|(a, b)| format!("{}{}", g.name(a), g.name(b)))
            .collect();
        assert_eq!(pairs, ["vx", "wy"]);
        assert!(g.is_free_of_infinity(set(&g, "w")));
        assert!(g.is_free_of_infinity(VertexSet::EMPTY));
        let tri = LabeledGraph::parse("vertices: u v w\nedges: u v 3, v w 3, u w 2").unwrap();
        assert!(tri.is_complete());
    }

    #[test]
    fn shortlex_on_sets() {
        let a = VertexSet::from_bits(0b100);
        let b = VertexSet::from_bits(0b011);
        let c = VertexSet::from_bits(0b101);
        assert!(a < b);
        assert!(b < c);
        assert_eq!(VertexSet::from_bits(0b111).subsets().count(), 8);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_graph() -> impl Strategy<Value = LabeledGraph> {
            (1usize..7).prop_flat_map(|n| {
                let pairs: Vec<(usize, usize)> =
                    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
                let k = pairs.len();
                proptest::collection::vec(proptest::option::of(2u64..6), k).prop_map(move |ls| {
                    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
                    let edges: Vec<(String, String, u64)> = pairs
                        .iter()
                        .zip(ls)
                        .filter_map(|(&(a, b), l)| l.map(|m| (names[a].clone(), names[b].clone(), m)))
                        .collect();
                    LabeledGraph::new(&names, &edges).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn graph_invariants(g in arb_graph(), mask in any::<u64>(), mask2 in any::<u64>()) {
                for v in g.vertices() {
                    prop_assert_eq!(g.link(v), g.star(v).without(v));
                }
                let cliques = g.enumerate_cliques();
                for &c in &cliques {
                    for s in c.subsets() {
                        prop_assert!(cliques.contains(&s));
                    }
                }
                let x = VertexSet::from_bits(mask).intersection(g.all());
                prop_assert_eq!(g.is_free_of_infinity(x), cliques.contains(&x));
                let y = VertexSet::from_bits(mask2).intersection(x);
                // Y ⊆ X, renumbered into ⟨X⟩
                let sub = g.induced_subgraph(x);
                let y_in_sub: VertexSet = sub
                    .vertices()
                    .filter(|&v| y.contains(g.lift_from_induced(x, v)))
                    .collect();
                prop_assert_eq!(sub.induced_subgraph(y_in_sub), g.induced_subgraph(y));
                prop_assert_eq!(LabeledGraph::parse(&g.to_text()).unwrap(), g);
            }
        }
    }
}
