//! Bounded balls in the Bass-Serre tree of an amalgam `A *_C B`.
//!
//! Vertices are cosets `gA`, `gB` and edges are cosets `gC`; the edge `e(g)`
//! joins `v(g, A)` and `v(g, B)`. A [`TreeBackend`] supplies canonical coset
//! representatives and the action by left multiplication, and [`TreeBall`]
//! does the breadth-first growth and the fixed-set bookkeeping.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::hash::Hash;

use serde_json::{json, Value};

use crate::coxeter::{Coxeter, CoxeterElement, Side};
use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet};

/// Which factor a vertex coset belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    A,
    B,
}

impl Factor {
    pub fn other(self) -> Factor {
        match self {
            Factor::A => Factor::B,
            Factor::B => Factor::A,
        }
    }
}

pub trait TreeBackend {
    /// Canonical representative of a coset.
    type Rep: Clone + Eq + Hash + Ord + std::fmt::Debug;
    /// Acting group element.
    type Element: Clone;

    fn name(&self) -> &'static str;
    fn base_edge(&self) -> Self::Rep;
    /// Canonical representative of `v(e, side)` for an edge representative `e`.
    fn endpoint(&self, edge: &Self::Rep, side: Factor) -> Result<Self::Rep>;
    /// Every edge at `v(rep, side)`. The flag is set when the list was cut short.
    fn edges_at(&self, vertex: &Self::Rep, side: Factor) -> Result<(Vec<Self::Rep>, bool)>;
    fn act_edge(&self, w: &Self::Element, edge: &Self::Rep) -> Result<Self::Rep>;
    fn act_vertex(&self, w: &Self::Element, vertex: &Self::Rep, side: Factor) -> Result<Self::Rep>;
    fn format_rep(&self, rep: &Self::Rep) -> String;
    fn side_label(&self, side: Factor) -> String;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeVertex<R> {
    pub rep: R,
    pub side: Factor,
    /// Tree distance to the nearer endpoint of the base edge.
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEdge<R> {
    pub rep: R,
    /// Indices into `vertices`, the `A` endpoint first.
    pub ends: [usize; 2],
}

#[derive(Debug, Clone)]
pub struct TreeBall<B: TreeBackend> {
    pub backend: B,
    pub radius: usize,
    pub vertices: Vec<TreeVertex<B::Rep>>,
    pub edges: Vec<TreeEdge<B::Rep>>,
    /// Some vertex had more edges than the backend was allowed to list.
    pub truncated: bool,
    vertex_index: HashMap<(B::Rep, Factor), usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedSet {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    /// Fixed vertices and edges form a connected subgraph (vacuous when empty).
    pub connected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommonFixed {
    Vertex(usize),
    /// No common fixed vertex in the ball: per-element fixed-vertex counts and,
    /// for each pair `(i, j)`, whether their fixed sets meet.
    Disjoint {
        counts: Vec<usize>,
        meets: Vec<(usize, usize, bool)>,
    },
}

impl<B: TreeBackend> TreeBall<B> {
    /// Every vertex within tree distance `radius` of the base edge, with all
    /// edges of the backend joining two such vertices.
    pub fn grow(backend: B, radius: usize, cap: usize) -> Result<Self> {
        let base = backend.base_edge();
        let mut ball = TreeBall {
            radius,
            vertices: Vec::new(),
            edges: Vec::new(),
            truncated: false,
            vertex_index: HashMap::new(),
            backend,
        };
        let mut queue = VecDeque::new();
        for side in [Factor::A, Factor::B] {
            let rep = ball.backend.endpoint(&base, side)?;
            let i = ball.add_vertex(rep, side, 0, cap)?;
            queue.push_back(i);
        }
        let mut incident: Vec<Vec<B::Rep>> = Vec::new();
        while let Some(i) = queue.pop_front() {
            let TreeVertex { rep, side, distance } = ball.vertices[i].clone();
            let (edges, cut) = ball.backend.edges_at(&rep, side)?;
            ball.truncated |= cut;
            if distance < radius {
                for e in &edges {
                    let other = ball.backend.endpoint(e, side.other())?;
                    if !ball.vertex_index.contains_key(&(other.clone(), side.other())) {
                        let j = ball.add_vertex(other, side.other(), distance + 1, cap)?;
                        queue.push_back(j);
                    }
                }
            }
            if incident.len() <= i {
                incident.resize(i + 1, Vec::new());
            }
            incident[i] = edges;
        }
        let mut seen: HashMap<B::Rep, usize> = HashMap::new();
        for (i, edges) in incident.into_iter().enumerate() {
            let side = ball.vertices[i].side;
            for e in edges {
                let other = ball.backend.endpoint(&e, side.other())?;
                let Some(&j) = ball.vertex_index.get(&(other, side.other())) else {
                    continue;
                };
                if seen.contains_key(&e) {
                    continue;
                }
                seen.insert(e.clone(), ball.edges.len());
                let ends = if side == Factor::A { [i, j] } else { [j, i] };
                ball.edges.push(TreeEdge { rep: e, ends });
            }
        }
        Ok(ball)
    }

    fn add_vertex(&mut self, rep: B::Rep, side: Factor, distance: usize, cap: usize) -> Result<usize> {
        if self.vertices.len() == cap {
            return Err(Error::CapExceeded { what: "tree ball", cap });
        }
        let i = self.vertices.len();
        self.vertex_index.insert((rep.clone(), side), i);
        self.vertices.push(TreeVertex { rep, side, distance });
        Ok(i)
    }

    pub fn vertex(&self, rep: &B::Rep, side: Factor) -> Option<usize> {
        self.vertex_index.get(&(rep.clone(), side)).copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.ends.contains(&v)).count()
    }

    /// The base edge `e(1)` is always edge 0.
    pub fn base_edge(&self) -> usize {
        0
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let edges: Vec<usize> = (0..self.edges.len()).collect();
        self.connected_within(&all, &edges)
    }

    /// `|E| = |V| − 1` and connected.
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.vertices.len() && self.is_connected()
    }

    fn connected_within(&self, vertices: &[usize], edges: &[usize]) -> bool {
        let Some(&start) = vertices.first() else {
            return true;
        };
        let mut reached = vec![false; self.vertices.len()];
        reached[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &e in edges {
                let [a, b] = self.edges[e].ends;
                let next = if a == v { b } else if b == v { a } else { continue };
                if !reached[next] {
                    reached[next] = true;
                    stack.push(next);
                }
            }
        }
        vertices.iter().all(|&v| reached[v])
    }

    pub fn fixes_vertex(&self, w: &B::Element, v: usize) -> Result<bool> {
        let TreeVertex { rep, side, .. } = &self.vertices[v];
        Ok(self.backend.act_vertex(w, rep, *side)? == *rep)
    }

    pub fn fixes_edge(&self, w: &B::Element, e: usize) -> Result<bool> {
        Ok(self.backend.act_edge(w, &self.edges[e].rep)? == self.edges[e].rep)
    }

    pub fn fixed_set(&self, w: &B::Element) -> Result<FixedSet> {
        let mut vertices = Vec::new();
        for v in 0..self.vertices.len() {
            if self.fixes_vertex(w, v)? {
                vertices.push(v);
            }
        }
        let mut edges = Vec::new();
        for e in 0..self.edges.len() {
            if self.fixes_edge(w, e)? {
                edges.push(e);
            }
        }
        let connected = self.connected_within(&vertices, &edges);
        Ok(FixedSet { vertices, edges, connected })
    }

    /// Edges mapped to themselves with their endpoints swapped.
    pub fn inversions(&self, w: &B::Element) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if self.fixes_edge(w, i)? && !(self.fixes_vertex(w, e.ends[0])? && self.fixes_vertex(w, e.ends[1])?) {
                out.push(i);
            }
        }
        Ok(out)
    }

    pub fn common_fixed_vertex(&self, elements: &[B::Element]) -> Result<CommonFixed> {
        let sets = elements
            .iter()
            .map(|w| self.fixed_set(w).map(|f| f.vertices))
            .collect::<Result<Vec<_>>>()?;
        let common = (0..self.vertices.len()).find(|v| sets.iter().all(|s| s.binary_search(v).is_ok()));
        if let Some(v) = common {
            return Ok(CommonFixed::Vertex(v));
        }
        let mut meets = Vec::new();
        for i in 0..sets.len() {
            for j in i + 1..sets.len() {
                meets.push((i, j, sets[i].iter().any(|v| sets[j].binary_search(v).is_ok())));
            }
        }
        Ok(CommonFixed::Disjoint {
            counts: sets.iter().map(Vec::len).collect(),
            meets,
        })
    }

    pub fn vertex_label(&self, v: usize) -> String {
        let TreeVertex { rep, side, .. } = &self.vertices[v];
        format!("{}{}", self.backend.format_rep(rep), self.backend.side_label(*side))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "backend": self.backend.name(),
            "radius": self.radius,
            "truncated": self.truncated,
            "vertices": self.vertices.iter().enumerate().map(|(i, v)| json!({
                "rep": self.backend.format_rep(&v.rep),
                "side": self.backend.side_label(v.side),
                "distance": v.distance,
                "label": self.vertex_label(i),
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!({
                "rep": self.backend.format_rep(&e.rep),
                "ends": e.ends,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph tree {\n");
        for i in 0..self.vertices.len() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", self.vertex_label(i).replace('"', "\\\""));
        }
        for (i, e) in self.edges.iter().enumerate() {
            let style = if i == self.base_edge() { " [penwidth=3, color=red]" } else { "" };
            let _ = writeln!(out, "  n{} -- n{}{style};", e.ends[0], e.ends[1]);
        }
        out.push_str("}\n");
        out
    }
}

/// Bass-Serre tree of `W_Γ = W_I *_{W_K} W_J` for a non-edge `{s, t}`, with
/// `I = V∖{s}`, `J = V∖{t}`, `K = V∖{s,t}`.
#[derive(Debug, Clone)]
pub struct CoxeterShadowTree {
    engine: Coxeter,
    pivot: (Vertex, Vertex),
    i: VertexSet,
    j: VertexSet,
    k: VertexSet,
    transversal_i: Vec<CoxeterElement>,
    transversal_j: Vec<CoxeterElement>,
    truncated: bool,
}

impl CoxeterShadowTree {
    /// `branch` bounds the length of the coset representatives of `W_I/W_K`
    /// and `W_J/W_K` listed at each vertex; `None` lists them all.
    pub fn new(engine: &Coxeter, s: Vertex, t: Vertex, branch: Option<usize>) -> Result<Self> {
        let graph = engine.graph();
        if s == t || graph.is_edge(s, t) || s.index() >= graph.len() || t.index() >= graph.len() {
            return Err(Error::NotANonEdge(graph.name(s).to_string(), graph.name(t).to_string()));
        }
        let all = graph.all();
        let (i, j) = (all.without(s), all.without(t));
        let k = i.intersection(j);
        let (transversal_i, cut_i) = min_reps(engine, i, k, branch)?;
        let (transversal_j, cut_j) = min_reps(engine, j, k, branch)?;
        Ok(CoxeterShadowTree {
            engine: engine.clone(),
            pivot: (s, t),
            i,
            j,
            k,
            transversal_i,
            transversal_j,
            truncated: cut_i || cut_j,
        })
    }

    pub fn engine(&self) -> &Coxeter {
        &self.engine
    }

    pub fn pivot(&self) -> (Vertex, Vertex) {
        self.pivot
    }

    pub fn factor_set(&self, side: Factor) -> VertexSet {
        match side {
            Factor::A => self.i,
            Factor::B => self.j,
        }
    }

    pub fn edge_set(&self) -> VertexSet {
        self.k
    }

    /// Minimal representatives of `W_I/W_K` (for `A`) or `W_J/W_K` (for `B`).
    pub fn transversal(&self, side: Factor) -> &[CoxeterElement] {
        match side {
            Factor::A => &self.transversal_i,
            Factor::B => &self.transversal_j,
        }
    }
}

/// Minimal length representatives of `W_X/W_Y` for `Y ⊆ X`, shortest first.
/// They are closed under suffixes, so they grow one letter at a time on the left.
pub fn min_reps(engine: &Coxeter, x: VertexSet, y: VertexSet, max_len: Option<usize>) -> Result<(Vec<CoxeterElement>, bool)> {
    let cap = engine.caps().enumeration;
    let mut all = vec![CoxeterElement::identity()];
    let mut layer = all.clone();
    let mut len = 0;
    while !layer.is_empty() {
        let mut next: Vec<CoxeterElement> = Vec::new();
        for u in &layer {
            for s in x.iter() {
                let z = engine.multiply(&engine.generator(s), u)?;
                if z.len() == len + 1 && engine.right_descents(&z)?.intersection(y).is_empty() && !next.contains(&z) {
                    next.push(z);
                }
            }
        }
        if max_len == Some(len) {
            return Ok((all, !next.is_empty()));
        }
        next.sort();
        if all.len() + next.len() > cap {
            return Err(Error::CapExceeded { what: "coset representatives", cap });
        }
        all.extend(next.iter().cloned());
        layer = next;
        len += 1;
    }
    Ok((all, false))
}

impl TreeBackend for CoxeterShadowTree {
    type Rep = CoxeterElement;
    type Element = CoxeterElement;

    fn name(&self) -> &'static str {
        "coxeter-shadow"
    }

    fn base_edge(&self) -> CoxeterElement {
        CoxeterElement::identity()
    }

    fn endpoint(&self, edge: &CoxeterElement, side: Factor) -> Result<CoxeterElement> {
        self.engine.min_coset_rep(edge, self.factor_set(side), Side::Right)
    }

    fn edges_at(&self, vertex: &CoxeterElement, side: Factor) -> Result<(Vec<CoxeterElement>, bool)> {
        let edges = self
            .transversal(side)
            .iter()
            .map(|y| {
                let ay = self.engine.multiply(vertex, y)?;
                self.engine.min_coset_rep(&ay, self.k, Side::Right)
            })
            .collect::<Result<_>>()?;
        Ok((edges, self.truncated))
    }

    fn act_edge(&self, w: &CoxeterElement, edge: &CoxeterElement) -> Result<CoxeterElement> {
        self.engine.min_coset_rep(&self.engine.multiply(w, edge)?, self.k, Side::Right)
    }

    fn act_vertex(&self, w: &CoxeterElement, vertex: &CoxeterElement, side: Factor) -> Result<CoxeterElement> {
        self.endpoint(&self.engine.multiply(w, vertex)?, side)
    }

    fn format_rep(&self, rep: &CoxeterElement) -> String {
        self.engine.format(rep)
    }

    fn side_label(&self, side: Factor) -> String {
        format!(" W{}", self.engine.graph().format_subset(self.factor_set(side)))
    }
}
