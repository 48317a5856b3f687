//! Exact arithmetic in the Coxeter group `W_Γ`.
//!
//! The word problem is solved with braid-class search: a word is reduced iff
//! no word in its braid class has two equal adjacent letters, and any two
//! reduced expressions of one element are braid-equivalent. The canonical
//! form of an element is the ShortLex-minimal member of the braid class of any
//! reduced expression, ShortLex being taken over the graph's vertex order.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::braid;
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Vertex, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest braid class any single search may visit.
    pub braid: usize,
    /// Largest number of group elements (or cosets) an enumeration may produce.
    pub enumeration: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            braid: 200_000,
            enumeration: 10_000,
        }
    }
}

/// An element of `W_Γ`, stored as its canonical reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxeterElement {
    word: Vec<Vertex>,
}

impl CoxeterElement {
    pub fn identity() -> Self {
        CoxeterElement { word: Vec::new() }
    }

    pub fn word(&self) -> &[Vertex] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// Letters of the canonical word; equal to the letters of every reduced expression.
    pub fn support(&self) -> VertexSet {
        self.word.iter().copied().collect()
    }
}

/// ShortLex: length first, then lexicographic in vertex order.
impl Ord for CoxeterElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        shortlex(&self.word, &other.word)
    }
}

impl PartialOrd for CoxeterElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

pub fn shortlex(a: &[Vertex], b: &[Vertex]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `g = h1 · g0 · h2` with `h1 ∈ W_X`, `h2 ∈ W_Y` and additive lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCosetDecomposition {
    pub g0: CoxeterElement,
    pub h1: CoxeterElement,
    pub h2: CoxeterElement,
}

/// Elements of `W_Γ` up to some length, in ShortLex order.
#[derive(Debug, Clone)]
pub struct CayleyBall {
    pub elements: Vec<CoxeterElement>,
    /// Number of elements of each length `0..=radius`.
    pub sphere_sizes: Vec<usize>,
    /// True when the enumeration ran out of elements, i.e. `W_Γ` is finite
    /// and `elements` is the whole group.
    pub exhausted: bool,
}

/// Word-problem engine for one graph. Cheap to clone.
#[derive(Debug, Clone)]
pub struct Coxeter {
    graph: Arc<LabeledGraph>,
    caps: Caps,
}

impl Coxeter {
    pub fn new(graph: LabeledGraph) -> Self {
        Self::with_caps(Arc::new(graph), Caps::default())
    }

    pub fn with_caps(graph: Arc<LabeledGraph>, caps: Caps) -> Self {
        Coxeter { graph, caps }
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn shared_graph(&self) -> Arc<LabeledGraph> {
        Arc::clone(&self.graph)
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    /// Engine for the standard parabolic `W_X`, realised on `⟨X⟩`.
    pub fn restricted(&self, x: VertexSet) -> Coxeter {
        Coxeter::with_caps(Arc::new(self.graph.induced_subgraph(x)), self.caps)
    }

    fn check(&self, word: &[Vertex]) -> Result<()> {
        if word.iter().any(|v| v.index() >= self.graph.len()) {
            return Err(Error::GraphMismatch);
        }
        Ok(())
    }

    /// Whitespace-separated vertex names; `e` alone is the empty word unless
    /// the graph has a vertex called `e`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Vertex>> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks == ["e"] && self.graph.vertex("e").is_err() {
            return Ok(Vec::new());
        }
        toks.into_iter().map(|t| self.graph.vertex(t)).collect()
    }

    pub fn format_word(&self, word: &[Vertex]) -> String {
        format_word(&self.graph, word)
    }

    pub fn format(&self, g: &CoxeterElement) -> String {
        self.format_word(&g.word)
    }

    pub fn generator(&self, s: Vertex) -> CoxeterElement {
        CoxeterElement { word: vec![s] }
    }

    pub fn braid_class(&self, word: &[Vertex]) -> Result<Vec<Vec<Vertex>>> {
        self.check(word)?;
        braid::braid_class(&self.graph, word, self.caps.braid)
    }

    /// Appends `s` to a reduced word, keeping it reduced: if some braid-equivalent
    /// expression ends in `s` the pair `ss` cancels, otherwise `s` is appended.
    fn push_reduced(&self, reduced: Vec<Vertex>, s: Vertex) -> Result<Vec<Vertex>> {
        match braid::find_in_class(&self.graph, &reduced, self.caps.braid, |u| u.last() == Some(&s))? {
            Some(mut u) => {
                u.pop();
                Ok(u)
            }
            None => {
                let mut r = reduced;
                r.push(s);
                Ok(r)
            }
        }
    }

    fn canonicalize(&self, reduced: &[Vertex]) -> Result<CoxeterElement> {
        let class = braid::braid_class(&self.graph, reduced, self.caps.braid)?;
        let word = class
            .into_iter()
            .min_by(|a, b| shortlex(a, b))
            .expect("class contains its seed");
        Ok(CoxeterElement { word })
    }

    /// Reduces an arbitrary word to the canonical element it represents.
    pub fn reduce(&self, word: &[Vertex]) -> Result<CoxeterElement> {
        self.check(word)?;
        let mut cur = Vec::with_capacity(word.len());
        for &s in word {
            cur = self.push_reduced(cur, s)?;
        }
        self.canonicalize(&cur)
    }

    pub fn equal(&self, a: &[Vertex], b: &[Vertex]) -> Result<bool> {
        Ok(self.reduce(a)? == self.reduce(b)?)
    }

    pub fn length(&self, word: &[Vertex]) -> Result<usize> {
        Ok(self.reduce(word)?.len())
    }

    pub fn multiply(&self, a: &CoxeterElement, b: &CoxeterElement) -> Result<CoxeterElement> {
        self.check(&a.word)?;
        self.check(&b.word)?;
        let mut cur = a.word.clone();
        for &s in &b.word {
            cur = self.push_reduced(cur, s)?;
        }
        self.canonicalize(&cur)
    }

    pub fn multiply_all<'a>(&self, factors: impl IntoIterator<Item = &'a CoxeterElement>) -> Result<CoxeterElement> {
        factors
            .into_iter()
            .try_fold(CoxeterElement::identity(), |acc, f| self.multiply(&acc, f))
    }

    pub fn invert(&self, a: &CoxeterElement) -> Result<CoxeterElement> {
        self.check(&a.word)?;
        let rev: Vec<Vertex> = a.word.iter().rev().copied().collect();
        self.canonicalize(&rev)
    }

    /// `g · h · g⁻¹`
    pub fn conjugate(&self, g: &CoxeterElement, h: &CoxeterElement) -> Result<CoxeterElement> {
        let gi = self.invert(g)?;
        self.multiply_all([g, h, &gi])
    }

    /// Generators `s` with `ℓ(g·s) < ℓ(g)`.
    pub fn right_descents(&self, g: &CoxeterElement) -> Result<VertexSet> {
        Ok(self.braid_class(&g.word)?.iter().filter_map(|u| u.last().copied()).collect())
    }

    /// Generators `s` with `ℓ(s·g) < ℓ(g)`.
    pub fn left_descents(&self, g: &CoxeterElement) -> Result<VertexSet> {
        Ok(self.braid_class(&g.word)?.iter().filter_map(|u| u.first().copied()).collect())
    }

    pub fn descents(&self, g: &CoxeterElement, side: Side) -> Result<VertexSet> {
        match side {
            Side::Left => self.left_descents(g),
            Side::Right => self.right_descents(g),
        }
    }

    pub fn in_standard_parabolic(&self, g: &CoxeterElement, x: VertexSet) -> bool {
        g.support().is_subset(x)
    }

    /// Minimal element of `g·W_X` (right) or `W_X·g` (left), by greedy descent.
    pub fn min_coset_rep(&self, g: &CoxeterElement, x: VertexSet, side: Side) -> Result<CoxeterElement> {
        let mut cur = g.clone();
        loop {
            let d = self.descents(&cur, side)?.intersection(x);
            let Some(s) = d.iter().next() else {
                return Ok(cur);
            };
            let s = self.generator(s);
            cur = match side {
                Side::Right => self.multiply(&cur, &s)?,
                Side::Left => self.multiply(&s, &cur)?,
            };
        }
    }

    /// The minimum `g0` of `W_X·g·W_Y` with `g = h1·g0·h2` and `ℓ(g) = ℓ(h1)+ℓ(g0)+ℓ(h2)`.
    pub fn min_double_coset(&self, g: &CoxeterElement, x: VertexSet, y: VertexSet) -> Result<DoubleCosetDecomposition> {
        let mut g0 = g.clone();
        // stripped letters: g = left_letters · g0 · right_letters (right_letters reversed)
        let mut left_letters = Vec::new();
        let mut right_letters = Vec::new();
        loop {
            if let Some(s) = self.left_descents(&g0)?.intersection(x).iter().next() {
                g0 = self.multiply(&self.generator(s), &g0)?;
                left_letters.push(s);
                continue;
            }
            if let Some(t) = self.right_descents(&g0)?.intersection(y).iter().next() {
                g0 = self.multiply(&g0, &self.generator(t))?;
                right_letters.push(t);
                continue;
            }
            break;
        }
        right_letters.reverse();
        Ok(DoubleCosetDecomposition {
            g0,
            h1: self.reduce(&left_letters)?,
            h2: self.reduce(&right_letters)?,
        })
    }

    /// Elements of length at most `radius` (or all elements when `radius` is `None`).
    ///
    /// Fails with `CapExceeded` once more than `caps.enumeration` elements would be
    /// produced; with `radius = None` that is how an infinite group shows up.
    pub fn cayley_ball(&self, radius: Option<usize>) -> Result<CayleyBall> {
        let cap = self.caps.enumeration;
        let mut elements = vec![CoxeterElement::identity()];
        let mut sphere_sizes = vec![1];
        let mut layer = vec![CoxeterElement::identity()];
        let mut exhausted = false;
        while radius.is_none_or(|r| sphere_sizes.len() <= r) {
            let mut next: Vec<CoxeterElement> = Vec::new();
            let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
            for g in &layer {
                let class = self.braid_class(&g.word)?;
                let descents: VertexSet = class.iter().filter_map(|u| u.last().copied()).collect();
                for s in self.graph.vertices().filter(|&s| !descents.contains(s)) {
                    let mut gs = g.word.clone();
                    gs.push(s);
                    let h = self.canonicalize(&gs)?;
                    if seen.insert(h.word.clone()) {
                        next.push(h);
                    }
                }
            }
            if next.is_empty() {
                exhausted = true;
                break;
            }
            if elements.len() + next.len() > cap {
                return Err(Error::CapExceeded { what: "Cayley ball", cap });
            }
            next.sort();
            sphere_sizes.push(next.len());
            elements.extend(next.iter().cloned());
            layer = next;
        }
        Ok(CayleyBall {
            elements,
            sphere_sizes,
            exhausted,
        })
    }

    /// All of `W_Γ`, or `CapExceeded` when it is infinite or too large.
    ///
    /// A non-edge spans an infinite dihedral subgroup, so such graphs fail
    /// without running the enumeration.
    pub fn enumerate(&self) -> Result<Vec<CoxeterElement>> {
        if !self.graph.is_free_of_infinity(self.graph.all()) {
            return Err(Error::CapExceeded {
                what: "Cayley ball",
                cap: self.caps.enumeration,
            });
        }
        Ok(self.cayley_ball(None)?.elements)
    }
}

impl fmt::Display for Coxeter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{}", self.graph.coxeter_presentation())
    }
}

pub fn format_word(graph: &LabeledGraph, word: &[Vertex]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter().map(|&v| graph.name(v)).collect::<Vec<_>>().join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dihedral(m: u32) -> Coxeter {
        Coxeter::new(LabeledGraph::dihedral(m))
    }

    fn el(c: &Coxeter, s: &str) -> CoxeterElement {
        c.reduce(&c.parse_word(s).unwrap()).unwrap()
    }

    #[test]
    fn involutions_cancel() {
        let c = dihedral(3);
        assert!(el(&c, "v v").is_identity());
        assert_eq!(c.invert(&el(&c, "v")).unwrap(), el(&c, "v"));
    }

    #[test]
    fn dihedral_three_reductions() {
        let c = dihedral(3);
        assert_eq!(c.format(&el(&c, "v w v w")), "w v");
        let g = el(&c, "v w v");
        assert_eq!(c.format(&g), "v w v");
        assert!(c.equal(&c.parse_word("v w v").unwrap(), &c.parse_word("w v w").unwrap()).unwrap());
    }

    #[test]
    fn empty_word_token() {
        let c = dihedral(3);
        assert!(c.parse_word("e").unwrap().is_empty());
        assert!(c.parse_word("").unwrap().is_empty());
        assert_eq!(c.format(&CoxeterElement::identity()), "e");
        assert!(matches!(c.parse_word("v q"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn foreign_letters_are_rejected() {
        let c = dihedral(3);
        assert_eq!(c.reduce(&[Vertex(5)]), Err(Error::GraphMismatch));
    }

    #[test]
    fn support_and_membership() {
        let c = dihedral(3);
        let g = el(&c, "v w v");
        let v = c.graph().parse_subset("v").unwrap();
        assert_eq!(g.support(), c.graph().all());
        assert!(!c.in_standard_parabolic(&g, v));
        assert!(c.in_standard_parabolic(&CoxeterElement::identity(), VertexSet::EMPTY));
    }

    #[test]
    fn coset_minima() {
        let c = dihedral(3);
        let g = el(&c, "v w v");
        let w = c.graph().parse_subset("w").unwrap();
        let r = c.min_coset_rep(&g, w, Side::Right).unwrap();
        assert_eq!(c.format(&r), "w v");
        assert_eq!(c.min_coset_rep(&r, w, Side::Right).unwrap(), r);
        assert_eq!(c.min_coset_rep(&g, VertexSet::EMPTY, Side::Left).unwrap(), g);
        assert!(c.min_coset_rep(&g, c.graph().all(), Side::Left).unwrap().is_identity());
    }

    #[test]
    fn double_coset_trivial_cases() {
        let c = dihedral(4);
        let g = el(&c, "v w v");
        let d = c.min_double_coset(&g, VertexSet::EMPTY, VertexSet::EMPTY).unwrap();
        assert_eq!(d.g0, g);
        assert!(d.h1.is_identity() && d.h2.is_identity());
        let d = c.min_double_coset(&g, c.graph().all(), c.graph().parse_subset("v").unwrap()).unwrap();
        assert!(d.g0.is_identity());
        assert_eq!(c.multiply_all([&d.h1, &d.g0, &d.h2]).unwrap(), g);
    }

    #[test]
    fn dihedral_orders() {
        for m in 2..=6 {
            let ball = dihedral(m).cayley_ball(None).unwrap();
            assert!(ball.exhausted);
            assert_eq!(ball.elements.len(), 2 * m as usize);
            assert_eq!(ball.sphere_sizes.last(), Some(&1));
        }
    }

    #[test]
    fn infinite_group_hits_the_cap() {
        let g = LabeledGraph::parse("vertices: a b c\nedges: a b 2, b c 2").unwrap();
        let c = Coxeter::with_caps(Arc::new(g), Caps { braid: 10_000, enumeration: 500 });
        assert!(c.cayley_ball(None).unwrap_err().is_cap());
        let ball = c.cayley_ball(Some(20)).unwrap();
        assert!(!ball.exhausted);
        assert!(ball.sphere_sizes.windows(2).all(|w| w[1] >= 1));
    }
}
