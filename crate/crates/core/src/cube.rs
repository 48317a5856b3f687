//! The clique-cube complex: vertices are cosets `uW_Δ` for cliques `Δ` (or ∅),
//! and `Δ₁ ⊊ Δ₂` spans a cube of dimension `|Δ₂ ∖ Δ₁|` at each coset `uW_{Δ₁}`.
//!
//! The fundamental domain is exact. Everything with non-trivial
//! representatives lives on the Coxeter shadow, where a ball of radius `r`
//! admits the vertices whose minimal representative has length at most `r`.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use petgraph::algo::maximal_cliques;
use petgraph::graph::UnGraph;
use serde_json::{json, Value};

use crate::artin::{theta, ArtinWord};
use crate::coxeter::{Coxeter, CoxeterElement, Side};
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, VertexSet};
use crate::parabolic::{bounded_closure, contains_element, HandleCatalog, ParabolicHandle};
use crate::tree::min_reps;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeVertex {
    pub rep: CoxeterElement,
    pub clique: VertexSet,
}

/// The cube spanned by `bottom ⊆ … ⊆ (rep of bottom)·W_top`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    pub bottom: usize,
    pub top: VertexSet,
}

#[derive(Debug, Clone)]
pub struct CubeComplexBall {
    engine: Coxeter,
    /// `None` for the fundamental domain.
    pub radius: Option<usize>,
    pub vertices: Vec<CubeVertex>,
    pub cubes: Vec<Cube>,
    cliques: Vec<VertexSet>,
    index: HashMap<CubeVertex, usize>,
    cube_index: HashMap<Cube, usize>,
}

/// Every clique of the graph and every inclusion between them, at the identity coset.
pub fn fundamental_domain(graph: &LabeledGraph) -> CubeComplexBall {
    let engine = Coxeter::new(graph.clone());
    let cliques = graph.enumerate_cliques();
    let vertices = cliques
        .iter()
        .map(|&clique| CubeVertex {
            rep: CoxeterElement::identity(),
            clique,
        })
        .collect();
    CubeComplexBall::assemble(engine, None, vertices, cliques).expect("identity cosets need no reduction")
}

/// Vertices `(u, Δ)` with `u` minimal in `uW_Δ` and `ℓ(u) ≤ radius`.
pub fn shadow_ball(engine: &Coxeter, radius: usize) -> Result<CubeComplexBall> {
    let cliques = engine.graph().enumerate_cliques();
    let mut vertices = Vec::new();
    for u in engine.cayley_ball(Some(radius))?.elements {
        let descents = engine.right_descents(&u)?;
        for &clique in &cliques {
            if descents.intersection(clique).is_empty() {
                vertices.push(CubeVertex { rep: u.clone(), clique });
            }
        }
    }
    vertices.sort_by(|a, b| a.clique.cmp(&b.clique).then_with(|| a.rep.cmp(&b.rep)));
    CubeComplexBall::assemble(engine.clone(), Some(radius), vertices, cliques)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeFixedSet {
    pub vertices: Vec<usize>,
    pub cubes: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagLinkReport {
    /// Vertices whose link was examined.
    pub checked: usize,
    /// Vertices skipped because part of their link lies outside the ball.
    pub partial: usize,
    /// `(vertex, link vertices)` spanning a clique but no simplex.
    pub violations: Vec<(usize, Vec<usize>)>,
}

impl FlagLinkReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticProbe {
    pub fixed_counts: Vec<usize>,
    pub common_fixed_vertex: Option<usize>,
}

impl CubeComplexBall {
    fn assemble(engine: Coxeter, radius: Option<usize>, vertices: Vec<CubeVertex>, cliques: Vec<VertexSet>) -> Result<Self> {
        let index: HashMap<CubeVertex, usize> = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut ball = CubeComplexBall {
            engine,
            radius,
            vertices,
            cubes: Vec::new(),
            cliques,
            index,
            cube_index: HashMap::new(),
        };
        let mut cubes = Vec::new();
        for bottom in 0..ball.vertices.len() {
            let low = ball.vertices[bottom].clique;
            for &top in &ball.cliques {
                if top != low && low.is_subset(top) {
                    let cube = Cube { bottom, top };
                    if ball.cube_vertices(&cube)?.iter().all(Option::is_some) {
                        cubes.push(cube);
                    }
                }
            }
        }
        cubes.sort_by_key(|c| (c.dimension(&ball.vertices), c.bottom, c.top));
        ball.cube_index = cubes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        ball.cubes = cubes;
        Ok(ball)
    }

    pub fn engine(&self) -> &Coxeter {
        &self.engine
    }

    pub fn graph(&self) -> &LabeledGraph {
        self.engine.graph()
    }

    pub fn is_shadow(&self) -> bool {
        self.radius.is_some()
    }

    pub fn vertex_index(&self, v: &CubeVertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn find(&self, rep: &CoxeterElement, clique: VertexSet) -> Option<usize> {
        self.vertex_index(&CubeVertex { rep: rep.clone(), clique })
    }

    /// The canonical vertex of `u·W_Δ`.
    pub fn coset_vertex(&self, u: &CoxeterElement, clique: VertexSet) -> Result<CubeVertex> {
        Ok(CubeVertex {
            rep: self.engine.min_coset_rep(u, clique, Side::Right)?,
            clique,
        })
    }

    /// Vertices of the cube in the order of the subsets of `top ∖ bottom`,
    /// `None` for those outside the ball.
    pub fn cube_vertices(&self, cube: &Cube) -> Result<Vec<Option<usize>>> {
        let bottom = &self.vertices[cube.bottom];
        let gap = cube.top.difference(bottom.clique);
        let mut subs: Vec<VertexSet> = gap.subsets().collect();
        subs.sort();
        subs.into_iter()
            .map(|s| Ok(self.vertex_index(&self.coset_vertex(&bottom.rep, bottom.clique.union(s))?)))
            .collect()
    }

    /// Vertices, then cubes of each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.cliques.iter().map(|c| c.len()).max().unwrap_or(0);
        let mut f = vec![0; top + 1];
        f[0] = self.vertices.len();
        for c in &self.cubes {
            f[c.dimension(&self.vertices)] += 1;
        }
        f
    }

    pub fn dimension(&self) -> usize {
        self.cubes.iter().map(|c| c.dimension(&self.vertices)).max().unwrap_or(0)
    }

    /// Cubes missing one of their `2n` codimension-one faces.
    pub fn face_violations(&self) -> Result<Vec<usize>> {
        let mut bad = Vec::new();
        for (i, c) in self.cubes.iter().enumerate() {
            let bottom = &self.vertices[c.bottom];
            let gap = c.top.difference(bottom.clique);
            let mut ok = true;
            for v in gap.iter() {
                let lower = Cube { bottom: c.bottom, top: c.top.without(v) };
                let raised = self.coset_vertex(&bottom.rep, bottom.clique.with(v))?;
                let upper = self.vertex_index(&raised).map(|b| Cube { bottom: b, top: c.top });
                ok &= self.face_present(&lower) && upper.is_some_and(|u| self.face_present(&u));
            }
            if !ok {
                bad.push(i);
            }
        }
        Ok(bad)
    }

    fn face_present(&self, c: &Cube) -> bool {
        c.top == self.vertices[c.bottom].clique || self.cube_index.contains_key(c)
    }

    pub fn stabilizer(&self, v: usize) -> Result<ParabolicHandle> {
        let CubeVertex { rep, clique } = &self.vertices[v];
        ParabolicHandle::new(&self.engine, rep, *clique)
    }

    pub fn fixes(&self, w: &CoxeterElement, v: usize) -> Result<bool> {
        contains_element(&self.engine, &self.stabilizer(v)?, w)
    }

    /// Vertices with `w·uW_Δ = uW_Δ`, and cubes all of whose vertices are fixed.
    pub fn fixed_set(&self, w: &CoxeterElement) -> Result<CubeFixedSet> {
        let mut fixed = vec![false; self.vertices.len()];
        for (v, f) in fixed.iter_mut().enumerate() {
            *f = self.fixes(w, v)?;
        }
        self.fixed_from_mask(&fixed)
    }

    /// Vertices fixed by every element of `b`.
    pub fn fixed_by_all(&self, b: &[CoxeterElement]) -> Result<CubeFixedSet> {
        let mut fixed = vec![true; self.vertices.len()];
        for (v, f) in fixed.iter_mut().enumerate() {
            for w in b {
                if !self.fixes(w, v)? {
                    *f = false;
                    break;
                }
            }
        }
        self.fixed_from_mask(&fixed)
    }

    fn fixed_from_mask(&self, fixed: &[bool]) -> Result<CubeFixedSet> {
        let mut cubes = Vec::new();
        for (i, c) in self.cubes.iter().enumerate() {
            if self.cube_vertices(c)?.iter().all(|v| v.is_some_and(|v| fixed[v])) {
                cubes.push(i);
            }
        }
        Ok(CubeFixedSet {
            vertices: (0..fixed.len()).filter(|&v| fixed[v]).collect(),
            cubes,
        })
    }

    /// Exact-or-unknown fixed check of an Artin element on the identity cosets
    /// `1·A_Δ`: fixed when the free reduction only uses letters of `Δ`, not fixed
    /// when its image in `W_Γ` leaves `W_Δ`, unknown otherwise.
    pub fn artin_fixes_domain(&self, word: &ArtinWord) -> Result<Vec<(usize, Option<bool>)>> {
        let reduced = word.free_reduce();
        let letters: VertexSet = reduced.letters().into_iter().collect();
        let image = theta(&self.engine, &reduced)?;
        Ok(self
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| v.rep.is_identity())
            .map(|(i, v)| {
                let verdict = if letters.is_subset(v.clique) {
                    Some(true)
                } else if !self.engine.in_standard_parabolic(&image, v.clique) {
                    Some(false)
                } else {
                    None
                };
                (i, verdict)
            })
            .collect())
    }

    /// Number of cubes containing `v` in the whole complex, if every one of
    /// them is admitted by a shadow ball of this radius. A cube through
    /// `uW_Δ` has bottom `urW_{Δ₁}` with `r` minimal in `W_Δ/W_{Δ₁}`, so it is
    /// admitted exactly when `ℓ(u) + ℓ(r)` is within the radius.
    fn full_star(&self, v: usize) -> Result<Option<usize>> {
        let CubeVertex { rep, clique } = &self.vertices[v];
        let radius = self.radius.expect("shadow balls have a radius");
        let spare = radius.saturating_sub(rep.len());
        let tops = self.cliques.iter().filter(|&&top| clique.is_subset(top)).count();
        let mut total = 0;
        for low in clique.subsets() {
            let (reps, cut) = min_reps(&self.engine, *clique, low, Some(spare))?;
            if cut {
                return Ok(None);
            }
            let spans = if low == *clique { tops - 1 } else { tops };
            total += reps.len() * spans;
        }
        Ok(Some(total))
    }

    /// Cubes containing each vertex.
    fn incidence(&self) -> Result<Vec<Vec<usize>>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (i, c) in self.cubes.iter().enumerate() {
            for v in self.cube_vertices(c)?.into_iter().flatten() {
                out[v].push(i);
            }
        }
        Ok(out)
    }

    /// Flag condition on the link of every vertex whose link in the complex
    /// lies inside the ball. On the fundamental domain, links are taken in the
    /// domain itself and every vertex is checked.
    pub fn flag_link_check(&self) -> Result<FlagLinkReport> {
        let incidence = self.incidence()?;
        let mut report = FlagLinkReport {
            checked: 0,
            partial: 0,
            violations: Vec::new(),
        };
        for (v, star) in incidence.iter().enumerate() {
            let edges: Vec<usize> = star
                .iter()
                .copied()
                .filter(|&c| self.cubes[c].dimension(&self.vertices) == 1)
                .collect();
            let expected = if self.is_shadow() { self.full_star(v)? } else { Some(star.len()) };
            if expected != Some(star.len()) {
                report.partial += 1;
                continue;
            }
            report.checked += 1;
            let position: HashMap<usize, usize> = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
            let mut simplices: Vec<BTreeSet<usize>> = Vec::new();
            for &c in star {
                let corner = self.edges_through(c, v)?;
                simplices.push(corner.iter().map(|e| position[e]).collect());
            }
            let mut link = UnGraph::<(), ()>::new_undirected();
            let nodes: Vec<_> = (0..edges.len()).map(|_| link.add_node(())).collect();
            for s in &simplices {
                let items: Vec<usize> = s.iter().copied().collect();
                for (k, &a) in items.iter().enumerate() {
                    for &b in &items[k + 1..] {
                        if link.find_edge(nodes[a], nodes[b]).is_none() {
                            link.add_edge(nodes[a], nodes[b], ());
                        }
                    }
                }
            }
            for clique in maximal_cliques(&link) {
                let members: BTreeSet<usize> = clique.iter().map(|n| n.index()).collect();
                if !simplices.iter().any(|s| members.is_subset(s)) {
                    report.violations.push((v, members.into_iter().collect()));
                }
            }
        }
        report.violations.sort();
        Ok(report)
    }

    /// The edges of cube `c` that contain its vertex `v`.
    fn edges_through(&self, c: usize, v: usize) -> Result<Vec<usize>> {
        let cube = self.cubes[c];
        let base = &self.vertices[cube.bottom];
        let here = &self.vertices[v];
        let mut out = Vec::new();
        for s in here.clique.difference(base.clique).iter() {
            let below = self.coset_vertex(&base.rep, here.clique.without(s))?;
            let b = self.vertex_index(&below).expect("faces of admitted cubes are admitted");
            out.push(self.cube_index[&Cube { bottom: b, top: here.clique }]);
        }
        for s in cube.top.difference(here.clique).iter() {
            out.push(self.cube_index[&Cube { bottom: v, top: here.clique.with(s) }]);
        }
        Ok(out)
    }

    pub fn locally_elliptic_probe(&self, elements: &[CoxeterElement]) -> Result<EllipticProbe> {
        let mut fixed_counts = Vec::new();
        for w in elements {
            fixed_counts.push(self.fixed_set(w)?.vertices.len());
        }
        let common = self.fixed_by_all(elements)?.vertices.first().copied();
        Ok(EllipticProbe {
            fixed_counts,
            common_fixed_vertex: common,
        })
    }

    /// Compares the vertices fixed by `b` with those fixed by the generators of `closure`.
    pub fn closure_fix_identity(&self, b: &[CoxeterElement], closure: &ParabolicHandle) -> Result<bool> {
        let gens = closure.generators(&self.engine)?;
        Ok(self.fixed_by_all(b)?.vertices == self.fixed_by_all(&gens)?.vertices)
    }

    /// As [`closure_fix_identity`](Self::closure_fix_identity), computing the
    /// closure exactly on a finite group and by certified bounded search otherwise.
    pub fn closure_fix_identity_check(&self, b: &[CoxeterElement]) -> Result<bool> {
        let closure = match HandleCatalog::for_engine(&self.engine) {
            Ok(catalog) => catalog.parabolic_closure(b)?.result,
            Err(e) if e.is_cap() => {
                let bounded = bounded_closure(&self.engine, b, self.radius.unwrap_or(0))?;
                if !bounded.certified {
                    return Err(Error::Invalid("parabolic closure could not be certified".into()));
                }
                bounded.handle
            }
            Err(e) => return Err(e),
        };
        self.closure_fix_identity(b, &closure)
    }

    pub fn vertex_label(&self, v: usize) -> String {
        let CubeVertex { rep, clique } = &self.vertices[v];
        format!("{} W{}", self.engine.format(rep), self.graph().format_subset(*clique))
    }

    pub fn to_json(&self) -> Value {
        let g = self.graph();
        json!({
            "radius": self.radius,
            "f_vector": self.f_vector(),
            "vertices": self.vertices.iter().map(|v| json!({
                "rep": self.engine.format(&v.rep),
                "clique": g.subset_names(v.clique),
            })).collect::<Vec<_>>(),
            "cubes": self.cubes.iter().map(|c| json!({
                "bottom": c.bottom,
                "top": g.subset_names(c.top),
            })).collect::<Vec<_>>(),
        })
    }

    /// 1-skeleton; vertices in `highlight` are filled.
    pub fn to_dot(&self, highlight: &[usize]) -> String {
        let mut out = String::from("graph cubes {\n");
        for v in 0..self.vertices.len() {
            let style = if highlight.contains(&v) { ", style=filled, fillcolor=orange" } else { "" };
            let _ = writeln!(out, "  n{v} [label=\"{}\"{style}];", self.vertex_label(v));
        }
        for c in &self.cubes {
            if c.dimension(&self.vertices) == 1 {
                let bottom = &self.vertices[c.bottom];
                let top = self.coset_vertex(&bottom.rep, c.top).ok().and_then(|t| self.vertex_index(&t));
                if let Some(t) = top {
                    let _ = writeln!(out, "  n{} -- n{t};", c.bottom);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

impl Cube {
    pub fn dimension(&self, vertices: &[CubeVertex]) -> usize {
        self.top.len() - vertices[self.bottom].clique.len()
    }
}

/// Fixed-vertex counts of `w` in shadow balls of the given radii.
pub fn fixed_growth(engine: &Coxeter, w: &CoxeterElement, radii: &[usize]) -> Result<Vec<usize>> {
    radii
        .iter()
        .map(|&r| Ok(shadow_ball(engine, r)?.fixed_set(w)?.vertices.len()))
        .collect()
}
