//! Parabolic subgroups `gW_Xg⁻¹` of `W_Γ`.
//!
//! Membership and inclusion are decided on any `W_Γ` through the support
//! criterion: `w ∈ gW_Xg⁻¹` iff the canonical word of `g⁻¹wg` only uses letters
//! of `X`. Intersections, closures and the property scans need the whole group
//! and go through a [`HandleCatalog`] over a [`FiniteCoxeterGroup`].

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::coxeter::{Coxeter, CoxeterElement, Side};
use crate::error::{Error, Result};
use crate::finite::{ElementSet, FiniteCoxeterGroup};
use crate::graph::{LabeledGraph, VertexSet};

/// `conjugator · W_base · conjugator⁻¹`, with the conjugator reduced to the
/// minimal element of its coset `conjugator·W_base` (the identity for an empty base).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicHandle {
    base: VertexSet,
    conjugator: CoxeterElement,
}

impl ParabolicHandle {
    pub fn new(engine: &Coxeter, conjugator: &CoxeterElement, base: VertexSet) -> Result<Self> {
        if base.is_empty() {
            return Ok(Self::trivial());
        }
        Ok(ParabolicHandle {
            conjugator: engine.min_coset_rep(conjugator, base, Side::Right)?,
            base,
        })
    }

    pub fn standard(base: VertexSet) -> Self {
        ParabolicHandle {
            base,
            conjugator: CoxeterElement::identity(),
        }
    }

    pub fn trivial() -> Self {
        Self::standard(VertexSet::EMPTY)
    }

    pub fn conjugator(&self) -> &CoxeterElement {
        &self.conjugator
    }

    pub fn base(&self) -> VertexSet {
        self.base
    }

    pub fn rank(&self) -> usize {
        self.base.len()
    }

    /// Complete in the sense of the graph: the base is free of infinity.
    pub fn is_complete(&self, graph: &LabeledGraph) -> bool {
        graph.is_free_of_infinity(self.base)
    }

    /// `g·s·g⁻¹` for `s` in the base: a generating set of the subgroup.
    pub fn generators(&self, engine: &Coxeter) -> Result<Vec<CoxeterElement>> {
        self.base
            .iter()
            .map(|s| engine.conjugate(&self.conjugator, &engine.generator(s)))
            .collect()
    }

    pub fn display<'a>(&'a self, engine: &'a Coxeter) -> impl fmt::Display + 'a {
        DisplayHandle { handle: self, engine }
    }
}

struct DisplayHandle<'a> {
    handle: &'a ParabolicHandle,
    engine: &'a Coxeter,
}

impl fmt::Display for DisplayHandle<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = self.engine.graph().format_subset(self.handle.base);
        if self.handle.conjugator.is_identity() {
            write!(f, "W{base}")
        } else {
            write!(f, "({}) W{base} ({})^-1", self.engine.format(&self.handle.conjugator), self.engine.format(&self.handle.conjugator))
        }
    }
}

/// `w ∈ gW_Xg⁻¹` iff `support(g⁻¹wg) ⊆ X`.
pub fn contains_element(engine: &Coxeter, p: &ParabolicHandle, w: &CoxeterElement) -> Result<bool> {
    let gi = engine.invert(&p.conjugator)?;
    let x = engine.conjugate(&gi, w)?;
    Ok(engine.in_standard_parabolic(&x, p.base))
}

/// `P1 ⊆ P2` iff every generator `g₁sg₁⁻¹` of `P1` lies in `P2`.
pub fn subset(engine: &Coxeter, p1: &ParabolicHandle, p2: &ParabolicHandle) -> Result<bool> {
    for g in p1.generators(engine)? {
        if !contains_element(engine, p2, &g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn same_subgroup(engine: &Coxeter, p1: &ParabolicHandle, p2: &ParabolicHandle) -> Result<bool> {
    Ok(subset(engine, p1, p2)? && subset(engine, p2, p1)?)
}

/// An intersection that no handle represents. Never observed on spherical groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotParabolicWitness {
    pub elements: Vec<CoxeterElement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    Parabolic(ParabolicHandle),
    NotParabolic(NotParabolicWitness),
}

/// Chain `P₁ ⊋ P₁∩P₂ ⊋ …` recorded at its proper steps only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureTrace {
    pub chain: Vec<ParabolicHandle>,
    pub result: ParabolicHandle,
}

/// Every parabolic subgroup of a finite `W_Γ`, with its element set.
///
/// Handles are listed by conjugator in ShortLex order, then by base; each
/// distinct subgroup is represented by the first handle that produces it, so
/// standard parabolic subgroups keep their standard handle.
#[derive(Debug, Clone)]
pub struct HandleCatalog {
    group: FiniteCoxeterGroup,
    handles: Vec<ParabolicHandle>,
    sets: Vec<ElementSet>,
    by_set: HashMap<ElementSet, usize>,
}

impl HandleCatalog {
    pub fn new(group: FiniteCoxeterGroup) -> Result<Self> {
        let engine = group.engine().clone();
        let mut bases: Vec<VertexSet> = engine.graph().all().subsets().collect();
        bases.sort();
        let mut pairs = Vec::new();
        for x in bases {
            for g in group.elements() {
                let minimal = engine.right_descents(g)?.intersection(x).is_empty();
                if minimal && !(x.is_empty() && !g.is_identity()) {
                    pairs.push((g.clone(), x));
                }
            }
        }
        pairs.sort();
        let mut handles = Vec::new();
        let mut sets = Vec::new();
        let mut by_set = HashMap::new();
        for (g, x) in pairs {
            let set = group.conjugate_set(group.index_of(&g), &group.standard_parabolic(x));
            by_set.entry(set.clone()).or_insert(handles.len());
            handles.push(ParabolicHandle::new(&engine, &g, x)?);
            sets.push(set);
        }
        Ok(HandleCatalog {
            group,
            handles,
            sets,
            by_set,
        })
    }

    pub fn for_engine(engine: &Coxeter) -> Result<Self> {
        Self::new(FiniteCoxeterGroup::new(engine)?)
    }

    pub fn group(&self) -> &FiniteCoxeterGroup {
        &self.group
    }

    pub fn engine(&self) -> &Coxeter {
        self.group.engine()
    }

    /// All normalized handles (possibly several per subgroup).
    pub fn handles(&self) -> &[ParabolicHandle] {
        &self.handles
    }

    /// One handle per distinct subgroup, in catalog order.
    pub fn distinct(&self) -> impl Iterator<Item = (usize, &ParabolicHandle)> {
        self.handles
            .iter()
            .enumerate()
            .filter(|(i, _)| self.by_set[&self.sets[*i]] == *i)
    }

    pub fn set(&self, i: usize) -> &ElementSet {
        &self.sets[i]
    }

    fn position(&self, p: &ParabolicHandle) -> Result<usize> {
        let q = ParabolicHandle::new(self.engine(), &p.conjugator, p.base)?;
        self.handles
            .iter()
            .position(|h| *h == q)
            .ok_or_else(|| Error::Invalid("handle does not belong to this group".into()))
    }

    pub fn element_set(&self, p: &ParabolicHandle) -> Result<&ElementSet> {
        Ok(&self.sets[self.position(p)?])
    }

    /// Canonical handle for an element set, if the set is a parabolic subgroup.
    pub fn lookup(&self, set: &ElementSet) -> Option<&ParabolicHandle> {
        self.by_set.get(set).map(|&i| &self.handles[i])
    }

    pub fn intersect(&self, p1: &ParabolicHandle, p2: &ParabolicHandle) -> Result<Intersection> {
        let mut set = self.element_set(p1)?.clone();
        set.intersect_with(self.element_set(p2)?);
        Ok(self.classify(&set))
    }

    fn classify(&self, set: &ElementSet) -> Intersection {
        match self.lookup(set) {
            Some(h) => Intersection::Parabolic(h.clone()),
            None => Intersection::NotParabolic(NotParabolicWitness {
                elements: set.ones().map(|i| self.group.element(i).clone()).collect(),
            }),
        }
    }

    /// Intersects, in catalog order from the largest base down, every handle
    /// containing `b`, keeping the proper steps of the resulting chain.
    pub fn parabolic_closure(&self, b: &[CoxeterElement]) -> Result<ClosureTrace> {
        let members: Vec<usize> = b.iter().map(|g| self.group.index_of(g)).collect();
        let mut containing: Vec<usize> = (0..self.handles.len())
            .filter(|&i| members.iter().all(|&m| self.sets[i].contains(m)))
            .collect();
        containing.sort_by(|&a, &c| self.handles[c].base.cmp(&self.handles[a].base).then(a.cmp(&c)));
        let first = *containing
            .first()
            .ok_or_else(|| Error::Invalid("no parabolic subgroup contains B".into()))?;
        let mut current = self.sets[first].clone();
        let mut chain = vec![self.handles[self.by_set[&current]].clone()];
        for &i in &containing[1..] {
            let mut next = current.clone();
            next.intersect_with(&self.sets[i]);
            if next == current {
                continue;
            }
            match self.classify(&next) {
                Intersection::Parabolic(h) => chain.push(h),
                Intersection::NotParabolic(_) => {
                    return Err(Error::Invalid("intersection of parabolic subgroups is not parabolic".into()))
                }
            }
            current = next;
        }
        let result = chain.last().expect("chain starts non-empty").clone();
        Ok(ClosureTrace { chain, result })
    }

    pub fn closure_monotone_check(&self, b1: &[CoxeterElement], b2: &[CoxeterElement]) -> Result<bool> {
        let p1 = self.parabolic_closure(b1)?.result;
        let p2 = self.parabolic_closure(b2)?.result;
        subset(self.engine(), &p1, &p2)
    }

    /// Scans all nested pairs `P1 ⊆ P2` for `|base(P1)| > |base(P2)|`, or equal
    /// ranks with `P1 ≠ P2`.
    pub fn verify_cardinality_lemma(&self) -> CardinalityReport {
        let distinct: Vec<usize> = self.distinct().map(|(i, _)| i).collect();
        let mut nested = 0;
        let mut counterexamples = Vec::new();
        for &i in &distinct {
            for &j in &distinct {
                if !self.sets[i].is_subset(&self.sets[j]) {
                    continue;
                }
                nested += 1;
                let (ri, rj) = (self.handles[i].rank(), self.handles[j].rank());
                if ri > rj || (ri == rj && self.sets[i] != self.sets[j]) {
                    counterexamples.push((self.handles[i].clone(), self.handles[j].clone()));
                }
            }
        }
        CardinalityReport {
            pairs_checked: distinct.len() * distinct.len(),
            nested_pairs: nested,
            counterexamples,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CardinalityReport {
    pub pairs_checked: usize,
    pub nested_pairs: usize,
    pub counterexamples: Vec<(ParabolicHandle, ParabolicHandle)>,
}

/// Minimal handle containing `b` among conjugators of length at most
/// `conjugator_radius`; usable on infinite `W_Γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedClosure {
    pub handle: ParabolicHandle,
    /// True when the rank meets the trivial lower bound (0 for `B ⊆ {1}`, else 1),
    /// which makes the handle the closure regardless of the search bound.
    pub certified: bool,
}

pub fn bounded_closure(engine: &Coxeter, b: &[CoxeterElement], conjugator_radius: usize) -> Result<BoundedClosure> {
    let lower = if b.iter().all(CoxeterElement::is_identity) { 0 } else { 1 };
    let conjugators = engine.cayley_ball(Some(conjugator_radius))?.elements;
    let mut bases: Vec<VertexSet> = engine.graph().all().subsets().collect();
    bases.sort();
    for x in bases {
        for g in &conjugators {
            let p = ParabolicHandle::new(engine, g, x)?;
            let mut all = true;
            for w in b {
                if !contains_element(engine, &p, w)? {
                    all = false;
                    break;
                }
            }
            if all {
                return Ok(BoundedClosure {
                    certified: p.rank() <= lower,
                    handle: p,
                });
            }
        }
    }
    unreachable!("W_V contains every element")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Property {
    #[serde(rename = "Int")]
    Int,
    #[serde(rename = "Int+")]
    IntPlus,
    #[serde(rename = "Int+-")]
    IntPlusMinus,
    #[serde(rename = "Int++")]
    IntPlusPlus,
}

impl Property {
    pub const ALL: [Property; 4] = [Property::Int, Property::IntPlus, Property::IntPlusMinus, Property::IntPlusPlus];

    pub fn name(self) -> &'static str {
        match self {
            Property::Int => "Int",
            Property::IntPlus => "Int+",
            Property::IntPlusMinus => "Int+-",
            Property::IntPlusPlus => "Int++",
        }
    }
}

impl std::str::FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "int" => Ok(Property::Int),
            "int+" => Ok(Property::IntPlus),
            "int+-" | "int+−" => Ok(Property::IntPlusMinus),
            "int++" => Ok(Property::IntPlusPlus),
            _ => Err(Error::Invalid(format!("unknown property `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Pass,
        }
    }
}

/// Result of a Coxeter-shadow property scan; `level` is always `coxeter-shadow`.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub level: &'static str,
    pub graph_hash: String,
    pub pairs_checked: usize,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<PropertyCounterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyCounterexample {
    pub p1: String,
    pub p2: String,
    pub intersection: Vec<String>,
}

/// Brute-force check of one intersection property on the Coxeter shadow.
///
/// `Int` quantifies over each free-of-infinity `Y` separately and only needs
/// each `W_Y` to be finite; the other three need all of `W_Γ`.
pub fn check_property(engine: &Coxeter, property: Property) -> Result<PropertyReport> {
    let graph = engine.graph();
    let mut pairs_checked = 0;
    let mut counterexample = None;
    let mut scan = |catalog: &HandleCatalog, first_complete: bool, second_complete: bool| -> Result<()> {
        let g = catalog.engine().graph();
        let pick = |complete: bool| -> Vec<usize> {
            catalog
                .distinct()
                .filter(|(_, h)| !complete || h.is_complete(g))
                .map(|(i, _)| i)
                .collect()
        };
        let (firsts, seconds) = (pick(first_complete), pick(second_complete));
        for &i in &firsts {
            for &j in &seconds {
                pairs_checked += 1;
                if counterexample.is_some() {
                    continue;
                }
                let mut set = catalog.set(i).clone();
                set.intersect_with(catalog.set(j));
                if let Intersection::NotParabolic(w) = catalog.classify(&set) {
                    let e = catalog.engine();
                    counterexample = Some(PropertyCounterexample {
                        p1: catalog.handles[i].display(e).to_string(),
                        p2: catalog.handles[j].display(e).to_string(),
                        intersection: w.elements.iter().map(|x| e.format(x)).collect(),
                    });
                }
            }
        }
        Ok(())
    };
    match property {
        Property::Int => {
            for y in graph.enumerate_cliques() {
                let sub = engine.restricted(y);
                scan(&HandleCatalog::for_engine(&sub)?, false, false)?;
            }
        }
        Property::IntPlus => scan(&HandleCatalog::for_engine(engine)?, true, true)?,
        Property::IntPlusMinus => scan(&HandleCatalog::for_engine(engine)?, true, false)?,
        Property::IntPlusPlus => scan(&HandleCatalog::for_engine(engine)?, false, false)?,
    }
    Ok(PropertyReport {
        property,
        level: "coxeter-shadow",
        graph_hash: graph.fingerprint(),
        pairs_checked,
        verdict: if counterexample.is_some() { Verdict::Fail } else { Verdict::Pass },
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(c: &Coxeter, s: &str) -> CoxeterElement {
        c.reduce(&c.parse_word(s).unwrap()).unwrap()
    }

    #[test]
    fn membership_in_conjugate() {
        let c = Coxeter::new(LabeledGraph::dihedral(3));
        let g = c.graph();
        let p = ParabolicHandle::new(&c, &el(&c, "v"), g.parse_subset("w").unwrap()).unwrap();
        // vwv is the only non-trivial element of v W_{w} v
        let members: Vec<String> = c
            .enumerate()
            .unwrap()
            .iter()
            .filter(|x| contains_element(&c, &p, x).unwrap())
            .map(|x| c.format(x))
            .collect();
        assert_eq!(members, ["e", "v w v"]);
        let full = ParabolicHandle::standard(g.all());
        assert!(contains_element(&c, &full, &el(&c, "w v w")).unwrap());
    }

    #[test]
    fn normalization_keeps_the_subgroup() {
        let c = Coxeter::new(LabeledGraph::dihedral(4));
        let cat = HandleCatalog::for_engine(&c).unwrap();
        let x = c.graph().parse_subset("v").unwrap();
        for g in c.enumerate().unwrap() {
            let h = ParabolicHandle::new(&c, &g, x).unwrap();
            let raw = cat.group().conjugate_set(cat.group().index_of(&g), &cat.group().standard_parabolic(x));
            assert_eq!(cat.element_set(&h).unwrap(), &raw);
        }
    }

    #[test]
    fn commuting_involutions_intersect_trivially() {
        let c = Coxeter::new(LabeledGraph::dihedral(2));
        let cat = HandleCatalog::for_engine(&c).unwrap();
        let g = c.graph();
        let p = ParabolicHandle::standard(g.parse_subset("v").unwrap());
        let q = ParabolicHandle::standard(g.parse_subset("w").unwrap());
        assert_eq!(cat.intersect(&p, &q).unwrap(), Intersection::Parabolic(ParabolicHandle::trivial()));
        assert_eq!(cat.intersect(&p, &p).unwrap(), Intersection::Parabolic(p));
    }

    #[test]
    fn closure_of_a_generator() {
        let c = Coxeter::new(LabeledGraph::dihedral(5));
        let cat = HandleCatalog::for_engine(&c).unwrap();
        let v = el(&c, "v");
        let trace = cat.parabolic_closure(std::slice::from_ref(&v)).unwrap();
        assert_eq!(trace.result, ParabolicHandle::standard(c.graph().parse_subset("v").unwrap()));
        assert!(trace.chain.windows(2).all(|w| w[0].rank() > w[1].rank()));
        let trivial = cat.parabolic_closure(&[CoxeterElement::identity()]).unwrap();
        assert_eq!(trivial.result, ParabolicHandle::trivial());
        assert_eq!(cat.parabolic_closure(&[]).unwrap().result, ParabolicHandle::trivial());
    }

    #[test]
    fn infinite_group_closure_by_bounded_search() {
        let g = LabeledGraph::parse("vertices: a b c\nedges: a b 2, b c 2").unwrap();
        let c = Coxeter::new(g);
        let b = el(&c, "b");
        let res = bounded_closure(&c, &[b], 2).unwrap();
        assert!(res.certified);
        assert_eq!(res.handle, ParabolicHandle::standard(c.graph().parse_subset("b").unwrap()));
    }

    #[test]
    fn property_parse() {
        assert_eq!("int++".parse::<Property>().unwrap(), Property::IntPlusPlus);
        assert_eq!("Int+-".parse::<Property>().unwrap(), Property::IntPlusMinus);
        assert!("int+++".parse::<Property>().is_err());
    }
}
