//! Multiplication tables for finite Coxeter groups.
//!
//! Built once from the word engine, these drive every exhaustive scan:
//! element sets are bitsets over the ShortLex-sorted element list.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::coxeter::{Coxeter, CoxeterElement};
use crate::error::Result;
use crate::graph::{Vertex, VertexSet};

pub type ElementSet = FixedBitSet;

#[derive(Debug, Clone)]
pub struct FiniteCoxeterGroup {
    engine: Coxeter,
    elements: Vec<CoxeterElement>,
    index: HashMap<Vec<Vertex>, usize>,
    // right[i][s] = index of elements[i]·s
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteCoxeterGroup {
    /// Enumerates `W_Γ`; `CapExceeded` if it is infinite or larger than the cap.
    pub fn new(engine: &Coxeter) -> Result<Self> {
        let elements = engine.enumerate()?;
        let index: HashMap<Vec<Vertex>, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.word().to_vec(), i))
            .collect();
        let n = engine.graph().len();
        let mut right = vec![vec![0; n]; elements.len()];
        let mut left = vec![vec![0; n]; elements.len()];
        for (i, g) in elements.iter().enumerate() {
            for s in engine.graph().vertices() {
                let gen = engine.generator(s);
                right[i][s.index()] = index[engine.multiply(g, &gen)?.word()];
                left[i][s.index()] = index[engine.multiply(&gen, g)?.word()];
            }
        }
        let inverse = elements
            .iter()
            .map(|g| Ok(index[engine.invert(g)?.word()]))
            .collect::<Result<_>>()?;
        Ok(FiniteCoxeterGroup {
            engine: engine.clone(),
            elements,
            index,
            right,
            left,
            inverse,
        })
    }

    pub fn engine(&self) -> &Coxeter {
        &self.engine
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CoxeterElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &CoxeterElement {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &CoxeterElement) -> usize {
        self.index[g.word()]
    }

    pub fn length(&self, i: usize) -> usize {
        self.elements[i].len()
    }

    pub fn right_mul_gen(&self, i: usize, s: Vertex) -> usize {
        self.right[i][s.index()]
    }

    pub fn left_mul_gen(&self, s: Vertex, i: usize) -> usize {
        self.left[i][s.index()]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.elements[b]
            .word()
            .iter()
            .fold(a, |acc, &s| self.right[acc][s.index()])
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inverse[g])
    }

    pub fn empty_set(&self) -> ElementSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub fn set_of(&self, items: impl IntoIterator<Item = usize>) -> ElementSet {
        let mut s = self.empty_set();
        s.extend(items);
        s
    }

    /// The subgroup generated by `gens`, by closure under right multiplication.
    pub fn generated(&self, gens: &[usize]) -> ElementSet {
        let mut set = self.set_of([0]);
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !set.put(y) {
                    stack.push(y);
                }
            }
        }
        set
    }

    /// `W_X` as an element set, generated from the letters of `X`.
    pub fn standard_parabolic(&self, x: VertexSet) -> ElementSet {
        let gens: Vec<usize> = x
            .iter()
            .map(|s| self.index_of(&self.engine.generator(s)))
            .collect();
        self.generated(&gens)
    }

    pub fn conjugate_set(&self, g: usize, set: &ElementSet) -> ElementSet {
        self.set_of(set.ones().map(|h| self.conj(g, h)))
    }

    pub fn left_translate(&self, g: usize, set: &ElementSet) -> ElementSet {
        self.set_of(set.ones().map(|h| self.mul(g, h)))
    }

    pub fn right_translate(&self, set: &ElementSet, g: usize) -> ElementSet {
        self.set_of(set.ones().map(|h| self.mul(h, g)))
    }
}
