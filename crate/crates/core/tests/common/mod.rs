//! Independent oracle: the geometric representation of `W_Γ` by reflection
//! matrices. Elements are compared through rounded matrix entries, so nothing
//! here relies on words, braid moves or descents.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::f64::consts::PI;

use artk_core::LabeledGraph;

pub type Key = Vec<i64>;

pub fn fixture(name: &str) -> LabeledGraph {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    LabeledGraph::parse(&text).unwrap()
}

#[derive(Clone)]
pub struct Oracle {
    n: usize,
    gens: Vec<Vec<f64>>,
}

impl Oracle {
    pub fn new(graph: &LabeledGraph) -> Self {
        let n = graph.len();
        let vs: Vec<_> = graph.vertices().collect();
        let mut b = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                b[i * n + j] = if i == j {
                    1.0
                } else {
                    match graph.label(vs[i], vs[j]) {
                        Some(m) => -(PI / m as f64).cos(),
                        None => -1.0,
                    }
                };
            }
        }
        // σ_s(e_t) = e_t − 2B(e_s, e_t)e_s, stored row-major with columns as images
        let gens = (0..n)
            .map(|s| {
                let mut m = vec![0.0; n * n];
                for t in 0..n {
                    m[t * n + t] += 1.0;
                    m[s * n + t] -= 2.0 * b[s * n + t];
                }
                m
            })
            .collect();
        Oracle { n, gens }
    }

    pub fn identity(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.n * self.n];
        for i in 0..self.n {
            m[i * self.n + i] = 1.0;
        }
        m
    }

    pub fn mul(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x != 0.0 {
                    for j in 0..n {
                        out[i * n + j] += x * b[k * n + j];
                    }
                }
            }
        }
        out
    }

    pub fn word(&self, letters: &[usize]) -> Vec<f64> {
        letters.iter().fold(self.identity(), |acc, &s| self.mul(&acc, &self.gens[s]))
    }

    pub fn gen(&self, s: usize) -> &[f64] {
        &self.gens[s]
    }

    pub fn key(m: &[f64]) -> Key {
        m.iter().map(|x| (x * 1e6).round() as i64).collect()
    }

    /// Breadth-first ball: each element with its length, keyed by matrix.
    pub fn ball(&self, radius: Option<usize>, cap: usize) -> Option<Ball> {
        let mut length = HashMap::new();
        let mut mats = HashMap::new();
        let id = self.identity();
        length.insert(Self::key(&id), 0);
        mats.insert(Self::key(&id), id.clone());
        let mut layer = vec![id];
        let mut r = 0;
        while !layer.is_empty() && radius.is_none_or(|rad| r < rad) {
            r += 1;
            let mut next = Vec::new();
            for m in &layer {
                for g in &self.gens {
                    let p = self.mul(m, g);
                    let k = Self::key(&p);
                    if !length.contains_key(&k) {
                        length.insert(k.clone(), r);
                        mats.insert(k, p.clone());
                        next.push(p);
                        if length.len() > cap {
                            return None;
                        }
                    }
                }
            }
            layer = next;
        }
        Some(Ball { length, mats })
    }

    /// Elements of the subgroup generated by `letters` (finite).
    pub fn subgroup(&self, letters: &[usize]) -> Vec<Vec<f64>> {
        let sub = Oracle {
            n: self.n,
            gens: letters.iter().map(|&s| self.gens[s].clone()).collect(),
        };
        sub.ball(None, 1_000_000).expect("finite subgroup").mats.into_values().collect()
    }

    /// Key set of `g·H`.
    pub fn coset(&self, g: &[f64], h: &[Vec<f64>]) -> BTreeSet<Key> {
        h.iter().map(|x| Self::key(&self.mul(g, x))).collect()
    }
}

pub struct Ball {
    pub length: HashMap<Key, usize>,
    pub mats: HashMap<Key, Vec<f64>>,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.length.len()
    }
}

pub fn indices(x: artk_core::VertexSet) -> Vec<usize> {
    x.iter().map(|v| v.index()).collect()
}

/// Cosets `gW_Δ` for cliques `Δ` that meet the ball of radius `r`, and the
/// number of clique pairs `Δ₁ ⊊ Δ₂` over such cosets, by gap size.
pub fn clique_cube_counts(graph: &LabeledGraph, radius: Option<usize>) -> Vec<usize> {
    let oracle = Oracle::new(graph);
    let ball = oracle.ball(radius, 1_000_000).expect("ball within cap");
    let cliques = graph.enumerate_cliques();
    let omega = cliques.iter().map(|c| c.len()).max().unwrap_or(0);
    let mut f = vec![0; omega + 1];
    for &d1 in &cliques {
        let h = oracle.subgroup(&indices(d1));
        let cosets: BTreeSet<BTreeSet<Key>> = ball.mats.values().map(|g| oracle.coset(g, &h)).collect();
        f[0] += cosets.len();
        for &d2 in &cliques {
            if d1 != d2 && d1.is_subset(d2) {
                f[d2.len() - d1.len()] += cosets.len();
            }
        }
    }
    f
}

/// Number of cosets `gW_Δ` meeting the ball of radius `r` that `w` fixes.
pub fn fixed_vertex_count(graph: &LabeledGraph, radius: usize, w: &[usize]) -> usize {
    let oracle = Oracle::new(graph);
    let ball = oracle.ball(Some(radius), 1_000_000).expect("ball within cap");
    let wm = oracle.word(w);
    let mut count = 0;
    for d in graph.enumerate_cliques() {
        let h = oracle.subgroup(&indices(d));
        let cosets: BTreeSet<BTreeSet<Key>> = ball.mats.values().map(|g| oracle.coset(g, &h)).collect();
        for c in &cosets {
            let any = ball.mats.values().find(|g| c.contains(&Oracle::key(g))).expect("coset meets the ball");
            if oracle.coset(&oracle.mul(&wm, any), &h) == *c {
                count += 1;
            }
        }
    }
    count
}
