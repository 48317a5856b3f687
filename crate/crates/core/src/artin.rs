//! Words in the Artin group `A_Γ`.
//!
//! Equality in `A_Γ` is not decided here. What is available is exact or
//! certified: free reduction, the natural projection `θ: A_Γ → W_Γ`, the
//! positive section `ι: W_Γ → A_Γ`, and braid-move certificates between
//! positive words.

use std::collections::BTreeMap;
use std::fmt;

use crate::braid::{self, BraidCertificate, Search};
use crate::coxeter::{Coxeter, CoxeterElement};
use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Vertex, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub vertex: Vertex,
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ArtinWord {
    pub syllables: Vec<Syllable>,
}

impl ArtinWord {
    pub fn positive(letters: &[Vertex]) -> Self {
        ArtinWord {
            syllables: letters
                .iter()
                .map(|&vertex| Syllable { vertex, inverse: false })
                .collect(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.syllables.iter().all(|s| !s.inverse)
    }

    pub fn letters(&self) -> Vec<Vertex> {
        self.syllables.iter().map(|s| s.vertex).collect()
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn concat(&self, other: &ArtinWord) -> ArtinWord {
        let mut syllables = self.syllables.clone();
        syllables.extend_from_slice(&other.syllables);
        ArtinWord { syllables }
    }

    pub fn inverse(&self) -> ArtinWord {
        ArtinWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    vertex: s.vertex,
                    inverse: !s.inverse,
                })
                .collect(),
        }
    }

    /// Cancels adjacent `v v⁻¹` and `v⁻¹ v` pairs.
    pub fn free_reduce(&self) -> ArtinWord {
        let mut out: Vec<Syllable> = Vec::with_capacity(self.syllables.len());
        for &s in &self.syllables {
            match out.last() {
                Some(t) if t.vertex == s.vertex && t.inverse != s.inverse => {
                    out.pop();
                }
                _ => out.push(s),
            }
        }
        ArtinWord { syllables: out }
    }

    /// Exponent sum: the homomorphism `A_Γ → ℤ` sending every generator to 1.
    pub fn exponent_sum(&self) -> i64 {
        self.syllables.iter().map(|s| if s.inverse { -1 } else { 1 }).sum()
    }

    /// Tokens `v` and `v^-1`; `e` for the empty word.
    pub fn parse(graph: &LabeledGraph, text: &str) -> Result<Self> {
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks == ["e"] && graph.vertex("e").is_err() {
            return Ok(ArtinWord::default());
        }
        let syllables = toks
            .into_iter()
            .map(|t| match t.strip_suffix("^-1") {
                Some(name) => Ok(Syllable { vertex: graph.vertex(name)?, inverse: true }),
                None => Ok(Syllable { vertex: graph.vertex(t)?, inverse: false }),
            })
            .collect::<Result<_>>()?;
        Ok(ArtinWord { syllables })
    }

    pub fn display<'a>(&'a self, graph: &'a LabeledGraph) -> impl fmt::Display + 'a {
        DisplayWord { word: self, graph }
    }
}

struct DisplayWord<'a> {
    word: &'a ArtinWord,
    graph: &'a LabeledGraph,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        for (i, s) in self.word.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.graph.name(s.vertex))?;
            if s.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// `θ`: forget the signs, then reduce in `W_Γ`.
pub fn theta(engine: &Coxeter, w: &ArtinWord) -> Result<CoxeterElement> {
    engine.reduce(&w.letters())
}

/// `ι`: the positive word spelled by the canonical reduced expression.
pub fn iota(g: &CoxeterElement) -> ArtinWord {
    ArtinWord::positive(g.word())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BraidVerdict {
    Equal(BraidCertificate),
    /// Refuted by an invariant: different exponent sums or different images under `θ`.
    Distinct,
    /// The braid class was enumerated without a match, but the words are not
    /// reduced Coxeter expressions, so exhaustion is not a proof of inequality.
    Inconclusive { class_size: usize },
}

impl BraidVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, BraidVerdict::Equal(_))
    }
}

/// Decides whether two positive words are braid-equivalent.
///
/// A certificate is returned on success. Inequality is only claimed when an
/// invariant separates the words, or when both words spell reduced
/// expressions (then braid-equivalence is equivalent to equality in `W_Γ`).
pub fn positive_braid_equal(engine: &Coxeter, p: &ArtinWord, q: &ArtinWord, cap: usize) -> Result<BraidVerdict> {
    if !p.is_positive() || !q.is_positive() {
        return Err(Error::Invalid("positive_braid_equal needs positive words".into()));
    }
    let (pl, ql) = (p.letters(), q.letters());
    if pl.len() != ql.len() {
        return Ok(BraidVerdict::Distinct);
    }
    let (tp, tq) = (theta(engine, p)?, theta(engine, q)?);
    if tp != tq {
        return Ok(BraidVerdict::Distinct);
    }
    match braid::search(engine.graph(), &pl, &ql, cap)? {
        Search::Found(moves) => Ok(BraidVerdict::Equal(BraidCertificate { moves })),
        Search::Exhausted { class_size } => {
            if tp.len() == pl.len() {
                // two reduced expressions of one element are always braid-connected
                unreachable!("reduced expressions of one element must be braid-equivalent");
            }
            Ok(BraidVerdict::Inconclusive { class_size })
        }
    }
}

/// Constructive form of `gW_Xg⁻¹ ⊆ W_Y ⟹ ι(g)A_Xι(g)⁻¹ ⊆ A_Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftResult {
    /// `ι(g)`
    pub conjugator_word: ArtinWord,
    /// Minimum of the double coset `W_Y·g·W_X`.
    pub g0: CoxeterElement,
    /// `v ↦ f_v` with `ι(g0)·v = f_v·ι(g0)`.
    pub generator_map: BTreeMap<Vertex, Vertex>,
    /// One certificate per `v ∈ X`, turning `ι(g0)·v` into `f_v·ι(g0)`.
    pub certificates: BTreeMap<Vertex, BraidCertificate>,
    pub bijective: bool,
}

impl LiftResult {
    /// Replays every certificate against the words it claims to relate.
    pub fn verify(&self, graph: &LabeledGraph) -> bool {
        let base = self.g0.word();
        self.generator_map.iter().all(|(&v, &f)| {
            let mut src = base.to_vec();
            src.push(v);
            let mut dst = vec![f];
            dst.extend_from_slice(base);
            self.certificates
                .get(&v)
                .is_some_and(|c| c.verifies(graph, &src, &dst))
        })
    }
}

/// Follows the lift argument step by step: reduce `g` to the minimum `g0` of
/// `W_Y·g·W_X`, conjugate each `v ∈ X` by `g0`, demand a single letter of `Y`,
/// then certify `ι(g0)·v = f_v·ι(g0)` by braid search.
pub fn lift_conjugator(engine: &Coxeter, g: &CoxeterElement, x: VertexSet, y: VertexSet) -> Result<LiftResult> {
    let graph = engine.graph();
    let g0 = engine.min_double_coset(g, y, x)?.g0;
    let g0_inv = engine.invert(&g0)?;
    let mut generator_map = BTreeMap::new();
    let mut certificates = BTreeMap::new();
    for v in x.iter() {
        let f = engine.multiply_all([&g0, &engine.generator(v), &g0_inv])?;
        let f_v = match f.word() {
            [s] if y.contains(*s) => *s,
            _ => {
                return Err(Error::NotConjugatedInto {
                    generator: graph.name(v).to_string(),
                    length: f.len(),
                })
            }
        };
        let mut src = g0.word().to_vec();
        src.push(v);
        let mut dst = vec![f_v];
        dst.extend_from_slice(g0.word());
        let moves = match braid::search(graph, &src, &dst, engine.caps().braid)? {
            Search::Found(moves) => moves,
            Search::Exhausted { .. } => {
                unreachable!("ι(g0)·v and f_v·ι(g0) are reduced expressions of one element")
            }
        };
        generator_map.insert(v, f_v);
        certificates.insert(v, BraidCertificate { moves });
    }
    let image: VertexSet = generator_map.values().copied().collect();
    let bijective = x.len() == y.len() && image.len() == x.len();
    Ok(LiftResult {
        conjugator_word: iota(g),
        g0,
        generator_map,
        certificates,
        bijective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(m: u32) -> Coxeter {
        Coxeter::new(LabeledGraph::dihedral(m))
    }

    fn aw(c: &Coxeter, s: &str) -> ArtinWord {
        ArtinWord::parse(c.graph(), s).unwrap()
    }

    #[test]
    fn free_reduction() {
        let c = engine(3);
        assert!(aw(&c, "v v^-1").free_reduce().is_empty());
        assert_eq!(aw(&c, "v w w^-1 v").free_reduce(), aw(&c, "v v"));
        let r = aw(&c, "v w^-1 v");
        assert_eq!(r.free_reduce(), r);
        assert_eq!(aw(&c, "v^-1 w").display(c.graph()).to_string(), "v^-1 w");
    }

    #[test]
    fn projection() {
        let c = engine(3);
        assert_eq!(theta(&c, &aw(&c, "v^-1")).unwrap(), c.generator(Vertex(0)));
        assert_eq!(theta(&c, &aw(&c, "v w v")).unwrap().len(), 3);
        assert!(theta(&c, &aw(&c, "w w^-1")).unwrap().is_identity());
    }

    #[test]
    fn section() {
        let c = engine(3);
        assert!(iota(&CoxeterElement::identity()).is_empty());
        let g = c.reduce(&c.parse_word("w v w").unwrap()).unwrap();
        assert_eq!(iota(&g), aw(&c, "v w v"));
        assert_eq!(theta(&c, &iota(&g)).unwrap(), g);
    }

    #[test]
    fn braid_equality() {
        let c = engine(3);
        let v = positive_braid_equal(&c, &aw(&c, "v w v"), &aw(&c, "w v w"), 100).unwrap();
        let BraidVerdict::Equal(cert) = v else { panic!("{v:?}") };
        assert_eq!(cert.moves.len(), 1);
        let same = positive_braid_equal(&c, &aw(&c, "v w"), &aw(&c, "v w"), 100).unwrap();
        assert_eq!(same, BraidVerdict::Equal(BraidCertificate::default()));
        assert_eq!(positive_braid_equal(&c, &aw(&c, "v"), &aw(&c, "w"), 100).unwrap(), BraidVerdict::Distinct);
        // v v and w w both project to 1 but are not braid-related
        assert!(matches!(
            positive_braid_equal(&c, &aw(&c, "v v"), &aw(&c, "w w"), 100).unwrap(),
            BraidVerdict::Inconclusive { class_size: 1 }
        ));
        assert!(positive_braid_equal(&c, &aw(&c, "v^-1"), &aw(&c, "v"), 100).is_err());
    }

    #[test]
    fn lift_on_longest_element() {
        let c = engine(3);
        let g = c.reduce(&c.parse_word("v w v").unwrap()).unwrap();
        let x = c.graph().parse_subset("v").unwrap();
        let y = c.graph().parse_subset("w").unwrap();
        let lift = lift_conjugator(&c, &g, x, y).unwrap();
        assert_eq!(lift.generator_map[&Vertex(0)], Vertex(1));
        assert!(lift.bijective);
        assert!(lift.verify(c.graph()));
        assert_eq!(c.format(&lift.g0), "v w");
    }

    #[test]
    fn lift_identity_and_failure() {
        let c = engine(4);
        let x = c.graph().parse_subset("v").unwrap();
        let lift = lift_conjugator(&c, &CoxeterElement::identity(), x, x).unwrap();
        assert_eq!(lift.generator_map[&Vertex(0)], Vertex(0));
        assert!(lift.certificates[&Vertex(0)].moves.is_empty());
        // in I₂(4) the reflections v and w are not conjugate
        let y = c.graph().parse_subset("w").unwrap();
        let g = c.reduce(&c.parse_word("w").unwrap()).unwrap();
        assert!(matches!(
            lift_conjugator(&c, &g, x, y),
            Err(Error::NotConjugatedInto { .. })
        ));
    }
}
