//! Amalgams `A *_C B` of finite groups given by multiplication tables.
//!
//! Elements are kept in normal form `t₁t₂…t_k·c`: the `tᵢ` are non-trivial
//! left coset representatives of `C` alternating between `A` and `B`, and
//! `c ∈ C`. The Bass-Serre tree of the amalgam is the [`TreeBackend`] here.

use crate::error::{Error, Result};
use crate::tree::{Factor, TreeBackend};

/// A finite group on `0..n` with identity `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Validates closure, identity `0`, inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self> {
        let n = table.len();
        let bad = |m: &str| Err(Error::InconsistentTables(m.to_string()));
        if n == 0 {
            return bad("empty table");
        }
        if names.len() != n {
            return bad("one name per element is required");
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("table is not square over 0..n");
        }
        if (0..n).any(|x| table[0][x] != x || table[x][0] != x) {
            return bad("0 is not the identity");
        }
        for x in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for y in 0..n {
                row[table[x][y]] = true;
                col[table[y][x]] = true;
            }
            if row.contains(&false) || col.contains(&false) {
                return bad("table is not a latin square");
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(Error::InconsistentTables(format!("({x}·{y})·{z} ≠ {x}·({y}·{z})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, names })
    }

    /// `ℤ/n` written multiplicatively as powers of `generator`.
    pub fn cyclic(n: usize, generator: &str) -> Self {
        let table = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => generator.to_string(),
                _ => format!("{generator}^{k}"),
            })
            .collect();
        FiniteGroup { table, names }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    /// Checks that `images` is an injective homomorphism from `self`.
    pub fn check_embedding(&self, target: &FiniteGroup, images: &[usize]) -> Result<()> {
        let n = self.order();
        if images.len() != n || images.iter().any(|&x| x >= target.order()) {
            return Err(Error::InconsistentTables("embedding has the wrong shape".into()));
        }
        let mut seen = vec![false; target.order()];
        for &x in images {
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InconsistentTables("embedding is not injective".into()));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if images[self.mul(x, y)] != target.mul(images[x], images[y]) {
                    return Err(Error::InconsistentTables("embedding is not a homomorphism".into()));
                }
            }
        }
        Ok(())
    }
}

/// One letter of a normal form: a non-trivial coset representative of a factor.
pub type Syllable = (Factor, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmalgamWord {
    pub syllables: Vec<Syllable>,
    pub c: usize,
}

impl AmalgamWord {
    pub fn identity() -> Self {
        AmalgamWord {
            syllables: Vec::new(),
            c: 0,
        }
    }
}

#[derive(Debug, Clone)]
struct FactorData {
    group: FiniteGroup,
    embed: Vec<usize>,
    // split[x] = (t, c) with x = t·embed[c] and t the representative of x·C
    split: Vec<(usize, usize)>,
    transversal: Vec<usize>,
}

impl FactorData {
    fn new(group: FiniteGroup, c: &FiniteGroup, embed: Vec<usize>) -> Result<Self> {
        c.check_embedding(&group, &embed)?;
        let n = group.order();
        let mut split = vec![(usize::MAX, 0); n];
        let mut transversal = Vec::new();
        for x in 0..n {
            if split[x].0 != usize::MAX {
                continue;
            }
            transversal.push(x);
            for (ci, &e) in embed.iter().enumerate() {
                split[group.mul(x, e)] = (x, ci);
            }
        }
        Ok(FactorData {
            group,
            embed,
            split,
            transversal,
        })
    }
}

#[derive(Debug, Clone)]
pub struct FiniteAmalgam {
    c: FiniteGroup,
    a: FactorData,
    b: FactorData,
}

impl FiniteAmalgam {
    pub fn new(a: FiniteGroup, b: FiniteGroup, c: FiniteGroup, into_a: Vec<usize>, into_b: Vec<usize>) -> Result<Self> {
        Ok(FiniteAmalgam {
            a: FactorData::new(a, &c, into_a)?,
            b: FactorData::new(b, &c, into_b)?,
            c,
        })
    }

    /// `A * B` over the trivial group.
    pub fn free_product(a: FiniteGroup, b: FiniteGroup) -> Self {
        let trivial = FiniteGroup::cyclic(1, "1");
        Self::new(a, b, trivial, vec![0], vec![0]).expect("trivial group embeds everywhere")
    }

    fn factor(&self, f: Factor) -> &FactorData {
        match f {
            Factor::A => &self.a,
            Factor::B => &self.b,
        }
    }

    /// `[A : C]` or `[B : C]`.
    pub fn index(&self, f: Factor) -> usize {
        self.factor(f).transversal.len()
    }

    pub fn embed(&self, f: Factor, x: usize) -> AmalgamWord {
        self.mul_factor(&AmalgamWord::identity(), f, x)
    }

    /// `w · x` for `x` an element of factor `f`.
    pub fn mul_factor(&self, w: &AmalgamWord, f: Factor, x: usize) -> AmalgamWord {
        let data = self.factor(f);
        let mut syllables = w.syllables.clone();
        let mut y = data.group.mul(data.embed[w.c], x);
        if let Some(&(last_f, t)) = syllables.last() {
            if last_f == f {
                syllables.pop();
                y = data.group.mul(t, y);
            }
        }
        let (t, c) = data.split[y];
        if t != 0 {
            syllables.push((f, t));
        }
        AmalgamWord { syllables, c }
    }

    pub fn mul(&self, u: &AmalgamWord, v: &AmalgamWord) -> AmalgamWord {
        let mut w = u.clone();
        for &(f, t) in &v.syllables {
            w = self.mul_factor(&w, f, t);
        }
        self.mul_factor(&w, Factor::A, self.a.embed[v.c])
    }

    pub fn format(&self, syllables: &[Syllable]) -> String {
        if syllables.is_empty() {
            return "1".into();
        }
        syllables
            .iter()
            .map(|&(f, t)| self.factor(f).group.name(t).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn c_group(&self) -> &FiniteGroup {
        &self.c
    }
}

impl TreeBackend for FiniteAmalgam {
    /// Normal-form syllables with the trailing `C`-part dropped (edges) or
    /// also the trailing factor syllable dropped (vertices).
    type Rep = Vec<Syllable>;
    type Element = AmalgamWord;

    fn name(&self) -> &'static str {
        "finite-table"
    }

    fn base_edge(&self) -> Vec<Syllable> {
        Vec::new()
    }

    fn endpoint(&self, edge: &Vec<Syllable>, side: Factor) -> Result<Vec<Syllable>> {
        let mut rep = edge.clone();
        if rep.last().is_some_and(|&(f, _)| f == side) {
            rep.pop();
        }
        Ok(rep)
    }

    fn edges_at(&self, vertex: &Vec<Syllable>, side: Factor) -> Result<(Vec<Vec<Syllable>>, bool)> {
        let base = AmalgamWord {
            syllables: vertex.clone(),
            c: 0,
        };
        let edges = self
            .factor(side)
            .transversal
            .iter()
            .map(|&t| self.mul_factor(&base, side, t).syllables)
            .collect();
        Ok((edges, false))
    }

    fn act_edge(&self, w: &AmalgamWord, edge: &Vec<Syllable>) -> Result<Vec<Syllable>> {
        let e = AmalgamWord {
            syllables: edge.clone(),
            c: 0,
        };
        Ok(self.mul(w, &e).syllables)
    }

    fn act_vertex(&self, w: &AmalgamWord, vertex: &Vec<Syllable>, side: Factor) -> Result<Vec<Syllable>> {
        let e = self.act_edge(w, vertex)?;
        self.endpoint(&e, side)
    }

    fn format_rep(&self, rep: &Vec<Syllable>) -> String {
        self.format(rep)
    }

    fn side_label(&self, side: Factor) -> String {
        let g = &self.factor(side).group;
        let gen = if g.order() > 1 { g.name(1) } else { "1" };
        format!("<{gen}>")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_tables() {
        let names = vec!["1".to_string(), "x".to_string()];
        assert!(matches!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], names.clone()),
            Err(Error::InconsistentTables(_))
        ));
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]], names).is_ok());
        let z4 = FiniteGroup::cyclic(4, "a");
        let z2 = FiniteGroup::cyclic(2, "x");
        assert!(z2.check_embedding(&z4, &[0, 1]).is_err());
        assert!(z2.check_embedding(&z4, &[0, 2]).is_ok());
    }

    #[test]
    fn normal_forms_multiply() {
        let g = FiniteAmalgam::new(
            FiniteGroup::cyclic(4, "a"),
            FiniteGroup::cyclic(6, "b"),
            FiniteGroup::cyclic(2, "z"),
            vec![0, 2],
            vec![0, 3],
        )
        .unwrap();
        assert_eq!((g.index(Factor::A), g.index(Factor::B)), (2, 3));
        let a = g.embed(Factor::A, 1);
        let aa = g.mul(&a, &a);
        // a² is the central element of order two, shared with b³
        assert!(aa.syllables.is_empty());
        assert_eq!(aa, g.embed(Factor::B, 3));
        let ab = g.mul(&a, &g.embed(Factor::B, 1));
        assert_eq!(ab.syllables.len(), 2);
        let a3 = g.mul(&aa, &a);
        let inv = g.mul(&a3, &ab);
        assert_eq!(inv, g.embed(Factor::B, 1));
    }
}
