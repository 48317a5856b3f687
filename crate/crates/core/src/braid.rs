//! Braid moves `stst… ↔ tsts…` (`m(s,t)` letters on each side).
//!
//! The same moves act on Coxeter words and on positive Artin words, so the
//! class enumeration and the certified search live here and are shared.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, Vertex};

/// One substitution: the alternating segment starting at `position` begins
/// with `from` and is replaced by the segment beginning with `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BraidMove {
    pub position: usize,
    pub from: Vertex,
    pub to: Vertex,
}

/// Iterates over every braid move applicable to `word`, in position order.
pub fn moves<'a>(graph: &'a LabeledGraph, word: &'a [Vertex]) -> impl Iterator<Item = BraidMove> + 'a {
    (0..word.len().saturating_sub(1)).filter_map(move |i| {
        let (s, t) = (word[i], word[i + 1]);
        let m = graph.label(s, t)? as usize;
        let seg = word.get(i..i + m)?;
        let alternating = seg
            .iter()
            .enumerate()
            .all(|(k, &x)| x == if k % 2 == 0 { s } else { t });
        alternating.then_some(BraidMove {
            position: i,
            from: s,
            to: t,
        })
    })
}

/// Applies `mv` in place. Fails if the segment is not the expected alternating word.
pub fn apply(graph: &LabeledGraph, word: &mut [Vertex], mv: BraidMove) -> std::result::Result<(), String> {
    let m = graph
        .label(mv.from, mv.to)
        .ok_or_else(|| format!("{} and {} are not adjacent", graph.name(mv.from), graph.name(mv.to)))?
        as usize;
    let seg = word
        .get_mut(mv.position..mv.position + m)
        .ok_or_else(|| format!("segment at {} runs past the end of the word", mv.position))?;
    for (k, x) in seg.iter_mut().enumerate() {
        let (expect, put) = if k % 2 == 0 { (mv.from, mv.to) } else { (mv.to, mv.from) };
        if *x != expect {
            return Err(format!("letter {} is {}, expected {}", mv.position + k, graph.name(*x), graph.name(expect)));
        }
        *x = put;
    }
    Ok(())
}

/// All words reachable from `word` by braid moves, in breadth-first order.
pub fn braid_class(graph: &LabeledGraph, word: &[Vertex], cap: usize) -> Result<Vec<Vec<Vertex>>> {
    let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
    let mut order = vec![word.to_vec()];
    seen.insert(word.to_vec());
    let mut head = 0;
    while head < order.len() {
        let cur = order[head].clone();
        head += 1;
        for mv in moves(graph, &cur) {
            let mut next = cur.clone();
            apply(graph, &mut next, mv).expect("move was generated for this word");
            if seen.insert(next.clone()) {
                if order.len() == cap {
                    return Err(Error::CapExceeded { what: "braid class", cap });
                }
                order.push(next);
            }
        }
    }
    Ok(order)
}

/// Searches the braid class of `word` for a member satisfying `pred`.
pub fn find_in_class(
    graph: &LabeledGraph,
    word: &[Vertex],
    cap: usize,
    mut pred: impl FnMut(&[Vertex]) -> bool,
) -> Result<Option<Vec<Vertex>>> {
    if pred(word) {
        return Ok(Some(word.to_vec()));
    }
    let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
    seen.insert(word.to_vec());
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        for mv in moves(graph, &cur) {
            let mut next = cur.clone();
            apply(graph, &mut next, mv).expect("move was generated for this word");
            if seen.contains(&next) {
                continue;
            }
            if pred(&next) {
                return Ok(Some(next));
            }
            if seen.len() == cap {
                return Err(Error::CapExceeded { what: "braid class", cap });
            }
            seen.insert(next.clone());
            queue.push_back(next);
        }
    }
    Ok(None)
}

/// Outcome of a breadth-first braid search from `source` towards `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Search {
    /// Shortest move sequence turning source into target.
    Found(Vec<BraidMove>),
    /// The full class of `source` was enumerated without meeting `target`.
    Exhausted { class_size: usize },
}

pub fn search(graph: &LabeledGraph, source: &[Vertex], target: &[Vertex], cap: usize) -> Result<Search> {
    if source == target {
        return Ok(Search::Found(Vec::new()));
    }
    if source.len() != target.len() {
        return Ok(Search::Exhausted {
            class_size: braid_class(graph, source, cap)?.len(),
        });
    }
    let mut parent: HashMap<Vec<Vertex>, Option<(Vec<Vertex>, BraidMove)>> = HashMap::new();
    parent.insert(source.to_vec(), None);
    let mut queue = VecDeque::from([source.to_vec()]);
    while let Some(cur) = queue.pop_front() {
        for mv in moves(graph, &cur) {
            let mut next = cur.clone();
            apply(graph, &mut next, mv).expect("move was generated for this word");
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() == cap {
                return Err(Error::CapExceeded { what: "braid search", cap });
            }
            parent.insert(next.clone(), Some((cur.clone(), mv)));
            if next == target {
                let mut path = Vec::new();
                let mut at = next;
                while let Some(Some((prev, mv))) = parent.get(&at) {
                    path.push(*mv);
                    at = prev.clone();
                }
                path.reverse();
                return Ok(Search::Found(path));
            }
            queue.push_back(next);
        }
    }
    Ok(Search::Exhausted {
        class_size: parent.len(),
    })
}

/// A replayable sequence of braid moves between two positive words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BraidCertificate {
    pub moves: Vec<BraidMove>,
}

#[derive(Serialize, Deserialize)]
struct MoveRecord {
    position: usize,
    edge: [String; 2],
}

impl BraidCertificate {
    pub fn replay(&self, graph: &LabeledGraph, source: &[Vertex]) -> Result<Vec<Vertex>> {
        let mut word = source.to_vec();
        for (index, &mv) in self.moves.iter().enumerate() {
            apply(graph, &mut word, mv).map_err(|reason| Error::InvalidCertificate { index, reason })?;
        }
        Ok(word)
    }

    pub fn verifies(&self, graph: &LabeledGraph, source: &[Vertex], target: &[Vertex]) -> bool {
        self.replay(graph, source).is_ok_and(|w| w == target)
    }

    /// `[{"position": i, "edge": [from, to]}, …]`
    pub fn to_json(&self, graph: &LabeledGraph) -> serde_json::Value {
        let records: Vec<MoveRecord> = self
            .moves
            .iter()
            .map(|mv| MoveRecord {
                position: mv.position,
                edge: [graph.name(mv.from).to_string(), graph.name(mv.to).to_string()],
            })
            .collect();
        serde_json::to_value(records).expect("plain records serialize")
    }

    pub fn from_json(graph: &LabeledGraph, value: &serde_json::Value) -> Result<Self> {
        let records: Vec<MoveRecord> =
            serde_json::from_value(value.clone()).map_err(|e| Error::Invalid(format!("certificate: {e}")))?;
        let moves = records
            .into_iter()
            .map(|r| {
                Ok(BraidMove {
                    position: r.position,
                    from: graph.vertex(&r.edge[0])?,
                    to: graph.vertex(&r.edge[1])?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(BraidCertificate { moves })
    }
}
