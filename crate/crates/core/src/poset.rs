//! Reachability posets of cells and their Hasse diagrams.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::mutations::{downward_mutations, symplectic_moves, MutationError};
use crate::par::Exec;
use crate::patterns::{
    enumerate_jp, is_symplectic, jp_leq_unchecked, JugglingPattern, PatternError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    /// All of `JP(k, n)`, edges are mutations.
    Full,
    /// `JP(k, 2n)^sp`, edges are symplectic mutations.
    Symplectic,
}

#[derive(Debug, Error)]
pub enum PosetError {
    #[error(transparent)]
    Mutation(#[from] MutationError),
    #[error("move graph contains a cycle")]
    Cyclic,
}

impl From<PatternError> for PosetError {
    fn from(e: PatternError) -> Self {
        PosetError::Mutation(e.into())
    }
}

/// Dense bitset rows; row `u` holds everything reachable from `u`.
#[derive(Debug, Clone)]
struct Reach {
    words: usize,
    bits: Vec<u64>,
}

impl Reach {
    fn new(len: usize) -> Self {
        let words = len.div_ceil(64);
        Reach {
            words,
            bits: vec![0; words * len],
        }
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    fn get(&self, u: usize, v: usize) -> bool {
        self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    fn union_into(&mut self, dst: usize, src: usize) {
        let w = self.words;
        let (a, b) = if dst < src {
            let (lo, hi) = self.bits.split_at_mut(src * w);
            (&mut lo[dst * w..(dst + 1) * w], &hi[..w])
        } else {
            let (lo, hi) = self.bits.split_at_mut(dst * w);
            (&mut hi[..w], &lo[src * w..(src + 1) * w])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x |= *y;
        }
    }
}

/// A finite poset of patterns ordered by reachability under moves.
#[derive(Debug, Clone)]
pub struct CellPoset {
    pub kind: OrderKind,
    pub k: usize,
    pub n: usize,
    /// Patterns in canonical enumeration order.
    pub patterns: Vec<JugglingPattern>,
    /// Cell dimension per pattern (full or symplectic, matching `kind`).
    pub dims: Vec<usize>,
    /// Direct move edges `upper -> lower`, deduplicated per source.
    pub moves: Vec<Vec<usize>>,
    /// Covering relations `(upper, lower)`, sorted.
    pub hasse: Vec<(usize, usize)>,
    index: HashMap<JugglingPattern, usize>,
    reach: Reach,
}

impl CellPoset {
    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn index_of(&self, pattern: &JugglingPattern) -> Option<usize> {
        self.index.get(pattern).copied()
    }

    /// Whether `lower` is reachable from `upper` (reflexively).
    pub fn reachable(&self, upper: usize, lower: usize) -> bool {
        self.reach.get(upper, lower)
    }

    /// Whether every covering relation strictly drops the dimension.
    pub fn dims_strictly_decrease(&self) -> bool {
        self.hasse.iter().all(|&(u, l)| self.dims[u] > self.dims[l])
    }
}

pub fn build_poset(
    k: usize,
    n: usize,
    kind: OrderKind,
    exec: Exec,
) -> Result<CellPoset, PosetError> {
    let mut patterns: Vec<JugglingPattern> = enumerate_jp(k, n)?.collect();
    if kind == OrderKind::Symplectic {
        if n % 2 != 0 {
            return Err(PatternError::OddAmbient(n).into());
        }
        if 2 * k > n {
            return Err(PatternError::RankTooLarge { k, ambient: n }.into());
        }
        patterns.retain(|p| is_symplectic(p).unwrap_or(false));
    }
    let index: HashMap<JugglingPattern, usize> = patterns
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();

    let targets: Vec<Vec<JugglingPattern>> = exec.try_map(&patterns, |p| {
        Ok::<_, MutationError>(match kind {
            OrderKind::Full => downward_mutations(p).into_iter().map(|(_, t)| t).collect(),
            OrderKind::Symplectic => symplectic_moves(p)?
                .into_iter()
                .map(|m| m.bottom().clone())
                .collect(),
        })
    })?;
    let dims: Vec<usize> = targets.iter().map(Vec::len).collect();
    let moves: Vec<Vec<usize>> = targets
        .iter()
        .map(|ts| {
            let mut v: Vec<usize> = ts.iter().map(|t| index[t]).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();

    let reach = transitive_closure(&moves)?;
    let mut hasse = Vec::new();
    for (u, succ) in moves.iter().enumerate() {
        for &v in succ {
            if !succ.iter().any(|&w| w != v && reach.get(w, v)) {
                hasse.push((u, v));
            }
        }
    }
    hasse.sort_unstable();

    Ok(CellPoset {
        kind,
        k,
        n,
        patterns,
        dims,
        moves,
        hasse,
        index,
        reach,
    })
}

/// Reflexive-transitive closure, processing sinks first (Kahn's algorithm on
/// the reversed graph).
fn transitive_closure(moves: &[Vec<usize>]) -> Result<Reach, PosetError> {
    let len = moves.len();
    let mut preds = vec![Vec::new(); len];
    let mut outdeg = vec![0usize; len];
    for (u, succ) in moves.iter().enumerate() {
        outdeg[u] = succ.len();
        for &v in succ {
            preds[v].push(u);
        }
    }
    let mut reach = Reach::new(len);
    let mut queue: VecDeque<usize> = (0..len).filter(|&u| outdeg[u] == 0).collect();
    let mut done = 0;
    while let Some(u) = queue.pop_front() {
        done += 1;
        reach.set(u, u);
        for &v in &moves[u] {
            reach.union_into(u, v);
        }
        for &p in &preds[u] {
            outdeg[p] -= 1;
            if outdeg[p] == 0 {
                queue.push_back(p);
            }
        }
    }
    if done != len {
        return Err(PosetError::Cyclic);
    }
    Ok(reach)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub k: usize,
    pub n: usize,
    /// Comparable symplectic pairs examined.
    pub pairs_checked: usize,
    /// `(lower, upper)` with `lower ≤ upper` combinatorially but not reachable
    /// by symplectic moves.
    pub counterexamples: Vec<(JugglingPattern, JugglingPattern)>,
}

/// Tests whether the combinatorial order on symplectic patterns is generated
/// by symplectic moves.
pub fn check_conjecture(k: usize, n: usize, exec: Exec) -> Result<ConjectureReport, PosetError> {
    let poset = build_poset(k, n, OrderKind::Symplectic, exec)?;
    let len = poset.len();
    let rows: Vec<(usize, Vec<usize>)> = exec.map_range(len, |u| {
        let mut checked = 0;
        let mut bad = Vec::new();
        for l in 0..len {
            if jp_leq_unchecked(&poset.patterns[l], &poset.patterns[u]) {
                checked += 1;
                if !poset.reachable(u, l) {
                    bad.push(l);
                }
            }
        }
        (checked, bad)
    });
    let mut report = ConjectureReport {
        k,
        n,
        pairs_checked: 0,
        counterexamples: Vec::new(),
    };
    for (u, (checked, bad)) in rows.into_iter().enumerate() {
        report.pairs_checked += checked;
        for l in bad {
            report
                .counterexamples
                .push((poset.patterns[l].clone(), poset.patterns[u].clone()));
        }
    }
    Ok(report)
}
