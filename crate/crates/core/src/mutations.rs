//! Mutations of the coefficient quiver and their symplectic refinement.
//!
//! A move takes a predecessor-closed run of `length` grid vertices starting at
//! `e_column^{(vertex)}` and pushes every vertex of it `shift` columns down,
//! so the run `e_{j+t}^{(i+t)}` becomes `e_{j+t+s}^{(i+t)}` for `t < length`.
//! Moves always go down in [`jp_leq`](crate::patterns::jp_leq); the cell
//! dimension of a pattern is the number of moves whose source it is.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::patterns::{is_symplectic, JugglingPattern, PatternError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MutationError {
    #[error("invalid move {mv}: {reason}")]
    InvalidMove {
        mv: SegmentMove,
        reason: InvalidReason,
    },
    #[error("move {0} already lands on a symplectic pattern")]
    NotApplicable(SegmentMove),
    #[error("no problem found after move {mv} from {top}, although the target is not symplectic")]
    NoProblemFound {
        top: JugglingPattern,
        mv: SegmentMove,
    },
    #[error("move {mv} from {top} leaves the symplectic locus and admits no correction")]
    UnpairedMove {
        top: JugglingPattern,
        mv: SegmentMove,
    },
    #[error("pattern {0} is not symplectic")]
    NotSymplectic(JugglingPattern),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvalidReason {
    /// Zero length or zero shift.
    Degenerate,
    /// The moved run would leave the grid (`j + ℓ + s > n`).
    GridOverflow,
    /// Some source vertex is not in the pattern.
    MissingSource,
    /// Some target vertex is already occupied.
    Collision,
    /// The result is not successor closed.
    NotSuccessorClosed,
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvalidReason::Degenerate => "length and shift must be positive",
            InvalidReason::GridOverflow => "moved segment leaves the grid",
            InvalidReason::MissingSource => "source vertex missing",
            InvalidReason::Collision => "target vertex already occupied",
            InvalidReason::NotSuccessorClosed => "result is not successor closed",
        })
    }
}

/// One mutation; `vertex` is 0-based, `column` 1-based, `length = ℓ + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SegmentMove {
    pub vertex: usize,
    pub column: usize,
    pub length: usize,
    pub shift: usize,
}

impl SegmentMove {
    pub fn new(vertex: usize, column: usize, length: usize, shift: usize) -> Self {
        SegmentMove {
            vertex,
            column,
            length,
            shift,
        }
    }

    /// `(vertex, column, length)`: which run is removed, regardless of shift.
    pub fn segment(&self) -> (usize, usize, usize) {
        (self.vertex, self.column, self.length)
    }
}

impl fmt::Display for SegmentMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(i={}, j={}, len={}, s={})",
            self.vertex, self.column, self.length, self.shift
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SymplecticMove {
    Single {
        mv: SegmentMove,
        target: JugglingPattern,
    },
    /// `first` leaves the symplectic locus, `second` (same shift) repairs it.
    Pair {
        first: SegmentMove,
        second: SegmentMove,
        middle: JugglingPattern,
        bottom: JugglingPattern,
    },
}

impl SymplecticMove {
    /// The symplectic pattern the move ends on.
    pub fn bottom(&self) -> &JugglingPattern {
        match self {
            SymplecticMove::Single { target, .. } => target,
            SymplecticMove::Pair { bottom, .. } => bottom,
        }
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, SymplecticMove::Pair { .. })
    }
}

/// All `(i, j)` with `j ∈ J_i` and `j = 1` or `j - 1 ∉ J_{i-1}`.
pub fn segment_starts(pattern: &JugglingPattern) -> Vec<(usize, usize)> {
    let n = pattern.n();
    let mut out = Vec::new();
    for i in 0..n {
        let here = pattern.masks()[i];
        let prev = pattern.masks()[(i + n - 1) % n];
        // Bit j-1 set here while bit j-2 unset at the previous vertex.
        let starts = here & !(prev << 1);
        let mut m = starts;
        while m != 0 {
            out.push((i, m.trailing_zeros() as usize + 1));
            m &= m - 1;
        }
    }
    out
}

fn move_masks(pattern: &JugglingPattern, mv: &SegmentMove) -> Result<Vec<u64>, InvalidReason> {
    let n = pattern.n();
    if mv.length == 0 || mv.shift == 0 || mv.column == 0 || mv.vertex >= n {
        return Err(InvalidReason::Degenerate);
    }
    if mv.column + mv.length - 1 + mv.shift > n {
        return Err(InvalidReason::GridOverflow);
    }
    let mut masks = pattern.masks().to_vec();
    for t in 0..mv.length {
        let v = (mv.vertex + t) % n;
        let bit = 1u64 << (mv.column + t - 1);
        if masks[v] & bit == 0 {
            return Err(InvalidReason::MissingSource);
        }
        masks[v] &= !bit;
    }
    for t in 0..mv.length {
        let v = (mv.vertex + t) % n;
        let bit = 1u64 << (mv.column + t + mv.shift - 1);
        if masks[v] & bit != 0 {
            return Err(InvalidReason::Collision);
        }
        masks[v] |= bit;
    }
    Ok(masks)
}

/// Applies `mv`, checking that the result is again a juggling pattern.
pub fn apply_move(
    pattern: &JugglingPattern,
    mv: &SegmentMove,
) -> Result<JugglingPattern, MutationError> {
    let invalid = |reason| MutationError::InvalidMove { mv: *mv, reason };
    let masks = move_masks(pattern, mv).map_err(invalid)?;
    JugglingPattern::from_masks(pattern.n(), pattern.k(), masks)
        .map_err(|_| invalid(InvalidReason::NotSuccessorClosed))
}

/// Every move with source `pattern`, ordered by start, then shift, then length.
pub fn downward_mutations(pattern: &JugglingPattern) -> Vec<(SegmentMove, JugglingPattern)> {
    let n = pattern.n();
    let mut out = Vec::new();
    for (i, j) in segment_starts(pattern) {
        for s in 1..=n - j {
            for len in 1..=n + 1 - j - s {
                let mv = SegmentMove::new(i, j, len, s);
                match move_masks(pattern, &mv) {
                    Ok(masks) => {
                        if let Ok(p) = JugglingPattern::from_masks(n, pattern.k(), masks) {
                            out.push((mv, p));
                        }
                    }
                    // Longer runs keep the offending vertex.
                    Err(InvalidReason::Collision | InvalidReason::MissingSource) => break,
                    Err(_) => {}
                }
            }
        }
    }
    out
}

/// Dimension of the cell `C_J`: the number of moves starting at `J`.
pub fn cell_dimension(pattern: &JugglingPattern) -> usize {
    downward_mutations(pattern).len()
}

/// Repairs a move that leaves the symplectic locus.
///
/// The problems of `J_mid = m1(J_top)` are the new vertices `e_c^{(v)}` whose
/// partner `e_{N+1-c}^{(-v)}` is present. The second move starts at the
/// partner of the last problem along the moved run (the leftmost one in the
/// partner segment), uses the same shift, and covers at least the problem
/// run; it is lengthened until the result is successor closed.
pub fn correction_move(
    top: &JugglingPattern,
    m1: &SegmentMove,
) -> Result<(SegmentMove, JugglingPattern), MutationError> {
    if !is_symplectic(top)? {
        return Err(MutationError::NotSymplectic(top.clone()));
    }
    let mid = apply_move(top, m1)?;
    if is_symplectic(&mid)? {
        return Err(MutationError::NotApplicable(*m1));
    }
    let n = top.n() as isize;
    let (i, j, s) = (m1.vertex as isize, m1.column as isize, m1.shift as isize);
    let t0 = (0..m1.length as isize)
        .rev()
        .find(|&t| mid.contains(-(i + t), n + 1 - j - t - s))
        .ok_or_else(|| MutationError::NoProblemFound {
            top: top.clone(),
            mv: *m1,
        })?;
    let vertex = (-(i + t0)).rem_euclid(n) as usize;
    let column = (n + 1 - j - t0 - s) as usize;
    let unpaired = || MutationError::UnpairedMove {
        top: top.clone(),
        mv: *m1,
    };
    for length in (t0 as usize + 1).. {
        if column + length - 1 + m1.shift > top.n() {
            break;
        }
        let m2 = SegmentMove::new(vertex, column, length, m1.shift);
        match apply_move(&mid, &m2) {
            Ok(bottom) => {
                return if is_symplectic(&bottom)? {
                    Ok((m2, bottom))
                } else {
                    Err(unpaired())
                };
            }
            Err(MutationError::InvalidMove {
                reason: InvalidReason::NotSuccessorClosed,
                ..
            }) => continue,
            Err(_) => break,
        }
    }
    Err(unpaired())
}

/// Symplectic moves out of a symplectic pattern: single moves staying in the
/// locus, and correction pairs counted once per unordered pair of segments.
pub fn symplectic_moves(pattern: &JugglingPattern) -> Result<Vec<SymplecticMove>, MutationError> {
    if !is_symplectic(pattern)? {
        return Err(MutationError::NotSymplectic(pattern.clone()));
    }
    type PairKey = (JugglingPattern, [(usize, usize, usize); 2]);
    let mut seen: HashSet<PairKey> = HashSet::new();
    let mut out = Vec::new();
    for (mv, target) in downward_mutations(pattern) {
        if is_symplectic(&target)? {
            out.push(SymplecticMove::Single { mv, target });
            continue;
        }
        let (m2, bottom) = correction_move(pattern, &mv)?;
        let mut segs = [mv.segment(), m2.segment()];
        segs.sort();
        if seen.insert((bottom.clone(), segs)) {
            out.push(SymplecticMove::Pair {
                first: mv,
                second: m2,
                middle: target,
                bottom,
            });
        }
    }
    Ok(out)
}

/// Dimension of `C_J^sp`: the number of symplectic moves starting at `J`.
pub fn symplectic_cell_dimension(pattern: &JugglingPattern) -> Result<usize, MutationError> {
    Ok(symplectic_moves(pattern)?.len())
}
