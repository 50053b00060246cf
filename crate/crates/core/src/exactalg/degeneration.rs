//! Explicit curves inside cells: degenerations along moves and the generic
//! points of the maximal cells of `X(1, N)`.

use num::Zero;

use super::matrix::{rat, Rational, RationalMatrix};
use super::point::QuiverPoint;
use super::AlgError;
use crate::mutations::{apply_move, SegmentMove, SymplecticMove};
use crate::patterns::JugglingPattern;

/// `V(t)`: at vertex `a` the span of `e_j` for `j ∈ J_bot ∩ J_top` and of
/// `e_{j-s} + t·e_j` for `j ∈ J_bot \ J_top`. `V(0) = p_top`, and `p_bot` is
/// the limit `t → ∞`.
///
/// This uses the same coefficient `t` on every moved vertex, which keeps the
/// point isotropic only for odd `s`; [`degeneration_path`] corrects the sign
/// on the repairing segment of a pair.
pub fn path_between(
    top: &JugglingPattern,
    bottom: &JugglingPattern,
    shift: usize,
    t: &Rational,
) -> Result<QuiverPoint, AlgError> {
    signed_path(top, bottom, shift, |_, _| t.clone())
}

/// As [`path_between`], with coefficient `coeff(a, j)` on `e_j^{(a)}`.
fn signed_path(
    top: &JugglingPattern,
    bottom: &JugglingPattern,
    shift: usize,
    coeff: impl Fn(usize, usize) -> Rational,
) -> Result<QuiverPoint, AlgError> {
    let n = top.n();
    if bottom.n() != n || bottom.k() != top.k() || shift == 0 {
        return Err(AlgError::ShapeMismatch);
    }
    if top.k() == 0 {
        return Ok(QuiverPoint::coordinate(top));
    }
    let mut blocks = Vec::with_capacity(n);
    for a in 0..n {
        let (jt, jb) = (top.set(a as isize), bottom.set(a as isize));
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(top.k());
        for j in jb.elements() {
            let mut v = vec![rat(0); n];
            if jt.contains(j) {
                v[j - 1] = rat(1);
            } else {
                let src = j
                    .checked_sub(shift)
                    .filter(|&src| src >= 1 && jt.contains(src) && !jb.contains(src));
                let Some(src) = src else {
                    return Err(AlgError::MoveNotApplicable(format!(
                        "column {j} at vertex {a} has no source {shift} columns up"
                    )));
                };
                v[src - 1] = rat(1);
                v[j - 1] = coeff(a, j);
            }
            cols.push(v);
        }
        blocks.push(RationalMatrix::from_columns(n, &cols));
    }
    QuiverPoint::new(blocks)
}

/// The path along a single mutation (symplectic or not).
pub fn segment_path(
    top: &JugglingPattern,
    mv: &SegmentMove,
    t: &Rational,
) -> Result<QuiverPoint, AlgError> {
    let bottom = apply_move(top, mv)?;
    path_between(top, &bottom, mv.shift, t)
}

/// The path along a symplectic move; pairs move both segments at once.
///
/// The two cross terms pairing the segments of a pair carry the signs
/// `(-1)^{j+1}` and `(-1)^{j-s+1}`, so they cancel only if the repairing
/// segment gets the coefficient `(-1)^{s+1}·t` instead of `t`.
pub fn degeneration_path(
    top: &JugglingPattern,
    mv: &SymplecticMove,
    t: &Rational,
) -> Result<QuiverPoint, AlgError> {
    match mv {
        SymplecticMove::Single { mv: m, .. } => {
            let reached = apply_move(top, m)?;
            check_reached(top, &reached, mv)?;
            path_between(top, &reached, m.shift, t)
        }
        SymplecticMove::Pair { first, second, .. } => {
            if first.shift != second.shift {
                return Err(AlgError::MoveNotApplicable(
                    "pair with unequal shifts".into(),
                ));
            }
            let s = first.shift;
            let reached = apply_move(&apply_move(top, first)?, second)?;
            check_reached(top, &reached, mv)?;
            let n = top.n();
            let repaired: Vec<(usize, usize)> = (0..second.length)
                .map(|u| ((second.vertex + u) % n, second.column + u + s))
                .collect();
            let flipped = if s % 2 == 0 { -t.clone() } else { t.clone() };
            signed_path(top, &reached, s, |a, j| {
                if repaired.contains(&(a, j)) {
                    flipped.clone()
                } else {
                    t.clone()
                }
            })
        }
    }
}

fn check_reached(
    top: &JugglingPattern,
    reached: &JugglingPattern,
    mv: &SymplecticMove,
) -> Result<(), AlgError> {
    if reached != mv.bottom() {
        return Err(AlgError::MoveNotApplicable(format!(
            "move does not lead from {top} to {}",
            mv.bottom()
        )));
    }
    Ok(())
}

/// A point of the maximal cell of `X(1, N)` whose pattern has `J_{start} = {1}`:
/// `V_{start+m} = span(τ₁^m g)`, i.e. `(0^m, g_1, …, g_{N-m})`.
pub fn line_cell_point(start: usize, g: &[Rational]) -> Result<QuiverPoint, AlgError> {
    let n = g.len();
    if n == 0 || start >= n {
        return Err(AlgError::ShapeMismatch);
    }
    if g[0].is_zero() {
        return Err(AlgError::SingularDiagonal { vertex: start });
    }
    let mut blocks = vec![RationalMatrix::zeros(n, 1); n];
    for m in 0..n {
        let v = (start + m) % n;
        blocks[v] =
            RationalMatrix::from_fn(n, 1, |r, _| if r >= m { g[r - m].clone() } else { rat(0) });
    }
    QuiverPoint::new(blocks)
}
