//! Cell dimensions as orbit dimensions: the rank of the infinitesimal action
//! `ξ ↦ (ξ_i|_{V_i} mod V_i)_i` of a Lie algebra basis at a point.

use num::Zero;
use serde::Serialize;

use super::lie::{lie_basis, EndoTuple};
use super::matrix::{Rational, RationalMatrix};
use super::point::QuiverPoint;
use super::AlgError;
use crate::mutations::{cell_dimension, symplectic_cell_dimension};
use crate::par::Exec;
use crate::patterns::{enumerate_jp, is_symplectic, JugglingPattern, PatternError};

/// Reduction modulo a subspace: the RREF of `Vᵗ` with its pivots (lowest
/// index first) and the complementary coordinates that survive.
struct Quotient {
    rows: RationalMatrix,
    pivots: Vec<usize>,
    free: Vec<usize>,
}

impl Quotient {
    fn new(v: &RationalMatrix) -> Self {
        let (rows, pivots) = v.transpose().rref();
        let free = (0..v.rows()).filter(|c| !pivots.contains(c)).collect();
        Quotient { rows, pivots, free }
    }

    /// Coordinates of `w + V` on the non-pivot positions.
    fn reduce(&self, mut w: Vec<Rational>) -> impl Iterator<Item = Rational> + '_ {
        for (r, &p) in self.pivots.iter().enumerate() {
            let f = w[p].clone();
            if f.is_zero() {
                continue;
            }
            for (c, wc) in w.iter_mut().enumerate() {
                let x = self.rows.get(r, c);
                if !x.is_zero() {
                    *wc -= &f * x;
                }
            }
        }
        self.free.iter().map(move |&c| w[c].clone())
    }
}

/// Rank of the tangent map of the `basis`-action at `point`.
pub fn orbit_dimension_at(point: &QuiverPoint, basis: &[EndoTuple]) -> usize {
    let quotients: Vec<Quotient> = point.blocks().iter().map(Quotient::new).collect();
    let rows: Vec<Vec<Rational>> = basis
        .iter()
        .map(|xi| {
            let mut row = Vec::new();
            for (i, (v, q)) in point.blocks().iter().zip(&quotients).enumerate() {
                let image = &xi.blocks()[i] * v;
                for c in 0..v.cols() {
                    row.extend(q.reduce(image.column(c)));
                }
            }
            row
        })
        .collect();
    let width = rows.first().map(Vec::len).unwrap_or(0);
    if width == 0 {
        return 0;
    }
    RationalMatrix::from_fn(rows.len(), width, |r, c| rows[r][c].clone()).rank()
}

/// Dimension of the `G`- or `G^sp`-orbit through `p_J`.
pub fn orbit_dimension(pattern: &JugglingPattern, symplectic: bool) -> Result<usize, AlgError> {
    if symplectic && !is_symplectic(pattern)? {
        return Err(AlgError::NotSymplectic(pattern.clone()));
    }
    let basis = lie_basis(pattern.n(), symplectic)?;
    Ok(orbit_dimension_at(
        &QuiverPoint::coordinate(pattern),
        &basis,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleRow {
    pub pattern: JugglingPattern,
    pub dim_comb: usize,
    pub dim_oracle: usize,
    pub agree: bool,
}

/// Compares mutation counts with orbit ranks over all of `JP(k, n)` (or its
/// symplectic part).
pub fn oracle_report(
    k: usize,
    n: usize,
    symplectic: bool,
    exec: Exec,
) -> Result<Vec<OracleRow>, AlgError> {
    if symplectic && 2 * k > n {
        return Err(PatternError::RankTooLarge { k, ambient: n }.into());
    }
    let basis = lie_basis(n, symplectic)?;
    let mut patterns: Vec<JugglingPattern> = enumerate_jp(k, n)?.collect();
    if symplectic {
        patterns.retain(|p| is_symplectic(p).unwrap_or(false));
    }
    exec.try_map(&patterns, |p| {
        let dim_comb = if symplectic {
            symplectic_cell_dimension(p)?
        } else {
            cell_dimension(p)
        };
        let dim_oracle = orbit_dimension_at(&QuiverPoint::coordinate(p), &basis);
        Ok(OracleRow {
            pattern: p.clone(),
            dim_comb,
            dim_oracle,
            agree: dim_comb == dim_oracle,
        })
    })
}
