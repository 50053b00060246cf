//! Points `V = (V_i)` of `X(k, N)`, stored as spanning column blocks.

use super::forms::{omega, tau1};
use super::lie::EndoTuple;
use super::matrix::{rat, RationalMatrix};
use super::AlgError;
use crate::patterns::JugglingPattern;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverPoint {
    n: usize,
    k: usize,
    blocks: Vec<RationalMatrix>,
}

impl QuiverPoint {
    /// Checks shapes, full column rank and `τ₁ V_i ⊆ V_{i+1}`.
    pub fn new(blocks: Vec<RationalMatrix>) -> Result<Self, AlgError> {
        let n = blocks.len();
        let k = blocks
            .first()
            .map(|b| b.cols())
            .ok_or(AlgError::ShapeMismatch)?;
        if blocks.iter().any(|b| b.rows() != n || b.cols() != k) {
            return Err(AlgError::ShapeMismatch);
        }
        for (vertex, b) in blocks.iter().enumerate() {
            if b.rank() != k {
                return Err(AlgError::RankDeficient { vertex });
            }
        }
        let t = tau1(n);
        for vertex in 0..n {
            let image = &t * &blocks[vertex];
            if !image.column_span_within(&blocks[(vertex + 1) % n]) {
                return Err(AlgError::NotInvariant { vertex });
            }
        }
        Ok(QuiverPoint { n, k, blocks })
    }

    /// The coordinate point `p_J`: block `i` holds `e_j` for `j ∈ J_i`.
    pub fn coordinate(pattern: &JugglingPattern) -> Self {
        let n = pattern.n();
        let blocks = (0..n)
            .map(|i| {
                let cols: Vec<usize> = pattern.set(i as isize).elements().collect();
                RationalMatrix::from_fn(n, cols.len(), |r, c| rat((r + 1 == cols[c]) as i64))
            })
            .collect();
        QuiverPoint {
            n,
            k: pattern.k(),
            blocks,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[RationalMatrix] {
        &self.blocks
    }

    /// Block at a vertex taken modulo `n`.
    pub fn block(&self, vertex: isize) -> &RationalMatrix {
        &self.blocks[vertex.rem_euclid(self.n as isize) as usize]
    }

    /// `V ⊆ σV`, i.e. `V_iᵗ Ω V_{-i} = 0` for every vertex.
    pub fn is_isotropic(&self) -> Result<bool, AlgError> {
        let o = omega(self.n)?;
        Ok((0..self.n as isize).all(|i| {
            let g = &(&self.block(i).transpose() * &o) * self.block(-i);
            g.is_zero()
        }))
    }

    /// `σV = (V_{-i}^⊥)_i`, a point of rank `N - k`.
    pub fn sigma(&self) -> Result<Self, AlgError> {
        let o = omega(self.n)?;
        let blocks = (0..self.n as isize)
            .map(|i| (&self.block(-i).transpose() * &o).kernel())
            .collect();
        Ok(QuiverPoint {
            n: self.n,
            k: self.n - self.k,
            blocks,
        })
    }

    /// `A · V = (A_i V_i)_i` for an automorphism tuple.
    pub fn act(&self, a: &EndoTuple) -> Self {
        let blocks = self
            .blocks
            .iter()
            .zip(a.blocks())
            .map(|(v, ai)| ai * v)
            .collect();
        QuiverPoint {
            n: self.n,
            k: self.k,
            blocks,
        }
    }

    /// Same subspace at every vertex.
    pub fn same_point(&self, other: &Self) -> bool {
        self.n == other.n
            && self.k == other.k
            && self
                .blocks
                .iter()
                .zip(&other.blocks)
                .all(|(a, b)| a.same_column_span(b))
    }
}
