//! Endomorphism tuples of `U_[N]` and the bases `x(a,b)`, `y(a,b)`.

use super::forms::{omega, tau1};
use super::matrix::{rat, ratio, Rational, RationalMatrix};
use super::AlgError;

/// One `N × N` block per vertex of the cyclic quiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EndoTuple {
    blocks: Vec<RationalMatrix>,
}

impl EndoTuple {
    pub fn new(blocks: Vec<RationalMatrix>) -> Result<Self, AlgError> {
        let n = blocks.len();
        if n == 0 || blocks.iter().any(|b| b.rows() != n || b.cols() != n) {
            return Err(AlgError::ShapeMismatch);
        }
        Ok(EndoTuple { blocks })
    }

    pub fn zero(n: usize) -> Self {
        EndoTuple {
            blocks: vec![RationalMatrix::zeros(n, n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        EndoTuple {
            blocks: vec![RationalMatrix::identity(n); n],
        }
    }

    pub fn n(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[RationalMatrix] {
        &self.blocks
    }

    pub fn block(&self, vertex: isize) -> &RationalMatrix {
        &self.blocks[vertex.rem_euclid(self.n() as isize) as usize]
    }

    pub fn add(&self, other: &Self) -> Self {
        EndoTuple {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        EndoTuple {
            blocks: self.blocks.iter().map(|b| b.scale(s)).collect(),
        }
    }

    /// Blockwise product `(A_i B_i)_i`.
    pub fn compose(&self, other: &Self) -> Self {
        EndoTuple {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        let blocks = self
            .blocks
            .iter()
            .map(RationalMatrix::inverse)
            .collect::<Option<Vec<_>>>()?;
        Some(EndoTuple { blocks })
    }

    /// `τ₁ A_i = A_{i+1} τ₁` for every vertex.
    pub fn is_equivariant(&self) -> bool {
        let t = tau1(self.n());
        (0..self.n() as isize).all(|i| &t * self.block(i) == self.block(i + 1) * &t)
    }

    /// `σ_g(x)_i = Ω x_{-i}ᵗ Ω`.
    pub fn sigma_g(&self) -> Result<Self, AlgError> {
        let o = omega(self.n())?;
        Ok(EndoTuple {
            blocks: (0..self.n() as isize)
                .map(|i| &(&o * &self.block(-i).transpose()) * &o)
                .collect(),
        })
    }

    /// `σ_G(A)_i = -Ω A_{-i}^{-t} Ω`; `None` if some block is singular.
    pub fn sigma_group(&self) -> Result<Option<Self>, AlgError> {
        let o = omega(self.n())?;
        let minus = -&o;
        let mut blocks = Vec::with_capacity(self.n());
        for i in 0..self.n() as isize {
            let Some(inv) = self.block(-i).inverse() else {
                return Ok(None);
            };
            blocks.push(&(&minus * &inv.transpose()) * &o);
        }
        Ok(Some(EndoTuple { blocks }))
    }

    /// Blockwise exponential; `None` unless every block is nilpotent.
    pub fn exp_nilpotent(&self) -> Option<Self> {
        let blocks = self
            .blocks
            .iter()
            .map(RationalMatrix::exp_nilpotent)
            .collect::<Option<Vec<_>>>()?;
        Some(EndoTuple { blocks })
    }

    /// All entries, block after block, row-major.
    pub fn flatten(&self) -> Vec<Rational> {
        let n = self.n();
        let mut out = Vec::with_capacity(n * n * n);
        for b in &self.blocks {
            for r in 0..n {
                for c in 0..n {
                    out.push(b.get(r, c).clone());
                }
            }
        }
        out
    }
}

/// `x(a, b)`: at vertex `b + j` it sends `e_{1+j}` to `e_{a+j}`, for
/// `0 ≤ j ≤ N - a`; `a ∈ [1, N]`, `b` is read modulo `N`.
pub fn x(a: usize, b: isize, n: usize) -> EndoTuple {
    assert!((1..=n).contains(&a), "x(a, b) needs 1 <= a <= N");
    let blocks = (0..n as isize)
        .map(|v| {
            let j = (v - b).rem_euclid(n as isize) as usize;
            let mut m = RationalMatrix::zeros(n, n);
            if a + j <= n {
                m.set(a + j - 1, j, rat(1));
            }
            m
        })
        .collect();
    EndoTuple { blocks }
}

/// `y(a, b) = ½ [x(a, b) + (-1)^a x(a, a - b)]`.
pub fn y(a: usize, b: isize, n: usize) -> EndoTuple {
    let sign = rat(if a % 2 == 0 { 1 } else { -1 });
    x(a, b, n)
        .add(&x(a, a as isize - b, n).scale(&sign))
        .scale(&ratio(1, 2))
}

/// Basis of `g` (`x(a, b)`, `N²` elements) or of `g^sp` (selected `y(a, b)`).
///
/// For `g^sp` one representative of each orbit `{b, a - b}` is kept; fixed
/// points `b ≡ a - b` survive only for even `a`, since for odd `a` they give
/// `y = 0`.
pub fn lie_basis(n: usize, symplectic: bool) -> Result<Vec<EndoTuple>, AlgError> {
    if symplectic && n % 2 != 0 {
        return Err(AlgError::OddSize(n));
    }
    let mut out = Vec::new();
    for a in 1..=n {
        for b in 0..n {
            if !symplectic {
                out.push(x(a, b as isize, n));
                continue;
            }
            let partner = (a as isize - b as isize).rem_euclid(n as isize) as usize;
            if b < partner || (b == partner && a % 2 == 0) {
                out.push(y(a, b as isize, n));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span_rank(ts: &[EndoTuple]) -> usize {
        let rows: Vec<Vec<Rational>> = ts.iter().map(EndoTuple::flatten).collect();
        let cols = rows.first().map(Vec::len).unwrap_or(0);
        RationalMatrix::from_fn(rows.len(), cols, |r, c| rows[r][c].clone()).rank()
    }

    #[test]
    fn basis_sizes() {
        for n in [2usize, 4, 6, 8] {
            let g = lie_basis(n, false).unwrap();
            assert_eq!(g.len(), n * n);
            assert_eq!(span_rank(&g), n * n);
            let h = n / 2;
            let gsp = lie_basis(n, true).unwrap();
            assert_eq!(gsp.len(), 2 * h * h + h);
            assert_eq!(span_rank(&gsp), 2 * h * h + h);
        }
        assert_eq!(lie_basis(3, true), Err(AlgError::OddSize(3)));
    }

    #[test]
    fn sigma_on_x() {
        for n in [2usize, 4, 6, 8] {
            for a in 1..=n {
                for b in 0..n as isize {
                    let s = x(a, b, n).sigma_g().unwrap();
                    let sign = rat(if a % 2 == 0 { 1 } else { -1 });
                    assert_eq!(s, x(a, a as isize - b, n).scale(&sign), "a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn y_properties() {
        for n in [2usize, 4, 6] {
            for a in 1..=n {
                for b in 0..n as isize {
                    let yy = y(a, b, n);
                    assert_eq!(yy.sigma_g().unwrap(), yy);
                    let sign = rat(if a % 2 == 0 { 1 } else { -1 });
                    assert_eq!(yy, y(a, a as isize - b, n).scale(&sign));
                    assert!(yy.is_equivariant());
                }
            }
        }
    }

    #[test]
    fn x_is_equivariant() {
        for a in 1..=4 {
            for b in 0..4 {
                assert!(x(a, b, 4).is_equivariant());
            }
        }
        let mut bad = EndoTuple::zero(4);
        bad.blocks[0].set(1, 0, rat(1));
        assert!(!bad.is_equivariant());
    }
}
