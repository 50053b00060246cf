//! The symplectic form and the nilpotent operator `τ₁`.

use super::matrix::{rat, Rational, RationalMatrix};
use super::AlgError;

/// Gram matrix of the form: `Ω_{st} = (-1)^{s+1}` on the antidiagonal
/// `s + t = N + 1` (1-based), so the top-right entry is `1`.
pub fn omega(size: usize) -> Result<RationalMatrix, AlgError> {
    if size % 2 != 0 {
        return Err(AlgError::OddSize(size));
    }
    Ok(RationalMatrix::from_fn(size, size, |r, c| {
        if r + c + 1 == size {
            // 0-based r is s - 1, so (-1)^{s+1} = (-1)^r.
            rat(if r % 2 == 0 { 1 } else { -1 })
        } else {
            rat(0)
        }
    }))
}

/// `τ₁(e_i) = e_{i+1}`, `τ₁(e_N) = 0`.
pub fn tau1(size: usize) -> RationalMatrix {
    RationalMatrix::from_fn(size, size, |r, c| rat((r == c + 1) as i64))
}

/// `τ₁` with `z` in the top-right corner, i.e. `e_N ↦ z e_1`.
pub fn tau1z(size: usize, z: &Rational) -> RationalMatrix {
    let mut m = tau1(size);
    if size > 0 {
        m.set(0, size - 1, m.get(0, size - 1) + z);
    }
    m
}

/// `(v, w) = vᵗ Ω w`.
pub fn pairing(omega: &RationalMatrix, v: &[Rational], w: &[Rational]) -> Rational {
    v.iter()
        .zip(omega.mul_vec(w))
        .map(|(a, b)| a * b)
        .fold(rat(0), |acc, x| acc + x)
}
