//! Quiver automorphisms from their first columns, and the equations that
//! cut out the form-preserving ones.

use num::Zero;
use rand::Rng;

use super::forms::omega;
use super::lie::{lie_basis, EndoTuple};
use super::matrix::{random_nonzero, random_rational, rat, Rational, RationalMatrix};
use super::AlgError;

fn check_shape(cols: &[Vec<Rational>]) -> Result<usize, AlgError> {
    let n = cols.len();
    if n == 0 || cols.iter().any(|c| c.len() != n) {
        return Err(AlgError::ShapeMismatch);
    }
    if let Some(vertex) = cols.iter().position(|c| c[0].is_zero()) {
        return Err(AlgError::SingularDiagonal { vertex });
    }
    Ok(n)
}

/// Whether first-column data `cols[i][j - 1] = a_j^{(i)}` defines a
/// form-preserving automorphism:
///
/// * `a_1^{(i)} a_1^{(j)} = 1` whenever `i + j ≡ 1`;
/// * `Σ_{ℓ=0}^{r-1} (-1)^ℓ a_{1+ℓ}^{(i)} a_{r-ℓ}^{(r-i)} = 0` for `r = 2..N`.
pub fn check_aut_equations(cols: &[Vec<Rational>]) -> Result<bool, AlgError> {
    let n = check_shape(cols)?;
    if n % 2 != 0 {
        return Err(AlgError::OddSize(n));
    }
    let at = |i: isize| &cols[i.rem_euclid(n as isize) as usize];
    for i in 0..n as isize {
        if &at(i)[0] * &at(1 - i)[0] != rat(1) {
            return Ok(false);
        }
        for r in 2..=n {
            let other = at(r as isize - i);
            let mut sum = rat(0);
            for l in 0..r {
                let term = &at(i)[l] * &other[r - 1 - l];
                if l % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            if !sum.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The automorphism with `(A_i)_{s,t} = a_{s-t+1}^{(i-t+1)}` for `s ≥ t`.
pub fn build_aut_from_tuple(cols: &[Vec<Rational>]) -> Result<EndoTuple, AlgError> {
    let n = check_shape(cols)?;
    let blocks = (0..n)
        .map(|i| {
            RationalMatrix::from_fn(n, n, |s, t| {
                if s >= t {
                    let v = (i + n - t % n) % n;
                    cols[v][s - t].clone()
                } else {
                    rat(0)
                }
            })
        })
        .collect();
    EndoTuple::new(blocks)
}

pub fn first_columns(a: &EndoTuple) -> Vec<Vec<Rational>> {
    a.blocks().iter().map(|b| b.column(0)).collect()
}

/// `A_iᵗ Ω A_{-i} = Ω` for every vertex, i.e. `(A_i v, A_{-i} w) = (v, w)`.
pub fn preserves_form(a: &EndoTuple) -> Result<bool, AlgError> {
    let o = omega(a.n())?;
    Ok((0..a.n() as isize).all(|i| &(&a.block(i).transpose() * &o) * a.block(-i) == o))
}

/// A random element of `G^sp`: a torus element with `λ_b λ_{1-b} = 1` times
/// the exponential of a random combination of the nilpotent `y(a, b)`, `a ≥ 2`.
pub fn random_gsp_element<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<EndoTuple, AlgError> {
    if n % 2 != 0 {
        return Err(AlgError::OddSize(n));
    }
    let mut lambda = vec![rat(0); n];
    for b in 0..n {
        let partner = (n + 1 - b) % n;
        if lambda[b].is_zero() {
            let l = random_nonzero(rng);
            lambda[partner] = l.recip();
            lambda[b] = l;
        }
    }
    let torus_cols: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut c = vec![rat(0); n];
            c[0] = lambda[i].clone();
            c
        })
        .collect();
    let torus = build_aut_from_tuple(&torus_cols)?;

    let basis = lie_basis(n, true)?;
    let mut xi = EndoTuple::zero(n);
    // y(1, b) are the diagonal directions; the rest are strictly lower triangular.
    for (idx, y) in basis.iter().enumerate() {
        if idx < n / 2 {
            continue;
        }
        xi = xi.add(&y.scale(&random_rational(rng)));
    }
    let unipotent = xi
        .exp_nilpotent()
        .expect("strictly lower triangular blocks are nilpotent");
    Ok(torus.compose(&unipotent))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn identity_cols(n: usize) -> Vec<Vec<Rational>> {
        (0..n)
            .map(|_| (0..n).map(|j| rat((j == 0) as i64)).collect())
            .collect()
    }

    #[test]
    fn identity_tuple() {
        for n in [2, 4, 6] {
            let c = identity_cols(n);
            assert!(check_aut_equations(&c).unwrap());
            assert_eq!(build_aut_from_tuple(&c).unwrap(), EndoTuple::identity(n));
        }
    }

    #[test]
    fn singular_diagonal() {
        let mut c = identity_cols(4);
        c[2][0] = rat(0);
        assert_eq!(
            check_aut_equations(&c),
            Err(AlgError::SingularDiagonal { vertex: 2 })
        );
        assert!(build_aut_from_tuple(&c).is_err());
    }

    #[test]
    fn built_tuples_are_equivariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2, 4, 6] {
            let cols: Vec<Vec<Rational>> = (0..n)
                .map(|_| {
                    let mut c: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng)).collect();
                    c[0] = random_nonzero(&mut rng);
                    c
                })
                .collect();
            let a = build_aut_from_tuple(&cols).unwrap();
            assert!(a.is_equivariant());
            assert_eq!(first_columns(&a), cols);
        }
    }

    #[test]
    fn sampled_gsp_elements_satisfy_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2, 4, 6] {
            for _ in 0..10 {
                let a = random_gsp_element(n, &mut rng).unwrap();
                assert!(a.is_equivariant());
                assert!(preserves_form(&a).unwrap());
                assert_eq!(a.sigma_group().unwrap().unwrap(), a);
                let cols = first_columns(&a);
                assert!(check_aut_equations(&cols).unwrap());
                assert_eq!(build_aut_from_tuple(&cols).unwrap(), a);
            }
        }
    }

    #[test]
    fn equations_match_form_preservation() {
        // Random perturbations of symplectic data: the equations and the
        // direct Gram-matrix check must agree either way.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in [2, 4, 6] {
            for _ in 0..20 {
                let mut cols = first_columns(&random_gsp_element(n, &mut rng).unwrap());
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                let bump = random_nonzero(&mut rng);
                cols[i][j] = &cols[i][j] + &bump;
                if cols[i][0].is_zero() {
                    continue;
                }
                let a = build_aut_from_tuple(&cols).unwrap();
                assert_eq!(
                    check_aut_equations(&cols).unwrap(),
                    preserves_form(&a).unwrap()
                );
            }
        }
    }

    #[test]
    fn trivial_instances_r_equals_2i() {
        // For r = 2i the alternating sum pairs a_{1+ℓ} a_{r-ℓ} with its own
        // mirror term of opposite sign, whatever the data.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let n = 6;
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| random_nonzero(&mut rng)).collect())
            .collect();
        for i in 1..=n / 2 {
            let r = 2 * i;
            let mut sum = rat(0);
            for l in 0..r {
                let term = &cols[i % n][l] * &cols[(r - i) % n][r - 1 - l];
                if l % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            assert!(sum.is_zero());
        }
    }
}
