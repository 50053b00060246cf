//! A finite model of lattices in `V((t))`, `V = C^N`, and the embedding of
//! `X(k, N)` into the affine flag variety.
//!
//! Lattices are stored modulo `t^m V[t]` inside the window spanned by
//! `v_p t^d`, `p ∈ [1, N]`, `d ∈ [-m, m - 1]`; coordinate `(p, d)` sits at
//! row `(d + m)·N + p - 1`.

use num::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{rat, AlgError, QuiverPoint, Rational, RationalMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AfflagError {
    #[error("truncation depth {m} is too shallow for index {c}")]
    TruncationTooShallow { m: usize, c: isize },
    #[error("index {index} is outside [1, {n}]")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("ambient dimension {0} is odd")]
    OddAmbient(usize),
    #[error("inconsistent shapes")]
    ShapeMismatch,
    #[error(transparent)]
    Alg(#[from] AlgError),
}

#[inline]
pub fn window_index(p: usize, d: isize, n: usize, m: usize) -> usize {
    (d + m as isize) as usize * n + p - 1
}

fn unit(p: usize, d: isize, n: usize, m: usize) -> Vec<Rational> {
    let mut v = vec![rat(0); 2 * m * n];
    v[window_index(p, d, n, m)] = rat(1);
    v
}

/// `L / t^m V[t]` for a lattice `t^m V[t] ⊆ L ⊆ t^{-m} V[t]` of index `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedLattice {
    pub n: usize,
    pub m: usize,
    pub c: isize,
    pub basis: RationalMatrix,
}

impl TruncatedLattice {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// `dim L / t^m V[t] = mN + c` and the columns are independent.
    pub fn has_expected_dim(&self) -> bool {
        let expected = (self.m * self.n) as isize + self.c;
        expected >= 0 && self.dim() as isize == expected && self.basis.rank() == self.dim()
    }

    /// `t·L`, dropping what falls into `t^m V[t]`; index drops by `N`.
    pub fn times_t(&self) -> Self {
        let (n, m) = (self.n, self.m);
        let shifted = RationalMatrix::from_fn(2 * m * n, self.dim(), |r, col| {
            if r >= n {
                self.basis.get(r - n, col).clone()
            } else {
                rat(0)
            }
        });
        // Reduce to an independent spanning set.
        let (rref, pivots) = shifted.transpose().rref();
        let basis =
            RationalMatrix::from_fn(2 * m * n, pivots.len(), |r, col| rref.get(col, r).clone());
        TruncatedLattice {
            n,
            m,
            c: self.c - n as isize,
            basis,
        }
    }

    pub fn is_within(&self, other: &Self) -> bool {
        self.basis.column_span_within(&other.basis)
    }

    /// `t L ⊆ L`.
    pub fn is_t_invariant(&self) -> bool {
        self.times_t().is_within(self)
    }

    /// `t^{m-1} V[t] ⊆ L`, so multiplying by `t` is faithful in the window.
    pub fn contains_deep_part(&self) -> bool {
        let deep: Vec<Vec<Rational>> = (1..=self.n)
            .map(|p| unit(p, self.m as isize - 1, self.n, self.m))
            .collect();
        RationalMatrix::from_columns(2 * self.m * self.n, &deep).column_span_within(&self.basis)
    }
}

/// `L̊_c` for `c = Nd + r`, `0 ≤ r < N`: `v_p t^e` for `e ≥ -d` together with
/// `v_1, …, v_r` at `t^{-d-1}`.
pub fn ring_lattice(c: isize, m: usize, n: usize) -> Result<TruncatedLattice, AfflagError> {
    if n == 0 {
        return Err(AfflagError::ShapeMismatch);
    }
    let d = c.div_euclid(n as isize);
    let r = c.rem_euclid(n as isize) as usize;
    let lowest = if r > 0 { -d - 1 } else { -d };
    // Need t^{m-1} V[t] inside and nothing below t^{-m}.
    if lowest < -(m as isize) || -d > m as isize - 1 {
        return Err(AfflagError::TruncationTooShallow { m, c });
    }
    let mut cols = Vec::new();
    for e in -d..m as isize {
        for p in 1..=n {
            cols.push(unit(p, e, n, m));
        }
    }
    for p in 1..=r {
        cols.push(unit(p, -d - 1, n, m));
    }
    Ok(TruncatedLattice {
        n,
        m,
        c,
        basis: RationalMatrix::from_columns(2 * m * n, &cols),
    })
}

/// Image of `e_q` under `η_{j,d}`: `e_{N-u} ↦ v_{j+u} t^d` for `u ≤ N - j`
/// and `e_{j-u} ↦ v_u t^{d-1}` for `1 ≤ u < j`. Returns `(p, degree)`.
pub fn eta_image(j: usize, d: isize, q: usize, n: usize) -> Result<(usize, isize), AfflagError> {
    if !(1..=n).contains(&j) {
        return Err(AfflagError::IndexOutOfRange { index: j, n });
    }
    if !(1..=n).contains(&q) {
        return Err(AfflagError::IndexOutOfRange { index: q, n });
    }
    Ok(if q >= j {
        (j + n - q, d)
    } else {
        (j - q, d - 1)
    })
}

/// `η_{j,d}` as a `2mN × N` matrix.
pub fn eta(j: usize, d: isize, n: usize, m: usize) -> Result<RationalMatrix, AfflagError> {
    let mut out = RationalMatrix::zeros(2 * m * n, n);
    for q in 1..=n {
        let (p, deg) = eta_image(j, d, q, n)?;
        if deg < -(m as isize) || deg >= m as isize {
            return Err(AfflagError::TruncationTooShallow { m, c: d });
        }
        out.set(window_index(p, deg, n, m), q - 1, rat(1));
    }
    Ok(out)
}

/// Residue pairing: `(v_i t^a, v_j t^b) = δ_{a+b,-1} δ_{i+j,N+1} (-1)^{i+1}`.
pub fn residue_pair(v: &[Rational], w: &[Rational], n: usize, m: usize) -> Rational {
    let mut acc = rat(0);
    for a in -(m as isize)..m as isize {
        let b = -1 - a;
        for p in 1..=n {
            let x = &v[window_index(p, a, n, m)];
            if x.is_zero() {
                continue;
            }
            let y = &w[window_index(n + 1 - p, b, n, m)];
            if y.is_zero() {
                continue;
            }
            if p % 2 == 1 {
                acc += x * y;
            } else {
                acc -= x * y;
            }
        }
    }
    acc
}

fn pairing_vanishes(a: &TruncatedLattice, b: &TruncatedLattice) -> bool {
    let rows = 2 * a.m * a.n;
    let bcols: Vec<Vec<Rational>> = (0..b.dim()).map(|j| b.basis.column(j)).collect();
    (0..a.dim()).all(|i| {
        let v = a.basis.column(i);
        debug_assert_eq!(v.len(), rows);
        bcols
            .iter()
            .all(|w| residue_pair(&v, w, a.n, a.m).is_zero())
    })
}

/// Lattices `L_0, …, L_{N-1}`; the rest follow from `L_{c+N} = t^{-1} L_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeChain {
    pub n: usize,
    pub m: usize,
    pub lattices: Vec<TruncatedLattice>,
}

impl LatticeChain {
    /// `L_{-c} = t·L_{N-c}` for `0 ≤ c < N`.
    pub fn negative(&self, c: usize) -> TruncatedLattice {
        if c == 0 {
            self.lattices[0].clone()
        } else {
            self.lattices[self.n - c].times_t()
        }
    }
}

/// Which of the chain conditions hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub dimensions: bool,
    pub t_invariant: bool,
    pub inclusions: bool,
}

impl ChainReport {
    pub fn ok(&self) -> bool {
        self.dimensions && self.t_invariant && self.inclusions
    }
}

/// Dimension formula, `t`-invariance, `L_c ⊆ L_{c+1}` and `t L_{N-1} ⊆ L_0`.
pub fn check_chain(chain: &LatticeChain) -> ChainReport {
    let ls = &chain.lattices;
    let dimensions = ls
        .iter()
        .enumerate()
        .all(|(c, l)| l.c == c as isize && l.has_expected_dim() && l.contains_deep_part());
    let t_invariant = ls.iter().all(TruncatedLattice::is_t_invariant);
    let inclusions = ls.windows(2).all(|w| w[0].is_within(&w[1]))
        && ls.last().into_iter().all(|l| l.times_t().is_within(&ls[0]));
    ChainReport {
        dimensions,
        t_invariant,
        inclusions,
    }
}

/// `L_{-c} = L_c^⊥` for every `c`: the pairing vanishes and the dimensions
/// are complementary in the window, where the pairing is perfect.
pub fn check_symplectic_chain(chain: &LatticeChain) -> Result<bool, AfflagError> {
    if chain.n % 2 != 0 {
        return Err(AfflagError::OddAmbient(chain.n));
    }
    let total = 2 * chain.m * chain.n;
    for c in 0..chain.n {
        let lc = &chain.lattices[c];
        let neg = chain.negative(c);
        if lc.dim() + neg.dim() != total || !pairing_vanishes(&neg, lc) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Only the orthogonality half of [`check_symplectic_chain`]:
/// `L_{-c} ⊆ L_c^⊥`.
pub fn check_isotropic_chain(chain: &LatticeChain) -> Result<bool, AfflagError> {
    if chain.n % 2 != 0 {
        return Err(AfflagError::OddAmbient(chain.n));
    }
    Ok((0..chain.n).all(|c| pairing_vanishes(&chain.negative(c), &chain.lattices[c])))
}

fn build_chain(u: &QuiverPoint, m: usize, offset: usize) -> Result<LatticeChain, AfflagError> {
    let n = u.n();
    if m < 2 {
        return Err(AfflagError::TruncationTooShallow { m, c: 0 });
    }
    let mut lattices = Vec::with_capacity(n);
    for c in 0..n {
        let base = c as isize - offset as isize;
        let ring = ring_lattice(base, m, n)?;
        let (j, d) = if c >= offset {
            (c - offset + 1, -1)
        } else {
            (n + c - offset + 1, 0)
        };
        let image = &eta(j, d, n, m)? * &u.blocks()[c];
        let basis = ring.basis.hstack(&image);
        lattices.push(TruncatedLattice {
            n,
            m,
            c: base + u.k() as isize,
            basis,
        });
    }
    Ok(LatticeChain { n, m, lattices })
}

/// `(φU)_c = L̊_{c-k} ⊕ η_{j,d} U_c` with `(j, d) = (c - k + 1, -1)` for
/// `c ≥ k` and `(N + c - k + 1, 0)` for `c < k`, so that `(φU)_c` has index
/// `c`. For `k = N/2` this is `L̊_{c-n} ⊕ η_{n+1+c,0} U_c`, resp.
/// `η_{c-n+1,-1}`.
pub fn phi(u: &QuiverPoint, m: usize) -> Result<LatticeChain, AfflagError> {
    build_chain(u, m, u.k())
}

/// The chain with the offset fixed at `n = N/2` regardless of `k`; its
/// lattices have index `c - n + k`.
pub fn phi_with_offset(u: &QuiverPoint, m: usize) -> Result<LatticeChain, AfflagError> {
    if u.n() % 2 != 0 {
        return Err(AfflagError::OddAmbient(u.n()));
    }
    build_chain(u, m, u.n() / 2)
}

/// The chain `(L̊_c)_c`.
pub fn ring_chain(n: usize, m: usize) -> Result<LatticeChain, AfflagError> {
    let lattices = (0..n as isize)
        .map(|c| ring_lattice(c, m, n))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LatticeChain { n, m, lattices })
}

/// Same subspaces at every index.
pub fn same_chain(a: &LatticeChain, b: &LatticeChain) -> bool {
    a.n == b.n
        && a.lattices.len() == b.lattices.len()
        && a.lattices
            .iter()
            .zip(&b.lattices)
            .all(|(x, y)| x.c == y.c && x.basis.same_column_span(&y.basis))
}

/// Re-embeds a chain into a deeper window by padding with `t^m V[t]`.
pub fn deepen(chain: &LatticeChain, m2: usize) -> LatticeChain {
    let (n, m) = (chain.n, chain.m);
    assert!(m2 >= m, "can only deepen");
    let lattices = chain
        .lattices
        .iter()
        .map(|l| {
            let mut cols: Vec<Vec<Rational>> = (0..l.dim())
                .map(|j| {
                    let old = l.basis.column(j);
                    let mut v = vec![rat(0); 2 * m2 * n];
                    for d in -(m as isize)..m as isize {
                        for p in 1..=n {
                            v[window_index(p, d, n, m2)] = old[window_index(p, d, n, m)].clone();
                        }
                    }
                    v
                })
                .collect();
            for d in m as isize..m2 as isize {
                for p in 1..=n {
                    cols.push(unit(p, d, n, m2));
                }
            }
            TruncatedLattice {
                n,
                m: m2,
                c: l.c,
                basis: RationalMatrix::from_columns(2 * m2 * n, &cols),
            }
        })
        .collect();
    LatticeChain { n, m: m2, lattices }
}

#[derive(Serialize)]
pub struct Term {
    pub coeff: String,
    pub p: usize,
    pub d: isize,
}

/// Per index `c`, the basis vectors as `{coeff, p, d}` terms.
pub fn chain_dump(chain: &LatticeChain) -> Vec<Vec<Vec<Term>>> {
    let (n, m) = (chain.n, chain.m);
    chain
        .lattices
        .iter()
        .map(|l| {
            (0..l.dim())
                .map(|j| {
                    let v = l.basis.column(j);
                    let mut terms = Vec::new();
                    for d in -(m as isize)..m as isize {
                        for p in 1..=n {
                            let x = &v[window_index(p, d, n, m)];
                            if !x.is_zero() {
                                terms.push(Term {
                                    coeff: x.to_string(),
                                    p,
                                    d,
                                });
                            }
                        }
                    }
                    terms
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::random_rational;
    use crate::patterns::{enumerate_jp, is_symplectic, JugglingPattern};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ring_lattices() {
        let l0 = ring_lattice(0, 2, 4).unwrap();
        assert_eq!(l0.dim(), 8);
        for c in -2..=2 {
            let l = ring_lattice(c, 2, 4).unwrap();
            assert!(l.has_expected_dim() && l.is_t_invariant(), "c={c}");
        }
        // L̊_{-n} = tV[t] ⊕ span(v_1..v_n) at t^0.
        let l = ring_lattice(-2, 2, 4).unwrap();
        let mut cols: Vec<Vec<Rational>> = (1..=4).map(|p| unit(p, 1, 4, 2)).collect();
        cols.extend((1..=2).map(|p| unit(p, 0, 4, 2)));
        assert!(l
            .basis
            .same_column_span(&RationalMatrix::from_columns(16, &cols)));
        assert!(matches!(
            ring_lattice(9, 2, 4),
            Err(AfflagError::TruncationTooShallow { .. })
        ));
    }

    #[test]
    fn eta_bands() {
        let n = 6;
        for q in 1..=n {
            assert_eq!(eta_image(1, 3, q, n).unwrap(), (n + 1 - q, 3));
        }
        // η_{n+1,0}: v_{n+1..2n} at t^0 and v_1..v_n at t^{-1}.
        let mut img: Vec<(usize, isize)> =
            (1..=n).map(|q| eta_image(4, 0, q, n).unwrap()).collect();
        img.sort();
        assert_eq!(img, vec![(1, -1), (2, -1), (3, -1), (4, 0), (5, 0), (6, 0)]);
        assert!(eta_image(0, 0, 1, n).is_err());
        assert!(eta_image(7, 0, 1, n).is_err());
        assert_eq!(eta(3, 0, n, 2).unwrap().rank(), n);
    }

    #[test]
    fn eta_is_form_compatible() {
        // The form on C^N is the residue pairing of η_{n+1,0} e_a with
        // t·η_{n+1,0} e_b, up to one global sign.
        let n = 4;
        let m = 2;
        let e = eta(3, 0, n, m).unwrap();
        let o = crate::exactalg::omega(n).unwrap();
        let mut sign = None;
        for a in 0..n {
            for b in 0..n {
                let va = e.column(a);
                let wb = e.column(b);
                let mut tw = vec![rat(0); 2 * m * n];
                tw[n..].clone_from_slice(&wb[..2 * m * n - n]);
                let lhs = residue_pair(&va, &tw, n, m);
                let rhs = o.get(a, b).clone();
                if rhs.is_zero() {
                    assert!(lhs.is_zero());
                } else {
                    let s = &lhs / &rhs;
                    assert_eq!(*sign.get_or_insert(s.clone()), s);
                }
            }
        }
        assert!(sign.is_some());
    }

    #[test]
    fn residue_antisymmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let (n, m) = (4, 2);
        for _ in 0..100 {
            let v: Vec<Rational> = (0..2 * m * n).map(|_| random_rational(&mut rng)).collect();
            let w: Vec<Rational> = (0..2 * m * n).map(|_| random_rational(&mut rng)).collect();
            assert_eq!(residue_pair(&v, &w, n, m), -residue_pair(&w, &v, n, m));
        }
        let v = unit(1, 0, n, m);
        let w = unit(n, -1, n, m);
        assert_eq!(residue_pair(&v, &w, n, m), rat(1));
        assert!(residue_pair(&v, &unit(n, 0, n, m), n, m).is_zero());
    }

    #[test]
    fn minimal_point_maps_to_ring_chain() {
        for (k, n) in [(2, 4), (1, 4), (0, 4), (3, 6), (1, 6)] {
            let u = QuiverPoint::coordinate(&JugglingPattern::minimal(k, n).unwrap());
            let chain = phi(&u, 2).unwrap();
            assert!(
                same_chain(&chain, &ring_chain(n, 2).unwrap()),
                "k={k} n={n}"
            );
        }
        assert!(check_symplectic_chain(&ring_chain(4, 2).unwrap()).unwrap());
    }

    #[test]
    fn chains_for_coordinate_points_2_4() {
        for p in enumerate_jp(2, 4).unwrap() {
            let chain = phi(&QuiverPoint::coordinate(&p), 2).unwrap();
            assert!(check_chain(&chain).ok(), "{p}");
            assert_eq!(
                check_symplectic_chain(&chain).unwrap(),
                is_symplectic(&p).unwrap(),
                "{p}"
            );
            let deep = phi(&QuiverPoint::coordinate(&p), 3).unwrap();
            assert!(same_chain(&deepen(&chain, 3), &deep));
        }
    }

    #[test]
    fn dump_shape() {
        let chain = ring_chain(2, 2).unwrap();
        let dump = chain_dump(&chain);
        assert_eq!(dump.len(), 2);
        assert_eq!(dump[0].len(), 4);
        assert_eq!(dump[1].len(), 5);
    }
}
