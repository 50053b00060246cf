//! Juggling patterns: cyclic tuples of `k`-subsets of `[n]` closed under the
//! successor rule `j ∈ J_i, j < n  ⇒  j + 1 ∈ J_{i+1}`.
//!
//! Vertices are 0-based (`i ∈ Z_n`), columns/elements are 1-based. A pattern
//! doubles as the successor-closed subquiver of the coefficient quiver that
//! contains `e_j^{(i)}` exactly when `j ∈ J_i`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported ambient dimension (one machine word per subset).
pub const MAX_AMBIENT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("ambient dimension {0} is outside 1..=64")]
    AmbientOutOfRange(usize),
    #[error("element {element} does not lie in [1, {ambient}]")]
    ElementOutOfRange { element: usize, ambient: usize },
    #[error("cardinality mismatch: expected {expected}, found {found}")]
    CardinalityMismatch { expected: usize, found: usize },
    #[error("juggling condition fails at vertex {vertex}: {element} is present but {} is missing at the next vertex", .element + 1)]
    JugglingViolation { vertex: usize, element: usize },
    #[error("ambient dimension {0} is odd")]
    OddAmbient(usize),
    #[error("rank {k} exceeds half the ambient dimension {ambient}")]
    RankTooLarge { k: usize, ambient: usize },
    #[error("patterns or subsets have different shapes")]
    ShapeMismatch,
}

/// A subset of `[n]` stored as a bitmask; element `j` is bit `j - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSubset {
    ambient: u8,
    mask: u64,
}

#[inline]
fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn check_ambient(n: usize) -> Result<(), PatternError> {
    if n == 0 || n > MAX_AMBIENT {
        Err(PatternError::AmbientOutOfRange(n))
    } else {
        Ok(())
    }
}

impl BitSubset {
    pub fn from_mask(ambient: usize, mask: u64) -> Result<Self, PatternError> {
        check_ambient(ambient)?;
        if mask & !full_mask(ambient) != 0 {
            let element = 64 - (mask & !full_mask(ambient)).leading_zeros() as usize;
            return Err(PatternError::ElementOutOfRange { element, ambient });
        }
        Ok(BitSubset {
            ambient: ambient as u8,
            mask,
        })
    }

    pub fn from_elements(ambient: usize, elements: &[usize]) -> Result<Self, PatternError> {
        check_ambient(ambient)?;
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e > ambient {
                return Err(PatternError::ElementOutOfRange {
                    element: e,
                    ambient,
                });
            }
            mask |= 1 << (e - 1);
        }
        Ok(BitSubset {
            ambient: ambient as u8,
            mask,
        })
    }

    pub fn empty(ambient: usize) -> Result<Self, PatternError> {
        Self::from_mask(ambient, 0)
    }

    pub fn full(ambient: usize) -> Result<Self, PatternError> {
        check_ambient(ambient)?;
        Self::from_mask(ambient, full_mask(ambient))
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient as usize
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.mask
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    #[inline]
    pub fn contains(&self, element: usize) -> bool {
        element >= 1 && element <= self.ambient() && self.mask >> (element - 1) & 1 == 1
    }

    #[inline]
    pub fn is_subset(&self, other: &BitSubset) -> bool {
        self.mask & !other.mask == 0
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        let mut m = self.mask;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(b + 1)
            }
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements().collect()
    }

    /// `{j + 1 : j ∈ self, j < n}`, the image under `τ₁`.
    #[inline]
    pub fn successor(&self) -> BitSubset {
        BitSubset {
            ambient: self.ambient,
            mask: (self.mask << 1) & full_mask(self.ambient()),
        }
    }

    /// The tilde map `i ↦ n - i + 1` applied elementwise.
    pub fn reversed(&self) -> BitSubset {
        let n = self.ambient();
        BitSubset {
            ambient: self.ambient,
            mask: self.mask.reverse_bits() >> (64 - n),
        }
    }

    pub fn complement(&self) -> BitSubset {
        BitSubset {
            ambient: self.ambient,
            mask: !self.mask & full_mask(self.ambient()),
        }
    }

    /// True when the subset contains no pair `(a, n + 1 - a)`.
    pub fn is_isotropic(&self) -> Result<bool, PatternError> {
        Ok(self.is_subset(&rmap_subset(self)?))
    }
}

impl fmt::Debug for BitSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, e) in self.elements().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for BitSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Gale order on `k`-subsets: sorted elementwise `a_i ≤ b_i`.
pub fn gale_leq(a: &BitSubset, b: &BitSubset) -> Result<bool, PatternError> {
    if a.ambient != b.ambient {
        return Err(PatternError::ShapeMismatch);
    }
    if a.len() != b.len() {
        return Err(PatternError::CardinalityMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(gale_leq_masks(a.mask, b.mask))
}

/// `a ≤ b` in the Gale order iff every upper interval `[t, n]` holds at least as
/// many elements of `b` as of `a`.
#[inline]
fn gale_leq_masks(a: u64, b: u64) -> bool {
    let mut ca = 0u32;
    let mut cb = 0u32;
    let mut top = 64 - (a | b).leading_zeros();
    while top > 0 {
        top -= 1;
        ca += (a >> top & 1) as u32;
        cb += (b >> top & 1) as u32;
        if ca > cb {
            return false;
        }
    }
    true
}

/// `RI = [2n] \ {2n - i + 1 : i ∈ I}`.
pub fn rmap_subset(subset: &BitSubset) -> Result<BitSubset, PatternError> {
    if subset.ambient() % 2 != 0 {
        return Err(PatternError::OddAmbient(subset.ambient()));
    }
    Ok(subset.reversed().complement())
}

/// A `(k, n)`-juggling pattern.
///
/// Ordering (`Ord`) is the canonical enumeration order: lexicographic on the
/// masks of `J_0, J_1, …`. It is unrelated to the Gale-type partial order,
/// which is [`jp_leq`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JugglingPattern {
    n: u8,
    k: u8,
    masks: Vec<u64>,
}

impl JugglingPattern {
    /// Validates a cyclic array of subsets as a `(k, n)`-pattern with `n` the
    /// number of vertices (which must equal each subset's ambient size).
    pub fn new(k: usize, sets: &[BitSubset]) -> Result<Self, PatternError> {
        let n = sets.len();
        check_ambient(n)?;
        if sets.iter().any(|s| s.ambient() != n) {
            return Err(PatternError::ShapeMismatch);
        }
        Self::from_masks(n, k, sets.iter().map(|s| s.mask).collect())
    }

    /// Like [`JugglingPattern::new`] with `k = |J_0|`.
    pub fn from_sets(sets: &[BitSubset]) -> Result<Self, PatternError> {
        let k = sets.first().map(|s| s.len()).unwrap_or(0);
        Self::new(k, sets)
    }

    /// Builds from 1-based element lists, one per vertex.
    pub fn from_lists(lists: &[&[usize]]) -> Result<Self, PatternError> {
        let n = lists.len();
        let sets = lists
            .iter()
            .map(|l| BitSubset::from_elements(n, l))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_sets(&sets)
    }

    pub fn from_masks(n: usize, k: usize, masks: Vec<u64>) -> Result<Self, PatternError> {
        check_ambient(n)?;
        if masks.len() != n {
            return Err(PatternError::ShapeMismatch);
        }
        if k > n {
            return Err(PatternError::CardinalityMismatch {
                expected: n,
                found: k,
            });
        }
        let full = full_mask(n);
        for (i, &m) in masks.iter().enumerate() {
            if m & !full != 0 {
                let element = 64 - (m & !full).leading_zeros() as usize;
                return Err(PatternError::ElementOutOfRange {
                    element,
                    ambient: n,
                });
            }
            let found = m.count_ones() as usize;
            if found != k {
                let _ = i;
                return Err(PatternError::CardinalityMismatch { expected: k, found });
            }
        }
        for i in 0..n {
            let succ = (masks[i] << 1) & full;
            let next = masks[(i + 1) % n];
            let missing = succ & !next;
            if missing != 0 {
                let element = missing.trailing_zeros() as usize;
                return Err(PatternError::JugglingViolation { vertex: i, element });
            }
        }
        Ok(JugglingPattern {
            n: n as u8,
            k: k as u8,
            masks,
        })
    }

    /// Unchecked constructor for masks already known to form a pattern.
    pub(crate) fn from_masks_unchecked(n: usize, k: usize, masks: Vec<u64>) -> Self {
        debug_assert!(Self::from_masks(n, k, masks.clone()).is_ok());
        JugglingPattern {
            n: n as u8,
            k: k as u8,
            masks,
        }
    }

    /// The constant pattern `{n - k + 1, …, n}`, the bottom of the order.
    pub fn minimal(k: usize, n: usize) -> Result<Self, PatternError> {
        check_ambient(n)?;
        if k > n {
            return Err(PatternError::CardinalityMismatch {
                expected: n,
                found: k,
            });
        }
        let m = full_mask(n) & !full_mask(n - k);
        let m = if k == 0 { 0 } else { m };
        Ok(Self::from_masks_unchecked(n, k, vec![m; n]))
    }

    /// The maximal pattern generated by `J_0 = seed`: every element wraps from
    /// `n` back to `1`, so `J_i` is `seed` rotated by `i`.
    pub fn maximal_from_seed(seed: &BitSubset) -> Self {
        let n = seed.ambient();
        let k = seed.len();
        let full = full_mask(n);
        let masks = (0..n)
            .map(|i| {
                if i == 0 {
                    seed.mask
                } else {
                    ((seed.mask << i) | (seed.mask >> (n - i))) & full
                }
            })
            .collect();
        Self::from_masks_unchecked(n, k, masks)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k as usize
    }

    #[inline]
    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    /// `J_i` with the vertex taken modulo `n`.
    #[inline]
    pub fn set(&self, vertex: isize) -> BitSubset {
        BitSubset {
            ambient: self.n,
            mask: self.masks[self.vertex(vertex)],
        }
    }

    pub fn sets(&self) -> Vec<BitSubset> {
        (0..self.n()).map(|i| self.set(i as isize)).collect()
    }

    #[inline]
    pub fn vertex(&self, vertex: isize) -> usize {
        vertex.rem_euclid(self.n as isize) as usize
    }

    /// Whether `e_column^{(vertex)}` lies in the subquiver.
    #[inline]
    pub fn contains(&self, vertex: isize, column: isize) -> bool {
        column >= 1
            && column <= self.n as isize
            && self.masks[self.vertex(vertex)] >> (column - 1) & 1 == 1
    }

    pub fn lists(&self) -> Vec<Vec<usize>> {
        self.sets().iter().map(|s| s.to_vec()).collect()
    }

    /// Total number of grid vertices, `n·k`.
    pub fn grid_size(&self) -> usize {
        self.n() * self.k()
    }
}

impl fmt::Debug for JugglingPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.n() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.set(i as isize))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for JugglingPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct PatternJson {
    n: usize,
    k: usize,
    sets: Vec<Vec<usize>>,
}

impl Serialize for JugglingPattern {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PatternJson {
            n: self.n(),
            k: self.k(),
            sets: self.lists(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for JugglingPattern {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = PatternJson::deserialize(deserializer)?;
        if raw.sets.len() != raw.n {
            return Err(serde::de::Error::custom(PatternError::ShapeMismatch));
        }
        let sets = raw
            .sets
            .iter()
            .map(|l| BitSubset::from_elements(raw.n, l))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        JugglingPattern::new(raw.k, &sets).map_err(serde::de::Error::custom)
    }
}

/// `J ≤ J'` iff `J'_i ≤ J_i` in the Gale order for every vertex.
pub fn jp_leq(lower: &JugglingPattern, upper: &JugglingPattern) -> Result<bool, PatternError> {
    if lower.n != upper.n || lower.k != upper.k {
        return Err(PatternError::ShapeMismatch);
    }
    Ok(jp_leq_unchecked(lower, upper))
}

#[inline]
pub(crate) fn jp_leq_unchecked(lower: &JugglingPattern, upper: &JugglingPattern) -> bool {
    lower
        .masks
        .iter()
        .zip(&upper.masks)
        .all(|(&l, &u)| gale_leq_masks(u, l))
}

fn require_even(n: usize) -> Result<(), PatternError> {
    if n % 2 != 0 {
        Err(PatternError::OddAmbient(n))
    } else {
        Ok(())
    }
}

/// `(RJ)_i = R(J_{-i})`, a `(2n - k, 2n)`-pattern.
pub fn rmap_pattern(pattern: &JugglingPattern) -> Result<JugglingPattern, PatternError> {
    let n = pattern.n();
    require_even(n)?;
    let masks = (0..n as isize)
        .map(|i| rmap_subset(&pattern.set(-i)).map(|s| s.mask))
        .collect::<Result<Vec<_>, _>>()?;
    JugglingPattern::from_masks(n, n - pattern.k(), masks)
}

/// `J ⊆ RJ`, i.e. `p_J` is an isotropic point.
pub fn is_symplectic(pattern: &JugglingPattern) -> Result<bool, PatternError> {
    let n = pattern.n();
    require_even(n)?;
    Ok((0..n as isize).all(|i| {
        let r = pattern.set(-i).reversed().complement();
        pattern.set(i).is_subset(&r)
    }))
}

/// The pairwise formulation of [`is_symplectic`]: no `a ∈ J_i` with
/// `2n + 1 - a ∈ J_{-i}`.
pub fn has_no_dual_pair(pattern: &JugglingPattern) -> Result<bool, PatternError> {
    let n = pattern.n();
    require_even(n)?;
    for i in 0..n as isize {
        for a in pattern.set(i).elements() {
            if pattern.contains(-i, (n + 1 - a) as isize) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `n ∈ J_i ⇒ 1 ∈ J_{i+1}` for every vertex.
pub fn is_maximal(pattern: &JugglingPattern) -> bool {
    let n = pattern.n() as isize;
    (0..n).all(|i| !pattern.contains(i, n) || pattern.contains(i + 1, 1))
}

/// All `k`-subsets of `[n]` as masks, increasing numerically.
pub fn k_subset_masks(k: usize, n: usize) -> Vec<u64> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    // Gosper's hack walks same-popcount masks in increasing order.
    let mut out = Vec::new();
    let mut m: u64 = full_mask(k);
    let limit = full_mask(n);
    loop {
        out.push(m);
        let c = m & m.wrapping_neg();
        let r = m.wrapping_add(c);
        if r == 0 || r > limit {
            break;
        }
        let next = (((r ^ m) >> 2) / c) | r;
        if next > limit {
            break;
        }
        m = next;
    }
    out
}

/// Depth-first enumerator of `JP(k, n)` in canonical order.
///
/// At vertex `i + 1` only subsets containing the successor image of `J_i` are
/// tried; the cycle is closed by a membership check at vertex 0.
pub struct PatternIter {
    n: usize,
    k: usize,
    full: u64,
    candidates: Vec<u64>,
    positions: Vec<usize>,
    masks: Vec<u64>,
    done: bool,
}

impl Iterator for PatternIter {
    type Item = JugglingPattern;

    fn next(&mut self) -> Option<JugglingPattern> {
        loop {
            if self.done {
                return None;
            }
            let depth = self.masks.len();
            if depth == self.n {
                let closes = (self.masks[self.n - 1] << 1) & self.full & !self.masks[0] == 0;
                let found = closes.then(|| {
                    JugglingPattern::from_masks_unchecked(self.n, self.k, self.masks.clone())
                });
                self.masks.pop();
                if found.is_some() {
                    return found;
                }
                continue;
            }
            let forced = if depth == 0 {
                0
            } else {
                (self.masks[depth - 1] << 1) & self.full
            };
            if self.positions.len() <= depth {
                self.positions.push(0);
            }
            let mut pos = self.positions[depth];
            while pos < self.candidates.len() && self.candidates[pos] & forced != forced {
                pos += 1;
            }
            if pos == self.candidates.len() {
                self.positions.pop();
                if depth == 0 {
                    self.done = true;
                    return None;
                }
                self.masks.pop();
                continue;
            }
            self.positions[depth] = pos + 1;
            self.masks.push(self.candidates[pos]);
        }
    }
}

/// Streams every `(k, n)`-juggling pattern exactly once, in canonical order.
pub fn enumerate_jp(k: usize, n: usize) -> Result<PatternIter, PatternError> {
    check_ambient(n)?;
    if k > n {
        return Err(PatternError::CardinalityMismatch {
            expected: n,
            found: k,
        });
    }
    Ok(PatternIter {
        n,
        k,
        full: full_mask(n),
        candidates: k_subset_masks(k, n),
        positions: Vec::with_capacity(n),
        masks: Vec::with_capacity(n),
        done: false,
    })
}

/// Symplectic patterns of `JP(k, n)` in canonical order (`n` even, `k ≤ n/2`).
pub fn enumerate_symplectic(k: usize, n: usize) -> Result<Vec<JugglingPattern>, PatternError> {
    require_even(n)?;
    if 2 * k > n {
        return Err(PatternError::RankTooLarge { k, ambient: n });
    }
    Ok(enumerate_jp(k, n)?
        .filter(|p| is_symplectic(p).unwrap_or(false))
        .collect())
}

/// The maximal symplectic patterns of `JP(k, 2n)`, one per isotropic seed
/// `J_0`, in increasing seed-mask order.
pub fn top_symplectic_patterns(k: usize, n: usize) -> Result<Vec<JugglingPattern>, PatternError> {
    check_ambient(n)?;
    require_even(n)?;
    if 2 * k > n {
        return Err(PatternError::RankTooLarge { k, ambient: n });
    }
    let mut out = Vec::new();
    for m in k_subset_masks(k, n) {
        let seed = BitSubset::from_mask(n, m)?;
        if seed.is_isotropic()? {
            let p = JugglingPattern::maximal_from_seed(&seed);
            debug_assert!(is_maximal(&p) && is_symplectic(&p).unwrap());
            out.push(p);
        }
    }
    Ok(out)
}
