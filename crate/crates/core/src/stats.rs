//! Cell counts and Poincaré polynomials of `X(k, 2n)` and `X(k, 2n)^sp`.

use serde::Serialize;

use crate::golden::{self, GoldenEntry};
use crate::mutations::{cell_dimension, symplectic_cell_dimension, MutationError};
use crate::par::Exec;
use crate::patterns::{enumerate_jp, is_maximal, is_symplectic, JugglingPattern, PatternError};

/// Statistics for one `(k, 2n)`; polynomials are ascending coefficient lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub k: usize,
    /// Ambient dimension `2n`.
    pub n: usize,
    pub chi: u64,
    pub chi_sp: u64,
    pub p: Vec<u64>,
    pub p_sp: Vec<u64>,
    pub top_dim: usize,
    pub top_dim_sp: usize,
    /// Maximal symplectic patterns (the wrap condition holds at every vertex).
    pub n_top_cells_sp: u64,
    /// Symplectic cells of dimension `top_dim_sp`.
    pub n_components_sp: u64,
    /// Dimension of the symplectic Grassmannian, `k(2n - k) - k(k - 1)/2`.
    pub gr_sp_dim: usize,
    /// Euler characteristic of the symplectic Grassmannian, `2^k · C(n, k)`.
    pub gr_sp_euler: u64,
    pub warning: Option<String>,
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

pub fn gr_sp_dim(k: usize, n: usize) -> usize {
    k * (n - k) - k * k.saturating_sub(1) / 2
}

pub fn gr_sp_euler(k: usize, n: usize) -> u64 {
    (1u64 << k) * binomial((n / 2) as u64, k as u64)
}

/// Ascending coefficient list of `Σ t^d` over the given dimensions.
pub fn histogram(dims: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut h: Vec<u64> = Vec::new();
    for d in dims {
        if h.len() <= d {
            h.resize(d + 1, 0);
        }
        h[d] += 1;
    }
    h
}

/// Renders an ascending coefficient list highest degree first, e.g. `2t + 1`.
pub fn format_polynomial(coeffs: &[u64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(d, c)| match d {
            0 => format!("{c}"),
            1 => format!("{c}t"),
            _ => format!("{c}t^{d}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Full and symplectic dimensions for every pattern of `JP(k, n)`; the
/// symplectic entry is `None` off the locus.
pub fn dimensions(
    k: usize,
    n: usize,
    exec: Exec,
) -> Result<Vec<(JugglingPattern, usize, Option<usize>)>, MutationError> {
    if n % 2 != 0 {
        return Err(PatternError::OddAmbient(n).into());
    }
    if 2 * k > n {
        return Err(PatternError::RankTooLarge { k, ambient: n }.into());
    }
    let patterns: Vec<JugglingPattern> = enumerate_jp(k, n)?.collect();
    exec.try_map(&patterns, |p| {
        let full = cell_dimension(p);
        let sp = if is_symplectic(p)? {
            Some(symplectic_cell_dimension(p)?)
        } else {
            None
        };
        Ok((p.clone(), full, sp))
    })
}

pub fn statistics(k: usize, n: usize, exec: Exec) -> Result<Stats, MutationError> {
    let dims = dimensions(k, n, exec)?;
    let p = histogram(dims.iter().map(|d| d.1));
    let p_sp = histogram(dims.iter().filter_map(|d| d.2));
    let n_top_cells_sp = dims
        .iter()
        .filter(|d| d.2.is_some() && is_maximal(&d.0))
        .count() as u64;
    let top_dim = p.len() - 1;
    let top_dim_sp = p_sp.len() - 1;
    let n_components_sp = p_sp[top_dim_sp];
    let euler = gr_sp_euler(k, n);
    let warning = (n_components_sp != euler || n_top_cells_sp != euler).then(|| {
        format!(
            "top-dimensional symplectic cells: {n_components_sp}, maximal symplectic \
             patterns: {n_top_cells_sp}, Euler characteristic of the symplectic \
             Grassmannian: {euler}"
        )
    });
    Ok(Stats {
        k,
        n,
        chi: dims.len() as u64,
        chi_sp: p_sp.iter().sum(),
        p,
        p_sp,
        top_dim,
        top_dim_sp,
        n_top_cells_sp,
        n_components_sp,
        gr_sp_dim: gr_sp_dim(k, n),
        gr_sp_euler: euler,
        warning,
    })
}

/// Names of the fields that differ from the reference entry.
pub fn golden_mismatches(stats: &Stats, golden: &GoldenEntry) -> Vec<&'static str> {
    let mut out = Vec::new();
    if stats.chi != golden.chi {
        out.push("chi");
    }
    if stats.chi_sp != golden.chi_sp {
        out.push("chi_sp");
    }
    if stats.p != golden.p() {
        out.push("P");
    }
    if stats.p_sp != golden.p_sp() {
        out.push("P_sp");
    }
    out
}

/// Compares against the embedded table; `None` when no reference exists.
pub fn compare_golden(stats: &Stats) -> Option<Vec<&'static str>> {
    golden::lookup(stats.k, stats.n).map(|g| golden_mismatches(stats, g))
}
