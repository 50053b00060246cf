//! Reference Euler characteristics and Poincaré polynomials for `2n ≤ 8`.
//!
//! Coefficients are transcribed highest degree first, the way the tables are
//! usually printed; [`GoldenEntry::p`] and [`GoldenEntry::p_sp`] return them
//! in ascending order to match [`Stats`](crate::stats::Stats).

#[derive(Debug, Clone, Copy)]
pub struct GoldenEntry {
    pub k: usize,
    /// Ambient dimension `2n`.
    pub n: usize,
    pub chi: u64,
    pub chi_sp: u64,
    p_desc: &'static [u64],
    p_sp_desc: &'static [u64],
}

impl GoldenEntry {
    pub fn p(&self) -> Vec<u64> {
        self.p_desc.iter().rev().copied().collect()
    }

    pub fn p_sp(&self) -> Vec<u64> {
        self.p_sp_desc.iter().rev().copied().collect()
    }
}

const fn entry(
    k: usize,
    n: usize,
    chi: u64,
    chi_sp: u64,
    p_desc: &'static [u64],
    p_sp_desc: &'static [u64],
) -> GoldenEntry {
    GoldenEntry {
        k,
        n,
        chi,
        chi_sp,
        p_desc,
        p_sp_desc,
    }
}

pub static GOLDEN: &[GoldenEntry] = &[
    entry(1, 2, 3, 3, &[2, 1], &[2, 1]),
    entry(1, 4, 15, 15, &[4, 6, 4, 1], &[4, 6, 4, 1]),
    entry(2, 4, 33, 13, &[6, 12, 10, 4, 1], &[4, 5, 3, 1]),
    entry(1, 6, 63, 63, &[6, 15, 20, 15, 6, 1], &[6, 15, 20, 15, 6, 1]),
    entry(
        2,
        6,
        473,
        293,
        &[15, 60, 110, 120, 90, 50, 21, 6, 1],
        &[12, 47, 81, 77, 48, 21, 6, 1],
    ),
    entry(
        3,
        6,
        883,
        79,
        &[20, 90, 180, 215, 180, 114, 56, 21, 6, 1],
        &[8, 18, 22, 17, 9, 4, 1],
    ),
    entry(
        1,
        8,
        255,
        255,
        &[8, 28, 56, 70, 56, 28, 8, 1],
        &[8, 28, 56, 70, 56, 28, 8, 1],
    ),
    entry(
        2,
        8,
        5281,
        4053,
        &[28, 168, 476, 840, 1050, 1008, 784, 504, 266, 112, 36, 8, 1],
        &[24, 166, 478, 798, 904, 759, 501, 266, 112, 36, 8, 1],
    ),
    entry(
        3,
        8,
        26799,
        7507,
        &[
            56, 420, 1400, 2870, 4200, 4788, 4480, 3542, 2408, 1420, 728, 322, 120, 36, 8, 1,
        ],
        &[
            33, 251, 757, 1319, 1588, 1445, 1042, 613, 297, 117, 36, 8, 1,
        ],
    ),
    entry(
        4,
        8,
        44929,
        633,
        &[
            70, 560, 1960, 4200, 6426, 7672, 7532, 6272, 4522, 2856, 1588, 776, 330, 120, 36, 8, 1,
        ],
        &[16, 56, 106, 131, 121, 93, 59, 31, 14, 5, 1],
    ),
];

pub fn lookup(k: usize, n: usize) -> Option<&'static GoldenEntry> {
    GOLDEN.iter().find(|e| e.k == k && e.n == n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_self_consistent() {
        assert_eq!(GOLDEN.len(), 10);
        for e in GOLDEN {
            assert_eq!(e.p().iter().sum::<u64>(), e.chi, "k={} n={}", e.k, e.n);
            assert_eq!(
                e.p_sp().iter().sum::<u64>(),
                e.chi_sp,
                "k={} n={}",
                e.k,
                e.n
            );
            assert_eq!(e.p()[0], 1);
            // Top degree of the full Grassmannian cells is k(2n - k).
            assert_eq!(e.p().len() - 1, e.k * (e.n - e.k));
            if e.k == 1 {
                assert_eq!(e.p(), e.p_sp());
            }
        }
    }
}
