//! Text exports: Graphviz DOT, CSV rows and JSON.

use std::fmt::Write;

use crate::poset::CellPoset;
use crate::stats::Stats;

pub const CSV_HEADER: &str = "k,n,chi,chi_sp,P,P_sp,top_dim_sp,n_top,components,gr_euler";

fn coeff_array(c: &[u64]) -> String {
    serde_json::to_string(c).expect("integer arrays always serialize")
}

/// One CSV row; polynomial arrays are quoted since they contain commas.
pub fn stats_csv_row(s: &Stats) -> String {
    format!(
        "{},{},{},{},\"{}\",\"{}\",{},{},{},{}",
        s.k,
        s.n,
        s.chi,
        s.chi_sp,
        coeff_array(&s.p),
        coeff_array(&s.p_sp),
        s.top_dim_sp,
        s.n_top_cells_sp,
        s.n_components_sp,
        s.gr_sp_euler
    )
}

/// Hasse diagram with one rank per cell dimension; node labels are the
/// patterns' JSON encodings.
pub fn hasse_dot(poset: &CellPoset) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph hasse {{");
    let _ = writeln!(out, "  rankdir=TB;");
    let _ = writeln!(out, "  node [shape=box, fontsize=10];");
    for (i, p) in poset.patterns.iter().enumerate() {
        let json = serde_json::to_string(p).expect("patterns always serialize");
        let _ = writeln!(
            out,
            "  n{i} [label=\"{}\", dim={}];",
            json.replace('"', "\\\""),
            poset.dims[i]
        );
    }
    let max_dim = poset.dims.iter().copied().max().unwrap_or(0);
    for d in (0..=max_dim).rev() {
        let members: Vec<String> = (0..poset.len())
            .filter(|&i| poset.dims[i] == d)
            .map(|i| format!("n{i}"))
            .collect();
        if !members.is_empty() {
            let _ = writeln!(out, "  {{ rank=same; {}; }}", members.join("; "));
        }
    }
    for &(u, l) in &poset.hasse {
        let _ = writeln!(out, "  n{u} -> n{l};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::par::Exec;
    use crate::poset::{build_poset, OrderKind};
    use crate::stats::statistics;

    #[test]
    fn csv_row() {
        let s = statistics(2, 4, Exec::Sequential).unwrap();
        assert_eq!(
            stats_csv_row(&s),
            "2,4,33,13,\"[1,4,10,12,6]\",\"[1,3,5,4]\",3,4,4,4"
        );
        assert_eq!(CSV_HEADER.split(',').count(), 10);
    }

    #[test]
    fn dot_counts() {
        let p = build_poset(2, 4, OrderKind::Symplectic, Exec::Sequential).unwrap();
        let dot = hasse_dot(&p);
        assert_eq!(dot.matches(" -> ").count(), 23);
        assert_eq!(dot.matches("[label=").count(), 13);
        assert_eq!(dot.matches("rank=same").count(), 4);
    }
}
