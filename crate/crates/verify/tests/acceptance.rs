//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every comparison is exact (integers or rationals; no floating tolerance).
//! Runtime budgets are pinned per criterion.

use std::collections::BTreeSet;
use std::time::Duration;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spjuggle::afflag::{
    check_chain, check_isotropic_chain, check_symplectic_chain, deepen, phi, phi_with_offset,
    ring_chain, same_chain,
};
use spjuggle::exactalg::{
    degeneration_path, lie_basis, line_cell_point, oracle_report, random_nonzero, random_rational,
    rat, ratio, QuiverPoint, Rational, RationalMatrix,
};
use spjuggle::golden::GOLDEN;
use spjuggle::mutations::symplectic_moves;
use spjuggle::patterns::{enumerate_jp, is_symplectic, jp_leq, JugglingPattern};
use spjuggle::poset::{build_poset, check_conjecture, OrderKind};
use spjuggle::stats::{compare_golden, gr_sp_euler, statistics};
use spjuggle::Exec;
use spjuggle_verify::{report, Criterion, Outcome};

const SEED: u64 = 0x5eed_2024;

fn reference_tables() -> Outcome {
    let mut c = Criterion::new(1, "reference tables reproduced (exact integers)");
    for g in GOLDEN {
        match statistics(g.k, g.n, Exec::default()) {
            Ok(s) => {
                let diff = compare_golden(&s).unwrap_or_else(|| vec!["missing reference"]);
                c.check(
                    diff.is_empty(),
                    format!(
                        "(k,2n)=({},{}) chi={} chi_sp={} P, P_sp{}",
                        g.k,
                        g.n,
                        s.chi,
                        s.chi_sp,
                        if diff.is_empty() {
                            " match".to_string()
                        } else {
                            format!(" differ in {diff:?}")
                        }
                    ),
                );
            }
            Err(e) => {
                c.check(false, format!("(k,2n)=({},{}) error: {e}", g.k, g.n));
            }
        }
    }
    c.finish(Duration::from_secs(60))
}

fn oracle_equivalence() -> Outcome {
    let mut c = Criterion::new(2, "mutation count = orbit rank (full g and g^sp, 2n <= 6)");
    for n in [2usize, 4, 6] {
        for k in 0..=n {
            for sp in [false, true] {
                if sp && 2 * k > n {
                    continue;
                }
                match oracle_report(k, n, sp, Exec::default()) {
                    Ok(rows) => {
                        let bad: Vec<_> = rows.iter().filter(|r| !r.agree).collect();
                        c.check(
                            bad.is_empty(),
                            format!(
                                "(k,2n)=({k},{n}) {}: {}/{} agree{}",
                                if sp { "g^sp" } else { "g" },
                                rows.len() - bad.len(),
                                rows.len(),
                                bad.first()
                                    .map(|r| format!(
                                        "; first mismatch {} comb={} oracle={}",
                                        r.pattern, r.dim_comb, r.dim_oracle
                                    ))
                                    .unwrap_or_default()
                            ),
                        );
                    }
                    Err(e) => {
                        c.check(false, format!("(k,2n)=({k},{n}) sp={sp} error: {e}"));
                    }
                }
            }
        }
    }
    c.finish(Duration::from_secs(300))
}

fn structure_checks() -> Outcome {
    let mut c = Criterion::new(3, "dim g^sp, top symplectic cells, maximal pattern counts");
    for n in [2usize, 4, 6, 8] {
        let basis = lie_basis(n, true).expect("even size");
        let rows: Vec<Vec<Rational>> = basis.iter().map(|b| b.flatten()).collect();
        let m = RationalMatrix::from_fn(rows.len(), rows[0].len(), |r, col| rows[r][col].clone());
        let h = n / 2;
        let rank = m.rank();
        c.check(
            rank == 2 * h * h + h,
            format!("2n={n}: rank of y-span {rank} = 2n^2+n = {}", 2 * h * h + h),
        );
    }
    for g in GOLDEN {
        let s = match statistics(g.k, g.n, Exec::default()) {
            Ok(s) => s,
            Err(e) => {
                c.check(false, format!("(k,2n)=({},{}) error: {e}", g.k, g.n));
                continue;
            }
        };
        let lead = g.p_sp().len() - 1;
        c.check(
            s.top_dim_sp == s.gr_sp_dim && s.top_dim_sp == lead,
            format!(
                "(k,2n)=({},{}): top symplectic dim {} = k(2n-k)-k(k-1)/2 = {} = leading exponent {}",
                g.k, g.n, s.top_dim_sp, s.gr_sp_dim, lead
            ),
        );
        c.check(
            s.n_top_cells_sp == gr_sp_euler(g.k, g.n),
            format!(
                "(k,2n)=({},{}): maximal symplectic patterns {} = (2n)!!/(k!(2n-2k)!!) = {}",
                g.k, g.n, s.n_top_cells_sp, s.gr_sp_euler
            ),
        );
        if let Some(w) = &s.warning {
            c.warn(format!("(k,2n)=({},{}): {w}", g.k, g.n));
        }
    }
    // k = 0 has no table entry but the count is still defined.
    for n in [2usize, 4, 6, 8] {
        let s = statistics(0, n, Exec::default()).expect("k = 0");
        c.check(
            s.n_top_cells_sp == 1,
            format!("(k,2n)=(0,{n}): one maximal pattern"),
        );
    }
    c.finish(Duration::from_secs(60))
}

fn pat(sets: [[usize; 2]; 4]) -> JugglingPattern {
    let lists: Vec<&[usize]> = sets.iter().map(|s| &s[..]).collect();
    JugglingPattern::from_lists(&lists).expect("valid pattern")
}

fn order_isomorphism() -> Outcome {
    let mut c = Criterion::new(
        4,
        "mutation reachability = combinatorial order; (2,4) Hasse diagram",
    );
    for (k, n) in [(2usize, 4usize), (1, 4), (1, 6), (2, 6)] {
        let p = build_poset(k, n, OrderKind::Full, Exec::default()).expect("poset");
        let mut mismatches = 0usize;
        for u in 0..p.len() {
            for l in 0..p.len() {
                let comb = jp_leq(&p.patterns[l], &p.patterns[u]).expect("same shape");
                if comb != p.reachable(u, l) {
                    mismatches += 1;
                }
            }
        }
        c.check(
            mismatches == 0,
            format!(
                "(k,n)=({k},{n}): {} pairs compared, {mismatches} mismatches",
                p.len() * p.len()
            ),
        );
    }

    // The reference (2,4) diagram, tier by tier, left to right.
    let nodes = [
        pat([[3, 4], [3, 4], [3, 4], [3, 4]]),
        pat([[2, 4], [3, 4], [3, 4], [3, 4]]),
        pat([[3, 4], [2, 4], [3, 4], [2, 4]]),
        pat([[3, 4], [3, 4], [2, 4], [3, 4]]),
        pat([[2, 4], [2, 3], [3, 4], [1, 4]]),
        pat([[1, 3], [2, 4], [3, 4], [2, 4]]),
        pat([[2, 4], [3, 4], [2, 4], [3, 4]]),
        pat([[3, 4], [2, 4], [1, 3], [2, 4]]),
        pat([[3, 4], [1, 4], [2, 4], [2, 3]]),
        pat([[1, 2], [2, 3], [3, 4], [1, 4]]),
        pat([[2, 4], [1, 3], [2, 4], [1, 3]]),
        pat([[1, 3], [2, 4], [1, 3], [2, 4]]),
        pat([[3, 4], [1, 4], [1, 2], [2, 3]]),
    ];
    let tiers = [0usize, 1, 1, 1, 2, 2, 2, 2, 2, 3, 3, 3, 3];
    let edges: [(usize, usize); 23] = [
        (1, 2),
        (1, 3),
        (1, 4),
        (2, 5),
        (2, 6),
        (2, 7),
        (3, 5),
        (3, 6),
        (3, 8),
        (3, 9),
        (4, 7),
        (4, 8),
        (4, 9),
        (5, 10),
        (5, 11),
        (6, 10),
        (6, 12),
        (7, 12),
        (7, 11),
        (8, 12),
        (8, 13),
        (9, 11),
        (9, 13),
    ];
    let expected: BTreeSet<(JugglingPattern, JugglingPattern)> = edges
        .iter()
        .map(|&(lo, hi)| (nodes[hi - 1].clone(), nodes[lo - 1].clone()))
        .collect();
    let sp = build_poset(2, 4, OrderKind::Symplectic, Exec::default()).expect("poset");
    let got: BTreeSet<(JugglingPattern, JugglingPattern)> = sp
        .hasse
        .iter()
        .map(|&(u, l)| (sp.patterns[u].clone(), sp.patterns[l].clone()))
        .collect();
    let node_set: BTreeSet<_> = nodes.iter().cloned().collect();
    let poset_set: BTreeSet<_> = sp.patterns.iter().cloned().collect();
    c.check(
        node_set == poset_set,
        format!(
            "13 symplectic patterns match the diagram's nodes ({} found)",
            sp.len()
        ),
    );
    c.check(
        got == expected,
        format!(
            "covering relations: {} computed, {} expected, {} missing, {} extra",
            got.len(),
            expected.len(),
            expected.difference(&got).count(),
            got.difference(&expected).count()
        ),
    );
    let tiers_ok = nodes
        .iter()
        .zip(tiers)
        .all(|(p, t)| sp.index_of(p).map(|i| sp.dims[i]) == Some(t));
    c.check(tiers_ok, "tiers are symplectic cell dimensions 3,2,1,0");
    // The combinatorial order restricted to JP(2,4)^sp has the same covers.
    let comb_covers: BTreeSet<(JugglingPattern, JugglingPattern)> = nodes
        .iter()
        .flat_map(|u| nodes.iter().map(move |l| (u, l)))
        .filter(|(u, l)| {
            u != l
                && jp_leq(l, u).unwrap()
                && !nodes
                    .iter()
                    .any(|m| m != *u && m != *l && jp_leq(l, m).unwrap() && jp_leq(m, u).unwrap())
        })
        .map(|(u, l)| (u.clone(), l.clone()))
        .collect();
    c.check(
        comb_covers == expected,
        format!(
            "covers of the restricted combinatorial order: {}",
            comb_covers.len()
        ),
    );
    c.finish(Duration::from_secs(60))
}

fn isotropy_and_degeneration() -> Outcome {
    let mut c = Criterion::new(5, "X(1,2n)^sp = X(1,2n); degeneration paths stay isotropic");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    c.note(format!("seed {SEED:#x}"));
    for n in [2usize, 4, 6, 8] {
        let all = enumerate_jp(1, n).expect("enumerate").collect::<Vec<_>>();
        let iso = all
            .iter()
            .filter(|p| QuiverPoint::coordinate(p).is_isotropic().unwrap())
            .count();
        c.check(
            iso == all.len(),
            format!("2n={n}: {iso}/{} coordinate points isotropic", all.len()),
        );
        let mut ok = 0;
        for _ in 0..100 {
            let mut g: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng)).collect();
            g[0] = random_nonzero(&mut rng);
            let start = rng.gen_range(0..n);
            if line_cell_point(start, &g).and_then(|v| v.is_isotropic()) == Ok(true) {
                ok += 1;
            }
        }
        c.check(
            ok == 100,
            format!("2n={n}: {ok}/100 random maximal-cell points isotropic"),
        );
    }
    let ts = [rat(1), rat(-1), ratio(7, 3), ratio(-5, 2)];
    for n in [4usize, 6] {
        let mut paths = 0;
        let mut bad = Vec::new();
        for p in enumerate_jp(2, n)
            .unwrap()
            .filter(|p| is_symplectic(p).unwrap())
        {
            for mv in symplectic_moves(&p).expect("symplectic moves") {
                for t in &ts {
                    paths += 1;
                    match degeneration_path(&p, &mv, t) {
                        Ok(v) if v.is_isotropic() == Ok(true) => {}
                        Ok(_) => bad.push(format!("{p} {mv:?} t={t}: not isotropic")),
                        Err(e) => bad.push(format!("{p} {mv:?} t={t}: {e}")),
                    }
                }
                let v0 = degeneration_path(&p, &mv, &rat(0));
                if !matches!(&v0, Ok(v) if v.same_point(&QuiverPoint::coordinate(&p))) {
                    bad.push(format!("{p} {mv:?}: V(0) is not the top point"));
                }
            }
        }
        c.check(
            bad.is_empty(),
            format!(
                "JP(2,{n})^sp: {} of {paths} path evaluations valid and isotropic{}",
                paths - bad.len().min(paths),
                bad.first()
                    .map(|b| format!("; first failure {b}"))
                    .unwrap_or_default()
            ),
        );
    }
    c.finish(Duration::from_secs(120))
}

fn affine_flag() -> Outcome {
    let mut c = Criterion::new(
        6,
        "affine flag embedding: chain conditions and self-duality",
    );
    for (k, n) in [(2usize, 4usize), (1, 4), (0, 4), (3, 6), (2, 6), (1, 6)] {
        let u = QuiverPoint::coordinate(&JugglingPattern::minimal(k, n).unwrap());
        let chain = phi(&u, 2).expect("phi");
        c.check(
            same_chain(&chain, &ring_chain(n, 2).unwrap()),
            format!("(k,2n)=({k},{n}): phi(minimal point) is the standard chain"),
        );
    }
    for n in [4usize, 6] {
        for k in 0..=n {
            let pats: Vec<_> = enumerate_jp(k, n).unwrap().collect();
            let bad = Exec::default()
                .map(&pats, |p| {
                    let chain = phi(&QuiverPoint::coordinate(p), 2).expect("phi");
                    check_chain(&chain).ok()
                })
                .iter()
                .filter(|ok| !**ok)
                .count();
            c.check(
                bad == 0,
                format!(
                    "(k,2n)=({k},{n}): dimension, t-invariance, inclusions for {}/{} points",
                    pats.len() - bad,
                    pats.len()
                ),
            );
        }
    }
    for n in [4usize, 6] {
        let k = 2;
        let pats: Vec<_> = enumerate_jp(k, n).unwrap().collect();
        let rows = Exec::default().map(&pats, |p| {
            let u = QuiverPoint::coordinate(p);
            let chain = phi(&u, 2).expect("phi");
            let sp = is_symplectic(p).unwrap();
            let sd = check_symplectic_chain(&chain).unwrap();
            let iso_offset = check_isotropic_chain(&phi_with_offset(&u, 2).unwrap()).unwrap();
            let deep = phi(&u, 3).expect("phi");
            let stable = same_chain(&deepen(&chain, 3), &deep)
                && check_symplectic_chain(&deep).unwrap() == sd;
            (sp, sd, iso_offset, stable)
        });
        let agree = rows.iter().filter(|r| r.0 == r.1).count();
        let false_pos = rows.iter().filter(|r| !r.0 && r.1).count();
        let false_neg = rows.iter().filter(|r| r.0 && !r.1).count();
        c.check(
            agree == pats.len(),
            format!(
                "(k,2n)=({k},{n}): self-dual chain <=> symplectic on {agree}/{} \
                 ({false_neg} symplectic patterns with non-self-dual chain, {false_pos} converse)",
                pats.len()
            ),
        );
        let stable = rows.iter().filter(|r| r.3).count();
        c.check(
            stable == pats.len(),
            format!(
                "(k,2n)=({k},{n}): truncation m=2 vs m=3 identical on {stable}/{}",
                pats.len()
            ),
        );
        let iso = rows.iter().filter(|r| r.0 == r.2).count();
        c.note(format!(
            "(k,2n)=({k},{n}): with the offset fixed at n, L_-c is orthogonal to L_c \
             exactly for symplectic patterns on {iso}/{} (its lattices have index c-n+k)",
            pats.len()
        ));
    }
    c.check(
        check_symplectic_chain(&ring_chain(4, 2).unwrap()).unwrap()
            && check_symplectic_chain(&ring_chain(6, 2).unwrap()).unwrap(),
        "the standard chain is self-dual",
    );
    c.finish(Duration::from_secs(300))
}

fn conjecture_reports() -> Outcome {
    let mut c = Criterion::new(7, "conjecture report completes and is deterministic");
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    for (k, n) in [(2usize, 4usize), (2, 6), (3, 6)] {
        let a = check_conjecture(k, n, Exec::Parallel);
        let b = check_conjecture(k, n, Exec::Sequential);
        match (a, b) {
            (Ok(a), Ok(b)) => {
                let path = dir.join(format!("conjecture_{k}_{n}.json"));
                let written = std::fs::write(&path, serde_json::to_string_pretty(&a).unwrap());
                c.check(
                    a == b && written.is_ok(),
                    format!(
                        "(k,2n)=({k},{n}): {} comparable pairs, {} counterexamples, archived at {}",
                        a.pairs_checked,
                        a.counterexamples.len(),
                        path.display()
                    ),
                );
            }
            (Err(e), _) | (_, Err(e)) => {
                c.check(false, format!("(k,2n)=({k},{n}) error: {e}"));
            }
        }
    }
    c.finish(Duration::from_secs(60))
}

fn main() {
    let outcomes = vec![
        reference_tables(),
        oracle_equivalence(),
        structure_checks(),
        order_isomorphism(),
        isotropy_and_degeneration(),
        affine_flag(),
        conjecture_reports(),
    ];
    if !report(&outcomes) {
        std::process::exit(1);
    }
}
