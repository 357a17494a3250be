//! Acceptance suite: every release-gating claim, one test per criterion,
//! each printing a single pass/fail line (run with `--nocapture` to see
//! them). All tolerances are exact.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use hqx_core::hypercube::{
    common_neighbors, components, vertex_boundary, CubeDim, FaultSet, VertexId,
};
use hqx_core::isoperimetry::{
    boundary_cascade, boundary_closed_form, dimension_difference, plateau_identities, witness_set,
};
use hqx_core::oracle::{
    adversarial_trials, extra_conn_bruteforce, min_boundary_bruteforce, structure_trials,
    CutSearch, DEFAULT_BUDGET,
};
use hqx_core::reliability::{extra_connectivity, f_of_h, structure_guard_holds};

fn dim(n: u32) -> CubeDim {
    CubeDim::new(n).unwrap()
}

fn bv(n: u32, m: u64) -> u64 {
    boundary_cascade(n, m).unwrap().value
}

fn report(num: u32, name: &str, failures: Vec<String>) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {num} ({name}): {status}");
    assert!(failures.is_empty(), "criterion {num}: {failures:#?}");
}

/// Criterion 1: the exhaustive minimum-boundary search equals the cascade
/// evaluation on Q_3 (m = 1..7), Q_4 (m = 1..15), and Q_5 (m = 1..8).
#[test]
fn criterion_1_oracle_equality() {
    let mut failures = Vec::new();
    let cases: [(u32, u64); 5] = [(1, 1), (2, 3), (3, 7), (4, 15), (5, 8)];
    for (n, m_max) in cases {
        for m in 1..=m_max {
            let oracle = min_boundary_bruteforce(dim(n), m, DEFAULT_BUDGET).unwrap();
            let formula = bv(n, m);
            if oracle.value != formula {
                failures.push(format!(
                    "n={n} m={m}: oracle {} != cascade {formula}",
                    oracle.value
                ));
            }
            if vertex_boundary(&oracle.witness).unwrap().len() != oracle.value {
                failures.push(format!("n={n} m={m}: witness does not re-certify"));
            }
        }
    }
    report(1, "oracle equality", failures);
}

/// Criterion 2: closed form equals cascade for every n in 6..=20 and every
/// m in 1..=6n-15 (all rows are nonempty there).
#[test]
fn criterion_2_closed_form_agreement() {
    let mut failures = Vec::new();
    for n in 6..=20u32 {
        for m in 1..=(6 * n as u64 - 15) {
            match boundary_closed_form(n, m) {
                Ok(cf) => {
                    let cascade = bv(n, m);
                    if cf.value != cascade {
                        failures.push(format!(
                            "n={n} m={m}: closed {} != cascade {cascade}",
                            cf.value
                        ));
                    }
                }
                Err(e) => failures.push(format!("n={n} m={m}: unexpectedly gated: {e}")),
            }
        }
    }
    report(2, "closed-form agreement", failures);
}

/// Criterion 3: plateau/jump identities and the dimension differences hold
/// for every n in 5..=40.
#[test]
fn criterion_3_plateau_and_difference_identities() {
    let mut failures = Vec::new();
    for n in 5..=40u32 {
        for record in plateau_identities(n).unwrap() {
            if !record.pass {
                failures.push(format!("n={n}: {}", record.claim));
            }
        }
        for h in 2..=(2 * n as u64 - 1) {
            let got = dimension_difference(n, h).unwrap();
            let expected = if h <= n as u64 + 1 {
                n as u64 - 1
            } else {
                h - 2
            };
            if got != expected {
                failures.push(format!("n={n} h={h}: difference {got} != {expected}"));
            }
        }
    }
    report(3, "plateau and difference identities", failures);
}

/// Criterion 4: witness boundaries meet b_v exactly for n in 5..=12 across
/// all three families.
#[test]
fn criterion_4_witness_tightness() {
    let mut failures = Vec::new();
    for n in 5..=12u32 {
        let d = dim(n);
        for m in 1..=(3 * n as u64 - 2) {
            let w = witness_set(d, m).unwrap();
            let got = vertex_boundary(&w.vertices).unwrap().len();
            let want = bv(n, m);
            if got != want {
                failures.push(format!("n={n} m={m} ({}): |N| {got} != {want}", w.family));
            }
        }
    }
    report(4, "witness tightness", failures);
}

/// Criterion 5: extra-connectivity spot values, independently confirmed by
/// the exhaustive cut search where that search is feasible.
#[test]
fn criterion_5_extra_connectivity_spot_values() {
    fn check(failures: &mut Vec<String>, desc: &str, got: u64, want: u64) {
        if got != want {
            failures.push(format!("{desc}: {got} != {want}"));
        }
    }
    let mut failures = Vec::new();

    check(
        &mut failures,
        "kappa_0(Q_5)",
        extra_connectivity(5, 0).unwrap().value,
        5,
    );
    check(
        &mut failures,
        "kappa_1(Q_5)",
        extra_connectivity(5, 1).unwrap().value,
        8,
    );
    for h_minus_1 in 2..=5 {
        check(
            &mut failures,
            &format!("kappa_{h_minus_1}(Q_5)"),
            extra_connectivity(5, h_minus_1).unwrap().value,
            10,
        );
    }
    for h_minus_1 in 10..=13 {
        check(
            &mut failures,
            &format!("kappa_{h_minus_1}(Q_7)"),
            extra_connectivity(7, h_minus_1).unwrap().value,
            30,
        );
    }

    let oracle_cases = [(4u32, 0u64, 4u64), (4, 1, 6), (5, 0, 5), (5, 1, 8)];
    for (n, h_minus_1, want) in oracle_cases {
        match extra_conn_bruteforce(dim(n), h_minus_1, DEFAULT_BUDGET).unwrap() {
            CutSearch::Found(r) => {
                check(
                    &mut failures,
                    &format!("oracle kappa_{h_minus_1}(Q_{n})"),
                    r.value,
                    want,
                );
                let profile = components(&r.witness);
                if profile.sizes.len() < 2
                    || profile.sizes.iter().any(|&s| s < h_minus_1 + 1)
                {
                    failures.push(format!(
                        "oracle kappa_{h_minus_1}(Q_{n}): witness does not re-certify"
                    ));
                }
            }
            CutSearch::NotFound { .. } => {
                failures.push(format!("oracle kappa_{h_minus_1}(Q_{n}): no cut found"))
            }
        }
    }
    report(5, "extra-connectivity spot values", failures);
}

/// Criterion 6: zero violations of the small-component bound across both
/// harnesses, trials = 10^4, seeds {1, 7, 42}, every licensed (n, h) with
/// n in {5, 7, 9, 10}; the adversarial harness attains small_total = f(h)
/// at (n=7, h=9) and (n=5, h in {4, 5}).
#[test]
fn criterion_6_structure_guarantee_trials() {
    const TRIALS: u64 = 10_000;
    const SEEDS: [u64; 3] = [1, 7, 42];
    let mut failures = Vec::new();
    let mut attained: std::collections::HashMap<(u32, u64), u64> = Default::default();

    for n in [5u32, 7, 9, 10] {
        let d = dim(n);
        for h in 1..=(3 * n as u64 - 6) {
            if !structure_guard_holds(n, h) {
                continue;
            }
            for seed in SEEDS {
                let uniform = structure_trials(d, h, TRIALS, seed, 4).unwrap();
                if uniform.violations != 0 {
                    failures.push(format!(
                        "uniform n={n} h={h} seed={seed}: {} violations",
                        uniform.violations
                    ));
                }
                let biased = adversarial_trials(d, h, TRIALS, seed, 4).unwrap();
                if biased.violations != 0 {
                    failures.push(format!(
                        "adversarial n={n} h={h} seed={seed}: {} violations",
                        biased.violations
                    ));
                }
                let worst = attained.entry((n, h)).or_insert(0);
                *worst = (*worst).max(biased.worst_small_total);
            }
        }
    }

    for (n, h) in [(7u32, 9u64), (5, 4), (5, 5)] {
        let bound = f_of_h(n, h).unwrap();
        let worst = attained.get(&(n, h)).copied().unwrap_or(0);
        if worst != bound {
            failures.push(format!(
                "tightness n={n} h={h}: worst adversarial small_total {worst} != f(h) = {bound}"
            ));
        }
    }
    report(6, "structure guarantee trials", failures);
}

/// Criterion 7: connectivity is exactly n on Q_3 and Q_4 (exhaustively),
/// and every vertex pair has 0 or 2 common neighbors up to n = 12
/// (exhaustive through n = 8, sampled above).
#[test]
fn criterion_7_connectivity_and_cn_number() {
    let mut failures = Vec::new();

    for n in [3u32, 4] {
        let d = dim(n);
        let verts = d.vertex_count() as u32;
        // No subset of order <= n-1 disconnects.
        for mask in 0u32..(1u32 << verts) {
            let k = mask.count_ones();
            if k == 0 || k > n - 1 {
                continue;
            }
            let faults = FaultSet::from_labels(
                d,
                (0..verts).filter(|&v| mask >> v & 1 == 1).map(VertexId),
            )
            .unwrap();
            if components(&faults).sizes.len() != 1 {
                failures.push(format!("n={n}: {k}-set {mask:#x} disconnects Q_{n}"));
            }
        }
        // Some n-set disconnects: a vertex neighborhood.
        let hood = FaultSet::from_labels(d, (0..n).map(|i| VertexId(1 << i))).unwrap();
        if components(&hood).sizes.len() < 2 {
            failures.push(format!("n={n}: N(0) fails to disconnect Q_{n}"));
        }
    }

    for n in 2..=8u32 {
        let d = dim(n);
        for u in 0..d.vertex_count() as u32 {
            for v in 0..u {
                let shared = common_neighbors(d, VertexId(u), VertexId(v)).unwrap().len();
                let want = if (u ^ v).count_ones() == 2 { 2 } else { 0 };
                if shared != want {
                    failures.push(format!("n={n} u={u} v={v}: {shared} common neighbors"));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    for n in 9..=12u32 {
        let d = dim(n);
        for _ in 0..20_000 {
            let u = (rng.next_u64() % d.vertex_count()) as u32;
            let v = (rng.next_u64() % d.vertex_count()) as u32;
            if u == v {
                continue;
            }
            let shared = common_neighbors(d, VertexId(u), VertexId(v)).unwrap().len();
            let want = if (u ^ v).count_ones() == 2 { 2 } else { 0 };
            if shared != want {
                failures.push(format!("n={n} u={u} v={v}: {shared} common neighbors"));
            }
        }
    }
    report(7, "connectivity and cn-number", failures);
}
