//! Release gates.  Each `criterion_*` test prints one `criterion N:
//! PASS/FAIL` line (visible under `--nocapture`) and then asserts the
//! stated goal verbatim, so a red gate is a real finding, not a broken
//! build.  Every red gate has green `pinned_*` neighbours that assert the
//! observed behaviour exactly: which instances fail, where the witnesses
//! live, and why the failures all collapse on the surface rs = 1.

use rsfock_core::cartan::{adjacent, cartan_entry};
use rsfock_core::*;
use std::collections::BTreeSet;

const STANDARD_N: u32 = 8;

fn standard_suite() -> Vec<FockConfig> {
    (2..=5usize)
        .flat_map(|n| (0..n).map(move |offset| FockConfig::new(n, offset, STANDARD_N)))
        .collect()
}

fn literal_suite() -> Vec<FockConfig> {
    standard_suite()
        .into_iter()
        .map(|cfg| cfg.with_d_convention(DConvention::Literal))
        .collect()
}

fn gate(number: usize, ok: bool) {
    // write through the raw handle so the line shows even for passing tests
    // (the harness only captures the print macros)
    use std::io::Write;
    let line = format!("criterion {number}: {}\n", if ok { "PASS" } else { "FAIL" });
    std::io::stdout().write_all(line.as_bytes()).unwrap();
}

fn failure_ids(reports: &[CheckReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| format!("{} (n={}, offset={})", r.relation, r.n, r.offset))
        .collect()
}

#[test]
fn criterion_1_relation_suite() {
    let reports = run_all(&standard_suite(), false);
    let failures = failure_ids(&reports);
    let ok = failures.is_empty();
    gate(1, ok);
    assert!(
        ok,
        "{} of {} instances fail, first: {}",
        failures.len(),
        reports.len(),
        failures[0]
    );
}

#[test]
fn criterion_2_pairing_extraction() {
    let mut problems = Vec::new();
    for n in 2..=5usize {
        let cfg = FockConfig::new(n, 0, n as u32 + 4);
        if let Err(err) = infer_pairing(&cfg) {
            problems.push(format!("n={n}: {err}"));
        }
        let scan = scan_conjugations(&cfg);
        for i in 0..n {
            if scan.table.entries[i][i] != Some((1, -1)) {
                problems.push(format!("n={n}: diagonal entry ({i},{i}) is not r*s^-1"));
            }
            for j in 0..n {
                match scan.table.entries[i][j] {
                    Some((a, b)) if a - b == cartan_entry(n, i, j) => {}
                    entry => problems.push(format!(
                        "n={n}: entry ({i},{j}) = {entry:?} does not specialize to the Cartan matrix"
                    )),
                }
            }
        }
        if !scan.diffs.iter().any(|d| d.i == 0 && d.j == 1) {
            problems.push(format!("n={n}: no (0,1) diff against the closed formula"));
        }
    }
    let ok = problems.is_empty();
    gate(2, ok);
    assert!(ok, "{}", problems.join("; "));
}

#[test]
fn criterion_3_specialization_oracle() {
    let mut failures = Vec::new();
    for n in 2..=4usize {
        for offset in 0..n {
            let cfg = FockConfig::new(n, offset, STANDARD_N);
            failures.extend(failure_ids(&check_specialization(&cfg)));
        }
    }
    let ok = failures.is_empty();
    gate(3, ok);
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_4_combinatorial_identities() {
    let mut failures = Vec::new();
    for n in 2..=5usize {
        let rc = ResidueConfig::new(n, 0);
        for report in check_claims(&rc, 14) {
            if !report.passed() {
                let detail = match &report.witness {
                    Some(Witness::Claim { partition, detail }) => {
                        format!(" at {partition}: {detail}")
                    }
                    _ => String::new(),
                };
                failures.push(format!("n={n} {}{detail}", report.relation));
            }
        }
    }
    let ok = failures.is_empty();
    gate(4, ok);
    assert!(ok, "{}", failures.join("; "));
}

#[test]
fn criterion_5_negative_control() {
    let reports = run_all(&literal_suite(), false);
    let (degree_failures, other_failures): (Vec<_>, Vec<_>) = reports
        .iter()
        .filter(|r| !r.passed())
        .partition(|r| {
            matches!(
                r.relation,
                RelationId::A2D { .. } | RelationId::A3DPrime { .. }
            )
        });
    let ok = !degree_failures.is_empty() && other_failures.is_empty();
    gate(5, ok);
    assert!(
        ok,
        "{} degree-generator failures, {} elsewhere (first: {:?})",
        degree_failures.len(),
        other_failures.len(),
        other_failures.first().map(|r| r.relation.to_string())
    );
}

#[test]
fn criterion_6_character_sanity() {
    let expected: Vec<u64> = vec![
        1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135, 176, 231, 297, 385, 490, 627,
    ];
    let mut ok = euler_partition_series(20) == expected;
    for n in 2..=5usize {
        let cfg = FockConfig::new(n, 0, 20);
        ok &= dimension_series(&cfg).unwrap() == expected;
    }
    // boundary counts must reproduce the classical pairing computed from
    // the residue census through the Cartan matrix
    for n in 2..=5usize {
        for offset in 0..n {
            let cfg = FockConfig::new(n, offset, 12);
            for group in enumerate_partitions(12).unwrap() {
                for lambda in group {
                    let data = weight(&lambda, &cfg);
                    for j in 0..n {
                        let census: i64 = (0..n)
                            .map(|k| cartan_entry(n, j, k) * data.m_vector[k] as i64)
                            .sum();
                        let expected_pairing = (j == offset) as i64 - census;
                        ok &= data.classical_pairing[j] == expected_pairing;
                        let sets = lambda.node_sets(&cfg.residues, j);
                        ok &= data.classical_pairing[j]
                            == sets.indent.len() as i64 - sets.removable.len() as i64;
                    }
                }
            }
        }
    }
    gate(6, ok);
    assert!(ok);
}

#[test]
fn criterion_7_determinism() {
    let suite = standard_suite();
    let run_with = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        let reports = pool.install(|| run_all(&suite, false));
        serde_json::to_vec(&reports).unwrap()
    };
    let single = run_with(1);
    let eight = run_with(8);
    let ok = single == eight;
    gate(7, ok);
    assert!(ok, "reports differ between 1 and 8 workers");
}

// ---------------------------------------------------------------------
// pinned findings behind the red gates

fn specializes_to_zero(v: &FockVector) -> bool {
    v.iter().all(|(_, c)| c.specialize_q().is_zero())
}

fn q_power(text: &str) -> Laurent1 {
    text.parse::<Laurent2>().unwrap().specialize_q()
}

/// Exact failure census on the standard suite: the commutator holds on the
/// diagonal and between distant indices, the constancy checks hold for the
/// degree generators, and everything that does fail either involves
/// cyclically adjacent indices or is the two-box reordering identity.
/// Every residual witness vanishes under r = q, s = 1/q and every ratio
/// clash pits two monomials with the same specialization against each
/// other, so all failures live on the surface rs = 1.
#[test]
fn pinned_standard_suite_failure_census() {
    let reports = run_all(&standard_suite(), false);
    let mut failing_classes: BTreeSet<&'static str> = BTreeSet::new();
    for report in &reports {
        let n = report.n;
        if report.passed() {
            continue;
        }
        match report.relation {
            RelationId::A1Central { .. } => {
                failing_classes.insert("A1-central");
            }
            RelationId::A2Omega { i, j } | RelationId::A3OmegaPrime { i, j } => {
                assert!(adjacent(n, i, j), "{}", report.relation);
                failing_classes.insert("omega");
            }
            RelationId::A4Offdiag { i, j } => {
                assert!(adjacent(n, i, j), "{}", report.relation);
                failing_classes.insert("A4-offdiag");
            }
            RelationId::A6 { .. } => {
                assert!(n >= 3);
                failing_classes.insert("A6");
            }
            RelationId::A7 { .. } => {
                assert!(n >= 3);
                failing_classes.insert("A7");
            }
            RelationId::Claim { label: ClaimLabel::C } => {
                failing_classes.insert("claims[C]");
            }
            other => panic!("unexpected failing class {other}"),
        }
        match &report.witness {
            Some(Witness::Residual { residual, .. }) => {
                assert!(specializes_to_zero(residual), "{}", report.relation);
            }
            Some(Witness::RatioClash { first, second }) => {
                assert_eq!(
                    q_power(&first.ratio),
                    q_power(&second.ratio),
                    "{}",
                    report.relation
                );
            }
            Some(Witness::Claim { .. }) => {}
            other => panic!("unexpected witness {other:?} for {}", report.relation),
        }
    }
    assert_eq!(
        failing_classes,
        BTreeSet::from(["A1-central", "omega", "A4-offdiag", "A6", "A7", "claims[C]"])
    );
    // and the classes that never fail
    for report in &reports {
        if let RelationId::A2D { .. }
        | RelationId::A3DPrime { .. }
        | RelationId::A4Diag { .. }
        | RelationId::A5 { .. }
        | RelationId::HighestWeight { .. }
        | RelationId::Specialization { .. }
        | RelationId::Claim {
            label: ClaimLabel::A | ClaimLabel::B | ClaimLabel::One,
        } = report.relation
        {
            assert_eq!(report.status, Status::Pass, "{}", report.relation);
        }
    }
}

/// The inferred tables across ranks: diagonal and distant entries are
/// constant and match the closed formula; for adjacent pairs the first
/// scanned transition is recorded, and the exact set of entries where that
/// convention disagrees with the closed formula is pinned per rank.  The
/// (0,1) disagreement only materializes at rank 2; from rank 3 up the
/// first (0,1) transition happens to produce the printed r^-1.
#[test]
fn pinned_pairing_tables_across_ranks() {
    let expected_diffs: [(usize, Vec<(usize, usize)>); 4] = [
        (2, vec![(0, 1)]),
        (3, vec![(0, 2), (2, 0), (2, 1)]),
        (4, vec![(0, 3), (3, 0), (3, 2)]),
        (5, vec![(0, 4), (3, 2), (3, 4), (4, 0), (4, 3)]),
    ];
    for (n, diffs) in expected_diffs {
        let cfg = FockConfig::new(n, 0, n as u32 + 4);
        let scan = scan_conjugations(&cfg);
        let got: Vec<(usize, usize)> = scan.diffs.iter().map(|d| (d.i, d.j)).collect();
        assert_eq!(got, diffs, "n={n}");
        for d in &scan.diffs {
            // every disagreement still specializes to the same q-power
            assert_eq!(q_power(&d.inferred), q_power(&d.printed), "n={n} ({},{})", d.i, d.j);
        }
        for i in 0..n {
            assert_eq!(scan.table.entries[i][i], Some((1, -1)), "n={n} i={i}");
        }
    }
    // rank 2: the very first transition |1> -> |-> conjugates by r^-2
    let scan = scan_conjugations(&FockConfig::new(2, 0, 6));
    assert_eq!(scan.table.entries[0][1], Some((-2, 0)));
    assert_eq!(scan.diffs[0].printed, "r^-1*s");
    // rank 3+: the inferred (0,1) entry matches the printed one
    for n in 3..=5usize {
        let scan = scan_conjugations(&FockConfig::new(n, 0, n as u32 + 4));
        assert_eq!(scan.table.entries[0][1], Some((-1, 0)), "n={n}");
    }
}

/// Switching the degree convention flips exactly the degree-generator
/// conjugation checks and nothing else: the cell-count reading passes all
/// of them, the boundary-count reading fails them at indices within
/// cyclic distance one of residue zero (all indices for ranks 2 and 3).
#[test]
fn pinned_degree_convention_failure_sets() {
    let id_set = |reports: &[CheckReport]| -> BTreeSet<String> {
        reports
            .iter()
            .filter(|r| !r.passed())
            .map(|r| format!("{}@n={},offset={}", r.relation, r.n, r.offset))
            .collect()
    };
    let standard = id_set(&run_all(&standard_suite(), false));
    let literal = id_set(&run_all(&literal_suite(), false));
    assert!(standard.is_subset(&literal));
    let mut expected: BTreeSet<String> = BTreeSet::new();
    for cfg in standard_suite() {
        let n = cfg.n();
        for i in 0..n {
            if i == 0 || adjacent(n, 0, i) {
                expected.insert(format!("A2-D[i={i}]@n={n},offset={}", cfg.offset()));
                expected.insert(format!("A3-D'[i={i}]@n={n},offset={}", cfg.offset()));
            }
        }
    }
    let difference: BTreeSet<String> = literal.difference(&standard).cloned().collect();
    assert_eq!(difference, expected);
}

/// The smallest reordering counterexample the sweep finds: lambda = (3,1)
/// at rank 2, adding the two residue-0 corners in either order and testing
/// the residue-1 corner (1,4).  Both counts stay equal instead of
/// differing by one.
#[test]
fn pinned_reordering_counterexample_rank_two() {
    let rc = ResidueConfig::new(2, 0);
    let lambda = Partition::new(vec![3, 1]);
    let gamma1 = Node::new(3, 1);
    let gamma2 = Node::new(2, 2);
    let gamma3 = Node::new(1, 4);
    assert_eq!(gamma1.residue(&rc), 0);
    assert_eq!(gamma2.residue(&rc), 0);
    assert_eq!(gamma3.residue(&rc), 1);
    let with1 = lambda.with_node_added(gamma1);
    let with2 = lambda.with_node_added(gamma2);
    assert!(with1.is_addable(gamma3) && with2.is_addable(gamma3));
    let one = with1.split_counts(gamma3, &rc, 1).unwrap();
    let two = with2.split_counts(gamma3, &rc, 1).unwrap();
    assert_eq!(two.indent_right, one.indent_right);
    assert_eq!(two.removable_right, one.removable_right);
}
