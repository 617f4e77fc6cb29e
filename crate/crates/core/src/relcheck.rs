//! Mechanical verification of the defining relations on truncated modules.
//!
//! Every check quantifies a finite operator identity over the whole
//! partition basis up to the size bound, reserving headroom for lowering
//! steps so truncation can never eat a term: a word with `d` lowering
//! symbols is only applied to diagrams of size at most `N - d`.
//!
//! Failures are first-class data, not panics: each failed report carries a
//! witness (a residual vector, a pair of clashing conjugation ratios, or a
//! counterexample to a counting identity) that reproduces the failure when
//! re-evaluated standalone.  The conjugation checks double as an inference
//! procedure for the Cartan pairing: the ratio by which a diagonal
//! generator conjugates each box-removal transition is recorded, constancy
//! across transitions is asserted, and the resulting table is diffed
//! against the closed formula without ever asserting the formula itself.

use crate::cartan::cartan_entry;
use crate::fock::{
    apply_e, apply_f, apply_word, diagonal_exponents, FockConfig, FockVector, Generator, Word,
};
use crate::laurent::Laurent2;
use crate::partition::{enumerate_partitions, Node, Partition, ResidueConfig};
use crate::qfock::{q_apply_e, q_apply_f, QFockVector};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::time::Instant;
use thiserror::Error;

/// Which central element an `A1` instance conjugates by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralElement {
    Gamma,
    GammaPrime,
}

impl fmt::Display for CentralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CentralElement::Gamma => write!(f, "g"),
            CentralElement::GammaPrime => write!(f, "g'"),
        }
    }
}

/// Identity of one relation instance.
///
/// The degree-3 relations come in two shapes per adjacent pair `(i, j)`:
/// `sq=i` is `x_i^2 x_j - (r+s) x_i x_j x_i + rs x_j x_i^2` and `sq=j` is
/// `x_i x_j^2 - (r+s) x_j x_i x_j + rs x_j^2 x_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationId {
    A1Central { element: CentralElement, i: usize },
    A2Omega { i: usize, j: usize },
    A2D { i: usize },
    A3OmegaPrime { i: usize, j: usize },
    A3DPrime { i: usize },
    A4Diag { i: usize },
    A4Offdiag { i: usize, j: usize },
    A5 { i: usize, j: usize },
    A6 { i: usize, j: usize, squared_second: bool },
    A7 { i: usize, j: usize, squared_second: bool },
    HighestWeight { j: usize },
    Claim { label: ClaimLabel },
    Specialization { lowering: bool, i: usize },
    Property { name: &'static str },
}

/// The four counting identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimLabel {
    A,
    B,
    C,
    One,
}

impl fmt::Display for ClaimLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimLabel::A => write!(f, "A"),
            ClaimLabel::B => write!(f, "B"),
            ClaimLabel::C => write!(f, "C"),
            ClaimLabel::One => write!(f, "1"),
        }
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RelationId::A1Central { element, i } => write!(f, "A1-central[{element},i={i}]"),
            RelationId::A2Omega { i, j } => write!(f, "A2-omega[i={i},j={j}]"),
            RelationId::A2D { i } => write!(f, "A2-D[i={i}]"),
            RelationId::A3OmegaPrime { i, j } => write!(f, "A3-omega'[i={i},j={j}]"),
            RelationId::A3DPrime { i } => write!(f, "A3-D'[i={i}]"),
            RelationId::A4Diag { i } => write!(f, "A4-diag[i={i}]"),
            RelationId::A4Offdiag { i, j } => write!(f, "A4-offdiag[i={i},j={j}]"),
            RelationId::A5 { i, j } => write!(f, "A5[i={i},j={j}]"),
            RelationId::A6 { i, j, squared_second } => {
                write!(f, "A6[i={i},j={j},sq={}]", if squared_second { "j" } else { "i" })
            }
            RelationId::A7 { i, j, squared_second } => {
                write!(f, "A7[i={i},j={j},sq={}]", if squared_second { "j" } else { "i" })
            }
            RelationId::HighestWeight { j } => write!(f, "hw[j={j}]"),
            RelationId::Claim { label } => write!(f, "claims[{label}]"),
            RelationId::Specialization { lowering, i } => {
                write!(f, "specialization[{},i={i}]", if lowering { "f" } else { "e" })
            }
            RelationId::Property { name } => write!(f, "props[{name}]"),
        }
    }
}

impl Serialize for RelationId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One box-removal or box-addition transition together with the eigenvalue
/// ratio a diagonal generator picks up across it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitionRatio {
    pub source: Partition,
    pub target: Partition,
    pub ratio: String,
}

impl TransitionRatio {
    fn new(source: &Partition, target: &Partition, exponents: (i64, i64)) -> Self {
        TransitionRatio {
            source: source.clone(),
            target: target.clone(),
            ratio: monomial_text(exponents),
        }
    }
}

fn monomial_text((a, b): (i64, i64)) -> String {
    Laurent2::monomial(1, a, b).to_string()
}

/// Evidence attached to a failed report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// The relation word did not annihilate `partition`.
    Residual { partition: Partition, residual: FockVector },
    /// Two transitions with different conjugation ratios.
    RatioClash { first: TransitionRatio, second: TransitionRatio },
    /// A constant ratio that is not the prescribed one.
    RatioMismatch { transition: TransitionRatio, expected: String },
    /// A counting identity fails at this diagram.
    Claim { partition: Partition, detail: String },
    /// The specialized coefficient disagrees with the one-parameter oracle.
    Specialization { partition: Partition, operator: String, detail: String },
}

/// Outcome of one relation instance over one truncated module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub relation: RelationId,
    pub n: usize,
    pub offset: usize,
    #[serde(rename = "N")]
    pub max_size: u32,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
    /// Basis vectors examined; not part of the wire format.
    #[serde(skip)]
    pub checked: u64,
}

impl CheckReport {
    fn new(relation: RelationId, cfg: &FockConfig, outcome: Outcome) -> Self {
        let (status, witness, checked) = match outcome {
            Outcome::Pass { checked } => (Status::Pass, None, checked),
            Outcome::Fail { witness, checked } => (Status::Fail, Some(witness), checked),
            Outcome::Skipped => (Status::Skipped, None, 0),
        };
        CheckReport {
            relation,
            n: cfg.n(),
            offset: cfg.offset(),
            max_size: cfg.max_size,
            status,
            witness,
            millis: None,
            checked,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

enum Outcome {
    Pass { checked: u64 },
    Fail { witness: Witness, checked: u64 },
    Skipped,
}

/// True when no report in the slice failed.
pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passed)
}

/// The conjugation ratios of some `(i, j)` pair do not agree, so no
/// constant can satisfy the conjugation relation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{relation}: ratio {} on {} -> {} clashes with {} on {} -> {}",
    first.ratio, first.source, first.target, second.ratio, second.source, second.target)]
pub struct InconsistentRatio {
    pub relation: String,
    pub first: TransitionRatio,
    pub second: TransitionRatio,
}

/// The Cartan pairing as monomial exponent pairs; `entries[i][j]` is the
/// constant by which `w_j` conjugation scales the `i`-th raising operator.
/// `None` marks pairs with no transition below the size bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingTable {
    pub n: usize,
    pub provenance: &'static str,
    pub entries: Vec<Vec<Option<(i64, i64)>>>,
}

/// One disagreement between an inferred and the printed table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingDiff {
    pub i: usize,
    pub j: usize,
    pub inferred: String,
    pub printed: String,
}

/// The closed-formula table: inner products of the simple roots against the
/// orthonormal coordinates, read off row by row.
pub fn printed_pairing(n: usize) -> PairingTable {
    assert!(n >= 2);
    // (eps_k, alpha_i) with eps_1..eps_n orthonormal, alpha_i = eps_i -
    // eps_(i+1) for 1 <= i <= n-1 and alpha_0 = eps_n - eps_1
    let eps_alpha = |k: usize, i: usize| -> i64 {
        let (hi, lo) = if i == 0 { (n, 1) } else { (i, i + 1) };
        (k == hi) as i64 - (k == lo) as i64
    };
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    Some(if j == 0 {
                        (-eps_alpha(i + 1, 0), eps_alpha(1, i))
                    } else {
                        (eps_alpha(j, i), eps_alpha(j + 1, i))
                    })
                })
                .collect()
        })
        .collect();
    PairingTable {
        n,
        provenance: "printed",
        entries,
    }
}

/// Entrywise comparison; absent inferred entries are reported as `"?"`.
pub fn pairing_diffs(inferred: &PairingTable, printed: &PairingTable) -> Vec<PairingDiff> {
    assert_eq!(inferred.n, printed.n);
    let mut diffs = Vec::new();
    for i in 0..inferred.n {
        for j in 0..inferred.n {
            if inferred.entries[i][j] != printed.entries[i][j] {
                diffs.push(PairingDiff {
                    i,
                    j,
                    inferred: inferred.entries[i][j]
                        .map_or_else(|| "?".to_string(), monomial_text),
                    printed: printed.entries[i][j]
                        .map_or_else(|| "?".to_string(), monomial_text),
                });
            }
        }
    }
    diffs
}

fn basis_up_to(bound: u32) -> Vec<Partition> {
    enumerate_partitions(bound)
        .expect("relation-check bounds stay under the enumeration cap")
        .into_iter()
        .flatten()
        .collect()
}

/// Evaluates `sum coeff * word` on every basis diagram of size `<= bound`,
/// reporting the first nonzero residual.
fn zero_check(
    relation: RelationId,
    cfg: &FockConfig,
    bound: u32,
    terms: &[(Laurent2, Word)],
) -> CheckReport {
    let mut checked = 0;
    for lambda in basis_up_to(bound) {
        checked += 1;
        let mut residual = FockVector::zero();
        for (coeff, word) in terms {
            let image = apply_word(word, &FockVector::basis(lambda.clone()), cfg)
                .expect("guard margin covers the word's lowering degree");
            residual = &residual + &image.scaled(coeff);
        }
        if !residual.is_zero() {
            return CheckReport::new(
                relation,
                cfg,
                Outcome::Fail {
                    witness: Witness::Residual { partition: lambda, residual },
                    checked,
                },
            );
        }
    }
    CheckReport::new(relation, cfg, Outcome::Pass { checked })
}

fn word(symbols: &[Generator]) -> Word {
    Word::new(symbols.to_vec())
}

/// The commutation relation between raising and lowering operators, in the
/// form cleared of denominators: `(r-s)(e_i f_j - f_j e_i)` must equal
/// `w_i - w'_i` when `i = j` and vanish otherwise.
pub fn check_a4(cfg: &FockConfig) -> Vec<CheckReport> {
    assert!(cfg.max_size >= 2);
    let n = cfg.n();
    let r_minus_s = Laurent2::r_minus_s();
    let instances: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .collect();
    instances
        .par_iter()
        .map(|&(i, j)| {
            let mut terms = vec![
                (r_minus_s.clone(), word(&[Generator::E(i), Generator::F(j)])),
                (-&r_minus_s, word(&[Generator::F(j), Generator::E(i)])),
            ];
            let relation = if i == j {
                terms.push((-Laurent2::one(), word(&[Generator::Omega(i)])));
                terms.push((Laurent2::one(), word(&[Generator::OmegaPrime(i)])));
                RelationId::A4Diag { i }
            } else {
                RelationId::A4Offdiag { i, j }
            };
            zero_check(relation, cfg, cfg.max_size - 1, &terms)
        })
        .collect()
}

/// Distant raising (and lowering) operators commute.  Instances exist only
/// for `n >= 4`; the excluded wraparound pairs are adjacent anyway.
pub fn check_commuting(cfg: &FockConfig) -> Vec<CheckReport> {
    assert!(cfg.max_size >= 2);
    let n = cfg.n();
    let instances: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| cartan_entry(n, i, j) == 0)
        .collect();
    instances
        .par_iter()
        .map(|&(i, j)| {
            let relation = RelationId::A5 { i, j };
            let raising = [
                (Laurent2::one(), word(&[Generator::E(i), Generator::E(j)])),
                (-Laurent2::one(), word(&[Generator::E(j), Generator::E(i)])),
            ];
            let lowering = [
                (Laurent2::one(), word(&[Generator::F(i), Generator::F(j)])),
                (-Laurent2::one(), word(&[Generator::F(j), Generator::F(i)])),
            ];
            let up = zero_check(relation, cfg, cfg.max_size, &raising);
            if up.status == Status::Fail {
                return up;
            }
            let mut down = zero_check(relation, cfg, cfg.max_size - 2, &lowering);
            down.checked += up.checked;
            down
        })
        .collect()
}

fn serre_terms(
    make: impl Fn(usize) -> Generator,
    i: usize,
    j: usize,
    squared_second: bool,
    outer: (Laurent2, Laurent2),
) -> Vec<(Laurent2, Word)> {
    let middle = -(Laurent2::var_r() + Laurent2::var_s());
    let (first_word, middle_word, last_word) = if squared_second {
        (
            [make(i), make(j), make(j)],
            [make(j), make(i), make(j)],
            [make(j), make(j), make(i)],
        )
    } else {
        (
            [make(i), make(i), make(j)],
            [make(i), make(j), make(i)],
            [make(j), make(i), make(i)],
        )
    };
    vec![
        (outer.0, word(&first_word)),
        (middle, word(&middle_word)),
        (outer.1, word(&last_word)),
    ]
}

/// The degree-3 relations between cyclically adjacent operators, two shapes
/// per pair.  The lowering version is checked in the form cleared by `rs`.
/// For `n = 2` the printed cubic relations do not apply (the two indices
/// are doubly linked) and the instances are reported as skipped.
pub fn check_serre(cfg: &FockConfig) -> Vec<CheckReport> {
    let n = cfg.n();
    let mut instances: Vec<RelationId> = Vec::new();
    for i in 0..n {
        let j = (i + 1) % n;
        for squared_second in [false, true] {
            instances.push(RelationId::A6 { i, j, squared_second });
        }
    }
    for i in 0..n {
        let j = (i + 1) % n;
        for squared_second in [false, true] {
            instances.push(RelationId::A7 { i, j, squared_second });
        }
    }
    if n < 3 {
        return instances
            .into_iter()
            .map(|relation| CheckReport::new(relation, cfg, Outcome::Skipped))
            .collect();
    }
    assert!(cfg.max_size >= 3);
    let one = Laurent2::one();
    let rs = Laurent2::monomial(1, 1, 1);
    instances
        .par_iter()
        .map(|&relation| match relation {
            RelationId::A6 { i, j, squared_second } => {
                let terms =
                    serre_terms(Generator::E, i, j, squared_second, (one.clone(), rs.clone()));
                zero_check(relation, cfg, cfg.max_size, &terms)
            }
            RelationId::A7 { i, j, squared_second } => {
                let terms =
                    serre_terms(Generator::F, i, j, squared_second, (rs.clone(), one.clone()));
                zero_check(relation, cfg, cfg.max_size - 3, &terms)
            }
            _ => unreachable!(),
        })
        .collect()
}

/// All box-removal transitions of residue `i` from diagrams of size
/// `<= bound`, in deterministic scan order.
fn transitions(cfg: &FockConfig, i: usize, bound: u32) -> Vec<(Partition, Node, Partition)> {
    let mut out = Vec::new();
    for lambda in basis_up_to(bound) {
        for node in lambda.node_sets(&cfg.residues, i).removable {
            let target = lambda.with_node_removed(node);
            out.push((lambda.clone(), node, target));
        }
    }
    out
}

fn ratio_exponents(g: Generator, source: &Partition, target: &Partition, cfg: &FockConfig) -> (i64, i64) {
    let (a1, b1) = diagonal_exponents(g, target, cfg);
    let (a0, b0) = diagonal_exponents(g, source, cfg);
    (a1 - a0, b1 - b0)
}

struct RatioScan {
    /// First transition's ratio, if any transition exists.
    first: Option<(Partition, Partition, (i64, i64))>,
    /// First clash against the first ratio, if any.
    clash: Option<(Partition, Partition, (i64, i64))>,
    checked: u64,
}

/// Conjugation ratios of `g` over all residue-`i` removal transitions:
/// `ratio = eigenvalue(target) / eigenvalue(source)` as an exponent pair.
fn scan_ratios(g: Generator, i: usize, cfg: &FockConfig) -> RatioScan {
    let mut scan = RatioScan { first: None, clash: None, checked: 0 };
    for (source, _, target) in transitions(cfg, i, cfg.max_size) {
        scan.checked += 1;
        let ratio = ratio_exponents(g, &source, &target, cfg);
        match &scan.first {
            None => scan.first = Some((source, target, ratio)),
            Some((_, _, first_ratio)) => {
                if *first_ratio != ratio && scan.clash.is_none() {
                    scan.clash = Some((source, target, ratio));
                }
            }
        }
    }
    scan
}

fn clash_witness(scan: &RatioScan) -> Option<Witness> {
    let (fs, ft, fr) = scan.first.as_ref()?;
    let (cs, ct, cr) = scan.clash.as_ref()?;
    Some(Witness::RatioClash {
        first: TransitionRatio::new(fs, ft, *fr),
        second: TransitionRatio::new(cs, ct, *cr),
    })
}

/// Constancy report plus, optionally, a prescribed constant to match.
fn ratio_report(
    relation: RelationId,
    g: Generator,
    i: usize,
    cfg: &FockConfig,
    expected: Option<(i64, i64)>,
) -> (CheckReport, Option<(i64, i64)>) {
    let scan = scan_ratios(g, i, cfg);
    let checked = scan.checked;
    if scan.clash.is_some() {
        let witness = clash_witness(&scan).unwrap();
        return (
            CheckReport::new(relation, cfg, Outcome::Fail { witness, checked }),
            scan.first.map(|(_, _, r)| r),
        );
    }
    let Some((source, target, ratio)) = scan.first else {
        return (CheckReport::new(relation, cfg, Outcome::Skipped), None);
    };
    if let Some(expected) = expected {
        if ratio != expected {
            let witness = Witness::RatioMismatch {
                transition: TransitionRatio::new(&source, &target, ratio),
                expected: monomial_text(expected),
            };
            return (
                CheckReport::new(relation, cfg, Outcome::Fail { witness, checked }),
                Some(ratio),
            );
        }
    }
    (
        CheckReport::new(relation, cfg, Outcome::Pass { checked }),
        Some(ratio),
    )
}

/// Inferred pairing table plus every conjugation report.
pub struct ConjugationScan {
    pub table: PairingTable,
    pub reports: Vec<CheckReport>,
    pub diffs: Vec<PairingDiff>,
}

/// Runs every diagonal-conjugation check: centrality of the whole-boundary
/// products, the `w_j` / `w'_j` ratios that define the pairing, and the
/// degree generators against their prescribed constants.  Ratio clashes
/// become failed reports; the table records each pair's first observed
/// ratio so the remaining comparisons stay evaluable.
pub fn scan_conjugations(cfg: &FockConfig) -> ConjugationScan {
    let n = cfg.n();
    let mut reports = Vec::new();

    // centrality: conjugating by the boundary product must fix every
    // raising operator
    for element in [CentralElement::Gamma, CentralElement::GammaPrime] {
        let g = match element {
            CentralElement::Gamma => Generator::Gamma,
            CentralElement::GammaPrime => Generator::GammaPrime,
        };
        let per_index: Vec<CheckReport> = (0..n)
            .into_par_iter()
            .map(|i| {
                ratio_report(RelationId::A1Central { element, i }, g, i, cfg, Some((0, 0))).0
            })
            .collect();
        reports.extend(per_index);
    }

    // pairing inference from w_j conjugation of each raising operator
    let omega_scans: Vec<(usize, usize, RatioScan)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(i, j)| {
            let scan = scan_ratios(Generator::Omega(j), i, cfg);
            (i, j, scan)
        })
        .collect();
    let mut entries = vec![vec![None; n]; n];
    for (i, j, scan) in &omega_scans {
        entries[*i][*j] = scan.first.as_ref().map(|&(_, _, r)| r);
        let relation = RelationId::A2Omega { i: *i, j: *j };
        let outcome = if let Some(witness) = clash_witness(scan) {
            Outcome::Fail { witness, checked: scan.checked }
        } else if scan.first.is_none() {
            Outcome::Skipped
        } else {
            Outcome::Pass { checked: scan.checked }
        };
        reports.push(CheckReport::new(relation, cfg, outcome));
    }

    // the primed side must mirror the unprimed ratios with r and s swapped
    let prime_reports: Vec<CheckReport> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(i, j)| {
            let relation = RelationId::A3OmegaPrime { i, j };
            let scan = scan_ratios(Generator::OmegaPrime(j), i, cfg);
            if let Some(witness) = clash_witness(&scan) {
                return CheckReport::new(
                    relation,
                    cfg,
                    Outcome::Fail { witness, checked: scan.checked },
                );
            }
            let Some((source, target, ratio)) = scan.first else {
                return CheckReport::new(relation, cfg, Outcome::Skipped);
            };
            let unprimed = ratio_exponents(Generator::Omega(j), &source, &target, cfg);
            let expected = (unprimed.1, unprimed.0);
            if ratio != expected {
                let witness = Witness::RatioMismatch {
                    transition: TransitionRatio::new(&source, &target, ratio),
                    expected: monomial_text(expected),
                };
                return CheckReport::new(
                    relation,
                    cfg,
                    Outcome::Fail { witness, checked: scan.checked },
                );
            }
            CheckReport::new(relation, cfg, Outcome::Pass { checked: scan.checked })
        })
        .collect();
    reports.extend(prime_reports);

    // degree generators: r (resp. s) exactly on residue-0 transitions
    for (g, primed) in [(Generator::D, false), (Generator::DPrime, true)] {
        let per_index: Vec<CheckReport> = (0..n)
            .into_par_iter()
            .map(|i| {
                let delta = (i == 0) as i64;
                let (relation, expected) = if primed {
                    (RelationId::A3DPrime { i }, (0, delta))
                } else {
                    (RelationId::A2D { i }, (delta, 0))
                };
                ratio_report(relation, g, i, cfg, Some(expected)).0
            })
            .collect();
        reports.extend(per_index);
    }

    let table = PairingTable {
        n,
        provenance: "inferred",
        entries,
    };
    let diffs = pairing_diffs(&table, &printed_pairing(n));
    ConjugationScan { table, reports, diffs }
}

/// Strict pairing inference: errors on the first ratio clash, otherwise
/// returns the table and the conjugation reports. The error is boxed; it is
/// a cold path carrying both clashing transitions.
pub fn infer_pairing(
    cfg: &FockConfig,
) -> Result<(PairingTable, Vec<CheckReport>), Box<InconsistentRatio>> {
    let scan = scan_conjugations(cfg);
    for report in &scan.reports {
        if let Some(Witness::RatioClash { first, second }) = &report.witness {
            return Err(Box::new(InconsistentRatio {
                relation: report.relation.to_string(),
                first: first.clone(),
                second: second.clone(),
            }));
        }
    }
    Ok((scan.table, scan.reports))
}

/// The vacuum is annihilated by every raising operator.
pub fn check_highest_weight(cfg: &FockConfig) -> Vec<CheckReport> {
    (0..cfg.n())
        .map(|j| {
            let image = apply_e(j, &FockVector::basis(Partition::empty()), cfg);
            let outcome = if image.is_zero() {
                Outcome::Pass { checked: 1 }
            } else {
                Outcome::Fail {
                    witness: Witness::Residual {
                        partition: Partition::empty(),
                        residual: image,
                    },
                    checked: 1,
                }
            };
            CheckReport::new(RelationId::HighestWeight { j }, cfg, outcome)
        })
        .collect()
}

fn fail_claim(label: ClaimLabel, cfg: &FockConfig, partition: &Partition, detail: String, checked: u64) -> CheckReport {
    CheckReport::new(
        RelationId::Claim { label },
        cfg,
        Outcome::Fail {
            witness: Witness::Claim { partition: partition.clone(), detail },
            checked,
        },
    )
}

/// The four counting identities behind the commutation and degree-3 proofs,
/// checked exhaustively over all diagrams of size `<= max_size`, all
/// residues and all valid corner choices.
pub fn check_claims(rc: &ResidueConfig, max_size: u32) -> Vec<CheckReport> {
    let cfg = FockConfig::new(rc.n, rc.offset, max_size);
    let basis = basis_up_to(max_size);
    let sc = |lambda: &Partition, corner: Node, i: usize| {
        lambda
            .split_counts(corner, rc, i)
            .expect("claim sweep only uses boundary corners")
    };

    // claim A: two difference identities relating the splits of an addable
    // corner before and after removing a removable corner
    let mut claim_a = None;
    // claim B: each split pair misses exactly the corner itself
    let mut claim_b = None;
    // identity (1): removal shifts the same-residue boundary counts by one
    let mut claim_one = None;
    let mut checked_a = 0;
    let mut checked_b = 0;
    let mut checked_one = 0;

    'outer_ab: for lambda in &basis {
        for i in 0..rc.n {
            let sets = lambda.node_sets(rc, i);
            for &gamma_prime in &sets.removable {
                checked_one += 1;
                let smaller = lambda.with_node_removed(gamma_prime);
                let before = lambda.node_sets(rc, i);
                let after = smaller.node_sets(rc, i);
                if after.indent.len() != before.indent.len() + 1
                    || after.removable.len() + 1 != before.removable.len()
                {
                    claim_one = Some((
                        lambda.clone(),
                        format!(
                            "removing {gamma_prime} of residue {i}: indent {} -> {}, removable {} -> {}",
                            before.indent.len(),
                            after.indent.len(),
                            before.removable.len(),
                            after.removable.len()
                        ),
                    ));
                    break 'outer_ab;
                }

                // claim B parts that only need the removable corner
                checked_b += 1;
                let small_split = sc(&smaller, gamma_prime, i);
                let b1 = after.indent.len() as u64
                    == small_split.indent_right + small_split.indent_left + 1;
                let b4 = before.removable.len() as u64
                    == small_split.removable_right + small_split.removable_left + 1;
                if !(b1 && b4) {
                    claim_b = Some((
                        lambda.clone(),
                        format!("removable corner {gamma_prime}, residue {i}"),
                    ));
                    break 'outer_ab;
                }
            }
            for &gamma in &sets.indent {
                // claim B parts that only need the addable corner
                checked_b += 1;
                let split = sc(lambda, gamma, i);
                let bigger = lambda.with_node_added(gamma);
                let b2 = bigger.node_sets(rc, i).removable.len() as u64
                    == split.removable_right + split.removable_left + 1;
                let b3 =
                    sets.indent.len() as u64 == split.indent_right + split.indent_left + 1;
                if !(b2 && b3) {
                    claim_b = Some((
                        lambda.clone(),
                        format!("addable corner {gamma}, residue {i}"),
                    ));
                    break 'outer_ab;
                }
            }
            for &gamma in &sets.indent {
                for &gamma_prime in &sets.removable {
                    checked_a += 1;
                    let smaller = lambda.with_node_removed(gamma_prime);
                    let both = smaller.with_node_added(gamma);
                    let lhs2 = sc(lambda, gamma, i).indent_right as i64
                        - sc(&smaller, gamma, i).indent_right as i64;
                    let rhs2 = sc(&smaller, gamma_prime, i).removable_left as i64
                        - sc(&both, gamma_prime, i).removable_left as i64;
                    let lhs3 = sc(&smaller, gamma_prime, i).indent_left as i64
                        - sc(&both, gamma_prime, i).indent_left as i64;
                    let rhs3 = sc(lambda, gamma, i).removable_right as i64
                        - sc(&smaller, gamma, i).removable_right as i64;
                    if lhs2 != rhs2 || lhs3 != rhs3 {
                        claim_a = Some((
                            lambda.clone(),
                            format!(
                                "gamma={gamma}, gamma'={gamma_prime}, residue {i}: \
                                 ({lhs2} vs {rhs2}) and ({lhs3} vs {rhs3})"
                            ),
                        ));
                        break 'outer_ab;
                    }
                }
            }
        }
    }

    // claim C: after adding two same-residue boxes in either order, the
    // right splits at a neighbouring-residue corner are claimed to differ
    // by exactly one
    let mut claim_c = None;
    let mut checked_c = 0;
    'outer_c: for lambda in &basis {
        for i in 0..rc.n {
            let next = (i + 1) % rc.n;
            let indents = lambda.node_sets(rc, i).indent;
            for &gamma1 in &indents {
                for &gamma2 in &indents {
                    if gamma1 == gamma2 {
                        continue;
                    }
                    let with1 = lambda.with_node_added(gamma1);
                    let with2 = lambda.with_node_added(gamma2);
                    let with_both = with1.with_node_added(gamma2);
                    for &gamma3 in &with_both.node_sets(rc, next).indent {
                        if !(with1.is_addable(gamma3) && with2.is_addable(gamma3)) {
                            continue;
                        }
                        checked_c += 1;
                        let two = sc(&with2, gamma3, next);
                        let one = sc(&with1, gamma3, next);
                        let indent_ok =
                            two.indent_right as i64 == one.indent_right as i64 + 1;
                        let removable_ok =
                            two.removable_right as i64 == one.removable_right as i64 - 1;
                        if !(indent_ok && removable_ok) {
                            claim_c = Some((
                                lambda.clone(),
                                format!(
                                    "gamma1={gamma1}, gamma2={gamma2}, gamma3={gamma3}, \
                                     residue {i}: indent_right {} vs {}+1, \
                                     removable_right {} vs {}-1",
                                    two.indent_right,
                                    one.indent_right,
                                    two.removable_right,
                                    one.removable_right
                                ),
                            ));
                            break 'outer_c;
                        }
                    }
                }
            }
        }
    }

    let report = |label: ClaimLabel,
                  failure: Option<(Partition, String)>,
                  checked: u64| match failure {
        Some((partition, detail)) => fail_claim(label, &cfg, &partition, detail, checked),
        None => CheckReport::new(RelationId::Claim { label }, &cfg, Outcome::Pass { checked }),
    };
    vec![
        report(ClaimLabel::A, claim_a, checked_a),
        report(ClaimLabel::B, claim_b, checked_b),
        report(ClaimLabel::C, claim_c, checked_c),
        report(ClaimLabel::One, claim_one, checked_one),
    ]
}

/// Compares the substituted two-parameter action against the independent
/// one-parameter implementation, matrix entry by matrix entry.
pub fn check_specialization(cfg: &FockConfig) -> Vec<CheckReport> {
    let n = cfg.n();
    let instances: Vec<(bool, usize)> = [true, false]
        .iter()
        .flat_map(|&lowering| (0..n).map(move |i| (lowering, i)))
        .collect();
    instances
        .par_iter()
        .map(|&(lowering, i)| {
            let relation = RelationId::Specialization { lowering, i };
            let bound = if lowering { cfg.max_size - 1 } else { cfg.max_size };
            let mut checked = 0;
            for lambda in basis_up_to(bound) {
                checked += 1;
                let (two_param, oracle) = if lowering {
                    (
                        apply_f(i, &FockVector::basis(lambda.clone()), cfg)
                            .expect("bound leaves headroom"),
                        q_apply_f(i, &QFockVector::basis(lambda.clone()), cfg)
                            .expect("bound leaves headroom"),
                    )
                } else {
                    (
                        apply_e(i, &FockVector::basis(lambda.clone()), cfg),
                        q_apply_e(i, &QFockVector::basis(lambda.clone()), cfg),
                    )
                };
                let specialized = QFockVector::from_terms(
                    two_param.iter().map(|(p, c)| (p.clone(), c.specialize_q())),
                );
                if specialized != oracle {
                    let diff = &specialized - &oracle;
                    let operator =
                        format!("{}{i}", if lowering { "f" } else { "e" });
                    let detail = diff
                        .iter()
                        .map(|(p, c)| format!("{p}: {c}"))
                        .collect::<Vec<_>>()
                        .join("; ");
                    return CheckReport::new(
                        relation,
                        cfg,
                        Outcome::Fail {
                            witness: Witness::Specialization {
                                partition: lambda,
                                operator,
                                detail,
                            },
                            checked,
                        },
                    );
                }
            }
            CheckReport::new(relation, cfg, Outcome::Pass { checked })
        })
        .collect()
}

/// Randomized linearity spot-checks, deterministic for a fixed seed.
pub fn check_properties(cfg: &FockConfig, seed: u64, samples: usize) -> Vec<CheckReport> {
    let mut rng = StdRng::seed_from_u64(seed);
    let basis = basis_up_to(cfg.max_size.saturating_sub(1));
    let random_vector = |rng: &mut StdRng| -> FockVector {
        let mut v = FockVector::zero();
        for _ in 0..2 {
            let lambda = basis[rng.gen_range(0..basis.len())].clone();
            let coeff = Laurent2::monomial(
                rng.gen_range(-3..=3i64),
                rng.gen_range(-2..=2),
                rng.gen_range(-2..=2),
            );
            v.add_term(lambda, coeff);
        }
        v
    };
    let mut failure: Option<(RelationId, Partition)> = None;
    let mut checked = 0;
    for _ in 0..samples {
        let v = random_vector(&mut rng);
        let w = random_vector(&mut rng);
        let scalar = Laurent2::monomial(rng.gen_range(1..=3i64), rng.gen_range(-1..=1), 0);
        let combo = &v.scaled(&scalar) + &w;
        for i in 0..cfg.n() {
            checked += 1;
            let direct = apply_f(i, &combo, cfg).expect("sample sizes leave headroom");
            let split = &apply_f(i, &v, cfg).unwrap().scaled(&scalar) + &apply_f(i, &w, cfg).unwrap();
            if direct != split {
                failure = Some((
                    RelationId::Property { name: "linearity-f" },
                    v.iter().next().map(|(p, _)| p.clone()).unwrap_or_else(Partition::empty),
                ));
                break;
            }
            let direct = apply_e(i, &combo, cfg);
            let split = &apply_e(i, &v, cfg).scaled(&scalar) + &apply_e(i, &w, cfg);
            if direct != split {
                failure = Some((
                    RelationId::Property { name: "linearity-e" },
                    v.iter().next().map(|(p, _)| p.clone()).unwrap_or_else(Partition::empty),
                ));
                break;
            }
        }
        if failure.is_some() {
            break;
        }
    }
    let relation = failure
        .as_ref()
        .map(|(r, _)| *r)
        .unwrap_or(RelationId::Property { name: "linearity-f" });
    let outcome = match failure {
        Some((_, partition)) => Outcome::Fail {
            witness: Witness::Claim {
                partition,
                detail: "linear combination image differs from recombined images".to_string(),
            },
            checked,
        },
        None => Outcome::Pass { checked },
    };
    vec![CheckReport::new(relation, cfg, outcome)]
}

fn stamp(reports: &mut [CheckReport], started: Instant, timings: bool) {
    if timings {
        let millis = started.elapsed().as_millis() as u64;
        for report in reports {
            report.millis = Some(millis);
        }
    }
}

/// Every check over one configuration, in fixed report order.
pub fn run_config(cfg: &FockConfig, timings: bool) -> Vec<CheckReport> {
    let mut reports = Vec::new();
    let mut take = |mut batch: Vec<CheckReport>, started: Instant| {
        stamp(&mut batch, started, timings);
        reports.extend(batch);
    };
    let t = Instant::now();
    take(scan_conjugations(cfg).reports, t);
    let t = Instant::now();
    take(check_a4(cfg), t);
    let t = Instant::now();
    take(check_commuting(cfg), t);
    let t = Instant::now();
    take(check_serre(cfg), t);
    let t = Instant::now();
    take(check_highest_weight(cfg), t);
    let t = Instant::now();
    take(check_claims(&cfg.residues, cfg.max_size), t);
    let t = Instant::now();
    take(check_specialization(cfg), t);
    reports
}

/// Aggregated reports over a list of configurations, empty list giving an
/// empty passing set.
pub fn run_all(cfgs: &[FockConfig], timings: bool) -> Vec<CheckReport> {
    cfgs.iter()
        .flat_map(|cfg| run_config(cfg, timings))
        .collect()
}
