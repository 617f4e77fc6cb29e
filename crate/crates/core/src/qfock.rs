//! Independent one-parameter action used as a cross-check oracle.
//!
//! Substituting `r = q`, `s = q^-1` collapses the two-parameter action to
//! the classical one on the q-deformed space: the box-adding coefficient is
//! `q^(iR - rR)` and the box-removing coefficient `q^(rL - iL)`.  This
//! module recounts those exponents from the raw boundary node lists in its
//! own loop, on purpose not sharing the split-count code path, so the
//! specialization tests compare two genuinely different implementations.
//!
//! The oracle is fixed to the standard column orientation and has no degree
//! generators; it exists only to validate the two-parameter module.

use crate::fock::{FockConfig, FockError};
use crate::laurent::Laurent1;
use crate::partition::{Node, Partition};
use std::collections::BTreeMap;

/// Finitely supported map from partitions to one-variable coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QFockVector {
    entries: BTreeMap<Partition, Laurent1>,
}

impl QFockVector {
    pub fn zero() -> Self {
        QFockVector::default()
    }

    pub fn basis(lambda: Partition) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(lambda, Laurent1::one());
        QFockVector { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, lambda: &Partition) -> Option<&Laurent1> {
        self.entries.get(lambda)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Laurent1)> {
        self.entries.iter()
    }

    pub fn add_term(&mut self, lambda: Partition, coeff: Laurent1) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.entries.entry(lambda);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Partition, Laurent1)>,
    {
        let mut out = QFockVector::zero();
        for (lambda, coeff) in terms {
            out.add_term(lambda, coeff);
        }
        out
    }

    pub fn scaled(&self, scalar: &Laurent1) -> QFockVector {
        QFockVector::from_terms(self.entries.iter().map(|(p, c)| (p.clone(), c * scalar)))
    }
}

impl std::ops::Sub<&QFockVector> for &QFockVector {
    type Output = QFockVector;
    fn sub(self, rhs: &QFockVector) -> QFockVector {
        let mut out = self.clone();
        for (p, c) in &rhs.entries {
            out.add_term(p.clone(), -c);
        }
        out
    }
}

/// Signed count: +1 per `plus` node, -1 per `minus` node, restricted by
/// `side` to columns strictly beyond the corner.
fn signed_count(plus: &[Node], minus: &[Node], corner: Node, right_side: bool) -> i64 {
    let picks = |node: &&Node| {
        if right_side {
            node.col > corner.col
        } else {
            node.col < corner.col
        }
    };
    plus.iter().filter(picks).count() as i64 - minus.iter().filter(picks).count() as i64
}

/// Box-adding oracle action: coefficient `q^(iR - rR)` per addable
/// `i`-node.
pub fn q_apply_f(
    i: usize,
    v: &QFockVector,
    cfg: &FockConfig,
) -> Result<QFockVector, FockError> {
    assert!(i < cfg.n(), "residue index out of range");
    let mut out = QFockVector::zero();
    for (lambda, coeff) in v.iter() {
        if lambda.size() >= cfg.max_size {
            return Err(FockError::TruncationOverflow {
                partition: lambda.clone(),
                bound: cfg.max_size,
            });
        }
        let sets = lambda.node_sets(&cfg.residues, i);
        for &gamma in &sets.indent {
            let exp = signed_count(&sets.indent, &sets.removable, gamma, true);
            out.add_term(
                lambda.with_node_added(gamma),
                coeff * &Laurent1::monomial(1, exp),
            );
        }
    }
    Ok(out)
}

/// Box-removing oracle action: coefficient `q^(rL - iL)` per removable
/// `i`-node, counted on the smaller diagram.
pub fn q_apply_e(i: usize, v: &QFockVector, cfg: &FockConfig) -> QFockVector {
    assert!(i < cfg.n(), "residue index out of range");
    let mut out = QFockVector::zero();
    for (lambda, coeff) in v.iter() {
        let sets = lambda.node_sets(&cfg.residues, i);
        for &gamma in &sets.removable {
            let mu = lambda.with_node_removed(gamma);
            let small = mu.node_sets(&cfg.residues, i);
            let exp = signed_count(&small.removable, &small.indent, gamma, false);
            out.add_term(mu, coeff * &Laurent1::monomial(1, exp));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{apply_e, apply_f, diagonal_exponents, FockVector, Generator};
    use crate::partition::enumerate_partitions;

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn qket(parts: &[u32]) -> QFockVector {
        QFockVector::basis(pt(parts))
    }

    fn qterms(pairs: &[(&[u32], &str)]) -> QFockVector {
        QFockVector::from_terms(pairs.iter().map(|&(parts, coeff)| {
            let l2: crate::laurent::Laurent2 = coeff.parse().unwrap();
            (pt(parts), l2.specialize_q())
        }))
    }

    #[test]
    fn small_oracle_values() {
        let cfg = FockConfig::new(2, 0, 8);
        assert_eq!(q_apply_f(0, &qket(&[]), &cfg).unwrap(), qterms(&[(&[1], "1")]));
        assert_eq!(
            q_apply_f(1, &qket(&[1]), &cfg).unwrap(),
            qterms(&[(&[2], "1"), (&[1, 1], "r")])
        );
        assert_eq!(q_apply_e(1, &qket(&[2]), &cfg), qterms(&[(&[1], "s")]));
        assert_eq!(q_apply_e(1, &qket(&[1, 1]), &cfg), qterms(&[(&[1], "1")]));
    }

    #[test]
    fn specialization_matches_the_two_parameter_action() {
        for n in 2..=3 {
            for offset in 0..n {
                let cfg = FockConfig::new(n, offset, 10);
                for group in enumerate_partitions(6).unwrap() {
                    for lambda in group {
                        for i in 0..n {
                            let down = apply_f(i, &FockVector::basis(lambda.clone()), &cfg)
                                .unwrap();
                            let down_q = q_apply_f(i, &QFockVector::basis(lambda.clone()), &cfg)
                                .unwrap();
                            let specialized = QFockVector::from_terms(
                                down.iter().map(|(p, c)| (p.clone(), c.specialize_q())),
                            );
                            assert_eq!(specialized, down_q, "f_{i} on {lambda}");

                            let up = apply_e(i, &FockVector::basis(lambda.clone()), &cfg);
                            let up_q = q_apply_e(i, &QFockVector::basis(lambda.clone()), &cfg);
                            let specialized = QFockVector::from_terms(
                                up.iter().map(|(p, c)| (p.clone(), c.specialize_q())),
                            );
                            assert_eq!(specialized, up_q, "e_{i} on {lambda}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn one_parameter_commutator_is_diagonal_with_classical_eigenvalue() {
        // (q - q^-1)[e_i, f_i] |lambda> = (q^d - q^-d)|lambda>
        // with d = #indent_i - #removable_i
        let q_bracket = Laurent1::monomial(1, 1) - Laurent1::monomial(1, -1);
        for n in 2..=3 {
            let cfg = FockConfig::new(n, 0, 10);
            for group in enumerate_partitions(6).unwrap() {
                for lambda in group {
                    for i in 0..n {
                        let v = QFockVector::basis(lambda.clone());
                        let ef = q_apply_e(i, &q_apply_f(i, &v, &cfg).unwrap(), &cfg);
                        let fe = q_apply_f(i, &q_apply_e(i, &v, &cfg), &cfg).unwrap();
                        let commutator = &ef - &fe;
                        let (indent, removable) =
                            diagonal_exponents(Generator::Omega(i), &lambda, &cfg);
                        let d = indent - removable;
                        let expected = v.scaled(
                            &(Laurent1::monomial(1, d) - Laurent1::monomial(1, -d)),
                        );
                        assert_eq!(
                            commutator.scaled(&q_bracket),
                            expected,
                            "i={i} {lambda}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn truncation_still_guards_the_oracle() {
        let cfg = FockConfig::new(2, 0, 1);
        assert!(matches!(
            q_apply_f(0, &qket(&[1]), &cfg),
            Err(FockError::TruncationOverflow { .. })
        ));
    }
}
