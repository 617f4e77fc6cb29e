//! Weight data, weight multiplicities and graded dimension series.
//!
//! Each basis diagram carries the residue census `m = (m_0, ..., m_(n-1))`,
//! the per-residue boundary exponent pairs `(|I_j|, |R_j|)`, and the integer
//! pairing `|I_j| - |R_j|`.  The latter always equals
//! `delta_(j,offset) - sum_k a(j,k) m_k` with `a` the affine Cartan matrix;
//! [`weight`] asserts this on every call, so weight extraction doubles as a
//! consistency check of the boundary combinatorics.

use crate::cartan::cartan_entry;
use crate::fock::{diagonal_exponents, FockConfig, Generator};
use crate::partition::{enumerate_partitions, CapExceeded, Partition};
use serde::Serialize;
use std::collections::BTreeMap;

/// The diagonal data of one basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WeightData {
    /// Cells of each residue.
    pub m_vector: Vec<u64>,
    /// Per residue `j`, the `(r, s)` exponents `(|I_j|, |R_j|)`.
    pub omega_exponents: Vec<(i64, i64)>,
    /// `-m_0`, the degree-generator exponent.
    pub d_exponent: i64,
    /// Per residue `j`, `|I_j| - |R_j|`.
    pub classical_pairing: Vec<i64>,
}

/// Computes the weight data of `lambda` and asserts the Cartan-matrix
/// identity for the classical pairing.
pub fn weight(lambda: &Partition, cfg: &FockConfig) -> WeightData {
    let n = cfg.n();
    let m_vector = lambda.residue_counts(&cfg.residues);
    let omega_exponents: Vec<(i64, i64)> = (0..n)
        .map(|j| diagonal_exponents(Generator::Omega(j), lambda, cfg))
        .collect();
    let classical_pairing: Vec<i64> = omega_exponents.iter().map(|&(a, b)| a - b).collect();
    for (j, &pairing) in classical_pairing.iter().enumerate() {
        let expected = if j == cfg.offset() { 1 } else { 0 }
            - (0..n)
                .map(|k| cartan_entry(n, j, k) * m_vector[k] as i64)
                .sum::<i64>();
        assert_eq!(
            pairing, expected,
            "pairing identity violated at {lambda}, j={j}"
        );
    }
    WeightData {
        d_exponent: -(m_vector[0] as i64),
        m_vector,
        omega_exponents,
        classical_pairing,
    }
}

/// For each size `0..=N`, how many partitions share each residue census.
pub fn weight_multiplicities(
    cfg: &FockConfig,
) -> Result<Vec<BTreeMap<Vec<u64>, u64>>, CapExceeded> {
    let groups = enumerate_partitions(cfg.max_size)?;
    Ok(groups
        .into_iter()
        .map(|group| {
            let mut counts = BTreeMap::new();
            for lambda in group {
                *counts
                    .entry(lambda.residue_counts(&cfg.residues))
                    .or_insert(0u64) += 1;
            }
            counts
        })
        .collect())
}

/// Dimension of each size-graded component, `k = 0..=N`.
pub fn dimension_series(cfg: &FockConfig) -> Result<Vec<u64>, CapExceeded> {
    let groups = enumerate_partitions(cfg.max_size)?;
    Ok(groups.iter().map(|g| g.len() as u64).collect())
}

/// Coefficients of the Euler product `prod_(k>=1) (1 - x^k)^-1` up to
/// `x^max`, built by truncated geometric-series multiplication.  Used as an
/// oracle against [`dimension_series`]; shares no code with the enumerator.
pub fn euler_partition_series(max: usize) -> Vec<u64> {
    let mut series = vec![0u64; max + 1];
    series[0] = 1;
    for k in 1..=max {
        // multiply by 1/(1 - x^k) in place: prefix sums with stride k
        for idx in k..=max {
            series[idx] += series[idx - k];
        }
    }
    series
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{apply_e, apply_f, FockVector};

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn vacuum_weight_is_the_fundamental_one() {
        for n in 2..=4 {
            for offset in 0..n {
                let cfg = FockConfig::new(n, offset, 8);
                let w = weight(&Partition::empty(), &cfg);
                assert_eq!(w.m_vector, vec![0; n]);
                assert_eq!(w.d_exponent, 0);
                let delta: Vec<i64> =
                    (0..n).map(|j| if j == offset { 1 } else { 0 }).collect();
                assert_eq!(w.classical_pairing, delta);
            }
        }
    }

    #[test]
    fn single_box_weight() {
        let cfg = FockConfig::new(2, 0, 8);
        let w = weight(&pt(&[1]), &cfg);
        assert_eq!(w.m_vector, vec![1, 0]);
        assert_eq!(w.omega_exponents, vec![(0, 1), (2, 0)]);
        assert_eq!(w.d_exponent, -1);
        assert_eq!(w.classical_pairing, vec![-1, 2]);
    }

    #[test]
    fn square_block_census() {
        let cfg = FockConfig::new(3, 0, 8);
        assert_eq!(weight(&pt(&[2, 2]), &cfg).m_vector, vec![2, 1, 1]);
    }

    #[test]
    fn weight_json_uses_camel_case() {
        let cfg = FockConfig::new(2, 0, 4);
        let json = serde_json::to_value(weight(&pt(&[1]), &cfg)).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "mVector": [1, 0],
                "omegaExponents": [[0, 1], [2, 0]],
                "dExponent": -1,
                "classicalPairing": [-1, 2]
            })
        );
    }

    #[test]
    fn multiplicity_tables_for_tiny_sizes() {
        let cfg = FockConfig::new(2, 0, 2);
        let tables = weight_multiplicities(&cfg).unwrap();
        assert_eq!(tables[0], BTreeMap::from([(vec![0, 0], 1)]));
        assert_eq!(tables[1], BTreeMap::from([(vec![1, 0], 1)]));
        assert_eq!(tables[2], BTreeMap::from([(vec![1, 1], 2)]));
    }

    #[test]
    fn multiplicities_exhaust_each_size() {
        let cfg = FockConfig::new(3, 1, 12);
        let tables = weight_multiplicities(&cfg).unwrap();
        let dims = dimension_series(&cfg).unwrap();
        for (table, dim) in tables.iter().zip(&dims) {
            assert_eq!(table.values().sum::<u64>(), *dim);
        }
    }

    #[test]
    fn dimension_series_matches_euler_product() {
        let cfg = FockConfig::new(2, 0, 20);
        let dims = dimension_series(&cfg).unwrap();
        let oracle = euler_partition_series(20);
        assert_eq!(dims, oracle);
        assert_eq!(dims[0], 1);
        assert_eq!(&dims[..6], &[1, 1, 2, 3, 5, 7]);
        assert_eq!(dims[10], 42);
        assert_eq!(dims[20], 627);
    }

    #[test]
    fn pairing_identity_holds_on_a_broad_sweep() {
        // weight() itself asserts the identity; sweep it across ranks,
        // offsets and diagrams
        for n in 2..=5 {
            for offset in 0..n {
                let cfg = FockConfig::new(n, offset, 10);
                for group in enumerate_partitions(10).unwrap() {
                    for lambda in group {
                        weight(&lambda, &cfg);
                    }
                }
            }
        }
    }

    #[test]
    fn box_moves_shift_the_census_by_a_unit() {
        let cfg = FockConfig::new(3, 2, 10);
        for group in enumerate_partitions(7).unwrap() {
            for lambda in group {
                let base = weight(&lambda, &cfg).m_vector;
                for i in 0..3 {
                    let down = apply_f(i, &FockVector::basis(lambda.clone()), &cfg).unwrap();
                    for (mu, _) in down.iter() {
                        let mut expected = base.clone();
                        expected[i] += 1;
                        assert_eq!(weight(mu, &cfg).m_vector, expected);
                    }
                    let up = apply_e(i, &FockVector::basis(lambda.clone()), &cfg);
                    for (mu, _) in up.iter() {
                        let mut expected = base.clone();
                        expected[i] -= 1;
                        assert_eq!(weight(mu, &cfg).m_vector, expected);
                    }
                }
            }
        }
    }

    #[test]
    fn changing_offset_rotates_all_residue_data() {
        let n = 4;
        for offset in 0..n {
            let base = FockConfig::new(n, 0, 8);
            let shifted = FockConfig::new(n, offset, 8);
            for group in enumerate_partitions(8).unwrap() {
                for lambda in group {
                    let w0 = weight(&lambda, &base);
                    let wi = weight(&lambda, &shifted);
                    for j in 0..n {
                        let rotated = (j + n - offset) % n;
                        assert_eq!(wi.m_vector[j], w0.m_vector[rotated]);
                        assert_eq!(wi.omega_exponents[j], w0.omega_exponents[rotated]);
                        assert_eq!(wi.classical_pairing[j], w0.classical_pairing[rotated]);
                    }
                }
            }
        }
    }

    #[test]
    fn vacuum_is_annihilated_by_every_raising_operator() {
        for n in 2..=5 {
            for offset in 0..n {
                let cfg = FockConfig::new(n, offset, 4);
                for j in 0..n {
                    assert!(apply_e(j, &FockVector::basis(Partition::empty()), &cfg).is_zero());
                }
            }
        }
    }
}
