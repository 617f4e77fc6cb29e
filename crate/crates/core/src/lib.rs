//! Exact arithmetic for a two-parameter Fock representation on charged
//! Young diagrams.
//!
//! Coefficients live in the Laurent polynomial ring `Z[r^±1, s^±1]`
//! ([`laurent`]); basis vectors are integer partitions coloured by cell
//! residues mod `n` ([`partition`]).  The [`fock`] module applies raising,
//! lowering and diagonal operators to finite vectors, [`qfock`] provides an
//! independently coded one-parameter specialization used as a cross-check,
//! [`chars`] collects weight and character data, and [`relcheck`] verifies
//! the defining relations of the algebra on size-truncated spaces and
//! reports machine-readable witnesses whenever a relation fails.

pub mod cartan;
pub mod chars;
pub mod fock;
pub mod laurent;
pub mod partition;
pub mod qfock;
pub mod relcheck;

pub use chars::{
    dimension_series, euler_partition_series, weight, weight_multiplicities, WeightData,
};
pub use fock::{
    apply_diagonal, apply_e, apply_f, apply_generator, apply_word, diagonal_exponents,
    operator_matrix, DConvention, FockConfig, FockError, FockVector, Generator, OperatorMatrix,
    Orientation, ParseWordError, Word,
};
pub use laurent::{Laurent1, Laurent2, NotDivisible, ParseLaurentError};
pub use partition::{
    enumerate_partitions, enumerate_partitions_with_cap, CapExceeded, InvalidCorner, Node,
    NodeSets, ParsePartitionError, Partition, ResidueConfig, SplitCounts, DEFAULT_SIZE_CAP,
};
pub use qfock::{q_apply_e, q_apply_f, QFockVector};
pub use relcheck::{
    all_pass, check_a4, check_claims, check_commuting, check_highest_weight, check_properties,
    check_serre, check_specialization, infer_pairing, pairing_diffs, printed_pairing, run_all,
    run_config, scan_conjugations, CentralElement, CheckReport, ClaimLabel, ConjugationScan,
    InconsistentRatio, PairingDiff, PairingTable, RelationId, Status, TransitionRatio, Witness,
};
