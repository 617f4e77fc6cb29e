//! Integer partitions as charged Young diagrams.
//!
//! A partition `lambda = (lambda_1 >= lambda_2 >= ...)` is drawn with row 1 on
//! top; the cell in row `k`, column `c` (both 1-based) exists when
//! `c <= lambda_k`.  A [`ResidueConfig`] colours every cell with the residue
//! `(offset + col - row) mod n`.
//!
//! The boundary data used by the Fock-space action lives here:
//!
//! * removable nodes: cells `(k, lambda_k)` with `lambda_k > lambda_(k+1)`;
//! * addable (indent) nodes: positions where a cell can be attached,
//!   `(k, lambda_k + 1)` with `lambda_(k-1) > lambda_k`, plus the new-row
//!   position `(len + 1, 1)`;
//! * per-residue node sets and the left/right counts around a chosen corner
//!   ([`Partition::split_counts`]).
//!
//! Both node lists are returned in strictly increasing column order.  Every
//! diagram has exactly one more addable than removable node, and two boundary
//! nodes of the same residue never share a column, so splitting at a corner by
//! strict column comparison is unambiguous.

use serde::Serialize;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Cyclic residue colouring of diagram cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueConfig {
    pub n: usize,
    pub offset: usize,
}

impl ResidueConfig {
    /// Requires `n >= 2`; the offset is reduced mod `n`.
    pub fn new(n: usize, offset: usize) -> Self {
        assert!(n >= 2, "residue modulus must be at least 2");
        ResidueConfig { n, offset: offset % n }
    }
}

/// A 1-based cell position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Node {
    pub row: u32,
    pub col: u32,
}

impl Node {
    pub fn new(row: u32, col: u32) -> Self {
        assert!(row >= 1 && col >= 1, "node coordinates are 1-based");
        Node { row, col }
    }

    /// Diagonal content `col - row`.
    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }

    pub fn residue(&self, cfg: &ResidueConfig) -> usize {
        (cfg.offset as i64 + self.content()).rem_euclid(cfg.n as i64) as usize
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// The addable and removable nodes of one residue, in column order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSets {
    pub indent: Vec<Node>,
    pub removable: Vec<Node>,
}

/// Counts of same-residue boundary nodes strictly left / strictly right of a
/// corner node, the corner itself excluded from every count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SplitCounts {
    pub indent_left: u64,
    pub indent_right: u64,
    pub removable_left: u64,
    pub removable_right: u64,
}

/// The node passed to [`Partition::split_counts`] is not on the boundary.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("node {node} is neither addable nor removable in {partition}")]
pub struct InvalidCorner {
    pub partition: Partition,
    pub node: Node,
}

/// Enumeration request above the configured size cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("requested size {requested} exceeds the cap {cap}")]
pub struct CapExceeded {
    pub requested: u32,
    pub cap: u32,
}

/// A malformed partition string.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {input:?} as a partition: {reason}")]
pub struct ParsePartitionError {
    pub input: String,
    pub reason: String,
}

/// Largest size [`enumerate_partitions`] accepts by default.
pub const DEFAULT_SIZE_CAP: u32 = 40;

/// Weakly decreasing positive parts; the empty diagram has none.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Panics unless `parts` is weakly decreasing with positive entries.
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        let parts = parts.into();
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0),
            "parts must be weakly decreasing and positive"
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of rows.
    pub fn rows(&self) -> u32 {
        self.parts.len() as u32
    }

    /// Number of cells.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of `row` (1-based), zero below the last row.
    pub fn row_len(&self, row: u32) -> u32 {
        if row == 0 {
            u32::MAX
        } else {
            self.parts.get(row as usize - 1).copied().unwrap_or(0)
        }
    }

    /// Removable nodes in increasing column order.
    pub fn removable_nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for k in (1..=self.rows()).rev() {
            if self.row_len(k) > self.row_len(k + 1) {
                out.push(Node::new(k, self.row_len(k)));
            }
        }
        out
    }

    /// Addable nodes in increasing column order.
    pub fn addable_nodes(&self) -> Vec<Node> {
        let mut out = vec![Node::new(self.rows() + 1, 1)];
        for k in (1..=self.rows()).rev() {
            if self.row_len(k - 1) > self.row_len(k) {
                out.push(Node::new(k, self.row_len(k) + 1));
            }
        }
        out
    }

    pub fn is_addable(&self, node: Node) -> bool {
        node.col == self.row_len(node.row) + 1 && self.row_len(node.row - 1) >= node.col
    }

    pub fn is_removable(&self, node: Node) -> bool {
        node.col == self.row_len(node.row)
            && node.col > 0
            && self.row_len(node.row + 1) < node.col
    }

    /// The diagram with `node` attached; panics unless `node` is addable.
    pub fn with_node_added(&self, node: Node) -> Partition {
        assert!(self.is_addable(node), "{node} is not addable in {self}");
        let mut parts = self.parts.clone();
        if node.row as usize > parts.len() {
            parts.push(1);
        } else {
            parts[node.row as usize - 1] += 1;
        }
        Partition { parts }
    }

    /// The diagram with `node` detached; panics unless `node` is removable.
    pub fn with_node_removed(&self, node: Node) -> Partition {
        assert!(self.is_removable(node), "{node} is not removable in {self}");
        let mut parts = self.parts.clone();
        parts[node.row as usize - 1] -= 1;
        if parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    /// Addable and removable nodes of residue `i`, each in column order.
    pub fn node_sets(&self, cfg: &ResidueConfig, i: usize) -> NodeSets {
        let keep = |nodes: Vec<Node>| -> Vec<Node> {
            nodes
                .into_iter()
                .filter(|node| node.residue(cfg) == i)
                .collect()
        };
        NodeSets {
            indent: keep(self.addable_nodes()),
            removable: keep(self.removable_nodes()),
        }
    }

    /// Counts of residue-`i` boundary nodes on each side of `corner`.
    ///
    /// `corner` must itself be addable or removable (any residue); it is
    /// excluded from all four counts.
    pub fn split_counts(
        &self,
        corner: Node,
        cfg: &ResidueConfig,
        i: usize,
    ) -> Result<SplitCounts, InvalidCorner> {
        if !self.is_addable(corner) && !self.is_removable(corner) {
            return Err(InvalidCorner {
                partition: self.clone(),
                node: corner,
            });
        }
        let sets = self.node_sets(cfg, i);
        let mut counts = SplitCounts::default();
        for node in &sets.indent {
            if node.col < corner.col {
                counts.indent_left += 1;
            } else if node.col > corner.col {
                counts.indent_right += 1;
            }
        }
        for node in &sets.removable {
            if node.col < corner.col {
                counts.removable_left += 1;
            } else if node.col > corner.col {
                counts.removable_right += 1;
            }
        }
        Ok(counts)
    }

    /// Number of cells of each residue, indexed `0..n`.
    pub fn residue_counts(&self, cfg: &ResidueConfig) -> Vec<u64> {
        let mut counts = vec![0u64; cfg.n];
        for (row0, &len) in self.parts.iter().enumerate() {
            for col in 1..=len {
                let node = Node::new(row0 as u32 + 1, col);
                counts[node.residue(cfg)] += 1;
            }
        }
        counts
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Partition {
    /// Enumeration order: by size, then lexicographically descending, so
    /// `(5) < (4,1) < (3,2) < ...` within size 5.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl fmt::Display for Partition {
    /// Comma-separated parts; the empty diagram prints as `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        let text: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", text.join(","))
    }
}

impl FromStr for Partition {
    type Err = ParsePartitionError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let fail = |reason: &str| ParsePartitionError {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = input.trim();
        if trimmed.is_empty() {
            return Err(fail("empty input"));
        }
        if trimmed == "-" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for piece in trimmed.split(',') {
            let value: u32 = piece
                .trim()
                .parse()
                .map_err(|_| fail(&format!("{:?} is not a positive integer", piece.trim())))?;
            if value == 0 {
                return Err(fail("parts must be positive"));
            }
            parts.push(value);
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(fail("parts must be weakly decreasing"));
        }
        Ok(Partition { parts })
    }
}

/// All partitions of size `0..=max_size`, grouped by size, each group in
/// lexicographically descending order.
pub fn enumerate_partitions(max_size: u32) -> Result<Vec<Vec<Partition>>, CapExceeded> {
    enumerate_partitions_with_cap(max_size, DEFAULT_SIZE_CAP)
}

pub fn enumerate_partitions_with_cap(
    max_size: u32,
    cap: u32,
) -> Result<Vec<Vec<Partition>>, CapExceeded> {
    if max_size > cap {
        return Err(CapExceeded {
            requested: max_size,
            cap,
        });
    }
    fn rec(remaining: u32, max_part: u32, acc: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: acc.clone() });
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            acc.push(part);
            rec(remaining - part, part, acc, out);
            acc.pop();
        }
    }
    let mut groups = Vec::with_capacity(max_size as usize + 1);
    for size in 0..=max_size {
        let mut group = Vec::new();
        rec(size, size, &mut Vec::new(), &mut group);
        groups.push(group);
    }
    Ok(groups)
}
