//! The size-truncated Fock module: sparse vectors over [`Laurent2`] indexed
//! by partitions, with the generator actions.
//!
//! For the lowering operator, each addable node `gamma` of residue `i`
//! contributes `r^iR s^rR |lambda + gamma|` where `iR` / `rR` count the
//! addable / removable `i`-nodes strictly right of `gamma`.  The raising
//! operator mirrors this with left counts taken in the smaller diagram.
//! Diagonal generators act by monomial eigenvalues read off the same node
//! sets, so every coefficient in sight is a signed monomial and vectors stay
//! sparse.
//!
//! Operators never drop basis vectors silently: lowering a partition already
//! at the size bound is a [`FockError::TruncationOverflow`], and callers that
//! compose words reserve headroom with [`Word::f_degree`].

use crate::laurent::Laurent2;
use crate::partition::{enumerate_partitions, CapExceeded, Partition, ResidueConfig, SplitCounts};
use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Exponent rule for the degree generators `D`, `D'`.
///
/// `CellCount` scales by `r^-m0` / `s^-m0` with `m0` the number of cells of
/// residue 0; `Literal` uses the boundary-node exponents
/// `r^-|I0| s^-|R0|` / `r^-|R0| s^-|I0|` instead.  `CellCount` is the default
/// and the convention the relation suite validates; `Literal` is kept as a
/// documented negative control.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DConvention {
    #[default]
    CellCount,
    Literal,
}

/// Which side of a corner the action coefficients read.
///
/// `Standard` counts boundary nodes by strictly smaller column as "left";
/// `Flip` swaps the two sides.  `Flip` exists for experimentation only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Standard,
    Flip,
}

/// Parameters of one truncated module: residue colouring, size bound and the
/// two convention switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockConfig {
    pub residues: ResidueConfig,
    pub max_size: u32,
    pub d_convention: DConvention,
    pub orientation: Orientation,
}

impl FockConfig {
    pub fn new(n: usize, offset: usize, max_size: u32) -> Self {
        FockConfig {
            residues: ResidueConfig::new(n, offset),
            max_size,
            d_convention: DConvention::default(),
            orientation: Orientation::default(),
        }
    }

    pub fn with_d_convention(mut self, dc: DConvention) -> Self {
        self.d_convention = dc;
        self
    }

    pub fn with_orientation(mut self, o: Orientation) -> Self {
        self.orientation = o;
        self
    }

    pub fn n(&self) -> usize {
        self.residues.n
    }

    pub fn offset(&self) -> usize {
        self.residues.offset
    }
}

/// One generator symbol.  Indexed kinds carry a residue in `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    F(usize),
    E(usize),
    Omega(usize),
    OmegaInv(usize),
    OmegaPrime(usize),
    OmegaPrimeInv(usize),
    D,
    DInv,
    DPrime,
    DPrimeInv,
    Gamma,
    GammaInv,
    GammaPrime,
    GammaPrimeInv,
}

impl Generator {
    pub fn is_diagonal(&self) -> bool {
        !matches!(self, Generator::F(_) | Generator::E(_))
    }

    pub fn index(&self) -> Option<usize> {
        match *self {
            Generator::F(i)
            | Generator::E(i)
            | Generator::Omega(i)
            | Generator::OmegaInv(i)
            | Generator::OmegaPrime(i)
            | Generator::OmegaPrimeInv(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::F(i) => write!(f, "f{i}"),
            Generator::E(i) => write!(f, "e{i}"),
            Generator::Omega(i) => write!(f, "w{i}"),
            Generator::OmegaInv(i) => write!(f, "w{i}^-1"),
            Generator::OmegaPrime(i) => write!(f, "w'{i}"),
            Generator::OmegaPrimeInv(i) => write!(f, "w'{i}^-1"),
            Generator::D => write!(f, "D"),
            Generator::DInv => write!(f, "D^-1"),
            Generator::DPrime => write!(f, "D'"),
            Generator::DPrimeInv => write!(f, "D'^-1"),
            Generator::Gamma => write!(f, "g"),
            Generator::GammaInv => write!(f, "g^-1"),
            Generator::GammaPrime => write!(f, "g'"),
            Generator::GammaPrimeInv => write!(f, "g'^-1"),
        }
    }
}

/// A sequence of generators applied right to left, like operator
/// composition: the word `e1 f1` lowers first and raises second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    symbols: Vec<Generator>,
}

impl Word {
    pub fn new(symbols: Vec<Generator>) -> Self {
        Word { symbols }
    }

    pub fn single(g: Generator) -> Self {
        Word { symbols: vec![g] }
    }

    pub fn symbols(&self) -> &[Generator] {
        &self.symbols
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Number of lowering symbols; the size headroom a safe application
    /// needs.
    pub fn f_degree(&self) -> u32 {
        self.symbols
            .iter()
            .filter(|g| matches!(g, Generator::F(_)))
            .count() as u32
    }

    /// Checks that every residue index is within `0..n`.
    pub fn validate(&self, n: usize) -> Result<(), FockError> {
        for g in &self.symbols {
            if let Some(i) = g.index() {
                if i >= n {
                    return Err(FockError::IndexOutOfRange { index: i, n });
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.symbols.iter().map(Generator::to_string).collect();
        write!(f, "{}", text.join(" "))
    }
}

/// A word token that does not name a generator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {token:?} as a generator: {reason}")]
pub struct ParseWordError {
    pub token: String,
    pub reason: String,
}

impl FromStr for Word {
    type Err = ParseWordError;

    /// Whitespace-separated symbols: `f1 e0 w2 w'0 D D' g g'`, each diagonal
    /// symbol optionally suffixed with `^-1`.
    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let mut symbols = Vec::new();
        for token in input.split_whitespace() {
            symbols.push(parse_generator(token)?);
        }
        Ok(Word { symbols })
    }
}

fn parse_generator(token: &str) -> Result<Generator, ParseWordError> {
    let fail = |reason: &str| ParseWordError {
        token: token.to_string(),
        reason: reason.to_string(),
    };
    let (base, inverted) = match token.strip_suffix("^-1") {
        Some(base) => (base, true),
        None => (token, false),
    };
    let unindexed = match base {
        "D" => Some((Generator::D, Generator::DInv)),
        "D'" => Some((Generator::DPrime, Generator::DPrimeInv)),
        "g" => Some((Generator::Gamma, Generator::GammaInv)),
        "g'" => Some((Generator::GammaPrime, Generator::GammaPrimeInv)),
        _ => None,
    };
    if let Some((plain, inverse)) = unindexed {
        return Ok(if inverted { inverse } else { plain });
    }
    let (head, primed, digits) = if let Some(rest) = base.strip_prefix("w'") {
        ("w", true, rest)
    } else if let Some(rest) = base.strip_prefix('w') {
        ("w", false, rest)
    } else if let Some(rest) = base.strip_prefix('f') {
        ("f", false, rest)
    } else if let Some(rest) = base.strip_prefix('e') {
        ("e", false, rest)
    } else {
        return Err(fail("unknown symbol"));
    };
    let index: usize = digits
        .parse()
        .map_err(|_| fail("expected a residue index"))?;
    match head {
        "f" if inverted => Err(fail("f has no inverse")),
        "e" if inverted => Err(fail("e has no inverse")),
        "f" => Ok(Generator::F(index)),
        "e" => Ok(Generator::E(index)),
        "w" => Ok(match (primed, inverted) {
            (false, false) => Generator::Omega(index),
            (false, true) => Generator::OmegaInv(index),
            (true, false) => Generator::OmegaPrime(index),
            (true, true) => Generator::OmegaPrimeInv(index),
        }),
        _ => unreachable!(),
    }
}

/// Failure modes of the module operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    /// A lowering step would push `partition` past the size bound.
    #[error("partition {partition} is at the size bound {bound}; lowering would overflow")]
    TruncationOverflow { partition: Partition, bound: u32 },
    #[error("empty word")]
    EmptyWord,
    #[error("generator index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

/// Finitely supported map from partitions to coefficients, zero-free.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FockVector {
    entries: BTreeMap<Partition, Laurent2>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn basis(lambda: Partition) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(lambda, Laurent2::one());
        FockVector { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, lambda: &Partition) -> Option<&Laurent2> {
        self.entries.get(lambda)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Laurent2)> {
        self.entries.iter()
    }

    /// Adds `coeff |lambda>`, dropping the entry if it cancels.
    pub fn add_term(&mut self, lambda: Partition, coeff: Laurent2) {
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
        I: IntoIterator<Item = (Partition, Laurent2)>,
    {
        let mut out = FockVector::zero();
        for (lambda, coeff) in terms {
            out.add_term(lambda, coeff);
        }
        out
    }

    pub fn scaled(&self, scalar: &Laurent2) -> FockVector {
        FockVector::from_terms(
            self.entries
                .iter()
                .map(|(p, c)| (p.clone(), c * scalar)),
        )
    }

    /// Largest basis size present, zero for the zero vector.
    pub fn max_size(&self) -> u32 {
        self.entries.keys().map(Partition::size).max().unwrap_or(0)
    }
}

impl std::ops::Add<&FockVector> for &FockVector {
    type Output = FockVector;
    fn add(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (p, c) in &rhs.entries {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub<&FockVector> for &FockVector {
    type Output = FockVector;
    fn sub(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (p, c) in &rhs.entries {
            out.add_term(p.clone(), -c);
        }
        out
    }
}

impl Serialize for FockVector {
    /// `[{"partition": [2], "coeff": "1"}, ...]` in basis order.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            partition: &'a Partition,
            coeff: String,
        }
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for (partition, coeff) in &self.entries {
            seq.serialize_element(&Term {
                partition,
                coeff: coeff.to_string(),
            })?;
        }
        seq.end()
    }
}

impl fmt::Display for FockVector {
    /// Ket notation: `|2> + r*|1,1>`; compound coefficients are
    /// parenthesized, the zero vector prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (partition, coeff) in &self.entries {
            let (negative, body) = if coeff.is_one() {
                (false, format!("|{partition}>"))
            } else if coeff.as_monomial().is_some() {
                let text = coeff.to_string();
                let (negative, magnitude) = match text.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, text),
                };
                if magnitude == "1" {
                    (negative, format!("|{partition}>"))
                } else {
                    (negative, format!("{magnitude}*|{partition}>"))
                }
            } else {
                (false, format!("({coeff})*|{partition}>"))
            };
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

fn lowering_exponents(sc: &SplitCounts, orientation: Orientation) -> (i64, i64) {
    match orientation {
        Orientation::Standard => (sc.indent_right as i64, sc.removable_right as i64),
        Orientation::Flip => (sc.indent_left as i64, sc.removable_left as i64),
    }
}

fn raising_exponents(sc: &SplitCounts, orientation: Orientation) -> (i64, i64) {
    match orientation {
        Orientation::Standard => (sc.removable_left as i64, sc.indent_left as i64),
        Orientation::Flip => (sc.removable_right as i64, sc.indent_right as i64),
    }
}

/// Lowering action: each addable `i`-node of each basis diagram contributes
/// the grown diagram with a monomial coefficient from the right split
/// counts.
pub fn apply_f(i: usize, v: &FockVector, cfg: &FockConfig) -> Result<FockVector, FockError> {
    assert!(i < cfg.n(), "residue index out of range");
    let mut out = FockVector::zero();
    for (lambda, coeff) in v.iter() {
        if lambda.size() >= cfg.max_size {
            return Err(FockError::TruncationOverflow {
                partition: lambda.clone(),
                bound: cfg.max_size,
            });
        }
        let sets = lambda.node_sets(&cfg.residues, i);
        for &gamma in &sets.indent {
            let sc = lambda
                .split_counts(gamma, &cfg.residues, i)
                .expect("addable node is a valid corner");
            let (a, b) = lowering_exponents(&sc, cfg.orientation);
            out.add_term(
                lambda.with_node_added(gamma),
                coeff * &Laurent2::monomial(1, a, b),
            );
        }
    }
    Ok(out)
}

/// Raising action: each removable `i`-node contributes the shrunk diagram,
/// with left split counts taken on the boundary of the smaller diagram.
pub fn apply_e(i: usize, v: &FockVector, cfg: &FockConfig) -> FockVector {
    assert!(i < cfg.n(), "residue index out of range");
    let mut out = FockVector::zero();
    for (lambda, coeff) in v.iter() {
        let sets = lambda.node_sets(&cfg.residues, i);
        for &gamma in &sets.removable {
            let mu = lambda.with_node_removed(gamma);
            let sc = mu
                .split_counts(gamma, &cfg.residues, i)
                .expect("removed node is addable in the smaller diagram");
            let (a, b) = raising_exponents(&sc, cfg.orientation);
            out.add_term(mu, coeff * &Laurent2::monomial(1, a, b));
        }
    }
    out
}

/// The `(r, s)` exponent pair of a diagonal generator's eigenvalue on
/// `|lambda>`.
pub fn diagonal_exponents(g: Generator, lambda: &Partition, cfg: &FockConfig) -> (i64, i64) {
    let boundary = |i: usize| -> (i64, i64) {
        let sets = lambda.node_sets(&cfg.residues, i);
        (sets.indent.len() as i64, sets.removable.len() as i64)
    };
    let degree = || -> (i64, i64) {
        match cfg.d_convention {
            DConvention::CellCount => {
                let m0 = lambda.residue_counts(&cfg.residues)[0] as i64;
                (-m0, 0)
            }
            DConvention::Literal => {
                let (indent, removable) = boundary(0);
                (-indent, -removable)
            }
        }
    };
    let whole_boundary = || -> (i64, i64) {
        (
            lambda.addable_nodes().len() as i64,
            lambda.removable_nodes().len() as i64,
        )
    };
    let swap = |(a, b): (i64, i64)| (b, a);
    let neg = |(a, b): (i64, i64)| (-a, -b);
    match g {
        Generator::Omega(i) => boundary(i),
        Generator::OmegaInv(i) => neg(boundary(i)),
        Generator::OmegaPrime(i) => swap(boundary(i)),
        Generator::OmegaPrimeInv(i) => neg(swap(boundary(i))),
        Generator::D => degree(),
        Generator::DInv => neg(degree()),
        Generator::DPrime => swap(degree()),
        Generator::DPrimeInv => neg(swap(degree())),
        Generator::Gamma => whole_boundary(),
        Generator::GammaInv => neg(whole_boundary()),
        Generator::GammaPrime => swap(whole_boundary()),
        Generator::GammaPrimeInv => neg(swap(whole_boundary())),
        Generator::F(_) | Generator::E(_) => panic!("not a diagonal generator"),
    }
}

/// Scales every basis coefficient by the generator's eigenvalue.  Panics if
/// `g` is not diagonal.
pub fn apply_diagonal(g: Generator, v: &FockVector, cfg: &FockConfig) -> FockVector {
    assert!(g.is_diagonal(), "not a diagonal generator");
    if let Some(i) = g.index() {
        assert!(i < cfg.n(), "residue index out of range");
    }
    FockVector::from_terms(v.iter().map(|(lambda, coeff)| {
        let (a, b) = diagonal_exponents(g, lambda, cfg);
        (lambda.clone(), coeff * &Laurent2::monomial(1, a, b))
    }))
}

pub fn apply_generator(
    g: Generator,
    v: &FockVector,
    cfg: &FockConfig,
) -> Result<FockVector, FockError> {
    match g {
        Generator::F(i) => apply_f(i, v, cfg),
        Generator::E(i) => Ok(apply_e(i, v, cfg)),
        _ => Ok(apply_diagonal(g, v, cfg)),
    }
}

/// Right-to-left composition of the word's symbols.
pub fn apply_word(word: &Word, v: &FockVector, cfg: &FockConfig) -> Result<FockVector, FockError> {
    if word.is_empty() {
        return Err(FockError::EmptyWord);
    }
    word.validate(cfg.n())?;
    let mut current = v.clone();
    for &g in word.symbols().iter().rev() {
        current = apply_generator(g, &current, cfg)?;
    }
    Ok(current)
}

/// A sparse operator matrix over the size-graded partition basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorMatrix {
    basis: Vec<Partition>,
    entries: Vec<(usize, usize, Laurent2)>,
}

impl OperatorMatrix {
    pub fn basis(&self) -> &[Partition] {
        &self.basis
    }

    /// `(row, col, coeff)` index triples, sorted by row then column.
    pub fn entries(&self) -> &[(usize, usize, Laurent2)] {
        &self.entries
    }

    /// `(row-partition, col-partition, coeff)` triples in entry order.
    pub fn triples(&self) -> impl Iterator<Item = (&Partition, &Partition, &Laurent2)> {
        self.entries
            .iter()
            .map(|&(r, c, ref coeff)| (&self.basis[r], &self.basis[c], coeff))
    }

    pub fn get(&self, row: &Partition, col: &Partition) -> Option<&Laurent2> {
        let r = self.basis.iter().position(|p| p == row)?;
        let c = self.basis.iter().position(|p| p == col)?;
        self.entries
            .iter()
            .find(|&&(er, ec, _)| er == r && ec == c)
            .map(|(_, _, coeff)| coeff)
    }

    /// The image of the column vector `|col>`.
    pub fn column(&self, col: &Partition) -> FockVector {
        let Some(c) = self.basis.iter().position(|p| p == col) else {
            return FockVector::zero();
        };
        FockVector::from_terms(
            self.entries
                .iter()
                .filter(|&&(_, ec, _)| ec == c)
                .map(|&(r, _, ref coeff)| (self.basis[r].clone(), coeff.clone())),
        )
    }
}

/// Assembles the matrix of `word` over all partitions of size at most the
/// config bound.  Columns that lack the headroom for the word's lowering
/// steps (size + f-degree beyond the bound) are omitted; every included
/// column is computed exactly.
pub fn operator_matrix(word: &Word, cfg: &FockConfig) -> Result<OperatorMatrix, FockError> {
    if word.is_empty() {
        return Err(FockError::EmptyWord);
    }
    word.validate(cfg.n())?;
    let basis: Vec<Partition> = enumerate_partitions(cfg.max_size)?
        .into_iter()
        .flatten()
        .collect();
    let index: BTreeMap<&Partition, usize> =
        basis.iter().enumerate().map(|(k, p)| (p, k)).collect();
    let headroom = word.f_degree();
    let columns: Vec<Vec<(usize, usize, Laurent2)>> = basis
        .par_iter()
        .enumerate()
        .map(|(c, col)| {
            if col.size() + headroom > cfg.max_size {
                return Vec::new();
            }
            let image = apply_word(word, &FockVector::basis(col.clone()), cfg)
                .expect("headroom guard keeps application within the bound");
            image
                .iter()
                .map(|(p, coeff)| (index[p], c, coeff.clone()))
                .collect()
        })
        .collect();
    let mut entries: Vec<(usize, usize, Laurent2)> = columns.into_iter().flatten().collect();
    entries.sort_by_key(|&(r, c, _)| (r, c));
    Ok(OperatorMatrix { basis, entries })
}
