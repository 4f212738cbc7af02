//! Free-group words over generators `e_1, e_2, ...` and identity tests
//! against classes of structure groups.
//!
//! A word is a finite sequence of symbols `e_i` or `e_i^-1`. Reduction
//! cancels adjacent inverse pairs until none remain; the normal form is
//! unique no matter the cancellation order, so two words represent the
//! same free-group element exactly when their reductions are equal.
//!
//! A word `w` is an *identity* (a law) of a group `G` when every
//! substitution of elements of `G` for its generators evaluates to the
//! unit. Which words are identities depends only on coarse structure:
//!
//! * abelian connected Lie groups satisfy `w` iff every generator's
//!   exponent sum vanishes,
//! * nonsolvable connected Lie groups satisfy no nontrivial reduced word,
//! * finite groups are decided by exhaustive substitution over a Cayley
//!   table, within an explicit enumeration budget.

pub mod cayley;
pub mod witness;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use cayley::CayleyTable;
pub use witness::{witness_search, So3Sampler, WitnessOutcome, WitnessSampler, WordGroup};

/// Default cap on `order^k` assignment enumerations for finite groups.
pub const DEFAULT_FINITE_BUDGET: u128 = 10_000_000;

#[derive(Debug, Error)]
pub enum WordsError {
    #[error("generator index must be at least 1")]
    ZeroIndex,
    #[error("symbol value must be a nonzero integer")]
    ZeroSymbol,
    #[error("generator index {0} exceeds the supported range")]
    IndexOverflow(i64),
    #[error("empty reduced word rejected: there is nothing to falsify")]
    TrivialWord,
    #[error("finite enumeration needs {required} assignments, over the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("word uses generator e{index} but the assignment does not cover it")]
    UnassignedGenerator { index: u32 },
    #[error("cayley table rejected: {0}")]
    InvalidTable(String),
}

/// One letter of a word: a generator index (1-based) with a sign.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct GenSymbol {
    index: u32,
    positive: bool,
}

impl GenSymbol {
    pub fn new(index: u32, positive: bool) -> Result<Self, WordsError> {
        if index == 0 {
            return Err(WordsError::ZeroIndex);
        }
        Ok(GenSymbol { index, positive })
    }

    pub fn positive(index: u32) -> Result<Self, WordsError> {
        Self::new(index, true)
    }

    pub fn negative(index: u32) -> Result<Self, WordsError> {
        Self::new(index, false)
    }

    /// Parses the signed-integer encoding: `3` is `e_3`, `-3` is `e_3^-1`.
    pub fn from_signed(value: i64) -> Result<Self, WordsError> {
        if value == 0 {
            return Err(WordsError::ZeroSymbol);
        }
        let magnitude = value.unsigned_abs();
        if magnitude > u32::MAX as u64 {
            return Err(WordsError::IndexOverflow(value));
        }
        Self::new(magnitude as u32, value > 0)
    }

    pub fn to_signed(self) -> i64 {
        let v = self.index as i64;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    /// +1 or -1.
    pub fn signum(self) -> i64 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    pub fn inverse(self) -> Self {
        GenSymbol {
            index: self.index,
            positive: !self.positive,
        }
    }

    pub fn cancels(self, other: Self) -> bool {
        self.index == other.index && self.positive != other.positive
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "e{}", self.index)
        } else {
            write!(f, "e{}^-1", self.index)
        }
    }
}

/// A word in the free group, not necessarily reduced.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(Vec<GenSymbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_symbols(symbols: Vec<GenSymbol>) -> Self {
        Word(symbols)
    }

    pub fn from_signed(values: &[i64]) -> Result<Self, WordsError> {
        values
            .iter()
            .map(|&v| GenSymbol::from_signed(v))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.0.iter().map(|s| s.to_signed()).collect()
    }

    pub fn symbols(&self) -> &[GenSymbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|pair| !pair[0].cancels(pair[1]))
    }

    /// Cancels adjacent inverse pairs until none remain. The result is the
    /// unique normal form regardless of cancellation order.
    #[must_use]
    pub fn reduce(&self) -> Word {
        let mut out = Vec::with_capacity(self.0.len());
        reduce_symbols(&self.0, &mut out);
        Word(out)
    }

    /// Concatenation followed by reduction.
    #[must_use]
    pub fn multiply(&self, rhs: &Word) -> Word {
        let mut out = Vec::with_capacity(self.0.len() + rhs.0.len());
        reduce_symbols(&self.0, &mut out);
        for &s in &rhs.0 {
            push_reduced(&mut out, s);
        }
        Word(out)
    }

    /// Reversed word with every sign flipped.
    #[must_use]
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|s| s.inverse()).collect())
    }

    /// `self * rhs * self^-1 * rhs^-1`, reduced.
    #[must_use]
    pub fn commutator(&self, rhs: &Word) -> Word {
        self.multiply(rhs)
            .multiply(&self.inverse())
            .multiply(&rhs.inverse())
    }

    /// Signed occurrence count per generator index (the image under
    /// abelianization). Zero entries are dropped, so equal vectors mean
    /// equal functions of the index.
    pub fn exponent_vector(&self) -> ExponentVector {
        let mut counts: BTreeMap<u32, i64> = BTreeMap::new();
        for s in &self.0 {
            *counts.entry(s.index()).or_insert(0) += s.signum();
        }
        counts.retain(|_, v| *v != 0);
        ExponentVector(counts)
    }

    /// Distinct generator indices appearing in the word, ascending.
    pub fn generator_indices(&self) -> BTreeSet<u32> {
        self.0.iter().map(|s| s.index()).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for s in &self.0 {
            seq.serialize_element(&s.to_signed())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct WordVisitor;
        impl<'de> Visitor<'de> for WordVisitor {
            type Value = Word;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a sequence of nonzero integers")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Word, A::Error> {
                let mut symbols = Vec::new();
                while let Some(v) = seq.next_element::<i64>()? {
                    symbols.push(GenSymbol::from_signed(v).map_err(serde::de::Error::custom)?);
                }
                Ok(Word(symbols))
            }
        }
        deserializer.deserialize_seq(WordVisitor)
    }
}

/// Stack reduction into `out`; the workhorse behind [`Word::reduce`],
/// exposed separately so bulk callers can reuse buffers.
pub fn reduce_symbols(input: &[GenSymbol], out: &mut Vec<GenSymbol>) {
    out.clear();
    for &s in input {
        push_reduced(out, s);
    }
}

fn push_reduced(stack: &mut Vec<GenSymbol>, s: GenSymbol) {
    match stack.last() {
        Some(&top) if top.cancels(s) => {
            stack.pop();
        }
        _ => stack.push(s),
    }
}

/// Exponent sums per generator index; zero entries are not stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExponentVector(BTreeMap<u32, i64>);

impl ExponentVector {
    pub fn get(&self, index: u32) -> i64 {
        self.0.get(&index).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn add(&self, rhs: &ExponentVector) -> ExponentVector {
        let mut out = self.0.clone();
        for (k, v) in rhs.iter() {
            *out.entry(k).or_insert(0) += v;
        }
        out.retain(|_, v| *v != 0);
        ExponentVector(out)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "e{k}: {v}")?;
        }
        write!(f, "}}")
    }
}

/// Structure-group classes with distinct identity theories.
#[derive(Clone, Debug)]
pub enum GroupClass {
    /// Connected abelian Lie groups. A word is an identity iff its
    /// exponent vector vanishes: exponent sums survive substitution, and
    /// conversely any nonzero sum is falsified by a suitable one-parameter
    /// subgroup element.
    AbelianConnectedLie,
    /// Connected nonsolvable Lie groups satisfy no nontrivial reduced
    /// word, so only the empty reduction is an identity.
    NonsolvableConnectedLie,
    /// A concrete finite group given by its Cayley table; decided by
    /// exhaustive substitution.
    Finite(CayleyTable),
}

/// Decides whether `word` is an identity of every group in `class`,
/// using [`DEFAULT_FINITE_BUDGET`] for finite enumeration.
pub fn is_identity(word: &Word, class: &GroupClass) -> Result<bool, WordsError> {
    is_identity_with_budget(word, class, DEFAULT_FINITE_BUDGET)
}

/// Same as [`is_identity`] with an explicit cap on `order^k` finite
/// enumeration, where `k` counts distinct generators in the word.
pub fn is_identity_with_budget(
    word: &Word,
    class: &GroupClass,
    budget: u128,
) -> Result<bool, WordsError> {
    match class {
        GroupClass::AbelianConnectedLie => Ok(word.exponent_vector().is_zero()),
        GroupClass::NonsolvableConnectedLie => Ok(word.reduce().is_empty()),
        GroupClass::Finite(table) => finite_is_identity(word, table, budget),
    }
}

fn finite_is_identity(word: &Word, table: &CayleyTable, budget: u128) -> Result<bool, WordsError> {
    let indices: Vec<u32> = word.generator_indices().into_iter().collect();
    let n = table.order();
    let required = (n as u128)
        .checked_pow(indices.len() as u32)
        .unwrap_or(u128::MAX);
    if required > budget {
        return Err(WordsError::BudgetExceeded { required, budget });
    }

    // Positions resolved to slots once so the inner loop is table lookups.
    let slot_of: BTreeMap<u32, usize> = indices.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let letters: Vec<(usize, bool)> = word
        .symbols()
        .iter()
        .map(|s| (slot_of[&s.index()], s.is_positive()))
        .collect();

    let mut assignment = vec![0usize; indices.len()];
    loop {
        let mut acc = table.identity();
        for &(slot, positive) in &letters {
            let g = assignment[slot];
            let g = if positive { g } else { table.inverse(g) };
            acc = table.product(acc, g);
        }
        if acc != table.identity() {
            return Ok(false);
        }

        // Odometer step over all order^k assignments.
        let mut pos = 0;
        loop {
            if pos == assignment.len() {
                return Ok(true);
            }
            assignment[pos] += 1;
            if assignment[pos] < n {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
    }
}

/// Falsifying assignment for a word over a finite group, if one exists.
/// Same enumeration as [`is_identity_with_budget`], but reports the first
/// counterexample instead of a bare verdict.
pub fn finite_counterexample(
    word: &Word,
    table: &CayleyTable,
    budget: u128,
) -> Result<Option<BTreeMap<u32, usize>>, WordsError> {
    let indices: Vec<u32> = word.generator_indices().into_iter().collect();
    let n = table.order();
    let required = (n as u128)
        .checked_pow(indices.len() as u32)
        .unwrap_or(u128::MAX);
    if required > budget {
        return Err(WordsError::BudgetExceeded { required, budget });
    }
    let slot_of: BTreeMap<u32, usize> = indices.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let letters: Vec<(usize, bool)> = word
        .symbols()
        .iter()
        .map(|s| (slot_of[&s.index()], s.is_positive()))
        .collect();
    let mut assignment = vec![0usize; indices.len()];
    loop {
        let mut acc = table.identity();
        for &(slot, positive) in &letters {
            let g = assignment[slot];
            let g = if positive { g } else { table.inverse(g) };
            acc = table.product(acc, g);
        }
        if acc != table.identity() {
            let map = indices
                .iter()
                .zip(&assignment)
                .map(|(&g, &e)| (g, e))
                .collect();
            return Ok(Some(map));
        }
        let mut pos = 0;
        loop {
            if pos == assignment.len() {
                return Ok(None);
            }
            assignment[pos] += 1;
            if assignment[pos] < n {
                break;
            }
            assignment[pos] = 0;
            pos += 1;
        }
    }
}
