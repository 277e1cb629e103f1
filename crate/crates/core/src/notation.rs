//! Pair notation for regular knot projections.
//!
//! Walking once around an oriented projection from a chosen base point
//! visits every crossing twice. Numbering the visits `1..=2n` and recording,
//! for each crossing, the (overcrossing, undercrossing) label pair gives the
//! notation. Changing the base point or the orientation relabels the pairs,
//! so one projection has up to `4n` notations; [`Notation::canonicalize`]
//! picks the least of them.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

/// Position of a crossing visit along the traversal, `1..=2n`.
pub type Label = u16;

/// Which strand a visit runs along at its crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }
}

/// One crossing: the label of the overcrossing visit and of the undercrossing visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossingPair {
    pub over: Label,
    pub under: Label,
}

impl CrossingPair {
    pub fn new(over: Label, under: Label) -> Self {
        CrossingPair { over, under }
    }

    pub fn swapped(self) -> Self {
        CrossingPair { over: self.under, under: self.over }
    }
}

/// Entry of a [`SignedWord`]: the label a position is paired with, and the
/// role of the position itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordEntry {
    pub partner: Label,
    pub role: Role,
}

/// The notation unrolled along the traversal; entry `i` describes label `i + 1`.
///
/// The derived ordering (partner first, then `Over < Under`, compared
/// position by position) is the order used to pick preferred notations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedWord(pub Vec<WordEntry>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotationError {
    #[error("label {0} appears more than once")]
    DuplicateLabel(Label),
    #[error("label {label} out of range 1..={max}")]
    LabelOutOfRange { label: Label, max: Label },
    #[error("pair ({0},{0}) pairs a label with itself")]
    SelfPair(Label),
    #[error("odd number of labels ({0}); pairs need two labels each")]
    OddTokenCount(usize),
    #[error("malformed notation near `{0}`")]
    Malformed(alloc::string::String),
    #[error("shift {shift} out of range 0..{len}")]
    ShiftOutOfRange { shift: usize, len: usize },
    #[error("operation needs at least one crossing")]
    Empty,
}

/// A set of `n` crossing pairs using each label of `1..=2n` exactly once.
///
/// Stored as its [`SignedWord`], which makes equality, hashing and the
/// preferred-notation order plain derived comparisons. Notations order by
/// crossing count first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Notation {
    word: Vec<WordEntry>,
}

impl PartialOrd for Notation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Notation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word.len().cmp(&other.word.len()).then_with(|| self.word.cmp(&other.word))
    }
}

impl Notation {
    /// The notation of the crossing-free circle.
    pub fn empty() -> Self {
        Notation { word: Vec::new() }
    }

    pub fn new(pairs: &[CrossingPair]) -> Result<Self, NotationError> {
        let len = pairs.len() * 2;
        let max = len as Label;
        let mut word: Vec<Option<WordEntry>> = alloc::vec![None; len];
        for p in pairs {
            if p.over == p.under {
                return Err(NotationError::SelfPair(p.over));
            }
            for (label, partner, role) in
                [(p.over, p.under, Role::Over), (p.under, p.over, Role::Under)]
            {
                if label == 0 || label > max {
                    return Err(NotationError::LabelOutOfRange { label, max });
                }
                let slot = &mut word[label as usize - 1];
                if slot.is_some() {
                    return Err(NotationError::DuplicateLabel(label));
                }
                *slot = Some(WordEntry { partner, role });
            }
        }
        Ok(Notation { word: word.into_iter().map(|e| e.expect("all labels covered")).collect() })
    }

    /// Builds a notation from `(over, under)` tuples.
    pub fn from_pairs(pairs: &[(Label, Label)]) -> Result<Self, NotationError> {
        let pairs: Vec<CrossingPair> = pairs.iter().map(|&(o, u)| CrossingPair::new(o, u)).collect();
        Self::new(&pairs)
    }

    /// Builds a notation from its word. The word must be consistent
    /// (partners mutual, roles opposite); checked in debug builds.
    pub(crate) fn from_word_unchecked(word: Vec<WordEntry>) -> Self {
        let v = Notation { word };
        debug_assert!(v.is_consistent(), "inconsistent word {:?}", v.word);
        v
    }

    pub(crate) fn is_consistent(&self) -> bool {
        let len = self.word.len();
        self.word.iter().enumerate().all(|(i, e)| {
            let p = e.partner as usize;
            p >= 1
                && p <= len
                && p != i + 1
                && self.word[p - 1].partner as usize == i + 1
                && self.word[p - 1].role != e.role
        })
    }

    /// Crossing count `n`.
    pub fn crossings(&self) -> usize {
        self.word.len() / 2
    }

    /// Number of labels, `2n`.
    pub fn label_count(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn entry(&self, label: Label) -> WordEntry {
        self.word[label as usize - 1]
    }

    pub fn partner(&self, label: Label) -> Label {
        self.word[label as usize - 1].partner
    }

    pub fn role(&self, label: Label) -> Role {
        self.word[label as usize - 1].role
    }

    /// Pairs in ascending over-label order.
    pub fn pairs(&self) -> impl Iterator<Item = CrossingPair> + '_ {
        self.word.iter().enumerate().filter(|(_, e)| e.role == Role::Over).map(|(i, e)| {
            CrossingPair { over: (i + 1) as Label, under: e.partner }
        })
    }

    pub fn encode_word(&self) -> SignedWord {
        SignedWord(self.word.clone())
    }

    pub fn word(&self) -> &[WordEntry] {
        &self.word
    }

    /// Moves the base point forward by `shift` visits, optionally reversing
    /// the orientation. Over/under roles are kept.
    pub fn relabel(&self, shift: usize, reversed: bool) -> Result<Notation, NotationError> {
        let len = self.word.len();
        if len == 0 {
            return if shift == 0 { Ok(self.clone()) } else { Err(NotationError::ShiftOutOfRange { shift, len }) };
        }
        if shift >= len {
            return Err(NotationError::ShiftOutOfRange { shift, len });
        }
        let map = LabelMap { len, shift, reversed };
        let mut word = alloc::vec![WordEntry { partner: 0, role: Role::Over }; len];
        for (i, e) in self.word.iter().enumerate() {
            let new = map.apply((i + 1) as Label);
            word[new as usize - 1] = WordEntry { partner: map.apply(e.partner), role: e.role };
        }
        Ok(Notation::from_word_unchecked(word))
    }

    /// All notations of the same projection under a change of base point
    /// and orientation.
    pub fn orbit(&self) -> BTreeSet<Notation> {
        let len = self.word.len();
        if len == 0 {
            return core::iter::once(self.clone()).collect();
        }
        (0..len)
            .flat_map(|s| [false, true].into_iter().map(move |r| (s, r)))
            .map(|(s, r)| self.relabel(s, r).expect("shift in range"))
            .collect()
    }

    /// The least orbit member under the [`SignedWord`] order.
    pub fn canonicalize(&self) -> Notation {
        let len = self.word.len();
        if len == 0 {
            return self.clone();
        }
        let (shift, reversed) = self.canonical_relabeling(false);
        self.relabel(shift, reversed).expect("shift in range")
    }

    /// Canonical form of the mirror image, without building the mirror first.
    pub fn canonicalize_mirror(&self) -> Notation {
        let len = self.word.len();
        if len == 0 {
            return self.clone();
        }
        let (shift, reversed) = self.canonical_relabeling(true);
        let mut v = self.relabel(shift, reversed).expect("shift in range");
        for e in &mut v.word {
            e.role = e.role.flip();
        }
        v
    }

    /// Smaller of the canonical forms of this notation and of its mirror.
    /// Used wherever mirror images count as the same knot.
    pub fn mirror_key(&self) -> Notation {
        let a = self.canonicalize();
        let b = self.canonicalize_mirror();
        core::cmp::min(a, b)
    }

    pub fn is_canonical(&self) -> bool {
        self.word.is_empty() || self.canonical_relabeling(false) == (0, false)
    }

    /// Finds the relabeling giving the least word, comparing lazily so most
    /// candidates are rejected after a few entries.
    fn canonical_relabeling(&self, flip_roles: bool) -> (usize, bool) {
        let len = self.word.len();
        let mut best = (0usize, false);
        let entry = |shift: usize, reversed: bool, q: usize| -> WordEntry {
            let map = LabelMap { len, shift, reversed };
            let old = map.invert(q as Label);
            let e = self.word[old as usize - 1];
            let role = if flip_roles { e.role.flip() } else { e.role };
            WordEntry { partner: map.apply(e.partner), role }
        };
        let mut first = true;
        for shift in 0..len {
            for reversed in [false, true] {
                if first {
                    first = false;
                    continue;
                }
                for q in 1..=len {
                    let cand = entry(shift, reversed, q);
                    let cur = entry(best.0, best.1, q);
                    match cand.cmp(&cur) {
                        Ordering::Less => {
                            best = (shift, reversed);
                            break;
                        }
                        Ordering::Greater => break,
                        Ordering::Equal => {}
                    }
                }
            }
        }
        best
    }

    /// Swaps over and under at every crossing.
    pub fn mirror(&self) -> Notation {
        Notation {
            word: self.word.iter().map(|e| WordEntry { partner: e.partner, role: e.role.flip() }).collect(),
        }
    }

    /// Maximal split of `1..=2n` into consecutive blocks that no pair straddles.
    pub fn segment_decomposition(&self) -> Result<SegmentDecomposition, NotationError> {
        let len = self.word.len();
        if len == 0 {
            return Err(NotationError::Empty);
        }
        // A cut after k is valid iff the furthest partner of labels 1..=k is <= k.
        let mut boundaries = Vec::new();
        let mut reach = 0usize;
        for (i, e) in self.word.iter().enumerate() {
            reach = reach.max(e.partner as usize);
            let k = i + 1;
            if reach <= k {
                boundaries.push(k as Label);
            }
        }
        Ok(SegmentDecomposition { boundaries })
    }

    /// True iff the notation has a single segment.
    pub fn is_prime_candidate(&self) -> Result<bool, NotationError> {
        Ok(self.segment_decomposition()?.segment_count() == 1)
    }

    /// True iff no base point splits the notation into several segments,
    /// i.e. no proper run of cyclically consecutive labels is closed under
    /// pairing. Unlike [`Notation::is_prime_candidate`] this does not depend
    /// on the chosen base point.
    pub fn is_cyclically_prime(&self) -> bool {
        let len = self.word.len();
        if len <= 2 {
            return true;
        }
        (0..len).all(|s| {
            self.relabel(s, false)
                .expect("shift in range")
                .segment_decomposition()
                .map(|d| d.segment_count() == 1)
                .unwrap_or(true)
        })
    }

    /// Splits a visibly composite notation into its factors at the segment
    /// cuts of every base point. Each factor is relabeled to `1..=2k`.
    /// A cyclically prime notation yields itself.
    pub fn prime_factors(&self) -> Vec<Notation> {
        let len = self.word.len();
        if len == 0 {
            return Vec::new();
        }
        // Find a base point giving the most segments, split there, recurse.
        let mut best: Option<(usize, SegmentDecomposition)> = None;
        for s in 0..len {
            let d = self.relabel(s, false).expect("shift in range").segment_decomposition().expect("non-empty");
            if best.as_ref().is_none_or(|(_, b)| d.segment_count() > b.segment_count()) {
                best = Some((s, d));
            }
        }
        let (shift, decomposition) = best.expect("non-empty");
        if decomposition.segment_count() == 1 {
            return alloc::vec![self.clone()];
        }
        let rotated = self.relabel(shift, false).expect("shift in range");
        let mut out = Vec::new();
        let mut start = 1 as Label;
        for &end in &decomposition.boundaries {
            let word: Vec<WordEntry> = (start..=end)
                .map(|l| {
                    let e = rotated.entry(l);
                    WordEntry { partner: e.partner - start + 1, role: e.role }
                })
                .collect();
            out.extend(Notation::from_word_unchecked(word).prime_factors());
            start = end + 1;
        }
        out
    }
}

/// Maps old labels to new ones for a base-point shift and optional reversal.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LabelMap {
    pub len: usize,
    pub shift: usize,
    pub reversed: bool,
}

impl LabelMap {
    pub fn apply(&self, p: Label) -> Label {
        let len = self.len as i64;
        let p = p as i64;
        let s = self.shift as i64;
        let q = if self.reversed { (s - p).rem_euclid(len) } else { (p - 1 - s).rem_euclid(len) };
        (q + 1) as Label
    }

    pub fn invert(&self, q: Label) -> Label {
        let len = self.len as i64;
        let q = q as i64;
        let s = self.shift as i64;
        let p = if self.reversed { (s - q).rem_euclid(len) } else { (q - 1 + s).rem_euclid(len) };
        (p + 1) as Label
    }
}

/// Cut labels `n_1 < … < n_m = 2n` of the maximal segment split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentDecomposition {
    pub boundaries: Vec<Label>,
}

impl SegmentDecomposition {
    /// `m`.
    pub fn segment_count(&self) -> usize {
        self.boundaries.len()
    }

    /// Number of distinct projections sharing the notation, `2^m`.
    pub fn projection_count(&self) -> u64 {
        1u64 << self.boundaries.len()
    }
}

impl fmt::Display for Notation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("()0");
        }
        for p in self.pairs() {
            write!(f, "({},{})", p.over, p.under)?;
        }
        Ok(())
    }
}

impl FromStr for Notation {
    type Err = NotationError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let compact: alloc::string::String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "()0" {
            return Ok(Notation::empty());
        }
        if compact.is_empty() {
            return Err(NotationError::Malformed(compact));
        }
        let mut labels: Vec<(Label, &str)> = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| NotationError::Malformed(prefix(rest)))?;
            let close = body.find(')').ok_or_else(|| NotationError::Malformed(prefix(rest)))?;
            let inner = &body[..close];
            let tokens: Vec<&str> = if inner.is_empty() { Vec::new() } else { inner.split(',').collect() };
            if tokens.len() != 2 {
                if tokens.len() == 1 {
                    return Err(NotationError::OddTokenCount(labels.len() + 1));
                }
                return Err(NotationError::Malformed(alloc::format!("({inner})")));
            }
            for tok in tokens {
                if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(NotationError::Malformed(alloc::format!("({inner})")));
                }
                let label: Label = tok.parse().map_err(|_| NotationError::Malformed(alloc::format!("({inner})")))?;
                labels.push((label, tok));
            }
            rest = &body[close + 1..];
        }
        let pairs: Vec<CrossingPair> =
            labels.chunks(2).map(|c| CrossingPair::new(c[0].0, c[1].0)).collect();
        Notation::new(&pairs)
    }
}

fn prefix(s: &str) -> alloc::string::String {
    s.chars().take(8).collect()
}
