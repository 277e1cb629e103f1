//! Generation of candidate notations and of the projection inventory.
//!
//! Candidates match odd labels to even labels (so the parity condition holds
//! by construction) and choose an over/under role per pair. They come out in
//! increasing word order: the smallest unassigned label picks its partner in
//! increasing order, over before under.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::notation::{Label, Notation, Role, WordEntry};
use crate::realizability::is_realizable;

/// Depth-first stream over candidate words.
///
/// With `pruned` set, a branch is cut as soon as some rotation of the
/// partial word is already smaller than it; such words are never canonical.
pub struct CandidateStream {
    len: usize,
    pruned: bool,
    word: Vec<Option<WordEntry>>,
    /// Chosen (position, partner, role) per level.
    stack: Vec<(Label, Label, Role)>,
    first_choice: Option<(Label, Role)>,
    started: bool,
    done: bool,
}

impl CandidateStream {
    pub fn new(n: usize, pruned: bool) -> Self {
        CandidateStream {
            len: 2 * n,
            pruned,
            word: vec![None; 2 * n],
            stack: Vec::new(),
            first_choice: None,
            started: false,
            done: n == 0,
        }
    }

    /// Restricts the stream to words where label 1 pairs with `partner` in `role`.
    pub fn with_first_choice(mut self, partner: Label, role: Role) -> Self {
        self.first_choice = Some((partner, role));
        self
    }

    fn free_position(&self) -> Option<Label> {
        self.word.iter().position(Option::is_none).map(|p| (p + 1) as Label)
    }

    fn assign(&mut self, p: Label, q: Label, role: Role) {
        self.word[p as usize - 1] = Some(WordEntry { partner: q, role });
        self.word[q as usize - 1] = Some(WordEntry { partner: p, role: role.flip() });
        self.stack.push((p, q, role));
    }

    fn unassign(&mut self) -> Option<(Label, Label, Role)> {
        let (p, q, role) = self.stack.pop()?;
        self.word[p as usize - 1] = None;
        self.word[q as usize - 1] = None;
        Some((p, q, role))
    }

    /// Next choice for position `p` strictly after `(q, role)` (or the first
    /// one when `after` is `None`).
    fn next_choice(&self, p: Label, after: Option<(Label, Role)>) -> Option<(Label, Role)> {
        if p == 1 {
            if let Some(first) = self.first_choice {
                return if after.is_none() { Some(first) } else { None };
            }
        }
        let mut options = (p + 1..=self.len as Label)
            .step_by(2)
            .filter(|&q| self.word[q as usize - 1].is_none())
            .flat_map(|q| [(q, Role::Over), (q, Role::Under)]);
        match after {
            None => options.next(),
            Some(prev) => options.find(|&c| c > prev),
        }
    }

    /// True if some rotation of the partial word is already smaller.
    fn dominated(&self) -> bool {
        let len = self.len;
        for shift in 1..len {
            for q in 1..=len {
                let old = (q - 1 + shift) % len + 1;
                let (Some(mine), Some(theirs)) = (self.word[q - 1], self.word[old - 1]) else {
                    break;
                };
                let partner = ((theirs.partner as usize + len - 1 - shift) % len + 1) as Label;
                let rotated = WordEntry { partner, role: theirs.role };
                match rotated.cmp(&mine) {
                    core::cmp::Ordering::Less => return true,
                    core::cmp::Ordering::Greater => break,
                    core::cmp::Ordering::Equal => {}
                }
            }
        }
        false
    }

    /// Extends the current partial word to the first complete word below it.
    /// Returns false when the subtree is exhausted.
    fn descend(&mut self) -> bool {
        loop {
            let Some(p) = self.free_position() else { return true };
            match self.next_choice(p, None) {
                Some((q, role)) => {
                    self.assign(p, q, role);
                    if self.pruned && self.dominated() && !self.advance_sibling() {
                        return false;
                    }
                }
                None => {
                    if !self.advance_sibling() {
                        return false;
                    }
                }
            }
        }
    }

    /// Replaces the deepest choice by its next viable sibling, backtracking
    /// as needed. Returns false when the stream is exhausted.
    fn advance_sibling(&mut self) -> bool {
        while let Some((p, q, role)) = self.unassign() {
            let mut after = Some((q, role));
            while let Some((q2, r2)) = self.next_choice(p, after) {
                self.assign(p, q2, r2);
                if !(self.pruned && self.dominated()) {
                    return true;
                }
                self.unassign();
                after = Some((q2, r2));
            }
        }
        false
    }
}

impl Iterator for CandidateStream {
    type Item = Notation;

    fn next(&mut self) -> Option<Notation> {
        if self.done {
            return None;
        }
        let ok = if !self.started {
            self.started = true;
            self.descend()
        } else {
            self.advance_sibling() && self.descend()
        };
        if !ok {
            self.done = true;
            return None;
        }
        let word = self.word.iter().map(|e| e.expect("complete")).collect();
        Some(Notation::from_word_unchecked(word))
    }
}

/// Every parity-valid notation with `n` crossings, `n!·2^n` in total.
pub fn candidates(n: usize) -> CandidateStream {
    CandidateStream::new(n, false)
}

/// Which filters a projection must pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Filters {
    pub canonical: bool,
    pub realizable: bool,
    pub prime: bool,
}

impl Filters {
    pub const ALL: Filters = Filters { canonical: true, realizable: true, prime: true };
    pub const NONE: Filters = Filters { canonical: false, realizable: false, prime: false };
}

/// Realizability depends only on the chord diagram; cache by partner list.
#[derive(Default)]
struct RealizabilityCache {
    known: HashMap<Vec<Label>, bool>,
}

impl RealizabilityCache {
    fn check(&mut self, v: &Notation) -> bool {
        let key: Vec<Label> = v.word().iter().map(|e| e.partner).collect();
        *self.known.entry(key).or_insert_with(|| is_realizable(v).realizable())
    }
}

fn passes(v: &Notation, filters: Filters, cache: &mut RealizabilityCache) -> bool {
    (!filters.canonical || v.is_canonical())
        && (!filters.prime || v.is_cyclically_prime())
        && (!filters.realizable || cache.check(v))
}

/// Labels 1 can pair with, with roles, in stream order. Each choice is one
/// independent slice of the candidate space.
pub fn first_choices(n: usize) -> Vec<(Label, Role)> {
    (1..=n as Label)
        .flat_map(|k| [(2 * k, Role::Over), (2 * k, Role::Under)])
        .collect()
}

/// Survivors of `filters` among the candidates whose label 1 takes `choice`.
pub fn enumerate_slice(n: usize, choice: (Label, Role), filters: Filters) -> Vec<Notation> {
    let mut cache = RealizabilityCache::default();
    CandidateStream::new(n, filters.canonical)
        .with_first_choice(choice.0, choice.1)
        .filter(|v| passes(v, filters, &mut cache))
        .collect()
}

/// Canonical, realizable, prime projections with `n` crossings, in word order.
///
/// Prime means no base point splits the notation into several segments.
pub fn enumerate_projections(n: usize) -> Vec<Notation> {
    enumerate_filtered(n, Filters::ALL)
}

pub fn enumerate_filtered(n: usize, filters: Filters) -> Vec<Notation> {
    if n == 0 {
        return Vec::new();
    }
    first_choices(n).into_iter().flat_map(|c| enumerate_slice(n, c, filters)).collect()
}

/// Survivor counts for `n = 1..=n_max`.
pub fn projection_counts(n_max: usize, filters: Filters) -> Vec<usize> {
    (1..=n_max).map(|n| enumerate_filtered(n, filters).len()).collect()
}
