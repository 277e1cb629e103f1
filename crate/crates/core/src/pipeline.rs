//! Enumerate, merge by moves, separate by fingerprints, count.
//!
//! Items (the unknot plus every enumerated projection up to `n_max`) are
//! grouped by fingerprint. Only items sharing a fingerprint can be the same
//! knot, so move searches run within a group. A group that ends with more
//! than one component leaves unresolved pairs: equal invariants, no path
//! found. Each class is attributed to the crossing number of its least
//! member.
//!
//! A projection with no visible split can still carry a connected sum. A
//! class whose fingerprint factors as a sum of two nontrivial fingerprints
//! is searched for a diagram that splits into two nontrivial factors; when
//! one is found the class is reported as composite and left out of the
//! counts.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::Reverse;

use hashbrown::{HashMap, HashSet};

use thiserror::Error;

use crate::coloring::{fingerprint, ColoringError, ColoringScheme, Fingerprint};
use crate::enumeration::enumerate_projections;
use crate::moves::{dedupe, equivalent, legal_moves, EquivalenceStatus, MoveError, Partition};
use crate::notation::Notation;

/// Knot counts by crossing number for 0 through 10.
pub const REFERENCE_COUNTS: [u64; 11] = [1, 0, 0, 1, 1, 2, 3, 7, 21, 49, 165];
/// Upper limits for 11, 12 and 13 crossings.
pub const REFERENCE_UPPER_BOUNDS: [u64; 3] = [552, 2191, 29781];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyConfig {
    /// Largest crossing count move searches may pass through.
    /// `None` means `n_max + 2`.
    pub budget_n: Option<usize>,
    /// States each component may expand.
    pub budget_nodes: usize,
    pub schemes: Vec<ColoringScheme>,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig { budget_n: None, budget_nodes: 100_000, schemes: ColoringScheme::default_set() }
    }
}

impl ClassifyConfig {
    pub fn budget_n_for(&self, n_max: usize) -> usize {
        self.budget_n.unwrap_or(n_max + 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("crossing budget {budget} is below n_max {n_max}")]
    BudgetBelowNMax { budget: usize, n_max: usize },
    #[error("node budget must be positive")]
    ZeroNodeBudget,
    #[error("at least one coloring scheme is required")]
    NoSchemes,
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Move(#[from] MoveError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotClass {
    pub id: usize,
    /// Least mirror key among the members.
    pub representative: Notation,
    pub crossings: usize,
    pub fingerprint: Fingerprint,
    pub members: usize,
    /// Set when a member was moved to a visibly composite diagram.
    pub connected_sum: Option<ConnectedSum>,
}

impl KnotClass {
    pub fn is_composite(&self) -> bool {
        self.connected_sum.is_some()
    }
}

/// A diagram reached from a class that splits into nontrivial factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectedSum {
    pub diagram: Notation,
    /// Mirror keys of the factors with nontrivial fingerprints.
    pub factors: Vec<Notation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub n_max: usize,
    /// Ordered by crossing number, then representative.
    pub classes: Vec<KnotClass>,
    /// Prime move components per crossing number; the reported counts.
    pub counts: Vec<u64>,
    /// Fingerprint groups holding a prime component, per crossing number.
    pub lower_bounds: Vec<u64>,
    /// Class id pairs with equal fingerprints that no move path joined and
    /// that are not both composite.
    pub unresolved: Vec<(usize, usize)>,
    pub budget_n: usize,
    pub budget_nodes: usize,
}

impl ClassificationReport {
    pub fn upper_bounds(&self) -> &[u64] {
        &self.counts
    }

    /// Unresolved pairs touching classes of crossing number `n`.
    pub fn unresolved_at(&self, n: usize) -> usize {
        self.unresolved
            .iter()
            .filter(|&&(a, b)| self.classes[a].crossings == n || self.classes[b].crossings == n)
            .count()
    }

    /// Finds the class whose members include the mirror key of `v`, if `v`
    /// was a classified item. Only representatives are stored, so this
    /// matches representatives.
    pub fn class_of_representative(&self, v: &Notation) -> Option<&KnotClass> {
        let key = v.mirror_key();
        self.classes.iter().find(|c| c.representative == key)
    }

    /// Id of the class `v` belongs to: a class with the same fingerprint
    /// joined to `v` by a move path within the report's crossing budget and
    /// `budget_nodes`. `None` when no such path was found.
    pub fn locate(&self, v: &Notation, budget_nodes: usize) -> Result<Option<usize>, ClassifyError> {
        let Some(first) = self.classes.first() else { return Ok(None) };
        let schemes: Vec<ColoringScheme> = first.fingerprint.0.iter().map(|e| e.scheme).collect();
        let fp = fingerprint(v, &schemes)?;
        let budget_n = self.budget_n.max(v.crossings());
        for c in self.classes.iter().filter(|c| c.fingerprint == fp) {
            if equivalent(v, &c.representative, budget_n, budget_nodes)?.status == EquivalenceStatus::Connected {
                return Ok(Some(c.id));
            }
        }
        Ok(None)
    }
}

/// One fingerprint group awaiting move searches.
#[derive(Debug, Clone)]
pub struct Group {
    pub fingerprint: Fingerprint,
    /// Distinct mirror keys, ascending.
    pub items: Vec<Notation>,
}

impl Group {
    pub fn dedupe(&self, budget_n: usize, budget_nodes: usize) -> Partition {
        if self.items.len() == 1 {
            return Partition { classes: alloc::vec![alloc::vec![0]], explored: 0 };
        }
        dedupe(&self.items, budget_n, budget_nodes)
    }
}

pub fn validate(n_max: usize, config: &ClassifyConfig) -> Result<(), ClassifyError> {
    let budget = config.budget_n_for(n_max);
    if budget < n_max {
        return Err(ClassifyError::BudgetBelowNMax { budget, n_max });
    }
    if config.budget_nodes == 0 {
        return Err(ClassifyError::ZeroNodeBudget);
    }
    if config.schemes.is_empty() {
        return Err(ClassifyError::NoSchemes);
    }
    Ok(())
}

/// The unknot followed by the projections for `1..=n_max`.
pub fn items_up_to(n_max: usize) -> Vec<Notation> {
    let mut items = alloc::vec![Notation::empty()];
    for n in 1..=n_max {
        items.extend(enumerate_projections(n));
    }
    items
}

/// Groups items by fingerprint after collapsing mirror images. Groups come
/// out ordered by their least item.
pub fn group_items(keyed: Vec<(Notation, Fingerprint)>) -> Vec<Group> {
    let mut by_fp: BTreeMap<Fingerprint, Vec<Notation>> = BTreeMap::new();
    for (v, fp) in keyed {
        by_fp.entry(fp).or_default().push(v.mirror_key());
    }
    let mut groups: Vec<Group> = by_fp
        .into_iter()
        .map(|(fingerprint, mut items)| {
            items.sort();
            items.dedup();
            Group { fingerprint, items }
        })
        .collect();
    groups.sort_by(|a, b| a.items[0].cmp(&b.items[0]));
    groups
}

/// A move component before numbering.
#[derive(Debug, Clone)]
pub struct Component {
    pub representative: Notation,
    pub fingerprint: Fingerprint,
    pub members: usize,
    /// Index of the fingerprint group.
    pub group: usize,
}

/// Flattens the partitions into components ordered by representative.
pub fn components(groups: &[Group], partitions: &[Partition]) -> Vec<Component> {
    let mut out = Vec::new();
    for (g, (group, partition)) in groups.iter().zip(partitions).enumerate() {
        for class in &partition.classes {
            let representative = class.iter().map(|&i| &group.items[i]).min().expect("non-empty").clone();
            out.push(Component {
                representative,
                fingerprint: group.fingerprint.clone(),
                members: class.len(),
                group: g,
            });
        }
    }
    out.sort_by(|a, b| a.representative.cmp(&b.representative));
    out
}

/// Components whose fingerprint equals that of a sum of two components
/// with nontrivial fingerprints and fewer crossings. Sums of three or more
/// prime factors need at least nine crossings in any diagram and more than
/// that without a visible split, so pairs cover the supported range.
pub fn composite_suspects(comps: &[Component]) -> Vec<usize> {
    let factors: Vec<&Component> = comps.iter().filter(|c| !c.fingerprint.is_trivial()).collect();
    (0..comps.len())
        .filter(|&k| {
            let c = &comps[k];
            let n = c.representative.crossings();
            !c.fingerprint.is_trivial()
                && factors.iter().enumerate().any(|(x, a)| {
                    a.representative.crossings() < n
                        && factors[x..].iter().any(|b| {
                            b.representative.crossings() < n && c.fingerprint.connected_sum_matches(&a.fingerprint, &b.fingerprint)
                        })
                })
        })
        .collect()
}

/// Best-first search from `v`, fewest crossings first, for a diagram that
/// splits into at least two factors with nontrivial fingerprints.
pub fn find_connected_sum(
    v: &Notation,
    schemes: &[ColoringScheme],
    budget_n: usize,
    budget_nodes: usize,
) -> Result<Option<ConnectedSum>, ClassifyError> {
    let mut trivial: HashMap<Notation, bool> = HashMap::new();
    let mut seen: HashSet<Notation> = HashSet::new();
    let mut heap = BinaryHeap::new();
    let start = v.mirror_key();
    seen.insert(start.clone());
    heap.push(Reverse((start.crossings(), 0u64, start)));
    let mut seq = 1u64;
    let mut expanded = 0usize;
    while let Some(Reverse((_, _, state))) = heap.pop() {
        if !state.is_cyclically_prime() {
            let mut nontrivial = Vec::new();
            for f in state.prime_factors() {
                // Fewer than three crossings is always an unknot diagram.
                if f.crossings() < 3 {
                    continue;
                }
                let key = f.mirror_key();
                let is_trivial = match trivial.get(&key) {
                    Some(&t) => t,
                    None => {
                        let t = fingerprint(&key, schemes)?.is_trivial();
                        trivial.insert(key.clone(), t);
                        t
                    }
                };
                if !is_trivial {
                    nontrivial.push(key);
                }
            }
            if nontrivial.len() >= 2 {
                nontrivial.sort();
                return Ok(Some(ConnectedSum { diagram: state, factors: nontrivial }));
            }
        }
        if expanded == budget_nodes {
            break;
        }
        expanded += 1;
        let Ok(moves) = legal_moves(&state, budget_n) else { continue };
        for (_, r) in moves {
            let key = r.mirror_key();
            if seen.insert(key.clone()) {
                heap.push(Reverse((key.crossings(), seq, key)));
                seq += 1;
            }
        }
    }
    Ok(None)
}

/// Numbers the components and derives counts, bounds and unresolved pairs.
/// `sums[k]` is the connected sum found for component `k`, if any.
pub fn assemble(
    n_max: usize,
    config: &ClassifyConfig,
    comps: &[Component],
    sums: &[Option<ConnectedSum>],
) -> ClassificationReport {
    let mut counts = alloc::vec![0u64; n_max + 1];
    let mut lower_bounds = alloc::vec![0u64; n_max + 1];
    let mut group_min: BTreeMap<usize, usize> = BTreeMap::new();
    let mut classes = Vec::new();
    for (id, c) in comps.iter().enumerate() {
        let crossings = c.representative.crossings();
        let connected_sum = sums.get(id).cloned().flatten();
        if connected_sum.is_none() {
            counts[crossings] += 1;
            group_min.entry(c.group).or_insert(crossings);
        }
        classes.push(KnotClass {
            id,
            representative: c.representative.clone(),
            crossings,
            fingerprint: c.fingerprint.clone(),
            members: c.members,
            connected_sum,
        });
    }
    for (_, n) in group_min {
        lower_bounds[n] += 1;
    }
    let mut unresolved = Vec::new();
    for a in 0..comps.len() {
        for b in a + 1..comps.len() {
            if comps[a].group == comps[b].group && !(classes[a].is_composite() && classes[b].is_composite()) {
                unresolved.push((a, b));
            }
        }
    }
    ClassificationReport {
        n_max,
        classes,
        counts,
        lower_bounds,
        unresolved,
        budget_n: config.budget_n_for(n_max),
        budget_nodes: config.budget_nodes,
    }
}

/// Single-threaded classification up to `n_max` crossings.
pub fn classify(n_max: usize, config: &ClassifyConfig) -> Result<ClassificationReport, ClassifyError> {
    validate(n_max, config)?;
    let keyed = items_up_to(n_max)
        .into_iter()
        .map(|v| fingerprint(&v, &config.schemes).map(|fp| (v, fp)))
        .collect::<Result<Vec<_>, _>>()?;
    let groups = group_items(keyed);
    let budget_n = config.budget_n_for(n_max);
    let partitions: Vec<Partition> = groups.iter().map(|g| g.dedupe(budget_n, config.budget_nodes)).collect();
    let comps = components(&groups, &partitions);
    let mut sums = alloc::vec![None; comps.len()];
    for k in composite_suspects(&comps) {
        sums[k] = find_connected_sum(&comps[k].representative, &config.schemes, budget_n, config.budget_nodes)?;
    }
    Ok(assemble(n_max, config, &comps, &sums))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceStatus {
    Match,
    Mismatch { expected: u64 },
    /// Only an upper limit is known; `within` says whether the count respects it.
    BoundOnly { bound: u64, within: bool },
    NoReference,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceRow {
    pub crossings: usize,
    pub count: u64,
    pub status: ReferenceStatus,
}

/// Compares per-crossing counts with the published table.
pub fn compare_with_reference(rep: &ClassificationReport) -> Vec<ReferenceRow> {
    rep.counts
        .iter()
        .enumerate()
        .map(|(n, &count)| {
            let status = if n < REFERENCE_COUNTS.len() {
                if REFERENCE_COUNTS[n] == count {
                    ReferenceStatus::Match
                } else {
                    ReferenceStatus::Mismatch { expected: REFERENCE_COUNTS[n] }
                }
            } else if n < REFERENCE_COUNTS.len() + REFERENCE_UPPER_BOUNDS.len() {
                let bound = REFERENCE_UPPER_BOUNDS[n - REFERENCE_COUNTS.len()];
                ReferenceStatus::BoundOnly { bound, within: count <= bound }
            } else {
                ReferenceStatus::NoReference
            };
            ReferenceRow { crossings: n, count, status }
        })
        .collect()
}
