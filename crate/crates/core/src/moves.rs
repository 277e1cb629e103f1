//! Reidemeister moves on pair notations.
//!
//! The rewrites follow the label-level effect of each move. Which rewrites
//! are offered for a given notation is read off the faces of its planar
//! witness: a curl can go on any edge, a finger (second move) can push one
//! arc over another only when both bound a common face, bigons collapse only
//! when they are faces, and the third move needs a triangular face with one
//! strand over both others.

use alloc::collections::{BinaryHeap, VecDeque};
use alloc::vec::Vec;
use core::cmp::Reverse;
use core::fmt;
use core::str::FromStr;

use hashbrown::{HashMap, HashSet};
use thiserror::Error;

use crate::notation::{CrossingPair, Label, Notation, Role};
use crate::realizability::{planar_rotations, witness, RotationSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveKind {
    R1,
    R2,
    R3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Add,
    Remove,
    Replace,
}

/// Shape of the two pairs a second move inserts or deletes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum R2Variant {
    /// `(i,j), (i+1,j+1)`
    Parallel,
    /// `(i,j+1), (i+1,j)`
    Crossed,
}

/// One rewrite. Labels refer to the notation the move is applied to, after
/// the optional base-point `shift` (removals near the wrap-around edge are
/// expressed on a rotated labeling). R2 labels `i < j` are the labels of the
/// new pairs after insertion, so `i+1 < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveDescriptor {
    R1Add { site: Label, over_first: bool },
    R1Remove { shift: u16, site: Label },
    R2Add { i: Label, j: Label, variant: R2Variant, first_over: bool },
    R2Remove { shift: u16, i: Label, j: Label },
    /// Pairs `(i,j), (i',k), (j',k')` become `(i,k'), (i',j'), (j,k)`.
    R3 { first: CrossingPair, second: CrossingPair, third: CrossingPair },
}

impl MoveDescriptor {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveDescriptor::R1Add { .. } | MoveDescriptor::R1Remove { .. } => MoveKind::R1,
            MoveDescriptor::R2Add { .. } | MoveDescriptor::R2Remove { .. } => MoveKind::R2,
            MoveDescriptor::R3 { .. } => MoveKind::R3,
        }
    }

    pub fn direction(&self) -> Direction {
        match self {
            MoveDescriptor::R1Add { .. } | MoveDescriptor::R2Add { .. } => Direction::Add,
            MoveDescriptor::R1Remove { .. } | MoveDescriptor::R2Remove { .. } => Direction::Remove,
            MoveDescriptor::R3 { .. } => Direction::Replace,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("site {0} out of range")]
    SiteOutOfRange(Label),
    #[error("no removable pattern at the given site")]
    PatternAbsent,
    #[error("third-move triple has inconsistent adjacency offsets")]
    OffsetsInconsistent,
    #[error("inserted pairs violate the odd-even condition")]
    ParityViolation,
    #[error("notation is not realizable")]
    Unrealizable,
    #[error("crossing budget {budget} is below the input size {needed}")]
    BudgetTooSmall { budget: usize, needed: usize },
    #[error("malformed move record `{0}`")]
    Malformed(alloc::string::String),
    #[error("path does not replay: {0}")]
    Replay(alloc::string::String),
}

fn rebuild(pairs: impl Iterator<Item = CrossingPair>) -> Result<Notation, MoveError> {
    let pairs: Vec<CrossingPair> = pairs.collect();
    Notation::new(&pairs).map_err(|_| MoveError::PatternAbsent)
}

fn shifted(v: &Notation, shift: u16) -> Result<Notation, MoveError> {
    v.relabel(shift as usize, false).map_err(|_| MoveError::SiteOutOfRange(shift))
}

/// First move: insert or delete a pair `(i,i+1)` / `(i+1,i)`, moving the
/// labels `>= i` by two.
pub fn apply_r1(v: &Notation, d: &MoveDescriptor) -> Result<Notation, MoveError> {
    match *d {
        MoveDescriptor::R1Add { site, over_first } => {
            let len = v.label_count() as Label;
            if site == 0 || site > len + 1 {
                return Err(MoveError::SiteOutOfRange(site));
            }
            let bump = |x: Label| if x >= site { x + 2 } else { x };
            let new = if over_first { CrossingPair::new(site, site + 1) } else { CrossingPair::new(site + 1, site) };
            rebuild(v.pairs().map(|p| CrossingPair::new(bump(p.over), bump(p.under))).chain([new]))
        }
        MoveDescriptor::R1Remove { shift, site } => {
            let v = shifted(v, shift)?;
            let len = v.label_count() as Label;
            if site == 0 || site >= len {
                return Err(MoveError::SiteOutOfRange(site));
            }
            if v.partner(site) != site + 1 {
                return Err(MoveError::PatternAbsent);
            }
            let drop = |x: Label| if x > site + 1 { x - 2 } else { x };
            rebuild(
                v.pairs()
                    .filter(|p| p.over != site && p.under != site)
                    .map(|p| CrossingPair::new(drop(p.over), drop(p.under))),
            )
        }
        _ => Err(MoveError::PatternAbsent),
    }
}

/// Second move: insert or delete two pairs `(i,j),(i+1,j+1)` or
/// `(i,j+1),(i+1,j)`. Labels strictly between `i+1` and `j` move by two and
/// labels beyond `j+1` by four.
pub fn apply_r2(v: &Notation, d: &MoveDescriptor) -> Result<Notation, MoveError> {
    match *d {
        MoveDescriptor::R2Add { i, j, variant, first_over } => {
            let len = v.label_count() as Label;
            if i == 0 || i > len + 1 {
                return Err(MoveError::SiteOutOfRange(i));
            }
            if j < i + 2 || j > len + 3 {
                return Err(MoveError::SiteOutOfRange(j));
            }
            let (a, b) = match variant {
                R2Variant::Parallel => ((i, j), (i + 1, j + 1)),
                R2Variant::Crossed => ((i, j + 1), (i + 1, j)),
            };
            if (a.0 + a.1) % 2 == 0 {
                return Err(MoveError::ParityViolation);
            }
            let (a, b) = if first_over {
                (CrossingPair::new(a.0, a.1), CrossingPair::new(b.0, b.1))
            } else {
                (CrossingPair::new(a.1, a.0), CrossingPair::new(b.1, b.0))
            };
            let bump = |x: Label| {
                if x < i {
                    x
                } else if x + 2 < j {
                    x + 2
                } else {
                    x + 4
                }
            };
            rebuild(v.pairs().map(|p| CrossingPair::new(bump(p.over), bump(p.under))).chain([a, b]))
        }
        MoveDescriptor::R2Remove { shift, i, j } => {
            let v = shifted(v, shift)?;
            let len = v.label_count() as Label;
            if i == 0 || j < i + 2 || j >= len {
                return Err(MoveError::SiteOutOfRange(j));
            }
            let pi = v.partner(i);
            let pi1 = v.partner(i + 1);
            let matches = (pi == j && pi1 == j + 1) || (pi == j + 1 && pi1 == j);
            if !matches || v.role(i) != v.role(i + 1) {
                return Err(MoveError::PatternAbsent);
            }
            let gone = [i, i + 1, j, j + 1];
            let drop = |x: Label| {
                if x < i {
                    x
                } else if x < j {
                    x - 2
                } else {
                    x - 4
                }
            };
            rebuild(
                v.pairs()
                    .filter(|p| !gone.contains(&p.over))
                    .map(|p| CrossingPair::new(drop(p.over), drop(p.under))),
            )
        }
        _ => Err(MoveError::PatternAbsent),
    }
}

fn adjacent(a: Label, b: Label, len: Label) -> bool {
    let d = a.abs_diff(b);
    d == 1 || (len > 2 && d == len - 1)
}

/// Third move: three pairs are exchanged, no label moves.
pub fn apply_r3(v: &Notation, d: &MoveDescriptor) -> Result<Notation, MoveError> {
    let MoveDescriptor::R3 { first, second, third } = *d else {
        return Err(MoveError::PatternAbsent);
    };
    let len = v.label_count() as Label;
    for p in [first, second, third] {
        if p.over == 0 || p.over > len || p.under == 0 || p.under > len || v.partner(p.over) != p.under
            || v.role(p.over) != Role::Over
        {
            return Err(MoveError::PatternAbsent);
        }
    }
    let (i, j) = (first.over, first.under);
    let (i2, k) = (second.over, second.under);
    let (j2, k2) = (third.over, third.under);
    if !(adjacent(i, i2, len) && adjacent(j, j2, len) && adjacent(k, k2, len)) {
        return Err(MoveError::OffsetsInconsistent);
    }
    let replaced = [CrossingPair::new(i, k2), CrossingPair::new(i2, j2), CrossingPair::new(j, k)];
    rebuild(
        v.pairs()
            .filter(|p| *p != first && *p != second && *p != third)
            .chain(replaced),
    )
}

/// Applies any move.
pub fn apply(v: &Notation, d: &MoveDescriptor) -> Result<Notation, MoveError> {
    match d.kind() {
        MoveKind::R1 => apply_r1(v, d),
        MoveKind::R2 => apply_r2(v, d),
        MoveKind::R3 => apply_r3(v, d),
    }
}

/// The third move that undoes `d` on its result.
pub fn r3_inverse(d: &MoveDescriptor) -> Option<MoveDescriptor> {
    let MoveDescriptor::R3 { first, second, third } = *d else {
        return None;
    };
    let (i, j) = (first.over, first.under);
    let (i2, k) = (second.over, second.under);
    let (j2, k2) = (third.over, third.under);
    Some(MoveDescriptor::R3 {
        first: CrossingPair::new(i2, j2),
        second: CrossingPair::new(i, k2),
        third: CrossingPair::new(j, k),
    })
}

/// Smallest base-point shift that keeps the edges starting at `starts` off
/// the wrap-around position.
fn shift_avoiding(starts: &[Label], len: Label) -> u16 {
    (0..len)
        .find(|&s| starts.iter().all(|&l| l % len != s))
        .expect("fewer edges than positions")
}

fn shift_label(l: Label, shift: u16, len: Label) -> Label {
    ((l as i64 - 1 - shift as i64).rem_euclid(len as i64) + 1) as Label
}

/// Moves available on the witness embedding of `v`, with their results.
/// Results above `budget_n` crossings are dropped; duplicate results keep
/// the first descriptor found.
pub fn legal_moves(v: &Notation, budget_n: usize) -> Result<Vec<(MoveDescriptor, Notation)>, MoveError> {
    if v.is_cyclically_prime() {
        let w = witness(v).ok_or(MoveError::Unrealizable)?;
        return Ok(legal_moves_on(v, &w, budget_n));
    }
    let rotations = planar_rotations(v);
    if rotations.is_empty() {
        return Err(MoveError::Unrealizable);
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for w in &rotations {
        for (d, r) in legal_moves_on(v, w, budget_n) {
            if seen.insert(r.clone()) {
                out.push((d, r));
            }
        }
    }
    Ok(out)
}

/// [`legal_moves`] with a known witness.
pub fn legal_moves_on(v: &Notation, w: &RotationSystem, budget_n: usize) -> Vec<(MoveDescriptor, Notation)> {
    let mut out: Vec<(MoveDescriptor, Notation)> = Vec::new();
    let mut seen: HashSet<Notation> = HashSet::new();
    let mut push = |d: MoveDescriptor, out: &mut Vec<(MoveDescriptor, Notation)>| {
        if let Ok(r) = apply(v, &d) {
            if r.crossings() <= budget_n && seen.insert(r.clone()) {
                out.push((d, r));
            }
        } else {
            debug_assert!(false, "generated move {d:?} does not apply to {v}");
        }
    };

    let n = v.crossings();
    let len = v.label_count() as Label;

    // Removals first so that searches see reductions early.
    for l in 1..=len {
        let next = l % len + 1;
        if v.partner(l) == next {
            let shift = shift_avoiding(&[l], len);
            let site = shift_label(l, shift, len);
            push(MoveDescriptor::R1Remove { shift, site }, &mut out);
        }
    }

    let faces = w.faces();
    let crossing_of = |l: Label| l.min(v.partner(l));
    for face in &faces {
        if face.len() == 2 && n >= 2 {
            let l1 = face[0].edge() as Label + 1;
            let l2 = face[1].edge() as Label + 1;
            if crossing_of(l1) == crossing_of(l1 % len + 1) {
                continue;
            }
            let shift = shift_avoiding(&[l1, l2], len);
            let a = shift_label(l1, shift, len);
            let b = shift_label(l2, shift, len);
            let d = MoveDescriptor::R2Remove { shift, i: a.min(b), j: a.max(b) };
            if apply_r2(v, &d).is_ok() {
                push(d, &mut out);
            }
        }
    }

    for face in &faces {
        if face.len() == 3 {
            if let Some(d) = r3_site(v, face.iter().map(|d| d.edge() as Label + 1)) {
                push(d, &mut out);
            }
        }
    }

    if n < budget_n {
        for site in 1..=len + 1 {
            for over_first in [true, false] {
                push(MoveDescriptor::R1Add { site, over_first }, &mut out);
            }
        }
    }

    if n + 2 <= budget_n {
        // A finger pushed over a later part of its own edge.
        for l in 0..len.max(1) {
            let i = if len == 0 { 1 } else { l + 2 };
            for first_over in [true, false] {
                push(MoveDescriptor::R2Add { i, j: i + 2, variant: R2Variant::Crossed, first_over }, &mut out);
            }
        }
        for face in &faces {
            for x in 0..face.len() {
                for y in x + 1..face.len() {
                    let (mut da, mut db) = (face[x], face[y]);
                    if da.edge() > db.edge() {
                        core::mem::swap(&mut da, &mut db);
                    }
                    let (la, lb) = (da.edge() as Label + 1, db.edge() as Label + 1);
                    let variant = if da.is_forward() == db.is_forward() {
                        R2Variant::Crossed
                    } else {
                        R2Variant::Parallel
                    };
                    for first_over in [true, false] {
                        push(MoveDescriptor::R2Add { i: la + 1, j: lb + 3, variant, first_over }, &mut out);
                    }
                }
            }
        }
    }
    out
}

/// Third-move descriptor for a triangular face whose edges start at the
/// given labels, if one strand passes over both others.
fn r3_site(v: &Notation, starts: impl Iterator<Item = Label>) -> Option<MoveDescriptor> {
    let len = v.label_count() as Label;
    let edges: Vec<(Label, Label)> = starts.map(|l| (l, l % len + 1)).collect();
    let mut crossings: Vec<Label> =
        edges.iter().flat_map(|&(a, b)| [a.min(v.partner(a)), b.min(v.partner(b))]).collect();
    crossings.sort_unstable();
    crossings.dedup();
    if crossings.len() != 3 {
        return None;
    }
    let status = |(a, b): (Label, Label)| (v.role(a), v.role(b));
    let top = *edges.iter().find(|&&e| status(e) == (Role::Over, Role::Over))?;
    let bottom = *edges.iter().find(|&&e| status(e) == (Role::Under, Role::Under))?;
    let middle = *edges.iter().find(|&&e| e != top && e != bottom)?;
    let on = |l: Label, e: (Label, Label)| l == e.0 || l == e.1;
    let other = |l: Label, e: (Label, Label)| if l == e.0 { e.1 } else { e.0 };
    let (i, i2) = if on(v.partner(top.0), middle) { (top.0, top.1) } else { (top.1, top.0) };
    let j = v.partner(i);
    let k = v.partner(i2);
    if !on(j, middle) || !on(k, bottom) {
        return None;
    }
    let (j2, k2) = (other(j, middle), other(k, bottom));
    if v.partner(j2) != k2 || v.role(j2) != Role::Over {
        return None;
    }
    Some(MoveDescriptor::R3 {
        first: CrossingPair::new(i, j),
        second: CrossingPair::new(i2, k),
        third: CrossingPair::new(j2, k2),
    })
}

/// Third moves available on `v`.
pub fn r3_candidates(v: &Notation) -> Result<Vec<MoveDescriptor>, MoveError> {
    let w = witness(v).ok_or(MoveError::Unrealizable)?;
    Ok(w.faces()
        .iter()
        .filter(|f| f.len() == 3)
        .filter_map(|f| r3_site(v, f.iter().map(|d| d.edge() as Label + 1)))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquivalenceStatus {
    Connected,
    Unknown,
}

/// Outcome of a bounded search. `Unknown` never means inequivalent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceVerdict {
    pub status: EquivalenceStatus,
    /// Replays from the source's mirror key to the target's mirror key; each
    /// move applies to the mirror key of the previous result.
    pub path: Option<Vec<MoveDescriptor>>,
    pub explored: usize,
}

/// Replays `path` from `source`, returning the mirror key reached.
pub fn replay(source: &Notation, path: &[MoveDescriptor]) -> Result<Notation, MoveError> {
    let mut state = source.mirror_key();
    for d in path {
        let next = apply(&state, d).map_err(|e| MoveError::Replay(alloc::format!("{d}: {e}")))?;
        state = next.mirror_key();
    }
    Ok(state)
}

struct SearchSide {
    parent: HashMap<Notation, Option<(Notation, MoveDescriptor)>>,
    queue: VecDeque<Notation>,
}

impl SearchSide {
    fn new(root: Notation) -> Self {
        let mut parent = HashMap::new();
        parent.insert(root.clone(), None);
        let mut queue = VecDeque::new();
        queue.push_back(root);
        SearchSide { parent, queue }
    }

    /// Keys from the root to `key`, with the move leading into each.
    fn chain(&self, key: &Notation) -> Vec<(Notation, Option<MoveDescriptor>)> {
        let mut out = Vec::new();
        let mut cur = key.clone();
        loop {
            match self.parent.get(&cur).expect("visited") {
                Some((p, d)) => {
                    out.push((cur.clone(), Some(*d)));
                    cur = p.clone();
                }
                None => {
                    out.push((cur, None));
                    break;
                }
            }
        }
        out.reverse();
        out
    }
}

/// Finds a move from `from` whose result has mirror key `target`.
fn move_towards(from: &Notation, target: &Notation, budget_n: usize) -> Option<MoveDescriptor> {
    legal_moves(from, budget_n)
        .ok()?
        .into_iter()
        .find(|(_, r)| r.mirror_key() == *target)
        .map(|(d, _)| d)
}

/// Bidirectional breadth-first search over mirror keys.
pub fn equivalent(
    a: &Notation,
    b: &Notation,
    budget_n: usize,
    budget_nodes: usize,
) -> Result<EquivalenceVerdict, MoveError> {
    let needed = a.crossings().max(b.crossings());
    if budget_n < needed {
        return Err(MoveError::BudgetTooSmall { budget: budget_n, needed });
    }
    if witness(a).is_none() || witness(b).is_none() {
        return Err(MoveError::Unrealizable);
    }
    let (ka, kb) = (a.mirror_key(), b.mirror_key());
    if ka == kb {
        return Ok(EquivalenceVerdict { status: EquivalenceStatus::Connected, path: Some(Vec::new()), explored: 0 });
    }
    let mut sides = [SearchSide::new(ka), SearchSide::new(kb)];
    let mut explored = 0;
    let meeting = 'search: loop {
        if explored >= budget_nodes {
            break None;
        }
        let pick = match (sides[0].queue.len(), sides[1].queue.len()) {
            (0, 0) => break None,
            (0, _) => 1,
            (_, 0) => 0,
            (x, y) => usize::from(y < x),
        };
        let state = sides[pick].queue.pop_front().expect("non-empty");
        explored += 1;
        let Ok(moves) = legal_moves(&state, budget_n) else { continue };
        for (d, r) in moves {
            let key = r.mirror_key();
            if sides[pick].parent.contains_key(&key) {
                continue;
            }
            sides[pick].parent.insert(key.clone(), Some((state.clone(), d)));
            if sides[1 - pick].parent.contains_key(&key) {
                break 'search Some(key);
            }
            sides[pick].queue.push_back(key);
        }
    };
    let Some(meet) = meeting else {
        return Ok(EquivalenceVerdict { status: EquivalenceStatus::Unknown, path: None, explored });
    };
    let mut path: Vec<MoveDescriptor> = sides[0].chain(&meet).into_iter().filter_map(|(_, d)| d).collect();
    let back = sides[1].chain(&meet);
    for w in back.windows(2).rev() {
        let (parent, child) = (&w[0].0, &w[1].0);
        let d = move_towards(child, parent, budget_n)
            .ok_or_else(|| MoveError::Replay(alloc::format!("no reverse move from {child} to {parent}")))?;
        path.push(d);
    }
    Ok(EquivalenceVerdict { status: EquivalenceStatus::Connected, path: Some(path), explored })
}

/// Partition of a list of items into move-connected classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// Item indices per class, each class sorted by item order, classes
    /// ordered by their least item.
    pub classes: Vec<Vec<usize>>,
    /// States expanded across all searches.
    pub explored: usize,
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Unions and returns the surviving root (the smaller index).
    fn union(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        let (keep, gone) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[gone] = keep;
        keep
    }
}

type Frontier = BinaryHeap<Reverse<(usize, u64, Notation)>>;

/// Merges items connected by move paths.
///
/// Every item starts as its own component with its own frontier; a
/// component's frontier is shared by all items merged into it. Each round
/// expands the least-explored component that still has budget, taking its
/// state with fewest crossings first. Reaching a state already claimed by
/// another component merges the two. Stops when one component remains or
/// every component is out of budget or states.
pub fn dedupe(items: &[Notation], budget_n: usize, budget_nodes: usize) -> Partition {
    let mut order: Vec<usize> = (0..items.len()).collect();
    let keys: Vec<Notation> = items.iter().map(Notation::mirror_key).collect();
    order.sort_by(|&x, &y| keys[x].cmp(&keys[y]).then(x.cmp(&y)));

    let mut dsu = Dsu::new(items.len());
    let mut owner: HashMap<Notation, usize> = HashMap::new();
    let mut frontier: Vec<Frontier> = (0..items.len()).map(|_| BinaryHeap::new()).collect();
    let mut explored_by: Vec<usize> = alloc::vec![0; items.len()];
    let mut seq = 0u64;
    let mut explored = 0usize;

    for &ix in &order {
        match owner.get(&keys[ix]) {
            Some(&o) => {
                dsu.union(o, ix);
            }
            None => {
                owner.insert(keys[ix].clone(), ix);
                frontier[ix].push(Reverse((keys[ix].crossings(), seq, keys[ix].clone())));
                seq += 1;
            }
        }
    }
    // Fold frontiers of items merged during seeding into their roots.
    for ix in 0..items.len() {
        let r = dsu.find(ix);
        if r != ix {
            let moved = core::mem::take(&mut frontier[ix]);
            frontier[r].extend(moved);
        }
    }

    loop {
        let mut roots: Vec<usize> = (0..items.len()).filter(|&x| dsu.find(x) == x).collect();
        if roots.len() <= 1 {
            break;
        }
        roots.retain(|&r| !frontier[r].is_empty() && explored_by[r] < budget_nodes);
        let Some(&root) = roots.iter().min_by_key(|&&r| (explored_by[r], r)) else {
            break;
        };
        let Reverse((_, _, state)) = frontier[root].pop().expect("non-empty");
        explored_by[root] += 1;
        explored += 1;
        let Ok(moves) = legal_moves(&state, budget_n) else { continue };
        let mut root = root;
        for (_, r) in moves {
            let key = r.mirror_key();
            match owner.get(&key) {
                None => {
                    owner.insert(key.clone(), root);
                    frontier[root].push(Reverse((key.crossings(), seq, key)));
                    seq += 1;
                }
                Some(&o) => {
                    let other = dsu.find(o);
                    if other != root {
                        let keep = dsu.union(root, other);
                        let gone = if keep == root { other } else { root };
                        let moved = core::mem::take(&mut frontier[gone]);
                        frontier[keep].extend(moved);
                        explored_by[keep] = explored_by[keep].max(explored_by[gone]);
                        root = keep;
                    }
                }
            }
        }
    }

    let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
    for &ix in &order {
        by_root.entry(dsu.find(ix)).or_default().push(ix);
    }
    let mut classes: Vec<Vec<usize>> = by_root.into_values().collect();
    for c in &mut classes {
        c.sort_by(|&x, &y| keys[x].cmp(&keys[y]).then(x.cmp(&y)));
    }
    classes.sort_by(|x, y| keys[x[0]].cmp(&keys[y[0]]).then(x[0].cmp(&y[0])));
    Partition { classes, explored }
}

impl fmt::Display for MoveDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let role = |b: bool| if b { "over" } else { "under" };
        match *self {
            MoveDescriptor::R1Add { site, over_first } => write!(f, "R1 add {site} {}", role(over_first)),
            MoveDescriptor::R1Remove { shift, site } => write!(f, "R1 remove {shift} {site}"),
            MoveDescriptor::R2Add { i, j, variant, first_over } => {
                let v = match variant {
                    R2Variant::Parallel => "parallel",
                    R2Variant::Crossed => "crossed",
                };
                write!(f, "R2 add {i} {j} {v} {}", role(first_over))
            }
            MoveDescriptor::R2Remove { shift, i, j } => write!(f, "R2 remove {shift} {i} {j}"),
            MoveDescriptor::R3 { first, second, third } => write!(
                f,
                "R3 replace ({},{})({},{})({},{})",
                first.over, first.under, second.over, second.under, third.over, third.under
            ),
        }
    }
}

impl FromStr for MoveDescriptor {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MoveError::Malformed(s.into());
        let t: Vec<&str> = s.split_whitespace().collect();
        let num = |x: &str| x.parse::<u16>().map_err(|_| bad());
        let role = |x: &str| match x {
            "over" => Ok(true),
            "under" => Ok(false),
            _ => Err(bad()),
        };
        match t.as_slice() {
            ["R1", "add", site, r] => Ok(MoveDescriptor::R1Add { site: num(site)?, over_first: role(r)? }),
            ["R1", "remove", shift, site] => Ok(MoveDescriptor::R1Remove { shift: num(shift)?, site: num(site)? }),
            ["R2", "add", i, j, v, r] => {
                let variant = match *v {
                    "parallel" => R2Variant::Parallel,
                    "crossed" => R2Variant::Crossed,
                    _ => return Err(bad()),
                };
                Ok(MoveDescriptor::R2Add { i: num(i)?, j: num(j)?, variant, first_over: role(r)? })
            }
            ["R2", "remove", shift, i, j] => {
                Ok(MoveDescriptor::R2Remove { shift: num(shift)?, i: num(i)?, j: num(j)? })
            }
            ["R3", "replace", triple] => {
                let nums: Vec<u16> = triple
                    .split(|c: char| !c.is_ascii_digit())
                    .filter(|x| !x.is_empty())
                    .map(|x| x.parse().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?;
                if nums.len() != 6 {
                    return Err(bad());
                }
                Ok(MoveDescriptor::R3 {
                    first: CrossingPair::new(nums[0], nums[1]),
                    second: CrossingPair::new(nums[2], nums[3]),
                    third: CrossingPair::new(nums[4], nums[5]),
                })
            }
            _ => Err(bad()),
        }
    }
}
