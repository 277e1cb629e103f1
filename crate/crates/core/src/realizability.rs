//! Planarity of notations.
//!
//! A notation is drawable iff its 4-regular crossing graph has a rotation
//! system of genus zero in which every crossing is transverse. Each crossing
//! admits two transverse cyclic orders (its chirality), so the search runs
//! over `2^n` chirality assignments and traces faces: `n` vertices, `2n`
//! edges, planar iff `n + 2` faces.

use alloc::vec;
use alloc::vec::Vec;

use crate::notation::{CrossingPair, Label, Notation};

/// Half-edge. Edge `e` joins label `e + 1` to label `e + 2` (the last edge
/// wraps back to label 1); dart `2e` runs along it forward, `2e + 1` backward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(pub u16);

impl Dart {
    pub fn edge(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_forward(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn reverse(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    /// Label at which the dart leaves its crossing.
    pub fn tail(self, label_count: usize) -> Label {
        let e = self.edge();
        if self.is_forward() {
            (e + 1) as Label
        } else {
            ((e + 1) % label_count + 1) as Label
        }
    }

    /// Label at which the dart arrives.
    pub fn head(self, label_count: usize) -> Label {
        self.reverse().tail(label_count)
    }

    fn outgoing(label: Label) -> Dart {
        Dart(2 * (label - 1))
    }

    fn incoming(label: Label, label_count: usize) -> Dart {
        let e = (label as usize + label_count - 2) % label_count;
        Dart(2 * e as u16 + 1)
    }
}

/// Cyclic list of darts bounding one region.
pub type Face = Vec<Dart>;

/// One chirality bit per crossing, crossings ordered by over-label.
///
/// Chirality `false` orders the darts at a crossing (counterclockwise) as
/// over-out, under-out, over-in, under-in; `true` swaps the two under darts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RotationSystem {
    label_count: usize,
    crossings: Vec<CrossingPair>,
    chirality: Vec<bool>,
}

impl RotationSystem {
    pub fn new(v: &Notation, chirality: Vec<bool>) -> Self {
        let crossings: Vec<CrossingPair> = v.pairs().collect();
        assert_eq!(crossings.len(), chirality.len(), "one chirality bit per crossing");
        RotationSystem { label_count: v.label_count(), crossings, chirality }
    }

    pub fn crossings(&self) -> &[CrossingPair] {
        &self.crossings
    }

    pub fn chirality(&self) -> &[bool] {
        &self.chirality
    }

    pub fn label_count(&self) -> usize {
        self.label_count
    }

    /// Chirality bits as `0`/`1` characters in crossing order.
    pub fn bit_string(&self) -> alloc::string::String {
        self.chirality.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    /// Darts around a crossing in counterclockwise order.
    pub fn rotation_at(&self, crossing: usize) -> [Dart; 4] {
        rotation(self.crossings[crossing], self.chirality[crossing], self.label_count)
    }

    /// True when, at this crossing, the under strand passes from the right
    /// of the over strand to its left.
    pub fn under_passes_leftward(&self, crossing: usize) -> bool {
        !self.chirality[crossing]
    }

    /// Counterclockwise successor of every dart at its crossing.
    fn successors(&self) -> Vec<Dart> {
        successors(&self.crossings, &self.chirality, self.label_count)
    }

    /// Traces all faces: the dart after `d` is the rotation successor of
    /// `reverse(d)`.
    pub fn faces(&self) -> Vec<Face> {
        let succ = self.successors();
        let total = 2 * self.label_count;
        let mut seen = vec![false; total];
        let mut faces = Vec::new();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = Dart(start as u16);
            while !seen[d.0 as usize] {
                seen[d.0 as usize] = true;
                face.push(d);
                d = succ[d.reverse().0 as usize];
            }
            faces.push(face);
        }
        faces
    }
}

fn rotation(c: CrossingPair, chirality: bool, label_count: usize) -> [Dart; 4] {
    let over_out = Dart::outgoing(c.over);
    let over_in = Dart::incoming(c.over, label_count);
    let under_out = Dart::outgoing(c.under);
    let under_in = Dart::incoming(c.under, label_count);
    if chirality {
        [over_out, under_in, over_in, under_out]
    } else {
        [over_out, under_out, over_in, under_in]
    }
}

fn successors(crossings: &[CrossingPair], chirality: &[bool], label_count: usize) -> Vec<Dart> {
    let mut succ = vec![Dart(0); 2 * label_count];
    for (c, &bit) in crossings.iter().zip(chirality) {
        let r = rotation(*c, bit, label_count);
        for k in 0..4 {
            succ[r[k].0 as usize] = r[(k + 1) % 4];
        }
    }
    succ
}

fn face_count(crossings: &[CrossingPair], chirality: &[bool], label_count: usize, seen: &mut Vec<bool>) -> usize {
    let succ = successors(crossings, chirality, label_count);
    seen.clear();
    seen.resize(succ.len(), false);
    let mut faces = 0;
    for start in 0..succ.len() {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = succ[d ^ 1].0 as usize;
        }
    }
    faces
}

/// Faces of a witness embedding.
pub fn faces_of(w: &RotationSystem) -> Vec<Face> {
    w.faces()
}

/// Why a notation was found undrawable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Refusal {
    ParityViolation,
    NoPlanarRotation,
}

impl Refusal {
    pub fn as_str(self) -> &'static str {
        match self {
            Refusal::ParityViolation => "parity_violation",
            Refusal::NoPlanarRotation => "no_planar_rotation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizabilityVerdict {
    pub witness: Option<RotationSystem>,
    pub reason: Option<Refusal>,
}

impl RealizabilityVerdict {
    pub fn realizable(&self) -> bool {
        self.witness.is_some()
    }

    fn refused(reason: Refusal) -> Self {
        RealizabilityVerdict { witness: None, reason: Some(reason) }
    }
}

/// Every pair joins an odd label to an even one.
pub fn parity_check(v: &Notation) -> bool {
    v.pairs().all(|p| (p.over + p.under) % 2 == 1)
}

/// Crossings as vertices, joined when their chords interleave on the circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlacementGraph {
    pub adjacency: Vec<Vec<usize>>,
}

impl InterlacementGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn all_degrees_even(&self) -> bool {
        self.adjacency.iter().all(|a| a.len() % 2 == 0)
    }
}

/// Vertex `k` is the `k`-th pair in over-label order.
pub fn interlacement_graph(v: &Notation) -> InterlacementGraph {
    let chords: Vec<(Label, Label)> =
        v.pairs().map(|p| (p.over.min(p.under), p.over.max(p.under))).collect();
    let mut adjacency = vec![Vec::new(); chords.len()];
    for i in 0..chords.len() {
        for j in i + 1..chords.len() {
            let (a, b) = chords[i];
            let (c, d) = chords[j];
            let inside = |x: Label| a < x && x < b;
            if inside(c) != inside(d) {
                adjacency[i].push(j);
                adjacency[j].push(i);
            }
        }
    }
    InterlacementGraph { adjacency }
}

/// Decides drawability and returns the first genus-zero rotation system in
/// lexicographic chirality order (crossing 0 most significant, `false` first).
pub fn is_realizable(v: &Notation) -> RealizabilityVerdict {
    if v.is_empty() {
        return RealizabilityVerdict { witness: Some(RotationSystem::new(v, Vec::new())), reason: None };
    }
    if !parity_check(v) {
        return RealizabilityVerdict::refused(Refusal::ParityViolation);
    }
    if !interlacement_graph(v).all_degrees_even() {
        return RealizabilityVerdict::refused(Refusal::NoPlanarRotation);
    }
    // Reversing every rotation preserves the face count, so a witness exists
    // iff one exists with crossing 0 at `false`; the lexicographically first
    // witness is always of that form.
    let n = v.crossings();
    search(v, 1usize << (n - 1))
}

/// Reference search: every assignment, no filters. Exposed for cross-checks.
pub fn is_realizable_exhaustive(v: &Notation) -> RealizabilityVerdict {
    if v.is_empty() {
        return RealizabilityVerdict { witness: Some(RotationSystem::new(v, Vec::new())), reason: None };
    }
    let verdict = search(v, 1usize << v.crossings());
    if verdict.realizable() || parity_check(v) {
        verdict
    } else {
        RealizabilityVerdict::refused(Refusal::ParityViolation)
    }
}

fn search(v: &Notation, limit: usize) -> RealizabilityVerdict {
    let n = v.crossings();
    let crossings: Vec<CrossingPair> = v.pairs().collect();
    let label_count = v.label_count();
    let mut bits = vec![false; n];
    let mut seen = Vec::new();
    for code in 0..limit {
        for (i, b) in bits.iter_mut().enumerate() {
            *b = (code >> (n - 1 - i)) & 1 == 1;
        }
        if face_count(&crossings, &bits, label_count, &mut seen) == n + 2 {
            return RealizabilityVerdict {
                witness: Some(RotationSystem { label_count, crossings, chirality: bits }),
                reason: None,
            };
        }
    }
    RealizabilityVerdict::refused(Refusal::NoPlanarRotation)
}

/// Every planar rotation system of `v` with crossing 0 at `false`, in bit
/// order. The first one is the witness. More than one exists only when the
/// notation splits into segments, since each segment can be flipped over.
pub fn planar_rotations(v: &Notation) -> Vec<RotationSystem> {
    if v.is_empty() {
        return vec![RotationSystem::new(v, Vec::new())];
    }
    if !parity_check(v) || !interlacement_graph(v).all_degrees_even() {
        return Vec::new();
    }
    let n = v.crossings();
    let crossings: Vec<CrossingPair> = v.pairs().collect();
    let label_count = v.label_count();
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for code in 0..1usize << (n - 1) {
        let bits: Vec<bool> = (0..n).map(|i| (code >> (n - 1 - i)) & 1 == 1).collect();
        if face_count(&crossings, &bits, label_count, &mut seen) == n + 2 {
            out.push(RotationSystem { label_count, crossings: crossings.clone(), chirality: bits });
        }
    }
    out
}

/// Shorthand for `is_realizable(v).witness`.
pub fn witness(v: &Notation) -> Option<RotationSystem> {
    is_realizable(v).witness
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> Notation {
        s.parse().unwrap()
    }

    #[test]
    fn parity() {
        assert!(parity_check(&n("(1,4)(3,6)(5,2)")));
        assert!(!parity_check(&n("(1,3)(2,4)")));
        assert!(parity_check(&Notation::empty()));
    }

    #[test]
    fn interlacement() {
        let g = interlacement_graph(&n("(1,4)(3,6)(5,2)"));
        assert_eq!(g.edge_count(), 3);
        assert!((0..3).all(|v| g.degree(v) == 2));
        let g = interlacement_graph(&n("(1,2)"));
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        let g = interlacement_graph(&n("(1,4)(3,2)"));
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 0));
    }

    #[test]
    fn kink_faces() {
        let w = is_realizable(&n("(1,2)")).witness.unwrap();
        let faces = w.faces();
        assert_eq!(faces.len(), 3);
        assert_eq!(faces.iter().map(Vec::len).sum::<usize>(), 4);
    }

    #[test]
    fn trefoil_is_planar() {
        let v = n("(1,4)(3,6)(5,2)");
        let w = is_realizable(&v).witness.unwrap();
        let faces = faces_of(&w);
        assert_eq!(faces.len(), 5);
        assert_eq!(faces.iter().map(Vec::len).sum::<usize>(), 12);
    }

    #[test]
    fn refusals() {
        assert_eq!(is_realizable(&n("(1,3)(2,4)")).reason, Some(Refusal::ParityViolation));
        // Two interlaced chords: the virtual Hopf-like code.
        let v = n("(1,4)(3,2)");
        assert!(is_realizable(&v).realizable());
        assert!(is_realizable(&Notation::empty()).realizable());
    }

    #[test]
    fn dart_endpoints() {
        // 6 labels: edge 5 wraps from label 6 to label 1.
        assert_eq!(Dart(10).tail(6), 6);
        assert_eq!(Dart(10).head(6), 1);
        assert_eq!(Dart(11).tail(6), 1);
        assert_eq!(Dart::incoming(1, 6), Dart(11));
    }
}
