//! Coloring-count invariants.
//!
//! Strands (arcs between consecutive undercrossings) are colored by
//! `Z/r`. At every crossing the two under-strands and the over-strand must
//! satisfy the Alexander quandle relation `left = t·right + (1−t)·over`,
//! where left and right are taken relative to the over-strand's direction
//! in the planar witness. Written along the traversal this is
//! `out = t·in + (1−t)·over` when the under-strand passes leftward and
//! `in = t·out + (1−t)·over` otherwise; `t = r−1` makes both the classic
//! Fox rule `2·over = in + out`. The number of colorings is unchanged by
//! all three moves.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::notation::{Label, Notation, Role};
use crate::realizability::witness;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("notation is not realizable")]
    Unrealizable,
    #[error("modulus {0} must be at least 2")]
    Modulus(u32),
    #[error("t = {t} is not a unit modulo {r}")]
    NotAUnit { r: u32, t: u32 },
    #[error("{r}^{strands} assignments exceed the brute-force guard")]
    GuardExceeded { r: u32, strands: usize },
    #[error("malformed fingerprint record `{0}`")]
    Malformed(alloc::string::String),
    #[error("malformed scheme `{0}`, expected r:t")]
    MalformedScheme(alloc::string::String),
}

/// Relations are checked against at most this many assignments.
pub const BRUTE_FORCE_GUARD: u64 = 10_000_000;

/// Strand incidence at one crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingStrands {
    pub over: usize,
    pub incoming: usize,
    pub outgoing: usize,
    /// The under-strand passes from the right of the over-strand to its left.
    pub leftward: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandStructure {
    pub strand_count: usize,
    pub crossings: Vec<CrossingStrands>,
}

impl StrandStructure {
    pub fn from_notation(v: &Notation) -> Result<Self, ColoringError> {
        if v.is_empty() {
            return Ok(StrandStructure { strand_count: 1, crossings: Vec::new() });
        }
        let w = witness(v).ok_or(ColoringError::Unrealizable)?;
        let unders: Vec<Label> = (1..=v.label_count() as Label).filter(|&l| v.role(l) == Role::Under).collect();
        let n = unders.len();
        // Strand k starts just after the k-th undercrossing.
        let strand_of = |l: Label| match unders.binary_search(&l) {
            Ok(k) => k,
            Err(0) => n - 1,
            Err(k) => k - 1,
        };
        let crossings = w
            .crossings()
            .iter()
            .enumerate()
            .map(|(c, p)| {
                let k = unders.binary_search(&p.under).expect("under label");
                CrossingStrands {
                    over: strand_of(p.over),
                    incoming: (k + n - 1) % n,
                    outgoing: k,
                    leftward: w.under_passes_leftward(c),
                }
            })
            .collect();
        Ok(StrandStructure { strand_count: n, crossings })
    }

    /// One row per crossing over `Z/r`, one column per strand.
    pub fn relation_matrix(&self, s: &ColoringScheme) -> Vec<Vec<u64>> {
        let r = s.r as u64;
        let t = s.t as u64 % r;
        let one_minus_t = (1 + r - t) % r;
        self.crossings
            .iter()
            .map(|c| {
                let mut row = vec![0u64; self.strand_count];
                // target = t·source + (1−t)·over
                let (source, target) = if c.leftward { (c.incoming, c.outgoing) } else { (c.outgoing, c.incoming) };
                row[source] = (row[source] + t) % r;
                row[c.over] = (row[c.over] + one_minus_t) % r;
                row[target] = (row[target] + r - 1) % r;
                row
            })
            .collect()
    }

    fn satisfied(&self, s: &ColoringScheme, colors: &[u64]) -> bool {
        let r = s.r as u64;
        let t = s.t as u64 % r;
        self.crossings.iter().all(|c| {
            let (source, target) = if c.leftward { (c.incoming, c.outgoing) } else { (c.outgoing, c.incoming) };
            (t * colors[source] + (1 + r - t) % r * colors[c.over]) % r == colors[target]
        })
    }
}

/// Strands of a realizable notation.
pub fn strands(v: &Notation) -> Result<StrandStructure, ColoringError> {
    StrandStructure::from_notation(v)
}

/// Modulus `r` and unit `t` of one Alexander quandle relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoringScheme {
    pub r: u32,
    pub t: u32,
}

impl ColoringScheme {
    pub fn new(r: u32, t: u32) -> Result<Self, ColoringError> {
        if r < 2 {
            return Err(ColoringError::Modulus(r));
        }
        if gcd(t as u64 % r as u64, r as u64) != 1 {
            return Err(ColoringError::NotAUnit { r, t });
        }
        Ok(ColoringScheme { r, t: t % r })
    }

    /// `r ∈ {3, 5, 7, 11, 13}` with every unit `t ≠ 1`, ordered by `(r, t)`.
    pub fn default_set() -> Vec<ColoringScheme> {
        Self::all_nontrivial(&[3, 5, 7, 9, 11, 13, 17, 19, 23, 27, 29])
    }

    /// Every unit `t ≠ 1` for each modulus, ordered by `(r, t)`.
    pub fn all_nontrivial(moduli: &[u32]) -> Vec<ColoringScheme> {
        let mut out: Vec<ColoringScheme> = moduli
            .iter()
            .flat_map(|&r| (2..r).filter_map(move |t| ColoringScheme::new(r, t).ok()))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for ColoringScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.r, self.t)
    }
}

impl FromStr for ColoringScheme {
    type Err = ColoringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ColoringError::MalformedScheme(s.into());
        let (r, t) = s.trim().split_once(':').ok_or_else(bad)?;
        let r: u32 = r.parse().map_err(|_| bad())?;
        let t: u32 = t.parse().map_err(|_| bad())?;
        ColoringScheme::new(r, t)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Exhaustive count over all `r^strands` colorings.
pub fn count_colorings_bruteforce(st: &StrandStructure, s: &ColoringScheme) -> Result<u128, ColoringError> {
    let r = s.r as u64;
    let total = (r as u128).checked_pow(st.strand_count as u32);
    match total {
        Some(t) if t <= BRUTE_FORCE_GUARD as u128 => {}
        _ => return Err(ColoringError::GuardExceeded { r: s.r, strands: st.strand_count }),
    }
    let mut colors = vec![0u64; st.strand_count];
    let mut count = 0u128;
    loop {
        if st.satisfied(s, &colors) {
            count += 1;
        }
        // Odometer increment.
        let mut k = 0;
        loop {
            if k == colors.len() {
                return Ok(count);
            }
            colors[k] += 1;
            if colors[k] < r {
                break;
            }
            colors[k] = 0;
            k += 1;
        }
    }
}

/// Solutions of `A·x ≡ 0 (mod r)`, by diagonalizing `A` with unimodular
/// integer row and column operations (valid for composite `r`): each
/// diagonal entry `d` admits `gcd(d, r)` values and each free column `r`.
#[allow(clippy::needless_range_loop)]
pub fn solution_count_mod(matrix: &[Vec<u64>], columns: usize, r: u64) -> u128 {
    let mut a: Vec<Vec<u64>> = matrix.iter().map(|row| row.iter().map(|x| x % r).collect()).collect();
    let rows = a.len();
    let mut rank = 0;
    while rank < rows.min(columns) {
        // Smallest nonzero entry of the remaining block becomes the pivot.
        let mut best: Option<(u64, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(rank) {
            for (j, &x) in row.iter().enumerate().skip(rank) {
                if x != 0 && best.is_none_or(|(b, _, _)| x < b) {
                    best = Some((x, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        a.swap(rank, pi);
        for row in a.iter_mut() {
            row.swap(rank, pj);
        }
        loop {
            let mut dirty = false;
            for i in rank + 1..rows {
                while a[i][rank] != 0 {
                    let q = a[i][rank] / a[rank][rank];
                    for j in rank..columns {
                        a[i][j] = (a[i][j] + r - (q * a[rank][j]) % r) % r;
                    }
                    if a[i][rank] != 0 {
                        a.swap(i, rank);
                        dirty = true;
                    }
                }
            }
            for j in rank + 1..columns {
                while a[rank][j] != 0 {
                    let q = a[rank][j] / a[rank][rank];
                    for row in a.iter_mut().skip(rank) {
                        row[j] = (row[j] + r - (q * row[rank]) % r) % r;
                    }
                    if a[rank][j] != 0 {
                        for row in a.iter_mut() {
                            row.swap(j, rank);
                        }
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        rank += 1;
    }
    let mut count: u128 = 1;
    for (i, row) in a.iter().enumerate().take(rank) {
        count *= gcd(row[i], r) as u128;
    }
    for _ in rank..columns {
        count *= r as u128;
    }
    count
}

/// Number of colorings, by modular linear algebra.
pub fn count_colorings(st: &StrandStructure, s: &ColoringScheme) -> u128 {
    solution_count_mod(&st.relation_matrix(s), st.strand_count, s.r as u64)
}

/// [`count_colorings`] straight from a notation.
pub fn count_notation_colorings(v: &Notation, s: &ColoringScheme) -> Result<u128, ColoringError> {
    Ok(count_colorings(&strands(v)?, s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FingerprintEntry {
    pub scheme: ColoringScheme,
    /// Counts for the notation and its mirror, smaller first.
    pub counts: [u128; 2],
}

/// Mirror-symmetrized coloring counts over a scheme list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint(pub Vec<FingerprintEntry>);

impl Fingerprint {
    /// True when every count equals `r`, as for the unknot.
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|e| e.counts == [e.scheme.r as u128; 2])
    }

    /// Whether `self` could be the fingerprint of a connected sum of knots
    /// with fingerprints `a` and `b`. Colorings of a sum agree on the joining
    /// arc, so each count is the product of the summands' counts over `r`.
    pub fn connected_sum_matches(&self, a: &Fingerprint, b: &Fingerprint) -> bool {
        self.0.len() == a.0.len()
            && self.0.len() == b.0.len()
            && self.0.iter().zip(&a.0).zip(&b.0).all(|((s, x), y)| {
                let r = s.scheme.r as u128;
                if x.scheme != s.scheme || y.scheme != s.scheme {
                    return false;
                }
                let [x0, x1] = x.counts;
                let [y0, y1] = y.counts;
                let pair = |p: u128, q: u128| {
                    let (p, q) = (p / r, q / r);
                    [p.min(q), p.max(q)]
                };
                s.counts == pair(x0 * y0, x1 * y1) || s.counts == pair(x0 * y1, x1 * y0)
            })
    }
}

pub fn fingerprint(v: &Notation, schemes: &[ColoringScheme]) -> Result<Fingerprint, ColoringError> {
    let st = strands(v)?;
    let mirrored = strands(&v.mirror())?;
    let mut schemes = schemes.to_vec();
    schemes.sort();
    schemes.dedup();
    Ok(Fingerprint(
        schemes
            .into_iter()
            .map(|scheme| {
                let a = count_colorings(&st, &scheme);
                let b = count_colorings(&mirrored, &scheme);
                FingerprintEntry { scheme, counts: [a.min(b), a.max(b)] }
            })
            .collect(),
    ))
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{{\"r\":{},\"t\":{},\"counts\":[{},{}]}}", e.scheme.r, e.scheme.t, e.counts[0], e.counts[1])?;
        }
        f.write_str("]")
    }
}

impl FromStr for Fingerprint {
    type Err = ColoringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ColoringError::Malformed(s.into());
        let nums: Vec<u128> = s
            .split(|c: char| !c.is_ascii_digit())
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<u128>().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        if !nums.len().is_multiple_of(4) {
            return Err(bad());
        }
        let mut entries = Vec::new();
        for c in nums.chunks(4) {
            let r = u32::try_from(c[0]).map_err(|_| bad())?;
            let t = u32::try_from(c[1]).map_err(|_| bad())?;
            let scheme = ColoringScheme::new(r, t).map_err(|_| bad())?;
            entries.push(FingerprintEntry { scheme, counts: [c[2], c[3]] });
        }
        let parsed = Fingerprint(entries);
        // Only the exact serialized layout is accepted.
        if alloc::format!("{parsed}") != s {
            return Err(bad());
        }
        Ok(parsed)
    }
}
