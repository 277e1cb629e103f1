//! Independent reference implementations used by the integration tests.
//! Nothing here calls the library code it is checking.

#![allow(dead_code, clippy::needless_range_loop)]

use knotclass_core::{Notation, Role};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;

/// Partner and under-flag per label, 1-based.
#[derive(Clone, Debug)]
pub struct Code {
    pub partner: Vec<usize>,
    pub under: Vec<bool>,
}

impl Code {
    pub fn len(&self) -> usize {
        self.partner.len() - 1
    }

    pub fn from_notation(v: &Notation) -> Code {
        let len = v.label_count();
        let mut partner = vec![0; len + 1];
        let mut under = vec![false; len + 1];
        for p in v.pairs() {
            let (o, u) = (p.over as usize, p.under as usize);
            partner[o] = u;
            partner[u] = o;
            under[u] = true;
        }
        Code { partner, under }
    }

    pub fn to_notation(&self) -> Notation {
        let pairs: Vec<(u16, u16)> = (1..=self.len())
            .filter(|&l| !self.under[l])
            .map(|l| (l as u16, self.partner[l] as u16))
            .collect();
        Notation::from_pairs(&pairs).expect("valid code")
    }

    /// Word used for ordering: (partner, under) per label.
    pub fn word(&self) -> Vec<(usize, bool)> {
        (1..=self.len()).map(|l| (self.partner[l], self.under[l])).collect()
    }

    /// Relabels by walking the curve from `start` in the given direction.
    pub fn walk(&self, start: usize, backward: bool) -> Code {
        let len = self.len();
        let mut new_of = vec![0; len + 1];
        let mut l = start;
        for k in 1..=len {
            new_of[l] = k;
            l = if backward { if l == 1 { len } else { l - 1 } } else if l == len { 1 } else { l + 1 };
        }
        let mut partner = vec![0; len + 1];
        let mut under = vec![false; len + 1];
        for old in 1..=len {
            partner[new_of[old]] = new_of[self.partner[old]];
            under[new_of[old]] = self.under[old];
        }
        Code { partner, under }
    }

    pub fn all_walks(&self) -> Vec<Code> {
        let len = self.len();
        (1..=len).flat_map(|s| [self.walk(s, false), self.walk(s, true)]).collect()
    }
}

pub fn oracle_orbit(v: &Notation) -> BTreeSet<Notation> {
    if v.is_empty() {
        return [v.clone()].into_iter().collect();
    }
    Code::from_notation(v).all_walks().iter().map(Code::to_notation).collect()
}

pub fn oracle_canonical(v: &Notation) -> Notation {
    if v.is_empty() {
        return v.clone();
    }
    let best = Code::from_notation(v).all_walks().into_iter().min_by_key(Code::word).unwrap();
    best.to_notation()
}

/// No proper cyclic interval of labels is closed under pairing.
pub fn oracle_cyclically_prime(v: &Notation) -> bool {
    let c = Code::from_notation(v);
    let len = c.len();
    for start in 1..=len {
        for width in 2..len {
            let inside = |l: usize| (l + len - start) % len < width;
            if (0..width).all(|k| inside(c.partner[(start - 1 + k) % len + 1])) {
                return false;
            }
        }
    }
    true
}

fn interlaced(a: (usize, usize), b: (usize, usize)) -> bool {
    let between = |x: usize, p: (usize, usize)| p.0 < x && x < p.1;
    between(b.0, a) != between(b.1, a)
}

/// Planarity of the underlying closed curve by the interlacement-graph
/// characterization: even degrees, even common neighbourhoods for
/// non-adjacent chords, and the adjacent pairs with even common
/// neighbourhood forming an edge cut.
pub fn oracle_planar(v: &Notation) -> bool {
    let c = Code::from_notation(v);
    let len = c.len();
    if len == 0 {
        return true;
    }
    // Parity: every chord joins labels of opposite parity.
    if (1..=len).any(|l| (l + c.partner[l]).is_multiple_of(2)) {
        return false;
    }
    let chords: Vec<(usize, usize)> = (1..=len).filter(|&l| l < c.partner[l]).map(|l| (l, c.partner[l])).collect();
    let m = chords.len();
    let adj: Vec<Vec<bool>> =
        (0..m).map(|i| (0..m).map(|j| i != j && interlaced(chords[i], chords[j])).collect()).collect();
    let common = |i: usize, j: usize| (0..m).filter(|&k| adj[i][k] && adj[j][k]).count();
    for i in 0..m {
        if (0..m).filter(|&j| adj[i][j]).count() % 2 == 1 {
            return false;
        }
        for j in i + 1..m {
            if !adj[i][j] && common(i, j) % 2 == 1 {
                return false;
            }
        }
    }
    // 2-colour so that an edge changes colour iff its common count is even.
    let mut colour: Vec<Option<bool>> = vec![None; m];
    for s in 0..m {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..m {
                if !adj[i][j] {
                    continue;
                }
                let want = colour[i].unwrap() ^ (common(i, j) % 2 == 0);
                match colour[j] {
                    None => {
                        colour[j] = Some(want);
                        stack.push(j);
                    }
                    Some(x) if x != want => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Arc per label: the arc count rises just after each under label, so an
/// under label belongs to the arc arriving at it.
pub fn arc_table(v: &Notation) -> (usize, Vec<usize>) {
    let c = Code::from_notation(v);
    let arcs = v.crossings();
    let mut table = vec![0; c.len() + 1];
    let mut seen = 0;
    for l in 1..=c.len() {
        table[l] = seen % arcs;
        if c.under[l] {
            seen += 1;
        }
    }
    (arcs, table)
}

/// Brute-force Alexander-quandle colourings. `leftward[c]` gives the side
/// the under strand passes for the c-th crossing in over-label order.
pub fn oracle_colorings(v: &Notation, leftward: &[bool], r: u64, t: u64) -> u64 {
    if v.is_empty() {
        return r;
    }
    let (strands, table) = arc_table(v);
    let rels: Vec<(usize, usize, usize, bool)> = v
        .pairs()
        .enumerate()
        .map(|(k, p)| {
            let (o, u) = (p.over as usize, p.under as usize);
            (table[o], table[u], (table[u] + 1) % strands, leftward[k])
        })
        .collect();
    let total = r.pow(strands as u32);
    let mut count = 0;
    let mut colours = vec![0u64; strands];
    for code in 0..total {
        let mut x = code;
        for col in colours.iter_mut() {
            *col = x % r;
            x /= r;
        }
        let ok = rels.iter().all(|&(over, inc, out, left)| {
            let (a, b) = if left { (colours[out], colours[inc]) } else { (colours[inc], colours[out]) };
            a % r == (t * b + (r + 1 - t % r) % r * colours[over]) % r
        });
        if ok {
            count += 1;
        }
    }
    count
}

/// Uniform random notation with `n` crossings; labels paired at random.
pub fn random_notation<R: Rng>(rng: &mut R, n: usize) -> Notation {
    let mut labels: Vec<u16> = (1..=2 * n as u16).collect();
    labels.shuffle(rng);
    let pairs: Vec<(u16, u16)> = labels
        .chunks(2)
        .map(|p| if rng.gen() { (p[0], p[1]) } else { (p[1], p[0]) })
        .collect();
    Notation::from_pairs(&pairs).unwrap()
}

/// Random notation whose pairs join odd and even labels.
pub fn random_parity_valid<R: Rng>(rng: &mut R, n: usize) -> Notation {
    let mut evens: Vec<u16> = (1..=n as u16).map(|k| 2 * k).collect();
    evens.shuffle(rng);
    let pairs: Vec<(u16, u16)> = (0..n)
        .map(|k| {
            let odd = 2 * k as u16 + 1;
            if rng.gen() { (odd, evens[k]) } else { (evens[k], odd) }
        })
        .collect();
    Notation::from_pairs(&pairs).unwrap()
}

/// Every notation with `n` crossings whose pairs join odd and even labels,
/// by recursion over the odd labels.
pub fn all_parity_valid(n: usize) -> Vec<Notation> {
    fn go(n: usize, k: usize, used: &mut Vec<bool>, acc: &mut Vec<(u16, u16)>, out: &mut Vec<Notation>) {
        if k == n {
            out.push(Notation::from_pairs(acc).unwrap());
            return;
        }
        let odd = 2 * k as u16 + 1;
        for e in 0..n {
            if used[e] {
                continue;
            }
            used[e] = true;
            let even = 2 * e as u16 + 2;
            for pair in [(odd, even), (even, odd)] {
                acc.push(pair);
                go(n, k + 1, used, acc, out);
                acc.pop();
            }
            used[e] = false;
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut vec![false; n], &mut Vec::new(), &mut out);
    out
}

pub fn role_word(v: &Notation) -> Vec<Role> {
    v.word().iter().map(|e| e.role).collect()
}

/// Every notation with `n` crossings: all pairings of the labels, each pair
/// with either label over.
pub fn all_notations(n: usize) -> Vec<Notation> {
    fn go(free: &mut Vec<u16>, acc: &mut Vec<(u16, u16)>, out: &mut Vec<Notation>) {
        let Some(&first) = free.first() else {
            out.push(Notation::from_pairs(acc).unwrap());
            return;
        };
        for k in 1..free.len() {
            let other = free[k];
            let rest: Vec<u16> = free.iter().copied().filter(|&x| x != first && x != other).collect();
            let saved = std::mem::replace(free, rest);
            for pair in [(first, other), (other, first)] {
                acc.push(pair);
                go(free, acc, out);
                acc.pop();
            }
            *free = saved;
        }
    }
    let mut out = Vec::new();
    go(&mut (1..=2 * n as u16).collect(), &mut Vec::new(), &mut out);
    out
}
