//! Enhanced Kauffman states and the integer Khovanov chain complex.
//!
//! An enhanced state `S` is a Kauffman state `s` plus a sign on every circle
//! of `D_s`. It has bigrade `a = σ(s)`, `b = σ(s) + 2τ(S)` where `τ` counts
//! `+` circles minus `−` circles. The differential `∂_{a,b}: C_{a,b} → C_{a−2,b}`
//! flips one A-marker to B:
//!
//! ```text
//! ∂(S) = Σ (−1)^{t(S,S')} (S,S') S'
//! ```
//!
//! where the incidence number `(S,S')` is 1 exactly when untouched circles
//! keep their signs and the circles at the flipped crossing follow
//!
//! ```text
//! merge: (+,−) → +   (−,+) → +   (−,−) → −   (+,+) → nothing
//! split:  +  → (+,+)    −  → (+,−) and (−,+)
//! ```
//!
//! and `t(S,S')` counts B-markers of `S` after the flipped crossing.

mod complex;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use complex::KhovanovComplex;

use crate::diagram::{Diagram, Resolver};
use crate::error::{Error, Result};
use crate::homology::IntegerMatrix;
use crate::state::{KauffmanState, Marker};

/// Bigrade `(a, b)` of an enhanced state or homology group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Bigrade {
    pub a: i64,
    pub b: i64,
}

impl Bigrade {
    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub const fn shifted(self, da: i64, db: i64) -> Self {
        Self { a: self.a + da, b: self.b + db }
    }
}

impl fmt::Display for Bigrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

impl From<(i64, i64)> for Bigrade {
    fn from((a, b): (i64, i64)) -> Self {
        Self { a, b }
    }
}

/// Sign of a circle in an enhanced state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CircleSign {
    Plus,
    Minus,
}

/// A Kauffman state with a sign per circle. Bit `i` of `signs` set means
/// circle `i` (in the resolution's canonical circle order) is negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EnhancedState {
    pub state: KauffmanState,
    pub signs: u64,
    pub circles: u8,
    pub bigrade: Bigrade,
}

impl EnhancedState {
    pub fn new(state: KauffmanState, signs: u64, circles: usize) -> Self {
        let tau = tau(signs, circles);
        let a = state.sigma();
        Self { state, signs, circles: circles as u8, bigrade: Bigrade::new(a, a + 2 * tau) }
    }

    /// Enhanced state of `d` from a marker string and per-circle signs.
    pub fn of(d: &Diagram, state: KauffmanState, signs: &[CircleSign]) -> Result<Self> {
        let circles = Resolver::new(d)?.circle_count(state)?;
        if signs.len() != circles {
            return Err(Error::ForeignState);
        }
        let bits = signs
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == CircleSign::Minus)
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        Ok(Self::new(state, bits, circles))
    }

    pub fn sign(&self, circle: usize) -> CircleSign {
        if self.signs >> circle & 1 == 1 {
            CircleSign::Minus
        } else {
            CircleSign::Plus
        }
    }

    pub fn tau(&self) -> i64 {
        tau(self.signs, self.circles as usize)
    }

    pub(crate) fn sort_key(&self) -> (u64, u64) {
        (self.state.lex_key(), sign_lex_key(self.signs, self.circles as usize))
    }
}

impl fmt::Display for EnhancedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.state)?;
        for i in 0..self.circles as usize {
            f.write_str(match self.sign(i) {
                CircleSign::Plus => "+",
                CircleSign::Minus => "-",
            })?;
        }
        f.write_str("]")
    }
}

pub(crate) fn tau(signs: u64, circles: usize) -> i64 {
    circles as i64 - 2 * signs.count_ones() as i64
}

/// Lexicographic key on the sign sequence (circle 0 most significant, `+` first).
fn sign_lex_key(signs: u64, circles: usize) -> u64 {
    if circles == 0 {
        0
    } else {
        signs.reverse_bits() >> (64 - circles as u32)
    }
}

/// The enhanced states of one bigrade, in canonical order: lexicographic on
/// the marker sequence, then on the sign sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainBasis {
    pub bigrade: Bigrade,
    pub elements: Vec<EnhancedState>,
}

impl ChainBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Matrix of `∂_{a,b}`: columns index the source basis at `(a, b)`, rows the
/// target basis at `(a − 2, b)`. Entries are `0` or `±1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialMatrix {
    pub source: Bigrade,
    pub target: Bigrade,
    pub matrix: IntegerMatrix,
}

impl DifferentialMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }
}

/// All chain bases of `d`, keyed by bigrade.
pub fn enumerate_bases(d: &Diagram) -> Result<BTreeMap<Bigrade, ChainBasis>> {
    Ok(KhovanovComplex::new(d)?.into_bases())
}

/// `t(S, v)`: number of crossings after `v` carrying marker B in `S`.
pub fn sign_exponent(s: &EnhancedState, v: usize) -> Result<u32> {
    if v >= s.state.len() {
        return Err(Error::CrossingOutOfRange { index: v, len: s.state.len() });
    }
    if s.state.marker(v) != Marker::A {
        return Err(Error::NotAnAMarker(v));
    }
    Ok((s.state.bits() >> (v + 1)).count_ones())
}

/// Incidence number `(S, S')` of two enhanced states of `d`.
pub fn incidence(s: &EnhancedState, t: &EnhancedState, d: &Diagram) -> Result<u8> {
    let resolver = Resolver::new(d)?;
    let n = d.crossing_count();
    let (source_map, source_count) = resolver.circle_map(s.state).map_err(|_| Error::ForeignState)?;
    let (target_map, target_count) = resolver.circle_map(t.state).map_err(|_| Error::ForeignState)?;
    if source_count != s.circles as usize || target_count != t.circles as usize || t.state.len() != n {
        return Err(Error::ForeignState);
    }

    let diff = s.state.bits() ^ t.state.bits();
    if diff.count_ones() != 1 {
        return Ok(0);
    }
    let v = diff.trailing_zeros() as usize;
    if s.state.marker(v) != Marker::A {
        return Ok(0);
    }

    let edges = resolver.crossing_edges(v);
    let touched = |map: &[u8]| {
        let mut c: Vec<usize> = edges.iter().map(|&e| map[e as usize] as usize).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    let (source_touched, target_touched) = (touched(&source_map), touched(&target_map));

    // circles away from v are the same edge sets on both sides
    let free_offset = (source_count - d.free_circles(), target_count - d.free_circles());
    for c in 0..target_count {
        if target_touched.contains(&c) {
            continue;
        }
        let from = if c >= free_offset.1 {
            c - free_offset.1 + free_offset.0
        } else {
            let edge = target_map.iter().position(|&x| x as usize == c).expect("circle has an edge");
            source_map[edge] as usize
        };
        if s.sign(from) != t.sign(c) {
            return Ok(0);
        }
    }

    let allowed = local_targets(
        &source_touched.iter().map(|&c| s.sign(c)).collect::<Vec<_>>(),
        target_touched.len(),
    );
    let actual: Vec<CircleSign> = target_touched.iter().map(|&c| t.sign(c)).collect();
    Ok(allowed.contains(&actual) as u8)
}

/// Sign patterns on the circles through the flipped crossing after the
/// flip, given the patterns before.
pub(crate) fn local_targets(before: &[CircleSign], after: usize) -> Vec<Vec<CircleSign>> {
    use CircleSign::{Minus, Plus};
    match (before, after) {
        ([Plus, Minus] | [Minus, Plus], 1) => vec![vec![Plus]],
        ([Minus, Minus], 1) => vec![vec![Minus]],
        ([Plus], 2) => vec![vec![Plus, Plus]],
        ([Minus], 2) => vec![vec![Plus, Minus], vec![Minus, Plus]],
        _ => vec![],
    }
}

/// Matrix of `∂_{a,b}: C_{a,b} → C_{a−2,b}` (empty bases give empty matrices).
pub fn differential(d: &Diagram, a: i64, b: i64) -> Result<DifferentialMatrix> {
    KhovanovComplex::new(d)?.differential(Bigrade::new(a, b))
}

/// For every `b` with nonzero chain groups, the differentials `∂_{a,b}` in
/// descending `a` order, from the top nonzero group down to the bottom one.
pub fn full_complex(d: &Diagram) -> Result<BTreeMap<i64, Vec<DifferentialMatrix>>> {
    let complex = KhovanovComplex::new(d)?;
    complex
        .b_values()
        .into_iter()
        .map(|b| Ok((b, complex.chain(b)?)))
        .collect()
}
