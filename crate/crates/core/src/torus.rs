//! Closed forms for `T(2,n)` and framed unknots, and consistency checks
//! derived from the long exact sequence of a crossing
//!
//! ```text
//! … → H_{a+1,b+1}(D_B) → H_{a,b}(D) → H_{a−1,b−1}(D_A) → H_{a−1,b+1}(D_B) → …
//! ```
//!
//! The maps themselves are not built; only what exactness forces is checked.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::homology::{homology_table, AbelianGroup, HomologyTable};
use crate::khovanov::Bigrade;
use crate::state::Marker;

/// Homology of `T(2,n)`:
///
/// * `Z` at `(n, n)` and `(−n, −3n)`,
/// * `Z` at `(n−2s, n−4s+4)` for even `s`, `0 ≤ s ≤ n`,
/// * `Z` at `(n−2s, n−4s)` for odd `s`, `3 ≤ s ≤ n`,
/// * `Z_2` at `(n−2s, n−4s+4)` for odd `s`, `3 ≤ s ≤ n`.
///
/// For odd `n` the second and third clauses meet at `(−n, −3n)`, which
/// carries a single `Z`. `T(2,1)` is the unknot with one positive kink.
pub fn closed_form_t2n(n: u32) -> Result<HomologyTable> {
    if n == 0 {
        return Err(Error::InvalidTorusParameter(0));
    }
    if n == 1 {
        return Ok(closed_form_unknot_framed(1));
    }
    let n = n as i64;
    let mut free: BTreeSet<Bigrade> = BTreeSet::from([Bigrade::new(n, n), Bigrade::new(-n, -3 * n)]);
    let mut torsion = Vec::new();
    for s in 0..=n {
        if s % 2 == 0 {
            free.insert(Bigrade::new(n - 2 * s, n - 4 * s + 4));
        } else if s >= 3 {
            free.insert(Bigrade::new(n - 2 * s, n - 4 * s));
            torsion.push(Bigrade::new(n - 2 * s, n - 4 * s + 4));
        }
    }
    let mut t: HomologyTable = free.into_iter().map(|g| (g, AbelianGroup::free(1))).collect();
    for g in torsion {
        t.insert(g, AbelianGroup::cyclic(2));
    }
    Ok(t)
}

/// Homology of the unknot with framing `f`: `Z` at `(f, 3f ± 2)`.
pub fn closed_form_unknot_framed(f: i64) -> HomologyTable {
    [Bigrade::new(f, 3 * f + 2), Bigrade::new(f, 3 * f - 2)]
        .into_iter()
        .map(|g| (g, AbelianGroup::free(1)))
        .collect()
}

/// A diagram and its two smoothings at crossing `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LesTriple {
    pub whole: Diagram,
    pub a_smoothed: Diagram,
    pub b_smoothed: Diagram,
    pub v: usize,
}

impl LesTriple {
    /// Grading shift from `D` to the B-side term of the sequence.
    pub const B_SHIFT: (i64, i64) = (1, 1);
    /// Grading shift from `D` to the A-side term of the sequence.
    pub const A_SHIFT: (i64, i64) = (-1, -1);
}

pub fn les_triple(d: &Diagram, v: usize) -> Result<LesTriple> {
    Ok(LesTriple {
        whole: d.clone(),
        a_smoothed: d.smooth_crossing(v, Marker::A)?,
        b_smoothed: d.smooth_crossing(v, Marker::B)?,
        v,
    })
}

/// Homology tables of the three diagrams of a triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LesTables {
    pub whole: HomologyTable,
    pub a_smoothed: HomologyTable,
    pub b_smoothed: HomologyTable,
    /// Crossing count of the whole diagram, fixing the parity of `a`.
    pub crossings: usize,
}

impl LesTables {
    pub fn compute(triple: &LesTriple) -> Result<Self> {
        Ok(Self {
            whole: homology_table(&triple.whole)?,
            a_smoothed: homology_table(&triple.a_smoothed)?,
            b_smoothed: homology_table(&triple.b_smoothed)?,
            crossings: triple.whole.crossing_count(),
        })
    }

    /// For each `b` of `D`, the alternating rank sum
    /// `Σ_a (−1)^{(n−a)/2} (rk H_{a+1,b+1}(D_B) − rk H_{a,b}(D) + rk H_{a−1,b−1}(D_A))`.
    /// Only nonzero sums are returned.
    pub fn rank_sums(&self) -> BTreeMap<i64, i64> {
        let n = self.crossings as i64;
        let mut sums: BTreeMap<i64, i64> = BTreeMap::new();
        let mut add = |a: i64, b: i64, rank: usize, sign: i64| {
            let parity = if ((n - a) / 2).rem_euclid(2) == 0 { 1 } else { -1 };
            *sums.entry(b).or_default() += parity * sign * rank as i64;
        };
        for g in self.b_smoothed.bigrades() {
            add(g.a - 1, g.b - 1, self.b_smoothed.get(g).free, 1);
        }
        for g in self.whole.bigrades() {
            add(g.a, g.b, self.whole.get(g).free, -1);
        }
        for g in self.a_smoothed.bigrades() {
            add(g.a + 1, g.b + 1, self.a_smoothed.get(g).free, 1);
        }
        sums.retain(|_, s| *s != 0);
        sums
    }

    /// Bigrades `(a,b)` of `D` where `H_{a+1,b+1}(D_B)` and `H_{a−1,b+1}(D_B)`
    /// both vanish but `H_{a,b}(D) ≇ H_{a−1,b−1}(D_A)`; also returns how many
    /// bigrades had vanishing flanks.
    pub fn corollary_mismatches(&self) -> (usize, Vec<Bigrade>) {
        let candidates: BTreeSet<Bigrade> = self
            .whole
            .bigrades()
            .chain(self.a_smoothed.bigrades().map(|g| g.shifted(1, 1)))
            .collect();
        let mut checked = 0;
        let mut bad = Vec::new();
        for g in candidates {
            let flanks_vanish = self.b_smoothed.get(g.shifted(1, 1)).is_trivial()
                && self.b_smoothed.get(g.shifted(-1, 1)).is_trivial();
            if !flanks_vanish {
                continue;
            }
            checked += 1;
            if self.whole.get(g) != self.a_smoothed.get(g.shifted(-1, -1)) {
                bad.push(g);
            }
        }
        (checked, bad)
    }
}

/// Outcome of [`les_rank_check`]: the `b` values whose alternating rank sum
/// is nonzero, with that sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LesRankReport {
    pub v: usize,
    pub violations: BTreeMap<i64, i64>,
}

impl LesRankReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn les_rank_check(d: &Diagram, v: usize) -> Result<LesRankReport> {
    let tables = LesTables::compute(&les_triple(d, v)?)?;
    Ok(LesRankReport { v, violations: tables.rank_sums() })
}

/// Outcome of [`corollary_iso_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryReport {
    pub v: usize,
    pub checked: usize,
    pub mismatches: Vec<Bigrade>,
}

impl CorollaryReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Where both B-side neighbours vanish, `H_{a,b}(D) ≅ H_{a−1,b−1}(D_A)`.
pub fn corollary_iso_check(d: &Diagram, v: usize) -> Result<CorollaryReport> {
    let tables = LesTables::compute(&les_triple(d, v)?)?;
    let (checked, mismatches) = tables.corollary_mismatches();
    Ok(CorollaryReport { v, checked, mismatches })
}
