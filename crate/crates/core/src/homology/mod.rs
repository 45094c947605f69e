//! Exact integer homology of the Khovanov complex.
//!
//! `H_{a,b} = ker ∂_{a,b} / im ∂_{a+2,b}`. Each fixed-`b` complex is first
//! shrunk by cancelling `±1` entries (Gaussian elimination on the complex,
//! which preserves homology up to isomorphism), and the small remainder is
//! handed to a dense Smith normal form.

mod matrix;
mod snf;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use matrix::IntegerMatrix;
pub use snf::{rank, smith_normal_form};

use crate::bracket::LaurentPolynomial;
use crate::diagram::{Diagram, KinkSign, KinkSite};
use crate::error::{Error, Result};
use crate::khovanov::{Bigrade, DifferentialMatrix, KhovanovComplex};
use snf::{dense_invariant_factors, divisibility_chain, Eliminator};

/// Finitely generated abelian group `Z^free ⊕ Z_{t1} ⊕ … ⊕ Z_{tk}` with
/// `t1 | t2 | … | tk`, every `ti ≥ 2`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self { free: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(0, [order])
    }

    /// Any list of cyclic orders; it is brought to invariant-factor form
    /// (orders `0` and `1` are dropped).
    pub fn new(free: usize, torsion: impl IntoIterator<Item = u64>) -> Self {
        let d: Vec<i64> = torsion.into_iter().filter(|&t| t > 1).map(|t| t as i64).collect();
        let torsion = divisibility_chain(d)
            .expect("torsion orders fit in i64")
            .into_iter()
            .filter(|&t| t > 1)
            .map(|t| t as u64)
            .collect();
        Self { free, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(self.free + other.free, self.torsion.iter().chain(&other.torsion).copied())
    }
}

/// `Z`, `Z^2`, `Z_2`, `Z^2+Z_2`; the trivial group is `0`.
impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

/// Nontrivial homology groups by bigrade.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HomologyTable {
    entries: BTreeMap<Bigrade, AbelianGroup>,
}

impl HomologyTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add `group` at `bigrade`, summing with whatever is already there.
    pub fn insert(&mut self, bigrade: Bigrade, group: AbelianGroup) {
        if group.is_trivial() {
            return;
        }
        let slot = self.entries.entry(bigrade).or_default();
        *slot = slot.direct_sum(&group);
    }

    pub fn get(&self, bigrade: Bigrade) -> AbelianGroup {
        self.entries.get(&bigrade).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries ordered by `b` descending, then `a` ascending.
    pub fn entries(&self) -> Vec<(Bigrade, &AbelianGroup)> {
        let mut v: Vec<_> = self.entries.iter().map(|(g, h)| (*g, h)).collect();
        v.sort_by_key(|(g, _)| (std::cmp::Reverse(g.b), g.a));
        v
    }

    pub fn bigrades(&self) -> impl Iterator<Item = Bigrade> + '_ {
        self.entries.keys().copied()
    }

    /// The table with every bigrade moved by `(da, db)`.
    pub fn shifted(&self, da: i64, db: i64) -> Self {
        Self { entries: self.entries.iter().map(|(g, h)| (g.shifted(da, db), h.clone())).collect() }
    }

    /// `Σ (−1)^{(b−a)/2} rank H_{a,b} · A^b`.
    pub fn euler_characteristic(&self) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero();
        for (g, h) in &self.entries {
            let sign = if ((g.b - g.a) / 2).rem_euclid(2) == 0 { 1 } else { -1 };
            p.add_term(g.b, sign * h.free as i64).expect("rank fits in i64");
        }
        p
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serialises")
    }
}

impl FromIterator<(Bigrade, AbelianGroup)> for HomologyTable {
    fn from_iter<I: IntoIterator<Item = (Bigrade, AbelianGroup)>>(iter: I) -> Self {
        let mut t = Self::new();
        for (g, h) in iter {
            t.insert(g, h);
        }
        t
    }
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    a: i64,
    b: i64,
    free: usize,
    torsion: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    entries: Vec<JsonEntry>,
}

impl Serialize for HomologyTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries = self
            .entries()
            .into_iter()
            .map(|(g, h)| JsonEntry { a: g.a, b: g.b, free: h.free, torsion: h.torsion.clone() })
            .collect();
        JsonTable { entries }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HomologyTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let t = JsonTable::deserialize(deserializer)?;
        Ok(t.entries
            .into_iter()
            .map(|e| (Bigrade::new(e.a, e.b), AbelianGroup::new(e.free, e.torsion)))
            .collect())
    }
}

/// `ker d_out / im d_in` at the bigrade between the two matrices.
pub fn homology_group(d_out: &DifferentialMatrix, d_in: &DifferentialMatrix) -> Result<AbelianGroup> {
    if d_in.target != d_out.source || d_in.rows() != d_out.cols() {
        return Err(Error::BasisMismatch(format!(
            "incoming {}x{} into {}, outgoing {}x{} from {}",
            d_in.rows(),
            d_in.cols(),
            d_in.target,
            d_out.rows(),
            d_out.cols(),
            d_out.source
        )));
    }
    if !d_out.matrix.mul(&d_in.matrix)?.is_zero() {
        return Err(Error::NonzeroComposition);
    }
    let image = smith_normal_form(&d_in.matrix)?;
    let kernel = d_out.cols() - rank(&d_out.matrix)?;
    Ok(AbelianGroup::new(kernel - image.len(), image.into_iter().map(|t| t as u64)))
}

/// Framed Khovanov homology of `d` (no writhe normalisation).
pub fn homology_table(d: &Diagram) -> Result<HomologyTable> {
    let complex = KhovanovComplex::new(d)?;
    homology_of_complex(&complex)
}

pub fn homology_of_complex(complex: &KhovanovComplex) -> Result<HomologyTable> {
    let per_b: Vec<Vec<(Bigrade, AbelianGroup)>> = complex
        .b_values()
        .into_par_iter()
        .map(|b| homology_at(complex, b))
        .collect::<Result<_>>()?;
    Ok(per_b.into_iter().flatten().collect())
}

/// Same table computed group by group from the full differentials, without
/// reducing the complex first. Slower; used as a cross-check.
pub fn homology_table_direct(d: &Diagram) -> Result<HomologyTable> {
    let complex = KhovanovComplex::new(d)?;
    complex
        .bases()
        .keys()
        .map(|&g| {
            let group = homology_group(&complex.differential(g)?, &complex.differential(g.shifted(2, 0))?)?;
            Ok((g, group))
        })
        .collect()
}

/// Homology along one fixed-`b` complex by cancelling unit entries, then
/// Smith normal form on what is left.
fn homology_at(complex: &KhovanovComplex, b: i64) -> Result<Vec<(Bigrade, AbelianGroup)>> {
    let a_values = complex.a_values(b);
    let (Some(&top), Some(&bottom)) = (a_values.first(), a_values.last()) else {
        return Ok(Vec::new());
    };
    let grades: Vec<Bigrade> = (bottom..=top).rev().step_by(2).map(|a| Bigrade::new(a, b)).collect();
    let chain = complex.chain(b)?;
    debug_assert_eq!(chain.len() + 1, grades.len());

    // chain[k] maps grade k to grade k + 1
    let mut elims: Vec<Eliminator> = chain.iter().map(|m| Eliminator::new(&m.matrix)).collect();
    drop(chain);
    let mut cancelled = vec![0usize; grades.len()];
    for k in 0..elims.len() {
        let pivots = elims[k].eliminate_units()?;
        cancelled[k] += pivots.len();
        cancelled[k + 1] += pivots.len();
        for &(row, col) in &pivots {
            if k + 1 < elims.len() {
                elims[k + 1].delete_col(row);
            }
            if k > 0 {
                elims[k - 1].delete_row(col);
            }
        }
    }
    let factors: Vec<Vec<i64>> =
        elims.iter().map(|e| dense_invariant_factors(e.residual())).collect::<Result<_>>()?;

    Ok(grades
        .iter()
        .enumerate()
        .map(|(k, &g)| {
            let out_rank = factors.get(k).map_or(0, Vec::len);
            let incoming: &[i64] = if k > 0 { &factors[k - 1] } else { &[] };
            let free = complex.dim(g) - cancelled[k] - out_rank - incoming.len();
            (g, AbelianGroup::new(free, incoming.iter().map(|&t| t as u64)))
        })
        .filter(|(_, h)| !h.is_trivial())
        .collect())
}

/// Result of comparing the homology of every one-kink extension of a
/// diagram with the shifted homology of the diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct R1ShiftReport {
    pub sign: KinkSign,
    pub sites_checked: usize,
    pub mismatches: Vec<KinkSite>,
}

impl R1ShiftReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Check `H(R1±(D)) = H(D)` shifted by `(±1, ±3)` at every kink site of `d`.
pub fn verify_r1_shift(d: &Diagram, sign: KinkSign) -> Result<R1ShiftReport> {
    let (da, db) = sign.grading_shift();
    let expected = homology_table(d)?.shifted(da, db);
    let sites = KinkSite::all(d);
    let mut mismatches = Vec::new();
    for &site in &sites {
        if homology_table(&d.add_r1_kink(site, sign)?)? != expected {
            mismatches.push(site);
        }
    }
    Ok(R1ShiftReport { sign, sites_checked: sites.len(), mismatches })
}
