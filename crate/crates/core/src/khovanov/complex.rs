use std::collections::BTreeMap;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::{local_targets, Bigrade, ChainBasis, CircleSign, DifferentialMatrix, EnhancedState};
use crate::diagram::{Diagram, Resolver};
use crate::error::{Error, Result};
use crate::homology::IntegerMatrix;
use crate::state::{KauffmanState, Marker};

/// Every enhanced state of a diagram grouped into chain bases, with the
/// per-state circle data needed to build differentials.
pub struct KhovanovComplex {
    crossings: usize,
    free_circles: usize,
    resolver: Resolver,
    edges: usize,
    /// `circle_of[bits * edges + e]`: circle of dense edge `e` in state `bits`.
    circle_of: Vec<u8>,
    /// Total circles (free ones included) per state.
    circle_count: Vec<u8>,
    bases: BTreeMap<Bigrade, ChainBasis>,
    /// `(state bits, signs)` → position inside its chain basis.
    position: FxHashMap<(u64, u64), u32>,
}

impl KhovanovComplex {
    pub fn new(d: &Diagram) -> Result<Self> {
        let resolver = Resolver::new(d)?;
        let n = d.crossing_count();
        let edges = resolver.edge_count();

        let resolved: Vec<(Vec<u8>, usize)> = (0..1u64 << n)
            .into_par_iter()
            .map(|bits| resolver.circle_map(KauffmanState::from_bits(bits, n)?))
            .collect::<Result<_>>()?;
        let mut circle_of = Vec::with_capacity(edges << n);
        let mut circle_count = Vec::with_capacity(1 << n);
        for (map, count) in resolved {
            circle_of.extend_from_slice(&map);
            circle_count.push(count as u8);
        }

        let mut grouped: BTreeMap<Bigrade, Vec<EnhancedState>> = BTreeMap::new();
        for bits in 0..1u64 << n {
            let state = KauffmanState::from_bits(bits, n)?;
            let k = circle_count[bits as usize] as usize;
            for signs in 0..1u64 << k {
                let e = EnhancedState::new(state, signs, k);
                grouped.entry(e.bigrade).or_default().push(e);
            }
        }
        let bases: BTreeMap<Bigrade, ChainBasis> = grouped
            .into_par_iter()
            .map(|(bigrade, mut elements)| {
                elements.sort_unstable_by_key(EnhancedState::sort_key);
                (bigrade, ChainBasis { bigrade, elements })
            })
            .collect();

        let total = bases.values().map(ChainBasis::len).sum();
        let mut position = FxHashMap::with_capacity_and_hasher(total, Default::default());
        for basis in bases.values() {
            for (i, e) in basis.elements.iter().enumerate() {
                position.insert((e.state.bits(), e.signs), i as u32);
            }
        }

        Ok(Self {
            crossings: n,
            free_circles: d.free_circles(),
            resolver,
            edges,
            circle_of,
            circle_count,
            bases,
            position,
        })
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings
    }

    pub fn bases(&self) -> &BTreeMap<Bigrade, ChainBasis> {
        &self.bases
    }

    pub fn into_bases(self) -> BTreeMap<Bigrade, ChainBasis> {
        self.bases
    }

    pub fn basis(&self, bigrade: Bigrade) -> Option<&ChainBasis> {
        self.bases.get(&bigrade)
    }

    pub fn dim(&self, bigrade: Bigrade) -> usize {
        self.basis(bigrade).map_or(0, ChainBasis::len)
    }

    pub fn enhanced_state_count(&self) -> usize {
        self.position.len()
    }

    /// Distinct `b` values carrying a nonzero chain group, ascending.
    pub fn b_values(&self) -> Vec<i64> {
        let mut bs: Vec<i64> = self.bases.keys().map(|g| g.b).collect();
        bs.dedup();
        bs.sort_unstable();
        bs.dedup();
        bs
    }

    /// Nonzero `a` values at a fixed `b`, descending.
    pub fn a_values(&self, b: i64) -> Vec<i64> {
        let mut a: Vec<i64> = self.bases.keys().filter(|g| g.b == b).map(|g| g.a).collect();
        a.sort_unstable_by(|x, y| y.cmp(x));
        a
    }

    fn circles_of(&self, bits: u64) -> &[u8] {
        let start = bits as usize * self.edges;
        &self.circle_of[start..start + self.edges]
    }

    /// Images of `source` under flipping crossing `v` from A to B, as sign
    /// vectors of the target state.
    fn flip_targets(&self, source: &EnhancedState, v: usize) -> (KauffmanState, Vec<u64>) {
        let target_state = source.state.with_marker(v, Marker::B);
        let from = self.circles_of(source.state.bits());
        let to = self.circles_of(target_state.bits());
        let from_count = self.circle_count[source.state.bits() as usize] as usize;
        let to_count = self.circle_count[target_state.bits() as usize] as usize;
        let (from_edge_circles, to_edge_circles) = (from_count - self.free_circles, to_count - self.free_circles);

        let at_v = self.resolver.crossing_edges(v);
        let touched = |map: &[u8]| {
            let mut c: Vec<usize> = at_v.iter().map(|&e| map[e as usize] as usize).collect();
            c.sort_unstable();
            c.dedup();
            c
        };
        let (before, after) = (touched(from), touched(to));

        let mut base = 0u64;
        let mut seen = 0u64;
        for (e, &c) in to.iter().enumerate() {
            let c = c as usize;
            if seen >> c & 1 == 1 {
                continue;
            }
            seen |= 1 << c;
            if !after.contains(&c) {
                base |= (source.signs >> from[e] & 1) << c;
            }
        }
        for i in 0..self.free_circles {
            base |= (source.signs >> (from_edge_circles + i) & 1) << (to_edge_circles + i);
        }

        let signs: Vec<CircleSign> = before.iter().map(|&c| source.sign(c)).collect();
        let targets = local_targets(&signs, after.len())
            .into_iter()
            .map(|pattern| {
                pattern
                    .iter()
                    .zip(&after)
                    .filter(|(s, _)| **s == CircleSign::Minus)
                    .fold(base, |acc, (_, &c)| acc | 1 << c)
            })
            .collect();
        (target_state, targets)
    }

    /// `∂_{a,b}` as a matrix from the basis at `(a,b)` to the one at `(a−2,b)`.
    pub fn differential(&self, source: Bigrade) -> Result<DifferentialMatrix> {
        let target = source.shifted(-2, 0);
        let cols = self.dim(source);
        let rows = self.dim(target);
        let mut entries = Vec::new();
        if let Some(basis) = self.basis(source) {
            for (j, s) in basis.elements.iter().enumerate() {
                for v in (0..self.crossings).filter(|&v| s.state.marker(v) == Marker::A) {
                    let t = (s.state.bits() >> (v + 1)).count_ones();
                    let value = if t % 2 == 0 { 1 } else { -1 };
                    let (target_state, targets) = self.flip_targets(s, v);
                    for signs in targets {
                        let i = self.position[&(target_state.bits(), signs)];
                        entries.push((i as usize, j, value));
                    }
                }
            }
        }
        let matrix = IntegerMatrix::from_triplets(rows, cols, entries).map_err(|_| Error::Overflow)?;
        Ok(DifferentialMatrix { source, target, matrix })
    }

    /// The differentials at fixed `b`, descending in `a`, between the top
    /// and bottom nonzero chain groups.
    pub fn chain(&self, b: i64) -> Result<Vec<DifferentialMatrix>> {
        let a = self.a_values(b);
        let (Some(&top), Some(&bottom)) = (a.first(), a.last()) else {
            return Ok(Vec::new());
        };
        (bottom + 2..=top)
            .rev()
            .step_by(2)
            .map(|a| self.differential(Bigrade::new(a, b)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, torus_2n};

    #[test]
    fn enhanced_state_total_matches_circle_counts() {
        for d in [torus_2n(5).unwrap(), braid_closure(3, &[1, -2, 1, -2]).unwrap()] {
            let c = KhovanovComplex::new(&d).unwrap();
            let resolver = Resolver::new(&d).unwrap();
            let expected: usize = KauffmanState::all(d.crossing_count())
                .unwrap()
                .map(|s| 1usize << resolver.circle_count(s).unwrap())
                .sum();
            assert_eq!(c.enhanced_state_count(), expected);
        }
    }

    #[test]
    fn torus_enhanced_state_count() {
        // all-A has two circles, k ≥ 1 B-markers give k circles: 4 + 3^n − 1
        for n in 1..=8u32 {
            let c = KhovanovComplex::new(&torus_2n(n).unwrap()).unwrap();
            assert_eq!(c.enhanced_state_count(), 3usize.pow(n) + 3);
        }
    }

    #[test]
    fn incidence_agrees_with_matrix_entries() {
        let d = braid_closure(3, &[1, -2, 1]).unwrap();
        let c = KhovanovComplex::new(&d).unwrap();
        for (&g, basis) in c.bases() {
            let m = c.differential(g).unwrap();
            let dense = m.matrix.to_dense();
            let Some(target) = c.basis(g.shifted(-2, 0)) else { continue };
            for (j, s) in basis.elements.iter().enumerate() {
                for (i, t) in target.elements.iter().enumerate() {
                    let inc = super::super::incidence(s, t, &d).unwrap() as i64;
                    assert_eq!(dense[i][j].abs(), inc);
                    if inc == 1 {
                        let v = (s.state.bits() ^ t.state.bits()).trailing_zeros() as usize;
                        let exp = super::super::sign_exponent(s, v).unwrap();
                        assert_eq!(dense[i][j], if exp.is_multiple_of(2) { 1 } else { -1 });
                    }
                }
            }
        }
    }

    #[test]
    fn bigrade_bookkeeping() {
        let d = torus_2n(4).unwrap();
        let c = KhovanovComplex::new(&d).unwrap();
        for basis in c.bases().values() {
            for e in &basis.elements {
                assert_eq!((e.circles as i64 - e.tau()).rem_euclid(2), 0);
                assert_eq!(e.bigrade.a, e.state.sigma());
            }
        }
    }
}
