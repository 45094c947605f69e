//! Link diagrams as planar-diagram (PD) codes.
//!
//! A crossing lists its four incident strand labels counterclockwise,
//! starting from an incoming under-strand: the under-strand is `(e0, e2)`
//! and the over-strand is `(e1, e3)`. Smoothing conventions:
//!
//! * marker A joins `e0–e3` and `e1–e2`,
//! * marker B joins `e0–e1` and `e2–e3`.
//!
//! With this choice `X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)` has reduced bracket
//! `A^-7 - A^-3 - A^5`, and a kink whose A-smoothing splits off a circle is
//! a positive kink.

mod canonical;
mod construct;
mod parse;
mod resolve;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::Marker;

pub use canonical::CanonicalForm;
pub use construct::{braid_closure, torus_2n, unknot_framed, KinkSign, KinkSite};
pub use resolve::{resolve, Circle, Resolution, Resolver};

/// Slot pairs joined by each marker.
pub(crate) const fn smoothing_pairs(marker: Marker) -> [(usize, usize); 2] {
    match marker {
        Marker::A => [(0, 3), (1, 2)],
        Marker::B => [(0, 1), (2, 3)],
    }
}

/// Label of a strand between two crossings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub edges: [EdgeId; 4],
}

impl Crossing {
    pub fn new(e0: u32, e1: u32, e2: u32, e3: u32) -> Self {
        Self { edges: [EdgeId(e0), EdgeId(e1), EdgeId(e2), EdgeId(e3)] }
    }

    pub fn under(&self) -> (EdgeId, EdgeId) {
        (self.edges[0], self.edges[2])
    }

    pub fn over(&self) -> (EdgeId, EdgeId) {
        (self.edges[1], self.edges[3])
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.edges;
        write!(f, "X({a},{b},{c},{d})")
    }
}

/// An unoriented link diagram: crossings in a fixed order plus a number of
/// crossing-free circles.
///
/// Every edge label occurs exactly twice over all crossing slots; this is
/// checked by every constructor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_circles: usize,
}

impl Diagram {
    pub fn new(crossings: Vec<Crossing>, free_circles: usize) -> Result<Self> {
        check_edge_pairing(&crossings)?;
        Ok(Self { crossings, free_circles })
    }

    pub fn empty() -> Self {
        Self { crossings: Vec::new(), free_circles: 0 }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn unlink(circles: usize) -> Self {
        Self { crossings: Vec::new(), free_circles: circles }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse::parse_pd(text)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_circles(&self) -> usize {
        self.free_circles
    }

    /// True when the diagram has no crossings and no circles.
    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.free_circles == 0
    }

    /// Distinct edge labels in increasing order.
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut edges: Vec<EdgeId> = self.crossings.iter().flat_map(|c| c.edges).collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    pub fn max_edge(&self) -> Option<EdgeId> {
        self.crossings.iter().flat_map(|c| c.edges).max()
    }

    /// `(crossing, slot)` positions where `edge` occurs.
    pub fn occurrences(&self, edge: EdgeId) -> Vec<(usize, usize)> {
        self.crossings
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.edges.iter().enumerate().map(move |(s, e)| (i, s, *e)))
            .filter(|(_, _, e)| *e == edge)
            .map(|(i, s, _)| (i, s))
            .collect()
    }

    /// Number of link components (resolving every crossing straight through).
    pub fn component_count(&self) -> usize {
        let mut uf = resolve::UnionFind::new(self.max_edge().map_or(0, |e| e.0 as usize + 1));
        for c in &self.crossings {
            let [e0, e1, e2, e3] = c.edges;
            uf.union(e0.0 as usize, e2.0 as usize);
            uf.union(e1.0 as usize, e3.0 as usize);
        }
        let roots: std::collections::HashSet<usize> =
            self.edges().iter().map(|e| uf.find(e.0 as usize)).collect();
        roots.len() + self.free_circles
    }

    /// Same diagram with crossings reordered: crossing `i` of the result is
    /// crossing `order[i]` of `self`.
    pub fn permute_crossings(&self, order: &[usize]) -> Result<Self> {
        let n = self.crossing_count();
        let mut seen = vec![false; n];
        for &i in order {
            if i >= n || seen[i] {
                return Err(Error::CrossingOutOfRange { index: i, len: n });
            }
            seen[i] = true;
        }
        if order.len() != n {
            return Err(Error::StateLength { expected: n, got: order.len() });
        }
        Ok(Self {
            crossings: order.iter().map(|&i| self.crossings[i]).collect(),
            free_circles: self.free_circles,
        })
    }

    /// Renumber edges `1, 2, …` in order of first appearance along the
    /// crossing list.
    pub fn relabeled(&self) -> Self {
        let mut map = BTreeMap::new();
        let mut next = 1u32;
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let mut edges = c.edges;
                for e in &mut edges {
                    *e = *map.entry(*e).or_insert_with(|| {
                        let id = EdgeId(next);
                        next += 1;
                        id
                    });
                }
                Crossing { edges }
            })
            .collect();
        Self { crossings, free_circles: self.free_circles }
    }

    /// Canonical form up to edge relabeling, crossing reordering and the
    /// half-turn symmetry of each crossing.
    pub fn canonical_form(&self) -> CanonicalForm {
        canonical::canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &Diagram) -> bool {
        self.crossing_count() == other.crossing_count()
            && self.free_circles == other.free_circles
            && self.canonical_form() == other.canonical_form()
    }

    pub fn disjoint_union(&self, other: &Diagram) -> Self {
        let offset = self.max_edge().map_or(0, |e| e.0 + 1);
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| Crossing {
            edges: c.edges.map(|e| EdgeId(e.0 + offset)),
        }));
        Self { crossings, free_circles: self.free_circles + other.free_circles }
    }

    /// Replace crossing `index` by its smoothing for `marker`.
    ///
    /// Edges are renumbered `1..=2(n-1)` in order of first appearance; a
    /// circle closed off by the smoothing becomes a free circle.
    pub fn smooth_crossing(&self, index: usize, marker: Marker) -> Result<Self> {
        let len = self.crossing_count();
        if index >= len {
            return Err(Error::CrossingOutOfRange { index, len });
        }
        let size = self.max_edge().map_or(0, |e| e.0 as usize + 1);
        let mut uf = resolve::UnionFind::new(size);
        let mut free_circles = self.free_circles;
        let edges = self.crossings[index].edges;
        for (p, q) in smoothing_pairs(marker) {
            let (p, q) = (edges[p].0 as usize, edges[q].0 as usize);
            if uf.find(p) == uf.find(q) {
                free_circles += 1;
            } else {
                uf.union(p, q);
            }
        }
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, c)| Crossing { edges: c.edges.map(|e| EdgeId(uf.find(e.0 as usize) as u32)) })
            .collect::<Vec<_>>();
        let smoothed = Self::new(crossings, free_circles)?;
        Ok(smoothed.relabeled())
    }

    pub fn add_r1_kink(&self, site: KinkSite, sign: KinkSign) -> Result<Self> {
        construct::add_r1_kink(self, site, sign)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens = self
            .crossings
            .iter()
            .map(|c| c.to_string())
            .chain(std::iter::repeat_n("O".to_string(), self.free_circles));
        for (i, t) in tokens.enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(&t)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

fn check_edge_pairing(crossings: &[Crossing]) -> Result<()> {
    let mut counts: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for e in crossings.iter().flat_map(|c| c.edges) {
        *counts.entry(e).or_default() += 1;
    }
    match counts.into_iter().find(|(_, n)| *n != 2) {
        Some((edge, count)) => Err(Error::EdgeMultiplicity { edge, count }),
        None => Ok(()),
    }
}
