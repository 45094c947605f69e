use super::{smoothing_pairs, Diagram, EdgeId};
use crate::error::{Error, Result};
use crate::state::KauffmanState;
use crate::MAX_CIRCLES;

pub(crate) struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(size: usize) -> Self {
        Self { parent: (0..size as u32).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    /// Joins the two classes; the smaller root survives.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb] = ra as u32;
        } else if rb < ra {
            self.parent[ra] = rb as u32;
        }
    }
}

/// One circle of a resolution. Free circles carry no edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circle {
    pub edges: Vec<EdgeId>,
}

impl Circle {
    pub fn is_free(&self) -> bool {
        self.edges.is_empty()
    }
}

/// The system of circles obtained by smoothing every crossing of a diagram.
///
/// Circles are ordered by their smallest edge label; free circles come last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolution {
    pub state: KauffmanState,
    pub circles: Vec<Circle>,
    /// For each crossing, the (one or two) circles passing through it.
    pub touched: Vec<Vec<usize>>,
}

impl Resolution {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn circle_of(&self, edge: EdgeId) -> Option<usize> {
        self.circles.iter().position(|c| c.edges.binary_search(&edge).is_ok())
    }
}

pub fn resolve(diagram: &Diagram, state: KauffmanState) -> Result<Resolution> {
    Resolver::new(diagram)?.resolution(state)
}

/// A diagram compiled to dense edge indices for repeated resolution.
#[derive(Debug, Clone)]
pub struct Resolver {
    labels: Vec<EdgeId>,
    crossings: Vec<[u32; 4]>,
    free_circles: usize,
}

impl Resolver {
    pub fn new(diagram: &Diagram) -> Result<Self> {
        if diagram.crossing_count() > crate::MAX_CROSSINGS {
            return Err(Error::TooManyCrossings(diagram.crossing_count()));
        }
        let labels = diagram.edges();
        let crossings = diagram
            .crossings()
            .iter()
            .map(|c| c.edges.map(|e| labels.binary_search(&e).expect("edge present") as u32))
            .collect();
        Ok(Self { labels, crossings, free_circles: diagram.free_circles() })
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[EdgeId] {
        &self.labels
    }

    /// Dense edge indices at crossing `v`.
    pub fn crossing_edges(&self, v: usize) -> [u32; 4] {
        self.crossings[v]
    }

    /// Circle index of every dense edge plus the total circle count
    /// (including free circles, which take the highest indices).
    #[allow(clippy::needless_range_loop)]
    pub fn circle_map(&self, state: KauffmanState) -> Result<(Vec<u8>, usize)> {
        if state.len() != self.crossings.len() {
            return Err(Error::StateLength { expected: self.crossings.len(), got: state.len() });
        }
        let mut uf = UnionFind::new(self.labels.len());
        for (v, edges) in self.crossings.iter().enumerate() {
            for (p, q) in smoothing_pairs(state.marker(v)) {
                uf.union(edges[p] as usize, edges[q] as usize);
            }
        }
        // Roots are class minima, so a single forward pass numbers circles
        // by smallest edge label.
        let mut root_id = vec![u8::MAX; self.labels.len()];
        let mut circle = vec![0u8; self.labels.len()];
        let mut count = 0usize;
        for e in 0..self.labels.len() {
            let r = uf.find(e);
            if root_id[r] == u8::MAX {
                if count >= MAX_CIRCLES {
                    return Err(Error::TooManyCircles(count + 1));
                }
                root_id[r] = count as u8;
                count += 1;
            }
            circle[e] = root_id[r];
        }
        let total = count + self.free_circles;
        if total > MAX_CIRCLES {
            return Err(Error::TooManyCircles(total));
        }
        Ok((circle, total))
    }

    pub fn circle_count(&self, state: KauffmanState) -> Result<usize> {
        self.circle_map(state).map(|(_, n)| n)
    }

    pub fn resolution(&self, state: KauffmanState) -> Result<Resolution> {
        let (map, total) = self.circle_map(state)?;
        let mut circles = vec![Circle { edges: Vec::new() }; total];
        for (e, &c) in map.iter().enumerate() {
            circles[c as usize].edges.push(self.labels[e]);
        }
        let touched = self
            .crossings
            .iter()
            .map(|edges| {
                let mut t: Vec<usize> = edges.iter().map(|&e| map[e as usize] as usize).collect();
                t.sort_unstable();
                t.dedup();
                t
            })
            .collect();
        Ok(Resolution { state, circles, touched })
    }
}
