use std::fmt;

use super::{Crossing, Diagram, EdgeId};
use crate::error::{Error, Result};

/// Sign of a Reidemeister-I kink. A positive kink's A-smoothing splits off
/// a circle; a negative kink's B-smoothing does.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KinkSign {
    Positive,
    Negative,
}

impl KinkSign {
    pub fn of(framing: i64) -> Option<Self> {
        match framing.signum() {
            1 => Some(KinkSign::Positive),
            -1 => Some(KinkSign::Negative),
            _ => None,
        }
    }

    /// `(+1, +3)` for a positive kink, `(−1, −3)` for a negative one.
    pub fn grading_shift(self) -> (i64, i64) {
        match self {
            KinkSign::Positive => (1, 3),
            KinkSign::Negative => (-1, -3),
        }
    }
}

impl fmt::Display for KinkSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KinkSign::Positive => "+",
            KinkSign::Negative => "-",
        })
    }
}

/// Where to insert a kink: on an edge, or on one of the free circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KinkSite {
    Edge(EdgeId),
    FreeCircle,
}

impl KinkSite {
    /// Every site of `d`: each edge, plus one free circle if there is any.
    pub fn all(d: &Diagram) -> Vec<KinkSite> {
        let mut sites: Vec<KinkSite> = d.edges().into_iter().map(KinkSite::Edge).collect();
        if d.free_circles() > 0 {
            sites.push(KinkSite::FreeCircle);
        }
        sites
    }
}

impl fmt::Display for KinkSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KinkSite::Edge(e) => write!(f, "edge {e}"),
            KinkSite::FreeCircle => f.write_str("free circle"),
        }
    }
}

/// Crossing for a kink whose through-strand runs `inner → outer`, with the
/// loop on `looped`.
fn kink_crossing(sign: KinkSign, inner: EdgeId, looped: EdgeId, outer: EdgeId) -> Crossing {
    match sign {
        // A joins e0–e3 (through) and e1–e2 (the loop closes).
        KinkSign::Positive => Crossing { edges: [inner, looped, looped, outer] },
        // B joins e0–e1 (the loop closes) and e2–e3 (through).
        KinkSign::Negative => Crossing { edges: [looped, looped, outer, inner] },
    }
}

pub(super) fn add_r1_kink(d: &Diagram, site: KinkSite, sign: KinkSign) -> Result<Diagram> {
    let next = d.max_edge().map_or(1, |e| e.0 + 1);
    let mut crossings = d.crossings().to_vec();
    let mut free_circles = d.free_circles();
    match site {
        KinkSite::FreeCircle => {
            if free_circles == 0 {
                return Err(Error::NoFreeCircle);
            }
            free_circles -= 1;
            let (strand, looped) = (EdgeId(next), EdgeId(next + 1));
            crossings.push(kink_crossing(sign, strand, looped, strand));
        }
        KinkSite::Edge(edge) => {
            let occ = d.occurrences(edge);
            let Some(&(c, s)) = occ.get(1) else {
                return Err(Error::UnknownEdge(edge));
            };
            let (outer, looped) = (EdgeId(next), EdgeId(next + 1));
            crossings[c].edges[s] = outer;
            crossings.push(kink_crossing(sign, edge, looped, outer));
        }
    }
    Diagram::new(crossings, free_circles)
}

/// Standard diagram of the torus link `T(2,n)` as the closure of the
/// two-strand braid `σ₁ⁿ`, crossings in braid order.
pub fn torus_2n(n: u32) -> Result<Diagram> {
    if n == 0 {
        return Err(Error::InvalidTorusParameter(0));
    }
    let left = |k: u32| EdgeId(2 * (k % n) + 1);
    let right = |k: u32| EdgeId(2 * (k % n) + 2);
    let crossings = (1..=n)
        .map(|k| Crossing { edges: [left(k - 1), right(k - 1), right(k), left(k)] })
        .collect();
    Diagram::new(crossings, 0)
}

/// Unknot with `|framing|` kinks of sign `framing` (a bare circle for 0).
pub fn unknot_framed(framing: i64) -> Diagram {
    let Some(sign) = KinkSign::of(framing) else {
        return Diagram::unknot();
    };
    let mut d = Diagram::unknot()
        .add_r1_kink(KinkSite::FreeCircle, sign)
        .expect("a free circle is present");
    for _ in 1..framing.unsigned_abs() {
        let last = d.max_edge().expect("nonempty");
        // chain each new kink onto the outgoing strand of the previous one
        let outer = EdgeId(last.0 - 1);
        d = d.add_r1_kink(KinkSite::Edge(outer), sign).expect("edge present");
    }
    d
}

/// Closure of a braid word on `strands` strands.
///
/// Letter `i > 0` is the generator `σᵢ` (positive, its A-smoothing is the
/// identity braid) and `-i` its inverse. Strands that no letter touches
/// become free circles.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram> {
    if strands == 0 {
        return Err(Error::InvalidBraid("a braid needs at least one strand".into()));
    }
    for &g in word {
        if g == 0 || g.unsigned_abs() as usize >= strands {
            return Err(Error::InvalidBraid(format!("generator {g} on {strands} strands")));
        }
    }
    let mut touches = vec![0u32; strands];
    for &g in word {
        let i = g.unsigned_abs() as usize;
        touches[i - 1] += 1;
        touches[i] += 1;
    }
    let mut offset = vec![0u32; strands];
    let mut acc = 1;
    for p in 0..strands {
        offset[p] = acc;
        acc += touches[p];
    }
    // segment j of position p follows the j-th touch of p
    let mut seen = vec![0u32; strands];
    let mut crossings = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize;
        let mut io = [(EdgeId(0), EdgeId(0)); 2];
        for (k, p) in [i - 1, i].into_iter().enumerate() {
            let m = touches[p];
            let j = seen[p];
            let incoming = EdgeId(offset[p] + (j + m - 1) % m);
            let outgoing = EdgeId(offset[p] + j);
            seen[p] += 1;
            io[k] = (incoming, outgoing);
        }
        let [(l_in, l_out), (r_in, r_out)] = io;
        let edges = if g > 0 { [l_in, r_in, r_out, l_out] } else { [r_in, r_out, l_out, l_in] };
        crossings.push(Crossing { edges });
    }
    let free = touches.iter().filter(|&&t| t == 0).count();
    Ok(Diagram::new(crossings, free)?.relabeled())
}
