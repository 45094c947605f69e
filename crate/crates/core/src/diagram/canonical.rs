use std::collections::HashMap;

use super::Diagram;

/// Isomorphism class of a diagram: one traversal code per connected
/// component (sorted) plus the number of free circles.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub components: Vec<Vec<[u32; 4]>>,
    pub free_circles: usize,
}

pub(super) fn canonical_form(d: &Diagram) -> CanonicalForm {
    let crossings = d.crossings();
    let n = crossings.len();

    let mut slots: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (c, x) in crossings.iter().enumerate() {
        for (s, e) in x.edges.iter().enumerate() {
            slots.entry(e.0).or_default().push((c, s));
        }
    }
    let partner = |c: usize, s: usize| -> (usize, usize) {
        let ends = &slots[&crossings[c].edges[s].0];
        if ends[0] == (c, s) {
            ends[1]
        } else {
            ends[0]
        }
    };

    let mut component_of = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if component_of[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![start];
        component_of[start] = id;
        let mut i = 0;
        while i < members.len() {
            let c = members[i];
            for s in 0..4 {
                let (c2, _) = partner(c, s);
                if component_of[c2] == usize::MAX {
                    component_of[c2] = id;
                    members.push(c2);
                }
            }
            i += 1;
        }
        components.push(members);
    }

    let mut codes: Vec<Vec<[u32; 4]>> = components
        .iter()
        .map(|members| {
            members
                .iter()
                .flat_map(|&c| [(c, 0), (c, 2)])
                .map(|(c, offset)| traverse(d, &partner, c, offset))
                .min()
                .expect("component is nonempty")
        })
        .collect();
    codes.sort();
    CanonicalForm { components: codes, free_circles: d.free_circles() }
}

/// Breadth-first walk from `start`, reading each crossing from the slot it
/// was entered through (rounded down to even so over/under is preserved),
/// numbering edges on first sight.
fn traverse(
    d: &Diagram,
    partner: &impl Fn(usize, usize) -> (usize, usize),
    start: usize,
    offset: usize,
) -> Vec<[u32; 4]> {
    let crossings = d.crossings();
    let mut view: HashMap<usize, usize> = HashMap::from([(start, offset)]);
    let mut queue = vec![start];
    let mut labels: HashMap<u32, u32> = HashMap::new();
    let mut code = Vec::new();
    let mut i = 0;
    while i < queue.len() {
        let c = queue[i];
        let o = view[&c];
        let mut row = [0u32; 4];
        for (k, slot) in row.iter_mut().enumerate() {
            let s = (o + k) % 4;
            let next = labels.len() as u32 + 1;
            *slot = *labels.entry(crossings[c].edges[s].0).or_insert(next);
            let (c2, s2) = partner(c, s);
            if let std::collections::hash_map::Entry::Vacant(v) = view.entry(c2) {
                v.insert(s2 & !1);
                queue.push(c2);
            }
        }
        code.push(row);
        i += 1;
    }
    code
}

#[cfg(test)]
mod tests {
    use crate::diagram::{torus_2n, Diagram};

    #[test]
    fn invariant_under_relabel_and_reorder() {
        let t = Diagram::parse("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let relabeled = Diagram::parse("X(10,40,20,50) X(30,60,40,10) X(50,20,60,30)").unwrap();
        let permuted = t.permute_crossings(&[2, 0, 1]).unwrap();
        let rotated = Diagram::parse("X(2,5,1,4) X(3,6,4,1) X(6,3,5,2)").unwrap();
        for other in [relabeled, permuted, rotated] {
            assert_eq!(t.canonical_form(), other.canonical_form());
        }
    }

    #[test]
    fn mirror_is_distinguished() {
        let t = Diagram::parse("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        assert!(t.is_isomorphic(&torus_2n(3).unwrap()));
        let mirror = Diagram::parse("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)").unwrap();
        assert!(!t.is_isomorphic(&mirror));
        let kink_pos = torus_2n(1).unwrap();
        let kink_neg = Diagram::parse("X(1,1,2,2)").unwrap();
        assert!(!kink_pos.is_isomorphic(&kink_neg));
    }

    #[test]
    fn split_diagrams() {
        let a = torus_2n(2).unwrap().disjoint_union(&torus_2n(3).unwrap());
        let b = torus_2n(3).unwrap().disjoint_union(&torus_2n(2).unwrap());
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&torus_2n(5).unwrap()));
    }
}
