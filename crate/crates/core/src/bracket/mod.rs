//! Kauffman bracket evaluators.
//!
//! Three independent routes compute the same polynomial: the state sum over
//! Kauffman states, the sum over enhanced states, and the skein recursion.

mod laurent;

use std::collections::HashMap;

use rayon::prelude::*;

pub use laurent::LaurentPolynomial;

use crate::diagram::{CanonicalForm, Diagram, Resolver};
use crate::error::{Error, Result};
use crate::state::{KauffmanState, Marker};

/// `(σ(s), |D_s|)` → number of states.
fn state_histogram(d: &Diagram) -> Result<HashMap<(i64, usize), i64>> {
    let resolver = Resolver::new(d)?;
    let n = d.crossing_count();
    (0..1u64 << n)
        .into_par_iter()
        .try_fold(HashMap::new, |mut hist, bits| {
            let s = KauffmanState::from_bits(bits, n)?;
            let circles = resolver.circle_count(s)?;
            *hist.entry((s.sigma(), circles)).or_insert(0i64) += 1;
            Ok(hist)
        })
        .try_reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            Ok(a)
        })
}

fn sum_histogram(hist: HashMap<(i64, usize), i64>, circle_offset: usize) -> Result<LaurentPolynomial> {
    let mut keys: Vec<_> = hist.into_iter().collect();
    keys.sort_unstable();
    let loop_value = LaurentPolynomial::loop_value();
    let mut total = LaurentPolynomial::zero();
    for ((sigma, circles), count) in keys {
        let power = loop_value.checked_pow((circles - circle_offset) as u32).ok_or(Error::Overflow)?;
        let term = power.shifted(sigma).checked_mul(&LaurentPolynomial::monomial(count, 0));
        total = term.and_then(|t| total.checked_add(&t)).ok_or(Error::Overflow)?;
    }
    Ok(total)
}

/// Reduced bracket `⟨D⟩ = Σ_s A^{σ(s)} (−A²−A⁻²)^{|D_s|−1}`, normalised so
/// that `⟨○⟩ = 1`.
pub fn bracket_reduced(d: &Diagram) -> Result<LaurentPolynomial> {
    if d.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    sum_histogram(state_histogram(d)?, 1)
}

/// Unreduced bracket `[D] = Σ_s A^{σ(s)} (−A²−A⁻²)^{|D_s|}` with `[∅] = 1`.
pub fn bracket_unreduced(d: &Diagram) -> Result<LaurentPolynomial> {
    sum_histogram(state_histogram(d)?, 0)
}

/// Unreduced bracket as a sum over enhanced states,
/// `Σ_S (−1)^{|D_s|} A^{σ(s)+2τ(S)}`.
pub fn bracket_enhanced(d: &Diagram) -> Result<LaurentPolynomial> {
    let resolver = Resolver::new(d)?;
    let n = d.crossing_count();
    let mut coefficients: HashMap<i64, i64> = HashMap::new();
    for s in KauffmanState::all(n)? {
        let circles = resolver.circle_count(s)?;
        let sign = if circles % 2 == 0 { 1 } else { -1 };
        for minus in 0..(1u64 << circles) {
            let tau = circles as i64 - 2 * minus.count_ones() as i64;
            let c = coefficients.entry(s.sigma() + 2 * tau).or_insert(0);
            *c = c.checked_add(sign).ok_or(Error::Overflow)?;
        }
    }
    Ok(LaurentPolynomial::from_terms(coefficients))
}

/// Reduced bracket by the skein relation
/// `⟨X⟩ = A⟨A-smoothing⟩ + A⁻¹⟨B-smoothing⟩`, smoothing the last crossing
/// first, with `⟨○^k⟩ = (−A²−A⁻²)^{k−1}`. Exponential in the crossing count.
pub fn bracket_skein_oracle(d: &Diagram) -> Result<LaurentPolynomial> {
    if d.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    let mut memo = HashMap::new();
    skein(d, &mut memo)
}

fn skein(d: &Diagram, memo: &mut HashMap<CanonicalForm, LaurentPolynomial>) -> Result<LaurentPolynomial> {
    let n = d.crossing_count();
    if n == 0 {
        return LaurentPolynomial::loop_value()
            .checked_pow(d.free_circles() as u32 - 1)
            .ok_or(Error::Overflow);
    }
    let key = d.canonical_form();
    if let Some(p) = memo.get(&key) {
        return Ok(p.clone());
    }
    let a = skein(&d.smooth_crossing(n - 1, Marker::A)?, memo)?.shifted(1);
    let b = skein(&d.smooth_crossing(n - 1, Marker::B)?, memo)?.shifted(-1);
    let p = a.checked_add(&b).ok_or(Error::Overflow)?;
    memo.insert(key, p.clone());
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{torus_2n, unknot_framed};

    fn p(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(terms.iter().copied())
    }

    fn trefoil() -> Diagram {
        Diagram::parse("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap()
    }

    #[test]
    fn trefoil_brackets() {
        let reduced = p(&[(-7, 1), (-3, -1), (5, -1)]);
        let unreduced = p(&[(-9, -1), (-1, 1), (3, 1), (7, 1)]);
        let t = trefoil();
        assert_eq!(bracket_reduced(&t).unwrap(), reduced);
        assert_eq!(bracket_skein_oracle(&t).unwrap(), reduced);
        assert_eq!(bracket_unreduced(&t).unwrap(), unreduced);
        assert_eq!(bracket_enhanced(&t).unwrap(), unreduced);
    }

    #[test]
    fn unknot_and_empty() {
        let o = Diagram::unknot();
        assert_eq!(bracket_reduced(&o).unwrap(), LaurentPolynomial::one());
        assert_eq!(bracket_skein_oracle(&o).unwrap(), LaurentPolynomial::one());
        assert_eq!(bracket_unreduced(&o).unwrap(), LaurentPolynomial::loop_value());
        assert_eq!(bracket_enhanced(&o).unwrap(), LaurentPolynomial::loop_value());
        let e = Diagram::empty();
        assert_eq!(bracket_reduced(&e), Err(Error::EmptyDiagram));
        assert_eq!(bracket_skein_oracle(&e), Err(Error::EmptyDiagram));
        assert_eq!(bracket_unreduced(&e).unwrap(), LaurentPolynomial::one());
        assert_eq!(bracket_enhanced(&e).unwrap(), LaurentPolynomial::one());
    }

    #[test]
    fn disjoint_circle_factor() {
        let d = trefoil().disjoint_union(&Diagram::unknot());
        let expected = &LaurentPolynomial::loop_value() * &bracket_reduced(&trefoil()).unwrap();
        assert_eq!(bracket_reduced(&d).unwrap(), expected);
        assert_eq!(bracket_skein_oracle(&d).unwrap(), expected);
        assert_eq!(bracket_reduced(&Diagram::unlink(3)).unwrap(), LaurentPolynomial::loop_value().pow(2));
    }

    #[test]
    fn positive_kink_is_minus_a_cubed() {
        // A·(−A²−A⁻²) + A⁻¹·1 = −A³
        let k = torus_2n(1).unwrap();
        assert_eq!(bracket_skein_oracle(&k).unwrap(), p(&[(3, -1)]));
        assert_eq!(bracket_reduced(&k).unwrap(), p(&[(3, -1)]));
        assert_eq!(bracket_reduced(&unknot_framed(-1)).unwrap(), p(&[(-3, -1)]));
        assert_eq!(bracket_reduced(&unknot_framed(-2)).unwrap(), p(&[(-6, 1)]));
    }

    #[test]
    fn exponent_parity_matches_crossing_count() {
        for n in 1..=8u32 {
            let d = torus_2n(n).unwrap();
            for (e, _) in bracket_unreduced(&d).unwrap().terms() {
                assert_eq!(e.rem_euclid(2), (n as i64).rem_euclid(2));
            }
        }
    }
}
