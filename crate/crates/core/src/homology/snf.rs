use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_integer::Integer;
use rustc_hash::FxHashSet;

use super::IntegerMatrix;
use crate::error::{Error, Result};

/// Invariant factors `d1 | d2 | … | dr` of `m`, with `r = rank(m)`.
///
/// Unit pivots are eliminated sparsely first; what is left goes through a
/// dense minimal-pivot reduction.
pub fn smith_normal_form(m: &IntegerMatrix) -> Result<Vec<i64>> {
    let mut e = Eliminator::new(m);
    let pivots = e.eliminate_units()?.len();
    let mut out = vec![1; pivots];
    out.extend(dense_invariant_factors(e.residual())?);
    Ok(out)
}

/// Rank of `m`.
pub fn rank(m: &IntegerMatrix) -> Result<usize> {
    smith_normal_form(m).map(|d| d.len())
}

/// Row-based sparse elimination of `±1` pivots. Eliminating a unit pivot
/// replaces the matrix by its Schur complement, which keeps every
/// invariant factor except one `1`.
pub(crate) struct Eliminator {
    rows: Vec<Vec<(u32, i64)>>,
    col_rows: Vec<FxHashSet<u32>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
}

impl Eliminator {
    pub(crate) fn new(m: &IntegerMatrix) -> Self {
        let mut rows: Vec<Vec<(u32, i64)>> = vec![Vec::new(); m.rows()];
        let mut col_rows: Vec<FxHashSet<u32>> = vec![FxHashSet::default(); m.cols()];
        for (r, c, v) in m.triplets() {
            rows[r].push((c as u32, v));
            col_rows[c].insert(r as u32);
        }
        for row in &mut rows {
            row.sort_unstable_by_key(|e| e.0);
        }
        Self { rows, col_rows, row_alive: vec![true; m.rows()], col_alive: vec![true; m.cols()] }
    }

    pub(crate) fn delete_row(&mut self, r: u32) {
        if !std::mem::replace(&mut self.row_alive[r as usize], false) {
            return;
        }
        for (c, _) in std::mem::take(&mut self.rows[r as usize]) {
            self.col_rows[c as usize].remove(&r);
        }
    }

    pub(crate) fn delete_col(&mut self, c: u32) {
        if !std::mem::replace(&mut self.col_alive[c as usize], false) {
            return;
        }
        for r in std::mem::take(&mut self.col_rows[c as usize]) {
            let row = &mut self.rows[r as usize];
            if let Ok(k) = row.binary_search_by_key(&c, |e| e.0) {
                row.remove(k);
            }
        }
    }

    pub(crate) fn alive_rows(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.rows.len() as u32).filter(|&r| self.row_alive[r as usize])
    }

    pub(crate) fn alive_cols(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.col_rows.len() as u32).filter(|&c| self.col_alive[c as usize])
    }

    /// Eliminate unit pivots until none is left, shortest rows first and
    /// within a row the sparsest column. Returns the pivots as `(row, col)`;
    /// pivot rows and columns are deleted.
    pub(crate) fn eliminate_units(&mut self) -> Result<Vec<(u32, u32)>> {
        let mut heap: BinaryHeap<Reverse<(usize, u32)>> = self
            .alive_rows()
            .filter(|&r| !self.rows[r as usize].is_empty())
            .map(|r| Reverse((self.rows[r as usize].len(), r)))
            .collect();
        let mut pivots = Vec::new();
        while let Some(Reverse((len, r))) = heap.pop() {
            let row = &self.rows[r as usize];
            if !self.row_alive[r as usize] || row.len() != len || row.is_empty() {
                continue;
            }
            let Some(&(c, p)) = row
                .iter()
                .filter(|e| e.1.abs() == 1)
                .min_by_key(|e| self.col_rows[e.0 as usize].len())
            else {
                continue;
            };
            let pivot_row = std::mem::take(&mut self.rows[r as usize]);
            let others: Vec<u32> = self.col_rows[c as usize].iter().copied().filter(|&x| x != r).collect();
            for r2 in others {
                let f = self.rows[r2 as usize]
                    .binary_search_by_key(&c, |e| e.0)
                    .map(|k| self.rows[r2 as usize][k].1)
                    .expect("column index is consistent");
                // row_r2 −= (f / p) · row_r, and 1/p = p for a unit
                let factor = f.checked_mul(p).ok_or(Error::Overflow)?;
                self.axpy(r2, factor, &pivot_row)?;
                heap.push(Reverse((self.rows[r2 as usize].len(), r2)));
            }
            for &(c2, _) in &pivot_row {
                self.col_rows[c2 as usize].remove(&r);
            }
            self.row_alive[r as usize] = false;
            self.col_alive[c as usize] = false;
            debug_assert!(self.col_rows[c as usize].is_empty());
            pivots.push((r, c));
        }
        Ok(pivots)
    }

    /// `row_target −= factor · source`, keeping the column index in sync.
    fn axpy(&mut self, target: u32, factor: i64, source: &[(u32, i64)]) -> Result<()> {
        let old = std::mem::take(&mut self.rows[target as usize]);
        let mut merged = Vec::with_capacity(old.len() + source.len());
        let (mut i, mut j) = (0, 0);
        while i < old.len() || j < source.len() {
            let take_old = j == source.len() || (i < old.len() && old[i].0 < source[j].0);
            let take_new = i == old.len() || (j < source.len() && source[j].0 < old[i].0);
            if take_old {
                merged.push(old[i]);
                i += 1;
            } else if take_new {
                let (c, v) = source[j];
                let v = factor.checked_mul(v).and_then(i64::checked_neg).ok_or(Error::Overflow)?;
                merged.push((c, v));
                self.col_rows[c as usize].insert(target);
                j += 1;
            } else {
                let (c, v) = old[i];
                let v = factor
                    .checked_mul(source[j].1)
                    .and_then(|x| v.checked_sub(x))
                    .ok_or(Error::Overflow)?;
                if v == 0 {
                    self.col_rows[c as usize].remove(&target);
                } else {
                    merged.push((c, v));
                }
                i += 1;
                j += 1;
            }
        }
        self.rows[target as usize] = merged;
        Ok(())
    }

    /// The remaining matrix with empty rows and columns dropped, dense.
    pub(crate) fn residual(&self) -> Vec<Vec<i64>> {
        let cols: Vec<u32> = self.alive_cols().filter(|&c| !self.col_rows[c as usize].is_empty()).collect();
        let mut position = vec![usize::MAX; self.col_rows.len()];
        for (k, &c) in cols.iter().enumerate() {
            position[c as usize] = k;
        }
        self.alive_rows()
            .filter(|&r| !self.rows[r as usize].is_empty())
            .map(|r| {
                let mut dense = vec![0; cols.len()];
                for &(c, v) in &self.rows[r as usize] {
                    dense[position[c as usize]] = v;
                }
                dense
            })
            .collect()
    }
}

/// Invariant factors of a dense matrix by minimal-absolute-value pivoting.
#[allow(clippy::needless_range_loop)]
pub(crate) fn dense_invariant_factors(mut a: Vec<Vec<i64>>) -> Result<Vec<i64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((i, j)) = min_entry(&a, (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)))) else {
            break;
        };
        move_to_corner(&mut a, t, i, j);
        loop {
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] = q.checked_mul(a[t][j]).and_then(|x| a[i][j].checked_sub(x)).ok_or(Error::Overflow)?;
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] = q.checked_mul(row[t]).and_then(|x| row[j].checked_sub(x)).ok_or(Error::Overflow)?;
                    }
                }
                clean &= a[t][j] == 0;
            }
            if clean {
                break;
            }
            let cross = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
            let (i, j) = min_entry(&a, cross).expect("a remainder is nonzero");
            move_to_corner(&mut a, t, i, j);
        }
        diagonal.push(a[t][t].checked_abs().ok_or(Error::Overflow)?);
    }
    divisibility_chain(diagonal)
}

fn min_entry(a: &[Vec<i64>], cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    cells.filter(|&(i, j)| a[i][j] != 0).min_by_key(|&(i, j)| a[i][j].unsigned_abs())
}

fn move_to_corner(a: &mut [Vec<i64>], t: usize, i: usize, j: usize) {
    a.swap(t, i);
    if j != t {
        for row in a.iter_mut() {
            row.swap(t, j);
        }
    }
}

/// Turn a list of diagonal entries into invariant factors by repeated
/// `(x, y) → (gcd, lcm)`.
pub(crate) fn divisibility_chain(mut d: Vec<i64>) -> Result<Vec<i64>> {
    d.retain(|&x| x != 0);
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = (d[i] / g).checked_mul(d[j]).ok_or(Error::Overflow)?;
            d[i] = g;
            d[j] = l;
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn snf(rows: &[Vec<i64>]) -> Vec<i64> {
        smith_normal_form(&IntegerMatrix::from_dense(rows).unwrap()).unwrap()
    }

    /// Rank by fraction-free (Bareiss) elimination, kept independent of the
    /// code under test.
    fn bareiss_rank(m: &[Vec<i64>]) -> usize {
        let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
        let mut rank = 0;
        let mut prev = 1i128;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
            a.swap(rank, p);
            for r in rank + 1..rows {
                for k in c + 1..cols {
                    a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
                }
                a[r][c] = 0;
            }
            prev = a[rank][c];
            rank += 1;
        }
        rank
    }

    #[test]
    fn small_cases() {
        assert_eq!(snf(&[vec![2]]), vec![2]);
        assert_eq!(snf(&[vec![1, 0, 1], vec![0, -1, -1], vec![1, 1, 0]]), vec![1, 1, 2]);
        assert_eq!(snf(&[vec![0, 0, 0], vec![0, 0, 0]]), Vec::<i64>::new());
        assert_eq!(snf(&[]), Vec::<i64>::new());
        assert_eq!(snf(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(snf(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]), vec![2, 6, 12]);
    }

    #[test]
    fn chain_normalisation() {
        assert_eq!(divisibility_chain(vec![4, 6, 0]).unwrap(), vec![2, 12]);
        assert_eq!(divisibility_chain(vec![i64::MAX, i64::MAX - 1]), Err(Error::Overflow));
    }

    #[test]
    fn rank_agrees_with_bareiss_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
            let m: Vec<Vec<i64>> =
                (0..r).map(|_| (0..c).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            assert_eq!(snf(&m).len(), bareiss_rank(&m), "{m:?}");
        }
    }

    #[test]
    fn sparse_and_dense_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let (r, c) = (rng.gen_range(1..9), rng.gen_range(1..9));
            let m: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..c).map(|_| if rng.gen_bool(0.6) { 0 } else { rng.gen_range(-4..=4) }).collect())
                .collect();
            assert_eq!(snf(&m), dense_invariant_factors(m.clone()).unwrap(), "{m:?}");
        }
    }

    proptest! {
        #[test]
        fn divisibility_and_rank(m in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 1..6)) {
            let d = snf(&m);
            prop_assert!(d.iter().all(|&x| x > 0));
            prop_assert!(d.windows(2).all(|w| w[1] % w[0] == 0));
            prop_assert_eq!(d.len(), bareiss_rank(&m));
        }

        #[test]
        fn determinant_magnitude_is_product(m in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 3)) {
            let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
            let d = snf(&m);
            if det != 0 {
                prop_assert_eq!(d.iter().product::<i64>(), det.abs());
            } else {
                prop_assert!(d.len() < 3);
            }
        }
    }
}
