//! Exact linear algebra over `Q` and over `Z[v, v^{-1}]`.
//!
//! The rational routines are built around sparse echelon insertion: rows
//! are maps from an ordered key type to `BigRational`, and a row is
//! reduced against the current echelon basis before being adopted as a
//! new pivot.  This is all the Koszul and Hilbert-series code needs, and
//! it stays fast because the matrices arising there are very sparse.

use std::collections::BTreeMap;

use num::{BigRational, Zero};

use crate::laurent::LaurentPoly;

/// A sparse vector over `Q` with ordered keys.
pub type SparseRow<K> = BTreeMap<K, BigRational>;

/// Incremental echelon basis over `Q`.  Keys act as column indices; the
/// pivot of a row is its smallest key.
pub struct Echelon<K: Ord + Clone> {
    pivots: BTreeMap<K, SparseRow<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self {
            pivots: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `row` against the basis.  Returns the residual (possibly
    /// empty) without inserting it.
    pub fn reduce(&self, mut row: SparseRow<K>) -> SparseRow<K> {
        loop {
            let Some((lead, coeff)) = row.iter().next().map(|(k, v)| (k.clone(), v.clone())) else {
                return row;
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                return row;
            };
            // pivot has coefficient 1 at `lead` by construction
            row.remove(&lead);
            for (k, v) in pivot.iter() {
                if k == &lead {
                    continue;
                }
                let entry = row.entry(k.clone()).or_insert_with(BigRational::zero);
                *entry -= &coeff * v;
                if entry.is_zero() {
                    row.remove(k);
                }
            }
        }
    }

    /// Insert a row, first reducing it.  Returns `true` if the row was
    /// independent of the current basis (rank grew).
    pub fn insert(&mut self, row: SparseRow<K>) -> bool {
        let red = self.reduce(row);
        let Some((lead, coeff)) = red.iter().next().map(|(k, v)| (k.clone(), v.clone())) else {
            return false;
        };
        // normalize so the pivot coefficient is 1
        let normalized: SparseRow<K> = red.into_iter().map(|(k, v)| (k, v / &coeff)).collect();
        self.pivots.insert(lead, normalized);
        true
    }
}

/// Rank of a list of sparse rational rows.
pub fn rational_rank<K: Ord + Clone>(rows: impl IntoIterator<Item = SparseRow<K>>) -> usize {
    let mut ech = Echelon::new();
    for row in rows {
        ech.insert(row);
    }
    ech.rank()
}

/// Solve the square system `a * x = b` exactly over `Q`.  Returns `None`
/// when `a` is singular.  `a` is row-major, `n x n`.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = b.len();
    assert!(a.len() == n && a.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for entry in m[col][col..=n].iter_mut() {
            *entry = &*entry / &p;
        }
        let pivot_row = m[col][col..=n].to_vec();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (dst, src) in row[col..=n].iter_mut().zip(&pivot_row) {
                    *dst = &*dst - &(src * &f);
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Rank of a dense matrix over `Z[v, v^{-1}]`, i.e. over its fraction
/// field.  Elimination prefers unit pivots `±v^k` (exact division, no
/// growth); when none is available it falls back to cross-multiplication,
/// which also preserves rank over an integral domain.
pub fn laurent_rank(mut rows: Vec<Vec<LaurentPoly>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    assert!(rows.iter().all(|r| r.len() == ncols));
    let mut rank = 0;
    let mut used_cols = vec![false; ncols];
    loop {
        rows.retain(|r| r.iter().any(|p| !p.is_zero()));
        if rows.is_empty() {
            return rank;
        }
        // prefer a unit pivot, otherwise the entry with fewest terms
        let mut best: Option<(usize, usize, bool, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if used_cols[j] || p.is_zero() {
                    continue;
                }
                let cand = (i, j, p.is_unit(), p.terms().count());
                best = match best {
                    None => Some(cand),
                    Some(prev) => {
                        // units first, then fewer terms
                        if (cand.2, std::cmp::Reverse(cand.3)) > (prev.2, std::cmp::Reverse(prev.3))
                        {
                            Some(cand)
                        } else {
                            Some(prev)
                        }
                    }
                };
            }
        }
        let Some((pi, pj, is_unit, _)) = best else {
            return rank;
        };
        let pivot_row = rows.swap_remove(pi);
        let pivot = pivot_row[pj].clone();
        used_cols[pj] = true;
        rank += 1;
        for row in rows.iter_mut() {
            if row[pj].is_zero() {
                continue;
            }
            if is_unit {
                let f = row[pj].div_unit(&pivot);
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = x.sub(&f.mul(p));
                }
            } else {
                let f = row[pj].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = x.mul(&pivot).sub(&f.mul(p));
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    #[test]
    fn echelon_rank_counts_independent_rows() {
        let rows: Vec<SparseRow<usize>> = vec![
            [(0usize, q(1)), (1, q(2))].into_iter().collect(),
            [(1usize, q(1))].into_iter().collect(),
            [(0usize, q(2)), (1, q(5))].into_iter().collect(), // = 2*r0 + r1
        ];
        assert_eq!(rational_rank(rows), 2);
    }

    #[test]
    fn solve_small_system() {
        let a = vec![vec![q(2), q(-1)], vec![q(-1), q(2)]];
        let b = vec![q(1), q(1)];
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        let singular = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert!(solve_rational(&singular, &b).is_none());
    }

    #[test]
    fn laurent_rank_detects_dependence() {
        let v = |e, c| LaurentPoly::monomial(e, c);
        // row2 = v * row0 + row1
        let rows = vec![
            vec![v(0, 1), v(1, 2)],
            vec![v(-1, 1), v(0, 3)],
            vec![v(1, 1).add(&v(-1, 1)), v(2, 2).add(&v(0, 3))],
        ];
        assert_eq!(laurent_rank(rows), 2);
        let id = vec![
            vec![v(3, 1), LaurentPoly::zero()],
            vec![LaurentPoly::v_minus_vinv(), v(0, -1)],
        ];
        assert_eq!(laurent_rank(id), 2);
    }
}
