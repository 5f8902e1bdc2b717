//! Exact linear algebra over ℚ on sparse vectors with ordered keys.
//!
//! Vectors are `BTreeMap<K, Q>` for any ordered key type (PBW monomials,
//! polynomial exponents, …).  [`Echelon`] maintains a reduced row-echelon
//! set incrementally: each inserted vector is reduced against the current
//! rows and, if independent, normalized on its pivot (the **largest**
//! remaining key) and back-substituted into the existing rows.  This gives
//! deterministic spans, ranks, and membership tests without ever leaving ℚ.

use crate::rational::Q;
use num::{One, Zero};
use std::collections::BTreeMap;

pub type SparseVec<K> = BTreeMap<K, Q>;

pub fn add_scaled<K: Ord + Clone>(dst: &mut SparseVec<K>, src: &SparseVec<K>, s: &Q) {
    if s.is_zero() {
        return;
    }
    for (k, v) in src {
        let entry = dst.entry(k.clone()).or_insert_with(Q::zero);
        *entry += v * s;
        if entry.is_zero() {
            dst.remove(k);
        }
    }
}

/// Incremental reduced row echelon form over ℚ.
///
/// Pivot convention: the pivot of a row is its largest key, and every row is
/// normalized to pivot coefficient 1 and reduced against all other pivots.
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot-keyed normalized rows.
    pub fn rows(&self) -> impl Iterator<Item = (&K, &SparseVec<K>)> {
        self.rows.iter()
    }

    /// Fully reduce `vec` against the echelon rows (the residue is zero iff
    /// `vec` lies in the span).
    pub fn reduce(&self, vec: &SparseVec<K>) -> SparseVec<K> {
        let mut out = vec.clone();
        // Keys only ever shrink towards smaller pivots, so one sweep from the
        // largest key downwards suffices.
        loop {
            let hit = out
                .iter()
                .rev()
                .find(|(k, _)| self.rows.contains_key(k))
                .map(|(k, v)| (k.clone(), v.clone()));
            match hit {
                None => return out,
                Some((k, v)) => {
                    let row = &self.rows[&k];
                    let s = -v;
                    add_scaled(&mut out, row, &s);
                }
            }
        }
    }

    /// Insert a vector; returns `true` if it was independent of the current
    /// span (a new pivot was created).
    pub fn insert(&mut self, vec: SparseVec<K>) -> bool {
        let mut red = self.reduce(&vec);
        let Some((pivot, coeff)) = red.iter().next_back().map(|(k, v)| (k.clone(), v.clone()))
        else {
            return false;
        };
        let inv = Q::one() / coeff;
        for v in red.values_mut() {
            *v *= &inv;
        }
        // Back-substitute the new pivot out of all existing rows.
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                let s = -c;
                add_scaled(row, &red, &s);
            }
        }
        self.rows.insert(pivot, red);
        true
    }

    pub fn contains(&self, vec: &SparseVec<K>) -> bool {
        self.reduce(vec).is_empty()
    }
}

/// Right null space of the matrix whose columns are `columns` (each a sparse
/// vector over row keys `R`): all coefficient vectors `c` with
/// `Σ c_j · columns[j] = 0`, returned as a deterministic echelonized basis.
///
/// Dense Gaussian elimination on the transpose-free augmented system; sizes
/// in this crate stay below a few hundred columns.
pub fn null_space<R: Ord + Clone>(columns: &[SparseVec<R>]) -> Vec<Vec<Q>> {
    let ncols = columns.len();
    // Collect row keys.
    let mut row_keys: Vec<R> = Vec::new();
    {
        let mut seen: BTreeMap<R, ()> = BTreeMap::new();
        for col in columns {
            for k in col.keys() {
                seen.entry(k.clone()).or_insert(());
            }
        }
        row_keys.extend(seen.into_keys());
    }
    let nrows = row_keys.len();
    let index_of: BTreeMap<&R, usize> = row_keys.iter().enumerate().map(|(i, k)| (k, i)).collect();

    // Dense matrix, rows × cols.
    let mut m: Vec<Vec<Q>> = vec![vec![Q::zero(); ncols]; nrows];
    for (j, col) in columns.iter().enumerate() {
        for (k, v) in col {
            m[index_of[k]][j] = v.clone();
        }
    }

    // Forward elimination with column pivoting order j = 0..ncols.
    let mut pivot_row_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut next_row = 0usize;
    for j in 0..ncols {
        let Some(p) = (next_row..nrows).find(|&r| !m[r][j].is_zero()) else {
            continue;
        };
        m.swap(next_row, p);
        let inv = Q::one() / m[next_row][j].clone();
        for x in &mut m[next_row] {
            *x *= &inv;
        }
        for r in 0..nrows {
            if r != next_row && !m[r][j].is_zero() {
                let s = m[r][j].clone();
                for jj in 0..ncols {
                    let t = &m[next_row][jj] * &s;
                    m[r][jj] -= t;
                }
            }
        }
        pivot_row_of_col[j] = Some(next_row);
        next_row += 1;
    }

    // Free columns parameterize the null space.
    let mut basis = Vec::new();
    for jf in 0..ncols {
        if pivot_row_of_col[jf].is_some() {
            continue;
        }
        let mut v = vec![Q::zero(); ncols];
        v[jf] = Q::one();
        for j in 0..ncols {
            if let Some(r) = pivot_row_of_col[j] {
                v[j] = -m[r][jf].clone();
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    fn sv(pairs: &[(i64, Q)]) -> SparseVec<i64> {
        pairs.iter().cloned().collect()
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new();
        assert!(e.insert(sv(&[(0, q(1)), (1, q(2))])));
        assert!(e.insert(sv(&[(1, q(1)), (2, q(1))])));
        // Dependent on the first two.
        assert!(!e.insert(sv(&[(0, q(2)), (1, q(5)), (2, q(1))])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&sv(&[(0, q(-1)), (1, q(-1)), (2, q(1))])));
        assert!(!e.contains(&sv(&[(0, q(1))])));
    }

    #[test]
    fn echelon_rows_are_reduced() {
        let mut e = Echelon::new();
        e.insert(sv(&[(0, q(1)), (2, q(1))]));
        e.insert(sv(&[(0, q(1)), (1, q(1)), (2, q(1))]));
        // After back-substitution the pivot-2 row must not contain key 1.
        for (pivot, row) in e.rows() {
            assert_eq!(row[pivot], q(1));
            for other_pivot in e.rows.keys() {
                if other_pivot != pivot {
                    assert!(!row.contains_key(other_pivot), "rows not fully reduced");
                }
            }
        }
    }

    #[test]
    fn null_space_of_dependent_columns() {
        // col0 = e0, col1 = e1, col2 = e0 + 2 e1  →  kernel spanned by
        // (1, 2, -1) up to scale; echelon form normalizes the free column.
        let cols = vec![
            sv(&[(0, q(1))]),
            sv(&[(1, q(1))]),
            sv(&[(0, q(1)), (1, q(2))]),
        ];
        let ns = null_space(&cols);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        // Check Σ v_j col_j = 0.
        let mut acc: SparseVec<i64> = SparseVec::new();
        for (j, col) in cols.iter().enumerate() {
            add_scaled(&mut acc, col, &v[j]);
        }
        assert!(acc.is_empty());
        assert_eq!(v[2], q(1));
    }

    #[test]
    fn null_space_trivial_when_independent() {
        let cols = vec![sv(&[(0, q(1))]), sv(&[(1, qr(1, 3))])];
        assert!(null_space(&cols).is_empty());
    }

    #[test]
    fn null_space_dimension_counts() {
        // 2 rows, 5 columns in general position → kernel dimension 3.
        let cols = vec![
            sv(&[(0, q(1)), (1, q(1))]),
            sv(&[(0, q(2)), (1, q(3))]),
            sv(&[(0, q(5)), (1, q(7))]),
            sv(&[(0, q(11)), (1, q(13))]),
            sv(&[(0, q(17)), (1, q(19))]),
        ];
        let ns = null_space(&cols);
        assert_eq!(ns.len(), 3);
        for v in &ns {
            let mut acc: SparseVec<i64> = SparseVec::new();
            for (j, col) in cols.iter().enumerate() {
                add_scaled(&mut acc, col, &v[j]);
            }
            assert!(acc.is_empty());
        }
    }
}
