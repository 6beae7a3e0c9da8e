//! Symbolic matrices and their minors.

use std::collections::HashMap;

use crate::error::{invalid, Result};
use crate::polycore::poly::{Polynomial, Var};

/// A matrix with polynomial entries, usually of indeterminates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    /// `rows x cols` matrix of indeterminates `base_i_j`, 1-based.
    pub fn generic(base: &str, rows: usize, cols: usize) -> Self {
        let entries = (0..rows)
            .flat_map(|i| {
                (0..cols).map(move |j| Polynomial::var(Var::new(base, &[i as u32 + 1, j as u32 + 1])))
            })
            .collect();
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return invalid(format!("{} entries for a {rows}x{cols} matrix", entries.len()));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    /// Determinant of the submatrix on `rows` x `cols` (0-based, taken in the
    /// given order), by Laplace expansion along rows with memoization on the
    /// remaining column set. Signs follow the Leibniz formula.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
        if rows.len() != cols.len() {
            return invalid(format!("{} rows but {} columns", rows.len(), cols.len()));
        }
        if rows.is_empty() {
            return invalid("minor of size 0");
        }
        if cols.len() > 63 {
            return invalid("minor too large");
        }
        if let Some(&r) = rows.iter().find(|&&r| r >= self.rows) {
            return invalid(format!("row {r} out of range for {} rows", self.rows));
        }
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return invalid(format!("column {c} out of range for {} columns", self.cols));
        }
        if has_duplicates(rows) || has_duplicates(cols) {
            return invalid("repeated row or column index");
        }
        let mut memo: HashMap<u64, Polynomial> = HashMap::new();
        let full = (1u64 << cols.len()) - 1;
        Ok(self.laplace(rows, cols, 0, full, &mut memo))
    }

    fn laplace(
        &self,
        rows: &[usize],
        cols: &[usize],
        depth: usize,
        avail: u64,
        memo: &mut HashMap<u64, Polynomial>,
    ) -> Polynomial {
        if depth == rows.len() {
            return Polynomial::one();
        }
        if let Some(p) = memo.get(&avail) {
            return p.clone();
        }
        let mut acc = Polynomial::zero();
        let mut position = 0;
        for (k, &c) in cols.iter().enumerate() {
            if avail & (1 << k) == 0 {
                continue;
            }
            let entry = self.get(rows[depth], c);
            if !entry.is_zero() {
                let sub = self.laplace(rows, cols, depth + 1, avail & !(1 << k), memo);
                let term = entry * &sub;
                acc = if position % 2 == 0 { acc + term } else { acc - term };
            }
            position += 1;
        }
        memo.insert(avail, acc.clone());
        acc
    }

    /// All minors of the given size over every row and column subset.
    pub fn all_minors(&self, size: usize) -> Result<Vec<Polynomial>> {
        let mut out = Vec::new();
        for rs in crate::combinatorics::k_subsets(self.rows, size) {
            for cs in crate::combinatorics::k_subsets(self.cols, size) {
                out.push(self.minor(&rs, &cs)?);
            }
        }
        Ok(out)
    }
}

fn has_duplicates(v: &[usize]) -> bool {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.windows(2).any(|w| w[0] == w[1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::k_subsets;
    use crate::polycore::scalar::{int, random_rational};
    use crate::polycore::poly::Assignment;
    use num_traits::Zero;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Signed permutation sum over the submatrix.
    fn leibniz(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> Polynomial {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let mut total = Polynomial::zero();
        for p in perms(rows.len()) {
            let inversions = (0..p.len())
                .flat_map(|a| (a + 1..p.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| p[a] > p[b])
                .count();
            let mut t = Polynomial::constant(if inversions % 2 == 0 { int(1) } else { int(-1) });
            for (a, &pa) in p.iter().enumerate() {
                t = &t * m.get(rows[a], cols[pa]);
            }
            total = total + t;
        }
        total
    }

    #[test]
    fn two_by_two() {
        let x = PolyMatrix::generic("x", 2, 2);
        let m = x.minor(&[0, 1], &[0, 1]).unwrap();
        assert_eq!(m, "x_1_1 * x_2_2 - x_1_2 * x_2_1".parse().unwrap());
    }

    #[test]
    fn one_by_one() {
        let x = PolyMatrix::generic("x", 3, 7);
        assert_eq!(x.minor(&[0], &[2]).unwrap(), "x_1_3".parse().unwrap());
    }

    #[test]
    fn cubic_minor_matches_permutation_sum() {
        let x = PolyMatrix::generic("x", 3, 7);
        let m = x.minor(&[0, 1, 2], &[0, 1, 2]).unwrap();
        assert_eq!(m.num_terms(), 6);
        assert_eq!(m.total_degree(), Some(3));
        assert_eq!(m, leibniz(&x, &[0, 1, 2], &[0, 1, 2]));
    }

    #[test]
    fn all_minors_up_to_four_match_oracle() {
        let x = PolyMatrix::generic("x", 4, 5);
        for k in 1..=4 {
            for rs in k_subsets(4, k) {
                for cs in k_subsets(5, k).into_iter().take(3) {
                    assert_eq!(x.minor(&rs, &cs).unwrap(), leibniz(&x, &rs, &cs));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        let x = PolyMatrix::generic("x", 3, 3);
        assert!(x.minor(&[0, 1], &[0]).is_err());
        assert!(x.minor(&[], &[]).is_err());
        assert!(x.minor(&[0, 3], &[0, 1]).is_err());
        assert!(x.minor(&[0, 0], &[0, 1]).is_err());
    }

    #[test]
    fn identity_minor_evaluates_to_one() {
        let x = PolyMatrix::generic("x", 2, 2);
        let m = x.minor(&[0, 1], &[0, 1]).unwrap();
        let mut pt = Assignment::new();
        for i in 1..=2u32 {
            for j in 1..=2u32 {
                pt.insert(Var::new("x", &[i, j]), int((i == j) as i64));
            }
        }
        assert_eq!(m.evaluate(&pt).unwrap(), int(1));
    }

    #[test]
    fn evaluated_minor_matches_numeric_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = PolyMatrix::generic("x", 3, 4);
        let mut pt = Assignment::new();
        let mut rows = vec![vec![int(0); 4]; 3];
        for i in 0..3 {
            for j in 0..4 {
                let v = random_rational(&mut rng);
                rows[i][j] = v.clone();
                pt.insert(Var::new("x", &[i as u32 + 1, j as u32 + 1]), v);
            }
        }
        let num = crate::linalg::Matrix::from_rows(rows).unwrap();
        let cols = [0, 2, 3];
        let sym = x.minor(&[0, 1, 2], &cols).unwrap().evaluate(&pt).unwrap();
        let direct = num.select_columns(&cols).determinant().unwrap();
        assert!(!direct.is_zero());
        assert_eq!(sym, direct);
    }
}
